"""Command-line front end: ``python -m sosmultitype COMMAND FILE [flags]``.

Exit codes: 0 success, 1 usage or parse error, 2 out-of-scope input,
3 internal soundness failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .algebra import GaussianRational, HoloPoly, substitute
from .engine import EngineOptions, MultitypeResult, compute, crossterm_verdict, levi_rank
from .errors import MultitypeError, ParseError
from .normalizer import normalize_boundary_system, torsion_check
from .oracle import brute_commutator_entry, brute_multitype, default_directions
from .parser import DomainSpec, parse
from .weights import INF, Weight, entry_str, is_distinguished, is_weight, model_extract

COMMANDS = ("compute", "oracle", "verify-weight", "normalize", "torsion-check", "crossterm-check")


class UsageError(Exception):
    pass


def _strs(xs) -> list[str]:
    return [entry_str(x) if not isinstance(x, (HoloPoly, GaussianRational)) else str(x) for x in xs]


def _mono_str(m: tuple) -> str:
    parts = [f"z{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(m) if e]
    return "*".join(parts) or "1"


def _engine(spec: DomainSpec, args) -> MultitypeResult:
    return compute(spec.generators, EngineOptions(sabotage_skip=args.sabotage_skip))


def _weight_for(spec: DomainSpec, args) -> tuple[Weight, MultitypeResult | None]:
    """``--weight`` if given, else the declared weight, else the computed multitype."""
    if args.weight:
        try:
            lam = Weight.parse(args.weight)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad --weight: {exc}") from None
    elif spec.weight is not None:
        lam = spec.weight
    else:
        res = _engine(spec, args)
        return res.multitype, res
    if len(lam) != spec.n:
        raise UsageError(f"weight has {len(lam)} entries, expected {spec.n}")
    return lam, None


def _distinguished_base(spec: DomainSpec, lam: Weight, res: MultitypeResult | None, args) -> list[HoloPoly]:
    """The input generators if ``lam`` is distinguished for them, else the engine's final coordinates."""
    if is_distinguished(spec.generators, lam)[0]:
        return list(spec.generators)
    res = res or _engine(spec, args)
    return list(res.final_generators)


# -- commands ------------------------------------------------------------------------------

def cmd_compute(spec: DomainSpec, args) -> tuple[dict, int]:
    res = _engine(spec, args)
    stages = res.boundary_system.stages
    report = {
        "n": spec.n,
        "levi_rank": res.levi.q,
        "commutator_multitype": res.multitype.to_strings(),
        "boundary_system": {
            "c": [entry_str(st.c) for st in stages],
            "r_choice": [f"{st.r_choice} h{st.index}" for st in stages],
            "h": [str(st.h_final) for st in stages],
            "field": [f"d/dz{st.index}" for st in stages],
            "witness_list": [st.witness_names() for st in stages],
        },
        "boundary_system_ideal": [str(h) for h in res.ideal],
        "coordinate_changes": [ch.describe() for ch in res.changes],
        "final_generators": [str(g) for g in res.final_generators],
        "verified_distinguished": res.verified,
        "oracle": None,
    }
    code = 0
    if not args.no_oracle:
        orc = brute_multitype(spec.generators)
        agrees = orc.weight == res.multitype
        report["oracle"] = {"multitype": orc.weight.to_strings(), "agrees": agrees}
        if not agrees and not orc.bound_exceeded:
            code = 3
    return report, code


def cmd_oracle(spec: DomainSpec, args) -> tuple[dict, int]:
    orc = brute_multitype(spec.generators)
    gens = [substitute(g, orc.change) for g in spec.generators]
    q = levi_rank(gens, spec.n).q
    entries = []
    max_len = args.max_len or max(8, 2 * max(g.degree() for g in gens))
    c_prev = {k: orc.weight[k - 1] for k in range(2, spec.n + 1)}
    for nu in range(q + 2, spec.n + 1):
        if orc.weight[nu - 1] == INF:
            break
        e = brute_commutator_entry(nu, gens, c_prev, q=q, max_len=max_len,
                                   directions=default_directions(spec.n, nu),
                                   max_denominator=args.max_denominator)
        entries.append({
            "index": nu,
            "c": entry_str(e.value),
            "witness_list": [f"L{k}bar" if c else f"L{k}" for k, c in e.witness.entries] if e.witness else None,
            "direction": _strs(e.direction) if e.direction else None,
            "bound_exceeded": e.bound_exceeded,
        })
    report = {
        "n": spec.n,
        "multitype": orc.weight.to_strings(),
        "coordinates": orc.change.describe(),
        "family_size": orc.family_size,
        "bound_exceeded": orc.bound_exceeded,
        "entries": entries,
    }
    return report, 0


def cmd_verify_weight(spec: DomainSpec, args) -> tuple[dict, int]:
    if not args.weight and spec.weight is None:
        raise UsageError("verify-weight needs --weight or a 'weight:' line")
    lam, _ = _weight_for(spec, args)
    ok_w, witnesses = is_weight(lam)
    ok_d, offender = is_distinguished(spec.generators, lam) if ok_w else (False, None)
    report = {
        "weight": lam.to_strings(),
        "is_weight": ok_w,
        "distinguished": ok_d,
        "offender": None if offender is None else f"{_mono_str(offender[0])} * conj({_mono_str(offender[1])})",
    }
    return report, 0


def cmd_normalize(spec: DomainSpec, args) -> tuple[dict, int]:
    lam, res = _weight_for(spec, args)
    base = _distinguished_base(spec, lam, res, args)
    nr = normalize_boundary_system(base, lam)
    report = {
        "weight": lam.to_strings(),
        "input_generators": [str(g) for g in base],
        "generators": [str(g) for g in nr.generators],
        "coordinate_changes": [ch.describe() for ch in nr.changes],
        "K": {f"z{s.pivot}": str(s.K) for s in nr.shears},
        "balanced_chain": [_mono_str(m) for m in nr.chain] if nr.chain else None,
        "rounds": nr.rounds,
    }
    return report, 0


def cmd_torsion_check(spec: DomainSpec, args) -> tuple[dict, int]:
    lam, res = _weight_for(spec, args)
    base = _distinguished_base(spec, lam, res, args)
    model = [g for g in model_extract(base, lam) if g]
    rep = torsion_check(model, lam)
    report = {
        "weight": lam.to_strings(),
        "model": [str(g) for g in model],
        "checked": rep.checked,
        "torsion": "none" if rep.torsion_free else [f"{_mono_str(m)}: {why}" for m, why in rep.violations],
    }
    return report, 0 if rep.torsion_free else 3


def cmd_crossterm_check(spec: DomainSpec, args) -> tuple[dict, int]:
    res = _engine(spec, args)
    lam = res.multitype
    cases: dict[str, int] = {}
    violations = []
    checked = 0
    for st in res.boundary_system.stages:
        if st.kind != "commutator":
            continue
        c_prev = {k: lam[k - 1] for k in range(2, st.index)}
        monos = sorted({m for g in st.generators_before for m in g.terms})
        for i, f in enumerate(monos):
            for h in monos[i:]:
                v = crossterm_verdict(f, h, st.index, c_prev)
                checked += 1
                cases[v.label] = cases.get(v.label, 0) + 1
                if not v.ok:
                    violations.append(f"nu={st.index} {_mono_str(f)} x {_mono_str(h)}: {v.label}")
    report = {"checked": checked, "cases": dict(sorted(cases.items())), "violations": violations}
    return report, 3 if violations else 0


HANDLERS = {
    "compute": cmd_compute,
    "oracle": cmd_oracle,
    "verify-weight": cmd_verify_weight,
    "normalize": cmd_normalize,
    "torsion-check": cmd_torsion_check,
    "crossterm-check": cmd_crossterm_check,
}


def run(command: str, spec: DomainSpec, args) -> tuple[dict, int]:
    if command not in HANDLERS:
        raise UsageError(f"unknown command {command!r}")
    return HANDLERS[command](spec, args)


# -- text rendering -------------------------------------------------------------------------

def render_text(report: dict, indent: str = "") -> str:
    lines = []
    for key, value in report.items():
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.append(render_text(value, indent + "  "))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{indent}{key}:")
            for item in value:
                block = render_text(item, indent + "    ").splitlines()
                lines.append(indent + "  - " + block[0].lstrip())
                lines.extend(block[1:])
        elif isinstance(value, list):
            lines.append(f"{indent}{key}: " + ", ".join(
                "[" + " ".join(v) + "]" if isinstance(v, list) else str(v) for v in value))
        else:
            lines.append(f"{indent}{key}: {value}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sosmultitype",
                                 description="Commutator multitype of sums of squares domains.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("file", help="domain description, or '-' for stdin")
    ap.add_argument("--json", action="store_true", help="print a JSON report")
    ap.add_argument("--max-len", type=int, default=None,
                    help="longest list in the oracle search (default: twice the top degree, at least 8)")
    ap.add_argument("--max-denominator", type=int, default=None,
                    help="skip oracle list values with a larger denominator")
    ap.add_argument("--no-oracle", action="store_true", help="skip the oracle cross-check in compute")
    ap.add_argument("--weight", default=None, help="weight such as 1,4,6 or 1,2,inf")
    ap.add_argument("--sabotage-skip", type=int, default=0, help=argparse.SUPPRESS)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        if args.file == "-":
            text = sys.stdin.read()
        else:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        spec = parse(text)
        report, code = run(args.command, spec, args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 1
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except MultitypeError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=False))
    else:
        print(render_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
