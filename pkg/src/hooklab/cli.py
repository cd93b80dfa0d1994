"""Command-line front end.

Subcommands:

  verify {han|yang|tbar|han2|lemma|labelprob}   exact checks, n = 1..n-max
  sample                                        draw labeled trees
  mc                                            Monte-Carlo goodness of fit
  census                                        per-tree completion-count table

Exit codes: 0 all checks pass, 1 a mathematical assertion failed, 2 usage
or configuration error.  ``--json`` switches every command to one JSON
document per line; table and JSON modes carry identical values.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
from fractions import Fraction

from .families import (
    BinaryFamily,
    Family,
    FamilyConfigError,
    OracleSyntaxError,
    OrderedFamily,
    TbarFamily,
    parse_oracle,
)
from .identities import (
    ConsistencyError,
    SizeLimitError,
    completion_census,
    verify_han,
    verify_han2,
    verify_tbar,
    verify_yang,
)
from .sampler import (
    GrowthState,
    ProbabilityRangeError,
    enumerate_labelings,
    grow,
    labeling_probability,
    lemma_check,
    shape_probability,
)
from .stats import category_masses, chi_squared_gof, run_census
from .trees import Tree


class UsageError(Exception):
    pass


def _bool_str(flag: bool) -> str:
    return "true" if flag else "false"


def _emit(record: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(record))
    else:
        print(" ".join(f"{k}={_format_value(v)}" for k, v in record.items()))


def _format_value(v) -> str:
    if isinstance(v, bool):
        return _bool_str(v)
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (list, tuple)):
        return ",".join(str(x) for x in v)
    return str(v)


def _parse_m(text: str | None, fallback: Fraction | None) -> Fraction | None:
    if text is None:
        return fallback
    if text == "symbolic":
        return None
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--m must be an integer, a fraction like 7/2, or 'symbolic'; got {text!r}")


def _build_family(name: str, m: Fraction | None, oracle_spec: str | None) -> Family:
    if name == "binary":
        if oracle_spec is not None:
            raise UsageError("--oracle only applies to the tbar family")
        return BinaryFamily()
    if name == "ordered":
        if oracle_spec is not None:
            raise UsageError("--oracle only applies to the tbar family")
        return OrderedFamily(m)
    if name == "tbar":
        return TbarFamily(parse_oracle(oracle_spec or "const:2"))
    raise UsageError(f"unknown family {name!r}")


def _reject_family_flags(args, *, allow_oracle: bool = False) -> None:
    if args.family is not None:
        raise UsageError(f"--family does not apply to 'verify {args.identity}'")
    if args.m is not None:
        raise UsageError(f"--m does not apply to 'verify {args.identity}'")
    if not allow_oracle and args.oracle is not None:
        raise UsageError(f"--oracle does not apply to 'verify {args.identity}'")


def cmd_verify(args) -> int:
    identity = args.identity
    failures = 0
    if identity in ("han", "yang", "tbar", "han2"):
        n_max = args.n_max if args.n_max is not None else {
            "han": 10, "yang": 7, "tbar": 7, "han2": 10,
        }[identity]
        if identity == "tbar":
            if args.family is not None or args.m is not None:
                raise UsageError("'verify tbar' takes only --oracle, --n-max, --json")
            oracle = parse_oracle(args.oracle or "const:2")
        else:
            _reject_family_flags(args)
        for n in range(1, n_max + 1):
            if identity == "han":
                report = verify_han(n)
            elif identity == "yang":
                report = verify_yang(n)
            elif identity == "han2":
                report = verify_han2(n)
            else:
                report = verify_tbar(oracle, n)
            _emit(report.to_json_dict(), args.json)
            failures += 0 if report.holds else 1
        return 1 if failures else 0
    if identity == "lemma":
        return _cmd_verify_lemma(args)
    return _cmd_verify_labelprob(args)


def _sweep_family(args, default_n_max: int) -> tuple[Family, int]:
    name = args.family or "binary"
    if name != "ordered" and args.m is not None:
        raise UsageError("--m only applies to the ordered family")
    m = _parse_m(args.m, None) if name == "ordered" else None
    family = _build_family(name, m, args.oracle)
    n_max = args.n_max if args.n_max is not None else default_n_max
    return family, n_max


def _lemma_states(family: Family, n: int) -> tuple[int, int]:
    """Lemma summary for one size: (states checked, states that failed)."""
    states = failures = 0
    for labeled in enumerate_labelings(family, n):
        states += 1
        if not lemma_check(GrowthState(labeled, family)):
            failures += 1
    return states, failures


def _cmd_verify_lemma(args) -> int:
    family, n_max = _sweep_family(args, 5)
    bad = 0
    for n in range(1, n_max + 1):
        states, failures = _lemma_states(family, n)
        bad += failures
        _emit(
            {
                "check": "lemma",
                "family": family.label,
                "n": n,
                "states": states,
                "holds": failures == 0,
            },
            args.json,
        )
    return 1 if bad else 0


def _cmd_verify_labelprob(args) -> int:
    family, n_max = _sweep_family(args, 5)
    bad = 0
    for n in range(1, n_max + 1):
        shapes: dict[str, tuple[Tree, list]] = {}
        for labeled in enumerate_labelings(family, n):
            p = labeling_probability(labeled, family)
            entry = shapes.setdefault(labeled.shape.enc, (labeled.shape, []))
            entry[1].append(p)
        equal = closed = True
        total = None
        labelings = 0
        for shape, probs in shapes.values():
            labelings += len(probs)
            first = probs[0]
            if any(p != first for p in probs[1:]):
                equal = False
            if first != shape_probability(shape, family):
                closed = False
            for p in probs:
                total = p if total is None else total + p
        mass_ok = _is_one(total)
        holds = equal and closed and mass_ok
        bad += 0 if holds else 1
        _emit(
            {
                "check": "labelprob",
                "family": family.label,
                "n": n,
                "shapes": len(shapes),
                "labelings": labelings,
                "equal_per_shape": equal,
                "matches_closed_form": closed,
                "total_mass": str(total),
                "holds": holds,
            },
            args.json,
        )
    return 1 if bad else 0


def _is_one(total) -> bool:
    if total is None:
        return False
    if isinstance(total, Fraction):
        return total == 1
    return total.is_constant() and total.constant_value() == 1


def _site_path(site) -> str:
    return "/".join(str(step) for step in site.parent + (site.slot,))


def cmd_sample(args) -> int:
    if args.family != "ordered" and args.m is not None:
        raise UsageError("--m only applies to the ordered family")
    m = _parse_m(args.m, Fraction(args.n)) if args.family == "ordered" else None
    if args.family == "ordered" and m is None:
        raise UsageError("sampling needs a concrete m, not 'symbolic'")
    family = _build_family(args.family, m, args.oracle)
    rng = random.Random(args.seed)
    for _ in range(args.count):
        if args.verbose:
            def log(label, site, p):
                print(f"# step {label}: site={_site_path(site)} p={p}")
            tree = grow(family, args.n, rng, on_step=log)
        else:
            tree = grow(family, args.n, rng)
        print(tree.enc)
    return 0


def cmd_mc(args) -> int:
    if args.family != "ordered" and args.m is not None:
        raise UsageError("--m only applies to the ordered family")
    m = _parse_m(args.m, Fraction(args.n)) if args.family == "ordered" else None
    if args.family == "ordered" and m is None:
        raise UsageError("Monte Carlo needs a concrete m, not 'symbolic'")
    family = _build_family(args.family, m, args.oracle)
    masses = category_masses(family, args.n)
    floor = min(masses.values())
    minimum = math.ceil(5 / floor)
    if args.samples < minimum:
        raise UsageError(
            f"--samples {args.samples} is below the minimum {minimum} needed to keep "
            f"every expected count at 5 (smallest category mass {floor})"
        )
    census = run_census(family, args.n, args.samples, args.seed)
    report = chi_squared_gof(census, alpha=args.alpha)
    record = report.to_json_dict()
    record["min_samples"] = minimum
    _emit(record, args.json)
    return 0 if report.passed else 1


def cmd_census(args) -> int:
    if args.n > 8:
        raise UsageError("census is limited to n <= 8")
    rows = completion_census(args.n)
    total = None
    for row in rows:
        total = row.running_total
        _emit(
            {
                "encoding": row.encoding,
                "hooks": list(row.hooks),
                "labelings": row.labelings,
                "weight": str(row.weight),
                "running_total": str(row.running_total),
            },
            args.json,
        )
    holds = total == 1
    _emit({"total": str(total), "holds": holds}, args.json)
    return 0 if holds else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hooklab",
        description="Exact hook-length identity checks and the growth sampler.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run an exact verification sweep")
    p_verify.add_argument(
        "identity", choices=["han", "yang", "tbar", "han2", "lemma", "labelprob"]
    )
    p_verify.add_argument("--n-max", type=int, default=None)
    p_verify.add_argument("--family", choices=["binary", "ordered", "tbar"], default=None)
    p_verify.add_argument("--m", default=None)
    p_verify.add_argument("--oracle", default=None)
    p_verify.add_argument("--json", action="store_true")
    p_verify.set_defaults(func=cmd_verify)

    p_sample = sub.add_parser("sample", help="draw labeled trees from the growth chain")
    p_sample.add_argument("--family", choices=["binary", "ordered", "tbar"], default="binary")
    p_sample.add_argument("--n", type=int, required=True)
    p_sample.add_argument("--count", type=int, default=1)
    p_sample.add_argument("--seed", type=int, default=0)
    p_sample.add_argument("--m", default=None)
    p_sample.add_argument("--oracle", default=None)
    p_sample.add_argument("--verbose", action="store_true")
    p_sample.set_defaults(func=cmd_sample)

    p_mc = sub.add_parser("mc", help="chi-squared test of the sampler")
    p_mc.add_argument("--family", choices=["binary", "ordered", "tbar"], default="binary")
    p_mc.add_argument("--n", type=int, required=True)
    p_mc.add_argument("--samples", type=int, default=100_000)
    p_mc.add_argument("--seed", type=int, default=0)
    p_mc.add_argument("--alpha", type=float, default=0.001)
    p_mc.add_argument("--m", default=None)
    p_mc.add_argument("--oracle", default=None)
    p_mc.add_argument("--json", action="store_true")
    p_mc.set_defaults(func=cmd_mc)

    p_census = sub.add_parser("census", help="completion labeling counts and weights")
    p_census.add_argument("--n", type=int, required=True)
    p_census.add_argument("--json", action="store_true")
    p_census.set_defaults(func=cmd_census)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, OracleSyntaxError, FamilyConfigError, SizeLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ConsistencyError, ProbabilityRangeError) as exc:
        print(f"assertion failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
