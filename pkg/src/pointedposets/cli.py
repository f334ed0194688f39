"""
Command-line interface.

```bash
pointedposets charpoly --family A --n 3
pointedposets verify --family B --max-n 4 --format json
pointedposets homology --family B_prime --n 2 --prefect
```

Exit status: 0 when every check passes, 1 when at least one does not (the
report says which), 2 for usage errors and exceeded limits.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Callable, Sequence

from pointedposets import flows
from pointedposets.errors import NotComparable, OutOfRange, PosetsError
from pointedposets.homology import (
    check_homology_bound,
    cohen_macaulay_report,
    interval_report,
    maximal_interval_homology,
)
from pointedposets.hopf import (
    coproduct_rooted,
    coproduct_series,
    coproduct_structural,
    is_coassociative,
    lambert_series,
    mobius_generators,
    satisfies_counit,
)
from pointedposets.identities import (
    LEMMAS,
    THEOREM_GROUPS,
    ClosedFormSpec,
    LemmaSpec,
    check_theorem_case,
    egf_counts,
    expected_top_rank,
    verify_coxeter_predictions,
)
from pointedposets.logging import configure_logging
from pointedposets.partitions import (
    Family,
    FamilySpec,
    canonical_string,
    family_poset,
    graded_counts,
    parse_partition,
    projected_size,
)
from pointedposets.posetcore import characteristic_polynomial, mobius, semimodularity_failure
from pointedposets.reports import (
    CaseReport,
    CountsReport,
    SweepReport,
    Table,
    TheoremCase,
    Verdict,
)
from pointedposets.settings import get_settings, override_settings

Output = SweepReport | Table

COMMANDS: dict[str, Callable[[argparse.Namespace], Output]] = {}
# subcommands that honour --self-test-negative
NEGATIVE_CONTROLS = ("charpoly", "verify", "identities")


def command(name: str):
    def register(fn: Callable[[argparse.Namespace], Output]):
        COMMANDS[name] = fn
        return fn

    return register


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _spec(args: argparse.Namespace) -> FamilySpec:
    return FamilySpec(Family(args.family), args.n, args.i)


@command("enumerate")
def _enumerate(args: argparse.Namespace) -> Table:
    spec = _spec(args)
    P = family_poset(spec, args.cap)
    rows = [
        [label, P.rank[k], [P.elements[j] for j in P.upper_covers(k)]]
        for k, label in enumerate(P.elements)
    ]
    return Table(title=f"{spec}: {len(P)} elements", columns=["element", "rank", "covers"], rows=rows)


def _counts_row(spec: FamilySpec, cap: int | None) -> CountsReport:
    by_rank = graded_counts(spec, cap)
    total = sum(by_rank)
    problems = []
    projected = None
    if spec.family in (Family.A, Family.MA, Family.B, Family.BETA, Family.BETAB, Family.A_EXTENDED):
        projected = projected_size(spec)
        if projected != total:
            problems.append(f"enumerated {total}, generating function {projected}")
    egf_by_rank = None
    if spec.family in (Family.A, Family.MA) and spec.n <= get_settings().series_order:
        by_blocks = egf_counts(spec.family, spec.n)[spec.n]
        egf_by_rank = list(reversed(by_blocks))
        if egf_by_rank != by_rank:
            problems.append("counts by rank differ from the generating function")
    return CountsReport(
        name=str(spec),
        verdict=Verdict.FAIL if problems else Verdict.PASS,
        detail="; ".join(problems) or " ".join(map(str, by_rank)),
        family=spec.family,
        n=spec.n,
        i=spec.i,
        by_rank=by_rank,
        total=total,
        projected=projected,
        egf_by_rank=egf_by_rank,
    )


@command("counts")
def _counts(args: argparse.Namespace) -> SweepReport:
    spec = _spec(args)
    return SweepReport(title="counts", rows=[_counts_row(spec, args.cap)])


@command("charpoly")
def _charpoly(args: argparse.Namespace) -> SweepReport:
    spec = _spec(args)
    try:
        ClosedFormSpec(spec.family, spec.n, spec.i)
    except OutOfRange:
        computed = characteristic_polynomial(family_poset(spec, args.cap))
        row = CaseReport(name=str(spec), verdict=Verdict.PASS, detail=f"computed {computed}; no closed form")
    else:
        row = check_theorem_case(
            TheoremCase(family=spec.family, n=spec.n, i=spec.i), perturbed=args.self_test_negative
        )
    return SweepReport(title="characteristic polynomial", rows=[row])


@command("verify")
def _verify(args: argparse.Namespace) -> SweepReport:
    groups = THEOREM_GROUPS if args.family == "all" else (args.family,)
    reports = []
    for k, group in enumerate(groups):
        perturb = args.self_test_negative and k == 0
        if args.prefect:
            reports.append(
                flows.verify_theorems_flow(
                    group, args.max_n, args.batch_size, args.max_failures, perturb_first=perturb
                )
            )
        else:
            reports.append(
                flows.theorem_sweep(
                    group, args.max_n, args.batch_size, args.max_failures, perturb, in_flow=False
                )
            )
        if reports[-1].stopped_early:
            break
    if len(reports) == 1:
        return reports[0]
    return SweepReport(
        title="theorems",
        rows=[row for r in reports for row in r.rows],
        stopped_early=any(r.stopped_early for r in reports),
    )


@command("semimodularity")
def _semimodularity(args: argparse.Namespace) -> SweepReport:
    spec = _spec(args)
    P = family_poset(spec, args.cap)
    rows = []
    for total, label in ((False, "semimodular"), (True, "totally semimodular")):
        failure = semimodularity_failure(P, total=total)
        detail = ""
        if failure is not None:
            names = [x if x is not None else "-" for x in failure]
            detail = "witness " + ", ".join(names)
        rows.append(
            CaseReport(
                name=f"{spec} {label}",
                verdict=Verdict.PASS if failure is None else Verdict.FAIL,
                detail=detail,
            )
        )
    return SweepReport(title="semimodularity", rows=rows)


def _top_rank_row(spec: FamilySpec, P) -> CaseReport | None:
    if P.max_rank < 1:
        return None
    try:
        expected = expected_top_rank(ClosedFormSpec(spec.family, spec.n, spec.i))
    except OutOfRange:
        return None
    computed = sum(result.rank_in(P.rank[P.index(top)] - 2) for top, result in maximal_interval_homology(P))
    return CaseReport(
        name=f"{spec} top homology",
        verdict=Verdict.PASS if computed == expected else Verdict.FAIL,
        detail=f"rank {computed}, expected {expected}",
    )


def _locate(P, spec: FamilySpec, text: str) -> int:
    label = canonical_string(parse_partition(text, spec.family, spec.n))
    try:
        return P.index(label)
    except KeyError:
        raise OutOfRange(f"{label} is not an element of {spec}.") from None


@command("homology")
def _homology(args: argparse.Namespace) -> SweepReport:
    spec = _spec(args)
    P = family_poset(spec, args.cap)
    if args.top is not None:
        bottom = P.minimum if args.bottom is None else _locate(P, spec, args.bottom)
        top = _locate(P, spec, args.top)
        if not P.leq(bottom, top):
            low, high = P.elements[bottom], P.elements[top]
            raise NotComparable(f"{low} is not below {high}.", low, high)
        return SweepReport(title=f"homology of {spec}", rows=[interval_report(P, bottom, top)])
    check_homology_bound(spec)
    if args.prefect:
        cm = flows.cohen_macaulay_flow(spec.family, spec.n, spec.i, args.batch_size)
    else:
        cm = cohen_macaulay_report(P, str(spec))
    detail = cm.detail or f"{cm.checked} intervals"
    rows: list[CaseReport] = [CaseReport(name=f"{spec} Cohen-Macaulay", verdict=cm.verdict, detail=detail)]
    top_row = _top_rank_row(spec, P)
    if top_row is not None:
        rows.append(top_row)
    rows += cm.intervals if args.all_intervals else [r for r in cm.intervals if not r.passed]
    return SweepReport(title=f"homology of {spec}", rows=rows)


@command("hopf")
def _hopf(args: argparse.Namespace) -> SweepReport:
    top = args.n
    rows: list[CaseReport] = []
    for n in range(2, top + 1):
        structural = coproduct_structural(n)
        same = structural == coproduct_series(n) == coproduct_rooted(n)
        problems = [] if same else ["coproduct formulas disagree"]
        if not satisfies_counit(n):
            problems.append("counit")
        if n <= args.coassociative_max_n and not is_coassociative(n):
            problems.append("coassociativity")
        rows.append(
            CaseReport(
                name=f"Δa_{n}",
                verdict=Verdict.FAIL if problems else Verdict.PASS,
                detail="; ".join(problems) or str(structural),
            )
        )
    w = lambert_series(top)
    for n, value in zip(range(2, top + 1), mobius_generators(top)):
        P = family_poset(FamilySpec(Family.A_FIXED, n, 1), args.cap)
        poset_value = mobius(P, P.minimum, P.top)
        ok = value == poset_value
        rows.append(
            CaseReport(
                name=f"μ_{n}",
                verdict=Verdict.PASS if ok else Verdict.FAIL,
                detail=f"{value} (Lambert coefficient {w.coefficient(n)}, poset {poset_value})",
            )
        )
    return SweepReport(title="incidence Hopf algebra", rows=rows)


@command("identities")
def _identities(args: argparse.Namespace) -> SweepReport:
    names = args.lemma or list(LEMMAS)
    perturb = "usefulB" if args.self_test_negative else None
    grid = [LemmaSpec(name, args.max_n, perturbed=name == perturb) for name in names]
    if args.prefect:
        return flows.verify_lemmas_flow(grid, args.batch_size, args.max_failures)
    return flows.lemma_sweep(grid, args.batch_size, args.max_failures, in_flow=False)


@command("coxeter")
def _coxeter(args: argparse.Namespace) -> SweepReport:
    return verify_coxeter_predictions(args.max_n)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="count", default=0, help="Repeat for more logging")
    common.add_argument("--cap", type=_positive, help="Largest poset to enumerate")
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")
    common.add_argument("--out", type=Path, help="Write the report here instead of standard output")
    common.add_argument("--prefect", action="store_true", help="Run sweeps as Prefect flows")
    common.add_argument("--batch-size", type=_positive)
    common.add_argument("--max-failures", type=_positive, help="Stop a sweep after this many failures")
    common.add_argument(
        "--self-test-negative",
        action="store_true",
        help="Perturb one closed form so the run must fail (charpoly, verify, identities)",
    )

    family = argparse.ArgumentParser(add_help=False)
    family.add_argument("--family", required=True, choices=[f.value for f in Family])
    family.add_argument("--n", type=int, required=True)
    family.add_argument("--i", type=int)

    parser = argparse.ArgumentParser(
        prog="pointedposets", description="Pointed partition posets: enumeration and verification."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("enumerate", parents=[common, family], help="List elements and covers")
    sub.add_parser("counts", parents=[common, family], help="Counts by rank against generating functions")
    sub.add_parser("charpoly", parents=[common, family], help="Characteristic polynomial against the closed form")
    sub.add_parser("semimodularity", parents=[common, family], help="Semimodularity with a witness")

    homology = sub.add_parser("homology", parents=[common, family], help="Interval homology")
    homology.add_argument("--bottom", help="Bottom of a single interval")
    homology.add_argument("--top", help="Top of a single interval")
    homology.add_argument("--all-intervals", action="store_true", help="List passing intervals too")

    verify = sub.add_parser("verify", parents=[common], help="Theorem sweep")
    verify.add_argument("--family", choices=(*THEOREM_GROUPS, "all"), required=True)
    verify.add_argument("--max-n", type=_positive)

    hopf = sub.add_parser("hopf", parents=[common], help="Coproducts and the Lambert table")
    hopf.add_argument("--n", type=int, default=6)
    hopf.add_argument("--coassociative-max-n", type=int, default=5)

    identities = sub.add_parser("identities", parents=[common], help="Lemma sweep")
    identities.add_argument("--lemma", action="append", choices=sorted(LEMMAS))
    identities.add_argument("--max-n", type=int, help="Grid bound")

    coxeter = sub.add_parser("coxeter", parents=[common], help="Weyl-type predictions")
    coxeter.add_argument("--max-n", type=_positive)
    return parser


def _validate(args: argparse.Namespace):
    """Reject bad flag combinations before any computation starts."""
    if getattr(args, "family", None) in {f.value for f in Family} and hasattr(args, "i"):
        _spec(args)
    if args.command == "hopf" and args.n < 2:
        raise OutOfRange(f"hopf needs --n >= 2, got {args.n}.")
    if args.command == "identities" and args.max_n is not None:
        for name in args.lemma or LEMMAS:
            LemmaSpec(name, args.max_n)
    if args.command == "homology" and args.bottom is not None and args.top is None:
        raise OutOfRange("--top is required with --bottom.")
    if args.self_test_negative and args.command not in NEGATIVE_CONTROLS:
        raise OutOfRange(f"{args.command} has no negative control; drop --self-test-negative.")


def run(argv: Sequence[str] | None = None) -> int:
    """Parse `argv`, run one subcommand and write its report.

    Returns:
        The exit status: 0 all checks pass, 1 some check fails, 2 usage or limit error.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
    except SystemExit as exc:
        return 2 if exc.code else 0
    configure_logging(args.verbose, get_settings().log_level)
    updates = {"element_cap": args.cap} if args.cap else {}
    try:
        _validate(args)
        with override_settings(**updates):
            output = COMMANDS[args.command](args)
    except PosetsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = output.render(args.format).rstrip("\n")
    if args.out is not None:
        args.out.write_text(text + "\n")
    else:
        print(text)
    return 0 if output.passed else 1


def main():
    sys.exit(run())
