"""
Closed forms, constants, identities and generating-function counts.

This is the oracle layer: every family with a known characteristic polynomial
has a `closed_form`, every constant term an independent `expected_constant`,
and `verify_theorems` compares both against posets built from scratch.

```python
from pointedposets.identities import ClosedFormSpec, closed_form
from pointedposets.partitions import Family

print(closed_form(ClosedFormSpec(Family.B_PRIME, 2)))
# x^2-5x+4
```

Lemma identities are checked exactly, by evaluation at rational points. A
polynomial identity in `x` whose numerator has degree at most `D` is checked at
`D + 1` points where neither side has a pole. `<m>` for negative `m` is
`1 / (x (x+1) ... (x-m-1))`, so `<-1> = 1/x`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator

from pointedposets.errors import OutOfRange
from pointedposets.exactalg import (
    IntPolynomial,
    RationalSeries,
    bracket,
    egf_coefficient,
    exp_of_variable,
    poly_exact_div,
    series_exp,
)
from pointedposets.logging import get_prefect_or_default_logger
from pointedposets.partitions import Family, FamilySpec, family_poset
from pointedposets.posetcore import characteristic_polynomial
from pointedposets.reports import (
    CaseReport,
    LemmaFailure,
    LemmaReport,
    SweepReport,
    TheoremCase,
    TheoremCaseReport,
    Verdict,
)
from pointedposets.settings import get_settings

x = IntPolynomial.x()

# lowest admissible i, None when the closed form takes no i
_CLOSED_FORM_RANGES = {
    Family.A: None,
    Family.A_FIXED: 1,
    Family.A_EXTENDED: None,
    Family.B: None,
    Family.B_FIXED: 0,
    Family.B_PRIME: None,
    Family.BETA: None,
    Family.MA: None,
    Family.MA_FIXED: 1,
    Family.MA_INTERVAL: 0,
}


@dataclass(frozen=True)
class ClosedFormSpec:
    """A family with a known characteristic polynomial, and its parameters.

    `MA_interval` also accepts `i = 0`, which names the whole multi-pointed poset.

    Raises:
        OutOfRange: If the family has no closed form or a parameter is out of range.
    """

    family: Family
    n: int
    i: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if self.family not in _CLOSED_FORM_RANGES:
            raise OutOfRange(f"No closed form is known for family {self.family.value}.")
        if self.n < 1:
            raise OutOfRange(f"Expected n >= 1, got n={self.n}.")
        low = _CLOSED_FORM_RANGES[self.family]
        if low is None and self.i is not None:
            raise OutOfRange(f"Family {self.family.value} takes no i, got i={self.i}.")
        if low is not None and (self.i is None or not low <= self.i <= self.n):
            raise OutOfRange(
                f"Family {self.family.value} needs {low} <= i <= n={self.n}, got i={self.i}."
            )

    @classmethod
    def from_case(cls, case: TheoremCase) -> ClosedFormSpec:
        return cls(case.family, case.n, case.i)

    @property
    def family_spec(self) -> FamilySpec:
        """The poset this closed form describes."""
        if self.family is Family.MA_INTERVAL and self.i == 0:
            return FamilySpec(Family.MA, self.n)
        return FamilySpec(self.family, self.n, self.i)

    @property
    def bounded(self) -> bool:
        """True when the poset has a maximum above its minimum, so its polynomial vanishes at 1.

        One-element posets (`A_fixed(1, 1)`, `MA_fixed(1, 1)`, `MA_interval(1, 1)`) have
        `χ = 1` and are not bounded in this sense.
        """
        family, n, i = self.family, self.n, self.i
        if n == 1 and family in (Family.A_FIXED, Family.MA_FIXED, Family.MA_INTERVAL):
            return False
        return (
            family in (Family.A_EXTENDED, Family.B_PRIME, Family.BETA)
            or (family is Family.A_FIXED and i == 1)
            or (family is Family.MA_INTERVAL and i >= 1)
            or (family is Family.MA_FIXED and i == n)
        )

    def __str__(self) -> str:
        suffix = "" if self.i is None else f", i={self.i}"
        return f"{self.family.value}(n={self.n}{suffix})"


def closed_form(spec: ClosedFormSpec, perturbed: bool = False) -> IntPolynomial:
    """The theorem's characteristic polynomial, expanded.

    Args:
        spec (ClosedFormSpec): Family and parameters.
        perturbed (bool): Add 1 to the result; a negative control for the sweeps.

    Raises:
        NotDivisible: If a rational form does not reduce to a polynomial.
    """
    family, n, i = spec.family, spec.n, spec.i
    if family is Family.A:
        result = IntPolynomial.linear(n) ** (n - 1)
    elif family is Family.A_FIXED:
        if i == n:
            result = poly_exact_div(IntPolynomial.linear(i), IntPolynomial.linear(n))
        else:
            result = IntPolynomial.linear(i) * IntPolynomial.linear(n) ** (n - 1 - i)
    elif family is Family.A_EXTENDED:
        result = x * IntPolynomial.linear(n) ** (n - 1) - (1 - n) ** (n - 1)
    elif family is Family.B:
        result = IntPolynomial.linear(2 * n) ** n
    elif family is Family.B_FIXED:
        result = IntPolynomial.linear(2 * n) ** (n - i)
    elif family is Family.B_PRIME:
        result = IntPolynomial.linear(1) * IntPolynomial.linear(2 * n) ** (n - 1)
    elif family is Family.BETA:
        result = IntPolynomial.linear(1) * IntPolynomial.linear(2 * n + 1) ** (n - 1)
    elif family is Family.MA or (family is Family.MA_INTERVAL and i == 0):
        result = poly_exact_div(bracket(2 * n - 1), bracket(n))
    elif family is Family.MA_INTERVAL:
        result = poly_exact_div(bracket(i) * bracket(2 * n - i - 1), bracket(n))
    else:  # MA_FIXED
        numerator = IntPolynomial.linear(2 * i) * bracket(i) * bracket(2 * n - 1)
        result = poly_exact_div(numerator, IntPolynomial.linear(i) * bracket(n + i))
    return result + 1 if perturbed else result


def expected_constant(spec: ClosedFormSpec) -> int:
    """The theorem's stated constant term, computed independently of `closed_form`."""
    family, n, i = spec.family, spec.n, spec.i
    f = math.factorial
    if family is Family.A:
        value = Fraction((-n) ** (n - 1))
    elif family is Family.A_FIXED:
        value = (-1) ** (n - i) * i * Fraction(n) ** (n - 1 - i)
    elif family is Family.A_EXTENDED:
        value = Fraction(-((1 - n) ** (n - 1)))
    elif family is Family.B:
        value = Fraction((-2 * n) ** n)
    elif family is Family.B_FIXED:
        value = Fraction((-2 * n) ** (n - i))
    elif family is Family.B_PRIME:
        value = Fraction((-1) ** n * (2 * n) ** (n - 1))
    elif family is Family.BETA:
        value = Fraction((-1) ** n * (2 * n + 1) ** (n - 1))
    elif family is Family.MA or (family is Family.MA_INTERVAL and i == 0):
        value = Fraction((-1) ** (n - 1) * f(2 * n - 1), f(n))
    elif family is Family.MA_INTERVAL:
        value = Fraction((-1) ** (n - 1) * f(i) * f(2 * n - i - 1), f(n))
    else:  # MA_FIXED
        value = Fraction((-1) ** (n - 1) * 2 * f(i) * f(2 * n - 1), f(n + i))
    if value.denominator != 1:
        raise ValueError(f"Constant of {spec} is not an integer: {value}.")
    return value.numerator


def expected_top_rank(spec: ClosedFormSpec) -> int:
    """Expected rank of the top homology.

    Bounded families give `|constant|`. Whole posets with several maximal
    elements (A, B, MA) give the sum over their maximal intervals.

    Raises:
        OutOfRange: For a family with several maxima and no aggregate.
    """
    family, n = spec.family, spec.n
    if spec.bounded:
        return abs(expected_constant(spec))
    if family is Family.A:
        return n ** (n - 1)
    if family is Family.B or (family is Family.B_FIXED and spec.i == 0):
        return (2 * n) ** n
    if family is Family.MA or (family is Family.MA_INTERVAL and spec.i == 0):
        return sum(
            math.comb(n, i) * math.factorial(i) * math.factorial(2 * n - i - 1) // math.factorial(n)
            for i in range(1, n + 1)
        )
    raise OutOfRange(f"{spec} has several maximal elements and no aggregate top rank.")


# theorem sweeps


def theorem_cases(group: str, max_n: int) -> list[TheoremCase]:
    """Cases of one theorem group, sorted by parameters.

    Groups: `A` (A, A_fixed), `B` (B_fixed with i = 0..n, B_prime, beta),
    `MA` (MA, MA_fixed, MA_interval), `A_extended`.
    """
    cases: list[TheoremCase] = []
    for n in range(1, max_n + 1):
        if group == "A":
            cases.append(TheoremCase(family=Family.A, n=n))
            cases += [TheoremCase(family=Family.A_FIXED, n=n, i=i) for i in range(1, n + 1)]
        elif group == "B":
            cases += [TheoremCase(family=Family.B_FIXED, n=n, i=i) for i in range(n + 1)]
            cases.append(TheoremCase(family=Family.B_PRIME, n=n))
            cases.append(TheoremCase(family=Family.BETA, n=n))
        elif group == "MA":
            cases.append(TheoremCase(family=Family.MA, n=n))
            cases += [TheoremCase(family=Family.MA_FIXED, n=n, i=i) for i in range(1, n + 1)]
            cases += [TheoremCase(family=Family.MA_INTERVAL, n=n, i=i) for i in range(1, n + 1)]
        elif group == "A_extended":
            cases.append(TheoremCase(family=Family.A_EXTENDED, n=n))
        else:
            raise ValueError(f"Unknown theorem group {group!r}; expected one of {THEOREM_GROUPS}.")
    return cases


THEOREM_GROUPS = ("A", "B", "MA", "A_extended")


def default_max_n(group: str) -> int:
    settings = get_settings()
    return {
        "A": settings.verify_a_max_n,
        "A_extended": settings.verify_a_max_n,
        "B": settings.verify_b_max_n,
        "MA": settings.verify_ma_max_n,
    }[group]


def check_theorem_case(case: TheoremCase, perturbed: bool = False) -> TheoremCaseReport:
    """Build the poset, compute its characteristic polynomial, compare with the closed form."""
    spec = ClosedFormSpec.from_case(case)
    expected = closed_form(spec, perturbed=perturbed)
    computed = characteristic_polynomial(family_poset(spec.family_spec))
    constant = expected_constant(spec)
    problems = []
    if computed != expected:
        problems.append("polynomial differs")
    if computed.constant_term != constant:
        problems.append("constant differs")
    if not perturbed and spec.bounded and computed(1) != 0:
        problems.append("does not vanish at 1")
    if problems:
        logger = get_prefect_or_default_logger(__name__)
        logger.warning(f"{spec}: computed {computed}, expected {expected}.")
    return TheoremCaseReport(
        name=str(spec),
        verdict=Verdict.FAIL if problems else Verdict.PASS,
        detail="; ".join([f"computed {computed}", f"closed form {expected}", *problems]),
        family=case.family,
        n=case.n,
        i=case.i,
        expected=str(expected),
        computed=str(computed),
        expected_constant=constant,
        computed_constant=computed.constant_term,
    )


def verify_theorems(
    group: str, max_n: int | None = None, perturb_first: bool = False
) -> SweepReport:
    """Compare every case of `group` up to `max_n` with its closed form.

    `perturb_first` perturbs the first case's closed form, so the sweep must fail.
    """
    max_n = default_max_n(group) if max_n is None else max_n
    logger = get_prefect_or_default_logger(__name__)
    cases = theorem_cases(group, max_n)
    logger.info(f"Verifying {len(cases)} cases of group {group} up to n={max_n}.")
    rows = [
        check_theorem_case(case, perturbed=perturb_first and k == 0)
        for k, case in enumerate(cases)
    ]
    return SweepReport(title=f"theorems {group} (n <= {max_n})", rows=rows)


# exact evaluation helpers


def bracket_value(m: int, at: Fraction) -> Fraction:
    """`<m>` at `x = at`; `<m> = 1 / (x (x+1) ... (x-m-1))` for negative `m`.

    Raises:
        ZeroDivisionError: At a pole.
    """
    if m >= 0:
        return Fraction(math.prod(at - j for j in range(1, m + 1)))
    return 1 / Fraction(math.prod(at + t for t in range(-m)))


def _candidates() -> Iterator[int]:
    yield 0
    for k in itertools.count(1):
        yield k
        yield -k


def _compositions(total: int, parts: int, minimum: int = 1) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(minimum, total - minimum * (parts - 1) + 1):
        for rest in _compositions(total - first, parts - 1, minimum):
            yield (first, *rest)


def _tree_weight(m: int) -> Fraction:
    """`m^(m-1) / m!`, the weight of rooted trees on `m` vertices."""
    return Fraction(m ** (m - 1), math.factorial(m))


@dataclass(frozen=True)
class _Lemma:
    """An identity `sum(terms) == rhs`; `default_bound` None means `Settings.lemma_max_n`."""

    grid: Callable[[int], Iterable[dict[str, int]]]
    default_bound: int | None
    variables: tuple[str, ...]
    degree: Callable[[dict[str, int]], int]
    terms: Callable[[dict[str, int], dict[str, Fraction]], list[Fraction]]
    rhs: Callable[[dict[str, int], dict[str, Fraction]], Fraction]


def _induction_step_terms(p, v):
    n, i, X = p["n"], p["i"], v["x"]
    terms = [i * Fraction(n) ** (n - 1 - i) * (-1) ** (n - i)]
    for j in range(1, n - i + 1):
        terms.append(
            (-1) ** (j + 1) * math.comb(n - i, j) * (X - (j + i)) * (X - n) ** (n - 1 - i - j) * X**j
        )
    return terms


def _dominant_a_terms(p, v):
    n, i = p["n"], p["i"]
    return [math.prod((_tree_weight(m) for m in c), start=Fraction(1)) for c in _compositions(n, i)]


def _dominant_b_terms(p, v):
    n, i = p["n"], p["i"]
    terms = []
    for m in range(n - i + 1):
        tail = Fraction(m**m, math.factorial(m))
        for c in _compositions(n - m, i):
            terms.append(tail * math.prod((_tree_weight(k) for k in c), start=Fraction(1)))
    return terms


def _useful_b_terms(p, v):
    n, X, Y, U = p["n"], v["x"], v["y"], v["u"]
    return [
        math.comb(n - 1, j) * (Y + U * j) ** (n - j - 1) * (X - U * j) ** (j - 1)
        for j in range(n)
    ]


def _convolution_terms(p, v):
    m, j, k, X = p["m"], p["j"], p["k"], v["x"]
    f = math.factorial
    return [
        math.comb(m, s)
        * Fraction((-1) ** s * j * f(2 * s + j - 1), f(s + j))
        * (X - k)
        * bracket_value(2 * (m - s) + k - 1, X)
        / bracket_value(m - s + k, X)
        for s in range(m + 1)
    ]


def _facteur_terms(p, v):
    k, X = p["k"], v["x"]
    return [
        X * math.comb(k - 1, j - 1) * (-1) ** (j - 1) * math.factorial(j - 1) * bracket_value(k - j - 1, X)
        for j in range(1, k + 1)
    ]


def _mdominant_terms(p, v):
    n, i = p["n"], p["i"]
    f = math.factorial
    return [Fraction(math.comb(n - i, j - i) * f(j) * f(2 * n - j - 1), f(n)) for j in range(i, n + 1)]


def _vanishing_terms(p, v):
    n, X = p["n"], v["x"]
    return [
        math.comb(n, j) * (-1) ** j * (X - 2 * j) * bracket_value(j - 1, X) / bracket_value(n + j, X)
        for j in range(n + 1)
    ]


def _pairs(low: int) -> Callable[[int], Iterator[dict[str, int]]]:
    return lambda bound: (
        {"n": n, "i": i} for n in range(1, bound + 1) for i in range(low, n + 1)
    )


LEMMAS: dict[str, _Lemma] = {
    "induction_step": _Lemma(
        grid=_pairs(0),
        default_bound=None,
        variables=("x",),
        degree=lambda p: p["n"] + 1,
        terms=_induction_step_terms,
        rhs=lambda p, v: (v["x"] - p["i"]) * (v["x"] - p["n"]) ** (p["n"] - 1 - p["i"]),
    ),
    "dominantA": _Lemma(
        grid=_pairs(1),
        default_bound=10,
        variables=(),
        degree=lambda p: 0,
        terms=_dominant_a_terms,
        rhs=lambda p, v: p["i"] * Fraction(p["n"]) ** (p["n"] - 1 - p["i"]) / math.factorial(p["n"] - p["i"]),
    ),
    "usefulB": _Lemma(
        grid=lambda bound: ({"n": n} for n in range(1, bound + 1)),
        default_bound=None,
        variables=("x", "y", "u"),
        degree=lambda p: p["n"],
        terms=_useful_b_terms,
        rhs=lambda p, v: (v["x"] + v["y"]) ** (p["n"] - 1) / v["x"],
    ),
    "dominantB": _Lemma(
        grid=_pairs(1),
        default_bound=10,
        variables=(),
        degree=lambda p: 0,
        terms=_dominant_b_terms,
        rhs=lambda p, v: Fraction(p["n"] ** (p["n"] - p["i"]), math.factorial(p["n"] - p["i"])),
    ),
    "convolution": _Lemma(
        grid=lambda bound: (
            {"m": m, "j": j, "k": k}
            for m in range(bound + 1)
            for j in range(1, 5)
            for k in range(1, 5)
        ),
        default_bound=6,
        variables=("x",),
        degree=lambda p: 2 * p["m"] + p["j"] + p["k"] + 1,
        terms=_convolution_terms,
        rhs=lambda p, v: (v["x"] - (p["j"] + p["k"]))
        * bracket_value(2 * p["m"] + p["j"] + p["k"] - 1, v["x"])
        / bracket_value(p["m"] + p["j"] + p["k"], v["x"]),
    ),
    "facteur": _Lemma(
        grid=lambda bound: ({"k": k} for k in range(1, bound + 1)),
        default_bound=10,
        variables=("x",),
        degree=lambda p: p["k"],
        terms=_facteur_terms,
        rhs=lambda p, v: bracket_value(p["k"] - 1, v["x"]),
    ),
    "Mdominant": _Lemma(
        grid=_pairs(1),
        default_bound=10,
        variables=(),
        degree=lambda p: 0,
        terms=_mdominant_terms,
        rhs=lambda p, v: Fraction(
            2 * math.factorial(p["i"]) * math.factorial(2 * p["n"] - 1), math.factorial(p["n"] + p["i"])
        ),
    ),
    "f32_vanishing": _Lemma(
        grid=lambda bound: ({"n": n} for n in range(1, bound + 1)),
        default_bound=None,
        variables=("x",),
        degree=lambda p: 2 * p["n"] + 1,
        terms=_vanishing_terms,
        rhs=lambda p, v: Fraction(0),
    ),
}


@dataclass(frozen=True)
class LemmaSpec:
    """A named identity and the bound of its parameter grid.

    `perturbed` counts the first summand twice: a negative control that must fail.
    """

    name: str
    bound: int | None = None
    perturbed: bool = False

    def __post_init__(self):
        if self.name not in LEMMAS:
            raise OutOfRange(f"Unknown lemma {self.name!r}; expected one of {sorted(LEMMAS)}.")
        if self.bound is not None and self.bound < (0 if self.name == "convolution" else 1):
            raise OutOfRange(f"Grid bound {self.bound} is too small for {self.name}.")

    @property
    def effective_bound(self) -> int:
        if self.bound is not None:
            return self.bound
        default = LEMMAS[self.name].default_bound
        return get_settings().lemma_max_n if default is None else default


def _evaluate(lemma: _Lemma, params: dict[str, int], point: dict[str, Fraction], perturbed: bool):
    terms = lemma.terms(params, point)
    lhs = sum(terms, Fraction(0))
    if perturbed and terms:
        lhs += terms[0]
    return lhs, Fraction(lemma.rhs(params, point))


def _points(lemma: _Lemma, params: dict[str, int]) -> Iterator[dict[str, Fraction]]:
    if not lemma.variables:
        yield {}
        return
    count = lemma.degree(params) + 1
    if len(lemma.variables) == 1:
        (name,) = lemma.variables
        for value in _candidates():
            yield {name: Fraction(value)}
        return
    # x stays positive so that no point is a pole
    ranges = [range(1, count + 1) if v == "x" else range(count) for v in lemma.variables]
    for values in itertools.product(*ranges):
        yield {v: Fraction(c) for v, c in zip(lemma.variables, values)}


def verify_lemma(spec: LemmaSpec) -> LemmaReport:
    """Check one identity over its grid; every failing `(parameters, point)` is listed."""
    lemma = LEMMAS[spec.name]
    checked, failures = 0, []
    for params in lemma.grid(spec.effective_bound):
        needed = lemma.degree(params) + 1 if len(lemma.variables) == 1 else None
        good = 0
        for point in _points(lemma, params):
            try:
                lhs, rhs = _evaluate(lemma, params, point, spec.perturbed)
            except ZeroDivisionError:
                continue
            checked += 1
            good += 1
            if lhs != rhs:
                failures.append(
                    LemmaFailure(
                        parameters=params,
                        point={k: str(v) for k, v in point.items()},
                        lhs=str(lhs),
                        rhs=str(rhs),
                    )
                )
            if needed is not None and good >= needed:
                break
    if failures:
        logger = get_prefect_or_default_logger(__name__)
        logger.warning(f"Lemma {spec.name}: {len(failures)} of {checked} evaluations fail.")
    return LemmaReport(
        name=spec.name,
        verdict=Verdict.FAIL if failures else Verdict.PASS,
        detail=f"{len(failures)} failing points" if failures else "",
        lemma=spec.name,
        checked=checked,
        failures=failures,
    )


def verify_lemmas(
    names: Iterable[str] | None = None, bound: int | None = None, perturb: str | None = None
) -> SweepReport:
    """Check several identities; `perturb` names one to run as a negative control."""
    names = list(LEMMAS) if names is None else list(names)
    rows = [verify_lemma(LemmaSpec(name, bound, perturbed=name == perturb)) for name in names]
    return SweepReport(title="identities", rows=rows)


# generating functions


def _egf_series(family: Family, N: int) -> RationalSeries:
    frame = ("u", "x")
    precision = (N + 1, N + 1)
    var_x = RationalSeries.variable("x", frame, precision)
    var_u = RationalSeries.variable("u", frame, precision)
    exp_u = exp_of_variable("u", frame, N)
    if family is Family.A:
        inner = var_x * var_u * exp_u
    else:
        inner = var_x * exp_u * (exp_u - 1)
    return (series_exp(inner, N) - 1).shift("x", -1)


def egf_counts(family: Family, N: int) -> dict[int, list[int]]:
    """Counts of elements with `k` blocks, `k = 1..n`, for `n = 1..N`.

    Read off `(e^{x u e^u} - 1) / x` (type A) or `(e^{x e^u (e^u - 1)} - 1) / x`
    (multi-pointed) as `n!` times the coefficient of `u^n x^(k-1)`.

    Raises:
        OutOfRange: If `family` is not A or MA, or `N` exceeds `Settings.series_order`.
    """
    family = Family(family)
    if family not in (Family.A, Family.MA):
        raise OutOfRange(f"Generating functions are tabulated for A and MA, not {family.value}.")
    order = get_settings().series_order
    if not 1 <= N <= order:
        raise OutOfRange(f"Expected 1 <= N <= {order}, got N={N}.")
    series = _egf_series(family, N)
    table = {}
    for n in range(1, N + 1):
        values = [egf_coefficient(series, n, k - 1) for k in range(1, n + 1)]
        table[n] = [int(v) for v in values]
    return table


# Weyl-type profiles


@dataclass(frozen=True)
class CoxeterPrediction:
    """Expected profile of a pointed partition poset attached to a Weyl type."""

    kind: str
    n: int
    coxeter_number: int
    maximal_elements: int | None
    characteristic: IntPolynomial
    maximal_interval: IntPolynomial | None


def coxeter_predictions(kind: str, n: int) -> CoxeterPrediction:
    """Profile predicted from the Coxeter number `h` and the exponents.

    `A` is type `A_{n-1}` (`h = n`, rank `n - 1`), `B` is type `B_n` (`h = 2n`,
    rank `n`): `h` maximal elements, `χ = (x-h)^rank`, maximal intervals with
    `(x-1)(x-h)^(rank-1)`. `MA` is the multi-pointed type A poset with
    `χ = ∏ (x - (h + e))` over the exponents `e = 1..n-1`.
    """
    if n < 1:
        raise OutOfRange(f"Expected n >= 1, got n={n}.")
    if kind == "A":
        h, rank = n, n - 1
    elif kind == "B":
        h, rank = 2 * n, n
    elif kind == "MA":
        h = n
        chi = IntPolynomial.from_roots(h + e for e in range(1, n))
        return CoxeterPrediction(kind, n, h, None, chi, None)
    else:
        raise ValueError(f"Unknown kind {kind!r}; expected 'A', 'B' or 'MA'.")
    chi = IntPolynomial.linear(h) ** rank
    upper = IntPolynomial.linear(1) * IntPolynomial.linear(h) ** (rank - 1) if rank >= 1 else None
    return CoxeterPrediction(kind, n, h, h, chi, upper)


def _coxeter_row(kind: str, n: int) -> CaseReport:
    prediction = coxeter_predictions(kind, n)
    whole = {"A": FamilySpec(Family.A, n), "B": FamilySpec(Family.B, n), "MA": FamilySpec(Family.MA, n)}[kind]
    P = family_poset(whole)
    problems = []
    if characteristic_polynomial(P) != prediction.characteristic:
        problems.append("characteristic polynomial")
    if prediction.maximal_elements is not None and len(P.maximal_elements()) != prediction.maximal_elements:
        problems.append("number of maximal elements")
    if prediction.maximal_interval is not None:
        upper = FamilySpec(Family.A_FIXED, n, 1) if kind == "A" else FamilySpec(Family.B_PRIME, n)
        if characteristic_polynomial(family_poset(upper)) != prediction.maximal_interval:
            problems.append("maximal interval")
    return CaseReport(
        name=f"{kind}(n={n}) h={prediction.coxeter_number}",
        verdict=Verdict.FAIL if problems else Verdict.PASS,
        detail=("mismatch: " + ", ".join(problems)) if problems else str(prediction.characteristic),
    )


def verify_coxeter_predictions(max_n: int | None = None) -> SweepReport:
    """Compare the Weyl-type profiles with the built posets, each kind up to its sweep bound."""
    rows = []
    for kind, group in (("A", "A"), ("B", "B"), ("MA", "MA")):
        bound = default_max_n(group) if max_n is None else min(max_n, default_max_n(group))
        start = 2 if kind == "A" else 1
        rows += [_coxeter_row(kind, n) for n in range(start, bound + 1)]
    return SweepReport(title="coxeter predictions", rows=rows)
