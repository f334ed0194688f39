"""
Exact integer polynomials and truncated rational power series.

Everything here is immutable and exact: polynomial coefficients are Python
integers and series coefficients are `fractions.Fraction`, so nothing rounds or
overflows. Polynomials are in the single variable `x` of the characteristic
polynomials; series are in one or two of the variables `u` (size) and `x`
(number of blocks) of the exponential generating functions.

```python
from pointedposets.exactalg import IntPolynomial, bracket

chi = IntPolynomial.linear(3) ** 2
print(chi)
# x^2-6x+9
print(bracket(3))
# x^3-6x^2+11x-6
```
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal, Mapping, Union

from pointedposets.errors import NonzeroConstantTerm, NotDivisible, NotReversible

Scalar = Union[int, Fraction]
Exponents = tuple[int, ...]


@dataclass(frozen=True)
class IntPolynomial:
    """Dense univariate polynomial with exact integer coefficients.

    `coeffs[d]` is the coefficient of `x**d`. Trailing zeros are stripped on
    construction, so the zero polynomial is the empty tuple.
    """

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        for c in coeffs:
            if isinstance(c, bool) or not isinstance(c, int):
                raise TypeError(
                    f"Expected integer coefficients, got {type(c).__name__} {c!r}."
                )
        end = len(coeffs)
        while end and coeffs[end - 1] == 0:
            end -= 1
        object.__setattr__(self, "coeffs", coeffs[:end])

    @classmethod
    def constant(cls, c: int) -> IntPolynomial:
        """The constant polynomial `c`."""
        return cls((c,))

    @classmethod
    def x(cls) -> IntPolynomial:
        """The variable `x`."""
        return cls((0, 1))

    @classmethod
    def linear(cls, root: int) -> IntPolynomial:
        """The monic linear polynomial `x - root`."""
        return cls((-root, 1))

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> IntPolynomial:
        """The monic polynomial `prod(x - r for r in roots)`."""
        result = cls.constant(1)
        for r in roots:
            result = result * cls.linear(r)
        return result

    @property
    def degree(self) -> int:
        """Degree of the polynomial, `-1` for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def constant_term(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    @property
    def leading_coefficient(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def coefficient(self, degree: int) -> int:
        """Coefficient of `x**degree` (0 outside the stored range)."""
        if 0 <= degree < len(self.coeffs):
            return self.coeffs[degree]
        return 0

    def __call__(self, value: Scalar) -> Scalar:
        result: Scalar = 0
        for c in reversed(self.coeffs):
            result = result * value + c
        return result

    def __add__(self, other: IntPolynomial | int) -> IntPolynomial:
        other = _as_polynomial(other)
        if other is NotImplemented:
            return NotImplemented
        size = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(
            tuple(self.coefficient(d) + other.coefficient(d) for d in range(size))
        )

    __radd__ = __add__

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: IntPolynomial | int) -> IntPolynomial:
        other = _as_polynomial(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: int) -> IntPolynomial:
        return (-self) + other

    def __mul__(self, other: IntPolynomial | int) -> IntPolynomial:
        other = _as_polynomial(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> IntPolynomial:
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError(f"Expected a non-negative integer exponent, got {exponent!r}.")
        result = IntPolynomial.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def exact_div(self, divisor: IntPolynomial) -> IntPolynomial:
        """Return `q` with `divisor * q == self`.

        Raises:
            ZeroDivisionError: If `divisor` is the zero polynomial.
            NotDivisible: If the division leaves a remainder or needs fractions.
        """
        if divisor.is_zero:
            raise ZeroDivisionError("Polynomial division by zero.")
        remainder = list(self.coeffs)
        lead = divisor.leading_coefficient
        shift_max = len(remainder) - len(divisor.coeffs)
        quotient = [0] * max(shift_max + 1, 0)
        for shift in range(shift_max, -1, -1):
            top = remainder[shift + divisor.degree]
            if top == 0:
                continue
            if top % lead:
                raise NotDivisible(
                    f"{self} is not divisible by {divisor} over the integers.",
                    self,
                    divisor,
                )
            q = top // lead
            quotient[shift] = q
            for d, c in enumerate(divisor.coeffs):
                remainder[shift + d] -= q * c
        if any(remainder):
            raise NotDivisible(f"{self} is not divisible by {divisor}.", self, divisor)
        return IntPolynomial(tuple(quotient))

    def to_json(self) -> list[str]:
        """Decimal coefficient strings, constant term first."""
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Iterable[str | int]) -> IntPolynomial:
        return cls(tuple(int(c) for c in data))

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts: list[str] = []
        for degree in range(self.degree, -1, -1):
            c = self.coeffs[degree]
            if c == 0:
                continue
            sign = "-" if c < 0 else ("+" if parts else "")
            magnitude = abs(c)
            if degree == 0:
                body = str(magnitude)
            else:
                body = "" if magnitude == 1 else str(magnitude)
                body += "x" if degree == 1 else f"x^{degree}"
            parts.append(sign + body)
        return "".join(parts)


def _as_polynomial(value: IntPolynomial | int) -> IntPolynomial:
    if isinstance(value, IntPolynomial):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return IntPolynomial.constant(value)
    return NotImplemented


@functools.lru_cache(maxsize=None)
def bracket(n: int) -> IntPolynomial:
    """The falling product `<n> = (x-1)(x-2)...(x-n)`; `<0> = 1`."""
    if n < 0:
        raise ValueError(f"<n> is a polynomial only for n >= 0, got {n}.")
    return IntPolynomial.from_roots(range(1, n + 1))


def poly_arith(
    op: Literal["add", "sub", "mul", "pow"],
    p: IntPolynomial,
    q: IntPolynomial | int,
) -> IntPolynomial:
    """Apply `op` to `p` and `q` (an exponent when `op` is `pow`)."""
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "pow":
        if not isinstance(q, int):
            raise TypeError(f"Expected an integer exponent, got {type(q).__name__}.")
        return p**q
    raise ValueError(f"Unknown polynomial operation {op!r}.")


def poly_exact_div(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    """Exact quotient `p / q`; raises `NotDivisible` on a remainder."""
    return p.exact_div(q)


@dataclass(frozen=True)
class RationalSeries:
    """Truncated power series with exact rational coefficients.

    `precision[k]` is the exclusive bound on the exponent of `variables[k]`:
    every stored term has exponents strictly below it.
    """

    variables: tuple[str, ...]
    precision: tuple[int, ...]
    terms: tuple[tuple[Exponents, Fraction], ...] = ()

    def __post_init__(self):
        if not self.variables or len(self.variables) > 2:
            raise ValueError(
                f"Expected one or two variables, got {len(self.variables)}."
            )
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"Repeated variable in {self.variables}.")
        if len(self.precision) != len(self.variables):
            raise ValueError("Expected one precision per variable.")
        if any(p < 1 for p in self.precision):
            raise ValueError(f"Precision must be positive, got {self.precision}.")

    @classmethod
    def from_terms(
        cls,
        variables: tuple[str, ...],
        precision: tuple[int, ...],
        terms: Mapping[Exponents, Scalar],
    ) -> RationalSeries:
        """Build a series, dropping zero terms and terms beyond `precision`."""
        kept = sorted(
            (exps, Fraction(c))
            for exps, c in terms.items()
            if c and all(e < p for e, p in zip(exps, precision))
        )
        for exps, _ in kept:
            if len(exps) != len(variables) or any(e < 0 for e in exps):
                raise ValueError(f"Invalid exponent tuple {exps} for {variables}.")
        return cls(tuple(variables), tuple(precision), tuple(kept))

    @classmethod
    def variable(
        cls, name: str, variables: tuple[str, ...], precision: tuple[int, ...]
    ) -> RationalSeries:
        """The series consisting of the single variable `name`."""
        exps = tuple(1 if v == name else 0 for v in variables)
        if name not in variables:
            raise ValueError(f"{name!r} is not one of {variables}.")
        return cls.from_terms(variables, precision, {exps: 1})

    @classmethod
    def constant(
        cls, value: Scalar, variables: tuple[str, ...], precision: tuple[int, ...]
    ) -> RationalSeries:
        return cls.from_terms(variables, precision, {(0,) * len(variables): value})

    @classmethod
    def univariate(
        cls, coefficients: Iterable[Scalar], variable: str = "x"
    ) -> RationalSeries:
        """Series in one variable from coefficients indexed by degree."""
        coefficients = list(coefficients)
        return cls.from_terms(
            (variable,),
            (max(len(coefficients), 1),),
            {(d,): c for d, c in enumerate(coefficients)},
        )

    @functools.cached_property
    def _table(self) -> dict[Exponents, Fraction]:
        return dict(self.terms)

    def coefficient(self, *exponents: int) -> Fraction:
        """Coefficient of the monomial with the given exponents (0 if absent)."""
        if len(exponents) != len(self.variables):
            raise ValueError(
                f"Expected {len(self.variables)} exponents, got {len(exponents)}."
            )
        return self._table.get(tuple(exponents), Fraction(0))

    @property
    def constant_term(self) -> Fraction:
        return self.coefficient(*([0] * len(self.variables)))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coefficients(self) -> list[Fraction]:
        """Dense coefficient list of a univariate series, indexed by degree."""
        if len(self.variables) != 1:
            raise ValueError("Dense coefficients are only defined for one variable.")
        return [self.coefficient(d) for d in range(self.precision[0])]

    def _check_compatible(self, other: RationalSeries) -> tuple[int, ...]:
        if self.variables != other.variables:
            raise ValueError(
                f"Series in {self.variables} and {other.variables} do not combine."
            )
        return tuple(min(a, b) for a, b in zip(self.precision, other.precision))

    def truncate(self, order: int) -> RationalSeries:
        """Keep exponents up to `order` (inclusive) in every variable."""
        precision = tuple(min(p, order + 1) for p in self.precision)
        return RationalSeries.from_terms(self.variables, precision, self._table)

    def __add__(self, other: RationalSeries | Scalar) -> RationalSeries:
        if not isinstance(other, RationalSeries):
            other = RationalSeries.constant(other, self.variables, self.precision)
        precision = self._check_compatible(other)
        table = dict(self._table)
        for exps, c in other.terms:
            table[exps] = table.get(exps, 0) + c
        return RationalSeries.from_terms(self.variables, precision, table)

    __radd__ = __add__

    def __neg__(self) -> RationalSeries:
        return self * -1

    def __sub__(self, other: RationalSeries | Scalar) -> RationalSeries:
        return self + (-other)

    def __rsub__(self, other: Scalar) -> RationalSeries:
        return (-self) + other

    def __mul__(self, other: RationalSeries | Scalar) -> RationalSeries:
        if not isinstance(other, RationalSeries):
            value = Fraction(other)
            return RationalSeries.from_terms(
                self.variables,
                self.precision,
                {exps: c * value for exps, c in self.terms},
            )
        precision = self._check_compatible(other)
        table: dict[Exponents, Fraction] = {}
        for ea, ca in self.terms:
            for eb, cb in other.terms:
                exps = tuple(a + b for a, b in zip(ea, eb))
                if all(e < p for e, p in zip(exps, precision)):
                    table[exps] = table.get(exps, 0) + ca * cb
        return RationalSeries.from_terms(self.variables, precision, table)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> RationalSeries:
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError(f"Expected a non-negative integer exponent, got {exponent!r}.")
        result = RationalSeries.constant(1, self.variables, self.precision)
        for _ in range(exponent):
            result = result * self
        return result

    def shift(self, variable: str, amount: int) -> RationalSeries:
        """Multiply by `variable ** amount`; a negative amount divides exactly.

        Raises:
            ValueError: If dividing would produce a negative exponent.
        """
        k = self.variables.index(variable)
        table: dict[Exponents, Fraction] = {}
        for exps, c in self.terms:
            e = exps[k] + amount
            if e < 0:
                raise ValueError(f"Series is not divisible by {variable}^{-amount}.")
            table[exps[:k] + (e,) + exps[k + 1 :]] = c
        precision = list(self.precision)
        precision[k] = max(precision[k] + amount, 1)
        return RationalSeries.from_terms(self.variables, tuple(precision), table)


def series_exp(f: RationalSeries, order: int) -> RationalSeries:
    """`exp(f)` exact through degree `order` in each variable.

    Raises:
        NonzeroConstantTerm: If `f` does not vanish at the origin.
    """
    if f.constant_term != 0:
        raise NonzeroConstantTerm(f"exp needs a zero constant term, got {f.constant_term}.")
    f = f.truncate(order)
    result = RationalSeries.constant(1, f.variables, f.precision)
    term = result
    # Every term of f has total degree >= 1, so f**k vanishes past the total bound.
    for k in range(1, sum(p - 1 for p in f.precision) + 1):
        term = term * f * Fraction(1, k)
        if term.is_zero:
            break
        result = result + term
    return result


def _check_univariate(f: RationalSeries, name: str):
    if len(f.variables) != 1:
        raise ValueError(f"{name} is defined for univariate series, got {f.variables}.")


def series_compose(f: RationalSeries, g: RationalSeries, order: int) -> RationalSeries:
    """`f(g)` exact through degree `order`.

    Raises:
        NonzeroConstantTerm: If `g` does not vanish at the origin.
    """
    _check_univariate(f, "Composition")
    _check_univariate(g, "Composition")
    if f.variables != g.variables:
        raise ValueError(f"Cannot compose series in {f.variables} and {g.variables}.")
    if g.constant_term != 0:
        raise NonzeroConstantTerm(
            f"The inner series must vanish at 0, got constant {g.constant_term}."
        )
    g = g.truncate(order)
    top = min(f.precision[0] - 1, order)
    result = RationalSeries.constant(f.coefficient(top), g.variables, g.precision)
    for d in range(top - 1, -1, -1):
        result = result * g + f.coefficient(d)
    precision = min(f.precision[0], g.precision[0], order + 1)
    return result.truncate(precision - 1)


def series_reversion(f: RationalSeries, order: int) -> RationalSeries:
    """Compositional inverse `g` of `f`, with `f(g) = g(f) = x` through `order`.

    Raises:
        NonzeroConstantTerm: If `f` does not vanish at the origin.
        NotReversible: If the linear coefficient of `f` is not 1.
    """
    _check_univariate(f, "Reversion")
    if f.constant_term != 0:
        raise NonzeroConstantTerm(f"Reversion needs f(0) = 0, got {f.constant_term}.")
    if f.coefficient(1) != 1:
        raise NotReversible(
            f"Reversion needs a unit linear coefficient, got {f.coefficient(1)}."
        )
    (var,) = f.variables
    precision = min(f.precision[0], order + 1)
    g = RationalSeries.variable(var, f.variables, (precision,))
    for k in range(2, precision):
        # f(g - c x^k) = f(g) - c x^k + O(x^(k+1)) because f'(0) = 1.
        c = series_compose(f, g, k).coefficient(k)
        if c:
            g = g - RationalSeries.from_terms(f.variables, (precision,), {(k,): c})
    return g


def exp_of_variable(
    name: str, variables: tuple[str, ...], order: int
) -> RationalSeries:
    """`exp(name)` truncated at degree `order`, in the given variable frame."""
    precision = tuple(order + 1 for _ in variables)
    return series_exp(RationalSeries.variable(name, variables, precision), order)


def egf_coefficient(series: RationalSeries, *exponents: int) -> Fraction:
    """`n!` times the coefficient of `u^n ...`, `u` being the first variable."""
    return series.coefficient(*exponents) * math.factorial(exponents[0])
