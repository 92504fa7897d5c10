"""Hilbert-Mumford weight of a one-parameter subgroup at a point.

Convention: a coordinate of weight w scales by t^w under lambda(t), and the
weight of lambda at a point is minus the minimal lambda-degree over the
nonvanishing coordinates of a lift.  The value is infinite exactly when the
base limit fails, i.e. some nonzero base coordinate has negative
lambda-degree, so the flow leaves the affine base as t -> 0.

Because the action is diagonal, the weight depends on the point only through
its support pattern; `mu_from_pattern` is the shared core.  `mu_oracle` is an
independent check that enumerates lifted monomials up to a degree bound
instead of trusting the pure-generator argument.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

from .errors import InputError
from .model import GitProblem, OnePS, PointSample, SupportPattern, support


@dataclass(frozen=True, order=False)
class MuValue:
    """An integer weight or the infinite marker (no limit point)."""

    value: int | None = None

    @classmethod
    def finite(cls, value: int) -> "MuValue":
        return cls(int(value))

    @classmethod
    def infinite(cls) -> "MuValue":
        return cls(None)

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def scaled(self, m: int) -> "MuValue":
        """Value under lambda -> m*lambda for a positive integer m."""
        if m < 1:
            raise InputError(f"scale factor must be >= 1, got {m}")
        if self.is_infinite:
            return self
        return MuValue(self.value * m)

    def __lt__(self, other: int) -> bool:
        return not self.is_infinite and self.value < other

    def __le__(self, other: int) -> bool:
        return not self.is_infinite and self.value <= other

    def __gt__(self, other: int) -> bool:
        return self.is_infinite or self.value > other

    def __ge__(self, other: int) -> bool:
        return self.is_infinite or self.value >= other

    def __str__(self) -> str:
        return "inf" if self.is_infinite else str(self.value)


def _dot(lam: OnePS, weight: tuple[int, ...]) -> int:
    return sum(a * b for a, b in zip(lam, weight))


def mu_from_pattern(problem: GitProblem, pattern: SupportPattern, lam: OnePS) -> MuValue:
    """Weight of lambda against any point realizing the given support pattern."""
    lam = problem.check_lambda(lam)
    for name in pattern.base:
        if _dot(lam, problem.base_weight(name)) < 0:
            return MuValue.infinite()
    degrees = [_dot(lam, problem.shifted_fiber_weight(name)) for name in pattern.fiber]
    return MuValue.finite(-min(degrees))


def mu(problem: GitProblem, point: PointSample, lam: OnePS) -> MuValue:
    """Weight of lambda at a point; infinite iff the base limit fails."""
    return mu_from_pattern(problem, support(point), lam)


def mu_oracle(
    problem: GitProblem, point: PointSample, lam: OnePS, degree_bound: int
) -> MuValue:
    """Enumeration oracle for `mu`.

    Enumerates lifted monomials a*g, with a a base monomial of total degree
    at most degree_bound and g a fiber generator, evaluates each at the lifted
    point, and takes minus the minimal lambda-degree over the nonvanishing
    ones.  A nonzero base coordinate of negative degree makes the degrees
    unbounded below (a^N * g drops without limit), matching the infinite case.
    """
    if degree_bound < 0:
        raise InputError(f"degree bound must be nonnegative, got {degree_bound}")
    lam = problem.check_lambda(lam)
    support(point)  # zero-section validation
    values = point.as_dict()

    base = list(problem.base_vars)
    for name, weight in base:
        if values[name] != 0 and _dot(lam, weight) < 0:
            return MuValue.infinite()

    best: int | None = None
    fiber_degrees = [
        (_dot(lam, problem.shifted_fiber_weight(name)), values[name])
        for name in problem.fiber_names
    ]
    for size in range(degree_bound + 1):
        for combo in combinations_with_replacement(range(len(base)), size):
            coeff = Fraction(1)
            degree = 0
            for idx in combo:
                name, weight = base[idx]
                coeff *= values[name]
                degree += _dot(lam, weight)
            if coeff == 0:
                continue
            for fdeg, fval in fiber_degrees:
                if fval == 0:
                    continue
                total = degree + fdeg
                if best is None or total < best:
                    best = total
    assert best is not None, "support() guarantees a nonvanishing fiber generator"
    return MuValue.finite(-best)


def limit_point(problem: GitProblem, point: PointSample, lam: OnePS) -> PointSample | None:
    """Specialization of the point under lambda(t) as t -> 0.

    Absent exactly when `mu` is infinite.  Base coordinates of positive
    degree specialize to zero and degree-zero ones survive; fiber coordinates
    survive exactly on the support variables attaining the minimal degree.
    The result is a fixed point of lambda, with the same weight.
    """
    lam = problem.check_lambda(lam)
    pattern = support(point)
    for name in pattern.base:
        if _dot(lam, problem.base_weight(name)) < 0:
            return None
    minimal = min(_dot(lam, problem.shifted_fiber_weight(n)) for n in pattern.fiber)
    base_values = tuple(
        (n, v if v != 0 and _dot(lam, problem.base_weight(n)) == 0 else Fraction(0))
        for n, v in point.base_values
    )
    fiber_values = tuple(
        (
            n,
            v
            if v != 0 and _dot(lam, problem.shifted_fiber_weight(n)) == minimal
            else Fraction(0),
        )
        for n, v in point.fiber_values
    )
    return PointSample(base_values, fiber_values)
