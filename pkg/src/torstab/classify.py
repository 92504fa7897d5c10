"""Stability verdicts, pattern tables, and stabilizer orders.

The trichotomy is decided by exact cone feasibility on the support pattern:
with B the weights of the nonzero base coordinates and F the shifted weights
of the nonzero fiber coordinates,

  * unstable    iff  {all of B >= 0, all of F >= 1} has an integral point
                     (that point is a destabilizing subgroup, weight < 0);
  * not stable  iff  the closed cone {B >= 0, F >= 0} contains a nonzero
                     integral point (weight <= 0 against it).

A nonzero subgroup acting trivially on every declared variable still blocks
stability: it witnesses a positive-dimensional stabilizer.

Every verdict's witness is re-verified by an independent weight computation
before it is returned; a mismatch raises InternalInvariantError.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .cones import cone_has_nonzero, make_cone_problem, solve_cone
from .errors import InputError, InternalInvariantError
from .model import GitProblem, OnePS, PointSample, SupportPattern, support
from .mu import MuValue, mu_from_pattern
from .snf import lattice_rank_and_index


class StabilityStatus(enum.Enum):
    STABLE = "stable"
    STRICTLY_SEMISTABLE = "strictly-semistable"
    UNSTABLE = "unstable"


@dataclass(frozen=True)
class Verdict:
    status: StabilityStatus
    witness: OnePS | None = None
    witness_mu: MuValue | None = None

    def __post_init__(self) -> None:
        if self.status is StabilityStatus.STABLE:
            ok = self.witness is None and self.witness_mu is None
        elif self.status is StabilityStatus.UNSTABLE:
            ok = self.witness is not None and self.witness_mu is not None and self.witness_mu < 0
        else:
            ok = (
                self.witness is not None
                and any(self.witness)
                and self.witness_mu is not None
                and not self.witness_mu.is_infinite
                and self.witness_mu.value == 0
            )
        if not ok:
            raise InternalInvariantError(f"inconsistent verdict {self}")


@dataclass(frozen=True)
class PatternTable:
    rows: tuple[tuple[SupportPattern, Verdict], ...]
    warnings: tuple[str, ...] = ()


def _pattern_rows(problem: GitProblem, pattern: SupportPattern):
    base_rows = [problem.base_weight(n) for n in sorted(pattern.base)]
    fiber_rows = [problem.shifted_fiber_weight(n) for n in sorted(pattern.fiber)]
    return base_rows, fiber_rows


def classify_pattern(problem: GitProblem, pattern: SupportPattern) -> Verdict:
    """Verdict for every point realizing the given support pattern."""
    r = problem.torus_rank
    base_rows, fiber_rows = _pattern_rows(problem, pattern)

    destab = solve_cone(make_cone_problem(base_rows, fiber_rows, r))
    if destab.feasible:
        witness = destab.witness
        value = mu_from_pattern(problem, pattern, witness)
        if not value < 0:
            raise InternalInvariantError(
                f"unstable witness {witness} re-verified to weight {value}"
            )
        return Verdict(StabilityStatus.UNSTABLE, witness, value)

    blocker = cone_has_nonzero(base_rows + fiber_rows, r)
    if blocker is not None:
        value = mu_from_pattern(problem, pattern, blocker)
        if value.is_infinite or value.value != 0:
            raise InternalInvariantError(
                f"semistability witness {blocker} re-verified to weight {value}"
            )
        return Verdict(StabilityStatus.STRICTLY_SEMISTABLE, blocker, value)

    return Verdict(StabilityStatus.STABLE)


def classify(problem: GitProblem, point: PointSample) -> Verdict:
    """Stable / strictly semistable / unstable, with a witness when not stable."""
    return classify_pattern(problem, support(point))


def classify_patterns(problem: GitProblem, max_vars: int = 16) -> PatternTable:
    """Verdicts for every support pattern of the problem.

    Patterns pair an arbitrary subset of the base variables with a nonempty
    subset of the fiber variables.  When an ideal is present its verdicts are
    pattern-level only; whether a pattern is realized on the vanishing locus
    is not checked.
    """
    names = problem.var_names
    if len(names) > max_vars:
        raise InputError(
            f"{len(names)} variables exceed the pattern enumeration cap {max_vars}"
        )
    rows = []
    base_names = problem.base_names
    fiber_names = problem.fiber_names
    for bsize in range(len(base_names) + 1):
        for bsub in combinations(base_names, bsize):
            for fsize in range(1, len(fiber_names) + 1):
                for fsub in combinations(fiber_names, fsize):
                    pattern = SupportPattern(frozenset(bsub), frozenset(fsub))
                    rows.append((pattern, classify_pattern(problem, pattern)))
    warnings = ()
    if problem.ideal:
        warnings = ("pattern-level — ideal realizability not checked",)
    return PatternTable(tuple(rows), warnings)


def stabilizer_order(problem: GitProblem, point: PointSample) -> int | None:
    """Order of the torus stabilizer of the projective point, or None if infinite.

    The stabilizer is cut out by the character lattice spanned by the weights
    of the nonzero base coordinates together with the pairwise differences of
    the nonzero fiber weights (fiber coordinates matter up to common scalar).
    Its order is the lattice index, a product of Smith divisors.
    """
    pattern = support(point)
    rows: list[tuple[int, ...]] = [problem.base_weight(n) for n in sorted(pattern.base)]
    fiber = sorted(pattern.fiber, key=problem.fiber_names.index)
    anchor = problem.shifted_fiber_weight(fiber[0])
    for name in fiber[1:]:
        weight = problem.shifted_fiber_weight(name)
        rows.append(tuple(a - b for a, b in zip(weight, anchor)))
    rows = [r for r in rows if any(r)]
    _, index = lattice_rank_and_index(rows, problem.torus_rank)
    return index


def synthetic_point(problem: GitProblem, pattern: SupportPattern) -> PointSample:
    """A point realizing the pattern: value 1 on the support, 0 elsewhere."""
    one, zero = Fraction(1), Fraction(0)
    return PointSample(
        tuple((n, one if n in pattern.base else zero) for n in problem.base_names),
        tuple((n, one if n in pattern.fiber else zero) for n in problem.fiber_names),
    )
