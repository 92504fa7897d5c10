"""Chain combinatorics and stability for expanded degenerations of points on
a degenerating conic.

A family over A^{n+1} replaces the node of a two-component central fibre by a
chain of rational curves; the fibre over a point whose coordinates t_i vanish
exactly on a set V is a transversal chain whose components are indexed by the
intervals cut out of {0, ..., n+1} by V.  A rank-n torus acts with t_i
scaling by sigma_i / sigma_{i-1}.

Length-n subschemes supported in the smooth locus are modelled as formal sums
of interior points with per-interval multiplicities.  The polarization is a
product of hyperplane bundles twisted by parameters a_1 > ... > a_{n-1} >> 1,
linearized so that the degree-(n+1) monomial u_i^l v_i^(n+1-l) carries
sigma_i-weight i - (n+1) + l.  From this rule the fibre weight of the
polarization at any torus-limit point is a per-bundle bookkeeping exercise:

  * a bundle behind the point (smaller chain position) contributes its
    u-monomial weight a_i * i,
  * a bundle ahead contributes its v-monomial weight a_i * (i - n - 1),
  * a bundle of the point's own component contributes the v-monomial weight
    when lambda pushes the point down (s_i > 0) and the u-monomial weight
    when it pushes up (s_i < 0); s_i = 0 contributes nothing.

The subgroup weight of a configuration is minus the lambda-pairing of the
summed limit weights (engine sign +1), which is piecewise linear in lambda
with one linear piece per sign orthant.  Classification reduces to exact
cone feasibility per orthant, restricted to the subgroups whose limit exists
on the base: t_i nonzero forces s_i - s_{i-1} >= 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .classify import StabilityStatus, Verdict
from .cones import cone_has_nonzero, make_cone_problem, solve_cone
from .errors import InputError, InternalInvariantError
from .model import OnePS
from .mu import MuValue

Interval = tuple[int, ...]


@dataclass(frozen=True)
class Stratum:
    """Locus of A^{n+1} where t_i = 0 exactly for i in `vanishing`."""

    n: int
    vanishing: frozenset[int]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InputError(f"n must be positive, got {self.n}")
        bad = [i for i in self.vanishing if not 1 <= i <= self.n + 1]
        if bad:
            raise InputError(
                f"vanishing indices {sorted(bad)} outside 1..{self.n + 1}"
            )

    def label(self) -> str:
        if not self.vanishing:
            return "{}"
        return "{" + ",".join(map(str, sorted(self.vanishing))) + "}"


@dataclass(frozen=True)
class ChainFibre:
    """Ordered interval partition of {0, ..., n+1} describing the fibre chain."""

    intervals: tuple[Interval, ...]


def chain(stratum: Stratum) -> ChainFibre:
    """Interval partition: cut {0, ..., n+1} before every vanishing index."""
    cuts = [0] + sorted(stratum.vanishing) + [stratum.n + 2]
    intervals = tuple(
        tuple(range(cuts[k], cuts[k + 1])) for k in range(len(cuts) - 1)
    )
    return ChainFibre(intervals)


@dataclass(frozen=True)
class ChainConfiguration:
    """Per-component lengths of a length-n subscheme, with optional marked
    interior coordinates used only for stabilizer computations."""

    stratum: Stratum
    lengths: tuple[int, ...]
    marked_points: tuple[tuple[int, Fraction], ...] = ()

    def __post_init__(self) -> None:
        intervals = chain(self.stratum).intervals
        if len(self.lengths) != len(intervals):
            raise InputError(
                f"{len(self.lengths)} lengths for {len(intervals)} chain components"
            )
        if any(l < 0 for l in self.lengths):
            raise InputError(f"negative length in {self.lengths}")
        if sum(self.lengths) != self.stratum.n:
            raise InputError(
                f"lengths {self.lengths} sum to {sum(self.lengths)}, expected {self.stratum.n}"
            )
        for idx, coord in self.marked_points:
            if not 0 <= idx < len(intervals):
                raise InputError(f"marked point on unknown component {idx}")
            if coord == 0:
                raise InputError("marked interior coordinates must be nonzero")


def admissible(config: ChainConfiguration) -> bool:
    """True iff each component carries length equal to its count of inner
    chain positions."""
    inner = range(1, config.stratum.n + 1)
    intervals = chain(config.stratum).intervals
    return all(
        config.lengths[k] == sum(1 for i in intervals[k] if i in inner)
        for k in range(len(intervals))
    )


@dataclass(frozen=True)
class WeightTable:
    """Per-bundle weight data of the polarization at torus-limit points.

    multipliers[i-1] is the twist a_i of the i-th hyperplane factor, with
    a_n = 1 for the leading untwisted factor.  `sign` +1 keeps the engine
    orientation in which admissible configurations get positive weights.
    a0 is echoed for reporting; the ample twist pulled back from the original
    surface is torus-fixed at every chain point and contributes no weight.
    """

    n: int
    multipliers: tuple[int, ...]
    sign: int = 1
    a0: int = 1000

    def u_weight(self, i: int) -> int:
        """Fibre weight when v_i = 0 at the limit (u-monomial generates)."""
        return self.multipliers[i - 1] * i

    def v_weight(self, i: int) -> int:
        """Fibre weight when u_i = 0 at the limit (v-monomial generates)."""
        return self.multipliers[i - 1] * (i - self.n - 1)

    def point_weight(self, intervals: tuple[Interval, ...], k: int, lam: OnePS) -> int:
        """Lambda-pairing of the fibre weight at the limit of an interior
        point of component k."""
        first, last = intervals[k][0], intervals[k][-1]
        total = 0
        for i in range(1, self.n + 1):
            s = lam[i - 1]
            if i < first:
                total += self.u_weight(i) * s
            elif i > last:
                total += self.v_weight(i) * s
            elif s > 0:
                total += self.v_weight(i) * s
            elif s < 0:
                total += self.u_weight(i) * s
        return total

    def limit_vectors(
        self, fibre: ChainFibre, k: int
    ) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Weight vectors at the two limit fixed points of component k:
        flowing down the chain (u coordinates vanish) and up (v vanish)."""
        first, last = fibre.intervals[k][0], fibre.intervals[k][-1]
        down = []
        up = []
        for i in range(1, self.n + 1):
            if i < first:
                down.append(self.u_weight(i))
                up.append(self.u_weight(i))
            elif i > last:
                down.append(self.v_weight(i))
                up.append(self.v_weight(i))
            else:
                down.append(self.v_weight(i))
                up.append(self.u_weight(i))
        return tuple(down), tuple(up)


def build_weight_table(
    n: int, a: tuple[int, ...] | list[int] | None = None, sign: int = 1
) -> WeightTable:
    """Weight table for the rank-n torus; a = (a_1, ..., a_{n-1}) twists.

    Defaults follow a decade ladder (a_1 = 10^(n-1), ..., a_{n-1} = 10) so
    that every twist strictly dominates the next one, which the equivalence
    of admissibility and stability requires (a_i >> a_{i+1}, a_{n-1} > 1).
    """
    if not 1 <= n <= 3:
        raise InputError(f"n must be between 1 and 3, got {n}")
    if sign not in (1, -1):
        raise InputError(f"sign must be +1 or -1, got {sign}")
    if a is None:
        a = tuple(10 ** (n - i) for i in range(1, n))
    a = tuple(int(x) for x in a)
    if len(a) != n - 1:
        raise InputError(f"expected {n - 1} twist parameters, got {len(a)}")
    if any(x <= 1 for x in a) or any(a[i] <= a[i + 1] for i in range(len(a) - 1)):
        raise InputError(f"twists must be strictly decreasing and > 1, got {a}")
    return WeightTable(n=n, multipliers=a + (1,), sign=sign)


def mu_config(table: WeightTable, config: ChainConfiguration, lam: OnePS) -> Fraction:
    """Formal-sum subgroup weight of the configuration.

    Piecewise linear in lambda, additive over configuration decomposition,
    and homogeneous under positive scaling.  Limit existence on the base is
    not checked here; the classifier restricts lambda accordingly.
    """
    if config.stratum.n != table.n:
        raise InputError("configuration and weight table have different n")
    lam = tuple(int(x) for x in lam)
    if len(lam) != table.n:
        raise InputError(f"lambda {lam} has length {len(lam)}, expected {table.n}")
    intervals = chain(config.stratum).intervals
    total = 0
    for k, count in enumerate(config.lengths):
        if count:
            total += count * table.point_weight(intervals, k, lam)
    return Fraction(-table.sign * total)


def _limit_rows(stratum: Stratum) -> list[tuple[int, ...]]:
    """Constraints on lambda for the base limit to exist: each nonvanishing
    t_i has nonnegative weight s_i - s_{i-1}."""
    n = stratum.n
    rows = []
    for i in range(1, n + 2):
        if i in stratum.vanishing:
            continue
        row = [0] * n
        if i <= n:
            row[i - 1] += 1
        if i - 1 >= 1:
            row[i - 2] -= 1
        rows.append(tuple(row))
    return rows


def _orthant_linear_form(
    table: WeightTable, config: ChainConfiguration, orthant: tuple[int, ...]
) -> tuple[int, ...]:
    """Integer vector m with the engine-oriented weight equal to <m, lam> on
    the given sign orthant (independent of the table's printing sign)."""
    intervals = chain(config.stratum).intervals
    n = table.n
    m = [0] * n
    for k, count in enumerate(config.lengths):
        if not count:
            continue
        first, last = intervals[k][0], intervals[k][-1]
        for i in range(1, n + 1):
            if i < first:
                w = table.u_weight(i)
            elif i > last:
                w = table.v_weight(i)
            elif orthant[i - 1] > 0:
                w = table.v_weight(i)
            else:
                w = table.u_weight(i)
            m[i - 1] += count * w
    return tuple(-x for x in m)


def classify_config(table: WeightTable, config: ChainConfiguration) -> Verdict:
    """Stability verdict by exact cone analysis, one piece per sign orthant.

    Only subgroups whose base limit exists are tested; the rest have
    infinite weight and cannot destabilize.  Verdicts (and the reported
    witness weight) always use the engine orientation, so they do not change
    with the table's printing sign.
    """
    n = table.n
    limit_rows = _limit_rows(config.stratum)

    def engine_mu(lam: OnePS) -> Fraction:
        return table.sign * mu_config(table, config, lam)

    for orthant in product((1, -1), repeat=n):
        orthant_rows = [
            tuple(orthant[i] if j == i else 0 for j in range(n)) for i in range(n)
        ]
        form = _orthant_linear_form(table, config, orthant)
        negated = tuple(-x for x in form)
        result = solve_cone(
            make_cone_problem(limit_rows + orthant_rows, [negated], n)
        )
        if result.feasible:
            witness = result.witness
            value = engine_mu(witness)
            if not value < 0:
                raise InternalInvariantError(
                    f"destabilizing witness {witness} re-verified to {value}"
                )
            return Verdict(
                StabilityStatus.UNSTABLE, witness, MuValue.finite(int(value))
            )

    for orthant in product((1, -1), repeat=n):
        orthant_rows = [
            tuple(orthant[i] if j == i else 0 for j in range(n)) for i in range(n)
        ]
        form = _orthant_linear_form(table, config, orthant)
        negated = tuple(-x for x in form)
        blocker = cone_has_nonzero(limit_rows + orthant_rows + [negated], n)
        if blocker is not None:
            value = engine_mu(blocker)
            if value != 0:
                raise InternalInvariantError(
                    f"semistability witness {blocker} re-verified to {value}"
                )
            return Verdict(
                StabilityStatus.STRICTLY_SEMISTABLE, blocker, MuValue.finite(0)
            )

    return Verdict(StabilityStatus.STABLE)


def config_stabilizer(config: ChainConfiguration) -> int | None:
    """Order of the subtorus fixing the base point and the configuration as a
    set, or None when it is infinite.

    The subtorus fixing the base point acts on each middle chain component
    through one multiplicative coordinate and trivially on the two end
    components.  Marked coordinates are therefore required on every middle
    component carrying points; a middle component without points leaves a
    free one-parameter subgroup, so the stabilizer is infinite.
    """
    intervals = chain(config.stratum).intervals
    count = len(intervals)
    marked: dict[int, list[Fraction]] = {}
    for idx, coord in config.marked_points:
        marked.setdefault(idx, []).append(coord)
    for idx, coords in marked.items():
        if len(coords) > config.lengths[idx]:
            raise InputError(
                f"component {idx} carries {len(coords)} marked points "
                f"but length {config.lengths[idx]}"
            )

    order = 1
    for k in range(1, count - 1):
        if config.lengths[k] == 0:
            return None
        coords = marked.get(k, [])
        if len(coords) != config.lengths[k]:
            raise InputError(
                f"middle component {k} needs {config.lengths[k]} marked "
                f"coordinates, got {len(coords)}"
            )
        order *= _multiset_stabilizer_order(coords)
    return order


def _multiset_stabilizer_order(coords: list[Fraction]) -> int:
    """Number of rational scalars mapping the multiset onto itself."""
    reference = sorted(coords)
    anchor = coords[0]
    order = 0
    for c in coords:
        ratio = c / anchor
        if sorted(x * ratio for x in coords) == reference:
            order += 1
    return order


# --- Hilbert scheme components and incidence -------------------------------


@dataclass(frozen=True)
class HilbertComponent:
    """Irreducible component whose generic configuration puts i points on the
    first and j points on the last chain component."""

    i: int
    j: int
    stratum: Stratum
    lengths: tuple[int, ...]

    @property
    def label(self) -> str:
        return f"H{self.i}{self.j}"


@dataclass(frozen=True)
class HilbertIncidence:
    components: tuple[HilbertComponent, ...]
    intersections: tuple[tuple[tuple[str, ...], tuple[ChainConfiguration, ...]], ...]


def strata(n: int) -> list[Stratum]:
    """All strata of A^{n+1}, shallowest first, deterministic order."""
    out = []
    indices = range(1, n + 2)
    for size in range(n + 2):
        for sub in combinations(indices, size):
            out.append(Stratum(n, frozenset(sub)))
    return out


def compositions(total: int, parts: int) -> list[tuple[int, ...]]:
    if parts == 0:
        return [()] if total == 0 else []
    out = []

    def descend(remaining: int, prefix: tuple[int, ...]) -> None:
        if len(prefix) == parts - 1:
            out.append(prefix + (remaining,))
            return
        for v in range(remaining + 1):
            descend(remaining - v, prefix + (v,))

    descend(total, ())
    return out


def admissible_configs(n: int) -> list[ChainConfiguration]:
    """Every admissible configuration over every stratum."""
    out = []
    for stratum in strata(n):
        parts = len(chain(stratum).intervals)
        for lengths in compositions(n, parts):
            config = ChainConfiguration(stratum, lengths)
            if admissible(config):
                out.append(config)
    return out


def in_component_closure(config: ChainConfiguration, component: HilbertComponent) -> bool:
    """True iff the configuration's lengths split the component's generic
    lengths across the refined intervals."""
    if not component.stratum.vanishing <= config.stratum.vanishing:
        return False
    coarse = chain(component.stratum).intervals
    fine = chain(config.stratum).intervals
    sums = [0] * len(coarse)
    for k, interval in enumerate(fine):
        owner = next(c for c, ci in enumerate(coarse) if interval[0] in ci)
        sums[owner] += config.lengths[k]
    return tuple(sums) == component.lengths


def hilbert_components(n: int) -> HilbertIncidence:
    """Components indexed by point splits i + j = n, with their pairwise and
    deeper intersections realized by admissible configurations."""
    if not 1 <= n <= 3:
        raise InputError(f"n must be between 1 and 3, got {n}")
    components = tuple(
        HilbertComponent(
            i=i,
            j=n - i,
            stratum=Stratum(n, frozenset({i + 1})),
            lengths=(i, n - i),
        )
        for i in range(n, -1, -1)
    )
    configs = admissible_configs(n)
    intersections = []
    for size in range(2, len(components) + 1):
        for group in combinations(components, size):
            witnesses = tuple(
                cfg
                for cfg in configs
                if all(in_component_closure(cfg, comp) for comp in group)
            )
            intersections.append((tuple(c.label for c in group), witnesses))
    return HilbertIncidence(components, tuple(intersections))


@dataclass(frozen=True)
class SweepRow:
    config: ChainConfiguration
    admissible: bool
    verdict: Verdict


@dataclass(frozen=True)
class SweepReport:
    table: WeightTable
    rows: tuple[SweepRow, ...]

    @property
    def equivalence_holds(self) -> bool:
        return all(
            (row.verdict.status is StabilityStatus.STABLE) == row.admissible
            for row in self.rows
        )

    @property
    def strictly_semistable_count(self) -> int:
        return sum(
            row.verdict.status is StabilityStatus.STRICTLY_SEMISTABLE
            for row in self.rows
        )


def sweep_equivalence(table: WeightTable) -> SweepReport:
    """Classify every configuration over every stratum and compare with the
    admissibility criterion."""
    rows = []
    for stratum in strata(table.n):
        parts = len(chain(stratum).intervals)
        for lengths in compositions(table.n, parts):
            config = ChainConfiguration(stratum, lengths)
            rows.append(
                SweepRow(config, admissible(config), classify_config(table, config))
            )
    return SweepReport(table, tuple(rows))
