"""Built-in golden suites for the two worked examples.

Each suite returns (name, passed, detail).  The CLI `selftest` subcommand
runs them all; the pytest acceptance module covers the same ground with
independent oracles.
"""

from __future__ import annotations

from fractions import Fraction

from .builtin import conic_bundle_problem
from .classify import (
    StabilityStatus,
    classify_patterns,
    stabilizer_order,
    synthetic_point,
)
from .degeneration import (
    ChainConfiguration,
    Stratum,
    build_weight_table,
    config_stabilizer,
    hilbert_components,
    mu_config,
    sweep_equivalence,
)
from .invariants import quotient_presentation, semistable_via_sections
from .model import PointSample
from .mu import mu

Suite = tuple[str, bool, str]


def _point(problem, **values) -> PointSample:
    return PointSample.for_problem(problem, values)


def _conic_pattern_expectations() -> dict[tuple[frozenset[str], frozenset[str]], str]:
    unstable = {
        (frozenset({"x"}), frozenset({"u"})),
        (frozenset(), frozenset({"u"})),
        (frozenset({"y"}), frozenset({"v"})),
        (frozenset(), frozenset({"v"})),
    }
    expected: dict[tuple[frozenset[str], frozenset[str]], str] = {}
    for base in (frozenset(), frozenset({"x"}), frozenset({"y"}), frozenset({"x", "y"})):
        for fiber in (frozenset({"u"}), frozenset({"v"}), frozenset({"u", "v"})):
            expected[(base, fiber)] = "unstable" if (base, fiber) in unstable else "stable"
    return expected


def suite_conic_patterns() -> Suite:
    problem = conic_bundle_problem()
    table = classify_patterns(problem)
    expected = _conic_pattern_expectations()
    if len(table.rows) != 12:
        return ("conic-bundle pattern table", False, f"{len(table.rows)} rows, expected 12")
    for pattern, verdict in table.rows:
        want = expected[(pattern.base, pattern.fiber)]
        if verdict.status.value != want:
            return (
                "conic-bundle pattern table",
                False,
                f"base={sorted(pattern.base)} fiber={sorted(pattern.fiber)}: "
                f"{verdict.status.value}, expected {want}",
            )
    return ("conic-bundle pattern table", True, "12 verdicts, none strictly semistable")


def suite_conic_quotient() -> Suite:
    problem = conic_bundle_problem()
    pres = quotient_presentation(problem, max_degree=4)
    gens = {m.exponents for _, m in pres.base_generators}
    gens |= {m.exponents for _, m, _ in pres.proj_generators}
    want = {
        (("x", 1), ("y", 1)),
        (("x", 1), ("v", 1)),
        (("y", 1), ("u", 1)),
        (("u", 1), ("v", 1)),
    }
    ok = (
        gens == want
        and len(pres.base_generators) == 1
        and sorted(d for _, _, d in pres.proj_generators) == [1, 1, 2]
        and len(pres.relations) == 1
        and pres.ambient == "A^1 x P(1,1,2)"
    )
    return ("conic-bundle quotient presentation", ok, pres.ambient)


def suite_conic_stabilizers() -> Suite:
    problem = conic_bundle_problem()
    orbifold = stabilizer_order(problem, _point(problem, x=0, y=0, u=1, v=1))
    free = stabilizer_order(problem, _point(problem, x=1, y=1, u=1, v=1))
    infinite = stabilizer_order(problem, _point(problem, x=0, y=0, u=1, v=0))
    ok = orbifold == 2 and free == 1 and infinite is None
    return ("conic-bundle stabilizer orders", ok, f"{orbifold}, {free}, {infinite}")


def suite_conic_mu() -> Suite:
    problem = conic_bundle_problem()
    unstable_pt = _point(problem, x=1, y=0, u=1, v=0)
    stable_pt = _point(problem, x=1, y=0, u=1, v=1)
    for d in (1, 2, 3):
        if mu(problem, unstable_pt, (d,)).value != -d:
            return ("conic-bundle subgroup weights", False, f"weight at (d={d})")
        if mu(problem, stable_pt, (d,)).value != d:
            return ("conic-bundle subgroup weights", False, f"weight at (d={d})")
    if not mu(problem, stable_pt, (-1,)).is_infinite:
        return ("conic-bundle subgroup weights", False, "expected no limit at -1")
    return ("conic-bundle subgroup weights", True, "-d, +d, inf as expected")


def suite_conic_sections() -> Suite:
    problem = conic_bundle_problem()
    table = classify_patterns(problem)
    for pattern, verdict in table.rows:
        point = synthetic_point(problem, pattern)
        section = semistable_via_sections(problem, point, 4)
        expect = verdict.status is not StabilityStatus.UNSTABLE
        if (section is not None) != expect:
            return (
                "conic-bundle sections cross-check",
                False,
                f"base={sorted(pattern.base)} fiber={sorted(pattern.fiber)}",
            )
    return ("conic-bundle sections cross-check", True, "sections found exactly off the unstable locus")


def suite_degeneration_equivalence() -> Suite:
    for n in (1, 2):
        report = sweep_equivalence(build_weight_table(n))
        if not report.equivalence_holds:
            return (f"degeneration equivalence n={n}", False, "admissible != stable somewhere")
        if report.strictly_semistable_count:
            return (
                f"degeneration equivalence n={n}",
                False,
                f"{report.strictly_semistable_count} strictly semistable rows",
            )
    return ("degeneration equivalence n=1,2", True, "admissible iff stable, none strictly semistable")


def suite_degeneration_magnitude() -> Suite:
    table = build_weight_table(2)
    a = table.multipliers[0]
    config = ChainConfiguration(Stratum(2, frozenset({1, 2, 3})), (0, 1, 1, 0))
    for s1 in range(-5, 6):
        for s2 in range(-5, 6):
            got = abs(mu_config(table, config, (s1, s2)))
            want = abs(
                Fraction(a) * (Fraction(s1, 2) - Fraction(3 * abs(s1), 2))
                - (Fraction(s2, 2) + Fraction(3 * abs(s2), 2))
            )
            if got != want:
                return (
                    "degeneration total-weight magnitude",
                    False,
                    f"lambda=({s1},{s2}): {got} != {want}",
                )
    return ("degeneration total-weight magnitude", True, "matches closed form on [-5,5]^2")


def suite_degeneration_stabilizers() -> Suite:
    stratum = Stratum(2, frozenset({1, 3}))
    pair = ChainConfiguration(
        stratum, (0, 2, 0), ((1, Fraction(1, 2)), (1, Fraction(-1, 2)))
    )
    generic = ChainConfiguration(
        stratum, (0, 2, 0), ((1, Fraction(1, 2)), (1, Fraction(1)))
    )
    incidence = hilbert_components(2)
    pairwise = [w for labels, w in incidence.intersections if len(labels) == 2]
    triple = [w for labels, w in incidence.intersections if len(labels) == 3]
    ok = bool(
        config_stabilizer(pair) == 2
        and config_stabilizer(generic) == 1
        and len(incidence.components) == 3
        and all(pairwise)
        and len(triple) == 1
        and triple[0]
    )
    return ("degeneration stabilizers and incidence", ok, "mu_2 pair, free generic, 2-simplex")


ALL_SUITES = [
    suite_conic_patterns,
    suite_conic_quotient,
    suite_conic_stabilizers,
    suite_conic_mu,
    suite_conic_sections,
    suite_degeneration_equivalence,
    suite_degeneration_magnitude,
    suite_degeneration_stabilizers,
]


def run_all() -> list[Suite]:
    return [suite() for suite in ALL_SUITES]
