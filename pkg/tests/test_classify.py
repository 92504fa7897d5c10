import random

import pytest

from torstab import (
    GitProblem,
    StabilityStatus,
    classify,
    classify_pattern,
    classify_patterns,
    mu,
    mu_from_pattern,
    stabilizer_order,
    support,
    synthetic_point,
)
from torstab.errors import InputError, ZeroSectionError

from conftest import box, brute_force_status, point, random_point, random_problem

GOLDEN_CONIC = {
    # (base support, fiber support) -> status, for all 12 patterns.
    ((), ("u",)): "unstable",
    ((), ("v",)): "unstable",
    ((), ("u", "v")): "stable",
    (("x",), ("u",)): "unstable",
    (("x",), ("v",)): "stable",
    (("x",), ("u", "v")): "stable",
    (("y",), ("u",)): "stable",
    (("y",), ("v",)): "unstable",
    (("y",), ("u", "v")): "stable",
    (("x", "y"), ("u",)): "stable",
    (("x", "y"), ("v",)): "stable",
    (("x", "y"), ("u", "v")): "stable",
}


def test_conic_probe_points(conic):
    assert classify(conic, point(conic, x=1, y=1, u=1, v=1)).status is StabilityStatus.STABLE
    verdict = classify(conic, point(conic, x=1, y=0, u=1, v=0))
    assert verdict.status is StabilityStatus.UNSTABLE
    assert verdict.witness == (1,)
    assert verdict.witness_mu.value == -1
    assert classify(conic, point(conic, x=0, y=0, u=1, v=1)).status is StabilityStatus.STABLE


def test_conic_pattern_table_matches_golden(conic):
    table = classify_patterns(conic)
    assert len(table.rows) == 12
    seen = {}
    for pattern, verdict in table.rows:
        key = (tuple(sorted(pattern.base)), tuple(sorted(pattern.fiber)))
        seen[key] = verdict.status.value
    assert seen == GOLDEN_CONIC
    assert not table.warnings


def test_pattern_table_flags_ideal(conic_surface):
    table = classify_patterns(conic_surface)
    assert table.warnings == ("pattern-level — ideal realizability not checked",)


def test_pattern_verdicts_reproducible_on_realizing_points(conic):
    rng = random.Random(31)
    for pattern, verdict in classify_patterns(conic).rows:
        values = {}
        for name in conic.var_names:
            if name in pattern.base or name in pattern.fiber:
                values[name] = rng.choice([1, 2, -3])
            else:
                values[name] = 0
        realized = point(conic, **values)
        assert classify(conic, realized).status is verdict.status


def test_trivial_action_all_strictly_semistable():
    problem = GitProblem(
        torus_rank=2,
        base_vars=(("a", (0, 0)),),
        fiber_vars=(("b", (0, 0)), ("c", (0, 0))),
    )
    table = classify_patterns(problem)
    for _, verdict in table.rows:
        assert verdict.status is StabilityStatus.STRICTLY_SEMISTABLE
        assert any(verdict.witness)
        assert verdict.witness_mu.value == 0


def test_single_weightless_fiber_variable():
    problem = GitProblem(torus_rank=1, base_vars=(), fiber_vars=(("e", (0,)),))
    verdict = classify(problem, point(problem, e=1))
    assert verdict.status is StabilityStatus.STRICTLY_SEMISTABLE


def test_king_configuration_stable(king):
    p = point(king, x=1, y=0, e=1)
    # Independent box scan: +d needs no base limit issue and gives weight
    # +d; -d has no base limit; nothing nonzero kills stability.
    assert brute_force_status(king, support(p), 5) is StabilityStatus.STABLE
    assert classify(king, p).status is StabilityStatus.STABLE


def test_pattern_cap(conic):
    with pytest.raises(InputError):
        classify_patterns(conic, max_vars=3)


def test_zero_section_propagates(conic):
    with pytest.raises(ZeroSectionError):
        classify(conic, point(conic, x=1, y=1, u=0, v=0))


def test_witness_validity_randomized():
    rng = random.Random(1601)
    for _ in range(150):
        problem = random_problem(rng)
        p = random_point(rng, problem)
        verdict = classify(problem, p)
        if verdict.status is StabilityStatus.UNSTABLE:
            value = mu(problem, p, verdict.witness)
            assert value < 0
            assert value == verdict.witness_mu
        elif verdict.status is StabilityStatus.STRICTLY_SEMISTABLE:
            assert any(verdict.witness)
            assert mu(problem, p, verdict.witness).value == 0
        else:
            assert verdict.witness is None


def test_brute_force_agreement_with_escalation():
    """Box scans can miss witnesses that live outside the box; on any
    divergence the exact witness must verify and a larger box must agree."""
    rng = random.Random(77)
    divergences = 0
    for _ in range(2000):
        problem = random_problem(rng)
        p = random_point(rng, problem)
        pattern = support(p)
        verdict = classify(problem, p)
        oracle = brute_force_status(problem, pattern, 5)
        if verdict.status is oracle:
            continue
        divergences += 1
        assert verdict.status is StabilityStatus.UNSTABLE
        assert mu_from_pattern(problem, pattern, verdict.witness) < 0
        bound = max(5, max(abs(x) for x in verdict.witness))
        assert brute_force_status(problem, pattern, bound) is StabilityStatus.UNSTABLE
    # The box heuristic holds overwhelmingly at these sizes.
    assert divergences <= 10


def test_strictly_semistable_has_no_negative_in_box():
    rng = random.Random(888)
    found = 0
    for _ in range(400):
        problem = random_problem(rng)
        p = random_point(rng, problem)
        verdict = classify(problem, p)
        if verdict.status is not StabilityStatus.STRICTLY_SEMISTABLE:
            continue
        found += 1
        pattern = support(p)
        for lam in box(problem.torus_rank, 5):
            assert not mu_from_pattern(problem, pattern, lam) < 0
    assert found >= 5


# --- stabilizer orders ------------------------------------------------------


def test_stabilizer_orbifold_point(conic):
    assert stabilizer_order(conic, point(conic, x=0, y=0, u=1, v=1)) == 2


def test_stabilizer_free_point(conic):
    # Lattice spanned by {1, -1, 2} is all of Z.
    assert stabilizer_order(conic, point(conic, x=1, y=1, u=1, v=1)) == 1


def test_stabilizer_infinite(conic):
    assert stabilizer_order(conic, point(conic, x=0, y=0, u=1, v=0)) is None


def test_stable_implies_finite_stabilizer():
    rng = random.Random(3110)
    for _ in range(200):
        problem = random_problem(rng)
        p = random_point(rng, problem)
        if classify(problem, p).status is StabilityStatus.STABLE:
            assert stabilizer_order(problem, p) is not None


def test_classify_pattern_direct(conic):
    from torstab import SupportPattern

    verdict = classify_pattern(
        conic, SupportPattern(frozenset({"x"}), frozenset({"u"}))
    )
    assert verdict.status is StabilityStatus.UNSTABLE
    realized = synthetic_point(conic, SupportPattern(frozenset({"x"}), frozenset({"u"})))
    assert classify(conic, realized).status is verdict.status
