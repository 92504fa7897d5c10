"""Built-in example problems, usable from the CLI as builtin:<name>."""

from __future__ import annotations

from .errors import InputError
from .model import GitProblem, Polynomial


def conic_bundle_problem() -> GitProblem:
    """Rank-1 action on P^1 x A^2 over A^2: (u:v) and (x, y) scale by
    (t, 1/t); the quotient is a conic bundle degenerating to two lines."""
    return GitProblem(
        torus_rank=1,
        base_vars=(("x", (1,)), ("y", (-1,))),
        fiber_vars=(("u", (1,)), ("v", (-1,))),
        shift=(0,),
    )


def king_theta1_problem() -> GitProblem:
    """Affine rank-1 model: trivial bundle on A^2 with a character twist.

    A single fiber generator of weight zero plus shift -1 encodes the
    character chi(t) = t, the degenerate configuration where the numerical
    criterion reduces to sign checks against one character.
    """
    return GitProblem(
        torus_rank=1,
        base_vars=(("x", (1,)), ("y", (-1,))),
        fiber_vars=(("e", (0,)),),
        shift=(-1,),
    )


def degenerating_conic_problem() -> GitProblem:
    """Family of conics t*z^2 = x*y in P^2 over A^1_t, with the fiberwise
    torus scaling (x, y) by (t, 1/t) and fixing z."""
    return GitProblem(
        torus_rank=1,
        base_vars=(("t", (0,)),),
        fiber_vars=(("x", (1,)), ("y", (-1,)), ("z", (0,))),
        shift=(0,),
        ideal=(
            Polynomial.make([(1, {"t": 1, "z": 2}), (-1, {"x": 1, "y": 1})]),
        ),
    )


BUILTINS = {
    "conic-bundle": conic_bundle_problem,
    "king-theta1": king_theta1_problem,
    "degenerating-conic": degenerating_conic_problem,
}


def builtin_problem(name: str) -> GitProblem:
    try:
        return BUILTINS[name]()
    except KeyError:
        raise InputError(
            f"unknown builtin problem {name!r}; available: {sorted(BUILTINS)}"
        ) from None
