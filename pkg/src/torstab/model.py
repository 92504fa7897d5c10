"""Problem and point data model: parsing, validation, evaluation, support.

A problem bundles a split torus of rank r, affine base variables, projective
fiber variables (each with a weight in Z^r), a global linearization shift
added to every fiber weight, and an optional defining ideal.  Points carry
exact rational coordinates; every stability decision downstream depends on a
point only through its support pattern.

File format: JSON with integer weight vectors and rationals as "p/q" or "n"
strings (never floats).  See the README for the full grammar.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import DimensionMismatchError, InputError, ZeroSectionError

WeightVector = tuple[int, ...]
OnePS = tuple[int, ...]

Monomial = tuple[tuple[str, int], ...]


def parse_rational(text: str | int) -> Fraction:
    """Parse "p/q" or "n" into an exact rational."""
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, str):
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"invalid rational {text!r}: {exc}") from exc
    raise InputError(f"rationals must be strings or integers, got {type(text).__name__}")


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _canonical_monomial(exponents: Mapping[str, int]) -> Monomial:
    items = []
    for name, exp in exponents.items():
        if exp < 0:
            raise InputError(f"negative exponent {exp} for variable {name!r}")
        if exp:
            items.append((name, int(exp)))
    return tuple(sorted(items))


@dataclass(frozen=True)
class Polynomial:
    """Sparse polynomial with exact rational coefficients.

    Terms are stored canonically: sorted monomials, no duplicates, no zero
    coefficients.
    """

    terms: tuple[tuple[Fraction, Monomial], ...]

    @classmethod
    def make(cls, terms: Iterable[tuple[Fraction | int | str, Mapping[str, int]]]) -> "Polynomial":
        combined: dict[Monomial, Fraction] = {}
        for coeff, exponents in terms:
            mono = _canonical_monomial(exponents)
            value = coeff if isinstance(coeff, Fraction) else parse_rational(coeff)
            combined[mono] = combined.get(mono, Fraction(0)) + value
        kept = tuple(
            (c, m) for m, c in sorted(combined.items(), key=lambda kv: kv[0]) if c != 0
        )
        return cls(kept)

    def evaluate(self, values: Mapping[str, Fraction]) -> Fraction:
        total = Fraction(0)
        for coeff, mono in self.terms:
            prod = coeff
            for name, exp in mono:
                prod *= values[name] ** exp
            total += prod
        return total

    def variables(self) -> frozenset[str]:
        return frozenset(name for _, mono in self.terms for name, _ in mono)


@dataclass(frozen=True)
class GitProblem:
    """A linearized split-torus action on a projective-over-affine model."""

    torus_rank: int
    base_vars: tuple[tuple[str, WeightVector], ...]
    fiber_vars: tuple[tuple[str, WeightVector], ...]
    shift: WeightVector = ()
    ideal: tuple[Polynomial, ...] = ()

    def __post_init__(self) -> None:
        r = self.torus_rank
        if r < 1:
            raise InputError(f"torus rank must be positive, got {r}")
        if not self.fiber_vars:
            raise InputError("at least one fiber variable is required")
        if not self.shift:
            object.__setattr__(self, "shift", (0,) * r)
        if len(self.shift) != r:
            raise DimensionMismatchError(
                f"linearization shift has length {len(self.shift)}, expected rank {r}"
            )
        seen: set[str] = set()
        for name, weight in self.base_vars + self.fiber_vars:
            if name in seen:
                raise InputError(f"duplicate variable name {name!r}")
            seen.add(name)
            if len(weight) != r:
                raise DimensionMismatchError(
                    f"weight of {name!r} has length {len(weight)}, expected rank {r}"
                )
        for poly in self.ideal:
            undeclared = poly.variables() - seen
            if undeclared:
                raise InputError(f"ideal uses undeclared variables {sorted(undeclared)}")

    @property
    def base_names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.base_vars)

    @property
    def fiber_names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.fiber_vars)

    @property
    def var_names(self) -> tuple[str, ...]:
        return self.base_names + self.fiber_names

    def base_weight(self, name: str) -> WeightVector:
        for n, w in self.base_vars:
            if n == name:
                return w
        raise InputError(f"unknown base variable {name!r}")

    def shifted_fiber_weight(self, name: str) -> WeightVector:
        for n, w in self.fiber_vars:
            if n == name:
                return tuple(a + b for a, b in zip(w, self.shift))
        raise InputError(f"unknown fiber variable {name!r}")

    def check_lambda(self, lam: OnePS) -> OnePS:
        lam = tuple(int(x) for x in lam)
        if len(lam) != self.torus_rank:
            raise DimensionMismatchError(
                f"one-parameter subgroup {lam} has length {len(lam)}, "
                f"expected rank {self.torus_rank}"
            )
        return lam


@dataclass(frozen=True)
class PointSample:
    """Exact rational coordinates for every declared variable."""

    base_values: tuple[tuple[str, Fraction], ...]
    fiber_values: tuple[tuple[str, Fraction], ...]

    @classmethod
    def for_problem(
        cls, problem: GitProblem, values: Mapping[str, Fraction | int | str]
    ) -> "PointSample":
        parsed = {name: parse_rational(v) if not isinstance(v, Fraction) else v
                  for name, v in values.items()}
        missing = set(problem.var_names) - set(parsed)
        extra = set(parsed) - set(problem.var_names)
        if missing:
            raise InputError(f"point is missing values for {sorted(missing)}")
        if extra:
            raise InputError(f"point sets undeclared variables {sorted(extra)}")
        return cls(
            tuple((n, parsed[n]) for n in problem.base_names),
            tuple((n, parsed[n]) for n in problem.fiber_names),
        )

    def value(self, name: str) -> Fraction:
        for n, v in self.base_values + self.fiber_values:
            if n == name:
                return v
        raise InputError(f"point has no value for {name!r}")

    def as_dict(self) -> dict[str, Fraction]:
        return dict(self.base_values + self.fiber_values)


@dataclass(frozen=True)
class SupportPattern:
    """Names of the nonvanishing coordinates of a point."""

    base: frozenset[str]
    fiber: frozenset[str]

    def __post_init__(self) -> None:
        if not self.fiber:
            raise ZeroSectionError("lift lies in the zero section: empty fiber support")


def support(point: PointSample) -> SupportPattern:
    """Support pattern of a point; rejects lifts inside the zero section."""
    fiber = frozenset(n for n, v in point.fiber_values if v != 0)
    if not fiber:
        raise ZeroSectionError("lift lies in the zero section: all fiber values vanish")
    base = frozenset(n for n, v in point.base_values if v != 0)
    return SupportPattern(base, fiber)


def check_on_ideal(problem: GitProblem, point: PointSample) -> bool:
    """True iff every ideal generator vanishes at the point."""
    values = point.as_dict()
    return all(poly.evaluate(values) == 0 for poly in problem.ideal)


# --- file formats ----------------------------------------------------------


def _loads_strict(text: str) -> object:
    def no_duplicates(pairs: list[tuple[str, object]]) -> dict[str, object]:
        out: dict[str, object] = {}
        for key, value in pairs:
            if key in out:
                raise InputError(f"duplicate key {key!r}")
            out[key] = value
        return out

    try:
        return json.loads(text, object_pairs_hook=no_duplicates)
    except json.JSONDecodeError as exc:
        raise InputError(f"syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _parse_weight(raw: object, what: str) -> WeightVector:
    if not isinstance(raw, list) or not all(isinstance(x, int) for x in raw):
        raise InputError(f"{what} must be a list of integers, got {raw!r}")
    return tuple(raw)


def _parse_vars(raw: object, section: str) -> tuple[tuple[str, WeightVector], ...]:
    if raw is None:
        return ()
    if not isinstance(raw, dict):
        raise InputError(f"{section} must be an object mapping names to weight vectors")
    return tuple((name, _parse_weight(w, f"weight of {name!r}")) for name, w in raw.items())


def _parse_polynomial(raw: object) -> Polynomial:
    if not isinstance(raw, list):
        raise InputError("each ideal generator must be a list of terms")
    terms = []
    for term in raw:
        if not isinstance(term, dict) or set(term) != {"coeff", "monomial"}:
            raise InputError(f"term must be an object with 'coeff' and 'monomial', got {term!r}")
        mono = term["monomial"]
        if not isinstance(mono, dict) or not all(isinstance(e, int) for e in mono.values()):
            raise InputError(f"monomial must map variable names to integers, got {mono!r}")
        terms.append((term["coeff"], mono))
    return Polynomial.make(terms)


def parse_problem(text: str) -> GitProblem:
    """Parse and validate a problem file."""
    data = _loads_strict(text)
    if not isinstance(data, dict):
        raise InputError("problem file must contain a JSON object")
    known = {"torus_rank", "base_vars", "fiber_vars", "linearization_shift", "ideal", "group"}
    unknown = set(data) - known
    if unknown:
        raise InputError(f"unknown problem keys {sorted(unknown)}")
    group = data.get("group", "split-torus")
    if group != "split-torus":
        raise InputError(
            f"unsupported group {group!r}: only diagonalized split-torus actions are accepted"
        )
    rank = data.get("torus_rank")
    if not isinstance(rank, int):
        raise InputError("torus_rank must be an integer")
    shift_raw = data.get("linearization_shift")
    shift = _parse_weight(shift_raw, "linearization_shift") if shift_raw is not None else ()
    ideal = tuple(_parse_polynomial(p) for p in data.get("ideal", []))
    return GitProblem(
        torus_rank=rank,
        base_vars=_parse_vars(data.get("base_vars"), "base_vars"),
        fiber_vars=_parse_vars(data.get("fiber_vars"), "fiber_vars"),
        shift=shift,
        ideal=ideal,
    )


def serialize_problem(problem: GitProblem) -> str:
    """Inverse of parse_problem, up to JSON formatting."""
    data: dict[str, object] = {
        "torus_rank": problem.torus_rank,
        "base_vars": {n: list(w) for n, w in problem.base_vars},
        "fiber_vars": {n: list(w) for n, w in problem.fiber_vars},
        "linearization_shift": list(problem.shift),
    }
    if problem.ideal:
        data["ideal"] = [
            [
                {"coeff": format_rational(c), "monomial": {n: e for n, e in mono}}
                for c, mono in poly.terms
            ]
            for poly in problem.ideal
        ]
    return json.dumps(data, indent=2) + "\n"


def parse_point(problem: GitProblem, source: str | Mapping[str, object]) -> PointSample:
    """Parse a point from JSON text, an inline "x=1,y=0" string, or a mapping."""
    if isinstance(source, Mapping):
        return PointSample.for_problem(problem, source)  # type: ignore[arg-type]
    text = source.strip()
    if text.startswith("{"):
        data = _loads_strict(text)
        if not isinstance(data, dict):
            raise InputError("point file must contain a JSON object")
        return PointSample.for_problem(problem, data)  # type: ignore[arg-type]
    values: dict[str, str] = {}
    for chunk in text.split(","):
        if "=" not in chunk:
            raise InputError(f"expected name=value, got {chunk!r}")
        name, _, raw = chunk.partition("=")
        name = name.strip()
        if name in values:
            raise InputError(f"duplicate variable {name!r} in point")
        values[name] = raw.strip()
    return PointSample.for_problem(problem, values)
