"""Scribal solution procedures, each emitting a step-by-step trace.

The tablets narrate their arithmetic as a chain of "you see N" lines.
``StepTrace`` captures that cadence: an ordered list of labelled exact
values, so a replay can be checked value by value against the source.

Two solution methods are implemented the way the scribes ran them:

* completing the square for A*u^2 - B*u = C, keeping the "false area"
  scaling by A (the equation is multiplied through by A, never normalized
  to monic form) and taking only the additive root, as the texts do;
* the sum-difference method recovering x >= y from x - y and x*y via
  (x+y)/2 = sqrt(((x-y)/2)^2 + xy).

``divide_by_recognition`` models quotients the scribe simply announces
for an irregular divisor (e.g. 7;45 given to 46;30 is 0;10): the quotient
is computed exactly and accepted whenever it is finitely writable, since
the tablet shows the result but not the lookup that produced it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Union

from .errors import (
    MalformedProblem,
    NegativeRadicand,
    NoFiniteQuotient,
    NonTerminating,
    ProcedureError,
    ZeroDivisor,
)
from .sexa import Sexa, SexaLike, halve, reciprocal, render, sqrt_exact, square
from .units import Quantity

__all__ = [
    "Step",
    "StepTrace",
    "QuadraticProblem",
    "SumDifferenceProblem",
    "solve_quadratic_scribal",
    "solve_sum_difference",
    "divide_by_recognition",
    "apply_identity_sum_of_squares",
]

TraceValue = Union[Sexa, Quantity]


@dataclass(frozen=True)
class Step:
    label: str
    value: TraceValue
    source: str = "derived"

    def magnitude(self) -> Sexa:
        """The bare numeric value, unit stripped."""
        if isinstance(self.value, Quantity):
            return self.value.magnitude
        return self.value

    def to_dict(self) -> dict:
        d = {"label": self.label, "value": render(self.magnitude()),
             "source": self.source}
        if isinstance(self.value, Quantity):
            d["unit"] = self.value.dim.value
        return d


@dataclass
class StepTrace:
    """Ordered, uniquely-labelled record of intermediate values."""

    steps: list[Step] = field(default_factory=list)

    def record(self, label: str, value: TraceValue,
               source: str = "derived") -> TraceValue:
        if any(s.label == label for s in self.steps):
            raise ProcedureError("trace", label, ValueError("duplicate label"))
        self.steps.append(Step(label, value, source))
        return value

    def extend(self, other: "StepTrace") -> None:
        for step in other.steps:
            self.record(step.label, step.value, step.source)

    def __iter__(self) -> Iterator[Step]:
        return iter(self.steps)

    def __len__(self) -> int:
        return len(self.steps)

    def labels(self) -> list[str]:
        return [s.label for s in self.steps]

    def magnitudes(self) -> list[Sexa]:
        return [s.magnitude() for s in self.steps]

    def __getitem__(self, label: str) -> TraceValue:
        for step in self.steps:
            if step.label == label:
                return step.value
        raise KeyError(label)

    def __contains__(self, label: str) -> bool:
        return any(s.label == label for s in self.steps)

    def to_text(self) -> str:
        lines = []
        for step in self.steps:
            value = render(step.magnitude())
            if isinstance(step.value, Quantity):
                value += f" {step.value.dim.value}"
            lines.append(f"{step.label} = {value} @ {step.source}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {"steps": [s.to_dict() for s in self.steps]}


@dataclass(frozen=True)
class QuadraticProblem:
    """Coefficients of a*u^2 - b*u = c with a > 0 (a is the "false area")."""

    a: Sexa
    b: Sexa
    c: Sexa

    def __post_init__(self):
        object.__setattr__(self, "a", Sexa(self.a))
        object.__setattr__(self, "b", Sexa(self.b))
        object.__setattr__(self, "c", Sexa(self.c))
        if self.a <= 0:
            raise MalformedProblem(
                "leading coefficient must be positive (no linear fallback)")


@dataclass(frozen=True)
class SumDifferenceProblem:
    """Recover x >= y >= 0 from diff = x - y and prod = x*y."""

    diff: Sexa
    prod: Sexa

    def __post_init__(self):
        object.__setattr__(self, "diff", Sexa(self.diff))
        object.__setattr__(self, "prod", Sexa(self.prod))
        if self.diff < 0:
            raise MalformedProblem("difference must be nonnegative")


def solve_quadratic_scribal(p: QuadraticProblem) -> tuple[Sexa, StepTrace]:
    """Complete the square on a*u^2 - b*u = c, the tablet way.

    The equation is scaled by a (so the unknown becomes a*u), the half of
    b is squared and added, and only the additive branch of the root is
    taken.  Requires a regular (the final step multiplies by 1/a) and the
    radicand (b/2)^2 + a*c to be a perfect square; this solver never
    approximates.
    """
    trace = StepTrace()
    half_b = trace.record("half_B", halve(p.b))
    half_b_sq = trace.record("half_B_sq", square(half_b))
    ac = trace.record("AC", p.a * p.c)
    radicand = half_b_sq + ac
    if radicand < 0:
        raise NegativeRadicand(
            f"(B/2)^2 + A*C = {radicand.numerator}/{radicand.denominator} < 0")
    trace.record("radicand", radicand)
    root = trace.record("root", sqrt_exact(radicand))
    root_plus = trace.record("root_plus", root + half_b)
    u = trace.record("u", root_plus * reciprocal(p.a))
    if p.a * square(u) - p.b * u != p.c:
        raise ProcedureError("quadratic", "verify",
                             ArithmeticError("root does not satisfy equation"))
    return u, trace


def solve_sum_difference(p: SumDifferenceProblem) -> tuple[Sexa, Sexa, StepTrace]:
    """Recover (x, y) from their difference and product."""
    trace = StepTrace()
    half_diff = trace.record("half_diff", halve(p.diff))
    half_diff_sq = trace.record("half_diff_sq", square(half_diff))
    radicand = half_diff_sq + p.prod
    if radicand < 0:
        raise NegativeRadicand(
            f"((x-y)/2)^2 + xy = "
            f"{radicand.numerator}/{radicand.denominator} < 0")
    trace.record("radicand", radicand)
    half_sum = trace.record("half_sum", sqrt_exact(radicand))
    x = trace.record("x", half_sum + half_diff)
    y = trace.record("y", half_sum - half_diff)
    return x, y, trace


def divide_by_recognition(n: SexaLike, d: SexaLike) -> Sexa:
    """Exact quotient n/d accepted when it is finitely writable in base 60.

    Unlike reciprocal-based division this works for irregular divisors
    (13, 46;30, ...), provided the quotient itself terminates.
    """
    n, d = Sexa(n), Sexa(d)
    if d == 0:
        raise ZeroDivisor("cannot recognize a quotient for divisor 0")
    q = n / d
    try:
        render(q)
    except NonTerminating as exc:
        raise NoFiniteQuotient(
            f"{q.numerator}/{q.denominator} has no finite base-60 form") from exc
    return q


def apply_identity_sum_of_squares(diff: SexaLike, prod: SexaLike) -> Sexa:
    """x^2 + y^2 rewritten as (x - y)^2 + 2xy."""
    return square(Sexa(diff)) + 2 * Sexa(prod)
