"""Exact arithmetic over base-60 (sexagesimal) numbers.

``Sexa`` is an exact rational; constructing one from a string parses the
sexagesimal literal grammar used throughout this package:

    ["-"] group ("," group)* [";" group ("," group)*]

Each group is one or two decimal digits valued 0..59 and ";" is the radix
point, so ``"1,9;22,30"`` is 1*60 + 9 + 22/60 + 30/3600.  ":" is accepted
as a radix-point synonym because tablet transliterations print it that way
(e.g. "14:3,45").  A value renders to a finite literal only when its
reduced denominator is 60-smooth (prime factors among 2, 3, 5); ``render``
refuses anything else with ``NonTerminating`` unless the caller explicitly
asks for the p/q fallback.

A nonzero rational is *regular* when both its reduced numerator and
denominator are 60-smooth; exactly those numbers have finite reciprocals,
which is why the scribal operations (``reciprocal``, and every division
implemented as multiplication by a reciprocal) insist on them.

Everything here is immutable and pure; values are safe to share between
threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import (
    IrregularDivisor,
    MalformedLiteral,
    NegativeRadicand,
    NonTerminating,
    NotAPerfectSquare,
    ZeroInput,
)

__all__ = [
    "Sexa",
    "SexaDigits",
    "parse",
    "render",
    "decompose",
    "add",
    "sub",
    "mul",
    "halve",
    "square",
    "sqrt_exact",
    "reciprocal",
    "is_regular",
]

SexaLike = Union["Sexa", Fraction, int]

_SMOOTH_PRIMES = (2, 3, 5)


def _wrap(value):
    if value is NotImplemented:
        return NotImplemented
    if isinstance(value, float):
        # Fraction falls back to float for mixed arithmetic; never allow it.
        raise TypeError("Sexa arithmetic does not mix with floats")
    return Sexa(value)


class Sexa(Fraction):
    """Exact signed rational with canonical sexagesimal rendering.

    ``Sexa("21,9;8,26,15")`` parses a literal; ``Sexa(9, 64)`` builds the
    fraction 9/64 directly.  Arithmetic stays exact and closed over Sexa.
    Floats are rejected outright: this type never approximates.
    """

    __slots__ = ()

    def __new__(cls, value: SexaLike | str = 0, denominator=None):
        if denominator is None:
            if isinstance(value, str):
                return parse(value)
            if isinstance(value, float):
                raise TypeError("Sexa cannot be built from a float; "
                                "use a literal string or integer ratio")
        return super().__new__(cls, value, denominator)

    # Closed arithmetic: every result is a Sexa again.
    def __add__(self, other):
        return _wrap(Fraction.__add__(self, other))

    def __radd__(self, other):
        return _wrap(Fraction.__radd__(self, other))

    def __sub__(self, other):
        return _wrap(Fraction.__sub__(self, other))

    def __rsub__(self, other):
        return _wrap(Fraction.__rsub__(self, other))

    def __mul__(self, other):
        return _wrap(Fraction.__mul__(self, other))

    def __rmul__(self, other):
        return _wrap(Fraction.__rmul__(self, other))

    def __truediv__(self, other):
        return _wrap(Fraction.__truediv__(self, other))

    def __rtruediv__(self, other):
        return _wrap(Fraction.__rtruediv__(self, other))

    def __pow__(self, other):
        return _wrap(Fraction.__pow__(self, other))

    def __neg__(self):
        return Sexa(Fraction.__neg__(self))

    def __pos__(self):
        return self

    def __abs__(self):
        return Sexa(Fraction.__abs__(self))

    def __str__(self) -> str:
        return render(self, fraction_fallback=True)

    def __repr__(self) -> str:
        try:
            return f"Sexa({render(self)!r})"
        except NonTerminating:
            return f"Sexa({self.numerator}, {self.denominator})"


@dataclass(frozen=True)
class SexaDigits:
    """Canonical digit form of a finite sexagesimal value.

    ``digits`` is the full big-endian digit string and ``radix_offset`` the
    number of integer-part digits, so ``digits[:radix_offset]`` is the
    integer part.  Canonical means: no leading zero digit in the integer
    part (unless the integer part is the single digit 0) and no trailing
    zero digit in the fractional part.
    """

    sign: int
    digits: tuple[int, ...]
    radix_offset: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if not self.digits:
            raise ValueError("digit list must not be empty (zero is (0,))")
        if not all(0 <= d <= 59 for d in self.digits):
            raise ValueError("every digit must lie in 0..59")
        if not 1 <= self.radix_offset <= len(self.digits):
            raise ValueError("radix offset must leave a nonempty integer part")
        if self.digits[0] == 0 and self.radix_offset != 1:
            raise ValueError("integer part has a leading zero digit")
        if self.radix_offset < len(self.digits) and self.digits[-1] == 0:
            raise ValueError("fractional part has a trailing zero digit")
        if self.sign == -1 and not any(self.digits):
            raise ValueError("zero carries sign +1")

    @property
    def integer_digits(self) -> tuple[int, ...]:
        return self.digits[:self.radix_offset]

    @property
    def fraction_digits(self) -> tuple[int, ...]:
        return self.digits[self.radix_offset:]

    def to_string(self) -> str:
        text = ",".join(str(d) for d in self.integer_digits)
        if self.fraction_digits:
            text += ";" + ",".join(str(d) for d in self.fraction_digits)
        return ("-" if self.sign < 0 else "") + text

    def value(self) -> Sexa:
        n = 0
        for d in self.digits:
            n = n * 60 + d
        scale = 60 ** (len(self.digits) - self.radix_offset)
        return Sexa(self.sign * n, scale)


def _split_groups(part: str, text: str) -> list[int]:
    groups = []
    for raw in part.split(","):
        if raw == "":
            raise MalformedLiteral(f"{text!r}: empty digit group")
        if not raw.isascii() or not raw.isdigit():
            raise MalformedLiteral(f"{text!r}: bad digit group {raw!r}")
        if len(raw) > 2:
            raise MalformedLiteral(
                f"{text!r}: digit group {raw!r} is longer than two digits")
        value = int(raw)
        if value > 59:
            raise MalformedLiteral(
                f"{text!r}: digit {value} out of range 0..59")
        groups.append(value)
    return groups


def parse(text: str) -> Sexa:
    """Parse a sexagesimal literal into an exact rational.

    Lenient about non-canonical spellings (leading zero groups, trailing
    fractional zeros, ":" for ";"); strict about the grammar itself.
    """
    if not isinstance(text, str):
        raise MalformedLiteral(f"expected a string, got {type(text).__name__}")
    s = text.strip()
    negative = s.startswith("-")
    if negative:
        s = s[1:]
    if not s:
        raise MalformedLiteral(f"{text!r}: empty literal")
    s = s.replace(":", ";")
    head, sep, tail = s.partition(";")
    if ";" in tail:
        raise MalformedLiteral(f"{text!r}: more than one radix point")
    int_groups = _split_groups(head, text)
    frac_groups = _split_groups(tail, text) if sep else []
    value = 0
    for d in int_groups:
        value = value * 60 + d
    result = Fraction(value)
    for i, d in enumerate(frac_groups, start=1):
        result += Fraction(d, 60 ** i)
    if negative:
        result = -result
    return Sexa(result)


def _strip_smooth(n: int) -> tuple[int, dict[int, int]]:
    """Divide out all factors of 2, 3, 5; return (leftover, exponents)."""
    exponents = {}
    for p in _SMOOTH_PRIMES:
        count = 0
        while n % p == 0:
            n //= p
            count += 1
        exponents[p] = count
    return n, exponents


def _smallest_prime_factor(n: int) -> int:
    if n % 2 == 0:
        return 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return f
        f += 2
    return n


def _expansion_exponent(den: int) -> int | None:
    """Smallest k with den | 60**k, or None when no such k exists.

    Minimality is what guarantees the canonical no-trailing-zero property
    of the fractional part.
    """
    leftover, exp = _strip_smooth(den)
    if leftover != 1:
        return None
    return max((exp[2] + 1) // 2, exp[3], exp[5])


def decompose(x: SexaLike) -> SexaDigits:
    """Break a finite value into its canonical digit form.

    Raises NonTerminating when the reduced denominator is not 60-smooth.
    """
    f = Fraction(x)
    if f == 0:
        return SexaDigits(1, (0,), 1)
    num, den = abs(f.numerator), f.denominator
    k = _expansion_exponent(den)
    if k is None:
        leftover, _ = _strip_smooth(den)
        raise NonTerminating(Sexa(f), _smallest_prime_factor(leftover))
    scaled = num * (60 ** k // den)
    digits = []
    while scaled:
        scaled, d = divmod(scaled, 60)
        digits.append(d)
    while len(digits) < k + 1:
        digits.append(0)
    digits.reverse()
    sign = -1 if f < 0 else 1
    return SexaDigits(sign, tuple(digits), len(digits) - k)


def render(x: SexaLike, fraction_fallback: bool = False) -> str:
    """Canonical sexagesimal literal for x.

    Values without a finite expansion raise NonTerminating; pass
    ``fraction_fallback=True`` to get "p/q" text instead.
    """
    f = Fraction(x)
    if fraction_fallback and _expansion_exponent(f.denominator) is None:
        return f"{f.numerator}/{f.denominator}"
    return decompose(f).to_string()


def add(x: SexaLike, y: SexaLike) -> Sexa:
    return Sexa(x) + Sexa(y)


def sub(x: SexaLike, y: SexaLike) -> Sexa:
    return Sexa(x) - Sexa(y)


def mul(x: SexaLike, y: SexaLike) -> Sexa:
    return Sexa(x) * Sexa(y)


def halve(x: SexaLike) -> Sexa:
    return Sexa(x) * Sexa(1, 2)


def square(x: SexaLike) -> Sexa:
    x = Sexa(x)
    return x * x


def is_regular(x: SexaLike) -> bool:
    """True iff |x| = 2^a * 3^b * 5^c for integers a, b, c (possibly < 0).

    Equivalently, both the reduced numerator and denominator are 60-smooth,
    so x and 1/x both have finite sexagesimal expansions.
    """
    f = Fraction(x)
    if f == 0:
        raise ZeroInput("0 has no regularity status (no reciprocal)")
    return (_strip_smooth(abs(f.numerator))[0] == 1
            and _strip_smooth(f.denominator)[0] == 1)


def reciprocal(x: SexaLike) -> Sexa:
    """The scribe's igi-x: exact 1/x, defined only for regular x."""
    f = Fraction(x)
    if f == 0:
        raise ZeroInput("0 has no reciprocal")
    for part in (abs(f.numerator), f.denominator):
        leftover, _ = _strip_smooth(part)
        if leftover != 1:
            raise IrregularDivisor(Sexa(f), _smallest_prime_factor(leftover))
    return Sexa(1) / Sexa(f)


def sqrt_exact(x: SexaLike) -> Sexa:
    """The nonnegative y with y*y == x, refusing anything inexact."""
    f = Fraction(x)
    if f < 0:
        raise NegativeRadicand(f"square root of negative value {Sexa(f)}")
    num, den = f.numerator, f.denominator
    root_num = math.isqrt(num)
    root_den = math.isqrt(den)
    if root_num * root_num != num or root_den * root_den != den:
        raise NotAPerfectSquare(f"{Sexa(f)} is not the square of a rational")
    return Sexa(root_num, root_den)
