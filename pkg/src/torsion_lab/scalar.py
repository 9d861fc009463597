"""Exact positive scalars of the form sqrt(s * pi**u).

Every quantity in the sphere torsion pipeline (volumes, their square roots,
half-integer Gamma values, torsions) is a rational times a half-integer power
of pi.  Writing such a value as ``sqrt(s * pi**u)`` with ``s`` a positive
rational and ``u`` an integer gives a unique two-field representation, since
pi is transcendental.
"""
from __future__ import annotations

import math
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import mpmath

from .errors import NotRepresentableError

__all__ = [
    "PiRadical",
    "ONE",
    "pr_mul",
    "pr_div",
    "pr_int_pow",
    "pr_sqrt",
    "pr_to_float",
    "rational_sqrt",
    "render_exact",
    "parse_exact",
]

_FLOAT_DPS = 40
_FLOAT_MAX = sys.float_info.max


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a non-negative rational, or None if irrational."""
    q = Fraction(q)
    if q < 0:
        return None
    num, den = q.numerator, q.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True, order=False)
class PiRadical:
    """The positive real ``sqrt(s) * pi**(u/2)``."""

    s: Fraction
    u: int = 0

    def __post_init__(self):
        s = Fraction(self.s)
        if s <= 0:
            raise ValueError(f"PiRadical needs s > 0, got {s}")
        if int(self.u) != self.u:
            raise ValueError(f"PiRadical exponent must be an integer, got {self.u!r}")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "u", int(self.u))

    @classmethod
    def from_rational(cls, q) -> PiRadical:
        """Embed a positive rational q as (q**2, 0)."""
        q = Fraction(q)
        if q <= 0:
            raise ValueError(f"only positive rationals embed, got {q}")
        return cls(q * q, 0)

    @classmethod
    def pi_power(cls, e: int, coeff=1) -> PiRadical:
        """``coeff * pi**e`` for a positive rational coeff and integer e."""
        c = Fraction(coeff)
        if c <= 0:
            raise ValueError(f"coefficient must be positive, got {c}")
        return cls(c * c, 2 * e)

    def rational_part(self) -> Fraction | None:
        """r when the value is ``r * pi**(u/2)`` with r rational, else None."""
        return rational_sqrt(self.s)

    def is_rational(self) -> bool:
        return self.u == 0 and self.rational_part() is not None

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            other = PiRadical.from_rational(other)
        if not isinstance(other, PiRadical):
            return NotImplemented
        return pr_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            other = PiRadical.from_rational(other)
        if not isinstance(other, PiRadical):
            return NotImplemented
        return pr_div(self, other)

    def __rtruediv__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return pr_div(PiRadical.from_rational(other), self)
        return NotImplemented

    def __pow__(self, k: int) -> PiRadical:
        return pr_int_pow(self, k)

    def __float__(self) -> float:
        return pr_to_float(self)

    def __str__(self) -> str:
        return render_exact(self)


ONE = PiRadical(Fraction(1), 0)


def pr_mul(a: PiRadical, b: PiRadical) -> PiRadical:
    return PiRadical(a.s * b.s, a.u + b.u)


def pr_div(a: PiRadical, b: PiRadical) -> PiRadical:
    return PiRadical(a.s / b.s, a.u - b.u)


def pr_int_pow(a: PiRadical, k: int) -> PiRadical:
    if int(k) != k:
        raise ValueError(f"integer exponent required, got {k!r}")
    k = int(k)
    return PiRadical(a.s**k, a.u * k)


def pr_sqrt(a: PiRadical) -> PiRadical:
    """Square root inside the domain; fails for nested radicals."""
    root = rational_sqrt(a.s)
    if root is None or a.u % 2:
        raise NotRepresentableError(
            f"not a representable square root: sqrt({render_exact(a)})"
        )
    return PiRadical(root, a.u // 2)


def pr_to_float(a: PiRadical) -> float:
    """Nearest double, evaluated with 40 significant digits before rounding."""
    with mpmath.workdps(_FLOAT_DPS):
        x = mpmath.sqrt(mpmath.mpf(a.s.numerator) / a.s.denominator)
        x *= mpmath.power(mpmath.pi, mpmath.mpf(a.u) / 2)
        if x > _FLOAT_MAX:
            raise OverflowError(f"{render_exact(a)} exceeds the double range")
        return float(x)


# Rendering grammar:  R | R*pi^K | sqrt(R) | sqrt(R*pi^K)
# with R = p or p/q in lowest terms and K a nonzero integer.

def _render_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def render_exact(v: PiRadical) -> str:
    r = rational_sqrt(v.s)
    if r is not None and v.u % 2 == 0:
        base, k = r, v.u // 2
        return _render_rational(base) if k == 0 else f"{_render_rational(base)}*pi^{k}"
    inner = _render_rational(v.s) if v.u == 0 else f"{_render_rational(v.s)}*pi^{v.u}"
    return f"sqrt({inner})"


_RAT = r"(\d+)(?:/(\d+))?"
_TERM = re.compile(rf"^{_RAT}(?:\*pi(?:\^(-?\d+))?)?$")


def _parse_term(text: str) -> tuple[Fraction, int]:
    m = _TERM.match(text)
    if not m:
        raise ValueError(f"malformed exact value {text!r}")
    num, den, k = m.groups()
    q = Fraction(int(num), int(den) if den else 1)
    if q <= 0:
        raise ValueError(f"exact value must be positive: {text!r}")
    if "*pi" in text and k is None:
        k = "1"
    return q, int(k) if k else 0


def parse_exact(text: str) -> PiRadical:
    """Inverse of :func:`render_exact` (also accepts ``pi`` for ``pi^1``)."""
    text = text.strip().replace(" ", "")
    if text.startswith("sqrt(") and text.endswith(")"):
        s, u = _parse_term(text[5:-1])
        return PiRadical(s, u)
    r, k = _parse_term(text)
    return PiRadical.pi_power(k, r)
