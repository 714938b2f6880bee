"""Mid-radius numbers on top of mpmath.

A ball carries a midpoint (``mpf`` or ``mpc``) and an absolute error radius.
Arithmetic propagates radii conservatively; rounding of the midpoint is
covered by the working precision, which always keeps ``guard`` digits beyond
what is reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Number

import mpmath
from mpmath import mp, mpc, mpf


@dataclass(frozen=True)
class PrecisionPolicy:
    digits: int = 30
    guard: int = 15

    def __post_init__(self):
        if self.digits < 1:
            raise ValueError("digits must be positive")
        if self.guard < 5:
            raise ValueError("need at least 5 guard digits")

    @property
    def working_dps(self) -> int:
        return self.digits + self.guard

    @property
    def target(self) -> mpf:
        """Truncation target for individual series tails."""
        with mp.workdps(self.working_dps):
            return mpf(10) ** (-(self.digits + 5))

    def workdps(self, extra: int = 0):
        return mp.workdps(self.working_dps + extra)


def to_mp(x):
    """Exact-ish conversion of Python/Fraction/str numbers at the current precision."""
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    if isinstance(x, (mpf, mpc)):
        return +x
    if isinstance(x, complex):
        return mpc(x)
    if isinstance(x, str):
        return mpmath.mpmathify(x)
    if isinstance(x, Number):
        return mpmath.mpmathify(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an mpmath number")


BALL_GUARD = 20


@dataclass(frozen=True)
class _Ball:
    mid: object
    rad: mpf
    digits: int

    def _prec(self, other=None):
        d = self.digits if other is None else max(self.digits, other.digits)
        return mp.workdps(max(mp.dps, d + BALL_GUARD))

    def _coerce(self, other) -> "_Ball":
        if isinstance(other, _Ball):
            return other
        with self._prec():
            return ArbReal.exact(other, self.digits)

    @staticmethod
    def _make(mid, rad, digits) -> "_Ball":
        if isinstance(mid, mpc) and mid.imag != 0:
            return ArbComplex(mid, rad, digits)
        if isinstance(mid, mpc):
            return ArbReal(mid.real, rad, digits)
        return ArbReal(mid, rad, digits)

    def __add__(self, other):
        o = self._coerce(other)
        with self._prec(o):
            return self._make(self.mid + o.mid, self.rad + o.rad, min(self.digits, o.digits))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        with self._prec(o):
            return self._make(self.mid - o.mid, self.rad + o.rad, min(self.digits, o.digits))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        with self._prec():
            return self._make(-self.mid, self.rad, self.digits)

    def __mul__(self, other):
        o = self._coerce(other)
        with self._prec(o):
            rad = abs(self.mid) * o.rad + abs(o.mid) * self.rad + self.rad * o.rad
            return self._make(self.mid * o.mid, rad, min(self.digits, o.digits))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        with self._prec(o):
            denom = abs(o.mid) - o.rad
            if denom <= 0:
                raise ZeroDivisionError("divisor ball contains zero")
            q = self.mid / o.mid
            rad = (self.rad + abs(q) * o.rad) / denom
            return self._make(q, rad, min(self.digits, o.digits))

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = ArbReal.exact(1, self.digits)
        for _ in range(k):
            out = out * self
        return out

    def __abs__(self) -> mpf:
        return abs(self.mid)

    @property
    def error_exp(self) -> int:
        """Smallest integer ``e`` with ``rad <= 10**e``."""
        if self.rad == 0:
            return -(self.digits + 5)
        return int(mpmath.ceil(mpmath.log10(self.rad)))

    def contains(self, x, slack=0) -> bool:
        with self._prec():
            return abs(self.mid - to_mp(x)) <= self.rad + slack

    def overlaps(self, other: "_Ball") -> bool:
        with self._prec(other):
            return abs(self.mid - other.mid) <= self.rad + other.rad

    def with_rad(self, extra) -> "_Ball":
        with self._prec():
            return self._make(self.mid, self.rad + extra, self.digits)

    def __float__(self) -> float:
        return float(mpmath.re(self.mid))

    def __complex__(self) -> complex:
        return complex(self.mid)


@dataclass(frozen=True)
class ArbReal(_Ball):
    @classmethod
    def exact(cls, x, digits: int = 30) -> "ArbReal":
        # rounding at digits + BALL_GUARD stays far below the reported digits
        with mp.workdps(max(mp.dps, digits + BALL_GUARD)):
            v = to_mp(x)
        if isinstance(v, mpc):
            return ArbComplex(v, mpf(0), digits)
        return cls(v, mpf(0), digits)

    def to_decimal(self, digits: int | None = None) -> str:
        return fixed_decimal(self.mid, self.digits if digits is None else digits)

    def __str__(self) -> str:
        return self.to_decimal()


@dataclass(frozen=True)
class ArbComplex(_Ball):
    @classmethod
    def exact(cls, x, digits: int = 30) -> "ArbComplex":
        with mp.workdps(max(mp.dps, digits + BALL_GUARD)):
            return cls(mpc(to_mp(x)), mpf(0), digits)

    @property
    def real(self) -> ArbReal:
        return ArbReal(self.mid.real, self.rad, self.digits)

    @property
    def imag(self) -> ArbReal:
        return ArbReal(self.mid.imag, self.rad, self.digits)

    def to_decimal(self, digits: int | None = None) -> str:
        d = self.digits if digits is None else digits
        re = fixed_decimal(self.mid.real, d)
        im = fixed_decimal(abs(self.mid.imag), d)
        sign = "-" if self.mid.imag < 0 else "+"
        return f"{re}{sign}{im}i"

    def __str__(self) -> str:
        return self.to_decimal()


def fixed_decimal(x, digits: int) -> str:
    """``x`` rounded to ``digits`` places after the point, as a plain string."""
    with mp.workdps(max(mp.dps, digits + 20)):
        scaled = int(mpmath.nint(mpf(x) * mpf(10) ** digits))
    sign = "-" if scaled < 0 else ""
    s = str(abs(scaled)).rjust(digits + 1, "0")
    if digits == 0:
        return sign + s
    return f"{sign}{s[:-digits]}.{s[-digits:]}"
