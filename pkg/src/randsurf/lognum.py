"""Nonnegative numbers carried by the natural log of their magnitude.

The explicit error bounds blow past double precision quickly (the
leading factor is (6m)^(3m+4), already ~1e212 at m = 30), so bound
arithmetic happens on log-magnitudes.  Only nonnegative values occur
in the formulas, which keeps the representation to a log and a zero
flag.  Sums go through a max-factored compensated accumulation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

_LOG10 = math.log(10.0)


@dataclass(frozen=True)
class LogNumber:
    ln: float
    zero: bool = False

    # constructors ---------------------------------------------------
    @classmethod
    def from_int(cls, v: int) -> "LogNumber":
        if v < 0:
            raise ValueError("LogNumber is nonnegative")
        if v == 0:
            return cls(0.0, zero=True)
        return cls(math.log(v))

    @classmethod
    def from_fraction(cls, v: Fraction) -> "LogNumber":
        if v < 0:
            raise ValueError("LogNumber is nonnegative")
        if v == 0:
            return cls(0.0, zero=True)
        return cls(math.log(v.numerator) - math.log(v.denominator))

    @classmethod
    def from_float(cls, v: float) -> "LogNumber":
        if v < 0:
            raise ValueError("LogNumber is nonnegative")
        if v == 0.0:
            return cls(0.0, zero=True)
        return cls(math.log(v))

    @classmethod
    def convert(cls, v) -> "LogNumber":
        if isinstance(v, LogNumber):
            return v
        if isinstance(v, int):
            return cls.from_int(v)
        if isinstance(v, Fraction):
            return cls.from_fraction(v)
        return cls.from_float(float(v))

    # arithmetic -----------------------------------------------------
    def __mul__(self, other) -> "LogNumber":
        other = LogNumber.convert(other)
        if self.zero or other.zero:
            return LogNumber(0.0, zero=True)
        return LogNumber(self.ln + other.ln)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "LogNumber":
        other = LogNumber.convert(other)
        if other.zero:
            raise ZeroDivisionError("division by LogNumber zero")
        if self.zero:
            return self
        return LogNumber(self.ln - other.ln)

    def __add__(self, other) -> "LogNumber":
        other = LogNumber.convert(other)
        if self.zero:
            return other
        if other.zero:
            return self
        hi, lo = max(self.ln, other.ln), min(self.ln, other.ln)
        return LogNumber(hi + math.log1p(math.exp(lo - hi)))

    __radd__ = __add__

    def __pow__(self, exponent) -> "LogNumber":
        if self.zero:
            if exponent == 0:
                return LogNumber(0.0)
            if exponent < 0:
                raise ZeroDivisionError("zero to a negative power")
            return self
        return LogNumber(self.ln * exponent)

    @staticmethod
    def sum(items: Iterable["LogNumber"]) -> "LogNumber":
        lns = [x.ln for x in items if not x.zero]
        if not lns:
            return LogNumber(0.0, zero=True)
        hi = max(lns)
        return LogNumber(hi + math.log(math.fsum(math.exp(v - hi) for v in lns)))

    # comparisons ----------------------------------------------------
    def _key(self) -> float:
        return -math.inf if self.zero else self.ln

    def __lt__(self, other):
        return self._key() < LogNumber.convert(other)._key()

    def __le__(self, other):
        return self._key() <= LogNumber.convert(other)._key()

    def __gt__(self, other):
        return self._key() > LogNumber.convert(other)._key()

    def __ge__(self, other):
        return self._key() >= LogNumber.convert(other)._key()

    # views ----------------------------------------------------------
    @property
    def log10(self) -> float:
        if self.zero:
            return -math.inf
        return self.ln / _LOG10

    def to_float(self) -> float:
        """Double value, infinite when out of float range."""
        if self.zero:
            return 0.0
        try:
            return math.exp(self.ln)
        except OverflowError:
            return math.inf

    def __float__(self) -> float:
        return self.to_float()

    def __repr__(self) -> str:
        if self.zero:
            return "LogNumber(0)"
        return f"LogNumber(10^{self.log10:.6f})"
