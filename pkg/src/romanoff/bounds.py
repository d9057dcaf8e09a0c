"""Certified real bounds: directed-rounded Decimal intervals.

A `BoundValue` is an enclosure [lo, hi] of a real number, computed at 50
significant digits (about 166 bits) with outward rounding: every endpoint
operation runs under ROUND_FLOOR or ROUND_CEILING, and Decimal's exp/ln/sqrt
are correctly rounded in the active mode, so the true value always stays
inside.  `value` and `slack` expose the midpoint/half-width view used in
reports.

Comparisons are directed and never silently optimistic: a claim is reported
"pass" only when the enclosures certify it, "fail" only when they certify its
negation, and "precision-insufficient" otherwise.  Exact rationals enter
comparisons losslessly (Decimal endpoints convert to Fraction exactly).
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_CEILING, ROUND_FLOOR, Decimal, localcontext
from fractions import Fraction

PRECISION_DIGITS = 50

PASS = "pass"
FAIL = "fail"
VACUOUS = "vacuous"
PRECISION_INSUFFICIENT = "precision-insufficient"


def _run(rounding, fn):
    with localcontext() as ctx:
        ctx.prec = PRECISION_DIGITS
        ctx.rounding = rounding
        return fn()


def _down_up(fn) -> tuple[Decimal, Decimal]:
    """Enclosure of a correctly-rounded-to-nearest transcendental result.

    Decimal's exp/ln/sqrt round half-even regardless of the context mode, so
    the true value lies within half an ulp of the result; widening by one full
    ulp on each side gives a certified enclosure.
    """
    with localcontext() as ctx:
        ctx.prec = PRECISION_DIGITS
        r = fn()
    if r.is_zero():
        ulp = Decimal(1).scaleb(-2 * PRECISION_DIGITS)
    else:
        ulp = Decimal(1).scaleb(r.adjusted() - PRECISION_DIGITS + 1)
    return (
        _run(ROUND_FLOOR, lambda: r - ulp),
        _run(ROUND_CEILING, lambda: r + ulp),
    )


class BoundValue:
    """Interval enclosure of a real number with certified endpoints."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: Decimal, hi: Decimal):
        if lo > hi:
            raise ValueError(f"inverted interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def __setattr__(self, name, value):
        raise AttributeError("BoundValue is immutable")

    # -- constructors ---------------------------------------------------------

    @classmethod
    def exact(cls, v) -> "BoundValue":
        d = Decimal(v)
        return cls(d, d)

    @classmethod
    def from_fraction(cls, fr) -> "BoundValue":
        fr = Fraction(fr)
        num, den = Decimal(fr.numerator), Decimal(fr.denominator)
        lo = _run(ROUND_FLOOR, lambda: num / den)
        hi = _run(ROUND_CEILING, lambda: num / den)
        return cls(lo, hi)

    @classmethod
    def from_midpoint(cls, value, slack) -> "BoundValue":
        v, s = Decimal(value), Decimal(slack)
        return cls(
            _run(ROUND_FLOOR, lambda: v - s), _run(ROUND_CEILING, lambda: v + s)
        )

    # -- views ----------------------------------------------------------------

    @property
    def value(self) -> Decimal:
        return _run(ROUND_CEILING, lambda: (self.lo + self.hi) / 2)

    @property
    def slack(self) -> Decimal:
        return _run(ROUND_CEILING, lambda: (self.hi - self.lo) / 2)

    def fraction_bounds(self) -> tuple[Fraction, Fraction]:
        return Fraction(self.lo), Fraction(self.hi)

    # -- arithmetic -------------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "BoundValue":
        if isinstance(other, BoundValue):
            return other
        if isinstance(other, (int, Decimal)):
            return BoundValue.exact(other)
        if isinstance(other, Fraction):
            return BoundValue.from_fraction(other)
        raise TypeError(f"cannot mix BoundValue with {type(other).__name__}")

    def __add__(self, other):
        o = self._coerce(other)
        return BoundValue(
            _run(ROUND_FLOOR, lambda: self.lo + o.lo),
            _run(ROUND_CEILING, lambda: self.hi + o.hi),
        )

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return BoundValue(
            _run(ROUND_FLOOR, lambda: self.lo - o.hi),
            _run(ROUND_CEILING, lambda: self.hi - o.lo),
        )

    def __rsub__(self, other):
        return self._coerce(other).__sub__(self)

    def __neg__(self):
        return BoundValue(-self.hi, -self.lo)

    def __mul__(self, other):
        o = self._coerce(other)
        pairs = [(self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi)]
        lo = _run(ROUND_FLOOR, lambda: min(a * b for a, b in pairs))
        hi = _run(ROUND_CEILING, lambda: max(a * b for a, b in pairs))
        return BoundValue(lo, hi)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError("divisor interval contains zero")
        pairs = [(self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi)]
        lo = _run(ROUND_FLOOR, lambda: min(a / b for a, b in pairs))
        hi = _run(ROUND_CEILING, lambda: max(a / b for a, b in pairs))
        return BoundValue(lo, hi)

    def __rtruediv__(self, other):
        return self._coerce(other).__truediv__(self)

    def squared(self) -> "BoundValue":
        if self.lo >= 0:
            lo, hi = self.lo, self.hi
        elif self.hi <= 0:
            lo, hi = self.hi, self.lo
        else:
            mag = max(-self.lo, self.hi)
            return BoundValue(
                Decimal(0), _run(ROUND_CEILING, lambda: mag * mag)
            )
        return BoundValue(
            _run(ROUND_FLOOR, lambda: lo * lo), _run(ROUND_CEILING, lambda: hi * hi)
        )

    def sqrt(self) -> "BoundValue":
        if self.lo < 0:
            raise ValueError("sqrt of an interval reaching below zero")
        lo = max(Decimal(0), _down_up(self.lo.sqrt)[0])
        hi = _down_up(self.hi.sqrt)[1]
        return BoundValue(lo, hi)

    def ln(self) -> "BoundValue":
        if self.lo <= 0:
            raise ValueError("ln of an interval reaching zero")
        return BoundValue(_down_up(self.lo.ln)[0], _down_up(self.hi.ln)[1])

    def exp(self) -> "BoundValue":
        return BoundValue(_down_up(self.lo.exp)[0], _down_up(self.hi.exp)[1])

    def min_with(self, other) -> "BoundValue":
        o = self._coerce(other)
        return BoundValue(min(self.lo, o.lo), min(self.hi, o.hi))

    def max_with(self, other) -> "BoundValue":
        o = self._coerce(other)
        return BoundValue(max(self.lo, o.lo), max(self.hi, o.hi))

    # -- directed comparisons ---------------------------------------------------

    def exceeds(self, r) -> bool:
        """Certified: every real in the enclosure is > r (exact rational r)."""
        return Fraction(self.lo) > Fraction(r)

    def below(self, r) -> bool:
        """Certified: every real in the enclosure is < r (exact rational r)."""
        return Fraction(self.hi) < Fraction(r)

    def contains(self, r) -> bool:
        return Fraction(self.lo) <= Fraction(r) <= Fraction(self.hi)

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"

    def __repr__(self) -> str:
        return f"BoundValue({self.value} +/- {self.slack})"


def _bounds_of(v) -> tuple[Fraction, Fraction]:
    """Exact rational enclosure of a comparison operand."""
    if isinstance(v, BoundValue):
        return v.fraction_bounds()
    if isinstance(v, (int, Fraction)):
        fr = Fraction(v)
        return fr, fr
    if isinstance(v, Decimal):
        fr = Fraction(v)
        return fr, fr
    raise TypeError(f"cannot compare {type(v).__name__}")


def compare_lt(lhs, rhs) -> str:
    """Status of the claim lhs < rhs under directed semantics."""
    llo, lhi = _bounds_of(lhs)
    rlo, rhi = _bounds_of(rhs)
    if lhi < rlo:
        return PASS
    if llo >= rhi:
        return FAIL
    return PRECISION_INSUFFICIENT


def compare_le(lhs, rhs) -> str:
    """Status of the claim lhs <= rhs under directed semantics."""
    llo, lhi = _bounds_of(lhs)
    rlo, rhi = _bounds_of(rhs)
    if lhi <= rlo:
        return PASS
    if llo > rhi:
        return FAIL
    return PRECISION_INSUFFICIENT


# -- constants -----------------------------------------------------------------

# Euler's constant and exp(gamma), 30 significant digits with slack 1e-25;
# every bound computation propagates this slack by interval rules.
GAMMA = BoundValue.from_midpoint(
    "0.577215664901532860606512090082", "1e-25"
)
EXP_GAMMA = BoundValue.from_midpoint(
    "1.781072417990197985236504103107", "1e-25"
)
E = BoundValue.exact(1).exp()


def ln_of(x) -> BoundValue:
    """Certified natural logarithm of an exact rational or integer."""
    return BoundValue.from_fraction(Fraction(x)).ln()


def sqrt_of(x) -> BoundValue:
    """Certified square root of an exact rational or integer."""
    return BoundValue.from_fraction(Fraction(x)).sqrt()


# -- check results ---------------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    """One verified inequality; serializes to the JSON check schema."""

    check: str
    params: dict
    lhs: str
    rhs: str
    status: str
    slack: str = "0"
    note: str = ""

    @property
    def failed(self) -> bool:
        return self.status == FAIL

    def to_dict(self) -> dict:
        out = {
            "check": self.check,
            "params": dict(sorted(self.params.items())),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "status": self.status,
            "slack": self.slack,
        }
        if self.note:
            out["note"] = self.note
        return out


def result_of(check: str, params: dict, lhs, rhs, status: str, note: str = "") -> CheckResult:
    """Build a CheckResult, rendering operands and the combined slack."""

    def render(v) -> str:
        if isinstance(v, BoundValue):
            return str(v.value)
        return str(v)

    slack = Decimal(0)
    for v in (lhs, rhs):
        if isinstance(v, BoundValue):
            slack = max(slack, v.slack)
    return CheckResult(
        check=check,
        params=params,
        lhs=render(lhs),
        rhs=render(rhs),
        status=status,
        slack=str(slack),
        note=note,
    )
