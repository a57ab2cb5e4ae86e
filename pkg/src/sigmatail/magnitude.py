"""Extended-range positive numbers stored in the log10 domain.

A ``Magnitude`` holds the base-10 logarithm of a strictly positive real (or
an explicit zero flag), so values like 1e-276 and 1e+272 are ordinary
first-class quantities: products, quotients, integer powers and comparisons
are exact log10 arithmetic and never underflow or overflow.

This is the only representation probabilities and occurrence periods travel
in between modules.  Addition is deliberately not provided; sums that matter
numerically happen in ordinary floats before values are lifted here.
"""

from __future__ import annotations

import math
import re
from decimal import Decimal

from .errors import DomainError, ParseError

# Exponent guard: far beyond anything composable from double inputs, but
# finite so log10_value never degrades into inf/nan silently.
LOG10_CAP = 1e15

_NUMBER_RE = re.compile(r"^\s*([+-]?)(\d+(?:\.\d*)?|\.\d+)(?:[eE]([+-]?\d+))?\s*$")


def _checked_log10(value: float) -> float:
    if not math.isfinite(value):
        raise DomainError("log10 value must be finite")
    if abs(value) > LOG10_CAP:
        raise DomainError(
            f"exponent out of supported range: |log10| = {abs(value):.6g} > {LOG10_CAP:g}"
        )
    return float(value)


class Magnitude:
    """A nonnegative real represented by its base-10 logarithm.

    Use :func:`from_real`, :func:`from_sci`, :func:`from_log10` or
    :func:`parse` to construct instances; ``Magnitude(L)`` itself means
    "the value whose log10 is L".
    """

    __slots__ = ("_log10", "_zero")

    def __init__(self, log10_value: float = 0.0, *, zero: bool = False):
        if zero:
            self._log10 = 0.0
            self._zero = True
        else:
            self._log10 = _checked_log10(log10_value)
            self._zero = False

    @property
    def log10_value(self) -> float:
        """Base-10 logarithm of the represented value (0.0 for the zero value)."""
        return self._log10

    @property
    def is_zero(self) -> bool:
        return self._zero

    def as_float(self) -> float:
        """The represented value as an ordinary float.

        Raises DomainError when the value falls outside double range.
        """
        if self._zero:
            return 0.0
        try:
            v = 10.0 ** self._log10
        except OverflowError:
            v = math.inf
        if v == 0.0 or math.isinf(v):
            raise DomainError(
                f"value 10^{self._log10:.6g} is not representable as a float"
            )
        return v

    def recip(self) -> "Magnitude":
        if self._zero:
            raise DomainError("reciprocal of zero")
        return Magnitude(-self._log10)

    def pow_int(self, n: int) -> "Magnitude":
        return pow_int(self, n)

    def format(self, sig_digits: int = 6) -> str:
        return format_sci(self, sig_digits)

    def sci_parts(self) -> tuple[float, int]:
        """(mantissa, exponent10) with mantissa in [1, 10), or (0.0, 0) for zero."""
        if self._zero:
            return 0.0, 0
        exp = math.floor(self._log10)
        mant = 10.0 ** (self._log10 - exp)
        if mant >= 10.0:
            mant /= 10.0
            exp += 1
        elif mant < 1.0:
            mant *= 10.0
            exp -= 1
        return mant, int(exp)

    # arithmetic -----------------------------------------------------------

    def __mul__(self, other):
        if not isinstance(other, Magnitude):
            return NotImplemented
        return mul(self, other)

    def __truediv__(self, other):
        if not isinstance(other, Magnitude):
            return NotImplemented
        return div(self, other)

    # ordering -------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Magnitude):
            return NotImplemented
        if self._zero or other._zero:
            return self._zero and other._zero
        return self._log10 == other._log10

    def __lt__(self, other):
        if not isinstance(other, Magnitude):
            return NotImplemented
        return compare(self, other) < 0

    def __le__(self, other):
        if not isinstance(other, Magnitude):
            return NotImplemented
        return compare(self, other) <= 0

    def __gt__(self, other):
        if not isinstance(other, Magnitude):
            return NotImplemented
        return compare(self, other) > 0

    def __ge__(self, other):
        if not isinstance(other, Magnitude):
            return NotImplemented
        return compare(self, other) >= 0

    def __hash__(self):
        return hash((self._zero, self._log10))

    def __repr__(self):
        return f"Magnitude({self.format(6)!r})"

    def __str__(self):
        return self.format(6)


ZERO = Magnitude(zero=True)
ONE = Magnitude(0.0)


def from_real(v: float) -> Magnitude:
    """Lift an ordinary nonnegative float into the log10 domain."""
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise DomainError(f"expected a real number, got {type(v).__name__}")
    v = float(v)
    if not math.isfinite(v):
        raise DomainError("value must be finite")
    if v < 0.0:
        raise DomainError("negative values are not representable")
    if v == 0.0:
        return ZERO
    return Magnitude(math.log10(v))


def from_sci(mantissa: float, exponent: int) -> Magnitude:
    """Magnitude of mantissa * 10**exponent with mantissa in [1, 10)."""
    if not (isinstance(mantissa, (int, float)) and math.isfinite(float(mantissa))):
        raise DomainError("mantissa must be a finite real")
    mantissa = float(mantissa)
    if not 1.0 <= mantissa < 10.0:
        raise DomainError(f"mantissa {mantissa!r} outside [1, 10)")
    if abs(exponent) > LOG10_CAP:
        raise DomainError("exponent out of supported range")
    return Magnitude(math.log10(mantissa) + exponent)


def from_log10(log10_value: float) -> Magnitude:
    """Magnitude whose base-10 logarithm is ``log10_value``."""
    return Magnitude(log10_value)


def mul(a: Magnitude, b: Magnitude) -> Magnitude:
    if a.is_zero or b.is_zero:
        return ZERO
    return Magnitude(_checked_log10(a.log10_value + b.log10_value))


def div(a: Magnitude, b: Magnitude) -> Magnitude:
    if b.is_zero:
        raise DomainError("division by zero")
    if a.is_zero:
        return ZERO
    return Magnitude(_checked_log10(a.log10_value - b.log10_value))


def recip(a: Magnitude) -> Magnitude:
    return a.recip()


def pow_int(a: Magnitude, n: int) -> Magnitude:
    if not isinstance(n, int) or isinstance(n, bool):
        raise DomainError("exponent must be an integer")
    if a.is_zero:
        if n > 0:
            return ZERO
        raise DomainError("zero may only be raised to a positive power")
    if n == 0:
        return ONE
    return Magnitude(_checked_log10(a.log10_value * n))


def compare(a: Magnitude, b: Magnitude) -> int:
    """Total order over represented values: -1, 0 or +1."""
    if a.is_zero and b.is_zero:
        return 0
    if a.is_zero:
        return -1
    if b.is_zero:
        return 1
    if a.log10_value < b.log10_value:
        return -1
    if a.log10_value > b.log10_value:
        return 1
    return 0


def format_sci(a: Magnitude, sig_digits: int = 4) -> str:
    """Render as ``M.MM...e±E``: mantissa rounded half-to-even to
    ``sig_digits``, lowercase ``e``, signed exponent without leading zeros.
    """
    if not isinstance(sig_digits, int) or not 1 <= sig_digits <= 17:
        raise DomainError("sig_digits must be an integer in [1, 17]")
    decimals = sig_digits - 1
    if a.is_zero:
        mant_text = f"{0.0:.{decimals}f}"
        return f"{mant_text}e+0"
    mant, exp = a.sci_parts()
    mant_text = f"{mant:.{decimals}f}"
    if float(mant_text) >= 10.0:
        exp += 1
        mant_text = f"{mant / 10.0:.{decimals}f}"
    sign = "+" if exp >= 0 else "-"
    return f"{mant_text}e{sign}{abs(exp)}"


def parse(text: str) -> Magnitude:
    """Read scientific (``3.057e-138``) or plain decimal (``43.956``) text.

    Exponents may lie far outside double range; the mantissa and exponent
    are combined in the log10 domain, never through a float conversion of
    the whole number.
    """
    if not isinstance(text, str):
        raise ParseError(f"expected text, got {type(text).__name__}")
    m = _NUMBER_RE.match(text)
    if not m:
        raise ParseError(f"not a number: {text!r}")
    sign, mant_text, exp_text = m.groups()
    exponent = int(exp_text) if exp_text else 0
    if not any(c in "123456789" for c in mant_text):
        return ZERO
    if sign == "-":
        raise DomainError(f"negative values are not representable: {text!r}")
    mant = float(mant_text)
    if mant == 0.0 or math.isinf(mant):
        # Digit strings beyond float range (hundreds of digits); Decimal
        # takes the log exactly enough.
        log10_mant = float(Decimal(mant_text).log10())
    else:
        log10_mant = math.log10(mant)
    value = log10_mant + exponent
    if abs(value) > LOG10_CAP:
        raise DomainError(f"exponent out of supported range in {text!r}")
    return Magnitude(value)
