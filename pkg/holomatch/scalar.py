"""
Exact arithmetic over the field Q(i, sqrt2).

Every weight, signature entry, determinant and Pfaffian in holomatch is a
:class:`Scalar`: a + b*i + c*sqrt2 + d*i*sqrt2 with rational a, b, c, d.
The four rationals are stored as integer numerators over one shared positive
denominator, reduced so that structural equality is value equality.

The literal grammar used by every file format and the CLI is a sum of terms
``R``, ``R i``, ``R r2`` and ``R ir2`` where ``R`` is ``int`` or
``int/int``, for example ``1/2 + 3i + 1r2``. Whitespace is ignored.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .types import ScalarParseError

Rational = Union[int, Fraction]
ScalarLike = Union["Scalar", int, Fraction, str]

_UNITS = ("", "i", "r2", "ir2")
_TERM = re.compile(r"([+-]?)(\d+(?:/\d+)?)?(ir2|r2|i)?")


def _normalize(n0: int, n1: int, n2: int, n3: int, den: int) -> Tuple[Tuple[int, int, int, int], int]:
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    if den < 0:
        n0, n1, n2, n3, den = -n0, -n1, -n2, -n3, -den
    if den != 1:
        g = math.gcd(math.gcd(math.gcd(n0, n1), math.gcd(n2, n3)), den)
        if g > 1:
            n0, n1, n2, n3, den = n0 // g, n1 // g, n2 // g, n3 // g, den // g
    if not (n0 or n1 or n2 or n3):
        den = 1
    return (n0, n1, n2, n3), den


def _field_mul(x: Sequence[int], y: Sequence[int]) -> Tuple[int, int, int, int]:
    """Multiply two numerator 4-tuples using i^2 = -1 and sqrt2^2 = 2."""
    a, b, c, d = x
    e, f, g, h = y
    return (
        a * e - b * f + 2 * (c * g - d * h),
        a * f + b * e + 2 * (c * h + d * g),
        a * g + c * e - b * h - d * f,
        a * h + d * e + b * g + c * f,
    )


class Scalar:
    """Immutable element of Q(i, sqrt2).

    Args:
        a: Rational part.
        b: Coefficient of i.
        c: Coefficient of sqrt2.
        d: Coefficient of i*sqrt2.

    Example:
        >>> Scalar(1, 1) * Scalar(1, -1)
        Scalar('2')
        >>> Scalar.parse('1r2') * Scalar.parse('1r2')
        Scalar('2')
    """

    __slots__ = ("_num", "_den")

    def __init__(self, a: Rational = 0, b: Rational = 0, c: Rational = 0, d: Rational = 0):
        parts = [Fraction(a), Fraction(b), Fraction(c), Fraction(d)]
        den = 1
        for p in parts:
            den = den * p.denominator // math.gcd(den, p.denominator)
        nums = [p.numerator * (den // p.denominator) for p in parts]
        self._num, self._den = _normalize(nums[0], nums[1], nums[2], nums[3], den)

    @classmethod
    def _raw(cls, num: Sequence[int], den: int) -> "Scalar":
        obj = cls.__new__(cls)
        obj._num, obj._den = _normalize(num[0], num[1], num[2], num[3], den)
        return obj

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        """Parse a scalar literal such as ``-1/2 + 3i - 2ir2``."""
        s = re.sub(r"\s+", "", str(text)).replace("−", "-")
        if not s:
            raise ScalarParseError(f"empty scalar literal: {text!r}")
        total = [Fraction(0)] * 4
        pos = 0
        first = True
        while pos < len(s):
            m = _TERM.match(s, pos)
            sign, coef, unit = m.group(1), m.group(2), m.group(3)
            if m.end() == pos or (coef is None and unit is None):
                raise ScalarParseError(f"malformed scalar literal {text!r} at offset {pos}")
            if not first and not sign:
                raise ScalarParseError(f"missing '+' or '-' between terms in {text!r}")
            try:
                value = Fraction(coef) if coef is not None else Fraction(1)
            except ZeroDivisionError as e:
                raise ScalarParseError(f"zero denominator in {text!r}") from e
            if sign == "-":
                value = -value
            total[_UNITS.index(unit or "")] += value
            pos = m.end()
            first = False
        return cls(*total)

    # Components

    @property
    def a(self) -> Fraction:
        return Fraction(self._num[0], self._den)

    @property
    def b(self) -> Fraction:
        return Fraction(self._num[1], self._den)

    @property
    def c(self) -> Fraction:
        return Fraction(self._num[2], self._den)

    @property
    def d(self) -> Fraction:
        return Fraction(self._num[3], self._den)

    @property
    def components(self) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c, self.d)

    @property
    def numerators(self) -> Tuple[int, int, int, int]:
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    def is_zero(self) -> bool:
        return not (self._num[0] or self._num[1] or self._num[2] or self._num[3])

    def is_rational(self) -> bool:
        return not (self._num[1] or self._num[2] or self._num[3])

    def is_gaussian(self) -> bool:
        """True when the value lies in Q(i), i.e. carries no sqrt2 part."""
        return not (self._num[2] or self._num[3])

    # Arithmetic

    def __add__(self, other: ScalarLike) -> "Scalar":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        x, dx = self._num, self._den
        y, dy = o._num, o._den
        if dx == dy:
            return Scalar._raw((x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3]), dx)
        return Scalar._raw(tuple(xi * dy + yi * dx for xi, yi in zip(x, y)), dx * dy)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        n = self._num
        return Scalar._raw((-n[0], -n[1], -n[2], -n[3]), self._den)

    def __pos__(self) -> "Scalar":
        return self

    def __sub__(self, other: ScalarLike) -> "Scalar":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: ScalarLike) -> "Scalar":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: ScalarLike) -> "Scalar":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        x, y = self._num, o._num
        if not (x[1] or x[2] or x[3]):
            k = x[0]
            return Scalar._raw((k * y[0], k * y[1], k * y[2], k * y[3]), self._den * o._den)
        if not (y[1] or y[2] or y[3]):
            k = y[0]
            return Scalar._raw((k * x[0], k * x[1], k * x[2], k * x[3]), self._den * o._den)
        return Scalar._raw(_field_mul(x, y), self._den * o._den)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        """Multiplicative inverse.

        Writes x = A + B*i with A, B in Q(sqrt2), multiplies by the conjugate
        A - B*i and rationalizes the real norm A^2 + B^2 in Q(sqrt2).

        Raises:
            ZeroDivisionError: If the scalar is zero.
        """
        if self.is_zero():
            raise ZeroDivisionError("Scalar division by zero")
        a, b, c, d = self._num
        # A = a + c*sqrt2, B = b + d*sqrt2 (numerators over self._den)
        u = a * a + 2 * c * c + b * b + 2 * d * d
        v = 2 * (a * c + b * d)
        # norm = (u + v*sqrt2) / den^2, its inverse = den^2 * (u - v*sqrt2) / (u^2 - 2 v^2)
        w = u * u - 2 * v * v
        den = self._den
        # conj = (a - b i + c sqrt2 - d i sqrt2) / den
        conj = (a, -b, c, -d)
        num = _field_mul(conj, (u, 0, -v, 0))
        return Scalar._raw(tuple(n * den for n in num), w)

    def __truediv__(self, other: ScalarLike) -> "Scalar":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: ScalarLike) -> "Scalar":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exponent: int) -> "Scalar":
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # Comparison and hashing

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Scalar):
            return self._den == other._den and self._num == other._num
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_rational() and Fraction(self._num[0], self._den) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(Fraction(self._num[0], self._den))
        return hash((self._num, self._den))

    def __bool__(self) -> bool:
        return not self.is_zero()

    # Formatting

    def __str__(self) -> str:
        terms: List[str] = []
        for k, unit in enumerate(_UNITS):
            value = Fraction(self._num[k], self._den)
            if value == 0:
                continue
            mag = abs(value)
            text = f"{mag.numerator}" if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
            text += unit
            if not terms:
                terms.append(("-" if value < 0 else "") + text)
            else:
                terms.append(("- " if value < 0 else "+ ") + text)
        return " ".join(terms) if terms else "0"

    def __repr__(self) -> str:
        return f"Scalar('{self}')"


def _coerce(value: object) -> Optional[Scalar]:
    if isinstance(value, Scalar):
        return value
    if isinstance(value, bool):
        return None
    if isinstance(value, int):
        return Scalar._raw((value, 0, 0, 0), 1)
    if isinstance(value, Fraction):
        return Scalar._raw((value.numerator, 0, 0, 0), value.denominator)
    return None


def as_scalar(value: ScalarLike) -> Scalar:
    """Coerce an int, Fraction, literal string or Scalar to a Scalar."""
    if isinstance(value, str):
        return Scalar.parse(value)
    s = _coerce(value)
    if s is None:
        raise TypeError(f"cannot interpret {value!r} as a Scalar")
    return s


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)
SQRT2 = Scalar(0, 0, 1)
INV_SQRT2 = Scalar(0, 0, Fraction(1, 2))


def add(x: Scalar, y: Scalar) -> Scalar:
    return x + y


def mul(x: Scalar, y: Scalar) -> Scalar:
    return x * y


def inverse(x: Scalar) -> Scalar:
    return x.inverse()


def scalar_sum(values: Iterable[Scalar]) -> Scalar:
    total = ZERO
    for v in values:
        total = total + v
    return total


def scalar_prod(values: Iterable[Scalar]) -> Scalar:
    total = ONE
    for v in values:
        if v.is_zero():
            return ZERO
        total = total * v
    return total


def scalar_array(values: Iterable[ScalarLike], shape: Optional[Tuple[int, ...]] = None) -> np.ndarray:
    """Build an object-dtype numpy array of Scalars."""
    items = [as_scalar(v) for v in values]
    arr = np.empty(len(items), dtype=object)
    arr[:] = items
    return arr.reshape(shape) if shape is not None else arr


def zeros(shape: Union[int, Tuple[int, ...]]) -> np.ndarray:
    arr = np.empty(shape, dtype=object)
    arr.fill(ZERO)
    return arr


def identity(n: int) -> np.ndarray:
    arr = zeros((n, n))
    for k in range(n):
        arr[k, k] = ONE
    return arr


# Vectorized arithmetic for exhaustive sweeps

_INT64_SAFE = 1 << 26


class ScalarArray:
    """A vector of Scalars stored as four integer component arrays.

    All entries share one denominator, so products and sums of arrays stay
    exact integer arithmetic. Components that are identically zero are kept
    as ``None`` and skipped. int64 storage is used while magnitudes stay small
    enough that one product-and-sum sweep cannot overflow, Python ints
    (object dtype) otherwise.
    """

    __slots__ = ("parts", "denominator", "size")

    def __init__(self, parts: Sequence[Optional[np.ndarray]], denominator: int, size: int):
        self.parts = tuple(parts)
        self.denominator = denominator
        self.size = size

    @classmethod
    def from_scalars(cls, values: Sequence[Scalar]) -> "ScalarArray":
        den = 1
        for v in values:
            if v._den != 1:
                den = den * v._den // math.gcd(den, v._den)
        cols: List[List[int]] = [[], [], [], []]
        biggest = 0
        for v in values:
            scale = den // v._den
            for k in range(4):
                n = v._num[k] * scale
                cols[k].append(n)
                if abs(n) > biggest:
                    biggest = abs(n)
        dtype = np.int64 if biggest < _INT64_SAFE else object
        parts = []
        for col in cols:
            if any(col):
                parts.append(np.array(col, dtype=dtype))
            else:
                parts.append(None)
        return cls(parts, den, len(values))

    def take(self, index: np.ndarray) -> "ScalarArray":
        return ScalarArray([None if p is None else p[index] for p in self.parts],
                           self.denominator, len(index))

    def __mul__(self, other: "ScalarArray") -> "ScalarArray":
        a, b, c, d = self.parts
        e, f, g, h = other.parts

        def prod(x, y):
            return None if x is None or y is None else x * y

        def combine(*terms):
            acc = None
            for coef, t in terms:
                if t is None:
                    continue
                t = t if coef == 1 else coef * t
                acc = t if acc is None else acc + t
            return acc

        parts = (
            combine((1, prod(a, e)), (-1, prod(b, f)), (2, prod(c, g)), (-2, prod(d, h))),
            combine((1, prod(a, f)), (1, prod(b, e)), (2, prod(c, h)), (2, prod(d, g))),
            combine((1, prod(a, g)), (1, prod(c, e)), (-1, prod(b, h)), (-1, prod(d, f))),
            combine((1, prod(a, h)), (1, prod(d, e)), (1, prod(b, g)), (1, prod(c, f))),
        )
        return ScalarArray(parts, self.denominator * other.denominator, self.size)

    def accumulate(self, other: "ScalarArray", sign: int = 1) -> "ScalarArray":
        """Return self + sign*other; both must share a denominator."""
        if self.denominator != other.denominator:
            raise ValueError("ScalarArray denominators differ")
        parts = []
        for x, y in zip(self.parts, other.parts):
            if y is None:
                parts.append(x)
            elif x is None:
                parts.append(y if sign == 1 else -y)
            else:
                parts.append(x + y if sign == 1 else x - y)
        return ScalarArray(parts, self.denominator, self.size)

    @classmethod
    def empty_like(cls, other: "ScalarArray", denominator: int) -> "ScalarArray":
        return cls([None, None, None, None], denominator, other.size)

    def nonzero_mask(self) -> np.ndarray:
        mask = np.zeros(self.size, dtype=bool)
        for p in self.parts:
            if p is not None:
                mask |= p != 0
        return mask

    def scalar_at(self, k: int) -> Scalar:
        num = tuple(0 if p is None else int(p[k]) for p in self.parts)
        return Scalar._raw(num, self.denominator)
