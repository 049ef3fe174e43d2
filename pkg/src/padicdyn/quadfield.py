"""Exact arithmetic in quadratic number fields Q(sqrt(D)).

Elements are pairs of rationals a + b*sqrt(D) with D squarefree.  The
module also knows how the prime 2 behaves in the field (split, ramified,
or inert by D mod 8), computes the valuation at a prime above 2, solves
square roots exactly, and builds the 2-adic completion as a
FieldDescriptor together with the image of sqrt(D) in it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .elements import PadicElement, sqrt as padic_sqrt, uniformizer
from .errors import PrecisionExhausted
from .fields import FieldDescriptor, make_field
from .numutil import is_squarefree, rational_sqrt, vp_fraction

INFINITY = math.inf


class QuadField:
    """Q(sqrt(delta)) for a squarefree integer delta != 0, 1."""

    __slots__ = ("delta",)

    def __init__(self, delta: int):
        if delta in (0, 1) or not is_squarefree(delta):
            raise ValueError(f"delta must be squarefree and != 0, 1; got {delta}")
        self.delta = delta

    def __eq__(self, other):
        return isinstance(other, QuadField) and self.delta == other.delta

    def __hash__(self):
        return hash(("QuadField", self.delta))

    def __repr__(self):
        return f"QuadField(sqrt({self.delta}))"

    def element(self, a, b=0) -> "QuadElement":
        return QuadElement(self.delta, Fraction(a), Fraction(b))

    def sqrt_delta(self) -> "QuadElement":
        return QuadElement(self.delta, Fraction(0), Fraction(1))


class QuadElement:
    """a + b*sqrt(delta) with exact rational a, b."""

    __slots__ = ("delta", "a", "b")

    def __init__(self, delta: int, a, b=0):
        self.delta = delta
        self.a = Fraction(a)
        self.b = Fraction(b)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def _coerce(self, other):
        if isinstance(other, QuadElement):
            if other.delta != self.delta:
                raise ValueError("elements of different quadratic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElement(self.delta, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElement(self.delta, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadElement(self.delta, -self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElement(
            self.delta,
            self.a * o.a + self.delta * self.b * o.b,
            self.a * o.b + self.b * o.a,
        )

    __rmul__ = __mul__

    def conj(self) -> "QuadElement":
        return QuadElement(self.delta, self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - self.delta * self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a

    def inverse(self) -> "QuadElement":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("zero has no inverse")
        return QuadElement(self.delta, self.a / n, -self.b / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = QuadElement(self.delta, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return (
            isinstance(other, QuadElement)
            and self.delta == other.delta
            and self.a == other.a
            and self.b == other.b
        )

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.delta, self.a, self.b))

    def sort_key(self):
        return (self.a, self.b)

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        root = f"sqrt({self.delta})"
        if self.b == 1:
            bs = root
        elif self.b == -1:
            bs = f"-{root}"
        else:
            bs = f"{self.b}*{root}"
        if self.a == 0:
            return bs
        sign = " - " if self.b < 0 else " + "
        mag = bs.lstrip("-") if self.b < 0 else bs
        return f"{self.a}{sign}{mag}"

    def __repr__(self):
        return f"QuadElement({self})"


def as_quad(K: QuadField, value) -> QuadElement:
    if isinstance(value, QuadElement):
        if value.delta != K.delta:
            raise ValueError("element from a different quadratic field")
        return value
    return K.element(value)


# -- the prime above 2 -----------------------------------------------------------


@dataclass(frozen=True)
class SplittingData:
    """How 2 decomposes in Q(sqrt(delta)): kind, residue degree, ramification."""

    kind: str  # "split" | "ramified" | "inert"
    f: int
    e: int
    embedding: PadicElement | None = None  # chosen sqrt(delta) in Q_2 when split


def splitting_of_two(K: QuadField, precision: int = 64) -> SplittingData:
    d = K.delta
    if d % 8 == 1:
        F = make_field(2, 1, 1, N=precision)
        emb = padic_sqrt(PadicElement.from_int(F, d))
        return SplittingData("split", 1, 1, emb)
    if d % 8 == 5:
        return SplittingData("inert", 2, 1)
    # d = 2, 3 mod 4
    return SplittingData("ramified", 1, 2)


def completion_at_2(K: QuadField, N: int = 64) -> tuple[FieldDescriptor, PadicElement]:
    """The completion K_p at the chosen prime above 2, and sqrt(delta) in it."""
    d = K.delta
    kind = splitting_of_two(K, precision=N).kind
    if kind == "split":
        F = make_field(2, 1, 1, N=N)
        s = padic_sqrt(PadicElement.from_int(F, d))
        return F, s
    if kind == "inert":
        F = make_field(2, 2, 1, N=N)
        s = padic_sqrt(PadicElement.from_int(F, d))
        return F, s
    if d % 4 == 2:
        F = make_field(2, 1, 2, eisenstein_poly=[-d, 0, 1], N=N)
        return F, uniformizer(F)  # pi^2 = delta
    # d = 3 mod 4: uniformizer pi = 1 + sqrt(delta), so sqrt(delta) = pi - 1
    F = make_field(2, 1, 2, eisenstein_poly=[1 - d, -2, 1], N=N)
    return F, uniformizer(F) - 1


def embed_at_2(x: QuadElement | Fraction | int, F: FieldDescriptor, sqrt_delta: PadicElement) -> PadicElement:
    """Image of x under the chosen embedding K -> K_p."""
    if isinstance(x, QuadElement):
        a = PadicElement.from_rational(F, x.a)
        if x.b == 0:
            return a
        return a + PadicElement.from_rational(F, x.b) * sqrt_delta
    return PadicElement.from_rational(F, x)


def valuation_at_2(K: QuadField, x, data: SplittingData | None = None):
    """v_p(x) for the chosen prime p above 2 (normalized so v(uniformizer) = 1)."""
    x = as_quad(K, x)
    if x.a == 0 and x.b == 0:
        return INFINITY
    if data is None:
        data = splitting_of_two(K)
    if data.kind == "inert":
        return vp_fraction(x.norm(), 2) // 2
    if data.kind == "ramified":
        return vp_fraction(x.norm(), 2)
    # split: read the valuation off the embedding, retrying at higher precision
    N = 64
    while N <= 1 << 16:
        F, s = completion_at_2(K, N=N)
        img = embed_at_2(x, F, s)
        if img.unit is not None:
            return img.shift
        N *= 2
    raise PrecisionExhausted("valuation not resolved at precision 2^16")


# -- exact square roots ------------------------------------------------------------


def is_square(K: QuadField, z) -> QuadElement | None:
    """An exact w in K with w^2 = z, or None when z is not a square in K.

    Writes w = x + y*sqrt(delta); then x^2 + delta*y^2 = a and 2xy = b,
    which reduces to a rational quadratic in x^2 solved by exact square
    testing.
    """
    z = as_quad(K, z)
    d = K.delta
    if z == 0:
        return K.element(0)
    if z.b == 0:
        r = rational_sqrt(z.a)
        if r is not None:
            return K.element(r)
        r = rational_sqrt(z.a / d)
        if r is not None:
            return K.element(0, r)
        return None
    n = z.norm()
    s = rational_sqrt(n)
    if s is None:
        return None
    for x2 in ((z.a + s) / 2, (z.a - s) / 2):
        x = rational_sqrt(x2)
        if x is None or x == 0:
            continue
        y = z.b / (2 * x)
        w = K.element(x, y)
        if w * w == z:
            return w
    return None
