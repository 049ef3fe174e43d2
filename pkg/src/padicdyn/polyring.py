"""Dense univariate polynomials over exact coefficient rings.

Coefficients may be ints, Fractions, QuadElements, or nested Poly values
(polynomials in a parameter).  Scalar operands in ring operations are ints,
Fractions, or QuadElements; a Poly operand is always treated as living in
the same ring.  Division is supported exactly: divmod works whenever the
divisor's leading coefficient is invertible (or the division is exact over
the integers), and exact_div raises InexactDivision on any remainder.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InexactDivision

_SCALARS = (int, Fraction)


def _is_zero(c) -> bool:
    return c == 0


def _coeff_div(a, b):
    """a / b for coefficient values, exact or raising InexactDivision."""
    if b == 1:
        return a
    if b == -1:
        return -a
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        return q if r == 0 else Fraction(a, b)
    if isinstance(b, Poly):
        raise InexactDivision("cannot divide by a non-constant nested coefficient")
    return a / b


class Poly:
    """Immutable dense polynomial; () is the zero polynomial."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        coeffs = list(coeffs)
        while coeffs and _is_zero(coeffs[-1]):
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> "Poly":
        return cls((c,))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self):
        return self.coeffs[-1]

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def _wrap(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, _SCALARS) or not hasattr(other, "__iter__"):
            return Poly((other,))
        return None

    def __add__(self, other):
        other = self._wrap(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._wrap(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._wrap(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if _is_zero(ai):
                continue
            for j, bj in enumerate(b):
                out[i + j] = out[i + j] + ai * bj
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        out = Poly((1,))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other: "Poly"):
        if not isinstance(other, Poly) or other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dlead = other.lead
        dd = other.degree
        q = [0] * max(len(rem) - dd, 0)
        while len(rem) - 1 >= dd and rem:
            if _is_zero(rem[-1]):
                rem.pop()
                continue
            c = _coeff_div(rem[-1], dlead)
            k = len(rem) - 1 - dd
            q[k] = c
            for i, oc in enumerate(other.coeffs):
                rem[k + i] = rem[k + i] - c * oc
            rem.pop()
        return Poly(q), Poly(rem)

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero:
            raise InexactDivision(f"remainder of degree {r.degree} in exact division")
        return q

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        # non-Poly operands compare as constants
        if self.is_zero:
            return other == 0
        return self.degree == 0 and self.coeffs[0] == other

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        """Horner evaluation at any value supporting ring ops with the coefficients."""
        if not self.coeffs:
            return 0 * x if hasattr(x, "__mul__") else 0
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def compose(self, other: "Poly") -> "Poly":
        if not self.coeffs:
            return Poly()
        # coefficients are wrapped as constants so nested-Poly values stay scalars
        acc = Poly((self.coeffs[-1],))
        for c in reversed(self.coeffs[:-1]):
            acc = acc * other + Poly((c,))
        return acc

    def derivative(self) -> "Poly":
        return Poly(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def map_coeffs(self, fn) -> "Poly":
        return Poly(tuple(fn(c) for c in self.coeffs))

    def monic(self) -> "Poly":
        if self.is_zero:
            return self
        lead = self.lead
        if lead == 1:
            return self
        return Poly(tuple(_coeff_div(c, lead) for c in self.coeffs))

    def gcd(self, other: "Poly") -> "Poly":
        """Monic gcd; requires field coefficients (Fractions or QuadElements)."""
        a = self.map_coeffs(_to_field).monic() if not self.is_zero else self
        b = other.map_coeffs(_to_field).monic() if not other.is_zero else other
        while not b.is_zero:
            _, r = divmod(a, b)
            a, b = b, (r.map_coeffs(_to_field).monic() if not r.is_zero else r)
        return a

    def to_str(self, var: str = "x") -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i] if i < len(self.coeffs) else 0
            if _is_zero(c):
                continue
            parts.append(_term_str(c, i, var))
        out = parts[0]
        for term in parts[1:]:
            if term.startswith("-"):
                out += " - " + term[1:]
            else:
                out += " + " + term
        return out

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Poly({self.to_str()})"


def _to_field(c):
    return Fraction(c) if isinstance(c, int) else c


def _coeff_str(c, var: str) -> str:
    s = c.to_str("c") if isinstance(c, Poly) else str(c)
    return f"({s})" if " " in s else s


def _term_str(c, i: int, var: str) -> str:
    xpow = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
    if i == 0:
        return _coeff_str(c, var)
    if c == 1:
        return xpow
    if c == -1:
        return f"-{xpow}"
    return f"{_coeff_str(c, var)}*{xpow}"
