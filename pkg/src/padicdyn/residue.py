"""Arithmetic in the residue field F_{p^f}.

Elements are tuples of f integers in [0, p), the coordinates in the
polynomial basis 1, t, ..., t^{f-1} where t is a root of the unramified
defining polynomial mod p.  For f = 1 the basis is just (1,) and elements
are 1-tuples.
"""

from __future__ import annotations

# -- polynomial helpers over F_p (dense int lists, trailing zeros stripped) --


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mul_modp(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def poly_mod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm and a:
        if a[-1] == 0:
            a.pop()
            continue
        q = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - q * mi) % p
        a.pop()
    return _trim(a)


def poly_powmod(a, n, m, p):
    out = [1]
    base = poly_mod(a, m, p)
    while n:
        if n & 1:
            out = poly_mod(poly_mul_modp(out, base, p), m, p)
        base = poly_mod(poly_mul_modp(base, base, p), m, p)
        n >>= 1
    return out


def poly_gcd_modp(a, b, p):
    a, b = list(a), list(b)
    while b:
        # a mod b
        dm = len(b) - 1
        inv_lead = pow(b[-1], -1, p)
        r = list(a)
        while r and len(r) - 1 >= dm:
            if r[-1] == 0:
                r.pop()
                continue
            q = r[-1] * inv_lead % p
            shift = len(r) - 1 - dm
            for i, bi in enumerate(b):
                r[shift + i] = (r[shift + i] - q * bi) % p
            r.pop()
        a, b = b, _trim(r)
    return a


def is_irreducible_modp(poly, p) -> bool:
    """Rabin test for a monic polynomial over F_p."""
    f = len(poly) - 1
    if f < 1:
        return False
    x = [0, 1]
    from .numutil import factorize

    # x^(p^f) == x mod poly
    xq = poly_powmod(x, p**f, poly, p)
    if _trim(list(xq)) != poly_mod(x, poly, p):
        return False
    for ell in factorize(f):
        fe = f // ell
        xe = poly_powmod(x, p**fe, poly, p)
        diff = list(xe) + [0] * max(0, 2 - len(xe))
        diff[1] = (diff[1] - 1) % p
        g = poly_gcd_modp(_trim(diff), poly, p)
        if len(g) - 1 > 0:
            return False
    return True


class ResidueField:
    """F_{p^f} in the polynomial basis of a monic irreducible polynomial."""

    __slots__ = ("p", "f", "modulus", "q", "_zero", "_one")

    def __init__(self, p: int, modulus: tuple[int, ...]):
        self.p = p
        self.modulus = tuple(c % p for c in modulus)
        self.f = len(modulus) - 1
        self.q = p**self.f
        self._zero = ResidueElement(self, (0,) * self.f)
        self._one = ResidueElement(self, (1,) + (0,) * (self.f - 1))

    def __eq__(self, other):
        return (
            isinstance(other, ResidueField)
            and self.p == other.p
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __repr__(self):
        return f"ResidueField(p={self.p}, f={self.f})"

    # -- raw tuple arithmetic -------------------------------------------------

    def add_t(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub_t(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg_t(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def mul_t(self, a, b):
        f, p = self.f, self.p
        if f == 1:
            return (a[0] * b[0] % p,)
        prod = poly_mul_modp(list(a), list(b), p)
        prod = poly_mod(prod, list(self.modulus), p)
        prod += [0] * (f - len(prod))
        return tuple(prod)

    def pow_t(self, a, n):
        out = self._one.coeffs
        base = a
        while n:
            if n & 1:
                out = self.mul_t(out, base)
            base = self.mul_t(base, base)
            n >>= 1
        return out

    def inv_t(self, a):
        if not any(a):
            raise ZeroDivisionError("residue zero has no inverse")
        return self.pow_t(a, self.q - 2)

    # -- element interface ----------------------------------------------------

    def element(self, coeffs) -> ResidueElement:
        if isinstance(coeffs, int):
            coeffs = (coeffs % self.p,) + (0,) * (self.f - 1)
        else:
            coeffs = tuple(c % self.p for c in coeffs)
            if len(coeffs) != self.f:
                raise ValueError("wrong number of basis coordinates")
        return ResidueElement(self, coeffs)

    def zero(self) -> ResidueElement:
        return self._zero

    def one(self) -> ResidueElement:
        return self._one

    def gen(self) -> ResidueElement:
        """The basis root t (equals 0 when f = 1)."""
        if self.f == 1:
            return self.element((-self.modulus[0]) % self.p)
        return self.element((0, 1) + (0,) * (self.f - 2))

    def elements(self):
        """All q elements, ordered by packed index."""
        for i in range(self.q):
            yield self.unpack(i)

    def pack(self, a: ResidueElement | tuple) -> int:
        coeffs = a.coeffs if isinstance(a, ResidueElement) else a
        out = 0
        for c in reversed(coeffs):
            out = out * self.p + c
        return out

    def unpack(self, i: int) -> ResidueElement:
        coeffs = []
        for _ in range(self.f):
            i, r = divmod(i, self.p)
            coeffs.append(r)
        return ResidueElement(self, tuple(coeffs))


class ResidueElement:
    """One element of F_{p^f}; immutable and hashable."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: ResidueField, coeffs: tuple[int, ...]):
        self.field = field
        self.coeffs = coeffs

    def _coerce(self, other):
        if isinstance(other, ResidueElement):
            if other.field != self.field:
                raise ValueError("residue elements from different fields")
            return other.coeffs
        if isinstance(other, int):
            return ((other % self.field.p),) + (0,) * (self.field.f - 1)
        return None

    def __add__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return ResidueElement(self.field, self.field.add_t(self.coeffs, c))

    __radd__ = __add__

    def __sub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return ResidueElement(self.field, self.field.sub_t(self.coeffs, c))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return ResidueElement(self.field, self.field.neg_t(self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            other = self.field.element(other)
        if not isinstance(other, ResidueElement):
            return NotImplemented
        c = self._coerce(other)
        return ResidueElement(self.field, self.field.mul_t(self.coeffs, c))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return ResidueElement(self.field, self.field.pow_t(self.coeffs, n))

    def inverse(self) -> ResidueElement:
        return ResidueElement(self.field, self.field.inv_t(self.coeffs))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.coeffs == ((other % self.field.p),) + (0,) * (self.field.f - 1)
        return (
            isinstance(other, ResidueElement)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field.p, self.field.modulus, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def packed(self) -> int:
        return self.field.pack(self.coeffs)

    def __str__(self):
        if self.field.f == 1:
            return str(self.coeffs[0])
        terms = []
        for j in range(self.field.f - 1, -1, -1):
            c = self.coeffs[j]
            if c == 0:
                continue
            if j == 0:
                terms.append(str(c))
            else:
                tpow = "t" if j == 1 else f"t^{j}"
                terms.append(tpow if c == 1 else f"{c}*{tpow}")
        return "+".join(terms) if terms else "0"

    def __repr__(self):
        return f"ResidueElement({self})"
