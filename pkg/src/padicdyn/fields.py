"""Field descriptors for finite extensions of Q_p.

A field is built as a two-layer tower: an unramified layer of degree f
given by a monic polynomial irreducible mod p, followed by a totally
ramified layer of degree e given by an Eisenstein polynomial over the
unramified ring.  For e = 1 the uniformizer is p itself.

Elements of the ring of integers are coordinate matrices: the coefficient
of y^j * pi^i (j < f basis index of the unramified layer, i < e power of
the uniformizer) is an integer, reduced modulo a power of p appropriate to
the tracked precision.
"""

from __future__ import annotations

import json

from .errors import NotEisenstein, NotIrreducible, NotPrime
from .numutil import is_prime, vp
from .residue import ResidueField, is_irreducible_modp

DEFAULT_PRECISION = 64


def _coerce_unram_coeff(c, f) -> tuple[int, ...]:
    """Accept an int or an f-vector of ints as an unramified-ring element."""
    if isinstance(c, int):
        return (c,) + (0,) * (f - 1)
    c = tuple(int(x) for x in c)
    if len(c) != f:
        raise ValueError(f"unramified coefficient needs {f} coordinates, got {len(c)}")
    return c


def _unram_vp(c: tuple[int, ...], p: int):
    """p-adic valuation of an unramified-ring element with exact integer coords."""
    vals = [vp(x, p) for x in c if x != 0]
    return min(vals) if vals else None  # None means the exact zero


class FieldDescriptor:
    """A finite extension F/Q_p with working precision N in pi-adic digits."""

    __slots__ = (
        "p",
        "f",
        "e",
        "unram_poly",
        "eisenstein_poly",
        "N",
        "residue_field",
        "_ured",
        "_ered",
    )

    def __init__(self, p, f, e, unram_poly, eisenstein_poly, N):
        self.p = p
        self.f = f
        self.e = e
        self.unram_poly = tuple(int(c) for c in unram_poly)
        self.eisenstein_poly = eisenstein_poly
        self.N = N
        self.residue_field = ResidueField(p, self.unram_poly)
        # y^f = sum_j ured[j] y^j, exact integers
        self._ured = tuple(-c for c in self.unram_poly[:-1])
        # pi^e = sum_i ered[i] pi^i with unramified-ring coefficients
        if e > 1:
            self._ered = tuple(
                tuple(-x for x in row) for row in eisenstein_poly[:-1]
            )
        else:
            self._ered = None

    # structural identity: equal parameters interoperate
    def _key(self):
        return (self.p, self.f, self.e, self.unram_poly, self.eisenstein_poly, self.N)

    def __eq__(self, other):
        return isinstance(other, FieldDescriptor) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.e == 1:
            ram = ""
        else:
            ram = f", e={self.e}"
        return f"FieldDescriptor(p={self.p}, f={self.f}{ram}, N={self.N})"

    @property
    def residue_size(self) -> int:
        return self.p**self.f

    def same_field(self, other: "FieldDescriptor") -> bool:
        """True when the two descriptors define the same field model (any N)."""
        return (
            self.p == other.p
            and self.f == other.f
            and self.e == other.e
            and self.unram_poly == other.unram_poly
            and self.eisenstein_poly == other.eisenstein_poly
        )

    def to_json(self) -> str:
        return json.dumps(
            {
                "p": self.p,
                "f": self.f,
                "e": self.e,
                "unram_poly": list(self.unram_poly),
                "eisenstein_poly": None
                if self.eisenstein_poly is None
                else [list(row) for row in self.eisenstein_poly],
                "N": self.N,
            },
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "FieldDescriptor":
        d = json.loads(text)
        eis = d["eisenstein_poly"]
        if eis is not None:
            eis = tuple(tuple(int(x) for x in row) for row in eis)
        fld = cls(d["p"], d["f"], d["e"], d["unram_poly"], eis, d["N"])
        _validate(fld)
        return fld


def default_unram_poly(p: int, f: int) -> tuple[int, ...]:
    """First monic irreducible of degree f over F_p.

    Monic candidates are ordered by reading (c_{f-1}, ..., c_1, c_0) as a
    base-p number; coefficients are lifted to {0, ..., p-1}.
    """
    for k in range(p**f):
        coeffs = []
        kk = k
        for _ in range(f):
            kk, r = divmod(kk, p)
            coeffs.append(r)  # c_0 first
        poly = tuple(coeffs) + (1,)
        if is_irreducible_modp(list(poly), p):
            return poly
    raise RuntimeError("no irreducible polynomial found")  # unreachable


def _validate(field: FieldDescriptor) -> None:
    p, f, e = field.p, field.f, field.e
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if f < 1 or e < 1 or field.N < 1:
        raise ValueError("f, e, N must all be >= 1")
    u = field.unram_poly
    if len(u) != f + 1 or u[-1] % p != 1:
        raise NotIrreducible("unramified polynomial must be monic of degree f")
    if not is_irreducible_modp([c % p for c in u], p):
        raise NotIrreducible(f"{list(u)} is reducible mod {p}")
    if e == 1:
        if field.eisenstein_poly is not None:
            raise ValueError("eisenstein_poly must be omitted when e = 1")
        return
    eis = field.eisenstein_poly
    if eis is None or len(eis) != e + 1:
        raise NotEisenstein("eisenstein polynomial must have degree e")
    lead = eis[-1]
    if lead != (1,) + (0,) * (f - 1):
        raise NotEisenstein("eisenstein polynomial must be monic")
    for i, row in enumerate(eis[:-1]):
        v = _unram_vp(row, p)
        if v is None:
            if i == 0:
                raise NotEisenstein("constant term must have valuation exactly 1")
            continue
        if v < 1:
            raise NotEisenstein(f"coefficient of X^{i} is a unit")
        if i == 0 and v != 1:
            raise NotEisenstein("constant term must have valuation exactly 1")


def make_field(p, f, e=1, eisenstein_poly=None, N=DEFAULT_PRECISION) -> FieldDescriptor:
    """Construct F/Q_p with residue degree f and ramification index e.

    The unramified layer uses the deterministic default polynomial; for
    e > 1 the caller supplies the Eisenstein layer (coefficients are ints
    or f-vectors of ints over the unramified ring).
    """
    if e > 1:
        if eisenstein_poly is None:
            raise ValueError("eisenstein_poly is required when e > 1")
        eis = tuple(_coerce_unram_coeff(c, f) for c in eisenstein_poly)
    else:
        if eisenstein_poly is not None:
            raise ValueError("eisenstein_poly must be omitted when e = 1")
        eis = None
    field = FieldDescriptor(p, f, e, default_unram_poly(p, f), eis, N)
    _validate(field)
    return field
