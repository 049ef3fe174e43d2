"""Exact finite-precision arithmetic in finite extensions of Q_p.

An element is stored as pi^shift * u where u is a unit (or the element is
indistinguishable from zero at its precision).  The unit is a flat tuple
of e*f integers: entry i*f + j is the coordinate of y^j * pi^i, with the
coordinate of pi^i reduced modulo p^ceil((rel - i)/e) for relative
precision rel = prec - shift.  Absolute precision never exceeds the
field's working precision N; equality means congruence modulo
pi^min(prec_a, prec_b).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (
    FieldMismatch,
    HenselConditionFailed,
    NotIntegral,
    NotInvertibleAtPrecision,
    PrecisionExhausted,
    PrecisionTooLowToDecide,
)
from .fields import FieldDescriptor
from .numutil import vp
from .residue import ResidueElement


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _canon_mods(field, rel):
    """Per-pi-row coefficient moduli p^ceil((rel - i)/e) (1 when exhausted)."""
    p, e = field.p, field.e
    return [p ** max(_ceil_div(rel - i, e), 0) for i in range(e)]


def _work_pm(field, rel) -> int:
    return field.p ** max(_ceil_div(rel, field.e), 1)


# -- flat coordinate arithmetic ------------------------------------------------


def _flat_zero(field):
    return (0,) * (field.e * field.f)


def _flat_add(a, b, pm):
    return tuple((x + y) % pm for x, y in zip(a, b))


def _flat_sub(a, b, pm):
    return tuple((x - y) % pm for x, y in zip(a, b))


def _flat_neg(a, pm):
    return tuple((-x) % pm for x in a)


def _urow_mul(field, a, b, pm):
    """Product of two unramified-layer rows (length-f int sequences)."""
    f = field.f
    if f == 1:
        return (a[0] * b[0] % pm,)
    conv = [0] * (2 * f - 1)
    for i in range(f):
        ai = a[i]
        if ai:
            for j in range(f):
                conv[i + j] += ai * b[j]
    ured = field._ured
    for k in range(2 * f - 2, f - 1, -1):
        ck = conv[k]
        if ck:
            for j in range(f):
                if ured[j]:
                    conv[k - f + j] += ck * ured[j]
    return tuple(c % pm for c in conv[:f])


def _flat_mul(field, a, b, pm):
    e, f = field.e, field.f
    if e == 1:
        return _urow_mul(field, a, b, pm)
    rows = [[0] * f for _ in range(2 * e - 1)]
    for i1 in range(e):
        r1 = a[i1 * f : (i1 + 1) * f]
        if not any(r1):
            continue
        for i2 in range(e):
            r2 = b[i2 * f : (i2 + 1) * f]
            if not any(r2):
                continue
            prod = _urow_mul(field, r1, r2, pm)
            tgt = rows[i1 + i2]
            for j in range(f):
                tgt[j] = (tgt[j] + prod[j]) % pm
    ered = field._ered
    for k in range(2 * e - 2, e - 1, -1):
        rk = rows[k]
        if not any(rk):
            continue
        for i in range(e):
            if any(ered[i]):
                prod = _urow_mul(field, rk, ered[i], pm)
                tgt = rows[k - e + i]
                for j in range(f):
                    tgt[j] = (tgt[j] + prod[j]) % pm
    out = []
    for i in range(e):
        out.extend(rows[i])
    return tuple(c % pm for c in out)


def _pi_mul_once(field, a, pm):
    """Multiply a flat element by the uniformizer."""
    e, f, p = field.e, field.f, field.p
    if e == 1:
        return tuple(x * p % pm for x in a)
    rows = [list(a[i * f : (i + 1) * f]) for i in range(e)]
    top = rows[e - 1]
    out = [[0] * f for _ in range(e)]
    for i in range(1, e):
        out[i] = rows[i - 1]
    if any(top):
        for i in range(e):
            if any(field._ered[i]):
                prod = _urow_mul(field, top, field._ered[i], pm)
                for j in range(f):
                    out[i][j] = (out[i][j] + prod[j]) % pm
    flat = []
    for row in out:
        flat.extend(x % pm for x in row)
    return tuple(flat)


def _pi_shift(field, a, k, pm, rel):
    """a * pi^k, returning the zero tuple once the shift exceeds rel."""
    if k >= rel:
        return _flat_zero(field)
    if field.e == 1:
        pk = field.p**k
        return tuple(x * pk % pm for x in a)
    for _ in range(k):
        a = _pi_mul_once(field, a, pm)
    return a


def _canon(field, a, rel):
    mods = _canon_mods(field, rel)
    f = field.f
    return tuple(a[i * f + j] % mods[i] for i in range(field.e) for j in range(f))


def _residue_coeffs(field, a):
    p = field.p
    return tuple(x % p for x in a[: field.f])


def _urow_inv(field, a, pm):
    """Inverse of an unramified-layer unit row, by Newton from the residue."""
    rf = field.residue_field
    z = rf.inv_t(tuple(x % field.p for x in a))
    # doubles the p-adic accuracy each step
    steps = max(pm.bit_length().bit_length() + 1, 2)
    for _ in range(steps):
        az = _urow_mul(field, a, z, pm)
        two_minus = tuple(((2 if j == 0 else 0) - az[j]) % pm for j in range(field.f))
        z = _urow_mul(field, z, two_minus, pm)
    return z


def _flat_inv(field, a, pm, rel):
    """Inverse of a flat unit, by Newton iteration over the full tower."""
    rf = field.residue_field
    r = _residue_coeffs(field, a)
    z = list(rf.inv_t(r)) + [0] * (field.e * field.f - field.f)
    z = tuple(z)
    steps = max(rel.bit_length() + 1, 2)
    one = _one_flat(field)
    for _ in range(steps):
        az = _flat_mul(field, a, z, pm)
        two_minus = tuple((o + o - x) % pm for o, x in zip(one, az))
        z = _flat_mul(field, z, two_minus, pm)
    return z


def _one_flat(field):
    return (1,) + (0,) * (field.e * field.f - 1)


def _div_pi(field, a, pm):
    """Exact division by the uniformizer; requires residue(a) = 0."""
    e, f, p = field.e, field.f, field.p
    if e == 1:
        return tuple(x // p for x in a)
    rows = [list(a[i * f : (i + 1) * f]) for i in range(e)]
    eis0 = field.eisenstein_poly[0]
    e0p = tuple(x // p for x in eis0)  # unit of the unramified ring
    w = tuple(x // p for x in rows[0])
    inv_e0p = _urow_inv(field, e0p, pm)
    y_top = tuple((-x) % pm for x in _urow_mul(field, w, inv_e0p, pm))
    out = [None] * e
    out[e - 1] = y_top
    eis = field.eisenstein_poly
    for i in range(1, e):
        corr = _urow_mul(field, y_top, eis[i], pm)
        out[i - 1] = tuple((rows[i][j] + corr[j]) % pm for j in range(f))
    flat = []
    for row in out:
        flat.extend(row)
    return tuple(flat)


# -- element class -------------------------------------------------------------


class ValuationAtLeast:
    """Marker returned for elements indistinguishable from zero: v >= bound."""

    __slots__ = ("bound",)

    def __init__(self, bound: int):
        self.bound = bound

    def __eq__(self, other):
        return isinstance(other, ValuationAtLeast) and self.bound == other.bound

    def __hash__(self):
        return hash(("ValuationAtLeast", self.bound))

    def __ge__(self, other: int) -> bool:
        # certainty semantics: True only when v >= other is guaranteed
        return self.bound >= other

    def __repr__(self):
        return f">= {self.bound}"


class PadicElement:
    """An element of F, immutable after construction."""

    __slots__ = ("field", "shift", "unit", "prec")

    def __init__(self, field, shift, unit, prec):
        self.field = field
        self.shift = shift
        self.unit = unit
        self.prec = prec

    # -- construction ---------------------------------------------------------

    @classmethod
    def zero(cls, field, prec=None):
        prec = field.N if prec is None else min(prec, field.N)
        return cls(field, prec, None, prec)

    @classmethod
    def _make(cls, field, shift, flat, prec):
        """Normalize a raw coordinate tuple into canonical unit form."""
        rel = prec - shift
        if rel <= 0:
            return cls.zero(field, min(prec, field.N))
        pm = _work_pm(field, rel)
        flat = _canon(field, flat, rel)
        while rel > 0 and not any(_residue_coeffs(field, flat)):
            flat = _div_pi(field, flat, pm)
            shift += 1
            rel -= 1
            flat = _canon(field, flat, rel) if rel > 0 else flat
        if rel == 0:
            return cls.zero(field, min(prec, field.N))
        if prec > field.N:
            prec = field.N
            rel = prec - shift
            if rel <= 0:
                return cls.zero(field, field.N)
            flat = _canon(field, flat, rel)
        return cls(field, shift, flat, prec)

    @classmethod
    def from_int(cls, field, n, prec=None):
        return cls.from_rational(field, Fraction(n), prec)

    @classmethod
    def from_rational(cls, field, q, prec=None):
        q = Fraction(q)
        prec = field.N if prec is None else min(prec, field.N)
        if q == 0:
            return cls.zero(field, prec)
        p, e = field.p, field.e
        vnum = vp(q.numerator, p)
        vden = vp(q.denominator, p)
        shift = e * (vnum - vden)
        rel = prec - shift
        if rel <= 0:
            return cls.zero(field, prec)
        pm = _work_pm(field, rel)
        unum = abs(q.numerator) // p**vnum * (1 if q.numerator > 0 else -1)
        uden = q.denominator // p**vden
        u = unum * pow(uden, -1, pm) % pm
        flat = (u,) + (0,) * (field.e * field.f - 1)
        return cls._make(field, shift, flat, prec)

    # -- basic queries ----------------------------------------------------------

    @property
    def is_zero_at_prec(self) -> bool:
        return self.unit is None

    @property
    def rel_prec(self) -> int:
        return 0 if self.unit is None else self.prec - self.shift

    def valuation(self):
        """v_F, or a ValuationAtLeast marker when the element is 0 mod pi^prec."""
        if self.unit is None:
            return ValuationAtLeast(self.prec)
        return self.shift

    def residue(self) -> ResidueElement:
        if self.unit is None:
            if self.prec < 1:
                raise PrecisionExhausted("residue unknown below precision pi^1")
            return self.field.residue_field.zero()
        if self.shift < 0:
            raise NotIntegral(f"valuation {self.shift} < 0")
        if self.shift > 0:
            return self.field.residue_field.zero()
        return self.field.residue_field.element(_residue_coeffs(self.field, self.unit))

    @property
    def digits(self) -> tuple[ResidueElement, ...]:
        """pi-adic digits of the unit part (length = relative precision)."""
        if self.unit is None:
            return ()
        field = self.field
        rel = self.rel_prec
        rf = field.residue_field
        if field.e == 1:
            p = field.p
            coords = list(self.unit)
            out = []
            for _ in range(rel):
                out.append(rf.element(tuple(x % p for x in coords)))
                coords = [x // p for x in coords]
            return tuple(out)
        pm = field.p ** (_ceil_div(rel, field.e) + 1)
        flat = tuple(x % pm for x in self.unit)
        out = []
        for _ in range(rel):
            d = _residue_coeffs(field, flat)
            out.append(rf.element(d))
            lift = tuple(d) + (0,) * (field.e * field.f - field.f)
            flat = _flat_sub(flat, lift, pm)
            flat = _div_pi(field, flat, pm)
        return tuple(out)

    def at_precision(self, prec: int) -> PadicElement:
        if prec > self.prec:
            raise PrecisionExhausted(
                f"cannot raise precision from {self.prec} to {prec}"
            )
        if prec == self.prec:
            return self
        if self.unit is None or self.shift >= prec:
            return PadicElement.zero(self.field, prec)
        rel = prec - self.shift
        return PadicElement(self.field, self.shift, _canon(self.field, self.unit, rel), prec)

    def _key(self):
        """Total order key on canonical data; used for deterministic choices."""
        if self.unit is None:
            return (1, self.prec, ())
        return (0, self.shift, self.unit)

    def flat_at_level(self, M: int) -> tuple[int, ...]:
        """Canonical coordinates of this element in O_F/pi^M."""
        if self.unit is not None and self.shift < 0:
            raise NotIntegral("cannot reduce a non-integral element")
        if self.prec < M:
            raise PrecisionExhausted(f"element known mod pi^{self.prec} < pi^{M}")
        field = self.field
        if self.unit is None or self.shift >= M:
            return _flat_zero(field)
        pm = _work_pm(field, M)
        flat = _pi_shift(field, self.unit, self.shift, pm, M)
        return _canon(field, flat, M)

    def packed(self, M: int) -> int:
        """Index of this element in O_F/pi^M (mixed-radix over coordinates)."""
        field = self.field
        flat = self.flat_at_level(M)
        mods = _canon_mods(field, M)
        f = field.f
        idx = 0
        stride = 1
        for i in range(field.e):
            for j in range(f):
                idx += flat[i * f + j] * stride
                stride *= mods[i]
        return idx

    # -- arithmetic -------------------------------------------------------------

    def _check_field(self, other):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")

    def _coerce(self, other):
        if isinstance(other, PadicElement):
            self._check_field(other)
            return other
        if isinstance(other, (int, Fraction)):
            return PadicElement.from_rational(self.field, other)
        return None

    def __add__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        a = self
        prec = min(a.prec, b.prec)
        if a.unit is None and b.unit is None:
            return PadicElement.zero(a.field, prec)
        if a.unit is None:
            return b.at_precision(min(prec, b.prec))
        if b.unit is None:
            return a.at_precision(min(prec, a.prec))
        s = min(a.shift, b.shift)
        rel = prec - s
        if rel <= 0:
            return PadicElement.zero(a.field, prec)
        pm = _work_pm(a.field, rel)
        fa = _pi_shift(a.field, a.unit, a.shift - s, pm, rel)
        fb = _pi_shift(a.field, b.unit, b.shift - s, pm, rel)
        return PadicElement._make(a.field, s, _flat_add(fa, fb, pm), prec)

    __radd__ = __add__

    def __neg__(self):
        if self.unit is None:
            return self
        pm = _work_pm(self.field, self.rel_prec)
        return PadicElement(
            self.field,
            self.shift,
            _canon(self.field, _flat_neg(self.unit, pm), self.rel_prec),
            self.prec,
        )

    def __sub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return self + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        a = self
        field = a.field
        if a.unit is None or b.unit is None:
            va = a.prec if a.unit is None else a.shift
            vb = b.prec if b.unit is None else b.shift
            return PadicElement.zero(field, min(va + vb, field.N))
        shift = a.shift + b.shift
        rel = min(a.rel_prec, b.rel_prec, field.N - shift)
        if rel <= 0:
            return PadicElement.zero(field, field.N)
        pm = _work_pm(field, rel)
        flat = _flat_mul(field, a.unit, b.unit, pm)
        return PadicElement(field, shift, _canon(field, flat, rel), shift + rel)

    __rmul__ = __mul__

    def inv(self) -> PadicElement:
        if self.unit is None:
            raise NotInvertibleAtPrecision(
                f"element is 0 mod pi^{self.prec}; valuation unknown"
            )
        field = self.field
        rel = self.rel_prec
        pm = _work_pm(field, rel)
        flat = _flat_inv(field, self.unit, pm, rel)
        return PadicElement(field, -self.shift, _canon(field, flat, rel), -self.shift + rel)

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return self * b.inv()

    def __rtruediv__(self, other):
        b = self._coerce(other)
        return b * self.inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        out = PadicElement.from_int(self.field, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return (self - b).unit is None

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    __hash__ = None  # equality is precision-dependent

    # -- rendering --------------------------------------------------------------

    def __str__(self):
        if self.unit is None:
            return f"0 (mod pi^{self.prec})"
        field = self.field
        terms = []
        for idx, d in enumerate(self.digits):
            if not d:
                continue
            k = self.shift + idx
            if field.f == 1:
                ds = str(d.coeffs[0])
            else:
                ds = f"[{d}]"
            if k == 0:
                terms.append(ds)
            elif k == 1:
                terms.append(f"{ds}*pi")
            else:
                terms.append(f"{ds}*pi^{k}")
        body = " + ".join(terms) if terms else "0"
        return f"{body} (mod pi^{self.prec})"

    def __repr__(self):
        return f"PadicElement({self})"


# -- helpers bound to a field ----------------------------------------------------


def zero(field, prec=None):
    return PadicElement.zero(field, prec)


def one(field):
    return PadicElement.from_int(field, 1)


def uniformizer(field) -> PadicElement:
    if field.e == 1:
        return PadicElement.from_int(field, field.p)
    return PadicElement(field, 1, _one_flat(field), field.N)


def lift_residue(field, r: ResidueElement) -> PadicElement:
    """The coordinate lift of a residue-field element, at full precision."""
    coeffs = r.coeffs if isinstance(r, ResidueElement) else tuple(r)
    flat = tuple(coeffs) + (0,) * (field.e * field.f - field.f)
    return PadicElement._make(field, 0, flat, field.N)


def poly_eval(coeffs, x: PadicElement) -> PadicElement:
    """Horner evaluation; coeffs[i] multiplies x^i."""
    field = x.field
    acc = PadicElement.zero(field)
    for c in reversed(list(coeffs)):
        if not isinstance(c, PadicElement):
            c = PadicElement.from_rational(field, c)
        acc = acc * x + c
    return acc


# -- Hensel lifting ----------------------------------------------------------------


def _val_lower_bound(x: PadicElement) -> int:
    return x.prec if x.unit is None else x.shift


def _relift_full(x: PadicElement) -> PadicElement:
    """Re-declare x at full working precision via its canonical representative.

    Sound inside a self-correcting Newton iteration: the representative
    differs from x by a quantity beyond x's tracked precision.
    """
    field = x.field
    if x.unit is None:
        return PadicElement.zero(field)
    return PadicElement._make(field, x.shift, x.unit, field.N)


def newton_root(g, gp, x0: PadicElement, target_prec: int):
    """Root of g near x0 by Newton iteration, certified via the Hensel condition.

    g and gp are callables evaluating the function and its derivative.
    Requires v(g(x0)) > 2*v(gp(x0)); returns the unique nearby root to
    absolute precision target_prec.
    """
    field = x0.field
    if target_prec > field.N:
        raise PrecisionExhausted(f"target {target_prec} exceeds field precision {field.N}")
    gx = g(x0)
    gpx = gp(x0)
    if gpx.unit is None:
        raise HenselConditionFailed("derivative indistinguishable from zero at precision")
    t = gpx.shift
    v0 = _val_lower_bound(gx)
    if not v0 > 2 * t:
        raise HenselConditionFailed(f"v(g(x0)) = {v0} is not > 2*v(g'(x0)) = {2 * t}")
    if target_prec + t > field.N:
        raise PrecisionExhausted(
            f"certifying mod pi^{target_prec} needs v(g(x)) >= {target_prec + t} > N = {field.N}"
        )
    x = _relift_full(x0)
    for _ in range(64):
        gx = g(x)
        if _val_lower_bound(gx) >= target_prec + t:
            return x.at_precision(target_prec)
        x = _relift_full(x - gx * gp(x).inv())
    raise PrecisionExhausted("Newton iteration failed to converge")


def hensel_lift(coeffs, x0: PadicElement, target_prec: int) -> PadicElement:
    """Lift x0 to a root of the polynomial with the given coefficient list."""
    field = x0.field
    cs = [
        c if isinstance(c, PadicElement) else PadicElement.from_rational(field, c)
        for c in coeffs
    ]
    dcs = [cs[i] * i for i in range(1, len(cs))]
    return newton_root(
        lambda x: poly_eval(cs, x), lambda x: poly_eval(dcs, x), x0, target_prec
    )


# -- square roots -----------------------------------------------------------------


def _unit_part(x: PadicElement) -> PadicElement:
    return PadicElement(x.field, 0, x.unit, x.rel_prec)


def _enumerate_flats(field, M):
    """All canonical coordinate tuples of O_F/pi^M, in packed-index order."""
    mods = _canon_mods(field, M)
    f = field.f
    radices = [mods[i] for i in range(field.e) for _ in range(f)]
    total = 1
    for r in radices:
        total *= r
    for idx in range(total):
        k = idx
        flat = []
        for r in radices:
            k, d = divmod(k, r)
            flat.append(d)
        yield tuple(flat)


def sqrt(a: PadicElement) -> PadicElement | None:
    """A square root of a, or None when a is certified not to be a square.

    For p = 2 the decision reduces squareness of the unit part to a finite
    congruence mod pi^(2e+1); deciding it needs that much relative
    precision, otherwise PrecisionTooLowToDecide is raised.
    """
    field = a.field
    if a.unit is None:
        return PadicElement.zero(field, max(_ceil_div(a.prec, 2), 1))
    if a.shift % 2 != 0:
        return None
    u = _unit_part(a)
    rel = u.prec
    rf = field.residue_field
    if field.p != 2:
        r = u.residue()
        if r ** ((rf.q - 1) // 2) != rf.one():
            return None
        s = next(x for x in rf.elements() if x * x == r)
        root = newton_root(lambda x: x * x - u, lambda x: 2 * x, lift_residue(field, s), rel)
    else:
        need = 2 * field.e + 1
        if rel < need:
            raise PrecisionTooLowToDecide(
                f"deciding squareness mod 2 needs {need} digits, have {rel}"
            )
        pm = _work_pm(field, need)
        target = _canon(field, u.unit, need)
        start = None
        for cand in _enumerate_flats(field, need):
            sq = _canon(field, _flat_mul(field, cand, cand, pm), need)
            if sq == target:
                start = cand
                break
        if start is None:
            return None
        x0 = PadicElement._make(field, 0, start, field.N)
        target_prec = max(rel - field.e, 1)
        root = newton_root(lambda x: x * x - u, lambda x: 2 * x, x0, target_prec)
    # deterministic choice between the two roots
    root = min(root, -root, key=lambda r: r._key())
    half_shift = a.shift // 2
    if half_shift == 0:
        return root
    pi = uniformizer(field)
    return root * pi**half_shift if half_shift > 0 else root * pi.inv() ** (-half_shift)
