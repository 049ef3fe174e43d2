"""Polynomial dynamics over the integers of a p-adic field.

The central algorithm finds all periodic points of a polynomial whose
degree is divisible by the residue characteristic and whose coefficients
of exponent coprime to p lie in the maximal ideal: every periodic point
is integral and sits alone in its residue class, so the finder reduces
mod pi, reads the cycles of the induced map on the residue field, and
Newton-lifts one root of phi^n(X) - X above each periodic residue.  The
exact period of the lifted point equals the cycle length of its residue.
"""

from __future__ import annotations

from dataclasses import dataclass, field as datafield
from fractions import Fraction

from .elements import PadicElement, lift_residue, newton_root, poly_eval, sqrt as padic_sqrt
from .errors import (
    DegreeNotDivisibleByP,
    DegreeNotPrimePower,
    HypothesisFailed,
    NotIntegral,
    PadicDynError,
    StarConditionFailed,
)
from .fields import FieldDescriptor
from .numutil import divisors, mobius, vp
from .polyring import Poly
from .quadfield import QuadElement
from .residue import ResidueElement


def _lcm(a, b):
    import math

    return a * b // math.gcd(a, b)


class DynPoly:
    """A polynomial with exact coefficients, optionally mapped into a p-adic field."""

    __slots__ = ("poly", "field", "image", "_lenient_cache")

    def __init__(self, poly: Poly | list | tuple):
        if not isinstance(poly, Poly):
            poly = Poly(poly)
        if poly.degree < 2:
            raise ValueError(f"degree must be >= 2, got {poly.degree}")
        deltas = {c.delta for c in poly.coeffs if isinstance(c, QuadElement)}
        if len(deltas) > 1:
            raise ValueError(f"coefficients mix quadratic fields: {sorted(deltas)}")
        self.poly = poly
        self.field = None
        self.image = None
        self._lenient_cache = {}

    @classmethod
    def unicritical(cls, d: int, c) -> "DynPoly":
        return cls(Poly((c,) + (0,) * (d - 1) + (1,)))

    @property
    def degree(self) -> int:
        return self.poly.degree

    def coeff(self, i: int):
        return self.poly[i]

    @property
    def quad_delta(self) -> int | None:
        for c in self.poly.coeffs:
            if isinstance(c, QuadElement):
                return c.delta
        return None

    def a0_is_rational(self) -> bool:
        c = self.poly[0]
        return not isinstance(c, QuadElement) or c.is_rational

    def _images_lenient(self, F: FieldDescriptor) -> list[PadicElement]:
        """Coefficient images over F without any integrality requirement."""
        cached = self._lenient_cache.get(F)
        if cached is not None:
            return cached
        delta = self.quad_delta
        root = None
        if delta is not None:
            root = padic_sqrt(PadicElement.from_int(F, delta))
            if root is None:
                raise ValueError(f"sqrt({delta}) does not exist in {F!r}")
        out = []
        for c in self.poly.coeffs:
            if isinstance(c, QuadElement):
                img = PadicElement.from_rational(F, c.a)
                if c.b != 0:
                    img = img + PadicElement.from_rational(F, c.b) * root
            else:
                img = PadicElement.from_rational(F, c)
            out.append(img)
        self._lenient_cache[F] = out
        return out

    def attach(self, F: FieldDescriptor) -> "DynPoly":
        """Attach the coefficient image over F; requires good reduction."""
        imgs = self._images_lenient(F)
        for i, img in enumerate(imgs):
            if img.unit is not None and img.shift < 0:
                raise NotIntegral(f"coefficient of X^{i} has valuation {img.shift}")
        lead = imgs[-1]
        if lead.unit is None or lead.shift != 0:
            raise NotIntegral("leading coefficient must be a unit")
        self.field = F
        self.image = imgs
        return self

    def _ensure_image(self, F: FieldDescriptor) -> list[PadicElement]:
        if self.image is None or self.field != F:
            self.attach(F)
        return self.image

    def __str__(self):
        return self.poly.to_str("x")

    def __repr__(self):
        return f"DynPoly({self})"


# -- reduction conditions -----------------------------------------------------------


def _coeff_val_bounds(phi: DynPoly, F: FieldDescriptor):
    """Lower bounds on v_F of each coefficient (None for the exact zero)."""
    out = []
    for img in phi._images_lenient(F):
        if img.unit is None:
            out.append(img.prec)  # only a lower bound; fine for threshold checks
        else:
            out.append(img.shift)
    return out


def check_star(phi: DynPoly, F: FieldDescriptor) -> bool:
    """Good reduction with v(a_i) > 0 whenever p does not divide i."""
    d = phi.degree
    if d % F.p != 0:
        raise DegreeNotDivisibleByP(f"p = {F.p} does not divide d = {d}")
    vals = _coeff_val_bounds(phi, F)
    if any(v < 0 for v in vals):
        return False
    lead = phi._images_lenient(F)[-1]
    if lead.unit is None or lead.shift != 0:
        return False
    for i, v in enumerate(vals[:-1]):
        if i % F.p != 0 and v < 1:
            return False
    return True


def prime_power_exponent(d: int, p: int) -> int:
    """k with d = p^k, or raise DegreeNotPrimePower."""
    k = 0
    while d % p == 0:
        d //= p
        k += 1
    if d != 1 or k == 0:
        raise DegreeNotPrimePower(f"degree is not a positive power of {p}")
    return k


def check_star_star(phi: DynPoly, F: FieldDescriptor) -> bool:
    """Monic, prime-power degree, all middle coefficients in the maximal ideal."""
    prime_power_exponent(phi.degree, F.p)
    if phi.coeff(phi.degree) != 1:
        return False
    vals = _coeff_val_bounds(phi, F)
    if vals[0] < 0:
        return False
    for i in range(1, phi.degree):
        if vals[i] < 1:
            return False
    return True


# -- iteration ------------------------------------------------------------------------


def iterate(phi: DynPoly, x: PadicElement, n: int) -> PadicElement:
    """phi^n(x); the 0-th iterate is x itself."""
    if n < 0:
        raise ValueError("n must be >= 0")
    image = phi._ensure_image(x.field)
    for _ in range(n):
        x = poly_eval(image, x)
    return x


@dataclass(frozen=True)
class StrictGrowthCertificate:
    """Witness that |phi(x)| = |a_d x^d| > |x| > 1, so x escapes to infinity."""

    v_input: int
    v_image: int
    v_lead: int
    degree: int

    @property
    def verified(self) -> bool:
        return (
            self.v_input < 0
            and self.v_image == self.degree * self.v_input + self.v_lead
            and self.v_image < self.v_input
        )


def expansion_witness(phi: DynPoly, lam: PadicElement) -> StrictGrowthCertificate | None:
    """Certificate of non-periodicity for |lam| > 1; None when |lam| <= 1."""
    F = lam.field
    if not check_star(phi, F):
        raise StarConditionFailed("expansion argument needs the reduction condition")
    if lam.unit is None or lam.shift >= 0:
        return None
    image = phi._ensure_image(F)
    img = poly_eval(image, lam)
    cert = StrictGrowthCertificate(
        v_input=lam.shift,
        v_image=img.shift,
        v_lead=image[-1].shift,
        degree=phi.degree,
    )
    if not cert.verified:
        raise PadicDynError("expansion certificate failed to verify")
    return cert


# -- the period invariant ----------------------------------------------------------------


def m_value(F: FieldDescriptor, a0, k: int) -> int:
    """Smallest m >= 1 with pi | a0*m and f | k*m; bounded by lcm(p, f)."""
    if not isinstance(a0, PadicElement):
        if isinstance(a0, QuadElement):
            root = padic_sqrt(PadicElement.from_int(F, a0.delta))
            if root is None:
                raise ValueError(f"sqrt({a0.delta}) does not exist in {F!r}")
            a0 = PadicElement.from_rational(F, a0.a) + PadicElement.from_rational(F, a0.b) * root
        else:
            a0 = PadicElement.from_rational(F, a0)
    if a0.unit is None:
        v = a0.prec  # v >= prec >= 1: the divisibility condition is free
    else:
        v = a0.shift
    if v < 0:
        raise NotIntegral(f"a0 has valuation {v} < 0")
    bound = _lcm(F.p, F.f)
    for m in range(1, bound + 1):
        if v + F.e * vp(m, F.p) >= 1 and (k * m) % F.f == 0:
            return m
    raise PadicDynError("no m found below lcm(p, f)")  # unreachable


# -- periodic points -----------------------------------------------------------------------


@dataclass
class PeriodicPoint:
    """A Hensel-certified periodic point."""

    residue: ResidueElement
    exact_period: int
    approx: PadicElement
    exact_value: object = None
    exact_verified: bool = False

    def __repr__(self):
        return f"PeriodicPoint(residue={self.residue}, period={self.exact_period})"


def _residue_cycles(fbar, rf):
    """Map packed periodic residue -> cycle length, for a self-map of F_q."""
    seen = set()
    periods = {}
    for start in rf.elements():
        key = start.packed()
        if key in seen:
            continue
        path = []
        pos = {}
        r = start
        k = r.packed()
        while k not in pos and k not in seen:
            pos[k] = len(path)
            path.append(r)
            r = fbar(r)
            k = r.packed()
        if k in pos:
            cyc = path[pos[k] :]
            for node in cyc:
                periods[node.packed()] = len(cyc)
        seen.update(pos)
    return periods


def residue_dynamics(phi: DynPoly, F: FieldDescriptor):
    """The reduced map on F_q and its periodic residues with cycle lengths."""
    image = phi._ensure_image(F)
    rf = F.residue_field
    rcoeffs = [c.residue() for c in image]

    def fbar(r):
        acc = rf.zero()
        for c in reversed(rcoeffs):
            acc = acc * r + c
        return acc

    return fbar, _residue_cycles(fbar, rf)


def periodic_points(phi: DynPoly, F: FieldDescriptor) -> list[PeriodicPoint]:
    """All periodic points of phi in F, each certified to precision N.

    Every periodic point is integral (expansion) and residues of distinct
    periodic points differ (contraction), so the points are exactly the
    Hensel lifts of phi^n(X) - X above the periodic residues, n being the
    residue cycle length; there are at most p^f of them.
    """
    if not check_star(phi, F):
        raise StarConditionFailed(f"{phi} does not satisfy the reduction condition over {F!r}")
    image = phi._ensure_image(F)
    dimage = [image[i] * i for i in range(1, len(image))]
    rf = F.residue_field
    _, cycles = residue_dynamics(phi, F)

    def orbit_value(x, n):
        for _ in range(n):
            x = poly_eval(image, x)
        return x

    def chain_derivative(x, n):
        acc = PadicElement.from_int(F, 1)
        for _ in range(n):
            acc = acc * poly_eval(dimage, x)
            x = poly_eval(image, x)
        return acc

    points = []
    for key in sorted(cycles):
        r = rf.unpack(key)
        n = cycles[key]
        root = newton_root(
            lambda x, n=n: orbit_value(x, n) - x,
            lambda x, n=n: chain_derivative(x, n) - 1,
            lift_residue(F, r),
            F.N,
        )
        if root.residue() != r:
            raise PadicDynError("lifted root left its residue class")
        for j in divisors(n)[:-1]:
            if iterate(phi, root, j) == root:
                raise PadicDynError(f"period {n} point fixed by iterate {j}")
        points.append(PeriodicPoint(residue=r, exact_period=n, approx=root))
    points.sort(key=lambda pt: (pt.residue.packed(), pt.exact_period))
    return points


def exact_period(phi: DynPoly, x: PadicElement, max_n: int | None = None) -> int | None:
    """Minimal n <= max_n with phi^n(x) = x at precision, or None."""
    F = x.field
    if max_n is None:
        max_n = 2 * _lcm(F.p, F.f)
    image = phi._ensure_image(F)
    y = x
    for n in range(1, max_n + 1):
        y = poly_eval(image, y)
        if y == x:
            return n
    return None


# -- dynatomic polynomials ------------------------------------------------------------------


@dataclass(frozen=True)
class DynatomicPoly:
    """The degree-n dynatomic factor of phi^n(X) - X."""

    n: int
    poly: Poly


def _iterate_poly(phi: DynPoly, n: int) -> Poly:
    out = Poly.x()
    for _ in range(n):
        out = phi.poly.compose(out)
    return out


def dynatomic(phi: DynPoly, n: int) -> DynatomicPoly:
    """Mobius product of the (phi^i(X) - X) over i | n, computed exactly."""
    if n < 1:
        raise ValueError("n must be >= 1")
    x = Poly.x()
    num = Poly((1,))
    den = Poly((1,))
    pw = x
    iterates = {}
    for i in range(1, n + 1):
        pw = phi.poly.compose(pw)
        iterates[i] = pw
    for i in divisors(n):
        mu = mobius(n // i)
        if mu == 1:
            num = num * (iterates[i] - x)
        elif mu == -1:
            den = den * (iterates[i] - x)
    result = num.exact_div(den)
    expected = sum(mobius(n // i) * phi.degree**i for i in divisors(n))
    if result.degree != expected:
        raise PadicDynError(
            f"dynatomic degree {result.degree} != {expected}; internal error"
        )
    return DynatomicPoly(n, result)


def mobius_identity_holds(phi: DynPoly, m: int) -> bool:
    """Check phi^m(X) - X == product of the dynatomic factors over n | m, exactly."""
    x = Poly.x()
    lhs = _iterate_poly(phi, m) - x
    rhs = Poly((1,))
    for n in divisors(m):
        rhs = rhs * dynatomic(phi, n).poly
    return lhs == rhs


# -- the exact census -----------------------------------------------------------------------


@dataclass
class PeriodCensus:
    """Exact-period counts with the invariant m and a theorem-exactness flag."""

    counts: dict[int, int]
    m: int
    theorem_exact: bool
    points: list[PeriodicPoint] = datafield(default_factory=list)


def exact_period_census(phi: DynPoly, F: FieldDescriptor) -> PeriodCensus:
    """Counts of exact-period-n points for n | m, under the monic prime-power condition."""
    if not check_star_star(phi, F):
        raise HypothesisFailed("polynomial is not monic with middle coefficients in the maximal ideal")
    k = prime_power_exponent(phi.degree, F.p)
    if k % F.f != 0 and not phi.a0_is_rational():
        raise HypothesisFailed(f"need f | k or rational constant term (f={F.f}, k={k})")
    pts = periodic_points(phi, F)
    m = m_value(F, phi._ensure_image(F)[0], k)
    counts: dict[int, int] = {}
    for pt in pts:
        counts[pt.exact_period] = counts.get(pt.exact_period, 0) + 1
    theorem_exact = False
    if k * m == F.f:
        degrees = {}
        double_root_free = True
        for n in divisors(m):
            Phi = dynatomic(phi, n)
            if Phi.poly.gcd(Phi.poly.derivative()).degree > 0:
                double_root_free = False
                break
            degrees[n] = Phi.poly.degree
        if double_root_free:
            for n, deg in degrees.items():
                if counts.get(n, 0) != deg:
                    raise PadicDynError(
                        f"census mismatch at n={n}: counted {counts.get(n, 0)}, degree {deg}"
                    )
            theorem_exact = True
    return PeriodCensus(counts=counts, m=m, theorem_exact=theorem_exact, points=pts)
