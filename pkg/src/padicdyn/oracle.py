"""Independent brute-force verification over the finite rings O_F/pi^M.

A FiniteRingMap is the full successor table of the induced polynomial map
on O_F/pi^M (size p^{fM}), built by exhaustive evaluation through the
selected kernel backend.  Its census is ground truth for periodic-point
counts and exact periods; the DOT emitter draws the functional graph with
nested clusters keyed by pi-adic digit prefixes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import kernels
from .elements import (
    PadicElement,
    _canon_mods,
    _div_pi,
    _flat_sub,
    _residue_coeffs,
    _work_pm,
)
from .errors import BudgetExceeded, NotIntegral, PrecisionExhausted
from .fields import FieldDescriptor

DEFAULT_BUDGET = 2**24


@dataclass(frozen=True)
class RingSpec:
    """Packing data for O_F/pi^M: mixed-radix moduli and reduction rows."""

    p: int
    f: int
    e: int
    M: int
    mods: tuple[int, ...]
    pmQ: int
    ured: tuple[int, ...]
    ered: tuple[int, ...]
    size: int


def ring_spec(field: FieldDescriptor, M: int) -> RingSpec:
    mods = tuple(_canon_mods(field, M))
    pmQ = _work_pm(field, M)
    ured = tuple(c % pmQ for c in field._ured)
    if field.e > 1:
        ered = tuple(c % pmQ for row in field._ered for c in row)
    else:
        ered = (0,) * field.f
    size = 1
    for m in mods:
        size *= m**field.f
    return RingSpec(field.p, field.f, field.e, M, mods, pmQ, ured, ered, size)


class FiniteRingMap:
    """Successor table of a polynomial map on O_F/pi^M."""

    __slots__ = ("field", "level", "spec", "table")

    def __init__(self, field, level, spec, table):
        self.field = field
        self.level = level
        self.spec = spec
        self.table = table

    @property
    def size(self) -> int:
        return self.spec.size

    def __call__(self, idx: int) -> int:
        return self.table[idx]

    def __repr__(self):
        return f"FiniteRingMap(level={self.level}, size={self.size})"


def _coefficient_images(phi, F: FieldDescriptor) -> list[PadicElement]:
    """Integral coefficient images; accepts a DynPoly or a raw coefficient list."""
    from .dynamics import DynPoly

    if isinstance(phi, DynPoly):
        imgs = phi._images_lenient(F)
    else:
        imgs = [
            c if isinstance(c, PadicElement) else PadicElement.from_rational(F, Fraction(c))
            for c in phi
        ]
    for i, img in enumerate(imgs):
        if img.unit is not None and img.shift < 0:
            raise NotIntegral(f"coefficient of X^{i} has valuation {img.shift}")
    return imgs


def build_map(phi, F: FieldDescriptor, M: int, budget: int = DEFAULT_BUDGET, impl=None) -> FiniteRingMap:
    """Exhaustive evaluation table of phi on O_F/pi^M."""
    if M < 1:
        raise ValueError("M must be >= 1")
    if M > F.N:
        raise PrecisionExhausted(f"level {M} exceeds field precision {F.N}")
    spec = ring_spec(F, M)
    if spec.size > budget:
        raise BudgetExceeded(f"table of size {spec.size} exceeds budget {budget}")
    imgs = _coefficient_images(phi, F)
    poly_flat = [c for img in imgs for c in img.flat_at_level(M)]
    table = kernels.eval_table(spec, poly_flat, impl=impl)
    return FiniteRingMap(F, M, spec, table)


@dataclass
class RingCensus:
    """Periodic elements with exact periods, plus the rho-shape of every node."""

    periodic: list[int]
    periods: dict[int, int]
    tails: list[int]
    cycle_lengths: list[int]

    @property
    def count(self) -> int:
        return len(self.periodic)


def periodic_census(fmap: FiniteRingMap, impl=None) -> RingCensus:
    tails, cyclens = kernels.census(fmap.table, impl=impl)
    periodic = [i for i in range(fmap.size) if tails[i] == 0]
    periods = {i: cyclens[i] for i in periodic}
    return RingCensus(
        periodic=periodic,
        periods=periods,
        tails=list(tails),
        cycle_lengths=list(cyclens),
    )


def oracle_count(phi, F: FieldDescriptor, M_max: int, budget: int = DEFAULT_BUDGET) -> list[int]:
    """Periodic-element counts at levels M = 1..M_max."""
    return [
        periodic_census(build_map(phi, F, M, budget=budget)).count
        for M in range(1, M_max + 1)
    ]


# -- digit utilities -----------------------------------------------------------------


def _unpack_flat(spec: RingSpec, idx: int) -> list[int]:
    flat = []
    for i in range(spec.e):
        for _ in range(spec.f):
            idx, d = divmod(idx, spec.mods[i])
            flat.append(d)
    return flat


def element_digit_indices(field: FieldDescriptor, spec: RingSpec, idx: int) -> tuple[int, ...]:
    """The M pi-adic digit indices (packed residues) of element #idx."""
    pm = field.p ** (-(-spec.M // field.e) + 1)
    flat = tuple(x % pm for x in _unpack_flat(spec, idx))
    rf = field.residue_field
    out = []
    for _ in range(spec.M):
        d = _residue_coeffs(field, flat)
        out.append(rf.pack(d))
        lift = tuple(d) + (0,) * (field.e * field.f - field.f)
        flat = _div_pi(field, _flat_sub(flat, lift, pm), pm)
    return tuple(out)


def index_project(field: FieldDescriptor, spec_from: RingSpec, idx: int, M_to: int) -> int:
    """Image of element #idx under O_F/pi^M -> O_F/pi^M_to."""
    spec_to = ring_spec(field, M_to)
    flat = _unpack_flat(spec_from, idx)
    out = 0
    stride = 1
    k = 0
    for i in range(field.e):
        for _ in range(field.f):
            out += (flat[k] % spec_to.mods[i]) * stride
            stride *= spec_to.mods[i]
            k += 1
    return out


# -- DOT rendering -------------------------------------------------------------------


def to_dot(fmap: FiniteRingMap, graph_name: str = "functional_graph") -> str:
    """DOT text with clusters nested by digit prefixes, imitating ball nesting."""
    field = fmap.field
    spec = fmap.spec
    digits = {i: element_digit_indices(field, spec, i) for i in range(fmap.size)}
    names = {i: "n" + "_".join(str(d) for d in digits[i]) for i in range(fmap.size)}
    lines = [f"digraph {graph_name} {{", "  compound=true;"]

    def emit(prefix: tuple[int, ...], members: list[int], indent: str):
        if len(prefix) == spec.M - 1 or spec.M == 1:
            for i in sorted(members, key=lambda i: digits[i]):
                label = ".".join(str(d) for d in digits[i])
                lines.append(f'{indent}{names[i]} [label="{label}"];')
            return
        groups: dict[int, list[int]] = {}
        for i in members:
            groups.setdefault(digits[i][len(prefix)], []).append(i)
        for d in sorted(groups):
            sub = prefix + (d,)
            cname = "cluster_" + "_".join(str(x) for x in sub)
            lines.append(f"{indent}subgraph {cname} {{")
            lines.append(f'{indent}  label="digits {".".join(str(x) for x in sub)}";')
            emit(sub, groups[d], indent + "  ")
            lines.append(f"{indent}}}")

    if spec.M == 1:
        emit((), list(range(fmap.size)), "  ")
    else:
        groups: dict[int, list[int]] = {}
        for i in range(fmap.size):
            groups.setdefault(digits[i][0], []).append(i)
        for d in sorted(groups):
            cname = f"cluster_{d}"
            lines.append(f"  subgraph {cname} {{")
            lines.append(f'    label="digits {d}";')
            emit((d,), groups[d], "    ")
            lines.append("  }")
    for i in sorted(range(fmap.size), key=lambda i: digits[i]):
        lines.append(f"  {names[i]} -> {names[fmap.table[i]]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_dot_structure(text: str):
    """(nodes, edges, clusters) parsed back from emitted DOT, for structural diffs."""
    import re

    nodes = set(re.findall(r"^\s*(n[\d_]+) \[", text, flags=re.M))
    edges = set(re.findall(r"^\s*(n[\d_]+) -> (n[\d_]+);", text, flags=re.M))
    clusters = {}
    stack = []
    for line in text.splitlines():
        m = re.match(r"\s*subgraph (cluster[\w]*) \{", line)
        if m:
            stack.append(m.group(1))
            clusters[m.group(1)] = set()
            continue
        if re.match(r"\s*\}\s*$", line) and stack:
            stack.pop()
            continue
        m = re.match(r"\s*(n[\d_]+) \[", line)
        if m:
            for c in stack:
                clusters[c].add(m.group(1))
    return nodes, edges, clusters
