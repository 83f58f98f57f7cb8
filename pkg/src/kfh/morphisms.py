"""Maps between knot complexes and the exact homotopy / chain-map solvers.

Every map is homogeneous, so an unknown map of a given variance and shift
has at most one admissible monomial per (source, target) pair.  Deciding
whether two maps are homotopic, or describing all chain maps of a given
signature, is therefore a finite GF(2) linear system.

Internally maps are handled as *term tables*: ``table[x][(y, m)] = mask``,
where ``mask`` bit 0 marks a constant coefficient and bit ``j + 1`` marks
unknown ``j``.  Known maps use mask 1 throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from . import gf2
from .complexes import Grading, KnotComplex, forced_monomial
from .ring import ONE, Monomial, Poly

LINEAR = "linear"
SKEW = "skew"

Table = dict[str, dict[tuple[str, Monomial], int]]


class SignatureError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class ModuleMap:
    """An F2[U,V]-linear or skew-linear map; ``entries[x][y]`` is the coefficient of y in f(x)."""

    source: KnotComplex
    target: KnotComplex
    variance: str = LINEAR
    shift: Grading = (0, 0)
    entries: Mapping[str, Mapping[str, Poly]] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self) -> None:
        if self.variance not in (LINEAR, SKEW):
            raise SignatureError(f"unknown variance {self.variance!r}")
        clean: dict[str, dict[str, Poly]] = {}
        for x, row in self.entries.items():
            if not self.source.has(x):
                raise SignatureError(f"map {self.name}: unknown source generator {x!r}")
            for y, p in row.items():
                if not self.target.has(y):
                    raise SignatureError(f"map {self.name}: unknown target generator {y!r}")
                if p:
                    clean.setdefault(x, {})[y] = p
        object.__setattr__(self, "entries", clean)
        object.__setattr__(self, "shift", tuple(self.shift))

    @property
    def skew(self) -> bool:
        return self.variance == SKEW

    def image(self, x: str) -> Mapping[str, Poly]:
        return self.entries.get(x, {})

    def named(self, name: str) -> "ModuleMap":
        return ModuleMap(self.source, self.target, self.variance, self.shift, self.entries, name)

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        _same_signature(self, other)
        out = {x: dict(row) for x, row in self.entries.items()}
        for x, row in other.entries.items():
            dst = out.setdefault(x, {})
            for y, p in row.items():
                dst[y] = dst.get(y, Poly()) + p
        return ModuleMap(self.source, self.target, self.variance, self.shift, out, self.name)

    def equals(self, other: "ModuleMap") -> bool:
        _same_signature(self, other)
        return not (self + other).entries

    def is_zero(self) -> bool:
        return not self.entries

    def apply(self, vec: Mapping[str, Poly]) -> dict[str, Poly]:
        out: dict[str, Poly] = {}
        for x, p in vec.items():
            coeff = p.conjugate() if self.skew else p
            for y, q in self.image(x).items():
                out[y] = out.get(y, Poly()) + coeff * q
        return {y: p for y, p in out.items() if p}

    def homogeneity_errors(self) -> list[str]:
        errs = []
        for x, row in self.entries.items():
            gx = self.source.grading(x)
            want = _out_grading(gx, self.variance, self.shift)
            gy0 = self.target.grading
            for y, p in row.items():
                gy = gy0(y)
                for m in p.terms:
                    if (gy[0] - 2 * m.u_exp, gy[1] - 2 * m.v_exp) != want:
                        errs.append(f"{x}->{y}:{m}")
        return errs


def _out_grading(g: Grading, variance: str, shift: Grading) -> Grading:
    if variance == SKEW:
        return (g[1] + shift[0], g[0] + shift[1])
    return (g[0] + shift[0], g[1] + shift[1])


def _same_signature(f: ModuleMap, g: ModuleMap) -> None:
    if f.source is not g.source or f.target is not g.target:
        if f.source.ids != g.source.ids or f.target.ids != g.target.ids:
            raise SignatureError("maps have different source/target complexes")
    if f.variance != g.variance or tuple(f.shift) != tuple(g.shift):
        raise SignatureError(
            f"signature mismatch: {f.variance}{tuple(f.shift)} vs {g.variance}{tuple(g.shift)}"
        )


def identity(c: KnotComplex) -> ModuleMap:
    return ModuleMap(c, c, LINEAR, (0, 0), {x: {x: Poly.monomial()} for x in c.ids}, "id")


def zero_map(src: KnotComplex, tgt: KnotComplex, variance=LINEAR, shift=(0, 0)) -> ModuleMap:
    return ModuleMap(src, tgt, variance, shift, {}, "0")


def differential_map(c: KnotComplex) -> ModuleMap:
    return ModuleMap(c, c, LINEAR, (-1, -1), c.differential, "d")


def conjugation_map(c: KnotComplex) -> ModuleMap:
    """The skew map fixing every generator (for the trivial complex: swap U and V)."""
    return ModuleMap(c, c, SKEW, (0, 0), {x: {x: Poly.monomial()} for x in c.ids}, "swap")


# --- term tables ---------------------------------------------------------------


def to_table(f: ModuleMap) -> Table:
    out: Table = {}
    for x, row in f.entries.items():
        t = out.setdefault(x, {})
        for y, p in row.items():
            for m in p.terms:
                t[(y, m)] = 1
    return out


def from_table(
    table: Table, src: KnotComplex, tgt: KnotComplex, variance: str, shift: Grading, name=""
) -> ModuleMap:
    entries: dict[str, dict[str, set]] = {}
    for x, row in table.items():
        for (y, m), mask in row.items():
            if mask & 1:
                entries.setdefault(x, {}).setdefault(y, set()).symmetric_difference_update({m})
    polys = {
        x: {y: Poly(frozenset(ms)) for y, ms in row.items() if ms} for x, row in entries.items()
    }
    return ModuleMap(src, tgt, variance, shift, polys, name)


def table_compose(outer: Table, outer_skew: bool, inner: Table) -> Table:
    """Term table of ``outer o inner``; at most one side may carry unknowns."""
    out: Table = {}
    for x, row in inner.items():
        acc: dict[tuple[str, Monomial], int] = {}
        for (y, m1), mask1 in row.items():
            orow = outer.get(y)
            if not orow:
                continue
            m1c = Monomial(m1[1], m1[0]) if outer_skew else m1
            for (z, m2), mask2 in orow.items():
                if mask1 == 1:
                    mask = mask2
                elif mask2 == 1:
                    mask = mask1
                else:
                    raise ValueError("cannot compose two unknown maps linearly")
                key = (z, Monomial(m1c[0] + m2[0], m1c[1] + m2[1]))
                acc[key] = acc.get(key, 0) ^ mask
        acc = {k: v for k, v in acc.items() if v}
        if acc:
            out[x] = acc
    return out


def table_add(*tables: Table) -> Table:
    out: Table = {}
    for t in tables:
        for x, row in t.items():
            dst = out.setdefault(x, {})
            for k, mask in row.items():
                dst[k] = dst.get(k, 0) ^ mask
    return {x: {k: v for k, v in row.items() if v} for x, row in out.items() if any(row.values())}


def table_rows(t: Table) -> list[int]:
    return [mask for row in t.values() for mask in row.values() if mask]


# --- composition and basic maps ---------------------------------------------------


def compose(g: ModuleMap, f: ModuleMap) -> ModuleMap:
    """``g o f``."""
    if f.target is not g.source and f.target.ids != g.source.ids:
        raise SignatureError("compose: target of f differs from source of g")
    variance = SKEW if (f.skew != g.skew) else LINEAR
    fs = (f.shift[1], f.shift[0]) if g.skew else tuple(f.shift)
    shift = (fs[0] + g.shift[0], fs[1] + g.shift[1])
    t = table_compose(to_table(g), g.skew, to_table(f))
    return from_table(t, f.source, g.target, variance, shift, f"{g.name}.{f.name}")


def _derivative(c: KnotComplex, which: int) -> ModuleMap:
    entries: dict[str, dict[str, Poly]] = {}
    for x, row in c.differential.items():
        for y, p in row.items():
            terms = []
            for m in p.terms:
                if m[which] % 2 == 1:
                    terms.append((m[0] - 1, m[1]) if which == 0 else (m[0], m[1] - 1))
            q = Poly.from_terms(terms)
            if q:
                entries.setdefault(x, {})[y] = q
    shift = (1, -1) if which == 0 else (-1, 1)
    return ModuleMap(c, c, LINEAR, shift, entries, "Phi" if which == 0 else "Psi")


def derive_phi(c: KnotComplex) -> ModuleMap:
    """Formal U-derivative of the differential."""
    return _derivative(c, 0)


def derive_psi(c: KnotComplex) -> ModuleMap:
    """Formal V-derivative of the differential."""
    return _derivative(c, 1)


def sarkar(c: KnotComplex) -> ModuleMap:
    return (identity(c) + compose(derive_phi(c), derive_psi(c))).named("sarkar")


def chain_defect(f: ModuleMap) -> Table:
    d_src = to_table(differential_map(f.source))
    d_tgt = to_table(differential_map(f.target))
    ft = to_table(f)
    return table_add(table_compose(d_tgt, False, ft), table_compose(ft, f.skew, d_src))


def is_chain_map(f: ModuleMap) -> bool:
    return not chain_defect(f)


def tensor_maps(f: ModuleMap, g: ModuleMap, src, tgt) -> ModuleMap:
    """``f (x) g`` between tensor complexes whose ids are ``a*b``."""
    if f.variance != g.variance:
        raise SignatureError("tensor of maps with different variance")
    entries: dict[str, dict[str, Poly]] = {}
    for a in f.source.ids:
        fa = f.image(a)
        if not fa:
            continue
        for b in g.source.ids:
            gb = g.image(b)
            if not gb:
                continue
            row = entries.setdefault(f"{a}*{b}", {})
            for a2, p in fa.items():
                for b2, q in gb.items():
                    key = f"{a2}*{b2}"
                    row[key] = row.get(key, Poly()) + p * q
    shift = (f.shift[0] + g.shift[0], f.shift[1] + g.shift[1])
    return ModuleMap(src, tgt, f.variance, shift, entries, f"{f.name}x{g.name}")


def transpose_map(f: ModuleMap, src_dual: KnotComplex, tgt_dual: KnotComplex, dual_id) -> ModuleMap:
    """Dual map between dual complexes; skew maps pick up a conjugation."""
    entries: dict[str, dict[str, Poly]] = {}
    for x, row in f.entries.items():
        for y, p in row.items():
            q = p.conjugate() if f.skew else p
            entries.setdefault(dual_id(y), {})[dual_id(x)] = q
    shift = (f.shift[1], f.shift[0]) if f.skew else tuple(f.shift)
    return ModuleMap(tgt_dual, src_dual, f.variance, shift, entries, f"{f.name}^")


# --- unknown maps and linear systems -------------------------------------------------


@dataclass
class UnknownMap:
    source: KnotComplex
    target: KnotComplex
    variance: str
    shift: Grading
    slots: list[tuple[str, str, Monomial]]
    offset: int

    @property
    def skew(self) -> bool:
        return self.variance == SKEW

    def table(self) -> Table:
        out: Table = {}
        for i, (x, y, m) in enumerate(self.slots):
            out.setdefault(x, {})[(y, m)] = 1 << (self.offset + i + 1)
        return out

    def realize(self, bits: int, name: str = "") -> ModuleMap:
        entries: dict[str, dict[str, Poly]] = {}
        for i, (x, y, m) in enumerate(self.slots):
            if (bits >> (self.offset + i)) & 1:
                entries.setdefault(x, {})[y] = Poly(frozenset([m]))
        return ModuleMap(self.source, self.target, self.variance, self.shift, entries, name)


class LinearProblem:
    """Collects unknown maps and linear equations between term tables."""

    def __init__(self) -> None:
        self.n_unknowns = 0
        self.rows: list[int] = []
        self.unknowns: dict[str, UnknownMap] = {}

    def unknown_map(
        self, key: str, src: KnotComplex, tgt: KnotComplex, variance: str, shift: Grading,
        allowed: Iterable[tuple[str, str]] | None = None,
    ) -> UnknownMap:
        slots = []
        allowed_set = set(allowed) if allowed is not None else None
        for x, gu, gv in src.generators:
            want = _out_grading((gu, gv), variance, shift)
            for y, hu, hv in tgt.generators:
                if allowed_set is not None and (x, y) not in allowed_set:
                    continue
                m = forced_monomial(want, (hu, hv))
                if m is not None:
                    slots.append((x, y, m))
        um = UnknownMap(src, tgt, variance, tuple(shift), slots, self.n_unknowns)
        self.n_unknowns += len(slots)
        self.unknowns[key] = um
        return um

    def require_zero(self, table: Table) -> None:
        self.rows.extend(table_rows(table))

    def require(self, row: int) -> None:
        self.rows.append(row)

    def solve(self) -> gf2.Solution | None:
        return gf2.solve(self.rows, self.n_unknowns)


def homotopy_equation(h: UnknownMap, known: Table) -> Table:
    """Table of ``dH + Hd + known``."""
    ht = h.table()
    d_src = to_table(differential_map(h.source))
    d_tgt = to_table(differential_map(h.target))
    return table_add(table_compose(d_tgt, False, ht), table_compose(ht, h.skew, d_src), known)


def homotopy_shift(f: ModuleMap) -> Grading:
    return (f.shift[0] + 1, f.shift[1] + 1)


def find_homotopy(f: ModuleMap, g: ModuleMap) -> ModuleMap | None:
    """H with f + g = dH + Hd, of the variance of f and shift +(1,1); None if none exists."""
    _same_signature(f, g)
    diff = f + g
    hshift = homotopy_shift(f)
    if diff.is_zero():
        return zero_map(f.source, f.target, f.variance, hshift).named("H")
    prob = LinearProblem()
    h = prob.unknown_map("H", f.source, f.target, f.variance, hshift)
    prob.require_zero(homotopy_equation(h, to_table(diff)))
    sol = prob.solve()
    if sol is None:
        return None
    hmap = h.realize(sol.particular, "H")
    if not verify_homotopy(f, g, hmap):
        raise AssertionError("solver returned a homotopy that does not re-verify")
    return hmap


def verify_homotopy(f: ModuleMap, g: ModuleMap, h: ModuleMap) -> bool:
    lhs = to_table(f + g)
    ht = to_table(h)
    dh = table_compose(to_table(differential_map(h.target)), False, ht)
    hd = table_compose(ht, h.skew, to_table(differential_map(h.source)))
    return not table_add(lhs, dh, hd)


def homotopic(f: ModuleMap, g: ModuleMap) -> bool:
    return find_homotopy(f, g) is not None


@dataclass
class SolutionSpace:
    """Affine space of maps: ``particular + span(basis)``."""

    particular: ModuleMap
    basis: list[ModuleMap]
    auxiliary: dict[str, ModuleMap] = field(default_factory=dict)

    @property
    def dimension(self) -> int:
        return len(self.basis)


def solve_chain_maps(
    src: KnotComplex,
    dst: KnotComplex,
    variance: str = LINEAR,
    shift: Grading = (0, 0),
    side_conditions: Sequence = (),
) -> SolutionSpace | None:
    """All maps f of the signature with df + fd = 0 plus the supplied conditions.

    Each side condition is a callable ``cond(problem, f_unknown)`` that may add
    auxiliary unknown maps and equations to ``problem``.  Returns None when the
    affine system is empty (possible only with inhomogeneous side conditions).
    """
    prob = LinearProblem()
    f = prob.unknown_map("f", src, dst, variance, shift)
    prob.require_zero(homotopy_equation_zero(f))
    for cond in side_conditions:
        cond(prob, f)
    sol = prob.solve()
    if sol is None:
        return None
    part = f.realize(sol.particular, "f")
    basis = [f.realize(v, "f") for v in sol.basis]
    basis = [b for b in basis if not b.is_zero()]
    aux = {k: u.realize(sol.particular, k) for k, u in prob.unknowns.items() if k != "f"}
    return SolutionSpace(part, basis, aux)


def homotopy_equation_zero(f: UnknownMap) -> Table:
    ft = f.table()
    d_src = to_table(differential_map(f.source))
    d_tgt = to_table(differential_map(f.target))
    return table_add(table_compose(d_tgt, False, ft), table_compose(ft, f.skew, d_src))


def evaluate_at_one(vec: Mapping[str, Poly]) -> dict[str, int]:
    return {g: p.at_one() for g, p in vec.items() if p.at_one()}


def unit_vector(gen: str) -> dict[str, Poly]:
    return {gen: Poly(frozenset([ONE]))}
