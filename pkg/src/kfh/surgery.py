"""Alexander-grading-zero subcomplex, the mapping cone of Q(1 + m), and its correction terms.

Everything over F2[U] here is homogeneous, so a matrix entry between two
basis elements is either zero or the single power of U fixed by their
gradings.  Chain-level data is therefore kept as GF(2) bitmasks over the
generators, with the U-powers implied.  In particular multiplication by U
is the identity on bitmasks: an element of grading r and the same element
times U^n (grading r - 2n) have the same mask.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, NamedTuple

from . import gf2
from .complexes import KnotComplex, UComplex
from .equivariant import TauIotaComplex
from .morphisms import LINEAR, ModuleMap, compose, differential_map, find_homotopy, identity, sarkar
from .ring import Monomial, Poly, UPoly


class DataError(ValueError):
    pass


# --- A0 -------------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class A0Complex:
    ucomplex: UComplex
    prefactor: Mapping[str, Monomial]
    endomorphisms: Mapping[str, Mapping[str, Mapping[str, UPoly]]] = field(default_factory=dict)
    source: TauIotaComplex | None = None

    def endo(self, name: str) -> Mapping[str, Mapping[str, UPoly]]:
        if name not in self.endomorphisms:
            raise KeyError(f"A0 carries no endomorphism {name!r}")
        return self.endomorphisms[name]


def a0_prefactor(gu: int, gv: int) -> Monomial:
    k = (gu - gv) // 2
    return Monomial(max(k, 0), max(-k, 0))


def restrict_to_a0(f: ModuleMap, prefactor: Mapping[str, Monomial]) -> dict[str, dict[str, UPoly]]:
    """Matrix of a grading-preserving (or the differential) map on the A0 basis."""
    out: dict[str, dict[str, UPoly]] = {}
    for x, row in f.entries.items():
        mx = prefactor[x]
        if f.skew:
            mx = mx.conjugate()
        for y, p in row.items():
            my = prefactor[y]
            for m in p.terms:
                tot = Monomial(mx[0] + m[0], mx[1] + m[1])
                j = tot[0] - my[0]
                if j < 0 or tot[1] - my[1] != j:
                    raise DataError(f"{f.name}: term {x}->{y} leaves Alexander grading zero")
                cur = out.setdefault(x, {}).get(y, UPoly())
                out[x][y] = cur + UPoly.power(j)
    return {x: {y: p for y, p in row.items() if p} for x, row in out.items()}


def a0(t: TauIotaComplex) -> A0Complex:
    c = t.complex
    pre = {x: a0_prefactor(gu, gv) for x, gu, gv in c.generators}
    gens = tuple((x, min(gu, gv)) for x, gu, gv in c.generators)
    diff = restrict_to_a0(differential_map(c), pre)
    endos = {"tau": restrict_to_a0(t.tau, pre), "sarkar": restrict_to_a0(sarkar(c), pre)}
    if t.iota is not None:
        endos["iotatau"] = restrict_to_a0(compose(t.iota, t.tau), pre)
    uc = UComplex(f"A0({c.name})", gens, diff)
    return A0Complex(uc, pre, endos, t)


def u_map_as_bigraded(a: A0Complex, name: str, big: KnotComplex) -> ModuleMap:
    m = a.endo(name)
    entries = {
        x: {y: _diag_poly(p) for y, p in row.items()} for x, row in m.items()
    }
    return ModuleMap(big, big, LINEAR, (0, 0), entries, name)


def _diag_poly(p: UPoly) -> Poly:
    return Poly.from_terms((k, k) for k in p.terms)


def a0_sarkar_trivial(a: A0Complex) -> bool:
    """The Sarkar map on A0 is homotopic to the identity over F2[U]."""
    big = a.ucomplex.as_bigraded()
    s = u_map_as_bigraded(a, "sarkar", big)
    return find_homotopy(s, identity(big)) is not None


# --- cone -------------------------------------------------------------------------------


def q_id(x: str) -> str:
    return f"Q:{x}"


@dataclass(frozen=True, eq=False)
class ConeComplex:
    ucomplex: UComplex
    q: Mapping[str, str]
    endomorphism: str
    base: tuple[str, ...]


def build_cfi(a: A0Complex, m: str = "tau") -> ConeComplex:
    if m not in ("tau", "iotatau"):
        raise ValueError(f"unknown cone endomorphism {m!r}")
    if m == "iotatau" and "iotatau" not in a.endomorphisms:
        raise KeyError("iotatau cone requested but the complex carries no iota")
    uc = a.ucomplex
    endo = a.endo(m)
    gens = []
    for x, g in uc.generators:
        gens.append((x, g))
    for x, g in uc.generators:
        gens.append((q_id(x), g - 1))
    diff: dict[str, dict[str, UPoly]] = {}
    for x in uc.ids:
        row = dict(uc.d(x))
        corr: dict[str, UPoly] = {x: UPoly.power(0)}
        for y, p in endo.get(x, {}).items():
            corr[y] = corr.get(y, UPoly()) + p
        for y, p in corr.items():
            if p:
                row[q_id(y)] = p
        diff[x] = row
        diff[q_id(x)] = {q_id(y): p for y, p in uc.d(x).items()}
    cone = UComplex(f"CFI^{m}({uc.name})", tuple(gens), diff)
    return ConeComplex(cone, {x: q_id(x) for x in uc.ids}, m, tuple(uc.ids))


# --- graded slices ------------------------------------------------------------------


class Slices:
    """Grade-by-grade GF(2) view of a homogeneous complex over F2[U]."""

    def __init__(self, c: UComplex) -> None:
        self.c = c
        self.ids = c.ids
        self.grades = [c.maslov(x) for x in self.ids]
        self.dmask = []
        for x in self.ids:
            v = 0
            for y, p in c.d(x).items():
                if len(p.terms) != 1 or c.maslov(y) - 2 * next(iter(p.terms)) != c.maslov(x) - 1:
                    raise DataError(f"{c.name}: inhomogeneous entry {x}->{y}")
                v |= 1 << c.index(y)
            self.dmask.append(v)
        self.g_min = min(self.grades) if self.grades else 0
        self.g_max = max(self.grades) if self.grades else 0

    def present(self, r: int) -> list[int]:
        return [i for i, g in enumerate(self.grades) if g >= r and (g - r) % 2 == 0]

    def mask(self, r: int) -> int:
        m = 0
        for i in self.present(r):
            m |= 1 << i
        return m

    def cycles(self, r: int) -> list[int]:
        idx = self.present(r)
        ker = gf2.kernel([self.dmask[i] for i in idx])
        out = []
        for k in ker:
            v = 0
            for j in gf2.iter_bits(k):
                v |= 1 << idx[j]
            out.append(v)
        return out

    def boundaries(self, r: int) -> list[int]:
        return [self.dmask[i] for i in self.present(r + 1) if self.dmask[i]]

    def stable(self, r: int) -> int:
        """A grade congruent to r (mod 2) where U acts invertibly on homology, at most r."""
        top = self.g_min - 1
        if r <= top:
            return r
        return top if (top - r) % 2 == 0 else top - 1

    def homology_rank(self, r: int) -> int:
        return len(self.cycles(r)) - gf2.rank(self.boundaries(r))


def _span(vectors) -> gf2.Echelon:
    e = gf2.Echelon()
    for v in vectors:
        e.add(v)
    return e


def _intersection_dim(basis_a: list[int], span_b: gf2.Echelon) -> int:
    """dim(span(a) ∩ span_b) for independent ``basis_a``."""
    joint = gf2.Echelon()
    joint.rows = dict(span_b.rows)
    new = 0
    for v in basis_a:
        if joint.add(v)[0]:
            new += 1
    return len(basis_a) - new


class DInvariants(NamedTuple):
    d_lower: int
    d_upper: int


def d_invariants(cone: ConeComplex, q_image: str = "homology") -> DInvariants:
    """Correction terms of the cone.

    ``q_image="homology"`` reads im(Q) as the image of Q on homology;
    ``"subcomplex"`` reads it as the classes with a cycle representative in Q.A0.
    """
    sl = Slices(cone.ucomplex)
    uc = cone.ucomplex
    qmask_of = {uc.index(x): 1 << uc.index(q) for x, q in cone.q.items()}
    qgens = 0
    for q in cone.q.values():
        qgens |= 1 << uc.index(q)

    def q_apply(v: int) -> int:
        out = 0
        for i in gf2.iter_bits(v):
            out ^= qmask_of.get(i, 0)
        return out

    lower = None
    upper = None
    for r in range(sl.g_max, sl.g_min - 5, -1):
        z = sl.cycles(r)
        if not z:
            continue
        s = sl.stable(r)
        bs = sl.boundaries(s)
        b_span = _span(bs)
        if q_image == "homology":
            qvecs = [q_apply(v) for v in sl.cycles(s + 1)]
        elif q_image == "subcomplex":
            qvecs = [v for v in sl.cycles(s) if v & ~qgens == 0]
        else:
            raise ValueError(f"unknown im(Q) reading {q_image!r}")
        q_span = _span(bs + qvecs)
        dim_w = _intersection_dim(z, q_span)
        dim_ker = _intersection_dim(z, b_span)
        if lower is None and dim_w < len(z):
            lower = r
        if upper is None and dim_w > dim_ker:
            upper = r + 1
        if lower is not None and upper is not None:
            break
    if lower is None or upper is None:
        raise DataError("cone homology has no U-nontorsion class of the required kind")
    return DInvariants(lower, upper)


@dataclass(frozen=True)
class V0Suite:
    v0_upper_tau: int
    v0_lower_tau: int
    v0_upper_iotatau: int | None = None
    v0_lower_iotatau: int | None = None
    d: dict = field(default_factory=dict)

    def items(self) -> list[tuple[str, int]]:
        out = [("v0_lower_tau", self.v0_lower_tau), ("v0_upper_tau", self.v0_upper_tau)]
        if self.v0_lower_iotatau is not None:
            out += [
                ("v0_lower_iotatau", self.v0_lower_iotatau),
                ("v0_upper_iotatau", self.v0_upper_iotatau),
            ]
        return out


def _half(d: int) -> int:
    if d % 2:
        raise DataError(f"odd correction term {d}: V0 would not be an integer")
    return -d // 2


def dinv_for(t: TauIotaComplex, m: str = "tau", q_image: str = "homology") -> DInvariants:
    return d_invariants(build_cfi(a0(t), m), q_image)


def v0_suite(t: TauIotaComplex) -> V0Suite:
    a = a0(t)
    d = {"tau": d_invariants(build_cfi(a, "tau"))}
    if "iotatau" in a.endomorphisms:
        d["iotatau"] = d_invariants(build_cfi(a, "iotatau"))
    tau = d["tau"]
    it = d.get("iotatau")
    return V0Suite(
        _half(tau.d_upper),
        _half(tau.d_lower),
        _half(it.d_upper) if it else None,
        _half(it.d_lower) if it else None,
        d,
    )


# --- homology over F2[U] ----------------------------------------------------------------


@dataclass
class UModulePresentation:
    free: list[tuple[int, dict[str, UPoly]]]
    torsion: list[tuple[int, int, dict[str, UPoly]]]
    basis: list[tuple[int, dict[str, UPoly]]] = field(default_factory=list)

    def rank_at(self, r: int) -> int:
        n = 0
        for g, _ in self.free:
            if r <= g and (g - r) % 2 == 0:
                n += 1
        for g, k, _ in self.torsion:
            if r <= g and (g - r) % 2 == 0 and (g - r) // 2 < k:
                n += 1
        return n

    def lines(self) -> list[str]:
        out = [f"free {g}" for g, _ in self.free]
        out += [f"torsion {g} {k}" for g, k, _ in self.torsion]
        return out


def _element(c: UComplex, grading: int, mask: int) -> dict[str, UPoly]:
    out = {}
    ids = c.ids
    for i in gf2.iter_bits(mask):
        x = ids[i]
        out[x] = UPoly.power((c.maslov(x) - grading) // 2)
    return out


def u_homology(c: UComplex) -> UModulePresentation:
    """Graded Smith normal form of the differential by minimal-exponent cancellation."""
    n = len(c)
    grade = [c.maslov(x) for x in c.ids]
    sl = Slices(c)
    d = list(sl.dmask)
    orig = [1 << i for i in range(n)]
    active = set(range(n))
    torsion = []
    while True:
        best = None
        for x in sorted(active):
            for y in gf2.iter_bits(d[x]):
                k = (grade[y] - grade[x] + 1) // 2
                key = (k, x, y)
                if best is None or key < best:
                    best = key
        if best is None:
            break
        k, x, y = best
        # y' = dx / U^k replaces y; every other source a hitting y is cleared by a + U^j x
        new_y = 0
        for z in gf2.iter_bits(d[x]):
            new_y ^= orig[z]
        orig[y] = new_y
        for a in sorted(active):
            if a != x and (d[a] >> y) & 1:
                d[a] ^= d[x]
                orig[a] ^= orig[x]
        for a in active:
            d[a] &= ~(1 << x)
        d[y] = 0
        d[x] = 0
        active.discard(x)
        active.discard(y)
        if k > 0:
            torsion.append((grade[y], k, _element(c, grade[y], new_y)))
    free = [(grade[i], _element(c, grade[i], orig[i])) for i in sorted(active)]
    torsion.sort(key=lambda t: (-t[0], t[1]))
    free.sort(key=lambda t: -t[0])
    basis = [(grade[i], _element(c, grade[i], orig[i])) for i in range(n)]
    return UModulePresentation(free, torsion, basis)


def homology_ranks_by_slices(c: UComplex, lo: int, hi: int) -> dict[int, int]:
    sl = Slices(c)
    return {r: sl.homology_rank(r) for r in range(lo, hi + 1)}


# --- relative V0 and hat homology --------------------------------------------------------


def _as_mask(c: UComplex, elem: Mapping[str, UPoly]) -> tuple[int | None, int]:
    grading = None
    mask = 0
    for x, p in elem.items():
        if not p:
            continue
        if len(p.terms) != 1:
            raise DataError("element is not homogeneous")
        k = next(iter(p.terms))
        g = c.maslov(x) - 2 * k
        if grading is None:
            grading = g
        elif g != grading:
            raise DataError("element is not homogeneous")
        mask ^= 1 << c.index(x)
    return grading, mask


INFINITE = -1


def relative_v0(a: A0Complex, x: Mapping[str, UPoly], y: Mapping[str, UPoly]) -> int:
    """Least n with U^n [x] = U^n [y]; ``INFINITE`` when the classes never agree."""
    c = a.ucomplex
    sl = Slices(c)
    gx, mx = _as_mask(c, x)
    gy, my = _as_mask(c, y)
    for g, m, label in ((gx, mx, "x"), (gy, my, "y")):
        dm = 0
        for i in gf2.iter_bits(m):
            dm ^= sl.dmask[i]
        if dm:
            raise DataError(f"{label} is not a cycle")
    if gx is not None and gy is not None and gx != gy:
        raise DataError("x and y have different gradings")
    r = gx if gx is not None else gy
    z = mx ^ my
    if z == 0:
        return 0
    n = 0
    while True:
        level = r - 2 * n
        if _span(sl.boundaries(level)).contains(z):
            return n
        if level <= sl.g_min - 1:
            return INFINITE
        n += 1


def hat_homology(c: KnotComplex) -> dict[tuple[int, int], int]:
    """Ranks of the homology of C/(U, V) keyed by (Maslov, Alexander)."""
    groups: dict[tuple[int, int], list[str]] = {}
    for x, gu, gv in c.generators:
        groups.setdefault((gu, (gu - gv) // 2), []).append(x)
    out_rank = {}
    for key, xs in groups.items():
        vecs = []
        for x in xs:
            v = 0
            for y, p in c.d(x).items():
                if p.constant_part():
                    v ^= 1 << c.index(y)
            vecs.append(v)
        out_rank[key] = gf2.rank(vecs)
    ranks = {}
    for (m, a), xs in groups.items():
        h = len(xs) - out_rank[(m, a)] - out_rank.get((m + 1, a), 0)
        if h:
            ranks[(m, a)] = h
    return dict(sorted(ranks.items(), key=lambda kv: (kv[0][1], kv[0][0])))


def ideal_part(c: KnotComplex, grading: tuple[int, int]) -> list[str]:
    """Basis of the bigrading-``grading`` part of (U, V).C, as ``U<a>V<b>:<gen>`` labels.

    An empty list means no nonzero homogeneous element of that bigrading lies in (U, V).C.
    """
    out = []
    for x, gu, gv in c.generators:
        du, dv = gu - grading[0], gv - grading[1]
        if du >= 0 and dv >= 0 and du % 2 == 0 and dv % 2 == 0 and (du, dv) != (0, 0):
            out.append(f"U{du // 2}V{dv // 2}:{x}")
    return out
