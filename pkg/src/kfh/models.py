"""Explicit complexes, involutions and local maps: staircases, boxes, and small knots."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .complexes import KnotComplex, direct_sum, forced_monomial
from .equivariant import (
    STRONG,
    TAU,
    LocalMapCertificate,
    TauIotaComplex,
    certify_map,
    dual_map,
    dual_ti,
    local_equivalence,
    swap_involution,
    tensor_maps,
    tensor_ti,
    trivial_ti,
)
from .morphisms import (
    LINEAR,
    SKEW,
    ModuleMap,
    _out_grading,
    compose,
    derive_phi,
    derive_psi,
    identity,
    solve_chain_maps,
)
from .ring import Poly


class ModelError(ValueError):
    pass


def build_map(
    src: KnotComplex,
    tgt: KnotComplex,
    images: Mapping[str, Iterable[str]],
    variance: str = LINEAR,
    shift=(0, 0),
    name: str = "",
) -> ModuleMap:
    """Map whose coefficients are the monomials forced by the gradings.

    ``images[x]`` lists target generators; repeated targets cancel in pairs.
    A term with no admissible monomial raises ModelError naming the pair.
    """
    entries: dict[str, dict[str, Poly]] = {}
    for x, ys in images.items():
        want = _out_grading(src.grading(x), variance, shift)
        row: dict[str, Poly] = {}
        for y in ys:
            m = forced_monomial(want, tgt.grading(y))
            if m is None:
                raise ModelError(
                    f"{name or 'map'}: no monomial carries {x} {src.grading(x)} to {y} {tgt.grading(y)}"
                )
            row[y] = row.get(y, Poly()) + Poly(frozenset([m]))
        entries[x] = row
    return ModuleMap(src, tgt, variance, shift, entries, name)


def reflection(c: KnotComplex, pairs: Mapping[str, Iterable[str]], name="tau") -> ModuleMap:
    return build_map(c, c, pairs, SKEW, (0, 0), name)


# --- staircases ----------------------------------------------------------------------


@dataclass(frozen=True)
class StaircaseSpec:
    """Zig-zag complex: middle ``b_i`` hits ``V^steps[2i-2] c_{i-1} + U^steps[2i-1] c_i``."""

    name: str
    steps: tuple[int, ...]
    cycle_ids: tuple[str, ...]
    middle_ids: tuple[str, ...]

    def __post_init__(self) -> None:
        m = len(self.middle_ids)
        if len(self.steps) != 2 * m or len(self.cycle_ids) != m + 1:
            raise ModelError("staircase: need 2m steps, m middles and m+1 cycles")
        if any(s <= 0 for s in self.steps):
            raise ModelError("staircase steps must be positive")

    @property
    def symmetric(self) -> bool:
        return tuple(reversed(self.steps)) == self.steps


def staircase_complex(spec: StaircaseSpec) -> KnotComplex:
    m = len(spec.middle_ids)
    s = spec.steps
    gu = [0] * (m + 1)
    gv = [0] * (m + 1)
    for i in range(m, 0, -1):
        gu[i - 1] = gu[i] - 2 * s[2 * i - 1]
    for i in range(1, m + 1):
        gv[i] = gv[i - 1] - 2 * s[2 * i - 2]
    gens = []
    diff = {}
    for i in range(m + 1):
        gens.append((spec.cycle_ids[i], gu[i], gv[i]))
        if i < m:
            b = spec.middle_ids[i]
            gens.append((b, gu[i] + 1, gv[i + 1] + 1))
            diff[b] = {
                spec.cycle_ids[i]: Poly.monomial(0, s[2 * i]),
                spec.cycle_ids[i + 1]: Poly.monomial(s[2 * i + 1], 0),
            }
    return KnotComplex(spec.name, tuple(gens), diff)


def staircase_reflection(spec: StaircaseSpec, c: KnotComplex) -> ModuleMap:
    m = len(spec.middle_ids)
    pairs = {spec.cycle_ids[i]: [spec.cycle_ids[m - i]] for i in range(m + 1)}
    pairs.update({spec.middle_ids[i]: [spec.middle_ids[m - 1 - i]] for i in range(m)})
    return reflection(c, pairs)


def staircase(spec: StaircaseSpec, with_tau: bool = True) -> TauIotaComplex:
    c = staircase_complex(spec)
    if not with_tau:
        return TauIotaComplex(c, identity(c), None)
    if not spec.symmetric:
        raise ModelError(f"{spec.name}: asymmetric staircase has no reflection")
    return TauIotaComplex(c, staircase_reflection(spec, c), None, STRONG)


def cn_spec(n: int) -> StaircaseSpec:
    steps = []
    for j in range(2 * n - 1):
        steps += [j + 1, 2 * n - 1 - j]
    cycles = tuple(f"y{l}" for l in range(-2 * n + 1, 2 * n, 2))
    middles = tuple(f"x{k}" for k in range(-2 * n + 2, 2 * n - 1, 2))
    return StaircaseSpec(f"C{n}", tuple(steps), cycles, middles)


def dn_spec(n: int) -> StaircaseSpec:
    steps = []
    for j in range(1, 2 * n):
        steps += [j, 2 * n - j, j, 2 * n - j]
    cycles = tuple(f"z{l}" for l in range(-4 * n + 2, 4 * n - 1, 2))
    middles = tuple(f"w{k}" for k in range(-4 * n + 3, 4 * n - 2, 2))
    return StaircaseSpec(f"D{n}", tuple(steps), cycles, middles)


def _check_n(n: int, odd: bool) -> None:
    if not isinstance(n, int) or n < 1:
        raise ModelError(f"n must be a positive integer, got {n!r}")
    if odd and n % 2 == 0:
        raise ModelError(f"this family is defined for odd n only, got {n}")


def cn(n: int) -> TauIotaComplex:
    _check_n(n, False)
    return staircase(cn_spec(n))


def dn(n: int) -> TauIotaComplex:
    _check_n(n, False)
    return staircase(dn_spec(n))


# --- square, E_n, B_n ---------------------------------------------------------------------


def _square_diff(n: int) -> dict:
    return {
        "r0": {"r-1": Poly.monomial(0, n), "r1": Poly.monomial(n, 0)},
        "r-1": {"t": Poly.monomial(n, 0)},
        "r1": {"t": Poly.monomial(0, n)},
    }


def sn_complex(n: int, t_grading: tuple[int, int]) -> KnotComplex:
    tu, tv = t_grading
    gens = (
        ("r0", tu + 2 - 2 * n, tv + 2 - 2 * n),
        ("r-1", tu + 1 - 2 * n, tv + 1),
        ("r1", tu + 1, tv + 1 - 2 * n),
        ("t", tu, tv),
    )
    return KnotComplex(f"S{n}", gens, _square_diff(n))


def sn(n: int) -> TauIotaComplex:
    """The square alone: a building block whose localized homology vanishes."""
    _check_n(n, False)
    d = staircase_complex(dn_spec(n))
    c = sn_complex(n, d.grading("z0"))
    tau = reflection(c, {"r0": ["r0"], "r-1": ["r1"], "r1": ["r-1"], "t": ["t"]})
    return TauIotaComplex(c, tau, None, STRONG)


def en(n: int, drop_corrections: Sequence[str] = ()) -> TauIotaComplex:
    """D_n plus the square with the twisted reflection.

    ``drop_corrections`` removes correction terms (a subset of "w-1", "w1", "z0")
    from tau; it exists to build deliberately broken variants for tests.
    """
    _check_n(n, True)
    spec = dn_spec(n)
    d = staircase_complex(spec)
    s = sn_complex(n, d.grading("z0"))
    c = direct_sum(f"E{n}", d, s)
    m = len(spec.middle_ids)
    pairs: dict[str, list[str]] = {}
    for i in range(m + 1):
        pairs[spec.cycle_ids[i]] = [spec.cycle_ids[m - i]]
    for i in range(m):
        pairs[spec.middle_ids[i]] = [spec.middle_ids[m - 1 - i]]
    corrections = {"w-1": "r1", "w1": "r-1", "z0": "t"}
    for gen, extra in corrections.items():
        if gen not in drop_corrections:
            pairs[gen].append(extra)
    pairs.update({"r0": ["r0"], "r-1": ["r1"], "r1": ["r-1"], "t": ["t"]})
    return TauIotaComplex(c, reflection(c, pairs), None, STRONG)


def bn(n: int) -> TauIotaComplex:
    _check_n(n, True)
    gens = (
        ("v", 0, 0),
        ("r0", 2 - 2 * n, 2 - 2 * n),
        ("r-1", 1 - 2 * n, 1),
        ("r1", 1, 1 - 2 * n),
        ("t", 0, 0),
    )
    c = KnotComplex(f"B{n}", gens, _square_diff(n))
    tau = reflection(c, {"v": ["v", "t"], "r0": ["r0"], "r-1": ["r1"], "r1": ["r-1"], "t": ["t"]})
    return TauIotaComplex(c, tau, None, STRONG)


# --- figure-eight, stevedore, J --------------------------------------------------------------


def _box(suffix: str, top: tuple[int, int], corner: str = "d", names="abc") -> tuple[list, dict]:
    a, b, c = (f"{ch}{suffix}" for ch in names)
    d = f"{corner}{suffix}"
    u, v = top
    gens = [(a, u, v), (b, u + 1, v - 1), (c, u - 1, v + 1), (d, u, v)]
    diff = {
        a: {b: Poly.monomial(1, 0), c: Poly.monomial(0, 1)},
        b: {d: Poly.monomial(0, 1)},
        c: {d: Poly.monomial(1, 0)},
    }
    return gens, diff


def fig8(action: str = "tau") -> TauIotaComplex:
    gens, diff = _box("", (0, 0))
    c = KnotComplex("fig8", tuple([("x", 0, 0)] + gens), diff)
    iota = reflection(c, {"x": ["x", "d"], "a": ["a", "x"], "b": ["c"], "c": ["b"], "d": ["d"]}, "iota")
    if action == "tau":
        tau = reflection(c, {"x": ["x", "d"], "a": ["a"], "b": ["c"], "c": ["b"], "d": ["d"]})
    elif action == "sigma":
        tau = reflection(c, {"x": ["x"], "a": ["a", "x"], "b": ["c"], "c": ["b"], "d": ["d"]})
    else:
        raise ModelError(f"unknown action {action!r}")
    return TauIotaComplex(c, tau, iota, STRONG)


def stevedore(action: str = "tau") -> TauIotaComplex:
    g1, d1 = _box("1", (0, 0), "e")
    g2, d2 = _box("2", (0, 0), "e")
    c = KnotComplex("stevedore", tuple([("x0", 0, 0)] + g1 + g2), {**d1, **d2})
    common = {
        "a1": ["a1", "a2"],
        "b1": ["c1", "c2"],
        "c1": ["b1", "b2"],
        "b2": ["c2"],
        "c2": ["b2"],
        "e1": ["e1", "e2"],
        "e2": ["e2"],
    }
    iota = reflection(c, {**common, "a2": ["a2", "e1"], "x0": ["x0"]}, "iota")
    if action == "sigma":
        tau = reflection(c, {**common, "a2": ["a2"], "x0": ["x0", "e2"]})
    elif action == "tau":
        tau = reflection(c, {**common, "a2": ["a2"], "x0": ["x0"]})
    else:
        raise ModelError(f"unknown action {action!r}")
    return TauIotaComplex(c, tau, iota, STRONG)


def cfk_j() -> TauIotaComplex:
    gens = [("v", 0, 0)]
    diff: dict = {}
    for i in (1, 2):
        g, d = _box(str(i), (0, 0))
        gens += g
        diff.update(d)
    for i in (1, 2):
        g, d = _box(str(i), (-1, -1), "h", "efg")
        gens += g
        diff.update(d)
    c = KnotComplex("cfkJ", tuple(gens), diff)
    pairs = {"v": ["v"]}
    for i in (1, 2):
        pairs.update({f"a{i}": [f"a{i}"], f"b{i}": [f"c{i}"], f"c{i}": [f"b{i}"], f"d{i}": [f"d{i}"]})
        pairs.update({f"e{i}": [f"e{i}"], f"f{i}": [f"g{i}"], f"g{i}": [f"f{i}"], f"h{i}": [f"h{i}"]})
    return TauIotaComplex(c, reflection(c, pairs), None, STRONG)


FAMILIES = ("trivial", "Cn", "Dn", "Sn", "En", "Bn", "fig8", "stevedore", "cfkJ")


def model(family: str, n: int | None = None, action: str | None = None) -> TauIotaComplex:
    if family == "trivial":
        return trivial_ti()
    if family in ("Cn", "Dn", "Sn", "En", "Bn"):
        if n is None:
            raise ModelError(f"{family} needs --n")
        return {"Cn": cn, "Dn": dn, "Sn": sn, "En": en, "Bn": bn}[family](n)
    if family == "fig8":
        return fig8(action or "tau")
    if family == "stevedore":
        return stevedore(action or "tau")
    if family == "cfkJ":
        return cfk_j()
    raise ModelError(f"unknown model family {family!r}")


# --- the subcomplexes Y_n and W_n ----------------------------------------------------------


def _t(a: str, b: str) -> str:
    return f"{a}*{b}"


def yn_staircase_element(s: int) -> str:
    """Tensor generator of C_n (x) C_n with index sum ``s`` on the staircase part of Y_n."""
    if s % 2 == 0:
        if s % 4 == 2 or s % 4 == -2:
            return _t(f"y{s // 2}", f"y{s // 2}")
        if s < 0:
            i = s // 2 - 1
            return _t(f"y{i}", f"y{i + 2}")
        i = s // 2 - 1
        return _t(f"y{i + 2}", f"y{i}")
    if s == -1:
        return _t("x0", "y-1")
    if s < 0:
        if s % 4 == 3:
            i = (s - 1) // 2
            return _t(f"y{i}", f"x{i + 1}")
        i = (s - 1) // 2
        return _t(f"x{i}", f"y{i + 1}")
    if s % 4 == 3:
        i = (s + 1) // 2
        return _t(f"x{i}", f"y{i - 1}")
    i = (s + 1) // 2
    return _t(f"y{i}", f"x{i - 1}")


def wn_element(s: int) -> str:
    """Generator of W_n with index sum ``s``: Y_n on non-positive sums, mirrored factors above."""
    if s <= 0:
        return yn_staircase_element(s)
    a, b = yn_staircase_element(-s).split("*")
    return _t(_neg(b), _neg(a))


def _neg(g: str) -> str:
    return f"{g[0]}{-int(g[1:])}"


def _index(g: str) -> int:
    return int(g[1:])


def phi_map(n: int, e: TauIotaComplex, cc: TauIotaComplex) -> ModuleMap:
    images: dict[str, list[str]] = {}
    for x in e.complex.ids:
        if x[0] in "wz":
            images[x] = [yn_staircase_element(_index(x))]
    images["t"] = ["y1*y-1", "y-1*y1"]
    images["r-1"] = ["y-1*x0", "x0*y-1"]
    images["r1"] = ["y1*x0", "x0*y1"]
    images["r0"] = ["x0*x0"]
    return build_map(e.complex, cc.complex, images, name="phi")


def wn_map(n: int, d: TauIotaComplex, sw: TauIotaComplex) -> ModuleMap:
    images = {x: [wn_element(_index(x))] for x in d.complex.ids}
    return build_map(d.complex, sw.complex, images, name="W")


def psi_map(n: int, edual: TauIotaComplex, ccdual: TauIotaComplex) -> ModuleMap:
    ys = range(-2 * n + 1, 2 * n, 2)
    xs = set(range(-2 * n + 2, 2 * n - 1, 2))

    def yy(i, j):
        return f"y{i}^*y{j}^"

    def xy(i, j):
        return f"x{i}^*y{j}^"

    def yx(i, j):
        return f"y{i}^*x{j}^"

    images: dict[str, list[str]] = {}
    for x in edual.complex.ids:
        base = x[:-1]
        if base[0] == "z":
            l = _index(base)
            images[x] = [yy(i, l - i) for i in ys if (l - i) in ys]
        elif base[0] == "w":
            k = _index(base)
            terms = []
            for i in sorted(xs):
                j = k - i
                if j in ys:
                    terms += [xy(i, j), yx(j, i)]
            images[x] = terms
    neg = [i for i in ys if i < 0]
    images["r-1^"] = [xy(i - 1, -i) for i in neg if i - 1 in xs] + [yx(i, -i - 1) for i in neg if -i - 1 in xs]
    images["r1^"] = [xy(i + 1, -i) for i in neg if i + 1 in xs] + [yx(i, -i + 1) for i in neg if -i + 1 in xs]
    images["r0^"] = ["x0^*x0^"]
    images["t^"] = [yy(i, -i) for i in neg]
    return build_map(edual.complex, ccdual.complex, images, name="psi")


def f_map(n: int, e: TauIotaComplex, db: KnotComplex) -> ModuleMap:
    images: dict[str, list[str]] = {}
    for x in e.complex.ids:
        if x[0] in "wz":
            i = _index(x)
            low = i <= -1 if x[0] == "w" else i <= 0
            images[x] = [f"{x}*v"] if low else [f"{x}*v", f"{x}*t"]
    images["w1"] = ["w1*v", "w1*t", "z0*r1"]
    for r in ("r0", "r-1", "r1", "t"):
        images[r] = [f"z0*{r}"]
    return build_map(e.complex, db, images, name="f")


def g_map(n: int, edual: TauIotaComplex, dbdual: KnotComplex) -> ModuleMap:
    images: dict[str, list[str]] = {}
    for x in edual.complex.ids:
        if x[0] in "wz":
            images[x] = [f"{x}*v^"]
    images["r0^"] = ["z0^*r0^", "w-1^*r1^", "w1^*r-1^"]
    images["r-1^"] = ["w-1^*t^", "z0^*r-1^"]
    images["r1^"] = ["w1^*t^", "z0^*r1^"]
    images["t^"] = ["z0^*t^"]
    return build_map(edual.complex, dbdual, images, name="g")


def _verified(cert: LocalMapCertificate, label: str) -> LocalMapCertificate:
    rep = cert.verify()
    if not rep.ok:
        bad = "; ".join(c.name + (f" ({c.detail})" if c.detail else "") for c in rep.failures)
        raise ModelError(f"{label}: certificate failed: {bad}")
    return cert


def embed_phi_n(n: int) -> LocalMapCertificate:
    _check_n(n, True)
    e = en(n)
    c = cn(n)
    cc = tensor_ti(c, c)
    return _verified(certify_map(phi_map(n, e, cc), e, cc), "phi")


def embed_psi_n(n: int) -> LocalMapCertificate:
    _check_n(n, True)
    ed = dual_ti(en(n))
    c = cn(n)
    cd = dual_ti(c)
    ccd = tensor_ti(cd, cd)
    return _verified(certify_map(psi_map(n, ed, ccd), ed, ccd), "psi")


def psi_transpose(n: int, cert: LocalMapCertificate) -> LocalMapCertificate:
    """The dual of psi: a local map C_n (x) C_n -> E_n."""
    e = en(n)
    c = cn(n)
    cc = tensor_ti(c, c)
    m = dual_map(cert.f, e.complex, cc.complex).named("psi^")
    return _verified(certify_map(m, cc, e), "psi^")


def swap_model(n: int) -> TauIotaComplex:
    c = cn(n)
    return swap_involution(c.complex, c.tau)


def embed_wn(n: int) -> tuple[LocalMapCertificate, bool]:
    """Certificate for D_n -> (C_n (x) C_n, tau_sw) and whether Psi(x)Phi vanishes on W_n."""
    _check_n(n, True)
    d = dn(n)
    sw = swap_model(n)
    w = wn_map(n, d, sw)
    cert = _verified(certify_map(w, d, sw), "W")
    c = cn(n).complex
    pp = tensor_maps(derive_psi(c), derive_phi(c), sw.complex, sw.complex)
    vanishes = all(not pp.image(y) for row in w.entries.values() for y in row)
    return cert, vanishes


def maps_f_g(n: int) -> tuple[LocalMapCertificate, LocalMapCertificate]:
    _check_n(n, True)
    e = en(n)
    d = dn(n)
    b = bn(n)
    db = tensor_ti(d, b)
    f = _verified(certify_map(f_map(n, e, db.complex), e, db), "f")
    ed = dual_ti(e)
    dbd = tensor_ti(dual_ti(d), dual_ti(b))
    g = _verified(certify_map(g_map(n, ed, dbd.complex), ed, dbd), "g")
    return f, g


def g_transpose(n: int, g: LocalMapCertificate) -> LocalMapCertificate:
    """Dual of g: a local map D_n (x) B_n -> E_n."""
    e = en(n)
    db = tensor_ti(dn(n), bn(n))
    m = dual_map(g.f, e.complex, db.complex).named("g^")
    return _verified(certify_map(m, db, e), "g^")


# --- certification pipeline ----------------------------------------------------------------


@dataclass
class KnReport:
    n: int
    steps: list[tuple[str, bool, str]] = field(default_factory=list)
    v0_lower_tau_bn: int | None = None
    v0_upper_tau_bn: int | None = None
    bound: int | None = None

    @property
    def ok(self) -> bool:
        return all(p for _, p, _ in self.steps)

    def lines(self) -> list[str]:
        out = [f"n={self.n}"]
        out += [f"{name}: {'pass' if p else 'FAIL'}" + (f" ({info})" if info else "") for name, p, info in self.steps]
        out.append(f"v0_lower_tau(B{self.n})={self.v0_lower_tau_bn}")
        out.append(f"v0_upper_tau(B{self.n})={self.v0_upper_tau_bn}")
        out.append(f"bound: v0_lower_tau(K{self.n}) >= {self.bound}")
        return out


def certify_kn(n: int, direct_search: bool = True) -> KnReport:
    """Check every local map behind the lower bound for K_n and evaluate it on B_n."""
    from .surgery import v0_suite

    _check_n(n, True)
    rep = KnReport(n)

    def step(name, fn):
        try:
            info, ok = fn(), True
        except ModelError as exc:
            ok, info = False, str(exc)
        rep.steps.append((name, ok, info))
        return ok

    def do_phi():
        embed_phi_n(n)
        return "E_n -> C_n*C_n"

    psi_box = {}

    def do_psi():
        psi_box["cert"] = embed_psi_n(n)
        return "E_n^ -> C_n^*C_n^, exponents forced by grading"

    def do_psi_t():
        psi_transpose(n, psi_box["cert"])
        return "C_n*C_n -> E_n"

    wn_box = {}

    def do_wn():
        cert, van = embed_wn(n)
        wn_box["vanish"] = van
        return "D_n -> (C_n*C_n, tau_sw)"

    def do_vanish():
        if not wn_box.get("vanish"):
            raise ModelError("Psi(x)Phi is nonzero on some W_n generator")
        return ""

    fg_box = {}

    def do_f():
        fg_box["f"], fg_box["g"] = maps_f_g(n)
        return "E_n -> D_n*B_n"

    def do_g():
        if "g" not in fg_box:
            raise ModelError("f/g construction failed")
        g_transpose(n, fg_box["g"])
        return "E_n^ -> D_n^*B_n^ and its dual D_n*B_n -> E_n"

    step("phi", do_phi)
    if step("psi", do_psi):
        step("psi_dual", do_psi_t)
    step("wn_embedding", do_wn)
    step("psi_phi_vanishes_on_wn", do_vanish)
    step("f", do_f)
    step("g", do_g)
    if direct_search:
        def do_direct():
            e = en(n)
            b = bn(n)
            ed = tensor_ti(e, dual_ti(dn(n)))
            v = local_equivalence(ed, b, (TAU,))
            if not v.equivalent:
                raise ModelError(f"E_n * D_n^ vs B_n: {v.kind}")
            return "E_n*D_n^ ~ B_n by exact search"

        step("bn_equivalence_search", do_direct)
    s = v0_suite(bn(n))
    rep.v0_lower_tau_bn = s.v0_lower_tau
    rep.v0_upper_tau_bn = s.v0_upper_tau
    rep.bound = s.v0_lower_tau if rep.ok else None
    return rep


# --- uniqueness probe ----------------------------------------------------------------------


@dataclass
class InvolutionProbe:
    dimension: int
    involutions: int
    enumerated: bool


def skew_involution_probe(t: TauIotaComplex, max_dim: int = 16) -> InvolutionProbe:
    """Count skew chain maps of shift (0,0) that square to the identity on the nose."""
    space = solve_chain_maps(t.complex, t.complex, SKEW, (0, 0))
    assert space is not None
    dim = space.dimension
    if dim > max_dim:
        return InvolutionProbe(dim, -1, False)
    idc = identity(t.complex)
    count = 0
    basis = space.basis
    for bits in itertools.product((0, 1), repeat=dim):
        m = space.particular
        for b, v in zip(bits, basis):
            if b:
                m = m + v
        if compose(m, m).equals(idc):
            count += 1
    return InvolutionProbe(dim, count, True)


def knot_models(max_n: int = 3) -> list[tuple[str, TauIotaComplex]]:
    """Every bundled model that is a genuine knot-like complex (the bare square is excluded)."""
    out = [("trivial", trivial_ti())]
    for n in range(1, max_n + 1, 2):
        out += [(f"C{n}", cn(n)), (f"D{n}", dn(n)), (f"E{n}", en(n)), (f"B{n}", bn(n))]
    out += [
        ("fig8_tau", fig8("tau")),
        ("fig8_sigma", fig8("sigma")),
        ("stevedore_tau", stevedore("tau")),
        ("stevedore_sigma", stevedore("sigma")),
        ("cfkJ", cfk_j()),
    ]
    return out


__all__ = [
    "StaircaseSpec",
    "build_map",
    "staircase",
    "staircase_complex",
    "cn",
    "dn",
    "sn",
    "en",
    "bn",
    "fig8",
    "stevedore",
    "cfk_j",
    "model",
    "embed_phi_n",
    "embed_psi_n",
    "embed_wn",
    "maps_f_g",
    "certify_kn",
    "skew_involution_probe",
    "knot_models",
]
