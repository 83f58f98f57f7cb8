"""Complexes with tau / iota actions: axioms, twisting, group operations and local maps."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from . import gf2
from .complexes import KnotComplex, ValidationReport, validate_knot_complex
from .morphisms import (
    LINEAR,
    SKEW,
    LinearProblem,
    ModuleMap,
    SignatureError,
    compose,
    conjugation_map,
    derive_phi,
    derive_psi,
    find_homotopy,
    homotopy_equation,
    homotopy_equation_zero,
    identity,
    is_chain_map,
    sarkar,
    table_add,
    table_compose,
    tensor_maps,
    to_table,
    transpose_map,
    verify_homotopy,
)
from .ring import Poly

STRONG = "strong"
PERIODIC = "periodic"
TAU = "tau"
IOTA = "iota"


class MissingAction(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class TauIotaComplex:
    complex: KnotComplex
    tau: ModuleMap
    iota: ModuleMap | None = None
    flavor: str = STRONG

    def __post_init__(self) -> None:
        if self.flavor not in (STRONG, PERIODIC):
            raise ValueError(f"unknown flavor {self.flavor!r}")
        for m in (self.tau, self.iota):
            if m is not None and (m.source is not self.complex or m.target is not self.complex):
                if m.source.ids != self.complex.ids or m.target.ids != self.complex.ids:
                    raise SignatureError("action must be an endomorphism of the complex")

    @property
    def name(self) -> str:
        return self.complex.name

    def action(self, which: str) -> ModuleMap:
        if which == TAU:
            return self.tau
        if which == IOTA:
            if self.iota is None:
                raise MissingAction(f"{self.name} carries no iota")
            return self.iota
        raise ValueError(f"unknown action {which!r}")

    def with_actions(self, tau=None, iota=None, name=None) -> "TauIotaComplex":
        c = self.complex if name is None else self.complex.renamed(name)
        t = self.tau if tau is None else tau
        i = self.iota if iota is None else iota
        return _rebind(TauIotaComplex(self.complex, t, i, self.flavor), c)


def _rebind(t: TauIotaComplex, c: KnotComplex) -> TauIotaComplex:
    def mv(m):
        if m is None:
            return None
        return ModuleMap(c, c, m.variance, m.shift, m.entries, m.name)

    return TauIotaComplex(c, mv(t.tau), mv(t.iota), t.flavor)


def trivial_ti() -> TauIotaComplex:
    from .complexes import trivial_complex

    c = trivial_complex()
    s = conjugation_map(c)
    return TauIotaComplex(c, s.named("tau"), s.named("iota"), STRONG)


# --- axioms --------------------------------------------------------------------


def _check_homotopic(rep: ValidationReport, name: str, f: ModuleMap, g: ModuleMap) -> None:
    try:
        h = find_homotopy(f, g)
    except SignatureError as exc:
        rep.add(name, False, str(exc))
        return
    rep.add(name, h is not None, "" if h is not None else "no homotopy exists")
    if h is not None:
        rep.witnesses[name] = h


def _check_action(rep: ValidationReport, label: str, m: ModuleMap, variance: str) -> bool:
    ok_sig = m.variance == variance and tuple(m.shift) == (0, 0)
    rep.add(
        f"{label}_signature",
        ok_sig,
        "" if ok_sig else f"expected {variance} shift (0,0), got {m.variance} {tuple(m.shift)}",
    )
    bad = m.homogeneity_errors()
    rep.add(f"{label}_homogeneity", not bad, ",".join(bad))
    chain = is_chain_map(m)
    rep.add(f"{label}_chain_map", chain)
    return ok_sig and not bad and chain


def verify_ti(t: TauIotaComplex, require_iota: bool = False) -> ValidationReport:
    """Check every axiom of the declared flavor; homotopy witnesses go into ``witnesses``."""
    c = t.complex
    rep = validate_knot_complex(c)
    rep.subject = c.name
    if require_iota and t.iota is None:
        raise MissingAction(f"{c.name}: iota axioms requested but no iota supplied")
    tau_var = SKEW if t.flavor == STRONG else LINEAR
    tau_ok = _check_action(rep, "tau", t.tau, tau_var)
    sk = sarkar(c)
    idc = identity(c)
    if tau_ok:
        tt = compose(t.tau, t.tau)
        if t.flavor == STRONG:
            _check_homotopic(rep, "tau_squared_id", tt, idc)
        else:
            _check_homotopic(rep, "tau_squared_sarkar", tt, sk)
    if t.iota is not None:
        iota_ok = _check_action(rep, "iota", t.iota, SKEW)
        if iota_ok:
            _check_homotopic(rep, "iota_squared_sarkar", compose(t.iota, t.iota), sk)
        if iota_ok and tau_ok:
            ti = compose(t.tau, t.iota)
            it = compose(t.iota, t.tau)
            if t.flavor == STRONG:
                _check_homotopic(rep, "tau_iota_relation", ti, compose(sk, it))
            else:
                _check_homotopic(rep, "tau_iota_commute", ti, it)
    return rep


# --- twisting, tensor, dual -------------------------------------------------------


def twist(t: TauIotaComplex, which: str = "both") -> TauIotaComplex:
    sk = sarkar(t.complex)
    tau, iota = t.tau, t.iota
    if which in (TAU, "both"):
        tau = compose(sk, tau).named("tau")
    if which in (IOTA, "both"):
        if iota is None:
            if which == IOTA:
                raise MissingAction(f"{t.name} carries no iota")
        else:
            iota = compose(sk, iota).named("iota")
    if which not in (TAU, IOTA, "both"):
        raise ValueError(f"unknown twist selector {which!r}")
    return TauIotaComplex(t.complex, tau, iota, t.flavor)


def tensor_complex(a: KnotComplex, b: KnotComplex, name: str | None = None) -> KnotComplex:
    gens = []
    diff: dict[str, dict[str, Poly]] = {}
    for x, xu, xv in a.generators:
        for y, yu, yv in b.generators:
            gens.append((f"{x}*{y}", xu + yu, xv + yv))
    for x in a.ids:
        for y in b.ids:
            row: dict[str, Poly] = {}
            for x2, p in a.d(x).items():
                k = f"{x2}*{y}"
                row[k] = row.get(k, Poly()) + p
            for y2, p in b.d(y).items():
                k = f"{x}*{y2}"
                row[k] = row.get(k, Poly()) + p
            row = {k: v for k, v in row.items() if v}
            if row:
                diff[f"{x}*{y}"] = row
    return KnotComplex(name or f"{a.name}*{b.name}", tuple(gens), diff)


def _iota_product(a: TauIotaComplex, b: TauIotaComplex, prod: KnotComplex, variant: str):
    ii = tensor_maps(a.iota, b.iota, prod, prod)
    if variant == "A":
        corr = tensor_maps(derive_phi(a.complex), derive_psi(b.complex), prod, prod)
    elif variant == "B":
        corr = tensor_maps(derive_psi(a.complex), derive_phi(b.complex), prod, prod)
    else:
        raise ValueError(f"unknown iota variant {variant!r}")
    return compose(identity(prod) + corr, ii).named("iota")


def tensor_ti(a: TauIotaComplex, b: TauIotaComplex, iota_variant: str = "A", name=None) -> TauIotaComplex:
    if a.flavor != STRONG or b.flavor != STRONG:
        raise ValueError("tensor products are defined for strong-flavor complexes only")
    prod = tensor_complex(a.complex, b.complex, name)
    tau = tensor_maps(a.tau, b.tau, prod, prod).named("tau")
    iota = None
    if a.iota is not None and b.iota is not None:
        iota = _iota_product(a, b, prod, iota_variant)
    return TauIotaComplex(prod, tau, iota, STRONG)


def _toggle(p: str) -> str:
    return p[:-1] if p.endswith("^") else p + "^"


def dual_id(x: str) -> str:
    """Dual generator name; toggles each tensor factor so (A*B)^ ids match A^*B^."""
    return "*".join(_toggle(p) for p in x.split("*"))


def dual_complex(c: KnotComplex, name: str | None = None) -> KnotComplex:
    gens = tuple((dual_id(x), -gu, -gv) for x, gu, gv in c.generators)
    diff: dict[str, dict[str, Poly]] = {}
    for x, row in c.differential.items():
        for y, p in row.items():
            diff.setdefault(dual_id(y), {})[dual_id(x)] = p
    if name is None:
        name = c.name[:-1] if c.name.endswith("^") else c.name + "^"
    return KnotComplex(name, gens, diff)


def dual_map(f: ModuleMap, src_dual: KnotComplex, tgt_dual: KnotComplex) -> ModuleMap:
    """Transpose of f: ``tgt_dual -> src_dual``."""
    return transpose_map(f, src_dual, tgt_dual, dual_id)


def dual_ti(t: TauIotaComplex, name: str | None = None) -> TauIotaComplex:
    d = dual_complex(t.complex, name)
    tau = dual_map(t.tau, d, d).named("tau")
    iota = dual_map(t.iota, d, d).named("iota") if t.iota is not None else None
    return TauIotaComplex(d, tau, iota, t.flavor)


def transposition_map(ab: KnotComplex, ba: KnotComplex) -> ModuleMap:
    """Factor swap ``x*y -> y*x`` between two-fold tensor complexes."""
    entries = {}
    for g in ab.ids:
        x, y = g.split("*", 1)
        entries[g] = {f"{y}*{x}": Poly.monomial()}
    return ModuleMap(ab, ba, LINEAR, (0, 0), entries, "T")


def intertwines(iso: ModuleMap, f: ModuleMap, g: ModuleMap) -> bool:
    """Exact identity ``iso o f == g o iso``."""
    return compose(iso, f).equals(compose(g, iso))


def swap_involution(
    c: KnotComplex, s: ModuleMap, iota: ModuleMap | None = None, name: str | None = None
) -> TauIotaComplex:
    if s.variance != SKEW or not compose(s, s).equals(identity(c)):
        raise ValueError("swap_involution needs a skew map s with s o s = id")
    prod = tensor_complex(c, c, name)
    trans = transposition_map(prod, prod)
    exch = compose(trans, tensor_maps(s, s, prod, prod))
    corr = identity(prod) + tensor_maps(derive_psi(c), derive_phi(c), prod, prod)
    tau = compose(corr, exch).named("tau")
    iota_p = None
    if iota is not None:
        ii = tensor_maps(iota, iota, prod, prod)
        iota_p = compose(sarkar(prod), compose(corr, ii)).named("iota")
    return TauIotaComplex(prod, tau, iota_p, STRONG)


# --- localized homology --------------------------------------------------------------


def _localized_matrix(c: KnotComplex) -> list[int]:
    images = []
    for x in c.ids:
        vec = 0
        for y, p in c.d(x).items():
            if p.at_one():
                vec ^= 1 << c.index(y)
        images.append(vec)
    return images


def localized_cycle(c: KnotComplex) -> int:
    """Bitmask (by generator index) of a cycle generating the localized homology."""
    images = _localized_matrix(c)
    bound = gf2.Echelon()
    for v in images:
        bound.add(v)
    for z in gf2.kernel(images):
        if not bound.contains(z):
            return z
    raise ValueError(f"{c.name}: localized homology vanishes")


def localized_functional(c: KnotComplex, z: int) -> int:
    """Bitmask functional vanishing on localized boundaries and equal to 1 on ``z``."""
    n = len(c)
    images = _localized_matrix(c)
    # lambda is a cocycle: lambda(d x) = 0 for every generator x
    transposed = []
    for j in range(n):
        row = 0
        for i, v in enumerate(images):
            if (v >> j) & 1:
                row |= 1 << i
        transposed.append(row)
    for lam in gf2.kernel(transposed):
        if bin(lam & z).count("1") & 1:
            return lam
    raise ValueError(f"{c.name}: no functional detects the localized class")


def localized_value(f: ModuleMap, z: int, lam: int) -> int:
    acc = 0
    src, dst = f.source, f.target
    for i, x in enumerate(src.ids):
        if not (z >> i) & 1:
            continue
        for y, p in f.image(x).items():
            if (lam >> dst.index(y)) & 1 and p.at_one():
                acc ^= 1
    return acc


# --- local maps ----------------------------------------------------------------------


@dataclass
class LocalMapCertificate:
    source: TauIotaComplex
    target: TauIotaComplex
    f: ModuleMap
    homotopies: dict[str, ModuleMap] = field(default_factory=dict)
    respect: tuple[str, ...] = (TAU,)
    cycle: int = 0
    functional: int = 0
    solution_dimension: int = 0

    def verify(self) -> ValidationReport:
        rep = ValidationReport(f"{self.source.name} -> {self.target.name}")
        f = self.f
        ok_sig = f.variance == LINEAR and tuple(f.shift) == (0, 0)
        rep.add("signature", ok_sig)
        bad = f.homogeneity_errors()
        rep.add("grading", not bad, ",".join(bad[:5]))
        rep.add("chain_map", is_chain_map(f))
        for which in self.respect:
            a1 = self.source.action(which)
            a2 = self.target.action(which)
            lhs = compose(f, a1)
            rhs = compose(a2, f)
            h = self.homotopies.get(which)
            if h is None:
                ok = lhs.equals(rhs)
            else:
                ok = verify_homotopy(lhs, rhs, h)
            rep.add(f"{which}_equivariance", ok, "exact" if h is None or h.is_zero() else "up to homotopy")
        val = localized_value(f, self.cycle, self.functional)
        rep.add("localized_nonzero", val == 1)
        return rep


def certify_map(
    f: ModuleMap,
    src: TauIotaComplex,
    dst: TauIotaComplex,
    respect: Iterable[str] = (TAU,),
    exact: bool = True,
) -> LocalMapCertificate:
    """Wrap an explicit map; when ``exact`` is False missing homotopies are searched for."""
    respect = tuple(respect)
    homs: dict[str, ModuleMap] = {}
    if not exact:
        for which in respect:
            lhs = compose(f, src.action(which))
            rhs = compose(dst.action(which), f)
            try:
                h = find_homotopy(lhs, rhs)
            except SignatureError:
                h = None
            if h is not None:
                homs[which] = h
    z = localized_cycle(src.complex)
    lam = localized_functional(dst.complex, localized_cycle(dst.complex))
    return LocalMapCertificate(src, dst, f, homs, respect, z, lam)


def search_local_map(
    src: TauIotaComplex, dst: TauIotaComplex, respect: Iterable[str] = (TAU,)
) -> LocalMapCertificate | None:
    """Exact search for a grading-preserving local map respecting the chosen actions.

    One joint GF(2) system carries f, one homotopy per respected action, and
    the affine pin making the localized induced map nonzero.
    """
    respect = tuple(sorted(set(respect), key=[TAU, IOTA].index))
    prob = LinearProblem()
    f = prob.unknown_map("f", src.complex, dst.complex, LINEAR, (0, 0))
    prob.require_zero(homotopy_equation_zero(f))
    ft = f.table()
    for which in respect:
        a1 = src.action(which)
        a2 = dst.action(which)
        if a1.variance != a2.variance:
            raise SignatureError(f"{which} actions have different variance")
        h = prob.unknown_map(which, src.complex, dst.complex, a1.variance, (1, 1))
        known = table_add(
            table_compose(ft, False, to_table(a1)),
            table_compose(to_table(a2), a2.skew, ft),
        )
        prob.require_zero(homotopy_equation(h, known))
    z = localized_cycle(src.complex)
    lam = localized_functional(dst.complex, localized_cycle(dst.complex))
    pin = 1
    dst_c = dst.complex
    src_ids = src.complex.ids
    zset = {src_ids[i] for i in gf2.iter_bits(z)}
    for i, (x, y, _m) in enumerate(f.slots):
        if x in zset and (lam >> dst_c.index(y)) & 1:
            pin ^= 1 << (f.offset + i + 1)
    prob.require(pin)
    sol = prob.solve()
    if sol is None:
        return None
    fmap = f.realize(sol.particular, "f")
    homs = {w: prob.unknowns[w].realize(sol.particular, f"H_{w}") for w in respect}
    cert = LocalMapCertificate(src, dst, fmap, homs, respect, z, lam, sol.dimension)
    if not cert.verify().ok:
        raise AssertionError("local map certificate failed re-verification")
    return cert


@dataclass
class LocalVerdict:
    kind: str
    forward: LocalMapCertificate | None
    backward: LocalMapCertificate | None

    @property
    def equivalent(self) -> bool:
        return self.kind == "equivalent"


def local_equivalence(a: TauIotaComplex, b: TauIotaComplex, respect: Iterable[str] = (TAU,)) -> LocalVerdict:
    respect = tuple(respect)
    fwd = search_local_map(a, b, respect)
    bwd = search_local_map(b, a, respect)
    if fwd and bwd:
        kind = "equivalent"
    elif fwd:
        kind = "one_way_forward"
    elif bwd:
        kind = "one_way_backward"
    else:
        kind = "unrelated"
    return LocalVerdict(kind, fwd, bwd)
