"""Free bigraded complexes over F2[U, V] and singly graded complexes over F2[U]."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from . import gf2
from .ring import Monomial, Poly, UPoly

Grading = tuple[int, int]


class StructureError(ValueError):
    """Malformed input: unknown generator ids, duplicates and the like."""


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""
    warning: bool = False


@dataclass
class ValidationReport:
    subject: str
    checks: list[Check] = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)

    def add(self, name: str, passed: bool, detail: str = "", warning: bool = False) -> None:
        self.checks.append(Check(name, passed, detail, warning))

    @property
    def ok(self) -> bool:
        return all(c.passed or c.warning for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def verdict(self, name: str) -> bool:
        for c in self.checks:
            if c.name == name:
                return c.passed
        raise KeyError(name)

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            status = "pass" if c.passed else ("warn" if c.warning else "FAIL")
            out.append(f"{c.name}: {status}" + (f" ({c.detail})" if c.detail else ""))
        return out


@dataclass(frozen=True, eq=False)
class KnotComplex:
    """Free, finitely generated complex over F2[U, V].

    ``differential[x]`` maps target ids to the coefficient polynomial of
    ``d x``.  Generator order is the order given and fixes every matrix layout.
    """

    name: str
    generators: tuple[tuple[str, int, int], ...]
    differential: Mapping[str, Mapping[str, Poly]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        ids = [g[0] for g in self.generators]
        if len(set(ids)) != len(ids):
            raise StructureError(f"duplicate generator id in complex {self.name}")
        index = {g: i for i, g in enumerate(ids)}
        grading = {g[0]: (g[1], g[2]) for g in self.generators}
        clean: dict[str, dict[str, Poly]] = {}
        for src, row in self.differential.items():
            if src not in index:
                raise StructureError(f"differential from unknown generator {src!r}")
            for tgt, p in row.items():
                if tgt not in index:
                    raise StructureError(f"differential {src}->{tgt}: unknown target {tgt!r}")
                if p:
                    clean.setdefault(src, {})[tgt] = p
        object.__setattr__(self, "differential", clean)
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_grading", grading)

    @property
    def ids(self) -> list[str]:
        return [g[0] for g in self.generators]

    def index(self, gen: str) -> int:
        return self._index[gen]  # type: ignore[attr-defined]

    def grading(self, gen: str) -> Grading:
        return self._grading[gen]  # type: ignore[attr-defined]

    def has(self, gen: str) -> bool:
        return gen in self._index  # type: ignore[attr-defined]

    def alexander(self, gen: str) -> int:
        gu, gv = self.grading(gen)
        return (gu - gv) // 2

    def __len__(self) -> int:
        return len(self.generators)

    def d(self, gen: str) -> Mapping[str, Poly]:
        return self.differential.get(gen, {})

    def renamed(self, name: str) -> "KnotComplex":
        return KnotComplex(name, self.generators, self.differential)


def trivial_complex(name: str = "trivial") -> KnotComplex:
    return KnotComplex(name, (("e", 0, 0),), {})


def direct_sum(name: str, *parts: KnotComplex) -> KnotComplex:
    gens: list[tuple[str, int, int]] = []
    diff: dict[str, dict[str, Poly]] = {}
    for c in parts:
        gens.extend(c.generators)
        for src, row in c.differential.items():
            diff[src] = dict(row)
    return KnotComplex(name, tuple(gens), diff)


def shift_complex(c: KnotComplex, a: int, b: int) -> KnotComplex:
    gens = tuple((g, gu + a, gv + b) for g, gu, gv in c.generators)
    return KnotComplex(c.name, gens, c.differential)


def _square_terms(c: KnotComplex) -> dict[str, dict[tuple[str, Monomial], int]]:
    out: dict[str, dict[tuple[str, Monomial], int]] = {}
    for x in c.ids:
        acc: dict[tuple[str, Monomial], int] = {}
        for y, p in c.d(x).items():
            for z, q in c.d(y).items():
                for m1 in p.terms:
                    for m2 in q.terms:
                        key = (z, m1 * m2)
                        acc[key] = acc.get(key, 0) ^ 1
        out[x] = {k: v for k, v in acc.items() if v}
    return out


def localized_rank(c: KnotComplex) -> int:
    """F2 homology rank of the complex after setting U = V = 1."""
    n = len(c)
    images = []
    for x in c.ids:
        vec = 0
        for y, p in c.d(x).items():
            if p.at_one():
                vec ^= 1 << c.index(y)
        images.append(vec)
    r = gf2.rank(images)
    return n - 2 * r


def validate_knot_complex(c: KnotComplex) -> ValidationReport:
    rep = ValidationReport(c.name)
    bad = [x for x, terms in _square_terms(c).items() if terms]
    rep.add("d_squared_zero", not bad, "offending: " + ",".join(bad) if bad else "")

    inhom = []
    for x, row in c.differential.items():
        gx = c.grading(x)
        for y, p in row.items():
            gy = c.grading(y)
            for m in p.terms:
                if (gy[0] - 2 * m.u_exp, gy[1] - 2 * m.v_exp) != (gx[0] - 1, gx[1] - 1):
                    inhom.append(f"{x}->{y}:{m}")
    rep.add("homogeneity", not inhom, "offending: " + ",".join(inhom) if inhom else "")

    odd = [g for g, gu, gv in c.generators if (gu - gv) % 2]
    rep.add(
        "parity",
        not odd,
        "gr_u - gr_v odd at: " + ",".join(odd) if odd else "",
        warning=bool(odd),
    )

    if len(c) == 0:
        rep.add("localization_rank_one", False, "empty complex has rank 0")
    elif bad:
        rep.add("localization_rank_one", False, "not evaluated: d^2 != 0")
    else:
        r = localized_rank(c)
        rep.add("localization_rank_one", r == 1, f"rank {r}" if r != 1 else "")
    return rep


# --- singly graded complexes over F2[U] ---------------------------------------


@dataclass(frozen=True, eq=False)
class UComplex:
    name: str
    generators: tuple[tuple[str, int], ...]
    differential: Mapping[str, Mapping[str, UPoly]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        index = {g: i for i, (g, _) in enumerate(self.generators)}
        if len(index) != len(self.generators):
            raise StructureError(f"duplicate generator id in {self.name}")
        clean: dict[str, dict[str, UPoly]] = {}
        for src, row in self.differential.items():
            if src not in index:
                raise StructureError(f"differential from unknown generator {src!r}")
            for tgt, p in row.items():
                if tgt not in index:
                    raise StructureError(f"differential {src}->{tgt}: unknown target {tgt!r}")
                if p:
                    clean.setdefault(src, {})[tgt] = p
        object.__setattr__(self, "differential", clean)
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_maslov", dict(self.generators))

    @property
    def ids(self) -> list[str]:
        return [g for g, _ in self.generators]

    def index(self, gen: str) -> int:
        return self._index[gen]  # type: ignore[attr-defined]

    def maslov(self, gen: str) -> int:
        return self._maslov[gen]  # type: ignore[attr-defined]

    def d(self, gen: str) -> Mapping[str, UPoly]:
        return self.differential.get(gen, {})

    def __len__(self) -> int:
        return len(self.generators)

    def as_bigraded(self) -> KnotComplex:
        """View as a complex over F2[U, V] supported on the diagonal (U = UV)."""
        gens = tuple((g, m, m) for g, m in self.generators)
        diff = {
            x: {y: Poly.from_terms((k, k) for k in p.terms) for y, p in row.items()}
            for x, row in self.differential.items()
        }
        return KnotComplex(self.name, gens, diff)


def validate_ucomplex(c: UComplex) -> ValidationReport:
    rep = ValidationReport(c.name)
    bad = []
    for x in c.ids:
        acc: dict[tuple[str, int], int] = {}
        for y, p in c.d(x).items():
            for z, q in c.d(y).items():
                for a in p.terms:
                    for b in q.terms:
                        acc[(z, a + b)] = acc.get((z, a + b), 0) ^ 1
        if any(acc.values()):
            bad.append(x)
    rep.add("d_squared_zero", not bad, ",".join(bad))
    inhom = [
        f"{x}->{y}"
        for x, row in c.differential.items()
        for y, p in row.items()
        for k in p.terms
        if c.maslov(y) - 2 * k != c.maslov(x) - 1
    ]
    rep.add("homogeneity", not inhom, ",".join(inhom))
    return rep


def forced_monomial(src: Grading, tgt: Grading) -> Monomial | None:
    """The monomial m with gr(m * tgt) == src, if one exists."""
    du, dv = tgt[0] - src[0], tgt[1] - src[1]
    if du < 0 or dv < 0 or du % 2 or dv % 2:
        return None
    return Monomial(du // 2, dv // 2)


def element_str(vec: Mapping[str, Poly], order: Iterable[str]) -> str:
    parts = []
    for g in order:
        p = vec.get(g)
        if p:
            parts.append(g if str(p) == "1" else f"({p}){g}")
    return " + ".join(parts) if parts else "0"
