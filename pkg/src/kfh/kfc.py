"""Reading and writing the line-oriented KFC text format.

A document is a sequence of blocks.  ``complex <name>`` opens a complex that
collects the following ``generator``/``d`` lines (or ``ugenerator``/``ud`` for
a complex over F2[U]).  ``map <name> <linear|skew> <su> <sv> <src> <tgt>``
opens a map that collects ``entry`` lines.  ``#`` starts a comment.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .complexes import KnotComplex, StructureError, UComplex
from .equivariant import IOTA, PERIODIC, STRONG, TAU, TauIotaComplex
from .morphisms import LINEAR, SKEW, ModuleMap
from .ring import Poly, UPoly, parse_poly, parse_upoly


class KfcError(ValueError):
    def __init__(self, line: int, message: str, source: str = "<input>") -> None:
        super().__init__(f"{source}:{line}: {message}")
        self.line = line


@dataclass
class _MapDraft:
    name: str
    variance: str
    shift: tuple[int, int]
    src: str
    tgt: str
    line: int
    entries: list[tuple[str, str, str, int]] = field(default_factory=list)


@dataclass
class KfcDocument:
    complexes: dict[str, KnotComplex] = field(default_factory=dict)
    ucomplexes: dict[str, UComplex] = field(default_factory=dict)
    maps: list[ModuleMap] = field(default_factory=list)
    umaps: list[tuple[str, str, dict[str, dict[str, UPoly]]]] = field(default_factory=list)

    def complex(self, name: str | None = None) -> KnotComplex:
        if not self.complexes:
            raise StructureError("input holds no complex over F2[U, V]")
        if name is None:
            return next(iter(self.complexes.values()))
        if name not in self.complexes:
            raise StructureError(f"no complex named {name!r}")
        return self.complexes[name]

    def map(self, name: str, on: str | None = None) -> ModuleMap | None:
        for m in self.maps:
            if m.name == name and (on is None or m.source.name == on):
                return m
        return None

    def ti(self, name: str | None = None) -> TauIotaComplex:
        """The complex with its ``tau`` (and optional ``iota``) self-maps.

        A skew tau means the strong flavor; a linear one the periodic flavor.
        """
        c = self.complex(name)
        tau = self.map(TAU, c.name)
        iota = self.map(IOTA, c.name)
        if tau is None:
            raise StructureError(f"complex {c.name!r} carries no map named tau")
        for m in (tau, iota):
            if m is not None and m.target is not c:
                raise StructureError(f"{m.name} must map {c.name} to itself")
        flavor = STRONG if tau.variance == SKEW else PERIODIC
        return TauIotaComplex(c, tau, iota, flavor)


def _int(tok: str, line: int, what: str, source: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise KfcError(line, f"{what} must be an integer, got {tok!r}", source) from None


def parse_kfc(text: str, source: str = "<input>") -> KfcDocument:
    doc = KfcDocument()
    blocks: list[dict] = []
    drafts: list[_MapDraft] = []
    cur: dict | None = None
    cur_map: _MapDraft | None = None

    def need(n: int, toks: list[str], lineno: int) -> None:
        if len(toks) != n:
            raise KfcError(lineno, f"'{toks[0]}' takes {n - 1} fields, got {len(toks) - 1}", source)

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        kw = toks[0]
        if kw == "complex":
            need(2, toks, lineno)
            cur = {"name": toks[1], "line": lineno, "gens": [], "ugens": [], "d": [], "ud": []}
            blocks.append(cur)
            cur_map = None
        elif kw in ("generator", "ugenerator", "d", "ud"):
            if cur is None or cur_map is not None:
                raise KfcError(lineno, f"'{kw}' outside a complex block", source)
            if kw == "generator":
                need(4, toks, lineno)
                cur["gens"].append((toks[1], _int(toks[2], lineno, "gr_u", source), _int(toks[3], lineno, "gr_v", source), lineno))
            elif kw == "ugenerator":
                need(3, toks, lineno)
                cur["ugens"].append((toks[1], _int(toks[2], lineno, "maslov", source), lineno))
            else:
                need(4, toks, lineno)
                cur[kw].append((toks[1], toks[2], toks[3], lineno))
        elif kw == "map":
            need(7, toks, lineno)
            if toks[2] not in (LINEAR, SKEW):
                raise KfcError(lineno, f"variance must be linear or skew, got {toks[2]!r}", source)
            shift = (_int(toks[3], lineno, "shift", source), _int(toks[4], lineno, "shift", source))
            cur_map = _MapDraft(toks[1], toks[2], shift, toks[5], toks[6], lineno)
            drafts.append(cur_map)
            cur = None
        elif kw == "entry":
            if cur_map is None:
                raise KfcError(lineno, "'entry' outside a map block", source)
            need(4, toks, lineno)
            cur_map.entries.append((toks[1], toks[2], toks[3], lineno))
        else:
            raise KfcError(lineno, f"unknown statement {kw!r}", source)

    for b in blocks:
        name = b["name"]
        if name in doc.complexes or name in doc.ucomplexes:
            raise KfcError(b["line"], f"duplicate complex name {name!r}", source)
        if b["ugens"] or b["ud"]:
            if b["gens"] or b["d"]:
                raise KfcError(b["line"], "complex mixes bigraded and singly graded statements", source)
            doc.ucomplexes[name] = _build_u(b, source)
        else:
            doc.complexes[name] = _build(b, source)

    for m in drafts:
        if m.src in doc.complexes and m.tgt in doc.complexes:
            src, tgt = doc.complexes[m.src], doc.complexes[m.tgt]
            entries: dict[str, dict[str, Poly]] = {}
            for a, b, p, ln in m.entries:
                _known(src, a, ln, source)
                _known(tgt, b, ln, source)
                row = entries.setdefault(a, {})
                row[b] = row.get(b, Poly()) + _poly(p, ln, source)
            doc.maps.append(ModuleMap(src, tgt, m.variance, m.shift, entries, m.name))
        elif m.src in doc.ucomplexes and m.tgt in doc.ucomplexes:
            uentries: dict[str, dict[str, UPoly]] = {}
            for a, b, p, ln in m.entries:
                try:
                    q = parse_upoly(p)
                except ValueError as exc:
                    raise KfcError(ln, str(exc), source) from None
                row = uentries.setdefault(a, {})
                row[b] = row.get(b, UPoly()) + q
            doc.umaps.append((m.name, m.src, uentries))
        else:
            missing = m.src if m.src not in doc.complexes and m.src not in doc.ucomplexes else m.tgt
            raise KfcError(m.line, f"map {m.name!r} refers to undeclared complex {missing!r}", source)
    return doc


def _poly(text: str, line: int, source: str) -> Poly:
    try:
        return parse_poly(text)
    except (ValueError, OverflowError) as exc:
        raise KfcError(line, str(exc), source) from None


def _known(c: KnotComplex, gen: str, line: int, source: str) -> None:
    if not c.has(gen):
        raise KfcError(line, f"undeclared generator {gen!r} in complex {c.name!r}", source)


def _build(b: dict, source: str) -> KnotComplex:
    seen: set[str] = set()
    gens = []
    for g, gu, gv, ln in b["gens"]:
        if g in seen:
            raise KfcError(ln, f"duplicate generator {g!r}", source)
        seen.add(g)
        gens.append((g, gu, gv))
    diff: dict[str, dict[str, Poly]] = {}
    for a, t, p, ln in b["d"]:
        for g in (a, t):
            if g not in seen:
                raise KfcError(ln, f"undeclared generator {g!r} in complex {b['name']!r}", source)
        row = diff.setdefault(a, {})
        row[t] = row.get(t, Poly()) + _poly(p, ln, source)
    return KnotComplex(b["name"], tuple(gens), diff)


def _build_u(b: dict, source: str) -> UComplex:
    seen: set[str] = set()
    gens = []
    for g, m, ln in b["ugens"]:
        if g in seen:
            raise KfcError(ln, f"duplicate generator {g!r}", source)
        seen.add(g)
        gens.append((g, m))
    diff: dict[str, dict[str, UPoly]] = {}
    for a, t, p, ln in b["ud"]:
        for g in (a, t):
            if g not in seen:
                raise KfcError(ln, f"undeclared generator {g!r} in complex {b['name']!r}", source)
        try:
            q = parse_upoly(p)
        except ValueError as exc:
            raise KfcError(ln, str(exc), source) from None
        row = diff.setdefault(a, {})
        row[t] = row.get(t, UPoly()) + q
    return UComplex(b["name"], tuple(gens), diff)


# --- writing -------------------------------------------------------------------------


def complex_lines(c: KnotComplex) -> list[str]:
    out = [f"complex {c.name}"]
    out += [f"generator {g} {gu} {gv}" for g, gu, gv in c.generators]
    for x in c.ids:
        row = c.d(x)
        for y in c.ids:
            if y in row:
                out.append(f"d {x} {y} {row[y]}")
    return out


def ucomplex_lines(c: UComplex) -> list[str]:
    out = [f"complex {c.name}"]
    out += [f"ugenerator {g} {m}" for g, m in c.generators]
    for x in c.ids:
        row = c.d(x)
        for y in c.ids:
            if y in row:
                out.append(f"ud {x} {y} {row[y]}")
    return out


def map_lines(m: ModuleMap, name: str | None = None) -> list[str]:
    su, sv = m.shift
    out = [f"map {name or m.name} {m.variance} {su} {sv} {m.source.name} {m.target.name}"]
    tids = m.target.ids
    for x in m.source.ids:
        row = m.image(x)
        for y in tids:
            if y in row and row[y]:
                out.append(f"entry {x} {y} {row[y]}")
    return out


def umap_lines(name: str, c: UComplex, entries) -> list[str]:
    out = [f"map {name} linear 0 0 {c.name} {c.name}"]
    for x in c.ids:
        row = entries.get(x, {})
        for y in c.ids:
            if y in row and row[y]:
                out.append(f"entry {x} {y} {row[y]}")
    return out


def ti_lines(t: TauIotaComplex) -> list[str]:
    out = complex_lines(t.complex)
    out += map_lines(t.tau, TAU)
    if t.iota is not None:
        out += map_lines(t.iota, IOTA)
    return out


def serialize_kfc(objects: Iterable) -> str:
    """Canonical text: generator order as given, rows and entries in generator order."""
    lines: list[str] = []
    for obj in objects:
        if isinstance(obj, TauIotaComplex):
            lines += ti_lines(obj)
        elif isinstance(obj, KnotComplex):
            lines += complex_lines(obj)
        elif isinstance(obj, UComplex):
            lines += ucomplex_lines(obj)
        elif isinstance(obj, ModuleMap):
            lines += map_lines(obj)
        else:
            raise TypeError(f"cannot serialize {type(obj).__name__}")
    return "\n".join(lines) + "\n"


# --- JSON-friendly views ------------------------------------------------------------------


def complex_record(c: KnotComplex) -> dict:
    return {
        "type": "complex",
        "name": c.name,
        "generators": [[g, gu, gv] for g, gu, gv in c.generators],
        "differential": [
            [x, y, str(c.d(x)[y])] for x in c.ids for y in c.ids if y in c.d(x)
        ],
    }


def ucomplex_record(c: UComplex) -> dict:
    return {
        "type": "ucomplex",
        "name": c.name,
        "generators": [[g, m] for g, m in c.generators],
        "differential": [
            [x, y, str(c.d(x)[y])] for x in c.ids for y in c.ids if y in c.d(x)
        ],
    }


def map_record(m: ModuleMap, name: str | None = None) -> dict:
    return {
        "type": "map",
        "name": name or m.name,
        "variance": m.variance,
        "shift": list(m.shift),
        "source": m.source.name,
        "target": m.target.name,
        "entries": [
            [x, y, str(m.image(x)[y])]
            for x in m.source.ids
            for y in m.target.ids
            if y in m.image(x) and m.image(x)[y]
        ],
    }


def umap_record(name: str, c: UComplex, entries) -> dict:
    return {
        "type": "map",
        "name": name,
        "variance": LINEAR,
        "shift": [0, 0],
        "source": c.name,
        "target": c.name,
        "entries": [
            [x, y, str(entries[x][y])]
            for x in c.ids
            for y in c.ids
            if x in entries and y in entries[x] and entries[x][y]
        ],
    }


def ti_records(t: TauIotaComplex) -> list[dict]:
    out = [complex_record(t.complex), map_record(t.tau, TAU)]
    if t.iota is not None:
        out.append(map_record(t.iota, IOTA))
    return out
