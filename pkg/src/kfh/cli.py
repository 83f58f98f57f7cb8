"""Command-line front end.

Exit status: 0 success, 1 a verified negative answer (failed check, no map,
not homotopic), 2 unusable input.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Callable

from . import gf2
from .complexes import StructureError, ValidationReport, validate_knot_complex
from .equivariant import (
    IOTA,
    TAU,
    LocalMapCertificate,
    MissingAction,
    dual_ti,
    local_equivalence,
    search_local_map,
    swap_involution,
    tensor_ti,
    verify_ti,
)
from .kfc import (
    KfcDocument,
    KfcError,
    map_lines,
    map_record,
    parse_kfc,
    ti_lines,
    ti_records,
    ucomplex_lines,
    ucomplex_record,
    umap_lines,
    umap_record,
)
from .models import FAMILIES, ModelError, certify_kn, model
from .morphisms import SignatureError, derive_phi, derive_psi, find_homotopy, sarkar
from .ring import UPoly
from .surgery import (
    INFINITE,
    DataError,
    a0,
    build_cfi,
    d_invariants,
    hat_homology,
    relative_v0,
    u_homology,
    v0_suite,
)

OK, NEGATIVE, INPUT_ERROR = 0, 1, 2


class InputError(ValueError):
    pass


class Output:
    """Buffers text lines or JSON records so a run prints in one ordered write."""

    def __init__(self, as_json: bool) -> None:
        self.as_json = as_json
        self.lines: list[str] = []

    def kv(self, key: str, value) -> None:
        if self.as_json:
            self.record({"key": key, "value": value})
        else:
            self.lines.append(f"{key}={value}")

    def record(self, rec: dict) -> None:
        self.lines.append(json.dumps(rec, sort_keys=True))

    def text(self, lines: list[str], records: list[dict]) -> None:
        if self.as_json:
            for r in records:
                self.record(r)
        else:
            self.lines.extend(lines)

    def report(self, rep: ValidationReport) -> None:
        if self.as_json:
            for c in rep.checks:
                status = "pass" if c.passed else ("warn" if c.warning else "fail")
                self.record({"subject": rep.subject, "check": c.name, "status": status, "detail": c.detail})
        else:
            self.lines.append(f"# {rep.subject}")
            self.lines.extend(rep.lines())

    def flush(self, stream) -> None:
        if self.lines:
            stream.write("\n".join(self.lines) + "\n")


# --- input ---------------------------------------------------------------------------------


def _read(path: str | None) -> tuple[str, str]:
    if path is None or path == "-":
        return sys.stdin.read(), "<stdin>"
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read(), path
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def load(path: str | None) -> KfcDocument:
    text, src = _read(path)
    return parse_kfc(text, src)


def load_ti(path: str | None, check: bool = True):
    t = load(path).ti()
    if check:
        rep = validate_knot_complex(t.complex)
        if not rep.ok:
            bad = ", ".join(c.name for c in rep.failures)
            raise InputError(f"complex {t.complex.name} fails validation: {bad}")
    return t


def load_complex(path: str | None):
    c = load(path).complex()
    rep = validate_knot_complex(c)
    if not rep.ok:
        raise InputError(f"complex {c.name} fails validation: " + ", ".join(x.name for x in rep.failures))
    return c


def _respect(text: str) -> tuple[str, ...]:
    parts = tuple(p.strip() for p in text.split(",") if p.strip())
    if not parts or any(p not in (TAU, IOTA) for p in parts):
        raise InputError(f"--respect takes tau, iota or tau,iota; got {text!r}")
    return parts


_ELEM_TERM = re.compile(r"^(?:U(\d+)\*)?(\S+)$")


def parse_element(text: str) -> dict[str, UPoly]:
    """``U2*x0+y1`` style element of a complex over F2[U]."""
    out: dict[str, UPoly] = {}
    for tok in text.split("+"):
        tok = tok.strip()
        m = _ELEM_TERM.match(tok)
        if not tok or not m:
            raise InputError(f"bad element term {tok!r}")
        k = int(m.group(1) or 0)
        out[m.group(2)] = out.get(m.group(2), UPoly()) + UPoly.power(k)
    return {g: p for g, p in out.items() if p}


# --- subcommands ---------------------------------------------------------------------------


def cmd_validate(a, out: Output) -> int:
    doc = load(a.input)
    ok = True
    for c in doc.complexes.values():
        if doc.map(TAU, c.name) is not None:
            rep = verify_ti(doc.ti(c.name), require_iota=a.require_iota)
        else:
            rep = validate_knot_complex(c)
        out.report(rep)
        ok &= rep.ok
    if not doc.complexes:
        raise InputError("input holds no complex")
    return OK if ok else NEGATIVE


def _emit_map(out: Output, m, name=None) -> None:
    out.text(map_lines(m, name), [map_record(m, name)])


def cmd_phi(a, out: Output) -> int:
    _emit_map(out, derive_phi(load_complex(a.input)), "Phi")
    return OK


def cmd_psi(a, out: Output) -> int:
    _emit_map(out, derive_psi(load_complex(a.input)), "Psi")
    return OK


def cmd_sarkar(a, out: Output) -> int:
    _emit_map(out, sarkar(load_complex(a.input)), "sarkar")
    return OK


def cmd_homotopic(a, out: Output) -> int:
    doc = load(a.input)
    f, g = doc.map(a.f), doc.map(a.g)
    for name, m in ((a.f, f), (a.g, g)):
        if m is None:
            raise InputError(f"no map named {name!r}")
    try:
        h = find_homotopy(f, g)
    except SignatureError as exc:
        raise InputError(str(exc)) from None
    out.kv("homotopic", "yes" if h is not None else "no")
    if h is None:
        return NEGATIVE
    _emit_map(out, h, "H")
    return OK


def _emit_ti(out: Output, t) -> None:
    out.text(ti_lines(t), ti_records(t))


def cmd_tensor(a, out: Output) -> int:
    _emit_ti(out, tensor_ti(load_ti(a.left), load_ti(a.right), a.iota_variant))
    return OK


def cmd_dual(a, out: Output) -> int:
    _emit_ti(out, dual_ti(load_ti(a.input)))
    return OK


def cmd_swap(a, out: Output) -> int:
    t = load_ti(a.input)
    _emit_ti(out, swap_involution(t.complex, t.tau, t.iota))
    return OK


_ENDOS = ("tau", "iotatau", "sarkar")


def cmd_a0(a, out: Output) -> int:
    z = a0(load_ti(a.input))
    uc = z.ucomplex
    lines = ucomplex_lines(uc)
    recs = [ucomplex_record(uc)]
    for name in _ENDOS:
        if name in z.endomorphisms:
            lines += umap_lines(name, uc, z.endomorphisms[name])
            recs.append(umap_record(name, uc, z.endomorphisms[name]))
    pres = u_homology(uc)
    lines += [f"# homology {s}" for s in pres.lines()]
    recs += [{"type": "homology", "summand": s} for s in pres.lines()]
    out.text(lines, recs)
    return OK


def cmd_cfi(a, out: Output) -> int:
    t = load_ti(a.input)
    if a.map == "iotatau" and t.iota is None:
        raise InputError("--map iotatau needs a complex carrying iota")
    cone = build_cfi(a0(t), a.map)
    out.text(ucomplex_lines(cone.ucomplex), [ucomplex_record(cone.ucomplex)])
    return OK


def _maps_for(t, choice: str | None) -> list[str]:
    if choice is None:
        return ["tau"] + (["iotatau"] if t.iota is not None else [])
    if choice == "iotatau" and t.iota is None:
        raise InputError("--map iotatau needs a complex carrying iota")
    return [choice]


def cmd_dinv(a, out: Output) -> int:
    t = load_ti(a.input)
    z = a0(t)
    for m in _maps_for(t, a.map):
        d = d_invariants(build_cfi(z, m), a.q_image)
        out.kv(f"d_lower_{m}", d.d_lower)
        out.kv(f"d_upper_{m}", d.d_upper)
    return OK


def cmd_v0(a, out: Output) -> int:
    for k, v in v0_suite(load_ti(a.input)).items():
        out.kv(k, v)
    return OK


def cmd_relative_v0(a, out: Output) -> int:
    z = a0(load_ti(a.input))
    x, y = parse_element(a.x), parse_element(a.y)
    for g in list(x) + list(y):
        if g not in z.ucomplex.ids:
            raise InputError(f"unknown generator {g!r}")
    n = relative_v0(z, x, y)
    out.kv("relative_v0", "inf" if n == INFINITE else n)
    return OK if n != INFINITE else NEGATIVE


def cmd_hat(a, out: Output) -> int:
    ranks = hat_homology(load_complex(a.input))
    for (m, al), r in ranks.items():
        if out.as_json:
            out.record({"alexander": al, "maslov": m, "rank": r})
        else:
            out.lines.append(f"A={al} M={m} rank={r}")
    out.kv("total", sum(ranks.values()))
    return OK


def _emit_cert(out: Output, label: str, cert: LocalMapCertificate | None) -> None:
    if cert is None:
        out.kv(label, "none")
        return
    out.kv(label, "found")
    out.kv(f"{label}_solution_dimension", cert.solution_dimension)
    _emit_map(out, cert.f, f"{label}_f")
    for w in cert.respect:
        h = cert.homotopies.get(w)
        if h is not None:
            _emit_map(out, h, f"{label}_H_{w}")


def cmd_localmap(a, out: Output) -> int:
    src, dst = load_ti(a.source), load_ti(a.target)
    cert = search_local_map(src, dst, _respect(a.respect))
    _emit_cert(out, "local_map", cert)
    return OK if cert is not None else NEGATIVE


def cmd_localequiv(a, out: Output) -> int:
    v = local_equivalence(load_ti(a.left), load_ti(a.right), _respect(a.respect))
    out.kv("verdict", v.kind)
    _emit_cert(out, "forward", v.forward)
    _emit_cert(out, "backward", v.backward)
    return OK if v.equivalent else NEGATIVE


def cmd_model(a, out: Output) -> int:
    _emit_ti(out, model(a.family, a.n, a.action))
    return OK


def cmd_certify_kn(a, out: Output) -> int:
    rep = certify_kn(a.n, direct_search=not a.no_search)
    if out.as_json:
        out.record({"n": rep.n})
        for name, ok, info in rep.steps:
            out.record({"step": name, "status": "pass" if ok else "fail", "detail": info})
        out.record(
            {
                "v0_lower_tau_bn": rep.v0_lower_tau_bn,
                "v0_upper_tau_bn": rep.v0_upper_tau_bn,
                "bound": rep.bound,
            }
        )
    else:
        out.lines.extend(rep.lines())
    return OK if rep.ok else NEGATIVE


# --- parser --------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON lines")
    p = argparse.ArgumentParser(prog="kfh", description="Equivariant knot Floer complexes", parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, fn: Callable, help: str, inputs=("input",)) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help, parents=[common])
        for inp in inputs:
            nargs = "?" if len(inputs) == 1 else None
            sp.add_argument(inp, nargs=nargs, help="KFC file ('-' or omitted: stdin)")
        sp.set_defaults(fn=fn)
        return sp

    sp = add("validate", cmd_validate, "check complex and action axioms")
    sp.add_argument("--require-iota", action="store_true")
    add("phi", cmd_phi, "formal U-derivative of the differential")
    add("psi", cmd_psi, "formal V-derivative of the differential")
    add("sarkar", cmd_sarkar, "id + Phi Psi")
    sp = add("homotopic", cmd_homotopic, "decide whether two maps in the file are homotopic")
    sp.add_argument("--f", required=True)
    sp.add_argument("--g", required=True)
    sp = add("tensor", cmd_tensor, "tensor product", ("left", "right"))
    sp.add_argument("--iota-variant", choices=("A", "B"), default="A")
    add("dual", cmd_dual, "dual complex with transposed actions")
    add("swap-involution", cmd_swap, "C (x) C with the factor-swapping involution built from tau")
    add("a0", cmd_a0, "Alexander-grading-zero subcomplex and its homology")
    sp = add("cfi", cmd_cfi, "mapping cone of Q(1 + m) on A0")
    sp.add_argument("--map", choices=("tau", "iotatau"), default="tau")
    sp = add("dinv", cmd_dinv, "d-invariants of the cone")
    sp.add_argument("--map", choices=("tau", "iotatau"), default=None)
    sp.add_argument("--q-image", choices=("homology", "subcomplex"), default="homology")
    add("v0", cmd_v0, "the V0 invariants")
    sp = add("relative-v0", cmd_relative_v0, "least n with U^n x ~ U^n y in A0")
    sp.add_argument("--x", required=True)
    sp.add_argument("--y", required=True)
    add("hat-ranks", cmd_hat, "ranks of H(C/(U,V)) by Alexander and Maslov grading")
    sp = add("localmap", cmd_localmap, "search for a local map", ("source", "target"))
    sp.add_argument("--respect", default="tau")
    sp = add("localequiv", cmd_localequiv, "search both directions", ("left", "right"))
    sp.add_argument("--respect", default="tau")
    sp = sub.add_parser("model", help="emit a bundled model", parents=[common])
    sp.add_argument("family", choices=FAMILIES)
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--action", choices=("tau", "sigma"), default=None)
    sp.set_defaults(fn=cmd_model)
    sp = sub.add_parser("certify-kn", help="verify the local maps bounding V0 for K_n", parents=[common])
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--no-search", action="store_true", help="skip the direct E_n (x) D_n^ vs B_n search")
    sp.set_defaults(fn=cmd_certify_kn)
    return p


_INPUT_ERRORS = (
    InputError,
    KfcError,
    StructureError,
    ModelError,
    MissingAction,
    DataError,
    SignatureError,
    gf2.SystemTooLarge,
)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    out = Output(args.json)
    try:
        code = args.fn(args, out)
    except _INPUT_ERRORS as exc:
        out.flush(sys.stdout)
        sys.stderr.write(f"kfh: error: {exc}\n")
        return INPUT_ERROR
    out.flush(sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
