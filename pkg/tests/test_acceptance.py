"""End-to-end acceptance checks; each prints a single pass/fail line.

Run directly (``python3 tests/test_acceptance.py``) for the summary alone.
"""

import itertools
import subprocess
import sys
import time
from pathlib import Path

import pytest

from kfh.complexes import validate_knot_complex
from kfh.equivariant import IOTA, TAU, dual_ti, local_equivalence, search_local_map, tensor_ti, trivial_ti, twist, verify_ti
from kfh.models import cfk_j, cn, fig8, knot_models, stevedore
from kfh.morphisms import LINEAR, compose, derive_phi, derive_psi, find_homotopy, identity, sarkar, zero_map
from kfh.surgery import build_cfi, a0, d_invariants, dinv_for, hat_homology, ideal_part, u_homology, v0_suite

ORACLE = Path(__file__).parent / "oracles" / "trefoil_cone.md"


def kfh(args, stdin=None):
    p = subprocess.run([sys.executable, "-m", "kfh", *args], input=stdin, capture_output=True, text=True)
    return p.returncode, p.stdout


def report(k: int, ok: bool, detail: str) -> None:
    # bypass capture so the line lands in the plain pytest log
    sys.__stdout__.write(f"\nacceptance {k}: {'pass' if ok else 'FAIL'} ({detail})\n")


def criterion_1():
    details, ok = [], True
    for n in (1, 3, 5):
        t0 = time.perf_counter()
        _, kfc = kfh(["model", "Bn", "--n", str(n)])
        code, out = kfh(["dinv", "--map", "tau"], stdin=kfc)
        dt = time.perf_counter() - t0
        want = f"d_lower_tau={-2 * n}\nd_upper_tau=0\n"
        good = code == 0 and out == want and dt < 1.0
        ok &= good
        details.append(f"n={n} {out.strip().replace(chr(10), ' ')} {dt:.2f}s")
    return ok, "; ".join(details)


def criterion_2():
    details, ok = [], True
    for n in (1, 3):
        t0 = time.perf_counter()
        code, out = kfh(["certify-kn", "--n", str(n)])
        dt = time.perf_counter() - t0
        lines = out.splitlines()
        needed = ["phi", "psi", "psi_dual", "wn_embedding", "psi_phi_vanishes_on_wn", "f", "g"]
        steps = {l.split(":")[0]: l for l in lines if ":" in l}
        passed = all(steps.get(s, "").startswith(f"{s}: pass") for s in needed)
        bound = f"bound: v0_lower_tau(K{n}) >= {n}" in lines
        good = code == 0 and passed and bound and (n != 3 or dt < 300)
        ok &= good
        details.append(f"n={n} bound>={n if bound else '?'} {dt:.2f}s")
    return ok, "; ".join(details)


def criterion_3():
    s, e = stevedore("sigma"), trivial_ti()
    v = v0_suite(s).v0_lower_iotatau
    sigma_pair = local_equivalence(s, e, (TAU,)).equivalent
    iota_pair = local_equivalence(s, e, (IOTA,)).equivalent
    joint = search_local_map(e, s, (TAU, IOTA))
    ok = v == 1 and sigma_pair and iota_pair and joint is None
    return ok, f"V0_lower_iotatau={v} sigma_pair_trivial={sigma_pair} iota_pair_trivial={iota_pair} joint_from_trivial={'none' if joint is None else 'found'}"


def criterion_4():
    want = {(-2, -1): 2, (-1, -1): 2, (-1, 0): 4, (0, 0): 5, (0, 1): 2, (1, 1): 2}
    h = hat_homology(cfk_j().complex)
    ideal = ideal_part(cfk_j().complex, (0, 0))
    ok = h == want and sum(h.values()) == 17 and not ideal
    return ok, f"total={sum(h.values())} ideal_part_at_(0,0)={len(ideal)}"


def criterion_5():
    text = ORACLE.read_text()
    documented = "(d_lower, d_upper) = (-2, -2)" in text and "free at -2 and -3" in text
    cone = build_cfi(a0(cn(1)))
    pres = u_homology(cone.ucomplex)
    snf = sorted(g for g, _ in pres.free) == [-3, -2] and not pres.torsion
    d = tuple(d_invariants(cone))
    dt = tuple(dinv_for(trivial_ti()))
    ok = documented and snf and d == (-2, -2) and dt == (0, 0)
    return ok, f"trefoil={d} trivial={dt} oracle_documented={documented}"


def criterion_6():
    t0 = time.perf_counter()
    models = knot_models(3)
    fails = []
    for name, t in models:
        c = t.complex
        phi, psi, s = derive_phi(c), derive_psi(c), sarkar(c)
        checks = {
            "d2": validate_knot_complex(c).verdict("d_squared_zero"),
            "sarkar2": find_homotopy(compose(s, s), identity(c)) is not None,
            "phi2": find_homotopy(compose(phi, phi), zero_map(c, c, LINEAR, (2, -2))) is not None,
            "psi2": find_homotopy(compose(psi, psi), zero_map(c, c, LINEAR, (-2, 2))) is not None,
            "phipsi": find_homotopy(compose(phi, psi) + compose(psi, phi), zero_map(c, c)) is not None,
            "verify_ti": verify_ti(t, require_iota=t.iota is not None).ok,
            "twist": v0_suite(twist(t, "both")).items() == v0_suite(t).items(),
        }
        s0 = v0_suite(t)
        checks["upper<=lower"] = s0.v0_upper_tau <= s0.v0_lower_tau
        fails += [f"{name}:{k}" for k, v in checks.items() if not v]
    small = [(n, t) for n, t in models if len(t.complex) <= 9]
    for (na, a), (nb, b) in itertools.combinations_with_replacement(small, 2):
        if not verify_ti(tensor_ti(a, b)).ok:
            fails.append(f"tensor:{na}*{nb}")
    for mk in (trivial_ti, fig8, stevedore):
        t = mk()
        if not local_equivalence(tensor_ti(t, dual_ti(t)), trivial_ti(), (TAU, IOTA)).equivalent:
            fails.append(f"inverse:{t.name}")
    for (na, a), (nb, b) in itertools.permutations(small, 2):
        if search_local_map(a, b, (TAU,)) is not None:
            da, db = dinv_for(a), dinv_for(b)
            if not (da.d_lower <= db.d_lower and da.d_upper <= db.d_upper):
                fails.append(f"monotone:{na}->{nb}")
    dt = time.perf_counter() - t0
    return not fails, f"{len(models)} models, {dt:.1f}s" + (f", failures: {fails}" if fails else "")


def criterion_7():
    with_input = kfh(["model", "stevedore", "--action", "sigma"])[1]
    runs = [
        (["model", "Bn", "--n", "3"], None),
        (["v0"], with_input),
        (["certify-kn", "--n", "1", "--json"], None),
        (["a0", "--json"], with_input),
    ]
    ok = True
    for args, stdin in runs:
        first, second = kfh(args, stdin), kfh(args, stdin)
        ok &= first == second and first[0] in (0, 1)
    return ok, f"{len(runs)} commands byte-identical across two runs (full matrix in test_cli)"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7]


@pytest.mark.parametrize("k", range(1, 8))
def test_criterion(k):
    ok, detail = CRITERIA[k - 1]()
    report(k, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for k, fn in enumerate(CRITERIA, 1):
        ok, detail = fn()
        print(f"acceptance {k}: {'pass' if ok else 'FAIL'} ({detail})")
        failed += not ok
    sys.exit(1 if failed else 0)
