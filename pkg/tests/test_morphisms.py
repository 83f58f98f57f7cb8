import pytest
from hypothesis import given
from hypothesis import strategies as st

from kfh.complexes import trivial_complex
from kfh.models import bn, cn, en, fig8, knot_models
from kfh.morphisms import (
    LINEAR,
    SKEW,
    LinearProblem,
    ModuleMap,
    SignatureError,
    compose,
    conjugation_map,
    derive_phi,
    derive_psi,
    differential_map,
    find_homotopy,
    homotopic,
    identity,
    is_chain_map,
    sarkar,
    solve_chain_maps,
    verify_homotopy,
    zero_map,
)
from kfh.ring import Poly

C1 = cn(1).complex
SMALL = [t for name, t in knot_models(1)]


def images(m, x):
    return {y: str(p) for y, p in m.image(x).items()}


def test_phi_psi_on_trefoil():
    phi, psi = derive_phi(C1), derive_psi(C1)
    assert images(phi, "x0") == {"y1": "1"}
    assert images(phi, "y1") == {} and images(phi, "y-1") == {}
    assert images(psi, "x0") == {"y-1": "1"}
    assert phi.shift == (1, -1) and psi.shift == (-1, 1)


def test_trivial_derivatives_vanish():
    c = trivial_complex()
    assert derive_phi(c).is_zero() and derive_psi(c).is_zero()


@pytest.mark.parametrize("n", [1, 3])
def test_psi_on_box(n):
    psi = derive_psi(bn(n).complex)
    v = "1" if n == 1 else f"U0V{n - 1}"
    assert images(psi, "r0") == {"r-1": v}
    assert images(psi, "r1") == {"t": v}
    assert all(not psi.image(x) for x in ("v", "r-1", "t"))


def test_even_exponents_kill_phi():
    c = cn(1).complex
    doubled = type(c)(
        "even",
        (("y-1", -4, 0), ("x0", -3, -1), ("y1", 0, -4)),
        {"x0": {"y-1": Poly.monomial(0, 1), "y1": Poly.monomial(2, 0)}},
    )
    assert derive_phi(doubled).is_zero()


@pytest.mark.parametrize("t", SMALL, ids=lambda t: t.name)
def test_phi_psi_are_chain_maps(t):
    assert is_chain_map(derive_phi(t.complex))
    assert is_chain_map(derive_psi(t.complex))


def test_sarkar_examples():
    c = trivial_complex()
    assert sarkar(c).equals(identity(c))
    assert sarkar(C1).equals(identity(C1))


def test_compose_identities():
    phi = derive_phi(C1)
    assert compose(identity(C1), phi).equals(phi)
    assert compose(phi, identity(C1)).equals(phi)
    s = conjugation_map(trivial_complex())
    ss = compose(s, s)
    assert ss.variance == LINEAR and ss.equals(identity(trivial_complex()))


def test_compose_conjugates_through_skew():
    t = cn(1)
    tau = t.tau
    d = differential_map(t.complex)
    # tau is skew: tau(V y-1 + U y1) = U y1 + V y-1
    lhs = compose(tau, d)
    assert {y: str(p) for y, p in lhs.image("x0").items()} == {"y1": "U1V0", "y-1": "U0V1"}


def test_chain_map_examples():
    assert is_chain_map(identity(C1))
    bad = ModuleMap(C1, C1, LINEAR, (-1, 1), {"y1": {"x0": Poly.monomial()}})
    assert not bad.homogeneity_errors()
    assert not is_chain_map(bad)


def test_homogeneity_checked_at_construction():
    wrong = ModuleMap(C1, C1, LINEAR, (0, 0), {"y1": {"x0": Poly.monomial()}})
    assert wrong.homogeneity_errors()


def test_find_homotopy_trivial_case():
    h = find_homotopy(derive_phi(C1), derive_phi(C1))
    assert h is not None and h.is_zero()


@pytest.mark.parametrize("n", [1, 3])
def test_sarkar_squares_to_identity_on_box(n):
    c = bn(n).complex
    s = sarkar(c)
    h = find_homotopy(compose(s, s), identity(c))
    assert h is not None
    assert verify_homotopy(compose(s, s), identity(c), h)


@pytest.mark.parametrize("n", [1, 3])
def test_phi_squared_nullhomotopic(n):
    c = en(n).complex
    phi = derive_phi(c)
    assert homotopic(compose(phi, phi), zero_map(c, c, LINEAR, (2, -2)))


def test_mismatched_signatures_rejected():
    with pytest.raises(SignatureError):
        find_homotopy(derive_phi(C1), derive_psi(C1))


def test_identity_is_not_nullhomotopic():
    assert find_homotopy(identity(C1), zero_map(C1, C1)) is None


def test_solution_space_examples():
    e = trivial_complex()
    s = solve_chain_maps(e, e)
    assert s.dimension == 1
    assert (s.particular + s.basis[0]).equals(identity(e)) or s.basis[0].equals(identity(e))
    s = solve_chain_maps(e, C1)
    assert s.dimension == 0 and s.particular.is_zero()
    s = solve_chain_maps(C1, e)
    assert s.dimension >= 1
    assert all(is_chain_map(b) for b in s.basis)


@given(st.integers(min_value=0, max_value=2**12 - 1))
def test_random_chain_maps(bits):
    c = fig8().complex
    space = solve_chain_maps(c, c, SKEW)
    m = space.particular
    for i, b in enumerate(space.basis):
        if (bits >> i) & 1:
            m = m + b
    assert is_chain_map(m)


def _random_homotopy(c, shift, bits):
    prob = LinearProblem()
    u = prob.unknown_map("h", c, c, LINEAR, shift)
    return u.realize(bits << u.offset, "h")


@given(st.integers(min_value=0, max_value=2**20), st.integers(min_value=0, max_value=2**20))
def test_homotopy_is_transitive(b1, b2):
    c = fig8().complex
    f = identity(c)
    d = differential_map(c)

    def bump(m, bits):
        h = _random_homotopy(c, (1, 1), bits)
        return m + compose(d, h) + compose(h, d)

    g = bump(f, b1)
    k = bump(g, b2)
    h1, h2 = find_homotopy(f, g), find_homotopy(g, k)
    assert h1 is not None and h2 is not None
    assert verify_homotopy(f, k, h1 + h2)
    assert find_homotopy(f, k) is not None
