import pytest

from kfh.complexes import validate_knot_complex
from kfh.equivariant import localized_cycle, verify_ti
from kfh.models import (
    ModelError,
    StaircaseSpec,
    bn,
    certify_kn,
    cfk_j,
    cn,
    cn_spec,
    dn,
    embed_phi_n,
    embed_psi_n,
    embed_wn,
    en,
    knot_models,
    maps_f_g,
    model,
    sn,
    skew_involution_probe,
    staircase,
    wn_element,
    yn_staircase_element,
)


def gu(c, g):
    return c.grading(g)[0]


def tri(k):
    return k * (k + 1) // 2


def test_c1_is_the_trefoil():
    c = cn(1).complex
    assert c.generators == (("y-1", -2, 0), ("x0", -1, -1), ("y1", 0, -2))
    assert cn_spec(1).steps == (1, 1)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_staircase_gradings_closed_form(n):
    c = cn(n).complex
    assert len(c) == 4 * n - 1
    for i in range(2 * n):
        assert gu(c, f"y{2 * n - 1 - 2 * i}") == -2 * tri(i)
    assert c.grading(f"y{-2 * n + 1}")[1] == 0


def test_c3_values():
    c = cn(3).complex
    assert len(c) == 11
    assert [gu(c, g) for g in ("y5", "y3", "y1")] == [0, -2, -6]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_d_gradings_closed_form(n):
    c = dn(n).complex
    for i in range(4 * n - 1):
        g = gu(c, f"z{4 * n - 2 - 2 * i}")
        if i % 2 == 0:
            assert g == -4 * tri(i // 2)
        else:
            assert g == -4 * tri((i - 1) // 2) - (i + 1)
    assert c.grading(f"z{-4 * n + 2}")[1] == 0


def test_asymmetric_staircase_has_no_reflection():
    spec = StaircaseSpec("S", (1, 2), ("a", "b"), ("m",))
    with pytest.raises(ModelError):
        staircase(spec)
    assert validate_knot_complex(staircase(spec, with_tau=False).complex).ok


def test_bad_staircase_shape():
    with pytest.raises(ModelError):
        StaircaseSpec("S", (1,), ("a", "b"), ("m",))
    with pytest.raises(ModelError):
        StaircaseSpec("S", (0, 1), ("a", "b"), ("m",))


def test_box_model():
    c = bn(1).complex
    assert len(c) == 5
    assert c.grading("v") == c.grading("t") == (0, 0)
    assert {y: str(p) for y, p in c.d("r0").items()} == {"r-1": "U0V1", "r1": "U1V0"}


def test_e1_model():
    t = en(1)
    assert len(t.complex) == 9
    assert {y: str(p) for y, p in t.tau.image("z0").items()} == {"z0": "1", "t": "1"}


def test_even_n_rejected():
    for fam in ("En", "Bn"):
        with pytest.raises(ModelError):
            model(fam, 2)
    with pytest.raises(ModelError):
        model("Cn")
    with pytest.raises(ModelError):
        model("nope")


def test_square_alone_has_no_localized_class():
    t = sn(1)
    assert not validate_knot_complex(t.complex).verdict("localization_rank_one")
    with pytest.raises(ValueError):
        localized_cycle(t.complex)


@pytest.mark.parametrize("name", [n for n, _ in knot_models(3)])
def test_every_model_verifies(name):
    t = dict(knot_models(3))[name]
    assert validate_knot_complex(t.complex).ok
    assert verify_ti(t, require_iota=t.iota is not None).ok


def test_cfk_j_shape():
    c = cfk_j().complex
    assert len(c) == 17
    assert {y: str(p) for y, p in c.d("e1").items()} == {"f1": "U1V0", "g1": "U0V1"}


def test_y_elements_n1():
    assert [yn_staircase_element(s) for s in range(-2, 3)] == [
        "y-1*y-1",
        "x0*y-1",
        "y1*y-1",
        "y1*x0",
        "y1*y1",
    ]


def test_w_elements_mirror_the_negative_side():
    assert wn_element(3) == "y1*x2"
    assert wn_element(5) == "x2*y3"
    assert wn_element(2) == "y1*y1"
    assert wn_element(4) == "y1*y3"
    assert wn_element(1) == "y1*x0"
    assert wn_element(-1) == "x0*y-1"


def test_phi_n1_values():
    cert = embed_phi_n(1)
    f = cert.f
    assert set(f.image("t")) == {"y1*y-1", "y-1*y1"}
    assert set(f.image("r0")) == {"x0*x0"}
    rep = cert.verify()
    assert rep.ok and "exact" in [c.detail for c in rep.checks if c.name == "tau_equivariance"]


def test_psi_n1_values():
    cert = embed_psi_n(1)
    assert set(cert.f.image("r0^")) == {"x0^*x0^"}
    assert cert.verify().ok


def test_f_values():
    f, g = maps_f_g(1)
    assert set(f.f.image("z0")) == {"z0*v"}
    assert set(f.f.image("z2")) == {"z2*v", "z2*t"}
    assert set(g.f.image("r0^")) == {"z0^*r0^", "w-1^*r1^", "w1^*r-1^"}


def test_wn_n1():
    cert, vanishes = embed_wn(1)
    assert vanishes and cert.verify().ok


@pytest.mark.parametrize("n", [1, 3])
def test_certify_kn(n):
    rep = certify_kn(n)
    assert rep.ok
    assert rep.bound == n
    assert rep.v0_upper_tau_bn == 0


def test_certify_kn_rejects_even():
    with pytest.raises(ModelError):
        certify_kn(2)


@pytest.mark.parametrize("n", [1, 3])
def test_staircase_involution_is_unique(n):
    probe = skew_involution_probe(cn(n))
    assert probe.enumerated and probe.involutions == 1
