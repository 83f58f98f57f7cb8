import pytest
from hypothesis import given
from hypothesis import strategies as st

from kfh.equivariant import verify_ti
from kfh.kfc import KfcError, parse_kfc, serialize_kfc
from kfh.models import knot_models
from kfh.surgery import a0

NAMES = [n for n, _ in knot_models(1)]
BY_NAME = dict(knot_models(1))

TREFOIL = """\
# trefoil
complex C1
generator y-1 -2 0
generator x0 -1 -1
generator y1 0 -2
d x0 y1 U1V0
d x0 y-1 U0V1
map tau skew 0 0 C1 C1
entry y1 y-1 1
entry y-1 y1 1
entry x0 x0 1
"""


def test_parse_trefoil():
    doc = parse_kfc(TREFOIL)
    t = doc.ti()
    assert t.complex.ids == ["y-1", "x0", "y1"]
    assert t.flavor == "strong"
    assert verify_ti(t).ok


def test_canonical_order():
    text = serialize_kfc([parse_kfc(TREFOIL).ti()])
    lines = text.splitlines()
    assert lines[4:6] == ["d x0 y-1 U0V1", "d x0 y1 U1V0"]
    assert lines[7] == "entry y-1 y1 1"
    assert serialize_kfc([parse_kfc(text).ti()]) == text


@pytest.mark.parametrize("name", NAMES)
def test_model_round_trip(name):
    t = BY_NAME[name]
    text = serialize_kfc([t])
    back = parse_kfc(text).ti()
    assert serialize_kfc([back]) == text
    assert back.complex.generators == t.complex.generators
    assert back.tau.equals(back.tau) and back.flavor == t.flavor


def test_ucomplex_round_trip():
    uc = a0(BY_NAME["C1"]).ucomplex
    text = serialize_kfc([uc])
    assert "ugenerator x0 -1" in text
    doc = parse_kfc(text)
    assert serialize_kfc([doc.ucomplexes[uc.name]]) == text


@pytest.mark.parametrize(
    "text,line,fragment",
    [
        ("complex c\ngenerator e 0 0\nd e f 1\n", 3, "undeclared generator 'f'"),
        ("complex c\ngenerator e 0 x\n", 2, "integer"),
        ("generator e 0 0\n", 1, "outside"),
        ("complex c\ngenerator e 0 0\nbogus\n", 3, "unknown statement"),
        ("complex c\ngenerator e 0 0\nd e e U1\n", 3, "bad polynomial"),
        ("complex c\ngenerator e 0 0\ngenerator e 1 1\n", 3, "duplicate"),
        ("complex c\ngenerator e 0 0\nmap t skew 0 0 c d\n", 3, "undeclared complex"),
        ("complex c\ngenerator e 0 0\nmap t weird 0 0 c c\n", 3, "variance"),
        ("complex c\ngenerator e 0 0\nentry e e 1\n", 3, "outside a map"),
        ("complex c\ngenerator e 0 0\nmap t skew 0 0 c c\nentry e q 1\n", 4, "undeclared generator"),
    ],
)
def test_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(KfcError) as info:
        parse_kfc(text)
    assert info.value.line == line
    assert fragment in str(info.value)


def test_empty_complex_parses_but_fails_validation():
    from kfh.complexes import validate_knot_complex

    doc = parse_kfc("complex empty\n")
    assert not validate_knot_complex(doc.complex()).ok


names = st.from_regex(r"[a-z][a-z0-9]{0,3}", fullmatch=True)


@given(st.lists(st.tuples(names, st.integers(-6, 6), st.integers(-6, 6)), max_size=6, unique_by=lambda g: g[0]))
def test_random_generator_lists_round_trip(gens):
    lines = ["complex r"] + [f"generator {g} {a} {b}" for g, a, b in gens]
    text = "\n".join(lines) + "\n"
    assert serialize_kfc([parse_kfc(text).complex()]) == text
