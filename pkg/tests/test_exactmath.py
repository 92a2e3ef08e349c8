from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hopfkit.exactmath import (
    QQ,
    FieldMismatchError,
    FunctionField,
    LinComb,
    LinMap,
    Mod,
    PrimeField,
    ScalarParseError,
    basis_from_json,
    basis_key,
    basis_to_json,
    convolve,
    field_from_tag,
    lincomb_ops,
    matrix_inverse,
    rref,
    scalar_arith,
)

F3, F7 = PrimeField(3), PrimeField(7)
QF = FunctionField(["q"])
QAB = FunctionField(["a_11", "alpha", "q"])

rationals = st.fractions(max_denominator=50).map(lambda x: x.limit_denominator(50))
mods7 = st.integers(0, 6).map(lambda v: Mod(v, 7))


def _poly(params, field):
    gens = [field.param(p) for p in params]

    @st.composite
    def build(draw):
        x = field.zero
        for _ in range(draw(st.integers(0, 3))):
            c = draw(st.integers(-3, 3))
            mono = field.one
            for g in gens:
                mono = mono * g ** draw(st.integers(0, 2))
            x = x + field(c) * mono
        return x

    return build()


ratfuncs = st.tuples(_poly(["q"], QF), _poly(["q"], QF)).filter(lambda t: bool(t[1])).map(lambda t: t[0] / t[1])


# -- examples ---------------------------------------------------------------


def test_add_halves():
    assert scalar_arith("add", Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)


def test_q_squared():
    q = QF.param("q")
    assert scalar_arith("mul", q, q) == q ** 2
    assert QF.format(q * q) == "q^2"


def test_inverse_of_parameter():
    a = QAB.param("a_11")
    inv = scalar_arith("inv", a)
    assert inv * a == QAB.one
    assert QAB.format(inv) == "(1)/(a_11)"


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        scalar_arith("inv", Fraction(0))
    with pytest.raises(ZeroDivisionError):
        scalar_arith("inv", F7.zero)


def test_mixing_fields_is_an_error():
    with pytest.raises(FieldMismatchError):
        Mod(1, 3) + Mod(1, 7)
    with pytest.raises(FieldMismatchError):
        QF.param("q") + Mod(1, 3)


def test_lincomb_examples():
    assert lincomb_ops("add", LinComb({"g": 2}), LinComb({"g": 3})) == LinComb({"g": 5})
    assert lincomb_ops("tensor", LinComb({"g": 1}), LinComb({"x": 1})) == LinComb({("g", "x"): 1})
    assert len(lincomb_ops("scale", 0, LinComb({"g": 4, "x": 1}))) == 0


def test_lincomb_drops_zeros():
    v = LinComb({"a": 1, "b": 2}) + LinComb({"a": -1})
    assert list(v) == ["b"]
    assert "a" not in v


def test_convolution_on_z2_character():
    comult = lambda c: {(c, c): 1}
    chi = lambda c: -1 if c == "g" else 1
    assert convolve(chi, chi, comult)("g") == 1


def test_convolution_counit_is_unit():
    comult = lambda n: {(k, n - k): Fraction(1) for k in range(n + 1)}
    eps = lambda n: 1 if n == 0 else 0
    f = lambda n: Fraction(n * n + 1)
    for n in range(6):
        assert convolve(eps, f, comult)(n) == f(n) == convolve(f, eps, comult)(n)


# -- parsing and formatting -------------------------------------------------


@pytest.mark.parametrize("text,expected", [
    ("-3/4", "-3/4"), ("q", "q"), ("2*q^3", "2*q^3"), ("q^2+1", "q^2+1"),
    ("(q+1)/(q-1)", "(q+1)/(q-1)"), ("q^-2", "(1)/(q^2)"), ("0", "0"),
])
def test_literal_grammar(text, expected):
    assert QF.format(QF.parse(text)) == expected


def test_literal_round_trip_is_stable():
    for text in ["(q+1)/(q-1)", "2*q^3", "-3/4", "q^2+1"]:
        once = QF.format(QF.parse(text))
        assert QF.format(QF.parse(once)) == once


def test_unknown_parameter_rejected():
    with pytest.raises(ScalarParseError):
        QF.parse("alpha")
    with pytest.raises(ScalarParseError):
        QQ.parse("q")


def test_prime_field_literals():
    assert F7.parse("1/2") == Mod(4, 7)
    assert F3.format(F3.parse("-1")) == "2"


@pytest.mark.parametrize("tag", ["Q", "Fp:5", "Qfunc:[alpha,q]"])
def test_field_tags_round_trip(tag):
    assert field_from_tag(tag).tag == tag


def test_non_prime_rejected():
    with pytest.raises(ValueError):
        PrimeField(9)


# -- basis ids ---------------------------------------------------------------


def test_basis_order_and_json():
    ids = [("g", -1), "x", 3, ("g", 2), (("g", 0), ("X", 1)), "1"]
    ordered = sorted(ids, key=basis_key)
    assert ordered == sorted(reversed(ids), key=basis_key)
    for b in ids:
        assert basis_from_json(basis_to_json(b)) == b


# -- linear maps ---------------------------------------------------------------


def test_rule_map_enforces_certificate():
    m = LinMap(1, rule=lambda n: {k: 1 for k in range(n)}, bound=lambda n: 2, name="bad")
    assert len(m(2)) == 2
    with pytest.raises(Exception):
        m(3)


def test_rref_and_inverse_over_q():
    M = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]]
    inv = matrix_inverse(M)
    assert inv == [[1, -1], [-1, 2]]
    rows, piv = rref([[Fraction(1), Fraction(2), Fraction(3)], [Fraction(2), Fraction(4), Fraction(6)]], 3)
    assert piv == [0]


# -- field axioms ------------------------------------------------------------


def _axioms(x, y, z, zero, one):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x and x * y == y * x
    assert x + zero == x and x * one == x
    assert x + (-x) == zero
    if x != zero:
        assert x * scalar_arith("inv", x) == one


@given(rationals, rationals, rationals)
def test_field_axioms_rationals(x, y, z):
    _axioms(x, y, z, Fraction(0), Fraction(1))


@given(mods7, mods7, mods7)
def test_field_axioms_prime(x, y, z):
    _axioms(x, y, z, F7.zero, F7.one)


@given(ratfuncs, ratfuncs, ratfuncs)
def test_field_axioms_rational_functions(x, y, z):
    _axioms(x, y, z, QF.zero, QF.one)


@given(ratfuncs)
def test_canonical_form_is_idempotent(x):
    text = QF.format(x)
    assert QF.parse(text) == x
    assert QF.format(QF.parse(text)) == text
    assert hash(QF.parse(text)) == hash(x)


@given(st.dictionaries(st.sampled_from("abcd"), st.integers(-3, 3)),
       st.dictionaries(st.sampled_from("abcd"), st.integers(-3, 3)))
def test_lincomb_addition_is_canonical(u, v):
    s = LinComb(u) + LinComb(v)
    assert all(c != 0 for c in s.terms.values())
    assert s == LinComb(v) + LinComb(u)
    assert (s - LinComb(v)) == LinComb(u)


@given(st.lists(st.integers(-2, 2), min_size=4, max_size=4), st.lists(st.integers(-2, 2), min_size=4, max_size=4))
def test_convolution_associative_on_binomial_coalgebra(a, b):
    comult = lambda n: {(k, n - k): Fraction(1) for k in range(n + 1)}
    f = lambda n: Fraction(a[n % 4])
    g = lambda n: Fraction(b[n % 4])
    h = lambda n: Fraction(n + 1)
    left = convolve(convolve(f, g, comult), h, comult)
    right = convolve(f, convolve(g, h, comult), comult)
    for n in range(7):
        assert left(n) == right(n)
