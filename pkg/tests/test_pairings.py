import pytest
from hypothesis import given, strategies as st

from hopfkit.catalog import (
    H4,
    H4_BASIS,
    borel_field,
    borel_lambda,
    borel_minus,
    borel_plus,
    kX,
    kx_braiding,
    kx_kz_pairing,
    kZ,
    kz_braiding,
    kZn,
    p_alpha,
)
from hopfkit.exactmath import QQ, FunctionField, PrimeField
from hopfkit.hopfcore import WindowError
from hopfkit.pairings import (
    AlgebraMismatchError,
    BilinearForm,
    check_braiding,
    check_skew_pairing,
    check_tau_on_kX,
    convolution_inverse,
    convolve_forms,
    counit_form,
    flip_dual,
    forms_equal,
)

FA = FunctionField(["alpha"])
FQA = FunctionField(["alpha", "q"])


def _h4p():
    A = H4(FA)
    return A, p_alpha(A, "alpha")


def test_kx_kz_pairing_is_skew():
    Z, X = kZ(QQ), kX(QQ)
    lam = kx_kz_pairing(X, Z)
    rep = check_skew_pairing(lam, 4)
    assert rep.ok and rep.window == "4"


def test_t_zero_convention():
    Z, X = kZ(QQ), kX(QQ)
    lam = kx_kz_pairing(X, Z)
    assert lam(("X", 0), ("g", 0)) == 1
    assert lam(("X", 3), ("g", 0)) == 0
    assert lam(("X", 3), ("g", -2)) == -8


def test_borel_pairing_n2():
    F = borel_field(2)
    Bp, Bm = borel_plus(2, F), borel_minus(2, F)
    lam = borel_lambda(Bm, Bp)
    assert lam("c", "c") == -1
    assert lam("y1", "x1") == 1 and lam("y1", "x2") == 0
    assert check_skew_pairing(lam).ok


@pytest.mark.parametrize("A", [H4(), kZn(3, QQ), kZ(QQ)])
def test_counit_form_is_skew_pairing(A):
    assert check_skew_pairing(counit_form(A, A), 3).ok


def test_convolution_inverse_of_p_alpha():
    A, p = _h4p()
    inv = convolution_inverse(p)
    eps = counit_form(A, A)
    assert forms_equal(convolve_forms(p, inv), eps).ok
    assert forms_equal(convolve_forms(inv, p), eps).ok


def test_inverse_of_counit_form():
    A = H4()
    eps = counit_form(A, A)
    assert forms_equal(convolution_inverse(eps), eps).ok


def test_inverse_of_kx_kz_pairing_formula():
    Z, X = kZ(QQ), kX(QQ)
    inv = convolution_inverse(kx_kz_pairing(X, Z))
    for m in range(5):
        for t in range(-3, 4):
            expected = 1 if m == 0 else (-1) ** m * t ** m
            assert inv(("X", m), ("g", t)) == expected


def test_flip_dual_examples():
    A, p = _h4p()
    eps = counit_form(A, A)
    assert forms_equal(flip_dual(eps), eps).ok
    assert check_skew_pairing(flip_dual(p)).ok
    Z, X = kZ(QQ), kX(QQ)
    fd = flip_dual(kx_kz_pairing(X, Z))
    assert fd.left is Z and fd.right is X
    assert check_skew_pairing(fd, 4).ok


def test_kz_braiding():
    Z = kZ(FunctionField(["q"]))
    assert check_braiding(kz_braiding(Z), 4).ok


def test_p_alpha_is_braiding():
    _, p = _h4p()
    rep = check_braiding(p)
    assert rep.ok
    assert rep.axioms() == ["multiplicative_left", "unital_left", "multiplicative_right", "unital_right",
                            "commutation"]


def test_counit_form_on_h4_fails_commutation_at_x_g():
    A = H4()
    rep = check_braiding(counit_form(A, A))
    assert [r.axiom for r in rep.failed()] == ["commutation"]
    res = check_braiding(counit_form(A, A), full=True)["commutation"]
    lhs, rhs = {w: (l, r) for w, l, r in res.failures}[("x", "g")]
    assert lhs == A.mult("x", "g") and rhs == A.mult("g", "x")
    assert rep["commutation"].witness == res.failures[0][0]


def test_tau_on_kx():
    X = kX(FA)
    tau = kx_braiding(X)
    a = FA.param("alpha")
    assert tau(("X", 1), ("X", 1)) == a
    assert tau(("X", 2), ("X", 3)) == 0
    assert tau(("X", 3), ("X", 3)) == 6 * a ** 3
    assert check_tau_on_kX(tau, 8).ok


def test_tau_on_kx_rejects_positive_characteristic():
    X = kX(PrimeField(5))
    with pytest.raises(ValueError):
        check_tau_on_kX(kx_braiding(X, 1))


def test_form_window_cannot_be_exceeded():
    Z = kZ(FunctionField(["q"]), window=3)
    with pytest.raises(WindowError):
        check_braiding(kz_braiding(Z), 5)


def test_orientation_is_enforced():
    Z, X = kZ(QQ), kX(QQ)
    with pytest.raises(AlgebraMismatchError):
        check_braiding(kx_kz_pairing(X, Z))
    with pytest.raises(AlgebraMismatchError):
        BilinearForm(H4(), H4(), table={("z", "1"): 1})


def test_full_mode_collects_every_failure():
    A = H4()
    rep = check_braiding(counit_form(A, A), full=True)
    assert len(rep["commutation"].failures) > 1


# -- properties ------------------------------------------------------------------

F5 = PrimeField(5)


@given(st.integers(0, 4))
def test_every_p_alpha_over_f5_is_braiding_and_skew(alpha):
    A = H4(F5)
    p = p_alpha(A, alpha)
    assert check_braiding(p).ok
    assert check_skew_pairing(p).ok
    assert check_skew_pairing(flip_dual(p)).ok


@given(st.integers(1, 4))
def test_kz_braiding_at_unit_values(q):
    Z = kZ(F5, window=3)
    assert check_braiding(kz_braiding(Z, q)).ok


@given(st.sampled_from(H4_BASIS), st.sampled_from(H4_BASIS), st.integers(0, 4))
def test_inverse_is_two_sided_pointwise(x, y, alpha):
    A = H4(F5)
    p = p_alpha(A, alpha)
    inv = convolution_inverse(p)
    e = A.counit(x) * A.counit(y)
    assert convolve_forms(p, inv)(x, y) == e == convolve_forms(inv, p)(x, y)
