"""The rank-2 affine worked example: variables, Chebyshev family, cases."""

import pytest

from qca.kronecker import KroneckerAlgebra
from qca.laurent import LaurentPoly
from qca.torus import DivisionError, quasi_commutes

v = LaurentPoly.v_power


@pytest.fixture(scope="module")
def alg():
    return KroneckerAlgebra()


def test_first_vars(alg):
    form = alg.form
    assert alg.var(0) == form.monomial((2, -1)) + form.monomial((0, -1))
    assert alg.var(3) == form.monomial((-1, 2)) + form.monomial((-1, 0))
    basis = alg.basis
    assert alg.var(3) == basis.x_prime(0)
    assert alg.var(0) == basis.x_prime(1)


def test_relations(alg):
    # Exchange and quasi-commutation relations along the strip.
    for m in range(-2, 5):
        assert alg.var(m + 1) * alg.var(m - 1) == (alg.var(m) ** 2).scalar_mul(
            v(2)
        ) + 1
        assert quasi_commutes(alg.var(m + 1), alg.var(m), 1)


def test_laurent_phenomenon(alg):
    # Every variable within the horizon lands in the initial torus with
    # bar-invariant Laurent coefficients.
    for m in range(-5, 8):
        x = alg.var(m)
        assert x.bar() == x
        assert not x.is_zero()


def test_horizon(alg):
    with pytest.raises(ValueError):
        alg.var(9)


def test_x_delta(alg):
    xd = alg.x_delta()
    basis = alg.basis
    assert xd == basis.element((-1, -1)) - basis.element((1, 1)).scalar_mul(v(4))
    assert xd.bar() == xd


def test_chebyshev_initial(alg):
    assert alg.chebyshev(0) == alg.form.one()
    assert alg.chebyshev(1) == alg.x_delta()
    assert alg.chebyshev(-1) == alg.form.zero()
    xd = alg.x_delta()
    assert alg.chebyshev(2) == xd * xd - 1
    for r in range(5):
        s = alg.chebyshev(r)
        assert s.bar() == s


def test_chebyshev_family_report(alg):
    rep = alg.verify_chebyshev_family(4)
    assert rep.ok, rep.summary()


def test_cluster_labels_report(alg):
    rep = alg.verify_cluster_monomial_labels()
    assert rep.ok, rep.summary()


def test_alpha():
    assert KroneckerAlgebra.alpha(1) == (1, 0)
    assert KroneckerAlgebra.alpha(2) == (0, 1)
    assert KroneckerAlgebra.alpha(0) == (0, -1)
    assert KroneckerAlgebra.alpha(-1) == (-1, -2)
    assert KroneckerAlgebra.alpha(3) == (-1, 0)
    assert KroneckerAlgebra.alpha(4) == (-2, -1)


def test_e_times_x0_selected_cases(alg):
    basis = alg.basis
    E = basis.element
    x0 = alg.var(0)
    # Nonpositive second entry: exact match, no correction terms.
    a = (0, -1)
    assert (E(a) * x0).scalar_mul(v(0)) == E((0, -2))
    # One-step case.
    a = (1, 1)
    lhs = (E(a) * x0).scalar_mul(v(-1)) - E((1, 0))
    assert lhs == E((3, 0)).scalar_mul(v(2))
    # Boundary case with two corrections.
    a = (-1, 1)
    lhs = (E(a) * x0).scalar_mul(v(1)) - E((-1, 0))
    assert lhs == E((1, 0)).scalar_mul(v(2)) + E((1, 2)).scalar_mul(v(6))


def test_e_times_x0_report(alg):
    rep = alg.verify_e_times_x0(3)
    assert rep.ok, rep.summary()


def test_division_cap_error():
    alg = KroneckerAlgebra(division_cap=10**6)
    from qca.torus import divide

    bad = alg.form.monomial((1, 0)) + alg.form.monomial((0, 1))
    with pytest.raises(DivisionError):
        divide(bad, alg.var(0), "left", alg.basis.order, cap=10)
