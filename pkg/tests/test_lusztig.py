"""The triangular-basis recursion and basis independence."""

import itertools
import random

import pytest

from qca.ebasis import EBasis, MutatedBasis
from qca.kronecker import KroneckerAlgebra, a11_seed
from qca.laurent import LaurentPoly
from qca.lusztig import (
    RowCache,
    TriangularTable,
    cluster_monomial_check,
    compare_bases,
    phi_rank2_principal,
)
from qca.seed import principal_seed, seed_hash
from qca.verify import random_principal_seed

v = LaurentPoly.v_power


@pytest.fixture(scope="module")
def affine_table():
    return TriangularTable(EBasis(a11_seed()))


def test_base_cases(affine_table):
    basis = affine_table.basis
    # Grading zero: no corrections.
    assert affine_table.p_row((1, 1)) == {}
    assert affine_table.element((1, 1)) == basis.element((1, 1))
    # First nontrivial row.
    assert affine_table.p_row((-1, -1)) == {(1, 1): -v(4)}
    alg = KroneckerAlgebra()
    assert affine_table.element((-1, -1)) == alg.x_delta()


def test_chebyshev_oracle(affine_table):
    # Independent oracle: the three-term recurrence evaluated in the torus.
    alg = KroneckerAlgebra()
    for r in (1, 2, 3):
        assert affine_table.element((-r, -r)) == alg.chebyshev(r)


def test_verify_report(affine_table):
    rep = affine_table.verify((-2, -2))
    assert rep.ok
    rep = affine_table.verify((3, 5))
    assert rep.ok and rep.checks == 1  # only bar-invariance to check


def test_verify_flags_corruption(affine_table):
    table = TriangularTable(EBasis(a11_seed()))
    row = dict(table.p_row((-1, -1)))
    row[(1, 1)] = row[(1, 1)] + v(-2)  # not in vZ[v] anymore
    table._rows[(-1, -1)] = row
    rep = table.verify((-1, -1))
    assert not rep.ok


def test_processing_order_independence():
    # Reversing the within-level processing order changes nothing.
    t1 = TriangularTable(EBasis(a11_seed()))
    t2 = TriangularTable(
        EBasis(a11_seed()), tie_order=lambda keys: sorted(keys, reverse=True)
    )
    for a in [(-2, -2), (-3, -1), (-2, -3)]:
        assert t1.p_row(a) == t2.p_row(a)
        assert t1.element(a) == t2.element(a)


def test_support_sharper_order_affine(affine_table):
    # On this seed the supports shrink componentwise, not just in grading.
    for a1 in range(-3, 0):
        for a2 in range(-3, 1):
            a = (a1, a2)
            for key in affine_table.p_row(a):
                assert max(-key[0], 0) < max(-a[0], 0)
                assert max(-key[1], 0) < max(-a[1], 0)


def test_cluster_monomials(affine_table):
    assert cluster_monomial_check(affine_table, (2, 1))
    assert cluster_monomial_check(affine_table, (0, 0))
    with pytest.raises(ValueError):
        cluster_monomial_check(affine_table, (-1, 0))
    ptable = TriangularTable(EBasis(principal_seed(((0, -1), (1, 0)), (1, 1))))
    assert cluster_monomial_check(ptable, (0, 0, -2, 3))  # frozen-only label


def test_phi_rank2_formula():
    assert phi_rank2_principal((-1, 0, 0, 0), 1, 2) == (-1, -2, 0, 0)
    for a in itertools.product(range(0, 3), range(-2, 3), [0], [0]):
        assert phi_rank2_principal(a, 2, 2) == (a[0], -a[1], a[2], a[3])
    with pytest.raises(ValueError):
        phi_rank2_principal((0, 0, 0, 0), 0, 1)


def test_phi_rank2_matches_empirical():
    for b, c in [(1, 1), (2, 1), (2, 2)]:
        mut = MutatedBasis(EBasis(principal_seed(((0, -b), (c, 0)), (c, b))))
        for a1, a2 in itertools.product(range(-2, 3), repeat=2):
            a = (a1, a2, 0, 0)
            assert mut.unit_label(a) == phi_rank2_principal(a, b, c)


def test_compare_bases_generators():
    basis = EBasis(principal_seed(((0, -1), (2, 0)), (2, 1)))
    m = basis.seed.m
    units = []
    for i in range(m):
        e = tuple(1 if j == i else 0 for j in range(m))
        units.append(e)
        units.append(tuple(-x for x in e))
    rep = compare_bases(basis, units)
    assert rep.ok, rep.summary()
    # Generator label correspondences.
    mut = MutatedBasis(basis)
    n = basis.seed.n
    e = lambda i: tuple(1 if j == i else 0 for j in range(m))
    neg = lambda t: tuple(-x for x in t)
    assert mut.unit_label(e(n - 1)) == neg(e(n - 1))
    assert mut.unit_label(neg(e(n - 1))) == e(n - 1)
    for i in range(n, m):
        assert mut.unit_label(e(i)) == e(i)
        assert mut.unit_label(neg(e(i))) == neg(e(i))
    for k in range(n - 1):
        assert mut.unit_label(e(k)) == e(k)


def test_compare_bases_window():
    basis = EBasis(principal_seed(((0, -1), (1, 0)), (1, 1)))
    labels = [
        (a1, a2, 0, 0) for a1, a2 in itertools.product(range(-1, 2), repeat=2)
    ]
    rep = compare_bases(basis, labels)
    assert rep.ok, rep.summary()


def test_triangular_properties_random_seeds():
    rng = random.Random(13)
    for _ in range(4):
        basis = EBasis(random_principal_seed(rng, rng.choice([2, 3])))
        table = TriangularTable(basis)
        for _ in range(10):
            a = tuple(rng.randint(-2, 2) for _ in range(basis.seed.m))
            assert table.verify(a).ok


def test_row_cache(tmp_path):
    seed = a11_seed()
    basis = EBasis(seed)
    h = seed_hash(seed)
    cache = RowCache(str(tmp_path), h)
    table = TriangularTable(basis, cache=cache)
    row = table.p_row((-2, -2))
    # Second table re-reads from disk.
    cache2 = RowCache(str(tmp_path), h)
    table2 = TriangularTable(EBasis(seed), cache=cache2)
    assert table2.p_row((-2, -2)) == row
    assert cache2.hits == 1
    # A different seed hash invalidates silently.
    cache3 = RowCache(str(tmp_path), "0" * 16)
    assert cache3.load((-2, -2)) is None
