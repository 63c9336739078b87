"""Seed validation, mutation, acyclicity, principal and double builds."""

import json
import random

import pytest

from qca.kronecker import a11_seed
from qca.seed import (
    QuantumSeed,
    bullet_exponents,
    bullet_generators,
    compatible_orders,
    double_seed,
    integer_rank,
    is_acyclic,
    mutate,
    principal_seed,
    seed_from_dict,
    seed_to_dict,
    sink_or_source,
    validate,
)
from qca.torus import quasi_commutes
from qca.verify import random_principal_seed


def test_a11_seed_valid():
    rep = validate(a11_seed())
    assert rep.valid
    assert rep.acyclic
    assert rep.compatible_orders == [(0, 1)]
    assert rep.order_compatible


def test_skew_violation_reported():
    seed = QuantumSeed(
        m=2,
        n=2,
        btilde=((0, -2), (2, 0)),
        lam=((0, -1), (2, 0)),
        d=(2, 2),
        order=(0, 1),
    )
    rep = validate(seed)
    assert not rep.valid
    assert (0, 1) in rep.skew_violations


def test_compat_violation_reported():
    seed = QuantumSeed(
        m=2,
        n=2,
        btilde=((0, -2), (2, 0)),
        lam=((0, -2), (2, 0)),
        d=(2, 2),
        order=(0, 1),
    )
    rep = validate(seed)
    assert not rep.valid
    assert rep.compat_violations


def test_principal_seed_rank2():
    b, c = 3, 2
    s = principal_seed(((0, -b), (c, 0)), (c, b))
    assert s.m == 4 and s.n == 2
    assert s.btilde == ((0, -b), (c, 0), (1, 0), (0, 1))
    assert s.lam == (
        (0, 0, -c, 0),
        (0, 0, 0, -b),
        (c, 0, 0, b * c),
        (0, b, -b * c, 0),
    )
    assert validate(s).valid


def test_principal_seed_zero_matrix():
    n = 3
    s = principal_seed(tuple((0,) * n for _ in range(n)), (1,) * n)
    eye = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    assert s.lam == tuple(
        tuple(0 for _ in range(n)) + tuple(-r for r in row) for row in eye
    ) + tuple(tuple(r for r in row) + (0,) * n for row in eye)
    assert validate(s).valid
    assert is_acyclic(s)
    assert len(compatible_orders(s)) == 6


def test_principal_commutation_rule():
    # Generator i pairs with generator k <= n only through the symmetrizer.
    rng = random.Random(0)
    s = random_principal_seed(rng, 3)
    form = s.form()
    n = s.n
    for k in range(n):
        xk = form.generator(k)
        for i in range(n, 2 * n):
            xi = form.generator(i)
            t = s.d[i - n] if i == k + n else s.lam[i][k]
            assert quasi_commutes(xi, xk, t)
        for j in range(n):
            assert quasi_commutes(form.generator(j), xk, 0)


def test_principal_rejects_non_symmetrizable():
    with pytest.raises(ValueError):
        principal_seed(((0, -1), (2, 0)), (1, 1))


def test_mutation_a11():
    s = a11_seed()
    mutated = mutate(s, 0)
    assert mutated.btilde == ((0, 2), (-2, 0))
    assert validate(mutated).valid


def test_mutation_involution():
    rng = random.Random(1)
    for _ in range(10):
        s = random_principal_seed(rng, rng.choice([2, 3]))
        k = rng.randrange(s.n)
        back = mutate(mutate(s, k), k)
        assert back.btilde == s.btilde
        assert back.lam == s.lam
        assert validate(mutate(s, k)).valid


def test_mutation_rank2_principal_matches_closed_form():
    b, c = 2, 3
    s = principal_seed(((0, -b), (c, 0)), (c, b))
    s2 = mutate(s, 1)
    assert s2.btilde == ((0, b), (-c, 0), (1, 0), (c, -1))
    assert s2.lam == (
        (0, 0, -c, 0),
        (0, 0, -b * c, b),
        (c, b * c, 0, b * c),
        (0, -b, -b * c, 0),
    )


def test_mutation_range_checked():
    with pytest.raises(ValueError):
        mutate(a11_seed(), 2)


def test_acyclicity_cases():
    s = a11_seed()
    assert is_acyclic(s)
    assert compatible_orders(s) == [(0, 1)]
    # Directed 3-cycle is rejected.
    B = ((0, -1, 1), (1, 0, -1), (-1, 1, 0))
    cyc = principal_seed(B, (1, 1, 1))
    assert not is_acyclic(cyc)
    assert compatible_orders(cyc) == []


def test_sink_source():
    s = a11_seed()
    assert sink_or_source(s, 1, extended=False) == "sink"
    assert sink_or_source(s, 0, extended=False) == "source"
    # After one mutation at the sink the seed stays acyclic.
    assert is_acyclic(mutate(s, 1))
    # Isolated vertices report source.
    z = principal_seed(((0, 0), (0, 0)), (1, 1))
    assert sink_or_source(z, 0, extended=False) == "source"
    assert sink_or_source(z, 0, extended=True) == "source"
    # Frozen rows can demote a sink in the extended graph.
    p = principal_seed(((0, -1), (1, 0)), (1, 1))
    assert sink_or_source(p, 1, extended=False) == "sink"
    assert sink_or_source(p, 1, extended=True) == "neither"
    # Path 1 -> 2 -> 3: the middle vertex is neither.
    path = principal_seed(((0, -1, 0), (1, 0, -1), (0, 1, 0)), (1, 1, 1))
    assert sink_or_source(path, 1, extended=False) == "neither"


def test_double_seed():
    s = a11_seed()
    d = double_seed(s)
    assert d.m == 4 and d.n == 2
    assert d.btilde == ((0, -2), (2, 0), (0, 0), (0, 0))
    assert d.lam == (
        (0, -1, 0, 0),
        (1, 0, 0, 0),
        (0, 0, 0, 1),
        (0, 0, -1, 0),
    )
    assert validate(d).valid


def test_double_embedding_multiplicative():
    rng = random.Random(2)
    s = random_principal_seed(rng, 2)
    form = s.form()
    dform = double_seed(s).form()
    pad = (0,) * s.m
    for _ in range(30):
        e = tuple(rng.randint(-3, 3) for _ in range(s.m))
        f = tuple(rng.randint(-3, 3) for _ in range(s.m))
        prod = form.monomial(e) * form.monomial(f)
        (g, c) = prod.monomial_term()
        assert dform.monomial(e + pad) * dform.monomial(f + pad) == dform.monomial(
            g + pad, c
        )


def test_bullet_generators():
    s = a11_seed()
    exps = bullet_exponents(s)
    gens = bullet_generators(s)
    dform = double_seed(s).form()
    n = s.n
    # First n generators commute with each other.
    for i in range(n):
        for j in range(n):
            assert quasi_commutes(gens[i], gens[j], 0)
    # The frozen block pairs via the symmetrized exchange matrix.
    for i in range(n):
        for j in range(n):
            assert (
                dform.skew(exps[n + i], exps[n + j]) == s.d[j] * s.btilde[j][i]
            )
    assert integer_rank(exps) == 2 * n


def test_seed_json_roundtrip(tmp_path):
    s = a11_seed()
    data = seed_to_dict(s)
    assert data["order"] == [1, 2]
    assert seed_from_dict(json.loads(json.dumps(data))) == s
    with pytest.raises(ValueError):
        bad = dict(data)
        bad["Lambda"] = [[0, 1], [1, 0]]
        seed_from_dict(bad)
