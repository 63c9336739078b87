"""Identity and property suites over randomly generated principal seeds.

Everything here is exact: a suite either reproduces a stated identity as an
equality of torus elements or reports the first counterexample.  Random
sampling is driven by a caller-supplied ``random.Random`` so runs are
reproducible.
"""

from __future__ import annotations

from dataclasses import replace

from .ebasis import EBasis, MutatedBasis
from .laurent import LaurentPoly, gaussian_binomial
from .lusztig import TriangularTable
from .report import Report
from .seed import (
    QuantumSeed,
    bullet_exponents,
    double_seed,
    integer_rank,
    mutate,
    principal_seed,
)
from .torus import (
    basis_vector,
    plus_part,
    vec_add,
    vec_neg,
    vec_restrict,
    vec_scale,
    vec_sub,
)

__all__ = [
    "random_principal_seed",
    "check_exchange_relations",
    "check_principal_identities",
    "psi_label",
    "psi_prime_label",
    "check_bullet_embedding",
    "check_qbinomial_products",
    "check_expand_roundtrip",
    "check_bar_triangularity",
    "check_triangular_properties",
    "check_order_transposition",
    "check_frozen_shift",
    "check_double_embedding",
]


def random_principal_seed(rng, n: int, entry_bound: int = 2, d_max: int = 2):
    """A principal seed over a random order-compatible exchange matrix.

    Entries above the diagonal are nonpositive and bounded; the transposed
    entries are forced by the symmetrizers, retrying choices that would not
    divide or would exceed the bound.
    """
    d = tuple(rng.randint(1, d_max) for _ in range(n))
    B = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            choices = [
                t
                for t in range(-entry_bound, 1)
                if (d[i] * t) % d[j] == 0 and abs(d[i] * t // d[j]) <= entry_bound
            ]
            t = rng.choice(choices)
            B[i][j] = t
            B[j][i] = -(d[i] * t) // d[j]
    return principal_seed(tuple(tuple(r) for r in B), d)


def check_exchange_relations(basis: EBasis) -> Report:
    """Quasi-commutation table of the generators with the exchange elements."""
    seed = basis.seed
    form = basis.form
    rep = Report(name="exchange quasi-commutation relations")
    v = LaurentPoly.v_power
    for k in range(seed.n):
        xk = basis.x_prime(k)
        ek_p = basis.e_prime(k)
        for i in range(seed.m):
            if i == k:
                continue
            xi = form.generator(i)
            t = form.skew(basis_vector(seed.m, i), ek_p)
            rep.record(
                xi * xk == (xk * xi).scalar_mul(v(2 * t)),
                f"generator {i} vs exchange {k}",
            )
        lam = form.skew(ek_p, basis_vector(seed.m, k))
        xkgen = form.generator(k)
        lhs = (xk * xkgen).scalar_mul(v(-lam)) - (xkgen * xk).scalar_mul(v(lam))
        rhs = form.monomial(plus_part(vec_neg(seed.column(k)))).scalar_mul(
            v(-seed.d[k]) - v(seed.d[k])
        )
        rep.record(lhs == rhs, f"exchange commutator at {k}")
    for j in range(seed.n):
        for k in range(seed.n):
            if j == k:
                continue
            bjk = seed.btilde[j][k]
            eps = (bjk > 0) - (bjk < 0)
            lamjk = form.skew(basis.e_prime(j), basis.e_prime(k))
            xj, xk = basis.x_prime(j), basis.x_prime(k)
            lhs = (xj * xk).scalar_mul(v(-lamjk)) - (xk * xj).scalar_mul(v(lamjk))
            exponent = vec_add(
                vec_add(
                    vec_neg(vec_add(basis_vector(seed.m, j), basis_vector(seed.m, k))),
                    plus_part(vec_scale(-eps, seed.column(j))),
                ),
                plus_part(vec_scale(eps, seed.column(k))),
            )
            rhs = form.monomial(exponent).scalar_mul(
                v(-seed.d[j] * bjk) - v(seed.d[j] * bjk)
            )
            rep.record(lhs == rhs, f"exchange pair commutator at ({j}, {k})")
    return rep


def check_principal_identities(seed: QuantumSeed) -> Report:
    """Short product identities specific to principal seeds in natural order."""
    basis = EBasis(seed)
    mut = MutatedBasis(basis)
    form = basis.form
    n, m = seed.n, seed.m
    v = LaurentPoly.v_power
    rep = Report(name="principal product identities")
    last = n - 1
    e_last = basis_vector(m, last)
    e_top = basis_vector(m, m - 1)
    xn_p = basis.x_prime(last)
    b_last = seed.column(last)
    for j in range(n):
        bj = seed.column(j)
        below = vec_restrict(bj, lambda i, j=j: i < j)
        above = vec_restrict(bj, lambda i, j=j: i > j)
        xj = form.generator(j)
        xjp = basis.x_prime(j)
        if j < last:
            rep.record(
                xjp * xj == form.monomial(vec_neg(below)) + form.monomial(above).scalar_mul(v(seed.d[j])),
                f"left product identity at {j}",
            )
        if j > 0:
            rep.record(
                xj * xjp == form.monomial(above).scalar_mul(v(-seed.d[j])) + form.monomial(vec_neg(below)),
                f"right product identity at {j}",
            )
        if j < last:
            bnj = seed.btilde[last][j]
            xjpp = mut.x_dprime(j)
            shifted = vec_add(above, vec_scale(bnj, vec_sub(e_top, e_last)))
            rhs = form.monomial(shifted).scalar_mul(v(-seed.d[j])) + form.monomial(
                vec_neg(below)
            ) * xn_p**bnj
            rep.record(xj * xjpp == rhs, f"mutated product identity at {j}")
            expansion = basis.x_prime(j) * xn_p**bnj
            for s in range(1, bnj + 1):
                coeff = (
                    gaussian_binomial(bnj, s)
                    .substitute_power(2 * seed.d[last])
                    .shifted(s * s * seed.d[last])
                )
                mono = vec_sub(
                    vec_add(vec_neg(basis_vector(m, j)), shifted), vec_scale(s, b_last)
                )
                expansion = expansion - form.monomial(mono).scalar_mul(coeff)
            rep.record(xjpp == expansion, f"mutated element expansion at {j}")
    return rep


# ---------------------------------------------------------------------------
# The doubled-seed embeddings.


def _psi_generator_images(seed: QuantumSeed, primed: bool):
    """Images of the +-basis vectors of the 2n-lattice in the 2m-lattice."""
    m, n = seed.m, seed.n
    frozen = lambda i: i >= n
    cluster = lambda i: i < n
    last = n - 1
    images_pos = {}
    images_neg = {}
    images_frozen = {}
    for k in range(n):
        bk = seed.column(k)
        ek = basis_vector(m, k)
        images_frozen[k] = vec_restrict(bk, frozen) + vec_neg(vec_restrict(bk, cluster))
        if not primed:
            images_pos[k] = ek + ek
            images_neg[k] = vec_sub(
                vec_neg(ek), vec_restrict(plus_part(vec_neg(bk)), frozen)
            ) + vec_add(vec_neg(ek), vec_restrict(plus_part(vec_neg(bk)), cluster))
            continue
        if k < last:
            images_pos[k] = ek + ek
        else:
            bn = seed.column(last)
            images_pos[k] = vec_sub(
                ek, vec_restrict(plus_part(vec_neg(bn)), frozen)
            ) + vec_sub(vec_neg(ek), vec_restrict(bn, cluster))
            images_neg[k] = vec_neg(ek) + ek
    if primed:
        mutated = mutate(seed, last)
        bn = seed.column(last)
        for k in range(last):
            bk = seed.column(k)
            bpk = mutated.column(k)
            bnk = seed.btilde[last][k]
            ek = basis_vector(m, k)
            first = vec_sub(
                vec_sub(vec_neg(ek), vec_restrict(plus_part(vec_neg(bpk)), frozen)),
                vec_scale(bnk, vec_restrict(plus_part(vec_neg(bn)), frozen)),
            )
            second = vec_sub(
                vec_add(vec_neg(ek), vec_restrict(plus_part(vec_neg(bk)), cluster)),
                vec_add(
                    vec_scale(bnk, vec_restrict(bn, cluster)),
                    vec_scale(bnk, basis_vector(m, last)),
                ),
            )
            images_neg[k] = first + second
    return images_pos, images_neg, images_frozen


def _orthant_linear(seed: QuantumSeed, a, primed: bool):
    n = seed.n
    pos, neg, frz = _psi_generator_images(seed, primed)
    out = (0,) * (2 * seed.m)
    for k in range(n):
        if a[k] > 0:
            out = vec_add(out, vec_scale(a[k], pos[k]))
        elif a[k] < 0:
            out = vec_add(out, vec_scale(-a[k], neg[k]))
    for k in range(n):
        coeff = a[n + k]
        if coeff:
            out = vec_add(out, vec_scale(coeff, frz[k]))
    return out


def psi_label(seed: QuantumSeed, a):
    """Label of the doubled-seed element matching a principal-seed element."""
    return _orthant_linear(seed, a, primed=False)


def psi_prime_label(seed: QuantumSeed, a):
    """Mutated-side counterpart of :func:`psi_label`."""
    return _orthant_linear(seed, a, primed=True)


def check_bullet_embedding(seed: QuantumSeed, samples, rng=None) -> Report:
    """Exact embedding of the principal-seed bases into the doubled seed.

    Checks the Gram identity of the embedded generators, linear independence
    of their exponents, and the two label-translation equalities on every
    sampled label.
    """
    rep = Report(name="principal-in-double embedding")
    n = seed.n
    exps = bullet_exponents(seed)
    dbl = double_seed(seed)
    dform = dbl.form()
    pseed = principal_seed(seed.exchange_matrix(), seed.d)
    pform = pseed.form()
    rep.record(
        integer_rank(exps) == 2 * n, "bullet exponents are linearly dependent"
    )
    for i in range(2 * n):
        for j in range(2 * n):
            rep.record(
                dform.skew(exps[i], exps[j]) == pform.skew(
                    basis_vector(2 * n, i), basis_vector(2 * n, j)
                ),
                f"gram mismatch at ({i}, {j})",
            )
    pbasis = EBasis(pseed)
    pmut = MutatedBasis(pbasis)
    dbasis = EBasis(dbl)
    dmut = MutatedBasis(dbasis)

    def embed(elt):
        terms = {}
        for g, cf in elt.terms.items():
            target = (0,) * (2 * seed.m)
            for i, gi in enumerate(g):
                if gi:
                    target = vec_add(target, vec_scale(gi, exps[i]))
            terms[target] = cf
        return dform.element(terms)

    for a in samples:
        a = tuple(a)
        lbl = psi_label(seed, a)
        rep.record(
            embed(pbasis.element(a)) == dbasis.element(lbl),
            f"standard embedding fails at {a}",
        )
        lblp = psi_prime_label(seed, a)
        rep.record(
            embed(pmut.element(a)) == dmut.element(lblp),
            f"mutated embedding fails at {a}",
        )
        rep.record(
            lbl[:n] == tuple(a[:n]) and lblp[:n] == tuple(a[:n]),
            f"cluster truncation differs at {a}",
        )
    return rep


def check_qbinomial_products(r_max: int = 6) -> Report:
    """Binomial expansion of the twisted product against closed coefficients."""
    rep = Report(name=f"gaussian binomial products r <= {r_max}")
    for r in range(r_max + 1):
        acc = {0: LaurentPoly.one()}
        for p in range(1, r + 1):
            nxt: dict = {}
            for s, cf in acc.items():
                nxt[s] = nxt.get(s, LaurentPoly.zero()) + cf
                nxt[s + 1] = nxt.get(s + 1, LaurentPoly.zero()) + cf.shifted(2 * p - 1)
            acc = {s: cf for s, cf in nxt.items() if cf}
        for s in range(r + 1):
            want = gaussian_binomial(r, s).substitute_power(2).shifted(s * s)
            rep.record(
                acc.get(s, LaurentPoly.zero()) == want,
                f"coefficient mismatch at r={r}, s={s}",
            )
    return rep


# ---------------------------------------------------------------------------
# Structural property suites.


def _random_label(rng, m: int, bound: int):
    return tuple(rng.randint(-bound, bound) for _ in range(m))


def check_expand_roundtrip(basis: EBasis, rng, count: int, bound: int = 2) -> Report:
    rep = Report(name="expansion of a basis element is a delta")
    for _ in range(count):
        a = _random_label(rng, basis.seed.m, bound)
        coeffs = basis.expand(basis.element(a))
        rep.record(
            coeffs == {a: LaurentPoly.one()}, f"roundtrip fails at {a}"
        )
    return rep


def check_bar_triangularity(basis: EBasis, rng, count: int, bound: int = 2) -> Report:
    rep = Report(name="involution rows sit strictly below their label")
    for _ in range(count):
        a = _random_label(rng, basis.seed.m, bound)
        e = basis.element(a)
        coeffs = basis.expand(e.bar() - e)
        level = basis.grading(a)
        rep.record(
            all(basis.grading(key) < level for key in coeffs),
            f"triangularity fails at {a}",
        )
    return rep


def check_triangular_properties(
    table: TriangularTable, rng, count: int, bound: int = 2
) -> Report:
    rep = Report(name="triangular element properties on random labels")
    for _ in range(count):
        a = _random_label(rng, table.basis.seed.m, bound)
        rep.absorb(table.verify(a))
    return rep


def check_order_transposition(seed: QuantumSeed, swapped_order, rng, count: int, bound: int = 2) -> Report:
    """Standard elements are unchanged when two adjacent order indices with a
    vanishing exchange entry are swapped."""
    rep = Report(name="order transposition invariance")
    basis1 = EBasis(seed)
    basis2 = EBasis(replace(seed, order=tuple(swapped_order)))
    for _ in range(count):
        a = _random_label(rng, seed.m, bound)
        rep.record(
            basis1.element(a) == basis2.element(a),
            f"transposition changes the element at {a}",
        )
    return rep


def check_frozen_shift(mut: MutatedBasis, rng, count: int, bound: int = 2) -> Report:
    """Expansion coefficients are invariant under purely frozen label shifts."""
    rep = Report(name="frozen shift invariance of expansion coefficients")
    seed = mut.base.seed
    for _ in range(count):
        a = _random_label(rng, seed.m, bound)
        shift = (0,) * seed.n + tuple(
            rng.randint(-bound, bound) for _ in range(seed.m - seed.n)
        )
        base_coeffs = mut.expansion_in_base(a)
        shifted_coeffs = mut.expansion_in_base(vec_add(a, shift))
        expected = {vec_add(key, shift): cf for key, cf in base_coeffs.items()}
        rep.record(shifted_coeffs == expected, f"shift fails at {a} + {shift}")
    return rep


def check_double_embedding(seed: QuantumSeed, rng, count: int, bound: int = 3) -> Report:
    """The inclusion into the doubled torus is multiplicative on monomials."""
    rep = Report(name="double embedding is multiplicative")
    form = seed.form()
    dform = double_seed(seed).form()
    pad = (0,) * seed.m

    def emb(e):
        return tuple(e) + pad

    for _ in range(count):
        e = _random_label(rng, seed.m, bound)
        f = _random_label(rng, seed.m, bound)
        lhs = form.monomial(e) * form.monomial(f)
        rhs = dform.monomial(emb(e)) * dform.monomial(emb(f))
        embedded = dform.element({emb(g): cf for g, cf in lhs.terms.items()})
        rep.record(embedded == rhs, f"embedding fails at {e}, {f}")
    return rep
