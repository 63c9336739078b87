"""The standard monomial basis of an acyclic seed, and its mutated twin.

For a label ``a`` in ``Z^m`` the raw standard monomial is the ordered
product of a frozen/positive-part monomial with powers of the exchange
binomials; the normalized element rescales it by the unique power of ``v``
making its leading term bar-invariant.  Because the order is compatible
with the sign pattern of the exchange matrix, the map from labels to
leading exponents is unimodularly triangular, which gives an exact greedy
expansion algorithm for any element of the spanned algebra.

:class:`MutatedBasis` builds the same objects for the seed mutated at the
order-last exchange index and realizes them inside the original torus,
which is what the basis-independence comparisons consume.
"""

from __future__ import annotations

from dataclasses import replace

from .laurent import LaurentPoly, gaussian_binomial
from .seed import QuantumSeed, exchange_vector, mutate, seed_weight_order, validate
from .torus import (
    TorusElement,
    basis_vector,
    plus_part,
    r_of,
    vec_add,
    vec_neg,
    vec_restrict,
    vec_scale,
    vec_sub,
)

__all__ = ["EBasis", "MutatedBasis", "ExpansionError"]


class ExpansionError(RuntimeError):
    """Raised when greedy expansion exceeds its step cap."""


class EBasis:
    """Standard-monomial machinery bound to one validated, ordered seed."""

    def __init__(self, seed: QuantumSeed, expansion_cap: int = 10**5):
        report = validate(seed)
        if not report.valid:
            raise ValueError("seed fails validation: " + "; ".join(report.lines()))
        if not report.order_compatible:
            raise ValueError(
                "seed order is not sign-compatible with the exchange matrix; "
                f"violations at {report.order_violations}"
            )
        self.seed = seed
        self.form = seed.form()
        self.order = seed_weight_order(seed)
        self.expansion_cap = expansion_cap
        self._x_prime: dict = {}
        self._elements: dict = {}
        self._r_rows: dict = {}

    # -- generators ----------------------------------------------------------

    def e_prime(self, k: int):
        """Leading exponent of the k-th exchange binomial."""
        return exchange_vector(self.seed, k)

    def x_prime(self, k: int) -> TorusElement:
        """The two-term exchange element replacing generator ``k``."""
        cached = self._x_prime.get(k)
        if cached is None:
            ep = self.e_prime(k)
            cached = self.form.monomial(ep) + self.form.monomial(
                vec_sub(ep, self.seed.column(k))
            )
            self._x_prime[k] = cached
        return cached

    # -- labels and leading exponents ------------------------------------------

    def _base_exponent(self, a):
        n = self.seed.n
        return tuple(x if i >= n else max(x, 0) for i, x in enumerate(a))

    def leading_exponent(self, a):
        """Exponent of the term surviving when each exchange element is
        replaced by its leading monomial."""
        lead = self._base_exponent(a)
        for k in range(self.seed.n):
            q = max(-a[k], 0)
            if q:
                lead = vec_add(lead, vec_scale(q, self.e_prime(k)))
        return lead

    def leading_exponent_inverse(self, t):
        """The unique label whose leading exponent is ``t``.

        Solved row by row along the order: compatibility zeroes the positive
        parts above the diagonal, so each exchange row determines one label
        entry, and the frozen rows then follow directly.
        """
        seed = self.seed
        a = [0] * seed.m
        q: dict = {}
        for k in seed.order:
            s = t[k]
            for kp, qk in q.items():
                bkkp = seed.btilde[k][kp]
                if bkkp > 0:
                    s -= qk * bkkp
            a[k] = s
            q[k] = max(-s, 0)
        for i in range(seed.n, seed.m):
            s = t[i]
            for kp, qk in q.items():
                bik = seed.btilde[i][kp]
                if bik > 0:
                    s -= qk * bik
            a[i] = s
        return tuple(a)

    # -- normalization -----------------------------------------------------------

    def normalization_exponent(self, a) -> int:
        """Power of ``v`` making the leading term bar-invariant."""
        mon = self.form.monomial(self._base_exponent(a))
        for k in self.seed.order:
            qk = max(-a[k], 0)
            if qk:
                mon = mon * self.form.monomial(vec_scale(qk, self.e_prime(k)))
        _, coeff = mon.monomial_term()
        ((sigma, c),) = coeff.items()
        assert c == 1
        return -sigma

    def raw_standard_monomial(self, a) -> TorusElement:
        """The un-normalized ordered product for label ``a``."""
        out = self.form.monomial(self._base_exponent(a))
        for k in self.seed.order:
            qk = max(-a[k], 0)
            if qk:
                out = out * self.x_prime(k) ** qk
        return out

    def element(self, a) -> TorusElement:
        """The normalized standard basis element for label ``a``."""
        a = tuple(a)
        cached = self._elements.get(a)
        if cached is None:
            nu = self.normalization_exponent(a)
            cached = self.raw_standard_monomial(a).scalar_mul(LaurentPoly.v_power(nu))
            self._elements[a] = cached
        return cached

    # -- expansion ------------------------------------------------------------------

    def expand(self, x: TorusElement, cap: int | None = None) -> dict:
        """Coefficients of ``x`` in the standard basis (exact, greedy).

        Every basis element has unit coefficient on its leading exponent and
        all other terms strictly below it, so peeling leading terms both
        terminates and is unique for any ``x`` in the span.  Raises
        :class:`ExpansionError` if the cap is hit (the typical cause is an
        ``x`` outside the span).
        """
        if x.form != self.form:
            raise ValueError("element lives in a different torus context")
        cap = self.expansion_cap if cap is None else cap
        coeffs: dict = {}
        rem = x
        steps = 0
        while not rem.is_zero():
            steps += 1
            if steps > cap:
                raise ExpansionError(f"expansion exceeded {cap} steps")
            g, c = rem.leading_term(self.order)
            a = self.leading_exponent_inverse(g)
            coeffs[a] = coeffs.get(a, LaurentPoly.zero()) + c
            rem = rem - self.element(a).scalar_mul(c)
        return {a: c for a, c in coeffs.items() if c}

    def assemble(self, coeffs: dict) -> TorusElement:
        """Inverse of :meth:`expand`: rebuild the element from coefficients."""
        out = self.form.zero()
        for a, c in coeffs.items():
            out = out + self.element(a).scalar_mul(c)
        return out

    def r_row(self, a) -> dict:
        """Expansion of ``bar(E) - E`` for label ``a``.

        Nonzero entries can only sit at labels of strictly smaller grading;
        that triangularity is what makes the correction recursion terminate,
        so it is asserted here.
        """
        a = tuple(a)
        cached = self._r_rows.get(a)
        if cached is None:
            e = self.element(a)
            cached = self.expand(e.bar() - e)
            bound = r_of(a, self.seed.n)
            for key in cached:
                assert r_of(key, self.seed.n) < bound, (
                    f"bar-triangularity violated: {key} vs {a}"
                )
            self._r_rows[a] = cached
        return cached

    def grading(self, a) -> int:
        return r_of(a, self.seed.n)


class MutatedBasis:
    """Standard monomials of the once-mutated seed, realized in the
    original torus.

    Mutation happens at the order-last exchange index, which must be the
    last index of a seed in natural order (the only case the expansion
    formulas cover).  The mutated seed gets the rotated order that keeps it
    sign-compatible.
    """

    def __init__(self, base: EBasis):
        seed = base.seed
        if not seed.is_natural_order():
            raise ValueError("mutated-basis machinery needs the natural order")
        self.base = base
        self.k_mut = seed.n - 1
        mutated = mutate(seed, self.k_mut)
        rotated = (self.k_mut,) + tuple(range(self.k_mut))
        self.seed2 = replace(mutated, order=rotated)
        self.form2 = self.seed2.form()
        self.abstract = EBasis(self.seed2, expansion_cap=base.expansion_cap)
        self._x_dprime: dict = {}
        self._elements: dict = {}

    # -- mutated exchange data -------------------------------------------------

    def b_prime_column(self, k: int):
        return self.seed2.column(k)

    def e_dprime(self, k: int):
        """Leading exponent of the k-th exchange binomial after mutation."""
        return exchange_vector(self.seed2, k)

    def x_dprime(self, k: int) -> TorusElement:
        """The k-th mutated exchange element, expanded in the original torus.

        For the mutation index itself this is just the original generator;
        otherwise it is a standard-basis combination with Gaussian-binomial
        coefficients in ``v^{2 d_last}``.
        """
        cached = self._x_dprime.get(k)
        if cached is not None:
            return cached
        seed = self.base.seed
        n1 = self.k_mut
        if k == n1:
            out = self.base.form.monomial(basis_vector(seed.m, n1))
        else:
            bnk = seed.btilde[n1][k]
            ek = basis_vector(seed.m, k)
            en = basis_vector(seed.m, n1)
            frozen = lambda i: i >= seed.n
            phi_vec = vec_add(
                vec_add(vec_neg(ek), vec_scale(-bnk, en)),
                vec_sub(
                    vec_restrict(plus_part(vec_neg(self.b_prime_column(k))), frozen),
                    vec_restrict(plus_part(vec_neg(seed.column(k))), frozen),
                ),
            )
            out = self.base.element(phi_vec)
            dn = seed.d[n1]
            edpk = self.e_dprime(k)
            bn = seed.column(n1)
            for s in range(1, bnk + 1):
                coeff = (
                    gaussian_binomial(bnk, s)
                    .substitute_power(2 * dn)
                    .shifted(s * s * dn)
                )
                label = vec_sub(edpk, vec_scale(s, bn))
                out = out - self.base.element(label).scalar_mul(coeff)
        self._x_dprime[k] = out
        return out

    def prime_monomial(self, g) -> TorusElement:
        """The normalized monomial of the mutated torus, realized here.

        Computed as the index-ordered product of mutated-generator powers,
        rescaled by the power of ``v`` dictated by the mutated form.
        Requires a nonnegative entry at the mutation index, since the
        two-term exchange element is not invertible inside the torus.
        """
        seed = self.base.seed
        n1 = self.k_mut
        if g[n1] < 0:
            raise ValueError("mutated generator is not invertible in the torus")
        sigma = 0
        lam2 = self.seed2.lam
        for i in range(seed.m):
            if g[i]:
                for j in range(i + 1, seed.m):
                    if g[j]:
                        sigma += g[i] * g[j] * lam2[i][j]
        out = self.base.form.one()
        for i in range(seed.m):
            if not g[i]:
                continue
            if i == n1:
                out = out * self.base.x_prime(n1) ** g[i]
            else:
                out = out * self.base.form.monomial(
                    vec_scale(g[i], basis_vector(seed.m, i))
                )
        return out.scalar_mul(LaurentPoly.v_power(-sigma))

    def normalization_exponent(self, a) -> int:
        seed = self.base.seed
        n, n1 = seed.n, self.k_mut
        factors = [tuple(x if i >= n else max(x, 0) for i, x in enumerate(a))]
        qn = max(-a[n1], 0)
        if qn:
            factors.append(vec_scale(qn, self.e_dprime(n1)))
        for k in range(n1):
            qk = max(-a[k], 0)
            if qk:
                factors.append(vec_scale(qk, self.e_dprime(k)))
        sigma = 0
        for i in range(len(factors)):
            for j in range(i + 1, len(factors)):
                sigma += self.form2.skew(factors[i], factors[j])
        return -sigma

    def element(self, a) -> TorusElement:
        """The mutated-seed standard basis element, inside the original torus."""
        a = tuple(a)
        cached = self._elements.get(a)
        if cached is not None:
            return cached
        seed = self.base.seed
        n, n1 = seed.n, self.k_mut
        base_vec = tuple(x if i >= n else max(x, 0) for i, x in enumerate(a))
        out = self.prime_monomial(base_vec)
        qn = max(-a[n1], 0)
        if qn:
            out = out * self.base.form.monomial(
                vec_scale(qn, basis_vector(seed.m, n1))
            )
        for k in range(n1):
            qk = max(-a[k], 0)
            if qk:
                out = out * self.x_dprime(k) ** qk
        out = out.scalar_mul(LaurentPoly.v_power(self.normalization_exponent(a)))
        self._elements[a] = out
        return out

    def realize(self, coeffs: dict) -> TorusElement:
        """Map a mutated-basis expansion into the original torus."""
        out = self.base.form.zero()
        for a, c in coeffs.items():
            out = out + self.element(a).scalar_mul(c)
        return out

    def expansion_in_base(self, a) -> dict:
        """Coefficients of the realized mutated element in the original basis."""
        return self.base.expand(self.element(a))

    def unit_label(self, a):
        """The base label carrying the unit coefficient of the expansion.

        Exactly one coefficient must equal 1 with all others in ``v Z[v]``;
        raises ValueError when that fails, since everything downstream
        depends on it.
        """
        coeffs = self.expansion_in_base(a)
        unit = None
        for key, c in coeffs.items():
            if c.is_one():
                if unit is not None:
                    raise ValueError(f"two unit coefficients in expansion of {a}")
                unit = key
            elif not c.in_v_zv():
                raise ValueError(
                    f"coefficient at {key} in expansion of {a} is not in vZ[v]: {c}"
                )
        if unit is None:
            raise ValueError(f"no unit coefficient in expansion of {a}")
        return unit
