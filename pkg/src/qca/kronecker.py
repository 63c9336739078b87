"""The rank-2 affine quantum cluster algebra with exchange entries +-2.

All cluster variables are indexed by the integers; consecutive pairs
quasi-commute with twist 2, and each new variable is produced from the
exchange relation by one exact torus division, so every variable lands in
the initial torus.  The imaginary-root element and its Chebyshev family
fill in the non-cluster part of the triangular basis; the verifiers below
check that against the recursion output, together with the labeling of
cluster monomials and the multiplication table of standard monomials by the
0-th variable.
"""

from __future__ import annotations

from .ebasis import EBasis
from .laurent import LaurentPoly
from .lusztig import TriangularTable
from .report import Report
from .seed import QuantumSeed
from .torus import TorusElement, divide

__all__ = ["a11_seed", "KroneckerAlgebra"]


def a11_seed() -> QuantumSeed:
    """The 2x2 seed with exchange entries +-2, twist matrix [[0,-1],[1,0]]."""
    return QuantumSeed(
        m=2,
        n=2,
        btilde=((0, -2), (2, 0)),
        lam=((0, -1), (1, 0)),
        d=(2, 2),
        order=(0, 1),
    )


class KroneckerAlgebra:
    """Cluster variables, Chebyshev elements and verifiers for the seed above."""

    def __init__(self, horizon: int = 8, division_cap: int = 10**6):
        self.seed = a11_seed()
        self.basis = EBasis(self.seed)
        self.table = TriangularTable(self.basis)
        self.horizon = horizon
        self.division_cap = division_cap
        self.form = self.basis.form
        self._vars = {
            1: self.form.monomial((1, 0)),
            2: self.form.monomial((0, 1)),
        }

    def var(self, m: int) -> TorusElement:
        """The cluster variable with index ``m``; computed by exact division
        from the exchange relation and memoized."""
        if abs(m) > self.horizon:
            raise ValueError(f"index {m} beyond configured horizon {self.horizon}")
        if m in self._vars:
            return self._vars[m]
        lo, hi = min(self._vars), max(self._vars)
        while hi < m:
            rhs = (self.var(hi) ** 2).scalar_mul(LaurentPoly.v_power(2)) + 1
            self._vars[hi + 1] = divide(
                rhs, self.var(hi - 1), "right", self.basis.order, self.division_cap
            )
            hi += 1
        while lo > m:
            rhs = (self.var(lo) ** 2).scalar_mul(LaurentPoly.v_power(2)) + 1
            self._vars[lo - 1] = divide(
                rhs, self.var(lo + 1), "left", self.basis.order, self.division_cap
            )
            lo -= 1
        return self._vars[m]

    def x_delta(self) -> TorusElement:
        v = LaurentPoly.v_power
        return (self.var(3) * self.var(0)).scalar_mul(v(1)) - (
            self.var(2) * self.var(1)
        ).scalar_mul(v(3))

    def chebyshev(self, r: int) -> TorusElement:
        """Normalized second-kind Chebyshev evaluation at the imaginary-root
        element, via the three-term recurrence."""
        if r < 0:
            if r == -1:
                return self.form.zero()
            raise ValueError("only r >= -1 supported")
        prev, cur = self.form.zero(), self.form.one()
        z = self.x_delta()
        for _ in range(r):
            prev, cur = cur, z * cur - prev
        return cur

    def cluster_monomial(self, m: int, a1: int, a2: int) -> TorusElement:
        """The bar-invariant monomial on the cluster ``(m, m+1)``."""
        if a1 < 0 or a2 < 0:
            raise ValueError("cluster monomial exponents must be nonnegative")
        out = self.var(m) ** a1 * self.var(m + 1) ** a2
        return out.scalar_mul(LaurentPoly.v_power(a1 * a2))

    @staticmethod
    def alpha(m: int):
        """Label of the cluster variable with index ``m``."""
        if m <= 1:
            return (m, m - 1)
        return (2 - m, 3 - m)

    # -- verifiers --------------------------------------------------------------

    def verify_chebyshev_family(self, r_max: int) -> Report:
        """Triangular elements on the diagonal ray equal the Chebyshev family,
        and the family telescopes into the two-product closed form."""
        rep = Report(name=f"chebyshev family r<= {r_max}")
        v = LaurentPoly.v_power
        for r in range(0, r_max + 1):
            s = self.chebyshev(r)
            product_form = (self.var(r + 2) * self.var(0)).scalar_mul(v(r)) - (
                self.var(r + 1) * self.var(1)
            ).scalar_mul(v(r + 2))
            rep.record(s == product_form, f"product form fails at r={r}")
            rep.record(s.bar() == s, f"bar-invariance fails at r={r}")
        for r in range(1, r_max + 1):
            c = self.table.element((-r, -r))
            rep.record(
                c == self.chebyshev(r),
                f"triangular element at (-{r},-{r}) is not the degree-{r} element",
            )
        return rep

    def verify_cluster_monomial_labels(
        self, m_range=(-1, 3), a_max: int = 2
    ) -> Report:
        """Cluster monomials appear in the triangular basis at the labels
        built from the variable-label vectors."""
        rep = Report(name=f"cluster monomial labels m in {m_range}, a <= {a_max}")
        for m in range(m_range[0], m_range[1] + 1):
            al, ar = self.alpha(m), self.alpha(m + 1)
            for a1 in range(a_max + 1):
                for a2 in range(a_max + 1):
                    label = (a1 * al[0] + a2 * ar[0], a1 * al[1] + a2 * ar[1])
                    got = self.table.element(label)
                    want = self.cluster_monomial(m, a1, a2)
                    rep.record(
                        got == want,
                        f"label {label} (m={m}, a=({a1},{a2})) mismatch",
                    )
        return rep

    def _e_times_x0_expected(self, a1: int, a2: int):
        """Case table for the standard-monomial multiplication check."""
        E = self.basis.element
        v = LaurentPoly.v_power
        if a2 <= 0:
            return self.form.zero()
        if a1 >= 0:
            return E((a1 + 2, a2 - 1)).scalar_mul(v(2 * a2))
        if a1 == -1:
            return E((1, a2 - 1)).scalar_mul(v(2 * a2)) + E((1, a2 + 1)).scalar_mul(
                v(2 * (a2 + 2))
            )
        mid = v(2 * (a2 - a1 - 1)) + v(2 * (a2 - a1 + 1))
        return (
            E((a1 + 2, a2 - 1)).scalar_mul(v(2 * a2))
            + E((a1 + 2, a2 + 1)).scalar_mul(mid)
            + E((a1 + 2, a2 + 3)).scalar_mul(v(2 * (a2 - 2 * a1)))
        )

    def verify_e_times_x0(self, bound: int = 3) -> Report:
        """Exact case formulas for (twisted) standard monomial times the 0-th
        variable, on the centered square window of the given radius."""
        rep = Report(name=f"standard monomial times X_0, |a| <= {bound}")
        x0 = self.var(0)
        for a1 in range(-bound, bound + 1):
            for a2 in range(-bound, bound + 1):
                lhs = (self.basis.element((a1, a2)) * x0).scalar_mul(
                    LaurentPoly.v_power(-a1)
                ) - self.basis.element((a1, a2 - 1))
                want = self._e_times_x0_expected(a1, a2)
                rep.record(lhs == want, f"case formula fails at a=({a1},{a2})")
        return rep
