"""Crystal monomials for the rank-2 principal seed with parameters (b, c).

The monomials are indexed by 7-tuples ``(m3, m4, m'1, m2, m1, m'2, m''1)``
whose last five entries are nonnegative; they interpolate between the
standard basis of the seed and the standard basis of its mutation, and they
satisfy the straightening identities that drive the basis-independence
argument.  Everything here is verified by direct torus arithmetic.
"""

from __future__ import annotations

from .ebasis import EBasis, MutatedBasis
from .laurent import LaurentPoly, gaussian_binomial
from .lusztig import TriangularTable
from .report import Report
from .seed import QuantumSeed, principal_seed
from .torus import TorusElement

__all__ = ["rank2_principal_seed", "Rank2Crystal"]


def rank2_principal_seed(b: int, c: int) -> QuantumSeed:
    """Principal quantization of the rank-2 exchange matrix [[0,-b],[c,0]]."""
    if b < 1 or c < 1:
        raise ValueError("parameters must be positive integers")
    return principal_seed(((0, -b), (c, 0)), (c, b))


class Rank2Crystal:
    """Crystal-monomial machinery bound to one (b, c) principal seed."""

    def __init__(self, b: int, c: int):
        self.b = b
        self.c = c
        self.seed = rank2_principal_seed(b, c)
        self.basis = EBasis(self.seed)
        self.mutated = MutatedBasis(self.basis)
        self.table = TriangularTable(self.basis)
        self.form = self.basis.form
        self.X1 = self.form.monomial((1, 0, 0, 0))
        self.X2 = self.form.monomial((0, 1, 0, 0))
        self.X1p = self.basis.x_prime(0)
        self.X2p = self.basis.x_prime(1)
        self.X1pp = self.mutated.x_dprime(0)
        # Leading-term replacements for the three non-monomial factors.
        self._lt = {
            "x1p": (-1, 0, 0, 0),
            "x2p": (0, -1, 0, 1),
            "x1pp": (-1, 0, 1, c),
        }
        self._monomials: dict = {}

    # -- index set ----------------------------------------------------------

    @staticmethod
    def in_index_set(mm) -> bool:
        return len(mm) == 7 and all(x >= 0 for x in mm[2:])

    @staticmethod
    def in_interior(mm) -> bool:
        """The subset where at most two of the three special powers meet."""
        _, _, m1p, _, m1, _, m1pp = mm
        return m1p * m1 * m1pp == 0

    def raw_monomial(self, mm) -> TorusElement:
        """The ordered product of generator powers for the 7-tuple."""
        m3, m4, m1p, m2, m1, m2p, m1pp = mm
        out = self.form.monomial((0, 0, m3, m4))
        out = out * self.X1p**m1p
        out = out * self.form.monomial((0, m2, 0, 0))
        out = out * self.form.monomial((m1, 0, 0, 0))
        out = out * self.X2p**m2p
        out = out * self.X1pp**m1pp
        return out

    def normalization_exponent(self, mm) -> int:
        """Normalizes the leading term up to the interior twist correction."""
        m3, m4, m1p, m2, m1, m2p, m1pp = mm
        mon = self.form.monomial((0, 0, m3, m4))
        for vec, power in (
            (self._lt["x1p"], m1p),
            ((0, 1, 0, 0), m2),
            ((1, 0, 0, 0), m1),
            (self._lt["x2p"], m2p),
            (self._lt["x1pp"], m1pp),
        ):
            if power:
                mon = mon * self.form.monomial(tuple(power * x for x in vec))
        _, coeff = mon.monomial_term()
        ((sigma, cc),) = coeff.items()
        assert cc == 1
        return self.c * m1p * m1pp - sigma

    def monomial(self, mm) -> TorusElement:
        """The normalized crystal monomial for an index in the set."""
        mm = tuple(mm)
        if not self.in_index_set(mm):
            raise ValueError(f"index {mm} outside the admissible set")
        cached = self._monomials.get(mm)
        if cached is None:
            nu = self.normalization_exponent(mm)
            cached = self.raw_monomial(mm).scalar_mul(LaurentPoly.v_power(nu))
            self._monomials[mm] = cached
        return cached

    def nu_explicit(self, mm) -> int:
        """Closed form of the normalization exponent."""
        b, c = self.b, self.c
        m3, m4, m1p, m2, m1, m2p, m1pp = mm
        return (
            c * (m1p - m1 - (b * c - 1) * m1pp - b * m2p) * m3
            + b * (c * m1pp + m2p - m2) * m4
            + c * m1 * m1pp
            + b * m2 * m2p
            + b * c * m2 * m1pp
        )

    def pi(self, mm):
        """Label of the standard-basis element the monomial reduces to.

        Invariant under every straightening step and matching the direct
        identification on the terminal indices.
        """
        c = self.c
        m3, m4, m1p, m2, m1, m2p, m1pp = mm
        u = min(m1, m1pp)
        return (
            m1 - m1p - m1pp,
            m2 - m2p - c * (m1pp - u),
            m3 + u,
            m4 + min(m2 + c * u, m2p + c * m1pp),
        )

    def reduction_step(self, mm):
        """First term of the first applicable straightening identity.

        The priority is: third, fourth, second, first.  Returns None on the
        terminal indices (those naming standard basis elements directly).
        """
        c = self.c
        m3, m4, m1p, m2, m1, m2p, m1pp = mm
        if m1 * m1pp > 0:
            return (m3 + 1, m4 + c, m1p, m2, m1 - 1, m2p, m1pp - 1)
        if m1 == 0 and m1pp > 0:
            return (m3, m4, m1p + 1, m2, 0, m2p + c, m1pp - 1)
        if m2 * m2p > 0:
            return (m3, m4 + 1, m1p, m2 - 1, m1, m2p - 1, m1pp)
        if m1p * m1 > 0:
            return (m3, m4, m1p - 1, m2, m1 - 1, m2p, m1pp)
        return None

    @staticmethod
    def label_to_index(a, primed: bool) -> tuple:
        """The 7-tuple realizing a standard (or mutated-standard) label."""
        a1, a2, a3, a4 = a
        if primed:
            return (a3, a4, 0, max(-a2, 0), max(a1, 0), max(a2, 0), max(-a1, 0))
        return (a3, a4, max(-a1, 0), max(a2, 0), max(a1, 0), max(-a2, 0), 0)

    # -- straightening identities ------------------------------------------------

    def _check_identity_1(self, mm, rep: Report):
        """Applicable when both first-slot powers are positive."""
        b, c = self.b, self.c
        m3, m4, m1p, m2, m1, m2p, m1pp = mm
        lhs = self.monomial(mm)
        t1 = self.monomial((m3, m4, m1p - 1, m2, m1 - 1, m2p, m1pp)).scalar_mul(
            LaurentPoly.v_power(c * m1pp)
        )
        t2 = self.monomial((m3 + 1, m4, m1p - 1, m2 + c, m1 - 1, m2p, m1pp)).scalar_mul(
            LaurentPoly.v_power(c * (m1p + m1 - 1))
        )
        rep.record(lhs == t1 + t2, f"first identity fails at {mm}")

    def _check_identity_2(self, mm, rep: Report):
        # Second coefficient exponent is b*(m2 + m'2 - 1); derivable from the
        # exchange product since the commutation twists collected while moving
        # the frozen monomial leftwards cancel against the normalization.
        b, c = self.b, self.c
        m3, m4, m1p, m2, m1, m2p, m1pp = mm
        lhs = self.monomial(mm)
        t1 = self.monomial((m3, m4 + 1, m1p, m2 - 1, m1, m2p - 1, m1pp))
        t2 = self.monomial((m3, m4, m1p, m2 - 1, m1 + b, m2p - 1, m1pp)).scalar_mul(
            LaurentPoly.v_power(b * (m2 + m2p - 1))
        )
        rep.record(lhs == t1 + t2, f"second identity fails at {mm}")

    def _check_identity_3(self, mm, rep: Report):
        b, c = self.b, self.c
        m3, m4, m1p, m2, m1, m2p, m1pp = mm
        lhs = self.monomial(mm)
        t1 = self.monomial((m3 + 1, m4 + c, m1p, m2, m1 - 1, m2p, m1pp - 1)).scalar_mul(
            LaurentPoly.v_power(c * m1p)
        )
        t2 = self.monomial((m3, m4, m1p, m2, m1 - 1, m2p + c, m1pp - 1)).scalar_mul(
            LaurentPoly.v_power(c * (m1 + m1pp - 1))
        )
        rep.record(lhs == t1 + t2, f"third identity fails at {mm}")

    def _check_identity_4(self, mm, rep: Report):
        b, c = self.b, self.c
        m3, m4, m1p, m2, m1, m2p, m1pp = mm
        lhs = self.monomial(mm)
        rhs = self.monomial((m3, m4, m1p + 1, m2, 0, m2p + c, m1pp - 1))
        for s in range(1, c + 1):
            coeff = (
                gaussian_binomial(c, s)
                .substitute_power(2 * b)
                .shifted(c * m1p + b * s * (m2 + m2p + s))
            )
            rhs = rhs - self.monomial(
                (m3 + 1, m4 + c - s, m1p, m2, b * s - 1, m2p, m1pp - 1)
            ).scalar_mul(coeff)
        rep.record(lhs == rhs, f"fourth identity fails at {mm}")

    def verify_block_relations(self) -> Report:
        """The three short product relations the identities are built from."""
        rep = Report(name=f"rank-2 block relations (b={self.b}, c={self.c})")
        b, c = self.b, self.c
        v = LaurentPoly.v_power
        lhs = self.X1p * self.X1
        rhs = self.form.one() + (
            self.form.monomial((0, 0, 1, 0)) * self.X2**c
        ).scalar_mul(v(c))
        rep.record(lhs == rhs, "first exchange product fails")
        lhs = self.X2 * self.X2p
        rhs = self.form.monomial((0, 0, 0, 1)).scalar_mul(v(-b)) + self.X1**b
        rep.record(lhs == rhs, "second exchange product fails")
        lhs = self.X1 * self.X1pp
        rhs = self.form.monomial((0, 0, 1, c)).scalar_mul(v(-c)) + self.X2p**c
        rep.record(lhs == rhs, "mutated exchange product fails")
        return rep

    def verify_identities(self, bound: int = 2, frozen_range=(-1, 1)) -> Report:
        """Run every applicable straightening identity on a window of indices."""
        rep = Report(name=f"straightening identities (b={self.b}, c={self.c})")
        rep.absorb(self.verify_block_relations())
        lo, hi = frozen_range
        span = range(lo, hi + 1)
        nonneg = range(0, bound + 1)
        for m3 in span:
            for m4 in span:
                for m1p in nonneg:
                    for m2 in nonneg:
                        for m1 in nonneg:
                            for m2p in nonneg:
                                for m1pp in nonneg:
                                    mm = (m3, m4, m1p, m2, m1, m2p, m1pp)
                                    if m1p * m1 > 0:
                                        self._check_identity_1(mm, rep)
                                    if m2 * m2p > 0:
                                        self._check_identity_2(mm, rep)
                                    if m1 * m1pp > 0:
                                        self._check_identity_3(mm, rep)
                                    if m1 == 0 and m1pp > 0:
                                        self._check_identity_4(mm, rep)
        return rep

    def verify_nu_agreement(self, count: int, rng, bound: int = 4) -> Report:
        """Condition-derived normalization equals the closed form."""
        rep = Report(name=f"normalization closed form (b={self.b}, c={self.c})")
        for _ in range(count):
            mm = (
                rng.randint(-bound, bound),
                rng.randint(-bound, bound),
                rng.randint(0, bound),
                rng.randint(0, bound),
                rng.randint(0, bound),
                rng.randint(0, bound),
                rng.randint(0, bound),
            )
            rep.record(
                self.normalization_exponent(mm) == self.nu_explicit(mm),
                f"normalization mismatch at {mm}",
            )
        return rep

    def verify_standard_correspondence(self, bound: int = 2) -> Report:
        """Crystal monomials at unmixed indices are standard basis elements."""
        rep = Report(name=f"standard correspondence (b={self.b}, c={self.c})")
        for a1 in range(-bound, bound + 1):
            for a2 in range(-bound, bound + 1):
                for a3 in range(-1, 2):
                    for a4 in range(-1, 2):
                        a = (a1, a2, a3, a4)
                        rep.record(
                            self.monomial(self.label_to_index(a, primed=False))
                            == self.basis.element(a),
                            f"standard correspondence fails at {a}",
                        )
                        rep.record(
                            self.monomial(self.label_to_index(a, primed=True))
                            == self.mutated.element(a),
                            f"mutated correspondence fails at {a}",
                        )
        return rep

    def verify_reduction_targets(self, bound: int = 2) -> Report:
        """Interior monomials expand with a unit at the predicted label and
        every other coefficient in ``v Z[v]``."""
        rep = Report(name=f"reduction targets (b={self.b}, c={self.c})")
        nonneg = range(0, bound + 1)
        for m3 in range(-1, 2):
            for m4 in range(-1, 2):
                for m1p in nonneg:
                    for m2 in nonneg:
                        for m1 in nonneg:
                            for m2p in nonneg:
                                for m1pp in nonneg:
                                    mm = (m3, m4, m1p, m2, m1, m2p, m1pp)
                                    if not self.in_interior(mm):
                                        continue
                                    coeffs = self.basis.expand(self.monomial(mm))
                                    target = self.pi(mm)
                                    ok = all(c.in_zv() for c in coeffs.values())
                                    units = [
                                        key
                                        for key, cf in coeffs.items()
                                        if cf.constant_term() != 0
                                    ]
                                    ok = (
                                        ok
                                        and units == [target]
                                        and coeffs[target].constant_term() == 1
                                    )
                                    rep.record(
                                        ok, f"reduction target fails at {mm}"
                                    )
        return rep
