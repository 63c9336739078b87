"""The based quantum torus: lattice vectors, skew forms, twisted products.

A torus element is a finite ``Z^m``-indexed family of Laurent coefficients;
monomials multiply by ``X^e * X^f = v^L(e,f) * X^{e+f}`` for a fixed
skew-symmetric integer form ``L``.  The module also provides the
bar-involution (an anti-automorphism fixing every ``X^e``), weight-based
term orders with lexicographic tiebreak, and exact one-sided division by
greedy leading-term elimination.
"""

from __future__ import annotations

from fractions import Fraction

from .laurent import LaurentPoly, parse_laurent

__all__ = [
    "SkewForm",
    "TorusElement",
    "WeightOrder",
    "ContextMismatch",
    "DivisionError",
    "plus_part",
    "r_of",
    "vec_add",
    "vec_sub",
    "vec_neg",
    "vec_scale",
    "vec_dot",
    "vec_restrict",
    "basis_vector",
    "weight_order_for_columns",
    "divide",
    "quasi_commutes",
]


# ---------------------------------------------------------------------------
# Lattice vectors are plain integer tuples.


def plus_part(a):
    """Componentwise ``max(., 0)``."""
    return tuple(x if x > 0 else 0 for x in a)


def r_of(a, n: int) -> int:
    """Sum of the negative parts of the first ``n`` components.

    This is the grading that orders basis labels in the triangular-basis
    recursion.
    """
    return sum(-x for x in a[:n] if x < 0)


def vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vec_neg(a):
    return tuple(-x for x in a)


def vec_scale(k: int, a):
    return tuple(k * x for x in a)


def vec_dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b, strict=True))


def vec_restrict(a, keep):
    """Zero out every component whose index fails the predicate ``keep``."""
    return tuple(x if keep(i) else 0 for i, x in enumerate(a))


def basis_vector(m: int, i: int):
    return tuple(1 if j == i else 0 for j in range(m))


class ContextMismatch(ValueError):
    """Raised when torus elements from different contexts are combined."""


class DivisionError(ValueError):
    """Raised when exact torus division fails or exceeds its step cap."""


class SkewForm:
    """A skew-symmetric m x m integer bilinear form; the torus context."""

    __slots__ = ("m", "rows")

    def __init__(self, rows):
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        m = len(rows)
        if any(len(row) != m for row in rows):
            raise ValueError("skew form matrix must be square")
        for i in range(m):
            for j in range(m):
                if rows[i][j] != -rows[j][i]:
                    raise ValueError(f"matrix is not skew-symmetric at ({i}, {j})")
        self.m = m
        self.rows = rows

    def skew(self, e, f) -> int:
        """Evaluate the form on two lattice vectors."""
        total = 0
        for i, ei in enumerate(e):
            if ei:
                row = self.rows[i]
                total += ei * sum(row[j] * fj for j, fj in enumerate(f) if fj)
        return total

    def __eq__(self, other):
        return isinstance(other, SkewForm) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"SkewForm(m={self.m})"

    # -- element constructors ------------------------------------------------

    def zero(self) -> "TorusElement":
        return TorusElement(self, {})

    def one(self) -> "TorusElement":
        return self.monomial((0,) * self.m)

    def monomial(self, e, coeff=1) -> "TorusElement":
        e = tuple(int(x) for x in e)
        if len(e) != self.m:
            raise ValueError(f"exponent length {len(e)} != m = {self.m}")
        if isinstance(coeff, int):
            coeff = LaurentPoly.from_int(coeff)
        return TorusElement(self, {e: coeff} if coeff else {})

    def generator(self, i: int) -> "TorusElement":
        """The basis monomial at the ``i``-th (0-based) standard vector."""
        return self.monomial(basis_vector(self.m, i))

    def element(self, terms) -> "TorusElement":
        out = {}
        for e, c in terms.items():
            if isinstance(c, int):
                c = LaurentPoly.from_int(c)
            if c:
                out[tuple(e)] = c
        return TorusElement(self, out)


class TorusElement:
    """A finite Laurent combination of torus basis monomials ``X^e``."""

    __slots__ = ("form", "terms")

    def __init__(self, form: SkewForm, terms):
        self.form = form
        self.terms = terms  # dict exponent-tuple -> nonzero LaurentPoly

    def _check(self, other: "TorusElement"):
        if self.form != other.form:
            raise ContextMismatch("torus elements live in different contexts")

    # -- module structure ------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = self.form.monomial((0,) * self.form.m, other)
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e)
            s = c if s is None else s + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return TorusElement(self.form, terms)

    __radd__ = __add__

    def __neg__(self):
        return TorusElement(self.form, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.form.monomial((0,) * self.form.m, other)
        return self + (-other)

    def scalar_mul(self, c) -> "TorusElement":
        """Multiply by a Laurent (or integer) scalar."""
        if isinstance(c, int):
            c = LaurentPoly.from_int(c)
        if c.is_zero():
            return TorusElement(self.form, {})
        return TorusElement(self.form, {e: x * c for e, x in self.terms.items()})

    # -- twisted multiplication -------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            return self.scalar_mul(other)
        self._check(other)
        rows = self.form.rows
        out: dict = {}
        # Precompute L*f for each right-hand exponent; then L(e, f) is a dot.
        for f, cf in other.terms.items():
            lf = tuple(
                sum(row[j] * fj for j, fj in enumerate(f) if fj) for row in rows
            )
            for e, ce in self.terms.items():
                twist = sum(ei * lfi for ei, lfi in zip(e, lf) if ei)
                g = vec_add(e, f)
                contrib = (ce * cf).shifted(twist)
                s = out.get(g)
                s = contrib if s is None else s + contrib
                if s:
                    out[g] = s
                else:
                    out.pop(g, None)
        return TorusElement(self.form, out)

    def __rmul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            return self.scalar_mul(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            if self.is_monomial():
                e, c = self.monomial_term()
                if not c.is_unit():
                    raise ValueError("only unit monomials are invertible")
                inv = self._monomial_inverse()
                return inv ** (-k)
            raise ValueError("negative powers only defined for monomials")
        result = self.form.one()
        for _ in range(k):
            result = result * self
        return result

    def _monomial_inverse(self) -> "TorusElement":
        e, c = self.monomial_term()
        (exp, coeff) = next(iter(c.items()))
        if abs(coeff) != 1:
            raise ValueError("coefficient is not a unit")
        twist = self.form.skew(e, vec_neg(e))
        return self.form.monomial(vec_neg(e), LaurentPoly.v_power(-exp - twist, coeff))

    # -- involution --------------------------------------------------------------

    def bar(self) -> "TorusElement":
        """Bar-involution: fixes every ``X^e`` and sends ``v -> v^-1``."""
        return TorusElement(self.form, {e: c.bar() for e, c in self.terms.items()})

    # -- structure views -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def monomial_term(self):
        if len(self.terms) != 1:
            raise ValueError("element is not a monomial")
        return next(iter(self.terms.items()))

    def coefficient(self, e) -> LaurentPoly:
        return self.terms.get(tuple(e), LaurentPoly.zero())

    def support(self):
        return set(self.terms)

    def __eq__(self, other):
        if not isinstance(other, TorusElement):
            if isinstance(other, int):
                return self == self.form.monomial((0,) * self.form.m, other)
            return NotImplemented
        return self.form == other.form and self.terms == other.terms

    def __hash__(self):
        return hash((self.form, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def leading_term(self, order: "WeightOrder"):
        """The ``(exponent, coefficient)`` pair maximizing the order key."""
        if not self.terms:
            raise ValueError("zero element has no leading term")
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    # -- text and records ---------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            mono = "X^(" + ",".join(str(x) for x in e) + ")"
            items = c.items()
            if len(items) == 1:
                (ce, cc) = items[0]
                if (ce, cc) == (0, 1):
                    parts.append(mono)
                    continue
                if (ce, cc) == (0, -1):
                    parts.append(f"-{mono}")
                    continue
                parts.append(f"{c}*{mono}")
            else:
                parts.append(f"({c})*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"TorusElement({self})"

    def to_records(self):
        """Serializable list of ``{exp, coeff}`` records, sorted by exponent."""
        return [
            {"exp": list(e), "coeff": str(self.terms[e])} for e in sorted(self.terms)
        ]

    @classmethod
    def from_records(cls, form: SkewForm, records) -> "TorusElement":
        terms = {}
        for rec in records:
            e = tuple(int(x) for x in rec["exp"])
            if len(e) != form.m:
                raise ValueError("exponent length does not match context")
            c = parse_laurent(rec["coeff"])
            if c:
                terms[e] = terms.get(e, LaurentPoly.zero()) + c
        return cls(form, {e: c for e, c in terms.items() if c})


class WeightOrder:
    """Total order on exponents: weight functional first, then lex."""

    __slots__ = ("weights",)

    def __init__(self, weights):
        self.weights = tuple(int(w) for w in weights)

    def key(self, e):
        return (vec_dot(self.weights, e), e)

    def less(self, e, f) -> bool:
        return self.key(e) < self.key(f)

    def __repr__(self):
        return f"WeightOrder({self.weights})"


def weight_order_for_columns(columns, m: int, rng=None, attempts: int = 2000):
    """An integer weight vector ``w`` with ``w . b > 0`` for every column ``b``.

    Solves ``w . b = 1`` by fraction-exact elimination (free coordinates set
    to zero) and clears denominators; falls back to randomized search.  The
    columns of a compatible seed are linearly independent, so a solution
    exists.
    """
    cols = [tuple(col) for col in columns]
    if not cols:
        return WeightOrder((0,) * m)
    # Row-reduce the n x m system [cols | 1] over Q.
    rows = [[Fraction(x) for x in col] + [Fraction(1)] for col in cols]
    pivots = []
    rank = 0
    for col in range(m):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        lead = rows[rank][col]
        rows[rank] = [x / lead for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[rank])]
        pivots.append(col)
        rank += 1
    if rank == len(cols):
        w = [Fraction(0)] * m
        for r, col in enumerate(pivots):
            w[col] = rows[r][m]
        denom = 1
        for x in w:
            denom = denom * x.denominator // _gcd(denom, x.denominator)
        cand = tuple(int(x * denom) for x in w)
        if all(vec_dot(cand, b) > 0 for b in cols):
            return WeightOrder(cand)
    # Randomized fallback (kept deterministic by callers passing a seeded rng).
    if rng is None:
        import random

        rng = random.Random(0)
    for _ in range(attempts):
        cand = tuple(rng.randint(-6, 6) for _ in range(m))
        if all(vec_dot(cand, b) > 0 for b in cols):
            return WeightOrder(cand)
    raise ValueError("could not find a positive weight vector for the columns")


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a) or 1


def divide(
    p: TorusElement,
    q: TorusElement,
    side: str,
    order: WeightOrder,
    cap: int = 10**6,
) -> TorusElement:
    """Exact one-sided torus quotient.

    Returns ``r`` with ``r * q == p`` (``side="right"``) or ``q * r == p``
    (``side="left"``).  Works by cancelling the order-leading term of the
    running remainder against the leading term of ``q``; each step solves the
    one-monomial equation exactly, so the quotient is exact whenever division
    is possible.  Raises :class:`DivisionError` after ``cap`` steps or on a
    coefficient that does not divide.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    if q.is_zero():
        raise ZeroDivisionError("division by zero torus element")
    p._check(q)
    form = p.form
    gq, cq = q.leading_term(order)
    rem = p
    quot_terms: dict = {}
    steps = 0
    while not rem.is_zero():
        steps += 1
        if steps > cap:
            raise DivisionError("not divisible within cap")
        gr, cr = rem.leading_term(order)
        g = vec_sub(gr, gq)
        # Solve for the unknown coefficient t in  (t X^g)(c_q X^gq) = c_r X^gr
        # (right division; the left case mirrors the twist).
        if side == "right":
            twist = form.skew(g, gq)
        else:
            twist = form.skew(gq, g)
        try:
            t = cr.shifted(-twist).divide_exact(cq)
        except ValueError as exc:
            raise DivisionError("not divisible within cap") from exc
        quot_terms[g] = quot_terms.get(g, LaurentPoly.zero()) + t
        piece = form.monomial(g, t)
        rem = rem - (piece * q if side == "right" else q * piece)
    return form.element(quot_terms)


def quasi_commutes(x: TorusElement, y: TorusElement, t: int) -> bool:
    """Whether ``x * y == v^{2t} * y * x`` holds exactly."""
    return x * y == (y * x).scalar_mul(LaurentPoly.v_power(2 * t))
