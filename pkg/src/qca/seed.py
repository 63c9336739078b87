"""Quantum seeds: validation, mutation, acyclicity, derived constructions.

A seed is the data ``(m, n, Btilde, Lambda, d, order)``: an extended
integer exchange matrix with ``n`` exchange columns and ``m - n`` frozen
rows, a compatible skew-symmetric form on ``Z^m``, positive symmetrizers,
and a linear order on the exchange indices.  All indices in this module are
0-based; the JSON seed files use 1-based order entries and mutation indices,
converted at the I/O boundary.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, replace
from fractions import Fraction

from .torus import (
    SkewForm,
    basis_vector,
    plus_part,
    vec_add,
    vec_neg,
    vec_restrict,
    weight_order_for_columns,
)

__all__ = [
    "QuantumSeed",
    "SeedReport",
    "validate",
    "is_acyclic",
    "compatible_orders",
    "sink_or_source",
    "mutate",
    "exchange_vector",
    "principal_seed",
    "double_seed",
    "bullet_exponents",
    "bullet_generators",
    "seed_to_dict",
    "seed_from_dict",
    "load_seed",
    "save_seed",
    "seed_hash",
]


@dataclass(frozen=True)
class QuantumSeed:
    m: int
    n: int
    btilde: tuple  # m rows of n entries
    lam: tuple  # m rows of m entries, skew-symmetric
    d: tuple  # n positive symmetrizers
    order: tuple  # permutation of range(n)

    def __post_init__(self):
        if not (1 <= self.n <= self.m):
            raise ValueError("need 1 <= n <= m")
        if len(self.btilde) != self.m or any(len(r) != self.n for r in self.btilde):
            raise ValueError("extended exchange matrix must be m x n")
        if len(self.lam) != self.m or any(len(r) != self.m for r in self.lam):
            raise ValueError("skew form matrix must be m x m")
        if len(self.d) != self.n or any(x <= 0 for x in self.d):
            raise ValueError("need n positive symmetrizers")
        if sorted(self.order) != list(range(self.n)):
            raise ValueError("order must be a permutation of the exchange indices")

    def column(self, k: int):
        """The k-th exchange column as a vector in Z^m."""
        return tuple(self.btilde[i][k] for i in range(self.m))

    def form(self) -> SkewForm:
        return SkewForm(self.lam)

    def skew(self, e, f) -> int:
        return self.form().skew(e, f)

    def exchange_matrix(self):
        """The top n x n block."""
        return tuple(tuple(row[:]) for row in (r[: self.n] for r in self.btilde[: self.n]))

    def is_natural_order(self) -> bool:
        return self.order == tuple(range(self.n))


def _order_violations(seed: QuantumSeed):
    pos = {k: i for i, k in enumerate(seed.order)}
    bad = []
    for i in range(seed.n):
        for j in range(seed.n):
            if pos[i] < pos[j] and seed.btilde[i][j] > 0:
                bad.append((i, j))
    return bad


@dataclass
class SeedReport:
    skew_violations: list
    compat_violations: list
    order_violations: list
    acyclic: bool
    compatible_orders: list
    sink_source_exchange: list
    sink_source_extended: list

    @property
    def valid(self) -> bool:
        return not self.skew_violations and not self.compat_violations

    @property
    def order_compatible(self) -> bool:
        return not self.order_violations

    def lines(self):
        out = []
        out.append("valid" if self.valid else "INVALID")
        for i, j in self.skew_violations:
            out.append(f"  skew-symmetry violated at ({i + 1}, {j + 1})")
        for i, j in self.compat_violations:
            out.append(f"  compatibility violated at (i={i + 1}, j={j + 1})")
        out.append("acyclic" if self.acyclic else "not acyclic")
        if self.acyclic:
            orders = ", ".join(
                "[" + ",".join(str(k + 1) for k in o) + "]" for o in self.compatible_orders
            )
            out.append(f"compatible orders: {orders}")
        out.append(
            "seed order compatible"
            if self.order_compatible
            else "seed order NOT compatible: " + str(self.order_violations)
        )
        for k, (ex, ext) in enumerate(
            zip(self.sink_source_exchange, self.sink_source_extended)
        ):
            out.append(f"  k={k + 1}: {ex} in exchange graph, {ext} in extended graph")
        return out

    def to_dict(self):
        return {
            "valid": self.valid,
            "acyclic": self.acyclic,
            "order_compatible": self.order_compatible,
            "skew_violations": self.skew_violations,
            "compat_violations": self.compat_violations,
            "order_violations": self.order_violations,
            "compatible_orders": [[k + 1 for k in o] for o in self.compatible_orders],
            "sink_source_exchange": self.sink_source_exchange,
            "sink_source_extended": self.sink_source_extended,
        }


def validate(seed: QuantumSeed) -> SeedReport:
    """Check both seed invariants and classify every exchange index.

    Confirms skew-symmetry of the form and the compatibility condition
    (the form pairs the j-th exchange column with the i-th basis vector to
    ``d_j`` exactly when ``i == j``, else 0), or lists every violating pair.
    """
    skew_bad = []
    for i in range(seed.m):
        for j in range(seed.m):
            if seed.lam[i][j] != -seed.lam[j][i]:
                skew_bad.append((i, j))
    form = None
    compat_bad = []
    if not skew_bad:
        form = seed.form()
        for j in range(seed.n):
            bj = seed.column(j)
            for i in range(seed.m):
                want = seed.d[j] if i == j else 0
                if form.skew(bj, basis_vector(seed.m, i)) != want:
                    compat_bad.append((i, j))
    acyc = is_acyclic(seed)
    orders = compatible_orders(seed) if acyc else []
    return SeedReport(
        skew_violations=skew_bad,
        compat_violations=compat_bad,
        order_violations=_order_violations(seed),
        acyclic=acyc,
        compatible_orders=orders,
        sink_source_exchange=[
            sink_or_source(seed, k, extended=False) for k in range(seed.n)
        ],
        sink_source_extended=[
            sink_or_source(seed, k, extended=True) for k in range(seed.n)
        ],
    )


def _exchange_edges(seed: QuantumSeed):
    """Directed edges j -> i of the exchange graph (entry (i, j) positive)."""
    return [
        (j, i)
        for i in range(seed.n)
        for j in range(seed.n)
        if seed.btilde[i][j] > 0
    ]


def is_acyclic(seed: QuantumSeed) -> bool:
    edges = _exchange_edges(seed)
    succ = {k: [] for k in range(seed.n)}
    indeg = {k: 0 for k in range(seed.n)}
    for j, i in edges:
        succ[j].append(i)
        indeg[i] += 1
    queue = [k for k in range(seed.n) if indeg[k] == 0]
    seen = 0
    while queue:
        k = queue.pop()
        seen += 1
        for i in succ[k]:
            indeg[i] -= 1
            if indeg[i] == 0:
                queue.append(i)
    return seen == seed.n


def compatible_orders(seed: QuantumSeed):
    """All linear orders with no positive entry above the diagonal.

    These are exactly the linear extensions of the exchange graph, so they
    are enumerated by repeatedly picking an available source.
    """
    succ = {k: set() for k in range(seed.n)}
    indeg = {k: 0 for k in range(seed.n)}
    for j, i in _exchange_edges(seed):
        if i not in succ[j]:
            succ[j].add(i)
            indeg[i] += 1
    results = []

    def rec(prefix, indeg_now):
        if len(prefix) == seed.n:
            results.append(tuple(prefix))
            return
        for k in range(seed.n):
            if k not in prefix and indeg_now[k] == 0:
                nxt = dict(indeg_now)
                nxt[k] = -1
                for i in succ[k]:
                    nxt[i] -= 1
                rec(prefix + [k], nxt)

    rec([], indeg)
    return results


def sink_or_source(seed: QuantumSeed, k: int, extended: bool = True) -> str:
    """Classify exchange index ``k`` in the exchange graph.

    With ``extended=True`` frozen rows also contribute outgoing edges
    (edge ``k -> i`` whenever the (i, k) entry of the extended matrix is
    positive), which can demote a sink to "neither"; incoming edges only
    ever come from exchange indices.  An isolated vertex reports "source".
    """
    if not 0 <= k < seed.n:
        raise ValueError("index out of exchange range")
    rows = seed.m if extended else seed.n
    incoming = any(seed.btilde[k][j] > 0 for j in range(seed.n))
    outgoing = any(seed.btilde[i][k] > 0 for i in range(rows))
    if not incoming:
        return "source"
    if not outgoing:
        return "sink"
    return "neither"


def exchange_vector(seed: QuantumSeed, k: int):
    """The exponent ``-e_k + [b_k]_+`` of the leading exchange monomial."""
    if not 0 <= k < seed.n:
        raise ValueError("index out of exchange range")
    return vec_add(vec_neg(basis_vector(seed.m, k)), plus_part(seed.column(k)))


def mutate(seed: QuantumSeed, k: int) -> QuantumSeed:
    """Seed mutation at exchange index ``k`` (an involution on the data).

    The matrix follows the usual sign/positive-part rule; the form is pulled
    back along the substitution replacing the k-th basis vector by the
    leading exchange exponent.
    """
    if not 0 <= k < seed.n:
        raise ValueError(f"mutation index {k} out of range [0, {seed.n - 1}]")
    b = seed.btilde
    new_b = []
    for i in range(seed.m):
        row = []
        for j in range(seed.n):
            if i == k or j == k:
                row.append(-b[i][j])
            else:
                row.append(
                    b[i][j]
                    + max(b[i][k], 0) * max(b[k][j], 0)
                    - max(-b[i][k], 0) * max(-b[k][j], 0)
                )
        new_b.append(tuple(row))
    ek_prime = exchange_vector(seed, k)
    form = seed.form()
    vecs = [
        ek_prime if i == k else basis_vector(seed.m, i) for i in range(seed.m)
    ]
    new_lam = tuple(
        tuple(form.skew(vecs[i], vecs[j]) for j in range(seed.m))
        for i in range(seed.m)
    )
    return replace(seed, btilde=tuple(new_b), lam=new_lam)


def principal_seed(exchange_rows, d) -> QuantumSeed:
    """The 2n-row seed stacking the identity under a skew-symmetrizable B.

    The compatible form is the block matrix ``[[0, -D], [D, -DB]]``; raises
    if ``DB`` is not skew-symmetric.
    """
    B = tuple(tuple(int(x) for x in row) for row in exchange_rows)
    n = len(B)
    if any(len(r) != n for r in B):
        raise ValueError("exchange matrix must be square")
    d = tuple(int(x) for x in d)
    if len(d) != n or any(x <= 0 for x in d):
        raise ValueError("need n positive symmetrizers")
    for i in range(n):
        for j in range(n):
            if d[i] * B[i][j] != -d[j] * B[j][i]:
                raise ValueError("DB is not skew-symmetric")
    btilde = list(B) + [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    lam = []
    for i in range(n):
        lam.append(tuple(0 for _ in range(n)) + tuple(-d[i] if j == i else 0 for j in range(n)))
    for i in range(n):
        lam.append(
            tuple(d[i] if j == i else 0 for j in range(n))
            + tuple(-d[i] * B[i][j] for j in range(n))
        )
    return QuantumSeed(
        m=2 * n,
        n=n,
        btilde=tuple(btilde),
        lam=tuple(lam),
        d=d,
        order=tuple(range(n)),
    )


def double_seed(seed: QuantumSeed) -> QuantumSeed:
    """Adjoin a mirrored frozen copy: 2m rows, form ``L(e,f) - L(e',f')``."""
    m = seed.m
    btilde = tuple(seed.btilde) + tuple((0,) * seed.n for _ in range(m))
    lam = []
    for i in range(m):
        lam.append(tuple(seed.lam[i]) + (0,) * m)
    for i in range(m):
        lam.append((0,) * m + tuple(-x for x in seed.lam[i]))
    return QuantumSeed(
        m=2 * m,
        n=seed.n,
        btilde=btilde,
        lam=tuple(lam),
        d=seed.d,
        order=seed.order,
    )


def bullet_exponents(seed: QuantumSeed):
    """Exponents in the doubled lattice of the 2n principal-shaped generators.

    The first n are the diagonal vectors ``(e_j, e_j)``; the last n pair the
    frozen part of each exchange column with minus its exchange part.
    """
    m, n = seed.m, seed.n
    out = []
    for j in range(n):
        e = basis_vector(m, j)
        out.append(e + e)
    for j in range(n):
        bj = seed.column(j)
        top = vec_restrict(bj, lambda i: i >= n)
        bot = vec_neg(vec_restrict(bj, lambda i: i < n))
        out.append(top + bot)
    return out


def bullet_generators(seed: QuantumSeed):
    """The 2n generators as elements of the doubled torus."""
    form = double_seed(seed).form()
    return [form.monomial(e) for e in bullet_exponents(seed)]


def integer_rank(vectors) -> int:
    """Rank of a list of integer vectors (fraction-exact elimination)."""
    rows = [[Fraction(x) for x in v] for v in vectors]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for col in range(cols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        lead = rows[rank][col]
        rows[rank] = [x / lead for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def seed_weight_order(seed: QuantumSeed):
    """A term order whose weight is positive on every exchange column."""
    return weight_order_for_columns([seed.column(k) for k in range(seed.n)], seed.m)


# ---------------------------------------------------------------------------
# JSON seed files.  Matrices are row-major; "order" entries are 1-based.


def seed_to_dict(seed: QuantumSeed) -> dict:
    return {
        "m": seed.m,
        "n": seed.n,
        "B": [list(r) for r in seed.btilde],
        "Lambda": [list(r) for r in seed.lam],
        "d": list(seed.d),
        "order": [k + 1 for k in seed.order],
    }


def seed_from_dict(data: dict) -> QuantumSeed:
    try:
        seed = QuantumSeed(
            m=int(data["m"]),
            n=int(data["n"]),
            btilde=tuple(tuple(int(x) for x in r) for r in data["B"]),
            lam=tuple(tuple(int(x) for x in r) for r in data["Lambda"]),
            d=tuple(int(x) for x in data["d"]),
            order=tuple(int(k) - 1 for k in data.get("order", range(1, int(data["n"]) + 1))),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed seed data: {exc}") from exc
    report = validate(seed)
    if not report.valid:
        raise ValueError("seed file fails validation: " + "; ".join(report.lines()))
    return seed


def load_seed(path) -> QuantumSeed:
    with open(path, encoding="utf-8") as fh:
        return seed_from_dict(json.load(fh))


def save_seed(seed: QuantumSeed, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(seed_to_dict(seed), fh, indent=1)
        fh.write("\n")


def seed_hash(seed: QuantumSeed) -> str:
    """Content hash used to key the on-disk result cache."""
    blob = json.dumps(seed_to_dict(seed), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]
