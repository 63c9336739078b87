"""Exact arithmetic in the ring of integer Laurent polynomials in ``v``.

A polynomial is stored sparsely as a map ``exponent -> coefficient`` with
all coefficients nonzero, so equal polynomials always have identical term
maps.  Coefficients are plain Python integers and therefore never overflow.

The ring carries the involution ``v -> v^-1`` (:meth:`LaurentPoly.bar`),
which is the scalar part of the bar-involution used everywhere else in this
package, and the positive-part extraction ``[f]_+`` that drives the
triangular-basis recursion: whenever ``f + bar(f) = 0``, ``p = [f]_+`` is
the unique polynomial in ``v*Z[v]`` with ``p - bar(p) = f``.
"""

from __future__ import annotations

import re

__all__ = ["LaurentPoly", "gaussian_binomial", "parse_laurent"]


class LaurentPoly:
    """A sparse integer Laurent polynomial in one formal variable."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        """Build from an ``exponent -> coefficient`` mapping; zeros are dropped."""
        if terms is None:
            self._terms = {}
        else:
            self._terms = {e: c for e, c in terms.items() if c != 0}

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def v_power(cls, e: int, coeff: int = 1) -> "LaurentPoly":
        """The monomial ``coeff * v^e``."""
        return cls({e: coeff})

    @classmethod
    def from_int(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    @staticmethod
    def _coerce(other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly({0: other})
        return NotImplemented

    # -- ring structure ----------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self._terms)
        for e, c in other._terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out._terms = terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = LaurentPoly.__new__(LaurentPoly)
        out._terms = {e: -c for e, c in self._terms.items()}
        return out

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                s = terms.get(e, 0) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    del terms[e]
        out = LaurentPoly.__new__(LaurentPoly)
        out._terms = terms
        return out

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not defined in the Laurent ring")
        result = LaurentPoly.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __bool__(self):
        return bool(self._terms)

    # -- involution and parts ----------------------------------------------

    def bar(self) -> "LaurentPoly":
        """The image under ``v -> v^-1`` (negates every exponent)."""
        out = LaurentPoly.__new__(LaurentPoly)
        out._terms = {-e: c for e, c in self._terms.items()}
        return out

    def positive_part(self) -> "LaurentPoly":
        """``[f]_+``: the sub-sum of terms with exponent >= 1.

        When ``f + bar(f) = 0`` this is the unique ``p`` in ``v*Z[v]`` with
        ``p - bar(p) = f``.
        """
        out = LaurentPoly.__new__(LaurentPoly)
        out._terms = {e: c for e, c in self._terms.items() if e >= 1}
        return out

    def shifted(self, k: int) -> "LaurentPoly":
        """Multiply by ``v^k`` (cheap exponent shift)."""
        if k == 0:
            return self
        out = LaurentPoly.__new__(LaurentPoly)
        out._terms = {e + k: c for e, c in self._terms.items()}
        return out

    def substitute_power(self, k: int) -> "LaurentPoly":
        """Substitute the variable by its ``k``-th power (``k != 0``)."""
        if k == 0:
            raise ValueError("substitution power must be nonzero")
        out = LaurentPoly.__new__(LaurentPoly)
        out._terms = {e * k: c for e, c in self._terms.items()}
        return out

    # -- predicates and views ------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == {0: 1}

    def is_unit(self) -> bool:
        """Units of the Laurent ring are exactly ``+-v^k``."""
        if len(self._terms) != 1:
            return False
        return abs(next(iter(self._terms.values()))) == 1

    def in_v_zv(self) -> bool:
        """Membership in ``v*Z[v]`` (every exponent >= 1)."""
        return all(e >= 1 for e in self._terms)

    def in_zv(self) -> bool:
        """Membership in ``Z[v]`` (every exponent >= 0)."""
        return all(e >= 0 for e in self._terms)

    def constant_term(self) -> int:
        return self._terms.get(0, 0)

    def items(self):
        """Terms in canonical (exponent-sorted) order."""
        return sorted(self._terms.items())

    def min_exponent(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return min(self._terms)

    def max_exponent(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return max(self._terms)

    # -- exact division ------------------------------------------------------

    def divide_exact(self, divisor: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient ``self / divisor``; raises ValueError if inexact.

        Works by shifting both operands into ordinary polynomials and running
        integer long division from the top degree down.
        """
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if self.is_zero():
            return LaurentPoly.zero()
        # Shift both operands so they become ordinary polynomials; divisibility
        # in the Laurent ring only ever differs from the polynomial ring by a
        # unit, and the shift makes the division terminate.
        num_shift = self.min_exponent()
        den_shift = divisor.min_exponent()
        num = {e - num_shift: c for e, c in self._terms.items()}
        den = {e - den_shift: c for e, c in divisor._terms.items()}
        den_top = max(den)
        den_lead = den[den_top]
        quot: dict = {}
        while num:
            top = max(num)
            if top < den_top:
                raise ValueError("not divisible in Z[v, v^-1]")
            c, r = divmod(num[top], den_lead)
            if r != 0:
                raise ValueError("not divisible in Z[v, v^-1]")
            e = top - den_top
            quot[e] = c
            for de, dc in den.items():
                ne = de + e
                s = num.get(ne, 0) - dc * c
                if s:
                    num[ne] = s
                else:
                    num.pop(ne, None)
        return LaurentPoly({e + num_shift - den_shift: c for e, c in quot.items()})

    # -- text form -----------------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for i, (e, c) in enumerate(self.items()):
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                var = "v" if e == 1 else f"v^{e}"
                body = var if mag == 1 else f"{mag}*{var}"
            if i == 0:
                parts.append(f"-{body}" if c < 0 else body)
            else:
                parts.append(f" - {body}" if c < 0 else f" + {body}")
        return "".join(parts)

    def __repr__(self):
        return f"LaurentPoly({self})"


_TERM_RE = re.compile(
    r"^(?P<sign>[+-])?(?:(?P<coeff>\d+)\*?)?(?P<var>v(?:\^(?P<exp>[+-]?\d+))?)?$"
)


def parse_laurent(text: str) -> LaurentPoly:
    """Parse the textual form produced by :meth:`LaurentPoly.__str__`.

    Accepts terms ``c*v^e`` joined by `` + `` / `` - ``, plus bare integers
    and a bare ``v``.
    """
    s = text.strip()
    if s == "0":
        return LaurentPoly.zero()
    # Fold the joining "+"/"-" into a sign on each chunk.
    s = s.replace(" - ", " -").replace(" + ", " ")
    terms: dict = {}
    for chunk in s.split(" "):
        if not chunk:
            continue
        m = _TERM_RE.match(chunk)
        if not m or (m.group("coeff") is None and m.group("var") is None):
            raise ValueError(f"cannot parse Laurent term {chunk!r} in {text!r}")
        c = int(m.group("coeff")) if m.group("coeff") is not None else 1
        if m.group("sign") == "-":
            c = -c
        e = 0
        if m.group("var") is not None:
            e = int(m.group("exp")) if m.group("exp") is not None else 1
        s_new = terms.get(e, 0) + c
        if s_new:
            terms[e] = s_new
        else:
            terms.pop(e, None)
    return LaurentPoly(terms)


def gaussian_binomial(r: int, s: int) -> LaurentPoly:
    """The Gaussian binomial coefficient of ``r`` over ``s`` as a polynomial.

    Computed from the defining ratio of products of ``t^i - 1`` factors by
    exact division (the division is checked to leave no remainder).  The
    result is an ordinary polynomial in the formal variable; substitute a
    power of ``v`` as needed via :meth:`LaurentPoly.substitute_power`.
    """
    if r < 0 or s < 0 or r < s:
        raise ValueError(f"gaussian binomial needs r >= s >= 0, got ({r}, {s})")
    num = LaurentPoly.one()
    den = LaurentPoly.one()
    for i in range(s):
        num = num * (LaurentPoly.v_power(r - i) - 1)
        den = den * (LaurentPoly.v_power(s - i) - 1)
    return num.divide_exact(den)
