"""Diagonal actions of finite abelian groups on polynomial rings.

A group Z/m1 x ... x Z/mr acts on k[x1..xn] with the i-th generator
scaling x_j by a primitive m_i-th root of unity raised to exponents[i][j].
Roots of unity are never materialized: everything is tracked through the
character lattice, where a "character" is a residue tuple (c1..cr) with
c_i taken mod m_i.  Acting on a polynomial therefore returns its pieces
grouped by phase rather than a single polynomial, except in the special
case where every phase is +1 or -1.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import UsageError
from .poly import Polynomial


def normalize_char(char, orders):
    return tuple(c % m for c, m in zip(char, orders))


def char_add(a, b, orders):
    return tuple((x + y) % m for x, y, m in zip(a, b, orders))


def char_sub(a, b, orders):
    return tuple((x - y) % m for x, y, m in zip(a, b, orders))


def char_neg(a, orders):
    return tuple((-x) % m for x, m in zip(a, orders))


@dataclass(frozen=True)
class GroupAction:
    """orders: cyclic factor sizes; exponents: one row per factor, one
    column per ring variable."""

    orders: tuple
    exponents: tuple  # tuple of tuples, len(orders) x nvars
    nvars: int

    def __post_init__(self):
        if not self.orders:
            raise UsageError("group needs at least one cyclic factor")
        for m in self.orders:
            if not isinstance(m, int) or m < 1:
                raise UsageError("cyclic factor orders must be positive integers")
        if len(self.exponents) != len(self.orders):
            raise UsageError("need one exponent row per cyclic factor")
        norm = []
        for row, m in zip(self.exponents, self.orders):
            if len(row) != self.nvars:
                raise UsageError("exponent row length must match variable count")
            norm.append(tuple(int(a) % m for a in row))
        object.__setattr__(self, "exponents", tuple(norm))
        object.__setattr__(self, "orders", tuple(int(m) for m in self.orders))

    @property
    def nfactors(self):
        return len(self.orders)

    @property
    def group_order(self):
        n = 1
        for m in self.orders:
            n *= m
        return n

    def zero_char(self):
        return (0,) * len(self.orders)

    def elements(self):
        """All group elements as exponent tuples, in lexicographic order."""
        return tuple(product(*(range(m) for m in self.orders)))

    def characters(self):
        return tuple(product(*(range(m) for m in self.orders)))

    def char_of_monomial(self, exps):
        return tuple(
            sum(a * e for a, e in zip(row, exps)) % m
            for row, m in zip(self.exponents, self.orders)
        )

    def has_character(self, f, char):
        """True when every monomial of f lies in the char eigenspace.

        The zero polynomial has every character.
        """
        want = normalize_char(char, self.orders)
        return all(self.char_of_monomial(e) == want for e in f.terms)

    def char_of_poly(self, f):
        """The common character of f's monomials, or None if f is zero or
        mixes characters."""
        found = None
        for e in f.terms:
            c = self.char_of_monomial(e)
            if found is None:
                found = c
            elif c != found:
                return None
        return found

    def project_character(self, f, char):
        """Sum of the monomials of f whose character equals char."""
        want = normalize_char(char, self.orders)
        kept = {
            e: c for e, c in f.terms.items() if self.char_of_monomial(e) == want
        }
        return Polynomial(f.nvars, kept, f.field)

    def is_invariant(self, f):
        return self.has_character(f, self.zero_char())

    def is_special_linear(self):
        """Whether every generator acts with determinant one."""
        return all(
            sum(row) % m == 0 for row, m in zip(self.exponents, self.orders)
        )

    def act(self, g, f):
        """Apply the group element g, keeping phases symbolic.

        Returns {phase: polynomial} where a phase is a residue tuple and
        stands for the product over factors of zeta_{m_i}^{c_i}.  The
        argument may itself be such a dict, so actions compose.  Functions
        transform contravariantly: the monomial piece of character chi
        picks up the phase of chi evaluated at the inverse of g.
        """
        g = tuple(int(v) % m for v, m in zip(g, self.orders))
        if isinstance(f, Polynomial):
            pieces = {self.zero_char(): f}
        else:
            pieces = f
        if not pieces:
            return {}
        sample = next(iter(pieces.values()))
        nvars, field = sample.nvars, sample.field
        out = {}
        for base_phase, part in pieces.items():
            for e, c in part.terms.items():
                chi = self.char_of_monomial(e)
                shift = tuple(
                    (-gv * cv) % m for gv, cv, m in zip(g, chi, self.orders)
                )
                phase = char_add(base_phase, shift, self.orders)
                bucket = out.setdefault(phase, {})
                bucket[e] = bucket.get(e, field.zero) + c
        result = {}
        for phase, terms in out.items():
            terms = {e: c for e, c in terms.items() if c}
            if terms:
                result[phase] = Polynomial(nvars, terms, field)
        return result

    def act_polynomial(self, g, f):
        """g acting on f as an honest polynomial.

        Only possible when every phase that occurs is rational, i.e. +1
        (residue 0) or -1 (residue m/2 for even m).  Raises otherwise.
        """
        total = Polynomial.zero(f.nvars, f.field)
        for phase, part in self.act(g, f).items():
            sign = 1
            for c, m in zip(phase, self.orders):
                if c == 0:
                    continue
                if 2 * c == m:
                    sign = -sign
                else:
                    raise UsageError(
                        "phase is an irrational root of unity; "
                        "the transformed polynomial has no rational form"
                    )
            total = total + part if sign > 0 else total - part
        return total

    def to_json(self):
        return {
            "orders": list(self.orders),
            "exponents": [list(r) for r in self.exponents],
        }

    @classmethod
    def from_json(cls, data, nvars):
        return cls(
            orders=tuple(data["orders"]),
            exponents=tuple(tuple(r) for r in data["exponents"]),
            nvars=nvars,
        )


def cyclic_action(order, weights, nvars):
    """Z/order acting with x_j scaled by the weights[j]-th power of a
    fixed primitive root."""
    return GroupAction(orders=(order,), exponents=(tuple(weights),), nvars=nvars)
