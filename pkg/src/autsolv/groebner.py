"""Buchberger's algorithm under grevlex, with optional implicit power ideal.

A ``GroebnerBasis`` with ``power = l`` describes the ideal  <polys> + <X>^l.
The monomials of degree l are never listed: every computation happens in the
truncation K[X]/<X>^l, which is valid because grevlex is degree compatible.
The full reduced basis is ``polys`` plus the degree-l monomials that no
leading monomial of ``polys`` divides.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field as dc_field
from typing import List, Optional, Sequence, Tuple

from .errors import ArityError, TooLargeError
from .polyfield import (
    FieldSpec,
    Monomial,
    Polynomial,
    _norm0,
    grevlex_key,
    mono_coprime,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
    monomials_of_degree,
)


class InfiniteFlag:
    """Marker returned by :func:`standard_monomials` for infinite quotients."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE"

    def __bool__(self):
        return False


INFINITE = InfiniteFlag()


@dataclass(frozen=True)
class GroebnerBasis:
    field: FieldSpec
    nvars: int
    polys: Tuple[Polynomial, ...]
    power: Optional[int] = None
    order: str = dc_field(default="grevlex")

    @property
    def is_unit(self) -> bool:
        """True when the ideal is the whole ring (UnitIdeal)."""
        if self.power == 0:
            return True
        return any(p.degree == 0 for p in self.polys)

    @property
    def leading_monomials(self) -> List[Monomial]:
        return [p.leading_monomial() for p in self.polys]

    def full_basis(self) -> List[Polynomial]:
        """All elements of the reduced basis, power-part monomials included."""
        out = list(self.polys)
        if self.power is not None and self.power > 0:
            lms = self.leading_monomials
            for e in monomials_of_degree(self.nvars, self.power):
                if not any(mono_divides(m, e) for m in lms):
                    out.append(Polynomial(self.field, self.nvars, {e: 1}, _trusted=True))
        return out


def _reduce(f_terms: dict, basis: Sequence[Polynomial], lms: Sequence[Monomial], p: int,
            power: Optional[int]) -> dict:
    """Normal form of a term dict.  Basis elements must be monic."""
    if power is not None:
        f = {e: c for e, c in f_terms.items() if sum(e) < power}
    else:
        f = dict(f_terms)
    rem = {}
    heap = [(_neg_key(e), e) for e in f]
    heapq.heapify(heap)
    while heap:
        _, e = heapq.heappop(heap)
        c = f.pop(e, None)
        if c is None:
            continue
        for g, lm in zip(basis, lms):
            if mono_divides(lm, e):
                q = mono_div(e, lm)
                for m, gc in g.terms.items():
                    if m == lm:
                        continue
                    t = mono_mul(m, q)
                    if power is not None and sum(t) >= power:
                        continue
                    if t in f:
                        s = f[t] - c * gc
                        s = _norm0(s) if p == 0 else s % p
                        if s == 0:
                            del f[t]
                        else:
                            f[t] = s
                    else:
                        s = -c * gc
                        f[t] = _norm0(s) if p == 0 else s % p
                        heapq.heappush(heap, (_neg_key(t), t))
                break
        else:
            rem[e] = c
    return rem


def _neg_key(e):
    d, rest = grevlex_key(e)
    return (-d, tuple(-x for x in rest))


def _monic_terms(terms: dict, field: FieldSpec) -> dict:
    lm = max(terms, key=grevlex_key)
    inv = field.inv(terms[lm])
    return {e: field.mul(c, inv) for e, c in terms.items()}


def buchberger(generators: Sequence[Polynomial], power: Optional[int] = None,
               max_basis: int = 100_000, field: Optional[FieldSpec] = None,
               nvars: Optional[int] = None) -> GroebnerBasis:
    """Reduced Groebner basis of <generators> (+ <X>^power when given).

    Zero generators are ignored.  A unit ideal comes back flagged through
    ``GroebnerBasis.is_unit`` with basis {1}.
    """
    gens = list(generators)
    if gens:
        field = gens[0].field
        nvars = gens[0].nvars
        for g in gens:
            if g.field != field or g.nvars != nvars:
                raise ArityError("generators must share field and number of variables")
    elif field is None or nvars is None:
        raise ValueError("empty generator list needs explicit field and nvars")
    p = field.characteristic

    if power is not None and power <= 0:
        one = Polynomial.constant(field, nvars, 1)
        return GroebnerBasis(field, nvars, (one,), None)

    basis: List[Polynomial] = []
    lms: List[Monomial] = []
    pairs: list = []  # heap of (key(lcm), i, j)
    pending = set()
    todo: list = []  # extra polynomials (truncation S-pairs) to reduce

    def truncate_terms(t):
        if power is None:
            return dict(t)
        return {e: c for e, c in t.items() if sum(e) < power}

    def add_to_basis(terms: dict):
        terms = _monic_terms(terms, field)
        g = Polynomial(field, nvars, terms, _trusted=True)
        lm = max(terms, key=grevlex_key)
        k = len(basis)
        basis.append(g)
        lms.append(lm)
        if len(basis) > max_basis:
            raise TooLargeError(f"Groebner basis exceeded {max_basis} elements")
        for i in range(k):
            lcm = mono_lcm(lms[i], lm)
            if mono_coprime(lms[i], lm):
                continue
            if power is not None and sum(lcm) >= power and basis[i].is_homogeneous() and g.is_homogeneous():
                continue
            heapq.heappush(pairs, (grevlex_key(lcm), i, k))
            pending.add((i, k))
        if power is not None and not g.is_homogeneous():
            # S-pairs against the implicit degree-`power` monomials
            dlm = sum(lm)
            for u in monomials_of_degree(nvars, power - dlm):
                prod = {}
                for e, c in terms.items():
                    t = mono_mul(e, u)
                    if sum(t) < power:
                        prod[t] = c
                if prod:
                    todo.append(prod)

    def process(terms):
        r = _reduce(terms, basis, lms, p, power)
        if r:
            add_to_basis(r)
            return True
        return False

    for g in gens:
        t = truncate_terms(g.terms)
        if t:
            todo.append(t)

    while todo or pairs:
        if todo:
            process(todo.pop())
            continue
        _, i, j = heapq.heappop(pairs)
        pending.discard((i, j))
        lcm = mono_lcm(lms[i], lms[j])
        # chain criterion
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if mono_divides(lms[k], lcm):
                a, b = (min(i, k), max(i, k)), (min(j, k), max(j, k))
                if a not in pending and b not in pending:
                    skip = True
                    break
        if skip:
            continue
        s = {}
        for idx in (i, j):
            q = mono_div(lcm, lms[idx])
            sign = 1 if idx == i else -1
            for e, c in basis[idx].terms.items():
                t = mono_mul(e, q)
                if power is not None and sum(t) >= power:
                    continue
                v = s.get(t, 0) + sign * c
                v = _norm0(v) if p == 0 else v % p
                if v == 0:
                    s.pop(t, None)
                else:
                    s[t] = v
        if s:
            process(s)

    return _interreduce(basis, field, nvars, power)


def _interreduce(basis: List[Polynomial], field: FieldSpec, nvars: int, power: Optional[int]) -> GroebnerBasis:
    p = field.characteristic
    if any(g.degree == 0 for g in basis):
        one = Polynomial.constant(field, nvars, 1)
        return GroebnerBasis(field, nvars, (one,), None)
    items = sorted(basis, key=lambda g: grevlex_key(g.leading_monomial()))
    minimal: List[Polynomial] = []
    for g in items:
        lm = g.leading_monomial()
        if any(mono_divides(h.leading_monomial(), lm) for h in minimal):
            continue
        minimal.append(g)
    lms = [g.leading_monomial() for g in minimal]
    reduced = []
    for k, g in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1:]
        olms = lms[:k] + lms[k + 1:]
        tail = {e: c for e, c in g.terms.items() if e != lms[k]}
        r = _reduce(tail, others, olms, p, power)
        r[lms[k]] = 1
        reduced.append(Polynomial(field, nvars, r, _trusted=True))
    reduced.sort(key=lambda g: grevlex_key(g.leading_monomial()), reverse=True)
    return GroebnerBasis(field, nvars, tuple(reduced), power)


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    if f.field != gb.field or f.nvars != gb.nvars:
        raise ArityError("polynomial and Groebner basis are incompatible")
    if gb.is_unit:
        return Polynomial.zero(f.field, f.nvars)
    r = _reduce(f.terms, gb.polys, gb.leading_monomials, f.field.characteristic, gb.power)
    return Polynomial(f.field, f.nvars, r, _trusted=True)


def ideal_membership(f: Polynomial, gb: GroebnerBasis) -> bool:
    return normal_form(f, gb).is_zero()


def power_contained(gb: GroebnerBasis, k: int) -> bool:
    """<X>^k is inside the ideal: every degree-k monomial reduces to 0."""
    if gb.is_unit or (gb.power is not None and k >= gb.power):
        return True
    p = gb.field.characteristic
    lms = gb.leading_monomials
    for e in monomials_of_degree(gb.nvars, k):
        if _reduce({e: 1}, gb.polys, lms, p, gb.power):
            return False
    return True


def least_power(gb: GroebnerBasis, upper: int, limit: int = 2_000_000) -> Optional[int]:
    """Least k <= upper with <X>^k inside the ideal, or None.

    A standard monomial of degree s is outside the ideal, so k > s; for
    homogeneous ideals that bound is attained, in general it is only a start.
    """
    std = standard_monomials(gb, limit=limit)
    if std is INFINITE:
        return None
    k = max((sum(e) for e in std), default=-1) + 1
    while k <= upper:
        if power_contained(gb, k):
            return k
        k += 1
    return None


def canonical(gb: GroebnerBasis, limit: int = 2_000_000) -> GroebnerBasis:
    """Shrink ``power`` to the least l with <X>^l in the ideal.

    After this, two bases describe the same ideal iff they are equal.
    """
    if gb.power is None or gb.is_unit:
        return gb
    top = least_power(gb, gb.power, limit)
    if top == gb.power:
        return gb
    if top == 0:
        one = Polynomial.constant(gb.field, gb.nvars, 1)
        return GroebnerBasis(gb.field, gb.nvars, (one,), None)
    # elements with leading monomial of degree >= top are redundant now, and
    # lower-degree ones keep their tails below top after reduction by <X>^top
    kept = []
    for g in gb.polys:
        if sum(g.leading_monomial()) < top:
            kept.append(Polynomial(gb.field, gb.nvars, {e: c for e, c in g.terms.items() if sum(e) < top},
                                   _trusted=True))
    return GroebnerBasis(gb.field, gb.nvars, tuple(kept), top)


def ideal_equal(a: GroebnerBasis, b: GroebnerBasis) -> bool:
    if a.field != b.field or a.nvars != b.nvars or a.order != b.order:
        raise ArityError("Groebner bases are incompatible")
    if a.is_unit or b.is_unit:
        return a.is_unit and b.is_unit
    if (a.power is None) != (b.power is None):
        # at most one side has an implicit power part; compare by containment
        return _contained(a, b) and _contained(b, a)
    a, b = canonical(a), canonical(b)
    return a.power == b.power and set(a.polys) == set(b.polys)


def _contained(a: GroebnerBasis, b: GroebnerBasis) -> bool:
    return all(ideal_membership(g, b) for g in a.full_basis())


def standard_monomials(gb: GroebnerBasis, limit: int = 2_000_000):
    """Monomials outside the leading-term ideal, ascending grevlex, or INFINITE."""
    if gb.is_unit:
        return []
    lms = gb.leading_monomials
    n = gb.nvars
    if gb.power is None:
        for i in range(n):
            if not any(m[i] > 0 and sum(m) == m[i] for m in lms):
                return INFINITE
    out = []
    layer = [(0,) * n]
    seen = set(layer)
    while layer:
        out.extend(layer)
        if len(out) > limit:
            raise TooLargeError(f"more than {limit} standard monomials")
        nxt = []
        for e in layer:
            for i in range(n):
                t = e[:i] + (e[i] + 1,) + e[i + 1:]
                if t in seen:
                    continue
                seen.add(t)
                if gb.power is not None and sum(t) >= gb.power:
                    continue
                if any(mono_divides(m, t) for m in lms):
                    continue
                nxt.append(t)
        layer = nxt
    out.sort(key=grevlex_key)
    return out


def is_zero_dimensional(gb: GroebnerBasis) -> bool:
    """True iff the quotient ring is finite dimensional (unit ideal included)."""
    if gb.is_unit or gb.power is not None:
        return True
    lms = gb.leading_monomials
    return all(any(m[i] > 0 and sum(m) == m[i] for m in lms) for i in range(gb.nvars))
