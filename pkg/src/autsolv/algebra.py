"""Admissible presentations A = K[X1..Xn]/I with <X>^l inside I inside <X>^2,
and the finite-dimensional invariants derived from them."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (
    ArityError,
    InfiniteDimensionalError,
    NotAdmissibleError,
    TooLargeError,
)
from .groebner import (
    INFINITE,
    GroebnerBasis,
    buchberger,
    canonical,
    least_power,
    ideal_membership,
    normal_form,
    standard_monomials,
)
from .linalg import Echelon
from .polyfield import (
    FieldSpec,
    Monomial,
    Polynomial,
    default_names,
    grevlex_key,
    homogeneous_components,
    mono_mul,
    monomials_of_degree,
    monomials_up_to,
)

DEFAULT_DIM_CAP = 1000
# largest truncation K[X]/<X>^k (counted in monomials) that linear-algebra
# based invariants are allowed to build
DEFAULT_TRUNCATION_CAP = 100_000


@dataclass(frozen=True)
class IdealPresentation:
    """Generators of I, plus an optional power ``power`` meaning <X>^power is adjoined."""

    field: FieldSpec
    nvars: int
    generators: Tuple[Polynomial, ...]
    power: Optional[int] = None
    names: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        if self.names is None:
            object.__setattr__(self, "names", default_names(self.nvars))
        if len(self.names) != self.nvars:
            raise ArityError("one name per variable is required")
        for g in self.generators:
            if g.field != self.field or g.nvars != self.nvars:
                raise ArityError("generator does not match the presentation's field/arity")
            if g.is_zero():
                raise ValueError("generators must be nonzero")
        if self.power is not None and self.power < 1:
            raise ValueError("the adjoined power must be positive")


@dataclass(frozen=True, eq=False)
class AdmissiblePresentation:
    base: IdealPresentation
    lowey: int
    normalized_gens: Tuple[Polynomial, ...]
    _gb_hint: Optional[GroebnerBasis] = dc_field(default=None, repr=False)

    @property
    def field(self) -> FieldSpec:
        return self.base.field

    @property
    def nvars(self) -> int:
        return self.base.nvars

    @property
    def names(self) -> Tuple[str, ...]:
        return self.base.names

    @cached_property
    def gb(self) -> GroebnerBasis:
        """Reduced Groebner basis of I (power part implicit)."""
        if self._gb_hint is not None:
            return self._gb_hint
        return buchberger(self.normalized_gens, power=self.lowey, field=self.field, nvars=self.nvars)

    @property
    def generators_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.normalized_gens)

    def truncation_size(self, k: Optional[int] = None) -> int:
        """Number of monomials of degree < k (default: the Lowey length)."""
        k = self.lowey if k is None else k
        return comb(self.nvars + k - 1, self.nvars)

    def power_ideal(self) -> GroebnerBasis:
        return buchberger([], power=self.lowey, field=self.field, nvars=self.nvars)

    def is_power_ideal(self) -> bool:
        """I == <X>^l.  Normalized generators are exactly the parts of degree < l."""
        return not self.normalized_gens


def _order_at_least_two(g: Polynomial) -> bool:
    return all(sum(e) >= 2 for e in g.terms)


def _power_not_contained(p: IdealPresentation, cap: int, k: int) -> bool:
    """Dimension count proving <X>^k is not inside I (+ <X>^cap).

    I/<X>^cap is spanned by u*g with deg u + ord g < cap, so its dimension is at
    most the number of such products; <X>^k inside I would need at least the
    number of monomials of degree in [k, cap).
    """
    n = p.nvars
    bound = sum(comb(n + cap - 1 - g.order, n) for g in p.generators if g.order < cap)
    needed = comb(n + cap - 1, n) - comb(n + k - 1, n)
    return bound < needed


def validate_admissible(p: IdealPresentation, max_std: int = 2_000_000) -> AdmissiblePresentation:
    """Check <X>^l in I in <X>^2, compute the minimal l and normalize generators."""
    for g in p.generators:
        if not _order_at_least_two(g):
            raise NotAdmissibleError(
                f"generator {g.to_str(p.names)} has a constant or linear part"
            )
    gb_hint = None
    if p.power is None:
        if not p.generators:
            raise InfiniteDimensionalError("no generators and no power part: the quotient is K[X]")
        gb = buchberger(p.generators)
        std = standard_monomials(gb, limit=max_std)
        if std is INFINITE:
            raise InfiniteDimensionalError("the quotient ring is infinite dimensional")
        # R^k strictly shrinks until it vanishes, so a local A has l <= dim A
        lowey = least_power(gb, len(std))
        if lowey is None:
            raise NotAdmissibleError("the quotient is not local: no power of <X> lies in I")
        gb_hint = canonical(buchberger(p.generators, power=lowey))
    else:
        cap = p.power
        if cap <= 1:
            raise NotAdmissibleError("the power part <X>^l needs l >= 2 to keep X inside A")
        if not p.generators or _power_not_contained(p, cap, cap - 1):
            lowey = cap
        else:
            gb = canonical(buchberger(p.generators, power=cap), limit=max_std)
            lowey = gb.power if gb.power is not None else cap
            gb_hint = gb
    normalized = []
    for g in p.generators:
        t = g.truncate(lowey)
        if not t.is_zero():
            normalized.append(t)
    return AdmissiblePresentation(p, lowey, tuple(normalized), gb_hint)


def lowey_length(ap: AdmissiblePresentation) -> int:
    return ap.lowey


# -- quotient algebra --------------------------------------------------------

@dataclass(frozen=True, eq=False)
class QuotientAlgebra:
    """A = K[X]/I in the standard-monomial basis.

    ``mult_by_var[i][k]`` is the sparse coordinate vector of x_i * basis[k].
    """

    field: FieldSpec
    nvars: int
    basis: Tuple[Monomial, ...]
    mult_by_var: Tuple[Tuple[Dict[int, object], ...], ...]
    index: Dict[Monomial, int] = dc_field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def monomial_times(self, e: Monomial, v: Dict[int, object]) -> Dict[int, object]:
        """x^e * v."""
        for i, k in enumerate(e):
            for _ in range(k):
                v = self.var_times(i, v)
                if not v:
                    return v
        return v

    def var_times(self, i: int, v: Dict[int, object]) -> Dict[int, object]:
        f = self.field
        out: Dict[int, object] = {}
        table = self.mult_by_var[i]
        for k, c in v.items():
            for r, x in table[k].items():
                s = f.add(out.get(r, 0), f.mul(c, x))
                if s == 0:
                    out.pop(r, None)
                else:
                    out[r] = s
        return out

    def element(self, poly: Polynomial) -> Dict[int, object]:
        """Image of a polynomial in A, computed from the multiplication tables only."""
        f = self.field
        one = {self.index[(0,) * self.nvars]: 1}
        out: Dict[int, object] = {}
        for e, c in poly.terms.items():
            for r, x in self.monomial_times(e, one).items():
                s = f.add(out.get(r, 0), f.mul(c, x))
                if s == 0:
                    out.pop(r, None)
                else:
                    out[r] = s
        return out

    def multiply(self, u: Dict[int, object], v: Dict[int, object]) -> Dict[int, object]:
        f = self.field
        out: Dict[int, object] = {}
        for k, c in u.items():
            for r, x in self.monomial_times(self.basis[k], v).items():
                s = f.add(out.get(r, 0), f.mul(c, x))
                if s == 0:
                    out.pop(r, None)
                else:
                    out[r] = s
        return out

    def to_polynomial(self, v: Dict[int, object]) -> Polynomial:
        return Polynomial(self.field, self.nvars, {self.basis[k]: c for k, c in v.items()})


def dimension_lower_bound(ap: AdmissiblePresentation) -> int:
    """Cheap lower bound on dim A that needs no Groebner basis.

    dim A = dim K[X]/<X>^l - dim I/<X>^l, and I/<X>^l is spanned by the
    products u*g with deg u + ord g < l.
    """
    n, l = ap.nvars, ap.lowey
    spanned = sum(comb(n + l - 1 - g.order, n) for g in ap.normalized_gens)
    return max(ap.truncation_size() - spanned, 1)


def quotient_algebra(ap: AdmissiblePresentation, dim_cap: int = DEFAULT_DIM_CAP) -> QuotientAlgebra:
    low = dimension_lower_bound(ap)
    if low > dim_cap:
        raise TooLargeError(f"dim A >= {low} exceeds the cap {dim_cap}")
    gb = ap.gb
    std = standard_monomials(gb, limit=dim_cap)
    if len(std) > dim_cap:
        raise TooLargeError(f"dim A = {len(std)} exceeds the cap {dim_cap}")
    basis = tuple(std)
    index = {e: k for k, e in enumerate(basis)}
    n = ap.nvars
    tables = []
    for i in range(n):
        cols = []
        for e in basis:
            t = e[:i] + (e[i] + 1,) + e[i + 1:]
            if t in index:
                cols.append({index[t]: 1})
            else:
                nf = normal_form(Polynomial(ap.field, n, {t: 1}, _trusted=True), gb)
                cols.append({index[m]: c for m, c in nf.terms.items()})
        tables.append(tuple(cols))
    return QuotientAlgebra(ap.field, n, basis, tuple(tables), index)


def dimension(ap: AdmissiblePresentation) -> int:
    return len(standard_monomials(ap.gb))


# -- filtration and generators -----------------------------------------------

@dataclass(frozen=True)
class RadicalFiltration:
    dims: Tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.dims)


def radical_filtration(ap: AdmissiblePresentation) -> RadicalFiltration:
    """dim R^d/R^{d+1} for d = 0..l-1, from ranks of normal forms of monomials."""
    gb = ap.gb
    n = ap.nvars
    l = ap.lowey
    ranks = [0] * (l + 1)
    ech = Echelon(ap.field, key=grevlex_key)
    for d in range(l - 1, -1, -1):
        for e in monomials_of_degree(n, d):
            nf = normal_form(Polynomial(ap.field, n, {e: 1}, _trusted=True), gb)
            ech.add(dict(nf.terms))
        ranks[d] = len(ech)
    return RadicalFiltration(tuple(ranks[d] - ranks[d + 1] for d in range(l)))


def _truncated_span(gens: Sequence[Polynomial], n: int, top: int, min_mult_degree: int, field: FieldSpec,
                    key) -> Echelon:
    """Echelon basis of span{u*g : deg u >= min_mult_degree} inside K[X]/<X>^top."""
    ech = Echelon(field, key=key)
    for g in gens:
        o = g.order
        for du in range(min_mult_degree, top - o):
            for u in monomials_of_degree(n, du):
                v = {}
                for e, c in g.terms.items():
                    t = mono_mul(e, u)
                    if sum(t) < top:
                        v[t] = c
                if v:
                    ech.add(v)
    return ech


def _check_truncation(ap: AdmissiblePresentation, top: int, cap: int):
    size = ap.truncation_size(top)
    if size > cap:
        raise TooLargeError(f"truncation K[X]/<X>^{top} has {size} monomials (cap {cap})")


def _power_generators(ap: AdmissiblePresentation) -> List[Polynomial]:
    return [Polynomial(ap.field, ap.nvars, {e: 1}, _trusted=True)
            for e in monomials_of_degree(ap.nvars, ap.lowey)]


def minimal_generator_count(ap: AdmissiblePresentation, cap: int = DEFAULT_TRUNCATION_CAP) -> int:
    """m = dim_K I/<X>I, computed in K[X]/<X>^{l+1}."""
    top = ap.lowey + 1
    _check_truncation(ap, top, cap)
    gens = list(ap.normalized_gens) + _power_generators(ap)
    key = grevlex_key
    whole = _truncated_span(gens, ap.nvars, top, 0, ap.field, key)
    inner = _truncated_span(gens, ap.nvars, top, 1, ap.field, key)
    return len(whole) - len(inner)


def _descending_key(e):
    d, rest = grevlex_key(e)
    return (-d, tuple(-x for x in rest))


def _ascending_degree_key(e):
    d, rest = grevlex_key(e)
    return (d, tuple(-x for x in rest))


def associated_graded_ideal(ap: AdmissiblePresentation, cap: int = DEFAULT_TRUNCATION_CAP) -> IdealPresentation:
    """Generators of I_*, the ideal of lowest-degree components of elements of I.

    Works in K[X]/<X>^l with columns ordered by ascending degree, so a row's
    pivot sits in its lowest-degree component.  The power part <X>^l is kept
    as the presentation's ``power``.
    """
    l = ap.lowey
    _check_truncation(ap, l, cap)
    ech = _truncated_span(ap.normalized_gens, ap.nvars, l, 0, ap.field, _ascending_degree_key)
    by_degree: Dict[int, Echelon] = {}
    for piv, row in ech.rows.items():
        d = sum(piv)
        comp = {e: c for e, c in row.items() if sum(e) == d}
        by_degree.setdefault(d, Echelon(ap.field, key=_descending_key)).add(comp)
    gens: List[Polynomial] = []
    for d in sorted(by_degree):
        # drop the part of (I_*)_d already generated in lower degrees
        lower = Echelon(ap.field, key=_descending_key)
        for g in gens:
            for u in monomials_of_degree(ap.nvars, d - g.degree):
                lower.add({mono_mul(e, u): c for e, c in g.terms.items()})
        fresh = Echelon(ap.field, key=_descending_key)
        for row in by_degree[d].reduced().values():
            r = lower.reduce(row)
            if r:
                fresh.add(r)
        for row in fresh.reduced().values():
            gens.append(Polynomial(ap.field, ap.nvars, row))
    return IdealPresentation(ap.field, ap.nvars, tuple(gens), power=l, names=ap.names)


def is_homogeneous_ideal(ap: AdmissiblePresentation) -> bool:
    """Every homogeneous component of every generator lies in I."""
    if ap.generators_homogeneous:
        return True
    gb = ap.gb
    for g in ap.normalized_gens:
        for comp in homogeneous_components(g).values():
            if not ideal_membership(comp, gb):
                return False
    return True


def homogeneous_generators(ap: AdmissiblePresentation) -> List[Polynomial]:
    """Homogeneous components of the normalized generators (a generating set
    of I when I is homogeneous), without duplicates, in a stable order."""
    out: List[Polynomial] = []
    seen = set()
    for g in ap.normalized_gens:
        for comp in homogeneous_components(g).values():
            if comp not in seen:
                seen.add(comp)
                out.append(comp)
    return out


def graded_presentation(ap: AdmissiblePresentation) -> AdmissiblePresentation:
    """Admissible presentation of Gr(A), i.e. of K[X]/I_*."""
    return validate_admissible(associated_graded_ideal(ap))
