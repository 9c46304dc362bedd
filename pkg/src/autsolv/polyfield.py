"""Exact multivariate polynomials over the rationals and prime fields.

Coefficients over characteristic 0 are Python ints or ``Fraction`` objects
(integral values are always stored as ``int``); over GF(p) they are ints in
``range(p)``.  Monomials are exponent tuples.  The monomial order used
everywhere is graded reverse lexicographic with X1 > X2 > ... > Xn.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from .errors import ArityError, FieldError, SingularMatrixError, ZeroPolynomialError

Monomial = Tuple[int, ...]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    k = 3
    while k * k <= p:
        if p % k == 0:
            return False
        k += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The coefficient field: QQ when ``characteristic == 0``, else GF(p)."""

    characteristic: int = 0

    def __post_init__(self):
        c = self.characteristic
        if not isinstance(c, int) or c < 0 or (c != 0 and not _is_prime(c)):
            raise FieldError(f"characteristic must be 0 or a prime, got {c!r}")

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    def coerce(self, c):
        p = self.characteristic
        if isinstance(c, bool):
            c = int(c)
        if p == 0:
            if isinstance(c, Fraction):
                return c.numerator if c.denominator == 1 else c
            if isinstance(c, int):
                return c
            return _norm0(Fraction(c))
        if isinstance(c, Fraction):
            den = c.denominator % p
            if den == 0:
                raise ZeroDivisionError(f"denominator {c.denominator} vanishes mod {p}")
            return c.numerator * pow(den, -1, p) % p
        return int(c) % p

    def add(self, a, b):
        p = self.characteristic
        return _norm0(a + b) if p == 0 else (a + b) % p

    def sub(self, a, b):
        p = self.characteristic
        return _norm0(a - b) if p == 0 else (a - b) % p

    def mul(self, a, b):
        p = self.characteristic
        return _norm0(a * b) if p == 0 else (a * b) % p

    def neg(self, a):
        p = self.characteristic
        return -a if p == 0 else (-a) % p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        p = self.characteristic
        if p == 0:
            return _norm0(1 / Fraction(a))
        return pow(a, -1, p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def __str__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"


QQ = FieldSpec(0)


def _norm0(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


# -- monomials ---------------------------------------------------------------

@lru_cache(maxsize=1 << 20)
def grevlex_key(e: Monomial):
    """Sort key: larger key means larger monomial in grevlex."""
    return (sum(e), tuple(-x for x in reversed(e)))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True iff a divides b."""
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_coprime(a: Monomial, b: Monomial) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def monomials_of_degree(n: int, d: int):
    """All exponent tuples in n variables of total degree d, grevlex-descending."""
    if n == 0:
        if d == 0:
            yield ()
        return
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - first):
            yield (first,) + rest


def monomials_up_to(n: int, d: int):
    """All monomials of degree <= d, ascending by degree."""
    for k in range(d + 1):
        yield from monomials_of_degree(n, k)


def default_names(n: int) -> Tuple[str, ...]:
    return tuple(f"X{i + 1}" for i in range(n))


def format_monomial(e: Monomial, names: Sequence[str]) -> str:
    parts = []
    for x, name in zip(e, names):
        if x == 1:
            parts.append(name)
        elif x > 1:
            parts.append(f"{name}^{x}")
    return "*".join(parts)


# -- polynomials -------------------------------------------------------------

class Polynomial:
    """Sparse polynomial: a mapping from exponent tuples to nonzero scalars.

    Instances are treated as immutable; every operation returns a new object.
    """

    __slots__ = ("field", "nvars", "terms", "_hash")

    def __init__(self, field: FieldSpec, nvars: int, terms: Optional[Mapping] = None, *, _trusted=False):
        if nvars < 1:
            raise ArityError("a polynomial needs at least one variable")
        self.field = field
        self.nvars = nvars
        self._hash = None
        if _trusted:
            self.terms = terms
            return
        clean: Dict[Monomial, object] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != nvars or min(e, default=0) < 0:
                raise ArityError(f"bad exponent vector {e} for {nvars} variables")
            c = field.coerce(c)
            if c != 0:
                clean[e] = field.add(clean[e], c) if e in clean else c
                if clean[e] == 0:
                    del clean[e]
        self.terms = clean

    # constructors
    @classmethod
    def zero(cls, field: FieldSpec, nvars: int) -> "Polynomial":
        return cls(field, nvars, {}, _trusted=True)

    @classmethod
    def constant(cls, field: FieldSpec, nvars: int, c) -> "Polynomial":
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, field: FieldSpec, nvars: int, i: int) -> "Polynomial":
        if not 0 <= i < nvars:
            raise ArityError(f"variable index {i} out of range for {nvars} variables")
        e = [0] * nvars
        e[i] = 1
        return cls(field, nvars, {tuple(e): 1}, _trusted=True)

    @classmethod
    def monomial(cls, field: FieldSpec, e: Monomial, c=1) -> "Polynomial":
        return cls(field, len(e), {tuple(e): c})

    def _same(self, terms) -> "Polynomial":
        return Polynomial(self.field, self.nvars, terms, _trusted=True)

    def _check(self, other: "Polynomial"):
        if self.field != other.field or self.nvars != other.nvars:
            raise ArityError(
                f"incompatible polynomials: {self.field}/{self.nvars} vars vs {other.field}/{other.nvars} vars"
            )

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.field, self.nvars, other)
        return NotImplemented

    # arithmetic
    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        p = self.field.characteristic
        for e, c in other.terms.items():
            if e in out:
                s = out[e] + c
                s = _norm0(s) if p == 0 else s % p
                if s == 0:
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return self._same(out)

    __radd__ = __add__

    def __neg__(self):
        neg = self.field.neg
        return self._same({e: neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c) -> "Polynomial":
        c = self.field.coerce(c)
        if c == 0:
            return self._same({})
        mul = self.field.mul
        return self._same({e: mul(v, c) for e, v in self.terms.items()})

    def mul_term(self, e: Monomial, c) -> "Polynomial":
        """Multiply by the single term c*x^e."""
        if c == 0:
            return self._same({})
        mul = self.field.mul
        return self._same({mono_mul(m, e): mul(v, c) for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        p = self.field.characteristic
        out: Dict[Monomial, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        if p == 0:
            out = {e: _norm0(c) for e, c in out.items() if c != 0}
        else:
            out = {e: c % p for e, c in out.items() if c % p}
        return self._same(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.constant(self.field, self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # comparison
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.field == other.field and self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.field, self.nvars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # structure
    @property
    def degree(self) -> Optional[int]:
        """Total degree, or None for the zero polynomial."""
        if not self.terms:
            return None
        return max(sum(e) for e in self.terms)

    @property
    def order(self) -> Optional[int]:
        """Smallest degree of a term, or None for the zero polynomial."""
        if not self.terms:
            return None
        return min(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def sorted_terms(self):
        """Terms in descending grevlex order."""
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise ZeroPolynomialError("zero polynomial has no leading monomial")
        return max(self.terms, key=grevlex_key)

    def leading_coefficient(self):
        return self.terms[self.leading_monomial()]

    def monic(self) -> "Polynomial":
        return self.scale(self.field.inv(self.leading_coefficient()))

    def truncate(self, degree: int) -> "Polynomial":
        """Drop every term of total degree >= ``degree``."""
        return self._same({e: c for e, c in self.terms.items() if sum(e) < degree})

    def variables(self) -> Tuple[int, ...]:
        used = set()
        for e in self.terms:
            used.update(i for i, x in enumerate(e) if x)
        return tuple(sorted(used))

    def component(self, d: int) -> "Polynomial":
        return self._same({e: c for e, c in self.terms.items() if sum(e) == d})

    def to_str(self, names: Optional[Sequence[str]] = None) -> str:
        names = names or default_names(self.nvars)
        if not self.terms:
            return "0"
        out = []
        for k, (e, c) in enumerate(self.sorted_terms()):
            neg = isinstance(c, (int, Fraction)) and c < 0
            mag = -c if neg else c
            mono = format_monomial(e, names)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if k == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Polynomial({self.to_str()!r}, field={self.field}, nvars={self.nvars})"


def variables(field: FieldSpec, n: int):
    """Convenience: the n variables as polynomials."""
    return [Polynomial.variable(field, n, i) for i in range(n)]


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    f._check(g)
    return f * g


def partial_derivative(f: Polynomial, i: int) -> Polynomial:
    """Formal derivative with respect to variable ``i`` (0-based)."""
    if not 0 <= i < f.nvars:
        raise ArityError(f"variable index {i} out of range for {f.nvars} variables")
    field = f.field
    out = {}
    for e, c in f.terms.items():
        k = e[i]
        if k == 0:
            continue
        v = field.mul(c, field.coerce(k))
        if v != 0:
            e2 = e[:i] + (k - 1,) + e[i + 1:]
            out[e2] = v
    return f._same(out)


def gradient(f: Polynomial):
    return [partial_derivative(f, i) for i in range(f.nvars)]


def homogeneous_components(f: Polynomial) -> Dict[int, Polynomial]:
    """Map degree -> homogeneous component, in increasing degree order."""
    if f.is_zero():
        raise ZeroPolynomialError("zero polynomial has no homogeneous components")
    buckets: Dict[int, dict] = {}
    for e, c in f.terms.items():
        buckets.setdefault(sum(e), {})[e] = c
    return {d: f._same(buckets[d]) for d in sorted(buckets)}


def order(f: Polynomial) -> int:
    if f.is_zero():
        raise ZeroPolynomialError("order of the zero polynomial is undefined")
    return f.order


def lowest_component(f: Polynomial) -> Polynomial:
    return f.component(order(f))


class LinearChange:
    """An invertible n x n matrix acting by X_j -> sum_i m[i][j] X_i."""

    __slots__ = ("field", "matrix")

    def __init__(self, field: FieldSpec, matrix: Sequence[Sequence]):
        n = len(matrix)
        if n == 0 or any(len(row) != n for row in matrix):
            raise ArityError("linear change needs a square, non-empty matrix")
        self.field = field
        self.matrix = tuple(tuple(field.coerce(x) for x in row) for row in matrix)
        from .linalg import determinant

        if determinant(field, self.matrix) == 0:
            raise SingularMatrixError("linear change of variables must be invertible")

    @property
    def n(self) -> int:
        return len(self.matrix)

    def compose(self, other: "LinearChange") -> "LinearChange":
        """Matrix product self @ other."""
        f = self.field
        n = self.n
        prod = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                s = 0
                for k in range(n):
                    s = f.add(s, f.mul(self.matrix[i][k], other.matrix[k][j]))
                prod[i][j] = s
        return LinearChange(f, prod)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "LinearChange":
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)])


def apply_linear_change(f: Polynomial, m: LinearChange) -> Polynomial:
    """Return f(XM): each X_j is replaced by sum_i m[i][j] X_i.

    Composition law: apply(apply(f, M), N) == apply(f, N.compose(M)).
    """
    if m.n != f.nvars or m.field != f.field:
        raise ArityError("linear change does not match the polynomial")
    n = f.nvars
    field = f.field
    images = []
    for j in range(n):
        terms = {}
        for i in range(n):
            c = m.matrix[i][j]
            if c != 0:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = c
        images.append(Polynomial(field, n, terms, _trusted=True))
    powers = [{0: Polynomial.constant(field, n, 1)} for _ in range(n)]

    def power(j, k):
        cache = powers[j]
        if k not in cache:
            cache[k] = power(j, k - 1) * images[j]
        return cache[k]

    out = Polynomial.zero(field, n)
    for e, c in f.terms.items():
        term = Polynomial.constant(field, n, c)
        for j, k in enumerate(e):
            if k:
                term = term * power(j, k)
        out = out + term
    return out
