"""Brute-force oracle: the derivation algebra Der(A) and its derived series.

A derivation is determined by the images v_i = D(x_i).  A tuple (v_1..v_n)
extends to a derivation of A iff sum_i v_i * [dg/dX_i] = 0 in A for every g in
a generating set of I; we use the full reduced Groebner basis.  Over a field
of characteristic 0, G_A is solvable iff Der(A) is a solvable Lie algebra,
and that is what ``cross_check`` compares certificates against.

Linear algebra is exact and delegated to python-flint (fmpq_mat / nmod_mat).
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import flint

from .algebra import DEFAULT_DIM_CAP, AdmissiblePresentation, QuotientAlgebra, quotient_algebra
from .errors import TooLargeError
from .polyfield import FieldSpec, Polynomial, partial_derivative

Vector = Tuple  # coordinates in K^(n*dim A), variable-major


# -- exact matrices -------------------------------------------------------------

def _to_flint(field: FieldSpec, rows: Sequence[Sequence], ncols: int):
    p = field.characteristic
    nrows = len(rows)
    flat = [x for r in rows for x in r]
    if p == 0:
        return flint.fmpq_mat(nrows, ncols, [flint.fmpq(int(Fraction(x).numerator), int(Fraction(x).denominator))
                                             for x in flat])
    return flint.nmod_mat(nrows, ncols, [int(x) for x in flat], p)


def _from_flint(field: FieldSpec, x):
    if field.characteristic == 0:
        q = flint.fmpq(x)
        n, d = int(q.p), int(q.q)
        return n if d == 1 else Fraction(n, d)
    return int(x)


def _rref(field: FieldSpec, rows: Sequence[Sequence], ncols: int):
    """(reduced rows, pivot columns) of a dense matrix."""
    if not rows or ncols == 0:
        return [], []
    m = _to_flint(field, rows, ncols)
    r, rank = m.rref()
    out, pivots = [], []
    for i in range(rank):
        row = [_from_flint(field, r[i, j]) for j in range(ncols)]
        pivots.append(next(j for j, x in enumerate(row) if x != 0))
        out.append(row)
    return out, pivots


def _nullspace(field: FieldSpec, rows: Sequence[Sequence], ncols: int) -> List[list]:
    red, pivots = _rref(field, rows, ncols)
    pset = set(pivots)
    basis = []
    for fc in range(ncols):
        if fc in pset:
            continue
        x = [0] * ncols
        x[fc] = 1
        for row, pc in zip(red, pivots):
            x[pc] = field.neg(row[fc])
        basis.append(x)
    return basis


def _rank(field: FieldSpec, rows: Sequence[Sequence], ncols: int) -> int:
    if not rows or ncols == 0:
        return 0
    return _to_flint(field, rows, ncols).rank()


def _row_basis(field: FieldSpec, rows: Sequence[Sequence], ncols: int) -> List[list]:
    return _rref(field, rows, ncols)[0]


# -- derivations ----------------------------------------------------------------

@dataclass(frozen=True)
class Derivation:
    """images[i] = D(x_i) as a coordinate tuple over the basis of A."""

    images: Tuple[Tuple, ...]

    def vector(self) -> list:
        return [c for img in self.images for c in img]


@dataclass(frozen=True)
class DerivationAlgebra:
    qa: QuotientAlgebra
    basis: Tuple[Derivation, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class DerivedSeries:
    dims: Tuple[int, ...]

    @property
    def solvable(self) -> bool:
        return self.dims[-1] == 0


def _split(qa: QuotientAlgebra, vec: Sequence) -> Derivation:
    d = qa.dim
    return Derivation(tuple(tuple(vec[i * d:(i + 1) * d]) for i in range(qa.nvars)))


def _sparse(v: Sequence) -> Dict[int, object]:
    return {k: c for k, c in enumerate(v) if c != 0}


def _dense(qa: QuotientAlgebra, v: Dict[int, object]) -> tuple:
    out = [0] * qa.dim
    for k, c in v.items():
        out[k] = c
    return tuple(out)


def derivation_space(qa: QuotientAlgebra, ap: AdmissiblePresentation) -> DerivationAlgebra:
    """Kernel of (v_1..v_n) -> (sum_i v_i [dg/dX_i])_g over the reduced GB of I."""
    f = qa.field
    n, d = qa.nvars, qa.dim
    ncols = n * d
    rows: List[list] = []
    for g in ap.gb.full_basis():
        partials = [qa.element(partial_derivative(g, i)) for i in range(n)]
        block = [[0] * ncols for _ in range(d)]
        for i, h in enumerate(partials):
            if not h:
                continue
            for k, e in enumerate(qa.basis):
                for r, c in qa.monomial_times(e, h).items():
                    block[r][i * d + k] = c
        rows.extend(r for r in block if any(r))
    kernel = _nullspace(f, rows, ncols)
    return DerivationAlgebra(qa, tuple(_split(qa, v) for v in kernel))


def _images_on_basis(qa: QuotientAlgebra, D: Derivation) -> List[Dict[int, object]]:
    """D(x^e) for every standard monomial e, by Leibniz along x^e = x_i * x^(e - u_i)."""
    f = qa.field
    imgs = [_sparse(v) for v in D.images]
    out: List[Dict[int, object]] = [None] * qa.dim  # type: ignore[list-item]
    # the basis is a staircase sorted by degree, so predecessors come first
    for k, e in enumerate(qa.basis):
        i = next((j for j, x in enumerate(e) if x > 0), None)
        if i is None:
            out[k] = {}
            continue
        prev = e[:i] + (e[i] - 1,) + e[i + 1:]
        a = qa.var_times(i, out[qa.index[prev]])
        b = qa.monomial_times(prev, imgs[i])
        s = dict(a)
        for r, c in b.items():
            v = f.add(s.get(r, 0), c)
            if v == 0:
                s.pop(r, None)
            else:
                s[r] = v
        out[k] = s
    return out


def apply_derivation(qa: QuotientAlgebra, D: Derivation, a: Dict[int, object]) -> Dict[int, object]:
    f = qa.field
    cols = _images_on_basis(qa, D)
    out: Dict[int, object] = {}
    for k, c in a.items():
        for r, x in cols[k].items():
            v = f.add(out.get(r, 0), f.mul(c, x))
            if v == 0:
                out.pop(r, None)
            else:
                out[r] = v
    return out


def _matrix(qa: QuotientAlgebra, D: Derivation):
    """flint matrix of D acting on A (columns = images of basis monomials)."""
    cols = _images_on_basis(qa, D)
    d = qa.dim
    rows = [[0] * d for _ in range(d)]
    for k, col in enumerate(cols):
        for r, c in col.items():
            rows[r][k] = c
    return _to_flint(qa.field, rows, d)


def _images_matrix(qa: QuotientAlgebra, D: Derivation):
    """dim x n matrix whose column i is D(x_i)."""
    rows = [[D.images[i][k] for i in range(qa.nvars)] for k in range(qa.dim)]
    return _to_flint(qa.field, rows, qa.nvars)


def _bracket_from(qa: QuotientAlgebra, MD, VD, ME, VE) -> Derivation:
    R = MD * VE - ME * VD
    f = qa.field
    return Derivation(tuple(tuple(_from_flint(f, R[k, i]) for k in range(qa.dim)) for i in range(qa.nvars)))


def lie_bracket(qa: QuotientAlgebra, D: Derivation, E: Derivation) -> Derivation:
    """[D, E](x_i) = D(E(x_i)) - E(D(x_i))."""
    return _bracket_from(qa, _matrix(qa, D), _images_matrix(qa, D), _matrix(qa, E), _images_matrix(qa, E))


def is_derivation(qa: QuotientAlgebra, ap: AdmissiblePresentation, D: Derivation) -> bool:
    """Exact residual check of the well-definedness constraints."""
    f = qa.field
    for g in ap.gb.full_basis():
        total: Dict[int, object] = {}
        for i in range(qa.nvars):
            h = qa.element(partial_derivative(g, i))
            for r, c in qa.multiply(_sparse(D.images[i]), h).items():
                v = f.add(total.get(r, 0), c)
                if v == 0:
                    total.pop(r, None)
                else:
                    total[r] = v
        if total:
            return False
    return True


def _brackets(qa: QuotientAlgebra, basis: Sequence[Derivation]) -> List[list]:
    mats = [(_matrix(qa, D), _images_matrix(qa, D)) for D in basis]
    out = []
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            v = _bracket_from(qa, *mats[a], *mats[b]).vector()
            if any(v):
                out.append(v)
    return out


def derived_series(L: DerivationAlgebra) -> DerivedSeries:
    qa = L.qa
    ncols = qa.nvars * qa.dim
    basis = list(L.basis)
    dims = [len(basis)]
    while dims[-1] > 0:
        vecs = _row_basis(qa.field, _brackets(qa, basis), ncols)
        dims.append(len(vecs))
        if dims[-1] == dims[-2]:
            break
        basis = [_split(qa, v) for v in vecs]
    return DerivedSeries(tuple(dims))


def closure_holds(L: DerivationAlgebra) -> bool:
    """Every bracket of basis elements lies in the span of the basis."""
    qa = L.qa
    ncols = qa.nvars * qa.dim
    base = [D.vector() for D in L.basis]
    return _rank(qa.field, base + _brackets(qa, L.basis), ncols) == len(base)


# -- oracle entry points --------------------------------------------------------

@dataclass(frozen=True)
class OracleResult:
    dim_A: int
    der_dim: int
    series: DerivedSeries

    @property
    def solvable(self) -> bool:
        return self.series.solvable


def oracle_algebra(ap: AdmissiblePresentation, dim_cap: int = DEFAULT_DIM_CAP) -> QuotientAlgebra:
    """Quotient algebra for the oracle; the cap applies to n * dim A unknowns."""
    qa = quotient_algebra(ap, dim_cap)
    if qa.nvars * qa.dim > dim_cap:
        raise TooLargeError(f"oracle needs n * dim A = {qa.nvars * qa.dim} unknowns (cap {dim_cap})")
    return qa


def run_oracle(ap: AdmissiblePresentation, dim_cap: int = DEFAULT_DIM_CAP) -> OracleResult:
    qa = oracle_algebra(ap, dim_cap)
    L = derivation_space(qa, ap)
    return OracleResult(qa.dim, L.dim, derived_series(L))


class Consistency(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    NOT_APPLICABLE = "NOT_APPLICABLE"
    UNCERTIFIED = "UNCERTIFIED"


@dataclass(frozen=True)
class ConsistencyResult:
    status: Consistency
    oracle: OracleResult
    message: str


def cross_check(report, oracle: OracleResult, field: FieldSpec) -> ConsistencyResult:
    """Compare a certificate with the oracle (meaningful in characteristic 0 only)."""
    from .certifier import Verdict

    said = "solvable" if oracle.solvable else "not solvable"
    if field.characteristic != 0:
        return ConsistencyResult(Consistency.NOT_APPLICABLE, oracle,
                                 f"char {field.characteristic}: Der(A) is {said}, informational only")
    if report.verdict is Verdict.INCONCLUSIVE:
        return ConsistencyResult(Consistency.UNCERTIFIED, oracle, f"no certificate; Der(A) is {said}")
    expected = report.verdict is Verdict.SOLVABLE
    if expected == oracle.solvable:
        return ConsistencyResult(Consistency.PASS, oracle, f"certificate and oracle agree: {said}")
    return ConsistencyResult(Consistency.FAIL, oracle,
                             f"certificate says {report.verdict.value} but Der(A) is {said}")
