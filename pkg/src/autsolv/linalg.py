"""Exact linear algebra over QQ / GF(p): sparse incremental echelon forms plus
small dense routines (rref, nullspace, determinant)."""
from __future__ import annotations

import heapq
from typing import Callable, Dict, Hashable, List, Optional, Sequence

from .polyfield import FieldSpec, _norm0


class Echelon:
    """Semi-reduced row echelon basis of a subspace of sparse vectors.

    Vectors are dicts ``column -> scalar``.  Each stored row has leading
    coefficient 1 at its pivot, which is its smallest column under ``key``.
    """

    def __init__(self, field: FieldSpec, key: Optional[Callable[[Hashable], object]] = None):
        self.field = field
        self.key = key or (lambda c: c)
        self.rows: Dict[Hashable, dict] = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        """Remainder of ``vec`` after eliminating every pivot column."""
        p = self.field.characteristic
        key = self.key
        v = {c: x for c, x in vec.items() if x != 0}
        heap = [(key(c), c) for c in v if c in self.rows]
        heapq.heapify(heap)
        while heap:
            _, c = heapq.heappop(heap)
            x = v.get(c)
            if x is None:
                continue
            row = self.rows[c]
            for col, y in row.items():
                if col in v:
                    s = v[col] - x * y
                    s = _norm0(s) if p == 0 else s % p
                    if s == 0:
                        del v[col]
                    else:
                        v[col] = s
                else:
                    s = -x * y
                    v[col] = _norm0(s) if p == 0 else s % p
                    if col in self.rows:
                        heapq.heappush(heap, (key(col), col))
        return v

    def add(self, vec: dict) -> bool:
        """Insert ``vec``; return True iff it was independent of the basis."""
        v = self.reduce(vec)
        if not v:
            return False
        piv = min(v, key=self.key)
        inv = self.field.inv(v[piv])
        mul = self.field.mul
        self.rows[piv] = {c: mul(x, inv) for c, x in v.items()}
        return True

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def basis(self) -> List[dict]:
        return [self.rows[c] for c in sorted(self.rows, key=self.key)]

    def reduced(self) -> Dict[Hashable, dict]:
        """Fully reduced rows: every row vanishes on all other pivots."""
        f = self.field
        done: Dict[Hashable, dict] = {}
        for piv in sorted(self.rows, key=self.key, reverse=True):
            r = dict(self.rows[piv])
            for q, qrow in done.items():
                c = r.get(q)
                if c is None:
                    continue
                for col, x in qrow.items():
                    s = f.sub(r.get(col, 0), f.mul(c, x))
                    if s == 0:
                        r.pop(col, None)
                    else:
                        r[col] = s
            done[piv] = r
        return {piv: done[piv] for piv in sorted(done, key=self.key)}


def rank_of(field: FieldSpec, vectors, key=None) -> int:
    ech = Echelon(field, key)
    for v in vectors:
        ech.add(v)
    return len(ech)


def rref(field: FieldSpec, matrix: Sequence[Sequence]):
    """Reduced row echelon form of a dense matrix; returns (rows, pivot_columns)."""
    m = [[field.coerce(x) for x in row] for row in matrix]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.inv(m[r][c])
        m[r] = [field.mul(x, inv) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(field: FieldSpec, matrix: Sequence[Sequence], ncols: Optional[int] = None) -> List[list]:
    """Basis of {x : matrix @ x = 0}."""
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    rows, pivots = rref(field, matrix) if matrix else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        x = [0] * ncols
        x[fc] = 1
        for row, pc in zip(rows, pivots):
            x[pc] = field.neg(row[fc])
        basis.append(x)
    return basis


def determinant(field: FieldSpec, matrix: Sequence[Sequence]):
    m = [[field.coerce(x) for x in row] for row in matrix]
    n = len(m)
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = field.neg(det)
        det = field.mul(det, m[c][c])
        inv = field.inv(m[c][c])
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = field.mul(m[i][c], inv)
                m[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(m[i], m[c])]
    return det
