from fractions import Fraction

import flint
import pytest
from hypothesis import strategies as st

from autsolv.algebra import validate_admissible
from autsolv.cli import load_fixture
from autsolv.polyfield import FieldSpec, Polynomial, monomials_up_to

_cache = {}


def fixture_ap(name):
    if name not in _cache:
        _cache[name] = validate_admissible(load_fixture(name))
    return _cache[name]


@pytest.fixture
def load():
    return fixture_ap


def polynomials(field: FieldSpec, n: int, max_deg: int = 3, max_terms: int = 5, min_order: int = 0):
    """Random polynomials with small coefficients."""
    mono = st.tuples(*[st.integers(0, max_deg) for _ in range(n)]).filter(
        lambda e: min_order <= sum(e) <= max_deg)
    coeff = st.one_of(st.integers(-5, 5), st.fractions(min_value=-3, max_value=3, max_denominator=4)) \
        if field.characteristic == 0 else st.integers(0, field.characteristic - 1)
    return st.dictionaries(mono, coeff, max_size=max_terms).map(
        lambda d: Polynomial(field, n, {e: Fraction(c) if field.characteristic == 0 else c for e, c in d.items()}))


def homogeneous(field: FieldSpec, n: int, degree: int, max_terms: int = 4):
    mono = st.tuples(*[st.integers(0, degree) for _ in range(n)]).filter(lambda e: sum(e) == degree)
    return st.dictionaries(mono, st.integers(-3, 3), max_size=max_terms).map(
        lambda d: Polynomial(field, n, d))


def span_member(f, gens, n, l):
    """Independent oracle: f in <gens> + <X>^l by exact rank in K[X]/<X>^l."""
    cols = {e: k for k, e in enumerate(monomials_up_to(n, l - 1))}
    rows = []
    for g in gens:
        for u in monomials_up_to(n, l - 1 - g.order):
            row = [0] * len(cols)
            for e, c in g.terms.items():
                t = tuple(a + b for a, b in zip(e, u))
                if sum(t) < l:
                    row[cols[t]] = c
            rows.append(row)
    target = [0] * len(cols)
    for e, c in f.terms.items():
        if sum(e) < l:
            target[cols[e]] = c
    if not rows:
        return not any(target)

    def mat(rs):
        return flint.fmpq_mat([[flint.fmpq(Fraction(c).numerator, Fraction(c).denominator) for c in r] for r in rs])
    return mat(rows + [target]).rank() == mat(rows).rank()


def admissible_ideals(n_max: int = 3, l_max: int = 4, homogeneous_only: bool = False):
    """Random admissible presentations <X>^l + <P_1..P_k> over QQ."""
    from autsolv.algebra import IdealPresentation

    @st.composite
    def build(draw):
        n = draw(st.integers(1, n_max))
        l = draw(st.integers(2, l_max))
        gens = []
        for _ in range(draw(st.integers(0, 3))):
            if homogeneous_only and l > 2:
                d = draw(st.integers(2, l - 1))
                g = draw(homogeneous(QQ_, n, d, max_terms=3))
            else:
                g = draw(polynomials(QQ_, n, max_deg=max(l - 1, 2), max_terms=3, min_order=2))
            if g:
                gens.append(g)
        return IdealPresentation(QQ_, n, tuple(gens), power=l)

    return build()


QQ_ = FieldSpec(0)
