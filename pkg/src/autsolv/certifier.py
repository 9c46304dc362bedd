"""Solvability certificates for G_A, the identity component of Aut(A).

Every rule is a sufficient condition, either for solvability or for
non-solvability.  All applicable rules are evaluated and must agree; a
disagreement can only come from a bug and raises ConflictError.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from enum import Enum
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import (
    DEFAULT_TRUNCATION_CAP,
    AdmissiblePresentation,
    dimension,
    graded_presentation,
    homogeneous_generators,
    is_homogeneous_ideal,
    minimal_generator_count,
)
from .errors import ConflictError, NotHomogeneousError, TooLargeError
from .groebner import buchberger, ideal_equal, ideal_membership, is_zero_dimensional
from .linalg import Echelon
from .polyfield import FieldSpec, Polynomial, gradient, grevlex_key, monomials_of_degree, monomials_up_to


class Verdict(str, Enum):
    SOLVABLE = "certified_solvable"
    NOT_SOLVABLE = "certified_not_solvable"
    INCONCLUSIVE = "inconclusive"


class Polarity(str, Enum):
    SOLVABLE = "solvable"
    NOT_SOLVABLE = "not_solvable"


class CertRule(str, Enum):
    N1_SINGLE_VAR = "N1_SINGLE_VAR"
    PW_POWER_IDEAL = "PW_POWER_IDEAL"
    D2_DIM_TWO = "D2_DIM_TWO"
    C1_REGULAR_SEQUENCE = "C1_REGULAR_SEQUENCE"
    C23_NONSINGULAR = "C23_NONSINGULAR"
    QD_QUADRIC = "QD_QUADRIC"
    PS_PROPERTY_SHARP = "PS_PROPERTY_SHARP"
    SP_SUBPOWER = "SP_SUBPOWER"
    PK_GENERATOR_COUNT = "PK_GENERATOR_COUNT"
    GR_GRADED_FALLBACK = "GR_GRADED_FALLBACK"


# one line of mathematical justification per rule
JUSTIFICATION: Dict[CertRule, str] = {
    CertRule.N1_SINGLE_VAR: "n = 1: the image on R/R^2 is a 1-dimensional torus and the kernel is unipotent",
    CertRule.PW_POWER_IDEAL: "I = <X>^l: GL_n acts on A, so G_A contains GL_n with n >= 2",
    CertRule.D2_DIM_TWO: "n = 2, char 0: G_A is solvable unless A is K[X,Y]/<X,Y>^l",
    CertRule.C1_REGULAR_SEQUENCE: "dim W = n and a basis of W is a regular sequence",
    CertRule.C23_NONSINGULAR: "W contains a non-singular form of degree >= 3",
    CertRule.QD_QUADRIC: "I = <X>^l + <q> with q a non-singular quadric: G_A is Sim0(q) times a unipotent group",
    CertRule.PS_PROPERTY_SHARP: "every generator is a form in X3..Xn, so GL_2 on X1, X2 stabilizes I",
    CertRule.SP_SUBPOWER: "I = <X>^l + <S>^d for a proper subset S: GL_|S| lies in the image on R/R^2",
    CertRule.PK_GENERATOR_COUNT: "char 0 and the minimal number of generators m < n + d - 1",
    CertRule.GR_GRADED_FALLBACK: "a solvability certificate for Gr(A) carries over to A",
}

SUBPOWER_MAX_VARS = 16


@dataclass(frozen=True)
class SearchConfig:
    seed: int = 0
    trials: int = 64
    coefficient_bound: int = 10

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.coefficient_bound < 1:
            raise ValueError("coefficient bound must be >= 1")


@dataclass(frozen=True)
class MinimalDegreeSubspace:
    degree: int
    basis: Tuple[Polynomial, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class FiredRule:
    tag: CertRule
    polarity: Polarity
    witness: str
    via: Optional[CertRule] = None  # inner rule for GR_GRADED_FALLBACK

    @property
    def justification(self) -> str:
        return JUSTIFICATION[self.tag]


@dataclass
class CertReport:
    verdict: Verdict
    fired_rules: List[FiredRule]
    invariants: Dict[str, object]
    rank_bound: int
    notes: List[str] = dc_field(default_factory=list)
    nilpotency_annotation: Optional[str] = None
    advisory: Optional[str] = None

    @property
    def tags(self) -> List[str]:
        return [r.tag.value for r in self.fired_rules]


# -- W and non-singularity ------------------------------------------------------

def minimal_degree_subspace(ap: AdmissiblePresentation) -> MinimalDegreeSubspace:
    """W = I cap K[X]_d for the least degree d in which I is nonzero."""
    if not is_homogeneous_ideal(ap):
        raise NotHomogeneousError("W is only defined here for homogeneous ideals; pass I_* first")
    gens = homogeneous_generators(ap)
    if not gens:
        mons = monomials_of_degree(ap.nvars, ap.lowey)
        return MinimalDegreeSubspace(ap.lowey, tuple(Polynomial(ap.field, ap.nvars, {e: 1}, _trusted=True)
                                                     for e in mons))
    d = min(g.degree for g in gens)
    ech = Echelon(ap.field, key=grevlex_key)
    basis = tuple(g for g in gens if g.degree == d and ech.add(dict(g.terms)))
    return MinimalDegreeSubspace(d, basis)


def is_nonsingular(f: Polynomial) -> bool:
    """The partial derivatives of the form f have only the origin as common zero."""
    if f.is_zero() or not f.is_homogeneous():
        raise NotHomogeneousError("is_nonsingular needs a nonzero homogeneous polynomial")
    gb = buchberger(gradient(f), field=f.field, nvars=f.nvars)
    return is_zero_dimensional(gb)


def nonsingular_search_applies(d: int, field: FieldSpec) -> bool:
    p = field.characteristic
    return d >= 3 and (p == 0 or (p > 3 and d < p))


def search_nonsingular(W: MinimalDegreeSubspace, field: FieldSpec,
                       cfg: SearchConfig = SearchConfig()) -> Optional[Polynomial]:
    """Look for a non-singular element of W: basis first, then random combinations.

    Finding one certifies; not finding one proves nothing.
    """
    if not W.basis or not nonsingular_search_applies(W.degree, field):
        return None
    for b in W.basis:
        if is_nonsingular(b):
            return b
    if len(W.basis) == 1:
        return None
    B = cfg.coefficient_bound
    for t in range(cfg.trials):
        rng = random.Random(f"{cfg.seed}:{t}")
        coeffs = [rng.randint(-B, B) for _ in W.basis]
        if not any(field.coerce(c) for c in coeffs):
            continue
        f = W.basis[0].scale(coeffs[0])
        for c, b in zip(coeffs[1:], W.basis[1:]):
            f = f + b.scale(c)
        if not f.is_zero() and is_nonsingular(f):
            return f.monic()
    return None


# -- rules --------------------------------------------------------------------
# Each rule returns a FiredRule or None.  Rules on W assume a homogeneous I.

def _fmt(ap, f: Polynomial) -> str:
    return f.to_str(ap.names)


def rule_power_ideal(ap: AdmissiblePresentation) -> Optional[FiredRule]:
    if ap.nvars == 1:
        return FiredRule(CertRule.N1_SINGLE_VAR, Polarity.SOLVABLE, "n = 1")
    if ap.is_power_ideal():
        return FiredRule(CertRule.PW_POWER_IDEAL, Polarity.NOT_SOLVABLE,
                         f"I = <{', '.join(ap.names)}>^{ap.lowey}")
    return None


def rule_dim_two(ap: AdmissiblePresentation) -> Optional[FiredRule]:
    if ap.nvars != 2 or ap.field.characteristic != 0:
        return None
    homog = is_homogeneous_ideal(ap)
    j = ap if homog else graded_presentation(ap)
    name = "I" if homog else "I_*"
    power = f"<{', '.join(ap.names)}>^{ap.lowey}"
    if j.lowey == ap.lowey and ideal_equal(j.gb, j.power_ideal()):
        return FiredRule(CertRule.D2_DIM_TWO, Polarity.NOT_SOLVABLE, f"{name} = {power}")
    return FiredRule(CertRule.D2_DIM_TWO, Polarity.SOLVABLE, f"{name} != {power}")


def rule_condition_1(W: MinimalDegreeSubspace, ap: AdmissiblePresentation) -> Optional[FiredRule]:
    n = ap.nvars
    if ap.field.characteristic != 0 or W.dim != n or W.degree >= ap.lowey:
        return None
    gb = buchberger(W.basis)
    if not is_zero_dimensional(gb):
        return None
    return FiredRule(CertRule.C1_REGULAR_SEQUENCE, Polarity.SOLVABLE,
                     "regular sequence: " + ", ".join(_fmt(ap, b) for b in W.basis))


def rule_nonsingular(W: MinimalDegreeSubspace, ap: AdmissiblePresentation,
                     cfg: SearchConfig) -> Optional[FiredRule]:
    if W.degree >= ap.lowey:
        return None
    f = search_nonsingular(W, ap.field, cfg)
    if f is None:
        return None
    return FiredRule(CertRule.C23_NONSINGULAR, Polarity.SOLVABLE, f"non-singular form: {_fmt(ap, f)}")


def rule_quadric(ap: AdmissiblePresentation, W: MinimalDegreeSubspace) -> Optional[FiredRule]:
    n = ap.nvars
    if ap.field.characteristic == 2 or n < 2 or W.degree != 2 or W.dim != 1 or W.degree >= ap.lowey:
        return None
    q = W.basis[0]
    # <X>^l + <q> is inside I, so equality is the reverse containment
    j = buchberger([q], power=ap.lowey)
    if not all(ideal_membership(g, j) for g in ap.normalized_gens):
        return None
    if not is_nonsingular(q):
        return None
    witness = f"I = <X>^{ap.lowey} + <{_fmt(ap, q)}>, q non-singular"
    if n >= 3:
        return FiredRule(CertRule.QD_QUADRIC, Polarity.NOT_SOLVABLE, witness + f", SO({n}) is not solvable")
    return FiredRule(CertRule.QD_QUADRIC, Polarity.SOLVABLE,
                     witness + ", the stabilizer of a binary quadric is a 1-dimensional torus")


def rule_property_sharp(ap: AdmissiblePresentation) -> Optional[FiredRule]:
    if ap.nvars < 4:
        return None
    gens = homogeneous_generators(ap)
    if not gens:
        return None
    for g in gens:
        if g.is_monomial() or not g.is_homogeneous() or any(v < 2 for v in g.variables()):
            return None
    return FiredRule(CertRule.PS_PROPERTY_SHARP, Polarity.NOT_SOLVABLE,
                     f"all generators lie in K[{', '.join(ap.names[2:])}]; GL_2 acts on "
                     f"{ap.names[0]}, {ap.names[1]}")


def rule_subpower(ap: AdmissiblePresentation, W: MinimalDegreeSubspace) -> Optional[FiredRule]:
    """I = <X>^l + <S>^m' for a proper subset S, |S| >= 2, 2 <= m' < l.

    Such an I has W = all monomials of degree m' in S, so m' = d and S is the
    set of variables occurring in W; no search over subsets is needed.
    """
    n, l, d = ap.nvars, ap.lowey, W.degree
    if n < 3 or d >= l or not W.basis:
        return None
    support = sorted({v for b in W.basis for v in b.variables()})
    k = len(support)
    if not 2 <= k < n or W.dim != comb(k + d - 1, d):
        return None
    mons = []
    for e in monomials_of_degree(k, d):
        full = [0] * n
        for v, x in zip(support, e):
            full[v] = x
        mons.append(Polynomial(ap.field, n, {tuple(full): 1}, _trusted=True))
    j = buchberger(mons, power=l)
    # <S>^d = W is inside I, so equality is the reverse containment
    if not all(ideal_membership(g, j) for g in ap.normalized_gens):
        return None
    names = ", ".join(ap.names[v] for v in support)
    return FiredRule(CertRule.SP_SUBPOWER, Polarity.NOT_SOLVABLE, f"I = <X>^{l} + <{names}>^{d}")


def rule_generator_count(ap: AdmissiblePresentation, d: int,
                         cap: int = DEFAULT_TRUNCATION_CAP) -> Optional[FiredRule]:
    """Raises TooLargeError when m cannot be computed within ``cap``."""
    if ap.field.characteristic != 0:
        return None
    m = minimal_generator_count(ap, cap)
    n = ap.nvars
    if m < n + d - 1:
        return FiredRule(CertRule.PK_GENERATOR_COUNT, Polarity.SOLVABLE,
                         f"m = {m} < n + d - 1 = {n + d - 1}")
    return None


def monomial_advisory(ap: AdmissiblePresentation, cap: int = DEFAULT_TRUNCATION_CAP) -> Optional[str]:
    """Replacement test X_i ~ X_j on the monomials of I below degree l.

    Advisory only: it never contributes to the verdict.
    """
    if ap.field.characteristic != 0:
        return None
    gens = list(ap.normalized_gens)
    if not all(g.is_monomial() for g in gens):
        return None
    if ap.truncation_size() > cap:
        return None
    n = ap.nvars
    lms = [next(iter(g.terms)) for g in gens]

    def in_ideal(e):
        return any(all(a <= b for a, b in zip(m, e)) for m in lms)

    members = [e for e in monomials_up_to(n, ap.lowey - 1) if in_ideal(e)]

    def replaceable(src, dst):
        for e in members:
            if e[src] > 0:
                t = list(e)
                t[src] -= 1
                t[dst] += 1
                if not in_ideal(tuple(t)):
                    return False
        return True

    for i in range(n):
        for j in range(i + 1, n):
            if replaceable(i, j) and replaceable(j, i):
                return (f"replacement criterion predicts not solvable "
                        f"({ap.names[i]} ~ {ap.names[j]})")
    return "replacement criterion predicts solvable"


# -- pipeline -----------------------------------------------------------------

def _homogeneous_rules(ap: AdmissiblePresentation, cfg: SearchConfig, cap: int,
                       notes: List[str]) -> Tuple[List[FiredRule], MinimalDegreeSubspace, bool]:
    """Run C1, C23, QD, PS, SP, PK on a homogeneous presentation."""
    char0 = ap.field.characteristic == 0
    fired: List[FiredRule] = []
    power = ap.is_power_ideal()
    if power:
        W = MinimalDegreeSubspace(ap.lowey, ())
    else:
        W = minimal_degree_subspace(ap)
    c23 = False
    if not power:
        if char0:
            r = rule_condition_1(W, ap)
            if r:
                fired.append(r)
        if nonsingular_search_applies(W.degree, ap.field):
            r = rule_nonsingular(W, ap, cfg)
            if r:
                fired.append(r)
                c23 = True
        for r in (rule_quadric(ap, W), rule_property_sharp(ap)):
            if r:
                fired.append(r)
        if ap.nvars > SUBPOWER_MAX_VARS:
            notes.append(f"SP_SUBPOWER skipped: n = {ap.nvars} > {SUBPOWER_MAX_VARS}")
        else:
            r = rule_subpower(ap, W)
            if r:
                fired.append(r)
    if char0:
        try:
            r = rule_generator_count(ap, W.degree, cap)
        except TooLargeError as e:
            notes.append(f"PK_GENERATOR_COUNT skipped: {e}")
        else:
            if r:
                fired.append(r)
                notes.append("PK_GENERATOR_COUNT: I lies in <X>^d and contains <X>^l, so <X> is the only "
                             "maximal ideal containing I and the remaining hypotheses hold")
    return fired, W, c23


def certify(ap: AdmissiblePresentation, cfg: SearchConfig = SearchConfig(),
            truncation_cap: int = DEFAULT_TRUNCATION_CAP) -> CertReport:
    n, l = ap.nvars, ap.lowey
    char0 = ap.field.characteristic == 0
    notes: List[str] = []
    fired: List[FiredRule] = []

    r = rule_power_ideal(ap)
    if r:
        fired.append(r)
    if char0:
        r = rule_dim_two(ap)
        if r:
            fired.append(r)

    homog = is_homogeneous_ideal(ap)
    if homog:
        inner, W, c23 = _homogeneous_rules(ap, cfg, truncation_cap, notes)
        fired.extend(inner)
    else:
        gr = graded_presentation(ap)
        inner, W, _ = _homogeneous_rules(gr, cfg, truncation_cap, notes)
        c23 = False
        for r in inner:
            if r.polarity is Polarity.SOLVABLE:
                fired.append(FiredRule(CertRule.GR_GRADED_FALLBACK, Polarity.SOLVABLE,
                                       f"on I_*: {r.witness}", via=r.tag))
            else:
                notes.append(f"{r.tag.value} on I_* says not solvable for Gr(A); "
                             f"this does not transfer to A")

    polarities = {r.polarity for r in fired}
    if len(polarities) > 1:
        raise ConflictError("rules disagree: " + ", ".join(f"{r.tag.value}={r.polarity.value}" for r in fired))
    if not fired:
        verdict = Verdict.INCONCLUSIVE
    elif polarities == {Polarity.SOLVABLE}:
        verdict = Verdict.SOLVABLE
    else:
        verdict = Verdict.NOT_SOLVABLE

    if ap.is_power_ideal():
        dim_w = comb(n + l - 1, l)
    else:
        dim_w = W.dim
    invariants: Dict[str, object] = {
        "n": n,
        "lowey": l,
        "dim_A": dimension(ap) if ap.truncation_size() <= truncation_cap else None,
        "dim_W": dim_w,
        "min_degree": W.degree,
        "min_generators": _safe_generator_count(ap, truncation_cap),
        "homogeneous": homog,
    }
    if invariants["dim_A"] is None:
        notes.append("dim_A not computed: truncation exceeds the cap")
    annotation = None
    if n == 1 and l == 2:
        annotation = "torus"
        notes.append("R != 0 and R^2 = 0: A = K[X]/<X^2>, G_A is a 1-dimensional torus")
    return CertReport(
        verdict=verdict,
        fired_rules=fired,
        invariants=invariants,
        rank_bound=min(n, dim_w) if c23 else n,
        notes=notes,
        nilpotency_annotation=annotation,
        advisory=monomial_advisory(ap, truncation_cap),
    )


def _safe_generator_count(ap: AdmissiblePresentation, cap: int) -> Optional[int]:
    try:
        return minimal_generator_count(ap, cap)
    except TooLargeError:
        return None
