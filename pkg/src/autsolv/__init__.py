"""Solvability certificates for automorphism groups of local algebras K[X]/I."""
from .algebra import IdealPresentation, validate_admissible
from .certifier import SearchConfig, Verdict, certify
from .deroracle import cross_check, run_oracle
from .parser import parse_presentation
from .polyfield import QQ, FieldSpec, Polynomial, variables

__version__ = "0.1.0"

__all__ = [
    "FieldSpec", "QQ", "Polynomial", "variables",
    "IdealPresentation", "validate_admissible",
    "SearchConfig", "Verdict", "certify",
    "run_oracle", "cross_check", "parse_presentation",
]
