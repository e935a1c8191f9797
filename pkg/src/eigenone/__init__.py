"""Exact computational algebra for character tables, Weyl groups and
eigenvalue-one verification."""

from .cyclotomic import Cyclotomic
from .groups import (
    FiniteGroup,
    GroupAutomorphism,
    SemidirectExtension,
    build_semidirect,
    SizeCapExceeded,
    NotAnAutomorphism,
)

__all__ = [
    "Cyclotomic",
    "FiniteGroup",
    "GroupAutomorphism",
    "SemidirectExtension",
    "build_semidirect",
    "SizeCapExceeded",
    "NotAnAutomorphism",
]
