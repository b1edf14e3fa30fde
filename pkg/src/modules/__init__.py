"""Finite group modules for the T(m,n) commuting-subsets toolkit."""

from .group import ElementSet, FiniteGroup
from .families import build_group
from .invariants import GroupInvariants
from .obstruction import Decision, DecisionStatus, ObstructionCert, SearchBudget, is_tmn
from .report_store import ReportStore

__version__ = "0.1.0"

__all__ = [
    "ElementSet",
    "FiniteGroup",
    "build_group",
    "GroupInvariants",
    "Decision",
    "DecisionStatus",
    "ObstructionCert",
    "SearchBudget",
    "is_tmn",
    "ReportStore",
]
