"""
Pydantic models for documents and check reports
"""
from .document import (
    BackendSpec,
    DocumentSpec,
    FactorizationSpec,
    FieldSpec,
    HomotopySpec,
    MorphismSpec,
    OptionsSpec,
)
from .report import CheckResult, Report, check

__all__ = [
    "BackendSpec",
    "DocumentSpec",
    "FactorizationSpec",
    "FieldSpec",
    "HomotopySpec",
    "MorphismSpec",
    "OptionsSpec",
    "CheckResult",
    "Report",
    "check",
]
