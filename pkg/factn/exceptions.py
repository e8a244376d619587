"""
Exception hierarchy for factn
Every library error derives from FactnError so the CLI can map it to exit 2
"""
from typing import Optional


class FactnError(Exception):
    """Base class for all factn errors"""


# ============================================
# Algebra
# ============================================

class AlgebraError(FactnError):
    """Errors raised by scalar, polynomial and matrix arithmetic"""


class PolynomialSyntaxError(AlgebraError):
    """Malformed polynomial text"""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class UnknownVariableError(AlgebraError):
    """Variable name not declared by the ring"""

    def __init__(self, name: str, offset: Optional[int] = None):
        where = f" at offset {offset}" if offset is not None else ""
        super().__init__(f"unknown variable '{name}'{where}")
        self.name = name
        self.offset = offset


class DivisionByZeroError(AlgebraError):
    """Zero denominator, or a denominator divisible by the characteristic"""

    def __init__(self, message: str = "division by zero", offset: Optional[int] = None):
        where = f" at offset {offset}" if offset is not None else ""
        super().__init__(f"{message}{where}")
        self.offset = offset


class DimensionMismatchError(AlgebraError):
    """Incompatible matrix shapes"""


class RingMismatchError(AlgebraError):
    """Operands live over different rings"""


class TemplateShapeError(AlgebraError):
    """A linear template produced inconsistent shapes"""


class NegativeBoundError(AlgebraError):
    """Degree bound below zero"""


# ============================================
# Ambient data
# ============================================

class BackendError(FactnError):
    """Errors about the ambient triple (ring, T, omega)"""


class BackendConfigurationError(BackendError):
    """Backend parameters are inconsistent"""


class NoInverseDataError(BackendError):
    """The backend carries no quasi-inverse of T"""


# ============================================
# Factorizations and morphisms
# ============================================

class _ReportError(FactnError):
    """Error carrying the failing check report"""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class FactorizationError(_ReportError):
    """An n-fold composite differs from the omega component"""


class MorphismError(_ReportError):
    """A morphism square fails to commute"""


class HomotopyError(_ReportError):
    """A homotopy witness fails verification"""


class ParityError(FactnError):
    """Suspension and cones need an even number of components"""


class UnsupportedBackendError(FactnError):
    """Operation needs exact linear algebra over a field"""


class ExactStructureError(FactnError):
    """Not a deflation or inflation, or no factorization through a kernel"""


# ============================================
# Documents
# ============================================

class DocumentError(FactnError):
    """Problems with an input document"""


class SchemaError(DocumentError):
    """Document does not follow the schema"""

    def __init__(self, message: str, pointer: str = ""):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer


class ReferenceError_(DocumentError):
    """Unresolved or duplicated name inside a document"""

    def __init__(self, name: str, message: str = "unresolved name"):
        super().__init__(f"{message}: '{name}'")
        self.name = name


# ============================================
# Command line
# ============================================

class UsageError(FactnError):
    """Missing or inconsistent command-line arguments"""
