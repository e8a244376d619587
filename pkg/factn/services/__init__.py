"""
Randomized law checks and the axiom suite
"""
from .axiom_suite import AxiomSuiteRunner, run_axiom_suite
from .instances import perturb, random_null_homotopic
from .laws import HomotopyLawChecker, homotopy_classes_respect_ops

__all__ = [
    "AxiomSuiteRunner",
    "HomotopyLawChecker",
    "homotopy_classes_respect_ops",
    "perturb",
    "random_null_homotopic",
    "run_axiom_suite",
]
