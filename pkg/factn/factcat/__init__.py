"""
The category of n-fold factorizations and its componentwise exact structure
"""
from .core import (
    Biproduct,
    FactMorphism,
    IsoResult,
    NFactorization,
    check_homogeneity,
    copairing,
    direct_sum,
    direct_sum_many,
    identity,
    is_isomorphism,
    morphism_space,
    pairing,
    shift_S,
    shift_S_morphism,
    solve_morphism,
    validate_factorization,
    validate_morphism,
    zero_factorization,
    zero_morphism,
)
from .exact import (
    CokernelData,
    Conflation,
    KernelData,
    PullbackData,
    PushoutData,
    cokernel,
    is_conflation,
    is_deflation,
    is_inflation,
    kernel,
    pullback_deflation,
    pushout_inflation,
)
from .generators import conjugate, random_factorization, random_morphism, unimodular

__all__ = [
    "Biproduct",
    "FactMorphism",
    "IsoResult",
    "NFactorization",
    "check_homogeneity",
    "copairing",
    "direct_sum",
    "direct_sum_many",
    "identity",
    "is_isomorphism",
    "morphism_space",
    "pairing",
    "shift_S",
    "shift_S_morphism",
    "solve_morphism",
    "validate_factorization",
    "validate_morphism",
    "zero_factorization",
    "zero_morphism",
    "CokernelData",
    "Conflation",
    "KernelData",
    "PullbackData",
    "PushoutData",
    "cokernel",
    "is_conflation",
    "is_deflation",
    "is_inflation",
    "kernel",
    "pullback_deflation",
    "pushout_inflation",
    "conjugate",
    "random_factorization",
    "random_morphism",
    "unimodular",
]
