# ============================================
# factn/utils/__init__.py
# ============================================
"""
Utility functions and helpers
"""
from .logging import setup_logging, log_function_call
from .seeding import derive_rng, derive_seed, inputs_digest

__all__ = [
    "setup_logging",
    "log_function_call",
    "derive_rng",
    "derive_seed",
    "inputs_digest",
]
