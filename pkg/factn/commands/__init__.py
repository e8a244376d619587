# ============================================
# factn/commands/__init__.py
# ============================================
"""
Command handlers, one module per group
"""
from . import exact, factorizations, frobenius, homotopies, triangles
from .router import Command, CommandContext, CommandRouter

ROUTERS = [
    factorizations.router,
    homotopies.router,
    triangles.router,
    exact.router,
    frobenius.router,
]

__all__ = ["ROUTERS", "Command", "CommandContext", "CommandRouter"]
