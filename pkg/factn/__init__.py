# ============================================
# factn/__init__.py
# ============================================
"""
factn
Exact n-fold matrix factorizations: validation, homotopy theory,
cone triangles and the Frobenius exact structure
"""

__version__ = "1.0.0"
__author__ = "factn developers"
__description__ = "Exact toolkit for n-fold factorizations of a natural transformation"
