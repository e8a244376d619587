"""
Hypothesis strategies shared by the property tests
"""
from hypothesis import strategies as st

from factn.algebra import Matrix, Polynomial, Ring

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def polynomials(ring: Ring, max_degree: int = 2, max_terms: int = 4):
    exponents = st.tuples(*[st.integers(0, max_degree) for _ in range(ring.nvars)])
    coefficients = st.integers(-4, 4)
    return st.dictionaries(exponents, coefficients, max_size=max_terms).map(
        lambda terms: Polynomial(ring, terms)
    )


def matrices(ring: Ring, rows: int, cols: int, **kwargs):
    return st.lists(
        polynomials(ring, **kwargs), min_size=rows * cols, max_size=rows * cols
    ).map(lambda entries: Matrix(ring, rows, cols, entries))


def scalar_matrices(ring: Ring, rows: int, cols: int):
    return st.lists(
        st.lists(st.integers(-3, 3), min_size=cols, max_size=cols),
        min_size=rows, max_size=rows,
    ).map(lambda values: Matrix.from_scalars(ring, values, cols))
