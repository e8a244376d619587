import random
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given

from factn.algebra import (
    Field,
    LinearTemplate,
    Matrix,
    Ring,
    bounded_poly_solve,
    field_solve,
    nullspace_matrix,
    parse_poly,
    rank,
    solution_space,
)
from factn.exceptions import (
    BackendConfigurationError,
    DimensionMismatchError,
    DivisionByZeroError,
    NegativeBoundError,
    PolynomialSyntaxError,
    UnknownVariableError,
)
from factn.factcat import unimodular
from tests.conftest import CORPUS, mat
from tests.strategies import matrices, polynomials, scalar_matrices, seeds

ROOT = CORPUS.parent

F5XY = Ring(Field.prime(5), ("x", "y"))
F5 = Ring(Field.prime(5))


# ============================================
# Fields
# ============================================

class TestField:
    def test_prime_field_arithmetic(self):
        f = Field.prime(5)
        assert f.add(3, 4) == 2
        assert f.inv(2) == 3
        assert f.coerce(Fraction(1, 2)) == 3
        assert str(f) == "F5"

    def test_rationals_format(self):
        q = Field.rationals()
        assert q.format(Fraction(-1, 2)) == "-1/2"
        assert str(q) == "Q"

    def test_bad_modulus(self):
        with pytest.raises(BackendConfigurationError):
            Field.prime(4)
        with pytest.raises(BackendConfigurationError):
            Field("Q", 5)

    def test_zero_inverse(self):
        with pytest.raises(DivisionByZeroError):
            Field.prime(5).inv(0)
        with pytest.raises(DivisionByZeroError):
            Field.prime(5).coerce(Fraction(1, 5))

    @given(seeds)
    def test_random_scalars(self, seed):
        rng = random.Random(seed)
        assert 0 <= Field.prime(5).random_element(rng) < 5
        assert Field.prime(5).random_unit(rng) != 0
        value = Field.rationals().random_element(rng, spread=1)
        assert value.denominator == 1 and -1 <= value <= 1


def test_fresh_interpreter_imports_cli():
    result = subprocess.run([sys.executable, "-c", "import factn.main"], cwd=ROOT, capture_output=True, text=True)
    assert result.returncode == 0, result.stderr


# ============================================
# Parsing and printing
# ============================================

class TestParser:
    def test_two_terms(self, qxy):
        p = parse_poly("x^2*y - 3", qxy)
        assert dict(p.terms) == {(2, 1): 1, (0, 0): -3}

    def test_zero(self, qxy):
        assert parse_poly("0", qxy).is_zero()

    def test_dangling_caret(self, qxy):
        with pytest.raises(PolynomialSyntaxError) as exc:
            parse_poly("x^", qxy)
        assert exc.value.offset == 2
        assert str(exc.value).endswith("at offset 2")

    def test_unknown_variable(self, qxy):
        with pytest.raises(UnknownVariableError) as exc:
            parse_poly("x + z", qxy)
        assert exc.value.name == "z"
        assert exc.value.offset == 4

    def test_zero_denominator(self, qxy):
        with pytest.raises(DivisionByZeroError):
            parse_poly("1/0", qxy)
        with pytest.raises(DivisionByZeroError):
            parse_poly("x/5", F5XY)

    def test_fraction_mod_p(self):
        assert parse_poly("1/2", F5XY) == 3

    def test_canonical_printing(self, qxy):
        assert str(qxy.parse("y*x + 2*x - 1")) == "x*y + 2*x - 1"
        assert str(qxy.parse("-x^2 + 1/2")) == "-x^2 + 1/2"
        assert str(qxy.parse("0")) == "0"
        assert str(F5XY.parse("-x")) == "4*x"

    @given(polynomials(F5XY))
    def test_print_parse(self, p):
        assert F5XY.parse(str(p)) == p


# ============================================
# Polynomials
# ============================================

class TestPolynomial:
    def test_exact_divide(self, qxy):
        p = qxy.parse("x^2 - y^2")
        assert p.exact_divide(qxy.parse("x - y")) == qxy.parse("x + y")
        assert qxy.var("x").exact_divide(qxy.var("y")) is None

    def test_substitute(self, qxy):
        p = qxy.parse("x + 1").substitute({"x": qxy.parse("x^2")})
        assert p == qxy.parse("x^2 + 1")

    def test_degree(self, qxy):
        assert qxy.zero().degree() == -1
        assert qxy.parse("x^2*y + y").degree() == 3

    @given(polynomials(F5XY), polynomials(F5XY), polynomials(F5XY))
    def test_ring_axioms(self, a, b, c):
        assert a + b == b + a
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
        assert a - a == 0

    @given(polynomials(F5XY), polynomials(F5XY))
    def test_divide_product(self, a, b):
        if b.is_zero():
            return
        assert (a * b).exact_divide(b) == a


# ============================================
# Matrices
# ============================================

class TestMatrix:
    def test_product(self, qxy):
        assert mat(qxy, [["x"]]) @ mat(qxy, [["y"]]) == mat(qxy, [["x*y"]])

    def test_two_by_two_factorization(self, qxy):
        a = mat(qxy, [["-x", 0], [1, "y"]])
        b = mat(qxy, [["-y", 0], [1, "x"]])
        assert a @ b == Matrix.scalar(qxy, 2, qxy.parse("x*y"))

    def test_shape_mismatch(self, qxy):
        with pytest.raises(DimensionMismatchError):
            mat(qxy, [[1, 2]]) @ mat(qxy, [[1, 2]])

    def test_determinant(self, qxy):
        assert mat(qxy, [["x", 1], [0, "y"]]).determinant() == qxy.parse("x*y")

    def test_inverse(self, qxy):
        assert mat(qxy, [[1, "x"], [0, 1]]).inverse() == mat(qxy, [[1, "-x"], [0, 1]])
        assert mat(qxy, [["x"]]).inverse() is None
        assert mat(qxy, [[2]]).inverse() == mat(qxy, [["1/2"]])

    def test_block(self, qxy):
        m = Matrix.block(qxy, [[mat(qxy, [["x"]]), None], [None, 1]], [1, 1], [1, 1])
        assert m == mat(qxy, [["x", 0], [0, 1]])
        assert str(m) == "[x, 0; 0, 1]"

    @given(matrices(F5XY, 2, 3), matrices(F5XY, 3, 2), matrices(F5XY, 2, 2))
    def test_associative(self, a, b, c):
        assert (a @ b) @ c == a @ (b @ c)
        assert Matrix.identity(F5XY, 2) @ a == a

    @given(seeds)
    def test_unimodular_inverse(self, classical, seed):
        p, p_inv = unimodular(classical, random.Random(seed), 3)
        assert p @ p_inv == Matrix.identity(classical.ring, 3)
        assert p.determinant().is_constant()
        assert p.inverse() == p_inv


# ============================================
# Linear solving
# ============================================

class TestLinsolve:
    def test_identity_system(self):
        q = Ring(Field.rationals())
        result = field_solve(Matrix.identity(q, 2), mat(q, [[3], [4]]))
        assert result.particular == mat(q, [[3], [4]])
        assert result.nullspace == []

    def test_inconsistent(self):
        q = Ring(Field.rationals())
        assert not field_solve(mat(q, [[0]]), mat(q, [[1]])).solvable

    def test_nullspace_over_f2(self):
        f2 = Ring(Field.prime(2))
        result = field_solve(mat(f2, [[1, 1]]), mat(f2, [[0]]))
        assert result.particular == mat(f2, [[0], [0]])
        assert result.nullspace == [mat(f2, [[1], [1]])]

    def test_rank_and_nullspace(self):
        q = Ring(Field.rationals())
        a = mat(q, [[1, 2], [2, 4]])
        assert rank(a) == 1
        n = nullspace_matrix(a)
        assert n.shape == (2, 1)
        assert (a @ n).is_zero()

    @given(scalar_matrices(F5, 3, 4), scalar_matrices(F5, 4, 1))
    def test_solutions_solve(self, a, x):
        b = a @ x
        result = field_solve(a, b)
        assert a @ result.particular == b
        for v in result.nullspace:
            assert (a @ v).is_zero()
        assert len(result.nullspace) == 4 - rank(a)


class TestTemplate:
    @pytest.fixture
    def template(self):
        ring = Ring(Field.rationals(), ("x",))
        target = mat(ring, [["x^2"]])
        return LinearTemplate(ring, {"u": (1, 1)}, lambda a: [a["u"] - target])

    def test_found_at_bound(self, template):
        solution = bounded_poly_solve(template, 2)
        assert solution["u"] == mat(template.ring, [["x^2"]])

    def test_below_bound(self, template):
        assert bounded_poly_solve(template, 1) is None

    def test_negative_bound(self, template):
        with pytest.raises(NegativeBoundError):
            solution_space(template, -1)

    def test_homogeneous_basis(self):
        ring = Ring(Field.rationals(), ("x",))
        x = mat(ring, [["x"]])
        template = LinearTemplate(ring, {"u": (1, 1), "v": (1, 1)}, lambda a: [a["u"] @ x - x @ a["v"]])
        particular, basis = solution_space(template, 1)
        assert particular is not None
        assert len(basis) == 2
