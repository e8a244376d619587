import pytest
from hypothesis import given

from factn.algebra import Field, Matrix, Ring
from factn.ambient import FieldScalarBackend, PolyClassicalBackend
from factn.exceptions import (
    DimensionMismatchError,
    FactorizationError,
    MorphismError,
    ParityError,
    UnsupportedBackendError,
)
from factn.factcat import (
    FactMorphism,
    NFactorization,
    check_homogeneity,
    copairing,
    direct_sum,
    identity,
    is_isomorphism,
    morphism_space,
    pairing,
    random_factorization,
    random_morphism,
    shift_S,
    shift_S_morphism,
    validate_factorization,
    validate_morphism,
    zero_factorization,
    zero_morphism,
)
from tests.conftest import fact, mat
from tests.strategies import seeds

QX = Ring(Field.rationals(), ("x",))


def morphism(source, target, rows_list, validate=True):
    ring = source.backend.ring
    return FactMorphism(source, target, [mat(ring, rows) for rows in rows_list], validate=validate)


# ============================================
# Factorizations
# ============================================

class TestValidity:
    def test_xy(self, xy):
        assert validate_factorization(xy).ok

    def test_four_fold(self):
        backend = PolyClassicalBackend(QX, QX.parse("x^4"))
        x = fact(backend, [[["x"]]] * 4)
        assert x.n == 4

    def test_wrong_composite(self, classical):
        with pytest.raises(FactorizationError) as exc:
            fact(classical, [[["x"]], [["x"]]])
        assert exc.value.report.first_failure().index == 0
        assert exc.value.report.first_failure().name == "factorization.composite"

    def test_too_short(self, classical):
        with pytest.raises(DimensionMismatchError):
            NFactorization(classical, [classical.make_object(1)], [mat(classical.ring, [["x*y"]])])

    def test_bad_shape(self, classical):
        ring = classical.ring
        objects = [classical.make_object(1), classical.make_object(1)]
        with pytest.raises(DimensionMismatchError):
            NFactorization(classical, objects, [mat(ring, [["x"], ["x"]]), mat(ring, [["y"]])])

    def test_zero(self, classical):
        z = zero_factorization(classical, 3)
        assert z.is_zero()
        assert z.ranks == (0, 0, 0)

    def test_homogeneous(self, graded_xy):
        assert check_homogeneity(graded_xy).ok

    def test_not_homogeneous(self, graded):
        ring = graded.ring
        objects = [graded.make_object(1, [0]), graded.make_object(1, [0])]
        x = NFactorization(graded, objects, [mat(ring, [["x"]]), mat(ring, [["y"]])])
        report = check_homogeneity(x)
        assert report.first_failure().index == 0

    def test_homogeneity_needs_grading(self, xy):
        with pytest.raises(UnsupportedBackendError):
            check_homogeneity(xy)


# ============================================
# Morphisms
# ============================================

class TestMorphisms:
    def test_identity_and_zero(self, xy):
        assert validate_morphism(identity(xy)).ok
        assert validate_morphism(zero_morphism(xy, xy)).ok

    def test_square_fails(self, xy):
        with pytest.raises(MorphismError) as exc:
            morphism(xy, xy, [[[1]], [["x"]]])
        failure = exc.value.report.first_failure()
        assert failure.name == "morphism.square"
        assert failure.index == 0

    def test_composition(self, xy):
        f = identity(xy).scale(2)
        assert (f @ f).comps == identity(xy).scale(4).comps
        assert (f - f).is_zero()

    def test_hom_space_dimension(self, xy):
        assert len(morphism_space(xy, xy, 0)) == 1
        assert len(morphism_space(xy, xy, 1)) == 3


# ============================================
# Additive structure
# ============================================

class TestDirectSum:
    def test_with_zero(self, xy):
        assert direct_sum(xy, zero_factorization(xy.backend, 2)).obj == xy

    def test_block_diagonal(self, classical, xy):
        yx = fact(classical, [[["y"]], [["x"]]])
        total = direct_sum(xy, yx).obj
        ring = classical.ring
        assert total.diffs[0] == mat(ring, [["x", 0], [0, "y"]])
        assert total.diffs[1] == mat(ring, [["y", 0], [0, "x"]])

    def test_biproduct_identities(self, classical, xy):
        yx = fact(classical, [[["y"]], [["x"]]])
        s = direct_sum(xy, yx)
        (i_x, i_y), (p_x, p_y) = s.injections, s.projections
        assert (p_x @ i_x).comps == identity(xy).comps
        assert (p_y @ i_x).is_zero()
        assert ((i_x @ p_x) + (i_y @ p_y)).comps == identity(s.obj).comps

    def test_pairing(self, xy):
        f = identity(xy)
        pair = pairing([f, f])
        assert (copairing([f, f]) @ pair).comps == f.scale(2).comps


class TestIsomorphism:
    def test_identity(self, xy):
        result = is_isomorphism(identity(xy))
        assert result.is_iso
        assert result.inverse.comps == identity(xy).comps

    def test_scalar(self):
        q = FieldScalarBackend(Field.rationals(), 1)
        x = fact(q, [[[1]], [[1]]])
        f = morphism(x, x, [[[2]], [[2]]])
        result = is_isomorphism(f)
        assert result.is_iso
        assert result.inverse.comps[0] == mat(q.ring, [["1/2"]])

    def test_polynomial_not_unit(self):
        backend = PolyClassicalBackend(QX, QX.parse("x^2"))
        x = fact(backend, [[["x"]], [["x"]]])
        assert not is_isomorphism(morphism(x, x, [[["x"]], [["x"]]])).is_iso


class TestShift:
    def test_shift(self, classical, xy):
        assert shift_S(xy) == fact(classical, [[["y"]], [["x"]]])

    def test_signed(self, classical, xy):
        assert shift_S(xy, signed=True) == fact(classical, [[["-y"]], [["-x"]]])

    def test_signed_odd(self):
        backend = PolyClassicalBackend(QX, QX.parse("x^3"))
        x = fact(backend, [[["x"]]] * 3)
        with pytest.raises(ParityError):
            shift_S(x, signed=True)

    def test_functorial(self, xy):
        f = identity(xy).scale(3)
        assert shift_S_morphism(f @ f).comps == (shift_S_morphism(f) @ shift_S_morphism(f)).comps


# ============================================
# Random instances
# ============================================

class TestGenerators:
    @pytest.mark.parametrize("name", ["f5_backend", "f5_zero_backend", "classical", "graded", "endo"])
    def test_deterministic(self, request, name):
        backend = request.getfixturevalue(name)
        assert random_factorization(backend, 2, 2, 17) == random_factorization(backend, 2, 2, 17)

    @given(seeds)
    def test_random_valid(self, f5_backend, seed):
        x = random_factorization(f5_backend, 4, 2, seed)
        assert validate_factorization(x).ok

    @given(seeds)
    def test_random_graded_valid(self, graded, seed):
        assert validate_factorization(random_factorization(graded, 2, 2, seed)).ok

    @given(seeds)
    def test_random_morphism(self, f5_zero_backend, seed):
        x = random_factorization(f5_zero_backend, 4, 2, seed)
        y = random_factorization(f5_zero_backend, 4, 2, seed + 1)
        f = random_morphism(x, y, seed)
        assert validate_morphism(f).ok
        assert f == random_morphism(x, y, seed)

    def test_bad_arguments(self, f5_backend):
        with pytest.raises(DimensionMismatchError):
            random_factorization(f5_backend, 1, 2, 0)

    def test_zero_object_hom(self, f5_backend):
        z = zero_factorization(f5_backend, 2)
        assert validate_morphism(random_morphism(z, z, 3)).ok
        assert Matrix.zeros(f5_backend.ring, 0, 0) == random_morphism(z, z, 3).comps[0]
