from dataclasses import dataclass
from typing import ClassVar

import pytest

from factn.algebra import Field, Matrix, Ring
from factn.ambient import (
    Backend,
    GradedShiftBackend,
    ObjectHandle,
    check_adjunction_identities,
    check_omega_coherence,
)
from factn.exceptions import BackendConfigurationError, NoInverseDataError
from tests.conftest import mat


@dataclass(frozen=True)
class SquaringBackend(Backend):
    """T squares x while omega is x * Id, so omega is not natural"""
    ring_: Ring
    kind: ClassVar[str] = "squaring"

    @property
    def ring(self) -> Ring:
        return self.ring_

    def _twist_matrix(self, m: Matrix) -> Matrix:
        return m.substitute({"x": self.ring_.parse("x^2")})

    def omega_value(self):
        return self.ring_.var("x")


class TestObjects:
    def test_direct_sum(self):
        assert ObjectHandle(1) + ObjectHandle(2) == ObjectHandle(3)
        assert ObjectHandle(1, (0,)) + ObjectHandle(1, (3,)) == ObjectHandle(2, (0, 3))

    def test_negative_rank(self):
        with pytest.raises(ValueError):
            ObjectHandle(-1)

    def test_degrees_only_when_graded(self, classical, graded):
        assert graded.make_object(2) == ObjectHandle(2, (0, 0))
        with pytest.raises(BackendConfigurationError):
            classical.make_object(1, [0])


# ============================================
# T and omega
# ============================================

class TestTwist:
    def test_classical_is_identity(self, classical, qxy):
        m = mat(qxy, [["x + y"]])
        assert classical.apply_T(m) == m

    def test_endo_substitutes(self, endo):
        ring = endo.ring
        assert endo.apply_T(mat(ring, [["x + 1"]])) == mat(ring, [["x^2 + 1"]])

    def test_graded_shifts_degrees(self, graded):
        assert graded.shift == 2
        assert graded.apply_T(ObjectHandle(1, (0,))) == ObjectHandle(1, (2,))
        m = mat(graded.ring, [["x"]])
        assert graded.apply_T(m) == m

    def test_graded_needs_homogeneous_w(self):
        ring = Ring(Field.rationals(), ("x", "y"), (1, 1))
        with pytest.raises(BackendConfigurationError):
            GradedShiftBackend(ring, ring.parse("x + y^2"))
        with pytest.raises(BackendConfigurationError):
            GradedShiftBackend(Ring(Field.rationals(), ("x",)), Ring(Field.rationals(), ("x",)).var("x"))

    def test_omega_values(self, f5_backend, classical, endo):
        assert f5_backend.omega(ObjectHandle(2)) == Matrix.identity(f5_backend.ring, 2)
        assert classical.omega(ObjectHandle(1)) == mat(classical.ring, [["x*y"]])
        assert endo.omega(ObjectHandle(2)).is_zero()


# ============================================
# Quasi-inverse
# ============================================

class TestInverseData:
    def test_graded(self, graded):
        data = graded.inverse_data()
        x = ObjectHandle(2, (0, 1))
        assert data.apply_T_inv(x) == ObjectHandle(2, (-2, -1))
        assert data.eta(x).is_identity()
        assert data.omega_inv(x) == graded.omega(x)

    def test_non_invertible_endo(self, endo):
        assert endo.inverse_data() is None
        with pytest.raises(NoInverseDataError, match="not invertible"):
            endo.require_inverse()

    def test_affine_endo_round_trip(self, endo_invertible, qxy):
        data = endo_invertible.require_inverse()
        m = mat(qxy, [["x*y + x", "y^2"]])
        assert endo_invertible.apply_T(data.apply_T_inv(m)) == m
        assert data.apply_T_inv(endo_invertible.apply_T(m)) == m

    @pytest.mark.parametrize("name", ["graded", "f5_zero_backend", "endo_invertible"])
    def test_adjunction_identities(self, request, name):
        backend = request.getfixturevalue(name)
        report = check_adjunction_identities(backend, 20, seed=3)
        assert report.ok, report.describe_failure()
        assert {c.name for c in report.checks} == {
            "adjunction.eq1_triangle_T",
            "adjunction.eq2_triangle_T_inv",
            "adjunction.eq3_omega_inv_eta",
            "adjunction.eq4_omega_epsilon",
            "adjunction.eq5_epsilon_omega",
            "adjunction.eq6_omega_T_inv",
            "adjunction.eta_naturality",
            "adjunction.epsilon_naturality",
        }

    @pytest.mark.slow
    def test_adjunction_identities_acceptance(self, graded, f5_zero_backend):
        assert check_adjunction_identities(graded, 100, seed=11).ok
        assert check_adjunction_identities(f5_zero_backend, 100, seed=11).ok

    def test_adjunction_without_inverse(self, endo):
        with pytest.raises(NoInverseDataError):
            check_adjunction_identities(endo, 5, seed=0)


# ============================================
# Coherence
# ============================================

class TestCoherence:
    @pytest.mark.parametrize("name", ["classical", "graded", "endo", "f5_backend"])
    def test_coherent(self, request, name):
        report = check_omega_coherence(request.getfixturevalue(name), 20, seed=5)
        assert report.ok, report.describe_failure()

    def test_unnatural_omega(self):
        ring = Ring(Field.rationals(), ("x",))
        report = check_omega_coherence(SquaringBackend(ring), 3, seed=0)
        assert not report.ok
        failed = {c.name: c for c in report.failures()}
        assert failed["omega.naturality"].detail == "counterexample f = [x]"
        assert "omega.coherence" in failed
