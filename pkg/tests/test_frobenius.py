import pytest
from hypothesis import given

from factn.exceptions import DimensionMismatchError, NoInverseDataError
from factn.factcat import (
    direct_sum,
    identity,
    is_deflation,
    is_inflation,
    morphism_space,
    random_factorization,
    random_morphism,
    validate_factorization,
    zero_factorization,
    zero_morphism,
)
from factn.factcat.generators import default_morphism_bound
from factn.frobenius import (
    AdjunctionId,
    adjunction_round_trip,
    canonical_deflation,
    canonical_inflation,
    is_projective_injective,
    left_transpose,
    left_untranspose,
    naturality_report,
    probe_injective,
    probe_projective,
    random_conflation,
    right_transpose,
    right_untranspose,
    shifted_last,
    stably_zero,
    theta0,
    theta0_contraction,
    theta1,
    theta_s,
    transpose,
)
from factn.homotopy import Verdict, is_contractible, verify_homotopy
from factn.services import random_null_homotopic
from factn.utils import derive_rng, derive_seed
from tests.conftest import mat
from tests.strategies import seeds


def _transpose_inputs(backend, adj, x, rank, seed):
    """g on C = rank, a test morphism h and u: C' -> C (left) or C -> C' (right)"""
    rng = derive_rng(seed, "transpose-test", adj.value)
    degree = default_morphism_bound(backend)
    c = backend.make_object(rank)
    other = backend.random_object(rng, 2)
    x2 = random_factorization(backend, x.n, 2, derive_seed(rng))
    s = adj.s
    if adj.side == "left":
        g = backend.random_matrix(rng, x.objects[s].rank, c.rank, degree)
        h = random_morphism(x, x2, derive_seed(rng))
        u = backend.random_matrix(rng, c.rank, other.rank, degree)
    else:
        g = backend.random_matrix(rng, c.rank, shifted_last(x, s).rank, degree)
        h = random_morphism(x2, x, derive_seed(rng))
        u = backend.random_matrix(rng, other.rank, c.rank, degree)
    return g, c, h, u, other


# ============================================
# Interval factorizations
# ============================================

class TestTheta:
    def test_theta0(self, classical):
        ring = classical.ring
        x = theta0(classical, classical.make_object(1), 2)
        assert x.diffs == (mat(ring, [[1]]), mat(ring, [["x*y"]]))

    def test_theta0_of_zero(self, classical):
        assert theta0(classical, classical.make_object(0), 4).is_zero()

    def test_theta1_graded(self, graded):
        x = theta1(graded, graded.make_object(1), 2)
        assert x.diffs == (mat(graded.ring, [["x*y"]]), mat(graded.ring, [[1]]))
        assert x.objects[0].degrees == (-2,)

    @pytest.mark.parametrize("s", [0, 1, 2, 3])
    def test_theta_s_valid(self, graded, s):
        assert validate_factorization(theta_s(graded, graded.make_object(2, [0, 1]), 4, s)).ok

    def test_index_range(self, graded):
        with pytest.raises(DimensionMismatchError):
            theta_s(graded, graded.make_object(1), 4, 4)
        with pytest.raises(DimensionMismatchError):
            theta_s(graded, graded.make_object(1), 1, 0)

    def test_theta1_needs_inverse(self, endo):
        with pytest.raises(NoInverseDataError):
            theta1(endo, endo.make_object(1), 2)

    @pytest.mark.parametrize("name", ["classical", "f5_zero_backend", "endo"])
    def test_theta0_contracts(self, request, name):
        backend = request.getfixturevalue(name)
        h = theta0_contraction(backend, backend.make_object(2), 4)
        assert verify_homotopy(h).ok


# ============================================
# Adjunctions
# ============================================

class TestAdjunctions:
    def test_identity_transposes_to_identity(self, classical):
        c = classical.make_object(1)
        x = theta0(classical, c, 2)
        phi = left_transpose(classical.identity(c), c, x, 0)
        assert phi.comps == identity(x).comps

    def test_right_transpose_formula(self, f5_backend):
        x = random_factorization(f5_backend, 4, 2, 9)
        c = f5_backend.make_object(1)
        rng = derive_rng(9, "g")
        g = f5_backend.random_matrix(rng, 1, x.objects[3].rank, 0)
        phi = right_transpose(g, c, x, 0)
        for j in range(4):
            assert phi.comps[j] == g @ x.chain(j, 3)
        assert right_untranspose(phi, 0) == g

    def test_higher_index_round_trip(self, graded):
        x = random_factorization(graded, 4, 2, 21)
        c = graded.make_object(1)
        rng = derive_rng(21, "g")
        g = graded.random_matrix(rng, x.objects[2].rank, 1, 1)
        assert left_untranspose(left_transpose(g, c, x, 2), 2) == g
        g = graded.random_matrix(rng, 1, shifted_last(x, 2).rank, 1)
        assert right_untranspose(right_transpose(g, c, x, 2), 2) == g

    def test_enum(self):
        assert [(a.side, a.s) for a in AdjunctionId] == [
            ("left", 0), ("left", 1), ("right", 0), ("right", 1),
        ]

    @pytest.mark.parametrize("adj", list(AdjunctionId))
    @given(seed=seeds)
    def test_round_trip_and_naturality(self, f5_backend, adj, seed):
        x = random_factorization(f5_backend, 4, 2, seed)
        g, c, h, u, other = _transpose_inputs(f5_backend, adj, x, 2, seed)
        assert adjunction_round_trip(adj, g, c, x).ok
        report = naturality_report(adj.side, adj.s, g, c, x, h, u, other)
        assert report.ok, report.describe_failure()

    @pytest.mark.parametrize("adj", list(AdjunctionId))
    @given(seed=seeds)
    def test_forward_is_onto(self, f5_backend, adj, seed):
        x = random_factorization(f5_backend, 4, 2, seed)
        c = f5_backend.make_object(1 + seed % 2)
        theta = theta_s(f5_backend, c, 4, adj.s)
        space = morphism_space(theta, x) if adj.side == "left" else morphism_space(x, theta)
        for phi in space:
            again = transpose(adj, "forward", transpose(adj, "backward", phi), x, c)
            assert again.comps == phi.comps
        g, _, _, _, _ = _transpose_inputs(f5_backend, adj, x, c.rank, seed)
        report = adjunction_round_trip(adj, g, c, x)
        assert report.ok
        assert len(report.checks) == 1 + len(space)

    @pytest.mark.parametrize("adj", list(AdjunctionId))
    def test_graded(self, graded, adj):
        for seed in range(3):
            x = random_factorization(graded, 2, 2, seed)
            g, c, h, u, other = _transpose_inputs(graded, adj, x, 1, seed)
            assert adjunction_round_trip(adj, g, c, x).ok
            assert naturality_report(adj.side, adj.s, g, c, x, h, u, other).ok


# ============================================
# Canonical covers
# ============================================

class TestCovers:
    @given(seeds)
    def test_two_fold_paper_mode(self, f5_backend, seed):
        x = random_factorization(f5_backend, 2, 2, seed)
        assert canonical_deflation(x, "paper").report.ok
        assert canonical_inflation(x, "paper").report.ok

    @given(seeds)
    def test_full_mode(self, f5_zero_backend, seed):
        x = random_factorization(f5_zero_backend, 4, 2, seed)
        deflation = canonical_deflation(x, "full")
        inflation = canonical_inflation(x, "full")
        assert is_deflation(deflation.morphism)
        assert is_inflation(inflation.morphism)

    def test_concentrated_paper_mode(self, concentrated):
        cover = canonical_deflation(concentrated, "paper")
        failures = cover.report.failures()
        assert [(c.name, c.index) for c in failures] == [("deflation.paper.surjective", 2)]
        assert not canonical_inflation(concentrated, "paper").report.ok

    def test_concentrated_full_mode(self, concentrated):
        assert canonical_deflation(concentrated, "full").report.ok
        assert canonical_inflation(concentrated, "full").report.ok

    def test_unknown_mode(self, concentrated):
        with pytest.raises(ValueError):
            canonical_deflation(concentrated, "half")


# ============================================
# Probes and the stable category
# ============================================

class TestProbes:
    @given(seeds)
    def test_theta_lifts(self, f5_backend, seed):
        c = random_conflation(f5_backend, 4, 2, seed)
        p = theta0(f5_backend, f5_backend.make_object(1), 4)
        m = random_morphism(p, c.p.target, seed)
        result = probe_projective(p, m, c)
        assert result.found
        assert (c.p @ result.morphism).comps == m.comps

    @given(seeds)
    def test_theta_extends(self, f5_backend, seed):
        c = random_conflation(f5_backend, 4, 2, seed)
        i = theta0(f5_backend, f5_backend.make_object(1), 4)
        m = random_morphism(c.l.source, i, seed)
        result = probe_injective(i, m, c)
        assert result.found
        assert (result.morphism @ c.l).comps == m.comps

    def test_wrong_ends(self, f5_backend):
        c = random_conflation(f5_backend, 2, 1, 0)
        p = theta0(f5_backend, f5_backend.make_object(1), 2)
        q = theta0(f5_backend, f5_backend.make_object(2), 2)
        with pytest.raises(DimensionMismatchError):
            probe_projective(p, identity(q), c)


class TestStable:
    def test_zero_and_theta(self, f5_backend):
        x = theta0(f5_backend, f5_backend.make_object(1), 4)
        assert stably_zero(zero_morphism(x, x))
        assert is_projective_injective(x)
        assert is_projective_injective(zero_factorization(f5_backend, 4))

    def test_concentrated_not_projective(self, concentrated):
        assert not stably_zero(identity(concentrated))
        assert is_contractible(concentrated) == Verdict.NO

    @given(seeds)
    def test_null_homotopic_is_stably_zero(self, f5_zero_backend, seed):
        x = random_factorization(f5_zero_backend, 4, 2, seed)
        y = random_factorization(f5_zero_backend, 4, 2, seed + 1)
        h = random_null_homotopic(x, y, seed)
        assert stably_zero(h.f)

    @given(seeds)
    def test_projective_injective_iff_contractible(self, f5_zero_backend, seed):
        x = random_factorization(f5_zero_backend, 4, 2, seed)
        assert is_projective_injective(x) == (is_contractible(x) == Verdict.YES)

    @pytest.mark.parametrize("name", ["f5_backend", "f5_zero_backend"])
    @given(seed=seeds)
    def test_theta_sums_are_stably_zero(self, request, name, seed):
        backend = request.getfixturevalue(name)
        rng = derive_rng(seed, "theta-sum")
        p = backend.random_object(rng, 2)
        q = backend.random_object(rng, 2)
        total = direct_sum(theta0(backend, p, 4), theta1(backend, q, 4)).obj
        assert stably_zero(identity(total))
        assert is_projective_injective(total)

    @given(seeds)
    def test_stably_zero_is_an_ideal(self, f5_zero_backend, seed):
        rng = derive_rng(seed, "ideal")
        w, x, y, z = (random_factorization(f5_zero_backend, 4, 2, derive_seed(rng)) for _ in range(4))
        f = random_null_homotopic(x, y, derive_seed(rng)).f
        u = random_morphism(w, x, derive_seed(rng))
        v = random_morphism(y, z, derive_seed(rng))
        assert stably_zero(f)
        assert stably_zero(v @ f @ u)
