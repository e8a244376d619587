import itertools
import random

import pytest
from hypothesis import given

from factn.algebra import Field, Matrix
from factn.ambient import FieldScalarBackend
from factn.exceptions import DimensionMismatchError, HomotopyError
from factn.factcat import (
    FactMorphism,
    NFactorization,
    identity,
    random_factorization,
    random_morphism,
    validate_factorization,
    validate_morphism,
    zero_factorization,
    zero_morphism,
)
from factn.homotopy import (
    Homotopy,
    Verdict,
    add_witnesses,
    chain_witnesses,
    compose_witnesses,
    is_contractible,
    negate_witness,
    reflexive_witness,
    require_verified,
    solve_homotopy,
    verify_homotopy,
    witness_shape,
)
from factn.services import perturb
from factn.triangles import mapping_cone
from tests.conftest import fact, mat
from tests.strategies import seeds


def witness(f, g, rows_list):
    ring = f.backend.ring
    return Homotopy(f, g, [mat(ring, rows, witness_shape(f, j)[1]) for j, rows in enumerate(rows_list)])


class TestVerify:
    def test_reflexive(self, xy):
        assert verify_homotopy(reflexive_witness(identity(xy))).ok

    def test_wrong_witness(self, xy):
        h = witness(identity(xy), zero_morphism(xy, xy), [[[1]], [[1]]])
        report = verify_homotopy(h)
        assert [c.index for c in report.failures()] == [0, 1]
        with pytest.raises(HomotopyError):
            require_verified(h)

    def test_shape_checked(self, xy):
        ring = xy.backend.ring
        with pytest.raises(DimensionMismatchError):
            Homotopy(identity(xy), identity(xy), [mat(ring, [[1, 0]]), mat(ring, [[1]])])

    def test_identity_cone_contracts(self, xy):
        cone = mapping_cone(identity(xy)).cone
        found = solve_homotopy(identity(cone), zero_morphism(cone, cone))
        assert found is not None
        assert verify_homotopy(found).ok


class TestSearch:
    def test_no_witness_for_identity(self, xy):
        assert solve_homotopy(identity(xy), zero_morphism(xy, xy), bound=3) is None

    def test_contractible_verdicts(self, xy, f5_zero_backend, classical):
        assert is_contractible(zero_factorization(classical, 2)) == Verdict.YES
        assert is_contractible(mapping_cone(identity(xy)).cone) == Verdict.YES
        assert is_contractible(xy) == Verdict.UNKNOWN
        still = fact(f5_zero_backend, [[[0]], [[0]]])
        assert is_contractible(still) == Verdict.NO

    def test_verdict_values(self):
        assert [v.value for v in Verdict] == ["yes", "no", "unknown"]

    @given(seeds)
    def test_perturbation_found(self, f5_backend, seed):
        x = random_factorization(f5_backend, 4, 2, seed)
        y = random_factorization(f5_backend, 4, 2, seed + 1)
        h = perturb(random_morphism(x, y, seed), seed)
        assert verify_homotopy(h).ok
        assert solve_homotopy(h.f, h.g) is not None


class TestWitnessAlgebra:
    @given(seeds)
    def test_closure(self, f5_zero_backend, seed):
        x = random_factorization(f5_zero_backend, 4, 2, seed)
        y = random_factorization(f5_zero_backend, 4, 2, seed + 1)
        z = random_factorization(f5_zero_backend, 4, 2, seed + 2)
        h1 = perturb(random_morphism(x, y, seed), seed)
        h2 = perturb(h1.g, seed + 1)
        k = perturb(random_morphism(y, z, seed + 2), seed + 3)
        assert verify_homotopy(negate_witness(h1)).ok
        assert verify_homotopy(chain_witnesses(h1, negate_witness(h2))).ok
        assert verify_homotopy(add_witnesses(h1, h2)).ok
        assert verify_homotopy(compose_witnesses(h1, k)).ok

    def test_chain_mismatch(self, xy):
        a = reflexive_witness(identity(xy))
        b = reflexive_witness(zero_morphism(xy, xy))
        with pytest.raises(DimensionMismatchError):
            chain_witnesses(a, b)


# ============================================
# Exhaustive oracle over F2
# ============================================

def _matrices(ring, rows, cols):
    for values in itertools.product(range(2), repeat=rows * cols):
        yield Matrix.from_scalars(ring, [list(values[i * cols:(i + 1) * cols]) for i in range(rows)], cols)


def _factorizations(backend, ranks):
    objects = [backend.make_object(r) for r in ranks]
    shapes = [(ranks[(j + 1) % len(ranks)], ranks[j]) for j in range(len(ranks))]
    for diffs in itertools.product(*[list(_matrices(backend.ring, r, c)) for r, c in shapes]):
        x = NFactorization(backend, objects, diffs, validate=False)
        if validate_factorization(x).ok:
            yield x


def _morphisms(x, y):
    ring = x.backend.ring
    shapes = [(b.rank, a.rank) for a, b in zip(x.objects, y.objects)]
    for comps in itertools.product(*[list(_matrices(ring, r, c)) for r, c in shapes]):
        f = FactMorphism(x, y, comps, validate=False)
        if validate_morphism(f).ok:
            yield f


def _homotopic(f, g):
    ring = f.backend.ring
    shapes = [witness_shape(f, j) for j in range(f.n)]
    for diag in itertools.product(*[list(_matrices(ring, r, c)) for r, c in shapes]):
        if verify_homotopy(Homotopy(f, g, diag)).ok:
            return True
    return False


def _check_oracle(objects, pairs=None, rng=None):
    for x, y in itertools.product(objects, repeat=2):
        maps = list(_morphisms(x, y))
        candidates = list(itertools.product(maps, repeat=2))
        if pairs is not None and len(candidates) > pairs:
            candidates = rng.sample(candidates, pairs)
        for f, g in candidates:
            assert (solve_homotopy(f, g) is not None) == _homotopic(f, g)


class TestOracle:
    @pytest.mark.parametrize("c", [0, 1])
    def test_rank_one(self, c):
        backend = FieldScalarBackend(Field.prime(2), c)
        objects = list(_factorizations(backend, [1, 1])) + list(_factorizations(backend, [0, 1]))
        _check_oracle(objects)

    @pytest.mark.slow
    @pytest.mark.parametrize("c", [0, 1])
    def test_rank_two(self, c):
        backend = FieldScalarBackend(Field.prime(2), c)
        objects = list(_factorizations(backend, [1, 1])) + list(_factorizations(backend, [2, 1]))
        _check_oracle(random.Random(c).sample(objects, min(6, len(objects))), pairs=40, rng=random.Random(7))
