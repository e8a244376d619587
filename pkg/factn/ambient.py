"""
Ambient data (A, T, omega)
Objects are finite-rank free modules over a Ring; a Backend fixes the additive
functor T (on objects and on matrices) and the natural transformation
omega: Id -> T. Backends with an invertible T also carry strict quasi-inverse
data (T^-1, eta, epsilon, omega^(-1)).
"""
import logging
import random
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import ClassVar, Dict, Mapping, Optional, Tuple, Union

from factn.algebra import Field, Matrix, Polynomial, Ring
from factn.algebra.fields import Scalar
from factn.exceptions import (
    BackendConfigurationError,
    NoInverseDataError,
    RingMismatchError,
)
from factn.schemas.report import Report, check
from factn.utils.seeding import derive_rng

logger = logging.getLogger(__name__)


# ============================================
# Objects
# ============================================

@dataclass(frozen=True)
class ObjectHandle:
    """Free module of the given rank; degrees are generator degrees (graded only)"""
    rank: int
    degrees: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError(f"negative rank {self.rank}")
        if self.degrees is not None:
            object.__setattr__(self, "degrees", tuple(self.degrees))
            if len(self.degrees) != self.rank:
                raise ValueError(f"{len(self.degrees)} degrees for rank {self.rank}")

    def __add__(self, other: "ObjectHandle") -> "ObjectHandle":
        """Direct sum"""
        if (self.degrees is None) != (other.degrees is None):
            raise ValueError("cannot add graded and ungraded objects")
        degrees = None if self.degrees is None else self.degrees + other.degrees
        return ObjectHandle(self.rank + other.rank, degrees)

    def shifted(self, d: int) -> "ObjectHandle":
        if self.degrees is None:
            return self
        return ObjectHandle(self.rank, tuple(g + d for g in self.degrees))


MatrixOrObject = Union[Matrix, ObjectHandle]


# ============================================
# Backends
# ============================================

class Backend(ABC):
    """The triple (A, T, omega) over a fixed ring"""

    kind: ClassVar[str] = ""
    graded: ClassVar[bool] = False

    @property
    @abstractmethod
    def ring(self) -> Ring:
        ...

    @abstractmethod
    def _twist_matrix(self, m: Matrix) -> Matrix:
        ...

    def _twist_object(self, x: ObjectHandle) -> ObjectHandle:
        return x

    @abstractmethod
    def omega_value(self) -> Polynomial:
        """The scalar w with omega_X = w * Id"""

    def _untwist_matrix(self, m: Matrix) -> Matrix:
        raise NoInverseDataError(f"{self.kind}: no quasi-inverse")

    def _untwist_object(self, x: ObjectHandle) -> ObjectHandle:
        return x

    def has_inverse(self) -> bool:
        return True

    # ============================================
    # T and omega
    # ============================================

    def check_ring(self, m: Matrix):
        if m.ring != self.ring:
            raise RingMismatchError(f"matrix over {m.ring} used with backend over {self.ring}")

    def apply_T(self, m: MatrixOrObject) -> MatrixOrObject:
        """T on a matrix or on an object"""
        if isinstance(m, ObjectHandle):
            return self._twist_object(m)
        self.check_ring(m)
        return self._twist_matrix(m)

    def omega(self, x: ObjectHandle) -> Matrix:
        """omega_X: X -> T(X)"""
        return Matrix.scalar(self.ring, x.rank, self.omega_value())

    def omega_degree(self) -> int:
        return max(self.omega_value().degree(), 0)

    def inverse_data(self) -> Optional["InverseData"]:
        return InverseData(self) if self.has_inverse() else None

    def require_inverse(self) -> "InverseData":
        data = self.inverse_data()
        if data is None:
            raise NoInverseDataError(f"{self.kind}: no quasi-inverse, T is not invertible")
        return data

    # ============================================
    # Objects and morphisms of A
    # ============================================

    def make_object(self, rank: int, degrees=None) -> ObjectHandle:
        if self.graded:
            return ObjectHandle(rank, tuple(degrees) if degrees is not None else (0,) * rank)
        if degrees is not None:
            raise BackendConfigurationError(f"{self.kind} objects carry no degrees")
        return ObjectHandle(rank)

    def zero_object(self) -> ObjectHandle:
        return self.make_object(0)

    def identity(self, x: ObjectHandle) -> Matrix:
        return Matrix.identity(self.ring, x.rank)

    def zero(self, source: ObjectHandle, target: ObjectHandle) -> Matrix:
        return Matrix.zeros(self.ring, target.rank, source.rank)

    def random_object(self, rng: random.Random, max_rank: int, min_rank: int = 0) -> ObjectHandle:
        rank = rng.randrange(min_rank, max_rank + 1)
        degrees = None
        if self.graded:
            degrees = tuple(rng.randrange(-2, 3) for _ in range(rank))
        return ObjectHandle(rank, degrees)

    def random_matrix(
        self,
        rng: random.Random,
        rows: int,
        cols: int,
        degree: int = 1,
        density: float = 0.6
    ) -> Matrix:
        ring = self.ring
        entries = []
        for _ in range(rows * cols):
            if rng.random() < density:
                entries.append(ring.random_element(rng, degree, terms=2))
            else:
                entries.append(ring.zero())
        return Matrix(ring, rows, cols, entries)

    def describe(self) -> str:
        return f"{self.kind} over {self.ring}"


@dataclass(frozen=True)
class FieldScalarBackend(Backend):
    """Vector spaces over a field, T = Id, omega = c * Id"""
    field: Field
    c: Scalar = 1

    kind: ClassVar[str] = "field-scalar"

    def __post_init__(self):
        object.__setattr__(self, "c", self.field.coerce(self.c))

    @property
    def ring(self) -> Ring:
        return Ring(self.field)

    def _twist_matrix(self, m: Matrix) -> Matrix:
        return m

    def _untwist_matrix(self, m: Matrix) -> Matrix:
        return m

    def omega_value(self) -> Polynomial:
        return self.ring.const(self.c)


@dataclass(frozen=True)
class PolyClassicalBackend(Backend):
    """Free modules over k[x...], T = Id, omega = w * Id"""
    ring_: Ring
    w: Polynomial

    kind: ClassVar[str] = "poly-classical"

    def __post_init__(self):
        if self.w.ring != self.ring_:
            raise BackendConfigurationError("w must lie in the backend ring")

    @property
    def ring(self) -> Ring:
        return self.ring_

    def _twist_matrix(self, m: Matrix) -> Matrix:
        return m

    def _untwist_matrix(self, m: Matrix) -> Matrix:
        return m

    def omega_value(self) -> Polynomial:
        return self.w


@dataclass(frozen=True)
class GradedShiftBackend(Backend):
    """Graded free modules; T shifts generator degrees by deg(w), omega = w * Id"""
    ring_: Ring
    w: Polynomial

    kind: ClassVar[str] = "graded-shift"
    graded: ClassVar[bool] = True

    def __post_init__(self):
        if self.ring_.var_degrees is None:
            raise BackendConfigurationError("graded-shift needs variable degrees")
        if self.w.ring != self.ring_:
            raise BackendConfigurationError("w must lie in the backend ring")
        if self.w.is_zero() or not self.w.is_homogeneous():
            raise BackendConfigurationError(f"w = {self.w} is not a nonzero homogeneous polynomial")

    @property
    def ring(self) -> Ring:
        return self.ring_

    @property
    def shift(self) -> int:
        return next(iter(self.w.weighted_degrees()))

    def _twist_matrix(self, m: Matrix) -> Matrix:
        return m

    def _twist_object(self, x: ObjectHandle) -> ObjectHandle:
        return x.shifted(self.shift)

    def _untwist_matrix(self, m: Matrix) -> Matrix:
        return m

    def _untwist_object(self, x: ObjectHandle) -> ObjectHandle:
        return x.shifted(-self.shift)

    def omega_value(self) -> Polynomial:
        return self.w


@dataclass(frozen=True)
class EndoTwistBackend(Backend):
    """
    T applies a ring endomorphism phi entrywise, omega = 0

    phi is stored as (variable, image) pairs. When phi is affine with an
    invertible linear part, T is an automorphism and inverse data exists.
    """
    ring_: Ring
    phi: Tuple[Tuple[str, Polynomial], ...]

    kind: ClassVar[str] = "endo-twist"

    def __post_init__(self):
        object.__setattr__(self, "phi", tuple(sorted(tuple(self.phi))))
        for name, image in self.phi:
            self.ring_.index(name)
            if image.ring != self.ring_:
                raise BackendConfigurationError(f"image of {name} lies outside the ring")
        if len({name for name, _ in self.phi}) != len(self.phi):
            raise BackendConfigurationError("phi lists a variable twice")

    @classmethod
    def from_mapping(cls, ring: Ring, images: Mapping[str, Union[Polynomial, str]]) -> "EndoTwistBackend":
        return cls(ring, tuple((name, ring.coerce(image)) for name, image in images.items()))

    @property
    def ring(self) -> Ring:
        return self.ring_

    @property
    def images(self) -> Dict[str, Polynomial]:
        return dict(self.phi)

    def _twist_matrix(self, m: Matrix) -> Matrix:
        return m.substitute(self.images)

    def omega_value(self) -> Polynomial:
        return self.ring.zero()

    def inverse_images(self) -> Optional[Dict[str, Polynomial]]:
        """Images of the inverse substitution, or None when phi is not an affine automorphism"""
        ring = self.ring
        images = self.images
        gens = [images.get(name, ring.var(name)) for name in ring.variables]
        if any(g.degree() > 1 for g in gens):
            return None
        m = ring.nvars
        linear = []
        offsets = []
        for g in gens:
            row = []
            for j in range(m):
                exponent = tuple(1 if k == j else 0 for k in range(m))
                row.append(g.terms.get(exponent, 0))
            linear.append(row)
            offsets.append(g.terms.get((0,) * m, 0))
        scalar_ring = Ring(ring.field)
        inverse = Matrix.from_scalars(scalar_ring, linear, m).inverse()
        if inverse is None:
            return None
        shifted = [ring.var(name) - ring.const(b) for name, b in zip(ring.variables, offsets)]
        result = {}
        for i, name in enumerate(ring.variables):
            image = ring.zero()
            for j in range(m):
                coefficient = inverse[i, j].constant_value()
                if coefficient:
                    image = image + shifted[j].scale(coefficient)
            result[name] = image
        return result

    def has_inverse(self) -> bool:
        return self.inverse_images() is not None

    def _untwist_matrix(self, m: Matrix) -> Matrix:
        inverse = self.inverse_images()
        if inverse is None:
            raise NoInverseDataError("endo-twist: T is not invertible")
        return m.substitute(inverse)


# ============================================
# Quasi-inverse data
# ============================================

@dataclass(frozen=True)
class InverseData:
    """
    Strict quasi-inverse of T

    eta_X: X -> T T^-1 X and epsilon_X: T^-1 T X -> X are identities in every
    shipped backend; omega^(-1)_X = epsilon_X . T^-1(omega_X) is computed from
    that formula.
    """
    backend: Backend

    def apply_T_inv(self, m: MatrixOrObject) -> MatrixOrObject:
        if isinstance(m, ObjectHandle):
            return self.backend._untwist_object(m)
        self.backend.check_ring(m)
        return self.backend._untwist_matrix(m)

    def eta(self, x: ObjectHandle) -> Matrix:
        return Matrix.identity(self.backend.ring, x.rank)

    def epsilon(self, x: ObjectHandle) -> Matrix:
        return Matrix.identity(self.backend.ring, x.rank)

    def eta_inv(self, x: ObjectHandle) -> Matrix:
        return Matrix.identity(self.backend.ring, x.rank)

    def epsilon_inv(self, x: ObjectHandle) -> Matrix:
        return Matrix.identity(self.backend.ring, x.rank)

    def omega_inv(self, x: ObjectHandle) -> Matrix:
        """omega^(-1)_X: T^-1 X -> X"""
        return self.epsilon(x) @ self.apply_T_inv(self.backend.omega(x))


# ============================================
# Module-level operations
# ============================================

def apply_T(backend: Backend, m: MatrixOrObject) -> MatrixOrObject:
    return backend.apply_T(m)


def omega(backend: Backend, x: ObjectHandle) -> Matrix:
    return backend.omega(x)


def inverse_data(backend: Backend) -> Optional[InverseData]:
    return backend.inverse_data()


def _record(results: Dict[str, dict], name: str, ok: bool, lhs: Matrix, rhs: Matrix, detail: str):
    entry = results.setdefault(name, {"ok": True, "count": 0})
    entry["count"] += 1
    if not ok and entry["ok"]:
        entry.update(ok=False, lhs=lhs, rhs=rhs, detail=detail)


def _summarize(results: Dict[str, dict], prefix: str, seed: int) -> Report:
    report = Report(seed=seed)
    for name, entry in results.items():
        if entry["ok"]:
            report.add(check(f"{prefix}.{name}", True, detail=f"{entry['count']} samples"))
        else:
            report.add(check(
                f"{prefix}.{name}", False,
                detail=f"counterexample {entry['detail']}",
                lhs=entry["lhs"], rhs=entry["rhs"],
            ))
    return report


def check_adjunction_identities(backend: Backend, samples: int, seed: int) -> Report:
    """
    Verify the six identities relating eta, epsilon, omega and omega^(-1)

    Raises:
        NoInverseDataError: backend has no quasi-inverse
    """
    data = backend.inverse_data()
    if data is None:
        raise NoInverseDataError(f"{backend.kind}: no quasi-inverse")
    T, Ti = backend.apply_T, data.apply_T_inv
    w, eta, eps, winv = backend.omega, data.eta, data.epsilon, data.omega_inv
    results: Dict[str, dict] = {}
    for i in range(samples):
        rng = derive_rng(seed, "adjunction", i)
        x = backend.random_object(rng, 3, min_rank=1)
        y = backend.random_object(rng, 3, min_rank=1)
        f = backend.random_matrix(rng, y.rank, x.rank, degree=2)
        tx, tix = T(x), Ti(x)
        where = f"at rank {x.rank}, sample {i}"

        lhs, rhs = T(eps(x)) @ eta(tx), backend.identity(tx)
        _record(results, "eq1_triangle_T", lhs == rhs, lhs, rhs, where)
        lhs, rhs = eps(tix) @ Ti(eta(x)), backend.identity(tix)
        _record(results, "eq2_triangle_T_inv", lhs == rhs, lhs, rhs, where)
        lhs, rhs = T(winv(x)) @ eta(x), w(x)
        _record(results, "eq3_omega_inv_eta", lhs == rhs, lhs, rhs, where)
        lhs, rhs = w(x) @ eps(x), winv(tx)
        _record(results, "eq4_omega_epsilon", lhs == rhs, lhs, rhs, where)
        lhs = eps(tix) @ Ti(w(tix))
        rhs = Ti(eps(x)) @ Ti(Ti(w(x)))
        _record(results, "eq5_epsilon_omega", lhs == rhs, lhs, rhs, where)
        lhs, rhs = w(tix), eta(x) @ winv(x)
        _record(results, "eq6_omega_T_inv", lhs == rhs, lhs, rhs, where)

        where = f"f = {f}"
        lhs, rhs = T(Ti(f)) @ eta(x), eta(y) @ f
        _record(results, "eta_naturality", lhs == rhs, lhs, rhs, where)
        lhs, rhs = f @ eps(x), eps(y) @ Ti(T(f))
        _record(results, "epsilon_naturality", lhs == rhs, lhs, rhs, where)
    logger.info(f"🔁 Adjunction identities checked on {samples} samples ({backend.kind})")
    return _summarize(results, "adjunction", seed)


def check_omega_coherence(backend: Backend, samples: int, seed: int) -> Report:
    """
    Check omega_{T(X)} = T(omega_X) and naturality T(f) omega_X = omega_Y f

    Each variable is probed first as the 1x1 morphism [[v]], then random
    morphisms between random objects.
    """
    ring = backend.ring
    probes = []
    for name in ring.variables:
        x = backend.make_object(1)
        probes.append((x, x, Matrix.from_rows(ring, [[ring.var(name)]])))
    for i in range(samples):
        rng = derive_rng(seed, "coherence", i)
        x = backend.random_object(rng, 3, min_rank=1)
        y = backend.random_object(rng, 3, min_rank=1)
        probes.append((x, y, backend.random_matrix(rng, y.rank, x.rank, degree=2)))

    results: Dict[str, dict] = {}
    for x, y, f in probes:
        lhs, rhs = backend.omega(backend.apply_T(x)), backend.apply_T(backend.omega(x))
        _record(results, "coherence", lhs == rhs, lhs, rhs, f"at rank {x.rank}")
        lhs, rhs = backend.apply_T(f) @ backend.omega(x), backend.omega(y) @ f
        _record(results, "naturality", lhs == rhs, lhs, rhs, f"f = {f}")
    report = _summarize(results, "omega", seed)
    if not report.ok:
        logger.warning(f"⚠️ omega coherence fails for {backend.describe()}: {report.describe_failure()}")
    return report
