"""
Sparse multivariate polynomials over a Field
A polynomial is a map from exponent tuples to nonzero scalars. Printing and
leading terms use graded-lex order (total degree first, then lexicographic in
the declared variable order).
"""
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

from factn.algebra.fields import Field, Scalar
from factn.exceptions import (
    BackendConfigurationError,
    DivisionByZeroError,
    RingMismatchError,
    UnknownVariableError,
)

Exponent = Tuple[int, ...]

VARIABLE_PATTERN = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


def grlex_key(exponent: Exponent) -> Tuple[int, Exponent]:
    return (sum(exponent), exponent)


# ============================================
# Ring descriptor
# ============================================

@dataclass(frozen=True)
class Ring:
    """
    k[x_1, ..., x_m]

    With no variables this is the field k itself; field backends use that.
    var_degrees carries the grading of a graded ring (all 1 when absent).
    """
    field: Field
    variables: Tuple[str, ...] = ()
    var_degrees: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if self.var_degrees is not None:
            object.__setattr__(self, "var_degrees", tuple(self.var_degrees))
        for name in self.variables:
            if not VARIABLE_PATTERN.match(name):
                raise BackendConfigurationError(f"invalid variable name '{name}'")
        if len(set(self.variables)) != len(self.variables):
            raise BackendConfigurationError("variable names must be unique")
        if self.var_degrees is not None:
            if len(self.var_degrees) != len(self.variables):
                raise BackendConfigurationError("one degree per variable is required")
            if any(d <= 0 for d in self.var_degrees):
                raise BackendConfigurationError("variable degrees must be positive")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def is_field(self) -> bool:
        """True for the ring without variables"""
        return not self.variables

    @property
    def weights(self) -> Tuple[int, ...]:
        return self.var_degrees if self.var_degrees is not None else (1,) * self.nvars

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise UnknownVariableError(name) from None

    # ============================================
    # Element constructors
    # ============================================

    def zero(self) -> "Polynomial":
        return Polynomial(self, {}, _trusted=True)

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, value: Scalar) -> "Polynomial":
        c = self.field.coerce(value)
        if not c:
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: c}, _trusted=True)

    def var(self, name: str) -> "Polynomial":
        exponent = [0] * self.nvars
        exponent[self.index(name)] = 1
        return Polynomial(self, {tuple(exponent): self.field.one}, _trusted=True)

    def monomial(self, exponent: Exponent, coefficient: Scalar = 1) -> "Polynomial":
        return Polynomial(self, {tuple(exponent): coefficient})

    def coerce(self, value: Union["Polynomial", Scalar, str]) -> "Polynomial":
        """Accept a polynomial of this ring, a scalar, or polynomial text"""
        if isinstance(value, Polynomial):
            if value.ring != self:
                raise RingMismatchError(f"polynomial over {value.ring} used in {self}")
            return value
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, (int, Fraction)):
            return self.const(value)
        raise TypeError(f"cannot convert {type(value).__name__} to a polynomial")

    def parse(self, text: str) -> "Polynomial":
        from factn.algebra.parser import parse_poly
        return parse_poly(text, self)

    def monomials_up_to(self, bound: int) -> List[Exponent]:
        """All exponents of total degree <= bound, ascending in graded-lex order"""
        result: List[Exponent] = []
        for degree in range(bound + 1):
            layer = []
            for combo in combinations_with_replacement(range(self.nvars), degree):
                exponent = [0] * self.nvars
                for i in combo:
                    exponent[i] += 1
                layer.append(tuple(exponent))
            result.extend(sorted(set(layer)))
            if not self.nvars:
                break
        return result

    def random_element(
        self,
        rng: random.Random,
        degree: int = 1,
        terms: int = 2,
        spread: int = 2
    ) -> "Polynomial":
        """Random polynomial with at most `terms` terms of degree <= degree"""
        pool = self.monomials_up_to(degree)
        picked = {}
        for _ in range(terms):
            picked[pool[rng.randrange(len(pool))]] = self.field.random_element(rng, spread)
        return Polynomial(self, picked)

    def __str__(self) -> str:
        if not self.variables:
            return str(self.field)
        return f"{self.field}[{','.join(self.variables)}]"


# ============================================
# Polynomials
# ============================================

class Polynomial:
    """Immutable sparse polynomial"""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(
        self,
        ring: Ring,
        terms: Optional[Mapping[Exponent, Scalar]] = None,
        *,
        _trusted: bool = False
    ):
        self.ring = ring
        self._hash = None
        if _trusted:
            self._terms = terms
            return
        field = ring.field
        clean: Dict[Exponent, Scalar] = {}
        for exponent, coefficient in (terms or {}).items():
            exponent = tuple(exponent)
            if len(exponent) != ring.nvars or any(e < 0 for e in exponent):
                raise ValueError(f"bad exponent {exponent} for {ring}")
            c = field.coerce(coefficient)
            if c:
                clean[exponent] = c
        self._terms = clean

    # ============================================
    # Inspection
    # ============================================

    @property
    def terms(self) -> Mapping[Exponent, Scalar]:
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (
            len(self._terms) == 1 and not any(next(iter(self._terms)))
        )

    def constant_value(self) -> Scalar:
        """Value of a constant polynomial"""
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return next(iter(self._terms.values()), self.ring.field.zero)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial"""
        return max((sum(e) for e in self._terms), default=-1)

    def weighted_degrees(self) -> set:
        weights = self.ring.weights
        return {sum(w * e for w, e in zip(weights, exponent)) for exponent in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.weighted_degrees()) <= 1

    def leading_exponent(self) -> Exponent:
        return max(self._terms, key=grlex_key)

    def sorted_terms(self) -> List[Tuple[Exponent, Scalar]]:
        """Terms in descending graded-lex order"""
        return sorted(self._terms.items(), key=lambda item: grlex_key(item[0]), reverse=True)

    # ============================================
    # Arithmetic
    # ============================================

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other._terms:
            return self
        if not self._terms:
            return other
        field = self.ring.field
        result = dict(self._terms)
        for exponent, c in other._terms.items():
            total = field.add(result.get(exponent, field.zero), c)
            if total:
                result[exponent] = total
            else:
                result.pop(exponent, None)
        return Polynomial(self.ring, result, _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        field = self.ring.field
        return Polynomial(
            self.ring, {e: field.neg(c) for e, c in self._terms.items()}, _trusted=True
        )

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self._terms or not other._terms:
            return self.ring.zero()
        field = self.ring.field
        result: Dict[Exponent, Scalar] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exponent = tuple(a + b for a, b in zip(e1, e2))
                result[exponent] = field.add(result.get(exponent, field.zero), field.mul(c1, c2))
        return Polynomial(self.ring, {e: c for e, c in result.items() if c}, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise ValueError("negative powers are not polynomials")
        result = self.ring.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def scale(self, scalar: Scalar) -> "Polynomial":
        field = self.ring.field
        c = field.coerce(scalar)
        if not c:
            return self.ring.zero()
        return Polynomial(
            self.ring, {e: field.mul(v, c) for e, v in self._terms.items()}, _trusted=True
        )

    def exact_divide(self, divisor: "Polynomial") -> Optional["Polynomial"]:
        """
        Quotient q with q * divisor == self, or None when divisor does not divide self

        If divisor | self, every leading term of the running remainder is
        divisible by the leading term of divisor, so plain leading-term
        reduction finds q.
        """
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise DivisionByZeroError()
        field = self.ring.field
        lead = divisor.leading_exponent()
        lead_inv = field.inv(divisor._terms[lead])
        quotient: Dict[Exponent, Scalar] = {}
        remainder = self
        while remainder._terms:
            exponent = remainder.leading_exponent()
            shift = tuple(a - b for a, b in zip(exponent, lead))
            if any(s < 0 for s in shift):
                return None
            c = field.mul(remainder._terms[exponent], lead_inv)
            quotient[shift] = field.add(quotient.get(shift, field.zero), c)
            remainder = remainder - divisor * Polynomial(self.ring, {shift: c}, _trusted=True)
        return Polynomial(self.ring, {e: c for e, c in quotient.items() if c}, _trusted=True)

    def substitute(self, images: Mapping[str, "Polynomial"]) -> "Polynomial":
        """
        Apply the ring endomorphism sending each variable to its image

        Variables missing from images are fixed.
        """
        ring = self.ring
        gens = [images.get(name, ring.var(name)) for name in ring.variables]
        powers: Dict[Tuple[int, int], Polynomial] = {}
        result = ring.zero()
        for exponent, c in self._terms.items():
            term = ring.const(c)
            for i, e in enumerate(exponent):
                if e:
                    key = (i, e)
                    if key not in powers:
                        powers[key] = gens[i] ** e
                    term = term * powers[key]
            result = result + term
        return result

    # ============================================
    # Comparison and printing
    # ============================================

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == self.ring.const(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def _monomial_text(self, exponent: Exponent) -> str:
        parts = []
        for name, e in zip(self.ring.variables, exponent):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        field = self.ring.field
        pieces: List[str] = []
        for exponent, c in self.sorted_terms():
            monomial = self._monomial_text(exponent)
            if not monomial:
                text = field.format(c)
            elif c == field.one:
                text = monomial
            elif field.kind == "Q" and c == -1:
                text = f"-{monomial}"
            else:
                text = f"{field.format(c)}*{monomial}"
            if not pieces:
                pieces.append(text)
            elif text.startswith("-"):
                pieces.append(f" - {text[1:]}")
            else:
                pieces.append(f" + {text}")
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r} over {self.ring})"


def total_degree(polys: Iterable[Polynomial]) -> int:
    """Largest total degree among polys (0 when all vanish)"""
    return max([p.degree() for p in polys] + [0])
