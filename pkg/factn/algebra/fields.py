"""
Scalar fields
The rationals (Fraction, lowest terms) and prime fields F_p (ints in [0, p))
Scalars are plain Python values; the Field object knows how to combine them.
"""
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from factn.exceptions import BackendConfigurationError, DivisionByZeroError

Scalar = Union[int, Fraction]

# Deterministic Miller-Rabin witnesses, exact below 3.3 * 10**24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)

P_LIMIT = 2 ** 61


def is_prime(p: int) -> bool:
    """Deterministic primality test for p < 2**61"""
    if p < 2:
        return False
    for q in _MR_BASES:
        if p % q == 0:
            return p == q
    d, r = p - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(r - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Field:
    """
    Base field k

    kind is "Q" or "Fp"; p is set only for prime fields.
    """
    kind: str = "Q"
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind == "Q":
            if self.p is not None:
                raise BackendConfigurationError("the rational field takes no modulus")
        elif self.kind == "Fp":
            if self.p is None or not is_prime(self.p) or self.p >= P_LIMIT:
                raise BackendConfigurationError(
                    f"Fp needs a prime p < 2^61, got {self.p}"
                )
        else:
            raise BackendConfigurationError(f"unknown field kind '{self.kind}'")

    @classmethod
    def rationals(cls) -> "Field":
        return cls("Q")

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls("Fp", p)

    @property
    def is_prime_field(self) -> bool:
        return self.kind == "Fp"

    @property
    def characteristic(self) -> int:
        return self.p if self.kind == "Fp" else 0

    @property
    def zero(self) -> Scalar:
        return 0 if self.kind == "Fp" else Fraction(0)

    @property
    def one(self) -> Scalar:
        return 1 if self.kind == "Fp" else Fraction(1)

    # ============================================
    # Arithmetic
    # ============================================

    def coerce(self, value: Scalar) -> Scalar:
        """Canonical representative of an int or Fraction"""
        if self.kind == "Fp":
            if isinstance(value, Fraction):
                if value.denominator % self.p == 0:
                    raise DivisionByZeroError(
                        f"denominator {value.denominator} is divisible by {self.p}"
                    )
                return value.numerator * pow(value.denominator, -1, self.p) % self.p
            return int(value) % self.p
        return Fraction(value)

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        if self.kind == "Fp":
            return (a + b) % self.p
        return a + b

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        if self.kind == "Fp":
            return (a - b) % self.p
        return a - b

    def neg(self, a: Scalar) -> Scalar:
        if self.kind == "Fp":
            return -a % self.p
        return -a

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        if self.kind == "Fp":
            return a * b % self.p
        return a * b

    def inv(self, a: Scalar) -> Scalar:
        if not a:
            raise DivisionByZeroError()
        if self.kind == "Fp":
            return pow(a, -1, self.p)
        return 1 / a

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))

    # ============================================
    # Text and sampling
    # ============================================

    def format(self, a: Scalar) -> str:
        """Canonical text: '3', '-1/2' over Q; representative in [0, p) over Fp"""
        if self.kind == "Fp":
            return str(a)
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def random_element(self, rng: random.Random, spread: int = 2) -> Scalar:
        """Small random scalar"""
        if self.kind == "Fp":
            return rng.randrange(self.p)
        return Fraction(rng.randrange(-spread, spread + 1))

    def random_unit(self, rng: random.Random, spread: int = 2) -> Scalar:
        """Small random nonzero scalar"""
        while True:
            value = self.random_element(rng, spread)
            if value:
                return value

    def elements(self):
        """All elements of a prime field, in order"""
        if self.kind != "Fp":
            raise ValueError("only finite fields can be enumerated")
        return range(self.p)

    def __str__(self) -> str:
        return "Q" if self.kind == "Q" else f"F{self.p}"
