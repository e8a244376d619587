"""
Pydantic schemas for input documents
A document names a backend, factorizations, morphisms and homotopies.
Matrices are row-major arrays of polynomial strings; their shapes are
checked against the declared ranks when the document is built.
"""
from typing import Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from factn.exceptions import ReferenceError_

MatrixSpec = List[List[Union[str, int]]]


# ============================================
# Backend Schemas
# ============================================

class FieldSpec(BaseModel):
    """Base field: {"kind": "Q"} or {"kind": "Fp", "p": 5}"""
    model_config = ConfigDict(extra="forbid")

    kind: Literal["Q", "Fp"]
    p: Optional[int] = Field(None, description="Prime modulus, Fp only")

    @model_validator(mode="after")
    def check_modulus(self):
        if self.kind == "Fp" and self.p is None:
            raise ValueError("Fp needs a prime p")
        if self.kind == "Q" and self.p is not None:
            raise ValueError("Q takes no modulus")
        return self


class BackendSpec(BaseModel):
    """(A, T, omega) triple"""
    model_config = ConfigDict(
        extra="forbid",
        json_schema_extra={
            "example": {
                "kind": "poly-classical",
                "field": {"kind": "Q"},
                "vars": ["x", "y"],
                "w": "x*y",
            }
        },
    )

    kind: Literal["field-scalar", "poly-classical", "graded-shift", "endo-twist"]
    field: FieldSpec
    vars: List[str] = []
    var_degrees: Optional[List[int]] = None
    w: Optional[str] = None
    c: Optional[str] = None
    phi: Optional[Dict[str, str]] = None

    @model_validator(mode="after")
    def check_kind_fields(self):
        """Each kind takes exactly its own parameters"""
        allowed = {
            "field-scalar": {"c"},
            "poly-classical": {"vars", "w"},
            "graded-shift": {"vars", "var_degrees", "w"},
            "endo-twist": {"vars", "phi"},
        }[self.kind]
        required = allowed - {"vars"}
        for name in ("vars", "var_degrees", "w", "c", "phi"):
            value = getattr(self, name)
            present = bool(value) if name == "vars" else value is not None
            if present and name not in allowed:
                raise ValueError(f"'{name}' is not a parameter of {self.kind}")
            if not present and name in required:
                raise ValueError(f"{self.kind} needs '{name}'")
        return self


# ============================================
# Object Schemas
# ============================================

class FactorizationSpec(BaseModel):
    """{"n": 2, "ranks": [1, 1], "d": [[["x"]], [["y"]]]}"""
    model_config = ConfigDict(extra="forbid")

    n: int = Field(..., ge=2)
    ranks: List[int]
    degrees: Optional[List[List[int]]] = Field(None, description="Generator degrees, graded backends only")
    d: List[MatrixSpec]

    @field_validator("ranks")
    @classmethod
    def validate_ranks(cls, v):
        if any(r < 0 for r in v):
            raise ValueError("ranks must be non-negative")
        return v

    @model_validator(mode="after")
    def check_lengths(self):
        if len(self.ranks) != self.n:
            raise ValueError(f"{len(self.ranks)} ranks for n={self.n}")
        if len(self.d) != self.n:
            raise ValueError(f"{len(self.d)} differentials for n={self.n}")
        if self.degrees is not None:
            if len(self.degrees) != self.n:
                raise ValueError(f"{len(self.degrees)} degree lists for n={self.n}")
            for j, (r, degs) in enumerate(zip(self.ranks, self.degrees)):
                if len(degs) != r:
                    raise ValueError(f"component {j} has rank {r} but {len(degs)} degrees")
        return self


class MorphismSpec(BaseModel):
    """{"from": "X", "to": "Y", "comps": [...]}"""
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    source: str = Field(..., alias="from")
    target: str = Field(..., alias="to")
    comps: List[MatrixSpec]


class HomotopySpec(BaseModel):
    """{"f": "name", "g": "name", "s": [...]}"""
    model_config = ConfigDict(extra="forbid")

    f: str
    g: str
    s: List[MatrixSpec]


class OptionsSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    bound: Optional[int] = Field(None, ge=0, description="Degree bound for witness searches")
    seed: Optional[int] = None


# ============================================
# Document
# ============================================

class DocumentSpec(BaseModel):
    """Top-level document"""
    model_config = ConfigDict(extra="forbid")

    backend: BackendSpec
    factorizations: Dict[str, FactorizationSpec] = {}
    morphisms: Dict[str, MorphismSpec] = {}
    homotopies: Dict[str, HomotopySpec] = {}
    options: Optional[OptionsSpec] = None

    @model_validator(mode="after")
    def check_names(self):
        """
        Names are unique across sections and every reference resolves

        Raises:
            ReferenceError_: duplicate or unresolved name
        """
        seen = set()
        for section in (self.factorizations, self.morphisms, self.homotopies):
            for name in section:
                if name in seen:
                    raise ReferenceError_(name, "name used twice")
                seen.add(name)
        for name, m in self.morphisms.items():
            for ref in (m.source, m.target):
                if ref not in self.factorizations:
                    raise ReferenceError_(ref, f"morphism '{name}' names an unknown factorization")
            n_source = self.factorizations[m.source].n
            if self.factorizations[m.target].n != n_source:
                raise ReferenceError_(name, "source and target have different n")
        for name, h in self.homotopies.items():
            for ref in (h.f, h.g):
                if ref not in self.morphisms:
                    raise ReferenceError_(ref, f"homotopy '{name}' names an unknown morphism")
        return self
