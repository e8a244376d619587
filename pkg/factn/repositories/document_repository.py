"""
Repository for JSON documents
Turns document files into backends, factorizations, morphisms and homotopies
and back. Saved documents are canonical: sorted keys, two-space indentation,
canonical polynomial printing and a trailing newline.
"""
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Tuple, Union

from pydantic import ValidationError

from factn.algebra import Field, Matrix, Ring
from factn.ambient import (
    Backend,
    EndoTwistBackend,
    FieldScalarBackend,
    GradedShiftBackend,
    PolyClassicalBackend,
)
from factn.exceptions import AlgebraError, ReferenceError_, SchemaError
from factn.factcat import FactMorphism, NFactorization
from factn.homotopy import Homotopy, witness_shape
from factn.schemas.document import (
    BackendSpec,
    DocumentSpec,
    FactorizationSpec,
    FieldSpec,
    HomotopySpec,
    MatrixSpec,
    MorphismSpec,
    OptionsSpec,
)

logger = logging.getLogger(__name__)


@dataclass
class Document:
    """A loaded document: every payload already validated"""
    backend: Backend
    factorizations: Dict[str, NFactorization] = field(default_factory=dict)
    morphisms: Dict[str, FactMorphism] = field(default_factory=dict)
    homotopies: Dict[str, Homotopy] = field(default_factory=dict)
    options: OptionsSpec = field(default_factory=OptionsSpec)


def _reject_duplicates(pairs: List[Tuple[str, Any]]) -> Dict[str, Any]:
    result = {}
    for key, value in pairs:
        if key in result:
            raise ReferenceError_(key, "duplicate key")
        result[key] = value
    return result


def _pointer(loc) -> str:
    return "".join(f"/{part}" for part in loc)


class DocumentRepository:
    """
    Reads and writes documents
    Spec models (pydantic) sit between the JSON text and the domain objects.
    """

    # ============================================
    # Text and specs
    # ============================================

    def parse_text(self, text: str) -> DocumentSpec:
        """
        Raises:
            SchemaError: malformed JSON or schema violation (with JSON pointer)
            ReferenceError_: duplicate or unresolved name
        """
        try:
            raw = json.loads(text, object_pairs_hook=_reject_duplicates)
        except json.JSONDecodeError as e:
            raise SchemaError(f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}")
        try:
            return DocumentSpec.model_validate(raw)
        except ValidationError as e:
            first = e.errors()[0]
            raise SchemaError(first["msg"], _pointer(first["loc"])) from e

    def canonical_text(self, spec: DocumentSpec) -> str:
        payload = spec.model_dump(by_alias=True, exclude_none=True, exclude_defaults=True, mode="json")
        return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    # ============================================
    # Spec -> domain
    # ============================================

    def build_backend(self, spec: BackendSpec) -> Backend:
        field_ = Field(spec.field.kind, spec.field.p)
        try:
            if spec.kind == "field-scalar":
                ring = Ring(field_)
                c = ring.parse(spec.c)
                if not c.is_constant():
                    raise SchemaError(f"c = {spec.c} is not a scalar", "/backend/c")
                return FieldScalarBackend(field_, c.constant_value())
            if spec.kind == "poly-classical":
                ring = Ring(field_, tuple(spec.vars))
                return PolyClassicalBackend(ring, ring.parse(spec.w))
            if spec.kind == "graded-shift":
                ring = Ring(field_, tuple(spec.vars), tuple(spec.var_degrees))
                return GradedShiftBackend(ring, ring.parse(spec.w))
            ring = Ring(field_, tuple(spec.vars))
            return EndoTwistBackend.from_mapping(ring, spec.phi)
        except AlgebraError as e:
            raise SchemaError(str(e), "/backend") from e

    def _matrix(self, ring: Ring, rows: MatrixSpec, shape: Tuple[int, int], pointer: str) -> Matrix:
        if len(rows) != shape[0] or any(len(r) != shape[1] for r in rows):
            got = f"{len(rows)}x{len(rows[0]) if rows else 0}"
            raise SchemaError(f"matrix is {got}, expected {shape[0]}x{shape[1]}", pointer)
        try:
            return Matrix.from_rows(ring, [[str(v) for v in r] for r in rows], shape[1])
        except AlgebraError as e:
            raise SchemaError(str(e), pointer) from e

    def build_factorization(self, backend: Backend, spec: FactorizationSpec, pointer: str) -> NFactorization:
        if spec.degrees is not None and not backend.graded:
            raise SchemaError(f"{backend.kind} objects carry no degrees", f"{pointer}/degrees")
        objects = [
            backend.make_object(r, spec.degrees[j] if spec.degrees is not None else None)
            for j, r in enumerate(spec.ranks)
        ]
        last = backend.apply_T(objects[0])
        diffs = []
        for j, rows in enumerate(spec.d):
            target = last if j == spec.n - 1 else objects[j + 1]
            diffs.append(self._matrix(backend.ring, rows, (target.rank, objects[j].rank), f"{pointer}/d/{j}"))
        return NFactorization(backend, objects, diffs)

    def build_morphism(
        self,
        source: NFactorization,
        target: NFactorization,
        spec: MorphismSpec,
        pointer: str
    ) -> FactMorphism:
        if len(spec.comps) != source.n:
            raise SchemaError(f"{len(spec.comps)} components for n={source.n}", f"{pointer}/comps")
        comps = [
            self._matrix(source.backend.ring, rows, (target.objects[j].rank, source.objects[j].rank),
                         f"{pointer}/comps/{j}")
            for j, rows in enumerate(spec.comps)
        ]
        return FactMorphism(source, target, comps)

    def build_homotopy(self, f: FactMorphism, g: FactMorphism, spec: HomotopySpec, pointer: str) -> Homotopy:
        """Shapes are checked here; the equations are checked by verify_homotopy"""
        if f.source != g.source or f.target != g.target:
            raise SchemaError("f and g are not parallel", pointer)
        if len(spec.s) != f.n:
            raise SchemaError(f"{len(spec.s)} diagonal maps for n={f.n}", f"{pointer}/s")
        diag = [
            self._matrix(f.backend.ring, rows, witness_shape(f, j), f"{pointer}/s/{j}")
            for j, rows in enumerate(spec.s)
        ]
        return Homotopy(f, g, diag)

    def build(self, spec: DocumentSpec) -> Document:
        """
        Raises:
            SchemaError: shape or parse problem (with JSON pointer)
            FactorizationError / MorphismError: payload fails validation
        """
        backend = self.build_backend(spec.backend)
        doc = Document(backend, options=spec.options or OptionsSpec())
        for name, f_spec in spec.factorizations.items():
            doc.factorizations[name] = self.build_factorization(backend, f_spec, f"/factorizations/{name}")
        for name, m_spec in spec.morphisms.items():
            doc.morphisms[name] = self.build_morphism(
                doc.factorizations[m_spec.source], doc.factorizations[m_spec.target],
                m_spec, f"/morphisms/{name}",
            )
        for name, h_spec in spec.homotopies.items():
            doc.homotopies[name] = self.build_homotopy(
                doc.morphisms[h_spec.f], doc.morphisms[h_spec.g], h_spec, f"/homotopies/{name}",
            )
        logger.debug(
            f"📄 Built document: {len(doc.factorizations)} factorizations, "
            f"{len(doc.morphisms)} morphisms, {len(doc.homotopies)} homotopies"
        )
        return doc

    # ============================================
    # Domain -> spec
    # ============================================

    def backend_spec(self, backend: Backend) -> BackendSpec:
        ring = backend.ring
        field_spec = FieldSpec(kind=ring.field.kind, p=ring.field.p)
        if isinstance(backend, FieldScalarBackend):
            return BackendSpec(kind=backend.kind, field=field_spec, c=ring.field.format(backend.c))
        if isinstance(backend, EndoTwistBackend):
            return BackendSpec(kind=backend.kind, field=field_spec, vars=list(ring.variables),
                               phi={name: str(image) for name, image in backend.phi})
        degrees = list(ring.var_degrees) if backend.graded else None
        return BackendSpec(kind=backend.kind, field=field_spec, vars=list(ring.variables),
                           var_degrees=degrees, w=str(backend.w))

    def factorization_spec(self, x: NFactorization) -> FactorizationSpec:
        degrees = [list(o.degrees) for o in x.objects] if x.backend.graded else None
        return FactorizationSpec(
            n=x.n, ranks=list(x.ranks), degrees=degrees,
            d=[d.to_strings() for d in x.diffs],
        )

    def morphism_spec(self, f: FactMorphism, source: str, target: str) -> MorphismSpec:
        return MorphismSpec(source=source, target=target, comps=[c.to_strings() for c in f.comps])

    def to_spec(self, doc: Document) -> DocumentSpec:
        # same object first, so equal factorizations keep their own names
        by_id = {id(x): name for name, x in doc.factorizations.items()}
        by_value = {x: name for name, x in doc.factorizations.items()}
        morphism_ids = {id(m): name for name, m in doc.morphisms.items()}
        morphism_values = {m: name for name, m in doc.morphisms.items()}

        def lookup(x: NFactorization) -> str:
            name = by_id.get(id(x)) or by_value.get(x)
            if name is None:
                raise ReferenceError_(x.describe(), "morphism ends at an unnamed factorization")
            return name

        def morphism_name(m: FactMorphism):
            return morphism_ids.get(id(m)) or morphism_values.get(m)

        morphisms = {
            name: self.morphism_spec(m, lookup(m.source), lookup(m.target))
            for name, m in doc.morphisms.items()
        }
        homotopies = {}
        for name, h in doc.homotopies.items():
            f_name, g_name = morphism_name(h.f), morphism_name(h.g)
            if f_name is None or g_name is None:
                raise ReferenceError_(name, "homotopy between unnamed morphisms")
            homotopies[name] = HomotopySpec(f=f_name, g=g_name, s=[s.to_strings() for s in h.diag])
        options = doc.options if doc.options.model_dump(exclude_none=True) else None
        return DocumentSpec(
            backend=self.backend_spec(doc.backend),
            factorizations={name: self.factorization_spec(x) for name, x in doc.factorizations.items()},
            morphisms=morphisms,
            homotopies=homotopies,
            options=options,
        )

    # ============================================
    # Files
    # ============================================

    def load(self, path: Union[str, Path]) -> Document:
        """
        Read, validate and build a document

        Raises:
            OSError: unreadable file
            SchemaError / ReferenceError_: document problems
            FactorizationError / MorphismError: payload fails validation
        """
        text = Path(path).read_text(encoding="utf-8")
        doc = self.build(self.parse_text(text))
        logger.info(f"📂 Loaded {path}")
        return doc

    def save(self, doc: Document, path: Union[str, Path]) -> None:
        Path(path).write_text(self.canonical_text(self.to_spec(doc)), encoding="utf-8")
        logger.info(f"💾 Saved {path}")


def load_document(path: Union[str, Path]) -> Document:
    return DocumentRepository().load(path)


def save_document(doc: Document, path: Union[str, Path]) -> None:
    DocumentRepository().save(doc, path)

