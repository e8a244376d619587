"""
Command registry
Each command module owns a CommandRouter; handlers are registered with the
command decorator together with their extra arguments and the library
operations they wrap.
"""
import argparse
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

from pydantic import ValidationError

from factn.ambient import Backend
from factn.config import Settings
from factn.exceptions import ReferenceError_, SchemaError, UsageError
from factn.factcat import FactMorphism, NFactorization
from factn.homotopy import Homotopy
from factn.repositories import Document, DocumentRepository
from factn.schemas.document import BackendSpec, DocumentSpec
from factn.schemas.report import Report

logger = logging.getLogger(__name__)

Handler = Callable[["CommandContext"], Report]
ArgumentSetup = Callable[[argparse.ArgumentParser], None]


@dataclass
class Command:
    name: str
    help: str
    handler: Handler
    operations: Tuple[str, ...]
    arguments: Optional[ArgumentSetup] = None
    randomized: bool = False


class CommandRouter:
    """Collects the commands of one module"""

    def __init__(self, tag: str):
        self.tag = tag
        self.commands: List[Command] = []

    def command(
        self,
        name: str,
        help: str,
        operations: Tuple[str, ...],
        arguments: Optional[ArgumentSetup] = None,
        randomized: bool = False
    ):
        def decorator(func: Handler) -> Handler:
            self.commands.append(Command(name, help, func, tuple(operations), arguments, randomized))
            return func
        return decorator


# ============================================
# Context passed to handlers
# ============================================

@dataclass
class CommandContext:
    """Parsed arguments plus lazy access to the input document"""
    args: argparse.Namespace
    settings: Settings
    repo: DocumentRepository = field(default_factory=DocumentRepository)
    inputs: Dict[str, object] = field(default_factory=dict)
    _document: Optional[Document] = None

    def document(self) -> Document:
        """
        Raises:
            UsageError: no input document given
        """
        if self._document is None:
            if not self.args.input:
                raise UsageError(f"'{self.args.command}' needs an input document")
            text = Path(self.args.input).read_text(encoding="utf-8")
            spec = self.repo.parse_text(text)
            self.inputs["document"] = self.repo.canonical_text(spec)
            self._document = self.repo.build(spec)
            logger.info(f"📂 Loaded {self.args.input}")
        return self._document

    def _named(self, flag: str, section: str):
        """The entry named by --flag, or the only entry of the section"""
        name = getattr(self.args, flag, None)
        table = getattr(self.document(), section)
        if not name and len(table) == 1:
            return next(iter(table.values()))
        if not name:
            raise UsageError(f"'{self.args.command}' needs --{flag.replace('_', '-')}")
        if name not in table:
            raise ReferenceError_(name, f"no entry in {section}")
        return table[name]

    def factorization(self, flag: str = "x") -> NFactorization:
        return self._named(flag, "factorizations")

    def morphism(self, flag: str = "f") -> FactMorphism:
        return self._named(flag, "morphisms")

    def homotopy(self, flag: str = "h") -> Homotopy:
        return self._named(flag, "homotopies")

    def backend(self) -> Backend:
        """
        --backend names a JSON file holding either a bare backend object
        or a document; without it the input document's backend is used
        """
        path = getattr(self.args, "backend", None)
        if not path:
            return self.document().backend
        text = Path(path).read_text(encoding="utf-8")
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as e:
            raise SchemaError(f"invalid JSON in backend file: {e.msg}")
        if isinstance(raw, dict) and "kind" in raw:
            try:
                spec = BackendSpec.model_validate(raw)
            except ValidationError as e:
                first = e.errors()[0]
                raise SchemaError(first["msg"], "".join(f"/{part}" for part in first["loc"])) from e
        else:
            spec = self.repo.parse_text(text).backend
        self.inputs["backend"] = spec.model_dump(mode="json", exclude_none=True)
        return self.repo.build_backend(spec)

    def bound(self) -> Optional[int]:
        if self.args.bound is not None:
            return self.args.bound
        if self.args.input:
            return self.document().options.bound
        return None

    def seed(self) -> int:
        """
        Raises:
            UsageError: randomized command without --seed
        """
        if self.args.seed is not None:
            return self.args.seed
        if self.args.input and self.document().options.seed is not None:
            return self.document().options.seed
        raise UsageError(f"'{self.args.command}' is randomized and needs --seed")

    def samples(self) -> int:
        return self.args.samples if self.args.samples is not None else self.settings.DEFAULT_SAMPLES

    def n(self) -> int:
        if getattr(self.args, "n", None) is None:
            raise UsageError(f"'{self.args.command}' needs --n")
        return self.args.n

    def factorization_artifact(self, x: NFactorization) -> dict:
        return self.repo.factorization_spec(x).model_dump(by_alias=True, exclude_none=True, mode="json")

    def morphism_artifact(self, f: FactMorphism) -> dict:
        return {"comps": [c.to_strings() for c in f.comps]}

    def document_artifact(self, doc: Document) -> dict:
        spec: DocumentSpec = self.repo.to_spec(doc)
        return json.loads(self.repo.canonical_text(spec))


def add_backend_arguments(parser: argparse.ArgumentParser, with_n: bool = True) -> None:
    parser.add_argument("--backend", help="Backend or document JSON file")
    if with_n:
        parser.add_argument("--n", type=int, help="Number of components")
