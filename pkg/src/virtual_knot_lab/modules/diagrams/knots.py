"""
Knot catalog: named knots given by a braid word, a diagram file or both.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Dict, List, Optional, Union

from pydantic import BaseModel, Field, ValidationError, model_validator

from virtual_knot_lab.config.settings import get_settings
from virtual_knot_lab.core.exceptions import ConfigurationError, ParseError
from virtual_knot_lab.core.logger import setup_logger
from virtual_knot_lab.modules.braids.braidrep import VirtualBraidWord, parse_braid
from virtual_knot_lab.modules.diagrams.diagmod import (
    BRAID,
    DIAGRAM,
    CrossingDiagram,
    PresentationMatrix,
    load_diagram,
    presentation_from_braid,
    presentation_from_diagram,
)
from virtual_knot_lab.modules.switches.switchlab import Switch

logger = setup_logger(__name__)

AUTO = "auto"


class KnotCatalogEntry(BaseModel):
    name: str
    braid: Optional[str] = None
    strands: Optional[int] = None
    diagram: Optional[str] = None
    notes: str = ""
    # printed Delta0 values keyed by switch name
    printed: Dict[str, str] = Field(default_factory=dict)
    # printed codimension-1 minors (value -> multiplicity) keyed by switch name
    printed_minors: Dict[str, Dict[str, int]] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _has_source(self) -> "KnotCatalogEntry":
        if self.braid is None and self.diagram is None:
            raise ValueError(f"knot {self.name!r} needs a braid word or a diagram file")
        if self.braid is not None and self.strands is None:
            raise ValueError(f"knot {self.name!r} gives a braid word without strands")
        return self


class KnotCatalog(BaseModel):
    knots: List[KnotCatalogEntry]
    # printed Delta0 values of knots with no encoded diagram, keyed by knot then switch
    printed_only: Dict[str, Dict[str, str]] = Field(default_factory=dict)

    def names(self) -> List[str]:
        return [k.name for k in self.knots]

    def get(self, name: str) -> Optional[KnotCatalogEntry]:
        return next((k for k in self.knots if k.name == name), None)


class KnotSource:
    """A resolved knot: its braid word and/or its crossing diagram."""

    def __init__(self, name: str, word: Optional[VirtualBraidWord] = None,
                 diagram: Optional[CrossingDiagram] = None, entry: Optional[KnotCatalogEntry] = None):
        self.name = name
        self.word = word
        self.diagram = diagram
        self.entry = entry

    def paths(self) -> List[str]:
        return ([BRAID] if self.word is not None else []) + ([DIAGRAM] if self.diagram is not None else [])

    def presentation(self, S: Switch, path: str = AUTO) -> PresentationMatrix:
        """Braid path when available under ``auto``, else the diagram path."""
        if path == AUTO:
            path = BRAID if self.word is not None else DIAGRAM
        if path == BRAID:
            if self.word is None:
                raise ParseError(f"knot {self.name!r} has no braid word")
            P = presentation_from_braid(self.word, S)
        elif path == DIAGRAM:
            if self.diagram is None:
                raise ParseError(f"knot {self.name!r} has no diagram")
            P = presentation_from_diagram(self.diagram, S)
        else:
            raise ParseError(f"unknown path {path!r}; choose auto, braid or diagram")
        return PresentationMatrix(P.matrix, P.ring, P.provenance, self.name, P.unit_vars)


def load_catalog(path: Optional[Union[str, Path]] = None) -> KnotCatalog:
    path = Path(path) if path else get_settings().catalog_path()
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigurationError(f"cannot read knot catalog {path}: {e}") from e
    try:
        catalog = KnotCatalog.model_validate(data)
    except ValidationError as e:
        raise ConfigurationError(f"invalid knot catalog {path}: {e}") from e
    logger.debug("loaded %d knots from %s", len(catalog.knots), path)
    return catalog


def _fixture(name: str, fixtures: Path) -> Path:
    candidate = Path(name)
    if candidate.is_absolute() or candidate.exists():
        return candidate
    return fixtures / name


def resolve_entry(entry: KnotCatalogEntry, fixtures: Optional[Path] = None) -> KnotSource:
    fixtures = fixtures or get_settings().fixtures_path()
    word = parse_braid(entry.braid, entry.strands) if entry.braid is not None else None
    diagram = load_diagram(_fixture(entry.diagram, fixtures)) if entry.diagram else None
    return KnotSource(entry.name, word, diagram, entry)


def resolve_knot(knot: str, fixtures: Optional[Path] = None,
                 catalog: Optional[KnotCatalog] = None) -> KnotSource:
    """A catalog name or the path of a diagram file."""
    catalog = catalog or load_catalog()
    entry = catalog.get(knot)
    if entry is not None:
        return resolve_entry(entry, fixtures)
    path = Path(knot)
    if not path.exists() and fixtures is not None and (fixtures / knot).exists():
        path = fixtures / knot
    if path.exists():
        return KnotSource(path.stem, diagram=load_diagram(path))
    raise ParseError(f"unknown knot {knot!r}: not in the catalog ({', '.join(catalog.names())}) and no such file")


def validate_catalog(catalog: KnotCatalog, fixtures: Optional[Path] = None) -> List[KnotSource]:
    """Loads every entry; the first broken one raises."""
    return [resolve_entry(entry, fixtures) for entry in catalog.knots]
