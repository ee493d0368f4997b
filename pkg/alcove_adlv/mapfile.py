"""
MapFile JSON documents, transcribed golden CSVs and CSV export

A MapFile is the on-disk form of a DimensionMap: UTF-8 JSON with sorted keys
and entries ordered by (length, lambda, word); ``dim`` null encodes Empty.
Goldens use the columns group, lambda1, lambda2, word, length, dim.
"""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import pandas as pd

from .adlv import DimensionMap
from .affine_weyl import AffineWeylGroup, Alcove
from .errors import AdlvError, MapFileError
from .root_data import RootSystemKind

logger = logging.getLogger(__name__)

GOLDEN_COLUMNS = ["group", "lambda1", "lambda2", "word", "length", "dim"]
DATA_DIR = Path(__file__).parent / "data"


@dataclass(frozen=True)
class MapEntry:
    lam: Tuple[int, ...]
    word: str
    length: int
    dim: Optional[int]


@dataclass
class MapFile:
    group: RootSystemKind
    radius: int
    window: int
    stability: bool
    entries: List[MapEntry]
    metadata: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_dimension_map(cls, dimension_map: DimensionMap) -> "MapFile":
        group = AffineWeylGroup.for_kind(dimension_map.group)
        entries = [
            MapEntry(lam=a.lam, word=a.word, length=group.length(a), dim=dim)
            for a, dim in dimension_map.sorted_entries()
        ]
        return cls(
            group=dimension_map.group,
            radius=dimension_map.radius,
            window=dimension_map.window,
            stability=dimension_map.stability,
            entries=entries,
            metadata=dict(dimension_map.metadata),
        )

    def alcove_values(self) -> Dict[Alcove, Optional[int]]:
        group = AffineWeylGroup.for_kind(self.group)
        return {group.alcove(e.lam, e.word): e.dim for e in self.entries}

    def to_dimension_map(self) -> DimensionMap:
        return DimensionMap(
            group=self.group,
            radius=self.radius,
            window=self.window,
            entries=self.alcove_values(),
            stability=self.stability,
            metadata=dict(self.metadata),
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "group": self.group.value,
            "radius": self.radius,
            "window": self.window,
            "stability": self.stability,
            "metadata": self.metadata,
            "entries": [
                {"lambda": list(e.lam), "word": e.word, "length": e.length, "dim": e.dim}
                for e in self.entries
            ],
        }


def dumps(mapfile: MapFile) -> str:
    return json.dumps(mapfile.to_dict(), sort_keys=True, indent=2) + "\n"


def loads(text: str) -> MapFile:
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MapFileError(f"MapFile is not valid JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise MapFileError("MapFile must be a JSON object")
    missing = {"group", "radius", "window", "stability", "entries"} - set(document)
    if missing:
        raise MapFileError(f"MapFile is missing keys: {', '.join(sorted(missing))}")
    try:
        group = RootSystemKind.parse(document["group"])
        weyl = AffineWeylGroup.for_kind(group)
        entries = []
        for raw in document["entries"]:
            lam = tuple(int(v) for v in raw["lambda"])
            if len(lam) != weyl.rank:
                raise MapFileError(f"lambda {list(lam)} has the wrong rank for {group}")
            word = str(raw["word"])
            weyl.alcove(lam, word)
            dim = raw["dim"]
            entries.append(
                MapEntry(lam=lam, word=word, length=int(raw["length"]),
                         dim=None if dim is None else int(dim))
            )
        return MapFile(
            group=group,
            radius=int(document["radius"]),
            window=int(document["window"]),
            stability=bool(document["stability"]),
            entries=entries,
            metadata=dict(document.get("metadata") or {}),
        )
    except MapFileError:
        raise
    except (AdlvError, KeyError, TypeError, ValueError) as exc:
        raise MapFileError(f"malformed MapFile entry: {exc}") from exc


def read_mapfile(path: Union[str, Path]) -> MapFile:
    path = Path(path)
    if not path.exists():
        raise MapFileError(f"MapFile not found: {path}")
    return loads(path.read_text(encoding="utf-8"))


def write_mapfile(mapfile: MapFile, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(mapfile), encoding="utf-8")
    logger.info(f"Wrote MapFile with {len(mapfile.entries)} entries to {path}")
    return path


# Golden CSV -------------------------------------------------------------------
def golden_path(kind: Union[str, RootSystemKind]) -> Path:
    return DATA_DIR / f"golden_{RootSystemKind.parse(kind).value}.csv"


def read_golden(path: Union[str, Path]) -> pd.DataFrame:
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False)
    except (OSError, pd.errors.ParserError) as exc:
        raise MapFileError(f"cannot read golden CSV {path}: {exc}") from exc
    missing = [c for c in GOLDEN_COLUMNS if c not in frame.columns]
    if missing:
        raise MapFileError(f"golden CSV {path} lacks columns: {', '.join(missing)}")
    return frame


def _golden_alcove(group: AffineWeylGroup, row: pd.Series) -> Alcove:
    lam = [row["lambda1"], row["lambda2"]][: group.rank]
    return group.alcove([int(v) for v in lam], row["word"])


def compare_golden(mapfile: MapFile, golden: pd.DataFrame) -> List[Dict[str, Any]]:
    """Rows of the golden inside the map window whose value differs from the map."""
    group = AffineWeylGroup.for_kind(mapfile.group)
    values = mapfile.alcove_values()
    mismatches = []
    rows = golden[golden["group"].str.lower() == mapfile.group.value]
    rows = rows[pd.to_numeric(rows["length"], errors="coerce") <= mapfile.window]
    for _, row in rows.iterrows():
        try:
            alcove = _golden_alcove(group, row)
            expected = int(row["dim"]) if row["dim"] != "" else None
        except ValueError as exc:
            raise MapFileError(f"malformed golden row {row.to_dict()}: {exc}") from exc
        if alcove not in values:
            mismatches.append({"alcove": str(alcove), "expected": expected, "actual": "outside window"})
        elif values[alcove] != expected:
            mismatches.append({"alcove": str(alcove), "expected": expected, "actual": values[alcove]})
    logger.info(f"Golden comparison for {mapfile.group}: {len(rows)} rows, {len(mismatches)} mismatches")
    return mismatches


def to_frame(mapfile: MapFile) -> pd.DataFrame:
    """Map entries in golden column layout."""
    records = []
    for entry in mapfile.entries:
        lam = list(entry.lam) + [None] * (2 - len(entry.lam))
        records.append({
            "group": mapfile.group.value,
            "lambda1": lam[0],
            "lambda2": lam[1],
            "word": entry.word,
            "length": entry.length,
            "dim": entry.dim,
        })
    frame = pd.DataFrame.from_records(records, columns=GOLDEN_COLUMNS)
    return frame.astype({"lambda1": "Int64", "lambda2": "Int64", "dim": "Int64"})


def export_csv(mapfile: MapFile, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    to_frame(mapfile).to_csv(path, index=False)
    logger.info(f"Exported {len(mapfile.entries)} entries to {path}")
    return path

