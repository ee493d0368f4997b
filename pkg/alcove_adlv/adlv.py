"""
Dimension maps of affine Deligne-Lusztig varieties (Iwahori level, b = 1)

Combines the base case around C_M with the folded superpieces of every
vertex in a ball, checks the closed formula on the shrunken chambers and
derives K-level dimensions from double cosets W t_mu W.
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from .affine_weyl import AffineIsometry, AffineWeylGroup, Alcove
from .errors import AdlvError, ConfigError, NotInShrunkenRegion, OddNumerator, RadiusTooSmall, WindowTooSmall
from .folding import fold_superpiece
from .galleries import GalleryBuilder, Vertex
from .root_data import Point, RootSystemKind, is_full_support, pair

logger = logging.getLogger(__name__)

ALL_VERTICES = "all-vertices"
FUNDAMENTAL_DOMAIN = "fundamental-domain"
MODES = (ALL_VERTICES, FUNDAMENTAL_DOMAIN)

CERTIFICATION_NOTE = (
    "window certified by radius stability and golden tables, not by a proven radius bound"
)

# maximal number of easy choices is bound - m
EASY_BOUNDS = {RootSystemKind.A2: 3, RootSystemKind.C2: 4}


@dataclass(frozen=True)
class PieceRecord:
    """One piece dimension contributed to an alcove by the superpiece (v1, zQ1)."""

    alcove: Alcove
    v1: Vertex
    q2prime: Alcove
    m: int
    dim: int

    @property
    def key(self) -> Tuple[Point, Alcove, Alcove]:
        return (self.v1.point, self.q2prime, self.alcove)


@dataclass
class VertexContribution:
    vertex: Vertex
    radius: int
    records: List[PieceRecord] = field(default_factory=list)
    pieces: int = 0
    skipped: int = 0
    collisions: int = 0
    non_primal: int = 0


@dataclass
class DimensionMap:
    """Alcove -> dimension (None for Empty) on every alcove of length <= window."""

    group: RootSystemKind
    radius: int
    window: int
    entries: Dict[Alcove, Optional[int]]
    stability: bool
    metadata: Dict[str, Any] = field(default_factory=dict)
    records: Dict[Alcove, List[PieceRecord]] = field(default_factory=dict, repr=False, compare=False)

    def __getitem__(self, alcove: Alcove) -> Optional[int]:
        return self.entries[alcove]

    def __contains__(self, alcove: Alcove) -> bool:
        return alcove in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def nonempty(self) -> Dict[Alcove, int]:
        return {a: d for a, d in self.entries.items() if d is not None}

    def sorted_entries(self) -> List[Tuple[Alcove, Optional[int]]]:
        group = AffineWeylGroup.for_kind(self.group)
        return sorted(self.entries.items(), key=lambda item: canonical_key(group, item[0]))


@dataclass(frozen=True)
class MuSpec:
    mu: Tuple[int, ...]
    pairing: int
    coset: FrozenSet[Alcove]


@dataclass(frozen=True)
class RegionVerdict:
    """``predicted`` is None when the alcove lies outside the b-shifted shrunken region."""

    in_region: bool
    predicted: Optional[bool] = None

    def __str__(self) -> str:
        if not self.in_region:
            return "OutOfRegion"
        return f"InRegion({'non-empty' if self.predicted else 'empty'})"


def canonical_key(group: AffineWeylGroup, alcove: Alcove) -> Tuple[int, Tuple[int, ...], Tuple[int, ...]]:
    """Output order: length, then lambda, then reduced word."""
    return (group.length(alcove), alcove.lam, alcove.w.word)


def base_case_entries(group: AffineWeylGroup, builder: Optional[GalleryBuilder] = None) -> Dict[Alcove, int]:
    """Alcoves whose closure meets C_M get their own length (classical Deligne-Lusztig dimension)."""
    builder = builder or GalleryBuilder(group)
    entries = {group.base_alcove(): 0}
    for point in group.base_vertices:
        for alcove in builder.star(Vertex(point=point, special=group.is_special(point))):
            entries[alcove] = group.length(alcove)
    return entries


def formula_eval(group: AffineWeylGroup, alcove: Alcove) -> Optional[int]:
    """Closed formula on the shrunken chambers; None means the variety is empty."""
    if not group.in_shrunken(alcove):
        raise NotInShrunkenRegion(f"{alcove} is not in the shrunken Weyl chambers")
    rs = group.rs
    eta2 = group.eta2(alcove)
    conjugate = rs.multiply(rs.multiply(rs.inverse(eta2), group.eta1(alcove)), eta2)
    if not is_full_support(conjugate):
        return None
    numerator = group.length(alcove) + conjugate.length
    if numerator % 2:
        raise OddNumerator(f"{alcove}: l(w) + l({conjugate}) = {numerator} is odd")
    return numerator // 2


def conjecture_region(group: AffineWeylGroup, b_lambda: Sequence[int], alcove: Alcove) -> RegionVerdict:
    """Predicted non-emptiness inside the b-shifted shrunken chambers (no ground truth for b != 0)."""
    if not group.rs.is_dominant(b_lambda):
        raise ValueError(f"b_lambda {tuple(b_lambda)} is not dominant")
    if not group.b_shifted_region(b_lambda, alcove):
        return RegionVerdict(in_region=False)
    rs = group.rs
    eta2 = group.eta2(alcove)
    conjugate = rs.multiply(rs.multiply(rs.inverse(eta2), group.eta1(alcove)), eta2)
    return RegionVerdict(in_region=True, predicted=is_full_support(conjugate))


def mu_spec(group: AffineWeylGroup, mu: Sequence[int]) -> MuSpec:
    """The double coset W t_mu W as alcoves t_{u mu} w."""
    rs = group.rs
    mu = tuple(int(v) for v in mu)
    if not rs.is_dominant(mu):
        raise ValueError(f"mu {mu} is not dominant")
    chart = rs.to_chart(mu)
    orbit = {rs.from_chart(u.apply(chart)) for u in rs.weyl}
    coset = frozenset(group.alcove(lam, w) for lam in orbit for w in rs.weyl)
    return MuSpec(mu=mu, pairing=int(pair(rs, mu)), coset=coset)


def k_level_dimension(spec: MuSpec, dimension_map: DimensionMap) -> int:
    """max over the coset of the Iwahori-level dimension, minus delta."""
    group = AffineWeylGroup.for_kind(dimension_map.group)
    too_long = [a for a in spec.coset if group.length(a) > dimension_map.window]
    if too_long:
        longest = max(group.length(a) for a in too_long)
        raise WindowTooSmall(
            f"coset of mu={spec.mu} reaches length {longest} > window {dimension_map.window}"
        )
    values = [dimension_map.entries[a] for a in spec.coset if dimension_map.entries[a] is not None]
    if not values:
        raise AdlvError(f"every alcove of the coset of mu={spec.mu} is empty")
    return max(values) - group.rs.delta


# Audits ---------------------------------------------------------------------
def audit_single_dimension(dimension_map: DimensionMap) -> Dict[Alcove, List[int]]:
    """Alcoves receiving two different piece dimensions from distinct superpieces."""
    conflicts = {}
    for alcove, records in dimension_map.records.items():
        dims = sorted({r.dim for r in records})
        if len(dims) > 1:
            conflicts[alcove] = dims
    return conflicts


def audit_nonspecial(dimension_map: DimensionMap) -> Dict[Alcove, List[PieceRecord]]:
    """Alcoves where differing piece dimensions do not come from a smaller non-special piece."""
    violations = {}
    for alcove, records in dimension_map.records.items():
        dims = {r.dim for r in records}
        if len(dims) < 2:
            continue
        top = max(dims)
        smaller_ok = all(not r.v1.special for r in records if r.dim < top)
        top_special = any(r.v1.special for r in records if r.dim == top)
        if not (smaller_ok and top_special):
            violations[alcove] = sorted(records, key=lambda r: (r.dim, r.v1.point))
    return violations


def check_symmetry(
    group: AffineWeylGroup, dimension_map: DimensionMap
) -> List[Tuple[Alcove, Alcove, Optional[int], Optional[int]]]:
    """Pairs (a, sigma a) inside the window whose entries differ."""
    mismatches = []
    for sigma in group.cm_symmetries():
        if sigma.is_identity:
            continue
        for alcove, value in dimension_map.entries.items():
            image = group.apply(sigma, alcove)
            if image in dimension_map.entries and dimension_map.entries[image] != value:
                mismatches.append((alcove, image, value, dimension_map.entries[image]))
    return mismatches


def easy_bound_violations(builder: GalleryBuilder, radius: int) -> List[Tuple[Vertex, int, int]]:
    """(v1, m, n_easy) for outcomes exceeding the easy-choice bound within the radius."""
    bound = EASY_BOUNDS.get(builder.group.kind)
    if bound is None:
        return []
    violations = []
    for vertex in builder.vertices_within(radius):
        for spec in builder.superpiece_specs(vertex):
            result = fold_superpiece(builder.group, spec)
            worst = max(o.n_easy for o in result.outcomes)
            if worst > bound - spec.m:
                violations.append((vertex, spec.m, worst))
    return violations


def first_choice_violations(builder: GalleryBuilder, radius: int) -> List[Tuple[Vertex, int]]:
    """Superpieces whose first choice edge lies before Gamma^f."""
    violations = []
    for vertex in builder.vertices_within(radius):
        for spec in builder.superpiece_specs(vertex):
            for outcome in fold_superpiece(builder.group, spec).outcomes:
                if outcome.choices and outcome.choices[0][0] < spec.fold_start:
                    violations.append((vertex, spec.m))
                    break
    return violations


def q1_is_unique(builder: GalleryBuilder, vertex: Vertex) -> bool:
    group = builder.group
    lengths = [group.length(a) for a in builder.star(vertex)]
    return lengths.count(min(lengths)) == 1


# Pipeline -------------------------------------------------------------------
def fold_vertex(builder: GalleryBuilder, vertex: Vertex, window: int) -> VertexContribution:
    """All superpieces of one vertex, keeping the pieces that land inside the window."""
    group = builder.group
    contribution = VertexContribution(vertex=vertex, radius=builder.vertex_radius(vertex))
    _, q1 = builder.minimal_gallery_to_vertex(vertex)
    positions = builder.local_positions(vertex, q1)
    specs = list(builder.superpiece_specs(vertex))
    contribution.skipped = len(positions) - len(specs)
    for spec in specs:
        result = fold_superpiece(group, spec)
        contribution.pieces += 1
        contribution.collisions += len(result.collisions)
        contribution.non_primal += result.non_primal
        for alcove, dim in result.pieces.items():
            if group.length(alcove) <= window:
                contribution.records.append(
                    PieceRecord(alcove=alcove, v1=vertex, q2prime=spec.q2prime, m=spec.m, dim=dim)
                )
    logger.debug(
        f"{vertex}: {contribution.pieces} superpieces, {len(contribution.records)} pieces in window"
    )
    return contribution


_WORKER_BUILDERS: Dict[RootSystemKind, GalleryBuilder] = {}


def _fold_vertex_worker(kind: RootSystemKind, graph_radius: int, vertex: Vertex, window: int) -> VertexContribution:
    builder = _WORKER_BUILDERS.get(kind)
    if builder is None:
        builder = _WORKER_BUILDERS[kind] = GalleryBuilder(AffineWeylGroup.for_kind(kind))
    builder.alcove_graph(graph_radius)
    return fold_vertex(builder, vertex, window)


class DimensionMapBuilder:
    """Computes certified dimension maps for one group."""

    def __init__(self, group: AffineWeylGroup, mode: str = ALL_VERTICES, workers: int = 1):
        if mode not in MODES:
            raise ConfigError(f"unknown mode '{mode}' (expected one of {', '.join(MODES)})")
        if workers < 1:
            raise ConfigError(f"workers must be positive, got {workers}")
        self.group = group
        self.mode = mode
        self.workers = workers
        self.builder = GalleryBuilder(group)

    @classmethod
    def from_config(cls, config) -> "DimensionMapBuilder":
        compute = config.compute
        return cls(AffineWeylGroup.for_kind(compute.group), mode=compute.mode, workers=compute.workers)

    # Public API -------------------------------------------------------------
    def build(self, radius: int, window: int, allow_unstable: bool = False) -> DimensionMap:
        """Pointwise max of base case and superpiece maps over vertices of radius <= ``radius``."""
        self._validate(radius, window)
        group = self.group
        graph = self.builder.alcove_graph(max(radius, window))
        window_alcoves = [a for a, data in graph.nodes(data=True) if data["length"] <= window]
        logger.info(
            f"Computing {group.kind} map: radius {radius}, window {window} "
            f"({len(window_alcoves)} alcoves), mode {self.mode}"
        )

        values: Dict[Alcove, int] = {}
        for alcove, dim in base_case_entries(group, self.builder).items():
            if group.length(alcove) <= window:
                values[alcove] = dim
        records: Dict[Alcove, Dict[Tuple, PieceRecord]] = {}

        vertices = self.builder.vertices_within(radius)
        processed = vertices if self.mode == ALL_VERTICES else self._representatives(vertices)
        contributions = self._contributions(processed, max(radius, window), window)

        metadata = {"mode": self.mode, "vertices": len(processed), "pieces": 0, "skipped": 0,
                    "collisions": 0, "non_primal": 0, "certification": CERTIFICATION_NOTE}
        snapshot: Optional[Dict[Alcove, Optional[int]]] = None
        for contribution in contributions:
            if snapshot is None and contribution.radius == radius:
                snapshot = self._window_entries(window_alcoves, values)
            metadata["pieces"] += contribution.pieces
            metadata["skipped"] += contribution.skipped
            metadata["collisions"] += contribution.collisions
            metadata["non_primal"] += contribution.non_primal
            for record in self._expand(contribution.records):
                records.setdefault(record.alcove, {})[record.key] = record
                values[record.alcove] = max(values.get(record.alcove, record.dim), record.dim)
        entries = self._window_entries(window_alcoves, values)
        if snapshot is None:
            snapshot = entries

        changed = sorted(
            (a for a in entries if entries[a] != snapshot[a]), key=lambda a: canonical_key(group, a)
        )
        stability = not changed
        metadata["stability"] = stability
        logger.info(
            f"{group.kind} map: {metadata['pieces']} superpieces, {metadata['skipped']} skipped, "
            f"{len([v for v in entries.values() if v is not None])} non-empty alcoves, "
            f"stable={stability}"
        )
        if metadata["collisions"]:
            logger.warning(f"{metadata['collisions']} final-alcove collisions inside superpieces")
        if not stability:
            if not allow_unstable:
                raise RadiusTooSmall(radius, window, changed)
            logger.warning(f"Map not stable at radius {radius}: {len(changed)} alcoves changed")
        return DimensionMap(
            group=group.kind,
            radius=radius,
            window=window,
            entries=entries,
            stability=stability,
            metadata=metadata,
            records={a: list(by_key.values()) for a, by_key in records.items()},
        )

    # Internal helpers -------------------------------------------------------
    def _validate(self, radius: int, window: int) -> None:
        if window < 0:
            raise ConfigError(f"window must be non-negative, got {window}")
        if radius < 1 or radius < math.ceil(window / 2):
            raise ConfigError(f"radius {radius} is too small for window {window}")

    @staticmethod
    def _window_entries(alcoves: Iterable[Alcove], values: Dict[Alcove, int]) -> Dict[Alcove, Optional[int]]:
        return {a: values.get(a) for a in alcoves}

    def _representatives(self, vertices: List[Vertex]) -> List[Vertex]:
        symmetries = self.group.cm_symmetries()
        return [v for v in vertices if v.point == min(s.apply_point(v.point) for s in symmetries)]

    def _expand(self, records: List[PieceRecord]) -> List[PieceRecord]:
        if self.mode == ALL_VERTICES:
            return records
        expanded = []
        for sigma in self.group.cm_symmetries():
            expanded.extend(self._image(sigma, r) for r in records)
        return expanded

    def _image(self, sigma: AffineIsometry, record: PieceRecord) -> PieceRecord:
        group = self.group
        if sigma.is_identity:
            return record
        point = sigma.apply_point(record.v1.point)
        return PieceRecord(
            alcove=group.apply(sigma, record.alcove),
            v1=Vertex(point=point, special=group.is_special(point)),
            q2prime=group.apply(sigma, record.q2prime),
            m=record.m,
            dim=record.dim,
        )

    def _contributions(self, vertices: List[Vertex], graph_radius: int, window: int) -> List[VertexContribution]:
        if self.workers == 1 or len(vertices) < 2:
            return [fold_vertex(self.builder, v, window) for v in vertices]
        logger.info(f"Folding {len(vertices)} vertices on {self.workers} workers")
        with ProcessPoolExecutor(max_workers=self.workers) as pool:
            futures = [
                pool.submit(_fold_vertex_worker, self.group.kind, graph_radius, v, window)
                for v in vertices
            ]
            # results are consumed in vertex order so the merge is schedule independent
            return [f.result() for f in futures]


def dimension_map(
    kind: Union[str, RootSystemKind],
    radius: int,
    window: int,
    mode: str = ALL_VERTICES,
    workers: int = 1,
    allow_unstable: bool = False,
) -> DimensionMap:
    group = AffineWeylGroup.for_kind(kind)
    return DimensionMapBuilder(group, mode=mode, workers=workers).build(radius, window, allow_unstable)
