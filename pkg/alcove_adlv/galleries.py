"""
Vertices, stars and the model galleries Omega = Gamma + Gamma^c + Gamma^f

Galleries count alcoves, so a gallery of length l crosses l - 1 walls.
Minimal galleries from C_M follow the breadth-first tree of the alcove graph
(walls visited in C_M wall order), which makes every gallery reproducible.
"""

import logging
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from .affine_weyl import AffineIsometry, AffineWeylGroup, Alcove
from .errors import NoSuchIsometry, OmegaSelfIntersects, VertexInBaseAlcove
from .root_data import Point

logger = logging.getLogger(__name__)

# offset along the barycenter direction used to pick an alcove touching a vertex
_NUDGE = Fraction(1, 100)


@dataclass(frozen=True, order=True)
class Vertex:
    point: Point
    special: bool

    def __str__(self) -> str:
        coords = ",".join(str(c) for c in self.point)
        return f"v({coords}{'' if self.special else ';ns'})"


@dataclass(frozen=True)
class Gallery:
    """Sequence of alcoves, consecutive ones sharing a wall."""

    alcoves: Tuple[Alcove, ...]

    def __len__(self) -> int:
        return len(self.alcoves)

    def __iter__(self) -> Iterator[Alcove]:
        return iter(self.alcoves)

    def __getitem__(self, index):
        return self.alcoves[index]

    @property
    def first(self) -> Alcove:
        return self.alcoves[0]

    @property
    def last(self) -> Alcove:
        return self.alcoves[-1]

    def repeated(self) -> Optional[Alcove]:
        """First alcove that occurs twice, if any."""
        seen = set()
        for alcove in self.alcoves:
            if alcove in seen:
                return alcove
            seen.add(alcove)
        return None

    def is_valid(self, group: AffineWeylGroup) -> bool:
        """Non-stuttering, every consecutive pair adjacent, no alcove repeated."""
        for a, b in zip(self.alcoves, self.alcoves[1:]):
            if a == b or not group.adjacent(a, b):
                return False
        return self.repeated() is None


@dataclass(frozen=True)
class SuperpieceSpec:
    """Everything the folding step needs for one (v1, p_r)."""

    v1: Vertex
    q1: Alcove
    q2prime: Alcove
    z: AffineIsometry
    gamma: Gallery
    gamma_c: Gallery
    gamma_f: Gallery
    omega: Gallery
    m: int

    @property
    def radius(self) -> int:
        return len(self.gamma) - 1

    @property
    def fold_start(self) -> int:
        """Index in omega where Gamma^f begins (the position of zQ1)."""
        return len(self.gamma) + len(self.gamma_c) - 2

    def key(self) -> Tuple[Point, Tuple]:
        return (self.v1.point, self.q2prime.sort_key())


class GalleryBuilder:
    """Builds vertices, stars and superpiece specs for one affine Weyl group."""

    def __init__(self, group: AffineWeylGroup):
        self.group = group
        self._graph: nx.Graph = nx.Graph()
        self._graph_radius = -1
        self._stars: Dict[Point, List[Alcove]] = {}
        self._base_vertices = set(group.base_vertices)

    # Alcove graph -----------------------------------------------------------
    def alcove_graph(self, radius: int) -> nx.Graph:
        """Graph of all alcoves of length <= radius; edges carry the crossed hyperplane."""
        if radius > self._graph_radius:
            self._graph = self._build_graph(radius)
            self._graph_radius = radius
        return self._graph

    def _build_graph(self, radius: int) -> nx.Graph:
        group = self.group
        base = group.base_alcove()
        graph = nx.Graph(radius=radius)
        graph.add_node(base, length=0, parent=None)
        queue = deque([base])
        while queue:
            alcove = queue.popleft()
            for hyperplane, neighbor in group.walls(alcove):
                length = group.length(neighbor)
                if length > radius:
                    continue
                if neighbor not in graph:
                    graph.add_node(neighbor, length=length, parent=alcove)
                    queue.append(neighbor)
                graph.add_edge(alcove, neighbor, hyperplane=hyperplane)
        logger.debug(f"Alcove graph for {group.kind} to radius {radius}: {graph.number_of_nodes()} alcoves")
        return graph

    def minimal_gallery(self, target: Alcove) -> Gallery:
        """Gallery from C_M to target along the breadth-first tree."""
        graph = self.alcove_graph(self.group.length(target))
        path = [target]
        while graph.nodes[path[-1]]["parent"] is not None:
            path.append(graph.nodes[path[-1]]["parent"])
        return Gallery(tuple(reversed(path)))

    def minimal_galleries(self, source: Alcove, target: Alcove) -> List[Gallery]:
        """Every minimal gallery between two alcoves inside the current graph."""
        graph = self.alcove_graph(max(self.group.length(source), self.group.length(target)))
        return [Gallery(tuple(p)) for p in nx.all_shortest_paths(graph, source, target)]

    # Vertices and stars -----------------------------------------------------
    def vertex(self, point: Sequence) -> Vertex:
        point = tuple(Fraction(c) for c in point)
        probe = self._probe(point)
        if point not in self.group.vertices(probe):
            raise ValueError(f"{point} is not a vertex of the apartment")
        return Vertex(point=point, special=self.group.is_special(point))

    def is_special(self, vertex: Vertex) -> bool:
        return self.group.is_special(vertex.point)

    def _probe(self, point: Point) -> Alcove:
        base = self.group.base_barycenter
        return self.group.alcove_at(tuple(p + _NUDGE * b for p, b in zip(point, base)))

    def star(self, vertex: Vertex) -> List[Alcove]:
        """Alcoves containing the vertex in cyclic order, starting at the one nearest C_M."""
        cached = self._stars.get(vertex.point)
        if cached is not None:
            return cached
        group = self.group
        start = self._probe(vertex.point)
        members = {start}
        queue = deque([start])
        while queue:
            alcove = queue.popleft()
            for hyperplane, neighbor in group.walls(alcove):
                if neighbor not in members and group.contains_point(hyperplane, vertex.point):
                    members.add(neighbor)
                    queue.append(neighbor)
        first = min(members, key=lambda a: (group.length(a), a.sort_key()))
        cycle = [first]
        while len(cycle) < len(members):
            # walls are scanned in C_M wall order, so the first step crosses the lower wall index
            step = next(
                neighbor
                for _, neighbor in group.walls(cycle[-1])
                if neighbor in members and neighbor not in cycle
            )
            cycle.append(step)
        self._stars[vertex.point] = cycle
        return cycle

    def star_distance(self, vertex: Vertex, a: Alcove, b: Alcove) -> int:
        star = self.star(vertex)
        gap = abs(star.index(a) - star.index(b))
        return min(gap, len(star) - gap)

    def star_path(self, vertex: Vertex, a: Alcove, b: Alcove) -> List[Alcove]:
        """Shortest walk around the vertex from a to b (forward direction on ties)."""
        star = self.star(vertex)
        n = len(star)
        i, j = star.index(a), star.index(b)
        forward = (j - i) % n
        step = 1 if forward <= n - forward else -1
        path = [star[i]]
        while path[-1] != star[j]:
            i = (i + step) % n
            path.append(star[i])
        return path

    def vertex_radius(self, vertex: Vertex) -> int:
        """Length of Q1, the alcove of the star nearest C_M."""
        return self.group.length(self.star(vertex)[0])

    def vertices_within(self, radius: int) -> List[Vertex]:
        """All vertices outside the closure of C_M with radius <= ``radius``, by (radius, point)."""
        graph = self.alcove_graph(radius)
        points = set()
        for alcove in graph.nodes:
            points.update(self.group.vertices(alcove))
        points -= self._base_vertices
        found = []
        for point in points:
            vertex = Vertex(point=point, special=self.group.is_special(point))
            r = self.vertex_radius(vertex)
            if r <= radius:
                found.append((r, vertex))
        found.sort(key=lambda item: (item[0], item[1].point))
        return [vertex for _, vertex in found]

    # Superpieces ------------------------------------------------------------
    def minimal_gallery_to_vertex(self, v1: Vertex) -> Tuple[Gallery, Alcove]:
        if v1.point in self._base_vertices:
            raise VertexInBaseAlcove(v1.point)
        q1 = self.star(v1)[0]
        return self.minimal_gallery(q1), q1

    def local_positions(self, v1: Vertex, q1: Alcove) -> List[Tuple[Alcove, int]]:
        """Candidates for zQ1: star members at distance >= 2 (exactly 1 in rank one)."""
        star = self.star(v1)
        positions = []
        for alcove in star:
            m = self.star_distance(v1, q1, alcove)
            if (self.group.rank == 1 and m == 1) or (self.group.rank > 1 and m >= 2):
                positions.append((alcove, m))
        return positions

    def z_map(self, v1: Vertex, q1: Alcove, q2prime: Alcove) -> AffineIsometry:
        """Product of the reflections crossed walking around v1 from q1 to q2prime."""
        star = self.star(v1)
        if q1 not in star or q2prime not in star:
            raise NoSuchIsometry(f"{q1} and {q2prime} do not both contain {v1}")
        z = AffineIsometry.identity(self.group.rank)
        path = self.star_path(v1, q1, q2prime)
        for a, b in zip(path, path[1:]):
            z = self.group.reflection(self.group.separating_hyperplane(a, b)).compose(z)
        if self.group.apply(z, q1) != q2prime:
            raise NoSuchIsometry(f"reflections around {v1} do not carry {q1} to {q2prime}")
        return z

    def assemble_omega(
        self,
        v1: Vertex,
        q2prime: Alcove,
        gamma: Optional[Gallery] = None,
        gamma_c: Optional[Gallery] = None,
    ) -> SuperpieceSpec:
        """Omega for (v1, zQ1); other minimal galleries with the same ends may replace Gamma or Gamma^c."""
        default_gamma, q1 = self.minimal_gallery_to_vertex(v1)
        gamma = gamma or default_gamma
        if gamma.first != self.group.base_alcove() or gamma.last != q1:
            raise ValueError(f"Gamma must run from C_M to {q1}")
        gamma_c = gamma_c or Gallery(tuple(self.star_path(v1, q1, q2prime)))
        if gamma_c.first != q1 or gamma_c.last != q2prime:
            raise ValueError(f"Gamma^c must run from {q1} to {q2prime}")
        z = self.z_map(v1, q1, q2prime)
        gamma_f = Gallery(tuple(self.group.apply(z, a) for a in reversed(gamma.alcoves)))
        omega = Gallery(gamma.alcoves + gamma_c.alcoves[1:] + gamma_f.alcoves[1:])
        m = len(gamma_c) - 1
        repeated = omega.repeated()
        if repeated is not None:
            raise OmegaSelfIntersects(v1.point, m, repeated)
        return SuperpieceSpec(
            v1=v1, q1=q1, q2prime=q2prime, z=z,
            gamma=gamma, gamma_c=gamma_c, gamma_f=gamma_f, omega=omega, m=m,
        )

    def superpiece_specs(self, v1: Vertex) -> Iterator[SuperpieceSpec]:
        """Specs for every admissible zQ1 of v1; self-intersecting Omegas are logged and skipped."""
        _, q1 = self.minimal_gallery_to_vertex(v1)
        for q2prime, m in self.local_positions(v1, q1):
            try:
                yield self.assemble_omega(v1, q2prime)
            except OmegaSelfIntersects as exc:
                logger.warning(f"Skipping superpiece: {exc}")
