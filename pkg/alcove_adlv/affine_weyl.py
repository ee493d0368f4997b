"""
Alcove arithmetic in the standard apartment

An alcove is stored as the canonical pair (lambda, w) with w~ = t_lambda * w
and alcove = w~ C_M; lambda is in coroot coordinates.  Every sidedness test
is done on barycenters, which never lie on a hyperplane, so strict
comparisons are total.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .root_data import (
    FiniteWeylElement,
    Matrix,
    Point,
    RootSystem,
    RootSystemKind,
    build_root_system,
    mat_vec,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Hyperplane:
    """The affine hyperplane <beta, x> = k for the positive root with index ``root``."""

    root: int
    k: int

    def __str__(self) -> str:
        return f"H(beta{self.root + 1}, {self.k})"


@dataclass(frozen=True)
class Alcove:
    """Alcove t_lambda w C_M; equality and hashing use (lam, w) only."""

    lam: Tuple[int, ...]
    w: FiniteWeylElement
    barycenter: Point = field(compare=False, repr=False)

    @property
    def word(self) -> str:
        return self.w.word_string

    def sort_key(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        return (self.lam, self.w.word)

    def __str__(self) -> str:
        return f"({','.join(str(v) for v in self.lam)};{self.word})"


@dataclass(frozen=True)
class AffineIsometry:
    """x -> linear @ x + translation on the pairing chart."""

    linear: Matrix
    translation: Point

    @classmethod
    def identity(cls, rank: int) -> "AffineIsometry":
        return cls(
            linear=tuple(tuple(int(i == j) for j in range(rank)) for i in range(rank)),
            translation=tuple(Fraction(0) for _ in range(rank)),
        )

    @property
    def is_identity(self) -> bool:
        rank = len(self.linear)
        return self == AffineIsometry.identity(rank)

    def apply_point(self, point: Sequence[Fraction]) -> Point:
        moved = mat_vec(self.linear, point)
        return tuple(a + b for a, b in zip(moved, self.translation))

    def compose(self, other: "AffineIsometry") -> "AffineIsometry":
        """self after other."""
        linear = np.array(self.linear, dtype=np.int64) @ np.array(other.linear, dtype=np.int64)
        return AffineIsometry(
            linear=tuple(tuple(int(v) for v in row) for row in linear.tolist()),
            translation=self.apply_point(other.translation),
        )

    def inverse(self) -> "AffineIsometry":
        array = np.array(self.linear, dtype=np.int64)
        inverse = np.rint(np.linalg.inv(array)).astype(np.int64)
        if not np.array_equal(inverse @ array, np.eye(len(array), dtype=np.int64)):
            raise ArithmeticError("linear part is not unimodular")
        linear = tuple(tuple(int(v) for v in row) for row in inverse.tolist())
        shifted = mat_vec(linear, self.translation)
        return AffineIsometry(linear=linear, translation=tuple(-v for v in shifted))


class AffineWeylGroup:
    """Affine Weyl group of a root system acting on alcoves of the apartment."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.rank = rs.rank
        theta = rs.highest_root
        # C_M vertex t < rank is e_t / c_t (theta = sum c_t alpha_t); vertex ``rank`` is the origin
        self.base_vertices: Tuple[Point, ...] = tuple(
            tuple(Fraction(int(i == t), theta[t]) for i in range(self.rank)) for t in range(self.rank)
        ) + (tuple(Fraction(0) for _ in range(self.rank)),)
        self.base_barycenter: Point = tuple(
            sum((v[i] for v in self.base_vertices), Fraction(0)) / (self.rank + 1)
            for i in range(self.rank)
        )
        # wall t of C_M is the face opposite vertex t
        self.base_walls: Tuple[Hyperplane, ...] = tuple(Hyperplane(t, 0) for t in range(self.rank)) + (
            Hyperplane(rs.theta_index, 1),
        )
        self._inverse = {u: rs.inverse(u) for u in rs.weyl}
        self._from_barycenter: Dict[Point, Alcove] = {}
        self._walls: Dict[Alcove, List[Tuple[Hyperplane, "Alcove"]]] = {}
        self._base = self._make(tuple(0 for _ in range(self.rank)), rs.identity)
        logger.debug(f"Affine Weyl group of type {rs.kind} ready")

    @classmethod
    def for_kind(cls, kind: Union[str, RootSystemKind]) -> "AffineWeylGroup":
        return _group_for_kind(RootSystemKind.parse(kind))

    @property
    def kind(self) -> RootSystemKind:
        return self.rs.kind

    # Construction -----------------------------------------------------------
    def _make(self, lam: Tuple[int, ...], w: FiniteWeylElement) -> Alcove:
        offset = self.rs.to_chart(lam)
        moved = w.apply(self.base_barycenter)
        barycenter = tuple(a + b for a, b in zip(offset, moved))
        alcove = Alcove(lam=tuple(lam), w=w, barycenter=barycenter)
        self._from_barycenter.setdefault(barycenter, alcove)
        return alcove

    def alcove(self, lam: Sequence[int], w: Union[FiniteWeylElement, str, Sequence[int]]) -> Alcove:
        """Alcove of t_lam * w; w may be given as an element or a word."""
        if not isinstance(w, FiniteWeylElement):
            w = self.rs.element_from_word(w)
        return self._make(tuple(int(v) for v in lam), w)

    def base_alcove(self) -> Alcove:
        return self._base

    def alcove_from_barycenter(self, barycenter: Sequence[Fraction]) -> Alcove:
        """The alcove whose barycenter is the given point."""
        point = tuple(Fraction(v) for v in barycenter)
        cached = self._from_barycenter.get(point)
        if cached is not None:
            return cached
        for w in self.rs.weyl:
            moved = w.apply(self.base_barycenter)
            lam = self.rs.from_chart(tuple(a - b for a, b in zip(point, moved)))
            if lam is not None:
                return self._make(lam, w)
        raise ValueError(f"{point} is not the barycenter of an alcove")

    def alcove_at(self, point: Sequence[Fraction]) -> Alcove:
        """The alcove containing an interior point (walks from C_M across separating walls)."""
        target = tuple(Fraction(v) for v in point)
        for i in range(len(self.rs.positive_roots)):
            if self.rs.root_pairing(i, target).denominator == 1:
                raise ValueError(f"{target} lies on a hyperplane")
        current = self._base
        while True:
            for hyperplane, neighbor in self.walls(current):
                if self.separates(hyperplane, current.barycenter, target):
                    current = neighbor
                    break
            else:
                return current

    # Geometry ---------------------------------------------------------------
    def pairings(self, point: Sequence[Fraction]) -> Tuple[Fraction, ...]:
        return tuple(self.rs.root_pairing(i, point) for i in range(len(self.rs.positive_roots)))

    def floors(self, alcove: Alcove) -> Tuple[int, ...]:
        return tuple(math.floor(p) for p in self.pairings(alcove.barycenter))

    def length(self, alcove: Alcove) -> int:
        """Number of hyperplanes separating the alcove from C_M."""
        return sum(abs(f) for f in self.floors(alcove))

    def vertices(self, alcove: Alcove) -> Tuple[Point, ...]:
        """Vertices in C_M vertex order (vertex t is opposite wall t)."""
        offset = self.rs.to_chart(alcove.lam)
        return tuple(
            tuple(a + b for a, b in zip(offset, alcove.w.apply(v))) for v in self.base_vertices
        )

    def side(self, hyperplane: Hyperplane, point: Sequence[Fraction]) -> int:
        value = self.rs.root_pairing(hyperplane.root, point) - hyperplane.k
        return (value > 0) - (value < 0)

    def separates(self, hyperplane: Hyperplane, x: Sequence[Fraction], y: Sequence[Fraction]) -> bool:
        return self.side(hyperplane, x) * self.side(hyperplane, y) < 0

    def contains_point(self, hyperplane: Hyperplane, point: Sequence[Fraction]) -> bool:
        return self.rs.root_pairing(hyperplane.root, point) == hyperplane.k

    def separating_hyperplane(self, a: Alcove, b: Alcove) -> Hyperplane:
        """The hyperplane between two adjacent alcoves."""
        differing = [
            (i, fa, fb) for i, (fa, fb) in enumerate(zip(self.floors(a), self.floors(b))) if fa != fb
        ]
        if len(differing) != 1 or abs(differing[0][1] - differing[0][2]) != 1:
            raise ValueError(f"alcoves {a} and {b} are not adjacent")
        index, fa, fb = differing[0]
        return Hyperplane(index, max(fa, fb))

    def adjacent(self, a: Alcove, b: Alcove) -> bool:
        return any(neighbor == b for _, neighbor in self.walls(a))

    def walls(self, alcove: Alcove) -> List[Tuple[Hyperplane, Alcove]]:
        """The rank+1 walls of the alcove with the neighbour across each, in C_M wall order."""
        cached = self._walls.get(alcove)
        if cached is not None:
            return cached
        offset = self.rs.to_chart(alcove.lam)
        result = []
        for wall in self.base_walls:
            reflected = alcove.w.apply(self.reflect_point(wall, self.base_barycenter))
            neighbor = self.alcove_from_barycenter(tuple(a + b for a, b in zip(offset, reflected)))
            result.append((self.separating_hyperplane(alcove, neighbor), neighbor))
        self._walls[alcove] = result
        return result

    # Reflections ------------------------------------------------------------
    def reflect_point(self, hyperplane: Hyperplane, point: Sequence[Fraction]) -> Point:
        """s_{beta,k}(x) = x - (<beta, x> - k) beta^vee."""
        excess = self.rs.root_pairing(hyperplane.root, point) - hyperplane.k
        coroot = self.rs.coroot_vectors[hyperplane.root]
        return tuple(Fraction(x) - excess * c for x, c in zip(point, coroot))

    def reflection(self, hyperplane: Hyperplane) -> AffineIsometry:
        beta = self.rs.positive_roots[hyperplane.root]
        coroot = self.rs.coroot_vectors[hyperplane.root]
        linear = tuple(
            tuple(int(i == j) - coroot[i] * beta[j] for j in range(self.rank)) for i in range(self.rank)
        )
        return AffineIsometry(linear=linear, translation=tuple(Fraction(hyperplane.k * c) for c in coroot))

    def reflect(self, hyperplane: Hyperplane, alcove: Alcove) -> Alcove:
        return self.alcove_from_barycenter(self.reflect_point(hyperplane, alcove.barycenter))

    def apply(self, isometry: AffineIsometry, alcove: Alcove) -> Alcove:
        return self.alcove_from_barycenter(isometry.apply_point(alcove.barycenter))

    def translate(self, alcove: Alcove, lam: Sequence[int]) -> Alcove:
        """t_lam applied to the alcove."""
        return self._make(tuple(a + b for a, b in zip(alcove.lam, lam)), alcove.w)

    # Weyl chamber data ------------------------------------------------------
    def eta1(self, alcove: Alcove) -> FiniteWeylElement:
        return alcove.w

    def chamber_of(self, point: Sequence[Fraction]) -> FiniteWeylElement:
        """The u in W with the point in u times the open dominant chamber."""
        for u in self.rs.weyl:
            pulled = self._inverse[u].apply(point)
            if all(c > 0 for c in pulled):
                return u
        raise ValueError(f"{tuple(point)} lies on a Weyl chamber wall")

    def eta2(self, alcove: Alcove) -> FiniteWeylElement:
        return self.chamber_of(alcove.barycenter)

    def in_shrunken(self, alcove: Alcove) -> bool:
        """True iff the alcove lies in no strip 0 < <beta, x> < 1 for a positive root beta."""
        return all(f != 0 for f in self.floors(alcove))

    def b_shifted_region(self, b_lambda: Sequence[int], alcove: Alcove) -> bool:
        """Membership in the union over u of u t_b u^-1 applied to the shrunken part of chamber u."""
        shift = self.rs.to_chart(b_lambda)
        for u in self.rs.weyl:
            moved = u.apply(shift)
            pulled = self.alcove_from_barycenter(
                tuple(a - b for a, b in zip(alcove.barycenter, moved))
            )
            if self.eta2(pulled) == u and self.in_shrunken(pulled):
                return True
        return False

    # Symmetries of C_M ------------------------------------------------------
    def is_special(self, point: Sequence[Fraction]) -> bool:
        return all(p.denominator == 1 for p in self.pairings(point))

    def cm_symmetries(self) -> List[AffineIsometry]:
        """Alcove-preserving isometries x -> p + w x mapping C_M onto itself, identity first."""
        vertex_set = set(self.base_vertices)
        found = []
        for p in self.base_vertices:
            if not self.is_special(p):
                continue
            for w in self.rs.weyl:
                isometry = AffineIsometry(linear=w.matrix, translation=p)
                if {isometry.apply_point(v) for v in self.base_vertices} == vertex_set:
                    found.append(isometry)
        found.sort(key=lambda iso: (not iso.is_identity, iso.translation, iso.linear))
        return found


@lru_cache(maxsize=None)
def _group_for_kind(kind: RootSystemKind) -> AffineWeylGroup:
    return AffineWeylGroup(build_root_system(kind))
