"""
Root data for SL2, SL3 and Sp4 (types A1, A2, C2)

Points of the apartment are stored in the pairing chart: a point x is the
tuple of rationals x_i = <alpha_i, x> over the simple roots.  In this chart
every root pairing is an integer combination of coordinates and every
reflection is an integer matrix, so all arithmetic stays exact.

Conventions: cartan[i][j] = <alpha_i, alpha_j^vee>; A2 = [[2,-1],[-1,2]];
C2 = [[2,-1],[-2,2]] with alpha_1 short and alpha_2 long.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import ConfigError

logger = logging.getLogger(__name__)

Matrix = Tuple[Tuple[int, ...], ...]
Point = Tuple[Fraction, ...]


class RootSystemKind(str, Enum):
    """The three groups handled by the package."""

    A1 = "a1"  # SL2
    A2 = "a2"  # SL3
    C2 = "c2"  # Sp4

    @classmethod
    def parse(cls, value: Union[str, "RootSystemKind"]) -> "RootSystemKind":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError as exc:
            choices = ", ".join(k.value for k in cls)
            raise ConfigError(f"unknown group '{value}' (expected one of {choices})") from exc

    def __str__(self) -> str:
        return self.value


_CARTAN: Dict[RootSystemKind, Matrix] = {
    RootSystemKind.A1: ((2,),),
    RootSystemKind.A2: ((2, -1), (-1, 2)),
    RootSystemKind.C2: ((2, -1), (-2, 2)),
}

# (alpha_j, alpha_j) for each simple root; the form is (alpha_i, alpha_j) = cartan[i][j] * d_j / 2
_SQUARED_LENGTHS: Dict[RootSystemKind, Tuple[int, ...]] = {
    RootSystemKind.A1: (2,),
    RootSystemKind.A2: (2, 2),
    RootSystemKind.C2: (1, 2),
}


def mat_vec(matrix: Matrix, point: Sequence[Fraction]) -> Point:
    """Apply an integer matrix to a chart point."""
    return tuple(
        sum((Fraction(entry) * coord for entry, coord in zip(row, point)), Fraction(0))
        for row in matrix
    )


def _as_matrix(array: np.ndarray) -> Matrix:
    return tuple(tuple(int(v) for v in row) for row in array.tolist())


@dataclass(frozen=True)
class FiniteWeylElement:
    """Element of the finite Weyl group W.

    Identity is the integer matrix acting on the pairing chart; ``word`` is the
    lexicographically smallest reduced word (0-based generator indices).
    """

    matrix: Matrix
    word: Tuple[int, ...] = field(compare=False)
    rank: int = field(compare=False, repr=False)

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def word_string(self) -> str:
        return "".join(f"s{i + 1}" for i in self.word) or "e"

    @property
    def support(self) -> frozenset:
        return frozenset(self.word)

    def as_array(self) -> np.ndarray:
        return np.array(self.matrix, dtype=np.int64)

    def apply(self, point: Sequence[Fraction]) -> Point:
        return mat_vec(self.matrix, point)

    def __str__(self) -> str:
        return self.word_string


@dataclass(frozen=True, eq=False)
class RootSystem:
    """Exact root datum plus its finite Weyl group.

    ``positive_roots`` are in simple-root coordinates, sorted by height; the last
    one is the highest root theta.  ``coroots`` are the matching coroots in
    simple-coroot coordinates and ``coroot_vectors`` the same coroots written
    in the pairing chart.
    """

    kind: RootSystemKind
    rank: int
    cartan: Matrix
    squared_lengths: Tuple[int, ...]
    positive_roots: Tuple[Tuple[int, ...], ...]
    coroots: Tuple[Tuple[int, ...], ...]
    coroot_vectors: Tuple[Tuple[int, ...], ...]
    rho: Tuple[Fraction, ...]
    weyl: Tuple[FiniteWeylElement, ...]
    _by_matrix: Dict[Matrix, FiniteWeylElement] = field(repr=False)

    # Roots ------------------------------------------------------------------
    @property
    def highest_root(self) -> Tuple[int, ...]:
        return self.positive_roots[-1]

    @property
    def theta_index(self) -> int:
        return len(self.positive_roots) - 1

    @property
    def simple_coroots(self) -> Tuple[Tuple[int, ...], ...]:
        """Simple coroots in coroot coordinates (unit vectors)."""
        return self.coroots[: self.rank]

    def root_pairing(self, index: int, point: Sequence[Fraction]) -> Fraction:
        """<beta, x> for the positive root with the given index."""
        return sum(
            (c * coord for c, coord in zip(self.positive_roots[index], point)), Fraction(0)
        )

    # Lattices ---------------------------------------------------------------
    def to_chart(self, lam: Sequence[int]) -> Point:
        """Chart point of the coroot-lattice vector with coroot coordinates ``lam``."""
        return tuple(
            Fraction(sum(self.cartan[i][j] * lam[j] for j in range(self.rank)))
            for i in range(self.rank)
        )

    def from_chart(self, point: Sequence[Fraction]) -> Optional[Tuple[int, ...]]:
        """Coroot coordinates of a chart point, or None if it is off the coroot lattice."""
        if self.rank == 1:
            solution = [Fraction(point[0]) / 2]
        else:
            (a, b), (c, d) = self.cartan
            det = a * d - b * c
            x, y = Fraction(point[0]), Fraction(point[1])
            solution = [(d * x - b * y) / det, (a * y - c * x) / det]
        if any(s.denominator != 1 for s in solution):
            return None
        return tuple(int(s) for s in solution)

    def is_dominant(self, lam: Sequence[int]) -> bool:
        return all(c >= 0 for c in self.to_chart(lam))

    # Finite Weyl group ------------------------------------------------------
    @property
    def identity(self) -> FiniteWeylElement:
        return self.weyl[0]

    @property
    def longest(self) -> FiniteWeylElement:
        return self.weyl[-1]

    @property
    def delta(self) -> int:
        """Length of the longest element (the dimension of K/I)."""
        return self.longest.length

    def element(self, matrix: Union[Matrix, np.ndarray]) -> FiniteWeylElement:
        if isinstance(matrix, np.ndarray):
            matrix = _as_matrix(matrix)
        return self._by_matrix[matrix]

    def element_from_word(self, word: Union[str, Sequence[int]]) -> FiniteWeylElement:
        """Element for a word given as generator indices or a string like 's1s2'."""
        if isinstance(word, str):
            text = word.strip()
            if text in ("", "e"):
                indices: List[int] = []
            else:
                parts = [p for p in text.split("s") if p]
                try:
                    indices = [int(p) - 1 for p in parts]
                except ValueError as exc:
                    raise ValueError(f"malformed Weyl word '{word}'") from exc
        else:
            indices = list(word)
        result = np.eye(self.rank, dtype=np.int64)
        for i in indices:
            if not 0 <= i < self.rank:
                raise ValueError(f"generator index {i + 1} out of range for {self.kind}")
            result = result @ _simple_reflection(self.cartan, i)
        return self.element(result)

    def multiply(self, u: FiniteWeylElement, w: FiniteWeylElement) -> FiniteWeylElement:
        return self.element(u.as_array() @ w.as_array())

    def inverse(self, w: FiniteWeylElement) -> FiniteWeylElement:
        return self.element_from_word(tuple(reversed(w.word)))

    def inversion_count(self, w: FiniteWeylElement) -> int:
        """Number of positive roots sent negative by w."""
        regular = w.apply(tuple(Fraction(1) for _ in range(self.rank)))
        # <beta, w x> < 0 for the dominant regular x ⇔ w^{-1} beta < 0
        return sum(1 for i in range(len(self.positive_roots)) if self.root_pairing(i, regular) < 0)


def _simple_reflection(cartan: Matrix, i: int) -> np.ndarray:
    """s_i(x) = x - x_i * alpha_i^vee, with alpha_i^vee the i-th column of the Cartan matrix."""
    rank = len(cartan)
    reflection = np.eye(rank, dtype=np.int64)
    for r in range(rank):
        reflection[r, i] -= cartan[r][i]
    return reflection


def _positive_roots(cartan: Matrix) -> Tuple[Tuple[int, ...], ...]:
    rank = len(cartan)
    simple = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        beta = frontier.pop()
        for i in range(rank):
            p = sum(beta[j] * cartan[j][i] for j in range(rank))
            image = tuple(b - p * int(j == i) for j, b in enumerate(beta))
            if image not in roots:
                roots.add(image)
                frontier.append(image)
    positive = [r for r in roots if all(c >= 0 for c in r)]
    return tuple(sorted(positive, key=lambda r: (sum(r), tuple(-c for c in r))))


def _coroot(cartan: Matrix, lengths: Tuple[int, ...], beta: Tuple[int, ...]) -> Tuple[int, ...]:
    rank = len(cartan)
    form = [[Fraction(cartan[i][j] * lengths[j], 2) for j in range(rank)] for i in range(rank)]
    norm = sum(beta[i] * beta[j] * form[i][j] for i in range(rank) for j in range(rank))
    coords = [Fraction(beta[j] * lengths[j]) / norm for j in range(rank)]
    if any(c.denominator != 1 for c in coords):
        raise ArithmeticError(f"coroot of {beta} is not integral")
    return tuple(int(c) for c in coords)


def _enumerate(cartan: Matrix) -> List[FiniteWeylElement]:
    rank = len(cartan)
    generators = [_simple_reflection(cartan, i) for i in range(rank)]
    start = np.eye(rank, dtype=np.int64)
    words: Dict[Matrix, Tuple[int, ...]] = {_as_matrix(start): ()}
    queue = deque([start])
    # breadth first with generators in order: the first word reaching an element is its lex-min reduced word
    while queue:
        current = queue.popleft()
        word = words[_as_matrix(current)]
        for i, generator in enumerate(generators):
            product = current @ generator
            key = _as_matrix(product)
            if key not in words:
                words[key] = word + (i,)
                queue.append(product)
    elements = [FiniteWeylElement(matrix=m, word=w, rank=rank) for m, w in words.items()]
    return sorted(elements, key=lambda e: (e.length, e.word))


def build_root_system(kind: Union[str, RootSystemKind]) -> RootSystem:
    """Build (or fetch from cache) the exact root datum of the given kind."""
    return _build_root_system(RootSystemKind.parse(kind))


@lru_cache(maxsize=None)
def _build_root_system(kind: RootSystemKind) -> RootSystem:
    cartan = _CARTAN[kind]
    lengths = _SQUARED_LENGTHS[kind]
    rank = len(cartan)
    positive = _positive_roots(cartan)
    coroots = tuple(_coroot(cartan, lengths, beta) for beta in positive)
    coroot_vectors = tuple(
        tuple(sum(cartan[i][j] * co[j] for j in range(rank)) for i in range(rank))
        for co in coroots
    )
    rho = tuple(Fraction(sum(beta[i] for beta in positive), 2) for i in range(rank))
    weyl = _enumerate(cartan)
    rs = RootSystem(
        kind=kind,
        rank=rank,
        cartan=cartan,
        squared_lengths=lengths,
        positive_roots=positive,
        coroots=coroots,
        coroot_vectors=coroot_vectors,
        rho=rho,
        weyl=tuple(weyl),
        _by_matrix={e.matrix: e for e in weyl},
    )
    logger.debug(f"Built root system {kind}: {len(positive)} positive roots, |W|={len(weyl)}")
    return rs


def enumerate_finite_weyl(rs: RootSystem) -> List[FiniteWeylElement]:
    """All elements of W ordered by length, then lexicographic reduced word."""
    return list(rs.weyl)


def pair(rs: RootSystem, mu: Sequence[int]) -> Fraction:
    """<mu, rho> for mu given in coroot coordinates."""
    return sum(
        (
            mu[j] * sum((rs.rho[i] * rs.cartan[i][j] for i in range(rs.rank)), Fraction(0))
            for j in range(rs.rank)
        ),
        Fraction(0),
    )


def is_full_support(w: FiniteWeylElement) -> bool:
    """True iff w lies in no proper standard parabolic subgroup."""
    return w.support == frozenset(range(w.rank))


def reduced_words(rs: RootSystem, w: FiniteWeylElement) -> List[Tuple[int, ...]]:
    """Every reduced word of w."""
    if w.length == 0:
        return [()]
    words = []
    for i in range(rs.rank):
        shorter = rs.multiply(w, rs.element_from_word((i,)))
        if shorter.length < w.length:
            words.extend(prefix + (i,) for prefix in reduced_words(rs, shorter))
    return sorted(words)


def dominant_coroots(rs: RootSystem, max_pairing: int) -> Iterator[Tuple[int, ...]]:
    """Dominant coroot-lattice vectors mu with <mu, rho> <= max_pairing."""
    ranges = [range(max_pairing + 1)] * rs.rank
    candidates = [()]
    for r in ranges:
        candidates = [c + (v,) for c in candidates for v in r]
    for mu in sorted(candidates, key=lambda m: (sum(m), m)):
        if rs.is_dominant(mu) and pair(rs, mu) <= max_pairing:
            yield mu
