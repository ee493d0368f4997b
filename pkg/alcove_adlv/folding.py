"""
Choice trees over a model gallery and their comprehensive folding results

Scanning a gallery for choice edges, branching hard/easy at each one and
turning every root-to-leaf path into a FoldOutcome whose final alcove carries
the cf-dimension l(Gamma) + l(Gamma^c) - n_hard - 2.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .affine_weyl import AffineWeylGroup, Alcove, Hyperplane
from .galleries import Gallery, SuperpieceSpec

logger = logging.getLogger(__name__)

HARD = "hard"
EASY = "easy"


@dataclass(frozen=True)
class FoldedGallery:
    """A gallery after some tail reflections; consecutive equal alcoves (stutters) are allowed."""

    alcoves: Tuple[Alcove, ...]

    @classmethod
    def from_gallery(cls, gallery: Gallery) -> "FoldedGallery":
        return cls(tuple(gallery.alcoves))

    def __len__(self) -> int:
        return len(self.alcoves)

    @property
    def final(self) -> Alcove:
        return self.alcoves[-1]

    def is_stutter(self, index: int) -> bool:
        return self.alcoves[index] == self.alcoves[index + 1]

    def fold(self, group: AffineWeylGroup, index: int, hyperplane: Hyperplane) -> "FoldedGallery":
        """Reflect everything after ``index`` across the hyperplane (an easy choice)."""
        tail = tuple(group.reflect(hyperplane, a) for a in self.alcoves[index + 1:])
        return FoldedGallery(self.alcoves[: index + 1] + tail)


@dataclass(frozen=True)
class FoldOutcome:
    """One root-to-leaf path of the choice tree."""

    final: Alcove
    n_hard: int
    n_easy: int
    fold_positions: Tuple[int, ...]
    choices: Tuple[Tuple[int, str], ...] = ()
    non_primal: bool = False


@dataclass
class SuperpieceResult:
    spec: SuperpieceSpec
    outcomes: List[FoldOutcome]
    pieces: Dict[Alcove, int] = field(default_factory=dict)
    collisions: List[Tuple[Alcove, int, int]] = field(default_factory=list)

    @property
    def non_primal(self) -> int:
        return sum(1 for o in self.outcomes if o.non_primal)


def next_choice_edge(
    group: AffineWeylGroup, gallery: FoldedGallery, from_index: int
) -> Optional[Tuple[int, Hyperplane]]:
    """Minimal j >= from_index whose non-stutter edge crosses a hyperplane back toward C_M."""
    origin = group.base_alcove().barycenter
    alcoves = gallery.alcoves
    for j in range(from_index, len(alcoves) - 1):
        if gallery.is_stutter(j):
            continue
        hyperplane = group.separating_hyperplane(alcoves[j], alcoves[j + 1])
        if group.separates(hyperplane, origin, alcoves[j].barycenter):
            return j, hyperplane
    return None


def _is_non_primal(choices: Sequence[Tuple[int, str]], fold_start: Optional[int]) -> bool:
    seen_easy = False
    for index, kind in choices:
        if seen_easy or (fold_start is not None and index < fold_start):
            return True
        seen_easy = seen_easy or kind == EASY
    return False


def enumerate_outcomes(
    group: AffineWeylGroup, omega: Gallery, fold_start: Optional[int] = None
) -> List[FoldOutcome]:
    """Depth-first walk of the choice tree, hard branch first.

    ``fold_start`` is the index where Gamma^f begins; when given, outcomes with
    a choice edge before it (or any choice after an easy one) are marked non-primal.
    """
    outcomes: List[FoldOutcome] = []
    stack: List[Tuple[FoldedGallery, int, Tuple[Tuple[int, str], ...]]] = [
        (FoldedGallery.from_gallery(omega), 0, ())
    ]
    while stack:
        gallery, start, choices = stack.pop()
        found = next_choice_edge(group, gallery, start)
        if found is None:
            outcomes.append(
                FoldOutcome(
                    final=gallery.final,
                    n_hard=sum(1 for _, kind in choices if kind == HARD),
                    n_easy=sum(1 for _, kind in choices if kind == EASY),
                    fold_positions=tuple(j for j, kind in choices if kind == EASY),
                    choices=choices,
                    non_primal=_is_non_primal(choices, fold_start),
                )
            )
            continue
        j, hyperplane = found
        stack.append((gallery.fold(group, j, hyperplane), j + 1, choices + ((j, EASY),)))
        stack.append((gallery, j + 1, choices + ((j, HARD),)))
    return outcomes


def cf_dimension(outcome: FoldOutcome, spec: SuperpieceSpec) -> int:
    return len(spec.gamma) + len(spec.gamma_c) - outcome.n_hard - 2


def fold_superpiece(group: AffineWeylGroup, spec: SuperpieceSpec) -> SuperpieceResult:
    """All outcomes of one superpiece, reduced to the maximal cf-dimension per final alcove."""
    outcomes = enumerate_outcomes(group, spec.omega, spec.fold_start)
    result = SuperpieceResult(spec=spec, outcomes=outcomes)
    for outcome in outcomes:
        value = cf_dimension(outcome, spec)
        previous = result.pieces.get(outcome.final)
        if previous is None:
            result.pieces[outcome.final] = value
        elif previous != value:
            result.collisions.append((outcome.final, previous, value))
            result.pieces[outcome.final] = max(previous, value)
    for final, first, second in result.collisions:
        logger.warning(
            f"Superpiece v1={spec.v1} m={spec.m}: final {final} reached with cf {first} and {second}"
        )
    if result.non_primal:
        logger.warning(f"Superpiece v1={spec.v1} m={spec.m}: {result.non_primal} non-primal outcomes")
    return result


def superpiece_map(group: AffineWeylGroup, spec: SuperpieceSpec) -> Dict[Alcove, int]:
    return dict(fold_superpiece(group, spec).pieces)
