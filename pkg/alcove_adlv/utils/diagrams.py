"""
Result diagrams: labeled alcove tilings, ASCII rasters, choice trees and superpieces.

SVG output goes through matplotlib's SVG backend with a fixed hash salt and
no date metadata, so identical input renders to identical bytes.
"""

import logging
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.collections import LineCollection, PolyCollection  # noqa: E402
import numpy as np  # noqa: E402
from graphviz import Digraph  # noqa: E402

from ..affine_weyl import AffineWeylGroup, Alcove  # noqa: E402
from ..folding import EASY, FoldOutcome, cf_dimension  # noqa: E402
from ..galleries import SuperpieceSpec  # noqa: E402
from ..root_data import RootSystem  # noqa: E402

logger = logging.getLogger(__name__)

SVG_SALT = "alcove-adlv"
DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


def chart_embedding(rs: RootSystem) -> np.ndarray:
    """Matrix E with E @ x the Euclidean position of the chart point x."""
    lengths = np.array(rs.squared_lengths, dtype=float)
    cartan = np.array(rs.cartan, dtype=float)
    roots = cartan * lengths[np.newaxis, :] / 2.0  # (alpha_i, alpha_j)
    coroots = 4.0 * roots / np.outer(lengths, lengths)
    # coroot j has chart vector cartan[:, j], so the chart Gram matrix is C^-T G C^-1
    inverse = np.linalg.inv(cartan)
    gram = inverse.T @ coroots @ inverse
    return np.linalg.cholesky(gram).T


def _save_svg(fig, output_path: Union[str, Path]) -> Path:
    path = Path(output_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with matplotlib.rc_context({"svg.hashsalt": SVG_SALT, "svg.fonttype": "path"}):
        fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return path


class AlcoveMapRenderer:
    """Draw a dimension map as a labeled tiling with the shrunken-chamber boundary in bold."""

    EMPTY_FILL = "#ffffff"
    NONEMPTY_FILL = "#e8eef7"
    BASE_FILL = "#f6d58e"
    EDGE_COLOR = "#9a9a9a"
    OVERLAY_COLOR = "#000000"

    def __init__(self, group: AffineWeylGroup):
        self.group = group
        self.embedding = chart_embedding(group.rs)

    # Public API -------------------------------------------------------------
    def render_svg(
        self,
        values: Dict[Alcove, Optional[int]],
        output_path: Union[str, Path],
        title: Optional[str] = None,
    ) -> dict:
        """Write the SVG and return a summary dict."""
        if self.group.rank == 1:
            fig = self._strip_figure(values)
        else:
            fig = self._tiling_figure(values)
        if title:
            fig.axes[0].set_title(title)
        path = _save_svg(fig, output_path)
        labeled = sum(1 for v in values.values() if v is not None)
        logger.info(f"Rendered {len(values)} alcoves ({labeled} labeled) to {path}")
        return {
            "success": True,
            "output_file": str(path),
            "alcoves_drawn": len(values),
            "labeled": labeled,
            "diagram_type": "matplotlib_svg",
        }

    def overlay_segments(self, values: Dict[Alcove, Optional[int]]) -> List[Tuple[Tuple[float, ...], Tuple[float, ...]]]:
        """Walls between a shrunken alcove and a non-shrunken one, both in the map."""
        segments = []
        for alcove in sorted(values, key=Alcove.sort_key):
            if not self.group.in_shrunken(alcove):
                continue
            corners = self.group.vertices(alcove)
            for index, (_, neighbor) in enumerate(self.group.walls(alcove)):
                if neighbor in values and not self.group.in_shrunken(neighbor):
                    ends = [self._xy(c) for i, c in enumerate(corners) if i != index]
                    segments.append((tuple(ends[0]), tuple(ends[-1])))
        return segments

    # Internal helpers -------------------------------------------------------
    def _xy(self, point: Sequence[Fraction]) -> np.ndarray:
        return self.embedding @ np.array([float(c) for c in point])

    def _tiling_figure(self, values: Dict[Alcove, Optional[int]]):
        fig, ax = plt.subplots(figsize=(8, 8))
        ordered = sorted(values, key=Alcove.sort_key)
        polygons, fills = [], []
        for alcove in ordered:
            polygons.append([self._xy(v) for v in self.group.vertices(alcove)])
            if alcove == self.group.base_alcove():
                fills.append(self.BASE_FILL)
            elif values[alcove] is None:
                fills.append(self.EMPTY_FILL)
            else:
                fills.append(self.NONEMPTY_FILL)
        if polygons:
            ax.add_collection(
                PolyCollection(polygons, facecolors=fills, edgecolors=self.EDGE_COLOR, linewidths=0.4)
            )
        segments = self.overlay_segments(values)
        if segments:
            ax.add_collection(LineCollection(segments, colors=self.OVERLAY_COLOR, linewidths=2.0))
        for alcove in ordered:
            if values[alcove] is None:
                continue
            x, y = self._xy(alcove.barycenter)
            ax.text(x, y, str(values[alcove]), ha="center", va="center", fontsize=6)
        if polygons:
            points = np.vstack([np.array(p) for p in polygons])
            ax.set_xlim(points[:, 0].min() - 0.2, points[:, 0].max() + 0.2)
            ax.set_ylim(points[:, 1].min() - 0.2, points[:, 1].max() + 0.2)
        ax.set_aspect("equal")
        ax.axis("off")
        return fig

    def _strip_figure(self, values: Dict[Alcove, Optional[int]]):
        fig, ax = plt.subplots(figsize=(10, 1.6))
        ordered = sorted(values, key=lambda a: a.barycenter)
        for alcove in ordered:
            left, right = sorted(float(v[0]) for v in self.group.vertices(alcove))
            fill = self.BASE_FILL if alcove == self.group.base_alcove() else (
                self.EMPTY_FILL if values[alcove] is None else self.NONEMPTY_FILL
            )
            ax.add_patch(plt.Rectangle((left, 0), right - left, 1, facecolor=fill, edgecolor=self.EDGE_COLOR))
            if values[alcove] is not None:
                ax.text((left + right) / 2, 0.5, str(values[alcove]), ha="center", va="center", fontsize=8)
        # the shrunken region of a line is everything outside [0, 1]
        ax.vlines([0, 1], 0, 1, colors=self.OVERLAY_COLOR, linewidths=2.0)
        if ordered:
            lows = [float(min(v[0] for v in self.group.vertices(a))) for a in ordered]
            highs = [float(max(v[0] for v in self.group.vertices(a))) for a in ordered]
            ax.set_xlim(min(lows) - 0.2, max(highs) + 0.2)
        ax.set_ylim(-0.1, 1.1)
        ax.axis("off")
        return fig


def ascii_grid(group: AffineWeylGroup, values: Dict[Alcove, Optional[int]], resolution: int = 4) -> str:
    """Row-major raster of the map: digits for dimensions, '.' for Empty, blank outside."""
    if group.rank == 1:
        ordered = sorted(values, key=lambda a: a.barycenter)
        return "".join(
            f"[{'.' if values[a] is None else DIGITS[min(values[a], len(DIGITS) - 1)]}]" for a in ordered
        ) + "\n"
    embedding = chart_embedding(group.rs)
    inverse = np.linalg.inv(embedding)
    corners = np.array([embedding @ np.array([float(c) for c in v]) for a in values for v in group.vertices(a)])
    if not len(corners):
        return ""
    step = 1.0 / resolution
    xs = np.arange(corners[:, 0].min() + step / 2, corners[:, 0].max(), step / 2)
    ys = np.arange(corners[:, 1].max() - step / 2, corners[:, 1].min(), -step)
    rows = []
    for y in ys:
        cells = []
        for x in xs:
            chart = inverse @ np.array([x, y])
            point = tuple(Fraction(float(c)).limit_denominator(10**6) for c in chart)
            try:
                alcove = group.alcove_at(point)
            except ValueError:
                cells.append(" ")
                continue
            if alcove not in values:
                cells.append(" ")
            elif values[alcove] is None:
                cells.append(".")
            else:
                cells.append(DIGITS[min(values[alcove], len(DIGITS) - 1)])
        rows.append("".join(cells).rstrip())
    return "\n".join(rows) + "\n"


class ChoiceTreeDiagram:
    """Graphviz rendering of a superpiece's choice tree."""

    NODE_STYLE = {"shape": "box", "style": "rounded", "fontname": "Helvetica", "fontsize": "10"}
    LEAF_STYLE = {"shape": "box", "style": "rounded,filled", "fillcolor": "#e8eef7", "fontname": "Helvetica"}

    def build(self, spec: SuperpieceSpec, outcomes: Sequence[FoldOutcome]) -> Digraph:
        dot = Digraph(comment=f"choice tree v1={spec.v1} m={spec.m}")
        dot.attr(rankdir="TB")
        dot.node("root", f"Omega\\nv1={spec.v1} m={spec.m}", **self.NODE_STYLE)
        seen = {"root"}
        for outcome in outcomes:
            parent = "root"
            for depth, (index, kind) in enumerate(outcome.choices):
                prefix = outcome.choices[: depth + 1]
                name = "n_" + "_".join(f"{j}{k[0]}" for j, k in prefix)
                if name not in seen:
                    seen.add(name)
                    dot.node(name, f"edge {index}", **self.NODE_STYLE)
                    dot.edge(parent, name, label=kind, style="dashed" if kind == EASY else "solid")
                parent = name
            leaf = "leaf_" + ("_".join(f"{j}{k[0]}" for j, k in outcome.choices) or "none")
            dot.node(leaf, f"{outcome.final}\\ncf={cf_dimension(outcome, spec)}", **self.LEAF_STYLE)
            dot.edge(parent, leaf)
        return dot

    def write(self, spec: SuperpieceSpec, outcomes: Sequence[FoldOutcome], output_path: Union[str, Path]) -> dict:
        """Write DOT source; rendering to an image needs the Graphviz binaries and is left to the caller."""
        dot = self.build(spec, outcomes)
        path = Path(output_path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(dot.source, encoding="utf-8")
        return {"success": True, "output_file": str(path), "leaves": len(outcomes), "diagram_type": "graphviz_dot"}


class SuperpieceDiagram:
    """Omega drawn in the apartment with its folding results labeled by cf-dimension."""

    PART_COLORS = {"gamma": "#c9dcf2", "gamma_c": "#f6d58e", "gamma_f": "#cfe8c4"}

    def __init__(self, group: AffineWeylGroup):
        self.group = group
        self.embedding = chart_embedding(group.rs)

    def _xy(self, point: Sequence[Fraction]) -> np.ndarray:
        return self.embedding @ np.array([float(c) for c in point])

    def render_svg(self, spec: SuperpieceSpec, pieces: Dict[Alcove, int], output_path: Union[str, Path]) -> dict:
        if self.group.rank == 1:
            raise ValueError("superpiece diagrams need a rank-two group")
        fig, ax = plt.subplots(figsize=(7, 7))
        for part in ("gamma", "gamma_c", "gamma_f"):
            polygons = [[self._xy(v) for v in self.group.vertices(a)] for a in getattr(spec, part)]
            ax.add_collection(
                PolyCollection(polygons, facecolors=self.PART_COLORS[part], edgecolors="#555555", linewidths=0.5)
            )
        finals = sorted(pieces, key=Alcove.sort_key)
        ax.add_collection(
            PolyCollection(
                [[self._xy(v) for v in self.group.vertices(a)] for a in finals],
                facecolors="none", edgecolors="#c0392b", linewidths=1.5,
            )
        )
        for alcove in finals:
            x, y = self._xy(alcove.barycenter)
            ax.text(x, y, str(pieces[alcove]), ha="center", va="center", fontsize=8, color="#c0392b")
        vx, vy = self._xy(spec.v1.point)
        ax.plot([vx], [vy], marker="o", color="#000000", markersize=3)
        everything = list(spec.omega) + finals
        points = np.array([self._xy(v) for a in everything for v in self.group.vertices(a)])
        ax.set_xlim(points[:, 0].min() - 0.3, points[:, 0].max() + 0.3)
        ax.set_ylim(points[:, 1].min() - 0.3, points[:, 1].max() + 0.3)
        ax.set_aspect("equal")
        ax.axis("off")
        path = _save_svg(fig, output_path)
        return {"success": True, "output_file": str(path), "pieces": len(pieces), "diagram_type": "matplotlib_svg"}
