"""
Command-line interface for alcove-adlv

alcove-adlv {compute|render|check|export|superpiece} ...

Exit codes: 0 success, 1 failed check or unstable map, 2 invalid configuration or input.
"""

import argparse
import json
import logging
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from .adlv import (
    ALL_VERTICES,
    FUNDAMENTAL_DOMAIN,
    MODES,
    DimensionMap,
    DimensionMapBuilder,
    audit_nonspecial,
    audit_single_dimension,
    canonical_key,
    check_symmetry,
    easy_bound_violations,
    formula_eval,
    k_level_dimension,
    mu_spec,
    q1_is_unique,
)
from .affine_weyl import AffineWeylGroup
from .config import Config, get_config
from .errors import AdlvError, ConfigError, MapFileError, RadiusTooSmall, VertexInBaseAlcove
from .folding import cf_dimension, fold_superpiece
from .galleries import GalleryBuilder
from .mapfile import (
    MapFile,
    compare_golden,
    dumps,
    export_csv,
    golden_path,
    read_golden,
    read_mapfile,
    write_mapfile,
)
from .root_data import RootSystemKind, dominant_coroots
from .utils.diagrams import AlcoveMapRenderer, ChoiceTreeDiagram, SuperpieceDiagram, ascii_grid
from .utils.path_utils import default_output_name, resolve_input_path, resolve_output_path

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2

# the easy-choice audit runs over this radius at most
EASY_AUDIT_RADIUS = 8


@dataclass
class RunConfig:
    group: RootSystemKind
    radius: int
    window: int
    mode: str = ALL_VERTICES
    output: Optional[str] = None
    format: str = "json"
    workers: int = 1
    allow_unstable: bool = False

    @classmethod
    def from_args(cls, args: argparse.Namespace, config: Config) -> "RunConfig":
        compute = config.compute
        window = compute.window if getattr(args, "window", None) is None else args.window
        radius = getattr(args, "radius", None)
        if radius is None:
            radius = window + 4 if compute.radius is None else compute.radius
        run = cls(
            group=RootSystemKind.parse(getattr(args, "group", None) or compute.group),
            radius=radius,
            window=window,
            mode=getattr(args, "mode", None) or compute.mode,
            output=getattr(args, "output", None),
            format=getattr(args, "format", None) or "json",
            workers=getattr(args, "workers", None) or compute.workers,
            allow_unstable=bool(getattr(args, "allow_unstable", False) or compute.allow_unstable),
        )
        run.validate()
        return run

    def validate(self) -> None:
        if self.window < 0:
            raise ConfigError(f"window must be non-negative, got {self.window}")
        if self.radius < 1 or self.radius < math.ceil(self.window / 2):
            raise ConfigError(f"radius {self.radius} is too small for window {self.window}")
        if self.mode not in MODES:
            raise ConfigError(f"unknown mode '{self.mode}'")
        if self.workers < 1:
            raise ConfigError(f"workers must be positive, got {self.workers}")

    def builder(self, mode: Optional[str] = None) -> DimensionMapBuilder:
        return DimensionMapBuilder(AffineWeylGroup.for_kind(self.group), mode=mode or self.mode, workers=self.workers)


def _emit(text: str, output: Optional[Path]) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        output.parent.mkdir(parents=True, exist_ok=True)
        output.write_text(text, encoding="utf-8")
        logger.info(f"Wrote {output}")


def _report(suite: str, failures: List[Dict[str, Any]], **details: Any) -> int:
    report = {"suite": suite, "passed": not failures, "failures": failures[:20], **details}
    sys.stdout.write(json.dumps(report, indent=2, sort_keys=True, default=str) + "\n")
    if failures:
        logger.error(f"check {suite} failed: {len(failures)} failures, first: {failures[0]}")
        return EXIT_FAILED
    logger.info(f"check {suite} passed")
    return EXIT_OK


# Commands -------------------------------------------------------------------
def cmd_compute(args: argparse.Namespace, config: Config) -> int:
    run = RunConfig.from_args(args, config)
    if run.format not in ("json", "csv"):
        raise ConfigError(f"compute writes json or csv, not {run.format}")
    try:
        dimension_map = run.builder().build(run.radius, run.window, allow_unstable=run.allow_unstable)
    except RadiusTooSmall as exc:
        logger.error(f"{exc}; raise --radius or pass --allow-unstable")
        return EXIT_FAILED
    mapfile = MapFile.from_dimension_map(dimension_map)
    if run.output == "-":
        sys.stdout.write(dumps(mapfile))
        return EXIT_OK
    output = resolve_output_path(config, run.output, default_output_name(run.group.value, run.window, run.format))
    if run.format == "csv":
        export_csv(mapfile, output)
    else:
        write_mapfile(mapfile, output)
    return EXIT_OK


def cmd_render(args: argparse.Namespace, config: Config) -> int:
    mapfile = read_mapfile(resolve_input_path(config, args.map, [".json"]))
    group = AffineWeylGroup.for_kind(mapfile.group)
    values = mapfile.alcove_values()
    fmt = args.format or "svg"
    if fmt == "ascii":
        _emit(ascii_grid(group, values), None if not args.output else Path(args.output))
        return EXIT_OK
    if fmt != "svg":
        raise ConfigError(f"render writes svg or ascii, not {fmt}")
    output = resolve_output_path(config, args.output, default_output_name(mapfile.group.value, mapfile.window, "svg"))
    AlcoveMapRenderer(group).render_svg(values, output)
    return EXIT_OK


def cmd_export(args: argparse.Namespace, config: Config) -> int:
    mapfile = read_mapfile(resolve_input_path(config, args.map, [".json"]))
    output = resolve_output_path(config, args.output, default_output_name(mapfile.group.value, mapfile.window, "csv"))
    export_csv(mapfile, output)
    return EXIT_OK


def check_formula(dimension_map: DimensionMap) -> List[Dict[str, Any]]:
    group = AffineWeylGroup.for_kind(dimension_map.group)
    failures = []
    for alcove, value in dimension_map.sorted_entries():
        if not group.in_shrunken(alcove):
            continue
        expected = formula_eval(group, alcove)
        if expected != value:
            failures.append({"alcove": str(alcove), "formula": expected, "pipeline": value})
    return failures


def check_mu_rho(kind: RootSystemKind, max_pairing: int, radius: Optional[int], workers: int) -> List[Dict[str, Any]]:
    group = AffineWeylGroup.for_kind(kind)
    window = 2 * max_pairing + group.rs.delta
    dimension_map = DimensionMapBuilder(group, workers=workers).build(radius or window, window)
    failures = []
    for mu in dominant_coroots(group.rs, max_pairing):
        spec = mu_spec(group, mu)
        value = k_level_dimension(spec, dimension_map)
        if value != spec.pairing:
            failures.append({"mu": list(mu), "pairing": spec.pairing, "dimension": value})
    return failures


def check_properties(run: RunConfig) -> List[Dict[str, Any]]:
    group = AffineWeylGroup.for_kind(run.group)
    failures: List[Dict[str, Any]] = []
    try:
        dimension_map = run.builder(ALL_VERTICES).build(run.radius, run.window)
    except RadiusTooSmall as exc:
        return [{"property": "stability", "changed": [str(a) for a in exc.changed[:5]]}]
    for a, b, left, right in check_symmetry(group, dimension_map):
        failures.append({"property": "symmetry", "alcove": str(a), "image": str(b), "values": [left, right]})
    if run.group == RootSystemKind.A2:
        for alcove, dims in audit_single_dimension(dimension_map).items():
            failures.append({"property": "single-dimension", "alcove": str(alcove), "dims": dims})
    if run.group == RootSystemKind.C2:
        for alcove, records in audit_nonspecial(dimension_map).items():
            failures.append({"property": "non-special", "alcove": str(alcove),
                             "pieces": [(str(r.v1), r.dim) for r in records]})
    builder = GalleryBuilder(group)
    for vertex, m, n_easy in easy_bound_violations(builder, min(run.radius, EASY_AUDIT_RADIUS)):
        failures.append({"property": "easy-bound", "v1": str(vertex), "m": m, "n_easy": n_easy})
    for vertex in builder.vertices_within(run.radius):
        if not q1_is_unique(builder, vertex):
            failures.append({"property": "q1-unique", "v1": str(vertex)})
    if group.rank > 1:
        reduced = run.builder(FUNDAMENTAL_DOMAIN).build(run.radius, run.window)
        for alcove in sorted(dimension_map.entries, key=lambda a: canonical_key(group, a)):
            if reduced.entries.get(alcove) != dimension_map.entries[alcove]:
                failures.append({"property": "fundamental-domain", "alcove": str(alcove),
                                 "values": [dimension_map.entries[alcove], reduced.entries.get(alcove)]})
    return failures


def cmd_check(args: argparse.Namespace, config: Config) -> int:
    run = RunConfig.from_args(args, config)
    if args.suite == "formula":
        dimension_map = run.builder().build(run.radius, run.window, allow_unstable=run.allow_unstable)
        return _report("formula", check_formula(dimension_map), group=run.group.value, window=run.window)
    if args.suite == "mu-rho":
        failures = check_mu_rho(run.group, args.max_pairing, args.radius, run.workers)
        return _report("mu-rho", failures, group=run.group.value, max_pairing=args.max_pairing)
    if args.suite == "golden":
        if args.map:
            mapfile = read_mapfile(resolve_input_path(config, args.map, [".json"]))
        else:
            mapfile = MapFile.from_dimension_map(run.builder().build(run.radius, run.window, run.allow_unstable))
        golden = read_golden(args.golden or golden_path(mapfile.group))
        return _report("golden", compare_golden(mapfile, golden), group=mapfile.group.value, window=mapfile.window)
    return _report("properties", check_properties(run), group=run.group.value, window=run.window)


def _parse_coordinate(text: str) -> Fraction:
    try:
        return Fraction(text)
    except ValueError as exc:
        raise ConfigError(f"bad vertex coordinate '{text}'") from exc


def cmd_superpiece(args: argparse.Namespace, config: Config) -> int:
    group = AffineWeylGroup.for_kind(args.group or config.compute.group)
    if len(args.vertex) != group.rank:
        raise ConfigError(f"--vertex needs {group.rank} coordinates for {group.kind}")
    builder = GalleryBuilder(group)
    try:
        vertex = builder.vertex([_parse_coordinate(c) for c in args.vertex])
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    try:
        specs = [s for s in builder.superpiece_specs(vertex) if args.m is None or s.m == args.m]
    except VertexInBaseAlcove as exc:
        raise ConfigError(str(exc)) from exc
    if not specs:
        raise ConfigError(f"no superpiece at {vertex} with m={args.m}")
    spec = specs[0]
    result = fold_superpiece(group, spec)
    fmt = args.format or "json"
    stem = f"superpiece_{group.kind}_{'_'.join(args.vertex).replace('/', '-')}_m{spec.m}"
    if fmt == "json":
        document = {
            "group": group.kind.value,
            "v1": [str(c) for c in vertex.point],
            "special": vertex.special,
            "m": spec.m,
            "radius": spec.radius,
            "omega": [str(a) for a in spec.omega],
            "outcomes": [
                {"final": str(o.final), "n_hard": o.n_hard, "n_easy": o.n_easy,
                 "fold_positions": list(o.fold_positions), "cf": cf_dimension(o, spec),
                 "non_primal": o.non_primal}
                for o in result.outcomes
            ],
            "pieces": {str(a): d for a, d in sorted(result.pieces.items(), key=lambda i: i[0].sort_key())},
        }
        text = json.dumps(document, indent=2, sort_keys=True) + "\n"
        _emit(text, None if not args.output else resolve_output_path(config, args.output, stem + ".json"))
    elif fmt == "dot":
        ChoiceTreeDiagram().write(spec, result.outcomes, resolve_output_path(config, args.output, stem + ".dot"))
    elif fmt == "svg":
        SuperpieceDiagram(group).render_svg(spec, result.pieces, resolve_output_path(config, args.output, stem + ".svg"))
    else:
        raise ConfigError(f"superpiece writes json, dot or svg, not {fmt}")
    return EXIT_OK


# Parser -----------------------------------------------------------------------
def _add_run_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--group', '-g', choices=[k.value for k in RootSystemKind], help='Root system (default from config)')
    parser.add_argument('--radius', type=int, help='Vertex radius R (default: window + 4)')
    parser.add_argument('--window', type=int, help='Certified window L')
    parser.add_argument('--mode', choices=MODES, help='Vertex enumeration mode')
    parser.add_argument('--workers', type=int, help='Worker processes')
    parser.add_argument('--allow-unstable', action='store_true', help='Keep maps that change between R-1 and R')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='alcove-adlv', description='Dimensions of affine Deligne-Lusztig varieties by gallery folding')
    parser.add_argument('--verbose', '-v', action='store_true', help='Verbose logging')
    sub = parser.add_subparsers(dest='command', required=True)

    compute = sub.add_parser('compute', help='Compute a dimension map')
    _add_run_options(compute)
    compute.add_argument('--format', choices=['json', 'csv'], help='Output format (default: json)')
    compute.add_argument('--output', '--out', '-o', help="Output file ('-' for stdout)")

    render = sub.add_parser('render', help='Render a MapFile')
    render.add_argument('map', help='MapFile JSON')
    render.add_argument('--format', choices=['svg', 'ascii'], help='Diagram format (default: svg)')
    render.add_argument('--output', '--out', '-o', help='Output file')

    check = sub.add_parser('check', help='Run a check suite')
    check.add_argument('suite', choices=['formula', 'mu-rho', 'golden', 'properties'])
    _add_run_options(check)
    check.add_argument('--max-pairing', type=int, default=5, help='Largest <mu, rho> for mu-rho (default: 5)')
    check.add_argument('--map', help='MapFile for the golden suite (computed when omitted)')
    check.add_argument('--golden', help='Golden CSV (default: packaged golden table)')

    export = sub.add_parser('export', help='Export a MapFile to CSV')
    export.add_argument('map', help='MapFile JSON')
    export.add_argument('--output', '--out', '-o', help='Output CSV')

    superpiece = sub.add_parser('superpiece', help='Fold one superpiece')
    superpiece.add_argument('--group', '-g', choices=[k.value for k in RootSystemKind])
    superpiece.add_argument('--vertex', nargs='+', required=True, help='Vertex in pairing coordinates, e.g. -2 -2')
    superpiece.add_argument('--m', type=int, help='Star distance between Q1 and zQ1')
    superpiece.add_argument('--format', choices=['json', 'dot', 'svg'], help='Output format (default: json)')
    superpiece.add_argument('--output', '--out', '-o', help='Output file')
    return parser


COMMANDS = {
    'compute': cmd_compute,
    'render': cmd_render,
    'check': cmd_check,
    'export': cmd_export,
    'superpiece': cmd_superpiece,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = get_config()
    except ConfigError as exc:
        sys.stderr.write(f"alcove-adlv: {exc}\n")
        return EXIT_INVALID
    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)

    try:
        return COMMANDS[args.command](args, config)
    except (MapFileError, ConfigError) as exc:
        logger.error(f"{args.command}: {exc}")
        sys.stderr.write(f"alcove-adlv: {exc}\n")
        return EXIT_INVALID
    except RadiusTooSmall as exc:
        logger.error(f"{args.command}: {exc}")
        sys.stderr.write(f"alcove-adlv: {exc}\n")
        return EXIT_FAILED
    except (AdlvError, ValueError) as exc:
        logger.error(f"{args.command}: {exc}")
        sys.stderr.write(f"alcove-adlv: {exc}\n")
        return EXIT_FAILED


if __name__ == '__main__':
    sys.exit(main())
