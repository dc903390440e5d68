"""Command-line driver.

Subcommands: ``layout`` (run the pipeline, emit layout JSON / SVG),
``metrics`` (score layout files into a CSV table), ``aggregate`` (emit the
aggregation view), ``related`` (rank related nodes under one strategy), and
``serve`` (run the HTTP service).  Dataset names resolve against the literal
path, then ``$GEGRAPH_DATA_DIR``, then the bundled data directory.  File
output is atomic: written to a temp file and renamed into place.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from dataclasses import fields
from pathlib import Path

from . import explore, metrics as metrics_mod
from .graph_model import GraphFormatError, binnings_for, extend_graph, load_graph_file
from .layout import layout_from_json, layout_to_json, layout_to_svg
from .pipeline import (
    PipelineConfig,
    build_session,
    report_for,
    run_layout_pipeline,
    strategy_similarity,
)

DATA_DIR_ENV = "GEGRAPH_DATA_DIR"
BUNDLED_DATA = Path(__file__).resolve().parent / "data"

_CONFIG_FLOATS = {
    "p", "q", "r", "w", "t_ein", "t_eout",
    "confidence", "occlusion_threshold", "radius",
}
_CONFIG_INTS = {
    "dim", "window", "negatives", "epochs", "walk_length", "walks_per_node",
    "k", "iterations", "max_bins", "grid_size", "seed",
}


def resolve_dataset(name: str) -> Path:
    """Literal path first, then $GEGRAPH_DATA_DIR, then bundled datasets."""
    candidates = [Path(name)]
    env_dir = os.environ.get(DATA_DIR_ENV)
    roots = [Path(env_dir)] if env_dir else []
    roots.append(BUNDLED_DATA)
    for root in roots:
        candidates.append(root / name)
        candidates.append(root / f"{name}.json")
    for path in candidates:
        if path.is_file():
            return path
    raise FileNotFoundError(f"dataset {name!r} not found (tried {len(candidates)} paths)")


def atomic_write(path: Path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or Path("."), prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _emit(text: str, out: str | None) -> None:
    if out:
        atomic_write(Path(out), text)
    else:
        print(text)


def add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--dataset", required=True, help="graph file or bundled dataset name")
    for f in fields(PipelineConfig):
        if f.name == "dataset":
            continue
        flag = "--" + f.name.replace("_", "-")
        kind = float if f.name in _CONFIG_FLOATS else int
        assert f.name in _CONFIG_FLOATS or f.name in _CONFIG_INTS, f.name
        parser.add_argument(flag, type=kind, default=f.default, dest=f.name)


def config_from_args(args: argparse.Namespace) -> PipelineConfig:
    values = {f.name: getattr(args, f.name) for f in fields(PipelineConfig)}
    values["dataset"] = str(resolve_dataset(args.dataset))
    return PipelineConfig(**values)


def cmd_layout(args: argparse.Namespace) -> int:
    config = config_from_args(args)
    graph = load_graph_file(config.dataset)
    arts = run_layout_pipeline(graph, config)
    _emit(layout_to_json(arts.layout, graph.names, graph.edges), args.out)
    if args.svg:
        atomic_write(Path(args.svg), layout_to_svg(arts.layout, graph.names, graph.edges))
    return 0


def cmd_metrics(args: argparse.Namespace) -> int:
    rows = [",".join(metrics_mod.CSV_COLUMNS)]
    failures = 0
    for name in args.layouts:
        try:
            params, layout, _, edges = layout_from_json(Path(name).read_text())
            under = metrics_mod.LayoutUnderTest.from_layout(layout, edges)
            cfg = params.get("config", {}) if isinstance(params, dict) else {}
            report = metrics_mod.full_report(
                under,
                float(cfg.get("occlusion_threshold", metrics_mod.DEFAULT_OCCLUSION_THRESHOLD)),
                int(cfg.get("grid_size", metrics_mod.DEFAULT_GRID_SIZE)),
                float(cfg.get("radius", metrics_mod.DEFAULT_RADIUS)),
            )
            dataset = Path(cfg["dataset"]).stem if cfg.get("dataset") else Path(name).stem
            method = params.get("method", "unknown") if isinstance(params, dict) else "unknown"
            rows.append(report.csv_row(dataset, method))
        except (OSError, ValueError, KeyError, TypeError) as exc:
            print(f"warning: skipping {name}: {exc}", file=sys.stderr)
            failures += 1
    _emit("\n".join(rows), args.out)
    return 1 if failures else 0


def cmd_aggregate(args: argparse.Namespace) -> int:
    config = config_from_args(args)
    graph = load_graph_file(config.dataset)
    arts = run_layout_pipeline(graph, config)
    view = explore.build_aggregation(
        arts.layout, graph.edges, arts.communities, arts.centrality, graph.names
    )
    _emit(view.to_json(), args.out)
    return 0


def cmd_related(args: argparse.Namespace) -> int:
    config = config_from_args(args)
    graph = load_graph_file(config.dataset)
    extended = extend_graph(graph, binnings_for(graph, config.max_bins, config.confidence))
    index = explore.STRATEGIES.index(args.strategy) + 1
    similarity = strategy_similarity(extended, config, args.strategy, index)
    result = explore.related_nodes(
        args.node, args.strategy, args.top, {args.strategy: similarity}, graph.names
    )
    _emit(result.to_json(), args.out)
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .server import create_app

    config = config_from_args(args)
    graph = load_graph_file(config.dataset)
    state = build_session(graph, config)
    static = Path(args.static_dir) if args.static_dir else None
    app = create_app(state, static_dir=static)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gegraph",
        description="Embedding-guided graph layout, readability metrics, and exploration views.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_layout = sub.add_parser("layout", help="run the pipeline and write layout JSON")
    add_config_flags(p_layout)
    p_layout.add_argument("--out", help="layout JSON path (default: stdout)")
    p_layout.add_argument("--svg", help="also render an SVG to this path")
    p_layout.set_defaults(func=cmd_layout)

    p_metrics = sub.add_parser("metrics", help="score layout files into a CSV table")
    p_metrics.add_argument("layouts", nargs="*", help="layout JSON files")
    p_metrics.add_argument("--out", help="CSV path (default: stdout)")
    p_metrics.set_defaults(func=cmd_metrics)

    p_agg = sub.add_parser("aggregate", help="run the pipeline and write the aggregation view")
    add_config_flags(p_agg)
    p_agg.add_argument("--out", help="aggregation JSON path (default: stdout)")
    p_agg.set_defaults(func=cmd_aggregate)

    p_rel = sub.add_parser("related", help="rank related nodes under one strategy")
    add_config_flags(p_rel)
    p_rel.add_argument("--node", required=True, help="query node id")
    p_rel.add_argument("--strategy", required=True, choices=explore.STRATEGIES)
    p_rel.add_argument("--top", type=int, default=5, help="number of results")
    p_rel.add_argument("--out", help="result JSON path (default: stdout)")
    p_rel.set_defaults(func=cmd_related)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    add_config_flags(p_serve)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--static-dir", help="explorer UI bundle directory")
    p_serve.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GraphFormatError, FileNotFoundError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
