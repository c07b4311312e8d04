"""Command-line front end: reproducible reports and parameter sweeps.

Settings resolve in precedence order: built-in defaults, then the --config
key=value file, then POWERGRAPH_* environment variables, then flags.  All
artifacts are JSON with sorted keys so identical config + seed reproduces
byte-identical files; csv/text formats add renderings next to the JSON.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__, matrices, metric, report, sequences, spectra
from .detour import DetourBudgetError, detour_matrix
from .graphs import Graph, GraphFormatError, build_power_graph, classify_partition
from .groups import GroupParams, ParameterError

COMMANDS = ("build", "spectra", "metric", "detour", "dds", "report", "ingest")
ENV_PREFIX = "POWERGRAPH_"


class UsageError(ValueError):
    """Invalid configuration; maps to exit code 2."""


@dataclass
class RunConfig:
    k: int = 2
    p: int = 3
    alphas: tuple[float, ...] = (0.5,)
    commands: tuple[str, ...] = ("report",)
    fmt: str = "json"
    out_dir: Path | None = None
    detour_budget_s: float = 60.0
    detour_oracle_max_n: int = 24
    tol: float = 1e-8
    seed: int = 0
    graph_path: Path | None = None
    graph_format: str = "edge-list"

    def validate(self) -> None:
        try:
            GroupParams(self.k, self.p)
        except ParameterError as exc:
            raise UsageError(str(exc)) from None
        if not self.alphas:
            raise UsageError("at least one --alpha is required")
        for alpha in self.alphas:
            if not 0.0 <= alpha <= 1.0:
                raise UsageError(f"alpha must lie in [0, 1], got {alpha}")
        for command in self.commands:
            if command not in COMMANDS:
                raise UsageError(f"unknown command {command!r}; choose from {COMMANDS}")
        if self.fmt not in ("json", "csv", "text"):
            raise UsageError(f"format must be json, csv or text, got {self.fmt!r}")
        if self.tol <= 0:
            raise UsageError("tol must be positive")
        if self.detour_budget_s <= 0:
            raise UsageError("detour time budget must be positive")
        if "ingest" in self.commands and self.graph_path is None:
            raise UsageError("ingest requires --graph PATH")
        if self.graph_format not in ("edge-list", "json"):
            raise UsageError("graph format must be edge-list or json")

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "p": self.p,
            "alphas": list(self.alphas),
            "commands": list(self.commands),
            "format": self.fmt,
            "detour_budget_s": self.detour_budget_s,
            "detour_oracle_max_n": self.detour_oracle_max_n,
            "tol": self.tol,
            "seed": self.seed,
        }


def ingest_graph(path: str | Path, fmt: str = "edge-list") -> Graph:
    """Load an external graph as edge-list text or canonical JSON."""
    text = Path(path).read_text(encoding="utf-8")
    if fmt == "edge-list":
        return Graph.from_edge_list(text)
    if fmt == "json":
        return Graph.from_json_dict(json.loads(text))
    raise UsageError(f"unknown graph format {fmt!r}")


def _read_config_file(path: Path) -> dict[str, str]:
    values: dict[str, str] = {}
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()
    return values


def _env_overrides() -> dict[str, str]:
    out = {}
    for key in ("k", "p", "alpha", "format", "out", "detour_budget", "tol", "seed"):
        value = os.environ.get(ENV_PREFIX + key.upper())
        if value is not None:
            out[key] = value
    return out


def _apply_kv(config: RunConfig, values: dict[str, str]) -> None:
    try:
        if "k" in values:
            config.k = int(values["k"])
        if "p" in values:
            config.p = int(values["p"])
        if "alpha" in values:
            config.alphas = tuple(float(x) for x in values["alpha"].split(",") if x)
        if "format" in values:
            config.fmt = values["format"]
        if "out" in values:
            config.out_dir = Path(values["out"])
        if "detour_budget" in values:
            config.detour_budget_s = float(values["detour_budget"])
        if "detour_time_budget_s" in values:
            config.detour_budget_s = float(values["detour_time_budget_s"])
        if "detour_oracle_max_n" in values:
            config.detour_oracle_max_n = int(values["detour_oracle_max_n"])
        if "tol" in values:
            config.tol = float(values["tol"])
        if "seed" in values:
            config.seed = int(values["seed"])
    except ValueError as exc:
        raise UsageError(f"bad config value: {exc}") from None


def parse_args(argv: list[str]) -> RunConfig:
    parser = argparse.ArgumentParser(
        prog="powergraph",
        description="Power-graph spectra, metric dimensions and detour distances "
        "for the two-generator group family, verified against oracles.",
    )
    parser.add_argument("commands", nargs="+", metavar="COMMAND", help=f"one or more of {COMMANDS}")
    parser.add_argument("--k", type=int, help="exponent k >= 2")
    parser.add_argument("--p", type=int, help="odd prime p")
    parser.add_argument("--alpha", type=float, action="append", help="repeatable; in [0, 1]")
    parser.add_argument("--format", dest="fmt", choices=("json", "csv", "text"))
    parser.add_argument("--out", type=Path, help="output directory (default: stdout summary only)")
    parser.add_argument("--detour-budget", type=float, help="detour search budget in seconds")
    parser.add_argument("--detour-oracle-max-n", type=int, help="largest n the detour oracle runs on")
    parser.add_argument("--tol", type=float, help="spectrum comparison tolerance")
    parser.add_argument("--seed", type=int, help="seed for randomized verification")
    parser.add_argument("--config", type=Path, help="key=value config file")
    parser.add_argument("--graph", type=Path, help="external graph file for ingest")
    parser.add_argument("--graph-format", choices=("edge-list", "json"), default=None)
    args = parser.parse_args(argv)

    config = RunConfig()
    if args.config is not None:
        if not args.config.exists():
            raise UsageError(f"config file not found: {args.config}")
        _apply_kv(config, _read_config_file(args.config))
    _apply_kv(config, _env_overrides())
    if args.k is not None:
        config.k = args.k
    if args.p is not None:
        config.p = args.p
    if args.alpha:
        config.alphas = tuple(args.alpha)
    if args.fmt:
        config.fmt = args.fmt
    if args.out is not None:
        config.out_dir = args.out
    if args.detour_budget is not None:
        config.detour_budget_s = args.detour_budget
    if args.detour_oracle_max_n is not None:
        config.detour_oracle_max_n = args.detour_oracle_max_n
    if args.tol is not None:
        config.tol = args.tol
    if args.seed is not None:
        config.seed = args.seed
    if args.graph is not None:
        config.graph_path = args.graph
    if args.graph_format is not None:
        config.graph_format = args.graph_format
    config.commands = tuple(args.commands)
    config.validate()
    return config


class _Writer:
    """Collects artifacts; writes them under the output directory when given."""

    def __init__(self, out_dir: Path | None):
        self.out_dir = out_dir
        self.artifacts: dict[str, str] = {}

    def emit(self, name: str, content: str) -> None:
        self.artifacts[name] = content
        if self.out_dir is not None:
            self.out_dir.mkdir(parents=True, exist_ok=True)
            (self.out_dir / name).write_text(content, encoding="utf-8")


def _dump(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _spectra_csv(payloads: list[dict]) -> str:
    lines = ["alpha,value,multiplicity,source"]
    for payload in payloads:
        alpha = payload["params"]["alpha"]
        for fam in payload["families"]:
            lines.append(f"{alpha!r},{fam['value']!r},{fam['mult']},{fam['source']}")
    return "\n".join(lines) + "\n"


def run(config: RunConfig, writer: _Writer | None = None, out=None) -> int:
    """Execute the configured commands; 0 on success, 1 on verification failure."""
    config.validate()
    out = out if out is not None else sys.stdout
    writer = writer or _Writer(config.out_dir)
    stem = f"k{config.k}-p{config.p}"

    if "ingest" in config.commands:
        graph = ingest_graph(config.graph_path, config.graph_format)
        writer.emit("ingested-graph.json", _dump(graph.to_json_dict()))
        if config.fmt == "text":
            writer.emit("ingested-graph.edges.txt", graph.to_edge_list())
        print(f"ingested graph: n={graph.n}, edges={graph.edge_count()}", file=out)

    needs_family = any(c in config.commands for c in ("build", "spectra", "metric", "detour", "dds", "report"))
    if not needs_family:
        return 0

    params = GroupParams(config.k, config.p)
    graph = build_power_graph(params)
    classes = classify_partition(graph, params)

    if "build" in config.commands:
        payload = graph.to_json_dict()
        payload["elements"] = [[label.eps, label.i] for label in graph.labels]
        payload["partition"] = {
            "e": classes.e,
            "u": classes.u,
            "h1": sorted(classes.h1),
            "h2": sorted(classes.h2),
            "h3": sorted(classes.h3),
        }
        writer.emit(f"{stem}-graph.json", _dump(payload))
        if config.fmt == "text":
            writer.emit(f"{stem}-graph.edges.txt", graph.to_edge_list())
        print(f"built power graph: n={graph.n}, edges={graph.edge_count()}", file=out)

    if "spectra" in config.commands:
        for alpha in config.alphas:
            closed = spectra.a_alpha_closed_form(params, alpha)
            numeric = spectra.sym_eigenvalues(matrices.a_alpha(graph, alpha))
            payload = report.spectrum_payload(params, alpha, closed, numeric)
            writer.emit(f"{stem}-alpha{alpha!r}-adjacency-spectrum.json", _dump(payload))
            closed_rd = spectra.rd_alpha_closed_form(params, alpha)
            numeric_rd = spectra.sym_eigenvalues(matrices.rd_alpha(graph, alpha))
            payload_rd = report.spectrum_payload(params, alpha, closed_rd, numeric_rd)
            writer.emit(f"{stem}-alpha{alpha!r}-reciprocal-spectrum.json", _dump(payload_rd))
        if config.fmt == "csv":
            payloads = [
                json.loads(writer.artifacts[f"{stem}-alpha{alpha!r}-adjacency-spectrum.json"])
                for alpha in config.alphas
            ]
            writer.emit(f"{stem}-adjacency-spectra.csv", _spectra_csv(payloads))
        print(f"spectra computed for alphas {list(config.alphas)}", file=out)

    if "metric" in config.commands:
        psi_report = metric.metric_dimension(graph)
        gsr = metric.mmd_graph(graph)
        cover_size, cover = metric.min_vertex_cover(gsr)
        payload = {
            "psi": {
                "bound": psi_report.lower_bound,
                "witness": list(psi_report.witness),
                "certified": psi_report.resolved,
                "value": psi_report.psi,
            },
            "sdim": {"value": cover_size, "cover_witness": list(cover)},
            "gsr_edges": [[i, j] for i, j in gsr.edges()],
        }
        writer.emit(f"{stem}-metric.json", _dump(payload))
        print(f"metric dimension {psi_report.psi}, strong metric dimension {cover_size}", file=out)

    if "detour" in config.commands:
        if graph.n <= config.detour_oracle_max_n:
            mat = detour_matrix(graph, time_budget_s=config.detour_budget_s)
            ecc, radius, diameter = sequences.detour_profile(mat)
            payload = {
                "oracle_verified": True,
                "radius": radius,
                "diameter": diameter,
                "eccentricities": [int(x) for x in ecc],
            }
            if config.fmt == "csv":
                writer.emit(f"{stem}-detour-matrix.csv", matrices.matrix_to_csv(mat))
        else:
            payload = {
                "oracle_verified": False,
                "note": "closed-form prediction only; instance above the oracle size cap",
                "predicted": sequences.family_detour_eccentricities(params),
            }
        writer.emit(f"{stem}-detour.json", _dump(payload))
        print(f"detour profile: {payload}", file=out)

    if "dds" in config.commands:
        dist = matrices.distance_matrix(graph)
        table = sequences.dds(graph, dist)
        payload = {
            "dds": table.to_json_dict(),
            "printed_comparison": sequences.compare_groupings(
                table.groups, sequences.family_dds_groups(params)
            ),
        }
        if graph.n <= config.detour_oracle_max_n:
            detour = detour_matrix(graph, time_budget_s=config.detour_budget_s)
            dtable = sequences.dds_detour(detour)
            payload["dds_detour"] = dtable.to_json_dict()
            payload["printed_detour_comparison"] = sequences.compare_groupings(
                dtable.groups, sequences.family_dds_detour_groups(params)
            )
        writer.emit(f"{stem}-dds.json", _dump(payload))
        if config.fmt == "text":
            writer.emit(f"{stem}-dds.txt", table.to_text())
        if config.fmt == "csv":
            writer.emit(f"{stem}-dds.csv", table.to_csv())
        print("distance degree sequences computed", file=out)

    if "report" in config.commands:
        payload = report.build_report(
            config.k,
            config.p,
            config.alphas,
            tol=config.tol,
            seed=config.seed,
            detour_budget_s=config.detour_budget_s,
            detour_oracle_max_n=config.detour_oracle_max_n,
            version=__version__,
        )
        payload["config"].update({"format": config.fmt})
        writer.emit(f"{stem}-report.json", _dump(payload))
        for check in payload["checks"]:
            print(f"{'PASS' if check['passed'] else 'FAIL'} {check['name']}", file=out)
        if not payload["passed"]:
            failing = [c["name"] for c in payload["checks"] if not c["passed"]]
            print(f"verification failed: {failing}", file=out)
            return 1
        print("all checks passed", file=out)
    return 0


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        config = parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    try:
        return run(config)
    except (UsageError, ParameterError, GraphFormatError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except DetourBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
