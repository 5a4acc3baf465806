"""Command-line entry point: ``costarnet <command> [options]``."""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
import time
from pathlib import Path
from typing import TYPE_CHECKING, Any, cast

import pandas as pd

from . import _config
from ._client import CostarNet
from ._exceptions import ConfigError, CostarNetError, exit_code_for
from ._tables import write_table
from ._version import dependency_versions, get_version
from .ergm import default_terms, fit_to_json, parse_terms
from .periods import lead_in_period, load_schedule, period_schedule
from .report import (
    DEFAULT_SUMMARY_TERM,
    SubgroupSpec,
    export_coefficient_summary,
    export_cross_coop_table,
    export_index_trend,
    export_model_table,
    export_period_summaries,
    render_index_svg,
)
from .synthetic import generate_dataset, write_dataset

if TYPE_CHECKING:
    from collections.abc import Sequence

    from .report import ClusteringVariant
    from .types.common import PeriodSpec, Region
    from .types.results import IndexResult, TermCheck

logger = logging.getLogger(__name__)

_LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def _regions(value: str) -> tuple[str, ...]:
    return tuple(part.strip() for part in value.split(",") if part.strip())


def get_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="costarnet",
        description="Cross-region co-starring network analysis.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {get_version()}")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="Log at DEBUG level")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="Log warnings only")
    parser.add_argument(
        "--workers",
        type=int,
        default=_config.workers,
        help="Worker processes (results do not depend on it)",
    )
    parser.add_argument("--progress", action="store_true", help="Show progress bars")
    parser.add_argument("--timing", action="store_true", help="Write timing.json")

    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--stars", required=True, help="Star CSV file")
    shared.add_argument("--works", required=True, help="Work CSV file")
    shared.add_argument("--cast", required=True, help="Cast CSV file")
    shared.add_argument("--regions", type=_regions, help="Comma-separated region labels")
    shared.add_argument("--from", dest="start_year", type=int, help="First year of the schedule")
    shared.add_argument("--to", dest="end_year", type=int, help="Last year of the schedule")
    window = shared.add_mutually_exclusive_group()
    window.add_argument("--window", type=int, help="Years per period")
    window.add_argument("--periods", help="JSON file with an explicit period list")
    shared.add_argument("--seed", type=int, default=_config.seed, help="Run seed")
    shared.add_argument("--out", required=True, help="Output directory")
    shared.add_argument(
        "--no-lead-in",
        dest="lead_in",
        action="store_false",
        help="Do not use a window before the schedule as the first lag",
    )
    shared.add_argument(
        "--max-cast-size",
        type=int,
        default=_config.max_cast_size,
        help="Reject works with larger casts",
    )

    commands = parser.add_subparsers(dest="command", required=True)

    describe = commands.add_parser("describe", parents=[shared], help="Period summaries")
    describe.add_argument("--clustering", choices=["local", "global"], default="local")
    describe.add_argument(
        "--export-networks", action="store_true", help="Write node/edge lists and GraphML"
    )
    describe.add_argument("--min-degree", type=int, default=0, help="Exported degree floor")

    index = commands.add_parser("index", parents=[shared], help="Cross-region index trend")
    index.add_argument("--replicates", type=int, default=_config.replicates)
    index.add_argument("--swap-mult", type=float, default=_config.swap_multiplier)
    index.add_argument(
        "--mirror", action="store_true", help="Also pair the first region with the third"
    )
    index.add_argument("--no-svg", dest="svg", action="store_false", help="Skip the chart")
    index.add_argument(
        "--count-successful", action="store_true", help="Count only accepted swaps"
    )

    ergm = commands.add_parser("ergm", parents=[shared], help="Per-period model fits")
    ergm.add_argument("--terms", help="JSON file with the term list")
    ergm.add_argument(
        "--gof-samples", type=int, default=0, help="Simulated networks per fit check"
    )
    ergm.add_argument("--dyad-cap", type=int, default=_config.dyad_cap)

    subgroups = commands.add_parser(
        "subgroups", parents=[shared], help="Subgroup cross-cooperation table"
    )
    subgroups.add_argument(
        "--fame-quantile", type=float, default=_config.DEFAULT_FAME_QUANTILE
    )
    subgroups.add_argument(
        "--generation-cutoff", type=int, default=_config.DEFAULT_GENERATION_CUTOFF
    )

    synth = commands.add_parser("synth", help="Write a synthetic dataset")
    synth.add_argument("--stars", dest="n_stars", type=int, default=500, help="Number of stars")
    synth.add_argument("--from", dest="start_year", type=int, default=1980)
    synth.add_argument("--to", dest="end_year", type=int, default=2014)
    synth.add_argument("--seed", type=int, default=_config.seed)
    synth.add_argument("--homophily", type=float, default=0.8)
    synth.add_argument("--out", required=True, help="Output directory")
    return parser


def _schedule(args: argparse.Namespace) -> list[PeriodSpec]:
    if args.periods is not None:
        return load_schedule(args.periods)
    if args.command == "index":
        start, end, window = _config.DEFAULT_INDEX_SCHEDULE
    else:
        start, end, window = _config.DEFAULT_ERGM_SCHEDULE
    return period_schedule(
        start if args.start_year is None else args.start_year,
        end if args.end_year is None else args.end_year,
        window if args.window is None else args.window,
    )


def _load_terms(path: str) -> tuple[dict[str, Any], ...]:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise ConfigError(f"Terms file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"Terms file {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, list):
        raise ConfigError(f"Terms file {path} must contain a JSON list")
    parse_terms(raw)
    return tuple(raw)


def build_config(args: argparse.Namespace) -> _config.RunConfig:
    """Turn parsed arguments into a validated :class:`RunConfig`."""
    if args.regions is not None:
        regions = args.regions
    elif args.command == "describe":
        regions = _config.DEFAULT_DESCRIBE_REGIONS
    else:
        regions = _config.DEFAULT_PAIR
    schedule = _schedule(args)
    if not schedule:
        raise ConfigError("The period schedule is empty")

    lead_in = None
    if args.lead_in and args.command in {"ergm", "subgroups"}:
        lead_in = lead_in_period(schedule)

    terms = None
    if args.command == "ergm":
        if args.terms is not None:
            terms = _load_terms(args.terms)
        else:
            terms = tuple(t.to_dict() for t in default_terms(regions[0]))

    options: dict[str, Any] = {}
    if args.command == "describe":
        options = {
            "clustering": args.clustering,
            "export_networks": args.export_networks,
            "min_degree": args.min_degree,
        }
    elif args.command == "index":
        options = {
            "replicates": args.replicates,
            "swap_multiplier": args.swap_mult,
            "count_successful": args.count_successful,
            "mirror": args.mirror,
        }
    elif args.command == "ergm":
        options = {"gof_samples": args.gof_samples, "dyad_cap": args.dyad_cap}
    elif args.command == "subgroups":
        options = {
            "fame_quantile": args.fame_quantile,
            "generation_cutoff": args.generation_cutoff,
        }

    return _config.RunConfig(
        command=args.command,
        stars_path=args.stars,
        works_path=args.works,
        cast_path=args.cast,
        out_dir=args.out,
        regions=tuple(cast("Sequence[Region]", regions)),
        periods=tuple(schedule),
        lead_in=lead_in,
        seed=args.seed,
        terms=terms,
        max_cast_size=args.max_cast_size,
        **options,
    ).validate()


def _mirror_region(r1: Region, r2: Region) -> Region | None:
    for region in _config.DEFAULT_DESCRIBE_REGIONS:
        if region not in (r1, r2):
            return region
    return None


def cmd_describe(net: CostarNet, config: _config.RunConfig, out: Path) -> list[Path]:
    """Period summary CSV, plus per-period network files on request."""
    summaries = net.networks.describe(
        config.periods,
        config.regions,
        clustering=cast("ClusteringVariant", config.clustering),
    )
    written = [export_period_summaries(summaries, config.regions, out / "summary.csv")]
    if config.export_networks:
        for period in config.periods:
            g = net.networks.project(period, config.regions)
            written.extend(
                net.networks.export(g, out / "networks", min_degree=config.min_degree)
            )
    return written


def cmd_index(
    net: CostarNet, config: _config.RunConfig, out: Path, *, svg: bool = True
) -> list[Path]:
    """Index trend CSV per region pair and a chart of all pairs."""
    r1, r2 = config.regions
    pairs = [(r1, r2)]
    if config.mirror:
        third = _mirror_region(r1, r2)
        if third is None:
            raise ConfigError(f"No third region to mirror {r1}-{r2} against")
        pairs.append((r1, third))

    series: dict[str, list[IndexResult]] = {}
    written: list[Path] = []
    for a, b in pairs:
        results = net.index.trend(
            config.periods,
            a,
            b,
            replicates=config.replicates,
            swap_multiplier=config.swap_multiplier,
            count_successful=config.count_successful,
        )
        series[f"{a}-{b}"] = results
        written.append(export_index_trend(results, out / f"index_{a}-{b}.csv"))
    if svg:
        written.append(
            render_index_svg(series, out / "index_trend.svg", title="Cross-region index")
        )
    return written


def _checks_frame_rows(checks: dict[str, list[TermCheck]]) -> list[dict[str, Any]]:
    return [{"period": period, **check} for period, items in checks.items() for check in items]


def cmd_ergm(net: CostarNet, config: _config.RunConfig, out: Path) -> list[Path]:
    """Fit JSON per period, coefficient summary, model table and fit checks."""
    r1, r2 = config.regions
    terms = parse_terms(config.terms or [t.to_dict() for t in default_terms(r1)])
    fits, checks = net.models.fit_periods(
        config.periods,
        r1,
        r2,
        terms,
        lead_in=config.lead_in,
        gof_samples=config.gof_samples,
        dyad_cap=config.dyad_cap,
    )
    written: list[Path] = []
    fit_dir = out / "fits"
    fit_dir.mkdir(parents=True, exist_ok=True)
    for label, result in fits.items():
        path = fit_dir / f"fit_{label}.json"
        path.write_text(fit_to_json(result), encoding="utf-8")
        written.append(path)
    if fits and all(DEFAULT_SUMMARY_TERM in result["terms"] for result in fits.values()):
        written.append(export_coefficient_summary(fits, out / "coefficient_summary.csv"))
    else:
        logger.info(
            "No %s term in every fit; skipping coefficient summary", DEFAULT_SUMMARY_TERM
        )
    written.append(export_model_table(fits, out / "model_table.csv"))
    if checks:
        frame = pd.DataFrame(
            _checks_frame_rows(checks),
            columns=["period", "term", "observed", "simulated_mean", "simulated_sd", "p_value"],
        )
        written.append(write_table(frame, out / "goodness_of_fit.csv"))
    return written


def cmd_subgroups(net: CostarNet, config: _config.RunConfig, out: Path) -> list[Path]:
    """Subgroup cross-cooperation table."""
    r1, r2 = config.regions
    table = net.subgroups.table(
        config.periods,
        r1,
        r2,
        SubgroupSpec(config.fame_quantile, config.generation_cutoff),
        lead_in=config.lead_in,
    )
    return [export_cross_coop_table(table, out / "subgroups.csv")]


def cmd_synth(args: argparse.Namespace) -> list[Path]:
    """Synthetic star/work/cast CSVs."""
    dataset = generate_dataset(
        args.n_stars,
        args.start_year,
        args.end_year,
        seed=args.seed,
        homophily=args.homophily,
    )
    return list(write_dataset(dataset, args.out))


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def write_manifest(out: Path, command: str, seed: int, files: Sequence[Path]) -> Path:
    """Write ``manifest.json`` listing versions and output checksums."""
    manifest = {
        "command": command,
        "seed": seed,
        "versions": dependency_versions(),
        "files": {
            path.relative_to(out).as_posix(): _sha256(path)
            for path in sorted(files, key=lambda p: p.relative_to(out).as_posix())
        },
    }
    path = out / "manifest.json"
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def run(args: argparse.Namespace) -> None:
    """Execute one parsed command."""
    started = time.perf_counter()
    out = Path(args.out)

    if args.command == "synth":
        out.mkdir(parents=True, exist_ok=True)
        written = cmd_synth(args)
        seed = args.seed
    else:
        config = build_config(args)
        out.mkdir(parents=True, exist_ok=True)
        config_path = out / "config.json"
        config_path.write_text(config.to_json(), encoding="utf-8")
        with CostarNet.from_files(
            config.stars_path,
            config.works_path,
            config.cast_path,
            max_cast_size=config.max_cast_size,
            seed=config.seed,
            workers=args.workers,
            progress=args.progress,
        ) as net:
            if config.command == "describe":
                written = cmd_describe(net, config, out)
            elif config.command == "index":
                written = cmd_index(net, config, out, svg=args.svg)
            elif config.command == "ergm":
                written = cmd_ergm(net, config, out)
            else:
                written = cmd_subgroups(net, config, out)
        written = [config_path, *written]
        seed = config.seed

    write_manifest(out, args.command, seed, written)
    elapsed = time.perf_counter() - started
    logger.info("%s finished in %.2fs; %d files in %s", args.command, elapsed, len(written), out)
    if args.timing:
        (out / "timing.json").write_text(
            json.dumps({"command": args.command, "wall_seconds": round(elapsed, 3)}, indent=2)
            + "\n",
            encoding="utf-8",
        )


def main(argv: Sequence[str] | None = None) -> int:
    """Console entry point; returns the process exit code."""
    args = get_parser().parse_args(argv)
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.WARNING
    else:
        level = logging.INFO
    logging.basicConfig(level=level, format=_LOG_FORMAT, stream=sys.stderr)

    try:
        run(args)
    except CostarNetError as exc:
        logger.error("%s", exc)
        return exit_code_for(exc)
    return 0


if __name__ == "__main__":
    sys.exit(main())
