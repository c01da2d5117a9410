"""Command line front end.

    matchingframes exact   FILE [--format raw|tokens] [--threads k] [--oracle]
    matchingframes approx  FILE [--epsilon e]
    matchingframes decide  FILE [--stats]
    matchingframes gen     KIND N [M] [--alphabet s] [--seed x] [--frame u,d,l,r]
    matchingframes bench   --sizes 64,128 --modes exact,approx [--repetitions 3] [--plot FILE]

Results go to standard output as one JSON line (CSV for bench); logs and
diagnostics go to standard error. Exit codes: 0 frame found, 1 no frame,
2 rejected input.
"""
import argparse
import json
import logging
import os
import sys
import time
from typing import Dict, List, Optional

from matchingframes import (
    EXIT_FOUND,
    EXIT_INPUT_ERROR,
    EXIT_NONE,
    LOG_DATE,
    frame_to_dict,
    get_logger,
    logging_level,
    perimeter,
)
from matchingframes.errors import FrameFinderError, InvalidInputError, exit_code_description

logger = logging.getLogger("matchingframes.cli")


def _load_config(path: Optional[str]) -> Dict:

    if path is None:
        return {}

    try:
        with open(path, "r", encoding="utf-8") as f:
            raw = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise InvalidInputError(f"Cannot read config {path}: {e}")

    if not isinstance(raw, dict):
        raise InvalidInputError(f"Config {path} must hold a JSON object")
    return raw


def _merge(config: Dict, **flags) -> Dict:
    """Command line flags that were given override the config file."""

    merged = dict(config)
    for key, value in flags.items():
        if value is not None:
            merged[key] = value
    return merged


def _emit(record: Dict):
    sys.stdout.write(json.dumps(record, separators=(",", ":")) + "\n")
    sys.stdout.flush()


def result_record(frame, mode: str, elapsed_ms: float, epsilon: Optional[float] = None, **extra) -> Dict:
    """The one-line JSON result; a null frame carries no perimeter."""

    record = {"frame": frame_to_dict(frame)}
    if frame is not None:
        record["perimeter"] = perimeter(frame)
    record["mode"] = mode
    if epsilon is not None:
        record["epsilon"] = epsilon
    record["elapsed_ms"] = round(elapsed_ms, 3)
    record.update(extra)
    return record


def _solve_command(args, mode: str) -> int:

    from matchingframes.approx import approx_max_frame, count_interesting_triplets
    from matchingframes.exact import max_matching_frame
    from matchingframes.io.matrix_file import read_matrix
    from matchingframes.oracle import brute_max_frame
    from matchingframes.validators import SolverConfigValidators

    if getattr(args, "oracle", False):
        mode = "oracle"

    cfg = SolverConfigValidators.parse_solver_configs(_merge(
        _load_config(args.config),
        mode=mode,
        epsilon=getattr(args, "epsilon", None),
        threads=args.threads,
        format=args.format,
        progress=True if args.progress else None,
    ))

    M = read_matrix(args.path, cfg["format"]).matrix
    logger.info(f"{cfg['mode']} on {args.path}: {M.n}x{M.m}")

    start = time.perf_counter()
    extra = {}

    if cfg["mode"] == "exact":
        result = max_matching_frame(M, threads=cfg["threads"], progress=cfg["progress"])
        frame = result.frame
    elif cfg["mode"] == "oracle":
        frame = brute_max_frame(M)
    else:
        frame = approx_max_frame(M, cfg["epsilon"], threads=cfg["threads"], progress=cfg["progress"])
        if cfg["mode"] == "decide" and getattr(args, "stats", False):
            extra["triplets"] = count_interesting_triplets(M)

    elapsed = (time.perf_counter() - start) * 1000.0

    _emit(result_record(frame, cfg["mode"], elapsed, epsilon=cfg["epsilon"], **extra))
    return EXIT_FOUND if frame is not None else EXIT_NONE


def cmd_exact(args) -> int:
    return _solve_command(args, "exact")


def cmd_approx(args) -> int:
    return _solve_command(args, "approx")


def cmd_decide(args) -> int:
    return _solve_command(args, "decide")


def cmd_gen(args) -> int:

    from matchingframes.io.generators import MatrixGen
    from matchingframes.io.matrix_file import write_matrix
    from matchingframes.validators import GeneratorConfigValidators

    cfg = GeneratorConfigValidators.parse_generator_configs(_merge(
        _load_config(args.config),
        kind=args.kind,
        n=args.n,
        m=args.m,
        alphabet=args.alphabet,
        seed=args.seed,
        frame=args.frame,
    ))

    M = MatrixGen.generate(cfg)
    write_matrix(M, args.output, args.format or "raw")
    return EXIT_FOUND


def cmd_bench(args) -> int:

    from matchingframes.bench import growth_ratios, plot_summary, run_bench, summarize

    sizes = _int_list(args.sizes, "sizes")
    modes = [m.strip() for m in args.modes.split(",") if m.strip()]

    runs = run_bench(sizes, modes, repetitions=args.repetitions, epsilon=args.epsilon,
                     alphabet=args.alphabet, seed=args.seed, threads=args.threads or 1,
                     progress=args.progress)
    summary = summarize(runs)

    for row in growth_ratios(summary).iter_rows(named=True):
        if row["ratio"] is not None:
            logger.info(f"{row['mode']} size {row['size']}: x{row['ratio']:.2f} over the previous size")

    sys.stdout.write(summary.write_csv())
    sys.stdout.flush()

    if args.plot:
        plot_summary(summary, args.plot)

    return EXIT_FOUND


def _int_list(text: str, name: str) -> List[int]:
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise InvalidInputError(f"--{name} must be a comma separated list of integers, got '{text}'")

    if not values or any(v < 1 for v in values):
        raise InvalidInputError(f"--{name} needs positive integers, got '{text}'")
    return values


def build_parser() -> argparse.ArgumentParser:

    parser = argparse.ArgumentParser(prog="matchingframes", description="Maximum matching frames in 2d-strings.")
    parser.add_argument("--verbose", action="store_true", help="Debug logging.")
    parser.add_argument("--log-dir", default=None, help="Also log to DIR/YYYYMMDD.log.")

    commands = parser.add_subparsers(dest="command", required=True)

    def solver(name: str, handler, help_text: str):
        sub = commands.add_parser(name, help=help_text)
        sub.add_argument("path", help="Matrix file, - for standard input.")
        sub.add_argument("--format", choices=["raw", "tokens"], default=None)
        sub.add_argument("--threads", type=int, default=None)
        sub.add_argument("--progress", action="store_true", help="Show progress bars.")
        sub.add_argument("--config", default=None, help="JSON file with solver options.")
        sub.set_defaults(handler=handler)
        return sub

    exact = solver("exact", cmd_exact, "Maximum matching frame.")
    exact.add_argument("--oracle", action="store_true", help="Brute force instead (small inputs only).")

    approx = solver("approx", cmd_approx, "(1-eps)-approximate maximum matching frame.")
    approx.add_argument("--epsilon", type=float, default=None)

    decide = solver("decide", cmd_decide, "Whether any matching frame exists.")
    decide.add_argument("--stats", action="store_true", help="Report interesting triplets per column.")

    gen = commands.add_parser("gen", help="Write a generated matrix.")
    gen.add_argument("kind", help="random, alternating, all-equal, planted, distinct or little-endian.")
    gen.add_argument("n", type=int)
    gen.add_argument("m", type=int, nargs="?", default=None)
    gen.add_argument("--alphabet", type=int, default=None)
    gen.add_argument("--seed", type=int, default=None)
    gen.add_argument("--frame", default=None, help="Planted frame u,d,l,r.")
    gen.add_argument("--format", choices=["raw", "tokens"], default=None)
    gen.add_argument("--output", default="-")
    gen.add_argument("--config", default=None, help="JSON file with generator options.")
    gen.set_defaults(handler=cmd_gen)

    bench = commands.add_parser("bench", help="Median running times on random square matrices.")
    bench.add_argument("--sizes", default="32,64,128")
    bench.add_argument("--modes", default="approx")
    bench.add_argument("--repetitions", type=int, default=3)
    bench.add_argument("--epsilon", type=float, default=0.5)
    bench.add_argument("--alphabet", type=int, default=2)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--threads", type=int, default=None)
    bench.add_argument("--progress", action="store_true")
    bench.add_argument("--plot", default=None, help="Save a log-log plot to this file.")
    bench.set_defaults(handler=cmd_bench)

    return parser


def main(argv: Optional[List[str]] = None) -> int:

    parser = build_parser()
    args = parser.parse_args(argv)

    logfile = None
    if args.log_dir:
        os.makedirs(args.log_dir, exist_ok=True)
        logfile = os.path.join(args.log_dir, f"{LOG_DATE}.log")

    get_logger("matchingframes", logfile=logfile, level=logging.DEBUG if args.verbose else logging_level)

    try:
        code = args.handler(args)
    except FrameFinderError as e:
        logger.warning(f"rejected input: {e}")
        sys.stderr.write(f"matchingframes: {e}\n")
        code = EXIT_INPUT_ERROR

    logger.debug(f"exit {code}: {exit_code_description(code)}")
    return code


if __name__ == "__main__":
    sys.exit(main())
