"""Timing harness: generated square instances, median wall time per size and mode."""
import logging
import time
from typing import List, Optional, Sequence

import polars as pl
from tqdm import tqdm

from matchingframes import DECIDE_EPSILON, DEFAULT_EPSILON, perimeter
from matchingframes.approx import approx_max_frame
from matchingframes.errors import InvalidInputError
from matchingframes.exact import max_matching_frame
from matchingframes.io.generators import MatrixGen

logger = logging.getLogger(__name__)

SUPPORTED_BENCH_MODES = {
                "exact",
                "approx",
                "decide"
                }


def _solve(M, mode: str, epsilon: float, threads: int):

    if mode == "exact":
        return max_matching_frame(M, threads=threads).frame
    if mode == "approx":
        return approx_max_frame(M, epsilon, threads=threads)
    return approx_max_frame(M, DECIDE_EPSILON, threads=threads)


def run_bench(sizes: Sequence[int], modes: Sequence[str], repetitions: int = 3,
              epsilon: float = DEFAULT_EPSILON, alphabet: int = 2, seed: int = 0,
              threads: int = 1, progress: bool = False) -> pl.DataFrame:
    """
    One row per run: size, mode, run, ms, perimeter (null without a frame).
    Run k of every size uses seed + k, so all modes see the same matrices.
    """

    for mode in modes:
        if mode not in SUPPORTED_BENCH_MODES:
            raise InvalidInputError(f"Invalid bench mode: {mode}, supported modes include: {SUPPORTED_BENCH_MODES}")

    if repetitions < 1:
        raise InvalidInputError(f"repetitions must be >= 1, got {repetitions}")

    rows = []
    total = len(sizes) * len(modes) * repetitions

    with tqdm(total=total, desc="Bench", unit="run", disable=not progress) as pbar:
        for size in sizes:
            for run in range(repetitions):
                M = MatrixGen.random(size, size, alphabet, seed + run)

                for mode in modes:
                    start = time.perf_counter()
                    frame = _solve(M, mode, epsilon, threads)
                    elapsed = (time.perf_counter() - start) * 1000.0

                    rows.append({
                        "size": size,
                        "mode": mode,
                        "run": run,
                        "ms": elapsed,
                        "perimeter": None if frame is None else perimeter(frame),
                    })

                    logger.debug(f"{mode} {size}x{size} run {run}: {elapsed:.1f} ms")
                    pbar.update(1)

    return pl.DataFrame(rows, schema={"size": pl.Int64, "mode": pl.Utf8, "run": pl.Int64,
                                      "ms": pl.Float64, "perimeter": pl.Int64})


def summarize(runs: pl.DataFrame) -> pl.DataFrame:
    """Median milliseconds per (size, mode)."""

    return (
        runs.group_by(["size", "mode"])
        .agg(pl.col("ms").median().alias("median_ms"))
        .sort(["mode", "size"])
        .select(["size", "mode", "median_ms"])
    )


def growth_ratios(summary: pl.DataFrame) -> pl.DataFrame:
    """Median time ratio between consecutive sizes of each mode."""

    return (
        summary.sort(["mode", "size"])
        .with_columns((pl.col("median_ms") / pl.col("median_ms").shift(1).over("mode")).alias("ratio"))
    )


def plot_summary(summary: pl.DataFrame, path: str, title: Optional[str] = None):

    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(8, 5))

    modes: List[str] = sorted(summary["mode"].unique().to_list())
    for mode in modes:
        part = summary.filter(pl.col("mode") == mode).sort("size")
        ax.plot(part["size"].to_list(), part["median_ms"].to_list(), marker="o", label=mode)

    ax.set_xscale("log", base=2)
    ax.set_yscale("log")
    ax.set_xlabel("n = m")
    ax.set_ylabel("median time (ms)")
    ax.set_title(title or "Matching frame search")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()

    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)

    logger.info(f"bench plot saved to {path}")
