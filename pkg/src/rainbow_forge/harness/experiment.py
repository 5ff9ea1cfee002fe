"""Rainbow extraction on binomial random graphs.

Each trial draws G(n, p), colours it first-fit in index order, and runs the
extraction with r = 3 (so neighbourhoods are always deleted).  The ratio
``|X| / chi_estimate`` uses the greedy palette size as the chi estimate.
"""

from __future__ import annotations

import csv
import io
import statistics
import time
from dataclasses import dataclass

from ..generators import gnp
from ..oracles import greedy_coloring
from ..rainbow import MIN_INDEX, extract_rainbow_independent_set
from ..rng import derive_seeds

CSV_HEADER = ("seed", "n", "p", "chi_estimate", "extraction_size", "ratio", "wall_ms")


@dataclass(frozen=True)
class ExperimentRecord:
    seed: int
    n: int
    p: float
    chi_estimate: int
    extraction_size: int
    ratio: float
    wall_ms: float

    def row(self, timing: bool = True) -> list[str]:
        return [
            str(self.seed),
            str(self.n),
            f"{self.p:.10g}",
            str(self.chi_estimate),
            str(self.extraction_size),
            f"{self.ratio:.6f}",
            f"{self.wall_ms:.3f}" if timing else "",
        ]


def edge_probability(regime: str, n: int, c: float = 0.7, p: float = 0.1) -> float:
    if regime == "sparse":
        if not 0.5 < c <= 1:
            raise ValueError("sparse regime needs 1/2 < c <= 1")
        return n ** -c
    if regime == "dense":
        return p
    raise ValueError(f"unknown regime {regime!r}")


def run_trial(n: int, p: float, seed: int) -> ExperimentRecord:
    start = time.perf_counter()
    g = gnp(n, p, seed)
    coloring = greedy_coloring(g)
    chi_est = coloring.num_colors if n else 0
    cert, _ = extract_rainbow_independent_set(g, coloring, 3, chi_est, MIN_INDEX, check_free=False)
    wall = (time.perf_counter() - start) * 1000
    ratio = cert.size / chi_est if chi_est else 0.0
    return ExperimentRecord(seed, n, p, chi_est, cert.size, ratio, wall)


def experiment_random(
    regime: str, n: int, trials: int, seed: int, c: float = 0.7, p: float = 0.1
) -> list[ExperimentRecord]:
    if n > 10_000:
        raise ValueError("n is capped at 10000")
    prob = edge_probability(regime, n, c, p)
    return [run_trial(n, prob, s) for s in derive_seeds(seed, trials)]


def summary(records: list[ExperimentRecord]) -> dict:
    ratios = [r.ratio for r in records]
    sizes = [r.extraction_size for r in records]
    return {
        "trials": len(records),
        "min_ratio": min(ratios),
        "median_ratio": statistics.median(ratios),
        "min_size": min(sizes),
        "median_size": statistics.median(sizes),
    }


def to_csv(records: list[ExperimentRecord], timing: bool = True) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow(r.row(timing))
    return buf.getvalue()


def strip_timing(csv_text: str) -> str:
    """Blank the wall_ms column so runs can be compared byte for byte."""
    rows = list(csv.reader(io.StringIO(csv_text)))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for i, row in enumerate(rows):
        w.writerow(row if i == 0 else row[:-1] + [""])
    return buf.getvalue()
