import csv
import io

import pytest

from rainbow_forge.harness import constants
from rainbow_forge.harness.experiment import (
    CSV_HEADER,
    edge_probability,
    experiment_random,
    run_trial,
    strip_timing,
    summary,
    to_csv,
)


def test_p_zero_edge_case():
    rec = run_trial(50, 0.0, 3)
    assert (rec.chi_estimate, rec.extraction_size, rec.ratio) == (1, 1, 1.0)


def test_complete_graph_edge_case():
    rec = run_trial(30, 1.0, 3)
    assert (rec.chi_estimate, rec.extraction_size) == (30, 1)


def test_regimes():
    assert edge_probability("sparse", 100, c=1.0) == pytest.approx(0.01)
    assert edge_probability("dense", 100, p=0.2) == 0.2
    with pytest.raises(ValueError):
        edge_probability("sparse", 100, c=0.5)
    with pytest.raises(ValueError):
        edge_probability("medium", 100)
    with pytest.raises(ValueError):
        experiment_random("dense", 10_001, 1, 0)


def test_records_and_summary():
    recs = experiment_random("dense", 200, 4, 1, p=0.2)
    assert len(recs) == 4
    for r in recs:
        assert 1 <= r.extraction_size <= r.chi_estimate
        assert r.ratio == pytest.approx(r.extraction_size / r.chi_estimate)
    s = summary(recs)
    assert s["trials"] == 4 and s["min_ratio"] <= s["median_ratio"]


def test_csv_layout_and_reproducibility():
    a = to_csv(experiment_random("sparse", 300, 3, 9))
    b = to_csv(experiment_random("sparse", 300, 3, 9))
    rows = list(csv.reader(io.StringIO(a)))
    assert tuple(rows[0]) == CSV_HEADER == ("seed", "n", "p", "chi_estimate", "extraction_size", "ratio", "wall_ms")
    assert len(rows) == 4 and all(r[-1] for r in rows[1:])
    assert strip_timing(a) == strip_timing(b)
    assert to_csv(experiment_random("sparse", 300, 3, 9), timing=False) == strip_timing(a)
    assert to_csv(experiment_random("sparse", 300, 3, 10), timing=False) != strip_timing(a)


def test_frozen_constants_are_consistent():
    assert constants.DENSE_NOMINAL_SIZE == 4  # ceil(1 / (3 * 0.1))
    assert constants.DENSE_MIN_SIZE_FLOOR >= constants.DENSE_NOMINAL_SIZE
    assert 0 < constants.SPARSE_MIN_RATIO_FLOOR <= 1
