"""Exit criteria for the package, one test per criterion.

Run ``pytest tests/test_acceptance.py`` to get a PASS/FAIL line per criterion
in the terminal summary.
"""

import itertools
import math
import time

import numpy as np
import pytest

from namechaos.chaos import ChaoticState, ChaosRNG, autocorrelation, step, uniformity_chi_square
from namechaos.cli import main
from namechaos.cluster import (
    assign_step,
    build_kdtree,
    filter_assign,
    iter_ward_merges,
    lance_williams_coefficients,
    lloyd_kmeans,
    silhouette,
)
from namechaos.faker import Origin
from namechaos.pipeline import RunConfig, run_detection, silhouette_sweep
from namechaos.strsim import jaro, match_counts

CHI2_CRIT_99DF = 135.8  # 0.01 upper critical value, 99 degrees of freedom


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0


@pytest.mark.criterion(1, "Table 1: PAUL/PUAL gives c=4, t=1, jaro 0.916667")
def test_criterion_01_table_one():
    m = match_counts("PAUL", "PUAL")
    assert (m.c, m.t) == (4, 1)
    assert jaro("PAUL", "PUAL") == pytest.approx(0.916667, abs=1e-6)


@pytest.mark.criterion(2, "map oracle on 1e4 random states, all in torus, < 1 s")
def test_criterion_02_map_oracle():
    rng = np.random.default_rng(2024)
    states = []
    for _ in range(10_000):
        p = int(rng.integers(1, 7))
        states.append((rng.uniform(-1, 1, p).tolist(), rng.uniform(-1, 1, p).tolist()))

    with Timer() as t:
        results = [step(ChaoticState(x, k)).x for x, k in states]
    assert t.elapsed < 1.0

    worst = 0.0
    for (x, k), got in zip(states, results):
        p = len(x)
        for j in range(p):
            v = 1 - 2 * math.fabs(x[j]) + k[j] * x[(j + 1) % p]
            v = v - 2 if v > 1 else v
            v = v + 2 if v < -1 else v
            worst = max(worst, abs(got[j] - v))
            assert -1.0 <= got[j] <= 1.0
    assert worst <= 1e-12


@pytest.mark.criterion(3, "CPRNG: chi-square < 135.8 for >= 18/20 seeds, |r(lag 1..10)| < 0.02, < 30 s")
def test_criterion_03_prng_statistics():
    passes = 0
    worst_r = 0.0
    with Timer() as t:
        for seed in range(1, 21):
            seq = ChaosRNG.from_seed(seed).generate(1_000_000)[:, 0]
            if uniformity_chi_square(seq, 100) < CHI2_CRIT_99DF:
                passes += 1
            for lag in range(1, 11):
                worst_r = max(worst_r, abs(autocorrelation(seq, lag)))
    print(f"chi-square passes {passes}/20, worst |autocorrelation| {worst_r:.5f}, {t.elapsed:.1f}s")
    assert passes >= 18
    assert worst_r < 0.02
    assert t.elapsed < 30.0


@pytest.mark.criterion(4, "kd-tree filtering equals brute force on 100 datasets, < 5 s")
def test_criterion_04_filtering_equals_brute_force():
    rng = np.random.default_rng(4)
    checked = 0
    with Timer() as t:
        while checked < 100:
            n = int(rng.integers(1, 51))
            k = int(rng.integers(1, min(5, n) + 1))
            pts = rng.normal(size=(n, 2)) * rng.uniform(0.1, 10.0)
            if checked % 4 == 0:
                pts = np.round(pts)  # duplicates and distance ties
            init = pts[rng.choice(n, size=k, replace=False)]
            if len(np.unique(init, axis=0)) < k:
                continue
            brute = lloyd_kmeans(pts, k, init)
            fast = lloyd_kmeans(pts, k, init, use_filtering=True)
            assert np.array_equal(brute.assignments, fast.assignments)
            assert np.array_equal(brute.centroids, fast.centroids)
            cents = rng.normal(size=(k, 2)) * 3
            assert np.array_equal(filter_assign(build_kdtree(pts), cents).assignments, assign_step(pts, cents))
            checked += 1
    assert t.elapsed < 5.0


@pytest.mark.criterion(5, "Lance-Williams distances match from-scratch Ward at every merge, < 10 s")
def test_criterion_05_lance_williams_oracle():
    rng = np.random.default_rng(5)
    with Timer() as t:
        for _ in range(50):
            pts = rng.normal(size=(int(rng.integers(2, 21)), 2))
            for merge in iter_ward_merges(pts):
                keys = sorted(merge.members)
                for a, b in itertools.combinations(keys, 2):
                    ma, mb = merge.members[a], merge.members[b]
                    gap = pts[ma].mean(axis=0) - pts[mb].mean(axis=0)
                    scratch = 2.0 * len(ma) * len(mb) / (len(ma) + len(mb)) * float(gap @ gap)
                    assert abs(merge.distances[a, b] - scratch) <= 1e-9

        sizes = np.arange(1, 101, dtype=float)
        ni, nj, nk = np.meshgrid(sizes, sizes, sizes, indexing="ij")
        ai, aj, beta, gamma = lance_williams_coefficients(ni, nj, nk)
        assert np.abs(ai + aj + beta - 1.0).max() <= 1e-12
        assert gamma == 0.0
    assert t.elapsed < 10.0


@pytest.mark.criterion(6, "Lloyd on {0,1,9,10}, k=2: centroids 0.5/9.5, objective 1.0, optimal")
def test_criterion_06_lloyd_desk_optimality():
    pts = np.array([[0.0], [1.0], [9.0], [10.0]])
    res = lloyd_kmeans(pts, 2, [[0.0], [10.0]])
    assert res.centroids.ravel().tolist() == [0.5, 9.5]
    assert res.objective == pytest.approx(1.0, abs=1e-12)
    best = min(
        sum(((pts[np.array(lab) == c] - pts[np.array(lab) == c].mean()) ** 2).sum() for c in (0, 1))
        for lab in itertools.product((0, 1), repeat=4)
        if len(set(lab)) == 2
    )
    assert best == pytest.approx(res.objective, abs=1e-12)


@pytest.mark.criterion(7, "silhouette in [-1, 1] on fuzzed input; separated blobs mean >= 0.8, < 5 s")
def test_criterion_07_silhouette():
    rng = np.random.default_rng(7)
    with Timer() as t:
        for _ in range(200):
            n = int(rng.integers(3, 60))
            pts = rng.normal(size=(n, int(rng.integers(1, 4)))) * rng.uniform(0.01, 100)
            labels = rng.integers(0, int(rng.integers(2, 6)), n)
            if len(np.unique(labels)) < 2:
                continue
            s, mean = silhouette(pts, labels)
            assert np.all((s >= -1) & (s <= 1)) and -1 <= mean <= 1
        for _ in range(20):
            spread = rng.uniform(0.1, 5.0)
            center = rng.normal(size=2) * 50
            direction = rng.normal(size=2)
            other = center + 10 * spread * direction / np.linalg.norm(direction)
            pts = np.vstack([rng.normal(center, spread, (60, 2)), rng.normal(other, spread, (60, 2))])
            _, mean = silhouette(pts, np.repeat([0, 1], 60))
            assert mean >= 0.8
    assert t.elapsed < 5.0


@pytest.mark.criterion(8, "200-record experiment, k=3 k-means: >= 90% gibberish in flagged cluster, < 5 s")
def test_criterion_08_experiment():
    with Timer() as t:
        report = run_detection(RunConfig(seed=0x5EED, k=3))
    assert len(report.rows) == 200
    gib = [r for r in report.rows if r.record.origin is Origin.GIBBERISH]
    share = sum(r.cluster == report.flagged_cluster for r in gib) / len(gib)
    print(f"gibberish in flagged cluster: {share:.3f} ({len(gib)} records), {t.elapsed:.2f}s")
    assert share >= 0.9
    assert t.elapsed < 5.0


@pytest.mark.criterion(9, "sweep k=2..20 x {kmeans, agglomerative}: 38 finite rows, < 10 s")
def test_criterion_09_sweep():
    with Timer() as t:
        sweep = silhouette_sweep(RunConfig())
    assert len(sweep.rows) == 38
    assert all(math.isfinite(v) and -1 <= v <= 1 for _, _, v in sweep.rows)
    assert t.elapsed < 10.0
    by_k = {}
    for k, method, value in sweep.rows:
        by_k.setdefault(k, {})[method.value] = value
    for k, row in sorted(by_k.items()):
        print(f"k={k:2d} kmeans={row['kmeans']:.4f} agglomerative={row['agglomerative']:.4f}")


@pytest.mark.criterion(10, "two analyze runs with the same seed write byte-identical files")
def test_criterion_10_determinism(tmp_path):
    argv = ["analyze", "--seed-hex", "5eed", "--k", "3", "--method", "kmeans"]
    assert main(argv + ["--out-dir", str(tmp_path / "a")]) == 0
    assert main(argv + ["--out-dir", str(tmp_path / "b")]) == 0
    files = sorted(p.name for p in (tmp_path / "a").iterdir())
    assert files == ["clusters.json", "features.csv", "flagged.txt", "silhouette.csv"]
    for name in files:
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
