"""End-to-end detection: names -> synthetic fakes -> features -> clusters -> reports."""

from __future__ import annotations

import csv
import json
import logging
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Sequence

import numpy as np

from .chaos import DEFAULT_COUPLING, DEFAULT_DIMENSION, ChaosRNG, splitmix64
from .cluster import (
    ClusteringResult,
    Method,
    agglomerative_ward,
    lloyd_kmeans,
    minibatch_kmeans,
    silhouette,
)
from .faker import DEFAULT_GIBBERISH_LENGTH, DEFAULT_MIX, NameRecord, Origin, variations
from .name_stats import (
    DEFAULT_SIM_THRESHOLD,
    FeatureVector,
    LetterStats,
    NameProfile,
    featurize_corpus,
    letter_stats,
)

log = logging.getLogger(__name__)

DEFAULT_SEED = 0x5EED
BUNDLED_NAMES = "names20.txt"

FEATURES_CSV = "features.csv"
CLUSTERS_JSON = "clusters.json"
SILHOUETTE_CSV = "silhouette.csv"
FLAGGED_TXT = "flagged.txt"


class InputError(ValueError):
    """The input names could not be used."""


@dataclass
class RunConfig:
    names_path: Path | None = None
    variations_per_name: int = 9
    method: Method = Method.KMEANS
    k: int = 3
    k_range: tuple[int, int] = (2, 20)
    sweep_methods: tuple[Method, ...] = (Method.KMEANS, Method.AGGLOMERATIVE)
    sim_threshold: float = DEFAULT_SIM_THRESHOLD
    profile: NameProfile = field(default_factory=NameProfile)
    seed: int = DEFAULT_SEED
    couplings: tuple[float, ...] = (DEFAULT_COUPLING,) * DEFAULT_DIMENSION
    mix: float = DEFAULT_MIX
    gibberish_length: tuple[int, int] = DEFAULT_GIBBERISH_LENGTH
    batch_size: int = 32
    minibatch_iterations: int = 50
    output_dir: Path | None = None

    def __post_init__(self) -> None:
        self.method = Method(self.method)
        self.sweep_methods = tuple(Method(m) for m in self.sweep_methods)
        if self.variations_per_name < 0:
            raise ValueError("variations_per_name must be non-negative")
        if self.k < 1:
            raise ValueError("k must be positive")
        lo, hi = self.k_range
        if not 2 <= lo <= hi:
            raise ValueError(f"k_range must satisfy 2 <= kmin <= kmax, got {self.k_range}")


@dataclass
class DetectionRow:
    record: NameRecord
    stats: LetterStats
    features: FeatureVector
    cluster: int
    silhouette: float


@dataclass
class DetectionReport:
    method: Method
    k: int
    rows: list[DetectionRow]
    centroids: np.ndarray
    flagged_cluster: int
    mean_silhouette: float | None
    precision: float | None
    recall: float | None
    converged: bool = True

    @property
    def flagged(self) -> list[DetectionRow]:
        return [r for r in self.rows if r.cluster == self.flagged_cluster]


@dataclass
class SilhouetteReport:
    rows: list[tuple[int, Method, float]] = field(default_factory=list)
    skipped: list[tuple[int, Method, str]] = field(default_factory=list)


def load_names(path: Path | str | None = None) -> list[str]:
    """Read one name per line; lower-case, strip, drop blanks and duplicates.

    ``None`` reads the bundled 20-name list.
    """
    if path is None:
        text = resources.files("namechaos").joinpath("data").joinpath(BUNDLED_NAMES).read_text("utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    names = []
    seen = set()
    for line in text.splitlines():
        name = line.strip().lower()
        if name and name not in seen:
            seen.add(name)
            names.append(name)
    if not names:
        raise InputError(f"no usable names in {path or BUNDLED_NAMES}")
    return names


def build_dataset(real_names: Sequence[str], config: RunConfig) -> list[NameRecord]:
    """Real names first, then ``variations_per_name`` fakes for each, in input order."""
    rng = ChaosRNG.from_seed(config.seed, config.couplings)
    records = [NameRecord(name, Origin.REAL) for name in real_names]
    for name in real_names:
        records.extend(
            variations(name, config.variations_per_name, rng, config.mix, config.gibberish_length)
        )
    return records


def feature_matrix(features: Sequence[FeatureVector]) -> np.ndarray:
    """Raw ``(similarity_count, p_invalid)`` rows."""
    return np.array([(f.similarity_count, f.p_invalid) for f in features], dtype=float).reshape(-1, 2)


def minmax_normalize(x: np.ndarray) -> np.ndarray:
    lo = x.min(axis=0)
    span = x.max(axis=0) - lo
    span[span == 0] = 1.0
    return (x - lo) / span


def seed_centroids(points: np.ndarray, p_invalid: Sequence[float], k: int) -> np.ndarray:
    """Initial centroids at the ``k`` points that look most like real names.

    Points are ranked by ``p_invalid`` with input order breaking ties. Repeated
    coordinates are nudged apart so every centroid is distinct.
    """
    if not 1 <= k <= len(points):
        raise ValueError(f"k must be in [1, {len(points)}], got {k}")
    order = np.argsort(np.asarray(p_invalid, dtype=float), kind="stable")[:k]
    chosen = points[order].astype(float)
    seen: set[tuple[float, ...]] = set()
    for row in range(k):
        bump = 0
        while tuple(chosen[row]) in seen:
            bump += 1
            chosen[row] = points[order[row]] + bump * 1e-9
        seen.add(tuple(chosen[row]))
    return chosen


def _cell_seed(master: int, index: int) -> int:
    _, word = splitmix64((master + index * 0x9E3779B97F4A7C15) & ((1 << 64) - 1))
    return word


def _cluster(
    method: Method,
    points: np.ndarray,
    p_invalid: Sequence[float],
    k: int,
    config: RunConfig,
    cell: int = 0,
) -> ClusteringResult:
    if method is Method.AGGLOMERATIVE:
        return agglomerative_ward(points, k)
    init = seed_centroids(points, p_invalid, k)
    if method is Method.KMEANS:
        return lloyd_kmeans(points, k, init, use_filtering=True)
    rng = ChaosRNG.from_seed(_cell_seed(config.seed, cell), config.couplings)
    batch = min(config.batch_size, len(points))
    return minibatch_kmeans(points, k, batch, config.minibatch_iterations, init, rng)


def _fraction(num: int, den: int) -> float | None:
    return num / den if den else None


def run_detection(config: RunConfig, real_names: Sequence[str] | None = None) -> DetectionReport:
    """Build the dataset, cluster it with ``config.method`` and flag the suspicious cluster.

    Clustering runs on min-max normalised features; the report keeps raw
    values. The flagged cluster is the one whose centroid has the largest
    ``p_invalid``.
    """
    if real_names is None:
        real_names = load_names(config.names_path)
    records = build_dataset(real_names, config)
    names = [r.name for r in records]
    features = featurize_corpus(names, config.profile, config.sim_threshold)
    stats = [letter_stats(name) for name in names]
    raw = feature_matrix(features)
    points = minmax_normalize(raw)
    if not np.all(np.isfinite(points)):
        raise FloatingPointError("non-finite feature values")
    p_invalid = raw[:, 1]

    result = _cluster(config.method, points, p_invalid, config.k, config)
    labels = result.assignments
    populated = np.flatnonzero(result.member_counts > 0)
    flagged = int(populated[np.argmax(result.centroids[populated, 1])])

    try:
        s_values, s_mean = silhouette(points, labels)
    except ValueError as exc:
        log.warning("silhouette unavailable: %s", exc)
        s_values, s_mean = np.zeros(len(points)), None

    is_fake = np.array([r.origin is not Origin.REAL for r in records])
    in_flag = labels == flagged
    hits = int((is_fake & in_flag).sum())
    rows = [
        DetectionRow(rec, st, fv, int(lab), float(s))
        for rec, st, fv, lab, s in zip(records, stats, features, labels, s_values)
    ]
    return DetectionReport(
        method=config.method,
        k=config.k,
        rows=rows,
        centroids=result.centroids,
        flagged_cluster=flagged,
        mean_silhouette=s_mean,
        precision=_fraction(hits, int(in_flag.sum())),
        recall=_fraction(hits, int(is_fake.sum())),
        converged=result.converged,
    )


def silhouette_sweep(config: RunConfig, real_names: Sequence[str] | None = None) -> SilhouetteReport:
    """Mean silhouette for every ``k`` in ``config.k_range`` and every sweep method."""
    if real_names is None:
        real_names = load_names(config.names_path)
    records = build_dataset(real_names, config)
    features = featurize_corpus([r.name for r in records], config.profile, config.sim_threshold)
    raw = feature_matrix(features)
    points = minmax_normalize(raw)
    n = len(points)
    kmin, kmax = config.k_range
    if kmax > n - 1:
        raise ValueError(f"k_range upper bound {kmax} exceeds n - 1 = {n - 1}")

    report = SilhouetteReport()
    cell = 0
    for k in range(kmin, kmax + 1):
        for method in config.sweep_methods:
            cell += 1
            try:
                result = _cluster(method, points, raw[:, 1], k, config, cell)
                _, mean = silhouette(points, result.assignments)
            except (ValueError, FloatingPointError) as exc:
                log.warning("sweep cell k=%d method=%s skipped: %s", k, method.value, exc)
                report.skipped.append((k, method, str(exc)))
                continue
            report.rows.append((k, method, mean))
    return report


def _fmt(value: float) -> str:
    return f"{value:.6f}"


def emit_reports(
    report: DetectionReport | None, sweep: SilhouetteReport | None, output_dir: Path | str
) -> list[Path]:
    """Write features.csv, clusters.json, silhouette.csv and flagged.txt.

    Without a detection report only silhouette.csv is written.
    """
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    if report is not None:
        path = out / FEATURES_CSV
        with path.open("w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(
                ["name", "origin", "parent", "length", "vowel_frac", "unique_frac", "p_invalid", "sim_count"]
            )
            for row in report.rows:
                writer.writerow(
                    [
                        row.record.name,
                        row.record.origin.value,
                        row.record.parent or "",
                        row.stats.length,
                        _fmt(row.stats.vowel_fraction),
                        _fmt(row.stats.unique_fraction),
                        _fmt(row.features.p_invalid),
                        row.features.similarity_count,
                    ]
                )
        written.append(path)

        payload = {
            "method": report.method.value,
            "k": report.k,
            "centroids": [[float(v) for v in c] for c in report.centroids],
            "assignments": [
                {"name": r.record.name, "cluster": r.cluster, "silhouette": r.silhouette}
                for r in report.rows
            ],
            "flagged_cluster": report.flagged_cluster,
            "mean_silhouette": report.mean_silhouette,
            "precision": report.precision,
            "recall": report.recall,
            "converged": report.converged,
        }
        path = out / CLUSTERS_JSON
        path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
        written.append(path)

        path = out / FLAGGED_TXT
        path.write_text("".join(r.record.name + "\n" for r in report.flagged), encoding="utf-8")
        written.append(path)

    path = out / SILHOUETTE_CSV
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["k", "method", "mean_silhouette"])
        for k, method, mean in (sweep.rows if sweep else []):
            writer.writerow([k, method.value, _fmt(mean)])
    written.append(path)
    return written
