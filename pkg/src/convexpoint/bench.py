"""Benchmark sweeps, the trial-count expectation check, differential
fuzzing, and report emission.

Two sweeps mirror the classic comparison setup: a point sweep (many points
sampled from one polygon's bounding rectangle) and a polygon sweep (one
query point against polygon sets of growing edge count). Every verdict is
cross-checked against the exact half-plane oracle; a single mismatch aborts
the sweep with the offending instance serialized. Timing is wall clock per
point set with warmup rounds and a median over repetitions, reported
relative to ray casting on the first set.
"""
from __future__ import annotations

import gc
import json
import math
import time
from dataclasses import dataclass
from statistics import median
from typing import Optional

import numpy as np

from .classify import (
    DEFAULT_SEED,
    SeededShuffle,
    classify_fan_triangulation,
    classify_improved,
    classify_raycast,
    legality_test,
)
from .geom import EPS, Point, _dist_point_segment
from .polygon import (
    ConvexPolygon,
    PolygonError,
    bounding_box,
    oracle_classify,
    polygon_to_dict,
    random_convex,
    validate_convex,
)

ALGORITHMS = ("improved", "raycast", "fan")

_SEED_BOUND = 2**63 - 1


class UnsupportedFormatError(ValueError):
    pass


class OracleDisagreementError(RuntimeError):
    """A classifier verdict differed from the oracle; payload holds the
    serialized (polygon, point, verdicts) instance."""

    def __init__(self, payload: dict):
        super().__init__(json.dumps(payload, sort_keys=True))
        self.payload = payload


@dataclass(frozen=True)
class BenchConfig:
    polygon_sizes: tuple[int, ...] = (100, 100, 100, 500, 500, 500,
                                      1000, 1000, 1000, 2000)
    points_per_set: int = 1000
    num_point_sets: int = 10
    seed: int = DEFAULT_SEED
    warmup_rounds: int = 1
    repetitions: int = 3

    def __post_init__(self) -> None:
        if (not self.polygon_sizes or min(self.polygon_sizes) < 3
                or self.points_per_set < 1 or self.num_point_sets < 1
                or self.warmup_rounds < 0 or self.repetitions < 1):
            raise ValueError(f"invalid bench config: {self}")

    def to_dict(self) -> dict:
        return {
            "polygon_sizes": list(self.polygon_sizes),
            "points_per_set": self.points_per_set,
            "num_point_sets": self.num_point_sets,
            "seed": self.seed,
            "warmup_rounds": self.warmup_rounds,
            "repetitions": self.repetitions,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "BenchConfig":
        return cls(
            polygon_sizes=tuple(d["polygon_sizes"]),
            points_per_set=d["points_per_set"],
            num_point_sets=d["num_point_sets"],
            seed=d["seed"],
            warmup_rounds=d["warmup_rounds"],
            repetitions=d["repetitions"],
        )


@dataclass(frozen=True)
class SweepCell:
    algorithm: str
    set_index: int
    walltime_ns: int
    relative_time: float
    intersection_tests: int
    edges_tried: int
    exhausted_all: int
    disagreements: int

    def to_dict(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "set_index": self.set_index,
            "walltime_ns": self.walltime_ns,
            "relative_time": self.relative_time,
            "intersection_tests": self.intersection_tests,
            "edges_tried": self.edges_tried,
            "exhausted_all": self.exhausted_all,
            "disagreements": self.disagreements,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SweepCell":
        return cls(**d)


@dataclass(frozen=True)
class SweepReport:
    kind: str  # "point-sweep" or "polygon-sweep"
    config: BenchConfig
    meta: dict
    baseline_ns: int
    cells: tuple[SweepCell, ...]

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "config": self.config.to_dict(),
            "meta": self.meta,
            "baseline_ns": self.baseline_ns,
            "cells": [c.to_dict() for c in self.cells],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SweepReport":
        return cls(
            kind=d["kind"],
            config=BenchConfig.from_dict(d["config"]),
            meta=d["meta"],
            baseline_ns=d["baseline_ns"],
            cells=tuple(SweepCell.from_dict(c) for c in d["cells"]),
        )

    def total(self, algorithm: str, field_name: str) -> float:
        return sum(getattr(c, field_name) for c in self.cells
                   if c.algorithm == algorithm)


@dataclass(frozen=True)
class ExpectationReport:
    """Measured trial counts against the model E = N / sigma.

    ``observed_mean_trials`` comes from real shuffled classifier runs;
    ``with_replacement_mean_trials`` is the same experiment under the
    model's own assumption of independent retrials, derived run by run from
    the shuffled prefix so the shuffle mean can never exceed it. Both the
    prediction and the relative error are absent when sigma is zero.
    """

    n_edges: int
    sigma: int
    predicted: Optional[float]
    observed_mean_trials: float
    with_replacement_mean_trials: Optional[float]
    runs: int
    relative_error: Optional[float]
    seed: int = DEFAULT_SEED

    def to_dict(self) -> dict:
        return {
            "kind": "expectation",
            "n_edges": self.n_edges,
            "sigma": self.sigma,
            "predicted": self.predicted,
            "observed_mean_trials": self.observed_mean_trials,
            "with_replacement_mean_trials": self.with_replacement_mean_trials,
            "runs": self.runs,
            "relative_error": self.relative_error,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ExpectationReport":
        d = {k: v for k, v in d.items() if k != "kind"}
        return cls(**d)


@dataclass(frozen=True)
class QueryRule:
    """Query point selection for the polygon sweep: start at the centroid
    and move the given fraction toward a seed-chosen vertex."""

    name: str
    fraction: float


CENTROID_RULE = QueryRule("centroid", 0.0)
NEAR_BOUNDARY_RULE = QueryRule("near-boundary", 0.9)


@dataclass(frozen=True)
class FuzzResult:
    cases_run: int
    agreed: int
    disagreement: Optional[dict]

    @property
    def ok(self) -> bool:
        return self.disagreement is None


def _disagreement_payload(poly: ConvexPolygon, p: Point, verdicts: dict) -> dict:
    return {
        "polygon": polygon_to_dict(poly),
        "point": [p.x, p.y],
        "verdicts": {k: v.value for k, v in verdicts.items()},
    }


def _classify_pass(algorithm: str, poly: ConvexPolygon, points: list[Point],
                   policy_seeds: list[int], eps: float):
    """One full classification pass over a point set; returns the
    (classification, stats) pairs. This is also the timed unit."""
    out = []
    if algorithm == "improved":
        for p, s in zip(points, policy_seeds):
            out.append(classify_improved(poly, p, SeededShuffle(s), eps))
    elif algorithm == "raycast":
        for p in points:
            out.append(classify_raycast(poly, p, eps))
    elif algorithm == "fan":
        for p in points:
            out.append(classify_fan_triangulation(poly, p, eps))
    else:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    return out


def _measure_cells(jobs, cfg: BenchConfig, eps: float,
                   time_batch: int = 1) -> tuple[list[SweepCell], int]:
    """jobs: list of (set_index, poly, points, policy_seeds, oracle_verdicts).

    Per job: one counted pass per algorithm with an oracle cross-check, then
    warmup rounds, then timed repetitions with the algorithms interleaved
    back to back inside every repetition, so a background load burst lands
    on all of them rather than skewing one. ``time_batch`` repeats the set
    inside each timed sample; relative times are unaffected by the common
    factor, but microsecond-scale sets (single query points) get lifted out
    of the timer-noise regime.
    """
    cells = []
    for set_index, poly, points, seeds, truths in jobs:
        counters = {}
        for algorithm in ALGORITHMS:
            results = _classify_pass(algorithm, poly, points, seeds, eps)
            for p, (verdict, _), truth in zip(points, results, truths):
                if verdict is not truth:
                    raise OracleDisagreementError(_disagreement_payload(
                        poly, p, {algorithm: verdict, "oracle": truth}))
            counters[algorithm] = (
                sum(st.intersection_tests for _, st in results),
                sum(st.edges_tried for _, st in results),
                sum(1 for _, st in results if st.exhausted_all),
            )

        for _ in range(cfg.warmup_rounds):
            for algorithm in ALGORITHMS:
                _classify_pass(algorithm, poly, points, seeds, eps)
        samples = {algorithm: [] for algorithm in ALGORITHMS}
        gc_was_enabled = gc.isenabled()
        gc.disable()  # keep collection pauses out of individual samples
        try:
            for _ in range(cfg.repetitions):
                for algorithm in ALGORITHMS:
                    t0 = time.perf_counter_ns()
                    for _ in range(time_batch):
                        _classify_pass(algorithm, poly, points, seeds, eps)
                    samples[algorithm].append(time.perf_counter_ns() - t0)
        finally:
            if gc_was_enabled:
                gc.enable()

        for algorithm in ALGORITHMS:
            its, tried, exhausted = counters[algorithm]
            cells.append(SweepCell(
                algorithm=algorithm,
                set_index=set_index,
                walltime_ns=int(median(samples[algorithm])),
                relative_time=0.0,  # filled once the baseline is known
                intersection_tests=its,
                edges_tried=tried,
                exhausted_all=exhausted,
                disagreements=0,
            ))
    baseline = next(c.walltime_ns for c in cells
                    if c.algorithm == "raycast" and c.set_index == 0)
    baseline = max(baseline, 1)
    cells = [SweepCell(
        algorithm=c.algorithm,
        set_index=c.set_index,
        walltime_ns=c.walltime_ns,
        relative_time=c.walltime_ns / baseline,
        intersection_tests=c.intersection_tests,
        edges_tried=c.edges_tried,
        exhausted_all=c.exhausted_all,
        disagreements=c.disagreements,
    ) for c in cells]
    return cells, baseline


def run_point_sweep(poly: ConvexPolygon, cfg: BenchConfig,
                    eps: float = EPS) -> SweepReport:
    """Classify num_point_sets x points_per_set bounding-box points with all
    three algorithms, cross-checking every verdict against the oracle."""
    rng = np.random.default_rng(cfg.seed)
    box = bounding_box(poly)
    total = cfg.num_point_sets * cfg.points_per_set
    xs = rng.uniform(box.min.x, box.max.x, total)
    ys = rng.uniform(box.min.y, box.max.y, total)
    policy_seeds = rng.integers(0, _SEED_BOUND, total).tolist()
    points = [Point(float(x), float(y)) for x, y in zip(xs, ys)]

    jobs = []
    pps = cfg.points_per_set
    for s in range(cfg.num_point_sets):
        pts = points[s * pps:(s + 1) * pps]
        seeds = policy_seeds[s * pps:(s + 1) * pps]
        truths = [oracle_classify(poly, p, eps) for p in pts]
        jobs.append((s, poly, pts, seeds, truths))

    cells, baseline = _measure_cells(jobs, cfg, eps)
    meta = {"mode": "point-sweep", "polygon_n": poly.n, "eps": eps}
    return SweepReport("point-sweep", cfg, meta, baseline, tuple(cells))


# a polygon-sweep set is one query point, microseconds of work; each timed
# sample repeats it this many times so medians sit at the millisecond scale
_POLYGON_SWEEP_TIME_BATCH = 32


def run_polygon_sweep(cfg: BenchConfig, rule: QueryRule = CENTROID_RULE,
                      radius: float = 100.0, eps: float = EPS) -> SweepReport:
    """One polygon per entry of cfg.polygon_sizes; each set classifies the
    rule-selected query point with all three algorithms."""
    rng = np.random.default_rng(cfg.seed)
    jobs = []
    for k, nk in enumerate(cfg.polygon_sizes):
        poly = random_convex(int(nk), int(rng.integers(0, _SEED_BOUND)),
                             radius)
        cen = poly.centroid()
        v = poly.vertices[int(rng.integers(0, poly.n))]
        q = Point(cen.x + rule.fraction * (v.x - cen.x),
                  cen.y + rule.fraction * (v.y - cen.y))
        seeds = [int(rng.integers(0, _SEED_BOUND))]
        truths = [oracle_classify(poly, q, eps)]
        jobs.append((k, poly, [q], seeds, truths))

    cells, baseline = _measure_cells(jobs, cfg, eps,
                                     time_batch=_POLYGON_SWEEP_TIME_BATCH)
    meta = {
        "mode": "polygon-sweep",
        "query_rule": rule.name,
        "query_fraction": rule.fraction,
        "radius": radius,
        "generator": "sorted-angle circle placement, bounded gaps, "
                     "curvature-capped radial jitter",
        "eps": eps,
    }
    return SweepReport("polygon-sweep", cfg, meta, baseline, tuple(cells))


def trial_expectation_check(poly: ConvexPolygon, p: Point, runs: int,
                            seed: int = DEFAULT_SEED,
                            eps: float = EPS) -> ExpectationReport:
    """Compare measured trial counts against the model E = N / sigma.

    Runs the real shuffled classifier ``runs`` times. The with-replacement
    mean is derived from the very same runs: after t distinct edges a
    with-replacement sampler would repeat an already-seen edge with
    probability t/N before drawing a new one, so each shuffled prefix of
    length k expands by the corresponding geometric repeat counts. The
    expansion never shrinks a run, so the shuffle mean is at most the
    with-replacement mean by construction, and the expanded counts are
    exactly geometric with success rate sigma/N.
    """
    if runs < 1:
        raise ValueError("runs must be >= 1")
    n = poly.n
    sig = sum(1 for i in range(n) if legality_test(poly, i, p, eps).legal)

    rng = np.random.default_rng(seed)
    run_seeds = rng.integers(0, _SEED_BOUND, runs).tolist()
    trials = []
    for s in run_seeds:
        _, stats = classify_improved(poly, p, SeededShuffle(s), eps)
        trials.append(stats.edges_tried)
    observed = sum(trials) / runs

    if sig == 0:
        return ExpectationReport(n, 0, None, observed, None, runs, None, seed)

    log_cache = [0.0] * n
    for t in range(1, n):
        log_cache[t] = math.log(t / n)
    wr_total = 0
    for k in trials:
        draws = k
        for t in range(1, k):
            u = rng.random()
            if u <= 0.0:
                u = 5e-324
            draws += int(math.log(u) / log_cache[t])
        wr_total += draws
    wr_mean = wr_total / runs
    predicted = n / sig
    rel = abs(wr_mean - predicted) / predicted
    return ExpectationReport(n, sig, predicted, observed, wr_mean, runs, rel,
                             seed)


def _near_any_edge(poly: ConvexPolygon, p: Point, threshold: float) -> bool:
    px, py = p
    for i in range(poly.n):
        ax, ay = poly.vertices[i - 1]
        bx, by = poly.vertices[i]
        cr = (bx - ax) * (py - ay) - (by - ay) * (px - ax)
        if abs(cr) <= threshold * (abs(bx - ax) + abs(by - ay)):
            if _dist_point_segment(px, py, ax, ay, bx, by) <= threshold:
                return True
    return False


def _four_way(poly: ConvexPolygon, p: Point, policy_seed: int, eps: float):
    truth = oracle_classify(poly, p, 0.0)
    vi, _ = classify_improved(poly, p, SeededShuffle(policy_seed), eps)
    vr, _ = classify_raycast(poly, p, eps)
    vf, _ = classify_fan_triangulation(poly, p, eps)
    return {"improved": vi, "raycast": vr, "fan": vf, "oracle": truth}


def _minimize_disagreement(poly: ConvexPolygon, p: Point, policy_seed: int,
                           eps: float) -> dict:
    """Greedy vertex-removal shrink keeping the four-way disagreement."""

    def disagrees(vs):
        try:
            cand = validate_convex(vs, eps)
        except PolygonError:
            return None
        verdicts = _four_way(cand, p, policy_seed, eps)
        if len(set(verdicts.values())) > 1:
            return cand
        return None

    current = poly
    shrinking = True
    while shrinking and current.n > 3:
        shrinking = False
        for j in range(current.n):
            vs = current.vertices[:j] + current.vertices[j + 1:]
            cand = disagrees(vs)
            if cand is not None:
                current = cand
                shrinking = True
                break
    payload = _disagreement_payload(current, p,
                                    _four_way(current, p, policy_seed, eps))
    payload["policy_seed"] = policy_seed
    return payload


def run_fuzz(cases: int, max_n: int = 256, seed: int = DEFAULT_SEED,
             points_per_polygon: int = 50, eps: float = EPS) -> FuzzResult:
    """Differential suite: improved vs raycast vs fan vs the exact oracle.

    Query points are integer lattice points covering the polygon's bounding
    box, skipping the eps-scale band around edges where verdicts are a
    tolerance choice rather than a geometric fact. Stops at the first
    disagreement with a minimized reproduction payload.
    """
    if cases < 1:
        raise ValueError("cases must be >= 1")
    if max_n < 3:
        raise ValueError("max_n must be >= 3")
    rng = np.random.default_rng(seed)
    run = 0
    agreed = 0
    while run < cases:
        n = int(rng.integers(3, max_n + 1))
        radius = float(10.0 ** rng.uniform(0.7, 2.5))
        poly = random_convex(n, int(rng.integers(0, _SEED_BOUND)), radius)
        box = bounding_box(poly)
        lo_x = math.floor(box.min.x) - 1
        hi_x = math.ceil(box.max.x) + 1
        lo_y = math.floor(box.min.y) - 1
        hi_y = math.ceil(box.max.y) + 1
        count = min(points_per_polygon, cases - run)
        ixs = rng.integers(lo_x, hi_x + 1, count)
        iys = rng.integers(lo_y, hi_y + 1, count)
        pseeds = rng.integers(0, _SEED_BOUND, count).tolist()
        for ix, iy, ps in zip(ixs, iys, pseeds):
            p = Point(float(ix), float(iy))
            if _near_any_edge(poly, p, 10.0 * eps):
                continue
            verdicts = _four_way(poly, p, ps, eps)
            run += 1
            if len(set(verdicts.values())) == 1:
                agreed += 1
            else:
                payload = _minimize_disagreement(poly, p, ps, eps)
                return FuzzResult(run, agreed, payload)
            if run >= cases:
                break
    return FuzzResult(run, agreed, None)


_CSV_SWEEP_HEADER = ("algorithm,set,walltime_ns,relative_time,"
                     "intersection_tests,edges_tried,exhausted_all,"
                     "disagreements")

_CSV_EXPECTATION_HEADER = ("n_edges,sigma,predicted,observed_mean_trials,"
                           "with_replacement_mean_trials,runs,relative_error")


def emit_report(report, fmt: str) -> str:
    """Render a report as csv, json, or (sweeps only) a simple svg chart."""
    if fmt == "json":
        return json.dumps(report.to_dict(), indent=2) + "\n"
    if fmt == "csv":
        if isinstance(report, SweepReport):
            lines = [_CSV_SWEEP_HEADER]
            for c in report.cells:
                lines.append(
                    f"{c.algorithm},{c.set_index},{c.walltime_ns},"
                    f"{c.relative_time!r},{c.intersection_tests},"
                    f"{c.edges_tried},{c.exhausted_all},{c.disagreements}")
            return "\n".join(lines) + "\n"
        if isinstance(report, ExpectationReport):
            r = report

            def cell(v):
                return "" if v is None else repr(v)

            return (_CSV_EXPECTATION_HEADER + "\n"
                    + f"{r.n_edges},{r.sigma},{cell(r.predicted)},"
                      f"{r.observed_mean_trials!r},"
                      f"{cell(r.with_replacement_mean_trials)},{r.runs},"
                      f"{cell(r.relative_error)}\n")
        raise UnsupportedFormatError(f"cannot render {type(report).__name__} as csv")
    if fmt == "svg":
        if isinstance(report, SweepReport):
            return _render_svg(report)
        raise UnsupportedFormatError(
            "svg output is only defined for sweep reports")
    raise UnsupportedFormatError(f"unknown format {fmt!r}")


def parse_report(text: str):
    """Inverse of emit_report(..., "json")."""
    d = json.loads(text)
    if d.get("kind") == "expectation":
        return ExpectationReport.from_dict(d)
    return SweepReport.from_dict(d)


_SVG_COLORS = {"improved": "#1f77b4", "raycast": "#d62728", "fan": "#2ca02c"}


def _render_svg(report: SweepReport) -> str:
    width, height, pad = 640, 400, 50
    sets = sorted({c.set_index for c in report.cells})
    max_rel = max(c.relative_time for c in report.cells) or 1.0
    span_x = max(len(sets) - 1, 1)

    def sx(i):
        return pad + (width - 2 * pad) * (i / span_x)

    def sy(rel):
        return height - pad - (height - 2 * pad) * (rel / max_rel)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{pad}" y1="{height - pad}" x2="{width - pad}" '
        f'y2="{height - pad}" stroke="black"/>',
        f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{height - pad}" '
        f'stroke="black"/>',
        f'<text x="{width // 2}" y="{height - 12}" text-anchor="middle" '
        f'font-size="12">set index</text>',
        f'<text x="14" y="{height // 2}" text-anchor="middle" font-size="12" '
        f'transform="rotate(-90 14 {height // 2})">relative time</text>',
    ]
    for k, alg in enumerate(ALGORITHMS):
        pts = [(c.set_index, c.relative_time) for c in report.cells
               if c.algorithm == alg]
        pts.sort()
        coords = " ".join(f"{sx(i):.1f},{sy(r):.1f}" for i, r in pts)
        color = _SVG_COLORS[alg]
        parts.append(f'<polyline fill="none" stroke="{color}" '
                     f'stroke-width="1.5" points="{coords}"/>')
        parts.append(f'<text x="{width - pad + 4}" y="{pad + 14 * k}" '
                     f'font-size="11" fill="{color}">{alg}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
