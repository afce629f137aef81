"""Edge subsampling, bad-edge detection, short-cycle stripping, and the
Monte Carlo harness around them.

The keep probability is p = alpha * log2(sigma_a) / d.  The log base is
pinned to 2 and p > 1 clamps to 1 (with a recorded flag) since desk-scale
parameters routinely fall outside the asymptotic regime.  Each superedge is
decided by one position-addressable PRNG draw, so results are independent
of iteration order and worker count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .graphs import INFINITY, edge_cycle_length, girth
from .labelcover import LabelCoverInstance, Labeling, supergraph
from .rng import child_seed, draws_array, keep_threshold


@dataclass(frozen=True)
class SampleParams:
    """Subsampling knobs: strength alpha, cycle threshold k, master seed."""

    alpha: float
    k: int = 3
    seed: int = 0
    clamp_p: bool = True
    d_override: int | None = None

    def __post_init__(self):
        if self.alpha <= 0:
            raise InputError("alpha must be positive")
        if self.k < 3:
            raise InputError("cycle threshold k must be >= 3")


@dataclass(frozen=True)
class SideDegrees:
    minimum: int
    mean: float
    maximum: int


@dataclass(frozen=True)
class SampleStats:
    """Evidence record for one sample/strip run."""

    edges_before: int
    edges_after_sample: int
    edges_after_strip: int
    bad_edge_count: int
    degrees_a: SideDegrees
    degrees_b: SideDegrees
    achieved_girth: float
    probability: float
    clamped: bool

    def as_dict(self) -> dict:
        return {
            "edges_before": self.edges_before,
            "edges_after_sample": self.edges_after_sample,
            "edges_after_strip": self.edges_after_strip,
            "bad_edge_count": self.bad_edge_count,
            "degrees_a": vars(self.degrees_a),
            "degrees_b": vars(self.degrees_b),
            "achieved_girth": "infinity" if self.achieved_girth == INFINITY
                              else int(self.achieved_girth),
            "probability": self.probability,
            "clamped": self.clamped,
        }


def sample_probability(alpha: float, sigma_a: int, d: int, clamp_p: bool = True) -> float:
    """p = alpha * log2(sigma_a) / d, clamped to 1 when requested."""
    if sigma_a < 2:
        raise InputError("sample probability needs sigma_a >= 2")
    if d < 1:
        raise InputError("degree must be >= 1")
    p = alpha * math.log2(sigma_a) / d
    if p > 1.0:
        if not clamp_p:
            raise InputError(f"sample probability {p} exceeds 1 and clamping is off")
        return 1.0
    return p


def effective_degree(lc: LabelCoverInstance, params: SampleParams) -> int:
    """Degree used in the p formula: explicit override, else max degree."""
    if params.d_override is not None:
        if params.d_override < 1:
            raise InputError("degree override must be >= 1")
        return params.d_override
    if lc.edge_count == 0:
        return 1
    return int(max(lc.degrees_a().max(), lc.degrees_b().max()))


def kept_edge_ids(lc: LabelCoverInstance, params: SampleParams) -> np.ndarray:
    """Superedge ids kept by the sample, decided in canonical edge order."""
    p = sample_probability(params.alpha, lc.sigma_a,
                           effective_degree(lc, params), params.clamp_p)
    threshold = keep_threshold(p)
    if threshold is None:
        return np.arange(lc.edge_count, dtype=np.int64)
    draws = draws_array(params.seed, lc.edge_count)
    return np.nonzero(draws < np.uint64(threshold))[0].astype(np.int64)


def subsample(lc: LabelCoverInstance, params: SampleParams) -> LabelCoverInstance:
    """Keep each superedge independently with probability p; relations untouched."""
    return lc.restrict_edges(kept_edge_ids(lc, params))


def bad_edges(lc: LabelCoverInstance, k: int) -> list:
    """Superedge ids lying on a supergraph cycle of length <= k."""
    if k < 3:
        raise InputError("cycle threshold k must be >= 3")
    g = supergraph(lc)
    out = []
    for eid in range(g.edge_count):
        length = edge_cycle_length(g, eid)
        if length != INFINITY and length <= k:
            out.append(eid)
    return out


def strip_bad_edges(lc: LabelCoverInstance, k: int) -> LabelCoverInstance:
    """Remove all bad edges in one simultaneous pass.

    Any cycle of length <= k in the output would already have been a cycle
    in the input, so every one of its edges would have been removed; the
    output supergirth therefore exceeds k.
    """
    bad = set(bad_edges(lc, k))
    keep = [e for e in range(lc.edge_count) if e not in bad]
    return lc.restrict_edges(keep)


def _side_degrees(counts: np.ndarray) -> SideDegrees:
    if counts.size == 0:
        return SideDegrees(0, 0.0, 0)
    return SideDegrees(int(counts.min()), float(counts.mean()), int(counts.max()))


def degree_stats(lc: LabelCoverInstance) -> tuple[SideDegrees, SideDegrees]:
    """Exact (min, mean, max) supergraph degrees per side."""
    return _side_degrees(lc.degrees_a()), _side_degrees(lc.degrees_b())


def sample_and_strip(lc: LabelCoverInstance, params: SampleParams) -> tuple:
    """subsample then strip at params.k; returns (instance, SampleStats)."""
    p = sample_probability(params.alpha, lc.sigma_a,
                           effective_degree(lc, params), params.clamp_p)
    sampled = subsample(lc, params)
    bad = bad_edges(sampled, params.k)
    stripped = sampled.restrict_edges(
        [e for e in range(sampled.edge_count) if e not in set(bad)])
    deg_a, deg_b = degree_stats(sampled)
    stats = SampleStats(
        edges_before=lc.edge_count,
        edges_after_sample=sampled.edge_count,
        edges_after_strip=stripped.edge_count,
        bad_edge_count=len(bad),
        degrees_a=deg_a,
        degrees_b=deg_b,
        achieved_girth=girth(supergraph(stripped)),
        probability=p,
        clamped=(p == 1.0),
    )
    return stripped, stats


@dataclass(frozen=True)
class MonteCarloResult:
    mean: float
    std_error: float
    trials: int
    probability: float
    per_trial: tuple


def montecarlo_satisfied(lc: LabelCoverInstance, lab: Labeling,
                         params: SampleParams, trials: int) -> MonteCarloResult:
    """Empirical mean of the satisfied-superedge count over seeded trials.

    Trial t draws from the substream (seed, "trial", t); trials are
    schedule-independent and embarrassingly parallel.
    """
    if trials < 1:
        raise InputError("trials must be >= 1")
    lab.check_shape(lc)
    p = sample_probability(params.alpha, lc.sigma_a,
                           effective_degree(lc, params), params.clamp_p)
    threshold = keep_threshold(p)
    ga = np.asarray(lab.gamma_a, dtype=np.int64)
    gb = np.asarray(lab.gamma_b, dtype=np.int64)
    ea, eb, rel_ids = lc.edge_arrays()
    keys = ga[ea] * np.int64(lc.sigma_b) + gb[eb]
    sat_mask = np.zeros(lc.edge_count, dtype=bool)
    for rid, rel in enumerate(lc.relations):
        rel_keys = np.array([a * lc.sigma_b + b for a, b in rel.pairs], dtype=np.int64)
        mask = rel_ids == rid
        sat_mask[mask] = np.isin(keys[mask], rel_keys)
    counts = []
    for t in range(trials):
        if threshold is None:
            kept = np.ones(lc.edge_count, dtype=bool)
        else:
            draws = draws_array(child_seed(params.seed, "trial", t), lc.edge_count)
            kept = draws < np.uint64(threshold)
        counts.append(int((kept & sat_mask).sum()))
    arr = np.array(counts, dtype=np.float64)
    mean = float(arr.mean())
    std_error = float(arr.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    return MonteCarloResult(mean, std_error, trials, p, tuple(counts))


def montecarlo_kept_edges(lc: LabelCoverInstance, params: SampleParams,
                          trials: int) -> MonteCarloResult:
    """Empirical mean of the kept-superedge count over seeded trials."""
    if trials < 1:
        raise InputError("trials must be >= 1")
    p = sample_probability(params.alpha, lc.sigma_a,
                           effective_degree(lc, params), params.clamp_p)
    threshold = keep_threshold(p)
    counts = []
    for t in range(trials):
        if threshold is None:
            counts.append(lc.edge_count)
            continue
        draws = draws_array(child_seed(params.seed, "trial", t), lc.edge_count)
        counts.append(int((draws < np.uint64(threshold)).sum()))
    arr = np.array(counts, dtype=np.float64)
    mean = float(arr.mean())
    std_error = float(arr.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    return MonteCarloResult(mean, std_error, trials, p, tuple(counts))
