"""Direct-sampling Monte Carlo driver for path-centroid distributions.

Every sample is an independent path of L uniform sphere points; weights,
observables, and diagnostics are accumulated in vectorized chunks.  Runs
are reproducible: worker w draws from a stream hashed from (seed, w), and
partial accumulators merge in worker order, so a fixed (seed, workers)
pair gives bit-identical output.  Imaginary parts of the weights cancel
against time-reversed paths and are dropped from the estimators, but their
mean is tracked as a diagnostic.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .estimators import (
    MomentTable,
    SignProblemError,
    WeightedHistogram,
    _check_normalizable,
    _jackknife_ratio,
)
from .model import ModelConfig, _product_factors_components, _weights_components
from .geometry import _sample_components

OBSERVABLE_RADIAL = "radial"
OBSERVABLE_Z = "z"

# samples per vectorized kernel call
_CHUNK = 1 << 18


def default_range(model: ModelConfig, observable: str) -> tuple[float, float]:
    """Histogram range covering the exact support plus Gaussian tails."""
    top = model.spin.value + 1.5
    if observable == OBSERVABLE_RADIAL:
        return (0.0, top)
    return (-top, top)


@dataclass(frozen=True)
class RunConfig:
    """Everything one run needs: model, path length, budget, seeding, layout."""

    model: ModelConfig
    num_vertices: int
    samples: int
    seed: int = 1
    workers: int = 1
    observable: str = OBSERVABLE_RADIAL
    bins: int = 120
    value_range: tuple[float, float] | None = None
    batches: int = 100
    probes: tuple[tuple[float, float, float], ...] = ()

    def __post_init__(self):
        if self.num_vertices < 1:
            raise ValueError("num_vertices must be >= 1")
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.bins < 1:
            raise ValueError("bins must be >= 1")
        if self.observable not in (OBSERVABLE_RADIAL, OBSERVABLE_Z):
            raise ValueError(f"unknown observable {self.observable!r}")
        if self.value_range is None:
            object.__setattr__(self, "value_range", default_range(self.model, self.observable))
        lo, hi = self.value_range
        if not (np.isfinite(lo) and np.isfinite(hi) and lo < hi):
            raise ValueError("value_range must be finite with lo < hi")
        object.__setattr__(self, "value_range", (float(lo), float(hi)))
        object.__setattr__(self, "batches", max(1, min(self.batches, self.samples)))
        object.__setattr__(self, "probes", tuple(tuple(float(v) for v in p) for p in self.probes))


@dataclass(frozen=True)
class RunDiagnostics:
    """Weight-sum bookkeeping for a finished run."""

    sum_re: float
    sum_abs: float
    sum_im: float
    samples: int
    average_sign: float
    sign_sigma: float
    imag_mean: float
    imag_sigma: float
    wall_time_s: float


@dataclass(frozen=True)
class ChiEstimate:
    """Monte Carlo characteristic-function value with batch error bars."""

    lam: tuple[float, float, float]
    value: complex
    stderr_re: float
    stderr_im: float
    samples: int

    def sigma_distance(self, oracle: complex) -> float:
        """Largest per-component deviation from ``oracle`` in units of stderr."""
        return max(
            _component_distance(self.value.real - oracle.real, self.stderr_re),
            _component_distance(self.value.imag - oracle.imag, self.stderr_im),
        )


# deviations below this are float rounding, not statistics (chi is O(1))
_DISTANCE_FLOOR = 1e-13


def _component_distance(diff: float, sigma: float) -> float:
    if abs(diff) <= _DISTANCE_FLOOR:
        return 0.0
    return abs(diff) / sigma if sigma > 0.0 else np.inf


def _split_counts(total: int, parts: int) -> list[int]:
    base, rem = divmod(total, parts)
    return [base + (1 if i < rem else 0) for i in range(parts)]


def _worker_rng(config: RunConfig, worker: int) -> np.random.Generator:
    seed = int(config.seed) & 0xFFFFFFFFFFFFFFFF
    return np.random.default_rng(np.random.SeedSequence([seed, worker]))


def _worker_batch_slices(config: RunConfig) -> list[tuple[int, list[int]]]:
    """Assign contiguous batch index ranges to workers: [(first_batch, counts)]."""
    batch_samples = _split_counts(config.samples, config.batches)
    per_worker = _split_counts(config.batches, config.workers)
    out = []
    start = 0
    for nb in per_worker:
        out.append((start, batch_samples[start : start + nb]))
        start += nb
    return out


def _observable_values(x, y, z, config: RunConfig) -> np.ndarray:
    scale = config.model.spin.value + 1.0
    if config.observable == OBSERVABLE_RADIAL:
        return scale * np.sqrt(x.mean(axis=1) ** 2 + y.mean(axis=1) ** 2 + z.mean(axis=1) ** 2)
    return scale * z.mean(axis=1)


def _track_cumulant(config: RunConfig) -> bool:
    return config.model.beta == 0.0 and config.model.spin.twice >= 1


def _pcd_worker(args) -> tuple[WeightedHistogram, MomentTable]:
    config, worker, first_batch, batch_samples = args
    rng = _worker_rng(config, worker)
    lo, hi = config.value_range
    track = _track_cumulant(config)
    hist = WeightedHistogram(lo, hi, config.bins, config.batches)
    moments = MomentTable(config.batches, track_cumulant=track)
    model = config.model
    s1 = model.spin.value + 1.0
    L = config.num_vertices
    for offset, n in enumerate(batch_samples):
        batch = first_batch + offset
        done = 0
        while done < n:
            k = min(_CHUNK, n - done)
            done += k
            x, y, z = _sample_components(rng, (k, L))
            w = _weights_components(x, y, z, model)
            values = _observable_values(x, y, z, config)
            cum = None
            if track:
                cum = -(s1 / 2.0) * (1.0 - (z * z).mean(axis=1))
            hist.accumulate(values, w, batch)
            moments.accumulate(values, w, batch, cumulant_values=cum)
    return hist, moments


def _run_mapped(config: RunConfig, worker_fn):
    tasks = [
        (config, w, first, counts)
        for w, (first, counts) in enumerate(_worker_batch_slices(config))
        if counts
    ]
    if config.workers == 1 or len(tasks) == 1:
        return [worker_fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=config.workers) as pool:
        return list(pool.map(worker_fn, tasks))


def run_pcd(config: RunConfig):
    """Sample the path-centroid distribution.

    Returns (HistogramResult, MomentResult, RunDiagnostics).  Raises
    SignProblemError (with diagnostics attached) when the real weights
    cancel and no normalized estimate exists.
    """
    t0 = time.perf_counter()
    parts = _run_mapped(config, _pcd_worker)
    hist, moments = parts[0]
    for h, m in parts[1:]:
        hist.merge(h)
        moments.merge(m)
    diag = _diagnostics(hist, config, time.perf_counter() - t0)
    try:
        hist_result = hist.normalize()
        moment_result = moments.normalize()
    except SignProblemError as err:
        err.diagnostics = diag
        raise
    return hist_result, moment_result, diag


def _diagnostics(hist: WeightedHistogram, config: RunConfig, wall: float) -> RunDiagnostics:
    sign, sign_sigma = _jackknife_ratio(hist._sum_re, hist._sum_abs)
    imag_mean, imag_sigma = hist.imag_mean_sigma()
    return RunDiagnostics(
        sum_re=hist.sum_re,
        sum_abs=hist.sum_abs,
        sum_im=hist.sum_im,
        samples=hist.count,
        average_sign=float(sign),
        sign_sigma=float(sign_sigma),
        imag_mean=imag_mean,
        imag_sigma=imag_sigma,
        wall_time_s=wall,
    )


def _chi_worker(args):
    config, worker, first_batch, batch_samples = args
    rng = _worker_rng(config, worker)
    model = config.model
    bare = ModelConfig(model.spin)  # overlap factor only, no Hamiltonian
    L = config.num_vertices
    lams = np.asarray(config.probes, dtype=float)
    nb = config.batches
    num = np.zeros((nb, len(lams)), dtype=np.complex128)
    den = np.zeros(nb, dtype=np.complex128)
    den_abs = np.zeros(nb)
    for offset, n in enumerate(batch_samples):
        batch = first_batch + offset
        done = 0
        while done < n:
            k = min(_CHUNK, n - done)
            done += k
            x, y, z = _sample_components(rng, (k, L))
            w0 = _weights_components(x, y, z, bare)
            d = w0 * _product_factors_components(x, y, z, model, None)
            den[batch] += d.sum()
            den_abs[batch] += np.abs(d).sum()
            for j, lam in enumerate(lams):
                f = _product_factors_components(x, y, z, model, lam)
                num[batch, j] += (w0 * f).sum()
    return num, den, den_abs


def estimate_chi_grid(config: RunConfig, lams=None) -> list[ChiEstimate]:
    """Characteristic-function estimates for several probe vectors.

    All probes share one sample stream, so the estimates are correlated but
    each is an unbiased ratio whose expectation is the finite-L matrix
    trace.  ``lams`` defaults to ``config.probes``.
    """
    if lams is not None:
        config = replace(config, probes=tuple(tuple(float(v) for v in l) for l in lams))
    if not config.probes:
        raise ValueError("no probe vectors given")
    parts = _run_mapped(config, _chi_worker)
    num = sum(p[0] for p in parts)
    den = sum(p[1] for p in parts)
    den_abs = float(sum(p[2] for p in parts).sum())
    _check_normalizable(float(den.sum().real), den_abs)
    out = []
    total_den = den.sum()
    nb = config.batches
    rep_den = total_den - den
    degenerate = bool(np.any(rep_den == 0.0))
    for j, lam in enumerate(config.probes):
        # contiguous copy: keeps the reduction bitwise identical to den.sum()
        col = np.ascontiguousarray(num[:, j])
        total_num = col.sum()
        # ratio of identical estimators (lambda = 0) is 1 by construction;
        # complex division would leave an ulp-sized imaginary residue
        value = 1.0 + 0.0j if total_num == total_den else total_num / total_den
        if degenerate:
            err_re = err_im = np.inf
        else:
            rep = (total_num - col) / rep_den
            factor = (nb - 1) / nb
            err_re = np.sqrt(factor * ((rep.real - rep.real.mean()) ** 2).sum())
            err_im = np.sqrt(factor * ((rep.imag - rep.imag.mean()) ** 2).sum())
        out.append(
            ChiEstimate(
                lam=lam,
                value=complex(value),
                stderr_re=float(err_re),
                stderr_im=float(err_im),
                samples=config.samples,
            )
        )
    return out


def estimate_chi(config: RunConfig, lam) -> ChiEstimate:
    """Characteristic-function estimate at one probe vector."""
    return estimate_chi_grid(config, [tuple(float(v) for v in lam)])[0]


def phase_scatter(config: RunConfig, max_points: int) -> np.ndarray:
    """Pairs (observable value, Berry phase of the weight), shape (n, 2).

    Phases are principal values in (-pi, pi].  The Hamiltonian factor is
    real and does not move the phase.
    """
    if max_points < 1:
        raise ValueError("max_points must be >= 1")
    rng = _worker_rng(config, 0)
    L = config.num_vertices
    rows = []
    done = 0
    while done < max_points:
        k = min(_CHUNK, max_points - done)
        done += k
        x, y, z = _sample_components(rng, (k, L))
        w = _weights_components(x, y, z, config.model)
        values = _observable_values(x, y, z, config)
        rows.append(np.column_stack([values, np.angle(w)]))
    return np.concatenate(rows, axis=0)
