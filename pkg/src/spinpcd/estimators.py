"""Sign-weighted histogram and moment accumulators with batch error bars.

All estimates are ratio estimators normalized by the total real weight.
Accumulators keep per-batch partial sums; merging adds the per-batch
arrays, so merge(a, b) equals accumulating everything into one object.
Error bars come from delete-one-batch (jackknife) replicates of the
ratio, which reduces to plain batch means when the denominator is stable
and stays finite when individual batches are sign-noisy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# A run is declared sign-problem-dead when sum Re(w) <= 0 or falls below
# this fraction of sum |w|.
SIGN_FAILURE_RATIO = 1e-12


class SignProblemError(RuntimeError):
    """Raised when the real weights cancel and no normalized output exists."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics


def _check_normalizable(sum_re: float, sum_abs: float) -> None:
    if sum_re <= 0.0 or sum_re < SIGN_FAILURE_RATIO * sum_abs:
        raise SignProblemError(
            f"real weights cancelled: sum Re(w) = {sum_re:g} vs sum |w| = {sum_abs:g}"
        )


def _jackknife_ratio(num_b: np.ndarray, den_b: np.ndarray):
    """Ratio sum(num)/sum(den) and its delete-one-batch error estimate.

    ``num_b`` has shape (B,) or (B, K); ``den_b`` has shape (B,).
    """
    num = num_b.sum(axis=0)
    den = den_b.sum()
    est = num / den
    rep_den = den - den_b
    if np.any(rep_den == 0.0):
        return est, np.full(np.shape(est), np.inf)
    if num_b.ndim == 1:
        rep = (num - num_b) / rep_den
    else:
        rep = (num[None, :] - num_b) / rep_den[:, None]
    nb = num_b.shape[0]
    err = np.sqrt((nb - 1) / nb * ((rep - rep.mean(axis=0)) ** 2).sum(axis=0))
    return est, err


@dataclass(frozen=True)
class HistogramResult:
    """Normalized sign-weighted histogram with per-bin error bars."""

    edges: np.ndarray
    density: np.ndarray
    stderr: np.ndarray
    sum_re: float
    sum_abs: float
    sum_im: float
    count: int
    overflow_weight: float
    overflow_count: int

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.edges[:-1] + self.edges[1:])

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.edges)


class WeightedHistogram:
    """Uniform-bin histogram of a real observable with complex weights.

    Only Re(w) enters the bins; Im(w) and |w| are tracked as totals.
    Out-of-range samples are tallied separately but stay in the
    normalization, so the in-range densities integrate to
    1 - (overflow weight)/(total weight).
    """

    def __init__(self, lo: float, hi: float, bins: int, batches: int = 100):
        if not (np.isfinite(lo) and np.isfinite(hi) and lo < hi):
            raise ValueError("need finite lo < hi")
        if bins < 1 or batches < 1:
            raise ValueError("bins and batches must be >= 1")
        self.lo = float(lo)
        self.hi = float(hi)
        self.bins = int(bins)
        self.batches = int(batches)
        self.edges = np.linspace(self.lo, self.hi, self.bins + 1)
        self._width = (self.hi - self.lo) / self.bins
        self._bin_re = np.zeros((self.batches, self.bins))
        self._sum_re = np.zeros(self.batches)
        self._sum_im = np.zeros(self.batches)
        self._sum_abs = np.zeros(self.batches)
        self._count = np.zeros(self.batches, dtype=np.int64)
        self._over_w = np.zeros(self.batches)
        self._over_n = np.zeros(self.batches, dtype=np.int64)

    def accumulate(self, values, weights, batch: int = 0) -> None:
        values = np.atleast_1d(np.asarray(values, dtype=float))
        weights = np.atleast_1d(np.asarray(weights, dtype=np.complex128))
        wr = weights.real
        self._sum_re[batch] += wr.sum()
        self._sum_im[batch] += weights.imag.sum()
        self._sum_abs[batch] += np.abs(weights).sum()
        self._count[batch] += values.size
        inside = (values >= self.lo) & (values < self.hi)
        if not inside.all():
            out = ~inside
            self._over_w[batch] += wr[out].sum()
            self._over_n[batch] += int(out.sum())
            values = values[inside]
            wr = wr[inside]
        idx = ((values - self.lo) / self._width).astype(np.int64)
        np.minimum(idx, self.bins - 1, out=idx)  # guard hi-edge rounding
        self._bin_re[batch] += np.bincount(idx, weights=wr, minlength=self.bins)

    def merge(self, other: "WeightedHistogram") -> None:
        if (other.lo, other.hi, other.bins, other.batches) != (self.lo, self.hi, self.bins, self.batches):
            raise ValueError("histogram layouts differ")
        self._bin_re += other._bin_re
        self._sum_re += other._sum_re
        self._sum_im += other._sum_im
        self._sum_abs += other._sum_abs
        self._count += other._count
        self._over_w += other._over_w
        self._over_n += other._over_n

    @property
    def sum_re(self) -> float:
        return float(self._sum_re.sum())

    @property
    def sum_abs(self) -> float:
        return float(self._sum_abs.sum())

    @property
    def sum_im(self) -> float:
        return float(self._sum_im.sum())

    @property
    def count(self) -> int:
        return int(self._count.sum())

    def imag_mean_sigma(self) -> tuple[float, float]:
        """Mean Im(w) per sample and its batch-means error (0 in expectation)."""
        live = self._count > 0
        means = self._sum_im[live] / self._count[live]
        if means.size < 2:
            return float(means.mean()) if means.size else 0.0, np.inf
        return float(means.mean()), float(means.std(ddof=1) / np.sqrt(means.size))

    def normalize(self) -> HistogramResult:
        _check_normalizable(self.sum_re, self.sum_abs)
        dens_w, err_w = _jackknife_ratio(self._bin_re, self._sum_re)
        return HistogramResult(
            edges=self.edges,
            density=dens_w / self._width,
            stderr=err_w / self._width,
            sum_re=self.sum_re,
            sum_abs=self.sum_abs,
            sum_im=self.sum_im,
            count=self.count,
            overflow_weight=float(self._over_w.sum()),
            overflow_count=int(self._over_n.sum()),
        )


@dataclass(frozen=True)
class MomentResult:
    """Normalized raw moments (orders 0..4) and optional covariance-trace term."""

    values: np.ndarray
    stderr: np.ndarray
    cumulant: float | None
    cumulant_stderr: float | None


class MomentTable:
    """Sign-weighted raw moments of the observable, orders 0 through 4.

    Optionally accumulates the per-path vertex average of
    P_zz - P_z^2 (the symbol-covariance diagonal used for the finite-L
    Gaussian width); enable with ``track_cumulant``.
    """

    ORDERS = 5

    def __init__(self, batches: int = 100, track_cumulant: bool = False):
        self.batches = int(batches)
        self._mom = np.zeros((self.batches, self.ORDERS))
        self._sum_abs = np.zeros(self.batches)
        self._cum = np.zeros(self.batches) if track_cumulant else None

    def accumulate(self, values, weights, batch: int = 0, cumulant_values=None) -> None:
        values = np.atleast_1d(np.asarray(values, dtype=float))
        w = np.atleast_1d(np.asarray(weights, dtype=np.complex128))
        wr = w.real
        self._sum_abs[batch] += np.abs(w).sum()
        vk = wr.copy()
        self._mom[batch, 0] += vk.sum()
        for k in range(1, self.ORDERS):
            vk *= values
            self._mom[batch, k] += vk.sum()
        if self._cum is not None:
            if cumulant_values is None:
                raise ValueError("cumulant tracking enabled but no values supplied")
            self._cum[batch] += (wr * np.atleast_1d(np.asarray(cumulant_values, dtype=float))).sum()

    def merge(self, other: "MomentTable") -> None:
        if other.batches != self.batches or (self._cum is None) != (other._cum is None):
            raise ValueError("moment table layouts differ")
        self._mom += other._mom
        self._sum_abs += other._sum_abs
        if self._cum is not None:
            self._cum += other._cum

    def normalize(self) -> MomentResult:
        sum_re = float(self._mom[:, 0].sum())
        _check_normalizable(sum_re, float(self._sum_abs.sum()))
        vals, errs = _jackknife_ratio(self._mom, self._mom[:, 0])
        if self._cum is None:
            cum = cum_err = None
        else:
            c, e = _jackknife_ratio(self._cum, self._mom[:, 0])
            cum, cum_err = float(c), float(e)
        return MomentResult(values=vals, stderr=errs, cumulant=cum, cumulant_stderr=cum_err)


def estimate_cumulant_C(moments: MomentTable | MomentResult) -> tuple[float, float]:
    """Diagonal entry of the symbol-covariance matrix, with error bar.

    Monte Carlo estimate of the weighted path average of
    (1/L) sum_l (P_zz - P_z^2); for a free spin it equals -(s+1)/3.
    Requires a run that tracked the cumulant (beta = 0, s > 0).
    """
    result = moments.normalize() if isinstance(moments, MomentTable) else moments
    if result.cumulant is None:
        raise ValueError("run did not track the cumulant (needs beta = 0 and s > 0)")
    return result.cumulant, result.cumulant_stderr
