"""Spin-s path weights: diagonal symbols, Berry phases, Hamiltonian factors.

The spin quantum number s is stored exactly as twice its value, so the
2s-th power of the loop overlap is an integer power and carries no branch
ambiguity.  The Hamiltonian is the Zeeman form H = -B.S; its diagonal
symbol is linear in the spin symbol P = (s+1) n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .geometry import _loop_overlap_components, loop_overlap_half


@dataclass(frozen=True, order=True)
class HalfInteger:
    """Non-negative integer or half-integer, stored as twice its value."""

    twice: int

    def __post_init__(self):
        if not isinstance(self.twice, (int, np.integer)) or self.twice < 0:
            raise ValueError("twice must be a non-negative integer")
        object.__setattr__(self, "twice", int(self.twice))

    @property
    def value(self) -> float:
        return self.twice / 2.0

    @classmethod
    def parse(cls, text) -> "HalfInteger":
        """Accept '3/2', '1.5', '2', numeric 1.5, or an existing HalfInteger."""
        if isinstance(text, HalfInteger):
            return text
        frac = Fraction(str(text).strip())
        if frac.denominator not in (1, 2) or frac < 0:
            raise ValueError(f"{text!r} is not a non-negative (half-)integer")
        return cls(int(frac * 2))

    def __str__(self) -> str:
        return str(self.twice // 2) if self.twice % 2 == 0 else f"{self.twice}/2"


@dataclass(frozen=True)
class ModelConfig:
    """Spin quantum number, inverse temperature, and Zeeman field B (H = -B.S)."""

    spin: HalfInteger
    beta: float = 0.0
    field: tuple[float, float, float] = (0.0, 0.0, 0.0)

    def __post_init__(self):
        object.__setattr__(self, "spin", HalfInteger.parse(self.spin))
        object.__setattr__(self, "beta", float(self.beta))
        b = tuple(float(v) for v in self.field)
        if len(b) != 3 or not all(np.isfinite(b)):
            raise ValueError("field must be a finite 3-vector")
        if self.beta < 0.0 or not np.isfinite(self.beta):
            raise ValueError("beta must be finite and >= 0")
        object.__setattr__(self, "field", b)


def diagonal_symbol_spin(n, s: HalfInteger) -> np.ndarray:
    """Diagonal symbol of the spin operator: (s+1) n, and 0 for s = 0.

    For s = 0 the spin operator vanishes identically, so its symbol is taken
    as 0 rather than the generic (s+1) n = n.
    """
    s = HalfInteger.parse(s)
    n = np.asarray(n, dtype=float)
    if s.twice == 0:
        return np.zeros_like(n)
    return (s.value + 1.0) * n


def matrix_element_spin(n, s: HalfInteger) -> np.ndarray:
    """Expectation <n|S|n> = s n (not used in path weights)."""
    s = HalfInteger.parse(s)
    return s.value * np.asarray(n, dtype=float)


def diagonal_symbol_sz2(n, s: HalfInteger):
    """Diagonal symbol of S_z^2: (s+1)(s+3/2) z^2 - (s+1)/2."""
    s = HalfInteger.parse(s).value
    z = np.asarray(n, dtype=float)[..., 2]
    return (s + 1.0) * (s + 1.5) * z * z - (s + 1.0) / 2.0


def hamiltonian_symbol(n, cfg: ModelConfig):
    """Diagonal symbol of H = -B.S, i.e. -(s+1) B.n."""
    n = np.asarray(n, dtype=float)
    return -(cfg.spin.value + 1.0) * (n @ np.asarray(cfg.field))


def path_weight(path, cfg: ModelConfig, mode: str = "exponentiated", probe=None) -> complex:
    """Complex weight of one closed path.

    exponentiated mode:  (loop overlap)^(2s) * exp(-beta * mean_l P_H(n_l)),
    the weight used for path-centroid sampling.

    product mode:  (loop overlap)^(2s) * prod_l (1 - (beta*P_H + i probe.P)/L),
    the pre-exponentiation factor string whose expectation over uniform
    vertices reproduces the finite-L matrix trace exactly.

    ``probe`` is an optional 3-vector conjugate to the spin symbol and only
    enters in product mode.
    """
    path = np.asarray(path, dtype=float)
    c = loop_overlap_half(path)
    w = _int_pow(np.asarray([c]), cfg.spin.twice)[0]
    ph = hamiltonian_symbol(path, cfg)
    if mode == "exponentiated":
        if probe is not None:
            raise ValueError("probe vector applies to product mode only")
        if cfg.beta != 0.0:
            w *= np.exp(-cfg.beta * ph.mean())
        return complex(w)
    if mode == "product":
        L = path.shape[0]
        lam = np.zeros(3) if probe is None else np.asarray(probe, dtype=float)
        p_spin = (cfg.spin.value + 1.0) * (path @ lam)
        factors = 1.0 - (cfg.beta * ph + 1j * p_spin) / L
        return complex(w * np.prod(factors))
    raise ValueError(f"unknown mode {mode!r}")


def path_weights(paths, cfg: ModelConfig) -> np.ndarray:
    """Exponentiated-mode weights for a batch of paths of shape (n, L, 3)."""
    paths = np.asarray(paths, dtype=float)
    return _weights_components(paths[..., 0], paths[..., 1], paths[..., 2], cfg)


def _int_pow(c: np.ndarray, k: int) -> np.ndarray:
    """c**k for integer k >= 0 by binary powering.

    Keeps the imaginary part exactly zero for real input (np.power may not),
    which the exact average-sign identities rely on.
    """
    out = np.ones_like(c)
    base = c
    while k:
        if k & 1:
            out = out * base
        k >>= 1
        if k:
            base = base * base
    return out


def _weights_components(x, y, z, cfg: ModelConfig) -> np.ndarray:
    """Exponentiated-mode weights from (n, L) component arrays."""
    c = _loop_overlap_components(x, y, z)
    w = _int_pow(c, cfg.spin.twice)
    if cfg.beta != 0.0:
        bx, by, bz = cfg.field
        s1 = cfg.spin.value + 1.0
        mean_ph = -(s1 / x.shape[1]) * (bx * x.sum(axis=1) + by * y.sum(axis=1) + bz * z.sum(axis=1))
        w = w * np.exp(-cfg.beta * mean_ph)
    return w


def _product_factors_components(x, y, z, cfg: ModelConfig, probe) -> np.ndarray:
    """prod_l (1 - (beta*P_H(n_l) + i probe.P(n_l)) / L) from component arrays.

    The per-vertex combination (-beta*B + i*probe).n is assembled with one
    complex coefficient per axis.
    """
    L = x.shape[1]
    s1 = cfg.spin.value + 1.0
    lam = np.zeros(3) if probe is None else np.asarray(probe, dtype=float)
    coef = (s1 / L) * (cfg.beta * np.asarray(cfg.field) - 1j * lam)
    f = 1.0 + coef[0] * x + coef[1] * y + coef[2] * z
    return np.prod(f, axis=1)
