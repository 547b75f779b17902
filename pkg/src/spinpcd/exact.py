"""Exact references: dense spin matrices, finite-L trace oracle, closed forms.

Everything here is deterministic desk-scale linear algebra in the
(2s+1)-dimensional spin space, used as ground truth for the Monte Carlo
estimators.  The radial Wigner distribution itself is singular (a ladder
of delta-function derivatives on quantized spheres), so only its moments,
its Gaussian-smeared finite-L form, and its zero ladder are exposed;
nothing evaluates the distribution pointwise.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .model import HalfInteger


def spin_matrices(s) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Dense angular-momentum matrices (S_x, S_y, S_z) in the |s, m> basis.

    Basis ordering is m = s, s-1, ..., -s.  Satisfies [S_x, S_y] = i S_z
    (and cyclic) and Tr S_z^2 = s(s+1)(2s+1)/3.
    """
    s = HalfInteger.parse(s)
    d = s.twice + 1
    m = (s.twice - 2 * np.arange(d)) / 2.0
    sv = s.value
    sz = np.diag(m).astype(np.complex128)
    raise_elems = np.sqrt(sv * (sv + 1.0) - m[1:] * (m[1:] + 1.0))
    sp = np.zeros((d, d), dtype=np.complex128)
    sp[np.arange(d - 1), np.arange(1, d)] = raise_elems
    sm = sp.conj().T
    sx = 0.5 * (sp + sm)
    sy = -0.5j * (sp - sm)
    return sx, sy, sz


def hamiltonian_matrix(s, field) -> np.ndarray:
    """Zeeman Hamiltonian H = -B.S as a dense matrix."""
    sx, sy, sz = spin_matrices(s)
    bx, by, bz = (float(v) for v in field)
    return -(bx * sx + by * sy + bz * sz)


def trotter_chi(s, beta: float, field, lam, L: int) -> complex:
    """Finite-L characteristic function from the L-factor trace.

    Tr[(1 - (beta*H + i lam.S)/L)^L] / Tr[(1 - beta*H/L)^L], computed by
    dense matrix powers.  This equals the expectation of the Monte Carlo
    product-mode estimator exactly at every finite L, not just as L -> inf.
    """
    s = HalfInteger.parse(s)
    if L < 1:
        raise ValueError("L must be >= 1")
    sx, sy, sz = spin_matrices(s)
    lam = np.asarray(lam, dtype=float)
    d = s.twice + 1
    h = hamiltonian_matrix(s, field)
    eye = np.eye(d, dtype=np.complex128)
    num = eye - (beta * h + 1j * (lam[0] * sx + lam[1] * sy + lam[2] * sz)) / L
    den = eye - beta * h / L
    tr_num = np.trace(np.linalg.matrix_power(num, L))
    tr_den = np.trace(np.linalg.matrix_power(den, L))
    return complex(tr_num / tr_den)


def wigner_radial_moment(s, k: int) -> Fraction:
    """Moment integral S^(2k) of the zero-field radial spin distribution.

    Exact rational value (2(2k+1)/(2s+1)) * sum over the positive ladder
    m = 1/2, 3/2, ..., s (half-integer s) or m = 1, ..., s (integer s) of
    m^(2k); the point mass at the origin for integer s contributes only at
    k = 0, where the total is 1.
    """
    s = HalfInteger.parse(s)
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return Fraction(1)
    start = 2 if s.twice % 2 == 0 else 1
    total = sum(Fraction(tw, 2) ** (2 * k) for tw in range(start, s.twice + 1, 2))
    return Fraction(2 * (2 * k + 1), s.twice + 1) * total


def smeared_wigner_radial(S, s, L: int):
    """Radial centroid density at finite L: quantized ladder blurred by a Gaussian.

    4*pi*S^2 times the radially symmetric density whose ladder of weighted
    Gaussians (variance (s+1)/(3L), signed slopes (1 - m/S)) reproduces the
    quantized spheres as L -> inf.  Integrates to 1 for every s and L; the
    value at S = 0 is the continuous limit 0.  Vectorized in S.
    """
    s = HalfInteger.parse(s)
    if L < 1:
        raise ValueError("L must be >= 1")
    S = np.asarray(S, dtype=float)
    a = 3.0 * L / (s.value + 1.0)  # inverse Gaussian variance
    norm = (a / (2.0 * np.pi)) ** 1.5 / (s.twice + 1.0)
    out = np.zeros(np.broadcast(S).shape)
    for tw in range(-s.twice, s.twice + 1, 2):
        m = tw / 2.0
        # 4*pi*S^2 (1 - m/S) written without the S = 0 singularity
        out += (4.0 * np.pi * S * S - 4.0 * np.pi * S * m) * np.exp(-0.5 * a * (S - m) ** 2)
    out *= norm
    return out if out.ndim else float(out)


def zero_locations(s, kind: str = "exact") -> np.ndarray:
    """Ladder of cos(theta) values where the radial density crosses zero upward.

    kind="exact": m/(s+1) for the positive ladder m (the quantized sphere
    radii in units of s+1), ending at 1/(2(s+1)) for half-integer s.
    kind="heuristic": (4s-1)/(4s), (4s-5)/(4s), ... from the small-circle
    Berry-phase argument (phase an odd multiple of pi/2); kept for
    documentation and the spacing comparison only, never as ground truth.
    Values are returned in descending order.
    """
    s = HalfInteger.parse(s)
    if s.twice < 1:
        raise ValueError("needs s >= 1/2")
    if kind == "exact":
        start = 2 if s.twice % 2 == 0 else 1
        ladder = [tw / (s.twice + 2.0) for tw in range(start, s.twice + 1, 2)]
        return np.array(ladder[::-1])
    if kind == "heuristic":
        ladder = [num / (2.0 * s.twice) for num in range(2 * s.twice - 1, 0, -4)]
        return np.array(ladder)
    raise ValueError(f"unknown kind {kind!r}")


def thermal_sz(s, beta: float, bz: float) -> float:
    """Thermal expectation of S_z for a free spin in a z field (H = -bz S_z)."""
    _, _, sz = spin_matrices(s)
    m = np.diag(sz).real
    logw = beta * bz * m
    w = np.diag(np.exp(logw - logw.max())).astype(np.complex128)  # overflow-safe
    return float(np.trace(sz @ w).real / np.trace(w).real)
