"""Shared independent oracles for the test suite.

Everything here recomputes quantities by a different route than the
package: loop overlaps via dense 2x2 projector products, triangle
overlaps via the closed dot/cross form, and the exact i.i.d.-centroid
density via characteristic-function quadrature.
"""

from __future__ import annotations

import numpy as np
from scipy.integrate import quad

_PAULI = np.array(
    [
        [[0.0, 1.0], [1.0, 0.0]],
        [[0.0, -1.0j], [1.0j, 0.0]],
        [[1.0, 0.0], [0.0, -1.0]],
    ],
    dtype=np.complex128,
)


def projector_loop_oracle(path) -> complex:
    """Loop overlap by brute force: trace of the product of (1 + n.sigma)/2."""
    path = np.asarray(path, dtype=float)
    prod = np.eye(2, dtype=np.complex128)
    for n in path:
        proj = 0.5 * (np.eye(2) + n[0] * _PAULI[0] + n[1] * _PAULI[1] + n[2] * _PAULI[2])
        prod = prod @ proj
    return complex(np.trace(prod))


def triangle_overlap_oracle(n1, n2, n3) -> complex:
    """Closed form for the spin-1/2 triangle loop product."""
    n1, n2, n3 = (np.asarray(v, dtype=float) for v in (n1, n2, n3))
    dots = n1 @ n2 + n2 @ n3 + n3 @ n1
    triple = n1 @ np.cross(n2, n3)
    return complex((1.0 + dots + 1j * triple) / 4.0)


def random_units(rng, n: int) -> np.ndarray:
    """Uniform unit vectors by normalized Gaussians (independent of the package)."""
    v = rng.standard_normal((n, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def random_rotation(rng) -> np.ndarray:
    """Haar-ish random rotation matrix with det +1."""
    q, r = np.linalg.qr(rng.standard_normal((3, 3)))
    q = q @ np.diag(np.sign(np.diag(r)))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def flight_density(R: float, L: int) -> float:
    """Exact density of |mean of L i.i.d. uniform sphere vectors|.

    Inversion of the random-flight characteristic function:
    p(r) = (2 r / pi) * int_0^inf t sin(r t) sinc(t)^L dt for the resultant
    r = R * L, rescaled to the mean.
    """
    r = R * L
    if r <= 0.0:
        return 0.0
    val = quad(
        lambda t: t * np.sin(r * t) * np.sinc(t / np.pi) ** L,
        0.0,
        np.inf,
        limit=400,
    )[0]
    return float((2.0 * r / np.pi) * val * L)


_FLIGHT_CACHE: dict = {}


def flight_bin_means(edges: np.ndarray, L: int) -> np.ndarray:
    """Exact flight density averaged over each histogram bin."""
    key = (L, len(edges), float(edges[0]), float(edges[-1]))
    if key not in _FLIGHT_CACHE:
        means = np.empty(len(edges) - 1)
        for i in range(len(edges) - 1):
            lo, hi = edges[i], edges[i + 1]
            if lo >= 1.0:
                means[i] = 0.0
                continue
            val = quad(lambda R: flight_density(R, L), lo, min(hi, 1.0), limit=200)[0]
            means[i] = val / (hi - lo)
        _FLIGHT_CACHE[key] = means
    return _FLIGHT_CACHE[key]
