"""Sphere sampling, path centroids, and spin-1/2 loop overlap products.

A path is an ordered, cyclically closed list of points on the unit sphere,
stored as an array of shape (L, 3); batches of paths stack to (n, L, 3).
The loop overlap is the product of spin-1/2 coherent-state overlaps around
the closed path.  It is computed through two-component spinors; the
per-vertex gauge freedom of the spinor cancels because each vertex enters
once as a bra and once as a ket.
"""

from __future__ import annotations

import numpy as np

# Below this value of 1 + z the north-pole spinor gauge loses precision and
# the south-pole gauge is used instead.
_SOUTH_SWITCH = 1e-8


def sample_uniform(rng: np.random.Generator, size=None) -> np.ndarray:
    """Draw unit vectors with uniform area measure on the sphere.

    z is uniform on [-1, 1] and the azimuth uniform on [0, 2*pi).  Returns
    shape (3,) for ``size=None``, else ``(*size, 3)``.  Deterministic given
    the generator state.
    """
    scalar = size is None
    x, y, z = _sample_components(rng, (1,) if scalar else size)
    out = np.stack([x, y, z], axis=-1)
    return out[0] if scalar else out


def _sample_components(rng: np.random.Generator, size) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Component arrays (x, y, z) of uniform unit vectors, each of shape ``size``."""
    if np.isscalar(size):
        size = (size,)
    u = rng.random((2, *size))
    z = u[0]
    z *= 2.0
    z -= 1.0
    phi = u[1]
    phi *= 2.0 * np.pi
    # (1-z)(1+z) stays accurate near the poles where 1 - z*z cancels
    rho = np.sqrt((1.0 - z) * (1.0 + z))
    x = np.cos(phi)
    x *= rho
    y = np.sin(phi)
    y *= rho
    return x, y, z


def centroid(path: np.ndarray) -> np.ndarray:
    """Vector average of the path vertices; magnitude is at most 1.

    Accepts (L, 3) or a batch (..., L, 3); averages over the vertex axis.
    """
    path = np.asarray(path, dtype=float)
    return path.mean(axis=-2)


def spinor_components(n: np.ndarray, branch: str = "auto") -> tuple[np.ndarray, np.ndarray]:
    """Two-component spinor (a, b) with |n> = (a, b), n.S |n> = (1/2)|n>.

    ``branch`` selects the gauge: "north" is singular at the south pole,
    "south" at the north pole, and "auto" switches to the south form where
    1 + z < 1e-8.  Any branch choice yields the same closed-loop products.
    """
    n = np.asarray(n, dtype=float)
    x, y, z = n[..., 0], n[..., 1], n[..., 2]
    if branch == "north":
        a = np.sqrt((1.0 + z) / 2.0) + 0j
        b = (x + 1j * y) / np.sqrt(2.0 * (1.0 + z))
    elif branch == "south":
        a = (x - 1j * y) / np.sqrt(2.0 * (1.0 - z))
        b = np.sqrt((1.0 - z) / 2.0) + 0j
    elif branch == "auto":
        south = (1.0 + z) < _SOUTH_SWITCH
        opz = np.maximum(1.0 + z, _SOUTH_SWITCH)
        omz = np.maximum(1.0 - z, _SOUTH_SWITCH)
        a = np.where(south, (x - 1j * y) / np.sqrt(2.0 * omz), np.sqrt(opz / 2.0) + 0j)
        b = np.where(south, np.sqrt(omz / 2.0) + 0j, (x + 1j * y) / np.sqrt(2.0 * opz))
    else:
        raise ValueError(f"unknown spinor branch {branch!r}")
    return a, b


def loop_overlap_half(path: np.ndarray) -> complex:
    """Closed-loop product of spin-1/2 overlaps <n_1|n_2><n_2|...<n_L|n_1>.

    The result is gauge-invariant; its magnitude is the product of
    sqrt((1 + n_l . n_{l+1}) / 2) over the edges and its argument is the
    Berry phase of the loop at s = 1/2 (half the enclosed solid angle).
    Consecutive antipodal vertices give a zero factor, which is a valid
    result, not an error.
    """
    path = np.asarray(path, dtype=float)
    if path.ndim != 2 or path.shape[-1] != 3:
        raise ValueError("path must have shape (L, 3)")
    if path.shape[0] < 1:
        raise ValueError("path needs at least one vertex")
    c = _loop_overlap_components(path[None, :, 0], path[None, :, 1], path[None, :, 2])
    return complex(c[0])


def _loop_overlap_components(x: np.ndarray, y: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Batched loop overlap: (n, L) component arrays -> (n,) complex.

    Uses the north-pole gauge everywhere, patching near-antipodal vertices
    with the south-pole gauge (per-vertex gauge cancels in closed loops).
    """
    opz = 1.0 + z
    bad = opz < _SOUTH_SWITCH
    any_bad = bool(bad.any())
    if any_bad:
        opz = np.maximum(opz, _SOUTH_SWITCH)
    ar = np.sqrt(0.5 * opz)
    b = x + 1j * y
    b /= np.sqrt(2.0 * opz)
    if any_bad:
        a = ar.astype(np.complex128)
        omz = 1.0 - z[bad]
        a[bad] = (x[bad] - 1j * y[bad]) / np.sqrt(2.0 * omz)
        b[bad] = np.sqrt(0.5 * omz)
        e = np.conj(a) * np.roll(a, -1, axis=1) + np.conj(b) * np.roll(b, -1, axis=1)
        return np.prod(e, axis=1)
    # fast path: a is real, so conj(a) = a
    e = np.empty(b.shape, dtype=np.complex128)
    e[:, :-1] = np.conj(b[:, :-1])
    e[:, :-1] *= b[:, 1:]
    e[:, :-1] += ar[:, :-1] * ar[:, 1:]
    e[:, -1] = np.conj(b[:, -1]) * b[:, 0] + ar[:, -1] * ar[:, 0]
    return np.prod(e, axis=1)
