import numpy as np
import pytest

from spinpcd.geometry import (
    _loop_overlap_components,
    centroid,
    loop_overlap_half,
    sample_uniform,
    spinor_components,
)

from helpers import projector_loop_oracle, random_rotation, random_units, triangle_overlap_oracle

XHAT = np.array([1.0, 0.0, 0.0])
YHAT = np.array([0.0, 1.0, 0.0])
ZHAT = np.array([0.0, 0.0, 1.0])


def test_sample_reproducible_and_unit_norm():
    a = sample_uniform(np.random.default_rng(123), (1000,))
    b = sample_uniform(np.random.default_rng(123), (1000,))
    assert np.array_equal(a, b)
    assert np.abs(np.linalg.norm(a, axis=1) - 1.0).max() < 1e-12
    single = sample_uniform(np.random.default_rng(7))
    assert single.shape == (3,)
    assert abs(np.linalg.norm(single) - 1.0) < 1e-12


def test_sample_component_means_vanish():
    n = 10**6
    v = sample_uniform(np.random.default_rng(2024), (n,))
    sigma = 1.0 / np.sqrt(3.0 * n)  # per-component std of the mean
    assert np.abs(v.mean(axis=0)).max() < 5.0 * sigma


def test_sample_z2_mean_is_one_third():
    n = 10**6
    v = sample_uniform(np.random.default_rng(99), (n,))
    sigma = np.sqrt(4.0 / 45.0 / n)  # var(z^2) = 1/5 - 1/9
    assert abs((v[:, 2] ** 2).mean() - 1.0 / 3.0) < 5.0 * sigma


def test_centroid_cases():
    n = random_units(np.random.default_rng(1), 1)[0]
    assert np.allclose(centroid(np.tile(n, (4, 1))), n, atol=1e-15)
    assert np.allclose(centroid(np.array([n, -n])), 0.0, atol=1e-15)
    tri = np.array([XHAT, YHAT, ZHAT])
    c = centroid(tri)
    assert np.allclose(c, [1 / 3, 1 / 3, 1 / 3])
    assert abs(np.linalg.norm(c) - 1 / np.sqrt(3)) < 1e-15


def test_overlap_single_vertex_is_one():
    n = random_units(np.random.default_rng(3), 1)[0]
    assert abs(loop_overlap_half(n[None, :]) - 1.0) < 1e-12


def test_overlap_triangle_octant():
    tri = np.array([XHAT, YHAT, ZHAT])
    c = loop_overlap_half(tri)
    assert abs(c - (1 + 1j) / 4) < 1e-12
    assert abs(c - projector_loop_oracle(tri)) < 1e-12
    assert abs(np.angle(c) - np.pi / 4) < 1e-12


def test_overlap_antipodal_edge_gives_zero():
    n = random_units(np.random.default_rng(4), 1)[0]
    path = np.array([n, -n, ZHAT])
    assert abs(loop_overlap_half(path)) < 1e-12


@pytest.mark.parametrize("seed", range(5))
@pytest.mark.parametrize("length", [2, 3, 4, 7])
def test_overlap_matches_projector_oracle(seed, length):
    path = random_units(np.random.default_rng(100 + seed), length)
    c = loop_overlap_half(path)
    assert abs(c - projector_loop_oracle(path)) < 1e-12


@pytest.mark.parametrize("seed", range(5))
def test_triangle_identity(seed):
    tri = random_units(np.random.default_rng(200 + seed), 3)
    assert abs(loop_overlap_half(tri) - triangle_overlap_oracle(*tri)) < 1e-12


@pytest.mark.parametrize("seed", range(4))
def test_gauge_independence(seed):
    rng = np.random.default_rng(300 + seed)
    path = random_units(rng, 5)
    reference = loop_overlap_half(path)
    # arbitrary per-vertex phases cancel around the closed loop
    phases = np.exp(1j * rng.uniform(0, 2 * np.pi, size=5))
    a, b = spinor_components(path)
    a = a * phases
    b = b * phases
    manual = np.prod(np.conj(a) * np.roll(a, -1) + np.conj(b) * np.roll(b, -1))
    assert abs(manual - reference) < 1e-12 * max(1.0, abs(reference))
    # explicit north/south branch mixture
    branches = [spinor_components(n, "south" if i % 2 else "north") for i, n in enumerate(path)]
    av = np.array([p[0] for p in branches])
    bv = np.array([p[1] for p in branches])
    mixed = np.prod(np.conj(av) * np.roll(av, -1) + np.conj(bv) * np.roll(bv, -1))
    assert abs(mixed - reference) < 1e-12 * max(1.0, abs(reference))


@pytest.mark.parametrize("seed", range(4))
def test_rotation_invariance(seed):
    rng = np.random.default_rng(400 + seed)
    path = random_units(rng, 6)
    rot = random_rotation(rng)
    c0 = loop_overlap_half(path)
    c1 = loop_overlap_half(path @ rot.T)
    assert abs(c1 - c0) < 1e-10 * max(1.0, abs(c0))


def test_cyclic_and_reversal_symmetries():
    rng = np.random.default_rng(17)
    path = random_units(rng, 6)
    c = loop_overlap_half(path)
    for shift in range(1, 6):
        assert abs(loop_overlap_half(np.roll(path, shift, axis=0)) - c) < 1e-12
    assert abs(loop_overlap_half(path[::-1]) - np.conj(c)) < 1e-12


def test_magnitude_bound_and_edge_product():
    rng = np.random.default_rng(23)
    for length in (2, 5, 9):
        path = random_units(rng, length)
        c = loop_overlap_half(path)
        assert abs(c) <= 1.0 + 1e-12
        dots = np.sum(path * np.roll(path, -1, axis=0), axis=1)
        assert abs(abs(c) - np.sqrt(np.prod((1.0 + dots) / 2.0))) < 1e-12
    # equality only when every vertex coincides
    n = random_units(rng, 1)[0]
    assert abs(abs(loop_overlap_half(np.tile(n, (4, 1)))) - 1.0) < 1e-12


def test_batch_kernel_matches_scalar():
    rng = np.random.default_rng(31)
    paths = random_units(rng, 4 * 6).reshape(4, 6, 3)
    batch = _loop_overlap_components(paths[..., 0], paths[..., 1], paths[..., 2])
    for row, path in zip(batch, paths):
        assert abs(row - loop_overlap_half(path)) < 1e-12


def test_south_pole_paths_are_stable():
    # vertices exactly at and very near the south pole exercise the gauge switch
    south = np.array([0.0, 0.0, -1.0])
    near = np.array([1e-9, 0.0, -np.sqrt(1.0 - 1e-18)])
    path = np.array([south, XHAT, near, YHAT])
    c = loop_overlap_half(path)
    assert np.isfinite(c.real) and np.isfinite(c.imag)
    assert abs(c - projector_loop_oracle(path)) < 1e-9
