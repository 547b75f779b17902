from fractions import Fraction

import numpy as np
import pytest
from scipy.integrate import quad

from spinpcd.exact import (
    smeared_wigner_radial,
    spin_matrices,
    thermal_sz,
    trotter_chi,
    wigner_radial_moment,
    zero_locations,
)
from spinpcd.model import HalfInteger

from helpers import random_rotation


@pytest.mark.parametrize("spin", ["1/2", "1", "3/2", "2", "7/2"])
def test_spin_matrix_algebra(spin):
    sx, sy, sz = spin_matrices(spin)
    assert np.abs(sx @ sy - sy @ sx - 1j * sz).max() < 1e-12
    assert np.abs(sy @ sz - sz @ sy - 1j * sx).max() < 1e-12
    assert np.abs(sz @ sx - sx @ sz - 1j * sy).max() < 1e-12
    s = HalfInteger.parse(spin).value
    d = int(2 * s + 1)
    assert np.trace(sz @ sz).real == pytest.approx(s * (s + 1) * d / 3.0, abs=1e-12)


def test_trotter_chi_at_zero_probe():
    assert trotter_chi("1", 1.0, (0, 0, 1.0), (0, 0, 0), 6) == pytest.approx(1.0)


def test_trotter_chi_large_L_limits():
    # s = 1/2: chi -> cos(t/2); general s: Dirichlet kernel in |lambda|
    t = 1.3
    v = trotter_chi("1/2", 0.0, (0, 0, 0), (0, 0, t), 1 << 14)
    assert v.real == pytest.approx(np.cos(t / 2), abs=1e-4)
    assert abs(v.imag) < 1e-12
    for spin in ("1", "3/2", "5/2"):
        d = HalfInteger.parse(spin).twice + 1
        v = trotter_chi(spin, 0.0, (0, 0, 0), (0, 0, 1.0), 1 << 14)
        exact = np.sin(d * 0.5) / (d * np.sin(0.5))
        assert v.real == pytest.approx(exact, abs=1e-4)


def test_trotter_chi_hermiticity():
    rng = np.random.default_rng(3)
    lam = rng.standard_normal(3)
    field = rng.standard_normal(3)
    a = trotter_chi("3/2", 0.8, field, lam, 7)
    b = trotter_chi("3/2", 0.8, field, -lam, 7)
    assert abs(np.conj(a) - b) < 1e-12


def test_trotter_chi_isotropy_at_zero_field():
    rng = np.random.default_rng(5)
    lam = np.array([0.4, -1.1, 0.6])
    base = trotter_chi("1", 0.0, (0, 0, 0), lam, 9)
    for _ in range(5):
        rot = random_rotation(rng)
        v = trotter_chi("1", 0.0, (0, 0, 0), rot @ lam, 9)
        assert abs(v - base) < 1e-10


def test_radial_moments():
    for spin in ("0", "1/2", "1", "3/2", "2", "4", "11/2", "6"):
        assert wigner_radial_moment(spin, 0) == 1
        tw = HalfInteger.parse(spin).twice
        assert wigner_radial_moment(spin, 1) == Fraction(tw * (tw + 2), 4)  # s(s+1)
    assert wigner_radial_moment("1/2", 1) == Fraction(3, 4)
    assert wigner_radial_moment("3/2", 1) == Fraction(15, 4)


@pytest.mark.parametrize("spin", ["0", "1/2", "1", "3/2"])
@pytest.mark.parametrize("L", [5, 10, 15])
def test_smeared_density_normalized(spin, L):
    s = HalfInteger.parse(spin).value
    val, err = quad(lambda S: smeared_wigner_radial(S, spin, L), 0.0, s + 4.0, limit=300)
    assert abs(val - 1.0) < 1e-6


def test_smeared_density_spin_zero_form():
    # single-term Maxwell-like closed form
    L = 10
    S = np.linspace(0.0, 1.5, 7)
    expected = 4 * np.pi * S**2 * (3 * L / (2 * np.pi)) ** 1.5 * np.exp(-3 * L * S**2 / 2)
    assert np.allclose(smeared_wigner_radial(S, "0", L), expected, rtol=1e-12)
    assert smeared_wigner_radial(0.0, "0", L) == 0.0


def test_smeared_density_zero_crossing_near_quantized_radius():
    # s = 1: the density changes sign at S = 1 up to exponentially small terms
    grid = np.linspace(0.7, 1.3, 6001)
    vals = smeared_wigner_radial(grid, "1", 15)
    idx = np.where(np.diff(np.sign(vals)) > 0)[0]
    assert len(idx) >= 1
    crossing = grid[idx[0]]
    assert abs(crossing - 1.0) < 0.02


def test_smeared_density_decays_between_radii():
    # S = 0.6 sits strictly between the quantized radii 0 and 1
    for L in (50, 200):
        assert smeared_wigner_radial(0.6, "1", L) == pytest.approx(0.0, abs=np.exp(-L / 25))
    assert abs(smeared_wigner_radial(0.6, "1", 200)) < abs(smeared_wigner_radial(0.6, "1", 50))


@pytest.mark.parametrize("spin", ["1/2", "1"])
def test_smeared_second_moment_tracks_inverse_L(spin):
    s = HalfInteger.parse(spin).value

    def second_moment(L):
        return quad(
            lambda S: S * S * smeared_wigner_radial(S, spin, L), 0.0, s + 4.0, limit=300
        )[0]

    m20, m40 = second_moment(20), second_moment(40)
    predicted = (s + 1) * (1 / 20 - 1 / 40)
    assert abs((m20 - m40) - predicted) < 0.10 * predicted
    assert m40 == pytest.approx(s * (s + 1) + (s + 1) / 40, rel=1e-6)


def test_zero_ladders():
    assert np.allclose(zero_locations("1", "exact"), [0.5])
    assert np.allclose(zero_locations("1", "heuristic"), [0.75])
    assert np.allclose(zero_locations("1/2", "exact"), [1.0 / 3.0])
    assert np.allclose(zero_locations("1/2", "heuristic"), [0.5])
    assert np.allclose(zero_locations("2", "exact"), [2 / 3, 1 / 3])
    assert np.allclose(zero_locations("2", "heuristic"), [7 / 8, 3 / 8])
    assert np.allclose(zero_locations("5/2", "exact"), [5 / 7, 3 / 7, 1 / 7])
    with pytest.raises(ValueError):
        zero_locations("0")
    with pytest.raises(ValueError):
        zero_locations("1", "bogus")


def test_heuristic_ladder_terminators():
    # integer spins end at 3/(4s), half-integer spins at 1/(4s)
    for spin in ("2", "3", "4"):
        tw = HalfInteger.parse(spin).twice
        assert zero_locations(spin, "heuristic")[-1] == pytest.approx(3.0 / (2 * tw))
    for spin in ("3/2", "5/2", "9/2"):
        tw = HalfInteger.parse(spin).twice
        assert zero_locations(spin, "heuristic")[-1] == pytest.approx(1.0 / (2 * tw))


def test_thermal_sz_values():
    assert thermal_sz("1", 0.0, 1.0) == pytest.approx(0.0, abs=1e-15)
    assert thermal_sz("1/2", 1.0, 1.0) == pytest.approx(0.5 * np.tanh(0.5), rel=1e-12)
    assert thermal_sz("3/2", 400.0, 1.0) == pytest.approx(1.5, abs=1e-9)
    assert thermal_sz("1", 1.0, -2.0) == pytest.approx(-thermal_sz("1", 1.0, 2.0), rel=1e-12)
