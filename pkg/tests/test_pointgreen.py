"""Multi-center resolvent, bound-state search, residue factorization."""

import math

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.special import k0 as scipy_k0

from deltagreen import (
    bare_1d,
    bound_states,
    center,
    from_bound_state,
    g0,
    green,
    m_matrix,
    renormalized_2d,
    renormalized_3d,
    renormalized_denominator,
    residue_wavefunction,
)
from deltagreen.errors import AtPoleError, DomainError, IllegalSpecError
from deltagreen.greenfn import SpatialPoint
from deltagreen.oracles import Lattice1D, lattice1d_resolvent

# two attractive centers at -1 and +1, lambda = -2 each: energies frozen from
# the transfer-coefficient shooting oracle (see test_oracles.py)
PAIR = (center(-1.0, bare_1d(-2.0)), center(1.0, bare_1d(-2.0)))
PAIR_ENERGIES = (-1.2295650725757956, -0.6349095705470416)


def _pt(*coords):
    return SpatialPoint(tuple(float(c) for c in coords))


# ---------------------------------------------------------------- m_matrix


def test_m_matrix_single_center_is_the_denominator():
    mm = m_matrix(3, -1.0, [center((0.0, 0.0, 0.0), from_bound_state(-1.0))])
    assert mm.entries.shape == (1, 1)
    assert mm.entries[0, 0] == 0.0  # exactly at the pole
    for energy in (-0.5, -2.0, -9.0):
        mm = m_matrix(3, energy, [center((0.0, 0.0, 0.0), renormalized_3d(4 * math.pi))])
        den = renormalized_denominator(3, energy, renormalized_3d(4 * math.pi)).value
        assert mm.entries[0, 0] == den


def test_m_matrix_pair_at_threshold_energy():
    mm = m_matrix(1, -1.0, PAIR)
    # diagonal: 1/lambda + 1/(2 kappa) = -1/2 + 1/2 = 0
    assert mm.entries[0, 0] == 0.0
    assert mm.entries[1, 1] == 0.0
    # off-diagonal: -G0(-1; -1, +1) = e^{-2}/2
    off = 0.5 * math.exp(-2.0)
    assert mm.entries[0, 1].real == pytest.approx(off, rel=1e-15)
    assert mm.det().real == pytest.approx(-(off**2), rel=1e-14)


def test_m_matrix_wide_separation_factorizes():
    far = (center(-25.0, bare_1d(-3.0)), center(25.0, bare_1d(-3.0)))
    det = m_matrix(1, -1.0, far).det().real
    diag = 1.0 / -3.0 + 0.5  # = 1/6
    assert det == pytest.approx(diag * diag, rel=1e-20)


def test_m_matrix_symmetry():
    rng = np.random.default_rng(20240815)
    pts = rng.normal(size=(4, 3))
    cs = [center(tuple(p), from_bound_state(-float(i + 1))) for i, p in enumerate(pts)]
    mm = m_matrix(3, complex(-2.0, 0.3), cs)
    assert np.array_equal(mm.entries, mm.entries.T)


# ------------------------------------------------------------------- green


def test_green_single_center_closed_value():
    # G0 = -1/4, D = -1/4, correction = (1/16)/(-1/4) = -1/4
    val = green(1, -4.0, _pt(0.0), _pt(0.0), [center(0.0, bare_1d(-2.0))])
    assert val.value == -0.5
    assert val.value.imag == 0.0


def test_green_empty_centers_is_free():
    x, y = _pt(0.4, -0.1), _pt(-0.2, 0.6)
    assert green(2, -1.3, x, y, []).value == g0(2, -1.3, x, y).value


def test_green_weak_coupling_first_order():
    lam = -1e-6
    x, y, a = _pt(0.5), _pt(-0.8), 0.0
    full = green(1, -2.0, x, y, [center(a, bare_1d(lam))]).value.real
    free = g0(1, -2.0, x, y).value.real
    first = lam * g0(1, -2.0, x, _pt(a)).value.real * g0(1, -2.0, _pt(a), y).value.real
    assert abs(full - free - first) < 2.0 * abs(lam * first)


def test_green_matches_lattice_resolvent():
    lat = Lattice1D(half_width=20.48, points=4097)
    cs = [center(0.0, bare_1d(-2.0))]
    for x, y in ((0.3, -0.2), (1.0, 1.0), (-2.0, 0.5)):
        exact = green(1, -2.0, _pt(x), _pt(y), cs).value.real
        grid = lattice1d_resolvent(cs, lat, -2.0, x, y)
        assert grid == pytest.approx(exact, abs=1e-3)


def test_green_exchange_symmetric():
    rng = np.random.default_rng(42)
    cs3 = [
        center((0.0, 0.0, 0.0), from_bound_state(-1.0)),
        center((1.5, 0.0, 0.0), from_bound_state(-0.5)),
    ]
    for _ in range(20):
        x = _pt(*rng.normal(size=3))
        y = _pt(*rng.normal(size=3))
        e = complex(-rng.uniform(0.3, 4.0), rng.uniform(-1.0, 1.0))
        assert green(3, e, x, y, cs3).value == pytest.approx(
            green(3, e, y, x, cs3).value, rel=1e-14
        )


def test_green_real_below_spectrum():
    val = green(1, -3.0, _pt(0.2), _pt(0.9), PAIR).value
    assert val.imag == 0.0
    assert val.real < 0.0


def test_green_raises_at_pole():
    with pytest.raises(AtPoleError):
        green(1, -1.0, _pt(0.3), _pt(0.4), [center(0.0, bare_1d(-2.0))])
    with pytest.raises(AtPoleError):
        green(1, PAIR_ENERGIES[0], _pt(0.3), _pt(0.4), PAIR)


def test_green_pole_flips_sign_of_det():
    det_lo = m_matrix(1, -1.0 - 1e-3, [center(0.0, bare_1d(-2.0))]).det().real
    det_hi = m_matrix(1, -1.0 + 1e-3, [center(0.0, bare_1d(-2.0))]).det().real
    assert det_lo * det_hi < 0.0


# ------------------------------------------------------------ bound states


def test_bound_state_1d_exact():
    states = bound_states(1, [center(0.0, bare_1d(-2.0))])
    assert len(states) == 1
    assert states[0].energy == -1.0
    assert states[0].kappa == 1.0
    assert bound_states(1, [center(0.0, bare_1d(2.0))]) == []


def test_bound_state_2d_transmutation():
    states = bound_states(2, [center((0.0, 0.0), renormalized_2d(-4.0 * math.pi, 1.0))])
    assert len(states) == 1
    assert states[0].energy == pytest.approx(-math.exp(-1.0), rel=1e-15)


def test_bound_state_3d_requires_positive_lambda_r():
    binds = bound_states(3, [center((0, 0, 0), renormalized_3d(4.0 * math.pi))])
    assert len(binds) == 1
    assert binds[0].energy == pytest.approx(-1.0, rel=1e-15)
    assert bound_states(3, [center((0, 0, 0), renormalized_3d(-4.0 * math.pi))]) == []


def test_bound_state_scan_agrees_with_closed_form():
    auto = bound_states(1, [center(0.0, bare_1d(-2.0))])
    scan = bound_states(1, [center(0.0, bare_1d(-2.0))], method="scan")
    assert len(scan) == 1
    assert scan[0].energy == pytest.approx(auto[0].energy, abs=1e-12)


def test_bound_state_pair_matches_shooting_oracle():
    states = bound_states(1, PAIR)
    assert [s.energy for s in states] == pytest.approx(PAIR_ENERGIES, abs=1e-10)


def test_bound_state_window_filters():
    assert bound_states(1, [center(0.0, bare_1d(-2.0))], search=(-0.25, -0.2)) == []
    only_top = bound_states(1, PAIR, search=(-1.0, -0.3))
    assert len(only_top) == 1
    assert only_top[0].energy == pytest.approx(PAIR_ENERGIES[1], abs=1e-10)


def test_bound_state_validation():
    c = [center(0.0, bare_1d(-2.0))]
    with pytest.raises(IllegalSpecError):
        bound_states(1, c, method="newton")
    with pytest.raises(DomainError):
        bound_states(1, c, tol=0.0)
    with pytest.raises(DomainError):
        bound_states(1, c, search=(-1.0, 1.0))
    with pytest.raises(DomainError):
        bound_states(1, c, search=(-0.5, -1.0))


# ---------------------------------------------------------------- residues


def test_residue_wavefunction_1d_closed_form():
    state = bound_states(1, [center(0.0, bare_1d(-2.0))])[0]
    for x in (0.0, 0.5, -0.5, 1.0, -2.3, 4.0):
        assert residue_wavefunction(state, x) == pytest.approx(
            math.exp(-abs(x)), rel=1e-12
        )


def test_residue_wavefunction_3d_closed_form():
    state = bound_states(3, [center((0, 0, 0), from_bound_state(-1.0))])[0]
    got = residue_wavefunction(state, (1.0, 0.0, 0.0))
    want = math.sqrt(1.0 / (2.0 * math.pi)) * math.exp(-1.0)
    assert want == pytest.approx(0.146762663, abs=5e-10)
    assert got == pytest.approx(want, rel=1e-12)


def test_residue_wavefunction_2d_closed_form():
    state = bound_states(2, [center((0.0, 0.0), from_bound_state(-1.0))])[0]
    for r in (0.3, 0.7, 1.9):
        want = scipy_k0(r) / math.sqrt(math.pi)
        assert residue_wavefunction(state, (r, 0.0)) == pytest.approx(want, rel=1e-12)


def test_residue_ground_state_positive_at_centroid():
    states = bound_states(1, PAIR)
    assert residue_wavefunction(states[0], 0.0) > 0.0
    # first excited state is odd: near-zero at the centroid, fixed positive
    # further out along the axis
    assert abs(residue_wavefunction(states[1], 0.0)) < 1e-12
    assert residue_wavefunction(states[1], 1.5) > 0.0


@pytest.mark.parametrize(
    "dim,centers,x,y",
    [
        (1, PAIR, 0.77, -0.33),
        (3, (center((0, 0, 0), from_bound_state(-1.0)),), (0.9, 0, 0), (0, 1.4, 0)),
    ],
)
def test_residue_factorizes_the_pole(dim, centers, x, y):
    """(E - E_B) G(E; x, y) -> psi(x) psi(y) as E approaches the pole."""
    state = bound_states(dim, centers)[0]
    e_b = state.energy
    xp = _pt(*x) if isinstance(x, tuple) else _pt(x)
    yp = _pt(*y) if isinstance(y, tuple) else _pt(y)
    deltas = np.array([1e-3, 1e-4, 1e-5])
    probes = [
        (abs(e_b) * d) * green(dim, e_b + abs(e_b) * d, xp, yp, centers).value.real
        for d in deltas
    ]
    fit = np.polyfit(deltas, probes, 2)
    extrapolated = fit[-1]
    want = residue_wavefunction(state, x) * residue_wavefunction(state, y)
    assert extrapolated == pytest.approx(want, rel=1e-6)


def test_residue_normalization_1d():
    state = bound_states(1, PAIR)[0]
    total, err = quad(
        lambda x: residue_wavefunction(state, x) ** 2,
        -60.0,
        60.0,
        points=[-1.0, 0.0, 1.0],
        limit=200,
    )
    assert err < 1e-8
    assert total == pytest.approx(1.0, abs=1e-6)


def test_residue_normalization_2d():
    state = bound_states(2, [center((0.0, 0.0), from_bound_state(-0.7))])[0]
    total, err = quad(
        lambda r: 2.0 * math.pi * r * residue_wavefunction(state, (r, 0.0)) ** 2,
        0.0,
        80.0,
        limit=200,
    )
    assert err < 1e-8
    assert total == pytest.approx(1.0, abs=1e-6)


def test_residue_normalization_3d():
    state = bound_states(3, [center((0, 0, 0), renormalized_3d(4.0 * math.pi))])[0]
    total, err = quad(
        lambda r: 4.0 * math.pi * r * r * residue_wavefunction(state, (r, 0.0, 0.0)) ** 2,
        0.0,
        60.0,
        limit=200,
    )
    assert err < 1e-8
    assert total == pytest.approx(1.0, abs=1e-6)


def test_residue_satisfies_jump_condition():
    """psi'(a+) - psi'(a-) = lambda psi(a) at each center (bare 1D)."""
    states = bound_states(1, PAIR)
    h = 1e-3
    w = np.array([-25.0 / 12.0, 4.0, -3.0, 4.0 / 3.0, -0.25])
    for state in states:
        for a, lam in ((-1.0, -2.0), (1.0, -2.0)):
            right = sum(
                wk * residue_wavefunction(state, a + k * h) for k, wk in enumerate(w)
            ) / h
            left = -sum(
                wk * residue_wavefunction(state, a - k * h) for k, wk in enumerate(w)
            ) / h
            jump = right - left
            assert jump == pytest.approx(lam * residue_wavefunction(state, a), abs=1e-7)


# -------------------------------------------------------------- validation


def test_rejects_coincident_centers():
    with pytest.raises(IllegalSpecError):
        m_matrix(1, -1.0, [center(0.0, bare_1d(-2.0)), center(5e-11, bare_1d(-2.0))])


def test_rejects_wrong_dimension_coupling():
    with pytest.raises(IllegalSpecError):
        center((0.0, 0.0, 0.0), bare_1d(-2.0))
    with pytest.raises(IllegalSpecError):
        m_matrix(2, -1.0, [center((0.0,), bare_1d(-2.0))])


def test_rejects_empty_center_list():
    with pytest.raises(IllegalSpecError):
        m_matrix(1, -1.0, [])
    with pytest.raises(IllegalSpecError):
        bound_states(1, [])
