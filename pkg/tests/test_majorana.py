import numpy as np
import pytest

from symgate.entangling import concurrence_of_states
from symgate.errors import InvalidResolution, ZeroState
from symgate.gates import SymmetricGate, gate_from_point, local_rotation
from symgate.invariants import chamber_point
from symgate.majorana import (Constellation, MajoranaStar, SymmetricState, area_weighted_mean,
                              chordal_distance, concurrence, concurrence_from_distance,
                              entropy_sphere, sphere_records, state_from_stars, stars_of)

PI = np.pi


def random_constellation(rng):
    v = rng.normal(size=(2, 3))
    return Constellation(tuple(MajoranaStar.from_vector(x) for x in v))


def rodrigues(axis, angle):
    n = np.asarray(axis, float) / np.linalg.norm(axis)
    K = np.array([[0, -n[2], n[1]], [n[2], 0, -n[0]], [-n[1], n[0], 0]])
    return np.eye(3) + np.sin(angle) * K + (1 - np.cos(angle)) * K @ K


def star_set(c):
    return sorted((round(s.theta, 9), round(s.phi, 9)) for s in c.stars)


class TestStars:
    def test_north_pole(self):
        assert star_set(stars_of(SymmetricState([1, 0, 0]))) == [(0, 0), (0, 0)]

    def test_south_pole(self):
        assert star_set(stars_of(SymmetricState([0, 0, 1]))) == [(round(PI, 9), 0)] * 2

    def test_antipodal(self):
        assert star_set(stars_of(SymmetricState([0, 1, 0]))) == [(0, 0), (round(PI, 9), 0)]

    def test_psi_plus(self):
        c = stars_of(SymmetricState([1 / np.sqrt(2), 0, 1 / np.sqrt(2)]))
        want = Constellation((MajoranaStar(PI / 2, PI / 2), MajoranaStar(PI / 2, 3 * PI / 2)))
        assert c.isclose(want, atol=1e-12)
        assert concurrence_of_states(SymmetricState([1, 0, 1] / np.sqrt(2)).two_qubit())[0] == pytest.approx(1)

    def test_unnormalized_rejected(self):
        with pytest.raises(ValueError):
            SymmetricState([1, 1, 0])

    def test_zero_state(self):
        with pytest.raises(ZeroState):
            SymmetricState.normalized([0, 0, 0])

    def test_star_angles(self):
        with pytest.raises(ValueError):
            MajoranaStar(4.0, 0.0)
        assert MajoranaStar(0.0, 1.3).phi == 0.0

    def test_permutation_equality(self):
        a, b = MajoranaStar(0.3, 1.0), MajoranaStar(2.0, 4.0)
        assert Constellation((a, b)) == Constellation((b, a))
        assert hash(Constellation((a, b))) == hash(Constellation((b, a)))


class TestRoundTrip:
    def test_known(self):
        assert np.allclose(state_from_stars(Constellation((MajoranaStar(0), MajoranaStar(0)))).amplitudes,
                           [1, 0, 0])
        assert np.allclose(state_from_stars(Constellation((MajoranaStar(0), MajoranaStar(PI)))).amplitudes,
                           [0, 1, 0])

    def test_constellations(self):
        rng = np.random.default_rng(0)
        for _ in range(500):
            c = random_constellation(rng)
            assert stars_of(state_from_stars(c)).isclose(c, atol=1e-8)

    def test_states(self):
        rng = np.random.default_rng(1)
        for _ in range(500):
            s = SymmetricState.normalized(rng.normal(size=3) + 1j * rng.normal(size=3))
            assert state_from_stars(stars_of(s)).overlap(s) == pytest.approx(1, abs=1e-10)


class TestConcurrence:
    def test_values(self):
        assert concurrence(SymmetricState([1, 0, 0])) == 0
        assert concurrence(SymmetricState([0, 1, 0])) == 1

    def test_right_angle(self):
        c = Constellation((MajoranaStar(0), MajoranaStar(PI / 2)))
        assert concurrence(state_from_stars(c)) == pytest.approx(1 / 3, abs=1e-12)
        assert chordal_distance(c) == pytest.approx(np.sqrt(2), abs=1e-12)

    def test_distance_extremes(self):
        assert chordal_distance(Constellation((MajoranaStar(1, 2), MajoranaStar(1, 2)))) == 0
        assert chordal_distance(Constellation((MajoranaStar(0), MajoranaStar(PI)))) == pytest.approx(2)
        assert concurrence_from_distance(0) == 0
        assert concurrence_from_distance(2) == 1

    def test_law_against_oracle(self):
        rng = np.random.default_rng(2)
        for _ in range(500):
            c = random_constellation(rng)
            oracle = concurrence_of_states(state_from_stars(c).two_qubit())[0]
            assert abs(concurrence_from_distance(chordal_distance(c)) - oracle) < 1e-9

    def test_monotone(self):
        d = np.linspace(0, 2, 201)
        assert np.all(np.diff(concurrence_from_distance(d)) > 0)

    def test_rotation_moves_stars_rigidly(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            c = random_constellation(rng)
            axis, angle = rng.normal(size=3), rng.uniform(0, 2 * PI)
            axis /= np.linalg.norm(axis)
            R = local_rotation(axis, angle).matrix
            rotated = SymmetricState.normalized(R @ state_from_stars(c).amplitudes)
            want = Constellation(tuple(MajoranaStar.from_vector(rodrigues(axis, angle) @ s.vector())
                                       for s in c.stars))
            assert stars_of(rotated).isclose(want, atol=1e-8)
            assert concurrence(rotated) == pytest.approx(concurrence(state_from_stars(c)), abs=1e-10)


def _maxima(g, tol):
    theta, phi, E = entropy_sphere(g, 91, 180)
    idx = np.argwhere(E > E.max() - tol)
    T, P = theta[idx[:, 0]], phi[idx[:, 1]]
    return E.max(), np.stack([np.sin(T) * np.cos(P), np.sin(T) * np.sin(P), np.cos(T)], axis=1)


class TestEntropySphere:
    def test_identity(self):
        _, _, E = entropy_sphere(SymmetricGate(np.eye(3)), 4, 4)
        assert E.shape == (4, 4) and np.all(E == 0)

    def test_mean_of_max_gate(self):
        theta, _, E = entropy_sphere(gate_from_point((-PI / 3, 0, PI / 3)), 181, 361)
        assert area_weighted_mean(theta, E) == pytest.approx(0.3, abs=0.005)

    @pytest.mark.parametrize("s", [(0.8, 0.2), (0.5, 0.2)])
    def test_boundary_gate_antipodal_maxima(self, s):
        top, v = _maxima(gate_from_point(chamber_point(*s)), 1e-6)
        assert top == pytest.approx(0.5, abs=1e-9)
        # all maximizers sit in two tight clusters at opposite points
        axis = v[0]
        side = v @ axis
        assert np.all(np.abs(np.abs(side) - 1) < 1e-2)
        assert np.any(side > 0) and np.any(side < 0)

    def test_records(self):
        theta, phi, E = entropy_sphere(SymmetricGate(np.eye(3)), 3, 2)
        recs = sphere_records(theta, phi, E)
        assert len(recs) == 6 and set(recs[0]) == {"theta", "phi", "entropy"}

    def test_bad_grid(self):
        with pytest.raises(InvalidResolution):
            entropy_sphere(SymmetricGate(np.eye(3)), 1, 5)
