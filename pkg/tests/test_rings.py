"""Ring-specific exact selection, circular dispersion, and generator algebra."""

from __future__ import annotations

import math

import numpy as np
import pytest

from fjpower import (
    RingModel,
    RingSpec,
    StubbornnessProfile,
    build_circulant,
    build_symmetric_ring,
    circulant_inverse,
    circulant_monotone_product_check,
    circular_variance,
    exhaustive_select,
    orbit_representative,
    ring_distance,
    ring_solve_k2,
)
from fjpower.errors import EmptySetError, ParameterDomainError


def remark_ring():
    return RingSpec(12, (0.16, 0.14, 0.28, 0.0, 0.0, 0.0, 0.0))


def random_monotone_spec(rng, n):
    half_len = n // 2 + 1 if n % 2 == 0 else (n + 1) // 2
    weights = np.sort(rng.uniform(0.1, 1.0, size=half_len))[::-1]
    full = np.concatenate([weights, weights[-2:0:-1] if n % 2 == 0 else weights[:0:-1]])
    return RingSpec(n, tuple(weights / full.sum()))


class TestCirculantInverse:
    def test_residual_and_symmetry(self):
        rng = np.random.default_rng(71)
        for n in (5, 8, 12):
            spec = random_monotone_spec(rng, n)
            theta = float(rng.uniform(0.05, 0.95))
            m = circulant_inverse(theta, spec)
            c_mat = np.vstack([np.roll(m, r) for r in range(n)])
            w = build_circulant(spec.circulant())
            residual = c_mat @ (np.eye(n) - (1.0 - theta) * w) - np.eye(n)
            assert np.abs(residual).max() < 1e-12
            np.testing.assert_allclose(m[1:], m[1:][::-1], atol=1e-12)

    def test_theta_domain(self):
        with pytest.raises(ParameterDomainError):
            circulant_inverse(0.0, remark_ring())
        with pytest.raises(ParameterDomainError):
            circulant_inverse(1.0, remark_ring())


class TestRingSolveK2:
    def test_skip_pattern_beats_antipode(self):
        # the strong distance-2 link (0.28) makes offset 5 optimal, not 6
        ring = RingModel(remark_ring(), 0.1, 0.2)
        assert ring_solve_k2(ring) == (0, 5)
        g = build_symmetric_ring(remark_ring())
        report = exhaustive_select(g, StubbornnessProfile.uniform(12, 0.1), 0.2, 2)
        assert report.selected == (0, 5)
        assert report.sp0 == pytest.approx(0.28839696030572337, abs=1e-12)

    def test_monotone_ring_is_antipodal(self):
        ring = RingModel(RingSpec(4, (0.4, 0.25, 0.1)), 0.3, 0.2)
        assert ring_solve_k2(ring) == (0, 2)
        rng = np.random.default_rng(72)
        for n in (5, 6, 9, 10):
            spec = random_monotone_spec(rng, n)
            pair = ring_solve_k2(RingModel(spec, 0.2, 0.3))
            assert ring_distance(*pair, n) == n // 2

    def test_matches_exhaustive_on_random_rings(self):
        rng = np.random.default_rng(73)
        for _ in range(6):
            n = int(rng.integers(4, 11))
            half_len = n // 2 + 1 if n % 2 == 0 else (n + 1) // 2
            weights = rng.uniform(0.05, 1.0, size=half_len)
            full_len_weight = np.concatenate(
                [weights, weights[-2:0:-1] if n % 2 == 0 else weights[:0:-1]]
            ).sum()
            spec = RingSpec(n, tuple(weights / full_len_weight))
            theta = float(rng.uniform(0.1, 0.9))
            omega = float(rng.uniform(0.1, 0.9))
            pair = ring_solve_k2(RingModel(spec, theta, omega))
            g = build_symmetric_ring(spec)
            report = exhaustive_select(g, StubbornnessProfile.uniform(n, theta), omega, 2)
            assert pair == report.selected

    def test_pair_minimizes_inverse_generator(self):
        ring = RingModel(remark_ring(), 0.1, 0.2)
        m = ring.inverse_generator()
        _, offset = ring_solve_k2(ring)
        assert m[offset] == pytest.approx(m[1:].min(), abs=1e-15)

    def test_model_validation(self):
        with pytest.raises(ParameterDomainError):
            RingModel(remark_ring(), 0.0, 0.2)
        with pytest.raises(ParameterDomainError):
            RingModel(remark_ring(), 1.0, 0.2)
        with pytest.raises(ParameterDomainError):
            RingModel(remark_ring(), 0.5, 1.0)


class TestRingDistance:
    def test_values(self):
        assert ring_distance(0, 5, 12) == 5
        assert ring_distance(0, 7, 12) == 5
        assert ring_distance(2, 2, 9) == 0
        assert ring_distance(1, 5, 8) == 4
        assert ring_distance(11, 0, 12) == 1

    def test_symmetric_and_capped(self):
        rng = np.random.default_rng(74)
        for _ in range(30):
            n = int(rng.integers(3, 30))
            i, j = int(rng.integers(n)), int(rng.integers(n))
            assert ring_distance(i, j, n) == ring_distance(j, i, n)
            assert 0 <= ring_distance(i, j, n) <= n // 2


class TestCircularVariance:
    def test_extremes(self):
        assert circular_variance({3}, 25) == pytest.approx(0.0, abs=1e-12)
        assert circular_variance({0, 5, 10, 15, 20}, 25) == pytest.approx(1.0, abs=1e-12)
        assert circular_variance({0, 6}, 12) == pytest.approx(1.0, abs=1e-12)

    def test_adjacent_pair_formula(self):
        # resultant of two unit vectors phi apart has length 2 cos(phi / 2)
        n = 16
        expected = 1.0 - math.cos(math.pi / n)
        assert circular_variance({4, 5}, n) == pytest.approx(expected, abs=1e-12)

    def test_rotation_invariance(self):
        rng = np.random.default_rng(75)
        for _ in range(10):
            n = int(rng.integers(4, 20))
            k = int(rng.integers(1, n))
            ids = rng.choice(n, size=k, replace=False)
            r = int(rng.integers(n))
            shifted = {(int(i) + r) % n for i in ids}
            assert circular_variance(ids, n) == pytest.approx(
                circular_variance(shifted, n), abs=1e-12
            )

    def test_domain(self):
        with pytest.raises(EmptySetError):
            circular_variance(set(), 10)
        with pytest.raises(ParameterDomainError):
            circular_variance({10}, 10)


class TestOrbitRepresentative:
    def test_canonical_form(self):
        assert orbit_representative({3, 7}, 12) == (0, 4)
        assert orbit_representative({0, 4}, 12) == (0, 4)
        assert orbit_representative((), 12) == ()

    def test_rotation_invariance_and_anchor(self):
        rng = np.random.default_rng(76)
        for _ in range(15):
            n = int(rng.integers(3, 16))
            k = int(rng.integers(1, n + 1))
            ids = [int(i) for i in rng.choice(n, size=k, replace=False)]
            rep = orbit_representative(ids, n)
            assert rep[0] == 0
            r = int(rng.integers(n))
            shifted = [(i + r) % n for i in ids]
            assert orbit_representative(shifted, n) == rep

    def test_out_of_range(self):
        with pytest.raises(ParameterDomainError):
            orbit_representative({12}, 12)


class TestMonotoneProductCheck:
    def test_products_stay_monotone(self):
        rng = np.random.default_rng(77)
        for parity in ("odd", "even"):
            for _ in range(8):
                size = int(rng.integers(2, 7))
                u = np.sort(rng.uniform(0.0, 1.0, size=size))[::-1]
                v = np.sort(rng.uniform(0.0, 1.0, size=size))[::-1]
                check = circulant_monotone_product_check(u, v, parity)
                assert check.ok and bool(check) and check.first_violation is None

    def test_matches_direct_circulant_product(self):
        # independent route: multiply the two full circulant matrices and
        # read the product generator off the first row
        u = np.array([0.5, 0.3, 0.2, 0.1])
        v = np.array([0.9, 0.4, 0.2, 0.05])
        for parity in ("odd", "even"):
            if parity == "odd":
                full_u = np.concatenate([u, u[:0:-1]])
                full_v = np.concatenate([v, v[:0:-1]])
            else:
                full_u = np.concatenate([u, u[-2:0:-1]])
                full_v = np.concatenate([v, v[-2:0:-1]])
            n = full_u.size
            mat_u = np.vstack([np.roll(full_u, r) for r in range(n)])
            mat_v = np.vstack([np.roll(full_v, r) for r in range(n)])
            r_gen = (mat_u @ mat_v)[0]
            assert np.all(np.diff(r_gen[: u.size]) <= 1e-12)
            assert circulant_monotone_product_check(u, v, parity).ok

    def test_strict_run(self):
        u = np.array([0.6, 0.6, 0.2, 0.2])  # strict drop at index 1
        v = np.array([0.8, 0.3, 0.3, 0.3])  # strict drop at index 0
        for parity in ("odd", "even"):
            check = circulant_monotone_product_check(u, v, parity, strict_at=(1, 0))
            assert check.ok
            # commuted arguments must give the same verdict
            assert circulant_monotone_product_check(v, u, parity, strict_at=(0, 1)).ok

    def test_input_validation(self):
        good = np.array([0.5, 0.3, 0.1])
        with pytest.raises(ParameterDomainError):
            circulant_monotone_product_check(good, good, "flat")
        with pytest.raises(ParameterDomainError):
            circulant_monotone_product_check(np.array([0.1, 0.5, 0.3]), good, "odd")
        with pytest.raises(ParameterDomainError):
            circulant_monotone_product_check(-good, good, "odd")
        with pytest.raises(ParameterDomainError):
            circulant_monotone_product_check(good, good, "odd", strict_at=(2, 0))
        with pytest.raises(ParameterDomainError):
            # no strict drop at the claimed indices
            flat = np.array([0.4, 0.4, 0.4])
            circulant_monotone_product_check(flat, flat, "odd", strict_at=(1, 0))
