import math

import numpy as np
import pytest

from lenselect.lens import new_lens
from lenselect.maslov import maslov_index
from lenselect.paths import (
    PathError,
    UnitaryPath,
    action_spectrum,
    append_segment,
    cluster_phases,
    identity_path,
    inverse_path,
    is_embedded,
    product_path,
    random_path,
    reeb_path,
    reeb_shift,
    translated_points,
)
from lenselect.selectors import selector

TWO_PI = 2 * math.pi

L2 = new_lens(2, [1, 1])
L4 = new_lens(4, [1, 3])


def diag_path(lens, phases):
    return UnitaryPath(lens, [(np.diag(np.array(phases, dtype=float)), 1.0)])


class TestConstruction:
    def test_rejects_non_hermitian(self):
        A = np.array([[0.0, 1.0], [0.0, 0.0]])
        with pytest.raises(PathError, match="Hermitian"):
            UnitaryPath(L2, [(A, 1.0)])

    def test_rejects_non_commuting(self):
        # off-diagonal entries mix the two weight classes of L_4(1, 3)
        A = np.array([[0.0, 1.0], [1.0, 0.0]])
        with pytest.raises(PathError, match="commute"):
            UnitaryPath(L4, [(A, 1.0)])

    def test_reparametrization_preserves_trace(self):
        # durations not summing to one are rescaled without changing the path
        A = np.diag([1.0, 2.0])
        p = UnitaryPath(L2, [(A, 2.0), (2 * A, 2.0)])
        q = UnitaryPath(L2, [(2 * A, 1.0), (4 * A, 1.0)])
        for t in (0.0, 0.3, 0.5, 0.8, 1.0):
            assert np.allclose(p.value(t), q.value(t), atol=1e-12)

    def test_endpoint_consistency(self):
        p = random_path(L2, np.random.default_rng(0), segments=3)
        assert np.allclose(p.value(1.0), p.endpoint, atol=1e-10)


class TestAlgebra:
    def test_reeb_zero_is_identity(self):
        p = reeb_path(L2, 0.0)
        assert np.allclose(p.endpoint, np.eye(2))
        assert p.is_constant()

    def test_reeb_two_pi_nontrivial_class(self):
        p = reeb_path(L2, TWO_PI)
        assert np.allclose(p.endpoint, np.eye(2), atol=1e-12)
        assert maslov_index(p) == 4  # distinct from the identity class

    def test_reeb_pi_hits_deck_image(self):
        p = reeb_path(L2, math.pi)
        assert np.allclose(p.endpoint, -np.eye(2), atol=1e-12)
        sw = action_spectrum(p)
        assert np.abs(sw.phases_lens - math.pi).min() < 1e-12

    def test_inverse_exact(self):
        p = random_path(L2, np.random.default_rng(1), segments=3)
        q = inverse_path(p)
        for t in (0.2, 0.6, 1.0):
            assert np.allclose(q.value(t), np.linalg.inv(p.value(t)), atol=1e-10)

    def test_inverse_commutes_with_action(self):
        p = random_path(L4, np.random.default_rng(2), segments=2)
        inverse_path(p)._validate()  # generators must stay weight-compatible

    def test_product_matches_at_fit_nodes(self):
        # the refit interpolates geodesically between its nodes, so pointwise
        # agreement is only exact at the nodes (and stays uniformly close)
        rng = np.random.default_rng(3)
        p = random_path(L2, rng, segments=2)
        q = random_path(L2, rng, segments=3)
        r = product_path(p, q)
        for t in r.breakpoints:
            assert np.linalg.norm(r.value(t) - p.value(t) @ q.value(t), 2) < 1e-9
        for t in np.linspace(0, 1, 33):
            assert np.linalg.norm(r.value(t) - p.value(t) @ q.value(t), 2) < 0.5

    def test_product_with_identity_same_class(self):
        p = random_path(L2, np.random.default_rng(4))
        r = product_path(p, identity_path(L2))
        assert maslov_index(r) == maslov_index(p)
        assert selector(r, 0) == pytest.approx(selector(p, 0), abs=1e-9)

    def test_reeb_products_compose(self):
        a = product_path(reeb_path(L2, 1.0), reeb_path(L2, 2.0))
        b = reeb_path(L2, 3.0)
        assert maslov_index(a) == maslov_index(b)
        assert selector(a, 0) == pytest.approx(selector(b, 0), abs=1e-9)

    def test_inverse_reeb(self):
        a = inverse_path(reeb_path(L2, 2.0))
        assert selector(a, 0) == pytest.approx(-2.0, abs=1e-9)

    def test_reeb_shift_exact(self):
        p = random_path(L2, np.random.default_rng(5))
        q = reeb_shift(p, 1.3)
        for t in (0.4, 1.0):
            assert np.allclose(
                q.value(t), np.exp(-1.3j * t) * p.value(t), atol=1e-10
            )

    def test_shift_roundtrip(self):
        p = reeb_path(L2, 2.0)
        q = reeb_shift(p, 2.0)
        assert q.is_constant()

    def test_append_preserves_prefix(self):
        p = random_path(L2, np.random.default_rng(6))
        q = append_segment(p, np.diag([1.0, 2.0]), 0.5)
        # old endpoint is reached at the reparametrized break time
        assert np.allclose(q.value(1 / 1.5), p.endpoint, atol=1e-9)


class TestSpectra:
    def test_identity_spectrum(self):
        sw = action_spectrum(identity_path(L2))
        assert np.allclose(sw.phases_sphere, [0.0])
        assert sw.mult_sphere.tolist() == [2]

    def test_reeb_spectrum(self):
        sw = action_spectrum(reeb_path(L2, 1.5))
        assert np.allclose(sw.phases_sphere, [1.5])
        assert sw.mult_sphere.tolist() == [2]

    def test_diag_lens_spectrum(self):
        a, b = 0.7, 2.1
        sw = action_spectrum(diag_path(L2, [a, b]))
        assert np.allclose(sw.phases_sphere, [a, b])
        want = sorted([a, b, a + math.pi, b + math.pi])
        assert np.allclose(sw.phases_lens, want, atol=1e-12)

    def test_cluster_wraparound(self):
        reps, mults = cluster_phases([1e-12, TWO_PI - 1e-12, 1.0])
        assert len(reps) == 2
        assert mults.tolist() == [2, 1]

    def test_containments(self):
        rng = np.random.default_rng(7)
        for lens in (L2, L4, new_lens(5, [1, 2])):
            for _ in range(10):
                p = random_path(lens, rng)
                sw = action_spectrum(p)
                per = lens.reeb_period
                fine = sw.phases_lens
                for ph in sw.phases_sphere:
                    for m in range(int(round(TWO_PI / per))):
                        d = np.abs(np.mod(ph + m * per - fine + math.pi, TWO_PI)
                                   - math.pi)
                        assert d.min() < 1e-8
                coarse = np.concatenate(
                    [sw.phases_sphere + TWO_PI * m / lens.k for m in range(lens.k)]
                )
                for ph in fine:
                    d = np.abs(np.mod(ph - coarse + math.pi, TWO_PI) - math.pi)
                    assert d.min() < 1e-8

    def test_translated_points_full_space(self):
        d, basis = translated_points(reeb_path(L2, 1.0), 1.0)
        assert d == 2
        assert np.allclose(basis.conj().T @ basis, np.eye(2), atol=1e-10)

    def test_translated_points_simple_phase(self):
        p = diag_path(L2, [0.5, 1.5])
        d, basis = translated_points(p, 0.5)
        assert d == 1

    def test_translated_points_empty(self):
        p = diag_path(L2, [0.5, 1.5])
        assert translated_points(p, 1.0)[0] == 0
        assert translated_points(p, 1.0, "lens") == []

    def test_translated_points_lens_level(self):
        out = translated_points(reeb_path(L2, math.pi), 0.0, "lens")
        # r_pi equals the deck map, so m = 1 translates by 0
        assert [m for m, _, _ in out] == [1]


class TestEmbeddedness:
    def test_short_reeb_embedded(self):
        for k in (2, 3, 5):
            lens = new_lens(k, [1, 1])
            rep = is_embedded(reeb_path(lens, 0.9 * TWO_PI / k), 0.0, 1.0)
            assert rep.embedded is True

    def test_long_reeb_not_embedded(self):
        rep = is_embedded(reeb_path(L2, 1.05 * math.pi), 0.0, 1.0)
        assert rep.embedded is False
        assert rep.witness is not None

    def test_boundary_phase_advance(self):
        # exactly 2 pi / k of phase advance already closes an orbit
        rep = is_embedded(reeb_path(L2, math.pi), 0.0, 1.0)
        assert rep.embedded is False

    def test_subinterval(self):
        p = reeb_path(L2, 4 * math.pi)
        assert is_embedded(p, 0.0, 0.2).embedded is True
        assert is_embedded(p, 0.0, 0.3).embedded is False

    def test_identity_convention(self):
        rep = is_embedded(identity_path(L2), 0.0, 1.0)
        assert rep.embedded is True
        assert rep.method == "constant"

    def test_tiny_interval(self):
        p = random_path(L2, np.random.default_rng(8))
        assert is_embedded(p, 0.5, 0.5 + 1e-4).embedded in (True, None)

    def test_bad_interval(self):
        with pytest.raises(ValueError):
            is_embedded(identity_path(L2), 0.5, 0.5)

    def test_noncommuting_sweep(self):
        # definite non-commuting generators: sweep tier with the Lipschitz
        # certificate must reach a verdict on a short window
        rng = np.random.default_rng(9)
        X = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        V, _ = np.linalg.qr(X)
        A = V @ np.diag([1.0, 1.4]) @ V.conj().T
        B = np.diag([1.0, 1.5])
        assert np.linalg.norm(A @ B - B @ A, 2) > 1e-6
        p = UnitaryPath(L2, [(A, 0.5), (B, 0.5)])
        # window spanning both segments: the commuting tier cannot apply
        rep = is_embedded(p, 0.3, 0.7, grid=128)
        assert rep.method == "grid"
        assert rep.embedded is True

    def test_mixed_sign_indeterminate_or_witness(self):
        # mixed-sign non-commuting generators: no near-diagonal control, so
        # either an explicit crossing or an honest indeterminate
        rng = np.random.default_rng(10)
        X = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        A = (X + X.conj().T) / 2
        A = A - np.trace(A) / 2 * np.eye(2)  # traceless: mixed signs
        B = np.diag([1.0, -1.0])
        p = UnitaryPath(L2, [(A, 0.5), (B, 0.5)])
        rep = is_embedded(p, 0.0, 1.0, grid=64)
        assert rep.embedded in (False, None)
