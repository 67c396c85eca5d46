import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from seqcore import band_ops, cores
from seqcore.generators import make_sequence, rng_from_seed
from seqcore.types import BandSystem, FiniteSeq

DELTA = BandSystem.difference(4096)
PLUS = BandSystem.constant(1.0, 1.0, 1.0, 4096)


class TestDensities:
    def test_evens(self):
        dens = cores.natural_density(lambda k: k % 2 == 0, (10, 100, 1000))
        assert dens.values[-1] == (1000, 0.5)

    def test_squares_shrink(self):
        dens = cores.natural_density(lambda k: int(np.sqrt(k + 0.5)) ** 2 == k, (100, 400, 1600))
        assert dens.values[0][1] == pytest.approx(0.10)
        vals = [v for _, v in dens.values]
        assert vals[0] > vals[1] > vals[2]

    def test_empty_set(self):
        dens = cores.natural_density(lambda k: False, (10, 100))
        assert dens.estimate == 0.0

    def test_matrix_density_matches_counting_for_averaging_rows(self):
        ladder = (25, 50, 100, 400)
        E = lambda k: k % 3 == 0
        nat = cores.natural_density(E, ladder)
        mat = cores.a_density("cesaro", E, ladder)
        for (n1, v1), (n2, v2) in zip(nat.values, mat.values):
            assert n1 == n2 and abs(v1 - v2) < 1e-12

    def test_matrix_density_of_everything_tends_to_one(self):
        dens = cores.a_density("cesaro", lambda k: True, (10, 100, 1000))
        assert dens.estimate == pytest.approx(1.0)

    def test_matrix_density_of_empty_set_is_zero(self):
        dens = cores.a_density("cesaro", lambda k: False, (10, 100))
        assert all(v == 0.0 for _, v in dens.values)

    def test_matrix_density_rejects_negative_entries(self):
        with pytest.raises(ValueError):
            cores.a_density(-np.eye(8), lambda k: True, (4, 8))

    def test_indicator_input_forms_agree(self):
        ladder = (16, 64)
        want = cores.natural_density(lambda k: k % 5 == 0, ladder).values
        mask = np.arange(64) % 5 == 0
        indices = np.arange(0, 64, 5)
        assert cores.natural_density(mask, ladder).values == want
        assert cores.natural_density(indices, ladder).values == want


class TestStLimsup:
    def test_square_indicator_has_null_level(self):
        v = make_sequence("square_indicator", 10000)
        assert cores.st_limsup(v, (0, 10000), 0.02) == 0.0

    def test_constant_ones(self):
        assert cores.st_limsup(np.ones(100), (0, 100), 0.02) == 1.0

    def test_half_half_mixture(self):
        v = np.maximum(make_sequence("alternating", 1000).values.real, 0.0)
        assert cores.st_limsup(v, (0, 1000), 0.02) == 1.0

    def test_window_guard(self):
        with pytest.raises(ValueError):
            cores.st_limsup(np.ones(10), (5, 5))

    def test_tolerance_guard(self):
        with pytest.raises(ValueError):
            cores.st_limsup(np.ones(10), (0, 10), 0.0)


class TestClusterHull:
    def test_fourth_roots_give_square(self):
        x = make_sequence("roots_of_unity", 2000, m=4)
        region = cores.cluster_hull(x, (500, 2000))
        assert region.kind == "polygon"
        assert region.n_vertices == 4
        verts = {(round(a, 9), round(b, 9)) for a, b in region.vertices}
        assert verts == {(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)}
        x_coords, y_coords = region.vertices[:, 0], region.vertices[:, 1]
        signed_area = 0.5 * np.sum(x_coords * np.roll(y_coords, -1) - np.roll(x_coords, -1) * y_coords)
        assert signed_area > 0  # counterclockwise

    def test_convergent_tail_is_a_point(self):
        x = make_sequence("convergent", 4000, l=0.3, rate=0.9)
        region = cores.cluster_hull(x, (1000, 4000))
        assert region.diameter() < 1e-15
        assert region.contains_point([0.3, 0.0], tol=1e-12)

    def test_alternating_is_a_segment(self):
        region = cores.cluster_hull(make_sequence("alternating", 1000), (250, 1000))
        assert region.kind == "segment"
        assert np.allclose(region.vertices, [[-1.0, 0.0], [1.0, 0.0]])

    def test_support_consistent_with_vertices(self):
        x = make_sequence("random_bounded", 2000, seed=3)
        region = cores.cluster_hull(x, (500, 2000))
        units = np.stack([np.cos(region.angles), np.sin(region.angles)], axis=1)
        resampled = (region.vertices @ units.T).max(axis=0)
        assert np.max(np.abs(resampled - region.support)) < 1e-9

    def test_window_monotonicity(self):
        x = make_sequence("random_bounded", 2000, seed=9)
        wide = cores.cluster_hull(x, (200, 2000))
        narrow = cores.cluster_hull(x, (800, 2000))
        assert np.all(narrow.support <= wide.support + 1e-12)

    def test_empty_window_rejected(self):
        with pytest.raises(ValueError):
            cores.cluster_hull(make_sequence("e", 10), (4, 4))

    def test_huge_values_trigger_boundedness_warning(self):
        x = FiniteSeq(np.full(32, 1e9))
        with pytest.warns(UserWarning, match="bounded"):
            cores.cluster_hull(x, (0, 32))


class TestDiscCore:
    def test_constant_sequence_pins_its_value(self):
        x = FiniteSeq(np.full(500, 0.25 + 0.5j))
        region = cores.disc_core(x, (100, 500))
        assert region.diameter() < 1e-6
        assert region.contains_point([0.25, 0.5], tol=1e-6)

    def test_alternating_matches_hull_within_tolerance(self):
        x = make_sequence("alternating", 2000)
        disc = cores.disc_core(x, (500, 2000))
        hull = cores.cluster_hull(x, (500, 2000))
        assert cores.hausdorff_distance(disc, hull) < 0.05

    def test_fourth_roots_match_hull_within_tolerance(self):
        x = make_sequence("roots_of_unity", 2000, m=4)
        disc = cores.disc_core(x, (500, 2000))
        hull = cores.cluster_hull(x, (500, 2000))
        assert cores.hausdorff_distance(disc, hull) < 0.05

    def test_explicit_grid_is_used_verbatim(self):
        x = make_sequence("alternating", 2000)
        g = np.linspace(-3.0, 3.0, 41)
        grid = (g[:, None] + 1j * g[None, :]).ravel()
        region = cores.disc_core(x, (500, 2000), z_grid=grid)
        # a bounded probe grid over-covers: the vertical support cannot close
        # below ~sqrt(10)-3, which is why the default adds far probes
        assert 0.1 < region.support[region.angles.size // 4] < 0.2

    def test_empty_grid_rejected(self):
        with pytest.raises(ValueError):
            cores.disc_core(make_sequence("e", 100), (0, 100), z_grid=np.array([]))


class TestStCore:
    def test_square_indicator_collapses_to_origin(self):
        x = make_sequence("square_indicator", 4000)
        region = cores.st_core(x, (1000, 4000))
        assert np.max(region.support) < 0.05

    def test_convergent_sequence_is_its_limit(self):
        x = make_sequence("convergent", 4000, l=-0.4, rate=0.9)
        region = cores.st_core(x, (1000, 4000))
        assert region.contains_point([-0.4, 0.0], tol=0.02)
        assert region.diameter() < 0.05

    def test_alternating_matches_plain_core(self):
        x = make_sequence("alternating", 2000)
        st = cores.st_core(x, (500, 2000))
        hull = cores.cluster_hull(x, (500, 2000))
        assert cores.hausdorff_distance(st, hull) < 0.05

    def test_st_core_inside_plain_core(self):
        for name, kw in (("alternating", {}), ("roots_of_unity", {"m": 4}), ("random_bounded", {"seed": 5})):
            x = make_sequence(name, 2000, **kw)
            st = cores.st_core(x, (500, 2000))
            plain = cores.disc_core(x, (500, 2000))
            ok, _ = cores.region_included(st, plain, tol=1e-9)
            assert ok, name


class TestAlphaCore:
    def test_difference_of_alternating_is_wide_segment(self):
        x = make_sequence("alternating", 2000)
        region = cores.alpha_core(x, DELTA, (500, 2000))
        assert region.kind == "segment"
        assert np.allclose(region.vertices, [[-2.0, 0.0], [2.0, 0.0]])

    def test_equals_hull_of_transformed_sequence(self):
        x = make_sequence("random_bounded", 2000, seed=11)
        region = cores.alpha_core(x, DELTA, (500, 2000))
        tau = band_ops.forward_transform(x, DELTA)
        direct = cores.cluster_hull(tau, (500, 2000))
        assert cores.hausdorff_distance(region, direct) == 0.0

    def test_convergent_through_summing_rows(self):
        x = make_sequence("convergent", 2000, l=0.7, rate=0.9)
        region = cores.alpha_core(x, PLUS, (500, 2000))
        assert region.contains_point([1.4, 0.0], tol=1e-3)
        assert region.diameter() < 1e-2

    def test_window_must_skip_index_zero(self):
        with pytest.raises(ValueError):
            cores.alpha_core(make_sequence("e", 100), DELTA, (0, 100))


class TestRegionComparisons:
    def test_point_inside_square(self):
        pt = cores.cluster_hull(FiniteSeq(np.zeros(10)), (0, 10))
        square = cores.cluster_hull(make_sequence("roots_of_unity", 100, m=4), (0, 100))
        ok, violation = cores.region_included(pt, square, tol=0.0)
        assert ok and violation <= 0.0

    def test_wide_segment_not_inside_narrow(self):
        wide = cores.cluster_hull(FiniteSeq(np.array([-2.0, 2.0] * 5)), (0, 10))
        narrow = cores.cluster_hull(make_sequence("alternating", 10), (0, 10))
        ok, violation = cores.region_included(wide, narrow, tol=0.05)
        assert not ok
        assert violation == pytest.approx(1.0)

    def test_region_in_itself(self):
        region = cores.cluster_hull(make_sequence("random_bounded", 500, seed=2), (100, 500))
        ok, violation = cores.region_included(region, region, tol=0.0)
        assert ok and violation == 0.0

    def test_direction_mismatch_rejected(self):
        a = cores.cluster_hull(make_sequence("e", 10), (0, 10), n_directions=32)
        b = cores.cluster_hull(make_sequence("e", 10), (0, 10), n_directions=64)
        with pytest.raises(ValueError):
            cores.region_included(a, b, 0.0)


class TestSignWitness:
    def test_single_real_row(self):
        mat = np.array([[1.0, -2.0, 3.0]])
        y = cores.sign_witness(mat, [(0, (0, 3))])
        assert np.allclose(y.values.real, [1.0, -1.0, 1.0])
        assert np.dot(mat[0], y.values).real == 6.0

    def test_complex_row_phases(self):
        rng = rng_from_seed(5)
        row = rng.uniform(-1, 1, 6) + 1j * rng.uniform(-1, 1, 6)
        y = cores.sign_witness(row[None, :], [(0, (0, 6))])
        achieved = np.dot(row, y.values)
        assert abs(achieved.imag) < 1e-15
        assert achieved.real == pytest.approx(np.abs(row).sum(), rel=1e-14)

    def test_block_structure_and_bounds(self):
        rng = rng_from_seed(8)
        mat = np.zeros((4, 12))
        blocks = []
        for i in range(4):
            mat[i, 3 * i : 3 * i + 3] = rng.uniform(-2, 2, 3)
            blocks.append((i, (3 * i, 3 * i + 3)))
        y = cores.sign_witness(mat, blocks)
        assert np.max(np.abs(y.values)) <= 1.0
        for i in range(4):
            assert complex(np.dot(mat[i], y.values)) == complex(np.abs(mat[i]).sum())

    def test_overlapping_blocks_rejected(self):
        with pytest.raises(ValueError):
            cores.sign_witness(np.ones((2, 6)), [(0, (0, 4)), (1, (3, 6))])

    def test_zero_entries_get_zero_weights(self):
        mat = np.array([[0.0, 2.0, 0.0]])
        y = cores.sign_witness(mat, [(0, (0, 3))])
        assert np.array_equal(y.values, [0.0, 1.0, 0.0])


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**30), start=st.integers(min_value=0, max_value=300))
def test_hull_window_monotonicity_property(seed, start):
    x = make_sequence("random_bounded", 800, seed=seed)
    wide = cores.cluster_hull(x, (start, 800))
    narrow = cores.cluster_hull(x, (start + 200, 800))
    assert np.all(narrow.support <= wide.support + 1e-12)
