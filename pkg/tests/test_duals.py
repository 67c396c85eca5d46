import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from seqcore import band_ops, duals
from seqcore.generators import make_sequence, random_band_system, rng_from_seed
from seqcore.types import BandSystem, ExponentSeq, FiniteSeq

from conftest import complex_uniform

PLUS = BandSystem.constant(1.0, 1.0, 1.0, 512)
TWO_ONE = BandSystem.constant(2.0, 1.0, 1.0, 512)


class TestCompanions:
    def test_unit_weights_give_inverse_kernel(self):
        C = duals.companion_c(np.ones(8), TWO_ONE, 8).entries
        V = band_ops.inverse_kernel(TWO_ONE, 8).entries
        assert np.array_equal(C, V)

    def test_zero_weights_give_zero(self):
        assert np.all(duals.companion_c(np.zeros(6), PLUS, 6).entries == 0)
        assert np.all(duals.companion_d(np.zeros(6), PLUS, 6).entries == 0)

    def test_unit_impulse_companion_d(self):
        n = 6
        a = make_sequence("e_n", n, k=0)
        D = duals.companion_d(a, TWO_ONE, n).entries
        expected = np.zeros((n, n))
        expected[:, 0] = TWO_ONE.alpha[0] / TWO_ONE.r[0]
        assert np.allclose(D, expected, rtol=1e-13)

    def test_length_guard(self):
        with pytest.raises(ValueError):
            duals.companion_c(np.ones(4), PLUS, 8)

    def test_multiplier_identities(self, rng):
        worst = 0.0
        for _ in range(20):
            sys = random_band_system(rng, 64)
            a = FiniteSeq(rng.uniform(-1.0, 1.0, 64))
            y = FiniteSeq(complex_uniform(rng, 64))
            r_c, r_d = duals.companion_identity_residuals(a, y, sys)
            worst = max(worst, r_c, r_d)
        assert worst < 1e-8


class TestSubsetSup:
    def test_two_by_two_example(self):
        assert duals.subset_sup(np.array([[1.0, -1.0], [1.0, 1.0]])) == 2.0

    def test_nonnegative_matrix_takes_everything(self, rng):
        mat = rng.uniform(0.0, 1.0, (6, 6))
        assert duals.subset_sup(mat) == pytest.approx(mat.sum(), rel=1e-15)

    def test_single_column(self, rng):
        col = rng.uniform(-1.0, 1.0, (7, 1))
        assert duals.subset_sup(col) == pytest.approx(np.abs(col).sum(), rel=1e-15)

    def test_rows_axis_transposes(self, rng):
        mat = rng.uniform(-1.0, 1.0, (5, 8))
        assert duals.subset_sup(mat, axis="rows") == duals.subset_sup(mat.T, axis="columns")

    def test_exact_limit_enforced(self):
        with pytest.raises(ValueError):
            duals.subset_sup(np.ones((2, 21)), mode="exact")

    def test_bound_mode_brackets_exact(self, rng):
        for _ in range(20):
            mat = rng.uniform(-1.0, 1.0, (6, 6))
            lower, upper = duals.subset_sup(mat, mode="bound")
            exact = duals.subset_sup(mat, mode="exact")
            assert lower <= exact <= upper

    def test_sup_outer_mode(self, rng):
        mat = rng.uniform(-1.0, 1.0, (4, 5))
        exact = duals.subset_sup(mat, outer="sup")
        brute = duals.subset_sup_bruteforce(mat, outer="sup")
        assert exact == brute


@settings(max_examples=80, deadline=None)
@given(
    seed=st.integers(min_value=0, max_value=2**30),
    rows=st.integers(min_value=1, max_value=6),
    cols=st.integers(min_value=1, max_value=6),
    complex_entries=st.booleans(),
    weighted=st.booleans(),
)
def test_subset_sup_equals_bruteforce(seed, rows, cols, complex_entries, weighted):
    rng = rng_from_seed(seed)
    mat = rng.uniform(-1.0, 1.0, (rows, cols))
    if complex_entries:
        mat = mat + 1j * rng.uniform(-1.0, 1.0, (rows, cols))
    weights = rng.uniform(0.5, 2.0, cols) if weighted else None
    exponents = rng.uniform(0.5, 2.0, rows) if weighted else None
    exact = duals.subset_sup(mat, weights=weights, outer_exponents=exponents)
    brute = duals.subset_sup_bruteforce(mat, weights=weights, outer_exponents=exponents)
    assert exact == brute


def test_sandwich_bound_on_random_real_matrices(rng):
    for _ in range(100):
        mat = rng.uniform(-1.0, 1.0, (8, 8))
        exact = duals.subset_sup(mat)
        total = np.abs(mat).sum()
        assert exact <= total <= 4.0 * exact


class TestRuleTable:
    def test_beta_dual_rule_for_vanishing_space(self):
        table = duals.dual_rule_table()
        assert table["s0.beta"] == ["S3", "S4", "S5"]

    def test_all_pairs_present(self):
        table = duals.dual_rule_table()
        assert set(table) == {f"{s}.{d}" for s in duals.SPACES for d in duals.DUALS}


class TestDualReport:
    LADDER = (16, 32, 64)

    def test_finite_support_weight_holds_for_bounded_style_sets(self):
        a = make_sequence("e_n", 64, k=3)
        p = ExponentSeq.constant(1.0, 64)
        pairs = [
            ("s0", "alpha"),
            ("s0", "beta"),
            ("s0", "gamma"),
            ("sc", "alpha"),
            ("sc", "beta"),
            ("sc", "gamma"),
            ("sinf", "beta"),
            ("sinf", "gamma"),
        ]
        for space, dual in pairs:
            report = duals.dual_report(a, PLUS, p, space, dual, self.LADDER)
            assert report.aggregate == "holds", (space, dual, report)
        p2 = ExponentSeq.constant(2.0, 64)
        for dual in ("beta", "gamma"):
            assert duals.dual_report(a, PLUS, p2, "lp", dual, self.LADDER).aggregate == "holds"

    def test_finite_support_diverges_under_row_accumulating_sets(self):
        # S8, S12, S13 sum a constant column over row subsets, so even a unit
        # weight diverges under the formulas as written; the rule table keeps
        # them verbatim, hence these duals report failure by design.
        a = make_sequence("e_n", 64, k=3)
        assert (
            duals.dual_report(a, PLUS, ExponentSeq.constant(1.0, 64), "sinf", "alpha", self.LADDER).aggregate
            == "fails"
        )
        assert (
            duals.dual_report(a, PLUS, ExponentSeq.constant(2.0, 64), "lp", "alpha", self.LADDER).aggregate
            == "fails"
        )
        assert (
            duals.dual_report(a, PLUS, ExponentSeq.constant(0.5, 64), "lp", "alpha", self.LADDER).aggregate
            == "fails"
        )

    def test_factorial_weights_fail_alpha_dual(self):
        n = 64
        a = FiniteSeq(np.cumprod(np.concatenate([[1.0], np.arange(1.0, n)])))
        p = ExponentSeq.constant(1.0, n)
        report = duals.dual_report(a, PLUS, p, "sc", "alpha", self.LADDER)
        assert report.aggregate == "fails"
        s2 = next(c for c in report.conditions if c.cond_id == "S2")
        assert s2.verdict == "fails"
        assert s2.growth_exponent > 0.05

    def test_geometric_weights_hold(self):
        a = FiniteSeq(0.5 ** np.arange(64))
        p = ExponentSeq.constant(1.0, 64)
        report = duals.dual_report(a, PLUS, p, "s0", "alpha", self.LADDER)
        assert report.aggregate == "holds"
        report_c = duals.dual_report(a, PLUS, p, "sc", "alpha", self.LADDER)
        assert report_c.aggregate == "holds"

    def test_exponent_regime_dispatch(self):
        a = FiniteSeq(0.5 ** np.arange(64))
        low = ExponentSeq.constant(0.5, 64)
        high = ExponentSeq.constant(2.0, 64)
        rep_low = duals.dual_report(a, PLUS, low, "lp", "alpha", self.LADDER)
        assert [c.cond_id for c in rep_low.conditions] == ["S12"]
        rep_high = duals.dual_report(a, PLUS, high, "lp", "alpha", self.LADDER)
        assert [c.cond_id for c in rep_high.conditions] == ["S13"]

    def test_conjugate_conditions_reject_small_exponents(self):
        a = FiniteSeq(0.5 ** np.arange(64))
        p = ExponentSeq.constant(0.5, 64)
        with pytest.raises(ValueError):
            duals.dual_report(a, PLUS, p, "lp", "beta", self.LADDER)

    def test_mixed_regime_rejected(self):
        a = FiniteSeq(0.5 ** np.arange(64))
        p = ExponentSeq(np.where(np.arange(64) % 2 == 0, 0.5, 2.0))
        with pytest.raises(ValueError):
            duals.dual_report(a, PLUS, p, "lp", "alpha", self.LADDER)

    def test_empty_ladder_rejected(self):
        a = FiniteSeq(np.ones(8))
        p = ExponentSeq.constant(1.0, 8)
        with pytest.raises(ValueError):
            duals.dual_report(a, PLUS, p, "s0", "alpha", ())

    def test_forall_quantifier_is_labelled(self):
        a = FiniteSeq(0.5 ** np.arange(64))
        p = ExponentSeq.constant(1.0, 64)
        report = duals.dual_report(a, PLUS, p, "sinf", "gamma", self.LADDER)
        s11 = report.conditions[0]
        assert s11.cond_id == "S11"
        if s11.verdict == "holds":
            assert s11.note == "tested ladder only"

    def test_report_serialization_shape(self):
        a = FiniteSeq(0.5 ** np.arange(64))
        p = ExponentSeq.constant(1.0, 64)
        doc = duals.dual_report(a, PLUS, p, "s0", "beta", self.LADDER).to_json()
        assert doc["space"] == "s0" and doc["dual"] == "beta"
        assert {c["id"] for c in doc["conditions"]} == {"S3", "S4", "S5"}
        for cond in doc["conditions"]:
            assert {"id", "verdict", "estimates", "growth_exponent", "kind"} <= set(cond)
