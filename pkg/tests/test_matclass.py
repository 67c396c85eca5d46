import numpy as np
import pytest

from seqcore import band_ops, matclass
from seqcore.generators import make_matrix, random_band_system, rng_from_seed
from seqcore.types import BandSystem, ExponentSeq

DELTA = BandSystem.difference(512)
LADDER = (32, 64, 128)


class TestBtilde:
    def test_inverse_kernel_transforms_to_identity(self):
        n = 32
        V = band_ops.inverse_kernel(DELTA, n).entries
        bt = matclass.btilde(V, DELTA, n)
        assert np.array_equal(bt, np.eye(n))

    def test_identity_transforms_to_triangle(self, mild_system):
        n = 16
        bt = matclass.btilde(np.eye(n), mild_system, n)
        assert np.allclose(bt, band_ops.triangle_kernel(mild_system, n).entries, rtol=1e-14)

    def test_zero(self, mild_system):
        assert np.all(matclass.btilde(np.zeros((8, 8)), mild_system, 8) == 0)

    def test_matches_triangle_product(self, mild_system, rng):
        n = 24
        B = rng.uniform(-1.0, 1.0, (n, n))
        bt = matclass.btilde(B, mild_system, n)
        T = band_ops.triangle_kernel(mild_system, n).entries
        assert np.max(np.abs(bt - T @ B)) < 1e-10

    def test_linearity(self, mild_system, rng):
        n = 16
        B1 = rng.uniform(-1.0, 1.0, (n, n))
        B2 = rng.uniform(-1.0, 1.0, (n, n))
        lhs = matclass.btilde(B1 + B2, mild_system, n)
        rhs = matclass.btilde(B1, mild_system, n) + matclass.btilde(B2, mild_system, n)
        assert np.max(np.abs(lhs - rhs)) < 1e-12


class TestEMatrix:
    def test_triangle_composes_to_identity(self):
        n = 24
        T = band_ops.triangle_kernel(DELTA, n).entries
        E, _ = matclass.e_matrix(T, DELTA, n)
        assert np.array_equal(E, np.eye(n))

    def test_identity_composes_to_inverse(self, mild_system):
        n = 24
        E, _ = matclass.e_matrix(np.eye(n), mild_system, n)
        V = band_ops.inverse_kernel(mild_system, n).entries
        assert np.allclose(E, V, rtol=1e-12, atol=1e-14)

    def test_partial_sums_stabilize_exactly_for_banded_input(self, mild_system):
        n = 24
        A = band_ops.triangle_kernel(mild_system, n).entries  # two-band rows
        _, partial = matclass.e_matrix(A, mild_system, n)
        for i in (0, 3, 7):
            rows = partial.rows(i)
            assert np.array_equal(rows[i + 1 :], np.tile(rows[i], (n - i - 1, 1)))

    def test_final_partial_sum_equals_e_exactly(self, mild_system, rng):
        n = 20
        A = rng.uniform(-1.0, 1.0, (n, n))
        E, partial = matclass.e_matrix(A, mild_system, n)
        for i in range(n):
            assert np.array_equal(partial.rows(i)[-1], E[i])


class TestEvalCondition:
    def test_row_sum_condition_on_cesaro_rows(self):
        verdict = matclass.eval_condition("4.8", matrix="cesaro", sys=DELTA, ladder=LADDER)
        assert verdict.verdict == "holds"
        assert all(abs(v - 1.0) < 1e-12 for _, _, v in verdict.estimates)

    def test_row_sum_condition_exact_on_transformed_inverse(self):
        n = 128
        V = band_ops.inverse_kernel(DELTA, n).entries
        verdict = matclass.eval_condition("4.8", A=V, sys=DELTA, ladder=LADDER)
        assert verdict.verdict == "holds"
        assert all(v == 1.0 for _, _, v in verdict.estimates)

    def test_deflated_rows_on_identity_composition(self):
        p = ExponentSeq.constant(1.0, 128)
        verdict = matclass.eval_condition("mt37", A="difference", sys=DELTA, p=p, ladder=LADDER)
        assert verdict.verdict == "holds"
        n0, witness, value = verdict.estimates[0]
        assert witness == "M=2" and abs(value - 0.5) < 1e-15

    def test_vanishing_row_sums_fail_on_identity_composition(self):
        verdict = matclass.eval_condition("mt40", A="difference", sys=DELTA, q=np.ones(128), ladder=LADDER)
        assert verdict.verdict == "fails"
        assert abs(verdict.estimates[-1][2] - 1.0) < 1e-15
        assert verdict.last_deviation == pytest.approx(1.0)

    def test_stabilization_condition_exact_for_banded(self, mild_system):
        verdict = matclass.eval_condition("mt23", A="difference", sys=mild_system, ladder=LADDER)
        assert verdict.verdict == "holds"
        assert all(v == 0.0 for _, _, v in verdict.estimates)

    def test_missing_inputs_rejected(self):
        with pytest.raises(ValueError):
            matclass.eval_condition("mt33", A="cesaro", sys=DELTA, p=ExponentSeq.constant(1.0, 128), ladder=LADDER)
        with pytest.raises(ValueError):
            matclass.eval_condition("mt24", A="cesaro", sys=DELTA, ladder=LADDER)

    def test_conjugate_guard(self):
        p_small = ExponentSeq.constant(0.5, 128)
        with pytest.raises(ValueError):
            matclass.eval_condition("L2.7i", matrix="cesaro", p=p_small, ladder=LADDER)

    def test_unknown_condition(self):
        with pytest.raises(KeyError):
            matclass.eval_condition("mt99", ladder=LADDER)

    def test_q_monotonicity_warning(self):
        q = np.concatenate([np.full(64, 2.0), np.full(64, 1.0)])
        with pytest.warns(UserWarning):
            matclass.eval_condition("mt40", A="difference", sys=DELTA, q=q, ladder=LADDER)

    def test_generic_matrix_conditions(self):
        p = ExponentSeq.constant(1.0, 128)
        v = matclass.eval_condition("L2.5", matrix="cesaro", p=p, ladder=LADDER)
        assert v.verdict == "holds"
        v215 = matclass.eval_condition("2.15", matrix="cesaro", ladder=LADDER)
        assert v215.verdict == "holds"  # columns 1/(n+1) -> 0


class TestClassReport:
    def test_averaging_rows_are_regular(self):
        n = 128
        S = make_matrix("summation", n)
        C = make_matrix("cesaro", n)
        report = matclass.class_report(S @ C, "c:sc_reg", DELTA, ladder=LADDER)
        assert report.aggregate == "holds"
        ids = [c.cond_id for c in report.conditions]
        assert ids == ["4.1", "4.2z", "4.5"]

    def test_zero_matrix_fails_regularity(self):
        report = matclass.class_report("zero", "c:sc_reg", DELTA, ladder=LADDER)
        assert report.aggregate == "fails"
        v45 = next(c for c in report.conditions if c.cond_id == "4.5")
        assert v45.verdict == "fails"

    def test_transformed_inverse_is_regular_but_not_statistically(self):
        n = 256
        V = band_ops.inverse_kernel(DELTA, n).entries
        ladder = (64, 128, 256)
        assert matclass.class_report(V, "c:sc_reg", DELTA, ladder=ladder).aggregate == "holds"
        streg = matclass.class_report(V, "st:sc_reg", DELTA, ladder=ladder)
        assert streg.aggregate == "fails"  # rows over the squares keep hitting 1

    def test_averaging_rows_pass_the_statistical_class(self):
        n = 256
        S = make_matrix("summation", n)
        C = make_matrix("cesaro", n)
        ladder = (64, 128, 256)
        report = matclass.class_report(S @ C, "st:sc_reg", DELTA, ladder=ladder)
        assert report.aggregate == "holds"
        v46 = next(c for c in report.conditions if c.cond_id == "4.6")
        # mass over the squares shrinks like sqrt(n)/n
        assert v46.growth_exponent == pytest.approx(-0.5, abs=0.15)

    def test_composed_class_on_transform_target(self):
        p = ExponentSeq.constant(1.0, 128)
        report = matclass.class_report("difference", "sinf:linf", DELTA, p=p, ladder=LADDER)
        assert report.aggregate == "holds"
        assert [c.cond_id for c in report.conditions] == ["mt23", "mt24", "mt29"]

    def test_q_required_for_q_targets(self):
        p = ExponentSeq.constant(1.0, 128)
        with pytest.raises(ValueError):
            matclass.class_report("cesaro", "s0:c_q", DELTA, p=p, ladder=LADDER)

    def test_unknown_class(self):
        with pytest.raises(KeyError):
            matclass.class_report("cesaro", "nope", DELTA, ladder=LADDER)

    def test_rule_table_matches_dispatch(self):
        table = matclass.class_rule_table()
        assert table["s0:c_q"] == ["mt25", "mt26", "mt27", "mt36", "mt37", "mt38"]
        assert set(table) == set(matclass.CLASS_RULES)

    def test_report_serialization(self):
        report = matclass.class_report("cesaro", "c:sc_reg", DELTA, ladder=(16, 32, 64))
        doc = report.to_json()
        assert doc["class"] == "c:sc_reg"
        assert {c["id"] for c in doc["conditions"]} == {"4.1", "4.2z", "4.5"}
        for cond in doc["conditions"]:
            assert "anchor" in cond and "estimates" in cond


def test_density_set_family_has_vanishing_density():
    from seqcore.cores import natural_density

    for name, mask in matclass.default_density_sets(4096):
        dens = natural_density(mask, (512, 1024, 2048, 4096))
        assert dens.values[-1][1] < dens.values[0][1] < 0.2
