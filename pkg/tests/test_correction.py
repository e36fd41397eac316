import math

import pytest

from qbakit import (
    ArmErrors,
    CorrectedTable,
    ErrorModel,
    InvalidCorrection,
    ObservedTable,
    correct_table,
    misclassify,
    specificity_validity_threshold,
)
from qbakit.tables import InvalidityReason


def nd(se, sp):
    return ErrorModel.non_differential(se, sp)


class TestCorrectTable:
    def test_perfect_classification_is_identity(self):
        t = ObservedTable(120, 80, 5000, 6000)
        result = correct_table(t, nd(1.0, 1.0))
        assert isinstance(result, CorrectedTable)
        assert result.A == t.a
        assert result.B == t.b
        assert result.C == t.c
        assert result.D == t.d

    def test_negative_cell_reported_with_value(self):
        # low-prevalence arm where false positives swamp the signal
        t = ObservedTable(100, 100, 100000, 100000)
        result = correct_table(t, nd(0.5, 0.99))
        assert isinstance(result, InvalidCorrection)
        assert len(result.diagnostics) == 2
        target = result.diagnostics[0]
        assert target.arm == "target"
        assert target.offending_cell == "A"
        assert target.reason is InvalidityReason.NEGATIVE_CELL
        assert target.numerator == pytest.approx(-900.0)
        assert target.corrected_positive == pytest.approx(-1836.73, abs=0.01)

    def test_just_above_threshold_is_valid(self):
        t = ObservedTable(100, 100, 100000, 100000)
        result = correct_table(t, nd(0.5, 0.9991))
        assert isinstance(result, CorrectedTable)
        assert result.A > 0
        assert result.B > 0

    def test_zero_denominator(self):
        result = correct_table(ObservedTable(10, 10, 100, 100), nd(0.5, 0.5))
        assert isinstance(result, InvalidCorrection)
        assert all(
            d.reason is InvalidityReason.ZERO_DENOMINATOR
            and math.isnan(d.corrected_positive)
            for d in result.diagnostics
        )

    def test_cell_exceeds_total_blames_complement_cell(self):
        # a > n * se forces the corrected count past the arm total
        result = correct_table(ObservedTable(900, 100, 1000, 1000), nd(0.5, 1.0))
        assert isinstance(result, InvalidCorrection)
        diag = result.diagnostics[0]
        assert diag.arm == "target"
        assert diag.reason is InvalidityReason.CELL_EXCEEDS_TOTAL
        assert diag.offending_cell == "C"
        assert diag.corrected_positive == pytest.approx(1800.0)

    def test_differential_arms_use_their_own_errors(self):
        t = ObservedTable(500, 500, 10000, 10000)
        em = ErrorModel.differential(ArmErrors(0.8, 0.99), ArmErrors(0.6, 0.98))
        result = correct_table(t, em)
        assert isinstance(result, CorrectedTable)
        assert result.A == pytest.approx((500 - 10000 * 0.01) / (0.8 - 0.01))
        assert result.B == pytest.approx((500 - 10000 * 0.02) / (0.6 - 0.02))


class TestMisclassify:
    def test_perfect_classification_is_identity(self):
        t = ObservedTable(123, 456, 10000, 20000)
        assert misclassify(t, nd(1.0, 1.0)) == t

    def test_pure_false_positives(self):
        t = ObservedTable(0, 0, 100000, 100000)
        obs = misclassify(t, nd(0.5, 0.99))
        assert obs.a == pytest.approx(1000.0)
        assert obs.b == pytest.approx(1000.0)

    def test_round_trip(self):
        truth = ObservedTable(350, 270, 9000, 11000)
        em = ErrorModel.differential(ArmErrors(0.7, 0.97), ArmErrors(0.9, 0.995))
        back = correct_table(misclassify(truth, em), em)
        assert isinstance(back, CorrectedTable)
        assert back.A == pytest.approx(truth.a, abs=1e-9)
        assert back.B == pytest.approx(truth.b, abs=1e-9)


class TestValidityThreshold:
    def test_worked_threshold(self):
        assert specificity_validity_threshold(100, 100000) == pytest.approx(0.9990)

    def test_threshold_separates_valid_from_invalid(self):
        t = ObservedTable(100, 100, 100000, 100000)
        threshold = specificity_validity_threshold(100, 100000)
        below = correct_table(t, nd(0.5, threshold - 1e-4))
        above = correct_table(t, nd(0.5, threshold + 1e-4))
        assert isinstance(below, InvalidCorrection)
        assert isinstance(above, CorrectedTable)

    def test_rejects_empty_arm(self):
        with pytest.raises(ValueError):
            specificity_validity_threshold(0, 100)


class TestDomainValidation:
    def test_table_bounds(self):
        with pytest.raises(ValueError):
            ObservedTable(-1, 0, 100, 100)
        with pytest.raises(ValueError):
            ObservedTable(101, 0, 100, 100)
        with pytest.raises(ValueError):
            ObservedTable(1, 1, 0, 100)

    def test_arm_error_bounds(self):
        with pytest.raises(ValueError):
            ArmErrors(1.2, 0.9)
        with pytest.raises(ValueError):
            ArmErrors(0.9, -0.1)

    def test_non_differential_requires_equal_arms(self):
        from qbakit.tables import ErrorMode

        with pytest.raises(ValueError):
            ErrorModel(ArmErrors(0.8, 0.9), ArmErrors(0.7, 0.9),
                       ErrorMode.NON_DIFFERENTIAL)
