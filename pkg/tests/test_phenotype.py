import io

import pytest

from qbakit import EmptyClass, aggregate_confusion, to_error_model
from qbakit.phenotype import ErrorEstimates, EvaluationRecord, read_records_csv
from qbakit.tables import ErrorMode

# (tp, tn, fp, fn, sens, spec, ppv, npv) from published validation runs
PUBLISHED_ROWS = [
    (35804, 1820007, 1007, 58483, 0.3797, 0.9994, 0.9726, 0.9689),
    (41877, 1864033, 6157, 29203, 0.5892, 0.9967, 0.8718, 0.9846),
    (15309, 1928187, 2304, 15503, 0.4969, 0.9988, 0.8692, 0.9920),
    (23184, 1860538, 5158, 23028, 0.5017, 0.9972, 0.8180, 0.9878),
    (126037, 1421229, 14818, 76940, 0.6209, 0.9897, 0.8948, 0.9486),
    (86120, 622402, 7646, 49429, 0.6353, 0.9879, 0.9185, 0.9264),
    (56294, 440990, 5502, 31907, 0.6382, 0.9877, 0.9110, 0.9325),
]


class TestAggregation:
    def test_two_record_oracle(self):
        est = aggregate_confusion([
            EvaluationRecord(True, 0.8),
            EvaluationRecord(False, 0.3),
        ])
        assert est.tp == pytest.approx(0.8)
        assert est.fp == pytest.approx(0.2)
        assert est.fn == pytest.approx(0.3)
        assert est.tn == pytest.approx(0.7)
        assert est.sensitivity == pytest.approx(0.8 / 1.1)
        assert est.specificity == pytest.approx(0.7 / 0.9)

    def test_degenerate_half_probabilities(self):
        est = aggregate_confusion([
            EvaluationRecord(True, 0.5),
            EvaluationRecord(False, 0.5),
        ])
        assert est.sensitivity == pytest.approx(0.5)
        assert est.specificity == pytest.approx(0.5)

    def test_no_records(self):
        with pytest.raises(EmptyClass):
            aggregate_confusion([])

    def test_certain_single_class_names_undefined_rates(self):
        with pytest.raises(EmptyClass, match="specificity"):
            aggregate_confusion([EvaluationRecord(True, 1.0)])

    def test_probability_bounds(self):
        with pytest.raises(ValueError):
            EvaluationRecord(True, 1.5)

    @pytest.mark.parametrize("row", PUBLISHED_ROWS)
    def test_published_rates_reconstruct_from_cells(self, row):
        tp, tn, fp, fn, sens, spec, ppv, npv = row
        est = ErrorEstimates(tp=tp, fp=fp, fn=fn, tn=tn)
        assert est.sensitivity == pytest.approx(sens, abs=5e-5)
        assert est.specificity == pytest.approx(spec, abs=5e-5)
        assert est.ppv == pytest.approx(ppv, abs=5e-5)
        assert est.npv == pytest.approx(npv, abs=5e-5)


class TestBridge:
    def test_single_estimate_gives_non_differential_model(self):
        est = ErrorEstimates(tp=80.0, fp=10.0, fn=20.0, tn=90.0)
        model = to_error_model(est)
        assert model.mode is ErrorMode.NON_DIFFERENTIAL
        assert model.target.sensitivity == pytest.approx(0.8)
        assert model.target.specificity == pytest.approx(0.9)

    def test_two_estimates_give_differential_model(self):
        t = ErrorEstimates(tp=80.0, fp=10.0, fn=20.0, tn=90.0)
        c = ErrorEstimates(tp=70.0, fp=5.0, fn=30.0, tn=95.0)
        model = to_error_model(t, c)
        assert model.mode is ErrorMode.DIFFERENTIAL
        assert model.comparator.sensitivity == pytest.approx(0.7)

    def test_non_informative_classifier_warns(self):
        est = ErrorEstimates(tp=30.0, fp=60.0, fn=70.0, tn=40.0)
        with pytest.warns(UserWarning, match="non-informative"):
            to_error_model(est)


class TestCsv:
    def test_round_trip(self):
        text = "phenotype_positive,case_probability\n1,0.8\n0,0.3\n"
        records = read_records_csv(io.StringIO(text))
        assert records == [
            EvaluationRecord(True, 0.8),
            EvaluationRecord(False, 0.3),
        ]

    def test_missing_header(self):
        with pytest.raises(ValueError, match="header"):
            read_records_csv(io.StringIO("x,y\n1,0.5\n"))

    def test_bad_flag(self):
        text = "phenotype_positive,case_probability\nyes,0.8\n"
        with pytest.raises(ValueError, match="must be 0 or 1"):
            read_records_csv(io.StringIO(text))
