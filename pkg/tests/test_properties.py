"""Randomized property suites for the algebraic invariants of the package."""

import pytest
from hypothesis import given, settings, strategies as st

from qbakit import (
    ArmErrors,
    CorrectedTable,
    ErrorModel,
    ObservedTable,
    aggregate_confusion,
    correct_table,
    misclassify,
    odds_ratio_estimate,
)
from qbakit.estimation import delta_corrected_se, woolf_se
from qbakit.phenotype import EvaluationRecord
from qbakit.sweep import SweepSpec, frontier

MANY = settings(max_examples=1000, deadline=None)

informative_errors = st.builds(
    ArmErrors,
    st.floats(0.55, 1.0),
    st.floats(0.6, 1.0),
)

error_models = st.one_of(
    informative_errors.map(
        lambda arm: ErrorModel.non_differential(arm.sensitivity, arm.specificity)
    ),
    st.builds(ErrorModel.differential, informative_errors, informative_errors),
)


@st.composite
def inner_tables(draw):
    """Tables with every cell at least 1, usable as misclassification truth."""
    n1 = draw(st.integers(10, 1_000_000))
    n0 = draw(st.integers(10, 1_000_000))
    a = draw(st.integers(1, n1 - 1))
    b = draw(st.integers(1, n0 - 1))
    return ObservedTable(float(a), float(b), float(n1), float(n0))


@MANY
@given(inner_tables(), error_models)
def test_misclassify_then_correct_round_trips(truth, errors):
    observed = misclassify(truth, errors)
    back = correct_table(observed, errors)
    assert isinstance(back, CorrectedTable)
    assert back.A == pytest.approx(truth.a, abs=1e-9, rel=1e-9)
    assert back.B == pytest.approx(truth.b, abs=1e-9, rel=1e-9)


@MANY
@given(inner_tables())
def test_perfect_classification_identity(table):
    perfect = ErrorModel.non_differential(1.0, 1.0)
    assert misclassify(table, perfect) == table
    corrected = correct_table(table, perfect)
    assert isinstance(corrected, CorrectedTable)
    assert (corrected.A, corrected.B) == (table.a, table.b)


@MANY
@given(inner_tables())
def test_delta_se_collapses_to_woolf_at_perfect_classification(table):
    perfect = ErrorModel.non_differential(1.0, 1.0)
    corr = CorrectedTable(table.a, table.b, table.n_target, table.n_comparator)
    delta = delta_corrected_se(corr, table, perfect)
    woolf = woolf_se(table.a, table.b, table.c, table.d)
    assert delta == pytest.approx(woolf, rel=1e-12)


@MANY
@given(inner_tables(), st.floats(1e-3, 1e3))
def test_odds_ratio_scale_equivariance(table, factor):
    base = odds_ratio_estimate(table).odds_ratio
    scaled = odds_ratio_estimate(table.scaled(factor)).odds_ratio
    assert scaled == pytest.approx(base, rel=1e-9)


@MANY
@given(inner_tables())
def test_arm_swap_inverts_odds_ratio(table):
    base = odds_ratio_estimate(table).odds_ratio
    swapped = odds_ratio_estimate(table.swapped()).odds_ratio
    assert swapped == pytest.approx(1.0 / base, rel=1e-9)


@MANY
@given(
    inner_tables(),
    st.floats(0.05, 1.0),
    st.floats(0.05, 1.0),
)
def test_frontier_binary_search_matches_linear_scan(table, sens_lo, spec_lo):
    spec = SweepSpec(
        table,
        sens_min=min(sens_lo, 0.9), sens_max=1.0,
        spec_min=min(spec_lo, 0.9), spec_max=1.0,
        step=0.02,
    )
    binary = frontier(spec, strategy="binary")
    linear = frontier(spec, strategy="linear")
    assert binary.rows == linear.rows


@st.composite
def record_batches(draw):
    """A non-degenerate batch: each class present, probabilities interior."""
    def recs(flag):
        return st.lists(
            st.builds(
                EvaluationRecord, st.just(flag), st.floats(0.01, 0.99)
            ),
            min_size=1, max_size=20,
        )

    return draw(recs(True)) + draw(recs(False))


@MANY
@given(record_batches(), record_batches())
def test_confusion_aggregation_is_additive_over_partitions(part1, part2):
    whole = aggregate_confusion(part1 + part2)
    merged = aggregate_confusion(part1).merged(aggregate_confusion(part2))
    assert whole.tp == pytest.approx(merged.tp, abs=1e-9)
    assert whole.fp == pytest.approx(merged.fp, abs=1e-9)
    assert whole.fn == pytest.approx(merged.fn, abs=1e-9)
    assert whole.tn == pytest.approx(merged.tn, abs=1e-9)
