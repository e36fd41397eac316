import pytest

from qbakit.synthspace import full_space


@pytest.fixture(scope="session")
def default_space():
    """The full default synthetic space, built once per test session."""
    return full_space()


@pytest.fixture(scope="session")
def strata_by_key(default_space):
    """Successful strata keyed by (incidence, uncorrected_or)."""
    from qbakit.synthspace import StratumResult

    return {
        (s.scenario.incidence, s.scenario.uncorrected_or): s
        for s in default_space
        if isinstance(s, StratumResult)
    }
