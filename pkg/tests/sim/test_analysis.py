import math

import pytest

from scripts.core.experiment import ExperimentFile
from scripts.core.models import AlphabetSpec
from scripts.core.plans import make_fixed_guard_plan, make_progressive_plan, make_unshielded_plan
from scripts.sim.analysis import pe_cell_edge, pe_theory, rate_for
from scripts.theory.bounds import PropagationModel, pe_carry_series, pe_shielded, pe_unshielded_series


def test_pe_theory_follows_the_scheme(binary_pair):
    unshielded = make_unshielded_plan(3, 4)
    expected = pe_unshielded_series(2, 4, 1e4, 3, PropagationModel.from_alphabets(binary_pair, 3))
    assert pe_theory(unshielded, binary_pair, 1e4, 2) == pytest.approx(expected)

    shielded = make_fixed_guard_plan(3, 4, 1)
    assert pe_theory(shielded, binary_pair, 1e4, 2) == pe_shielded(2, 1e4, shielded)


def test_cell_edge_gives_up_on_large_digit_spaces(binary_pair):
    plan = make_unshielded_plan(3, 3)
    assert pe_cell_edge(plan, binary_pair, 100.0, 1) is not None
    assert pe_cell_edge(plan, binary_pair, 100.0, 1, max_states=5) is None


def experiment(**fields):
    base = dict(scheme="fixed_guard", K=2, q=(2, 2), snr_db=(30.0,), trials=10, M=4, B=3)
    base.update(fields)
    return ExperimentFile(**base)


def test_rate_for_shielded_and_unshielded():
    report = rate_for(experiment(), 0.01, 1e6)
    assert report.name == "rate_shielded_lower"
    assert rate_for(experiment(scheme="unshielded"), 0.01, 1e6).name == "rate_unshielded_upper"
    assert rate_for(experiment(scheme="variable_length", M=None, mu=8), 0.01, 1e6).mu is not None


def test_rate_for_undefined_points():
    assert rate_for(experiment(), 0.01, math.inf) is None
    assert rate_for(experiment(scheme="unshielded", q=(2, 3), B=4), 0.01, 1e6) is None
    skewed = experiment(scheme="unshielded", pmf=((0.9, 0.1), (0.5, 0.5)))
    assert rate_for(skewed, 0.01, 1e6) is None
    assert skewed.alphabets[0] == AlphabetSpec(size=2, pmf=(0.9, 0.1))


def test_pe_theory_for_progressive_plans(binary_pair):
    unguarded = make_progressive_plan(3, 3)
    model = PropagationModel.from_alphabets(binary_pair, 3)
    expected = pe_carry_series(1, [3, 12, 60, 360], 1e3, model)
    assert pe_theory(unguarded, binary_pair, 1e3, 1) == pytest.approx(expected)

    guarded = make_progressive_plan(3, 3, beta_bar=1)
    assert pe_theory(guarded, binary_pair, 1e3, 2) == pe_shielded(2, 1e3, guarded)


def test_progressive_runs_have_no_rate_bound():
    assert rate_for(experiment(scheme="progressive"), 0.01, 1e6) is None
