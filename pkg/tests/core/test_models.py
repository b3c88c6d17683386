import pytest

from scripts.core.models import (
    AlphabetSpec,
    ConfigurationError,
    DigitPlan,
    DigitSlot,
    PlanError,
    SlotRole,
    SystemConfig,
    alphabets_from_sizes,
)
from scripts.core.plans import make_fixed_guard_plan, make_unshielded_plan


def test_alphabet_defaults_to_uniform():
    a = AlphabetSpec(4)
    assert a.pmf == (0.25, 0.25, 0.25, 0.25)
    assert a.pre_offset == 0 and a.pre_spacing == 1
    assert a.mean == pytest.approx(1.5)
    assert a.variance == pytest.approx(1.25)


def test_alphabet_levels_apply_preprocessing():
    assert AlphabetSpec(3, pre_offset=-1, pre_spacing=2).levels == (-1, 1, 3)


@pytest.mark.parametrize("kwargs", [
    {"size": 1},
    {"size": 2, "pmf": (0.5, 0.6)},
    {"size": 2, "pmf": (1.0,)},
    {"size": 2, "pmf": (1.5, -0.5)},
    {"size": 2, "pre_spacing": 0},
])
def test_alphabet_rejects_invalid_input(kwargs):
    with pytest.raises(ConfigurationError):
        AlphabetSpec(**kwargs)


def test_pmf_tolerance_is_1e12():
    AlphabetSpec(2, pmf=(0.5, 0.5 + 5e-13))
    with pytest.raises(ConfigurationError):
        AlphabetSpec(2, pmf=(0.5, 0.5 + 1e-10))


def test_slot_radix_and_guard_fill():
    slot = DigitSlot(4, 1, 2)
    assert slot.radix == 6
    assert slot.is_information
    assert DigitSlot(5, role="guard").role is SlotRole.GUARD
    assert DigitSlot(5, role=SlotRole.GUARD).guard_fill == 2


def test_slot_rejects_non_integers():
    with pytest.raises(PlanError):
        DigitSlot(2.5)
    with pytest.raises(PlanError):
        DigitSlot(3, guard_low=-1)


def test_denominators_two_ways_agree():
    plan = DigitPlan((DigitSlot(3), DigitSlot(4, 1, 2), DigitSlot(7, 2, 4), DigitSlot(2)))
    assert plan.denominators == (3, 18, 198, 396)
    assert all(plan.denominator(m) == plan.denominators[m - 1] for m in range(1, 5))
    assert plan.denominator(0) == 1
    assert plan.total_denominator == 396


def test_empty_plan_is_rejected():
    with pytest.raises(PlanError):
        DigitPlan(())


def test_system_config_validation():
    plan = make_unshielded_plan(3, 2)
    config = SystemConfig.uniform(2, 2, plan, snr=100.0, trials=10)
    assert config.K == 2 and len(config.alphabets) == 2
    with pytest.raises(ConfigurationError):
        SystemConfig(K=2, alphabets=alphabets_from_sizes([2]), plan=plan, snr=1.0)
    with pytest.raises(ConfigurationError):
        SystemConfig.uniform(2, 2, plan, snr=0.0)
    with pytest.raises(ConfigurationError):
        SystemConfig.uniform(2, 2, plan, snr=1.0, trials=0)
    with pytest.raises(ConfigurationError):
        SystemConfig.uniform(2, 2, plan, snr=1.0, master_seed=2**64)


def test_plan_error_is_a_configuration_error():
    with pytest.raises(ConfigurationError):
        make_fixed_guard_plan(3, 2, 0)
