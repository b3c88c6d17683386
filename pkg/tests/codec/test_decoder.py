from fractions import Fraction

import hypothesis.strategies as st
from hypothesis import given, settings

from scripts.codec.decoder import decode_digits, detect_guard_violation, extract_digits
from scripts.codec.encoder import block_statistics, encode_block, power_scale
from scripts.codec.grid import WorkingGrid
from scripts.codec.models import DecodeResult
from scripts.core.models import AlphabetSpec
from scripts.core.plans import make_fixed_guard_plan, make_unshielded_plan


def received(rows, plan, alphabets):
    """Exact noiseless y plus the eta and gamma_bar the receiver uses."""
    K = len(alphabets)
    gammas, variances = block_statistics(plan, alphabets, K)
    eta = power_scale(variances)
    y = sum(
        Fraction(eta) * (Fraction(encode_block(row, plan, K), K * plan.total_denominator) - g)
        for row, g in zip(rows, gammas)
    )
    return y, eta, sum(gammas)


def test_decode_two_ternary_sources():
    plan = make_unshielded_plan(5, 2)
    alphabets = [AlphabetSpec(3), AlphabetSpec(3)]
    y, eta, gamma_bar = received([(1, 0), (1, 2)], plan, alphabets)
    result = decode_digits(y, eta, gamma_bar, plan, K=2, L=5)
    assert result.raw_digits == (2, 2)
    assert result.estimates == (2, 2)
    assert result.guard_violation is None


def test_decode_zero_point_gives_zero_digits():
    plan = make_unshielded_plan(5, 2)
    alphabets = [AlphabetSpec(3), AlphabetSpec(3)]
    _, eta, gamma_bar = received([(0, 0), (0, 0)], plan, alphabets)
    result = decode_digits(-Fraction(eta) * gamma_bar, eta, gamma_bar, plan, K=2, L=5)
    assert result.raw_digits == (0, 0)


def test_negative_d_is_clamped():
    plan = make_unshielded_plan(5, 3)
    grid = WorkingGrid.for_plan(plan, 2)
    assert extract_digits(-12345, grid, plan, 5).raw_digits == (0, 0, 0)


def test_d_above_one_is_clamped_to_top_cell():
    plan = make_unshielded_plan(5, 3)
    grid = WorkingGrid.for_plan(plan, 2)
    assert extract_digits(grid.scale + 7, grid, plan, 5).raw_digits == (4, 4, 4)


def test_estimates_are_clamped_to_output_alphabet():
    plan = make_fixed_guard_plan(4, 2, 1)
    grid = WorkingGrid.for_plan(plan, 2)
    # top of the cell: r = (3, 5)
    result = extract_digits(grid.scale - 1, grid, plan, 3)
    assert result.raw_digits == (3, 5)
    assert result.estimates == (2, 2)
    assert result.guard_violation == 1


def test_guard_violation_examples():
    plan = make_fixed_guard_plan(4, 3, 1)
    assert detect_guard_violation(DecodeResult((1, 0, 1), (1, 0, 0)), plan, 3) == 2
    assert detect_guard_violation(DecodeResult((1, 4, 1), (1, 2, 0)), plan, 3) == 2
    assert detect_guard_violation(DecodeResult((1, 2, 3), (1, 1, 2)), plan, 3) is None
    # the wider B window admits r = beta + L
    assert detect_guard_violation(DecodeResult((1, 4, 1), (1, 2, 0)), plan, 4) is None


def test_noiseless_shielded_decode_never_flags():
    plan = make_fixed_guard_plan(3, 3, 1)
    alphabets = [AlphabetSpec(2), AlphabetSpec(2)]
    for a in range(8):
        rows = [tuple((a >> i) & 1 for i in range(3)), (1, 0, 1)]
        y, eta, gamma_bar = received(rows, plan, alphabets)
        result = decode_digits(y, eta, gamma_bar, plan, K=2, L=3)
        assert result.guard_violation is None
        assert result.estimates == tuple(x + z for x, z in zip(*rows))


@settings(max_examples=200)
@given(
    st.lists(st.integers(0, 1), min_size=2, max_size=2),
    st.lists(st.integers(0, 1), min_size=2, max_size=2),
    st.integers(-(18 << 64), 18 << 64),
    st.integers(0, 1000),
)
def test_smaller_noise_never_shortens_the_correct_prefix(row1, row2, z, k):
    plan = make_unshielded_plan(3, 2)
    grid = WorkingGrid.for_plan(plan, 2)
    alphabets = [AlphabetSpec(2), AlphabetSpec(2)]
    gammas, _ = block_statistics(plan, alphabets, 2)
    gamma_grid = [grid.from_fraction(g) for g in gammas]
    x = sum(grid.from_numerator(encode_block(r, plan, 2)) - g for r, g in zip((row1, row2), gamma_grid))
    truth = tuple(a + b for a, b in zip(row1, row2))

    def correct_prefix(noise):
        estimates = extract_digits(sum(gamma_grid) + x + noise, grid, plan, 3).estimates
        n = 0
        while n < len(truth) and estimates[n] == truth[n]:
            n += 1
        return n

    assert correct_prefix(z * k // 1000) >= correct_prefix(z)
