import math
import random

import pytest
from helpers import pattern_tail, round_sig, weight_tail

from qlink.analytic import (
    FailureQuery,
    ModelMode,
    allowable_pt,
    p_algorithm_failure,
    p_block_error,
    p_stack_block_error,
    p_success_unencoded,
    table3,
)
from qlink.codes import CodeStack, parse_stack

LEADING = ModelMode.LEADING_ORDER
EXACT = ModelMode.EXACT_TAIL


# ----------------------------------------------------------------- p_success
def test_p_success_no_errors_is_certain():
    assert p_success_unencoded(12345, 0.0) == 1.0


def test_p_success_single_teleport():
    assert p_success_unencoded(1, 0.3) == pytest.approx(0.7, rel=1e-15)


def test_p_success_uses_exact_power_not_linearization():
    # Oracle: multiply the survival factor out t times.
    survival = 1.0
    for _ in range(100_000):
        survival *= 1.0 - 1e-6
    value = p_success_unencoded(1e5, 1e-6)
    assert value == pytest.approx(survival, rel=1e-10)
    assert value == pytest.approx(0.9048373727914577, rel=1e-12)
    # The linearized 1 - t*p would give 0.9 instead.
    assert abs(value - 0.9) > 4e-3


def test_p_success_rejects_bad_probability():
    with pytest.raises(ValueError):
        p_success_unencoded(10, 1.5)
    with pytest.raises(ValueError):
        p_success_unencoded(10, -0.1)


# -------------------------------------------------------------- p_block_error
def test_leading_order_is_single_lowest_mode():
    for p in (1e-6, 1e-4, 1e-2):
        assert p_block_error(7, 2, p, LEADING) == pytest.approx(21 * p**2, rel=1e-15)
        assert p_block_error(23, 4, p, LEADING) == pytest.approx(8855 * p**4, rel=1e-15)


@pytest.mark.parametrize("n", [5, 7])
@pytest.mark.parametrize("p", [0.003, 0.01, 0.03, 0.2])
def test_exact_tail_matches_pattern_enumeration(n, p):
    m = 2  # distance-3 codes fail at two errors
    assert p_block_error(n, m, p, EXACT) == pytest.approx(pattern_tail(n, m, p), rel=1e-12)


def test_exact_tail_frozen_value():
    # Frozen from the 2^7 pattern enumeration oracle.
    assert p_block_error(7, 2, 0.01, EXACT) == pytest.approx(2.03104163494e-3, rel=1e-11)


def test_exact_tail_matches_weight_enumeration_for_large_block():
    for p in (0.003, 0.01, 0.03):
        assert p_block_error(23, 4, p, EXACT) == pytest.approx(weight_tail(23, 4, p), rel=1e-12)


def test_zero_or_more_errors_is_certain():
    assert p_block_error(7, 0, 0.3, EXACT) == 1.0
    assert p_block_error(23, 0, 0.0, EXACT) == 1.0


def test_block_error_domain_checks():
    with pytest.raises(ValueError):
        p_block_error(7, 8, 0.1)
    with pytest.raises(ValueError):
        p_block_error(7, -1, 0.1)
    with pytest.raises(ValueError):
        p_block_error(7, 2, 1.2)


def test_leading_over_exact_approaches_one():
    ratio = p_block_error(7, 2, 1e-4, LEADING) / p_block_error(7, 2, 1e-4, EXACT)
    assert abs(ratio - 1.0) < 0.01


# ------------------------------------------------------- p_stack_block_error
def test_empty_stack_passes_through():
    assert p_stack_block_error(CodeStack(), 0.0123, LEADING) == 0.0123
    assert p_stack_block_error(CodeStack(), 0.0123, EXACT) == 0.0123


def test_two_level_leading_order_expands_symbolically():
    # 21 * (21 p^2)^2 = 9261 p^4
    stack = parse_stack("7-1-3+7-1-3")
    for p in (1e-5, 1e-3, 1e-2):
        assert p_stack_block_error(stack, p, LEADING) == pytest.approx(9261 * p**4, rel=1e-14)


def test_single_level_leading_order_value():
    assert p_stack_block_error(parse_stack("23-1-7"), 1e-2, LEADING) == pytest.approx(
        8855e-8, rel=1e-14
    )


@pytest.mark.parametrize("mode", [LEADING, EXACT])
@pytest.mark.parametrize("spec", ["none", "7-1-3", "23-1-7", "7-1-3+7-1-3", "23-1-7+7-1-3"])
def test_stack_error_monotone_in_pt(mode, spec):
    stack = parse_stack(spec)
    rng = random.Random(11)
    for _ in range(40):
        p1 = rng.uniform(0.0, 0.5)
        p2 = rng.uniform(0.0, 0.5)
        if p1 > p2:
            p1, p2 = p2, p1
        assert p_stack_block_error(stack, p1, mode) <= p_stack_block_error(stack, p2, mode)


# ---------------------------------------------------------- algorithm failure
def test_algorithm_failure_uncoded_example():
    result = p_algorithm_failure(CodeStack(), 1e5, 1e-6)
    # Cross-check through expm1/log1p; that path rounds the survival factor
    # differently, so agreement is near machine precision but not exact.
    assert result.p_f == pytest.approx(-math.expm1(1e5 * math.log1p(-1e-6)), rel=1e-9)
    assert result.p_f == pytest.approx(0.0951626272085423, rel=1e-12)
    assert result.linearized == pytest.approx(0.1, rel=1e-12)
    assert result.linearization_valid


def test_algorithm_failure_zero_error_rate():
    for spec in ("none", "7-1-3", "23-1-7+23-1-7"):
        assert p_algorithm_failure(parse_stack(spec), 1e8, 0.0).p_f == 0.0


def test_algorithm_failure_at_tabulated_single_level_point():
    # At the tabulated allowable rate the linearized failure sits at the target.
    result = p_algorithm_failure(parse_stack("7-1-3"), 1e5, 2.2e-4, LEADING)
    assert result.linearized == pytest.approx(0.1, rel=0.05)


def test_linearization_flag_trips_above_limit():
    assert not p_algorithm_failure(CodeStack(), 1e5, 1e-5).linearization_valid


# ----------------------------------------------------------------- inversion
TABLE3_T = (1e5, 1e8, 1e11)


def test_allowable_pt_uncoded_is_budget_over_t():
    stack = CodeStack()
    for t in TABLE3_T:
        assert allowable_pt(stack, t, 0.1, LEADING) == pytest.approx(0.1 / t, rel=1e-14)


@pytest.mark.parametrize(
    "spec, expected",
    [
        ("7-1-3", (2.2e-4, 6.9e-6, 2.2e-7)),
        ("23-1-7", (3.3e-3, 5.8e-4, 1.0e-4)),
        ("7-1-3+7-1-3", (3.2e-3, 5.7e-4, 1.0e-4)),
        ("23-1-7+7-1-3", (1.3e-2, 5.3e-3, 2.2e-3)),
        ("7-1-3+23-1-7", (1.2e-2, 5.3e-3, 2.2e-3)),
        ("23-1-7+23-1-7", (2.5e-2, 1.6e-2, 1.0e-2)),
    ],
)
def test_allowable_pt_reference_values_at_two_figures(spec, expected):
    stack = parse_stack(spec)
    for t, want in zip(TABLE3_T, expected):
        assert round_sig(allowable_pt(stack, t, 0.1, LEADING), 2) == pytest.approx(want, rel=1e-12)


def test_known_double_rounding_cell():
    # The reference table prints 0.013 for 7-1-3+23-1-7 at t = 1e5, but that
    # figure comes from evaluating the prefactor after rounding it to 0.053.
    # The closed form itself gives the value below, which rounds to 0.012.
    value = allowable_pt(parse_stack("7-1-3+23-1-7"), 1e5, 0.1, LEADING)
    assert value == pytest.approx(1.2459246606929155e-2, rel=1e-12)
    assert round_sig(value, 2) == 0.012


def test_ordering_swap_changes_allowable_pt_by_fixed_factor():
    # t C(7,2) (C(23,4) p^4)^2 vs t C(23,4) (C(7,2) p^2)^4: the leading
    # coefficients differ (21 * 8855^2 vs 8855 * 21^4), so the inverted rates
    # differ by the constant factor below at every t. "Almost identical", not
    # identical.
    factor = (8855 * 21**4 / (21 * 8855**2)) ** (1.0 / 8.0)
    for t in TABLE3_T:
        a = allowable_pt(parse_stack("23-1-7+7-1-3"), t, 0.1, LEADING)
        b = allowable_pt(parse_stack("7-1-3+23-1-7"), t, 0.1, LEADING)
        assert a / b == pytest.approx(factor, rel=1e-12)
        assert a / b < 1.006


def test_single_golay_level_close_to_double_hamming_level():
    for t in TABLE3_T:
        golay = allowable_pt(parse_stack("23-1-7"), t, 0.1, LEADING)
        hamming2 = allowable_pt(parse_stack("7-1-3+7-1-3"), t, 0.1, LEADING)
        assert max(golay, hamming2) / min(golay, hamming2) < 1.05


@pytest.mark.parametrize("spec", ["none", "7-1-3", "23-1-7", "23-1-7+7-1-3"])
@pytest.mark.parametrize("t", [1e5, 1e8])
def test_round_trip_leading(spec, t):
    stack = parse_stack(spec)
    rate = allowable_pt(stack, t, 0.1, LEADING)
    assert p_algorithm_failure(stack, t, rate, LEADING).linearized == pytest.approx(0.1, rel=1e-9)


@pytest.mark.parametrize("spec", ["none", "7-1-3", "23-1-7", "7-1-3+7-1-3"])
@pytest.mark.parametrize("t", [1e5, 1e8])
def test_round_trip_exact(spec, t):
    stack = parse_stack(spec)
    rate = allowable_pt(stack, t, 0.1, EXACT)
    assert p_algorithm_failure(stack, t, rate, EXACT).p_f == pytest.approx(0.1, rel=1e-6)


def test_allowable_pt_validates_inputs():
    with pytest.raises(ValueError):
        allowable_pt(CodeStack(), 0.5, 0.1)
    with pytest.raises(ValueError):
        allowable_pt(CodeStack(), 1e5, 1.5)


# -------------------------------------------------------------------- table3
def test_table3_default_shape():
    rows = table3()
    assert len(rows) == 21
    assert [r.scale_up for r in rows[::3]] == [1, 7, 23, 49, 161, 161, 529]


def test_table3_single_cell():
    rows = table3(t_values=(1e5,), stacks=[parse_stack("7-1-3")])
    assert len(rows) == 1
    assert rows[0].stack == "7-1-3"
    assert rows[0].allowable_pt == pytest.approx(2.182178902e-4, rel=1e-9)


def test_table3_reordered_stacks_nearly_agree():
    rows = {(r.stack, r.t): r.allowable_pt for r in table3()}
    for t in TABLE3_T:
        a = rows[("23-1-7+7-1-3", t)]
        b = rows[("7-1-3+23-1-7", t)]
        assert abs(a - b) / a < 0.006


# ------------------------------------------------------------- failure query
def test_failure_query_validation():
    stack = parse_stack("7-1-3")
    FailureQuery(stack=stack, t=10, target_pf=0.1, p_t=0.01)
    with pytest.raises(ValueError):
        FailureQuery(stack=stack, t=0.5, target_pf=0.1)
    with pytest.raises(ValueError):
        FailureQuery(stack=stack, t=10, target_pf=1.0)
    with pytest.raises(ValueError):
        FailureQuery(stack=stack, t=10, target_pf=0.1, p_t=0.5)
