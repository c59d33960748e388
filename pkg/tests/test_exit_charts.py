"""EXIT function evaluation: closed forms, mixtures, inversion, sampling."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

import pytest

from dgldpc.codes import ComponentCode, info_functions
from dgldpc.exit_charts import (
    InversionRangeError,
    _check_decreasing,
    exit_check_generic,
    exit_cnd,
    exit_coefficients,
    exit_variable_generic,
    exit_vnd,
    inverse_exit_cnd,
    sample_exit_chart,
    MonotonicityError,
)
from dgldpc.stability import cnd_derivative_at_zero, vnd_derivative_at_zero

from conftest import (
    SPC_32_TEXT,
    ensemble,
    generic_node,
    random_component_code,
    rep_node,
    spc_node,
)

P_GRID = [i / 100 for i in range(101)]


def test_coefficients_spc32(spc32):
    coeffs = exit_coefficients(spc32)
    assert coeffs.check_terms == (0, 6, 3)
    assert all(row[0] == 0 for row in (coeffs.variable_terms[0],))


def test_coefficients_nonnegative_random():
    rng = random.Random(3)
    for _ in range(10):
        n = rng.randint(2, 7)
        code = random_component_code(rng, n, rng.randint(1, n - 1))
        coeffs = exit_coefficients(code)
        assert all(a >= 0 for a in coeffs.check_terms)
        assert all(a >= 0 for row in coeffs.variable_terms for a in row)


def test_check_exit_matches_spc_closed_form():
    for j in range(2, 9):
        code = ComponentCode.single_parity_check(j)
        for p in P_GRID:
            assert abs(exit_check_generic(code, p) - (1 - p) ** (j - 1)) <= 1e-12


def test_variable_exit_matches_repetition_closed_form():
    for j in range(2, 7):
        code = ComponentCode.repetition(j)
        for q in [i / 10 for i in range(11)]:
            for p in P_GRID:
                assert abs(exit_variable_generic(code, p, q) - (1 - q * p ** (j - 1))) <= 1e-12


def test_check_exit_at_zero_is_one(spc32, hamming74):
    for code in (spc32, hamming74):
        assert exit_check_generic(code, 0.0) == 1.0


def test_variable_exit_boundaries(spc32, hamming74):
    for code in (spc32, hamming74):
        for q in (0.0, 0.3, 1.0):
            assert exit_variable_generic(code, 0.0, q) == 1.0
        assert exit_variable_generic(code, 0.4, 0.0) == 1.0
        # q = 1: no channel observation, reduces to the check-node function
        for p in P_GRID:
            assert abs(exit_variable_generic(code, p, 1.0) - exit_check_generic(code, p)) <= 1e-13


def spans(col_vectors, target):
    from dgldpc.binmat import rank_of_bitrows

    return rank_of_bitrows(col_vectors + [target]) == rank_of_bitrows(col_vectors)


def oracle_check_exit(code, p):
    """Erasure-decoding oracle: column i is extrinsically recoverable from
    the a-priori-known columns K exactly when it lies in their span."""
    cols = code.gen.columns()
    n = code.n
    total = 0.0
    for i in range(n):
        others = [j for j in range(n) if j != i]
        for size in range(n):
            for known in combinations(others, size):
                if spans([cols[j] for j in known], cols[i]):
                    total += (1 - p) ** size * p ** (n - 1 - size)
    return total / n


def oracle_variable_exit(code, p, q):
    """Same oracle with channel-observed message bits as extra unit vectors."""
    cols = code.gen.columns()
    n, k = code.n, code.k
    total = 0.0
    for i in range(n):
        others = [j for j in range(n) if j != i]
        for ksize in range(n):
            for known in combinations(others, ksize):
                w_apriori = (1 - p) ** ksize * p ** (n - 1 - ksize)
                for jsize in range(k + 1):
                    for observed in combinations(range(k), jsize):
                        vecs = [cols[j] for j in known] + [1 << j for j in observed]
                        if spans(vecs, cols[i]):
                            total += w_apriori * (1 - q) ** jsize * q ** (k - jsize)
    return total / n


def test_exit_matches_erasure_decoding_oracle(spc32, hamming74):
    codes = [spc32, hamming74, ComponentCode.repetition(4), ComponentCode.from_text("11110\n00101\n00110")]
    for code in codes:
        for p in (0.0, 0.17, 0.5, 0.83, 1.0):
            assert abs(exit_check_generic(code, p) - oracle_check_exit(code, p)) <= 1e-13
    for code in codes:
        for p in (0.0, 0.3, 0.77, 1.0):
            for q in (0.0, 0.41, 1.0):
                got = exit_variable_generic(code, p, q)
                assert abs(got - oracle_variable_exit(code, p, q)) <= 1e-13


def test_check_exit_hamming_half_exact(hamming74):
    # all weights equal 2^-6 at p = 1/2; frozen exact value 23/64
    assert abs(exit_check_generic(hamming74, 0.5) - 23 / 64) <= 1e-15
    e = info_functions(hamming74).values
    a = [(7 - t) * e[7 - t] - (t + 1) * e[6 - t] for t in range(7)]
    exact = 1 - Fraction(1, 7) * sum(Fraction(at, 64) for at in a)
    assert exact == Fraction(23, 64)


def test_vnd_single_type_equals_node_function(spc32):
    ens = ensemble([generic_node(SPC_32_TEXT, 1.0)], [spc_node(6, 1.0)])
    for p, q in [(0.2, 0.7), (0.5, 0.5), (1.0, 0.1)]:
        assert exit_vnd(ens, p, q) == exit_variable_generic(spc32, p, q)


def test_vnd_all_repetition_closed_form():
    ens = ensemble([rep_node(3, 1.0)], [spc_node(6, 1.0)])
    assert exit_vnd(ens, 0.5, 0.4) == pytest.approx(0.9, abs=1e-15)
    assert exit_vnd(ens, 0.3, 0.0) == 1.0


def test_vnd_mixture_example(spc32):
    ens = ensemble(
        [rep_node(2, 0.5), generic_node(SPC_32_TEXT, 0.5)],
        [spc_node(6, 1.0)],
    )
    expected = 0.5 * (1 - 0.25) + 0.5 * exit_variable_generic(spc32, 0.5, 0.5)
    assert abs(exit_vnd(ens, 0.5, 0.5) - expected) <= 1e-15


def test_cnd_examples(hamming74):
    ens = ensemble([rep_node(3, 1.0)], [spc_node(6, 1.0)])
    assert abs(exit_cnd(ens, 0.2) - 0.8**5) <= 1e-15
    assert exit_cnd(ens, 0.0) == 1.0
    mixed = ensemble(
        [rep_node(3, 1.0)],
        [spc_node(3, 0.5), generic_node("1000110\n0100101\n0010011\n0001111", 0.5)],
    )
    expected = 0.5 * 0.25 + 0.5 * exit_check_generic(hamming74, 0.5)
    assert abs(exit_cnd(mixed, 0.5) - expected) <= 1e-15


def test_mixture_matches_regrouped_form(spc32):
    # summing per-type EXITs must equal the regrouped form
    # sum_rep lambda_j - q*lambda_r(p) + generic part, up to association order
    ens = ensemble(
        [rep_node(2, 0.25), rep_node(3, 0.35), generic_node(SPC_32_TEXT, 0.4)],
        [spc_node(6, 1.0)],
    )
    for p, q in [(0.1, 0.9), (0.5, 0.5), (0.8, 0.2)]:
        regrouped = (
            (0.25 + 0.35)
            - q * (0.25 * p + 0.35 * p**2)
            + 0.4 * exit_variable_generic(spc32, p, q)
        )
        assert abs(exit_vnd(ens, p, q) - regrouped) <= 1e-14
    chk = ensemble(
        [rep_node(3, 1.0)],
        [spc_node(4, 0.3), spc_node(6, 0.3), generic_node(SPC_32_TEXT, 0.4)],
    )
    for p in (0.15, 0.6):
        regrouped = (
            0.3 * (1 - p) ** 3 + 0.3 * (1 - p) ** 5 + 0.4 * exit_check_generic(spc32, p)
        )
        assert abs(exit_cnd(chk, p) - regrouped) <= 1e-14


def test_endpoint_unity_for_valid_ensembles(rep3_spc6, g32var_spc6):
    for ens in (rep3_spc6, g32var_spc6):
        for q in (0.0, 0.3, 1.0):
            assert abs(exit_vnd(ens, 0.0, q) - 1.0) <= 1e-12
        assert abs(exit_cnd(ens, 0.0) - 1.0) <= 1e-12


def test_cnd_finite_difference_matches_analytic_slope(rep3_spc6, g32var_spc6):
    h = 1e-6
    for ens in (rep3_spc6, g32var_spc6):
        diff = (exit_cnd(ens, h) - exit_cnd(ens, -h)) / (2 * h)
        assert abs(diff - cnd_derivative_at_zero(ens)) <= 1e-6


def test_vnd_finite_difference_matches_analytic_slope(g32var_spc6):
    h = 1e-6
    for q in (0.1, 0.5, 0.9):
        diff = (exit_vnd(g32var_spc6, h, q) - exit_vnd(g32var_spc6, -h, q)) / (2 * h)
        assert abs(diff - vnd_derivative_at_zero(g32var_spc6, q)) <= 1e-6


def test_inverse_round_trips(rep3_spc6, hamming74):
    assert inverse_exit_cnd(rep3_spc6, 1.0) == 0.0
    assert abs(inverse_exit_cnd(rep3_spc6, 0.32768) - 0.2) <= 1e-10
    mixed = ensemble(
        [rep_node(3, 1.0)],
        [spc_node(3, 0.5), generic_node("1000110\n0100101\n0010011\n0001111", 0.5)],
    )
    target = exit_cnd(mixed, 0.3)
    assert abs(inverse_exit_cnd(mixed, target) - 0.3) <= 1e-10


def test_inverse_rejects_unreachable_target():
    # a valid d_min = 2 code with an all-zero generator column keeps
    # I_{E,C}(1) above zero, so low targets are unreachable
    ens = ensemble([rep_node(3, 1.0)], [generic_node("110", 1.0)])
    assert exit_cnd(ens, 1.0) == pytest.approx(1 / 3, abs=1e-12)
    with pytest.raises(InversionRangeError):
        inverse_exit_cnd(ens, 0.0)


def test_decreasing_guard_flags_increase():
    _check_decreasing([1.0, 0.5, 0.5, 0.2])
    with pytest.raises(MonotonicityError):
        _check_decreasing([1.0, 0.4, 0.41])


def test_sample_exit_chart_endpoints(rep3_spc6):
    vnd, cnd = sample_exit_chart(rep3_spc6, 0.3, 2)
    assert [ia for ia, _ in vnd.points] == [0.0, 1.0]
    assert vnd.channel_q == 0.3
    assert cnd.channel_q is None
    assert vnd.points[1][1] == 1.0
    assert cnd.points[1] == (1.0, 1.0)
    with pytest.raises(ValueError):
        sample_exit_chart(rep3_spc6, 0.3, 1)


def test_chart_tunnel_open_below_threshold(rep3_spc6):
    vnd, cnd = sample_exit_chart(rep3_spc6, 0.3, 101)
    gaps = [v - c for (_, v), (_, c) in zip(vnd.points, cnd.points)]
    assert all(g > 0 for g in gaps[:-1])  # endpoint (1,1) is shared by both curves
    assert abs(gaps[-1]) <= 1e-12


def test_chart_curves_cross_above_threshold(rep3_spc6):
    vnd, cnd = sample_exit_chart(rep3_spc6, 0.5, 101)
    gaps = [v - c for (_, v), (_, c) in zip(vnd.points[:-1], cnd.points[:-1])]
    assert min(gaps) < 0


def test_curve_csv_format(rep3_spc6):
    vnd, _ = sample_exit_chart(rep3_spc6, 0.3, 3)
    csv = vnd.to_csv()
    lines = csv.split("\n")
    assert lines[0] == "ia,value"
    assert lines[1] == "0,0.69999999999999996"
    assert csv.endswith("\n")
    assert "\r" not in csv
