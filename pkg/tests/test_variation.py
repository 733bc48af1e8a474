import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from stochord.errors import NoConvergence, NonPositiveKernel
from stochord.propositions import exp_kernel
from stochord.random_extremes import truncate_pmf
from stochord.variation import (
    COUNTEREXAMPLES,
    Kernel,
    SignedSequenceFn,
    canonical_grid,
    check_rr2,
    check_tp2,
    counterexample,
    minor_verdict,
    sign_changes,
    vd_transform,
    verify_proposition,
)

power = Kernel(lambda n, x: x**n / n, (0, 1), "x^n/n")
inv_power = Kernel(lambda n, x: 1.0 / (n * x**n), (1, np.inf), "1/(n x^n)")
N_GRID = list(range(1, 41))
UNIT = canonical_grid("III", 400)
ABOVE_ONE = canonical_grid("I", 400)


class TestKernels:
    def test_power_kernel_designations(self):
        assert check_tp2(power, N_GRID, UNIT).holds
        assert not check_rr2(power, N_GRID, UNIT).holds

    def test_inverse_power_kernel_designations(self):
        assert not check_tp2(inv_power, N_GRID, ABOVE_ONE).holds
        assert check_rr2(inv_power, N_GRID, ABOVE_ONE).holds

    def test_separable_kernel_is_both(self):
        K = Kernel(lambda n, x: (n + 1.0) * np.exp(-x))
        assert check_tp2(K, N_GRID, UNIT).holds and check_rr2(K, N_GRID, UNIT).holds

    def test_underflowing_entries_are_handled_in_log_space(self):
        v = check_rr2(exp_kernel, [1, 150, 200], np.linspace(1, 3, 5))
        assert v.holds

    def test_minor_sign_oracle(self):
        # det [[1, 2], [3, 4]] = -2: RR2 not TP2
        table = np.array([[1.0, 2.0], [3.0, 4.0]])
        tp = minor_verdict(table, [1, 2], [0.0, 1.0], "TP2")
        assert not tp.holds and tp.worst_violation == pytest.approx(2 / 6)
        assert minor_verdict(table, [1, 2], [0.0, 1.0], "RR2").holds

    def test_non_positive_kernel(self):
        with pytest.raises(NonPositiveKernel):
            check_tp2(Kernel(lambda n, x: x - 0.5), [1, 2], [0.2, 0.8])

    def test_unknown_property(self):
        with pytest.raises(ValueError):
            minor_verdict(np.ones((2, 2)), [1, 2], [0, 1], "TP3")


class TestSignChanges:
    def test_counts_and_pattern(self):
        x = np.linspace(0, 2 * np.pi, 1000)
        rep = sign_changes(x, np.sin(x + 0.1))
        assert rep.count == 2 and rep.pattern == "+-+"
        assert len(rep.change_locations) == 2
        lo, hi = rep.change_locations[0]
        assert lo <= np.pi - 0.1 <= hi

    def test_dead_band_suppresses_noise(self):
        x = np.linspace(0, 1, 100)
        v = 1e-14 * np.sin(50 * x) + (x - 0.5)
        assert sign_changes(x, v).count == 1

    def test_zeros_carry_no_sign(self):
        rep = sign_changes([0, 1, 2, 3], [1.0, 0.0, 0.0, 2.0])
        assert rep.count == 0 and rep.pattern == "+"

    def test_input_validation(self):
        with pytest.raises(ValueError):
            sign_changes([0, 1], [1.0])
        with pytest.raises(ValueError):
            sign_changes([1, 0], [1.0, -1.0])

    @given(st.lists(st.floats(-10, 10), min_size=1, max_size=40))
    def test_count_matches_pattern(self, vals):
        rep = sign_changes(np.arange(len(vals)), vals)
        assert rep.count == max(len(rep.pattern) - 1, 0)
        assert all(a != b for a, b in zip(rep.pattern, rep.pattern[1:]))


class TestTransform:
    @pytest.mark.parametrize("x", [1.2, 2.0, 5.0, 20.0])
    def test_case_one_closed_form(self, x):
        f, K, closed, _ = COUNTEREXAMPLES["I"]
        w = vd_transform(f, K, [x]).w[0]
        assert abs(w - (x / (x - 1) + 5 * math.log(1 - 1 / x))) <= 1e-8
        assert closed(np.array([x]))[0] == pytest.approx(x / (x - 1) + 5 * math.log(1 - 1 / x), rel=1e-14)

    def test_case_one_at_two(self):
        f, K, _, _ = COUNTEREXAMPLES["I"]
        assert vd_transform(f, K, [2.0]).w[0] == pytest.approx(2 + 5 * math.log(0.5), abs=1e-8)

    @pytest.mark.parametrize("x", [0.05, 0.2, 0.5, 0.9])
    def test_case_three_closed_form(self, x):
        f, K, _, _ = COUNTEREXAMPLES["III"]
        w = vd_transform(f, K, [x]).w[0]
        assert abs(w - (x / (1 - x) + 10 * x * math.log(1 - x))) <= 1e-8

    def test_laplace_kernel_against_closed_form(self):
        # sum (n - 3 - x) q^n with q = e^-x is q/(1-q)^2 - (3+x) q/(1-q)
        f = SignedSequenceFn(lambda n, x: n - 3 - x)
        x = np.linspace(0.05, 10, 2000)
        q = np.exp(-x)
        closed = q / (1 - q) ** 2 - (3 + x) * q / (1 - q)
        tr = vd_transform(f, exp_kernel, x)
        np.testing.assert_allclose(tr.w, closed, rtol=1e-9, atol=1e-12)
        rep = sign_changes(x, tr.w)
        assert rep.count == 1 and rep.pattern == "+-"

    def test_sixty_terms_suffice_away_from_zero(self):
        f = SignedSequenceFn(lambda n, x: n - 3 - x)
        x = np.linspace(0.5, 10, 2000)
        tr = vd_transform(f, exp_kernel, x, n_max=60)
        n = np.arange(1, 61.0)[:, None]
        direct = np.sum((n - 3 - x) * np.exp(-n * x), axis=0)
        np.testing.assert_allclose(tr.w, direct, rtol=1e-10, atol=1e-12)
        assert sign_changes(x, tr.w).count == 0
        with pytest.raises(NoConvergence):
            vd_transform(f, exp_kernel, [0.3], n_max=60)

    def test_no_convergence(self):
        f = SignedSequenceFn(lambda n, x: np.ones_like(n * x))
        with pytest.raises(NoConvergence):
            vd_transform(f, exp_kernel, [1e-3], n_max=100)

    def test_pmf_weights_sum_exactly(self):
        pmf = truncate_pmf("3:1/5, 4:2/5, 5:2/5")
        f = SignedSequenceFn(lambda n, x: n + 0 * x)
        K = Kernel(lambda n, x: np.ones_like(n * x))
        assert vd_transform(f, K, [0.3], weights=pmf).w[0] == pytest.approx(4.2, rel=1e-15)


class TestCounterexamples:
    @pytest.mark.parametrize("case", ["I", "II", "III", "IV"])
    def test_case(self, case):
        res = counterexample(case)
        assert res.ok
        assert res.signs.count >= 2
        assert res.max_abs_error <= 1e-8
        assert res.x.size == 2000

    def test_grids_avoid_singular_endpoints(self):
        assert canonical_grid("I")[0] == pytest.approx(1.001)
        assert canonical_grid("I")[-1] == pytest.approx(50.0)
        g = canonical_grid("III")
        assert g[0] == pytest.approx(1e-3) and g[-1] == pytest.approx(1 - 1e-3)

    def test_case_one_fails_proposition_hypotheses(self):
        f, K, _, _ = COUNTEREXAMPLES["I"]
        rep = verify_proposition("3.1", f, K, canonical_grid("I"), n_max=60000)
        assert rep.classification == "HYPOTHESIS_FAIL"
        assert not rep.hypotheses[1].holds
        assert rep.signs.count >= 2
