import math

import pytest

from signsum.core import min_signed_norm
from signsum.errors import TooLarge
from signsum.search import (
    SearchSpec,
    _balanced_odd_multiplicities,
    maximize_min_norm,
    parity_sweep,
)


class TestSpec:
    def test_validation(self):
        with pytest.raises(ValueError):
            SearchSpec(d=0, n=2)
        with pytest.raises(ValueError):
            SearchSpec(d=2, n=2, restarts=0)
        with pytest.raises(ValueError):
            SearchSpec(d=2, n=2, step_init=0.0)
        with pytest.raises(ValueError):
            SearchSpec(d=2, n=2, step_decay=1.5)

    def test_cap(self):
        with pytest.raises(TooLarge):
            maximize_min_norm(SearchSpec(d=2, n=8), cap=6)


class TestOptima:
    def test_orthogonal_pair_is_optimal(self):
        """One angle variable; the analytic optimum min(||u+w||, ||u-w||)
        = sqrt(2 - 2|<u,w>|) is maximised at a right angle."""
        result = maximize_min_norm(
            SearchSpec(d=2, n=2, restarts=8, steps=3000, step_decay=0.997, seed=3)
        )
        assert abs(result.best_value - math.sqrt(2)) < 1e-6
        u, w = result.best_config.as_array()
        assert abs(float(u @ w)) < 2e-6

    def test_three_planar_vectors_reach_one(self):
        result = maximize_min_norm(SearchSpec(d=2, n=3, restarts=8, steps=3000, seed=3))
        assert abs(result.best_value - 1.0) < 1e-6

    def test_three_dim_quadruple_reaches_sqrt2(self):
        result = maximize_min_norm(SearchSpec(d=3, n=4, restarts=24, steps=5000, seed=11))
        assert math.sqrt(2) - 1e-4 <= result.best_value <= math.sqrt(2) + 1e-6
        assert not result.counterexample_candidate


class TestInvariants:
    def test_best_value_reverified_by_enumeration(self):
        result = maximize_min_norm(SearchSpec(d=2, n=4, restarts=4, steps=600, seed=5))
        exact, _ = min_signed_norm(result.best_config)
        assert abs(result.best_value - exact) <= 1e-12

    def test_history_monotone_per_restart(self):
        result = maximize_min_norm(SearchSpec(d=3, n=5, restarts=6, steps=800, seed=2))
        assert len(result.history) == 6
        for trace in result.history:
            assert all(a <= b for a, b in zip(trace, trace[1:]))

    def test_deterministic(self):
        spec = SearchSpec(d=3, n=4, restarts=5, steps=700, seed=21)
        a = maximize_min_norm(spec)
        b = maximize_min_norm(spec)
        assert a.best_value == b.best_value
        assert a.best_config.vectors == b.best_config.vectors
        assert a.history == b.history

    @pytest.mark.parametrize("seed", range(6))
    def test_upper_bound_sanity(self, seed):
        spec = SearchSpec(d=2 + seed % 3, n=3 + seed % 4, restarts=3, steps=400, seed=seed)
        result = maximize_min_norm(spec)
        assert result.best_value <= math.sqrt(spec.d) + 1e-9

    def test_target_early_exit(self):
        spec = SearchSpec(d=2, n=2, restarts=50, steps=1500, seed=3, target=1.3)
        result = maximize_min_norm(spec)
        assert result.exceeded_target
        assert len(result.history) < 50


class TestParitySweep:
    def test_expected_pattern(self):
        table = {(row["d"], row["n"]): row for row in parity_sweep(2, 4, seed=5, restarts=6, steps=1200)}
        assert table[(2, 4)]["best_value"] == pytest.approx(math.sqrt(2), abs=1e-12)
        assert table[(2, 4)]["parity"] == "matched"
        assert table[(2, 3)]["best_value"] == pytest.approx(1.0, abs=1e-5)
        assert table[(2, 3)]["parity"] == "mismatched"
        assert table[(1, 2)]["best_value"] == pytest.approx(0.0, abs=1e-12)
        assert table[(1, 3)]["best_value"] == pytest.approx(1.0, abs=1e-12)

    def test_odd_multiplicity_helper(self):
        assert _balanced_odd_multiplicities(2, 6) == [3, 3]
        assert _balanced_odd_multiplicities(3, 4) is None
        assert _balanced_odd_multiplicities(2, 1) is None
        assert _balanced_odd_multiplicities(3, 9) == [3, 3, 3]
