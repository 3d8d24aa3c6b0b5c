import random

import pytest

from troptensor.core import is_fully_symmetric
from troptensor.experiments import (NBINS, Distribution, ExperimentConfig, e_distribution,
                                    random_symmetric_tensor, trial_rng)
from troptensor.spectra import e_eigenpairs, verify_e_eigenpair


class TestDistribution:
    @pytest.mark.parametrize("text", ["uniform01", "normal:3", "constant"])
    def test_round_trip(self, text):
        assert str(Distribution.parse(text)) == text

    @pytest.mark.parametrize("text", ["normal:-1", "gauss", "normal:x"])
    def test_rejects(self, text):
        with pytest.raises(ValueError):
            Distribution.parse(text)

    def test_uniform_range(self):
        rng = trial_rng(0, 0)
        for _ in range(200):
            assert 0 <= Distribution().sample(rng) < 1

    def test_normal_digits(self):
        v = Distribution("normal", 2).sample(trial_rng(3, 1))
        assert (v * 100).denominator == 1


class TestTensors:
    def test_ten_orbits(self):
        A = random_symmetric_tensor(3, 3, Distribution(), trial_rng(0, 0))
        assert is_fully_symmetric(A)
        assert len({v for _, v in A.items()}) == 10

    def test_seeded(self):
        a = random_symmetric_tensor(3, 3, Distribution(), trial_rng(5, 7))
        b = random_symmetric_tensor(3, 3, Distribution(), trial_rng(5, 7))
        c = random_symmetric_tensor(3, 3, Distribution(), trial_rng(5, 8))
        assert a == b and a != c


class TestHistogram:
    def test_deterministic(self):
        config = ExperimentConfig(trials=40, seed=9)
        assert e_distribution(config).to_json(config) == e_distribution(config).to_json(config)

    def test_workers_do_not_change_result(self):
        config = ExperimentConfig(trials=30, seed=2)
        assert e_distribution(config, workers=2).counts == e_distribution(config).counts

    def test_constant_has_one_pair(self):
        config = ExperimentConfig(trials=5, distribution=Distribution("constant"))
        hist = e_distribution(config)
        assert hist.counts[1] == 5 and len(hist.counts) == NBINS

    def test_bad_trials(self):
        with pytest.raises(ValueError):
            ExperimentConfig(trials=0)

    @pytest.mark.slow
    def test_support_of_counts(self):
        hist = e_distribution(ExperimentConfig(trials=1000, seed=3))
        assert hist.total == 1000 == sum(hist.counts)
        assert hist.counts[0] == 0 and hist.counts[4] == 0
        assert hist.counts[1] > hist.counts[3] > 0


def test_every_pair_verifies():
    for t in range(25):
        A = random_symmetric_tensor(3, 3, Distribution(), trial_rng(11, t))
        pairs = e_eigenpairs(A)
        assert pairs
        for p in pairs:
            assert verify_e_eigenpair(A, p.x, p.lam).passed
