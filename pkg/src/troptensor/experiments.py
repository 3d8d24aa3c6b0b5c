"""Seeded random symmetric tensors and the E-eigenpair count histogram."""

from __future__ import annotations

import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from .core import Tensor
from .spectra import e_eigenpairs

UNIFORM_DENOM = 2**53
NBINS = 8  # counts 0..6 and a final "7 or more" bin


@dataclass(frozen=True)
class Distribution:
    kind: str = "uniform01"
    digits: int = 0

    @classmethod
    def parse(cls, text: str) -> "Distribution":
        """``uniform01`` or ``normal:<digits>``."""
        if text == "uniform01":
            return cls()
        if text.startswith("normal:"):
            digits = int(text.split(":", 1)[1])
            if digits < 0:
                raise ValueError("digits must be nonnegative")
            return cls("normal", digits)
        if text == "constant":
            return cls("constant")
        raise ValueError(f"unknown distribution {text!r}")

    def __str__(self):
        return {"uniform01": "uniform01", "constant": "constant"}.get(
            self.kind, f"normal:{self.digits}")

    def sample(self, rng: np.random.Generator) -> Fraction:
        if self.kind == "uniform01":
            return Fraction(int(rng.integers(0, UNIFORM_DENOM)), UNIFORM_DENOM)
        if self.kind == "normal":
            # round through the decimal string so the value is exact
            return Fraction(f"{rng.standard_normal():.{self.digits}f}")
        return Fraction(0)


@dataclass(frozen=True)
class ExperimentConfig:
    trials: int = 5000
    seed: int = 0
    n: int = 3
    m: int = 3
    distribution: Distribution = field(default_factory=Distribution)

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be at least 1")


@dataclass
class Histogram:
    counts: list
    total: int
    degenerate_trials: int = 0

    def fraction(self, k: int) -> float:
        return self.counts[k] / self.total

    def to_json(self, config: ExperimentConfig | None = None) -> str:
        doc = {"counts": self.counts, "total": self.total,
               "degenerate_trials": self.degenerate_trials}
        if config is not None:
            doc["config"] = {**asdict(config), "distribution": str(config.distribution)}
        return json.dumps(doc, sort_keys=True)


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent PCG64 stream for one trial of one master seed."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, trial])))


def random_symmetric_tensor(n: int, m: int, dist: Distribution,
                            rng: np.random.Generator) -> Tensor:
    """One draw per multiset of ``m`` indices, shared by all its permutations."""
    values = {orbit: dist.sample(rng)
              for orbit in itertools.combinations_with_replacement(range(n), m)}
    return Tensor.from_function(n, m, lambda i, t: values[tuple(sorted((i,) + t))])


def _count(args) -> tuple[int, int]:
    config, trial = args
    A = random_symmetric_tensor(config.n, config.m, config.distribution,
                                trial_rng(config.seed, trial))
    pairs, degenerate = e_eigenpairs(A, return_degenerate=True)
    return len(pairs), degenerate


def e_distribution(config: ExperimentConfig, workers: int = 1) -> Histogram:
    """Histogram of the number of E-eigenpairs over random symmetric tensors.

    Deterministic in ``config``; the worker count does not change the result.
    """
    jobs = [(config, t) for t in range(config.trials)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_count, jobs, chunksize=64))
    else:
        results = [_count(j) for j in jobs]
    counts = [0] * NBINS
    degenerate = 0
    for c, d in results:
        counts[min(c, NBINS - 1)] += 1
        degenerate += bool(d)
    return Histogram(counts, config.trials, degenerate)
