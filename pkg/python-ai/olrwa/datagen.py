# python-ai/olrwa/datagen.py
"""
Seeded synthetic datasets for the batch-vs-online experiments.

Features sit on a regular grid with spacing ``step`` (a line in 2-D, a
square-ish grid in 3-D). The stream visits grid positions in a fixed
coprime-stride order, so any run of consecutive points spans the whole
feature range. Randomness enters only through zero-mean Gaussian target
noise drawn from numpy's PCG64 generator.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np

from .regression_core import DataBatch, RegressionModel, fit_pseudo_inverse, r_squared

logger = logging.getLogger(__name__)

# golden-ratio stride gives well-spread consecutive positions
_STRIDE_FRACTION = (math.sqrt(5.0) - 1.0) / 2.0


class Correlation(str, Enum):
    POSITIVE = 'pos'
    NEGATIVE = 'neg'

    @classmethod
    def parse(cls, value) -> 'Correlation':
        if isinstance(value, cls):
            return value
        aliases = {'positive': cls.POSITIVE, 'negative': cls.NEGATIVE, '+': cls.POSITIVE, '-': cls.NEGATIVE}
        return aliases.get(value) or cls(value)

    @property
    def sign(self) -> float:
        return 1.0 if self is Correlation.POSITIVE else -1.0

    def flipped(self) -> 'Correlation':
        return Correlation.NEGATIVE if self is Correlation.POSITIVE else Correlation.POSITIVE


@dataclass(frozen=True)
class GenSpec:
    n: int
    dim: int = 2
    variance: float = 0.0
    correlation: Correlation = Correlation.POSITIVE
    step: float = 1.0
    seed: int = 0
    intercept: float = 0.0
    slope: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, 'correlation', Correlation.parse(self.correlation))
        if self.dim not in (2, 3):
            raise ValueError(f"dim must be 2 or 3, got {self.dim}")
        if self.n < self.dim:
            raise ValueError(f"n must be at least dim ({self.dim}) to fit a model, got {self.n}")
        if self.variance < 0:
            raise ValueError(f"variance must be non-negative, got {self.variance}")
        if not self.step > 0:
            raise ValueError(f"step must be positive, got {self.step}")

    @property
    def features(self) -> int:
        return self.dim - 1


def stride_order(n: int) -> np.ndarray:
    """Permutation of range(n) visiting k * p mod n for the first p >= n·0.618 coprime with n."""
    if n <= 2:
        return np.arange(n)
    p = max(1, int(round(n * _STRIDE_FRACTION)))
    while math.gcd(p, n) != 1:
        p += 1
    return (np.arange(n) * p) % n


def grid_features(n: int, dim: int, step: float) -> np.ndarray:
    """n grid positions with spacing ``step``, in stream (stride) order."""
    index = stride_order(n)
    if dim == 2:
        return (index * step).reshape(-1, 1).astype(np.float64)
    side = int(math.ceil(math.sqrt(n)))
    return np.column_stack([index % side, index // side]).astype(np.float64) * step


def generating_model(spec: GenSpec, correlation: Optional[Correlation] = None) -> RegressionModel:
    """The noise-free model the generators draw from."""
    sign = (correlation or spec.correlation).sign
    return RegressionModel(spec.intercept, np.full(spec.features, sign * spec.slope))


def _targets(features: np.ndarray, model: RegressionModel, noise: np.ndarray) -> np.ndarray:
    return model.intercept + features @ model.coefficients + noise


def gen_linear(spec: GenSpec) -> DataBatch:
    """One linear distribution with constant noise variance."""
    return gen_shifting_variance(spec, spec.variance)


def gen_shifting_variance(spec: GenSpec, variance2: float) -> DataBatch:
    """Same line throughout; the first ⌈n/2⌉ points use spec.variance, the rest variance2."""
    if variance2 < 0:
        raise ValueError(f"variance2 must be non-negative, got {variance2}")
    rng = np.random.default_rng(spec.seed)
    features = grid_features(spec.n, spec.dim, spec.step)
    first = int(math.ceil(spec.n / 2))
    sigma = np.empty(spec.n)
    sigma[:first] = math.sqrt(spec.variance)
    sigma[first:] = math.sqrt(variance2)
    noise = rng.standard_normal(spec.n) * sigma
    return DataBatch(features, _targets(features, generating_model(spec), noise))


def gen_adversarial(spec: GenSpec) -> DataBatch:
    """First half follows spec.correlation, second half the opposite sign, same intercept.

    Each half covers its own copy of the grid, so the two halves overlap in
    feature space and cross at the intercept.
    """
    rng = np.random.default_rng(spec.seed)
    first = int(math.ceil(spec.n / 2))
    second = spec.n - first
    noise = rng.standard_normal(spec.n) * math.sqrt(spec.variance)

    parts = []
    for count, correlation, part_noise in (
            (first, spec.correlation, noise[:first]),
            (second, spec.correlation.flipped(), noise[first:])):
        if count == 0:
            continue
        features = grid_features(count, spec.dim, spec.step)
        model = generating_model(spec, correlation)
        parts.append((features, _targets(features, model, part_noise)))
    return DataBatch(np.vstack([p[0] for p in parts]), np.concatenate([p[1] for p in parts]))


def generate(spec: GenSpec, mode: str = 'consistent', variance2: Optional[float] = None) -> DataBatch:
    """Dispatch on the experiment mode name used by the CLI."""
    if mode == 'consistent':
        return gen_linear(spec)
    if mode == 'shifting':
        return gen_shifting_variance(spec, spec.variance if variance2 is None else variance2)
    if mode == 'adversarial':
        return gen_adversarial(spec)
    raise ValueError(f"Unknown generation mode: {mode}")


def calibrate_variance(dim: int, mode: str, target_range: Tuple[float, float],
                       candidates: Iterable[float], seeds: Iterable[int],
                       n: int = 200, step: float = 1.0, shift_ratio: float = 6.0) -> Dict:
    """Sweep noise variances and pick the one whose median batch R² sits closest to the range centre.

    In shifting mode each candidate is the first-half variance and the second
    half uses ``candidate * shift_ratio``.
    """
    low, high = target_range
    centre = (low + high) / 2.0
    seeds = list(seeds)
    sweep: List[Dict] = []
    for variance in candidates:
        scores = []
        for seed in seeds:
            spec = GenSpec(n=n, dim=dim, variance=variance, step=step, seed=seed)
            if mode == 'shifting':
                data = gen_shifting_variance(spec, variance * shift_ratio)
            else:
                data = gen_linear(spec)
            scores.append(r_squared(fit_pseudo_inverse(data), data))
        scores = np.asarray(scores)
        entry = {
            'variance': float(variance),
            'variance2': float(variance * shift_ratio) if mode == 'shifting' else None,
            'median_r2': float(np.median(scores)),
            'hit_rate': float(np.mean((scores >= low) & (scores <= high))),
        }
        logger.debug(f"variance={variance:g}: median R²={entry['median_r2']:.4f}, hit rate={entry['hit_rate']:.2f}")
        sweep.append(entry)

    if not sweep:
        raise ValueError("No candidate variances given")
    best = min(sweep, key=lambda e: (abs(e['median_r2'] - centre), -e['hit_rate']))
    return {'dim': dim, 'mode': mode, 'target_range': [low, high], 'seeds': len(seeds),
            'best': best, 'sweep': sweep}
