# python-ai/olrwa/regression_core.py
"""
Batch pseudo-inverse regression, the LMS online baseline, and the
evaluation metrics (MSE and R²).

DataBatch keeps raw features only; the leading 1-column for the
intercept is added inside the fit routines.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .dense_linalg import PIVOT_TOLERANCE, solve_linear
from .errors import DimensionMismatch, Divergence, SingularMatrix, ZeroVariance

logger = logging.getLogger(__name__)

DIVERGENCE_BOUND = 1e12


@dataclass(frozen=True)
class RegressionModel:
    """Hyperplane y = intercept + coefficients · x"""
    intercept: float
    coefficients: np.ndarray = field(repr=False)

    def __post_init__(self):
        coefficients = np.array(self.coefficients, dtype=np.float64).reshape(-1)
        coefficients.setflags(write=False)
        object.__setattr__(self, 'coefficients', coefficients)
        object.__setattr__(self, 'intercept', float(self.intercept))
        if coefficients.size < 1:
            raise ValueError("A regression model needs at least one feature coefficient")
        if not (np.isfinite(self.intercept) and np.all(np.isfinite(coefficients))):
            raise ValueError(f"Model parameters must be finite: {self.as_vector()}")

    @property
    def dimension(self) -> int:
        return int(self.coefficients.size)

    def as_vector(self) -> np.ndarray:
        """(β₀, β₁, ..., β_m)"""
        return np.concatenate([[self.intercept], self.coefficients])

    @classmethod
    def from_vector(cls, beta) -> 'RegressionModel':
        beta = np.asarray(beta, dtype=np.float64).reshape(-1)
        return cls(intercept=beta[0], coefficients=beta[1:])

    def __repr__(self):
        coefs = ', '.join(f"{c:.6g}" for c in self.coefficients)
        return f"RegressionModel(intercept={self.intercept:.6g}, coefficients=[{coefs}])"


@dataclass(frozen=True)
class DataBatch:
    """Feature matrix (n x m, no bias column) plus target vector."""
    features: np.ndarray = field(repr=False)
    targets: np.ndarray = field(repr=False)

    def __post_init__(self):
        features = np.array(self.features, dtype=np.float64)
        if features.ndim == 1:
            features = features.reshape(-1, 1)
        targets = np.array(self.targets, dtype=np.float64).reshape(-1)
        if features.ndim != 2:
            raise ValueError(f"Features must be a 2-D matrix, got shape {features.shape}")
        if features.shape[0] != targets.shape[0]:
            raise DimensionMismatch(features.shape[0], targets.shape[0], what="target count")
        if features.shape[1] < 1:
            raise ValueError("A batch needs at least one feature column")
        if not (np.all(np.isfinite(features)) and np.all(np.isfinite(targets))):
            raise ValueError("Batch values must be finite")
        features.setflags(write=False)
        targets.setflags(write=False)
        object.__setattr__(self, 'features', features)
        object.__setattr__(self, 'targets', targets)

    @property
    def size(self) -> int:
        return int(self.targets.shape[0])

    @property
    def dimension(self) -> int:
        return int(self.features.shape[1])

    def __len__(self):
        return self.size

    def __repr__(self):
        return f"DataBatch(n={self.size}, m={self.dimension})"

    def slice(self, start: int, stop: int) -> 'DataBatch':
        return DataBatch(self.features[start:stop], self.targets[start:stop])

    def take(self, indices) -> 'DataBatch':
        indices = np.asarray(indices, dtype=np.intp)
        return DataBatch(self.features[indices], self.targets[indices])

    def concat(self, other: 'DataBatch') -> 'DataBatch':
        if other.dimension != self.dimension:
            raise DimensionMismatch(self.dimension, other.dimension, what="feature count")
        return DataBatch(np.vstack([self.features, other.features]),
                         np.concatenate([self.targets, other.targets]))

    @classmethod
    def empty(cls, dimension: int) -> 'DataBatch':
        return cls(np.zeros((0, dimension)), np.zeros(0))


def design_matrix(features: np.ndarray) -> np.ndarray:
    """Prepend the intercept column."""
    return np.hstack([np.ones((features.shape[0], 1)), features])


def fit_pseudo_inverse(data: DataBatch, pivot_tol: float = PIVOT_TOLERANCE) -> RegressionModel:
    """Closed-form least squares β = (XᵀX)⁻¹Xᵀy.

    Raises:
        SingularMatrix: XᵀX is singular (fewer than m + 1 points, duplicates,
            collinear features).
    """
    n, m = data.size, data.dimension
    if n < m + 1:
        raise SingularMatrix(f"Need at least {m + 1} points to fit {m} feature(s), got {n}")
    X = design_matrix(data.features)
    xtx = X.T @ X
    xty = X.T @ data.targets
    beta = solve_linear(xtx, xty, pivot_tol=pivot_tol)
    return RegressionModel.from_vector(beta)


def _check_dimension(model: RegressionModel, m: int):
    if m != model.dimension:
        raise DimensionMismatch(model.dimension, m, what="feature count")


def predict(model: RegressionModel, x) -> float:
    x = np.asarray(x, dtype=np.float64).reshape(-1)
    _check_dimension(model, x.shape[0])
    return float(model.intercept + model.coefficients @ x)


def predict_batch(model: RegressionModel, features: np.ndarray) -> np.ndarray:
    features = np.asarray(features, dtype=np.float64)
    _check_dimension(model, features.shape[1])
    return model.intercept + features @ model.coefficients


def mse(model: RegressionModel, data: DataBatch) -> float:
    """Mean squared error (1/n)·Σ(yᵢ − ŷᵢ)²."""
    if data.size == 0:
        raise ValueError("MSE of an empty batch is undefined")
    residuals = data.targets - predict_batch(model, data.features)
    return float(np.mean(residuals ** 2))


def r_squared(model: RegressionModel, data: DataBatch) -> float:
    """Coefficient of determination 1 − SS_res / SS_tot.

    Raises:
        ZeroVariance: all targets are equal, so SS_tot is zero.
    """
    y = data.targets
    if data.size < 2 or np.all(y == y[0]):
        raise ZeroVariance(f"R² is undefined: targets have zero variance (n={data.size})")
    residuals = y - predict_batch(model, data.features)
    ss_res = float(np.sum(residuals ** 2))
    ss_tot = float(np.sum((y - np.mean(y)) ** 2))
    return 1.0 - ss_res / ss_tot


def fit_lms(data: DataBatch, learning_rate: float, passes: int,
            initial: Optional[RegressionModel] = None,
            divergence_bound: float = DIVERGENCE_BOUND) -> RegressionModel:
    """Least-mean-squares (Widrow-Hoff) updates w ← w − α(w·x̃ − y)x̃.

    x̃ is the feature vector with a leading 1 so the intercept is learned
    alongside the slopes. Points are visited in batch order, ``passes`` times.

    Raises:
        Divergence: any weight magnitude exceeded ``divergence_bound``.
    """
    if not learning_rate > 0:
        raise ValueError(f"learning_rate must be positive, got {learning_rate}")
    if passes < 1:
        raise ValueError(f"passes must be at least 1, got {passes}")
    if initial is None:
        initial = RegressionModel(0.0, np.zeros(data.dimension))
    _check_dimension(initial, data.dimension)

    X = design_matrix(data.features)
    y = data.targets
    w = initial.as_vector().copy()
    for epoch in range(passes):
        for xt, target in zip(X, y):
            error = float(w @ xt) - target
            w = w - learning_rate * error * xt
            if not np.all(np.abs(w) <= divergence_bound):
                raise Divergence(
                    f"LMS diverged in pass {epoch + 1} (|w| > {divergence_bound:g}); "
                    f"lower the learning rate (currently {learning_rate:g})"
                )
        logger.debug(f"LMS pass {epoch + 1}/{passes}: w={w}")
    return RegressionModel.from_vector(w)
