# python-ai/olrwa/weighted_average.py
"""
OLR-WA: online linear regression by weighted averaging of hyperplanes.

The base model summarizes everything seen so far. Each mini-batch is fit on
its own (the incremental model); both are turned into unit normals in the
joint (features, target) space, averaged twice (with +v_base and -v_base),
anchored at the intersection of the two hyperplanes, and the candidate with
the lower MSE on the batch plus points sampled from the base model becomes
the new base model.
"""

import copy
import logging
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import List, Optional

import numpy as np

from .config import DEFAULT_CONFIG, Tolerances
from .dense_linalg import min_norm_solution
from .errors import (BatchTooSmall, DegenerateHyperplane, InconsistentSystem,
                     InsufficientData, ParallelHyperplanes, SingularMatrix, ZeroAverage)
from .regression_core import (DataBatch, RegressionModel, fit_pseudo_inverse, mse,
                              predict, predict_batch)

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCES = Tolerances()


# ---------------------------------------------------------------------------
# Geometry
# ---------------------------------------------------------------------------

def canonicalize(normal: np.ndarray) -> np.ndarray:
    """Orient a normal so its target (last) component is <= 0."""
    if normal[-1] > 0:
        return -normal
    return normal


@dataclass(frozen=True)
class Hyperplane:
    """Unit normal plus a point on the plane, both in (features, target) space."""
    normal: np.ndarray = field(repr=False)
    anchor: np.ndarray = field(repr=False)

    def __post_init__(self):
        normal = np.array(self.normal, dtype=np.float64).reshape(-1)
        anchor = np.array(self.anchor, dtype=np.float64).reshape(-1)
        if normal.shape != anchor.shape or normal.size < 2:
            raise ValueError(f"Normal {normal.shape} and anchor {anchor.shape} must share a length >= 2")
        if abs(np.linalg.norm(normal) - 1.0) > 1e-12:
            raise ValueError(f"Hyperplane normal must be unit length, got norm {np.linalg.norm(normal)!r}")
        if normal[-1] > 0:
            raise ValueError("Hyperplane normal must have a non-positive target component")
        normal.setflags(write=False)
        anchor.setflags(write=False)
        object.__setattr__(self, 'normal', normal)
        object.__setattr__(self, 'anchor', anchor)

    @classmethod
    def from_normal(cls, raw_normal, anchor) -> 'Hyperplane':
        """Normalize and orient an arbitrary normal vector."""
        raw_normal = np.asarray(raw_normal, dtype=np.float64)
        unit = raw_normal / np.linalg.norm(raw_normal)
        return cls(canonicalize(unit), anchor)

    @property
    def offset(self) -> float:
        """d in normal · p + d = 0."""
        return -float(self.normal @ self.anchor)

    @property
    def dimension(self) -> int:
        return self.normal.size - 1


def model_to_hyperplane(model: RegressionModel, anchor_features) -> Hyperplane:
    """(β₁..β_m, −1) normalized, anchored at (x₀, predict(x₀))."""
    anchor_features = np.asarray(anchor_features, dtype=np.float64).reshape(-1)
    raw = np.append(model.coefficients, -1.0)
    anchor = np.append(anchor_features, predict(model, anchor_features))
    return Hyperplane(raw / np.linalg.norm(raw), anchor)


def hyperplane_to_model(h: Hyperplane, vertical_tol: float = DEFAULT_TOLERANCES.vertical) -> RegressionModel:
    """Solve the plane equation for the target.

    Raises:
        DegenerateHyperplane: the target component of the normal is (near) zero.
    """
    n_y = h.normal[-1]
    if abs(n_y) < vertical_tol:
        raise DegenerateHyperplane(f"Hyperplane is vertical in the target direction (n_y={n_y:.3e})")
    coefficients = -h.normal[:-1] / n_y
    intercept = h.anchor[-1] - float(coefficients @ h.anchor[:-1])
    return RegressionModel(intercept, coefficients)


def weighted_average_normal(v_base, v_inc, w_base: float, w_inc: float, base_sign: int = 1,
                            zero_tol: float = DEFAULT_TOLERANCES.zero_average) -> np.ndarray:
    """(base_sign·w_base·v_base + w_inc·v_inc) / (w_base + w_inc), renormalized and oriented.

    Raises:
        ZeroAverage: the weighted sum cancels (norm below ``zero_tol``).
    """
    if not (w_base > 0 and w_inc > 0):
        raise ValueError(f"Weights must be positive, got w_base={w_base}, w_inc={w_inc}")
    if base_sign not in (1, -1):
        raise ValueError(f"base_sign must be +1 or -1, got {base_sign}")
    v_base = np.asarray(v_base, dtype=np.float64)
    v_inc = np.asarray(v_inc, dtype=np.float64)

    average = (base_sign * w_base * v_base + w_inc * v_inc) / (w_base + w_inc)
    norm = float(np.linalg.norm(average))
    if norm < zero_tol:
        raise ZeroAverage(f"Weighted normals cancel out (norm {norm:.3e})")
    return canonicalize(average / norm)


def intersection_point(h1: Hyperplane, h2: Hyperplane,
                       parallel_tol: float = DEFAULT_TOLERANCES.parallel) -> np.ndarray:
    """Minimum-norm point lying on both hyperplanes.

    Coincident hyperplanes yield the minimum-norm point of the single plane.

    Raises:
        ParallelHyperplanes: the normals are parallel and the offsets differ.
    """
    if h1.dimension != h2.dimension:
        raise ValueError(f"Hyperplanes live in different spaces ({h1.dimension} vs {h2.dimension})")
    d1 = float(h1.normal @ h1.anchor)
    d2 = float(h2.normal @ h2.anchor)
    cosine = float(h1.normal @ h2.normal)

    if abs(cosine) > 1.0 - parallel_tol:
        aligned_d2 = math.copysign(1.0, cosine) * d2
        if abs(d1 - aligned_d2) <= parallel_tol * max(1.0, abs(d1), abs(d2)):
            return min_norm_solution(h1.normal.reshape(1, -1), [d1])
        raise ParallelHyperplanes(
            f"Hyperplanes are parallel (cos={cosine:.12f}) with offsets {d1:.6g} and {aligned_d2:.6g}"
        )

    try:
        return min_norm_solution(np.vstack([h1.normal, h2.normal]), [d1, d2])
    except InconsistentSystem as e:
        raise ParallelHyperplanes(str(e)) from e


# ---------------------------------------------------------------------------
# Weight policies
# ---------------------------------------------------------------------------

class PolicyKind(str, Enum):
    FIXED_POINT = 'fixed-point'
    FIXED_MODEL = 'fixed-model'
    TIME_BASED = 'time-based'
    CONFIDENCE_BASED = 'confidence-based'

    @classmethod
    def parse(cls, name: str) -> 'PolicyKind':
        aliases = {'time': cls.TIME_BASED, 'confidence': cls.CONFIDENCE_BASED}
        if name in aliases:
            return aliases[name]
        return cls(name)

    @property
    def short_name(self) -> str:
        return self.value.replace('-based', '')


@dataclass(frozen=True)
class WeightPolicy:
    kind: PolicyKind
    w_base_init: float
    w_inc: float

    def __post_init__(self):
        object.__setattr__(self, 'kind', PolicyKind.parse(self.kind) if isinstance(self.kind, str)
                           else self.kind)
        if not (self.w_base_init > 0 and self.w_inc > 0):
            raise ValueError(f"Policy weights must be positive, got {self.w_base_init} and {self.w_inc}")

    @classmethod
    def default_for(cls, kind, base_points: int, inc_size: int, config: Optional[dict] = None,
                    w_base: Optional[float] = None, w_inc: Optional[float] = None) -> 'WeightPolicy':
        """Fill unset weights: point counts for fixed-point, configured ratios otherwise."""
        kind = PolicyKind.parse(kind) if isinstance(kind, str) else kind
        if kind is PolicyKind.FIXED_POINT:
            defaults = {'w_base': float(base_points), 'w_inc': float(inc_size)}
        else:
            policies = (config or DEFAULT_CONFIG)['policies']
            defaults = policies[kind.short_name]
        return cls(kind,
                   float(w_base) if w_base is not None else float(defaults['w_base']),
                   float(w_inc) if w_inc is not None else float(defaults['w_inc']))


def update_weights(policy: WeightPolicy, w_base: float) -> float:
    """Fixed-point accumulates w_inc into w_base; the other kinds keep their static ratio."""
    if not w_base > 0:
        raise ValueError(f"w_base must be positive, got {w_base}")
    if policy.kind is PolicyKind.FIXED_POINT:
        return w_base + policy.w_inc
    return w_base


# ---------------------------------------------------------------------------
# Online state and the merge step
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MergeRecord:
    """One iteration of the online loop, as written to traces."""
    iteration: int
    intercept: float
    coefficients: tuple
    chosen: Optional[int]
    mse_candidate_1: Optional[float]
    mse_candidate_2: Optional[float]
    w_base: float
    skipped: bool = False
    reason: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            'iteration': self.iteration,
            'intercept': self.intercept,
            'coefficients': [float(c) for c in self.coefficients],
            'chosen': self.chosen,
            'mse_candidate_1': self.mse_candidate_1,
            'mse_candidate_2': self.mse_candidate_2,
            'w_base': self.w_base,
            'skipped': self.skipped,
            'reason': self.reason,
        }


@dataclass(frozen=True)
class OnlineState:
    model: RegressionModel
    w_base: float
    policy: WeightPolicy
    bounds: np.ndarray = field(repr=False)
    iteration: int
    rng: np.random.Generator = field(repr=False, compare=False)
    tolerances: Tolerances = DEFAULT_TOLERANCES
    last_record: Optional[MergeRecord] = field(default=None, compare=False)

    def __post_init__(self):
        bounds = np.array(self.bounds, dtype=np.float64).reshape(-1, 2)
        if bounds.shape[0] != self.model.dimension:
            raise ValueError(f"Bounds cover {bounds.shape[0]} features, model has {self.model.dimension}")
        if np.any(bounds[:, 0] > bounds[:, 1]):
            raise ValueError("Feature bounds must satisfy min <= max")
        if not self.w_base > 0:
            raise ValueError(f"w_base must be positive, got {self.w_base}")
        bounds.setflags(write=False)
        object.__setattr__(self, 'bounds', bounds)

    def clone(self) -> 'OnlineState':
        """Copy with an independent RNG stream at the same position."""
        return replace(self, rng=copy.deepcopy(self.rng))


def feature_bounds(features: np.ndarray) -> np.ndarray:
    return np.column_stack([features.min(axis=0), features.max(axis=0)])


def _widen_bounds(bounds: np.ndarray, features: np.ndarray) -> np.ndarray:
    if features.shape[0] == 0:
        return bounds
    return np.column_stack([np.minimum(bounds[:, 0], features.min(axis=0)),
                            np.maximum(bounds[:, 1], features.max(axis=0))])


def initial_state(base: DataBatch, policy: WeightPolicy, seed,
                  tolerances: Tolerances = DEFAULT_TOLERANCES) -> OnlineState:
    """Fit the base model and open the online state."""
    model = fit_pseudo_inverse(base, pivot_tol=tolerances.pivot)
    logger.debug(f"Base model from {base.size} points: {model}")
    return OnlineState(model=model, w_base=policy.w_base_init, policy=policy,
                       bounds=feature_bounds(base.features), iteration=0,
                       rng=np.random.default_rng(seed), tolerances=tolerances)


def _draw_base_points(model: RegressionModel, bounds: np.ndarray,
                      rng: np.random.Generator, count: int) -> DataBatch:
    if count == 0:
        return DataBatch.empty(model.dimension)
    features = rng.uniform(bounds[:, 0], bounds[:, 1], size=(count, bounds.shape[0]))
    return DataBatch(features, predict_batch(model, features))


def sample_base_points(state: OnlineState, count: int) -> DataBatch:
    """Noise-free points on the base model, uniform over the running feature bounds.

    Draws from a copy of the state's RNG, so the state itself is untouched.
    """
    if count < 0:
        raise ValueError(f"count must be non-negative, got {count}")
    return _draw_base_points(state.model, state.bounds, copy.deepcopy(state.rng), count)


def _candidate_model(v_base, v_inc, w_base, w_inc, sign, point, tol: Tolerances):
    """Build one averaged candidate; None if it degenerates."""
    try:
        normal = weighted_average_normal(v_base, v_inc, w_base, w_inc, sign, zero_tol=tol.zero_average)
        return hyperplane_to_model(Hyperplane(normal, point), vertical_tol=tol.vertical)
    except (ZeroAverage, DegenerateHyperplane) as e:
        logger.debug(f"Candidate with base sign {sign:+d} discarded: {e}")
        return None


def merge_step(state: OnlineState, batch: DataBatch) -> OnlineState:
    """One OLR-WA iteration: fit the batch, average both ways, keep the better candidate.

    Parallel base/incremental hyperplanes, or two degenerate candidates, leave
    the model and w_base untouched; bounds and the iteration counter still move.

    Raises:
        BatchTooSmall: fewer than m + 1 points in the batch.
        SingularMatrix: the incremental fit failed.
    """
    m = state.model.dimension
    if batch.dimension != m:
        raise ValueError(f"Batch has {batch.dimension} features, the model has {m}")
    if batch.size < m + 1:
        raise BatchTooSmall(batch.size, m + 1)
    tol = state.tolerances
    iteration = state.iteration + 1

    inc_model = fit_pseudo_inverse(batch, pivot_tol=tol.pivot)
    bounds = _widen_bounds(state.bounds, batch.features)

    rng = copy.deepcopy(state.rng)
    sampled = _draw_base_points(state.model, bounds, rng, batch.size)
    evaluation = batch.concat(sampled)

    base_plane = model_to_hyperplane(state.model, sampled.features.mean(axis=0))
    inc_plane = model_to_hyperplane(inc_model, batch.features.mean(axis=0))

    def skip(reason: str) -> OnlineState:
        logger.debug(f"Iteration {iteration}: merge skipped ({reason})")
        record = MergeRecord(iteration, state.model.intercept, tuple(state.model.coefficients),
                             None, None, None, state.w_base, skipped=True, reason=reason)
        return replace(state, bounds=bounds, iteration=iteration, rng=rng, last_record=record)

    try:
        point = intersection_point(base_plane, inc_plane, parallel_tol=tol.parallel)
    except ParallelHyperplanes:
        return skip('parallel')

    w_base, w_inc = state.w_base, state.policy.w_inc
    candidates = [
        _candidate_model(base_plane.normal, inc_plane.normal, w_base, w_inc, +1, point, tol),
        _candidate_model(base_plane.normal, inc_plane.normal, w_base, w_inc, -1, point, tol),
    ]
    errors = [mse(c, evaluation) if c is not None else None for c in candidates]
    if candidates[0] is None and candidates[1] is None:
        return skip('degenerate')

    # ties go to the +v_base candidate
    if errors[1] is None or (errors[0] is not None and errors[0] <= errors[1]):
        chosen = 1
    else:
        chosen = 2
    winner = candidates[chosen - 1]
    new_w_base = update_weights(state.policy, w_base)

    logger.debug(f"Iteration {iteration}: candidate {chosen} wins "
                 f"(mse1={errors[0]}, mse2={errors[1]}), model={winner}")
    record = MergeRecord(iteration, winner.intercept, tuple(winner.coefficients), chosen,
                         errors[0], errors[1], new_w_base)
    return replace(state, model=winner, w_base=new_w_base, bounds=bounds,
                   iteration=iteration, rng=rng, last_record=record)


# ---------------------------------------------------------------------------
# The online loop
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RunConfig:
    base_fraction: float
    inc_size: int
    policy: WeightPolicy
    seed: int = 0
    tolerances: Tolerances = DEFAULT_TOLERANCES


@dataclass
class OnlineResult:
    final: RegressionModel
    base: RegressionModel
    trace: List[MergeRecord]
    state: OnlineState

    @property
    def merges(self) -> int:
        return sum(1 for r in self.trace if not r.skipped)

    def trace_dicts(self) -> List[dict]:
        return [r.to_dict() for r in self.trace]


def base_point_count(n: int, base_fraction: float) -> int:
    # rounding first keeps 0.1 * 200 from ceiling to 21
    return int(math.ceil(round(base_fraction * n, 9)))


def check_run_preconditions(n: int, m: int, base_fraction: float, inc_size: int):
    """Raise InsufficientData if the base fit or the increments cannot be formed."""
    if not 0 < base_fraction <= 1:
        raise InsufficientData(f"base_fraction must be in (0, 1], got {base_fraction}")
    base_points = base_point_count(n, base_fraction)
    if base_points < m + 1:
        raise InsufficientData(
            f"Base model needs at least {m + 1} points; {base_fraction:g} of {n} gives {base_points}"
        )
    if inc_size < m + 1:
        raise InsufficientData(f"Increment size {inc_size} is below the minimum {m + 1} for {m} feature(s)")


def run_olrwa(data: DataBatch, config: RunConfig) -> OnlineResult:
    """Fit a base model on the leading share of the stream, then merge consecutive chunks.

    A trailing chunk with fewer than m + 1 points is dropped.

    Raises:
        InsufficientData: the base share or the increment size is too small.
    """
    n, m = data.size, data.dimension
    check_run_preconditions(n, m, config.base_fraction, config.inc_size)
    base_points = base_point_count(n, config.base_fraction)

    state = initial_state(data.slice(0, base_points), config.policy, config.seed, config.tolerances)
    base_model = state.model
    trace: List[MergeRecord] = []

    for start in range(base_points, n, config.inc_size):
        chunk = data.slice(start, min(start + config.inc_size, n))
        if chunk.size < m + 1:
            logger.info(f"Dropping final partial increment of {chunk.size} point(s)")
            break
        try:
            state = merge_step(state, chunk)
        except SingularMatrix as e:
            # a chunk whose points are collinear cannot be fit; treat like a skipped merge
            logger.warning(f"Increment at offset {start} could not be fit: {e}")
            iteration = state.iteration + 1
            record = MergeRecord(iteration, state.model.intercept, tuple(state.model.coefficients),
                                 None, None, None, state.w_base, skipped=True, reason='singular')
            state = replace(state, bounds=_widen_bounds(state.bounds, chunk.features),
                            iteration=iteration, last_record=record)
        trace.append(state.last_record)

    skipped = sum(1 for r in trace if r.skipped)
    if skipped:
        logger.info(f"{skipped} of {len(trace)} merge(s) skipped")
    return OnlineResult(final=state.model, base=base_model, trace=trace, state=state)
