# python-ai/olrwa/__init__.py
"""Online linear regression by weighted averaging (OLR-WA) with batch and LMS baselines."""

from .errors import (BatchTooSmall, DegenerateHyperplane, DimensionMismatch, Divergence,
                     FieldCountMismatch, InconsistentSystem, InsufficientData, MissingColumn, OLRWAError,
                     ParallelHyperplanes, ParseError, SingularMatrix, ZeroAverage, ZeroVariance)
from .config import Tolerances, load_config
from .dense_linalg import invert, min_norm_solution, solve_linear
from .regression_core import (DataBatch, RegressionModel, fit_lms, fit_pseudo_inverse, mse,
                              predict, r_squared)
from .weighted_average import (Hyperplane, OnlineState, PolicyKind, RunConfig, WeightPolicy,
                               hyperplane_to_model, intersection_point, merge_step,
                               model_to_hyperplane, run_olrwa, sample_base_points,
                               update_weights, weighted_average_normal)
from .datagen import GenSpec, gen_adversarial, gen_linear, gen_shifting_variance
from .data_io import CsvSpec, load_csv

__version__ = '0.1.0'
