# python-ai/olrwa/dense_linalg.py
"""
Small dense linear algebra for the regression and geometry code.

Matrices here are tiny (normal equations of a few features, 2 x (m+1)
intersection systems), so everything is plain Gaussian elimination with
partial pivoting in a fixed row-major loop order. Results are reproducible
run to run.
"""

import logging

import numpy as np

from .errors import DimensionMismatch, InconsistentSystem, SingularMatrix

logger = logging.getLogger(__name__)

PIVOT_TOLERANCE = 1e-12
# relative residual below which a constraint row counts as dependent
DEPENDENCE_TOLERANCE = 1e-9


def as_matrix(a) -> np.ndarray:
    """Coerce to a finite 2-D float64 array."""
    arr = np.array(a, dtype=np.float64, copy=True)
    if arr.ndim != 2:
        raise ValueError(f"Expected a 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("Matrix entries must be finite")
    return arr


def as_vector(b) -> np.ndarray:
    """Coerce to a finite 1-D float64 array."""
    arr = np.array(b, dtype=np.float64, copy=True).reshape(-1)
    if not np.all(np.isfinite(arr)):
        raise ValueError("Vector entries must be finite")
    return arr


def _check_square(a: np.ndarray):
    rows, cols = a.shape
    if rows != cols:
        raise DimensionMismatch(rows, cols, what="square matrix columns")


def _eliminate(aug: np.ndarray, n: int, pivot_tol: float):
    """Forward elimination on an augmented matrix [A | B] in place."""
    for k in range(n):
        # partial pivoting: first row with the largest magnitude wins ties
        pivot_row = k + int(np.argmax(np.abs(aug[k:, k])))
        pivot = aug[pivot_row, k]
        if abs(pivot) < pivot_tol:
            raise SingularMatrix(f"Matrix is singular (pivot {pivot:.3e} in column {k})", pivot=pivot)
        if pivot_row != k:
            aug[[k, pivot_row]] = aug[[pivot_row, k]]
        for i in range(k + 1, n):
            factor = aug[i, k] / aug[k, k]
            if factor != 0.0:
                aug[i, k:] -= factor * aug[k, k:]


def _back_substitute(aug: np.ndarray, n: int) -> np.ndarray:
    rhs = aug[:, n:]
    x = np.zeros_like(rhs)
    for k in range(n - 1, -1, -1):
        acc = rhs[k].copy()
        for j in range(k + 1, n):
            acc -= aug[k, j] * x[j]
        x[k] = acc / aug[k, k]
    return x


def solve_linear(a, b, pivot_tol: float = PIVOT_TOLERANCE) -> np.ndarray:
    """Solve a square system a·x = b.

    Raises:
        SingularMatrix: a pivot magnitude fell below ``pivot_tol`` after pivoting.
    """
    a = as_matrix(a)
    b = as_vector(b)
    _check_square(a)
    n = a.shape[0]
    if b.shape[0] != n:
        raise DimensionMismatch(n, b.shape[0], what="right-hand side")

    aug = np.hstack([a, b.reshape(-1, 1)])
    _eliminate(aug, n, pivot_tol)
    return _back_substitute(aug, n)[:, 0]


def invert(a, pivot_tol: float = PIVOT_TOLERANCE) -> np.ndarray:
    """Invert a square matrix by eliminating against the identity."""
    a = as_matrix(a)
    _check_square(a)
    n = a.shape[0]
    aug = np.hstack([a, np.eye(n)])
    _eliminate(aug, n, pivot_tol)
    return _back_substitute(aug, n)


def _independent_rows(a: np.ndarray, b: np.ndarray, tol: float):
    """Select linearly independent rows of a, checking that dropped rows are consistent.

    Runs modified Gram-Schmidt over the rows in order, carrying the
    right-hand side along. A row whose residual norm is below
    ``tol * ||row||`` is dependent; it must then also have a (relatively)
    zero right-hand-side residual.
    """
    basis = []
    basis_rhs = []
    keep = []
    for i, (row, rhs) in enumerate(zip(a, b)):
        residual = row.copy()
        residual_rhs = float(rhs)
        for q, c in zip(basis, basis_rhs):
            proj = float(residual @ q)
            residual -= proj * q
            residual_rhs -= proj * c
        row_norm = float(np.linalg.norm(row))
        res_norm = float(np.linalg.norm(residual))
        if res_norm <= tol * max(1.0, row_norm):
            if abs(residual_rhs) > tol * max(1.0, abs(float(rhs))):
                raise InconsistentSystem(
                    f"Constraint row {i} is dependent on earlier rows but its right-hand side "
                    f"differs by {residual_rhs:.3e}"
                )
            logger.debug(f"Dropping dependent constraint row {i}")
            continue
        basis.append(residual / res_norm)
        basis_rhs.append(residual_rhs / res_norm)
        keep.append(i)
    return keep


def min_norm_solution(a, b, pivot_tol: float = PIVOT_TOLERANCE,
                      dependence_tol: float = DEPENDENCE_TOLERANCE) -> np.ndarray:
    """Minimum Euclidean norm x with a·x = b, for k <= n constraint rows.

    Uses x = aᵀ (a aᵀ)⁻¹ b restricted to an independent subset of the rows,
    so x lies in the row space of a and is orthogonal to its null space.

    Raises:
        InconsistentSystem: the rows are dependent and b is not in their image
            (parallel hyperplanes with different offsets).
    """
    a = as_matrix(a)
    b = as_vector(b)
    k, n = a.shape
    if b.shape[0] != k:
        raise DimensionMismatch(k, b.shape[0], what="right-hand side")
    if k > n:
        raise DimensionMismatch(n, k, what="constraint count (must not exceed unknowns)")

    keep = _independent_rows(a, b, dependence_tol)
    if not keep:
        return np.zeros(n)
    rows = a[keep]
    gram = rows @ rows.T
    y = solve_linear(gram, b[keep], pivot_tol=pivot_tol)
    return rows.T @ y
