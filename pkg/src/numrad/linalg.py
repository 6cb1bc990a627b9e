"""Dense complex matrix kernels.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  Every function
here treats its inputs as immutable values and returns fresh arrays.

The Hermitian eigensolver is a cyclic complex Jacobi iteration; singular
values are obtained from the eigenvalues of ``M* M``.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

import numpy as np

from .errors import (
    ConfigError,
    DimensionMismatch,
    IterationLimit,
    NonFinite,
    NotHermitian,
    NotPositiveDefinite,
    NotSquare,
)

HERMITICITY_TOL = 1e-10
PD_FLOOR = 1e-10
JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 30


def as_matrix(M: Any) -> np.ndarray:
    """Validate and convert ``M`` to a 2-D complex128 array (always a copy)."""
    a = np.array(M, dtype=np.complex128, copy=True)
    if a.ndim == 0:
        a = a.reshape(1, 1)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise DimensionMismatch(f"expected a non-empty 2-D matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NonFinite("matrix contains NaN or Inf entries")
    return a


def require_square(M: np.ndarray) -> int:
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise NotSquare(f"expected a square matrix, got shape {M.shape}")
    return M.shape[0]


def hermitian_defect(M: np.ndarray) -> float:
    return float(np.max(np.abs(M - M.conj().T))) if M.size else 0.0


def is_hermitian(M: np.ndarray, tol: float = HERMITICITY_TOL) -> bool:
    scale = 1.0 + float(np.max(np.abs(M)))
    return hermitian_defect(M) <= tol * scale


def require_hermitian(M: np.ndarray, tol: float = HERMITICITY_TOL) -> None:
    require_square(M)
    if not is_hermitian(M, tol):
        raise NotHermitian(
            f"matrix deviates from its adjoint by {hermitian_defect(M):.3e} "
            f"(tolerance {tol:g} relative)"
        )


# --- arithmetic -----------------------------------------------------------


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.complex128)


def zeros(n: int, m: int | None = None) -> np.ndarray:
    return np.zeros((n, n if m is None else m), dtype=np.complex128)


def add(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    if A.shape != B.shape:
        raise DimensionMismatch(f"cannot add {A.shape} and {B.shape}")
    return A + B


def subtract(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    if A.shape != B.shape:
        raise DimensionMismatch(f"cannot subtract {B.shape} from {A.shape}")
    return A - B


def multiply(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    if A.shape[1] != B.shape[0]:
        raise DimensionMismatch(f"cannot multiply {A.shape} by {B.shape}")
    return A @ B


def scale(A: np.ndarray, c: complex) -> np.ndarray:
    return complex(c) * A


def adjoint(A: np.ndarray) -> np.ndarray:
    return A.conj().T.copy()


def block_2x2(A: np.ndarray, B: np.ndarray, C: np.ndarray, D: np.ndarray) -> np.ndarray:
    """Assemble ``[[A, B], [C, D]]`` from four n x n blocks."""
    n = A.shape[0]
    for name, blk in zip("ABCD", (A, B, C, D)):
        if blk.shape != (n, n):
            raise DimensionMismatch(f"block {name} has shape {blk.shape}, expected {(n, n)}")
    return np.block([[A, B], [C, D]]).astype(np.complex128)


# --- Jacobi eigensolver ---------------------------------------------------


def _rotate(a: np.ndarray, v: np.ndarray | None, p: int, q: int) -> None:
    apq = a[p, q]
    r = abs(apq)
    app = a[p, p].real
    aqq = a[q, q].real
    if r <= 1e-300 * (1.0 + abs(app) + abs(aqq)):
        a[p, q] = a[q, p] = 0.0
        return
    u = apq / r
    theta = (aqq - app) / (2.0 * r)
    if theta == 0.0:
        t = 1.0
    elif abs(theta) > 1e150:
        t = 0.5 / theta
    else:
        t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
    c = 1.0 / math.sqrt(t * t + 1.0)
    s = t * c
    su = s * u
    suc = su.conjugate()

    col_p = a[:, p].copy()
    col_q = a[:, q].copy()
    a[:, p] = c * col_p - suc * col_q
    a[:, q] = su * col_p + c * col_q
    row_p = a[p, :].copy()
    row_q = a[q, :].copy()
    a[p, :] = c * row_p - su * row_q
    a[q, :] = suc * row_p + c * row_q
    a[p, q] = a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real

    if v is not None:
        vp = v[:, p].copy()
        vq = v[:, q].copy()
        v[:, p] = c * vp - suc * vq
        v[:, q] = su * vp + c * vq


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt(np.sum(off.real**2 + off.imag**2)))


def jacobi_eigh(
    M: Any,
    *,
    vectors: bool = True,
    tol: float = JACOBI_TOL,
    max_sweeps: int = JACOBI_MAX_SWEEPS,
) -> tuple[np.ndarray, np.ndarray | None]:
    """Cyclic Jacobi diagonalization of a complex Hermitian matrix.

    Returns eigenvalues sorted descending and, if requested, the unitary
    whose columns are the matching eigenvectors.  Converged when the
    off-diagonal Frobenius norm is at most ``tol * ||M||_F``.
    """
    a = as_matrix(M)
    require_hermitian(a)
    n = a.shape[0]
    a = 0.5 * (a + a.conj().T)
    v = np.eye(n, dtype=np.complex128) if vectors else None
    target = tol * float(np.linalg.norm(a))
    for _ in range(max_sweeps + 1):
        if _off_norm(a) <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                _rotate(a, v, p, q)
    else:
        raise IterationLimit(f"Jacobi did not converge in {max_sweeps} sweeps")
    w = np.diag(a).real.copy()
    order = np.argsort(-w, kind="stable")
    return w[order], (v[:, order] if v is not None else None)


def jacobi_eigvalsh_batch(
    stack: np.ndarray, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS
) -> np.ndarray:
    """Jacobi eigenvalues (descending) for a stack of Hermitian matrices.

    Same rotation as :func:`jacobi_eigh`, applied to every matrix of the
    stack at once.  Inputs are assumed exactly Hermitian.
    """
    a = np.array(stack, dtype=np.complex128, copy=True)
    m, n, _ = a.shape
    fro = np.sqrt(np.sum(a.real**2 + a.imag**2, axis=(1, 2)))
    mask = ~np.eye(n, dtype=bool)
    for _ in range(max_sweeps + 1):
        off = a[:, mask]
        if np.all(np.sqrt(np.sum(off.real**2 + off.imag**2, axis=1)) <= tol * fro):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[:, p, q]
                r = np.abs(apq)
                app = a[:, p, p].real
                aqq = a[:, q, q].real
                live = r > 1e-300 * (1.0 + np.abs(app) + np.abs(aqq))
                rs = np.where(live, r, 1.0)
                u = np.where(live, apq / rs, 1.0)
                theta = np.clip(np.where(live, (aqq - app) / (2.0 * rs), 0.0), -1e150, 1e150)
                t = np.where(
                    theta == 0.0,
                    1.0,
                    np.sign(theta) / (np.abs(theta) + np.sqrt(theta * theta + 1.0)),
                )
                t = np.where(live, t, 0.0)
                c = (1.0 / np.sqrt(t * t + 1.0))[:, None]
                su = (t * c[:, 0] * u)[:, None]
                suc = su.conj()
                col_p = a[:, :, p].copy()
                col_q = a[:, :, q].copy()
                a[:, :, p] = c * col_p - suc * col_q
                a[:, :, q] = su * col_p + c * col_q
                row_p = a[:, p, :].copy()
                row_q = a[:, q, :].copy()
                a[:, p, :] = c * row_p - su * row_q
                a[:, q, :] = suc * row_p + c * row_q
                a[:, p, q] = 0.0
                a[:, q, p] = 0.0
    else:
        raise IterationLimit(f"batched Jacobi did not converge in {max_sweeps} sweeps")
    return -np.sort(-np.diagonal(a, axis1=1, axis2=2).real, axis=1)


def hermitian_eigenvalues(M: Any) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, sorted descending."""
    return jacobi_eigh(M, vectors=False)[0]


def singular_values(M: Any) -> np.ndarray:
    """Singular values sorted descending, via ``sqrt(eig(M* M))`` clamped at 0."""
    a = as_matrix(M)
    rows, cols = a.shape
    gram = a.conj().T @ a if rows >= cols else a @ a.conj().T
    gram = 0.5 * (gram + gram.conj().T)
    ev = hermitian_eigenvalues(gram)
    return np.sqrt(np.maximum(ev, 0.0))


# --- fractional powers ----------------------------------------------------


class PowerFamily:
    """Fractional powers ``A**t`` of one positive definite matrix.

    The eigendecomposition is computed once, so evaluating many exponents
    costs one matrix product each.
    """

    def __init__(self, A: Any, floor: float = PD_FLOOR):
        a = as_matrix(A)
        w, v = jacobi_eigh(a)
        if w[-1] <= floor:
            raise NotPositiveDefinite(
                f"minimum eigenvalue {w[-1]:.3e} does not exceed {floor:g}"
            )
        self.matrix = 0.5 * (a + a.conj().T)
        self.eigenvalues = w
        self.eigenvectors = v
        self.n = a.shape[0]
        self._log = np.log(w)

    def __call__(self, t: float) -> np.ndarray:
        t = float(t)
        if not math.isfinite(t):
            raise NonFinite(f"exponent {t!r} is not finite")
        if t == 0.0:
            return identity(self.n)
        if t == 1.0:
            return self.matrix.copy()
        lam = np.exp(t * self._log)
        out = (self.eigenvectors * lam) @ self.eigenvectors.conj().T
        out = 0.5 * (out + out.conj().T)
        if not np.all(np.isfinite(out)):
            raise NonFinite(f"A**{t} overflowed")
        return out


def fractional_power(A: Any, t: float) -> np.ndarray:
    """``U diag(lambda**t) U*`` for Hermitian positive definite ``A``."""
    return PowerFamily(A)(t)


# --- matrix file format ---------------------------------------------------


def matrix_to_json(M: np.ndarray) -> dict:
    a = as_matrix(M)
    rows, cols = a.shape
    return {
        "rows": rows,
        "cols": cols,
        "entries": [[float(z.real), float(z.imag)] for z in a.ravel()],
    }


def matrix_from_json(obj: Any) -> np.ndarray:
    try:
        rows = int(obj["rows"])
        cols = int(obj["cols"])
        entries = obj["entries"]
        vals = [complex(float(re), float(im)) for re, im in entries]
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed matrix object: {exc}") from exc
    if rows < 1 or cols < 1:
        raise ConfigError("rows and cols must be positive")
    if len(vals) != rows * cols:
        raise ConfigError(f"expected {rows * cols} entries, found {len(vals)}")
    return as_matrix(np.array(vals).reshape(rows, cols))


def load_matrix(path: str | Path) -> np.ndarray:
    try:
        obj = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read matrix file {path}: {exc}") from exc
    return matrix_from_json(obj)


def save_matrix(path: str | Path, M: np.ndarray) -> None:
    Path(path).write_text(json.dumps(matrix_to_json(M)) + "\n")
