"""Second, independent Hermitian eigensolver used as a cross-check oracle.

Householder reduction to a real symmetric tridiagonal matrix followed by
implicitly shifted QL sweeps.  Shares no code with the Jacobi solver.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import IterationLimit
from .linalg import as_matrix, require_hermitian


def tridiagonalize(M) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(d, e)``: diagonal and nonnegative off-diagonal of a real
    symmetric tridiagonal matrix unitarily similar to Hermitian ``M``."""
    a = as_matrix(M)
    require_hermitian(a)
    a = 0.5 * (a + a.conj().T)
    n = a.shape[0]
    for k in range(n - 2):
        x = a[k + 1 :, k].copy()
        xnorm = np.linalg.norm(x)
        if xnorm == 0.0:
            continue
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        alpha = -phase * xnorm
        v = x.copy()
        v[0] -= alpha
        vnorm = np.linalg.norm(v)
        if vnorm == 0.0:
            continue
        v /= vnorm
        # a <- P a P with P = I - 2 v v* acting on rows/cols k+1..n-1
        sub = a[k + 1 :, :]
        sub -= 2.0 * np.outer(v, v.conj() @ sub)
        sub = a[:, k + 1 :]
        sub -= 2.0 * np.outer(sub @ v, v.conj())
    d = np.diag(a).real.copy()
    e = np.abs(np.diag(a, -1)) if n > 1 else np.zeros(0)
    return d, np.asarray(e, dtype=float)


def tridiagonal_ql(d: np.ndarray, e: np.ndarray, max_iter: int = 60) -> np.ndarray:
    """Eigenvalues of the symmetric tridiagonal matrix (d, e), descending."""
    d = np.array(d, dtype=float)
    n = d.size
    off = np.zeros(n)
    off[: n - 1] = e
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(off[m]) <= 1e-300 or abs(off[m]) + dd == dd:
                    break
                m += 1
            if m == l:
                break
            it += 1
            if it > max_iter:
                raise IterationLimit("tridiagonal QL did not converge")
            # Wilkinson-type shift from the leading 2x2 block
            g = (d[l + 1] - d[l]) / (2.0 * off[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + off[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            deflated = False
            for i in range(m - 1, l - 1, -1):
                f = s * off[i]
                b = c * off[i]
                r = math.hypot(f, g)
                off[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    off[m] = 0.0
                    deflated = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
            if deflated:
                continue
            d[l] -= p
            off[l] = g
            off[m] = 0.0
    return np.sort(d)[::-1]


def qr_eigenvalues(M) -> np.ndarray:
    """Eigenvalues of Hermitian ``M`` sorted descending (oracle route)."""
    d, e = tridiagonalize(M)
    return tridiagonal_ql(d, e)
