"""Certified generalized numerical radius.

``w_N(A) = sup_theta N(Re(e^{i theta} A))`` with ``Re(e^{i theta} A) =
cos(theta) H - sin(theta) K`` where ``H = (A + A*)/2`` and
``K = (A - A*)/(2i)``.  Because ``N(-M) = N(M)`` the objective is
pi-periodic, so only ``theta in [0, pi)`` is searched.

Search: a uniform coarse grid, golden-section polish around the three best
coarse peaks, then bisection of every cell whose certified upper bound still
exceeds the best value found.  Two upper bounds are available on a cell
``[a, b]`` with endpoint values ``fa, fb``:

* Lipschitz: ``(fa + fb + L (b - a)) / 2`` with ``L = N(H) + N(K)``;
* sublinearity: ``phi(c, s) = N(c H - s K)`` is a seminorm on R^2, and every
  unit vector of the arc is a nonnegative combination of the two endpoint
  directions, so ``f(theta) <= (sin(b - theta) fa + sin(theta - a) fb) /
  sin(b - a)``.  This sinusoid is tight to second order in the cell width.

The smaller of the two is used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .ensembles import complex_gaussian, salt, stream
from .errors import ConfigError
from .linalg import as_matrix, jacobi_eigvalsh_batch, require_square
from .norms import NormSpec, gauge_batch

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_EPS = np.finfo(float).eps
_CHUNK_ENTRIES = 1 << 21


@dataclass(frozen=True)
class GridConfig:
    coarse_points: int = 1024
    refine_tol: float = 1e-10
    max_refine_iters: int = 200
    rel_gap: float = 1e-11
    max_evals: int = 1 << 18

    def __post_init__(self):
        if self.coarse_points < 8:
            raise ConfigError("coarse_points must be >= 8")
        if not self.refine_tol > 0:
            raise ConfigError("refine_tol must be > 0")
        if self.max_refine_iters < 0 or self.max_evals < 0:
            raise ConfigError("refinement budgets must be nonnegative")
        if not self.rel_gap >= 0:
            raise ConfigError("rel_gap must be >= 0")

    def denser(self, factor: int = 4) -> "GridConfig":
        return replace(self, coarse_points=self.coarse_points * factor)


@dataclass(frozen=True)
class RadiusEstimate:
    lo: float
    hi: float
    theta_star: float
    lipschitz: float

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)


def hermitian_parts(A) -> tuple[np.ndarray, np.ndarray]:
    """``H = (A + A*)/2`` and ``K = (A - A*)/(2i)``, both exactly Hermitian."""
    a = as_matrix(A)
    require_square(a)
    ah = a.conj().T
    return 0.5 * (a + ah), (a - ah) * (-0.5j)


def rotated_real_part(A, theta: float) -> np.ndarray:
    H, K = hermitian_parts(A)
    return math.cos(theta) * H - math.sin(theta) * K


def _eigvalsh(stack: np.ndarray, solver: str) -> np.ndarray:
    if solver == "lapack":
        return np.linalg.eigvalsh(stack)
    if solver == "jacobi":
        return jacobi_eigvalsh_batch(stack)
    raise ConfigError(f"unknown eigensolver {solver!r}")


def _hermitian_norms(stack: np.ndarray, spec: NormSpec, solver: str) -> np.ndarray:
    ev = _eigvalsh(stack, solver)
    sv = -np.sort(-np.abs(ev), axis=-1)
    return gauge_batch(spec, sv)


class _Objective:
    """theta -> N(cos(theta) H_j - sin(theta) K_j) for a group of problems."""

    def __init__(self, H: np.ndarray, K: np.ndarray, spec: NormSpec, solver: str):
        self.H = H
        self.K = K
        self.spec = spec
        self.solver = solver
        self.n = H.shape[-1]
        self.evals = 0

    def __call__(self, prob: np.ndarray, theta: np.ndarray) -> np.ndarray:
        prob = np.asarray(prob, dtype=np.intp)
        theta = np.asarray(theta, dtype=float)
        out = np.empty(theta.shape[0])
        step = max(1, _CHUNK_ENTRIES // (self.n * self.n))
        for start in range(0, theta.shape[0], step):
            sl = slice(start, start + step)
            c = np.cos(theta[sl])[:, None, None]
            s = np.sin(theta[sl])[:, None, None]
            R = c * self.H[prob[sl]] - s * self.K[prob[sl]]
            out[sl] = _hermitian_norms(R, self.spec, self.solver)
        self.evals += theta.shape[0]
        return out


def _cell_bounds(a, b, fa, fb, lip):
    """Upper bound of f on each cell [a, b] (see module docstring)."""
    h = b - a
    sin_h = np.sin(h)
    # fb - fa cos h, written to avoid cancellation
    num = (fb - fa) + fa * 2.0 * np.sin(0.5 * h) ** 2
    q = num / sin_h
    x_star = np.arctan2(q, fa)
    inside = (x_star >= 0.0) & (x_star <= h)
    chord = np.where(inside, np.hypot(fa, q), np.maximum(fa, fb))
    lipschitz = 0.5 * (fa + fb + lip * h)
    return np.minimum(chord, lipschitz)


def _golden(obj, prob, a, b, cfg, record):
    """Vectorized golden-section maximization on brackets [a, b]."""
    if prob.size == 0 or cfg.max_refine_iters == 0:
        return
    x1 = b - INV_PHI * (b - a)
    x2 = a + INV_PHI * (b - a)
    f1 = obj(prob, x1)
    f2 = obj(prob, x2)
    record(prob, x1, f1)
    record(prob, x2, f2)
    for _ in range(cfg.max_refine_iters):
        if np.max(b - a) <= cfg.refine_tol:
            break
        right = f2 > f1
        a = np.where(right, x1, a)
        b = np.where(right, b, x2)
        new_x = np.where(right, a + INV_PHI * (b - a), b - INV_PHI * (b - a))
        fn = obj(prob, new_x)
        record(prob, new_x, fn)
        x1, x2 = np.where(right, x2, new_x), np.where(right, new_x, x1)
        f1, f2 = np.where(right, f2, fn), np.where(right, fn, f1)


def _top_peaks(values: np.ndarray, count: int) -> np.ndarray:
    """Indices of the ``count`` largest local maxima of a periodic sample row."""
    left = np.roll(values, 1)
    right = np.roll(values, -1)
    peak = (values >= left) & (values >= right)
    score = np.where(peak, values, -np.inf)
    order = np.argsort(-score, kind="stable")[:count]
    return order[np.isfinite(score[order])] if np.any(peak) else order[:1]


def _solve_group(mats: list[np.ndarray], spec: NormSpec, cfg: GridConfig, solver: str):
    P = len(mats)
    n = mats[0].shape[0]
    parts = [hermitian_parts(m) for m in mats]
    H = np.stack([p[0] for p in parts])
    K = np.stack([p[1] for p in parts])
    obj = _Objective(H, K, spec, solver)
    lip = _hermitian_norms(H, spec, solver) + _hermitian_norms(K, spec, solver)

    samples_p: list[np.ndarray] = []
    samples_t: list[np.ndarray] = []
    samples_f: list[np.ndarray] = []
    best = np.full(P, -np.inf)

    def record(prob, theta, vals):
        samples_p.append(prob)
        samples_t.append(theta)
        samples_f.append(vals)
        np.maximum.at(best, prob, vals)

    m = cfg.coarse_points
    grid = np.arange(m) * (math.pi / m)
    prob = np.repeat(np.arange(P), m)
    theta = np.tile(grid, P)
    coarse = obj(prob, theta)
    record(prob, theta, coarse)
    coarse = coarse.reshape(P, m)

    # golden-section polish around the three highest coarse peaks
    gp, ga, gb = [], [], []
    for j in range(P):
        for idx in _top_peaks(coarse[j], 3):
            gp.append(j)
            ga.append(grid[idx] - math.pi / m)
            gb.append(grid[idx] + math.pi / m)
    _golden(obj, np.array(gp, dtype=np.intp), np.array(ga), np.array(gb), cfg, record)

    # certification by bisection of the cells that are not yet dominated
    cp = prob.copy()
    ca = theta.copy()
    cb = ca + math.pi / m
    fa = coarse.ravel()
    fb = np.roll(coarse, -1, axis=1).ravel()
    hi_done = np.zeros(P)
    for it in range(cfg.max_refine_iters + 1):
        bound = _cell_bounds(ca, cb, fa, fb, lip[cp])
        gap = cfg.rel_gap * best[cp] + 1e-15 * lip[cp]
        active = (bound > best[cp] + gap) & (cb - ca > cfg.refine_tol)
        np.maximum.at(hi_done, cp[~active], bound[~active])
        cp, ca, cb, fa, fb, bound = (x[active] for x in (cp, ca, cb, fa, fb, bound))
        if cp.size == 0 or it == cfg.max_refine_iters or obj.evals + cp.size > cfg.max_evals:
            break
        mid = 0.5 * (ca + cb)
        fm = obj(cp, mid)
        record(cp, mid, fm)
        cp = np.concatenate([cp, cp])
        ca, cb = np.concatenate([ca, mid]), np.concatenate([mid, cb])
        fa, fb = np.concatenate([fa, fm]), np.concatenate([fm, fb])
    np.maximum.at(hi_done, cp, bound)

    all_p = np.concatenate(samples_p)
    all_t = np.mod(np.concatenate(samples_t), math.pi)
    all_f = np.concatenate(samples_f)
    # ties (flat objectives) resolve to the smallest angle
    near = all_f >= best[all_p] - 1e-14 * np.abs(best[all_p])
    theta_star = np.full(P, math.pi)
    np.minimum.at(theta_star, all_p[near], all_t[near])
    fp = 4.0 * n * n * _EPS
    out = []
    for j in range(P):
        top = float(best[j])
        lo = max(0.0, top * (1.0 - fp))
        hi = max(top, float(hi_done[j])) * (1.0 + fp)
        out.append(
            RadiusEstimate(
                lo=float(lo), hi=float(hi), theta_star=float(theta_star[j]), lipschitz=float(lip[j])
            )
        )
    return out


def generalized_radii(
    mats: Sequence, spec: NormSpec, cfg: GridConfig | None = None, *, solver: str = "lapack"
) -> list[RadiusEstimate]:
    """Certified enclosures of ``w_N`` for many matrices at once.

    Matrices of equal size are processed together, which amortizes the
    per-call overhead of the eigensolver.
    """
    cfg = cfg or GridConfig()
    arrays = [as_matrix(m) for m in mats]
    for a in arrays:
        require_square(a)
    result: list[RadiusEstimate | None] = [None] * len(arrays)
    by_size: dict[int, list[int]] = {}
    for i, a in enumerate(arrays):
        by_size.setdefault(a.shape[0], []).append(i)
    for _, idx in sorted(by_size.items()):
        for i, est in zip(idx, _solve_group([arrays[i] for i in idx], spec, cfg, solver)):
            result[i] = est
    return result  # type: ignore[return-value]


def generalized_radius(
    A, spec: NormSpec, cfg: GridConfig | None = None, *, solver: str = "lapack"
) -> RadiusEstimate:
    return generalized_radii([A], spec, cfg, solver=solver)[0]


# --- independent oracles --------------------------------------------------


def frobenius_closed_form(A) -> float:
    """``w_2(A)`` in closed form.

    ``f(theta)^2 = |H|^2 cos^2 - 2 sin cos tr(HK) + |K|^2 sin^2`` is a
    sinusoid in ``2 theta``; its maximum is explicit.
    """
    H, K = hermitian_parts(A)
    h2 = float(np.sum(np.abs(H) ** 2))
    k2 = float(np.sum(np.abs(K) ** 2))
    cross = float(np.real(np.sum(H * K.conj())))
    return math.sqrt(0.5 * (h2 + k2) + math.hypot(0.5 * (h2 - k2), cross))


def classical_radius_lower_oracle(
    A, samples: int = 16, seed: int = 0, *, steps: int = 50, starts=None
) -> float:
    """Lower bound on the classical numerical radius ``max |x* A x|``.

    Each start vector is improved by ``steps`` shifted power iterations on
    ``Re(e^{-i phi} A)`` where ``phi = arg(x* A x)``; this never decreases
    ``|x* A x|``.
    """
    a = as_matrix(A)
    n = require_square(a)
    if samples < 1:
        raise ConfigError("samples must be >= 1")
    rng = stream(seed, salt("classical-radius-oracle"))
    x = complex_gaussian(rng, (samples, n))
    if starts is not None:
        x = np.vstack([np.atleast_2d(np.asarray(starts, dtype=np.complex128)), x])
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    shift = float(np.sqrt(np.sum(np.abs(a) ** 2)))
    ah = a.conj().T
    best = 0.0
    for _ in range(steps + 1):
        z = np.einsum("ki,ij,kj->k", x.conj(), a, x)
        best = max(best, float(np.max(np.abs(z))))
        phase = np.where(np.abs(z) > 0, z / np.where(np.abs(z) > 0, np.abs(z), 1.0), 1.0)
        ax = x @ a.T
        ahx = x @ ah.T
        y = 0.5 * (phase.conj()[:, None] * ax + phase[:, None] * ahx) + shift * x
        norms = np.linalg.norm(y, axis=1, keepdims=True)
        x = np.where(norms > 0, y / np.where(norms > 0, norms, 1.0), x)
    return best
