"""Executable checks for the generalized-numerical-radius inequalities.

Every check evaluates both sides as certified enclosures and returns a
:class:`CheckResult` (or a :class:`ConvexityReport` for the convexity
claims).  A claim ``lhs <= rhs`` *fails* only when ``lhs.lo > rhs.hi + tol``,
so discretization can never manufacture a violation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .enclosure import Enclosure, norm_enclosure
from .errors import ConfigError
from .linalg import PowerFamily, as_matrix, block_2x2, zeros
from .norms import NormSpec
from .radius import GridConfig, generalized_radii

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"
INEQUALITY_TOL = 1e-8
EQUALITY_TOL = 1e-7
INCONCLUSIVE_WIDTH = 1e-6

DEFAULT_T_GRID = tuple(-1.0 + 0.25 * i for i in range(13))  # [-1, 2]
K_T_GRID = tuple(-1.0 + 0.25 * i for i in range(9))  # [-1, 1]
CURVE_SPANS = {"f": (-1.0, 2.0), "g": (-1.0, 2.0), "h": (-1.0, 2.0), "ell": (-1.0, 2.0), "k": (-1.0, 1.0)}


@dataclass
class CheckResult:
    check_id: str
    lhs: Enclosure
    rhs: Enclosure
    relation: str  # "le", "ge" or "eq"
    slack: float
    verdict: str
    tol: float
    params: dict = field(default_factory=dict)

    @property
    def scale(self) -> float:
        return max(self.lhs.hi, self.rhs.hi, 1.0)

    def to_json(self) -> dict:
        return {
            "check_id": self.check_id,
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "relation": self.relation,
            "slack": self.slack,
            "verdict": self.verdict,
            "tol": self.tol,
            "params": self.params,
        }


def judge(
    check_id: str,
    lhs: Enclosure,
    rhs: Enclosure,
    relation: str = "le",
    rel_tol: float = INEQUALITY_TOL,
    params: dict | None = None,
) -> CheckResult:
    """Verdict for ``lhs <relation> rhs`` at tolerance ``rel_tol * scale``."""
    scale = max(lhs.hi, rhs.hi, 1.0)
    tol = rel_tol * scale
    wide = max(lhs.width, rhs.width) > INCONCLUSIVE_WIDTH * scale

    def one_way(small: Enclosure, big: Enclosure) -> tuple[float, str]:
        if small.lo > big.hi + tol:
            return big.lo - small.hi, FAIL
        if small.hi > big.hi + tol and wide:
            return big.lo - small.hi, INCONCLUSIVE
        return big.lo - small.hi, PASS

    if relation == "le":
        slack, verdict = one_way(lhs, rhs)
    elif relation == "ge":
        slack, verdict = one_way(rhs, lhs)
    elif relation == "eq":
        s1, v1 = one_way(lhs, rhs)
        s2, v2 = one_way(rhs, lhs)
        slack = min(s1, s2)
        verdict = _worst(v1, v2)
    else:
        raise ConfigError(f"unknown relation {relation!r}")
    return CheckResult(check_id, lhs, rhs, relation, float(slack), verdict, tol, dict(params or {}))


def _worst(*verdicts: str) -> str:
    if FAIL in verdicts:
        return FAIL
    if INCONCLUSIVE in verdicts:
        return INCONCLUSIVE
    return PASS


def _retrying(build: Callable[[GridConfig], list], cfg: GridConfig | None) -> list:
    """Run ``build``; rerun once on a 4x denser grid if anything is inconclusive."""
    cfg = cfg or GridConfig()
    results = build(cfg)
    if any(_verdict_of(r) == INCONCLUSIVE for r in results if r is not None):
        results = build(cfg.denser())
    return results


def _verdict_of(r) -> str:
    return r.verdict


def _radii(mats: Sequence, spec: NormSpec, cfg: GridConfig) -> list[Enclosure]:
    return [Enclosure.of(e) for e in generalized_radii(mats, spec, cfg)]


def _tol(override: float | None, default: float) -> float:
    return default if override is None else float(override)


def _norm_params(spec: NormSpec, **extra) -> dict:
    return {"norm": str(spec), **extra}


def _schatten(p: float) -> NormSpec:
    return NormSpec.schatten(p)


def _hermitian_part(M: np.ndarray) -> np.ndarray:
    return 0.5 * (M + M.conj().T)


# --- convexity --------------------------------------------------------------


def curve_matrix(function_id: str, P: PowerFamily, X: np.ndarray, t: float) -> np.ndarray:
    """The matrix whose radius is the curve value at ``t``."""
    if function_id == "f":
        return P(t) @ X @ P(1 - t) + P(1 - t) @ X @ P(t)
    if function_id == "g":
        return P(t) @ X @ P(1 - t)
    if function_id == "h":
        return P(t) @ X @ P(t)
    if function_id == "k":
        return P(t) @ X @ P(1 - t) + P(-t) @ X @ P(1 + t)
    if function_id == "ell":
        return P(t) @ X @ P(1 - t) - P(1 - t) @ X @ P(t)
    raise ConfigError(f"unknown curve {function_id!r}; choose from f, g, h, k, ell")


def curve_values(
    function_id: str, A, X, spec: NormSpec, ts: Sequence[float], cfg: GridConfig | None = None
) -> list[Enclosure]:
    P = PowerFamily(A)
    X = as_matrix(X)
    mats = [curve_matrix(function_id, P, X, t) for t in ts]
    return _radii(mats, spec, cfg or GridConfig())


@dataclass
class ConvexityReport:
    function_id: str
    t_grid: list[float]
    values: list[Enclosure]
    midpoint_violations: list[tuple[float, float, float]]
    min_location_ok: bool
    zero_ok: bool
    pairs: int
    worst_pair: tuple[float, float]
    min_slack: float
    tol: float
    verdict: str

    def as_check(self, check_id: str, params: dict | None = None) -> CheckResult:
        t, s = self.worst_pair
        vals = dict(zip(self.t_grid, self.values))
        lhs = vals[0.5 * (t + s)]
        rhs = (vals[t] + vals[s]) * 0.5
        return CheckResult(
            check_id, lhs, rhs, "le", self.min_slack, self.verdict, self.tol,
            {**(params or {}), "t": t, "s": s, "violations": len(self.midpoint_violations)},
        )


def _grid_pairs(grid: Sequence[float]) -> list[tuple[float, float]]:
    members = set(grid)
    pairs = []
    for i, t in enumerate(grid):
        for s in grid[i + 1 :]:
            if 0.5 * (t + s) in members:
                pairs.append((t, s))
    return pairs


def _validate_grid(function_id: str, t_grid: Sequence[float]) -> list[float]:
    grid = [float(t) for t in t_grid]
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ConfigError("t_grid must be strictly increasing")
    lo, hi = CURVE_SPANS[function_id]
    if not grid or grid[0] > lo or grid[-1] < hi:
        raise ConfigError(f"t_grid for {function_id} must span at least [{lo}, {hi}]")
    return grid


def _random_pairs(grid, count, rng) -> list[tuple[float, float]]:
    if count <= 0:
        return []
    if rng is None:
        raise ConfigError("random pairs need an rng")
    ts = rng.uniform(grid[0], grid[-1], size=(count, 2))
    return [(float(min(a, b)), float(max(a, b))) for a, b in ts if a != b]


def convexity_report(
    function_id: str,
    A,
    X,
    spec: NormSpec,
    t_grid: Sequence[float] | None = None,
    cfg: GridConfig | None = None,
    *,
    random_pairs: int = 0,
    rng: np.random.Generator | None = None,
    tol: float | None = None,
) -> ConvexityReport:
    """Midpoint-convexity test of one curve on a grid plus random pairs.

    ``f`` and ``k`` are also checked for their minimum (at 1/2 and 0), and
    ``ell`` for vanishing at 1/2.
    """
    if t_grid is None:
        t_grid = K_T_GRID if function_id == "k" else DEFAULT_T_GRID
    grid = _validate_grid(function_id, t_grid)
    pairs = _grid_pairs(grid) + _random_pairs(grid, random_pairs, rng)
    special = {"f": 0.5, "k": 0.0, "ell": 0.5}.get(function_id)
    points = set(grid)
    for t, s in pairs:
        points.update((t, s, 0.5 * (t + s)))
    if special is not None:
        points.add(special)
    ts = sorted(points)
    rel_tol = _tol(tol, INEQUALITY_TOL)
    P = PowerFamily(A)
    X = as_matrix(X)
    mats = [curve_matrix(function_id, P, X, t) for t in ts]

    def build(c: GridConfig) -> list[ConvexityReport]:
        values = _radii(mats, spec, c)
        return [_assemble(function_id, ts, values, pairs, special, rel_tol)]

    return _retrying(build, cfg)[0]


def _assemble(function_id, ts, values, pairs, special, rel_tol) -> ConvexityReport:
    vals = dict(zip(ts, values))
    scale = max(max(v.hi for v in values), 1.0)
    tol = rel_tol * scale
    lo = np.array([[vals[t].lo, vals[s].lo, vals[0.5 * (t + s)].lo] for t, s in pairs]).reshape(-1, 3)
    hi = np.array([[vals[t].hi, vals[s].hi, vals[0.5 * (t + s)].hi] for t, s in pairs]).reshape(-1, 3)
    bound_hi = 0.5 * (hi[:, 0] + hi[:, 1])
    deficit = lo[:, 2] - bound_hi
    slack = 0.5 * (lo[:, 0] + lo[:, 1]) - hi[:, 2]
    violations = [
        (pairs[i][0], pairs[i][1], float(deficit[i])) for i in np.flatnonzero(deficit > tol)
    ]
    widths = np.max(hi - lo, axis=1) if len(pairs) else np.zeros(0)
    unsure = (hi[:, 2] > bound_hi + tol) & (widths > INCONCLUSIVE_WIDTH * scale)

    min_ok = True
    zero_ok = True
    if special is not None and function_id in ("f", "k"):
        v0 = vals[special]
        min_ok = all(v0.lo <= v.hi + tol for v in values)
    if function_id == "ell":
        zero_ok = vals[special].hi <= tol

    if violations or not min_ok or not zero_ok:
        verdict = FAIL
    elif np.any(unsure):
        verdict = INCONCLUSIVE
    else:
        verdict = PASS
    worst = int(np.argmin(slack)) if len(pairs) else 0
    return ConvexityReport(
        function_id=function_id,
        t_grid=list(ts),
        values=list(values),
        midpoint_violations=violations,
        min_location_ok=min_ok,
        zero_ok=zero_ok,
        pairs=len(pairs),
        worst_pair=pairs[worst] if pairs else (ts[0], ts[0]),
        min_slack=float(slack[worst]) if len(pairs) else 0.0,
        tol=tol,
        verdict=verdict,
    )


def check_f_convexity(A, X, spec, t_grid=None, cfg=None, **kw) -> ConvexityReport:
    return convexity_report("f", A, X, spec, t_grid, cfg, **kw)


def check_g_convexity(A, X, spec, t_grid=None, cfg=None, **kw) -> ConvexityReport:
    return convexity_report("g", A, X, spec, t_grid, cfg, **kw)


def check_h_convexity(A, X, spec, t_grid=None, cfg=None, **kw) -> ConvexityReport:
    return convexity_report("h", A, X, spec, t_grid, cfg, **kw)


def check_cor43_k(A, X, spec, t_grid=None, cfg=None, **kw) -> ConvexityReport:
    return convexity_report("k", A, X, spec, t_grid, cfg, **kw)


def check_ell_convexity(A, X, spec, t_grid=None, cfg=None, **kw) -> ConvexityReport:
    return convexity_report("ell", A, X, spec, t_grid, cfg, **kw)


def check_h_logconvexity(
    A, X, spec: NormSpec, t_grid=None, cfg: GridConfig | None = None, *, tol=None
) -> CheckResult | None:
    """``h((t+s)/2)^2 <= h(t) h(s)`` on grid pairs; ``None`` when X is degenerate."""
    grid = _validate_grid("h", DEFAULT_T_GRID if t_grid is None else t_grid)
    pairs = _grid_pairs(grid)
    P = PowerFamily(A)
    X = as_matrix(X)
    ends = [X, P(1) @ X @ P(1)]
    mats = ends + [curve_matrix("h", P, X, t) for t in grid]
    rel_tol = _tol(tol, INEQUALITY_TOL)

    def build(c: GridConfig) -> list:
        vals = _radii(mats, spec, c)
        if vals[0].hi == 0.0 or vals[1].hi == 0.0:
            return [None]
        h = dict(zip(grid, vals[2:]))
        results = [
            judge("sec4-h-logconvex", h[0.5 * (t + s)] ** 2, h[t] * h[s], "le", rel_tol,
                  _norm_params(spec, t=t, s=s))
            for t, s in pairs
        ]
        worst = min(results, key=lambda r: r.slack)
        worst.verdict = _worst(*(r.verdict for r in results))
        return [worst]

    return _retrying(build, cfg)[0]


# --- interpolation inequalities --------------------------------------------------


def check_lemma21_holder(A, X, spec, t, cfg=None, *, tol=None) -> CheckResult:
    """``w(A^t X A^t) <= w(AXA)^t w(X)^(1-t)`` for ``t in [0, 1]``."""
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise ConfigError("t must lie in [0, 1]")
    P = PowerFamily(A)
    X = as_matrix(X)
    mats = [P(t) @ X @ P(t), P(1) @ X @ P(1), X]

    def build(c):
        lhs, axa, x = _radii(mats, spec, c)
        rhs = (axa ** t) * (x ** (1.0 - t))
        return [judge("lem2.1-eq3", lhs, rhs, "le", _tol(tol, INEQUALITY_TOL), _norm_params(spec, t=t))]

    return _retrying(build, cfg)[0]


def check_lemma21_heinz(A, X, spec, t, cfg=None, *, tol=None) -> tuple[CheckResult, CheckResult]:
    """``2 w(A^.5 X A^.5) <= w(A^t X A^(1-t) + A^(1-t) X A^t) <= w(AX + XA)``."""
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise ConfigError("t must lie in [0, 1]")
    P = PowerFamily(A)
    X = as_matrix(X)
    A1 = P(1)
    mats = [P(0.5) @ X @ P(0.5), curve_matrix("f", P, X, t), A1 @ X + X @ A1]
    rel = _tol(tol, INEQUALITY_TOL)

    def build(c):
        half, middle, outer = _radii(mats, spec, c)
        params = _norm_params(spec, t=t)
        return [
            judge("lem2.1-eq4-lower", half * 2.0, middle, "le", rel, params),
            judge("lem2.1-eq4-upper", middle, outer, "le", rel, params),
        ]

    return tuple(_retrying(build, cfg))


def check_axa_half_bound(A, X, spec, cfg=None, *, tol=None) -> CheckResult:
    """``w(AXA) <= w(A^2 X + X A^2) / 2``."""
    A = as_matrix(A)
    PowerFamily(A)  # positivity precondition
    X = as_matrix(X)
    A2 = A @ A
    mats = [A @ X @ A, A2 @ X + X @ A2]

    def build(c):
        lhs, big = _radii(mats, spec, c)
        return [judge("eq5", lhs, big * 0.5, "le", _tol(tol, INEQUALITY_TOL), _norm_params(spec))]

    return _retrying(build, cfg)[0]


def check_two_sided_axb(A, B, X, spec, cfg=None, *, tol=None) -> CheckResult:
    """``2 w(AXB) <= w(A^2 X + X B^2)`` for independent positive definite A, B."""
    A = as_matrix(A)
    B = as_matrix(B)
    PowerFamily(A)
    PowerFamily(B)
    X = as_matrix(X)
    mats = [A @ X @ B, A @ A @ X + X @ B @ B]

    def build(c):
        axb, rhs = _radii(mats, spec, c)
        return [judge("sec4-two-sided", axb * 2.0, rhs, "le", _tol(tol, INEQUALITY_TOL),
                      _norm_params(spec))]

    return _retrying(build, cfg)[0]


# --- block matrices -------------------------------------------------------------


def _require_p(p: float, lo: float, hi: float) -> float:
    p = float(p)
    if not (lo <= p <= hi) or math.isinf(p):
        raise ConfigError(f"p = {p} outside [{lo}, {hi}]")
    return p


def thm12_rhs(wA: Enclosure, wD: Enclosure, nB: Enclosure, nC: Enclosure, p: float, large_p: bool):
    """Right-hand side of the block bound; ``large_p`` selects the ``p >= 2`` form."""
    inner = wA ** p + wD ** p + ((nB + nC) ** p) * (2.0 ** (1.0 - p))
    return inner * (2.0 ** (p - 2.0)) if large_p else inner


def _block_parts(A, B, C, D, p, cfg):
    spec = _schatten(p)
    A, B, C, D = (as_matrix(m) for m in (A, B, C, D))
    T = block_2x2(A, B, C, D)
    wT, wA, wD = _radii([T, A, D], spec, cfg)
    return T, wT, wA, wD, norm_enclosure(spec, B), norm_enclosure(spec, C)


def check_thm12_p_ge_2(A, B, C, D, p, cfg=None, *, tol=None) -> CheckResult:
    p = _require_p(p, 2.0, math.inf)

    def build(c):
        _, wT, wA, wD, nB, nC = _block_parts(A, B, C, D, p, c)
        rhs = thm12_rhs(wA, wD, nB, nC, p, True)
        return [judge("thm1.2-eq1", wT ** p, rhs, "le", _tol(tol, INEQUALITY_TOL), {"p": p})]

    return _retrying(build, cfg)[0]


def check_thm12_p_le_2(A, B, C, D, p, cfg=None, *, tol=None) -> CheckResult:
    p = _require_p(p, 1.0, 2.0)

    def build(c):
        _, wT, wA, wD, nB, nC = _block_parts(A, B, C, D, p, c)
        rhs = thm12_rhs(wA, wD, nB, nC, p, False)
        return [judge("thm1.2-eq2", wT ** p, rhs, "le", _tol(tol, INEQUALITY_TOL), {"p": p})]

    return _retrying(build, cfg)[0]


def check_lemma31_partition(blocks, p, *, tol=None) -> CheckResult:
    """``||T||_p^p <= 2^(p-2) sum ||T_ij||_p^p`` for a 2 x 2 partition, ``p >= 2``."""
    p = _require_p(p, 2.0, math.inf)
    (T11, T12), (T21, T22) = blocks
    spec = _schatten(p)
    T = block_2x2(*(as_matrix(m) for m in (T11, T12, T21, T22)))
    lhs = norm_enclosure(spec, T) ** p
    total = Enclosure(0.0, 0.0)
    for blk in (T11, T12, T21, T22):
        total = total + norm_enclosure(spec, blk) ** p
    rhs = total * (2.0 ** (p - 2.0))
    return judge("lem3.1", lhs, rhs, "le", _tol(tol, INEQUALITY_TOL), {"p": p})


def check_clarkson_lower(A, B, C, D, p, cfg=None, *, tol=None) -> list[CheckResult]:
    """The block bounds' right-hand sides dominate ``||T||_p^p / 2^(p-1)``
    (``p >= 2``) and ``||T||_p^p / 2`` (``p <= 2``)."""
    p = _require_p(p, 1.0, math.inf)

    def build(c):
        T, _, wA, wD, nB, nC = _block_parts(A, B, C, D, p, c)
        nT = norm_enclosure(_schatten(p), T) ** p
        rel = _tol(tol, INEQUALITY_TOL)
        out = []
        if p >= 2.0:
            out.append(judge("rem1-lower-eq1", nT * (2.0 ** (1.0 - p)),
                             thm12_rhs(wA, wD, nB, nC, p, True), "le", rel, {"p": p}))
        if p <= 2.0:
            out.append(judge("rem1-lower-eq2", nT * 0.5,
                             thm12_rhs(wA, wD, nB, nC, p, False), "le", rel, {"p": p}))
        return out

    return _retrying(build, cfg)


# --- derived bounds ------------------------------------------------------------------


def in_unit_interval(t: float) -> bool:
    return 0.0 <= t <= 1.0


def check_cor41(A, X, spec, t, sign="+", cfg=None, *, tol=None) -> CheckResult:
    """Heinz-type comparison with ``w(AX +- XA)``; reversed for ``t`` outside [0, 1]."""
    t = float(t)
    if sign not in ("+", "-"):
        raise ConfigError("sign must be '+' or '-'")
    P = PowerFamily(A)
    X = as_matrix(X)
    A1 = P(1)
    if sign == "+":
        mats = [curve_matrix("f", P, X, t), A1 @ X + X @ A1]
    else:
        mats = [curve_matrix("ell", P, X, t), A1 @ X - X @ A1]
    relation = "le" if in_unit_interval(t) else "ge"
    check_id = "cor4.1-plus" if sign == "+" else "cor4.1-minus"

    def build(c):
        lhs, rhs = _radii(mats, spec, c)
        return [judge(check_id, lhs, rhs, relation, _tol(tol, INEQUALITY_TOL),
                      _norm_params(spec, t=t, sign=sign))]

    return _retrying(build, cfg)[0]


def check_cor42_young(A, X, spec, t, cfg=None, *, tol=None) -> CheckResult:
    """``w(A^t X A^(1-t))`` against ``t w(AX) + (1-t) w(XA)``."""
    t = float(t)
    P = PowerFamily(A)
    X = as_matrix(X)
    A1 = P(1)
    mats = [curve_matrix("g", P, X, t), A1 @ X, X @ A1]
    inside = in_unit_interval(t)
    check_id = "cor4.2-in" if inside else "cor4.2-out"

    def build(c):
        g, ax, xa = _radii(mats, spec, c)
        rhs = ax * t + xa * (1.0 - t)
        return [judge(check_id, g, rhs, "le" if inside else "ge", _tol(tol, INEQUALITY_TOL),
                      _norm_params(spec, t=t))]

    return _retrying(build, cfg)[0]


def check_cor44(A, D, B, p, cfg=None, *, tol=None) -> list[CheckResult]:
    """Diagonal and row-block bounds; the Hermitian equality uses the
    Hermitian parts of ``A`` and ``D``."""
    p = _require_p(p, 2.0, math.inf)
    spec = _schatten(p)
    A, D, B = (as_matrix(m) for m in (A, D, B))
    n = A.shape[0]
    O = zeros(n)
    HA, HD = _hermitian_part(A), _hermitian_part(D)
    mats = [block_2x2(A, O, O, D), A, D, block_2x2(A, B, O, O),
            block_2x2(HA, O, O, HD), HA, HD]
    const = 2.0 ** (1.0 - 2.0 / p)

    def build(c):
        wdiag, wA, wD, wrow, wdiag_h, wHA, wHD = _radii(mats, spec, c)
        nB = norm_enclosure(spec, B)
        rel = _tol(tol, INEQUALITY_TOL)
        rel_eq = _tol(tol, EQUALITY_TOL)
        prm = {"p": p}
        return [
            judge("cor4.4-diag", wdiag, (wA ** p + wD ** p) ** (1.0 / p) * const, "le", rel, prm),
            judge("cor4.4-diag-hermitian-eq", wdiag_h, (wHA ** p + wHD ** p) ** (1.0 / p),
                  "eq", rel_eq, prm),
            judge("cor4.4-row", wrow,
                  (wA ** p + (nB ** p) * (2.0 ** (1.0 - p))) ** (1.0 / p) * const, "le", rel, prm),
        ]

    return _retrying(build, cfg)


def check_cor45(A, B, p, cfg=None, *, tol=None) -> list[CheckResult]:
    """Off-diagonal equality and the symmetric-block bound.

    For ``p < 2`` the results carry a ``-p-le-2`` suffix and use constant 1
    (the ``p <= 2`` block bound); they are informational.
    """
    p = _require_p(p, 1.0, math.inf)
    spec = _schatten(p)
    A, B = (as_matrix(m) for m in (A, B))
    n = A.shape[0]
    O = zeros(n)
    HA, HB = _hermitian_part(A), _hermitian_part(B)
    mats = [block_2x2(O, B, B, O), B, block_2x2(A, B, B, A), A + B, A - B,
            block_2x2(HA, HB, HB, HA), HA + HB, HA - HB]
    small_p = p < 2.0
    const = 1.0 if small_p else 2.0 ** (1.0 - 2.0 / p)
    suffix = "-p-le-2" if small_p else ""

    def build(c):
        woff, wB, wsym, wsum, wdiff, wsym_h, wsum_h, wdiff_h = _radii(mats, spec, c)
        rel = _tol(tol, INEQUALITY_TOL)
        rel_eq = _tol(tol, EQUALITY_TOL)
        prm = {"p": p}
        return [
            judge("cor4.5-offdiag-eq" + suffix, woff, wB * (2.0 ** (1.0 / p)), "eq", rel_eq, prm),
            judge("cor4.5-symmetric" + suffix, wsym,
                  (wsum ** p + wdiff ** p) ** (1.0 / p) * const, "le", rel, prm),
            judge("cor4.5-symmetric-hermitian-eq" + suffix, wsym_h,
                  (wsum_h ** p + wdiff_h ** p) ** (1.0 / p), "eq", rel_eq, prm),
        ]

    return _retrying(build, cfg)
