"""Seeded randomized campaigns over the check registry.

Trial ``i`` of family ``F`` draws all of its randomness from
``stream(seed, salt(F), i)``, so any single trial can be replayed in
isolation (``trial_offset=i, trials=1``) and reports do not depend on
execution order or on the number of worker processes.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from typing import Callable

import numpy as np

from . import __version__
from . import inequalities as ineq
from .ensembles import ginibre, positive_definite, salt, stream
from .errors import ConfigError
from .inequalities import FAIL, INCONCLUSIVE, PASS, CheckResult
from .norms import NormSpec, parse_norm
from .radius import GridConfig

SCHEMA_VERSION = "numrad-report/1"
CAMPAIGN_COARSE_POINTS = 128


def _fmt_p(p: float):
    return "inf" if math.isinf(p) else p


def _parse_p(v) -> float:
    if isinstance(v, str):
        if v.strip().lower() in ("inf", "infinity"):
            return math.inf
        raise ConfigError(f"bad p value {v!r}")
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"bad p value {v!r}")
    p = float(v)
    if not p >= 1.0:
        raise ConfigError(f"p values must be >= 1, got {v!r}")
    return p


@dataclass(frozen=True)
class CampaignConfig:
    seed: int = 0
    trials: int = 100
    dims: tuple[int, ...] = (2, 3, 4)
    p_values: tuple[float, ...] = (1.0, 1.5, 2.0, 3.0, 4.0)
    norms: tuple[str, ...] = ("operator", "trace", "frobenius", "schatten:3", "kyfan:2")
    t_grid: tuple[float, ...] = ineq.DEFAULT_T_GRID
    grid: GridConfig = field(default_factory=lambda: GridConfig(coarse_points=CAMPAIGN_COARSE_POINTS))
    random_pairs: int = 50
    tolerance_overrides: dict = field(default_factory=dict)
    trial_offset: int = 0

    def __post_init__(self):
        if isinstance(self.trials, bool) or not isinstance(self.trials, int):
            raise ConfigError("trials must be an integer")
        if self.trials == 0:
            raise ConfigError("empty campaign: trials must be positive")
        if self.trials < 0 or self.trial_offset < 0 or self.random_pairs < 0:
            raise ConfigError("trials, trial_offset and random_pairs must be nonnegative")
        if not self.dims or any(int(d) != d or d < 1 for d in self.dims):
            raise ConfigError("dims must be a non-empty list of positive integers")
        if not self.p_values or not self.norms:
            raise ConfigError("p_values and norms must be non-empty")
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        object.__setattr__(self, "p_values", tuple(_parse_p(p) for p in self.p_values))
        object.__setattr__(self, "norms", tuple(str(parse_norm(n)) for n in self.norms))
        object.__setattr__(self, "t_grid", tuple(float(t) for t in self.t_grid))
        ineq._validate_grid("f", self.t_grid)
        unknown = set(self.tolerance_overrides) - set(ALL_CHECK_IDS)
        if unknown:
            raise ConfigError(f"tolerance_overrides name unknown checks: {sorted(unknown)}")

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "trial_offset": self.trial_offset,
            "dims": list(self.dims),
            "p_values": [_fmt_p(p) for p in self.p_values],
            "norms": list(self.norms),
            "t_grid": list(self.t_grid),
            "grid": asdict(self.grid),
            "random_pairs": self.random_pairs,
            "tolerance_overrides": dict(sorted(self.tolerance_overrides.items())),
        }

    @classmethod
    def from_json(cls, data: dict) -> "CampaignConfig":
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        known = {"seed", "trials", "trial_offset", "dims", "p_values", "norms", "t_grid",
                 "grid", "random_pairs", "tolerance_overrides"}
        extra = set(data) - known
        if extra:
            raise ConfigError(f"unknown config keys: {sorted(extra)}")
        kw = dict(data)
        try:
            if "grid" in kw:
                kw["grid"] = GridConfig(**kw["grid"])
            for key in ("dims", "p_values", "norms", "t_grid"):
                if key in kw:
                    kw[key] = tuple(kw[key])
            return cls(**kw)
        except TypeError as exc:
            raise ConfigError(f"malformed config: {exc}") from exc

    @classmethod
    def load(cls, path) -> "CampaignConfig":
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        return cls.from_json(data)


def default_config() -> CampaignConfig:
    from importlib.resources import files

    text = files("numrad").joinpath("data/default_config.json").read_text(encoding="utf-8")
    return CampaignConfig.from_json(json.loads(text))


# --- trial context -------------------------------------------------------------


@dataclass
class Trial:
    family: str
    index: int
    cfg: CampaignConfig
    rng: np.random.Generator
    dim: int
    choice: int  # index used to cycle norms / p values

    def norm(self) -> NormSpec:
        return parse_norm(self.cfg.norms[self.choice % len(self.cfg.norms)])

    def p(self, lo: float = 1.0, hi: float = math.inf) -> float | None:
        ps = [p for p in self.cfg.p_values if lo <= p <= hi and not math.isinf(p)]
        return ps[self.choice % len(ps)] if ps else None

    def pd(self) -> np.ndarray:
        return positive_definite(self.rng, self.dim)

    def gin(self) -> np.ndarray:
        return ginibre(self.rng, self.dim)

    def tol(self, check_id: str) -> float | None:
        return self.cfg.tolerance_overrides.get(check_id)


def _t_in(rng) -> float:
    # a quarter of the trials sit on the endpoints/midpoint equality cases
    if rng.random() < 0.25:
        return float((0.0, 0.5, 1.0)[rng.integers(3)])
    return float(rng.random())


def _t_out(rng) -> float:
    u = rng.random()
    return float(-u) if rng.random() < 0.5 else float(1.0 + (1.0 - u))  # [-1,0) or (1,2]


def _norm_fits(spec: NormSpec, n: int) -> bool:
    return spec.kind != "kyfan" or spec.k <= n


def _fam_thm11(tr: Trial):
    spec = tr.norm()
    if not _norm_fits(spec, tr.dim):
        return None
    A, X = tr.pd(), tr.gin()
    out = []
    for fid, cid in (("f", "thm1.1-f"), ("g", "thm1.1-g")):
        rep = ineq.convexity_report(fid, A, X, spec, tr.cfg.t_grid, tr.cfg.grid,
                                    random_pairs=tr.cfg.random_pairs, rng=tr.rng, tol=tr.tol(cid))
        out.append(rep.as_check(cid, {"norm": str(spec)}))
    return out


def _convexity_family(fid: str, cid: str, grid_filter=None):
    def run(tr: Trial):
        spec = tr.norm()
        if not _norm_fits(spec, tr.dim):
            return None
        A, X = tr.pd(), tr.gin()
        grid = tr.cfg.t_grid if grid_filter is None else [t for t in tr.cfg.t_grid if grid_filter(t)]
        rep = ineq.convexity_report(fid, A, X, spec, grid, tr.cfg.grid,
                                    random_pairs=tr.cfg.random_pairs, rng=tr.rng, tol=tr.tol(cid))
        return [rep.as_check(cid, {"norm": str(spec)})]

    return run


def _fam_h(tr: Trial):
    spec = tr.norm()
    if not _norm_fits(spec, tr.dim):
        return None
    A, X = tr.pd(), tr.gin()
    rep = ineq.convexity_report("h", A, X, spec, tr.cfg.t_grid, tr.cfg.grid,
                                random_pairs=tr.cfg.random_pairs, rng=tr.rng,
                                tol=tr.tol("sec4-h-convex"))
    out = [rep.as_check("sec4-h-convex", {"norm": str(spec)})]
    log = ineq.check_h_logconvexity(A, X, spec, tr.cfg.t_grid, tr.cfg.grid,
                                    tol=tr.tol("sec4-h-logconvex"))
    if log is not None:
        out.append(log)
    return out


def _fam_lem21(tr: Trial):
    spec = tr.norm()
    if not _norm_fits(spec, tr.dim):
        return None
    A, X = tr.pd(), tr.gin()
    t = _t_in(tr.rng)
    return [ineq.check_lemma21_holder(A, X, spec, t, tr.cfg.grid, tol=tr.tol("lem2.1-eq3")),
            *ineq.check_lemma21_heinz(A, X, spec, t, tr.cfg.grid)]


def _fam_eq5(tr: Trial):
    spec = tr.norm()
    if not _norm_fits(spec, tr.dim):
        return None
    A, X = tr.pd(), tr.gin()
    return [ineq.check_axa_half_bound(A, X, spec, tr.cfg.grid, tol=tr.tol("eq5"))]


def _fam_two_sided(tr: Trial):
    spec = tr.norm()
    if not _norm_fits(spec, tr.dim):
        return None
    A, B, X = tr.pd(), tr.pd(), tr.gin()
    return [ineq.check_two_sided_axb(A, B, X, spec, tr.cfg.grid, tol=tr.tol("sec4-two-sided"))]


def _blocks(tr: Trial):
    return tr.gin(), tr.gin(), tr.gin(), tr.gin()


def _fam_thm12(large: bool):
    def run(tr: Trial):
        p = tr.p(2.0, math.inf) if large else tr.p(1.0, 2.0)
        if p is None:
            return None
        blocks = _blocks(tr)
        if large:
            return [ineq.check_thm12_p_ge_2(*blocks, p, tr.cfg.grid, tol=tr.tol("thm1.2-eq1"))]
        return [ineq.check_thm12_p_le_2(*blocks, p, tr.cfg.grid, tol=tr.tol("thm1.2-eq2"))]

    return run


def _fam_rem1(large: bool):
    cid = "rem1-lower-eq1" if large else "rem1-lower-eq2"

    def run(tr: Trial):
        p = tr.p(2.0, math.inf) if large else tr.p(1.0, 2.0)
        if p is None:
            return None
        res = ineq.check_clarkson_lower(*_blocks(tr), p, tr.cfg.grid, tol=tr.tol(cid))
        return [r for r in res if r.check_id == cid]

    return run


def _fam_lem31(tr: Trial):
    p = tr.p(2.0, math.inf)
    if p is None:
        return None
    b = _blocks(tr)
    if tr.rng.random() < 0.1:  # sharpness witness: all blocks equal
        b = (b[0],) * 4
    return [ineq.check_lemma31_partition(((b[0], b[1]), (b[2], b[3])), p, tol=tr.tol("lem3.1"))]


def _fam_cor41(tr: Trial):
    spec = tr.norm()
    if not _norm_fits(spec, tr.dim):
        return None
    A, X = tr.pd(), tr.gin()
    t = _t_in(tr.rng) if tr.index % 2 == 0 else _t_out(tr.rng)
    return [ineq.check_cor41(A, X, spec, t, "+", tr.cfg.grid, tol=tr.tol("cor4.1-plus")),
            ineq.check_cor41(A, X, spec, t, "-", tr.cfg.grid, tol=tr.tol("cor4.1-minus"))]


def _fam_cor42(tr: Trial):
    spec = tr.norm()
    if not _norm_fits(spec, tr.dim):
        return None
    A, X = tr.pd(), tr.gin()
    inside = tr.index % 2 == 0
    t = _t_in(tr.rng) if inside else _t_out(tr.rng)
    cid = "cor4.2-in" if inside else "cor4.2-out"
    return [ineq.check_cor42_young(A, X, spec, t, tr.cfg.grid, tol=tr.tol(cid))]


def _fam_cor44(tr: Trial):
    p = tr.p(2.0, math.inf)
    if p is None:
        return None
    A, D, B = tr.gin(), tr.gin(), tr.gin()
    return ineq.check_cor44(A, D, B, p, tr.cfg.grid)


def _fam_cor45(tr: Trial):
    p = tr.p(1.0, math.inf)
    if p is None:
        return None
    A, B = tr.gin(), tr.gin()
    return ineq.check_cor45(A, B, p, tr.cfg.grid)


# family -> (runner, check ids it can produce)
FAMILIES: dict[str, tuple[Callable, tuple[str, ...]]] = {
    "thm1.1": (_fam_thm11, ("thm1.1-f", "thm1.1-g")),
    "lem2.1": (_fam_lem21, ("lem2.1-eq3", "lem2.1-eq4-lower", "lem2.1-eq4-upper")),
    "eq5": (_fam_eq5, ("eq5",)),
    "sec4-two-sided": (_fam_two_sided, ("sec4-two-sided",)),
    "thm1.2-eq1": (_fam_thm12(True), ("thm1.2-eq1",)),
    "thm1.2-eq2": (_fam_thm12(False), ("thm1.2-eq2",)),
    "lem3.1": (_fam_lem31, ("lem3.1",)),
    "cor4.1": (_fam_cor41, ("cor4.1-plus", "cor4.1-minus")),
    "cor4.2": (_fam_cor42, ("cor4.2-in", "cor4.2-out")),
    "sec4-h": (_fam_h, ("sec4-h-convex", "sec4-h-logconvex")),
    "cor4.3": (_convexity_family("k", "cor4.3", lambda t: -1.0 <= t <= 1.0), ("cor4.3",)),
    "sec4-ell": (_convexity_family("ell", "sec4-ell"), ("sec4-ell",)),
    "cor4.4": (_fam_cor44, ("cor4.4-diag", "cor4.4-diag-hermitian-eq", "cor4.4-row")),
    "cor4.5": (_fam_cor45, ("cor4.5-offdiag-eq", "cor4.5-symmetric", "cor4.5-symmetric-hermitian-eq")),
    "rem1-eq1": (_fam_rem1(True), ("rem1-lower-eq1",)),
    "rem1-eq2": (_fam_rem1(False), ("rem1-lower-eq2",)),
}
INFORMATIONAL_IDS = tuple(f"{cid}-p-le-2" for cid in FAMILIES["cor4.5"][1])
CHECK_IDS = tuple(cid for _, ids in FAMILIES.values() for cid in ids)
ALL_CHECK_IDS = CHECK_IDS + INFORMATIONAL_IDS
FAMILY_OF = {cid: fam for fam, (_, ids) in FAMILIES.items() for cid in ids}
FAMILY_OF.update({cid: "cor4.5" for cid in INFORMATIONAL_IDS})


def family_of(check_id: str) -> str:
    try:
        return FAMILY_OF[check_id]
    except KeyError:
        raise ConfigError(
            f"unknown check id {check_id!r}; valid ids: {', '.join(ALL_CHECK_IDS)}"
        ) from None


def _rejudge(r: CheckResult, tol: float | None) -> CheckResult:
    if tol is None or r.check_id.startswith(("thm1.1", "sec4-h-convex", "cor4.3", "sec4-ell")):
        return r
    return ineq.judge(r.check_id, r.lhs, r.rhs, r.relation, tol, r.params)


def run_trial(family: str, cfg: CampaignConfig, index: int) -> list[CheckResult] | None:
    """All results of one trial; ``None`` when the trial's draw is not applicable."""
    runner, _ = FAMILIES[family]
    tr = Trial(family, index, cfg, stream(cfg.seed, salt(family), index),
               cfg.dims[index % len(cfg.dims)], index // len(cfg.dims))
    res = runner(tr)
    if res is None:
        return None
    res = [_rejudge(r, cfg.tolerance_overrides.get(r.check_id)) for r in res]
    for r in res:
        r.params.update({"family": family, "trial": index, "seed": cfg.seed, "dim": tr.dim})
    return res


def _run_chunk(args):
    family, cfg, indices = args
    return [(i, run_trial(family, cfg, i)) for i in indices]


# --- aggregation -----------------------------------------------------------------


def _empty_stats() -> dict:
    return {"trials": 0, "passes": 0, "fails": 0, "inconclusive": 0, "skipped": 0,
            "min_slack": None, "witness_of_min_slack": None}


def _record(stats: dict, r: CheckResult):
    stats["trials"] += 1
    key = {PASS: "passes", FAIL: "fails", INCONCLUSIVE: "inconclusive"}[r.verdict]
    stats[key] += 1
    if stats["min_slack"] is None or r.slack < stats["min_slack"]:
        stats["min_slack"] = r.slack
        stats["witness_of_min_slack"] = {**r.to_json(), "scale": r.scale}


@dataclass
class SuiteReport:
    config: CampaignConfig
    per_check: dict
    informational: dict
    wall_time: float
    rows: list = field(default_factory=list)

    @property
    def fails(self) -> int:
        return sum(s["fails"] for s in self.per_check.values())

    @property
    def inconclusive(self) -> int:
        return sum(s["inconclusive"] for s in self.per_check.values())

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "version": __version__,
            "config_echo": self.config.to_json(),
            "per_check": self.per_check,
            "informational": self.informational,
            "totals": {"fails": self.fails, "inconclusive": self.inconclusive},
            "interval_arithmetic": "scalar, 1e-12 relative outward inflation per operation",
            "wall_time": self.wall_time,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"

    def slack_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["check_id", "trial", "dim", "norm", "p", "t", "verdict", "slack"])
        for r in self.rows:
            prm = r.params
            w.writerow([r.check_id, prm.get("trial"), prm.get("dim"), prm.get("norm", ""),
                        _csv_num(prm.get("p")), _csv_num(prm.get("t")), r.verdict, repr(r.slack)])
        return buf.getvalue()


def _csv_num(v) -> str:
    return "" if v is None else repr(float(v))


def run_campaign(
    cfg: CampaignConfig, check_ids=None, *, workers: int = 1, keep_rows: bool = False
) -> SuiteReport:
    """Run every family needed for ``check_ids`` (default: all)."""
    wanted = list(ALL_CHECK_IDS) if check_ids is None else list(check_ids)
    families = sorted({family_of(cid) for cid in wanted}, key=list(FAMILIES).index)
    indices = list(range(cfg.trial_offset, cfg.trial_offset + cfg.trials))
    start = time.perf_counter()

    per_family: dict[str, list] = {}
    if workers > 1:
        chunk = max(1, len(indices) // (4 * workers))
        jobs = [(fam, cfg, indices[k : k + chunk]) for fam in families
                for k in range(0, len(indices), chunk)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for (fam, _, _), done in zip(jobs, pool.map(_run_chunk, jobs)):
                per_family.setdefault(fam, []).extend(done)
    else:
        for fam in families:
            per_family[fam] = _run_chunk((fam, cfg, indices))

    wanted_set = set(wanted)
    per_check = {cid: _empty_stats() for cid in CHECK_IDS if cid in wanted_set}
    informational = {cid: _empty_stats() for cid in INFORMATIONAL_IDS if cid in wanted_set}
    rows = []
    for fam in families:
        produced = set()
        for i, res in sorted(per_family[fam], key=lambda x: x[0]):
            seen = set()
            for r in res or ():
                target = per_check if r.check_id in per_check else informational
                if r.check_id not in target:
                    continue
                _record(target[r.check_id], r)
                seen.add(r.check_id)
                if keep_rows:
                    rows.append(r)
            produced |= seen
            for cid in FAMILIES[fam][1]:
                # trials where an id was not applicable (regime, p range, X = 0)
                for table in (per_check, informational):
                    if cid in table and cid not in seen and not _regime_split(cid):
                        table[cid]["skipped"] += 1
    return SuiteReport(cfg, per_check, informational, round(time.perf_counter() - start, 3), rows)


def _regime_split(check_id: str) -> bool:
    # cor4.2 alternates in/out by trial parity, so each trial feeds exactly one id
    return check_id in ("cor4.2-in", "cor4.2-out")


def replay(check_id: str, cfg: CampaignConfig, trial: int) -> list[CheckResult]:
    """Re-run one trial of the family owning ``check_id``."""
    fam = family_of(check_id)
    res = run_trial(fam, replace(cfg, trial_offset=trial, trials=1), trial) or []
    return [r for r in res if r.check_id == check_id]
