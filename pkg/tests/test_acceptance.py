"""Acceptance criteria, each run at its stated tolerance.

Every test appends one ``PASS``/``FAIL`` line that is printed in the
"acceptance criteria" section of the pytest summary.
"""

import json
import math
import time
from dataclasses import replace

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from numrad import inequalities as ineq
from numrad.campaign import default_config, run_campaign
from numrad.ensembles import ginibre, hermitian, positive_definite, stream
from numrad.linalg import hermitian_eigenvalues
from numrad.norms import CATALOG, FROBENIUS, OPERATOR, NormSpec, matrix_norm
from numrad.qr_eigen import qr_eigenvalues
from numrad.radius import (
    classical_radius_lower_oracle,
    frobenius_closed_form,
    generalized_radii,
    generalized_radius,
)


@pytest.fixture
def criterion(request):
    state = {"detail": ""}
    yield state
    failed = request.node.rep_call.failed if hasattr(request.node, "rep_call") else True
    tag = "FAIL" if failed else "PASS"
    ACCEPTANCE_LINES.append(f"[{tag}] {state['name']}: {state['detail']}")


def _fits(spec, n):
    return spec.kind != "kyfan" or spec.k <= n


def _stats(report, cid):
    return report.per_check.get(cid) or report.informational[cid]


def test_criterion_01_kernel_correctness(criterion):
    criterion["name"] = "1 eigensolver vs QR oracle"
    start = time.perf_counter()
    worst = 0.0
    for i in range(200):
        n = 2 + i % 15
        M = hermitian(stream(1001, i), n)
        a, b = hermitian_eigenvalues(M), qr_eigenvalues(M)
        worst = max(worst, float(np.max(np.abs(a - b)) / np.max(np.abs(b))))
    elapsed = time.perf_counter() - start
    criterion["detail"] = f"max rel dev {worst:.2e} (<= 1e-9), {elapsed:.2f}s (< 10s)"
    assert worst <= 1e-9
    assert elapsed < 10.0


def test_criterion_02_radius_oracle_agreement(criterion):
    criterion["name"] = "2 radius oracle agreement"
    mats = [ginibre(stream(1002, i), 1 + i % 8) for i in range(200)]
    ests = generalized_radii(mats, FROBENIUS)
    worst = max(abs(e.mid - frobenius_closed_form(A)) / frobenius_closed_form(A)
                for A, e in zip(mats, ests))
    excess = -math.inf
    for seed in range(100):
        A = ginibre(stream(seed, 77), 5)
        excess = max(excess, classical_radius_lower_oracle(A, seed=seed)
                     - generalized_radius(A, OPERATOR).hi)
    criterion["detail"] = (f"frobenius max rel err {worst:.2e} (<= 1e-8); "
                           f"max(oracle - hi) {excess:.2e} (<= 1e-9)")
    assert worst <= 1e-8
    assert excess <= 1e-9


def test_criterion_03_analytic_fixtures(criterion):
    criterion["name"] = "3 analytic fixtures"
    N = np.array([[0, 1], [0, 0]], dtype=complex)
    nil = max(abs(generalized_radius(N, NormSpec.schatten(p)).mid
                  - (0.5 if math.isinf(p) else 2 ** (1 / p) / 2))
              for p in (1.0, 2.0, 3.0, math.inf))
    herm = 0.0
    for i in range(100):
        H = hermitian(stream(1003, i), 1 + i % 6)
        specs = [s for s in CATALOG if _fits(s, H.shape[0])]
        for spec, est in zip(specs, [generalized_radius(H, s) for s in specs]):
            herm = max(herm, abs(est.mid - matrix_norm(spec, H)))
    criterion["detail"] = f"nilpotent max err {nil:.2e} (<= 1e-9); hermitian max err {herm:.2e} (<= 1e-10)"
    assert nil <= 1e-9
    assert herm <= 1e-10


def test_criterion_04_sandwich(criterion):
    criterion["name"] = "4 sandwich N/2 <= w_N <= N"
    worst = math.inf
    count = 0
    for i in range(500):
        A = ginibre(stream(1004, i), 1 + i % 6)
        specs = [s for s in CATALOG if _fits(s, A.shape[0])]
        for spec in specs:
            nA = matrix_norm(spec, A)
            est = generalized_radius(A, spec)
            tol = 1e-8 * nA
            worst = min(worst, est.hi - (nA / 2 - tol), (nA + tol) - est.lo)
            count += 1
    criterion["detail"] = f"{count} (matrix, norm) pairs, min margin {worst:.3e} (>= 0)"
    assert worst >= 0.0


def test_criterion_05_f_g_convexity(criterion):
    criterion["name"] = "5 f/g convexity, 200 trials x 5 norms"
    cfg = replace(default_config(), trials=1000, dims=(2, 3, 4),
                  norms=("operator", "trace", "frobenius", "schatten:3", "kyfan:2"))
    start = time.perf_counter()
    rep = run_campaign(cfg, ["thm1.1-f", "thm1.1-g"])
    elapsed = time.perf_counter() - start
    f, g = _stats(rep, "thm1.1-f"), _stats(rep, "thm1.1-g")
    criterion["detail"] = (f"f {f['passes']}/{f['trials']} pass, g {g['passes']}/{g['trials']} pass, "
                           f"{elapsed:.0f}s (<= 300s)")
    # min-at-1/2 and midpoint violations both drive the verdict
    assert f["trials"] == g["trials"] == 1000
    assert f["passes"] == 1000 and g["passes"] == 1000
    assert elapsed <= 300.0


def test_criterion_06_interpolation_and_product_bounds(criterion):
    criterion["name"] = "6 lem2.1 / eq5 / sec4-two-sided, 500 trials"
    cfg = replace(default_config(), trials=500)
    ids = ["lem2.1-eq3", "lem2.1-eq4-lower", "lem2.1-eq4-upper", "eq5", "sec4-two-sided"]
    rep = run_campaign(cfg, ids)
    fails = {cid: _stats(rep, cid)["fails"] for cid in ids}
    # endpoint equality cases
    worst_eq = 0.0
    grid = cfg.grid
    for i in range(20):
        r = stream(1006, i)
        A, X = positive_definite(r, 3), ginibre(r, 3)
        spec = CATALOG[i % len(CATALOG)]
        cases = [ineq.check_lemma21_holder(A, X, spec, 0.0, grid),
                 ineq.check_lemma21_holder(A, X, spec, 1.0, grid),
                 ineq.check_lemma21_heinz(A, X, spec, 0.5, grid)[0],
                 ineq.check_lemma21_heinz(A, X, spec, 0.0, grid)[1],
                 ineq.check_lemma21_heinz(A, X, spec, 1.0, grid)[1],
                 ineq.check_axa_half_bound(np.eye(3), X, spec, grid),
                 ineq.check_two_sided_axb(np.eye(3), np.eye(3), X, spec, grid)]
        worst_eq = max(worst_eq, max(abs(c.slack) / c.scale for c in cases))
    criterion["detail"] = f"fails {fails}; endpoint max |slack|/scale {worst_eq:.2e} (<= 1e-7)"
    assert all(v == 0 for v in fails.values())
    assert all(_stats(rep, cid)["trials"] == 500 for cid in ids)
    assert worst_eq <= 1e-7


def test_criterion_07_block_bounds(criterion):
    criterion["name"] = "7 block bounds eq1/eq2"
    base = replace(default_config(), dims=(2, 3, 4))
    fails = {}
    for cid, ps in (("thm1.2-eq1", (2.0, 2.5, 3.0, 4.0)), ("thm1.2-eq2", (1.0, 1.3, 1.7, 2.0))):
        for p in ps:
            stats = _stats(run_campaign(replace(base, trials=500, p_values=(p,)), [cid]), cid)
            assert stats["trials"] == 500
            fails[f"{cid}@{p:g}"] = stats["fails"]
    worst = 0.0
    for i in range(50):
        r = stream(1007, i)
        blocks = [ginibre(r, 2 + i % 3) for _ in range(4)]
        a = ineq.check_thm12_p_ge_2(*blocks, 2.0, base.grid)
        b = ineq.check_thm12_p_le_2(*blocks, 2.0, base.grid)
        worst = max(worst, abs(a.rhs.mid - b.rhs.mid) / a.rhs.mid)
    criterion["detail"] = f"total fails {sum(fails.values())}; p=2 rhs rel diff {worst:.1e} (<= 1e-12)"
    assert sum(fails.values()) == 0
    assert worst <= 1e-12


def test_criterion_08_partition_bound(criterion):
    criterion["name"] = "8 lem3.1 partition bound, constant 2^(p-2)"
    cfg = replace(default_config(), trials=500, p_values=(2.0, 3.0, 4.0))
    stats = _stats(run_campaign(cfg, ["lem3.1"]), "lem3.1")
    worst = 0.0
    for i in range(30):
        A = ginibre(stream(1008, i), 2 + i % 3)
        r = ineq.check_lemma31_partition(((A, A), (A, A)), (2.0, 3.0, 4.0)[i % 3])
        worst = max(worst, abs(r.lhs.mid - r.rhs.mid) / r.scale)
    criterion["detail"] = (f"{stats['fails']} fails / {stats['trials']} trials; "
                           f"equal-block rel gap {worst:.1e} (<= 1e-7)")
    assert stats["trials"] == 500 and stats["fails"] == 0
    assert worst <= 1e-7


def test_criterion_09_derived_bounds(criterion):
    criterion["name"] = "9 cor4.1-cor4.5 and rem1 checks, 300 trials"
    base = default_config()
    reports = [
        run_campaign(replace(base, trials=300), ["cor4.1-plus", "cor4.1-minus", "cor4.3",
                                                "rem1-lower-eq1", "rem1-lower-eq2"]),
        run_campaign(replace(base, trials=600), ["cor4.2-in", "cor4.2-out"]),
        run_campaign(replace(base, trials=300, p_values=(2.0, 2.5, 3.0, 4.0)),
                     ["cor4.4-diag", "cor4.4-diag-hermitian-eq", "cor4.4-row", "cor4.5-offdiag-eq",
                      "cor4.5-symmetric", "cor4.5-symmetric-hermitian-eq"]),
    ]
    stats = {cid: s for rep in reports for cid, s in rep.per_check.items()}
    fails = sum(s["fails"] for s in stats.values())
    short = [cid for cid, s in stats.items() if s["trials"] < 300]
    eq_ids = ["cor4.4-diag-hermitian-eq", "cor4.5-offdiag-eq", "cor4.5-symmetric-hermitian-eq"]
    worst_eq = max(abs(stats[c]["min_slack"]) / stats[c]["witness_of_min_slack"]["scale"] for c in eq_ids)
    criterion["detail"] = (f"{len(stats)} ids, {fails} fails, under-sampled {short}; "
                           f"equality worst |slack|/scale {worst_eq:.1e} (<= 1e-7)")
    assert fails == 0
    assert not short
    assert worst_eq <= 1e-7
    assert all(s["passes"] == s["trials"] for c, s in stats.items() if c in eq_ids)


def test_criterion_10_h_convexity(criterion):
    criterion["name"] = "10 h convexity and log-convexity, 200 trials"
    rep = run_campaign(replace(default_config(), trials=200), ["sec4-h-convex", "sec4-h-logconvex"])
    c, lg = _stats(rep, "sec4-h-convex"), _stats(rep, "sec4-h-logconvex")
    criterion["detail"] = (f"convex {c['fails']} fails / {c['trials']}, "
                           f"log-convex {lg['fails']} fails / {lg['trials']} ({lg['skipped']} skipped)")
    assert c["trials"] == 200 and c["fails"] == 0 and c["inconclusive"] == 0
    assert lg["trials"] + lg["skipped"] == 200 and lg["fails"] == 0 and lg["inconclusive"] == 0


def test_criterion_11_suite_determinism(criterion):
    criterion["name"] = "11 default suite determinism and runtime"
    cfg = default_config()
    runs = []
    for _ in range(2):
        start = time.perf_counter()
        rep = run_campaign(cfg)
        runs.append((rep, time.perf_counter() - start))
    (a, ta), (b, tb) = runs

    def strip(rep):
        data = rep.to_json()
        data.pop("wall_time")
        return json.dumps(data, indent=2, sort_keys=True)

    same = strip(a) == strip(b)
    criterion["detail"] = (f"identical={same}, fails={a.fails}, inconclusive={a.inconclusive}, "
                           f"runtimes {ta:.0f}s/{tb:.0f}s (<= 600s)")
    assert same
    assert a.fails == 0 and a.inconclusive == 0
    assert max(ta, tb) <= 600.0
