import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import random_ginibre, random_hermitian
from numrad.ensembles import stream, unitary
from numrad.errors import InvalidSpec
from numrad.norms import (
    CATALOG,
    FROBENIUS,
    OPERATOR,
    TRACE,
    NormSpec,
    gauge,
    gauge_batch,
    hermitian_norm_fast,
    matrix_norm,
    parse_norm,
)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("operator", OPERATOR),
        ("Spectral", OPERATOR),
        ("schatten:inf", OPERATOR),
        ("kyfan:1", OPERATOR),
        ("trace", TRACE),
        ("NUCLEAR", TRACE),
        ("schatten:1", TRACE),
        ("frobenius", FROBENIUS),
        ("schatten:2.0", FROBENIUS),
        ("schatten:3", NormSpec.schatten(3)),
        ("kyfan:2", NormSpec.kyfan(2)),
    ],
)
def test_parse_norm(text, expected):
    assert parse_norm(text) == expected


@pytest.mark.parametrize(
    "text", ["", "schatten", "schatten:", "schatten:0.5", "schatten:-inf", "kyfan:0",
             "kyfan:1.5", "kyfan:x", "lp:2", "schatten:nan"]
)
def test_parse_norm_rejects(text):
    with pytest.raises(InvalidSpec):
        parse_norm(text)


def test_str_roundtrip():
    for spec in CATALOG:
        assert parse_norm(str(spec)) == spec
        assert hash(parse_norm(str(spec))) == hash(spec)


def test_known_values():
    sv = np.array([3.0, 2.0, 1.0])
    assert gauge(OPERATOR, sv) == 3.0
    assert gauge(TRACE, sv) == 6.0
    assert gauge(FROBENIUS, sv) == pytest.approx(math.sqrt(14))
    assert gauge(NormSpec.kyfan(2), sv) == 5.0
    assert gauge(NormSpec.schatten(3), sv) == pytest.approx(36 ** (1 / 3))


def test_gauge_validates_input():
    with pytest.raises(InvalidSpec):
        gauge(TRACE, [1.0, 2.0])
    with pytest.raises(InvalidSpec):
        gauge(TRACE, [1.0, -1.0])
    with pytest.raises(InvalidSpec):
        gauge(NormSpec.kyfan(3), [2.0, 1.0])


def test_large_p_is_stable():
    sv = np.array([1e200, 1e200])
    assert gauge(NormSpec.schatten(500), sv) == pytest.approx(1e200 * 2 ** (1 / 500))
    assert gauge(NormSpec.schatten(500), np.zeros(2)) == 0.0


def test_batch_matches_scalar():
    sv = np.sort(np.abs(np.random.default_rng(0).normal(size=(5, 4))), axis=1)[:, ::-1]
    for spec in CATALOG:
        expected = [gauge(spec, row) for row in sv]
        assert np.allclose(gauge_batch(spec, sv), expected, rtol=1e-14)


def test_matrix_norm_against_numpy():
    M = random_ginibre(0, 5)
    assert matrix_norm(OPERATOR, M) == pytest.approx(np.linalg.norm(M, 2), rel=1e-12)
    assert matrix_norm(TRACE, M) == pytest.approx(np.linalg.norm(M, "nuc"), rel=1e-12)
    assert matrix_norm(FROBENIUS, M) == pytest.approx(np.linalg.norm(M, "fro"), rel=1e-12)


def test_hermitian_fast_path():
    H = random_hermitian(2, 6)
    for spec in CATALOG:
        assert hermitian_norm_fast(spec, H) == pytest.approx(matrix_norm(spec, H), rel=1e-12)


@given(st.integers(0, 10_000), st.integers(2, 5), st.sampled_from(CATALOG))
def test_unitary_invariance(seed, n, spec):
    M = random_ginibre(seed, n)
    U, V = unitary(stream(seed, 10), n), unitary(stream(seed, 11), n)
    assert matrix_norm(spec, U @ M @ V) == pytest.approx(matrix_norm(spec, M), rel=1e-10)


@given(st.integers(0, 10_000), st.integers(1, 5), st.sampled_from(CATALOG))
def test_norm_axioms(seed, n, spec):
    if spec.kind == "kyfan" and spec.k > n:
        return
    A, B = random_ginibre(seed, n), random_ginibre(seed + 1, n)
    nA, nB = matrix_norm(spec, A), matrix_norm(spec, B)
    assert matrix_norm(spec, A + B) <= (nA + nB) * (1 + 1e-12)
    assert matrix_norm(spec, (2 - 3j) * A) == pytest.approx(abs(2 - 3j) * nA, rel=1e-12)
    # every cataloged norm sits between the operator and trace norms
    assert matrix_norm(OPERATOR, A) * (1 - 1e-12) <= nA <= matrix_norm(TRACE, A) * (1 + 1e-12)


@given(st.lists(st.floats(0, 10), min_size=1, max_size=6), st.floats(1, 8), st.floats(1, 8))
def test_schatten_monotone_in_p(values, p, q):
    sv = np.sort(np.array(values))[::-1]
    lo, hi = sorted((p, q))
    assert gauge(NormSpec.schatten(hi), sv) <= gauge(NormSpec.schatten(lo), sv) * (1 + 1e-12) + 1e-300
