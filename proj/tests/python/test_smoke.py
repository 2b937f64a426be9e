import numpy as np
import pytest

import pdineq

C = np.array([[14, 8, 9, 8], [8, 12, 7, 7], [9, 7, 10, 8], [8, 7, 8, 8]], dtype=float)
D_FULL = np.array([[11, 12, 6, 11], [12, 16, 7, 12], [6, 7, 5, 6], [11, 12, 6, 14]], dtype=float)


def block_part(m):
    out = m.copy()
    out[:2, 2:] = 0
    out[2:, :2] = 0
    return out


def test_kernels_match_numpy():
    rng = np.random.default_rng(0)
    g = rng.standard_normal((5, 5))
    a = g @ g.T + 5 * np.eye(5)
    np.testing.assert_allclose(pdineq.cholesky(a), np.linalg.cholesky(a), rtol=1e-12, atol=1e-12)
    np.testing.assert_allclose(pdineq.pd_inverse(a), np.linalg.inv(a), rtol=1e-10, atol=1e-12)
    np.testing.assert_allclose(pdineq.jacobi_eigen(a), np.sort(np.linalg.eigvalsh(a))[::-1], rtol=1e-12)
    np.testing.assert_allclose(pdineq.det_pd(a), np.linalg.det(a), rtol=1e-10)
    np.testing.assert_allclose(pdineq.singular_values(g), np.linalg.svd(g, compute_uv=False), rtol=1e-10)
    r = pdineq.pd_sqrt(a)
    np.testing.assert_allclose(r @ r, a, rtol=1e-10)


def test_product_spectrum():
    vals = pdineq.eig_pd_product(np.linalg.inv(C), D_FULL)
    np.testing.assert_allclose(vals, [4.8921, 1.0664, 0.3433, 0.1772], atol=1.5e-4)


def test_orders_and_means():
    r = pdineq.check_order("MAJORIZE", [1, 1, 1], [3, 0, 0])
    assert r["holds"]
    r = pdineq.check_order("WEAK_MAJORIZE", [2, 2, 2], [3, 0.5, 0.5])
    assert not r["holds"] and r["fails_at"] == 2
    assert pdineq.geometric_mean([1, 4]) == pytest.approx(2.0)
    assert pdineq.power_mean([1, 4], 1) == pytest.approx(2.5)


def test_evaluate_verdicts():
    v = pdineq.evaluate("weak-log-general-d", C=C, D=D_FULL, partition=[2, 2])
    assert v["type"] == "verdict" and not v["holds"]
    assert v["order"]["fails_at"] == 2
    v = pdineq.evaluate("main-thm", C=C, D=block_part(D_FULL), partition=[2, 2])
    assert v["holds"]
    with pytest.raises(pdineq.PdineqError):
        pdineq.evaluate("main-thm", C=C, D=D_FULL, partition=[2, 2])
    with pytest.raises(ValueError):
        pdineq.evaluate("matic", C=C, D=block_part(D_FULL), partition=[3, 2])


def test_exact_determinant():
    assert pdineq.det_exact([["3", "2"], ["2", "3"]]) == "5"
    assert pdineq.det_exact([["1/2", "1/3"], ["1/3", "1/4"]]) == "1/72"


def test_fuzz_and_scenarios():
    r = pdineq.fuzz("main-thm", n=4, partition=[2, 2], trials=200, seed=42)
    assert r["violations"] == 0 and r["trials"] == 200
    r = pdineq.fuzz("inv-square-sum", n=4, partition=[2, 2], trials=50)
    assert r["violations"] >= 1 and r["records"][0]["injected"]
    scenarios = pdineq.verify_paper()
    assert len(scenarios) == 6 and all(s["pass"] for s in scenarios)
    assert "open-q" in pdineq.inequality_ids()
