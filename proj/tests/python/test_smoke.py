import math

import numpy as np
import pytest

import symm_pg as sp

R0 = math.exp(-0.5)


def test_disc_operator_is_diagonal():
    a = sp.assemble_operator(sp.BoundaryCurve.disc(R0), 16)
    A = a.matrix
    assert A.shape == (33, 33)
    expected = np.array([1.0 / abs(k) if k else 1.0 for k in range(-16, 17)])
    assert np.allclose(A, np.diag(expected), atol=1e-12)


def test_methods_agree_on_disc():
    a = sp.assemble_operator(sp.BoundaryCurve.disc(R0), 64)
    b = sp.power_tail_rhs(0.25, 64)
    sols = [sp.solve(m, a, b, 8).solution.resized(64).coeffs for m in (sp.MethodKind.LS, sp.MethodKind.DLS, sp.MethodKind.BG)]
    assert np.allclose(sols[0], sols[2], atol=1e-10)
    assert np.allclose(sols[1], sols[2], atol=1e-10)
    assert sols[2][64 + 3] == pytest.approx(3 ** 0.25)


def test_fourier_vector_roundtrip():
    v = sp.FourierVector(np.array([1j, 2.0, -1j]))
    assert v.max_index == 1
    assert v[0] == 2.0
    assert v[5] == 0.0
    assert sp.sobolev_norm(v, 0.0) == pytest.approx(math.sqrt(6.0))
    assert sp.eval_fourier(v, 0.0) == pytest.approx(2.0)
    with pytest.raises(sp.SymmError):
        sp.FourierVector(np.zeros(4, dtype=complex))


def test_errors_map_to_python():
    a = sp.assemble_operator(sp.BoundaryCurve.ellipse(2.0, 1.0), 16)
    with pytest.raises(sp.TruncationError):
        sp.solve(sp.MethodKind.LS, a, sp.FourierVector(2), 5)
    with pytest.raises(sp.AliasingError):
        sp.assemble_operator(sp.BoundaryCurve.disc(0.5), 16, 40)
    unit = sp.assemble_operator(sp.BoundaryCurve.disc(1.0), 8)
    with pytest.raises(sp.SingularSystemError):
        sp.solve(sp.MethodKind.BG, unit, sp.FourierVector.mode(0), 2)


def test_divergence_and_fit():
    a = sp.assemble_operator(sp.BoundaryCurve.disc(R0), 256)
    out = sp.run_divergence(a, sp.MethodKind.BG, 0.1, [4, 8, 16, 32, 64])
    assert not out["failures"]
    ns = [r["n"] for r in out["records"]]
    vals = [r["value"] for r in out["records"]]
    slope, r2 = sp.fit_rate(ns, vals)
    assert 0.75 < slope < 0.95
    assert r2 > 0.99


def test_convergence_and_stability():
    a = sp.assemble_operator(sp.BoundaryCurve.ellipse(2.0, 1.0), 64)
    assert sp.stability_sigma(a, 4) == pytest.approx(4 / (1 - 3.0 ** -4))
    x = sp.sobolev_decay_solution(1.5, 64)
    out = sp.run_convergence(a, sp.MethodKind.BG, x, [1e-3], n_list=[4, 8], seeds=[1, 2])
    assert len(out["records"]) == 2 * 2 * 2
    lim = sp.smooth_kernel_diagonal_derivatives(sp.BoundaryCurve.ellipse(2.0, 1.0), 0.0)
    assert lim.k_diag == pytest.approx(-1.0 / (2 * math.pi))
