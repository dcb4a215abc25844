import cmath
import math

import pytest

import snls


def test_system_rows():
    rows = snls.generate_system()
    assert len(rows) == 7
    assert rows[0] == "1*A0*B0^2*H + 2*A0^3"
    assert snls.compute_balance(2, 3, 1) == 2


def test_case_one_values():
    cs = snls.make_case(1, H=1, B0=1)
    assert abs(cs.k - 1j * math.sqrt(2)) < 1e-12
    assert abs(cs.a[0] - 1j / math.sqrt(2)) < 1e-12
    assert cs.residual <= 1e-10


def test_verify_reports():
    ok = snls.verify_case(2)
    assert ok["passed"] and not ok["flagged"]
    flagged = snls.verify_case(8, B1=1, k=1)
    assert flagged["flagged"]


def test_degenerate_model():
    with pytest.raises(snls.DegenerateModelError):
        snls.make_case(1, H=0)


def test_pole_raises():
    cs = snls.make_case(1)
    with pytest.raises(snls.PoleError):
        snls.eval_u(cs, xi=0)


def test_modulus_ignores_noise():
    cs = snls.make_case(5)
    path = snls.sample_path(diffusion=1.0, rate=2.0, horizon=1.0, seed=3)
    quiet = snls.ModelParams(alpha=1.0, upsilon=0.0)
    noisy = snls.ModelParams(alpha=1.0, upsilon=0.0, sigma=0.7)
    a = snls.eval_psi(cs, quiet, path, 0.4, 0.5)
    b = snls.eval_psi(cs, noisy, path, 0.4, 0.5)
    assert abs(abs(a) - abs(b)) < 1e-13
    assert abs(b / a - cmath.exp(0.7j * path(0.5))) < 1e-12


def test_path_starts_at_zero():
    path = snls.sample_path(drift=1.0, horizon=2.0, seed=1)
    assert path(0.0) == 0.0
    assert path(2.0) == pytest.approx(2.0)


def test_momentum_constant():
    cs = snls.CoefficientSet(k=1, a=[1, 0, 0], b=[1, 0])
    assert snls.momentum(cs, snls.ModelParams()).real == pytest.approx(10.0)


def test_plane_wave():
    n, length, a = 64, 2 * math.pi, 0.5
    params = snls.ModelParams(alpha=1.0, upsilon=1.0 + 2 * a * a)
    xs = [length * j / n for j in range(n)]
    out = snls.evolve([a * cmath.exp(1j * x) for x in xs], params, snls.LevyPath.drift_only(0.0, 1.0), length, 1e-3, 0.1)
    exact = [a * cmath.exp(1j * (x + params.upsilon * 0.1)) for x in xs]
    assert max(abs(u - v) for u, v in zip(out, exact)) < 1e-6
