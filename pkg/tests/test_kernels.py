"""Backend-parametrized kernel tests: semantics, conservation, agreement."""

import numpy as np
import pytest

from blowup_lab import kernels

BACKENDS = kernels.available_backends()
EPS = np.finfo(float).eps


@pytest.fixture(params=sorted(BACKENDS))
def impl(request):
    return BACKENDS[request.param]


def rand_field(n, seed, scale=1.0):
    rng = np.random.default_rng(seed)
    return scale * (rng.random(n) - 0.5)


@pytest.mark.parametrize("p", [2.0, 3.0, 4.5])
def test_plap_matches_reference(impl, p):
    u = rand_field(64, 7)
    dx = 1.0 / 64
    out = np.empty_like(u)
    impl.plap_apply(u, dx, p, out)
    g = (u[1:] - u[:-1]) / dx
    flux = np.zeros(65)
    flux[1:-1] = np.abs(g) ** (p - 2.0) * g
    ref = (flux[1:] - flux[:-1]) / dx
    assert np.allclose(out, ref, rtol=1e-13, atol=1e-13)


def test_plap_p2_is_second_difference(impl):
    u = rand_field(32, 3)
    dx = 0.25
    out = np.empty_like(u)
    impl.plap_apply(u, dx, 2.0, out)
    d1 = (u[1:] - u[:-1]) / dx
    ref_interior = (d1[1:] - d1[:-1]) / dx
    assert np.array_equal(out[1:-1], ref_interior)


@pytest.mark.parametrize("p", [2.0, 3.0])
def test_plap_constant_and_linear(impl, p):
    n, dx = 16, 0.5
    out = np.empty(n)
    impl.plap_apply(np.full(n, 3.7), dx, p, out)
    assert np.all(out == 0.0)
    x = (np.arange(n) + 0.5) * dx
    impl.plap_apply(x.copy(), dx, p, out)
    # constant interior flux telescopes; boundary cells carry the closure jump
    assert np.allclose(out[1:-1], 0.0, atol=1e-12)
    assert out[0] == pytest.approx(1.0 / dx)
    assert out[-1] == pytest.approx(-1.0 / dx)


@pytest.mark.parametrize("p", [2.0, 3.0, 4.0])
def test_flux_telescoping(impl, p):
    u = rand_field(200, 11, scale=5.0)
    dx = 1.0 / 200
    out = np.empty_like(u)
    impl.plap_apply(u, dx, p, out)
    g = (u[1:] - u[:-1]) / dx
    max_flux = np.max(np.abs(g) ** (p - 1.0))
    assert abs(np.sum(out) * dx) <= 8 * len(u) * EPS * max(1.0, max_flux)


def test_rhs_reaction_mean_free(impl):
    u = rand_field(128, 5, scale=2.0)
    fu = u * u + 1.0
    dx = 1.0 / 128
    out = np.empty_like(u)
    impl.rhs_into(u, fu, dx, 2.0, out)
    plap = np.empty_like(u)
    impl.plap_apply(u, dx, 2.0, plap)
    reaction = out - plap
    assert abs(np.sum(reaction)) <= 64 * EPS * len(u) * np.max(np.abs(fu))


def test_euler_equals_u_plus_dt_rhs(impl):
    u = rand_field(96, 9)
    fu = np.abs(u) ** 1.5
    dx, p, dt = 1.0 / 96, 3.0, 1e-4
    r = np.empty_like(u)
    impl.rhs_into(u, fu, dx, p, r)
    stepped = np.empty_like(u)
    impl.euler_step_into(u, fu, dx, p, dt, stepped)
    assert np.array_equal(stepped, u + dt * r)


def test_stats_and_norms(impl):
    u = rand_field(50, 13, scale=3.0)
    dx = 0.02
    integral, l2, linf = impl.field_stats(u, dx)
    assert integral == pytest.approx(np.sum(u) * dx, rel=1e-13)
    assert l2 == pytest.approx(np.sqrt(np.sum(u * u) * dx), rel=1e-13)
    assert linf == np.max(np.abs(u))
    assert impl.max_abs_face_grad(u, dx) == pytest.approx(
        np.max(np.abs(np.diff(u))) / dx, rel=1e-13
    )
    for p in (2.0, 3.5):
        g = np.diff(u) / dx
        assert impl.grad_p_norm(u, dx, p) == pytest.approx(
            np.sum(np.abs(g) ** p) * dx, rel=1e-12
        )


def test_diff_helpers(impl):
    a = rand_field(40, 1)
    b = rand_field(40, 2)
    assert impl.max_abs_diff(a, b) == np.max(np.abs(a - b))
    assert impl.diff_l2sq(a, b, 10.0, 0.5) == pytest.approx(
        np.sum(((a - b) * 10.0) ** 2) * 0.5, rel=1e-13
    )


def test_all_finite(impl):
    u = rand_field(16, 4)
    assert impl.all_finite(u)
    u[7] = np.inf
    assert not impl.all_finite(u)
    u[7] = np.nan
    assert not impl.all_finite(u)


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled backend not built")
@pytest.mark.parametrize("p", [2.0, 3.0])
def test_backends_agree(p):
    cy, py = BACKENDS["cython"], BACKENDS["python"]
    u = rand_field(300, 21, scale=10.0)
    fu = np.abs(u) ** p
    dx = 1.0 / 300
    a, b = np.empty_like(u), np.empty_like(u)
    cy.rhs_into(u, fu, dx, p, a)
    py.rhs_into(u, fu, dx, p, b)
    scale = np.max(np.abs(a))
    assert np.allclose(a, b, rtol=1e-12, atol=1e-12 * scale)
    cy.euler_step_into(u, fu, dx, p, 1e-5, a)
    py.euler_step_into(u, fu, dx, p, 1e-5, b)
    assert np.allclose(a, b, rtol=1e-12, atol=1e-12)
    assert cy.grad_p_norm(u, dx, p) == pytest.approx(py.grad_p_norm(u, dx, p), rel=1e-12)
    sa, sb = cy.field_stats(u, dx), py.field_stats(u, dx)
    assert sa == pytest.approx(sb, rel=1e-12, abs=1e-14)
