import math

import numpy as np
import pytest

from blowup_lab import diagnostics
from blowup_lab.errors import EvaluationFailure, InvalidGrid, StallDetected
from blowup_lab.grid import Field, make_grid, make_initial, parse_profile
from blowup_lab.nonlinearity import resolve
from blowup_lab.pde import (
    BLEW_UP,
    COMPLETED,
    STALLED,
    ProblemSpec,
    SolverState,
    advance,
    face_gradients,
    nonlocal_reaction,
    p_laplacian_apply,
    rhs,
    stable_dt,
    step,
)

# ---------------------------------------------------------------------------
# grid and profiles


def test_make_grid_examples():
    assert make_grid(0.0, 1.0, 100).dx == 0.01
    assert make_grid(-1.0, 1.0, 64).dx == 0.03125
    with pytest.raises(InvalidGrid):
        make_grid(0.0, 1.0, 7)
    with pytest.raises(InvalidGrid):
        make_grid(1.0, 0.0, 100)


def test_initial_profiles_zero_mean():
    g = make_grid(0.0, 1.0, 100)
    u = make_initial("cosine:1", g)
    assert abs(np.sum(u.values) * g.dx) <= 1e-15
    # constants are annihilated by the projection
    c = make_initial("constant:5", g)
    assert np.all(c.values == 0.0)


def test_initial_profile_string_and_dict_agree():
    g = make_grid(0.0, 1.0, 64)
    a = make_initial("cosine-mix:40,0.5", g)
    b = make_initial({"kind": "cosine-mix", "amplitude": 40.0, "beta": 0.5}, g)
    assert np.array_equal(a.values, b.values)


def test_initial_cosine_mix_negative_energy():
    # continuum value A^2 (pi^2 (1 + 4 beta^2)/4 - A beta / 4) at A=40, beta=0.5
    g = make_grid(0.0, 1.0, 200)
    u = make_initial("cosine-mix:40,0.5", g)
    spec = ProblemSpec(p=2.0, nl=resolve("power:sigma=2"), grid=g, u0=u, t_end=1.0)
    e0 = diagnostics.energy(u, spec)
    formula = 40.0**2 * (np.pi**2 * 2.0 / 4.0 - 40.0 * 0.5 / 4.0)
    assert e0 < 0.0
    assert e0 == pytest.approx(formula, rel=5e-3)


def test_custom_profile_and_errors():
    g = make_grid(0.0, 1.0, 8)
    f = make_initial({"kind": "custom", "values": [1, 2, 3, 4, 5, 6, 7, 8]}, g)
    assert abs(np.mean(f.values)) <= 1e-14
    with pytest.raises(EvaluationFailure):
        make_initial({"kind": "custom", "values": [1, 2]}, g)
    with pytest.raises(EvaluationFailure):
        make_initial("nosuch:1", g)
    with pytest.raises(EvaluationFailure):
        parse_profile({"kind": "cosine", "bogus": 1.0})


# ---------------------------------------------------------------------------
# spatial operators


def _field(g, values):
    return Field(g, np.asarray(values, dtype=float))


def test_face_gradients_examples():
    g = make_grid(0.0, 1.0, 100)
    assert np.all(face_gradients(_field(g, np.full(100, 2.5))) == 0.0)
    x = g.cell_centers()
    fg = face_gradients(_field(g, x.copy()))
    assert fg[0] == 0.0 and fg[-1] == 0.0
    assert np.allclose(fg[1:-1], 1.0, rtol=1e-12)
    fg = face_gradients(_field(g, np.cos(np.pi * x)))
    i = 50  # face at x = 0.5, derivative -pi sin(pi/2) = -pi
    assert fg[i] == pytest.approx(-np.pi, abs=np.pi * g.dx**2)


def test_plap_field_examples():
    g = make_grid(0.0, 1.0, 200)
    assert np.all(p_laplacian_apply(_field(g, np.zeros(200) + 4.0), 3.0).values == 0.0)
    x = g.cell_centers()
    out = p_laplacian_apply(_field(g, np.cos(np.pi * x)), 2.0)
    ref = -np.pi**2 * np.cos(np.pi * x)
    assert np.max(np.abs(out.values - ref)) <= 1e-2  # O(dx^2) at n=200


def test_plap_order_of_accuracy():
    errs = []
    for n in (100, 200, 400):
        g = make_grid(0.0, 1.0, n)
        x = g.cell_centers()
        out = p_laplacian_apply(_field(g, np.cos(np.pi * x)), 2.0)
        errs.append(np.max(np.abs(out.values + np.pi**2 * np.cos(np.pi * x))))
    for a, b in zip(errs, errs[1:]):
        assert 3.5 <= a / b <= 4.5


def test_nonlocal_reaction_examples():
    g = make_grid(0.0, 1.0, 8)
    nl = resolve("power:sigma=2")
    r = nonlocal_reaction(_field(g, np.zeros(8)), nl)
    assert np.all(r.values == 0.0)
    # alternating +-1: f(|u|) = 1 identically, mean removal kills it
    r = nonlocal_reaction(_field(g, np.tile([-1.0, 1.0], 4)), nl)
    assert np.all(np.abs(r.values) <= 1e-15)
    assert abs(np.sum(r.values) * g.dx) <= 1e-14


def test_rhs_reduces_to_laplacian():
    g = make_grid(0.0, 1.0, 200)
    x = g.cell_centers()
    u = _field(g, np.cos(np.pi * x))
    spec = ProblemSpec(
        p=2.0, nl=resolve("zero"), grid=g, u0=make_initial("zero", g), t_end=1.0
    )
    out = rhs(u, spec)
    assert np.max(np.abs(out.values + np.pi**2 * np.cos(np.pi * x))) <= 1e-2
    assert abs(np.sum(out.values) * g.dx) <= 1e-12
    z = rhs(_field(g, np.zeros(200)), spec)
    assert np.all(z.values == 0.0)


# ---------------------------------------------------------------------------
# problem validation and step control


def _spec(n=64, p=2.0, nl_id="power:sigma=2", profile="cosine-mix:40,0.5", t_end=1.0, **kw):
    g = make_grid(0.0, 1.0, n)
    return ProblemSpec(
        p=p,
        nl=resolve(nl_id),
        grid=g,
        u0=make_initial(profile, g),
        t_end=t_end,
        u0_profile=parse_profile(profile),
        **kw,
    )


def test_problem_validation():
    with pytest.raises(ValueError):
        _spec(p=1.5)
    with pytest.raises(ValueError):
        _spec(cfl=1.5)
    with pytest.raises(ValueError):
        _spec(nl_id="powlog:sigma=2")  # domain starts at 1, not usable as reaction
    g = make_grid(0.0, 1.0, 8)
    with pytest.raises(ValueError):
        ProblemSpec(
            p=2.0, nl=resolve("zero"), grid=g, u0=Field(g, np.ones(8)), t_end=1.0
        )


def test_stable_dt_zero_state_is_diffusive_bound():
    spec = _spec(profile="zero")
    dt = stable_dt(spec.u0, spec)
    assert dt == pytest.approx(spec.cfl * spec.grid.dx**2 / 2.0, rel=1e-9)


def test_stable_dt_monotone_in_amplitude():
    spec = _spec()
    dt1 = stable_dt(spec.u0, spec)
    doubled = Field(spec.grid, 2.0 * spec.u0.values)
    assert stable_dt(doubled, spec) <= dt1


def test_stable_dt_p4_steep_smaller():
    s2 = _spec(p=2.0)
    s4 = _spec(p=4.0)
    assert stable_dt(s4.u0, s4) < stable_dt(s2.u0, s2)


def test_step_zero_fixed_point():
    spec = _spec(profile="zero")
    s0 = SolverState(t=0.0, u=spec.u0.copy())
    s1 = step(s0, spec)
    assert s1.t > 0.0
    assert np.all(s1.u.values == 0.0)
    assert s1.steps_accepted == 1


def test_step_stall_detected():
    spec = _spec(dt_min=1.0)  # no admissible dt below the floor
    with pytest.raises(StallDetected):
        step(SolverState(t=0.0, u=spec.u0.copy()), spec)


# ---------------------------------------------------------------------------
# advance outcomes


def test_advance_zero_completed():
    spec = _spec(profile="zero", t_end=0.5)
    trace = []
    out = advance(spec, [trace.append])
    assert out.status == COMPLETED
    assert out.t_final == pytest.approx(0.5, rel=1e-12)
    assert trace[-1].linf == 0.0


def test_advance_heat_decay_small():
    g = make_grid(0.0, 1.0, 200)
    spec = ProblemSpec(
        p=2.0, nl=resolve("zero"), grid=g, u0=make_initial("cosine:1", g), t_end=0.1, cfl=0.9
    )
    trace = []
    out = advance(spec, [trace.append])
    assert out.status == COMPLETED
    assert trace[-1].linf == pytest.approx(math.exp(-np.pi**2 * 0.1), rel=1e-2)


def test_advance_blowup_bracket():
    spec = _spec(n=64)
    trace = []
    out = advance(spec, [trace.append])
    assert out.status == BLEW_UP
    lo, hi = out.blowup_bracket
    assert lo <= out.t_final <= hi or hi == out.t_final
    assert hi - lo <= 2.0 * trace[-1].dt
    assert trace[-1].linf > spec.blowup_linf or not math.isfinite(trace[-1].linf)


def test_advance_stalled():
    spec = _spec(dt_min=1.0)
    out = advance(spec)
    assert out.status == STALLED


def test_advance_value_escape_is_blowup():
    # a state where exp(|u|) already overflows: non-finite reaction at an
    # accepted state is classified as blow-up, never propagated silently
    g = make_grid(0.0, 1.0, 8)
    vals = np.zeros(8)
    vals[3] = 900.0  # projects to ~787, beyond the exp overflow point ~709.8
    spec = ProblemSpec(
        p=2.0,
        nl=resolve("exp"),
        grid=g,
        u0=make_initial({"kind": "custom", "values": list(vals)}, g),
        t_end=1.0,
    )
    out = advance(spec)
    assert out.status == BLEW_UP
    assert out.blowup_bracket is not None


def test_advance_reaction_stiffer_than_dt_min_stalls():
    # exp reaction at amplitude 40 demands dt ~ e^{-60}: an honest stall
    spec = _spec(n=64, nl_id="exp", profile="cosine-mix:40,0.5", t_end=1.0)
    out = advance(spec)
    assert out.status == STALLED


def test_advance_deterministic_traces():
    spec1 = _spec(n=64)
    spec2 = _spec(n=64)
    tr1, tr2 = [], []
    advance(spec1, [tr1.append])
    advance(spec2, [tr2.append])
    assert len(tr1) == len(tr2)
    for a, b in zip(tr1, tr2):
        assert a == b  # bit-identical records


def test_mean_conservation_along_run(blowup_run):
    _, _, _, trace = blowup_run
    assert diagnostics.mean_conservation_max(trace) <= 1e-10
