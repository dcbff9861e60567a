"""Shared fixtures: the expensive reference runs are session-scoped."""

import pytest

from blowup_lab.config import load_config


def _run(name, **tol):
    cfg = load_config(name)
    cfg.tolerances.update(tol)
    problem = cfg.to_problem()
    from blowup_lab.pde import advance

    trace = []
    outcome = advance(problem, [trace.append])
    return cfg, problem, outcome, trace


@pytest.fixture(scope="session")
def blowup_run():
    """The shipped p=2, f=u^2 blow-up scenario at n=200."""
    return _run("blowup_p2_usq")


@pytest.fixture(scope="session")
def heat_run():
    """The shipped heat scenario (p=2, f=0, cos(pi x), n=400)."""
    return _run("heat")


@pytest.fixture(scope="session")
def subcritical_run():
    return _run("subcritical")
