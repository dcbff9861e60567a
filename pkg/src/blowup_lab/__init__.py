"""blowup_lab: class tests for nonlinearities and a 1-D nonlocal p-Laplacian solver.

Two halves, joined by a CLI:

* ``nonlinearity`` / ``classtests`` -- a catalog of scalar nonlinearities
  f: [a, oo) -> [0, oo) and numerical tests for generalized-convexity
  classes (mean-value inequality of order alpha, h-convexity, regular
  variation, Keller-Osserman integrability, N-function / doubling checks).

* ``grid`` / ``pde`` / ``diagnostics`` -- a conservative finite-volume
  discretization of  u_t - div(|u_x|^{p-2} u_x) = f(|u|) - mean(f(|u|))
  on an interval with zero-flux boundaries, an adaptive explicit stepper,
  and trace-based verification of the energy identity, the auxiliary
  h/H inequalities and the finite-time blow-up criterion.
"""

from .kernels import BACKEND as kernel_backend

__version__ = "0.1.0"

__all__ = ["__version__", "kernel_backend"]
