"""Default tolerances and solver knobs.

Every value in TOLERANCES can be overridden per run through the config
file (``tolerances`` block) or the CLI ``--tol KEY=VAL`` flag; the rest
are fixed implementation constants.
"""

TOLERANCES = {
    # adaptive Simpson absolute tolerance
    "quad_tol": 1e-10,
    # step-doubling acceptance: |u_full - u_2half| <= step_tol * (1 + |u|_inf)
    "step_tol": 1e-6,
    # energy monotonicity slack per step
    "energy_slack": 1e-7,
    # concavity probe slack on second differences
    "conc_slack": 1e-6,
    # nondecreasing-ratio slack (absorbs quadrature noise)
    "monotone_slack": 1e-9,
    # regular-variation fit residual threshold
    "rv_fit_tol": 1e-2,
    # inconclusive band half-width around decay exponent -1
    "ko_margin": 0.05,
    # F(T)/T^p must exceed this at the largest probe level
    "growth_floor": 10.0,
    # |normalized margin| below this snaps to 0 (equality cases)
    "eq_snap": 1e-12,
    # sup-norm threshold that declares blow-up
    "blowup_linf": 1e8,
    # smallest admissible time step
    "dt_min": 1e-14,
}

# quadrature recursion depth cap
QUAD_DEPTH_CAP = 40

# seed for the randomized convexity probes
DEFAULT_SEED = 0x5EED

# default window for the asymptotic class tests
GC_WINDOW = (10.0, 1.0e4)
GC_NGRID = 96

# improper-integral probe levels
KO_LEVELS = (1e2, 1e4, 1e6, 1e8)
# log-correction exponent fit: bands used inside the +-ko_margin region
KO_LOG_DETECT = 0.15
KO_LOG_MARGIN = 0.2
# geometric decay required of per-level integral increments for "holds"
KO_CAUCHY_RATIO = 0.9
# per-level increments below this count as fully converged tails
KO_TINY_INCREMENT = 1e-300

# regular-variation probe defaults
RV_X_PROBES = (1e2, 1e4, 1e6)
RV_T_RANGE = (2.0, 10.0)
RV_T_COUNT = 9

# accepted dt may grow by at most this factor between steps
DT_GROWTH = 1.3
# rejections allowed within one step() call
MAX_REJECTIONS = 30
# trailing accepted steps examined for the growth-at-stall test
GROWTH_WINDOW = 10
GROWTH_FACTOR = 10.0

# concavity probe: q sweep and trace subsampling cap
CONC_Q_SWEEP = (0.05, 0.01, 0.1, 0.5)
CONC_MAX_POINTS = 160
