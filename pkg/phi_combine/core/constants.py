DEFAULT_BASE_DIR = "~/.phi_combine"
RESULTS_DIR = "results"

# Parameter selection
DEFAULT_DEGREE = 61
DEFAULT_TOL = 2.0**-53
DEFAULT_DELTA = 0.8
S_FLOOR = 2.0**-20
BRENT_MAXITER = 200
BRENT_XTOL = 1e-8
REFINE_WIDTH = 0.5
REFINE_MAXITER = 25
MIN_ACCEPTED_POWERS = 3

# Series caps
SERIES_CAP = 500
RECOVERY_CAP = 300

# Reproducibility
DEFAULT_SEED = 2024
START_VECTOR_SEED = 53

# Desk-scale experiment sizes
CHEBYSHEV_N = 100
CHEBYSHEV_L = 2.0
CHEBYSHEV_P = 6
CHEBYSHEV_TIMES = (1e-4, 1e-3, 1e-2, 1e-1)
CHEBYSHEV_FULL_TIMES = CHEBYSHEV_TIMES + (1.0,)
CHEBYSHEV_BOUNDS = {1e-4: 1e-12, 1e-3: 1e-11, 1e-2: 1e-10, 1e-1: 1e-9, 1.0: 1e-7}
SMOKE_BOUND = 1e-14

LOWRANK_SIZES = {"M1": 20_000, "M2": 40_000, "M3": 50_000}
LOWRANK_FULL_SIZES = {"M1": 200_000, "M2": 400_000, "M3": 500_000}
LOWRANK_ORDERS = {"M1": 3, "M2": 4, "M3": 2}
LOWRANK_TIMES = {
    "M1": (0.1, 1.0),
    "M2": (0.1, 1.0, 10.0),
    "M3": (1e-5, 1e-1),
}
LOWRANK_BOUNDS = {
    "M1": {0.1: 1e-12, 1.0: 1e-12},
    "M2": {0.1: 1e-7, 1.0: 1e-7, 10.0: 1e-7},
    "M3": {1e-5: 1e-8, 1e-1: 1e-3},
}

ADR_GRID = 50
ADR_EPSILON = 1e-3
ADR_ADVECTION = -0.5
ADR_REACTION = 1000.0
ADR_T_END = 0.5
ADR_TOL = 1e-7
ADR_HALVINGS = 3
ADR_REFERENCE_REFINEMENT = 16
ADR_MIN_ORDER = 3.5
ADR_CONTROL_GRID = 12
ADR_CONTROL_T_END = 0.1
ADR_CONTROL_STEPS = 8
ADR_CONTROL_BOUND = 1e-9

GALLERY_ORDER = 5
GALLERY_BOUND_FACTOR = 1e3
