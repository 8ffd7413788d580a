# Common configuration settings used across all environments

# Output
OUTPUT_DIR = "runs"
DEFAULT_SEED = 20240601

# Linear solver
SOLVER_RTOL = 1e-10
SOLVER_MAXITER = 5000
ELLIPTICITY_MIN = 1e-8
ELLIPTICITY_SAMPLES = 64

# Kondratiev quadrature
KONDRATIEV_REFINE_TOL = 1e-6
KONDRATIEV_MAX_DEPTH = 20
GAUSS_POINTS = 4

# Operator pencils
PENCIL_SEARCH_HALFWIDTH = 4.0
PENCIL_GRID_STEP = 0.01
PENCIL_GRID_OFFSET = 0.37  # fraction of a step
PENCIL_DETERMINANT_TOL = 1e-10
PENCIL_IMAG_WINDOW = 2.0
PENCIL_ODE_RTOL = 1e-12
PENCIL_ODE_ATOL = 1e-14

# Smoothness fits
FIT_EXCLUDE_COARSE = 1  # level 0 is scaling-dominated
FIT_EXCLUDE_FINEST = 2
FIT_MIN_LEVELS = 3
MIN_R_SQUARED = 0.9
NTERM_WINDOW = (0.002, 0.05)  # fraction of the coefficient count
EARLY_TIME_FRACTION = 0.05

# Wavelets
DEFAULT_FILTER_ORDER = 3
