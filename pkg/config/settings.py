# config/settings.py

"""
Numerical defaults for the RG engine.
These values are editable directly
without changing logic elsewhere.
"""

# -------- ADAPTIVE ODE INTEGRATOR --------
REL_TOL = 1e-9
ABS_TOL = 1e-12
INITIAL_STEP = 1e-3
MAX_STEP = 0.25
MAX_STEPS = 200_000

# Flow aborts once any coupling magnitude exceeds this bound
DIVERGENCE_BOUND = 1e6

# Required step below this -> stiffness error
MIN_STEP = 1e-14

# PI step controller (exponents for the 5th-order error estimate)
PI_ALPHA = 0.7 / 5.0
PI_BETA = 0.4 / 5.0
STEP_SAFETY = 0.9
STEP_GROWTH_MAX = 5.0
STEP_SHRINK_MIN = 0.2

# -------- ROOT FINDING --------
NEWTON_TOL = 1e-12
NEWTON_MAX_ITER = 50

# -------- EIGENSOLVER --------
# QR sweeps allowed per eigenvalue before giving up (30n total)
QR_ITER_PER_EIGENVALUE = 30
DENSE_MAX_DIM = 512
SMALL_MAX_DIM = 8
# Newton polish of characteristic-polynomial roots against the matrix
POLISH_STEPS = 4
POLISH_MAX_STEP = 1e-3

# -------- SPECIAL FUNCTIONS --------
BESSEL_I0_SERIES_LIMIT = 30.0   # power series below, asymptotic expansion above
BESSEL_J0_SERIES_LIMIT = 14.0   # power series below, Hankel expansion above
BESSEL_OVERFLOW_LIMIT = 700.0

# -------- QUADRATURE --------
QUADRATURE_MIN_POINTS = 16
TOY_QUADRATURE_POINTS = 256
TOY_MIN_POINTS = 64

# -------- QUANTUM CLOCK MODEL --------
FOCK_MAX_CUTOFF = 512
# imaginary-part tolerance, relative to the spectral radius
IMAG_TOL_FACTOR = 1e-8
EXCEPTIONAL_TOL = 1e-12

# -------- RG FLOW --------
DEFAULT_D = 3.0
DEFAULT_PHASE = "broken"
DEFAULT_CLOCK_ORDER = 4
# stop integrating once ||beta||_inf falls below this radius
FIXED_POINT_RADIUS = 1e-12
# below this distance from d = 2, f(d) switches to its series form
F_SERIES_WINDOW = 1e-6
# exponent_report flags a fixed-point collision below this d - 2
COLLISION_WARNING_EPS = 1e-2
# central-difference step used to validate analytic Jacobians
FD_STEP = 1e-6

# -------- WALKING (d = 2, PT broken) --------
WALKING_B = 1.0            # c^2 = b (K - K_c)
WALKING_X_INIT = 0.1       # start at X(0) = -X_INIT
WALKING_THRESHOLD = 1.0    # X(l*) ~ O(1)
# threshold sensitivity check reruns the scan at this fraction of the threshold
WALKING_SENSITIVITY_FRACTION = 0.5
WALKING_L_MAX = 1e4
XI_MIN_SAMPLES = 4
XI_DEFAULT_GRID = (1e-3, 1e-2, 8)   # log-spaced (start, stop, count)

# toy walking: scale_ratio = exp(-TOY_WALKING_CONST / sqrt(alpha* - alpha))
TOY_WALKING_CONST = 3.141592653589793

# invariant checks run tighter than the flow default
INVARIANT_REL_TOL = 1e-11
INVARIANT_ABS_TOL = 1e-14
# perturbative region |X|, |Y|, |Y_tilde| <= radius for invariant checks
WALKING_ESCAPE_RADIUS = 1.0
