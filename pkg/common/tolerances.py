# common/tolerances.py

# ==============================================================================
# VAALER-CERTIFY: FIXED NUMERIC TOLERANCES (double precision, n <= 8)
# ==============================================================================

# --- 1. LINEAR ALGEBRA ---
# Residual norm below which Gram-Schmidt drops a vector as dependent.
EPS_RANK = 1e-9
# Orthonormality slack for AffineSpan directions and projection residuals.
EPS_ORTH = 1e-12

# --- 2. POLYTOPE CONSTRUCTION ---
# Smallest admissible offset: the origin must be strictly interior.
EPS_INT = 1e-9
# Constraint slack for feasibility and for the active set of a vertex.
EPS_FEAS = 1e-9
# Vertices closer than this are one vertex (looser than EPS_FEAS on purpose).
MERGE_TOL = 1e-8
# Variational-inequality slack for closest points in faces.
EPS_VARIATIONAL = 1e-8

# --- 3. SUBDIVISION ---
# vol A < EPS_DEG_FACTOR * R^n marks a degenerate simplex (R = circumradius).
EPS_DEG_FACTOR = 1e-12
# Origin anchor a_0 = b_0 = 0.
EPS_ORIGIN = 1e-12
# Orthogonality of the B edge chain and orthoscheme invariants.
EPS_CHAIN = 1e-9
# Barycentric margin for the covering test.
COVER_MARGIN = 1e-9
# Relative volume gap allowed between the subdivision and P.
COVER_REL_GAP = 1e-8

# --- 4. CERTIFICATES ---
# Hypothesis margins may dip this far below zero.
EPS_HYPOTHESIS = 1e-9
# eps_cert = CERT_REL * claimed_bound
CERT_REL = 1e-8
# |sum(omega) - 1| allowed across non-degenerate cones.
OMEGA_SUM_TOL = 1e-8
# Number of standard errors granted to Monte Carlo quantities.
MC_SIGMAS = 3.0
# Fewer hits than this leave a hit-rate estimate unresolved; its error is then
# floored at 1 / count, so 3 standard errors reach the rule-of-three bound.
MC_MIN_HITS = 10

# --- 5. LEMMA CHECKS ---
CONTRACTION_SLACK = 1e-12
STEPWISE_SLACK = 1e-10
STEP_ORTHOGONALITY = 1e-8
CIRCLE_MOVE_SLACK = 1e-8
OBTUSE_SLACK = 1e-12
UNIT_NORM_TOL = 1e-9
MONOTONE_SLACK = 1e-10

# --- 6. QUADRATURE ---
QUAD_ABS_TOL = 1e-10
