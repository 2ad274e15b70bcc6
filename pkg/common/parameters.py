# common/parameters.py

import math

# --- Named Inputs ---

# Plane x + y + z = 0 in R^3: its cube section is the regular hexagon of area 3*sqrt(3).
HEXAGON_BASIS = [
    [1.0, -1.0, 0.0],
    [0.0, 1.0, -1.0],
]

# Diagonal line of the square [-1, 1]^2: a segment of length 2*sqrt(2).
DIAGONAL_BASIS = [[1.0 / math.sqrt(2.0), 1.0 / math.sqrt(2.0)]]

# --- Seeded Section Corpora ---

# Ambient cube dimensions N drawn for each section dimension n
SECTION_FAMILIES = {
    2: (3, 4, 5),
    3: (4, 5, 6),
}

# Number of random sections per section dimension in the full corpus
SECTION_COUNTS = {
    2: 200,
    3: 100,
}

# Smaller corpus used by the default (non-slow) test run
QUICK_SECTION_COUNTS = {
    2: 12,
    3: 6,
}

CORPUS_SEED = 20240601

# --- Lemma Studies ---

# Fixed |s2 s3| values for the spherical-triangle monotonicity curves
CURVE_C_VALUES = (0.2, 0.4, math.pi / 4, 1.2, 1.5)
CURVE_T_MIN = 0.01
CURVE_T_MAX = math.pi / 2 - 0.01
CURVE_STEPS = 200

# Largest ambient dimension of the random unit-vector families
OBTUSE_MAX_DIM = 6

# Uniform samples drawn inside each random orthoscheme pair
CONTRACTION_POINTS = 100

# Ball radii for the orthoscheme volume corollary
CONTRACTION_RADII = (0.5, 1.0, 2.0)

# Dimensions exercised by the orthoscheme contraction lemma
CONTRACTION_DIMS = (2, 3, 4, 5, 6)
