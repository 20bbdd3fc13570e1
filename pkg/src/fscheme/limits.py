"""Global size and search bounds. Read at call time, so tests may patch them."""

MAX_ORDER = 256
MAX_OPEN_POINTS = 20
MAX_COVERS = 200_000
REWRITE_MAX_DEGREE = 12
REWRITE_MAX_STEPS = 10_000
