import os

# every Subspace built during the tests re-checks its dimension by rank
os.environ.setdefault("WONDERFUL_VALIDATE", "1")
