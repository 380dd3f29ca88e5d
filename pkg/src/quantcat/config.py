"""Runtime knobs.

QUANTCAT_NUMBA=0 in the environment selects the pure-numpy kernel path
even when numba is installed (the two paths are benchmark-compared in
benchmarks/bench_kernels.py and equivalence-tested in the suite).
"""

from __future__ import annotations

import os

# Carrier-size cap per construction; exceeding it raises CapExceeded.
DEFAULT_CAP = 20000

# Enumeration work budget: the backtracking search performs at most this
# many constraint-table lookups before giving up with a structured skip.
# Bounds the time to *discover* that a tower is over the cap; carriers the
# stock instance families can actually hold stay far below it.
ENUM_OPS_BUDGET = 600_000_000

# Hom matrices larger than this are not materialized; constructions that
# would need one are skipped (a carrier of n elements needs 4*n*n bytes).
HOM_BYTES_LIMIT = 256 * 2**20

# When True, constructions assert their defining adjunctions and
# re-validate derived categories (bounded by VERIFY_SIZE_LIMIT).
VERIFY = True

# Carriers larger than this skip the O(n^3) transitivity re-check;
# reflexivity is always checked.
VERIFY_SIZE_LIMIT = 800


def numba_enabled() -> bool:
    if os.environ.get("QUANTCAT_NUMBA", "1") == "0":
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True
