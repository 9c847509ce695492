"""Kernel selection: compiled extension when present, pure Python otherwise.

Set URYGRID_PURE=1 to force the fallback even when the extension is built.
``BACKEND`` reports which implementation is live.
"""

import os

if os.environ.get("URYGRID_PURE") == "1":
    from ._fallback import (BACKEND, INF, floyd_warshall_capped,
                            graev_agree_exhaustive, graev_norm_bruteforce,
                            graev_norm_dp, is_bikatetov, iter_pairings,
                            minplus_product)
else:
    try:
        from ._ext import (BACKEND, INF, floyd_warshall_capped,
                           graev_agree_exhaustive, graev_norm_bruteforce,
                           graev_norm_dp, is_bikatetov, minplus_product)
        from ._fallback import iter_pairings
    except ImportError:
        from ._fallback import (BACKEND, INF, floyd_warshall_capped,
                                graev_agree_exhaustive, graev_norm_bruteforce,
                                graev_norm_dp, is_bikatetov, iter_pairings,
                                minplus_product)

__all__ = [
    "BACKEND",
    "INF",
    "floyd_warshall_capped",
    "graev_agree_exhaustive",
    "graev_norm_bruteforce",
    "graev_norm_dp",
    "is_bikatetov",
    "iter_pairings",
    "minplus_product",
]
