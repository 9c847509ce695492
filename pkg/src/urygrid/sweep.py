"""Partitioned exhaustive word sweeps.

The exhaustive dp-versus-enumeration check partitions cleanly by first
symbol, so it can fan out over processes. Worker count comes from the
URYGRID_WORKERS environment variable (default 1: no processes spawned).
"""

from __future__ import annotations

import os
from multiprocessing import get_context

from . import _kernels
from .errors import ValidationError


def worker_count() -> int:
    raw = os.environ.get("URYGRID_WORKERS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValidationError(f"URYGRID_WORKERS must be an integer, got {raw!r}") from None
    return max(1, n)


def _job(args):
    nl, dist, weights, max_len, prefix_letters, prefix_signs = args
    return _kernels.graev_agree_exhaustive(nl, dist, weights, max_len,
                                           prefix_letters, prefix_signs)


def graev_agree_exhaustive(nl: int, dist, weights, max_len: int,
                           workers: int | None = None) -> tuple[int, int]:
    """(words checked, mismatches) over every signed word of length <=
    max_len; exact partition of the same enumeration when workers > 1."""
    if workers is None:
        workers = worker_count()
    if workers <= 1 or max_len == 0:
        return _kernels.graev_agree_exhaustive(nl, dist, weights, max_len)
    checked = 1
    mismatches = 0
    if _kernels.graev_norm_dp([], [], nl, dist, weights) != \
            _kernels.graev_norm_bruteforce([], [], nl, dist, weights):
        mismatches += 1
    jobs = [(nl, dist, weights, max_len, [letter], [sign])
            for letter in range(nl) for sign in (1, -1)]
    with get_context("fork").Pool(workers) as pool:
        for c, m in pool.map(_job, jobs):
            checked += c
            mismatches += m
    return checked, mismatches
