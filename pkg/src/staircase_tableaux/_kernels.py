"""Compiled twin of the diagonal joint-count walk.

Same column-major DFS and the same pruning as the Python implementation in
``enumeration``; only the bookkeeping is lowered to flat int64 arrays so the
n = 9 and n = 10 sweeps finish in seconds.  Importing this module requires
numba; callers fall back to the Python walk when it is missing.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _walk(total, n, width, span, row_of, on_diag, on_k, flat):
    mask = np.zeros(total + 1, dtype=np.int64)
    blocked = np.zeros(total + 1, dtype=np.int64)
    na = np.zeros(total + 1, dtype=np.int64)
    nb = np.zeros(total + 1, dtype=np.int64)
    ca = np.zeros(total + 1, dtype=np.int64)
    cb = np.zeros(total + 1, dtype=np.int64)
    nxt = np.zeros(total + 1, dtype=np.int64)
    d = 0
    while d >= 0:
        if d == total:
            idx = ((ca[d] * width + cb[d]) * span + (n - na[d])) * span + (n - nb[d])
            flat[idx] += 1
            d -= 1
            continue
        c = nxt[d]
        if c > 2:
            d -= 1
            continue
        nxt[d] = c + 1
        bit = np.int64(1) << row_of[d]
        hit = on_k[d]
        if c == 0:
            if blocked[d] != 0:
                continue
            nmask = mask[d] | bit
            nna = na[d] + 1
            nnb = nb[d]
            nca = ca[d] + hit
            ncb = cb[d]
        elif c == 1:
            if mask[d] & bit:
                continue
            nmask = mask[d] | bit
            nna = na[d]
            nnb = nb[d] + 1
            nca = ca[d]
            ncb = cb[d] + hit
        else:
            if on_diag[d] != 0:
                continue
            nmask = mask[d]
            nna = na[d]
            nnb = nb[d]
            nca = ca[d]
            ncb = cb[d]
        if on_diag[d] != 0:
            nblocked = 0
        elif c < 2:
            nblocked = 1
        else:
            nblocked = blocked[d]
        d += 1
        mask[d] = nmask
        blocked[d] = nblocked
        na[d] = nna
        nb[d] = nnb
        ca[d] = nca
        cb[d] = ncb
        nxt[d] = 0
    return flat


@njit(cache=True)
def _walk_profile(total, n, span, row_of, on_diag, req, flat):
    mask = np.zeros(total + 1, dtype=np.int64)
    blocked = np.zeros(total + 1, dtype=np.int64)
    na = np.zeros(total + 1, dtype=np.int64)
    nb = np.zeros(total + 1, dtype=np.int64)
    nxt = np.zeros(total + 1, dtype=np.int64)
    d = 0
    while d >= 0:
        if d == total:
            flat[(n - na[d]) * span + (n - nb[d])] += 1
            d -= 1
            continue
        c = nxt[d]
        if c > 2:
            d -= 1
            continue
        nxt[d] = c + 1
        bit = np.int64(1) << row_of[d]
        want = req[d]
        if c == 0:
            if blocked[d] != 0 or (want != -1 and want != 0 and want != 3):
                continue
            nmask = mask[d] | bit
            nna = na[d] + 1
            nnb = nb[d]
        elif c == 1:
            if mask[d] & bit or (want != -1 and want != 1 and want != 3):
                continue
            nmask = mask[d] | bit
            nna = na[d]
            nnb = nb[d] + 1
        else:
            if on_diag[d] != 0 or (want != -1 and want != 2):
                continue
            nmask = mask[d]
            nna = na[d]
            nnb = nb[d]
        if on_diag[d] != 0:
            nblocked = 0
        elif c < 2:
            nblocked = 1
        else:
            nblocked = blocked[d]
        d += 1
        mask[d] = nmask
        blocked[d] = nblocked
        na[d] = nna
        nb[d] = nnb
        nxt[d] = 0
    return flat


def weight_profile_arr(n: int, req: list[int]) -> np.ndarray:
    rows = []
    diag = []
    for col in range(1, n + 1):
        for row in range(1, n + 2 - col):
            rows.append(row)
            diag.append(1 if row + col == n + 1 else 0)
    total = len(rows)
    span = n + 1
    flat = np.zeros(span * span, dtype=np.int64)
    return _walk_profile(
        total,
        n,
        span,
        np.asarray(rows, dtype=np.int64),
        np.asarray(diag, dtype=np.int64),
        np.asarray(req, dtype=np.int64),
        flat,
    )


def diagonal_joint_profile_arr(n: int, k: int) -> np.ndarray:
    rows = []
    diag = []
    onk = []
    for col in range(1, n + 1):
        for row in range(1, n + 2 - col):
            rows.append(row)
            diag.append(1 if row + col == n + 1 else 0)
            onk.append(1 if row + col == n - k + 2 else 0)
    total = len(rows)
    width = n - k + 2
    span = n + 1
    flat = np.zeros(width * width * span * span, dtype=np.int64)
    return _walk(
        total,
        n,
        width,
        span,
        np.asarray(rows, dtype=np.int64),
        np.asarray(diag, dtype=np.int64),
        np.asarray(onk, dtype=np.int64),
        flat,
    )
