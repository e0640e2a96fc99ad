"""Hot boolean-matrix kernels with a numba path and a pure-numpy path.

The numba path is used when numba imports and ``TOPOHOPF_DISABLE_JIT`` is
unset (or ``0``).  Both paths are always importable through ``BACKENDS`` so
that tests and the benchmark can compare them directly.
"""

from __future__ import annotations

import itertools
import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

JIT_ENABLED = HAVE_NUMBA and os.environ.get("TOPOHOPF_DISABLE_JIT", "0") in ("", "0")


# ---------------------------------------------------------------- numpy path


def closure_np(mat: np.ndarray) -> np.ndarray:
    out = np.array(mat, dtype=np.bool_, copy=True)
    np.fill_diagonal(out, True)
    for k in range(out.shape[0]):
        out |= out[:, k : k + 1] & out[k : k + 1, :]
    return out


def upset_masks_np(mat: np.ndarray) -> np.ndarray:
    n = mat.shape[0]
    weights = np.left_shift(np.int64(1), np.arange(n, dtype=np.int64))
    rows = (mat.astype(np.int64) * weights).sum(axis=1)
    masks = np.arange(1 << n, dtype=np.int64)
    ok = np.ones(masks.shape, dtype=np.bool_)
    for i in range(n):
        has_i = (masks >> i) & 1
        ok &= (has_i == 0) | ((masks & rows[i]) == rows[i])
    return masks[ok]


def min_relabeling_np(mat: np.ndarray, atom_cls: np.ndarray, pos_cls: np.ndarray) -> np.ndarray:
    n = mat.shape[0]
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    groups = []
    for c in np.unique(pos_cls):
        members = np.flatnonzero(atom_cls == c)
        groups.append(list(itertools.permutations(members.tolist())))
    slots = [np.flatnonzero(pos_cls == c) for c in np.unique(pos_cls)]
    perms = []
    for choice in itertools.product(*groups):
        p = np.empty(n, dtype=np.int64)
        for where, members in zip(slots, choice):
            p[where] = members
        perms.append(p)
    P = np.stack(perms)
    flat = mat[P[:, :, None], P[:, None, :]].reshape(len(P), n * n)
    cand = np.arange(len(P))
    for col in range(n * n):
        vals = flat[cand, col]
        if vals.any() and not vals.all():
            cand = cand[~vals]
        if len(cand) == 1:
            break
    return P[cand[0]]


def _offdiag(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(n) if i != j]


def quasi_orders_np(n: int, chunk: int = 1 << 16) -> np.ndarray:
    pos = _offdiag(n)
    m = len(pos)
    found = []
    eye = np.eye(n, dtype=np.uint8)
    for start in range(0, 1 << m, chunk):
        codes = np.arange(start, min(start + chunk, 1 << m), dtype=np.int64)
        mats = np.broadcast_to(eye, (len(codes), n, n)).copy()
        for b, (i, j) in enumerate(pos):
            mats[:, i, j] = (codes >> b) & 1
        sq = np.matmul(mats, mats) > 0
        ok = ~(sq & (mats == 0)).any(axis=(1, 2))
        found.append(mats[ok].astype(np.bool_))
    if not found:
        return np.zeros((0, n, n), dtype=np.bool_)
    return np.concatenate(found)


# ---------------------------------------------------------------- numba path

if HAVE_NUMBA:

    @njit(cache=True)
    def closure_jit(mat):
        n = mat.shape[0]
        out = mat.copy()
        for i in range(n):
            out[i, i] = True
        for k in range(n):
            for i in range(n):
                if out[i, k]:
                    for j in range(n):
                        if out[k, j]:
                            out[i, j] = True
        return out

    @njit(cache=True)
    def upset_masks_jit(mat):
        n = mat.shape[0]
        rows = np.zeros(n, dtype=np.int64)
        for i in range(n):
            for j in range(n):
                if mat[i, j]:
                    rows[i] |= np.int64(1) << j
        total = np.int64(1) << n
        keep = np.zeros(total, dtype=np.bool_)
        count = 0
        for mask in range(total):
            good = True
            for i in range(n):
                if (mask >> i) & 1 and (mask & rows[i]) != rows[i]:
                    good = False
                    break
            if good:
                keep[mask] = True
                count += 1
        out = np.empty(count, dtype=np.int64)
        k = 0
        for mask in range(total):
            if keep[mask]:
                out[k] = mask
                k += 1
        return out

    @njit(cache=True)
    def _compare(mat, best, perm):
        # -1 if relabeling by perm is smaller than best, 0 equal, 1 larger
        n = mat.shape[0]
        for r in range(n):
            for c in range(n):
                a = mat[perm[r], perm[c]]
                b = mat[best[r], best[c]]
                if a != b:
                    return -1 if b else 1
        return 0

    @njit(cache=True)
    def min_relabeling_jit(mat, atom_cls, pos_cls):
        n = mat.shape[0]
        perm = np.zeros(n, dtype=np.int64)
        best = np.zeros(n, dtype=np.int64)
        have_best = False
        used = np.zeros(n, dtype=np.bool_)
        nxt = np.zeros(n + 1, dtype=np.int64)
        if n == 0:
            return best
        depth = 0
        nxt[0] = 0
        while depth >= 0:
            if depth == n:
                if not have_best or _compare(mat, best, perm) < 0:
                    best[:] = perm
                    have_best = True
                depth -= 1
                used[perm[depth]] = False
                continue
            a = nxt[depth]
            while a < n and (used[a] or atom_cls[a] != pos_cls[depth]):
                a += 1
            if a == n:
                depth -= 1
                if depth >= 0:
                    used[perm[depth]] = False
                continue
            nxt[depth] = a + 1
            perm[depth] = a
            used[a] = True
            depth += 1
            nxt[depth] = 0
        return best

    @njit(cache=True)
    def _quasi_orders_jit(n, pos_i, pos_j):
        m = pos_i.shape[0]
        hits = np.empty(np.int64(1) << m, dtype=np.int64)
        rows = np.empty(n, dtype=np.int64)
        count = 0
        for code in range(np.int64(1) << m):
            for i in range(n):
                rows[i] = np.int64(1) << i
            for b in range(m):
                if (code >> b) & 1:
                    rows[pos_i[b]] |= np.int64(1) << pos_j[b]
            good = True
            for i in range(n):
                for k in range(n):
                    if (rows[i] >> k) & 1 and rows[k] & ~rows[i]:
                        good = False
                        break
                if not good:
                    break
            if good:
                hits[count] = code
                count += 1
        out = np.zeros((count, n, n), dtype=np.bool_)
        for t in range(count):
            for i in range(n):
                out[t, i, i] = True
            for b in range(m):
                if (hits[t] >> b) & 1:
                    out[t, pos_i[b], pos_j[b]] = True
        return out

    def quasi_orders_jit(n: int) -> np.ndarray:
        pos = _offdiag(n)
        pi = np.array([p[0] for p in pos], dtype=np.int64)
        pj = np.array([p[1] for p in pos], dtype=np.int64)
        return _quasi_orders_jit(n, pi, pj)


BACKENDS: dict[str, dict] = {
    "numpy": {
        "closure": closure_np,
        "upset_masks": upset_masks_np,
        "min_relabeling": min_relabeling_np,
        "quasi_orders": quasi_orders_np,
    }
}
if HAVE_NUMBA:
    BACKENDS["numba"] = {
        "closure": closure_jit,
        "upset_masks": upset_masks_jit,
        "min_relabeling": min_relabeling_jit,
        "quasi_orders": quasi_orders_jit,
    }

ACTIVE = "numba" if JIT_ENABLED else "numpy"
_active = BACKENDS[ACTIVE]

closure = _active["closure"]
upset_masks = _active["upset_masks"]
min_relabeling = _active["min_relabeling"]
quasi_orders = _active["quasi_orders"]
