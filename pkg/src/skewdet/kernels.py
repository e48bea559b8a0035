"""Exact rank kernels over prime fields: mod-p elimination and F_p[t] Bareiss.

These are the only hot numeric inner loops in the library; everything else is
object-level exact arithmetic.  Each kernel exists twice with identical
semantics:

* a numba ``@njit`` version (default when numba imports), and
* a pure numpy fallback.

Selection: the environment variable ``SKEWDET_NUMBA`` set to ``0`` forces the
numpy path, ``1`` requires numba (ImportError otherwise), anything else or
unset means "numba if available".  ``benchmarks/bench_rank.py`` compares the
two paths.

The F_p[t] kernel runs fraction-free Bareiss elimination on a 3-d coefficient
tensor: degrees of intermediate entries are minors' degrees, so they grow
linearly, and every division by the previous pivot is exact.
"""

from __future__ import annotations

import os

import numpy as np

_FLAG = os.environ.get("SKEWDET_NUMBA", "auto").strip().lower()

if _FLAG == "0":
    _NUMBA = None
else:
    try:
        import numba as _NUMBA
    except ImportError:  # pragma: no cover - env without numba
        _NUMBA = None
        if _FLAG == "1":
            raise


def active_backend() -> str:
    return "numba" if _NUMBA is not None else "numpy"


# --- mod-p matrix rank ---


def _rank_mod_p_py(mat, p):
    a = mat % p
    rows, cols = a.shape
    rank = 0
    for c in range(cols):
        piv = -1
        for r in range(rank, rows):
            if a[r, c] % p != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            tmp = a[piv].copy()
            a[piv] = a[rank]
            a[rank] = tmp
        inv = 1
        base = a[rank, c] % p
        e = p - 2
        while e > 0:
            if e & 1:
                inv = (inv * base) % p
            base = (base * base) % p
            e >>= 1
        for r in range(rank + 1, rows):
            f = (a[r, c] * inv) % p
            if f != 0:
                for j in range(c, cols):
                    a[r, j] = (a[r, j] - f * a[rank, j]) % p
        rank += 1
        if rank == rows:
            break
    return rank


def _rank_mod_p_np(mat, p):
    a = np.asarray(mat, dtype=np.int64) % p
    rows, cols = a.shape
    rank = 0
    for c in range(cols):
        nz = np.nonzero(a[rank:, c])[0]
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, c]), p - 2, p)
        f = (a[rank + 1 :, c] * inv) % p
        a[rank + 1 :] = (a[rank + 1 :] - f[:, None] * a[rank][None, :]) % p
        rank += 1
        if rank == rows:
            break
    return rank


# --- F_p[t] matrix rank via fraction-free Bareiss ---
#
# tensor: int64[rows, cols, width] of coefficients (ascending degree),
# deg: int64[rows, cols] with -1 for the zero polynomial.


def _bareiss_poly_py(tensor, deg, p, width):
    rows, cols = deg.shape
    work = tensor
    d = deg
    prev_piv = np.zeros(width, dtype=np.int64)
    prev_piv[0] = 1
    prev_deg = 0
    rank = 0
    tmp = np.zeros(2 * width, dtype=np.int64)
    for step in range(min(rows, cols)):
        piv_r = -1
        piv_c = -1
        for r in range(rank, rows):
            for c in range(rank, cols):
                if d[r, c] >= 0:
                    piv_r = r
                    piv_c = c
                    break
            if piv_r >= 0:
                break
        if piv_r < 0:
            break
        if piv_r != rank:
            for c in range(cols):
                for k in range(width):
                    t = work[piv_r, c, k]
                    work[piv_r, c, k] = work[rank, c, k]
                    work[rank, c, k] = t
                t2 = d[piv_r, c]
                d[piv_r, c] = d[rank, c]
                d[rank, c] = t2
        if piv_c != rank:
            for r in range(rows):
                for k in range(width):
                    t = work[r, piv_c, k]
                    work[r, piv_c, k] = work[r, rank, k]
                    work[r, rank, k] = t
                t2 = d[r, piv_c]
                d[r, piv_c] = d[r, rank]
                d[r, rank] = t2
        pd = d[rank, rank]
        for r in range(rank + 1, rows):
            rd = d[r, rank]
            for c in range(rank + 1, cols):
                # numerator = piv * a[r, c] - a[r, rank] * a[rank, c]
                nd = -1
                for k in range(2 * width):
                    tmp[k] = 0
                if d[r, c] >= 0:
                    for i in range(pd + 1):
                        pi = work[rank, rank, i]
                        if pi == 0:
                            continue
                        for j in range(d[r, c] + 1):
                            tmp[i + j] = (tmp[i + j] + pi * work[r, c, j]) % p
                    nd = pd + d[r, c]
                if rd >= 0 and d[rank, c] >= 0:
                    for i in range(rd + 1):
                        ri = work[r, rank, i]
                        if ri == 0:
                            continue
                        for j in range(d[rank, c] + 1):
                            tmp[i + j] = (tmp[i + j] - ri * work[rank, c, j]) % p
                    if rd + d[rank, c] > nd:
                        nd = rd + d[rank, c]
                while nd >= 0 and tmp[nd] % p == 0:
                    nd -= 1
                # exact division by the previous pivot
                if nd < 0:
                    d[r, c] = -1
                    for k in range(width):
                        work[r, c, k] = 0
                else:
                    qd = nd - prev_deg
                    lead = prev_piv[prev_deg] % p
                    inv = 1
                    base = lead
                    e = p - 2
                    while e > 0:
                        if e & 1:
                            inv = (inv * base) % p
                        base = (base * base) % p
                        e >>= 1
                    for k in range(width):
                        work[r, c, k] = 0
                    for qk in range(qd, -1, -1):
                        cq = (tmp[qk + prev_deg] * inv) % p
                        work[r, c, qk] = cq
                        if cq != 0:
                            for j in range(prev_deg + 1):
                                tmp[qk + j] = (tmp[qk + j] - cq * prev_piv[j]) % p
                    qd2 = qd
                    while qd2 >= 0 and work[r, c, qd2] == 0:
                        qd2 -= 1
                    d[r, c] = qd2
            d[r, rank] = -1
            for k in range(width):
                work[r, rank, k] = 0
        prev_deg = pd
        for k in range(width):
            prev_piv[k] = work[rank, rank, k]
        rank += 1
    return rank


def _make_numba_kernels():
    njit = _NUMBA.njit
    rank_mod_p = njit(cache=True)(_rank_mod_p_py)
    bareiss_poly = njit(cache=True)(_bareiss_poly_py)
    return rank_mod_p, bareiss_poly


if _NUMBA is not None:
    _rank_mod_p_fast, _bareiss_poly_fast = _make_numba_kernels()
else:
    _rank_mod_p_fast, _bareiss_poly_fast = None, None


def rank_mod_p(mat: np.ndarray, p: int, backend: str | None = None) -> int:
    """Rank of an integer matrix over F_p."""
    a = np.ascontiguousarray(np.asarray(mat, dtype=np.int64) % p)
    if a.size == 0:
        return 0
    use = backend or active_backend()
    if use == "numba" and _rank_mod_p_fast is not None:
        return int(_rank_mod_p_fast(a.copy(), p))
    return int(_rank_mod_p_np(a, p))


def _trim_mod(q, p) -> list[int]:
    out = [x % p for x in q]
    while out and out[-1] == 0:
        out.pop()
    return out


def rank_poly_mod_p(
    polys: list[list[tuple[int, ...]]], p: int, backend: str | None = None
) -> int:
    """Rank over F_p(t) of a matrix of F_p[t] polynomials (coefficient tuples)."""
    rows = len(polys)
    cols = len(polys[0]) if rows else 0
    if rows == 0 or cols == 0:
        return 0
    reduced = [
        [_trim_mod(q, p) for q in row] for row in polys
    ]
    dmax = 0
    for row in reduced:
        for q in row:
            dmax = max(dmax, len(q) - 1)
    # minors' degrees grow at most linearly: width bounds every intermediate
    width = min(rows, cols) * max(dmax, 1) + dmax + 2
    tensor = np.zeros((rows, cols, width), dtype=np.int64)
    deg = np.full((rows, cols), -1, dtype=np.int64)
    for r in range(rows):
        for c in range(cols):
            q = reduced[r][c]
            if q:
                tensor[r, c, : len(q)] = q
                deg[r, c] = len(q) - 1
    use = backend or active_backend()
    if use == "numba" and _bareiss_poly_fast is not None:
        return int(_bareiss_poly_fast(tensor, deg, p, width))
    return int(_bareiss_poly_py(tensor, deg, p, width))
