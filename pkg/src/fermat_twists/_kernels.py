"""Point-counting kernels: a numba implementation and a pure-numpy fallback.

Select with FERMAT_KERNEL=numba|numpy (default: numba when importable).
Both count zeros of a homogeneous polynomial on one standard chart of
projective space, i.e. points (0, ..., 0, 1, x_{j+1}, ..., x_{n-1}).
"""
from __future__ import annotations

import os
import warnings

import numpy as np

try:
    from numba import njit, prange

    HAVE_NUMBA = True
    # old system TBB libraries make numba fall back to another threading layer noisily
    warnings.filterwarnings("ignore", message="The TBB threading layer")
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

TABLE_LIMIT = 4096
PREFIX_CHUNK = 1 << 15


def backend_name(requested: str | None = None) -> str:
    name = (requested or os.environ.get("FERMAT_KERNEL") or ("numba" if HAVE_NUMBA else "numpy")).lower()
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown kernel backend {name!r}; expected 'numba' or 'numpy'")
    if name == "numba" and not HAVE_NUMBA:
        raise ValueError("numba backend requested but numba is not installed")
    return name


def field_tables(field, m: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(add, mul, pw) for ``field``: Q x Q addition and multiplication tables, pw[v, e] = v^e for e <= m."""
    Q = field.order
    if Q > TABLE_LIMIT:
        raise ValueError(f"field of order {Q} exceeds the kernel table limit {TABLE_LIMIT}")
    p, k = field.p, field.k
    idx = np.arange(Q, dtype=np.int64)
    digits = np.empty((Q, k), dtype=np.int64)
    rest = idx.copy()
    for i in range(k):
        digits[:, i] = rest % p
        rest //= p
    add = np.zeros((Q, Q), dtype=np.int64)
    for i in range(k):
        add += ((digits[:, i][:, None] + digits[:, i][None, :]) % p) * p**i
    mul = np.zeros((Q, Q), dtype=np.int64)
    if k == 1:
        mul[:] = (idx[:, None] * idx[None, :]) % p
    else:
        exp, log = field.tables()
        lg = log[1:]
        mul[1:, 1:] = exp[(lg[:, None] + lg[None, :]) % (Q - 1)]
    pw = np.empty((Q, m + 1), dtype=np.int64)
    pw[:, 0] = 1
    for e in range(1, m + 1):
        pw[:, e] = mul[pw[:, e - 1], idx]
    dt = np.int16 if Q < 2**15 else np.int32
    return add.astype(dt), mul.astype(dt), pw.astype(dt)


def chart_terms(exps: np.ndarray, coeffs: np.ndarray, j: int) -> tuple[np.ndarray, np.ndarray]:
    """Terms surviving on chart j (no variable before j occurs); exponents of the free variables only."""
    keep = exps[:, :j].sum(axis=1) == 0 if j else np.ones(len(exps), dtype=bool)
    return np.ascontiguousarray(exps[keep, j + 1:]), np.ascontiguousarray(coeffs[keep])


# ---------------------------------------------------------------------------
# numpy


def count_chart_numpy(exps, coeffs, add, mul, pw, m: int) -> int:
    """Zeros of sum_t coeffs[t] * prod_k x_k^exps[t, k] over all x in F_Q^f."""
    Q = add.shape[0]
    T, f = exps.shape
    if T == 0:
        return Q**f
    if f == 0:
        acc = 0
        for c in coeffs:
            acc = add[acc, c]
        return int(acc == 0)
    last = exps[:, f - 1]
    nprefix = Q ** (f - 1)
    total = 0
    for start in range(0, nprefix, PREFIX_CHUNK):
        ids = np.arange(start, min(start + PREFIX_CHUNK, nprefix), dtype=np.int64)
        digits = np.empty((len(ids), f - 1), dtype=np.int64)
        rest = ids
        for k in range(f - 1):
            digits[:, k] = rest % Q
            rest = rest // Q
        C = np.zeros((m + 1, len(ids)), dtype=np.int64)
        for t in range(T):
            val = np.full(len(ids), coeffs[t], dtype=np.int64)
            for k in range(f - 1):
                e = exps[t, k]
                if e:
                    val = mul[val, pw[digits[:, k], e]]
            C[last[t]] = add[C[last[t]], val]
        for v in range(Q):
            s = np.zeros(len(ids), dtype=np.int64)
            for e in range(m + 1):
                s = add[s, mul[C[e], pw[v, e]]]
            total += int(np.count_nonzero(s == 0))
    return total


# ---------------------------------------------------------------------------
# numba

if HAVE_NUMBA:

    @njit(cache=True)
    def _count_prefix_range(exps, coeffs, add, mul, pw, m, first_lo, first_hi):
        Q = add.shape[0]
        T, f = exps.shape
        nrest = 1
        for _ in range(f - 2):
            nrest *= Q
        digits = np.zeros(f - 1, dtype=np.int64)
        C = np.zeros(m + 1, dtype=np.int64)
        total = 0
        for first in range(first_lo, first_hi):
            for r in range(nrest):
                digits[0] = first
                rest = r
                for k in range(1, f - 1):
                    digits[k] = rest % Q
                    rest //= Q
                for e in range(m + 1):
                    C[e] = 0
                for t in range(T):
                    val = np.int64(coeffs[t])
                    for k in range(f - 1):
                        e = exps[t, k]
                        if e != 0:
                            val = mul[val, pw[digits[k], e]]
                    le = exps[t, f - 1]
                    C[le] = add[C[le], val]
                for v in range(Q):
                    s = np.int64(0)
                    for e in range(m + 1):
                        if C[e] != 0:
                            s = add[s, mul[C[e], pw[v, e]]]
                    if s == 0:
                        total += 1
        return total

    @njit(parallel=True, cache=True)
    def _count_chart_parallel(exps, coeffs, add, mul, pw, m):
        Q = add.shape[0]
        out = np.zeros(Q, dtype=np.int64)
        for first in prange(Q):
            out[first] = _count_prefix_range(exps, coeffs, add, mul, pw, m, first, first + 1)
        return out.sum()

    @njit(cache=True)
    def _count_last_only(coeffs, last, add, mul, pw, m):
        Q = add.shape[0]
        C = np.zeros(m + 1, dtype=np.int64)
        for t in range(coeffs.shape[0]):
            C[last[t]] = add[C[last[t]], coeffs[t]]
        total = 0
        for v in range(Q):
            s = np.int64(0)
            for e in range(m + 1):
                s = add[s, mul[C[e], pw[v, e]]]
            if s == 0:
                total += 1
        return total


def count_chart_numba(exps, coeffs, add, mul, pw, m: int) -> int:
    Q = add.shape[0]
    T, f = exps.shape
    if T == 0:
        return Q**f
    if f == 0:
        acc = 0
        for c in coeffs:
            acc = add[acc, c]
        return int(acc == 0)
    exps = exps.astype(np.int64)
    coeffs = coeffs.astype(np.int64)
    if f == 1:
        return int(_count_last_only(coeffs, np.ascontiguousarray(exps[:, 0]), add, mul, pw, m))
    return int(_count_chart_parallel(exps, coeffs, add, mul, pw, m))


def count_projective(exps: np.ndarray, coeffs: np.ndarray, add, mul, pw, m: int, backend: str | None = None,
                     progress=None) -> int:
    """Projective zeros over F_Q summed over the n standard charts.

    ``progress(chart, n_charts, running_total)`` is called after each chart.
    """
    fn = count_chart_numba if backend_name(backend) == "numba" else count_chart_numpy
    n = exps.shape[1]
    total = 0
    for j in range(n):
        e, c = chart_terms(exps, coeffs, j)
        total += fn(e, c, add, mul, pw, m)
        if progress is not None:
            progress(j + 1, n, total)
    return total
