"""Brute-force ground truth: projective point counts and zeta/count consistency."""
from __future__ import annotations

import hashlib
import itertools
import json
import logging
import os
import time
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from . import _kernels
from .descent import FormDatum, HomogeneousPoly, trace_form
from .gf import Field, extension

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 5 * 10**8


class BudgetExceeded(RuntimeError):
    def __init__(self, required: int, budget: int):
        super().__init__(f"needs about {required:.3g} evaluations, budget is {budget:.3g} "
                         "(raise it with --budget or FERMAT_BUDGET)")
        self.required, self.budget = required, budget


class InconsistentZeta(ArithmeticError):
    """A zeta function whose expansion gives a negative point count."""


class VerificationMismatch(AssertionError):
    pass


def default_budget() -> int:
    env = os.environ.get("FERMAT_BUDGET")
    return int(float(env)) if env else DEFAULT_BUDGET


@dataclass(frozen=True)
class CountReport:
    poly: HomogeneousPoly
    field: Field
    ext_degree: int
    count: int
    elapsed: float
    backend: str = "numba"

    def __post_init__(self):
        Q = self.field.order
        bound = (Q**self.poly.n - 1) // (Q - 1)
        if not 0 <= self.count <= bound:
            raise AssertionError(f"count {self.count} outside [0, {bound}]")

    def to_json(self) -> dict:
        digest = hashlib.sha256(json.dumps(self.poly.to_json(), sort_keys=True).encode()).hexdigest()[:16]
        return {
            "poly_hash": digest,
            "field": self.field.to_json(),
            "ext_degree": self.ext_degree,
            "count": self.count,
            "elapsed": round(self.elapsed, 6),
            "backend": self.backend,
        }


def count_points(poly: HomogeneousPoly, ext_degree: int = 1, budget: int | float | None = None,
                 backend: str | None = None, progress=None) -> CountReport:
    """Number of zeros of ``poly`` in P^{n-1}(F_{q^i}) by chart enumeration."""
    base = poly.field
    E = extension(base, ext_degree)
    Q = E.order
    work = (Q**poly.n - 1) // (Q - 1)
    budget = default_budget() if budget is None else int(budget)
    if work > budget:
        raise BudgetExceeded(work, budget)
    name = _kernels.backend_name(backend)
    t0 = time.perf_counter()
    add, mul, pw = _kernels.field_tables(E, poly.m)
    emb = E.embedding(base)
    items = sorted(poly.terms.items(), reverse=True)
    exps = np.array([ex for ex, _ in items], dtype=np.int64).reshape(len(items), poly.n)
    coeffs = np.array([emb(c) for _, c in items], dtype=np.int64)
    count = _kernels.count_projective(exps, coeffs, add, mul, pw, poly.m, name, progress)
    elapsed = time.perf_counter() - t0
    log.debug("counted %d points over F_%d in %.3fs (%s)", count, Q, elapsed, name)
    return CountReport(poly, E, ext_degree, count, elapsed, name)


def power_sums(poly: Sequence[int], k: int) -> list[int]:
    """s_1..s_k with poly = prod (1 - alpha t) and s_j = sum alpha^j (Newton's identities)."""
    c = list(poly) + [0] * (k + 1)
    if c[0] != 1:
        raise ValueError("factor must have constant term 1")
    s = [0] * (k + 1)
    for j in range(1, k + 1):
        s[j] = -j * c[j] - sum(c[i] * s[j - i] for i in range(1, j))
    return s[1:]


def zeta_to_counts(z, k: int) -> list[int]:
    """N_1..N_k from log zeta = sum N_i t^i / i."""
    if k < 1:
        raise ValueError("k must be positive")
    counts = [0] * k
    for f in z.denominator_factors:
        for i, s in enumerate(power_sums(f, k)):
            counts[i] += s
    for f in z.numerator_factors:
        for i, s in enumerate(power_sums(f, k)):
            counts[i] -= s
    for i, c in enumerate(counts, 1):
        if c < 0:
            raise InconsistentZeta(f"N_{i} = {c} is negative")
    return counts


@dataclass
class VerifyReport:
    datum: FormDatum
    predicted: list[int]
    counted: list[int]
    timings: list[float] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.predicted == self.counted

    def lines(self) -> list[str]:
        out = []
        for i, (a, b) in enumerate(zip(self.predicted, self.counted), 1):
            out.append(f"N_{i}: zeta {a}  counted {b}  {'ok' if a == b else 'MISMATCH'}")
        return out

    def to_json(self) -> dict:
        return {
            "datum": self.datum.to_json(),
            "predicted": self.predicted,
            "counted": self.counted,
            "ok": self.ok,
        }


def verify(d: FormDatum, depth: int, budget: int | float | None = None, chi=None, iota: int | None = None,
           backend: str | None = None, progress=None) -> VerifyReport:
    """Compare the Jacobi-sum zeta of ``d`` with brute-force counts of its trace form."""
    from .spectral import zeta

    z = zeta(d, chi, iota)
    predicted = zeta_to_counts(z, depth)
    P = trace_form(d)
    counted, timings = [], []
    for i in range(1, depth + 1):
        rep = count_points(P, i, budget, backend, progress)
        counted.append(rep.count)
        timings.append(rep.elapsed)
    return VerifyReport(d, predicted, counted, timings)


# ---------------------------------------------------------------------------
# automorphisms by brute force


def linear_stabilizer_order(poly: HomogeneousPoly) -> int:
    """#{A in GL_n(F_q) : P(A X) = P(X)} by exhaustive search over prime q.

    Columns are pruned by P(A e_j) = P(e_j) and by agreement of P(A .) with P on
    the span of the columns chosen so far.  Since m < q, agreement on all of
    F_q^n is equality of polynomials.
    """
    F = poly.field
    if F.k != 1:
        raise ValueError("stabilizer search is implemented for prime fields")
    q, n = F.order, poly.n
    if poly.m >= q:
        raise ValueError("point evaluation decides equality only when m < q")
    pts = np.array(list(itertools.product(range(q), repeat=n)), dtype=np.int64)
    exps = np.array(list(poly.terms), dtype=np.int64)
    coeffs = np.array(list(poly.terms.values()), dtype=np.int64)

    def values(points: np.ndarray) -> np.ndarray:
        acc = np.zeros(len(points), dtype=np.int64)
        for ex, c in zip(exps, coeffs):
            term = np.full(len(points), c, dtype=np.int64)
            for j, e in enumerate(ex):
                if e:
                    term = term * pow_mod(points[:, j], e, q) % q
            acc = (acc + term) % q
        return acc

    weights = q ** np.arange(n - 1, -1, -1)
    table = values(pts)
    index = lambda v: (v % q) @ weights  # noqa: E731

    unit_vals = [table[q ** (n - 1 - j)] for j in range(n)]
    cands = [pts[table == unit_vals[j]] for j in range(n)]

    count = 0

    def extend(cols: list[np.ndarray]) -> None:
        nonlocal count
        k = len(cols)
        if k == n:
            count += 1
            return
        for v in cands[k]:
            new = cols + [v]
            M = np.array(new)
            if _rank_mod(M, q) < k + 1:
                continue
            coefs = np.array(list(itertools.product(range(q), repeat=k + 1)), dtype=np.int64)
            images = coefs @ M % q
            src = np.zeros((len(coefs), n), dtype=np.int64)
            src[:, : k + 1] = coefs
            if np.array_equal(table[index(images)], table[index(src)]):
                extend(new)

    extend([])
    return count


def pow_mod(a: np.ndarray, e: int, q: int) -> np.ndarray:
    out = np.ones_like(a)
    for _ in range(e):
        out = out * a % q
    return out


def _rank_mod(M: np.ndarray, p: int) -> int:
    A = M.copy() % p
    rows, cols = A.shape
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i, c]), None)
        if piv is None:
            continue
        A[[r, piv]] = A[[piv, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        for i in range(rows):
            if i != r and A[i, c]:
                A[i] = (A[i] - A[i, c] * A[r]) % p
        r += 1
    return r
