"""Jacobi sums, Frobenius blocks on the character lines, and zeta assembly."""
from __future__ import annotations

import functools
import itertools
import math
import random
import threading
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .cyclo import CyclotomicInt, CycPolynomial, cycpoly_product, to_integer_poly
from .descent import FormDatum, WreathElement, base_field, frobenius_cocycle, trace_form
from .gf import AlgebraSpec, CharacterSpec, Field, extension

DIRECT_LIMIT = 10**7


class SpectralError(ValueError):
    pass


# ---------------------------------------------------------------------------
# character vectors


def characters(m: int, n: int) -> list[tuple[int, ...]]:
    """A^m_n: vectors with every entry nonzero mod m and entry sum 0 mod m, lexicographic."""
    return [a for a in itertools.product(range(1, m), repeat=n) if sum(a) % m == 0]


def orbits(chars: Sequence[Sequence[int]]) -> list[list[tuple[int, ...]]]:
    """S_n-orbits, each listed lexicographically, ordered by sorted representative."""
    groups: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for a in chars:
        groups.setdefault(tuple(sorted(a)), []).append(tuple(a))
    return [sorted(groups[k]) for k in sorted(groups)]


def orbit_of(a: Sequence[int]) -> list[tuple[int, ...]]:
    return sorted(set(itertools.permutations(a)))


def _check_character_vector(a: Sequence[int], m: int) -> None:
    if any(x % m == 0 for x in a) or sum(a) % m:
        raise SpectralError(f"{tuple(a)} is not in A^{m}_{len(a)}")


# ---------------------------------------------------------------------------
# Jacobi sums


def _log_table(chi: CharacterSpec) -> np.ndarray:
    """chi-exponent of each field element (index 0 unused), i.e. log_g(v) mod m."""
    F = chi.field
    if F.k == 1 and F.order > 2**20:
        raise SpectralError("field too large for character tables")
    _, log = F.tables()
    lg = int(log[chi.generator.value])
    n = F.order - 1
    inv = pow(lg, -1, n)
    out = (log.astype(np.int64) * inv) % n
    return out % chi.m


@functools.lru_cache(maxsize=64)
def _add_table(F: Field) -> np.ndarray:
    from ._kernels import field_tables

    return field_tables(F, 1)[0].astype(np.int64)


def _add_one_neg(F: Field) -> tuple[np.ndarray, np.ndarray]:
    """(v -> 1 + v, v -> -v) as lookup arrays."""
    idx = np.arange(F.order, dtype=np.int64)
    if F.k == 1:
        return (idx + 1) % F.p, (-idx) % F.p
    add = _add_table(F)
    neg = np.array([F.neg(v) for v in range(F.order)], dtype=np.int64)
    return add[1], neg


def jacobi_direct(a: Sequence[int], chi: CharacterSpec) -> CyclotomicInt:
    """(-1)^n sum over 1 + v_2 + ... + v_n = 0 of prod chi(v_i)^a_i, by enumeration."""
    m, F = chi.m, chi.field
    a = tuple(int(x) % m for x in a)
    _check_character_vector(a, m)
    n = len(a)
    if n < 2:
        raise SpectralError("Jacobi sums need n >= 2")
    logs = _log_table(chi)
    nonzero = np.arange(1, F.order, dtype=np.int64)
    plus_one, neg = _add_one_neg(F)
    add = None if F.k == 1 else _add_table(F)
    counts = np.zeros(m, dtype=np.int64)

    def add_vec(s: np.ndarray, v: np.ndarray) -> np.ndarray:
        if add is None:
            return (s[:, None] + v[None, :]) % F.p
        return add[s[:, None], v[None, :]]

    if n == 2:
        # 1 + v_2 = 0 forces v_2 = -1
        counts[(a[1] * logs[neg[1]]) % m] += 1
    else:
        # outer loop over v_2 keeps memory at q^(n-3)
        for v2 in nonzero:
            s = np.array([v2], dtype=np.int64)
            e = np.array([a[1] * logs[v2]], dtype=np.int64)
            for ai in a[2:-1]:
                s = add_vec(s, nonzero).ravel()
                e = (e[:, None] + ai * logs[nonzero][None, :]).ravel()
            vn = neg[plus_one[s]]
            ok = vn != 0
            e = (e[ok] + a[-1] * logs[vn[ok]]) % m
            counts += np.bincount(e, minlength=m)
    z = CyclotomicInt.from_exponent_counts(m, counts.tolist())
    return z if n % 2 == 0 else -z


def jacobi_pair(c: int, d: int, chi: CharacterSpec) -> CyclotomicInt:
    """sum_{v != 0, 1} chi^c(v) chi^d(1 - v)."""
    F, m = chi.field, chi.m
    logs = _log_table(chi)
    plus_one, neg = _add_one_neg(F)
    v = np.arange(2, F.order, dtype=np.int64) if F.k == 1 else np.array(
        [x for x in range(F.order) if x not in (0, 1)], dtype=np.int64)
    one_minus = plus_one[neg[v]]
    ok = one_minus != 0
    e = (c * logs[v[ok]] + d * logs[one_minus[ok]]) % m
    return CyclotomicInt.from_exponent_counts(m, np.bincount(e, minlength=m).tolist())


def jacobi_fast(a: Sequence[int], chi: CharacterSpec) -> CyclotomicInt:
    """Gauss-sum product route, carried out exactly through two-variable Jacobi sums.

    With psi_k = chi^(a_1 + ... + a_k) we keep prod_{i<=k} g(chi^a_i) = R_k * g(psi_k)
    (no trailing Gauss sum when psi_k is trivial).  The final value is
    J(a) = (-1)^n R_n / q.
    """
    m, F = chi.m, chi.field
    a = tuple(int(x) % m for x in a)
    _check_character_vector(a, m)
    n = len(a)
    q = F.order
    neg_one_exp = int(_log_table(chi)[F.neg(1)])
    R = CyclotomicInt.from_int(m, 1)
    q_power = 0
    psi = a[0]
    for ai in a[1:]:
        nxt = (psi + ai) % m
        if psi == 0:
            pass
        elif nxt == 0:
            R = R * CyclotomicInt.zeta(m, psi * neg_one_exp)
            q_power += 1
        else:
            R = R * jacobi_pair(psi, ai, chi)
        psi = nxt
    if q_power < 1:
        raise SpectralError("internal: Gauss-sum recursion ended without a trivial product")
    R = R * q ** (q_power - 1)
    return R if n % 2 == 0 else -R


_jacobi_cache: dict = {}
_jacobi_lock = threading.Lock()


def jacobi(a: Sequence[int], chi: CharacterSpec, method: str = "auto") -> CyclotomicInt:
    """J(a) for a in A^m_n.  ``method`` is 'direct', 'fast' or 'auto'."""
    a = tuple(int(x) % chi.m for x in a)
    if (chi.field.order - 1) % chi.m:
        raise SpectralError(f"no character of order {chi.m} on {chi.field!r}")
    if method == "auto":
        method = "direct" if chi.field.order ** max(len(a) - 2, 0) <= DIRECT_LIMIT else "fast"
    key = (a, chi.field, chi.generator.value, chi.m, method)
    with _jacobi_lock:
        hit = _jacobi_cache.get(key)
    if hit is not None:
        return hit
    if method == "direct":
        val = jacobi_direct(a, chi)
    elif method == "fast":
        val = jacobi_fast(a, chi)
    else:
        raise SpectralError(f"unknown Jacobi method {method!r}")
    with _jacobi_lock:
        _jacobi_cache[key] = val
    return val


# ---------------------------------------------------------------------------
# Frobenius blocks


@dataclass(frozen=True)
class OrbitBlock:
    orbit: tuple[tuple[int, ...], ...]
    jacobi: CyclotomicInt
    perm: tuple[int, ...]
    multipliers: tuple[CyclotomicInt, ...]

    @property
    def size(self) -> int:
        return len(self.orbit)

    def cycles(self) -> list[list[int]]:
        seen, out = set(), []
        for i in range(self.size):
            if i in seen:
                continue
            cyc, j = [], i
            while j not in seen:
                seen.add(j)
                cyc.append(j)
                j = self.perm[j]
            out.append(cyc)
        return out

    def dense(self) -> list[list[CyclotomicInt]]:
        """Matrix with column b holding multiplier[b] in row perm[b]."""
        m = self.jacobi.m
        M = [[CyclotomicInt(m) for _ in range(self.size)] for _ in range(self.size)]
        for b, (tgt, mult) in enumerate(zip(self.perm, self.multipliers)):
            M[tgt][b] = mult
        return M


def _act_inverse(sigma: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """sigma^-1 b, i.e. (sigma^-1 b)_i = b_{sigma(i)}."""
    return tuple(b[sigma[i]] for i in range(len(b)))


def _perm_sign(perm: Sequence[int]) -> int:
    seen, sign = set(), 1
    for i in range(len(perm)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def frobenius_block(orbit: Sequence[Sequence[int]], jac: CyclotomicInt, b_f: WreathElement,
                    iota: int = 1) -> OrbitBlock:
    """Monomial matrix of the twisted Frobenius on the lines V_b, b in the orbit.

    v_b maps to jac * prod_i iota(zeta_i)^{b_sigma(i)} * sgn(sigma) * v_{sigma^-1 b},
    where iota(omega^e) = z^(iota * e).
    """
    m = jac.m
    members = [tuple(b) for b in orbit]
    index = {b: i for i, b in enumerate(members)}
    sgn = b_f.sign()
    perm, mults = [], []
    for b in members:
        tgt = _act_inverse(b_f.sigma, b)
        if tgt not in index:
            raise SpectralError("orbit is not stable under the cocycle permutation")
        perm.append(index[tgt])
        expo = iota * sum(z * t for z, t in zip(b_f.zetas, tgt))
        mult = jac * CyclotomicInt.zeta(m, expo)
        mults.append(mult if sgn > 0 else -mult)
    return OrbitBlock(tuple(members), jac, tuple(perm), tuple(mults))


def frobenius_block_random_basis(orbit: Sequence[Sequence[int]], jac: CyclotomicInt, b_f: WreathElement,
                                 iota: int = 1, seed: int = 0) -> OrbitBlock:
    """The same operator written in the basis w_b = sigma_b^* v for randomly chosen sigma_b.

    Signs come from the stabilizer rule (permutations fixing a act by their sign)
    instead of sgn(sigma); the characteristic polynomial must agree with
    :func:`frobenius_block`.
    """
    rng = random.Random(seed)
    m = jac.m
    members = [tuple(b) for b in orbit]
    index = {b: i for i, b in enumerate(members)}
    a = members[0]
    n = len(a)
    # sigma_b with sigma_b^-1 a = b, i.e. a[sigma_b(i)] = b_i; random among all choices
    choice = {}
    for b in members:
        pools: dict[int, list[int]] = {}
        for i, v in enumerate(a):
            pools.setdefault(v, []).append(i)
        for v in pools:
            rng.shuffle(pools[v])
        choice[b] = tuple(pools[v].pop() for v in b)
    sigma = b_f.sigma
    perm, mults = [], []
    for b in members:
        c = _act_inverse(sigma, b)
        s_b, s_c = choice[b], choice[c]
        s_c_inv = [0] * n
        for i, v in enumerate(s_c):
            s_c_inv[v] = i
        # omega = sigma_b sigma sigma_c^-1 fixes a
        om = tuple(s_b[sigma[s_c_inv[i]]] for i in range(n))
        assert _act_inverse(om, a) == a
        expo = iota * sum(z * t for z, t in zip(b_f.zetas, c))
        mult = jac * CyclotomicInt.zeta(m, expo)
        perm.append(index[c])
        mults.append(mult if _perm_sign(om) > 0 else -mult)
    return OrbitBlock(tuple(members), jac, tuple(perm), tuple(mults))


def block_charpoly(block: OrbitBlock) -> CycPolynomial:
    """det(1 - M t) as a product over the cycles of the index permutation."""
    m = block.jacobi.m
    factors = []
    for cyc in block.cycles():
        prod = CyclotomicInt.from_int(m, 1)
        for i in cyc:
            prod = prod * block.multipliers[i]
        factors.append(CycPolynomial.one_minus(prod, len(cyc)))
    return cycpoly_product(factors, m)


# ---------------------------------------------------------------------------
# zeta functions


@dataclass(frozen=True)
class ZetaFunction:
    """Zeta of a hypersurface of dimension n - 2 in the shape

    middle^(+-1) / prod_{i=0}^{n-2} (1 - q^i t),

    with the middle factor in the numerator for odd n and the denominator for even n.
    """

    m: int
    n: int
    q: int
    middle: tuple[int, ...]
    extra_denominator: tuple[tuple[int, ...], ...]

    @property
    def middle_placement(self) -> str:
        return "numerator" if self.n % 2 else "denominator"

    @property
    def numerator_factors(self) -> list[tuple[int, ...]]:
        return [self.middle] if self.n % 2 else []

    @property
    def denominator_factors(self) -> list[tuple[int, ...]]:
        return ([] if self.n % 2 else [self.middle]) + list(self.extra_denominator)

    def point_counts(self, k: int) -> list[int]:
        from .oracle import zeta_to_counts

        return zeta_to_counts(self, k)

    def to_json(self, k: int = 4) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "q": self.q,
            "middle": list(self.middle),
            "middle_placement": self.middle_placement,
            "numerator": list(self.middle) if self.n % 2 else [1],
            "denominator_extra_factors": [list(f) for f in self.extra_denominator],
            "point_counts": self.point_counts(k),
        }

    def pretty(self, k: int = 4) -> str:
        counts = self.point_counts(k)
        series = "+".join(f"{c}/{i}·t^{i}" if i > 1 else f"{c}/1·t" for i, c in enumerate(counts, 1))
        mid = format_int_poly(self.middle)
        extra = "".join(f"({format_int_poly(f)})" for f in self.extra_denominator)
        if self.n % 2:
            frac = f"({mid}) / {extra}"
        else:
            frac = f"1 / [({mid}){extra}]"
        return f"zeta(t) = {frac}\n        = exp({series}+...)"


def format_int_poly(coeffs: Sequence[int]) -> str:
    parts = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
        body = str(abs(c)) if (not mono or abs(c) != 1) else ""
        parts.append(("-" if c < 0 else "+") + body + mono)
    s = "".join(parts) or "0"
    return s[1:] if s.startswith("+") else s


def _extra_denominator(n: int, q: int) -> tuple[tuple[int, ...], ...]:
    return tuple((1, -(q**i)) for i in range(n - 1))


def _int_poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


_iota_cache: dict = {}
_iota_lock = threading.Lock()


def calibrate_iota(m: int, base: Field, chi: CharacterSpec | None = None, budget: float | None = None) -> int:
    """Exponent u with iota(omega) = z^u, fixed by matching brute-force counts of diagonal forms.

    Diagonal data are split algebras with x = (1, c, 1, ..., 1).  Every u coprime
    to m is tried; exactly the consistent ones survive and the smallest is returned.
    """
    from .oracle import count_points

    chi = chi or CharacterSpec.default(base, m)
    key = (m, base, chi.generator.value)
    with _iota_lock:
        if key in _iota_cache:
            return _iota_cache[key]
    units = [u for u in range(1, m) if math.gcd(u, m) == 1]
    alive = set(units)
    g = base.generator
    for n, depth in ((3, 2), (2, 3), (4, 1)):
        if base.order ** (depth * (n - 1)) > 2 * 10**6:
            depth = 1
        for r in range(1, m):
            xs = [base.one] * n
            xs[1] = g ** r
            d = FormDatum(m, AlgebraSpec.split(base, n), tuple(xs))
            P = trace_form(d)
            truth = [count_points(P, i, budget=budget).count for i in range(1, depth + 1)]
            for u in sorted(alive):
                if zeta(d, chi, iota=u).point_counts(depth) != truth:
                    alive.discard(u)
    if not alive:
        raise SpectralError(f"no embedding exponent reproduces diagonal point counts for m={m}, q={base.order}")
    u = min(alive)
    with _iota_lock:
        _iota_cache[key] = u
    return u


def zeta(d: FormDatum, chi: CharacterSpec | None = None, iota: int | None = None,
         jacobi_method: str = "auto") -> ZetaFunction:
    """Exact zeta of the form P{L,x} from Jacobi sums and the twisted Frobenius blocks."""
    if not d.good:
        raise SpectralError(f"q={d.q} is not 1 mod m={d.m}; twisted zeta needs mu_m in the base field")
    m, n, q = d.m, d.n, d.q
    if n < 2:
        raise SpectralError("n must be at least 2")
    chi = chi or CharacterSpec.default(d.base, m)
    if chi.field is not d.base or chi.m != m:
        raise SpectralError("character does not match the datum")
    if iota is None:
        iota = calibrate_iota(m, d.base, chi)
    b_f = frobenius_cocycle(d)
    polys = []
    for orb in orbits(characters(m, n)):
        jac = jacobi(orb[0], chi, jacobi_method)
        if jac.abs_square() != q ** (n - 2):
            raise SpectralError(f"purity fails for J{orb[0]} = {jac}")
        polys.append(block_charpoly(frobenius_block(orb, jac, b_f, iota)))
    middle = to_integer_poly(cycpoly_product(polys, m))
    return ZetaFunction(m, n, q, tuple(middle), _extra_denominator(n, q))


def zeta_blocks(d: FormDatum, chi: CharacterSpec | None = None, iota: int | None = None,
                jacobi_method: str = "auto") -> list[tuple[OrbitBlock, CycPolynomial]]:
    """Per-orbit blocks and their characteristic polynomials, for reporting."""
    chi = chi or CharacterSpec.default(d.base, d.m)
    if iota is None:
        iota = calibrate_iota(d.m, d.base, chi)
    b_f = frobenius_cocycle(d)
    out = []
    for orb in orbits(characters(d.m, d.n)):
        block = frobenius_block(orb, jacobi(orb[0], chi, jacobi_method), b_f, iota)
        out.append((block, block_charpoly(block)))
    return out


# ---------------------------------------------------------------------------
# untwisted Fermat hypersurface, any q


def multiplicative_order(q: int, m: int) -> int:
    if m == 1:
        return 1
    e, acc = 1, q % m
    while acc != 1:
        acc = acc * q % m
        e += 1
    return e


def q_orbits(m: int, n: int, q: int) -> list[list[tuple[int, ...]]]:
    """Orbits of A^m_n under a -> q a, each starting at its smallest member."""
    seen, out = set(), []
    for a in characters(m, n):
        if a in seen:
            continue
        orb, cur = [], a
        while cur not in orb:
            orb.append(cur)
            cur = tuple(x * q % m for x in cur)
        seen.update(orb)
        out.append(orb)
    return out


def _lift(z: CyclotomicInt, m: int, step: int) -> CyclotomicInt:
    """Reinterpret z in Z[zeta_{m/step}] inside Z[zeta_m] via zeta_{m/step} = zeta_m^step."""
    acc = CyclotomicInt(m)
    for j, c in enumerate(z.coeffs):
        if c:
            acc = acc + CyclotomicInt.zeta(m, step * j) * c
    return acc


def fermat_zeta_general_q(m: int, n: int, q: int, jacobi_method: str = "auto") -> ZetaFunction:
    """Zeta of X_1^m + ... + X_n^m over F_q, q not necessarily 1 mod m.

    Each orbit <a> of size e contributes 1 - J(a') t^e, the Jacobi sum taken over
    F_{q^e} for a' = a / gcd(m, a) and a character of order m' = m / gcd.
    """
    base = base_field(q)
    if base.p <= m:
        raise SpectralError(f"characteristic {base.p} must exceed m={m}")
    polys = []
    for orb in q_orbits(m, n, q):
        a = orb[0]
        g = math.gcd(m, *a)
        mp = m // g
        e = multiplicative_order(q, mp)
        if e != len(orb):
            raise SpectralError(f"orbit of {a} has {len(orb)} members, expected {e}")
        F = extension(base, e)
        chi = CharacterSpec(F, F.generator, mp)
        jac = jacobi(tuple(x // g for x in a), chi, jacobi_method)
        polys.append(CycPolynomial.one_minus(_lift(jac, m, g), e))
    middle = to_integer_poly(cycpoly_product(polys, m))
    return ZetaFunction(m, n, q, tuple(middle), _extra_denominator(n, q))
