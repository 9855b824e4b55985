"""Classification data (L, x) for twisted Fermat forms and their trace-form polynomials."""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

import sympy

from .gf import (
    AlgebraSpec,
    Field,
    FieldElement,
    FieldError,
    extension,
    make_field,
    mu_m_power,
    roots,
)


class DescentError(ValueError):
    pass


# ---------------------------------------------------------------------------
# homogeneous polynomials


def exponent_vectors(n: int, m: int) -> list[tuple[int, ...]]:
    """All length-n exponent vectors summing to m, in descending lexicographic order."""
    out = []
    for combo in itertools.combinations_with_replacement(range(n), m):
        ex = [0] * n
        for v in combo:
            ex[v] += 1
        out.append(tuple(ex))
    return sorted(set(out), reverse=True)


def multinomial(ex: Sequence[int]) -> int:
    out = math.factorial(sum(ex))
    for e in ex:
        out //= math.factorial(e)
    return out


class HomogeneousPoly:
    """Sparse homogeneous polynomial of degree m in n variables over ``field``.

    Coefficients are stored as field encodings (ints); zero terms are dropped.
    """

    __slots__ = ("field", "n", "m", "terms")

    def __init__(self, field: Field, n: int, m: int, terms: dict[tuple[int, ...], int] | None = None):
        self.field, self.n, self.m = field, n, m
        clean: dict[tuple[int, ...], int] = {}
        for ex, c in (terms or {}).items():
            ex = tuple(int(e) for e in ex)
            if len(ex) != n or sum(ex) != m or min(ex) < 0:
                raise DescentError(f"exponent vector {ex} is not homogeneous of degree {m} in {n} variables")
            c = int(c)
            if c:
                clean[ex] = c
        self.terms = clean

    @classmethod
    def fermat(cls, field: Field, n: int, m: int) -> "HomogeneousPoly":
        terms = {}
        for i in range(n):
            ex = [0] * n
            ex[i] = m
            terms[tuple(ex)] = 1
        return cls(field, n, m, terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomogeneousPoly):
            return NotImplemented
        return (self.field is other.field and self.n == other.n and self.m == other.m
                and self.terms == other.terms)

    def __hash__(self) -> int:
        return hash((self.n, self.m, frozenset(self.terms.items())))

    def __add__(self, other: "HomogeneousPoly") -> "HomogeneousPoly":
        self._same_shape(other)
        F = self.field
        terms = dict(self.terms)
        for ex, c in other.terms.items():
            terms[ex] = F.add(terms.get(ex, 0), c)
        return HomogeneousPoly(F, self.n, self.m, terms)

    def scale(self, c: int) -> "HomogeneousPoly":
        F = self.field
        return HomogeneousPoly(F, self.n, self.m, {ex: F.mul(v, c) for ex, v in self.terms.items()})

    def _same_shape(self, other: "HomogeneousPoly") -> None:
        if other.field is not self.field or other.n != self.n or other.m != self.m:
            raise DescentError("polynomials differ in field, variable count or degree")

    def direct_sum(self, other: "HomogeneousPoly") -> "HomogeneousPoly":
        """P(X) + Q(Y) in the concatenated variables (X, Y)."""
        if other.field is not self.field or other.m != self.m:
            raise DescentError("direct sum needs a common field and degree")
        terms = {ex + (0,) * other.n: c for ex, c in self.terms.items()}
        terms.update({(0,) * self.n + ex: c for ex, c in other.terms.items()})
        return HomogeneousPoly(self.field, self.n + other.n, self.m, terms)

    def evaluate(self, point: Sequence[int], field: Field | None = None) -> int:
        """Value at ``point`` (encodings in ``field``, an extension of the coefficient field)."""
        F = field or self.field
        emb = F.embedding(self.field) if F is not self.field else None
        acc = 0
        for ex, c in self.terms.items():
            v = emb(c) if emb else c
            for x, e in zip(point, ex):
                if e:
                    v = F.mul(v, F.pow(x, e))
                    if not v:
                        break
            acc = F.add(acc, v)
        return acc

    def substitute(self, matrix: Sequence[Sequence[int]]) -> "HomogeneousPoly":
        """P(A X) for an n x n matrix A over the coefficient field."""
        F, n = self.field, self.n
        if len(matrix) != n or any(len(r) != n for r in matrix):
            raise DescentError("substitution matrix has the wrong shape")
        linear = [{_unit(n, j): int(matrix[i][j]) for j in range(n) if matrix[i][j]} for i in range(n)]
        power_cache: dict[tuple[int, int], dict] = {}

        def lin_pow(i: int, e: int) -> dict:
            key = (i, e)
            if key not in power_cache:
                power_cache[key] = {(0,) * n: 1} if e == 0 else _sparse_mul(F, lin_pow(i, e - 1), linear[i])
            return power_cache[key]

        out: dict[tuple[int, ...], int] = {}
        for ex, c in self.terms.items():
            prod = {(0,) * n: c}
            for i, e in enumerate(ex):
                if e:
                    prod = _sparse_mul(F, prod, lin_pow(i, e))
            for k, v in prod.items():
                out[k] = F.add(out.get(k, 0), v)
        return HomogeneousPoly(F, n, self.m, out)

    def pretty(self, names: Sequence[str] | None = None) -> str:
        names = list(names) if names else [f"X{i + 1}" for i in range(self.n)]
        parts = []
        for ex in sorted(self.terms, reverse=True):
            c = self.terms[ex]
            mono = "".join(nm + (f"^{e}" if e > 1 else "") for nm, e in zip(names, ex) if e)
            coeff = repr(FieldElement(self.field, c))
            if self.field.k > 1:
                coeff = f"({coeff})"
            parts.append(mono if c == 1 else f"{coeff}{mono}")
        return "+".join(parts) or "0"

    @classmethod
    def parse(cls, text: str, field: Field, m: int, names: Sequence[str] | None = None,
              n: int | None = None) -> "HomogeneousPoly":
        """Inverse of :meth:`pretty` for prime fields: ``"2a^3+a^2d-x^3"``.

        Repeated monomials are added together.
        """
        if field.k != 1:
            raise DescentError("parsing is supported over prime fields only")
        if names is None:
            n = n if n is not None else max(int(i) for i in re.findall(r"X(\d+)", text))
            names = [f"X{i + 1}" for i in range(n)]
        names = list(names)
        var = "|".join(re.escape(v) for v in sorted(names, key=len, reverse=True))
        term_re = re.compile(rf"([+-]?)(\d*)((?:(?:{var})(?:\^\d+)?)*)")
        factor_re = re.compile(rf"({var})(?:\^(\d+))?")
        s = text.replace(" ", "").replace("*", "")
        terms: dict[tuple[int, ...], int] = {}
        pos = 0
        while pos < len(s):
            mt = term_re.match(s, pos)
            if mt is None or mt.end() == pos or not (mt.group(2) or mt.group(3)):
                raise DescentError(f"cannot parse polynomial at {s[pos:pos + 12]!r}")
            ex = [0] * len(names)
            for v, e in factor_re.findall(mt.group(3)):
                ex[names.index(v)] += int(e or 1)
            if sum(ex) != m:
                raise DescentError(f"term {mt.group(0)!r} does not have degree {m}")
            c = int(mt.group(2) or 1) * (-1 if mt.group(1) == "-" else 1)
            key = tuple(ex)
            terms[key] = field.add(terms.get(key, 0), c % field.p)
            pos = mt.end()
        return cls(field, len(names), m, terms)

    def __repr__(self) -> str:
        return f"HomogeneousPoly({self.pretty()})"

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "n": self.n,
            "m": self.m,
            "terms": [{"exps": list(ex), "coeff": self.field.digits(c) if self.field.k > 1 else c}
                      for ex, c in sorted(self.terms.items(), reverse=True)],
        }

    @classmethod
    def from_json(cls, data: dict) -> "HomogeneousPoly":
        F = make_field(data["field"]["p"], data["field"].get("k", 1), data["field"].get("modulus"))
        terms = {}
        for t in data["terms"]:
            c = t["coeff"]
            terms[tuple(t["exps"])] = F(c).value
        return cls(F, int(data["n"]), int(data["m"]), terms)


def _unit(n: int, j: int) -> tuple[int, ...]:
    ex = [0] * n
    ex[j] = 1
    return tuple(ex)


def _sparse_mul(F: Field, a: dict, b: dict) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            k = tuple(x + y for x, y in zip(ea, eb))
            out[k] = F.add(out.get(k, 0), F.mul(ca, cb))
    return {k: v for k, v in out.items() if v}


# ---------------------------------------------------------------------------
# wreath products S_n ∫ mu_m


@dataclass(frozen=True)
class WreathElement:
    """(zeta_1, ..., zeta_n) . sigma in mu_m^n ⋊ S_n.

    ``zetas`` are exponents of a fixed primitive m-th root of unity omega and
    ``sigma[i]`` is the image of index i (0-based).
    """

    m: int
    zetas: tuple[int, ...]
    sigma: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "zetas", tuple(int(z) % self.m for z in self.zetas))
        object.__setattr__(self, "sigma", tuple(int(s) for s in self.sigma))
        if sorted(self.sigma) != list(range(len(self.sigma))) or len(self.zetas) != len(self.sigma):
            raise DescentError(f"invalid wreath element {self.zetas}, {self.sigma}")

    @property
    def n(self) -> int:
        return len(self.sigma)

    @classmethod
    def identity(cls, m: int, n: int) -> "WreathElement":
        return cls(m, (0,) * n, tuple(range(n)))

    @classmethod
    def from_cycles(cls, m: int, zetas: Sequence[int], cycles: Iterable[Sequence[int]]) -> "WreathElement":
        """Build from 1-based cycle notation, e.g. [[1, 2, 3, 4], [5, 6]]."""
        n = len(zetas)
        sigma = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                sigma[a - 1] = b - 1
        return cls(m, tuple(zetas), tuple(sigma))

    @classmethod
    def from_roots(cls, base: Field, m: int, values: Sequence[int], cycles: Iterable[Sequence[int]]) -> "WreathElement":
        """zetas given as elements of mu_m(base); exponents taken w.r.t. :func:`omega`."""
        w = omega(base, m)
        exps = []
        for v in values:
            for e in range(m):
                if base.pow(w.value, e) == base(v).value:
                    exps.append(e)
                    break
            else:
                raise DescentError(f"{v} is not an m-th root of unity in {base!r}")
        return cls.from_cycles(m, exps, cycles)

    def inverse_sigma(self) -> tuple[int, ...]:
        inv = [0] * self.n
        for i, s in enumerate(self.sigma):
            inv[s] = i
        return tuple(inv)

    def __mul__(self, other: "WreathElement") -> "WreathElement":
        """(z, s)(z', s') = (z * s(z'), s s') with s(z')_i = z'_{s^-1(i)}."""
        if other.m != self.m or other.n != self.n:
            raise DescentError("wreath elements of different shape")
        inv = self.inverse_sigma()
        zetas = tuple(self.zetas[i] + other.zetas[inv[i]] for i in range(self.n))
        sigma = tuple(self.sigma[other.sigma[i]] for i in range(self.n))
        return WreathElement(self.m, zetas, sigma)

    def cycles(self) -> list[list[int]]:
        """Cycles of sigma (0-based), each starting at its smallest index."""
        seen, out = set(), []
        for i in range(self.n):
            if i in seen:
                continue
            cyc, j = [], i
            while j not in seen:
                seen.add(j)
                cyc.append(j)
                j = self.sigma[j]
            out.append(cyc)
        return out

    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def format(self, base: Field | None = None) -> str:
        if base is not None:
            w = omega(base, self.m)
            vals = [repr(w ** z) for z in self.zetas]
        else:
            vals = [f"w^{z}" if z else "1" for z in self.zetas]
        cyc = "".join("[" + "".join(str(i + 1) for i in c) + "]" for c in self.cycles() if len(c) > 1)
        return f"({','.join(vals)})·{cyc or 'id'}"

    def to_json(self) -> dict:
        return {"m": self.m, "zetas": list(self.zetas), "sigma": list(self.sigma)}


def omega(base: Field, m: int) -> FieldElement:
    """The fixed primitive m-th root of unity generator^((q-1)/m) of the base field."""
    if (base.order - 1) % m:
        raise DescentError(f"mu_{m} is not contained in {base!r}")
    return base.generator ** ((base.order - 1) // m)


def root_of_unity_exponent(base: Field, m: int, z: FieldElement) -> int:
    w = omega(base, m)
    acc = base.one
    for e in range(m):
        if acc == z:
            return e
        acc = acc * w
    raise DescentError(f"{z!r} is not an m-th root of unity")


# ---------------------------------------------------------------------------
# classification data


@dataclass(frozen=True)
class FormDatum:
    m: int
    algebra: AlgebraSpec
    x: tuple[FieldElement, ...]
    bases: tuple[tuple[FieldElement, ...], ...] | None = dc_field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(self.x))
        if len(self.x) != len(self.algebra.factors):
            raise DescentError("one unit per factor is required")
        for xi, Li in zip(self.x, self.algebra.factors):
            if xi.field is not Li:
                raise DescentError(f"{xi!r} does not lie in factor {Li!r}")
            if not xi:
                raise DescentError("x_i must be nonzero")
        if self.base.p <= self.m:
            raise DescentError(f"characteristic {self.base.p} must exceed m={self.m}")
        if self.m < 2:
            raise DescentError("m must be at least 2")

    @property
    def base(self) -> Field:
        return self.algebra.base

    @property
    def q(self) -> int:
        return self.base.order

    @property
    def n(self) -> int:
        return self.algebra.n

    @property
    def degrees(self) -> tuple[int, ...]:
        return self.algebra.degrees

    @property
    def good(self) -> bool:
        return (self.q - 1) % self.m == 0

    @classmethod
    def fermat(cls, m: int, n: int, base: Field) -> "FormDatum":
        return cls(m, AlgebraSpec.split(base, n), tuple(base.one for _ in range(n)))

    @classmethod
    def from_residues(cls, m: int, base: Field, degrees: Sequence[int], residues: Sequence[int]) -> "FormDatum":
        """Datum with x_i the canonical transversal element of residue class ``residues[i]``."""
        alg = AlgebraSpec.from_degrees(base, degrees)
        return cls(m, alg, tuple(canonical_unit(L, base, m, r) for L, r in zip(alg.factors, residues)))

    def residues(self) -> tuple[int, ...]:
        """rho_i with mu_m_power(x_i) = omega^rho_i; the class of x_i modulo m-th powers."""
        self._require_good()
        return tuple(root_of_unity_exponent(self.base, self.m, mu_m_power(xi, self.m, self.base))
                     for xi in self.x)

    def canonical(self) -> "FormDatum":
        self._require_good()
        return FormDatum(self.m, self.algebra,
                         tuple(canonical_unit(L, self.base, self.m, r)
                               for L, r in zip(self.algebra.factors, self.residues())))

    def _require_good(self) -> None:
        if not self.good:
            raise DescentError(f"q={self.q} is not 1 mod m={self.m}")

    def to_json(self) -> dict:
        facs = []
        for L, xi, d in zip(self.algebra.factors, self.x, self.degrees):
            entry = {"degree": d, "x_dlog": L.dlog(xi.value)}
            if L is not extension(self.base, d):
                entry["modulus"] = list(L.modulus)
            facs.append(entry)
        return {"m": self.m, "q": self.q, "factors": facs}

    @classmethod
    def from_json(cls, data: dict) -> "FormDatum":
        m, q = int(data["m"]), int(data["q"])
        base = base_field(q)
        factors, xs = [], []
        for f in data["factors"]:
            d = int(f["degree"])
            L = make_field(base.p, base.k * d, f["modulus"]) if "modulus" in f else extension(base, d)
            factors.append(L)
            xs.append(L.generator ** int(f["x_dlog"]))
        return cls(m, AlgebraSpec(base, tuple(factors)), tuple(xs))


def base_field(q: int) -> Field:
    fac = sympy.factorint(q)
    if len(fac) != 1:
        raise FieldError(f"q={q} is not a prime power")
    (p, k), = fac.items()
    return make_field(p, k)


def canonical_unit(L: Field, base: Field, m: int, residue: int) -> FieldElement:
    """g^r with g = L.generator and r in [0, m) chosen so that mu_m_power(g^r) = omega^residue."""
    g = L.generator
    u = root_of_unity_exponent(base, m, mu_m_power(g, m, base))
    r = (residue * pow(u, -1, m)) % m
    return g ** r


def power_basis(L: Field, base: Field) -> tuple[FieldElement, ...]:
    d = L.k // base.k
    th = L.root
    return tuple(th ** j for j in range(d))


# ---------------------------------------------------------------------------
# operations


def trace_form(d: FormDatum, bases: Sequence[Sequence[FieldElement]] | None = None) -> HomogeneousPoly:
    """Tr_{L/k}[(1/x)(e_1 X_1 + ... + e_n X_n)^m], factor by factor.

    The stored representative x is used literally; the default basis is the
    power basis of each factor's adjoined root.
    """
    base, m = d.base, d.m
    bases = bases if bases is not None else d.bases
    poly = None
    for idx, (L, xi) in enumerate(zip(d.algebra.factors, d.x)):
        basis = tuple(bases[idx]) if bases is not None else power_basis(L, base)
        nvar = L.k // base.k
        if len(basis) != nvar:
            raise DescentError(f"factor {idx} needs a basis of {nvar} elements")
        emb = L.embedding(base)
        w = xi.inverse()
        # powers of each basis element, reused across monomials
        pw = [[L.one] for _ in basis]
        for j, e in enumerate(basis):
            for _ in range(m):
                pw[j].append(pw[j][-1] * e)
        terms = {}
        for ex in exponent_vectors(nvar, m):
            c = w * multinomial(ex)
            for j, e in enumerate(ex):
                if e:
                    c = c * pw[j][e]
            terms[ex] = emb.preimage(_trace(L, c.value, base.order, nvar))
        part = HomogeneousPoly(base, nvar, m, terms)
        poly = part if poly is None else poly.direct_sum(part)
    return poly


def _trace(L: Field, a: int, q: int, d: int) -> int:
    acc, cur = 0, a
    for _ in range(d):
        acc = L.add(acc, cur)
        cur = L.pow(cur, q)
    return acc


def frobenius_cocycle(d: FormDatum) -> WreathElement:
    """b_f: standard cycles on consecutive blocks, mu_m_power(x_i) in each block's first slot."""
    if not d.good:
        raise DescentError(f"q={d.q} is not 1 mod m={d.m}; the cocycle is only built in the good case")
    zetas, cycles, start = [], [], 0
    for deg, rho in zip(d.degrees, d.residues()):
        zetas.extend([rho] + [0] * (deg - 1))
        cycles.append(list(range(start + 1, start + deg + 1)))
        start += deg
    return WreathElement.from_cycles(d.m, zetas, cycles)


def _degree_groups(degrees: Sequence[int]) -> dict[int, list[int]]:
    groups: dict[int, list[int]] = {}
    for i, deg in enumerate(degrees):
        groups.setdefault(deg, []).append(i)
    return groups


def _invariant_key(m: int, degrees: Sequence[int], residues: Sequence[int], shift: int) -> tuple:
    groups = _degree_groups(degrees)
    return tuple((deg, tuple(sorted((residues[i] + deg * shift) % m for i in groups[deg])))
                 for deg in sorted(groups))


def equivalent(d1: FormDatum, d2: FormDatum) -> bool:
    """Same class up to scaling by k^x, algebra isomorphism and m-th powers.

    Scaling x_i by lambda shifts its residue by n_i * l where lambda^((q-1)/m) = omega^l,
    because (q^n_i - 1)/(q - 1) = n_i mod m.  Galois powers fix residues.
    """
    if (d1.m, d1.q, d1.n) != (d2.m, d2.q, d2.n):
        raise DescentError("data with different (m, q, n) cannot be compared")
    if sorted(d1.degrees) != sorted(d2.degrees):
        return False
    r1, r2 = d1.residues(), d2.residues()
    target = _invariant_key(d2.m, d2.degrees, r2, 0)
    return any(_invariant_key(d1.m, d1.degrees, r1, ell) == target for ell in range(d1.m))


def partitions(n: int, largest: int | None = None) -> list[tuple[int, ...]]:
    """Partitions of n as non-increasing tuples, in lexicographically decreasing order."""
    largest = n if largest is None else largest
    if n == 0:
        return [()]
    out = []
    for first in range(min(n, largest), 0, -1):
        out.extend((first,) + rest for rest in partitions(n - first, first))
    return out


def enumerate_classes(m: int, n: int, q: int, cap: int = 2**20) -> list[FormDatum]:
    """One canonical datum per class, per partition of n."""
    base = base_field(q)
    if (q - 1) % m:
        raise DescentError(f"q={q} is not 1 mod m={m}")
    out = []
    for part in partitions(n):
        if q ** part[0] > cap:
            raise DescentError(f"factor F_{q}^{part[0]} exceeds the enumeration cap {cap}")
        seen = set()
        for res in itertools.product(range(m), repeat=len(part)):
            keys = [_invariant_key(m, part, res, ell) for ell in range(m)]
            if any(k in seen for k in keys):
                continue
            best = min(keys)
            seen.add(best)
            canon = [r for _, group in best for r in group]
            out.append(FormDatum.from_residues(m, base, part, canon))
    return out


def _isomorphism(src: Field, dst: Field, q: int, j: int):
    """Frobenius^j composed with the cached isomorphism src -> dst (same degree)."""
    if src is dst:
        return lambda a: dst.pow(a, q ** j)
    emb = dst.embedding(src)
    return lambda a: dst.pow(emb(a), q ** j)


def _is_mth_power(L: Field, a: int, m: int) -> bool:
    g = math.gcd(m, L.order - 1)
    return L.pow(a, (L.order - 1) // g) == 1


def aut_group_order(d: FormDatum) -> int:
    """(prod |L_i ∩ mu_m|) * #{a in Aut_k L : a(x)/x is an m-th power}."""
    q, m = d.q, d.m
    factors = d.algebra.factors
    roots_of_unity = math.prod(math.gcd(m, L.order - 1) for L in factors)
    groups = _degree_groups(d.degrees)
    # per-group candidate assignments: for each i, which (target, Galois power) work
    ok: dict[tuple[int, int], int] = {}
    for deg, idxs in groups.items():
        for i in idxs:
            for k in idxs:
                count = 0
                for j in range(deg):
                    phi = _isomorphism(factors[i], factors[k], q, j)
                    image = phi(d.x[i].value)
                    ratio = factors[k].mul(image, factors[k].inv(d.x[k].value))
                    if _is_mth_power(factors[k], ratio, m):
                        count += 1
                ok[(i, k)] = count
    stabilizer = 1
    for deg, idxs in groups.items():
        total = 0
        for perm in itertools.permutations(idxs):
            total += math.prod(ok[(i, k)] for i, k in zip(idxs, perm))
        stabilizer *= total
    return roots_of_unity * stabilizer


def splitting_degree(d: FormDatum) -> int:
    """Degree over k of a field containing every L_i and an m-th root of every x_i."""
    out = 1
    for L, xi, deg in zip(d.algebra.factors, d.x, d.degrees):
        t = 1
        while True:
            Q = L.order
            big = Q ** t
            g = math.gcd(d.m, big - 1)
            e = ((big - 1) // g) % (Q - 1)
            if L.pow(xi.value, e) == 1:
                break
            t += 1
        out = math.lcm(out, deg * t)
    return out


def verify_isomorphy(d: FormDatum, bases: Sequence[Sequence[FieldElement]] | None = None,
                     seed: int = 0) -> bool:
    """Check P^m_n(B X) = P{L,x} over a splitting field, with B invertible.

    Rows of B are phi(e_j) / y_phi for the embeddings phi = Frob^j o emb_i of
    each factor and y_phi = phi(y_i), y_i^m = x_i.
    """
    base, m, q = d.base, d.m, d.q
    P = trace_form(d, bases)
    N = splitting_degree(d)
    K = make_field(base.p, base.k * N)
    bases = bases if bases is not None else d.bases
    rows: list[list[int]] = []
    col = 0
    for idx, (L, xi) in enumerate(zip(d.algebra.factors, d.x)):
        basis = tuple(bases[idx]) if bases is not None else power_basis(L, base)
        deg = len(basis)
        emb = K.embedding(L)
        xk = emb(xi.value)
        ys = roots(K, [K.neg(xk)] + [0] * (m - 1) + [1], seed=seed)
        if not ys:
            return False
        y = min(ys)
        for j in range(deg):
            qj = q ** j
            yphi_inv = K.inv(K.pow(y, qj))
            row = [0] * d.n
            for k, e in enumerate(basis):
                row[col + k] = K.mul(K.pow(emb(e.value), qj), yphi_inv)
            rows.append(row)
        col += deg
    if _det(K, rows) == 0:
        return False
    # expand sum over rows of (row . X)^m and compare with P embedded in K
    emb_base = K.embedding(base)
    expanded: dict[tuple[int, ...], int] = {}
    for row in rows:
        support = [k for k, v in enumerate(row) if v]
        for sub in exponent_vectors(len(support), m):
            c = multinomial(sub) % base.p
            val = c
            for k, e in zip(support, sub):
                if e:
                    val = K.mul(val, K.pow(row[k], e))
            ex = [0] * d.n
            for k, e in zip(support, sub):
                ex[k] = e
            ex = tuple(ex)
            expanded[ex] = K.add(expanded.get(ex, 0), val)
    for ex in set(expanded) | set(P.terms):
        if expanded.get(ex, 0) != emb_base(P.terms.get(ex, 0)):
            return False
    return True


def _det(F: Field, rows: list[list[int]]) -> int:
    a = [list(r) for r in rows]
    n = len(a)
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = F.neg(det)
        det = F.mul(det, a[c][c])
        inv = F.inv(a[c][c])
        for r in range(c + 1, n):
            if a[r][c]:
                f = F.mul(a[r][c], inv)
                a[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(a[r], a[c])]
    return det


def multiplication_matrix(c: FieldElement, basis: Sequence[FieldElement], base: Field) -> list[list[int]]:
    """Matrix M over base with c * sum_j e_j X_j = sum_j e_j (M X)_j."""
    L = c.field
    emb = L.embedding(base)
    cols = []
    for e in basis:
        target = c * e
        cols.append(_coordinates(L, base, emb, basis, target))
    n = len(basis)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def _coordinates(L: Field, base: Field, emb, basis, target: FieldElement) -> list[int]:
    # brute solve over base for small degrees: linear algebra over F_p digits
    from .gf import _solve_mod_p
    if base.k != 1:
        raise DescentError("coordinates are only implemented over prime base fields")
    rows = [L.digits(e.value) for e in basis]
    sol = _solve_mod_p(rows, L.digits(target.value), L.p)
    if sol is None:
        raise DescentError("basis does not span the target")
    return list(sol)
