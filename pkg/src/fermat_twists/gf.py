"""Finite fields F_{p^k} in a polynomial basis, plus product algebras.

Elements are stored as integers: ``sum(c_i * p**i)`` encodes the residue
class of ``sum(c_i * t**i)`` modulo the field's defining polynomial.  The
same ``(p, k, modulus)`` triple always yields the same :class:`Field` object.
"""
from __future__ import annotations

import functools
import random
import threading
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
import sympy

#: Fields up to this many elements get exp/log tables on demand.
TABLE_CAP = 2**20


class FieldError(ValueError):
    pass


class NotASubfield(FieldError):
    pass


# ---------------------------------------------------------------------------
# polynomials over F_p (ascending coefficient lists)


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def _pdivmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            a[shift + i] = (a[shift + i] - c * y) % p
        _trim(a)
    return _trim(q), a


def _pgcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _trim([c % p for c in a]), _trim([c % p for c in b])
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def _ppowmod(base: Sequence[int], e: int, mod: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _pdivmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = _pdivmod(_pmul(result, base, p), mod, p)[1]
        e >>= 1
        if e:
            base = _pdivmod(_pmul(base, base, p), mod, p)[1]
    return result


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Rabin's irreducibility test for a monic polynomial over F_p."""
    f = _trim([c % p for c in modulus])
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    if _ppowmod(x, p**k, f, p) != x:
        return False
    for r in sympy.primefactors(k):
        h = _ppowmod(x, p ** (k // r), f, p)
        h = h + [0] * (2 - len(h))
        h[1] = (h[1] - 1) % p
        if len(_pgcd(f, _trim(h), p)) != 1:
            return False
    return True


def _has_root(f: Sequence[int], a: int, p: int) -> bool:
    acc = 0
    for c in reversed(f):
        acc = (acc * a + c) % p
    return acc == 0


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree k (ascending coefficient order)."""
    # constant term 0 means divisible by t, so start at c_0 = 1 for k > 1
    start = p ** (k - 1) if k > 1 else 0
    for idx in range(start, p**k):
        low = []
        for _ in range(k):
            idx, c = divmod(idx, p)
            low.append(c)
        # idx enumerates c_{k-1}..c_0 little-endian; flip so c_0 varies slowest
        cand = list(reversed(low)) + [1]
        if k > 1 and any(_has_root(cand, a, p) for a in range(min(p, 64))):
            continue
        if is_irreducible(cand, p):
            return tuple(cand)
    raise FieldError(f"no irreducible polynomial of degree {k} over F_{p}")


# ---------------------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def _make_field(p: int, k: int, modulus: tuple[int, ...]) -> "Field":
    return Field(p, k, modulus, _token=_TOKEN)


_TOKEN = object()


def make_field(p: int, k: int = 1, modulus: Sequence[int] | None = None) -> "Field":
    """Return F_{p^k}; the default modulus is the lexicographically smallest irreducible."""
    if not sympy.isprime(p):
        raise FieldError(f"{p} is not prime")
    if k < 1:
        raise FieldError("extension degree must be >= 1")
    if modulus is None:
        modulus = smallest_irreducible(p, k)
    modulus = tuple(int(c) % p for c in modulus)
    if len(modulus) != k + 1 or modulus[-1] != 1:
        raise FieldError(f"modulus must be monic of degree {k}")
    if not is_irreducible(modulus, p):
        raise FieldError(f"modulus {list(modulus)} is reducible over F_{p}")
    return _make_field(p, k, modulus)


def field_from_json(data: dict) -> "Field":
    return make_field(int(data["p"]), int(data.get("k", 1)), data.get("modulus"))


class Field:
    """The finite field F_p[t]/(modulus)."""

    def __init__(self, p: int, k: int, modulus: tuple[int, ...], *, _token=None):
        if _token is not _TOKEN:
            raise TypeError("use make_field() to construct fields")
        self.p = p
        self.k = k
        self.modulus = modulus
        self.order = p**k
        self._lock = threading.Lock()
        self._exp: np.ndarray | None = None
        self._log: np.ndarray | None = None
        self._generator: int | None = None
        self._embeddings: dict[Field, Embedding] = {}

    def __repr__(self) -> str:
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k}, modulus={list(self.modulus)})"

    def __reduce__(self):
        return (make_field, (self.p, self.k, self.modulus))

    def to_json(self) -> dict:
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}

    # -- construction of elements ---------------------------------------
    def __call__(self, value: int | Sequence[int] | "FieldElement") -> "FieldElement":
        """Coerce: ints are prime-field constants, sequences are coefficient lists."""
        if isinstance(value, FieldElement):
            if value.field is not self:
                raise FieldError(f"{value!r} does not belong to {self!r}")
            return value
        if isinstance(value, (int, np.integer)):
            return FieldElement(self, int(value) % self.p)
        return FieldElement(self, self.encode(value))

    def from_index(self, index: int) -> "FieldElement":
        if not 0 <= index < self.order:
            raise FieldError(f"index {index} out of range for {self!r}")
        return FieldElement(self, index)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def root(self) -> "FieldElement":
        """The class of t, i.e. the adjoined root of the modulus."""
        if self.k == 1:
            return FieldElement(self, (-self.modulus[0]) % self.p)
        return FieldElement(self, self.p)

    def elements(self) -> Iterable["FieldElement"]:
        return (FieldElement(self, i) for i in range(self.order))

    # -- integer-level arithmetic ---------------------------------------
    def digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            a, c = divmod(a, self.p)
            out.append(c)
        return out

    def encode(self, coeffs: Sequence[int]) -> int:
        coeffs = [int(c) % self.p for c in coeffs]
        if len(coeffs) > self.k:
            coeffs = _pdivmod(coeffs, self.modulus, self.p)[1]
        v = 0
        for c in reversed(coeffs):
            v = v * self.p + c
        return v

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        p, out, scale = self.p, 0, 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            out += ((x + y) % p) * scale
            scale *= p
        return out

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        p, out, scale = self.p, 0, 1
        while a:
            a, x = divmod(a, p)
            out += ((-x) % p) * scale
            scale *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.k == 1:
            return a * b % self.p
        if self._log is not None:
            return int(self._exp[(self._log[a] + self._log[b]) % (self.order - 1)])
        prod = _pmul(self.digits(a), self.digits(b), self.p)
        return self.encode(_pdivmod(prod, self.modulus, self.p)[1])

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if a == 0:
            return 1 if e == 0 else 0
        if self.k == 1:
            return pow(a, e, self.p)
        e %= self.order - 1
        if self._log is not None:
            return int(self._exp[(int(self._log[a]) * e) % (self.order - 1)])
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self!r}")
        if self.k == 1:
            return pow(a, -1, self.p)
        if self._log is not None:
            return int(self._exp[(-int(self._log[a])) % (self.order - 1)])
        return self.pow(a, self.order - 2)

    def frobenius(self, a: int, j: int = 1) -> int:
        """a ** (p ** j)."""
        return self.pow(a, self.p ** (j % self.k))

    # -- multiplicative structure ---------------------------------------
    @functools.cached_property
    def _unit_prime_factors(self) -> list[int]:
        return sorted(sympy.primefactors(self.order - 1))

    def is_generator(self, a: int) -> bool:
        if a == 0:
            return False
        if self.order == 2:
            return a == 1
        return all(self.pow(a, (self.order - 1) // ell) != 1 for ell in self._unit_prime_factors)

    @property
    def generator(self) -> "FieldElement":
        """Smallest (by encoding) generator of the multiplicative group."""
        if self._generator is None:
            g = next(a for a in range(1, self.order) if self.is_generator(a))
            self._generator = g
        return FieldElement(self, self._generator)

    def _build_tables(self) -> None:
        with self._lock:
            if self._log is not None:
                return
            n = self.order - 1
            g = self.generator.value
            exp = np.zeros(n, dtype=np.int64)
            if self.k == 1:
                acc = 1
                for i in range(n):
                    exp[i] = acc
                    acc = acc * g % self.p
            else:
                exp[:] = _power_table(self, g, n)
            log = np.zeros(self.order, dtype=np.int64)
            log[exp] = np.arange(n, dtype=np.int64)
            self._exp = exp
            self._log = log

    def tables(self) -> tuple[np.ndarray, np.ndarray]:
        """(exp, log) arrays w.r.t. :attr:`generator`; built once, capped at TABLE_CAP."""
        if self.order > TABLE_CAP:
            raise FieldError(f"{self!r} exceeds the table cap of {TABLE_CAP} elements")
        if self._log is None:
            self._build_tables()
        return self._exp, self._log

    def dlog(self, e: int, g: int | None = None) -> int:
        """The unique d in [0, order-1) with g**d == e."""
        if e == 0:
            raise FieldError("discrete log of zero")
        if g is None:
            g = self.generator.value
        n = self.order - 1
        if self.order <= TABLE_CAP:
            _, log = self.tables()
            le, lg = int(log[e]), int(log[g])
            d = sympy.gcd(lg, n)
            if d != 1:
                if le % d:
                    raise FieldError(f"{e} is not a power of {g}")
                # g is not a generator: solve modulo the order of g
                n_g = n // d
                return (le // d) * pow(lg // d, -1, n_g) % n_g
            return le * pow(lg, -1, n) % n
        return _bsgs(self, e, g)

    # -- subfields -------------------------------------------------------
    def contains_subfield(self, small: "Field") -> bool:
        return small.p == self.p and self.k % small.k == 0

    def embedding(self, small: "Field") -> "Embedding":
        """Embedding small -> self, cached; the image of t is the smallest root of small.modulus."""
        if not self.contains_subfield(small):
            raise NotASubfield(f"{small!r} is not a subfield of {self!r}")
        emb = self._embeddings.get(small)
        if emb is None:
            with self._lock:
                emb = self._embeddings.get(small)
                if emb is None:
                    if small.k == 1:
                        root = 0
                    else:
                        root = min(roots(self, [c for c in small.modulus]))
                    emb = Embedding(small, self, root)
                    self._embeddings[small] = emb
        return emb


def _power_table(field: Field, g: int, n: int) -> np.ndarray:
    """[g^0, ..., g^(n-1)] as encodings, vectorised in blocks of ~sqrt(n)."""
    p, k = field.p, field.k
    block = max(1, int(np.sqrt(n)))
    first = [1]
    for _ in range(block - 1):
        first.append(field.mul(first[-1], g))
    digits = np.array([field.digits(a) for a in first], dtype=np.int64)
    step = field.digits(field.pow(g, block))
    # reduction rows: t^(k+j) as digit vectors, j = 0..k-2
    red = np.zeros((max(k - 1, 1), k), dtype=np.int64)
    cur = [(-c) % p for c in field.modulus[:k]]
    for j in range(k - 1):
        red[j] = cur
        shifted = [0] + cur[:-1]
        top = cur[-1]
        cur = [(s - top * c) % p for s, c in zip(shifted, field.modulus[:k])]
    weights = p ** np.arange(k, dtype=np.int64)
    out = np.empty(n, dtype=np.int64)
    pos = 0
    while pos < n:
        take = min(block, n - pos)
        out[pos:pos + take] = digits[:take] @ weights
        pos += take
        full = np.zeros((digits.shape[0], 2 * k - 1), dtype=np.int64)
        for i, c in enumerate(step):
            if c:
                full[:, i:i + k] += c * digits
        full %= p
        nxt = full[:, :k].copy()
        for j in range(k - 1):
            nxt += np.outer(full[:, k + j], red[j])
        digits = nxt % p
    return out


def _bsgs(field: Field, e: int, g: int) -> int:
    n = field.order - 1
    s = int(np.ceil(np.sqrt(n)))
    baby = {}
    cur = 1
    for j in range(s):
        baby.setdefault(cur, j)
        cur = field.mul(cur, g)
    factor = field.inv(field.pow(g, s))
    gamma = e
    for i in range(s + 1):
        j = baby.get(gamma)
        if j is not None:
            return (i * s + j) % n
        gamma = field.mul(gamma, factor)
    raise FieldError(f"{e} is not a power of {g}")


# ---------------------------------------------------------------------------
# polynomials with coefficients in an arbitrary Field (ints, ascending)


def _fp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mul(F: Field, a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return _fp_trim(out)


def _fp_divmod(F: Field, a: Sequence[int], b: Sequence[int]) -> tuple[list[int], list[int]]:
    a, b = _fp_trim(list(a)), _fp_trim(list(b))
    if not b:
        raise ZeroDivisionError
    inv_lead = F.inv(b[-1])
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        c = F.mul(a[-1], inv_lead)
        shift = len(a) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            a[shift + i] = F.sub(a[shift + i], F.mul(c, y))
        _fp_trim(a)
    return _fp_trim(q), a


def _fp_gcd(F: Field, a: Sequence[int], b: Sequence[int]) -> list[int]:
    a, b = _fp_trim(list(a)), _fp_trim(list(b))
    while b:
        a, b = b, _fp_divmod(F, a, b)[1]
    if a:
        inv = F.inv(a[-1])
        a = [F.mul(c, inv) for c in a]
    return a


def _fp_powmod(F: Field, base: Sequence[int], e: int, mod: Sequence[int]) -> list[int]:
    result = [1]
    base = _fp_divmod(F, base, mod)[1]
    while e:
        if e & 1:
            result = _fp_divmod(F, _fp_mul(F, result, base), mod)[1]
        e >>= 1
        if e:
            base = _fp_divmod(F, _fp_mul(F, base, base), mod)[1]
    return result


def roots(F: Field, poly: Sequence[int], seed: int = 0) -> list[int]:
    """All distinct roots in F of a polynomial with coefficients in F (ascending)."""
    f = _fp_trim(list(poly))
    if len(f) <= 1:
        return []
    if F.order <= 4096:
        out = []
        for a in range(F.order):
            acc = 0
            for c in reversed(f):
                acc = F.add(F.mul(acc, a), c)
            if acc == 0:
                out.append(a)
        return out
    xq = _fp_powmod(F, [0, 1], F.order, f)
    xq = xq + [0] * (2 - len(xq))
    xq[1] = F.sub(xq[1], 1)
    h = _fp_gcd(F, f, _fp_trim(xq))
    rng = random.Random(seed)
    found: list[int] = []
    _split_linear(F, h, rng, found)
    return sorted(found)


def _split_linear(F: Field, h: list[int], rng: random.Random, out: list[int]) -> None:
    deg = len(h) - 1
    if deg <= 0:
        return
    if deg == 1:
        out.append(F.neg(F.mul(h[0], F.inv(h[1]))))
        return
    while True:
        delta = rng.randrange(F.order)
        if F.p == 2:
            # absolute trace map splits in characteristic 2
            term = [delta, 1]
            acc = list(term)
            for _ in range(F.k - 1):
                term = _fp_divmod(F, _fp_mul(F, term, term), h)[1]
                acc = [F.add(x, y) for x, y in _zip_pad(acc, term)]
            g = _fp_gcd(F, h, _fp_trim(acc))
        else:
            w = _fp_powmod(F, [delta, 1], (F.order - 1) // 2, h)
            w = w + [0] * (1 - len(w))
            w[0] = F.sub(w[0], 1)
            g = _fp_gcd(F, h, _fp_trim(w))
        if 0 < len(g) - 1 < deg:
            _split_linear(F, g, rng, out)
            _split_linear(F, _fp_divmod(F, h, g)[0], rng, out)
            return


def _zip_pad(a: list[int], b: list[int]):
    n = max(len(a), len(b))
    return zip(a + [0] * (n - len(a)), b + [0] * (n - len(b)))


def _solve_mod_p(rows: list[list[int]], rhs: list[int], p: int) -> list[int] | None:
    """Solve sum_i c_i * rows[i] == rhs over F_p (rows are vectors)."""
    n, dim = len(rows), len(rhs)
    aug = [[rows[i][r] for i in range(n)] + [rhs[r]] for r in range(dim)]
    piv_cols = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, dim) if aug[i][c] % p), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = pow(aug[r][c], -1, p)
        aug[r] = [x * inv % p for x in aug[r]]
        for i in range(dim):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [(x - f * y) % p for x, y in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
    if any(aug[i][n] % p for i in range(r, dim)):
        return None
    sol = [0] * n
    for i, c in enumerate(piv_cols):
        sol[c] = aug[i][n]
    return sol


class Embedding:
    """A field embedding small -> big fixed by the image of small's adjoined root."""

    def __init__(self, small: Field, big: Field, root: int):
        self.small, self.big, self.root = small, big, root
        powers = [1]
        for _ in range(small.k - 1):
            powers.append(big.mul(powers[-1], root))
        self._powers = powers
        self._table: list[int] | None = None
        self._inverse: dict[int, int] | None = None
        if small.order <= 2**16:
            self._table = [self._image(a) for a in range(small.order)]
            self._inverse = {b: a for a, b in enumerate(self._table)}

    def _image(self, a: int) -> int:
        acc = 0
        for c, pw in zip(self.small.digits(a), self._powers):
            if c:
                acc = self.big.add(acc, self.big.mul(c, pw))
        return acc

    def __call__(self, a: int) -> int:
        if self._table is not None:
            return self._table[a]
        return self._image(a)

    def preimage(self, b: int) -> int:
        if self._inverse is not None:
            try:
                return self._inverse[b]
            except KeyError:
                raise NotASubfield(f"{b} is not in the image of {self.small!r}") from None
        rows = [self.big.digits(pw) for pw in self._powers]
        sol = _solve_mod_p(rows, self.big.digits(b), self.small.p)
        if sol is None:
            raise NotASubfield(f"{b} is not in the image of {self.small!r}")
        return self.small.encode(sol)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldElement:
    field: Field
    value: int

    @property
    def coeffs(self) -> list[int]:
        return self.field.digits(self.value)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise FieldError(f"mixed fields {self.field!r} and {other.field!r}")
            return other.value
        if isinstance(other, (int, np.integer)):
            return int(other) % self.field.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.sub(o, self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.mul(self.value, self.field.inv(o)))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.mul(o, self.field.inv(self.value)))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def frobenius(self, j: int = 1) -> "FieldElement":
        return FieldElement(self.field, self.field.frobenius(self.value, j))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field is other.field and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == int(other) % self.field.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((id(self.field), self.value))

    def __repr__(self) -> str:
        if self.field.k == 1:
            return str(self.value)
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(reversed(terms)) or "0"

    def to_json(self) -> list[int]:
        return self.coeffs


def dlog(e: FieldElement, g: FieldElement | None = None) -> int:
    if g is not None and g.field is not e.field:
        raise FieldError("dlog arguments live in different fields")
    return e.field.dlog(e.value, None if g is None else g.value)


def trace_to_base(e: FieldElement, base: Field) -> FieldElement:
    """Relative trace e + e^q + ... + e^(q^(d-1)) down to the subfield ``base`` (q = |base|)."""
    F = e.field
    if not F.contains_subfield(base):
        raise NotASubfield(f"{base!r} is not a subfield of {F!r}")
    d = F.k // base.k
    acc, cur = 0, e.value
    for _ in range(d):
        acc = F.add(acc, cur)
        cur = F.pow(cur, base.order)
    return FieldElement(base, F.embedding(base).preimage(acc))


def mu_m_power(x: FieldElement, m: int, base: Field | None = None) -> FieldElement:
    """x^((|F|-1)/m), pulled back into ``base`` (default: the prime field).

    Depends only on the class of x modulo m-th powers; the result is an m-th
    root of unity of ``base``.
    """
    F = x.field
    if base is None:
        base = make_field(F.p)
    if x.value == 0:
        raise FieldError("mu_m_power of zero")
    if (base.order - 1) % m:
        raise FieldError(f"m={m} does not divide |base|-1={base.order - 1}")
    if not F.contains_subfield(base):
        raise NotASubfield(f"{base!r} is not a subfield of {F!r}")
    val = F.pow(x.value, (F.order - 1) // m)
    out = FieldElement(base, F.embedding(base).preimage(val))
    assert (out ** m).value == 1
    return out


@dataclass(frozen=True)
class CharacterSpec:
    """A multiplicative character of exact order m, pinned by chi(generator) = zeta_m."""

    field: Field
    generator: FieldElement
    m: int

    def __post_init__(self):
        if not self.field.is_generator(self.generator.value):
            raise FieldError(f"{self.generator!r} does not generate {self.field!r}^x")
        if (self.field.order - 1) % self.m:
            raise FieldError(f"no character of order {self.m} on {self.field!r}^x")

    @classmethod
    def default(cls, field: Field, m: int) -> "CharacterSpec":
        return cls(field, field.generator, m)

    def exponent(self, e: FieldElement | int) -> int:
        """chi(e) = zeta^exponent(e)."""
        v = e.value if isinstance(e, FieldElement) else e
        return self.field.dlog(v, self.generator.value) % self.m


@dataclass(frozen=True)
class AlgebraSpec:
    """The etale algebra prod_i F_{q^{n_i}} over a base F_q."""

    base: Field
    factors: tuple[Field, ...]

    def __post_init__(self):
        for f in self.factors:
            if not f.contains_subfield(self.base):
                raise NotASubfield(f"{self.base!r} is not a subfield of factor {f!r}")

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(f.k // self.base.k for f in self.factors)

    @property
    def n(self) -> int:
        return sum(self.degrees)

    @classmethod
    def split(cls, base: Field, n: int) -> "AlgebraSpec":
        return cls(base, (base,) * n)

    @classmethod
    def from_degrees(cls, base: Field, degrees: Iterable[int]) -> "AlgebraSpec":
        return cls(base, tuple(extension(base, d) for d in degrees))


def extension(base: Field, d: int) -> Field:
    """Default field of degree d over base (absolute degree base.k * d)."""
    if d == 1:
        return base
    return make_field(base.p, base.k * d)
