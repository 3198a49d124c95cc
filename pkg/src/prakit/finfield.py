"""Exact arithmetic in GF(p^e).

Elements are stored as integers ``v = sum(c_i * p**i)`` where ``c_i`` is the
coefficient of ``x**i`` in the residue modulo the field's irreducible
polynomial. Integer order on this encoding is the total order used everywhere
else in the package (matrix canonicalization, polynomial choice).

Scalar hot paths go through :class:`FieldCtx` methods on raw ints.
:class:`FieldElement` is a thin operator-overloading wrapper for the public API.
"""

from __future__ import annotations

import builtins
import functools
import math

import numpy as np

MAX_ORDER = 2**20
_TABLE_LIMIT = 256


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, e)`` with ``q == p**e`` or None if q is not a prime power."""
    if q < 2:
        return None
    fs = prime_factors(q)
    if len(fs) != 1:
        return None
    p = fs[0]
    e = round(math.log(q, p))
    while p**e > q:
        e -= 1
    while p**e < q:
        e += 1
    return (p, e) if p**e == q else None


# --- polynomials over GF(p), coefficient lists low -> high -------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    dm = len(m) - 1
    lead_inv = builtins.pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        c = a[-1] * lead_inv % p
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _trim(a)
    return a


def _pmulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _pmod(out, m, p)


def _int_to_coeffs(v: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        v, r = divmod(v, p)
        out.append(r)
    return out


def _coeffs_to_int(c, p: int) -> int:
    v = 0
    for x in reversed(list(c)):
        v = v * p + x
    return v


def is_irreducible_mod_p(f: list[int], p: int) -> bool:
    """Trial-division irreducibility test for a monic polynomial over GF(p)."""
    deg = len(f) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for low in range(p**d):
            g = _int_to_coeffs(low, p, d) + [1]
            if not _pmod(list(f), g, p):
                return False
    return True


def smallest_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree e (coeffs low -> high)."""
    if e == 1:
        return (0, 1)
    for low in range(p**e):
        f = _int_to_coeffs(low, p, e) + [1]
        if f[0] == 0:
            continue
        if is_irreducible_mod_p(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class FieldCtx:
    """GF(p^e) with log/antilog tables built from a primitive element."""

    def __init__(self, p: int, e: int, irreducible: tuple[int, ...]):
        self.p = p
        self.e = e
        self.q = p**e
        self.irreducible = tuple(irreducible)
        q = self.q
        self.pw = p ** np.arange(e, dtype=np.int64)
        self.digits = (np.arange(q, dtype=np.int64)[:, None] // self.pw[None, :]) % p
        self._build_tables()
        if q <= _TABLE_LIMIT:
            ar = np.arange(q)
            self.add_table = self.add_vec(ar[:, None], ar[None, :]).tolist()
            self.mul_table = self.mul_vec(ar[:, None], ar[None, :]).tolist()
        else:
            self.add_table = None
            self.mul_table = None

    # -- construction --------------------------------------------------------

    def _mulmat(self, g: int) -> np.ndarray:
        """Matrix over GF(p) of multiplication by g, acting on digit rows."""
        e, p = self.e, self.p
        gc = _int_to_coeffs(g, p, e)
        rows = []
        for j in range(e):
            xj = [0] * j + [1]
            prod = _pmulmod(xj, gc, list(self.irreducible), p)
            rows.append(prod + [0] * (e - len(prod)))
        return np.array(rows, dtype=np.int64)

    def _polymul(self, a: int, b: int) -> int:
        p, e = self.p, self.e
        r = _pmulmod(_int_to_coeffs(a, p, e), _int_to_coeffs(b, p, e), list(self.irreducible), p)
        return _coeffs_to_int(r, p)

    def _polypow(self, a: int, n: int) -> int:
        r, b = 1, a
        while n:
            if n & 1:
                r = self._polymul(r, b)
            b = self._polymul(b, b)
            n >>= 1
        return r

    def _build_tables(self) -> None:
        q, p = self.q, self.p
        order = q - 1
        if q == 2:
            gen = 1
        else:
            fs = prime_factors(order)
            gen = next(g for g in range(2, q)
                       if all(self._polypow(g, order // r) != 1 for r in fs))
        self.generator = gen
        exp = np.empty(order, dtype=np.int64)
        block = min(order, 1024)
        m = self._mulmat(gen)
        cur = np.zeros(self.e, dtype=np.int64)
        cur[0] = 1
        rows = np.empty((block, self.e), dtype=np.int64)
        for i in range(block):
            rows[i] = cur
            cur = (cur @ m) % p
        exp[:block] = rows @ self.pw
        if block < order:
            mb = self._mulmat(int(cur @ self.pw))
            start = block
            while start < order:
                rows = (rows @ mb) % p
                end = min(order, start + block)
                exp[start:end] = (rows @ self.pw)[: end - start]
                start = end
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(order)
        self.exp_arr, self.log_arr = exp, log
        self.exp = exp.tolist()
        self.log = log.tolist()

    # -- scalar ops on raw ints ---------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.add_table is not None:
            return self.add_table[a][b]
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        p, r, m = self.p, 0, 1
        while a or b:
            r += ((a % p + b % p) % p) * m
            a //= p
            b //= p
            m *= p
        return r

    def neg(self, a: int) -> int:
        if self.p == 2 or a == 0:
            return a
        if self.e == 1:
            return self.p - a
        p, r, m = self.p, 0, 1
        while a:
            r += (-(a % p) % p) * m
            a //= p
            m *= p
        return r

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.mul_table is not None:
            return self.mul_table[a][b]
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.q)
        return self.exp[(-self.log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("inverse of zero in GF(%d)" % self.q)
            return 1 if n == 0 else 0
        return self.exp[(self.log[a] * n) % (self.q - 1)]

    # -- vectorized ops --------------------------------------------------------

    def add_vec(self, a, b) -> np.ndarray:
        a, b = np.asarray(a), np.asarray(b)
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return ((self.digits[a] + self.digits[b]) % self.p) @ self.pw

    def neg_vec(self, a) -> np.ndarray:
        a = np.asarray(a)
        if self.p == 2:
            return a
        return ((-self.digits[a]) % self.p) @ self.pw

    def mul_vec(self, a, b) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        zero = (a == 0) | (b == 0)
        r = self.exp_arr[(self.log_arr[a] + self.log_arr[b]) % (self.q - 1)]
        return np.where(zero, 0, r)

    def poly_eval_vec(self, coeffs, xs) -> np.ndarray:
        """Evaluate a polynomial (raw coeffs low -> high) at every x in xs."""
        xs = np.asarray(xs)
        acc = np.zeros_like(xs)
        for c in reversed(list(coeffs)):
            acc = self.add_vec(self.mul_vec(acc, xs), np.full_like(xs, c))
        return acc

    # -- wrappers ------------------------------------------------------------

    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            return value
        if isinstance(value, (list, tuple)):
            if len(value) != self.e or any(not 0 <= c < self.p for c in value):
                raise ValueError("coefficient vector must have %d entries in [0, %d)" % (self.e, self.p))
            return FieldElement(self, _coeffs_to_int(value, self.p))
        v = int(value)
        if self.e == 1:
            v %= self.p
        elif not 0 <= v < self.q:
            raise ValueError("raw value out of range for GF(%d)" % self.q)
        return FieldElement(self, v)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, v) for v in range(self.q)]

    def coeffs(self, v: int) -> tuple[int, ...]:
        return tuple(_int_to_coeffs(v, self.p, self.e))

    def __repr__(self) -> str:
        return "GF(%d^%d)" % (self.p, self.e)


class FieldElement:
    __slots__ = ("ctx", "value")

    def __init__(self, ctx: FieldCtx, value: int):
        self.ctx = ctx
        self.value = value

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.ctx.coeffs(self.value)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx:
                raise ValueError("elements belong to different fields")
            return other.value
        return self.ctx(other).value

    def __add__(self, other):
        return FieldElement(self.ctx, self.ctx.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.ctx, self.ctx.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.ctx, self.ctx.sub(self._other(other), self.value))

    def __mul__(self, other):
        return FieldElement(self.ctx, self.ctx.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.ctx, self.ctx.div(self.value, self._other(other)))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.value))

    def __pow__(self, n: int):
        return FieldElement(self.ctx, self.ctx.pow(self.value, n))

    def inverse(self):
        return FieldElement(self.ctx, self.ctx.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx is other.ctx and self.value == other.value
        if isinstance(other, int):
            return self.value == self.ctx(other).value
        return NotImplemented

    def __hash__(self):
        return hash((id(self.ctx), self.value))

    def __lt__(self, other):
        return self.value < self._other(other)

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        if self.ctx.e == 1:
            return "%d" % self.value
        terms = []
        for i, c in reversed(list(enumerate(self.coeffs))):
            if c:
                mono = "" if i == 0 else ("x" if i == 1 else "x^%d" % i)
                coef = "" if (c == 1 and i) else str(c)
                terms.append(coef + mono)
        return " + ".join(terms) or "0"


@functools.lru_cache(maxsize=None)
def make_field(p: int, e: int = 1) -> FieldCtx:
    """Build GF(p^e) using the smallest monic irreducible of degree e."""
    if not is_prime(p):
        raise ValueError("%r is not prime" % p)
    if e < 1:
        raise ValueError("extension degree must be >= 1")
    if p**e > MAX_ORDER:
        raise ValueError("field order %d^%d exceeds the 2^20 cap" % (p, e))
    return FieldCtx(p, e, smallest_irreducible(p, e))


def field_of_order(q: int) -> FieldCtx:
    pe = prime_power(q)
    if pe is None:
        raise ValueError("%r is not a prime power" % q)
    return make_field(*pe)


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def neg(a: FieldElement) -> FieldElement:
    return -a


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def pow(a: FieldElement, n: int) -> FieldElement:  # noqa: A001
    return a**n


# --- polynomials over an arbitrary FieldCtx (raw coeff lists, low -> high) ----

def poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_sub(F: FieldCtx, a: list[int], b: list[int]) -> list[int]:
    n = max(len(a), len(b))
    out = [F.sub(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)]
    return poly_trim(out)


def poly_mul(F: FieldCtx, a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return poly_trim(out)


def poly_divmod(F: FieldCtx, a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    b = poly_trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = poly_trim(list(a))
    db = len(b) - 1
    lead_inv = F.inv(b[-1])
    quo = [0] * max(len(a) - db, 0)
    while len(a) - 1 >= db:
        c = F.mul(a[-1], lead_inv)
        shift = len(a) - 1 - db
        quo[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] = F.sub(a[shift + i], F.mul(c, bc))
        poly_trim(a)
    return poly_trim(quo), a


def poly_gcd(F: FieldCtx, a: list[int], b: list[int]) -> list[int]:
    a, b = poly_trim(list(a)), poly_trim(list(b))
    while b:
        a, b = b, poly_divmod(F, a, b)[1]
    if a:
        li = F.inv(a[-1])
        a = [F.mul(c, li) for c in a]
    return a


def poly_powmod(F: FieldCtx, base: list[int], n: int, mod: list[int]) -> list[int]:
    result = [1]
    base = poly_divmod(F, base, mod)[1]
    while n:
        if n & 1:
            result = poly_divmod(F, poly_mul(F, result, base), mod)[1]
        base = poly_divmod(F, poly_mul(F, base, base), mod)[1]
        n >>= 1
    return result


def splitting_degree(F: FieldCtx, f: list[int]) -> int:
    """Degree over F of the splitting field of f (lcm of irreducible factor degrees)."""
    h = poly_trim(list(f))
    if len(h) <= 1:
        return 1
    li = F.inv(h[-1])
    h = [F.mul(c, li) for c in h]
    m, d = 1, 0
    x = [0, 1]
    while len(h) > 1:
        d += 1
        xq = poly_powmod(F, x, F.q**d, h)
        g = poly_gcd(F, h, poly_sub(F, xq, x))
        if len(g) > 1:
            m = m * d // math.gcd(m, d)
            while True:
                c = poly_gcd(F, h, g)
                if len(c) <= 1:
                    break
                h = poly_divmod(F, h, c)[0]
    return m


def poly_roots(F: FieldCtx, f: list[int]) -> list[int]:
    """All distinct roots of f in F, by exhaustive vectorized evaluation."""
    xs = np.arange(F.q, dtype=np.int64)
    vals = F.poly_eval_vec(f, xs)
    return np.flatnonzero(vals == 0).tolist()


@functools.lru_cache(maxsize=None)
def embedding(small: FieldCtx, big: FieldCtx) -> tuple[int, ...]:
    """Images of the raw elements of ``small`` inside ``big`` (a field homomorphism)."""
    if small.p != big.p or big.e % small.e:
        raise ValueError("%r does not embed in %r" % (small, big))
    if small.e == 1:
        return tuple(range(small.q))
    root = min(poly_roots(big, list(small.irreducible)))
    powers = [1]
    for _ in range(small.e - 1):
        powers.append(big.mul(powers[-1], root))
    out = []
    for v in range(small.q):
        acc = 0
        for c, pw in zip(small.coeffs(v), powers):
            if c:
                acc = big.add(acc, big.mul(c, pw))
        out.append(acc)
    return tuple(out)
