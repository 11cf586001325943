"""Exact arithmetic in F_{p^e}, polynomials, orders and root finding.

Field elements are plain ints in [0, q): the integer sum(c_i * p^i) encodes
the coefficient vector (c_0, ..., c_{e-1}) with respect to the canonical
generator.  The canonical field for (p, e) uses the lexicographically least
monic irreducible of degree e over F_p, so elements, enumeration order and
printing are deterministic across runs.
"""

from __future__ import annotations

import random
from functools import lru_cache
from typing import List, Optional, Tuple

# -- integer helpers ---------------------------------------------------------


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> dict:
    """Trial-division factorization; field sizes here stay below 2**64."""
    out: dict = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


# -- polynomials over F_p (dense int lists, index = degree) ------------------


def _pmod_trim(c: List[int]) -> List[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _pmod_mul(a: List[int], b: List[int], p: int) -> List[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _pmod_trim(out)


def _pmod_rem(a: List[int], m: List[int], p: int) -> List[int]:
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        a = _pmod_trim(a)
        if len(a) - 1 < dm or not a:
            break
        coef = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * mi) % p
        a = _pmod_trim(a)
    return a


def _pmod_powmod(base: List[int], exp: int, m: List[int], p: int) -> List[int]:
    result = [1]
    base = _pmod_rem(base, m, p)
    while exp:
        if exp & 1:
            result = _pmod_rem(_pmod_mul(result, base, p), m, p)
        base = _pmod_rem(_pmod_mul(base, base, p), m, p)
        exp >>= 1
    return result


def _pmod_gcd(a: List[int], b: List[int], p: int) -> List[int]:
    a, b = list(a), list(b)
    while b:
        a, b = b, _pmod_rem(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def _is_irreducible(poly: List[int], p: int) -> bool:
    """Irreducibility over F_p via the x^{p^i} - x criterion."""
    e = len(poly) - 1
    if e <= 0:
        return False
    x = [0, 1]
    # x^{p^e} == x mod poly
    t = _pmod_powmod(x, p ** e, poly, p)
    if _pmod_trim(list(t)) != [0, 1]:
        return False
    for r in factorize(e):
        t = _pmod_powmod(x, p ** (e // r), poly, p)
        diff = list(t) + [0] * (2 - len(t))
        diff[1] = (diff[1] - 1) % p
        g = _pmod_gcd(poly, _pmod_trim(diff), p)
        if len(g) - 1 >= 1:
            return False
    return True


def _least_irreducible(p: int, e: int) -> List[int]:
    """Lexicographically least monic irreducible of degree e over F_p.

    Candidates are ordered by the coefficient tuple (c_{e-1}, ..., c_0).
    """
    if e == 1:
        return [0, 1]
    for code in range(p ** e):
        coeffs = []
        v = code
        for _ in range(e):  # c_0 varies fastest in lex order on (c_{e-1}..c_0)
            coeffs.append(v % p)
            v //= p
        poly = coeffs + [1]
        if _is_irreducible(poly, p):
            return poly
    raise AssertionError("no irreducible polynomial found")


# -- the field itself --------------------------------------------------------

_LOG_TABLE_LIMIT = 1 << 17


class Field:
    """The canonical finite field with p^e elements.

    Elements are ints in [0, q) encoding coefficient vectors base p.
    Use :func:`make_field` to obtain the cached canonical instance.
    """

    def __init__(self, p: int, e: int, _token=None):
        if _token is not _FIELD_TOKEN:
            raise TypeError("use make_field(p, e)")
        self.p = p
        self.e = e
        self.q = p ** e
        self.modulus = _least_irreducible(p, e)
        self._exp: Optional[List[int]] = None
        self._log: Optional[List[int]] = None
        self._unit_factorization: Optional[dict] = None

    def __repr__(self):
        return f"F_{self.q}" if self.e == 1 else f"F_{self.q} (= F_{self.p}^{self.e})"

    # encoding helpers

    def coeffs(self, a: int) -> Tuple[int, ...]:
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def encode(self, coeffs) -> int:
        val = 0
        for c in reversed(list(coeffs)):
            val = val * self.p + c % self.p
        return val

    def elements(self):
        return range(self.q)

    # arithmetic

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        p = self.p
        out = 0
        mult = 1
        while a or b:
            out += ((a % p + b % p) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        p = self.p
        out = 0
        mult = 1
        while a:
            out += ((p - a % p) % p) * mult
            a //= p
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return a * b % self.p
        if self._log is not None:
            if a == 0 or b == 0:
                return 0
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_slow(a, b)

    def _mul_slow(self, a: int, b: int) -> int:
        prod = _pmod_mul(list(self.coeffs(a)), list(self.coeffs(b)), self.p)
        prod = _pmod_rem(prod, self.modulus, self.p)
        return self.encode(prod + [0] * (self.e - len(prod)))

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        if self._log is not None:
            return self._exp[(self.q - 1) - self._log[a] if self._log[a] else 0]
        return self.pow(a, self.q - 2)

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            return self.pow(self.inv(a), -n)
        if a == 0:
            return 0 if n > 0 else 1
        n %= self.q - 1
        result = 1
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    # tables, orders, generators

    def _build_tables(self):
        if self._exp is not None or self.q > _LOG_TABLE_LIMIT or self.e == 1:
            return
        g = self.multiplicative_generator()
        exp = [1] * (2 * (self.q - 1))
        log = [0] * self.q
        acc = 1
        for i in range(self.q - 1):
            exp[i] = acc
            log[acc] = i
            acc = self._mul_slow(acc, g)
        for i in range(self.q - 1, 2 * (self.q - 1)):
            exp[i] = exp[i - (self.q - 1)]
        self._exp, self._log = exp, log

    def unit_group_factorization(self) -> dict:
        if self._unit_factorization is None:
            self._unit_factorization = factorize(self.q - 1)
        return self._unit_factorization

    def element_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        order = self.q - 1
        for r in self.unit_group_factorization():
            while order % r == 0 and self.pow(a, order // r) == 1:
                order //= r
        return order

    def multiplicative_generator(self) -> int:
        primes = list(self.unit_group_factorization())
        for a in range(1, self.q):
            if all(self.pow(a, (self.q - 1) // r) != 1 for r in primes):
                return a
        raise AssertionError("no primitive root found")

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def format_element(self, a: int) -> str:
        return "(" + ",".join(str(c) for c in self.coeffs(a)) + ")"


_FIELD_TOKEN = object()


@lru_cache(maxsize=None)
def make_field(p: int, e: int) -> Field:
    """Canonical field F_{p^e}; p must be prime, e >= 1."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if e < 1:
        raise ValueError("extension degree must be positive")
    field = Field(p, e, _token=_FIELD_TOKEN)
    field._build_tables()
    return field


def element_of_order(field: Field, k: int) -> int:
    """An element of exact multiplicative order k; requires k | q - 1."""
    if k < 1:
        raise ValueError("order must be positive")
    if (field.q - 1) % k != 0:
        raise ValueError(f"{k} does not divide q - 1 = {field.q - 1}")
    g = field.multiplicative_generator()
    return field.pow(g, (field.q - 1) // k)


# -- polynomials over an arbitrary Field (elements as ints) ------------------


class FqPoly:
    """Dense polynomial over a Field; coefficient list, index = degree."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs):
        self.field = field
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = c

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __eq__(self, other):
        return (
            isinstance(other, FqPoly)
            and self.field is other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((id(self.field), tuple(self.coeffs)))

    def __add__(self, other: "FqPoly") -> "FqPoly":
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + [0] * (n - len(self.coeffs))
        b = other.coeffs + [0] * (n - len(other.coeffs))
        return FqPoly(F, [F.add(x, y) for x, y in zip(a, b)])

    def __neg__(self) -> "FqPoly":
        F = self.field
        return FqPoly(F, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other: "FqPoly") -> "FqPoly":
        return self + (-other)

    def __mul__(self, other: "FqPoly") -> "FqPoly":
        F = self.field
        if self.is_zero() or other.is_zero():
            return FqPoly(F, [])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = F.add(out[i + j], F.mul(a, b))
        return FqPoly(F, out)

    def scale(self, c: int) -> "FqPoly":
        F = self.field
        return FqPoly(F, [F.mul(c, a) for a in self.coeffs])

    def shift(self, k: int) -> "FqPoly":
        """Multiply by X^k."""
        if self.is_zero():
            return self
        return FqPoly(self.field, [0] * k + self.coeffs)

    def divmod(self, other: "FqPoly") -> Tuple["FqPoly", "FqPoly"]:
        F = self.field
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        d = other.degree
        inv_lead = F.inv(other.leading())
        quot = [0] * max(0, len(rem) - d)
        while len(rem) - 1 >= d and rem:
            if rem[-1] == 0:
                rem.pop()
                continue
            coef = F.mul(rem[-1], inv_lead)
            shift = len(rem) - 1 - d
            quot[shift] = coef
            for i, oc in enumerate(other.coeffs):
                rem[shift + i] = F.sub(rem[shift + i], F.mul(coef, oc))
            while rem and rem[-1] == 0:
                rem.pop()
        return FqPoly(F, quot), FqPoly(F, rem)

    def __mod__(self, other: "FqPoly") -> "FqPoly":
        return self.divmod(other)[1]

    def __floordiv__(self, other: "FqPoly") -> "FqPoly":
        return self.divmod(other)[0]

    def monic(self) -> "FqPoly":
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.leading()))

    def gcd(self, other: "FqPoly") -> "FqPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def powmod(self, n: int, modulus: "FqPoly") -> "FqPoly":
        result = FqPoly(self.field, [1])
        base = self % modulus
        while n:
            if n & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            n >>= 1
        return result

    def evaluate(self, a: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, a), c)
        return acc

    def derivative(self) -> "FqPoly":
        F = self.field
        out = []
        for i, c in enumerate(self.coeffs[1:], start=1):
            scalar = i % F.p
            acc = 0
            for _ in range(scalar):
                acc = F.add(acc, c)
            out.append(acc)
        return FqPoly(F, out)

    def map_coeffs(self, func, target: Field) -> "FqPoly":
        return FqPoly(target, [func(c) for c in self.coeffs])

    def __repr__(self):
        if self.is_zero():
            return "FqPoly(0)"
        terms = [f"{self.field.format_element(c)}*U^{i}" for i, c in enumerate(self.coeffs) if c]
        return "FqPoly(" + " + ".join(terms) + ")"

    @staticmethod
    def x_pow_minus_x(field: Field, qm: int, modulus: "FqPoly") -> "FqPoly":
        x = FqPoly(field, [0, 1])
        return (x.powmod(qm, modulus) - x) % modulus


# -- embeddings and root finding --------------------------------------------


@lru_cache(maxsize=None)
def embedding(small_key: Tuple[int, int], big_key: Tuple[int, int]):
    """Embedding table F_{p^e} -> F_{p^{e*m}} as a list indexed by element.

    The canonical generator of the small field is sent to the least root of
    its defining polynomial in the big field; Frobenius conjugates provide
    all roots, so the least one is deterministic.
    """
    small = make_field(*small_key)
    big = make_field(*big_key)
    if small.p != big.p or big.e % small.e != 0:
        raise ValueError("no embedding between these fields")
    if small.e == 1:
        return list(range(small.p))
    modulus_big = FqPoly(big, [c % big.p for c in small.modulus])
    root = find_any_root(modulus_big)
    if root is None:
        raise AssertionError("defining polynomial must split in the big field")
    # minimize over the Frobenius orbit for determinism
    candidates = set()
    r = root
    for _ in range(small.e):
        candidates.add(r)
        r = big.pow(r, big.p)
    root = min(c for c in candidates if modulus_big.evaluate(c) == 0)
    table = [0] * small.q
    for a in range(small.q):
        acc = 0
        power = 1
        for c in small.coeffs(a):
            if c:
                acc = big.add(acc, big.mul(c % big.p, power))
            power = big.mul(power, root)
        table[a] = acc
    return table


def embed(small: Field, big: Field):
    """Callable embedding small -> big (identity if the fields coincide)."""
    if small is big:
        return lambda a: a
    table = embedding((small.p, small.e), (big.p, big.e))
    return lambda a: table[a]


def find_any_root(f: FqPoly, rng: Optional[random.Random] = None) -> Optional[int]:
    """A root of f in its own field, or None.

    Exhaustive scan for small fields; Cantor-Zassenhaus equal-degree
    splitting (deterministically seeded) otherwise.
    """
    F = f.field
    if f.is_zero():
        raise ValueError("zero polynomial")
    if f.degree == 0:
        return None
    if F.q <= 4096:
        for a in range(F.q):
            if f.evaluate(a) == 0:
                return a
        return None
    # restrict to the product of linear factors
    linear = FqPoly.x_pow_minus_x(F, F.q, f).gcd(f)
    if linear.degree < 1:
        return None
    if rng is None:
        rng = random.Random(0xF1E1D ^ F.q ^ hash(tuple(f.coeffs)) & 0xFFFFFFFF)
    g = linear
    while g.degree > 1:
        r = rng.randrange(F.q)
        probe = FqPoly(F, [r, 1])
        if F.p == 2:
            # trace-based splitting in characteristic two
            acc = probe
            t = probe
            for _ in range(F.e * 1 - 1):
                t = (t * t) % g
                acc = acc + t
            h = acc.gcd(g)
        else:
            h = (probe.powmod((F.q - 1) // 2, g) - FqPoly(F, [1])).gcd(g)
        if 0 < h.degree < g.degree:
            g = h if h.degree <= g.degree - h.degree else (g // h)
    if g.degree != 1:
        return None
    # monic linear X + c has root -c
    g = g.monic()
    return F.neg(g.coeffs[0])


def min_extension_root(f: FqPoly, l: int):
    """Least m <= l with a root of f in F_{q^m}; returns (m, root, big field).

    Existence in F_{q^m} is decided by gcd(f, X^{q^m} - X) over the base
    field, then the root is extracted in the big field.  Returns None if no
    extension of degree <= l contains a root.
    """
    if f.degree < 1:
        raise ValueError("nonconstant polynomial required")
    F = f.field
    for m in range(1, l + 1):
        probe = FqPoly.x_pow_minus_x(F, F.q ** m, f).gcd(f)
        if probe.degree >= 1:
            big = make_field(F.p, F.e * m)
            up = embed(F, big)
            f_big = f.map_coeffs(up, big)
            # roots lying in the degree-m subfield of the big field
            sub = FqPoly.x_pow_minus_x(big, F.q ** m, f_big).gcd(f_big)
            root = find_any_root(sub if sub.degree >= 1 else f_big)
            if root is None:
                raise AssertionError("gcd test promised a root")
            return m, root, big
    return None
