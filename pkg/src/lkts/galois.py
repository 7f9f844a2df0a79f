"""Finite fields GF(p^k) with q = p^k = 1 (mod 6).

Elements are plain ints in ``[0, q)``: the coefficient vector of the
polynomial representative read as a base-p number (constant term is the
least significant digit). All arithmetic goes through precomputed tables,
which is fine for the desk-scale fields this package targets.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd

import numpy as np


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Split q into (p, k) with q = p**k, or raise FieldError."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise FieldError(f"{q} is not a prime power")
    return p, k


@dataclass(frozen=True)
class PrimePowerSpec:
    p: int
    k: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise FieldError(f"p={self.p} is not prime")
        if self.k < 1:
            raise FieldError(f"k={self.k} must be positive")
        if self.p in (2, 3):
            raise FieldError("characteristic 2 and 3 are not supported")
        if self.q % 6 != 1:
            raise FieldError(f"q={self.q} is not 1 mod 6")

    @property
    def q(self) -> int:
        return self.p**self.k

    @property
    def t(self) -> int:
        return (self.q - 1) // 6


# -- polynomials over GF(p), coefficient lists low degree first ------------


def _poly_divmod_monic(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial m."""
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return [x % p for x in a[:dm]] + [0] * max(0, dm - len(a))


def _is_irreducible(m: list[int], p: int) -> bool:
    k = len(m) - 1
    if k == 1:
        return True
    for d in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            divisor = list(low) + [1]
            if not any(_poly_divmod_monic(m, divisor, p)):
                return False
    return True


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree k over GF(p).

    Candidates are compared on their coefficient vectors constant term
    first; the leading 1 is included in the returned tuple.
    """
    if k == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=k):
        m = list(low) + [1]
        if low[0] != 0 and _is_irreducible(m, p):
            return tuple(m)
    raise FieldError(f"no irreducible polynomial of degree {k} over GF({p})")


@dataclass(frozen=True, eq=False)
class FieldTable:
    """Arithmetic context for GF(q) with a fixed primitive root and cube root of unity."""

    spec: PrimePowerSpec
    modulus: tuple[int, ...]
    g: int
    add_table: np.ndarray = field(repr=False)
    mul_table: np.ndarray = field(repr=False)
    neg_table: np.ndarray = field(repr=False)
    inv_table: np.ndarray = field(repr=False)
    exp_table: np.ndarray = field(repr=False)
    log_table: np.ndarray = field(repr=False)

    @property
    def p(self) -> int:
        return self.spec.p

    @property
    def k(self) -> int:
        return self.spec.k

    @property
    def q(self) -> int:
        return self.spec.q

    @property
    def t(self) -> int:
        return self.spec.t

    @property
    def omega(self) -> int:
        return int(self.exp_table[2 * self.t])

    @property
    def three(self) -> int:
        return self.add(1, self.add(1, 1))

    def coeffs(self, x: int) -> tuple[int, ...]:
        return tuple((x // self.p**i) % self.p for i in range(self.k))

    def element(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) != self.k or any(not 0 <= c < self.p for c in coeffs):
            raise FieldError(f"bad coefficient vector {coeffs!r}")
        return sum(c * self.p**i for i, c in enumerate(coeffs))

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.add_table[a, self.neg_table[b]])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.q)
        return int(self.inv_table[a])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        return int(self.exp_table[(int(self.log_table[a]) * e) % (self.q - 1)])

    def discrete_log(self, x: int) -> int:
        """The unique d in [0, q-1) with g**d == x."""
        if x == 0:
            raise FieldError("discrete log of zero")
        return int(self.log_table[x])

    def gexp(self, d: int) -> int:
        return int(self.exp_table[d % (self.q - 1)])

    def order(self, x: int) -> int:
        if x == 0:
            raise FieldError("zero has no multiplicative order")
        n = self.q - 1
        d = int(self.log_table[x])
        return n // gcd(n, d)

    def __repr__(self) -> str:
        return f"FieldTable(q={self.q}, modulus={self.modulus}, g={self.g}, omega={self.omega})"


def _raw_tables(p: int, k: int, modulus: tuple[int, ...]) -> tuple[np.ndarray, np.ndarray]:
    q = p**k
    digits = np.array([[(x // p**i) % p for i in range(k)] for x in range(q)], dtype=np.int64)
    weights = p ** np.arange(k, dtype=np.int64)
    add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
    if k == 1:
        idx = np.arange(q, dtype=np.int64)
        mul = np.outer(idx, idx) % p
        return add, mul
    mul = np.zeros((q, q), dtype=np.int64)
    m = list(modulus)
    for a in range(q):
        da = digits[a]
        for b in range(a, q):
            prod = np.convolve(da, digits[b]) % p
            r = _poly_divmod_monic(prod.tolist(), m, p)
            v = sum(c * p**i for i, c in enumerate(r))
            mul[a, b] = mul[b, a] = v
    return add, mul


def field_create(p: int, k: int = 1, g: int | None = None) -> FieldTable:
    """Build GF(p**k).

    The primitive root defaults to the element of smallest index with
    multiplicative order q - 1; pass ``g`` to override (it must still be
    primitive). For GF(13) the default is 2.
    """
    spec = PrimePowerSpec(p, k)
    q = spec.q
    modulus = smallest_irreducible(p, k)
    add, mul = _raw_tables(p, k, modulus)
    neg = np.array([int(np.nonzero(add[a] == 0)[0][0]) for a in range(q)], dtype=np.int64)

    def powers(x: int) -> list[int]:
        out, y = [1], x
        while y != 1:
            out.append(y)
            y = int(mul[y, x])
            if len(out) > q:
                break
        return out

    candidates = [g] if g is not None else range(2, q)
    gen = None
    for cand in candidates:
        if not 0 < cand < q:
            raise FieldError(f"g={cand} is not a nonzero element of GF({q})")
        seq = powers(cand)
        if len(seq) == q - 1:
            gen, exp = cand, seq
            break
    if gen is None:
        raise FieldError(f"g={g} is not a primitive root of GF({q})")

    exp = np.array(exp, dtype=np.int64)
    log = np.full(q, -1, dtype=np.int64)
    log[exp] = np.arange(q - 1)
    inv = np.zeros(q, dtype=np.int64)
    inv[exp] = exp[(-np.arange(q - 1)) % (q - 1)]
    for tbl in (add, mul, neg, inv, exp, log):
        tbl.setflags(write=False)
    return FieldTable(spec, modulus, gen, add, mul, neg, inv, exp, log)


def field_for_order(q: int, g: int | None = None) -> FieldTable:
    p, k = prime_power(q)
    return field_create(p, k, g)
