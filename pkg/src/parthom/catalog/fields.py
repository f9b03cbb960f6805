"""Finite fields GF(p^s) with integer-encoded elements.

An element with coefficient vector (c_0, ..., c_{s-1}) over GF(p), meaning
c_0 + c_1 x + ... + c_{s-1} x^{s-1}, is encoded as sum c_i p^i. Multiplication
goes through exp/log tables of a primitive element.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, s) with q = p**s, or raise ValueError."""
    for p in range(2, q + 1):
        if q % p == 0:
            s = 0
            m = q
            while m % p == 0:
                m //= p
                s += 1
            if m != 1 or not is_prime(p):
                raise ValueError(f"{q} is not a prime power")
            return p, s
    raise ValueError(f"{q} is not a prime power")


# polynomials over GF(p): lists of coefficients, lowest degree first


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    inv_lead = pow(m[-1], -1, p)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _trim(a)
    return a


def _polymulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _polymod(out, m, p)


def _polypowmod(a: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _polymod(a, m, p)
    while e:
        if e & 1:
            result = _polymulmod(result, base, m, p)
        base = _polymulmod(base, base, m, p)
        e >>= 1
    return result


def _polygcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _polymod(a, b, p)
    return a


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f: list[int], p: int) -> bool:
    """Rabin's test for a monic polynomial f over GF(p)."""
    s = len(f) - 1
    if s < 1:
        return False
    x = [0, 1]
    if _polypowmod(x, p ** s, f, p) != _polymod(x, f, p):
        return False
    for r in _prime_factors(s):
        h = _polypowmod(x, p ** (s // r), f, p)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        g = _polygcd(f, _trim(diff), p)
        if len(g) != 1:
            return False
    return True


def smallest_irreducible(p: int, s: int) -> list[int]:
    """Lexicographically smallest monic irreducible of degree s (coefficients
    of x^{s-1} down to x^0 read as a base-p numeral)."""
    if s == 1:
        return [0, 1]
    for code in range(p ** s):
        lower = [(code // p ** i) % p for i in range(s)]
        f = lower + [1]
        if f[0] == 0:
            continue
        if is_irreducible(f, p):
            return f
    raise AssertionError("no irreducible polynomial found")


class FiniteField:
    """GF(p^s). Elements are ints in [0, q); arithmetic accepts ints or numpy
    integer arrays."""

    def __init__(self, p: int, s: int = 1):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if s < 1:
            raise ValueError("extension degree must be positive")
        if p ** s > 2 ** 16:
            raise ValueError(f"field order {p}^{s} exceeds 2^16")
        self.p = p
        self.s = s
        self.q = p ** s
        self.modulus = smallest_irreducible(p, s)
        self._build_tables()

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.s})" if self.s > 1 else f"GF({self.p})"

    # -- construction
    def _digits(self, a):
        a = np.asarray(a, dtype=np.int64)
        return [(a // self.p ** i) % self.p for i in range(self.s)]

    def _encode(self, digits) -> np.ndarray:
        out = np.zeros_like(digits[0])
        for i, d in enumerate(digits):
            out = out + d * self.p ** i
        return out

    def _mul_by_x(self, a: int) -> int:
        # multiply the polynomial encoded by a by x, reduce by the modulus
        d = [(a // self.p ** i) % self.p for i in range(self.s)]
        top = d[-1]
        shifted = [0] + d[:-1]
        for i in range(self.s):
            shifted[i] = (shifted[i] - top * self.modulus[i]) % self.p
        return sum(c * self.p ** i for i, c in enumerate(shifted))

    def _poly_mul(self, a: int, b: int) -> int:
        da = [(a // self.p ** i) % self.p for i in range(self.s)]
        db = [(b // self.p ** i) % self.p for i in range(self.s)]
        prod = _polymulmod(_trim(da), _trim(db), self.modulus, self.p)
        return sum(c * self.p ** i for i, c in enumerate(prod))

    def _build_tables(self) -> None:
        q = self.q
        self.exp = np.zeros(2 * q, dtype=np.int64)
        self.log = np.full(q, -1, dtype=np.int64)
        if q == 2:
            self.exp[:] = 1
            self.log[1] = 0
            self.primitive = 1
            return
        for g in range(2, q) if self.s == 1 else range(self.p, q):
            x = 1
            powers = []
            for _ in range(q - 1):
                powers.append(x)
                x = self._poly_mul(x, g)
            if x == 1 and len(set(powers)) == q - 1:
                self.primitive = g
                break
        else:
            raise AssertionError("no primitive element")
        for k, v in enumerate(powers):
            self.exp[k] = v
            self.log[v] = k
        self.exp[q - 1:2 * (q - 1)] = self.exp[:q - 1]

    # -- arithmetic
    def add(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b) if isinstance(a, np.ndarray) or isinstance(b, np.ndarray) else a ^ b
        if self.s == 1:
            return (a + b) % self.p
        da, db = self._digits(a), self._digits(b)
        out = self._encode([(x + y) % self.p for x, y in zip(da, db)])
        return int(out) if np.ndim(out) == 0 else out

    def neg(self, a):
        if self.p == 2:
            return a
        if self.s == 1:
            return (-a) % self.p
        out = self._encode([(-x) % self.p for x in self._digits(a)])
        return int(out) if np.ndim(out) == 0 else out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
            a = np.asarray(a, dtype=np.int64)
            b = np.asarray(b, dtype=np.int64)
            la = self.log[a]
            lb = self.log[b]
            out = self.exp[(la + lb) % (self.q - 1)]
            return np.where((a == 0) | (b == 0), 0, out)
        if a == 0 or b == 0:
            return 0
        return int(self.exp[(self.log[a] + self.log[b]) % (self.q - 1)])

    def inv(self, a):
        if isinstance(a, np.ndarray):
            if np.any(a == 0):
                raise ZeroDivisionError("inverse of 0")
            return self.exp[(-self.log[a]) % (self.q - 1)]
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return int(self.exp[(-self.log[a]) % (self.q - 1)])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if isinstance(a, np.ndarray):
            out = self.exp[(self.log[a] * e) % (self.q - 1)]
            return np.where(a == 0, 0 if e > 0 else 1, out)
        if a == 0:
            return 0 if e > 0 else 1
        return int(self.exp[(int(self.log[a]) * e) % (self.q - 1)])

    def frobenius(self, a):
        return self.pow(a, self.p)

    @cached_property
    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def is_square(self, a: int) -> bool:
        """Nonzero squares (0 counts as a square)."""
        if a == 0 or self.p == 2:
            return True
        return int(self.log[a]) % 2 == 0

    @cached_property
    def nonsquare(self) -> int:
        if self.p == 2:
            raise ValueError("every element of a field of characteristic 2 is a square")
        return self.primitive

    def element(self, value: int) -> int:
        """Embed an integer of the prime field."""
        return value % self.p


def field_make(p: int, s: int = 1) -> FiniteField:
    return FiniteField(p, s)


def frobenius_order(F: FiniteField) -> int:
    """Smallest k > 0 with x^(p^k) = x for every x."""
    x = F.elements
    y = x.copy()
    for k in range(1, F.s + 1):
        y = F.frobenius(y)
        if np.array_equal(x, y):
            return k
    raise AssertionError("Frobenius order exceeds extension degree")
