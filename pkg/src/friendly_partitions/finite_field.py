"""Small prime-power fields GF(p^e) for building Paley graphs.

Elements are encoded as integers ``c0 + c1*p + ... + c_{e-1}*p^(e-1)``, i.e.
the base-``p`` digits are the coefficients of the residue polynomial. For
``e == 1`` the encoding is the residue itself.
"""
from __future__ import annotations

import itertools


def factor_prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, e)`` with ``q == p**e`` and ``p`` prime, or ``None``."""
    if q < 2:
        return None
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        return q, 1
    e = 0
    while q % p == 0:
        q //= p
        e += 1
    return (p, e) if q == 1 else None


def _poly_mod(a: list[int], mod: list[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo the monic ``mod`` (coefficient lists, low degree first)."""
    a = a[:]
    dm = len(mod) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * mod[j]) % p
    return [x % p for x in a[:dm]] + [0] * max(0, dm - len(a))


def _has_factor(poly: list[int], p: int) -> bool:
    e = len(poly) - 1
    for d in range(1, e // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            cand = list(reversed(tail)) + [1]
            if not any(_poly_mod(poly, cand, p)):
                return True
    return False


def smallest_irreducible(p: int, e: int) -> list[int]:
    """Lexicographically smallest monic irreducible polynomial of degree ``e`` over GF(p).

    Candidates ``x^e + c_{e-1} x^{e-1} + ... + c_0`` are ordered by the tuple
    ``(c_{e-1}, ..., c_0)``. Returned low-degree-first, leading 1 included.
    """
    if e == 1:
        return [0, 1]
    for high_first in itertools.product(range(p), repeat=e):
        poly = list(reversed(high_first)) + [1]
        if poly[0] == 0:
            continue
        if not _has_factor(poly, p):
            return poly
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class GF:
    """Addition and multiplication tables-on-demand for GF(p^e)."""

    def __init__(self, q: int):
        pe = factor_prime_power(q)
        if pe is None:
            raise ValueError(f"{q} is not a prime power")
        self.q = q
        self.p, self.e = pe
        self.modulus = smallest_irreducible(self.p, self.e)

    def digits(self, x: int) -> list[int]:
        out = []
        for _ in range(self.e):
            x, r = divmod(x, self.p)
            out.append(r)
        return out

    def encode(self, digits: list[int]) -> int:
        x = 0
        for c in reversed(digits):
            x = x * self.p + c
        return x

    def add(self, x: int, y: int) -> int:
        if self.e == 1:
            return (x + y) % self.p
        return self.encode([(a + b) % self.p for a, b in zip(self.digits(x), self.digits(y))])

    def neg(self, x: int) -> int:
        if self.e == 1:
            return (-x) % self.p
        return self.encode([(-a) % self.p for a in self.digits(x)])

    def mul(self, x: int, y: int) -> int:
        if self.e == 1:
            return x * y % self.p
        a, b = self.digits(x), self.digits(y)
        prod = [0] * (2 * self.e - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    prod[i + j] += ca * cb
        return self.encode(_poly_mod(prod, self.modulus, self.p))

    def nonzero_squares(self) -> frozenset[int]:
        return frozenset(self.mul(x, x) for x in range(1, self.q))
