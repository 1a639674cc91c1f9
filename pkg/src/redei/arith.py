"""Exact integer arithmetic: factorization, square classes, Kronecker and Hilbert symbols.

All values live in Q, represented as int or fractions.Fraction; a square class is
always its canonical representative, a nonzero squarefree integer.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import (
    FactorLimitExceeded,
    NotFundamental,
    ProductFormulaViolated,
    TrivialClass,
    ZeroInput,
)


class _Infinity:
    """The archimedean place of Q."""

    __slots__ = ()

    def __repr__(self):
        return "infinity"


INFINITY = _Infinity()

# Trial division up to 2**24 certifies prime cofactors up to 2**48.
DEFAULT_TRIAL_BOUND = 1 << 24

_WHEEL = (4, 2, 4, 2, 4, 6, 2, 6)  # increments mod 30 starting from 7


def _trial_bound() -> int:
    env = os.environ.get("REDEI_FACTOR_BOUND")
    return int(env) if env else DEFAULT_TRIAL_BOUND


@lru_cache(maxsize=None)
def _factor_abs(m: int, bound: int) -> tuple[tuple[int, int], ...]:
    out = []
    for p in (2, 3, 5):
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
    c, i = 7, 0
    while c * c <= m:
        if c > bound:
            raise FactorLimitExceeded(
                f"unfactored cofactor {m} exceeds certification bound {bound}**2"
            )
        if m % c == 0:
            e = 0
            while m % c == 0:
                m //= c
                e += 1
            out.append((c, e))
        c += _WHEEL[i]
        i = (i + 1) % 8
    if m > 1:
        out.append((m, 1))
    return tuple(out)


def factor(n: int, bound: int | None = None) -> list[tuple[int, int]]:
    """Factor n != 0 by trial division into [(p, e), ...], primes ascending.

    sign(n) * prod(p**e) == n.  Raises FactorLimitExceeded when a composite
    cofactor survives past the trial bound.
    """
    if n == 0:
        raise ZeroInput("cannot factor 0")
    if bound is None:
        bound = _trial_bound()
    return list(_factor_abs(abs(int(n)), bound))


def prime_divisors(n: int) -> list[int]:
    if n in (1, -1):
        return []
    return [p for p, _ in factor(n)]


def square_class(q) -> int:
    """Canonical squarefree representative of q in Q*/Q*^2."""
    if isinstance(q, int):
        n = q
    else:
        q = Fraction(q)
        n = q.numerator * q.denominator
    if n == 0:
        raise ZeroInput("0 has no square class")
    out = -1 if n < 0 else 1
    for p, e in factor(n):
        if e % 2:
            out *= p
    return out


def is_squarefree(n: int) -> bool:
    return n != 0 and square_class(n) == n


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n), fully extended to all integer n."""
    a, n = int(a), int(n)
    if n == 0:
        return 1 if a in (1, -1) else 0
    if a % 2 == 0 and n % 2 == 0:
        return 0
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    k = 1
    if v % 2 == 1 and a % 8 in (3, 5):
        k = -1
    if n < 0:
        n = -n
        if a < 0:
            k = -k
    # Jacobi on odd positive n
    a %= n
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                k = -k
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            k = -k
        a %= n
    return k if n == 1 else 0


def discriminant(a: int) -> int:
    """Discriminant of Q(sqrt(a)) for a squarefree, a != 1."""
    if a == 1:
        raise TrivialClass("the trivial square class has no quadratic field")
    return a if a % 4 == 1 else 4 * a


def is_fundamental_discriminant(D: int) -> bool:
    if D == 0 or D == 1:
        return False
    if D % 4 == 1:
        return is_squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


@dataclass(frozen=True)
class SignedPrimeDecomposition:
    """D = two_part * prod(odd_parts), every odd part p* = (-1)^((p-1)/2) p."""

    odd_parts: tuple[int, ...]  # sorted by the underlying prime
    two_part: int  # in {1, -4, 8, -8}

    @property
    def parts(self) -> tuple[int, ...]:
        if self.two_part == 1:
            return self.odd_parts
        return (self.two_part,) + self.odd_parts

    @property
    def t(self) -> int:
        return len(self.parts)


def signed_prime_decomposition(D: int) -> SignedPrimeDecomposition:
    """Factor a fundamental discriminant into signed prime discriminants."""
    if not is_fundamental_discriminant(D):
        raise NotFundamental(f"{D} is not a fundamental discriminant")
    odd = tuple(
        p if p % 4 == 1 else -p for p, _ in factor(D) if p != 2
    )
    prod = 1
    for part in odd:
        prod *= part
    two_part = D // prod
    assert two_part in (1, -4, 8, -8)
    return SignedPrimeDecomposition(odd_parts=odd, two_part=two_part)


def padic_val(q, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    if not isinstance(q, int):
        q = Fraction(q)
        if q == 0:
            raise ZeroInput("valuation of 0")
        v = 0
        d = q.denominator
        while d % p == 0:
            d //= p
            v -= 1
        q = q.numerator
        if v:
            return v + padic_val(q, p)
    if q == 0:
        raise ZeroInput("valuation of 0")
    v = 0
    while q % p == 0:
        q //= p
        v += 1
    return v


def unit_part(q, p: int) -> Fraction:
    """q / p**v_p(q), a p-unit."""
    return Fraction(q) / Fraction(p) ** padic_val(q, p)


def mod_p(q, p: int) -> int:
    """Reduce a p-integral rational mod p."""
    if isinstance(q, int):
        return q % p
    q = Fraction(q)
    return q.numerator * pow(q.denominator, -1, p) % p


def _int_class(q) -> int:
    # an integer in the same square class; Hilbert symbols only see the class
    if isinstance(q, int):
        return q
    q = Fraction(q)
    return q.numerator * q.denominator


def hilbert(a, b, v) -> int:
    """Hilbert symbol (a,b)_v: +1 iff x^2 - a y^2 - b z^2 = 0 has a nonzero Q_v-point."""
    a, b = _int_class(a), _int_class(b)
    if a == 0 or b == 0:
        raise ZeroInput("Hilbert symbol needs nonzero arguments")
    if v is INFINITY:
        return -1 if a < 0 and b < 0 else 1
    p = int(v)
    alpha = 0
    while a % p == 0:
        a //= p
        alpha += 1
    beta = 0
    while b % p == 0:
        b //= p
        beta += 1
    if p == 2:
        u, w = a % 8, b % 8
        exp = ((u - 1) // 2) * ((w - 1) // 2)
        if alpha % 2:
            exp += (w * w - 1) // 8
        if beta % 2:
            exp += (u * u - 1) // 8
        return -1 if exp % 2 else 1
    sign = 1
    if alpha % 2 and beta % 2 and p % 4 == 3:
        sign = -sign
    if beta % 2:
        sign *= kronecker(a, p)
    if alpha % 2:
        sign *= kronecker(b, p)
    return sign


def hilbert_places(a, b) -> list:
    """Places where (a,b)_v may be nontrivial: infinity, 2 and odd p | ab."""
    a, b = Fraction(a), Fraction(b)
    ps = set()
    for q in (a, b):
        ps.update(p for p, _ in factor(q.numerator))
        ps.update(p for p, _ in factor(q.denominator))
    ps.add(2)
    return [INFINITY] + sorted(ps)


def hilbert_product(a, b) -> int:
    """Product of (a,b)_v over all places; the global formula makes it +1."""
    prod = 1
    for v in hilbert_places(a, b):
        prod *= hilbert(a, b, v)
    if prod != 1:
        raise ProductFormulaViolated(f"product formula failed for ({a}, {b})")
    return prod
