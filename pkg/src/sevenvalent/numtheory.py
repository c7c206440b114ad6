"""Integer primitives: deterministic primality, factorization, factored integers.

Everything here is exact.  Primality uses Miller-Rabin with a fixed witness set
that is proven deterministic for every n below 3.3 * 10**24, which covers the
whole 64-bit range and the group orders handled by this package.  Factoring is
trial division followed by Pollard-Brent on the cofactor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Iterator, Mapping

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
# Deterministic for n < 3317044064679887385961981 (Sorenson and Webster).
_MR_LIMIT = 3317044064679887385961981


def is_prime(n: int) -> bool:
    """Deterministic primality test for n < 3.3e24."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n >= _MR_LIMIT:
        raise ValueError(f"{n} exceeds the deterministic primality range")
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    """Return a nontrivial factor of the odd composite n."""
    for c in range(1, 200):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"Pollard-Brent failed on {n}")


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of a positive integer as {prime: exponent}."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    out: dict[int, int] = {}
    for p in range(2, 1000):
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        root = math.isqrt(m)
        if root * root == m:
            stack += [root, root]
            continue
        f = _pollard_brent(m)
        stack += [f, m // f]
    return dict(sorted(out.items()))


def prime_power_decomposition(q: int) -> tuple[int, int] | None:
    """Return (p, f) with q = p**f for a prime p, or None."""
    if q < 2:
        return None
    fac = factorize(q)
    if len(fac) != 1:
        return None
    (p, f), = fac.items()
    return p, f


def is_prime_power(q: int) -> bool:
    return prime_power_decomposition(q) is not None


def primes_up_to(n: int) -> list[int]:
    """Sieve of Eratosthenes."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p::p] = bytearray(len(range(p * p, n + 1, p)))
    return [i for i, v in enumerate(sieve) if v]


@dataclass(frozen=True, order=False)
class FactoredInteger:
    """A positive integer stored as ascending (prime, exponent) pairs."""

    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        prev = 1
        for p, e in self.factors:
            if p <= prev or e < 1:
                raise ValueError(f"malformed factorization {self.factors}")
            prev = p

    @classmethod
    def from_int(cls, n: int) -> "FactoredInteger":
        return cls(tuple(factorize(int(n)).items()))

    @classmethod
    def from_dict(cls, d: Mapping[int, int]) -> "FactoredInteger":
        return cls(tuple(sorted((int(p), int(e)) for p, e in d.items() if e)))

    @classmethod
    def parse(cls, text: str) -> "FactoredInteger":
        """Parse '2^7*3^2*5*7' (also accepts '.', ' ' or '·' as separators)."""
        d: dict[int, int] = {}
        for tok in text.replace("·", "*").replace(".", "*").replace(" ", "*").split("*"):
            if not tok:
                continue
            base, _, exp = tok.partition("^")
            b, e = int(base), int(exp) if exp else 1
            if b == 1:
                continue
            for p, k in factorize(b).items():
                d[p] = d.get(p, 0) + k * e
        return cls.from_dict(d)

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    @property
    def value(self) -> int:
        return math.prod(p ** e for p, e in self.factors)

    def __int__(self) -> int:
        return self.value

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def exponent(self, p: int) -> int:
        return self.as_dict().get(p, 0)

    def prime_count(self) -> int:
        return len(self.factors)

    def _combine(self, other, op) -> "FactoredInteger":
        other = _coerce(other)
        a, b = self.as_dict(), other.as_dict()
        return FactoredInteger.from_dict({p: op(a.get(p, 0), b.get(p, 0)) for p in a.keys() | b.keys()})

    def __mul__(self, other) -> "FactoredInteger":
        return self._combine(other, lambda x, y: x + y)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "FactoredInteger":
        return FactoredInteger(tuple((p, e * k) for p, e in self.factors)) if k else FactoredInteger()

    def __truediv__(self, other) -> "FactoredInteger":
        other = _coerce(other)
        if not other.divides(self):
            raise ValueError(f"{other} does not divide {self}")
        return self._combine(other, lambda x, y: x - y)

    __floordiv__ = __truediv__

    def gcd(self, other) -> "FactoredInteger":
        return self._combine(other, min)

    def lcm(self, other) -> "FactoredInteger":
        return self._combine(other, max)

    def divides(self, other) -> bool:
        b = _coerce(other).as_dict()
        return all(b.get(p, 0) >= e for p, e in self.factors)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.value == other
        if isinstance(other, FactoredInteger):
            return self.factors == other.factors
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)

    def __repr__(self) -> str:
        return f"FactoredInteger({self})"

    def to_json(self) -> dict:
        return {"value": str(self.value), "factored": str(self)}


def _coerce(x) -> FactoredInteger:
    if isinstance(x, FactoredInteger):
        return x
    if isinstance(x, int) and x >= 1:
        return FactoredInteger.from_int(x)
    raise TypeError(f"cannot interpret {x!r} as a positive factored integer")


def prime_count(m) -> int:
    """Number of distinct primes dividing m (an int or FactoredInteger)."""
    return _coerce(m).prime_count()


def divisors(m) -> Iterator[int]:
    """All positive divisors of m, in no particular order."""
    fac = _coerce(m).factors
    divs = [1]
    for p, e in fac:
        divs = [d * p ** k for d in divs for k in range(e + 1)]
    return iter(divs)


def product(items: Iterable[FactoredInteger]) -> FactoredInteger:
    return reduce(lambda a, b: a * b, items, FactoredInteger())
