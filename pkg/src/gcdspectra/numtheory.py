"""Integer groundwork: factorization, divisors, gcd, primes in progressions.

Everything here is exact and deterministic.  Factorization uses
sieve-assisted trial division for small inputs and switches to
deterministic Miller-Rabin plus Brent's variant of Pollard rho for the
rest; inputs are capped at 64 bits so the Miller-Rabin witness set is
provably sufficient.  Prime harvesting in arithmetic progressions runs
a segmented sieve whose search bound doubles until enough primes are
found, with a hard cap and a clear failure mode.

All public functions are pure; module-level caches are append-only and
safe for concurrent readers under the GIL.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

__all__ = [
    "Factorization",
    "ProgressionPrimes",
    "SieveExhausted",
    "factorize",
    "divisors",
    "gcd",
    "is_prime",
    "primes_up_to",
    "primes_in_progression",
]

# Trial division handles everything below this bound on its own.
_TRIAL_BOUND = 10**6
_FACTOR_CAP = 1 << 64

# Deterministic for all n < 3_317_044_064_679_887_385_961_981 (> 2**64).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_small_primes: list[int] = []


class SieveExhausted(RuntimeError):
    """Raised when the progression sieve hits its hard search cap."""


def _ensure_small_primes() -> list[int]:
    global _small_primes
    if not _small_primes:
        _small_primes = primes_up_to(_TRIAL_BOUND)
    return _small_primes


def primes_up_to(n: int) -> list[int]:
    """All primes <= n, ascending, by a plain byte sieve."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, n + 1, p)))
    return [i for i in range(2, n + 1) if sieve[i]]


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 2**64."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    """A nontrivial factor of composite odd n (Brent's cycle variant).

    The polynomial increment walks c = 1, 2, 3, ... so the search is
    deterministic; it terminates because n is known composite.
    """
    if n % 2 == 0:
        return 2
    for c in range(1, n):
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
                k += m
                g = math.gcd(q, n)
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho failed on {n}")  # pragma: no cover


def _factor_large(n: int, out: list[int]) -> None:
    # n has no prime factor <= _TRIAL_BOUND here.
    if n == 1:
        return
    if n < _TRIAL_BOUND * _TRIAL_BOUND or is_prime(n):
        out.append(n)
        return
    d = _pollard_rho(n)
    _factor_large(d, out)
    _factor_large(n // d, out)


@dataclass(frozen=True)
class Factorization:
    """n together with its prime factorization, exponents ascending by prime.

    The reconstruction invariant (product of p**e equals n) is checked at
    construction time; a Factorization can therefore be trusted blindly.
    """

    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        prod = 1
        for p, e in self.factors:
            prod *= p**e
        if prod != self.n:
            raise ValueError(f"inconsistent factorization of {self.n}")

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def divisor_count(self) -> int:
        out = 1
        for _, e in self.factors:
            out *= e + 1
        return out


@lru_cache(maxsize=None)
def factorize(n: int) -> Factorization:
    """Prime factorization of n >= 1 (primes ascending).

    Rejects n = 0, negatives, and anything >= 2**64 (the Miller-Rabin
    witness set is only proven deterministic below that).
    """
    if n < 1:
        raise ValueError(f"factorize wants n >= 1, got {n}")
    if n >= _FACTOR_CAP:
        raise ValueError(f"factorize is capped at 64-bit inputs, got {n}")
    if n == 1:
        return Factorization(1, ())
    rest = n
    found: list[int] = []
    for p in _ensure_small_primes():
        if p * p > rest:
            break
        while rest % p == 0:
            found.append(p)
            rest //= p
        if rest == 1:
            break
    if rest > 1:
        if rest < _TRIAL_BOUND * _TRIAL_BOUND:
            found.append(rest)  # no small factor survived, so rest is prime
        else:
            _factor_large(rest, found)
    found.sort()
    pairs = []
    for p in found:
        if pairs and pairs[-1][0] == p:
            pairs[-1][1] += 1
        else:
            pairs.append([p, 1])
    return Factorization(n, tuple((p, e) for p, e in pairs))


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    out = [1]
    for p, e in factorize(n).factors:
        out = [d * p**k for d in out for k in range(e + 1)]
    out.sort()
    return out


def gcd(a: int, b: int) -> int:
    """gcd of two positive integers; zero and negative inputs are rejected."""
    if a < 1 or b < 1:
        raise ValueError(f"gcd wants positive integers, got ({a}, {b})")
    return math.gcd(a, b)


@dataclass(frozen=True)
class ProgressionPrimes:
    """Primes p = 1 (mod modulus), ascending and gap-free up to search_bound.

    Gap-free means: every prime p <= search_bound with p = 1 (mod modulus)
    is present.  search_bound is the largest harvested prime, so the list
    can be extended later without re-sieving ambiguity.
    """

    modulus: int
    primes: tuple[int, ...]
    search_bound: int


def primes_in_progression(b: int, count: int, bound_cap: int = 10**9) -> ProgressionPrimes:
    """First `count` primes p with p = 1 (mod b), via a segmented sieve.

    The sieve window doubles until enough primes are found.  If the next
    window would pass bound_cap (default 10**9) the search stops with
    SieveExhausted instead of running away.
    """
    if b < 1:
        raise ValueError(f"modulus must be >= 1, got {b}")
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    residue = 1 % b
    out: list[int] = []
    lo = 2
    hi = 1 << 12
    while True:
        hi = min(hi, bound_cap)
        base = primes_up_to(math.isqrt(hi))
        width = hi - lo + 1
        seg = bytearray([1]) * width
        for p in base:
            start = max(p * p, ((lo + p - 1) // p) * p)
            if start <= hi:
                seg[start - lo :: p] = bytearray(len(range(start, hi + 1, p)))
        for i in range(width):
            if seg[i]:
                q = lo + i
                if q >= 2 and q % b == residue:
                    out.append(q)
                    if len(out) == count:
                        return ProgressionPrimes(b, tuple(out), out[-1])
        if hi == bound_cap:
            raise SieveExhausted(
                f"only {len(out)} primes = 1 (mod {b}) below {bound_cap}, wanted {count}"
            )
        lo = hi + 1
        hi *= 2
