"""Index-set generators for convergence experiments.

Four families, each with a canonical textual spec that round-trips
through experiment configs:

- ``range:a,b,e``       x_i = a + b*(e + i - 1), i >= 1
- ``list:v1,v2,...``    an explicit strictly increasing list
- ``progression:b``     primes p = 1 (mod b), ascending
- ``constgcd:x,primes`` x * p over ascending primes p (pairwise gcd is
                        exactly x, since distinct primes contribute at
                        most one extra factor each)
"""

from __future__ import annotations

from dataclasses import dataclass

from .numtheory import primes_in_progression, primes_up_to

__all__ = [
    "RangeSequence",
    "ListSequence",
    "ProgressionSequence",
    "ConstantGcdSequence",
    "parse_sequence",
]


@dataclass(frozen=True)
class RangeSequence:
    """Arithmetic progression a + b*(e + i - 1) for i = 1, 2, ..."""

    a: int
    b: int
    e: int = 0

    def __post_init__(self) -> None:
        if self.b < 1:
            raise ValueError(f"common difference must be >= 1, got {self.b}")
        if self.e < 0:
            raise ValueError(f"offset must be >= 0, got {self.e}")
        if self.a + self.b * self.e < 1:
            raise ValueError("first element must be >= 1")

    # progression primes p = 1 (mod b) interact with sets of this shape
    @property
    def progression_modulus(self) -> int | None:
        return self.b

    def take(self, count: int) -> tuple[int, ...]:
        return tuple(self.a + self.b * (self.e + i) for i in range(count))

    def spec_text(self) -> str:
        return f"range:{self.a},{self.b},{self.e}"


@dataclass(frozen=True)
class ListSequence:
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        prev = 0
        for v in self.values:
            if v <= prev:
                raise ValueError("list sequence must be strictly increasing and positive")
            prev = v

    @property
    def progression_modulus(self) -> int | None:
        return None

    def take(self, count: int) -> tuple[int, ...]:
        if count > len(self.values):
            raise ValueError(
                f"list sequence has {len(self.values)} elements, {count} requested"
            )
        return self.values[:count]

    def spec_text(self) -> str:
        return "list:" + ",".join(str(v) for v in self.values)


@dataclass(frozen=True)
class ProgressionSequence:
    """Primes p = 1 (mod b), ascending."""

    b: int

    def __post_init__(self) -> None:
        if self.b < 1:
            raise ValueError(f"modulus must be >= 1, got {self.b}")

    @property
    def progression_modulus(self) -> int | None:
        return self.b

    def take(self, count: int) -> tuple[int, ...]:
        return primes_in_progression(self.b, count).primes

    def spec_text(self) -> str:
        return f"progression:{self.b}"


@dataclass(frozen=True)
class ConstantGcdSequence:
    """x * p over ascending primes p; every pairwise gcd equals x."""

    x: int
    generator: str = "primes"

    def __post_init__(self) -> None:
        if self.x < 1:
            raise ValueError(f"common gcd must be >= 1, got {self.x}")
        if self.generator != "primes":
            raise ValueError(f"unknown multiplier generator {self.generator!r}")

    @property
    def progression_modulus(self) -> int | None:
        return None

    @property
    def constant_gcd(self) -> int:
        return self.x

    def take(self, count: int) -> tuple[int, ...]:
        bound = 16
        primes = primes_up_to(bound)
        while len(primes) < count:
            bound *= 2
            primes = primes_up_to(bound)
        return tuple(self.x * p for p in primes[:count])

    def spec_text(self) -> str:
        return f"constgcd:{self.x},{self.generator}"


def parse_sequence(text: str):
    """Parse a sequence spec string (see module docstring)."""
    kind, _, rest = text.partition(":")
    try:
        if kind == "range":
            a, b, e = (int(v) for v in rest.split(","))
            return RangeSequence(a, b, e)
        if kind == "list":
            return ListSequence(tuple(int(v) for v in rest.split(",")))
        if kind == "progression":
            return ProgressionSequence(int(rest))
        if kind == "constgcd":
            x, gen = rest.split(",")
            return ConstantGcdSequence(int(x), gen)
    except ValueError as err:
        raise ValueError(f"bad sequence spec {text!r}: {err}") from None
    raise ValueError(f"unknown sequence kind {kind!r} in {text!r}")
