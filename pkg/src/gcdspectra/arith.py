"""Dirichlet-convolution algebra of arithmetical functions.

A function value is carried in both exact (arbitrary-precision rational)
and double-precision form.  The exact path is used whenever every atom in
a composite has an integer parameter; non-integer parameters force the
float path.  Conversion exact -> float happens once, when an FnValue is
assembled, never inside the arithmetic.

Composites are kept in a canonical flattened form: a convolution is a
multiset of atoms with multiplicities, sorted under a fixed key, with the
unit (the function that is 1 at m = 1 and 0 elsewhere, here `DELTA`)
represented by the empty multiset.  Structural equality of two functions
therefore implies pointwise-equal evaluation.  Evaluation of a multiset
splits it in half and convolves the halves (repeated squaring for a
single repeated atom), with results memoized per (canonical form, m);
for multiplicative composites only prime-power arguments ever recurse.

Caches are plain dicts with single-key insertion, safe for concurrent
readers; nothing here mutates after construction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence, Union

from .numtheory import divisors, factorize, is_prime

__all__ = [
    "ArithFn",
    "FnValue",
    "ClassVerdict",
    "IN_C_TILDE",
    "IN_C_ONLY",
    "NOT_IN_C",
    "DELTA",
    "MU",
    "ZETA",
    "IDENTITY",
    "PHI",
    "xi",
    "jordan",
    "sigma",
    "psi",
    "custom_fn",
    "convolve",
    "convolution_power",
    "composite",
    "split_mobius",
    "evaluate",
    "evaluate_approx",
    "value_at_prime",
    "class_membership",
    "clear_caches",
]

Exact = Union[int, Fraction]

_PARAMETRIC = ("xi", "jordan", "sigma", "psi")
_PLAIN = ("delta", "mobius", "zeta", "identity", "phi")

_custom_counter = itertools.count(1)


@dataclass(frozen=True)
class _AtomSpec:
    """One atom of the algebra.  Catalog atoms compare by (name, eps);
    custom atoms carry a registration uid so equality is per definition."""

    name: str
    eps: int | float | None = None
    fn: Callable[[int], object] | None = field(default=None, compare=False)
    uid: int = 0
    multiplicative: bool = True
    exact: bool = True

    @property
    def is_custom(self) -> bool:
        return self.fn is not None


def _atom_sort_key(spec: _AtomSpec):
    group = 2 if spec.is_custom else (1 if spec.name == "mobius" else 0)
    eps_num = float(spec.eps) if spec.eps is not None else -1.0
    return (group, spec.name, eps_num, spec.uid)


_Ops = tuple[tuple[_AtomSpec, int], ...]


@dataclass(frozen=True)
class ArithFn:
    """An arithmetical function in canonical flattened-convolution form.

    `ops` is the sorted multiset of (atom, multiplicity).  The empty
    multiset is the convolution unit.  Instances are immutable and
    hashable; use the module constructors rather than building ops by
    hand.
    """

    ops: _Ops

    def __post_init__(self) -> None:
        for spec, mult in self.ops:
            if mult < 1:
                raise ValueError(f"multiplicity must be >= 1, got {mult}")
        # forces evaluation of custom atoms at 1 so bad callables fail early
        self.value_at_one

    @property
    def is_exact(self) -> bool:
        return all(_atom_is_exact(spec) for spec, _ in self.ops)

    @property
    def is_multiplicative(self) -> bool:
        return all(spec.multiplicative for spec, _ in self.ops)

    @property
    def value_at_one(self):
        """Product of operand values at 1 (what any convolution gives at 1)."""
        cached = self.__dict__.get("_v1")
        if cached is None:
            v1: Exact | float = 1
            for spec, mult in self.ops:
                if spec.is_custom:
                    v1 = v1 * spec.fn(1) ** mult
            self.__dict__["_v1"] = cached = v1
        return cached

    def __str__(self) -> str:
        from .syntax import print_fn

        return print_fn(self)


def _atom_is_exact(spec: _AtomSpec) -> bool:
    if spec.is_custom:
        return spec.exact
    if spec.eps is None:
        return True
    return isinstance(spec.eps, int)


def _canon_eps(eps: int | float) -> int | float:
    if isinstance(eps, bool):
        raise TypeError("eps must be a number")
    if isinstance(eps, int):
        return eps
    if isinstance(eps, float) and eps.is_integer():
        return int(eps)
    return eps


def _make(pairs: Iterable[tuple[_AtomSpec, int]]) -> ArithFn:
    merged: dict[_AtomSpec, int] = {}
    for spec, mult in pairs:
        if mult == 0 or spec.name == "delta":
            continue
        if mult < 0:
            raise ValueError(f"multiplicity must be >= 0, got {mult}")
        merged[spec] = merged.get(spec, 0) + mult
    ops = tuple(sorted(merged.items(), key=lambda kv: _atom_sort_key(kv[0])))
    return ArithFn(ops)


def _atom(name: str, eps: int | float | None = None) -> ArithFn:
    return _make([(_AtomSpec(name, eps), 1)])


DELTA = _atom("delta")
MU = _atom("mobius")
ZETA = _atom("zeta")
IDENTITY = _atom("identity")
PHI = _atom("phi")


def xi(eps: int | float) -> ArithFn:
    """m -> m**eps (completely multiplicative power function)."""
    return _atom("xi", _canon_eps(eps))


def jordan(eps: int | float) -> ArithFn:
    """Jordan-style totient: the Mobius transform of m**eps."""
    return _atom("jordan", _canon_eps(eps))


def sigma(eps: int | float) -> ArithFn:
    """Divisor power sum: m -> sum of d**eps over d | m."""
    return _atom("sigma", _canon_eps(eps))


def psi(eps: int | float) -> ArithFn:
    """m -> sum of d**eps over d | m with m/d squarefree.

    Evaluated at prime powers as p**(k*eps) + p**((k-1)*eps), which is
    well defined for every eps including 0 (no quotient of totients)."""
    return _atom("psi", _canon_eps(eps))


def custom_fn(
    name: str,
    fn: Callable[[int], object],
    *,
    multiplicative: bool = False,
    exact: bool = True,
) -> ArithFn:
    """Wrap an arbitrary callable as an atom (mainly for counterexamples).

    Custom atoms take part in convolution and matrix building but have no
    textual form, and the prime closed form refuses non-multiplicative
    ones."""
    spec = _AtomSpec(
        name,
        None,
        fn=fn,
        uid=next(_custom_counter),
        multiplicative=multiplicative,
        exact=exact,
    )
    return _make([(spec, 1)])


def convolve(f: ArithFn, g: ArithFn) -> ArithFn:
    """Dirichlet convolution f * g in canonical form."""
    return _make(list(f.ops) + list(g.ops))


def convolution_power(f: ArithFn, c: int) -> ArithFn:
    """c-fold convolution power; c = 0 gives the unit."""
    if c < 0:
        raise ValueError(f"convolution power wants c >= 0, got {c}")
    return _make([(spec, mult * c) for spec, mult in f.ops])


def composite(fs: Sequence[tuple[ArithFn, int]], d: int) -> ArithFn:
    """f1^(l1) * ... * fc^(lc) * mu^(d) in canonical form.

    fs must be nonempty with every l_i >= 1 and d >= 0.
    """
    if not fs:
        raise ValueError("composite wants a nonempty list of (fn, power)")
    if d < 0:
        raise ValueError(f"mobius power must be >= 0, got {d}")
    pairs: list[tuple[_AtomSpec, int]] = []
    for f, l in fs:
        if l < 1:
            raise ValueError(f"factor powers must be >= 1, got {l}")
        pairs.extend((spec, mult * l) for spec, mult in f.ops)
    pairs.extend((spec, mult * d) for spec, mult in MU.ops)
    return _make(pairs)


def split_mobius(f: ArithFn) -> tuple[tuple[tuple[ArithFn, int], ...], int]:
    """Decompose f into ((g_i, l_i), ...) plus the mobius power d.

    Inverse of `composite` on canonical forms: every non-mobius atom
    becomes a single-atom function with its multiplicity.
    """
    fs: list[tuple[ArithFn, int]] = []
    d = 0
    for spec, mult in f.ops:
        if spec.name == "mobius":
            d = mult
        else:
            fs.append((ArithFn(((spec, 1),)), mult))
    return tuple(fs), d


# ---------------------------------------------------------------------------
# evaluation


@dataclass(frozen=True)
class FnValue:
    """A function value in exact and double form.

    exact is None on the float path; otherwise approx is exactly
    float(exact)."""

    exact: Fraction | None
    approx: float

    @classmethod
    def from_exact(cls, v: Exact) -> "FnValue":
        v = Fraction(v)
        return cls(v, float(v))

    @classmethod
    def from_float(cls, x: float) -> "FnValue":
        return cls(None, float(x))


_EXACT_CACHE: dict[tuple[_Ops, int], Exact] = {}
_FLOAT_CACHE: dict[tuple[_Ops, int], float] = {}


def clear_caches() -> None:
    _EXACT_CACHE.clear()
    _FLOAT_CACHE.clear()


def _ipow(p: int, e: int) -> Exact:
    return p**e if e >= 0 else Fraction(1, p**-e)


def _atom_pp_exact(spec: _AtomSpec, p: int, k: int) -> Exact:
    """Atom value at p**k, k >= 1, integer parameter."""
    name = spec.name
    if name == "mobius":
        return -1 if k == 1 else 0
    if name == "zeta":
        return 1
    if name == "identity":
        return p**k
    if name == "phi":
        return p**k - p ** (k - 1)
    e = spec.eps
    if name == "xi":
        return _ipow(p, e * k)
    if name == "jordan":
        return _ipow(p, e * k) - _ipow(p, e * (k - 1))
    if name == "sigma":
        s: Exact = 0
        for j in range(k + 1):
            s += _ipow(p, e * j)
        return s
    if name == "psi":
        return _ipow(p, e * k) + _ipow(p, e * (k - 1))
    raise AssertionError(name)


def _atom_pp_float(spec: _AtomSpec, p: int, k: int) -> float:
    name = spec.name
    if name == "mobius":
        return -1.0 if k == 1 else 0.0
    if name == "zeta":
        return 1.0
    if name == "identity":
        return float(p**k)
    if name == "phi":
        return float(p**k - p ** (k - 1))
    e = float(spec.eps)
    pf = float(p)
    if name == "xi":
        return pf ** (e * k)
    if name == "jordan":
        return pf ** (e * k) - pf ** (e * (k - 1))
    if name == "sigma":
        return sum(pf ** (e * j) for j in range(k + 1))
    if name == "psi":
        return pf ** (e * k) + pf ** (e * (k - 1))
    raise AssertionError(name)


def _split_ops(ops: _Ops) -> tuple[_Ops, _Ops]:
    # single repeated atom splits its multiplicity in half (repeated
    # squaring); several atoms split down the middle of the sorted list
    if len(ops) == 1:
        spec, mult = ops[0]
        lo = mult // 2
        return ((spec, lo),), ((spec, mult - lo),)
    half = len(ops) // 2
    return ops[:half], ops[half:]


def _atom_exact_at(spec: _AtomSpec, m: int) -> Exact:
    if spec.is_custom:
        v = spec.fn(m)
        if not isinstance(v, (int, Fraction)):
            raise TypeError(
                f"custom function {spec.name!r} declared exact but returned {type(v).__name__}"
            )
        return v
    if m == 1:
        return 1
    out: Exact = 1
    for p, k in factorize(m).factors:
        out *= _atom_pp_exact(spec, p, k)
    return out


def _atom_float_at(spec: _AtomSpec, m: int) -> float:
    if spec.is_custom:
        return float(spec.fn(m))
    if m == 1:
        return 1.0
    out = 1.0
    for p, k in factorize(m).factors:
        out *= _atom_pp_float(spec, p, k)
    return out


def _eval_exact(ops: _Ops, m: int) -> Exact:
    if not ops:
        return 1 if m == 1 else 0
    if len(ops) == 1 and ops[0][1] == 1:
        return _atom_exact_at(ops[0][0], m)
    key = (ops, m)
    hit = _EXACT_CACHE.get(key)
    if hit is not None:
        return hit
    if all(spec.multiplicative for spec, _ in ops) and m > 1:
        fac = factorize(m).factors
        if len(fac) > 1:
            out: Exact = 1
            for p, k in fac:
                out *= _eval_exact(ops, p**k)
            _EXACT_CACHE[key] = out
            return out
    a, b = _split_ops(ops)
    out = 0
    for dv in divisors(m):
        left = _eval_exact(a, dv)
        if left:
            out += left * _eval_exact(b, m // dv)
    _EXACT_CACHE[key] = out
    return out


def _eval_float(ops: _Ops, m: int) -> float:
    if not ops:
        return 1.0 if m == 1 else 0.0
    if len(ops) == 1 and ops[0][1] == 1:
        return _atom_float_at(ops[0][0], m)
    key = (ops, m)
    hit = _FLOAT_CACHE.get(key)
    if hit is not None:
        return hit
    if all(spec.multiplicative for spec, _ in ops) and m > 1:
        fac = factorize(m).factors
        if len(fac) > 1:
            out = 1.0
            for p, k in fac:
                out *= _eval_float(ops, p**k)
            _FLOAT_CACHE[key] = out
            return out
    a, b = _split_ops(ops)
    out = 0.0
    for dv in divisors(m):
        out += _eval_float(a, dv) * _eval_float(b, m // dv)
    _FLOAT_CACHE[key] = out
    return out


def evaluate(f: ArithFn, m: int) -> FnValue:
    """f evaluated at m >= 1; exact + float on the exact path, float only
    when some atom carries a non-integer parameter."""
    if m < 1:
        raise ValueError(f"arithmetical functions take m >= 1, got {m}")
    if f.is_exact:
        return FnValue.from_exact(_eval_exact(f.ops, m))
    return FnValue.from_float(_eval_float(f.ops, m))


def evaluate_approx(f: ArithFn, m: int) -> float:
    """Pure double-precision evaluation of f at m (any f)."""
    if m < 1:
        raise ValueError(f"arithmetical functions take m >= 1, got {m}")
    return _eval_float(f.ops, m)


# ---------------------------------------------------------------------------
# prime closed form and class membership


def value_at_prime(fs: Sequence[tuple[ArithFn, int]], d: int, p: int) -> FnValue:
    """(f1^(l1) * ... * fc^(lc) * mu^(d))(p) by the closed form, without
    performing any convolution.

    Needs every f_i multiplicative (then f_i(1) is 0 or 1 and the value is
    sum_i l_i f_i(p) prod_{j != i} f_j(1) - d prod_i f_i(1), with the
    obvious collapse when some f_i(1) = 0).  p must be prime.
    """
    if not fs:
        raise ValueError("value_at_prime wants a nonempty list of (fn, power)")
    if d < 0:
        raise ValueError(f"mobius power must be >= 0, got {d}")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    for f, l in fs:
        if l < 1:
            raise ValueError(f"factor powers must be >= 1, got {l}")
        if not f.is_multiplicative:
            raise ValueError(
                "closed form needs multiplicative functions; "
                f"{f} is not known to be multiplicative"
            )
    exact = all(f.is_exact for f, _ in fs)
    if exact:
        ones = [_eval_exact(f.ops, 1) for f, _ in fs]
        at_p = [_eval_exact(f.ops, p) for f, _ in fs]
    else:
        ones = [_eval_float(f.ops, 1) for f, _ in fs]
        at_p = [_eval_float(f.ops, p) for f, _ in fs]
    total = 0
    for i, (f, l) in enumerate(fs):
        term = l * at_p[i] * ones[i] ** (l - 1)
        for j, (_, lj) in enumerate(fs):
            if j != i:
                term *= ones[j] ** lj
        total += term
    unit = 1
    for i, (_, l) in enumerate(fs):
        unit *= ones[i] ** l
    total -= d * unit
    if exact:
        return FnValue.from_exact(total)
    return FnValue.from_float(total)


IN_C_TILDE = "in_C_tilde"
IN_C_ONLY = "in_C_only"
NOT_IN_C = "not_in_C"


@dataclass(frozen=True)
class ClassVerdict:
    """Sign report for the Mobius transform of f over every divisor of a set.

    verdict is one of IN_C_TILDE (all values > 0), IN_C_ONLY (all >= 0,
    some zero) or NOT_IN_C (a negative value exists).  The witness is the
    smallest divisor attaining the extremal (minimal) value."""

    verdict: str
    set_elements: tuple[int, ...]
    witness_divisor: int
    witness_value: FnValue

    @property
    def in_class(self) -> bool:
        return self.verdict != NOT_IN_C

    @property
    def in_strict_class(self) -> bool:
        return self.verdict == IN_C_TILDE


def class_membership(f: ArithFn, S: Sequence[int]) -> ClassVerdict:
    """Honest membership verdict of f for the set S.

    Evaluates (f * mu) at every divisor of every element of S and reports
    the sign pattern.  No shortcut is taken for any atom: parity
    restrictions on the set show up by computation, not by assumption.
    """
    elements = tuple(sorted(set(S)))
    if not elements:
        raise ValueError("class membership wants a nonempty set")
    if elements[0] < 1:
        raise ValueError(f"set elements must be positive, got {elements[0]}")
    g = convolve(f, MU)
    checked: set[int] = set()
    for x in elements:
        checked.update(divisors(x))
    exact = g.is_exact
    best_d = 0
    best_v: Exact | float | None = None
    saw_zero = False
    for dv in sorted(checked):
        v = _eval_exact(g.ops, dv) if exact else _eval_float(g.ops, dv)
        if v == 0:
            saw_zero = True
        if best_v is None or v < best_v:
            best_d, best_v = dv, v
    if best_v < 0:
        verdict = NOT_IN_C
    elif saw_zero:
        verdict = IN_C_ONLY
    else:
        verdict = IN_C_TILDE
    wv = FnValue.from_exact(best_v) if exact else FnValue.from_float(best_v)
    return ClassVerdict(verdict, elements, best_d, wv)
