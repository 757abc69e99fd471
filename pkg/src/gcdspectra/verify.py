"""Named self-check suites, runnable from the CLI.

Each suite re-derives a family of identities with an independent method
(divisor scans, cofactor expansion, closed forms) and compares against
the library's primary implementations on deterministic seeded inputs.
A suite returns (checks_run, failures); every failure line is a minimal
reproducer in terms of public API calls.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from . import arith
from .arith import (
    DELTA,
    IDENTITY,
    MU,
    PHI,
    ZETA,
    class_membership,
    composite,
    convolve,
    evaluate,
    jordan,
    psi,
    sigma,
    value_at_prime,
    xi,
)
from .matrix import IndexSet, build_gcd_matrix, kronecker, tensor_product_set
from .numtheory import divisors, primes_up_to
from .spectra import (
    det_en_plus_diag,
    determinant_exact,
    determinant_sandwich_bounds,
    eigenvalues_symmetric,
    interlacing_check,
    rank_one_update_bounds,
    smith_determinant,
)

__all__ = ["SUITES", "run_suite", "suite_names"]

# functions whose Mobius transform is nonnegative everywhere: safe
# hypothesis material for the bound suites
_CLASS_POOL = [
    ("zeta", ZETA),
    ("I", IDENTITY),
    ("phi", PHI),
    ("sigma{1}", sigma(1)),
    ("psi{1}", psi(1)),
    ("J{1}", jordan(1)),
    ("J{2}", jordan(2)),
    ("sigma{2}", sigma(2)),
    ("xi{2}", xi(2)),
]


def _cofactor_det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = Fraction(0)
    for j in range(n):
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = rows[0][j] * _cofactor_det(minor)
        total += term if j % 2 == 0 else -term
    return total


def suite_smith(seed: int) -> tuple[int, list[str]]:
    """Closed-form determinant vs elimination, catalog functions."""
    checks, failures = 0, []
    for name, f in [("I", IDENTITY), ("phi", PHI), ("sigma{1}", sigma(1)),
                    ("psi{1}", psi(1)), ("J{1}", jordan(1)), ("zeta", ZETA)]:
        for n in (1, 2, 3, 5, 8, 12):
            got = determinant_exact(build_gcd_matrix(f, range(1, n + 1)))
            want = smith_determinant(f, n)
            checks += 1
            if got != want:
                failures.append(
                    f"determinant_exact(build_gcd_matrix(parse_fn({name!r}), "
                    f"range(1, {n + 1}))) = {got} but smith_determinant gives {want}"
                )
    rng = random.Random(seed)
    for _ in range(10):
        f = convolve(rng.choice(_CLASS_POOL)[1], rng.choice(_CLASS_POOL)[1])
        n = rng.randint(1, 6)
        got = determinant_exact(build_gcd_matrix(f, range(1, n + 1)))
        want = smith_determinant(f, n)
        checks += 1
        if got != want:
            failures.append(
                f"smith identity fails for {f} on range(1, {n + 1}): {got} != {want}"
            )
    return checks, failures


def suite_mobius(seed: int) -> tuple[int, list[str]]:
    """Mobius inversion identities, pointwise."""
    checks, failures = 0, []
    mz = convolve(MU, ZETA)
    for m in range(1, 2001):
        checks += 1
        if evaluate(mz, m).exact != evaluate(DELTA, m).exact:
            failures.append(f"evaluate(convolve(MU, ZETA), {m}) != delta({m})")
    rng = random.Random(seed)
    for _ in range(100):
        name, f = rng.choice(_CLASS_POOL)
        m = rng.randint(1, 50000)
        back = convolve(convolve(f, MU), ZETA)
        checks += 1
        if evaluate(back, m).exact != evaluate(f, m).exact:
            failures.append(
                f"evaluate(convolve(convolve(parse_fn({name!r}), MU), ZETA), {m}) "
                f"!= evaluate(parse_fn({name!r}), {m})"
            )
    return checks, failures


def suite_prime_closed_form(seed: int) -> tuple[int, list[str]]:
    """Single-prime value of a composite vs full convolution."""
    checks, failures = 0, []
    rng = random.Random(seed)
    primes = primes_up_to(500)
    for _ in range(40):
        c = rng.randint(1, 3)
        fs = []
        budget = 4
        for _ in range(c):
            l = rng.randint(1, max(1, budget - (c - len(fs) - 1)))
            budget -= l
            fs.append((rng.choice(_CLASS_POOL)[1], l))
        d = rng.randint(0, 3)
        p = rng.choice(primes)
        got = value_at_prime(fs, d, p)
        want = evaluate(composite(fs, d), p)
        checks += 1
        if got.exact != want.exact:
            failures.append(
                f"value_at_prime({fs}, {d}, {p}) = {got.exact} but full "
                f"evaluation gives {want.exact}"
            )
    return checks, failures


def suite_closure(seed: int) -> tuple[int, list[str]]:
    """Convolution products of class members stay in the class."""
    checks, failures = 0, []
    rng = random.Random(seed)
    for _ in range(30):
        name_f, f = rng.choice(_CLASS_POOL)
        name_g, g = rng.choice(_CLASS_POOL)
        S = sorted(rng.sample(range(1, 31), rng.randint(1, 6)))
        verdict = class_membership(convolve(f, g), S)
        checks += 1
        if not verdict.in_class:
            failures.append(
                f"class_membership(convolve(parse_fn({name_f!r}), "
                f"parse_fn({name_g!r})), {S}) left the class at divisor "
                f"{verdict.witness_divisor}"
            )
    return checks, failures


def suite_sandwich(seed: int) -> tuple[int, list[str]]:
    """Exact determinant bounds on seeded hypothesis-satisfying inputs."""
    checks, failures = 0, []
    rng = random.Random(seed)
    for _ in range(30):
        c = rng.randint(1, 2)
        fs = [(rng.choice(_CLASS_POOL)[1], rng.randint(1, 2)) for _ in range(c)]
        total = sum(l for _, l in fs)
        d = rng.randint(0, total - 1)
        S = sorted(rng.sample(range(1, 41), rng.randint(1, 6)))
        checks += 1
        try:
            rep = determinant_sandwich_bounds(fs, d, S)
        except RuntimeError as err:
            failures.append(f"determinant_sandwich_bounds({fs}, {d}, {S}): {err}")
            continue
        if not (rep.lower <= rep.observed <= rep.upper):
            failures.append(
                f"determinant_sandwich_bounds({fs}, {d}, {S}) returned "
                f"{rep.lower} <= {rep.observed} <= {rep.upper}"
            )
    return checks, failures


def suite_diag_closed_form(seed: int) -> tuple[int, list[str]]:
    """Rank-one-plus-diagonal determinant: closed form vs elimination."""
    checks, failures = 0, []
    rng = random.Random(seed)
    for _ in range(30):
        n = rng.randint(1, 7)
        a = [Fraction(rng.randint(-8, 8), rng.randint(1, 5)) for _ in range(n)]
        rows = [[a[i] if i == j else Fraction(1) for j in range(n)] for i in range(n)]
        got = det_en_plus_diag(a)
        want = determinant_exact(rows)
        checks += 1
        if got != want:
            failures.append(f"det_en_plus_diag({a}) = {got}, elimination gives {want}")
        oracle = _cofactor_det(rows) if n <= 5 else want
        checks += 1
        if want != oracle:
            failures.append(
                f"determinant_exact disagrees with cofactor expansion on {rows}"
            )
    return checks, failures


def suite_rank_one_bounds(seed: int) -> tuple[int, list[str]]:
    """Closed-form eigenvalue bracket vs the solver."""
    checks, failures = 0, []
    rng = random.Random(seed)
    for _ in range(30):
        n = rng.randint(2, 12)
        r = sorted(rng.randint(1, 40) for _ in range(n))
        rep = rank_one_update_bounds(r)
        checks += 1
        lo, hi = float(rep.lower), float(rep.upper)
        margin = 10.0 * rep.residual
        if rep.strict:
            ok = lo + margin < rep.observed < hi - margin
        else:
            ok = abs(rep.observed - lo) <= max(1e-9, 1e-9 * abs(lo)) + margin
        if not ok:
            failures.append(
                f"rank_one_update_bounds({r}): observed {rep.observed} vs "
                f"[{rep.lower}, {rep.upper}] (strict={rep.strict})"
            )
    return checks, failures


def suite_kronecker(seed: int) -> tuple[int, list[str]]:
    """Product-set factorization for multiplicative functions, and the
    non-multiplicative counterexample that must break it."""
    checks, failures = 0, []
    rng = random.Random(seed)

    def check_pair(f, name, X, Y, expect_equal):
        nonlocal checks
        idx, perm = tensor_product_set(X, Y)
        A = build_gcd_matrix(f, X)
        B = build_gcd_matrix(f, Y)
        K = kronecker(A, B)
        direct = build_gcd_matrix(f, idx)
        if f.is_exact:
            rows = direct.exact_rows()
            equal = all(
                K[a][b] == rows[perm[a]][perm[b]]
                for a in range(len(perm))
                for b in range(len(perm))
            )
        else:
            rows = direct.float_array()
            equal = all(
                math.isclose(K[a][b], rows[perm[a]][perm[b]], rel_tol=1e-12)
                for a in range(len(perm))
                for b in range(len(perm))
            )
        checks += 1
        if equal != expect_equal:
            verb = "differs from" if expect_equal else "matches"
            failures.append(
                f"kronecker(build_gcd_matrix({name}, {X}), build_gcd_matrix("
                f"{name}, {Y})) {verb} the product-set matrix"
            )

    for name, f in [("phi", PHI), ("sigma{1}", sigma(1)), ("I", IDENTITY)]:
        check_pair(f, name, (1, 2), (3, 5), True)
    small_primes = [2, 3, 5, 7, 11, 13]
    for _ in range(20):
        ps = rng.sample(small_primes, 4)
        X = tuple(sorted({1, ps[0], ps[0] * ps[1]}))
        Y = tuple(sorted({ps[2], ps[3]}))
        name, f = rng.choice(_CLASS_POOL)
        check_pair(f, name, X, Y, True)
    tweak = arith.custom_fn(
        "tweak", lambda m: 9 if m == 10 else m, multiplicative=False, exact=True
    )
    check_pair(tweak, "tweak", (1, 2), (3, 5), False)
    return checks, failures


def suite_interlacing(seed: int) -> tuple[int, list[str]]:
    """Nested principal submatrices interlace."""
    checks, failures = 0, []
    specs = {
        n: eigenvalues_symmetric(build_gcd_matrix(PHI, range(1, n + 1)))
        for n in range(1, 16)
    }
    for n in range(1, 15):
        ok, worst = interlacing_check(specs[n], specs[n + 1])
        checks += 1
        if not ok:
            failures.append(
                f"interlacing_check on phi gcd matrices for sizes ({n}, {n + 1}) "
                f"violated by {worst}"
            )
    rng = random.Random(seed)
    for _ in range(10):
        n = rng.randint(2, 10)
        raw = [[rng.uniform(-3, 3) for _ in range(n)] for _ in range(n)]
        sym = [[(raw[i][j] + raw[j][i]) / 2 for j in range(n)] for i in range(n)]
        sub = [row[: n - 1] for row in sym[: n - 1]]
        ok, worst = interlacing_check(
            eigenvalues_symmetric(sub), eigenvalues_symmetric(sym)
        )
        checks += 1
        if not ok:
            failures.append(
                f"interlacing_check violated by {worst} on a random symmetric "
                f"matrix (seed {seed}, n {n})"
            )
    return checks, failures


SUITES = {
    "smith": suite_smith,
    "mobius": suite_mobius,
    "prime-closed-form": suite_prime_closed_form,
    "closure": suite_closure,
    "sandwich": suite_sandwich,
    "diag-closed-form": suite_diag_closed_form,
    "rank-one-bounds": suite_rank_one_bounds,
    "kronecker": suite_kronecker,
    "interlacing": suite_interlacing,
}


def suite_names() -> list[str]:
    return [*SUITES, "all"]


def run_suite(name: str, seed: int = 0) -> list[tuple[str, int, list[str]]]:
    """Run one suite (or 'all'); returns (name, checks, failures) rows."""
    if name == "all":
        return [(k, *fn(seed)) for k, fn in SUITES.items()]
    if name not in SUITES:
        raise ValueError(
            f"unknown suite {name!r}; choose from {', '.join(suite_names())}"
        )
    return [(name, *SUITES[name](seed))]
