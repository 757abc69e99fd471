"""Exact determinants, a deterministic eigensolver, and eigenvalue bounds.

Determinants of exact matrices go through fraction-free (Bareiss)
elimination over the integers after clearing denominators, so results
are exact rationals of arbitrary size.  Eigenvalues go through the
cyclic Jacobi kernel; floats enter exactly once, when the matrix is
handed to the solver.

The bound constructors return BoundReport values that carry the bound
pair, the observed quantity, strictness, and the absolute solver
residual so callers can require margins in units of actual numerical
error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from ._jacobi import jacobi_eigenvalues
from .arith import ArithFn, MU, class_membership, composite, convolve, evaluate
from .errors import HypothesisError, NonConvergenceError
from .formatting import format_scalar
from .matrix import GcdMatrix, IndexSet, build_gcd_matrix
from .numtheory import divisors

__all__ = [
    "Spectrum",
    "BoundReport",
    "determinant_exact",
    "smith_determinant",
    "det_en_plus_diag",
    "eigenvalues_symmetric",
    "fresh_divisor_lower_bound",
    "determinant_sandwich_bounds",
    "rank_one_update_bounds",
    "constant_gcd_eigenvalue_bounds",
    "interlacing_check",
]

DEFAULT_TOL = 1e-12
MAX_SWEEPS = 60


# ---------------------------------------------------------------------------
# exact determinants


def _exact_grid(M) -> list[list[Fraction]]:
    if isinstance(M, GcdMatrix):
        return M.exact_rows()
    rows = [list(r) for r in M]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise ValueError("determinant wants a nonempty square matrix")
    for r in rows:
        for v in r:
            if isinstance(v, float) or not isinstance(v, (int, Fraction)):
                raise ValueError(f"exact determinant got a non-rational entry {v!r}")
    return [[Fraction(v) for v in r] for r in rows]


def _bareiss(a: list[list[int]]) -> int:
    """Fraction-free elimination; mutates a; exact integer determinant."""
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            row_i = a[i]
            row_k = a[k]
            lead = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - lead * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def determinant_exact(M) -> Fraction:
    """Exact determinant of a square matrix with rational entries.

    Accepts a GcdMatrix built on the exact path or any nested sequence of
    ints/Fractions.  Denominators are cleared row by row, the integer
    matrix goes through Bareiss elimination, and the factor is divided
    back out.
    """
    grid = _exact_grid(M)
    scale = 1
    int_rows: list[list[int]] = []
    for row in grid:
        mult = math.lcm(*(v.denominator for v in row))
        scale *= mult
        int_rows.append([int(v * mult) for v in row])
    return Fraction(_bareiss(int_rows), scale)


def smith_determinant(f: ArithFn, n: int) -> Fraction:
    """Closed-form determinant of (f(gcd(i, j))) on {1, ..., n}: the
    product over k <= n of the Mobius transform of f at k."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if not f.is_exact:
        raise ValueError("closed-form determinant needs an exactly evaluable function")
    g = convolve(f, MU)
    out = Fraction(1)
    for k in range(1, n + 1):
        out *= evaluate(g, k).exact
    return out


def det_en_plus_diag(a: Sequence) -> Fraction | float:
    """det(E_n + diag(a_i - 1)) by the closed form: prod(a_i - 1) plus the
    sum of all leave-one-out products of (a_i - 1).

    Exact for int/Fraction input, float for float input.  n = 1 gives a_1.
    """
    terms = [v - 1 for v in a]
    n = len(terms)
    if n == 0:
        raise ValueError("need at least one diagonal entry")
    prefix = [1] * (n + 1)
    for i, t in enumerate(terms):
        prefix[i + 1] = prefix[i] * t
    suffix = [1] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] * terms[i]
    total = prefix[n]
    for i in range(n):
        total = total + prefix[i] * suffix[i + 1]
    if all(isinstance(v, (int, Fraction)) for v in terms):
        return Fraction(total)
    return float(total)


# ---------------------------------------------------------------------------
# eigensolver


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues ascending, plus solver diagnostics.

    residual is the largest off-diagonal magnitude at termination relative
    to the initial Frobenius norm; fro_norm is that norm, so
    residual * fro_norm is the absolute numerical error scale."""

    eigenvalues: tuple[float, ...]
    residual: float
    sweeps: int
    fro_norm: float

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    def smallest(self, q: int = 1) -> float:
        """q-th smallest eigenvalue, 1-indexed."""
        if not 1 <= q <= self.n:
            raise ValueError(f"q must be in 1..{self.n}, got {q}")
        return self.eigenvalues[q - 1]

    @property
    def spectral_radius(self) -> float:
        return max(abs(v) for v in self.eigenvalues)


def _to_float_array(M) -> np.ndarray:
    if isinstance(M, GcdMatrix):
        return M.float_array()  # symmetric by construction
    if isinstance(M, np.ndarray):
        arr = np.asarray(M, dtype=np.float64)
    else:
        rows = [list(r) for r in M]
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("eigensolver wants a nonempty square matrix")
        if all(isinstance(v, (int, Fraction)) and not isinstance(v, bool) for r in rows for v in r):
            for i in range(n):
                for j in range(i + 1, n):
                    if rows[i][j] != rows[j][i]:
                        raise ValueError(
                            f"matrix is not symmetric: entry ({i},{j}) != ({j},{i}) exactly"
                        )
        arr = np.array([[float(v) for v in r] for r in rows], dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise ValueError(f"eigensolver wants a square matrix, got shape {arr.shape}")
    scale = max(1.0, float(np.max(np.abs(arr)))) if arr.size else 1.0
    if float(np.max(np.abs(arr - arr.T))) > 1e-12 * scale:
        raise ValueError("matrix is not symmetric within 1e-12 relative tolerance")
    return arr


def eigenvalues_symmetric(M, tol: float = DEFAULT_TOL, max_sweeps: int = MAX_SWEEPS) -> Spectrum:
    """All eigenvalues of a symmetric matrix by cyclic Jacobi sweeps.

    Deterministic row-major pivot order; terminates when the largest
    off-diagonal entry drops below tol times the initial Frobenius norm,
    or raises NonConvergenceError after max_sweeps (never returns junk
    silently).
    """
    arr = _to_float_array(M)
    fro = float(np.linalg.norm(arr))
    eigs, residual, sweeps, converged = jacobi_eigenvalues(arr, tol, max_sweeps)
    if not converged:
        raise NonConvergenceError(residual, sweeps)
    return Spectrum(eigs, residual, sweeps, fro)


# ---------------------------------------------------------------------------
# bounds


@dataclass(frozen=True)
class BoundReport:
    """A bound pair with the observed quantity it brackets.

    strict means the inequalities are strict in exact arithmetic; the
    caller should then demand a margin of several times `residual` (the
    absolute numerical error scale of the observed solve, 0 for exact
    observations)."""

    source: str
    lower: Fraction | float
    upper: Fraction | float
    observed: Fraction | float
    strict: bool
    case: str
    residual: float

    def to_json_dict(self) -> dict:
        return {
            "source": self.source,
            "lower": format_scalar(self.lower),
            "upper": format_scalar(self.upper),
            "observed": format_scalar(self.observed),
            "strict": self.strict,
            "case": self.case,
            "residual": format_scalar(self.residual),
        }


def fresh_divisor_lower_bound(h: ArithFn, S) -> Fraction:
    """Product over x_k in S (ascending) of the sum of the Mobius
    transform of h over divisors of x_k dividing no earlier element.

    Equals the determinant when S is closed under division; in general it
    is the lower end of the determinant sandwich."""
    idx = S if isinstance(S, IndexSet) else IndexSet.of(S)
    if not h.is_exact:
        raise ValueError("lower bound needs an exactly evaluable function")
    g = convolve(h, MU)
    out = Fraction(1)
    seen: list[int] = []
    for x in idx.elements:
        alpha = Fraction(0)
        for dv in divisors(x):
            if all(t % dv for t in seen):
                alpha += evaluate(g, dv).exact
        out *= alpha
        seen.append(x)
    return out


def determinant_sandwich_bounds(
    fs: Sequence[tuple[ArithFn, int]], d: int, S
) -> BoundReport:
    """Exact sandwich for det of the gcd matrix of f1^(l1)*...*fc^(lc)*mu^(d).

    Hypotheses checked: every f_i lies in the (non-strict) positivity
    class over S, and sum(l_i) > d.  The lower bound is the fresh-divisor
    product for the composite with one extra mu; the upper bound is the
    product of the diagonal entries; both are exact, as is the observed
    determinant."""
    idx = S if isinstance(S, IndexSet) else IndexSet.of(S)
    h = composite(fs, d)
    total = sum(l for _, l in fs)
    if total <= d:
        raise HypothesisError(
            f"need sum of factor powers > mobius power, got {total} <= {d}"
        )
    if not h.is_exact:
        raise ValueError("sandwich bounds need exactly evaluable functions")
    for f, _ in fs:
        verdict = class_membership(f, idx.elements)
        if not verdict.in_class:
            raise HypothesisError(
                f"{f} fails the positivity class over {idx.elements}: "
                f"Mobius transform at {verdict.witness_divisor} is "
                f"{format_scalar(verdict.witness_value.exact)}"
            )
    lower = fresh_divisor_lower_bound(h, idx)
    upper = Fraction(1)
    for x in idx.elements:
        upper *= evaluate(h, x).exact
    det = determinant_exact(build_gcd_matrix(h, idx))
    if not (lower <= det <= upper):  # internal consistency, never expected
        raise RuntimeError(
            f"sandwich violated: {lower} <= {det} <= {upper} is false on {idx.elements}"
        )
    return BoundReport(
        source="det_sandwich",
        lower=lower,
        upper=upper,
        observed=det,
        strict=False,
        case=f"n={idx.n}, d={d}",
        residual=0.0,
    )


def _check_ascending(values, labels, what: str) -> None:
    for i in range(len(values) - 1):
        if values[i] > values[i + 1]:
            raise HypothesisError(
                f"{what} must be nondecreasing; it drops from {labels[i]} to {labels[i + 1]}"
            )


def rank_one_update_bounds(r: Sequence, tol: float = DEFAULT_TOL) -> BoundReport:
    """Smallest eigenvalue of E_n + diag(r_i - 1) bracketed in closed form.

    Needs r ascending with r_1 >= 1 and n >= 2.  If r_1 = r_2 the value
    is exactly r_1 - 1; otherwise it lies strictly between r_1 - 1 and
    r_1 - 1 + 1/(1 + sum_{i>=2} 1/(r_i - r_1)).  The observed value comes
    from the Jacobi solver on the materialized matrix."""
    vals = list(r)
    if len(vals) < 2:
        raise HypothesisError(f"need n >= 2 diagonal parameters, got {len(vals)}")
    _check_ascending(vals, vals, "diagonal parameters")
    if vals[0] < 1:
        raise HypothesisError(f"need r_1 >= 1, got {vals[0]}")
    exact = all(isinstance(v, (int, Fraction)) for v in vals)
    one = 1 if exact else 1.0
    n = len(vals)
    rows = [[vals[i] if i == j else one for j in range(n)] for i in range(n)]
    spec = eigenvalues_symmetric(rows, tol)
    observed = spec.smallest(1)
    if vals[0] == vals[1]:
        lower = upper = (Fraction(vals[0]) - 1) if exact else (vals[0] - 1.0)
        strict = False
        case = "r1=r2"
    else:
        base = (Fraction(vals[0]) - 1) if exact else (vals[0] - 1.0)
        ssum = Fraction(0) if exact else 0.0
        for v in vals[1:]:
            gap = v - vals[0]
            ssum += (Fraction(1) / Fraction(gap)) if exact else 1.0 / gap
        lower = base
        upper = base + (Fraction(1) / (1 + ssum) if exact else 1.0 / (1.0 + ssum))
        strict = True
        case = "r1<r2"
    return BoundReport(
        source="rank_one_diag",
        lower=lower,
        upper=upper,
        observed=observed,
        strict=strict,
        case=case,
        residual=spec.residual * spec.fro_norm,
    )


def constant_gcd_eigenvalue_bounds(
    f: ArithFn, x: int, S, tol: float = DEFAULT_TOL
) -> BoundReport:
    """Bounds for the smallest eigenvalue of the gcd matrix of f over a
    set whose pairwise gcds all equal x.

    Hypotheses checked: constant pairwise gcd, membership of f in the
    positivity class over S, and f nondecreasing along S.  Dispatch:
    f(x_1) = 0 forces eigenvalue 0; f(x) = 0 makes the matrix diagonal
    with eigenvalue f(x_1); f(x_1) = f(x_2) gives exactly f(x_1) - f(x);
    otherwise strict bounds f(x_1) - f(x) < lambda < f(x_1) - f(x) +
    f(x)/(1 + sum_{i>=2} f(x)/(f(x_i) - f(x_1)))."""
    idx = S if isinstance(S, IndexSet) else IndexSet.of(S)
    xs = idx.elements
    if idx.n < 2:
        raise HypothesisError("constant-gcd bounds need at least two elements")
    for i in range(idx.n):
        for j in range(i + 1, idx.n):
            g = math.gcd(xs[i], xs[j])
            if g != x:
                raise HypothesisError(f"gcd({xs[i]}, {xs[j]}) = {g}, expected {x}")
    verdict = class_membership(f, xs)
    if not verdict.in_class:
        raise HypothesisError(
            f"{f} fails the positivity class over {xs}: Mobius transform at "
            f"{verdict.witness_divisor} is negative"
        )
    exact = f.is_exact
    vraw = [evaluate(f, v) for v in xs]
    vals = [v.exact if exact else v.approx for v in vraw]
    _check_ascending(vals, [f"f({v})" for v in xs], "f along the set")
    fx = evaluate(f, x)
    fxv = fx.exact if exact else fx.approx
    M = build_gcd_matrix(f, idx)
    spec = eigenvalues_symmetric(M, tol)
    observed = spec.smallest(1)
    zero = Fraction(0) if exact else 0.0
    if vals[0] == 0:
        lower = upper = zero
        strict = False
        case = "f(x1)=0"
    elif fxv == 0:
        lower = upper = vals[0]
        strict = False
        case = "diagonal"
    elif vals[0] == vals[1]:
        lower = upper = vals[0] - fxv
        strict = False
        case = "f(x1)=f(x2)"
    else:
        lower = vals[0] - fxv
        ssum = zero
        for v in vals[1:]:
            ssum += fxv / (v - vals[0])
        upper = lower + fxv / (1 + ssum)
        strict = True
        case = "f(x1)<f(x2)"
    return BoundReport(
        source="constant_gcd",
        lower=lower,
        upper=upper,
        observed=observed,
        strict=strict,
        case=case,
        residual=spec.residual * spec.fro_norm,
    )


def interlacing_check(small, large, rel_tol: float = 1e-8) -> tuple[bool, float]:
    """Cauchy interlacing between consecutive principal spectra.

    small and large are Spectrum values (or plain ascending sequences)
    with len(large) = len(small) + 1.  Checks, with tol = rel_tol times
    the spectral radius of the larger spectrum,
    large[k] <= small[k] + tol and small[k] <= large[k+1] + 2*tol.
    Returns (ok, max violation)."""
    sm = small.eigenvalues if isinstance(small, Spectrum) else tuple(small)
    lg = large.eigenvalues if isinstance(large, Spectrum) else tuple(large)
    if len(lg) != len(sm) + 1:
        raise ValueError(
            f"interlacing wants sizes (n, n+1), got ({len(sm)}, {len(lg)})"
        )
    radius = max(abs(v) for v in lg)
    tol = rel_tol * radius
    worst = 0.0
    for k in range(len(sm)):
        worst = max(worst, lg[k] - (sm[k] + tol))
        worst = max(worst, sm[k] - (lg[k + 1] + 2 * tol))
    return worst <= 0.0, worst
