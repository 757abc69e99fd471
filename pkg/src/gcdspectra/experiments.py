"""Convergence experiments over growing index sets, plus divergence evidence.

The experiment runner tracks the q-th smallest eigenvalue of the gcd
matrix of a composite function as the index set grows along a sequence
generator.  It records the series, monotonicity, nonnegativity,
interlacing between consecutive sizes, and (when the generator has an
arithmetic-progression structure) whether the composite vanishes at a
progression prime — the regime where the eigenvalue is pinned to zero.

Nothing here proves a limit.  Reports state finite observations:
plateaus are reported as the final value next to the series, and the
divergence checker labels its output as evidence, never as a proof.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import MutableMapping, Sequence as SequenceT

import numpy as np

from .arith import ArithFn, composite, evaluate, evaluate_approx
from .errors import HypothesisError, NonConvergenceError
from .numtheory import ProgressionPrimes, primes_in_progression
from .sequences import ConstantGcdSequence, ProgressionSequence
from .spectra import (
    DEFAULT_TOL,
    MAX_SWEEPS,
    Spectrum,
    constant_gcd_eigenvalue_bounds,
    eigenvalues_symmetric,
    interlacing_check,
)

__all__ = [
    "ConvergenceReport",
    "DivergenceEvidence",
    "convergence_experiment",
    "divergence_check",
]

EVIDENCE_NOTE = "finite-sample evidence, not a proof of divergence"

# |lambda| below this multiple of the trace counts as an observed zero
ZERO_REL_TOL = 1e-8
# slack for the monotonicity / nonnegativity audits, relative to scale
AUDIT_REL_TOL = 1e-8
# how many progression primes the zero-regime probe samples
ZERO_PROBE_COUNT = 50


@dataclass(frozen=True)
class DivergenceEvidence:
    """Finite-sample record of the reciprocal-sum growth of f at
    progression primes, with the linear-bound diagnostic f(p) <= C*p.

    checkpoint indices double (1, 2, 4, ...) and end at the sample size;
    window growth means the partial sums strictly increase from each
    checkpoint to the next.  best_c is the largest observed f(p)/p;
    window_best_c tracks it per checkpoint prefix, so unbounded growth
    shows up as a rising tail."""

    fn_text: str
    modulus: int
    prime_count: int
    partial_sums: tuple[float, ...]
    checkpoints: tuple[int, ...]
    checkpoint_sums: tuple[float, ...]
    strictly_increasing_windows: bool
    best_c: float
    window_best_c: tuple[float, ...]
    linear_c: float | None
    linear_bound_holds: bool | None
    zero_value_at: int | None
    note: str = EVIDENCE_NOTE

    def to_json_dict(self) -> dict:
        return {
            "function": self.fn_text,
            "modulus": self.modulus,
            "prime_count": self.prime_count,
            "partial_sums": [repr(v) for v in self.partial_sums],
            "checkpoints": list(self.checkpoints),
            "checkpoint_sums": [repr(v) for v in self.checkpoint_sums],
            "strictly_increasing_windows": self.strictly_increasing_windows,
            "best_c": repr(self.best_c),
            "window_best_c": [repr(v) for v in self.window_best_c],
            "linear_c": None if self.linear_c is None else repr(float(self.linear_c)),
            "linear_bound_holds": self.linear_bound_holds,
            "zero_value_at": self.zero_value_at,
            "note": self.note,
        }


def divergence_check(
    f: ArithFn, primes: ProgressionPrimes, linear_c: float | None = None
) -> DivergenceEvidence:
    """Partial sums of 1/f(p) over the given progression primes.

    A zero value of f at some prime truncates the sums there and is
    reported separately (that prime already forces the zero-eigenvalue
    regime, no series needed).  When linear_c is given, also reports
    whether f(p) <= linear_c * p at every sampled prime.
    """
    if not primes.primes:
        raise ValueError("divergence evidence needs at least one prime")
    sums: list[float] = []
    ratios: list[float] = []
    zero_at: int | None = None
    linear_holds = None if linear_c is None else True
    total = 0.0
    for p in primes.primes:
        v = evaluate(f, p)
        is_zero = (v.exact == 0) if f.is_exact else (v.approx == 0.0)
        if is_zero:
            zero_at = p
            break
        if f.is_exact:
            total += 1.0 / v.approx
            ratio = float(v.exact / p)
            if linear_c is not None and v.exact > linear_c * p:
                linear_holds = False
        else:
            total += 1.0 / v.approx
            ratio = v.approx / p
            if linear_c is not None and v.approx > linear_c * p:
                linear_holds = False
        sums.append(total)
        ratios.append(ratio)
    count = len(sums)
    checkpoints: list[int] = []
    k = 1
    while k < count:
        checkpoints.append(k)
        k *= 2
    if count:
        checkpoints.append(count)
    checkpoint_sums = tuple(sums[k - 1] for k in checkpoints)
    increasing = all(
        checkpoint_sums[i] < checkpoint_sums[i + 1]
        for i in range(len(checkpoint_sums) - 1)
    )
    window_best = []
    best = float("-inf")
    pos = 0
    for k in checkpoints:
        while pos < k:
            best = max(best, ratios[pos])
            pos += 1
        window_best.append(best)
    return DivergenceEvidence(
        fn_text=str(f),
        modulus=primes.modulus,
        prime_count=count,
        partial_sums=tuple(sums),
        checkpoints=tuple(checkpoints),
        checkpoint_sums=checkpoint_sums,
        strictly_increasing_windows=increasing,
        best_c=max(ratios) if ratios else 0.0,
        window_best_c=tuple(window_best),
        linear_c=None if linear_c is None else float(linear_c),
        linear_bound_holds=linear_holds,
        zero_value_at=zero_at,
    )


@dataclass(frozen=True)
class ConvergenceReport:
    """Everything one experiment observed, in serializable form.

    series holds (n, value) pairs for n = q..n_max; a size whose solve
    failed appears in failures instead and leaves a gap.  The zero_*
    fields are populated when the sequence has a progression modulus and
    the composite vanishes at a sampled progression prime."""

    fn_text: str
    sequence_spec: str
    q: int
    n_max: int
    tol: float
    series: tuple[tuple[int, float], ...]
    failures: tuple[tuple[int, str], ...]
    interlacing_violations: tuple[tuple[int, float], ...]
    monotone_nonincreasing: bool
    nonnegative: bool
    final_value: float | None
    zero_regime: bool
    zero_witness_prime: int | None
    zero_row_element: int | None
    final_within_zero_tol: bool | None
    bound_annotations: tuple[dict, ...]
    divergence: DivergenceEvidence | None

    def to_json_dict(self) -> dict:
        return {
            "function": self.fn_text,
            "sequence": self.sequence_spec,
            "q": self.q,
            "n_max": self.n_max,
            "tol": repr(self.tol),
            "series": [{"n": n, "value": repr(v)} for n, v in self.series],
            "failures": [{"n": n, "error": msg} for n, msg in self.failures],
            "interlacing_violations": [
                {"n": n, "excess": repr(v)} for n, v in self.interlacing_violations
            ],
            "monotone_nonincreasing": self.monotone_nonincreasing,
            "nonnegative": self.nonnegative,
            "final_value": None if self.final_value is None else repr(self.final_value),
            "zero_regime": self.zero_regime,
            "zero_witness_prime": self.zero_witness_prime,
            "zero_row_element": self.zero_row_element,
            "final_within_zero_tol": self.final_within_zero_tol,
            "bound_annotations": list(self.bound_annotations),
            "divergence": None if self.divergence is None else self.divergence.to_json_dict(),
        }

    def to_csv(self) -> str:
        lines = ["n,value"]
        lines.extend(f"{n},{v!r}" for n, v in self.series)
        return "\n".join(lines) + "\n"

    def summary_line(self) -> str:
        final = "none" if self.final_value is None else repr(self.final_value)
        return (
            f"{self.fn_text} on {self.sequence_spec}: q={self.q} n_max={self.n_max} "
            f"final={final} monotone={self.monotone_nonincreasing} "
            f"nonnegative={self.nonnegative} "
            f"interlacing_violations={len(self.interlacing_violations)} "
            f"failures={len(self.failures)} zero_regime={self.zero_regime}"
        )


def _zero_row_element(h: ArithFn, elements: tuple[int, ...], arr: np.ndarray) -> int | None:
    """First element whose whole matrix row vanishes, or None."""
    if h.is_exact:
        for x in elements:
            if all(evaluate(h, math.gcd(x, y)).exact == 0 for y in elements):
                return x
        return None
    scale = max(1.0, float(np.max(np.abs(arr))))
    for t, x in enumerate(elements):
        if float(np.max(np.abs(arr[t, :]))) <= 1e-12 * scale:
            return x
    return None


def _probe_zero_prime(h: ArithFn, modulus: int) -> int | None:
    """First sampled progression prime where the composite vanishes."""
    primes = primes_in_progression(modulus, ZERO_PROBE_COUNT).primes
    for p in primes:
        v = evaluate(h, p)
        if (v.exact == 0) if h.is_exact else (abs(v.approx) <= 1e-12):
            return p
    return None


def convergence_experiment(
    fs: SequenceT[tuple[ArithFn, int]],
    d: int,
    sequence,
    q: int = 1,
    n_max: int = 50,
    tol: float = DEFAULT_TOL,
    max_sweeps: int = MAX_SWEEPS,
    spectra_cache: MutableMapping | None = None,
) -> ConvergenceReport:
    """Track the q-th smallest eigenvalue along a growing index set.

    fs and d describe the composite f1^(l1)*...*fc^(lc)*mu^(d); the sum
    of the l_i must exceed d.  The full n_max matrix is built once and
    leading principal submatrices are handed to the solver; per-size
    solver failures are recorded in the report without aborting the
    series.  spectra_cache (keyed on function, sequence, n, tol) lets
    callers share solves across runs that differ only in q.
    """
    h = composite(fs, d)
    total_power = sum(l for _, l in fs)
    if total_power <= d:
        raise HypothesisError(
            f"need sum of factor powers > mobius power, got {total_power} <= {d}"
        )
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    if n_max < q:
        raise ValueError(f"n_max must be at least q, got n_max={n_max} < q={q}")

    elements = sequence.take(n_max)
    seq_spec = sequence.spec_text()
    arr = np.empty((n_max, n_max), dtype=np.float64)
    gcd_values: dict[int, float] = {}
    for i, x in enumerate(elements):
        for j in range(i, n_max):
            g = math.gcd(x, elements[j])
            if g not in gcd_values:
                gcd_values[g] = evaluate_approx(h, g)
            arr[i, j] = arr[j, i] = gcd_values[g]

    spectra: dict[int, Spectrum] = {}
    failures: list[tuple[int, str]] = []
    for n in range(1, n_max + 1):
        key = (h, seq_spec, n, tol, max_sweeps)
        if spectra_cache is not None and key in spectra_cache:
            spectra[n] = spectra_cache[key]
            continue
        try:
            spec = eigenvalues_symmetric(arr[:n, :n], tol, max_sweeps)
        except NonConvergenceError as err:
            failures.append((n, str(err)))
            continue
        spectra[n] = spec
        if spectra_cache is not None:
            spectra_cache[key] = spec

    series = tuple(
        (n, spectra[n].smallest(q)) for n in range(q, n_max + 1) if n in spectra
    )
    final_value = series[-1][1] if series else None

    violations: list[tuple[int, float]] = []
    for n in range(1, n_max):
        if n in spectra and n + 1 in spectra:
            ok, worst = interlacing_check(spectra[n], spectra[n + 1])
            if not ok:
                violations.append((n, worst))

    radius = max((s.spectral_radius for s in spectra.values()), default=0.0)
    slack = AUDIT_REL_TOL * radius
    values = [v for _, v in series]
    monotone = all(values[i + 1] <= values[i] + slack for i in range(len(values) - 1))
    diag = np.diag(arr)
    nonnegative = all(
        v >= -AUDIT_REL_TOL * float(np.sum(diag[:n])) for n, v in series
    )

    zero_witness = None
    zero_row = None
    final_within = None
    modulus = sequence.progression_modulus
    if modulus is not None:
        zero_witness = _probe_zero_prime(h, modulus)
    if zero_witness is not None:
        zero_row = _zero_row_element(h, elements, arr)
        if final_value is not None:
            zero_tol = ZERO_REL_TOL * float(np.sum(diag))
            final_within = abs(final_value) <= zero_tol

    annotations: tuple[dict, ...] = ()
    if (
        q == 1
        and isinstance(sequence, ConstantGcdSequence)
        and d == 0
        and len(fs) == 1
        and fs[0][1] == 1
        and n_max >= 2
    ):
        try:
            rep = constant_gcd_eigenvalue_bounds(
                fs[0][0], sequence.constant_gcd, elements, tol
            )
            annotations = ({"n": n_max, **rep.to_json_dict()},)
        except (HypothesisError, NonConvergenceError):
            annotations = ()

    divergence = None
    if (
        isinstance(sequence, ProgressionSequence)
        and len(fs) == 1
        and fs[0][1] == 1
    ):
        divergence = divergence_check(
            fs[0][0], primes_in_progression(sequence.b, n_max)
        )

    return ConvergenceReport(
        fn_text=str(h),
        sequence_spec=seq_spec,
        q=q,
        n_max=n_max,
        tol=tol,
        series=series,
        failures=tuple(failures),
        interlacing_violations=tuple(violations),
        monotone_nonincreasing=monotone,
        nonnegative=nonnegative,
        final_value=final_value,
        zero_regime=zero_witness is not None,
        zero_witness_prime=zero_witness,
        zero_row_element=zero_row,
        final_within_zero_tol=final_within,
        bound_annotations=annotations,
        divergence=divergence,
    )
