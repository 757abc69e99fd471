"""GCD matrices of arithmetical functions: exact determinants, spectra, bounds.

The package is organized as a small pipeline:

- numtheory: factorization, divisors, primes in arithmetic progressions
- arith: Dirichlet-convolution algebra of arithmetical functions
- matrix: gcd matrices over index sets, tensor/Kronecker structure
- spectra: exact determinants, a deterministic Jacobi eigensolver,
  eigenvalue bounds
- experiments: convergence series along growing index sets, divergence
  evidence at progression primes
- cli: command-line front end (eval, det, spectrum, bounds, converge, verify)
"""

from .arith import (
    DELTA,
    IDENTITY,
    MU,
    PHI,
    ZETA,
    ArithFn,
    ClassVerdict,
    FnValue,
    class_membership,
    composite,
    convolution_power,
    convolve,
    custom_fn,
    evaluate,
    evaluate_approx,
    jordan,
    psi,
    sigma,
    split_mobius,
    value_at_prime,
    xi,
)
from .errors import DiagonalGcdMatrix, HypothesisError, NonConvergenceError
from .experiments import (
    ConvergenceReport,
    DivergenceEvidence,
    convergence_experiment,
    divergence_check,
)
from .matrix import (
    GcdMatrix,
    IndexSet,
    OneRankPlusDiag,
    as_one_rank_plus_diag,
    build_composite_matrix,
    build_gcd_matrix,
    kronecker,
    tensor_product_set,
)
from .numtheory import (
    Factorization,
    ProgressionPrimes,
    SieveExhausted,
    divisors,
    factorize,
    gcd,
    is_prime,
    primes_in_progression,
)
from .sequences import (
    ConstantGcdSequence,
    ListSequence,
    ProgressionSequence,
    RangeSequence,
    parse_sequence,
)
from .spectra import (
    BoundReport,
    Spectrum,
    constant_gcd_eigenvalue_bounds,
    det_en_plus_diag,
    determinant_exact,
    determinant_sandwich_bounds,
    eigenvalues_symmetric,
    fresh_divisor_lower_bound,
    interlacing_check,
    rank_one_update_bounds,
    smith_determinant,
)
from .syntax import FnSyntaxError, parse_fn, print_fn

__version__ = "0.1.0"
