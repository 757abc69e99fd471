"""Shared exception types.

HypothesisError marks violated preconditions of a bound or identity
(the CLI maps it to exit code 3).  DiagonalGcdMatrix is a signal, not a
failure: a matrix
whose common off-diagonal value is 0 is plain diagonal and the rank-one
decomposition does not apply."""

from __future__ import annotations


class HypothesisError(ValueError):
    """A stated precondition of a bound or identity does not hold."""


class DiagonalGcdMatrix(Exception):
    """Raised by the rank-one decomposition when f(x) = 0; carries the diagonal."""

    def __init__(self, diagonal):
        self.diagonal = tuple(diagonal)
        super().__init__(f"matrix is diagonal, diag={self.diagonal}")


class NonConvergenceError(RuntimeError):
    """The Jacobi solver hit its sweep cap above tolerance."""

    def __init__(self, residual: float, sweeps: int):
        self.residual = residual
        self.sweeps = sweeps
        super().__init__(
            f"Jacobi did not converge: relative off-diagonal residual {residual:.3e} "
            f"after {sweeps} sweeps"
        )
