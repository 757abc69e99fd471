"""Jacobi eigensolver: pins, invariants, and the LAPACK cross-oracle."""

import math
import random
from fractions import Fraction

import numpy as np
import pytest

from gcdspectra import _jacobi
from gcdspectra.arith import IDENTITY, PHI, sigma
from gcdspectra.errors import NonConvergenceError
from gcdspectra.matrix import build_gcd_matrix, kronecker
from gcdspectra.spectra import Spectrum, determinant_exact, eigenvalues_symmetric


def charpoly_root_oracle(lo: float, hi: float) -> float:
    """Bisection root of x^3 - 7x^2 + 11x - 3, the characteristic
    polynomial of the totient gcd matrix on {2,3,5}."""

    def p(x: float) -> float:
        return ((x - 7.0) * x + 11.0) * x - 3.0

    assert p(lo) * p(hi) < 0
    for _ in range(200):
        mid = (lo + hi) / 2.0
        if p(lo) * p(mid) <= 0:
            hi = mid
        else:
            lo = mid
    return (lo + hi) / 2.0


def random_symmetric(rng: random.Random, n: int):
    raw = [[rng.uniform(-3.0, 3.0) for _ in range(n)] for _ in range(n)]
    return [[(raw[i][j] + raw[j][i]) / 2.0 for j in range(n)] for i in range(n)]


def test_all_ones_2x2():
    spec = eigenvalues_symmetric([[1, 1], [1, 1]])
    assert spec.eigenvalues == (0.0, 2.0)
    assert spec.residual == 0.0


def test_diagonal_matrix_sorted():
    spec = eigenvalues_symmetric([[4, 0, 0], [0, -1, 0], [0, 0, 2]])
    assert spec.eigenvalues == (-1.0, 2.0, 4.0)
    assert spec.sweeps == 0


def test_single_entry_and_zero_matrix():
    assert eigenvalues_symmetric([[5.0]]).eigenvalues == (5.0,)
    assert eigenvalues_symmetric([[0, 0], [0, 0]]).eigenvalues == (0.0, 0.0)


def test_totient_3x3_pinned_root():
    M = build_gcd_matrix(PHI, [2, 3, 5])
    assert [[v.exact for v in row] for row in M.values] == [
        [1, 1, 1],
        [1, 2, 1],
        [1, 1, 4],
    ]
    root = charpoly_root_oracle(0.3, 0.4)
    spec = eigenvalues_symmetric(M)
    assert abs(spec.smallest(1) - root) <= 1e-10
    assert 0.0 < spec.smallest(1) < 3.0 / 7.0


def test_matches_lapack_oracle():
    rng = random.Random(1105)
    for _ in range(30):
        n = rng.randint(2, 10)
        sym = random_symmetric(rng, n)
        spec = eigenvalues_symmetric(sym)
        want = np.linalg.eigvalsh(np.array(sym, dtype=np.float64))
        scale = max(1.0, float(np.max(np.abs(want))))
        assert max(abs(a - b) for a, b in zip(spec.eigenvalues, want)) <= 1e-9 * scale


def test_trace_and_determinant_invariants():
    rng = random.Random(2)
    for _ in range(20):
        n = rng.randint(2, 8)
        sym = random_symmetric(rng, n)
        spec = eigenvalues_symmetric(sym)
        trace = sum(sym[i][i] for i in range(n))
        assert abs(sum(spec.eigenvalues) - trace) <= 1e-9 * max(1.0, abs(trace))
    # eigenvalue product vs the exact determinant on exact matrices
    for f, elements in [
        (IDENTITY, range(1, 7)),
        (sigma(1), range(1, 6)),
        (PHI, [2, 3, 5]),
    ]:
        M = build_gcd_matrix(f, elements)
        det = determinant_exact(M)
        spec = eigenvalues_symmetric(M)
        prod = math.prod(spec.eigenvalues)
        assert abs(prod - det) <= 1e-7 * max(1.0, abs(float(det)))


def test_spectrum_accessors():
    spec = eigenvalues_symmetric([[1, 1], [1, 2]])
    assert spec.n == 2
    assert spec.smallest(1) == spec.eigenvalues[0]
    assert spec.smallest(2) == spec.eigenvalues[1]
    assert spec.spectral_radius == max(abs(v) for v in spec.eigenvalues)
    with pytest.raises(ValueError):
        spec.smallest(0)
    with pytest.raises(ValueError):
        spec.smallest(3)


def test_nonconvergence_reported():
    with pytest.raises(NonConvergenceError) as info:
        eigenvalues_symmetric([[1, 1], [1, 1]], max_sweeps=0)
    assert info.value.sweeps == 0
    assert info.value.residual > 0


def test_kronecker_spectrum_is_pairwise_products():
    rng = random.Random(33)
    for _ in range(10):
        q, r = rng.randint(2, 3), rng.randint(2, 4)
        CA = np.array([[rng.uniform(-1, 1) for _ in range(q)] for _ in range(q)])
        CB = np.array([[rng.uniform(-1, 1) for _ in range(r)] for _ in range(r)])
        A = CA.T @ CA  # PSD keeps the pairwise products unambiguous
        B = CB.T @ CB
        K = kronecker(A, B)
        got = eigenvalues_symmetric(K).eigenvalues
        ea = eigenvalues_symmetric(A.tolist()).eigenvalues
        eb = eigenvalues_symmetric(B.tolist()).eigenvalues
        want = sorted(x * y for x in ea for y in eb)
        scale = max(1.0, abs(want[-1]))
        assert max(abs(a - b) for a, b in zip(got, want)) <= 1e-7 * scale


def test_symmetry_rejected():
    with pytest.raises(ValueError):
        eigenvalues_symmetric([[1.0, 2.0], [2.1, 1.0]])
    with pytest.raises(ValueError):
        eigenvalues_symmetric([[1, Fraction(1, 2)], [Fraction(1, 3), 1]])
    with pytest.raises(ValueError):
        eigenvalues_symmetric([[1, 2, 3], [4, 5, 6]])


def test_gcd_matrix_accepted_directly():
    spec = eigenvalues_symmetric(build_gcd_matrix(sigma(1), [1, 2, 3]))
    assert isinstance(spec, Spectrum)
    assert len(spec.eigenvalues) == 3


def test_pure_python_kernel_matches_compiled():
    rng = random.Random(7)
    sym = np.array(random_symmetric(rng, 6), dtype=np.float64)
    fro = float(np.linalg.norm(sym))
    a1 = sym.copy()
    a2 = sym.copy()
    off1, sweeps1 = _jacobi._sweep_kernel(a1, 1e-12 * fro, 60)
    off2, sweeps2 = _jacobi._kernel(a2, 1e-12 * fro, 60)
    assert sweeps1 == sweeps2
    assert abs(off1 - off2) <= 1e-15 * fro
    d1 = sorted(float(a1[i, i]) for i in range(6))
    d2 = sorted(float(a2[i, i]) for i in range(6))
    assert max(abs(x - y) for x, y in zip(d1, d2)) <= 1e-12 * fro
