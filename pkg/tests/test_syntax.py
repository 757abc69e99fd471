"""Round-trip and error-position checks for the textual function syntax."""

import random

import pytest

from gcdspectra.arith import (
    DELTA,
    IDENTITY,
    MU,
    PHI,
    ZETA,
    composite,
    convolution_power,
    convolve,
    custom_fn,
    evaluate,
    jordan,
    psi,
    sigma,
    xi,
)
from gcdspectra.syntax import FnSyntaxError, parse_fn, print_fn


def test_atoms_round_trip():
    for text, fn in [
        ("delta", DELTA),
        ("mu", MU),
        ("zeta", ZETA),
        ("I", IDENTITY),
        ("phi", PHI),
        ("xi{2}", xi(2)),
        ("xi{-1}", xi(-1)),
        ("J{3}", jordan(3)),
        ("sigma{1}", sigma(1)),
        ("psi{0}", psi(0)),
    ]:
        assert parse_fn(text) == fn
        assert parse_fn(print_fn(fn)) == fn


def test_parse_examples():
    f = parse_fn("conv(phi^1, mu^2)")
    assert f == composite([(PHI, 1)], 2)
    assert evaluate(f, 2).exact == -1
    assert parse_fn("conv(xi{1}^1, zeta^1)") == convolve(xi(1), ZETA)
    assert parse_fn("phi^2") == convolution_power(PHI, 2)
    assert parse_fn("conv(phi^2)") == convolution_power(PHI, 2)
    assert parse_fn(" conv( sigma{2}^1 , mu^1 ) ") == composite([(sigma(2), 1)], 1)


def test_parse_float_parameters():
    f = parse_fn("xi{0.5}")
    assert f == xi(0.5)
    assert not f.is_exact
    assert parse_fn("xi{2.0}") == xi(2)  # integral floats collapse to ints
    assert parse_fn("xi{1e-3}") == xi(0.001)


def test_degenerate_exponents():
    assert parse_fn("mu^0") == DELTA
    assert parse_fn("conv(phi^1, mu^0)") == PHI
    assert parse_fn("delta^5") == DELTA


def test_round_trip_random_composites():
    rng = random.Random(17)
    pool = [MU, ZETA, IDENTITY, PHI, xi(1), xi(-2), jordan(2), sigma(1), psi(3), xi(0.5)]
    for _ in range(200):
        c = rng.randrange(1, 4)
        fs = [(rng.choice(pool), rng.randrange(1, 4)) for _ in range(c)]
        d = rng.randrange(0, 3)
        f = composite(fs, d)
        assert parse_fn(print_fn(f)) == f
        assert str(f) == print_fn(f)


def test_print_custom_is_not_parseable():
    tweak = custom_fn("tweak", lambda m: m)
    assert print_fn(tweak) == "custom:tweak"
    with pytest.raises(FnSyntaxError):
        parse_fn("custom:tweak")


@pytest.mark.parametrize(
    "text",
    [
        "nope",
        "xi",
        "xi{}",
        "xi{a}",
        "phi{2}",
        "conv()",
        "conv(phi^1",
        "conv(phi^1,)",
        "phi^-1",
        "phi^1.5",
        "conv(conv(phi^1)^1, mu^1)",
        "phi phi",
        "xi{2",
        "$",
    ],
)
def test_parse_errors_carry_positions(text):
    with pytest.raises(FnSyntaxError) as info:
        parse_fn(text)
    assert info.value.pos >= 0
    assert "position" in str(info.value)


def test_error_position_points_at_offender():
    with pytest.raises(FnSyntaxError) as info:
        parse_fn("conv(phi^1, wat^2)")
    assert info.value.pos == 12
