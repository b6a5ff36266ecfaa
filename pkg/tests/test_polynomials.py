import math
from fractions import Fraction

import numpy as np
import pytest

from reho import (Polynomial, QuadConfig, exceptional_hermite, hermite, integrate,
                  pseudo_hermite)
from reho.polynomials import _signfree_hermite


def brute_hermite_at(n, x):
    # independent three-term recurrence evaluated numerically
    hm1, h = 1.0, 2.0 * x
    if n == 0:
        return 1.0
    for k in range(1, n):
        hm1, h = h, 2.0 * x * h - 2.0 * k * hm1
    return h


def test_hermite_base_cases():
    assert hermite(0).coeffs == (1,)
    assert hermite(1).coeffs == (0, 2)
    assert hermite(2).coeffs == (-2, 0, 4)


def test_hermite_value_against_brute_recurrence():
    assert hermite(5)(1.0) == pytest.approx(brute_hermite_at(5, 1.0), abs=1e-12)
    assert brute_hermite_at(5, 1.0) == -8.0
    for n in (3, 7, 12):
        for x in (-2.5, 0.3, 1.7):
            assert hermite(n)(x) == pytest.approx(brute_hermite_at(n, x), rel=1e-13)


def test_pseudo_hermite_values():
    assert pseudo_hermite(0).coeffs == (1,)
    assert pseudo_hermite(2).coeffs == (2, 0, 4)
    assert pseudo_hermite(4).coeffs == (12, 0, 48, 0, 16)


@pytest.mark.parametrize("m", [1, 3, 7, -2])
def test_odd_or_negative_codimension_rejected(m):
    with pytest.raises(ValueError):
        pseudo_hermite(m)
    with pytest.raises(ValueError):
        exceptional_hermite(m, 0)


def test_exceptional_hermite_cases():
    # m=2, n=0: (4x^2+2)*2x + 8x = 8x^3 + 12x
    assert exceptional_hermite(2, 0).coeffs == (0, 12, 0, 8)
    for n in range(0, 6):
        assert exceptional_hermite(0, n) == hermite(n + 1)
    assert exceptional_hermite(4, -1).coeffs == (1,)
    with pytest.raises(ValueError):
        exceptional_hermite(2, -2)


@pytest.mark.parametrize("m,n", [(0, 0), (2, 0), (2, 3), (4, 1), (8, 5), (10, 2)])
def test_exceptional_degree_law(m, n):
    assert exceptional_hermite(m, n).degree == m + n + 1


def test_derivative():
    assert pseudo_hermite(2).derivative().coeffs == (0, 8)
    assert Polynomial([1]).derivative().coeffs == ()
    assert pseudo_hermite(4).derivative().coeffs == (0, 96, 0, 64)


def test_eval_matches_exact_rational():
    assert pseudo_hermite(2)(0.0) == 2.0
    assert pseudo_hermite(0)(123.456) == 1.0
    assert pseudo_hermite(4).eval_exact(1) == 76
    assert pseudo_hermite(4)(1.0) == 76.0
    # compensated Horner against exact Horner at awkward points; the
    # attainable error is set by rounding coefficients above 2^53 into
    # floats, i.e. eps times the magnitude sum of the terms
    for n in (10, 20, 30):
        p = hermite(n)
        for x in (0.9371, -2.7182, 3.25):
            exact = float(p.eval_exact(Fraction(x)))
            cond = sum(abs(c) * abs(x) ** k for k, c in enumerate(p.coeffs))
            assert abs(p(x) - exact) <= 1e-15 * cond


@pytest.mark.parametrize("n", range(1, 30))
def test_hermite_recurrence_exact(n):
    lhs = hermite(n + 1)
    rhs = hermite(n).shift_up() * 2 - (2 * n) * hermite(n - 1)
    assert lhs == rhs


@pytest.mark.parametrize("k", range(1, 30))
def test_pseudo_hermite_recurrence_exact(k):
    lhs = _signfree_hermite(k + 1)
    rhs = _signfree_hermite(k).shift_up() * 2 + (2 * k) * _signfree_hermite(k - 1)
    assert lhs == rhs


@pytest.mark.parametrize("m", range(2, 31, 2))
def test_pseudo_hermite_derivative_identity(m):
    assert pseudo_hermite(m).derivative() == (2 * m) * _signfree_hermite(m - 1)


def test_pseudo_hermite_positive_on_real_line():
    rng = np.random.default_rng(0)
    xs = rng.uniform(-50.0, 50.0, size=10_000)
    for m in range(0, 22, 2):
        assert np.all(pseudo_hermite(m)(xs) > 0.0)


@pytest.mark.parametrize("m", [0, 2, 4])
def test_exceptional_system_orthogonality(m):
    # weight exp(-x^2)/P^2; normalized off-diagonal inner products vanish
    p = pseudo_hermite(m)
    cfg = QuadConfig(half_width=10.0)

    def inner(j, k):
        yj = exceptional_hermite(m, j - 1)
        yk = exceptional_hermite(m, k - 1)
        return integrate(lambda x: yj(x) * yk(x) * np.exp(-x * x) / p(x) ** 2, cfg)

    norms = [math.sqrt(inner(j, j)) for j in range(6)]
    for j in range(6):
        for k in range(j + 1, 6):
            assert abs(inner(j, k)) / (norms[j] * norms[k]) < 1e-12


def test_polynomial_immutable_and_hashable():
    p = hermite(4)
    with pytest.raises(AttributeError):
        p.coeffs = (1,)
    assert hash(p) == hash(hermite(4))
    assert p != pseudo_hermite(4)
