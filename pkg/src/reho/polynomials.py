"""Exact integer-coefficient polynomials: Hermite, pseudo-Hermite and the
exceptional (codimension-m) Hermite family.

All construction is done over arbitrary-precision Python integers so that
high-degree members (m of order 50 and beyond) are represented without
rounding.  Floating-point evaluation uses a compensated Horner scheme;
an exact rational evaluation is provided for use as a test oracle.
"""

from __future__ import annotations

import numbers
from fractions import Fraction
from functools import lru_cache

import numpy as np

__all__ = [
    "Polynomial",
    "hermite",
    "pseudo_hermite",
    "exceptional_hermite",
]

_SPLIT = 134217729.0  # 2**27 + 1, Veltkamp splitting constant


def _two_sum(a, b):
    s = a + b
    t = s - a
    return s, (a - (s - t)) + (b - t)


def _two_prod(a, b):
    # Dekker product; exact as long as no intermediate overflows.
    p = a * b
    aa = _SPLIT * a
    a_hi = aa - (aa - a)
    a_lo = a - a_hi
    bb = _SPLIT * b
    b_hi = bb - (bb - b)
    b_lo = b - b_hi
    err = ((a_hi * b_hi - p) + a_hi * b_lo + a_lo * b_hi) + a_lo * b_lo
    return p, err


class Polynomial:
    """Immutable univariate polynomial with exact integer coefficients.

    Coefficients are stored in ascending degree order with no trailing
    zeros; the zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "Polynomial([0])"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(f"{c}")
            elif k == 1:
                terms.append(f"{c}*x")
            else:
                terms.append(f"{c}*x^{k}")
        return "Polynomial(" + " + ".join(terms).replace("+ -", "- ") + ")"

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Polynomial(
            [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
        )

    def __sub__(self, other):
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Polynomial(
            [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
        )

    def __mul__(self, other):
        if isinstance(other, numbers.Integral):
            return Polynomial([int(other) * c for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return Polynomial([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def derivative(self) -> "Polynomial":
        """Exact formal derivative."""
        return Polynomial([k * c for k, c in enumerate(self.coeffs)][1:])

    def shift_up(self, k: int = 1) -> "Polynomial":
        """Multiply by x**k (exact)."""
        return Polynomial([0] * k + list(self.coeffs))

    def __call__(self, x):
        """Evaluate in floating point with a compensated Horner scheme.

        Accepts scalars or ndarrays; the compensation term recovers the
        rounding committed at each Horner step, which matters for the
        sign-alternating Hermite coefficients near their real zeros.
        """
        if not self.coeffs:
            return np.zeros_like(np.asarray(x, dtype=float)) if np.ndim(x) else 0.0
        xs = np.asarray(x, dtype=float)
        r = np.full_like(xs, float(self.coeffs[-1]))
        e = np.zeros_like(xs)
        for c in self.coeffs[-2::-1]:
            p, pe = _two_prod(r, xs)
            r, se = _two_sum(p, float(c))
            e = e * xs + (pe + se)
        out = r + e
        return out if np.ndim(x) else float(out)

    def eval_exact(self, x):
        """Evaluate exactly over the rationals (oracle path)."""
        acc = Fraction(0)
        xf = Fraction(x)
        for c in reversed(self.coeffs):
            acc = acc * xf + c
        return acc


@lru_cache(maxsize=None)
def hermite(n: int) -> Polynomial:
    """Physicists' Hermite polynomial H_n via H_{k+1} = 2x H_k - 2k H_{k-1}."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if n == 0:
        return Polynomial([1])
    if n == 1:
        return Polynomial([0, 2])
    prev, cur = hermite(n - 2), hermite(n - 1)
    return cur.shift_up() * 2 - (2 * (n - 1)) * prev


@lru_cache(maxsize=None)
def _signfree_hermite(k: int) -> Polynomial:
    # Same recurrence as hermite() but with +2k: all coefficients positive.
    if k == 0:
        return Polynomial([1])
    if k == 1:
        return Polynomial([0, 2])
    return _signfree_hermite(k - 1).shift_up() * 2 + (2 * (k - 1)) * _signfree_hermite(k - 2)


def pseudo_hermite(m: int) -> Polynomial:
    """Hermite polynomial continued to imaginary argument, sign-fixed to be
    positive on the whole real line.

    Built by the recurrence with the flipped sign, so every even-degree
    coefficient is strictly positive and the polynomial is nodeless.  Odd m
    is rejected: those members vanish at the origin and produce a singular
    rational extension.
    """
    _require_even(m)
    return _signfree_hermite(m)


def exceptional_hermite(m: int, n: int) -> Polynomial:
    """Codimension-m exceptional Hermite polynomial of excitation index n.

    Degree is m + n + 1 for n >= 0.  The convention n = -1 designates the
    ground state, for which the polynomial is the constant 1.
    """
    _require_even(m)
    if n < -1:
        raise ValueError(f"n must be >= -1, got {n}")
    if n == -1:
        return Polynomial([1])
    pm = pseudo_hermite(m)
    return pm * hermite(n + 1) + pm.derivative() * hermite(n)


def _require_even(m: int) -> None:
    if m < 0 or m % 2 != 0:
        raise ValueError(
            f"codimension m must be an even nonnegative integer, got {m}"
        )
