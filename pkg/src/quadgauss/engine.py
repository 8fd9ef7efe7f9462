"""Evaluation of extended quadratic Gauss sums.

gauss_naive sums G_p(j;k;theta) = sum_{n=1}^{kp} e^(2*pi*i*j*n^2/k + 2*pi*i*theta*n)
term by term.  gauss_fast evaluates the length-k family

    S(j,k,m) = sum_{n=0}^{k-1} e^(i*pi*(j*n^2 + n*m)/k)

in O(log k) steps by repeated application of the reciprocity relation

    S(j,k,m) = sqrt(k/j) * e^(i*pi*(jk - m^2)/(4jk)) * conj(S(k,j,m)),

valid when jk + m is even, interleaved with the exact index reductions

    j -> j mod 2k,   m -> m mod 2k,   (j,m) -> (j-k, m+k),

all of which preserve jk + m mod 2.  The descent therefore never leaves the
even-parity family; magnitudes and phases of the front factors accumulate
exactly (a rational under one square root, plus a rational multiple of pi)
and are converted to floating point once, at the end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf

from .exact import (ClosedFormValue, GaussianRational, HighPrecComplex,
                    RationalAngle, _bump, surd_normalize)
from .sums import Kind, RangeTooLargeError, direct_sum, spec

_FAST_BASE_TERMS = 8


class ParityError(ValueError):
    """jk + m is odd: outside the reciprocity-transformable family."""


class ReductionDepthError(RuntimeError):
    """Descent did not reach a base case; indicates an internal bug."""


@dataclass(frozen=True)
class ExtendedGaussParams:
    j: int
    k: int
    p: int = 1
    theta: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        if self.j < 1 or self.k < 1 or self.p < 0:
            raise ValueError("j, k must be positive and p non-negative")
        object.__setattr__(self, "theta", Fraction(self.theta))


@dataclass(frozen=True)
class QuadExpSum:
    """The sum S(j,k,m) = sum_{n=0}^{k-1} e^(i*pi*(j*n^2 + n*m)/k)."""

    j: int
    k: int
    m: int = 0

    def __post_init__(self) -> None:
        if self.j < 1 or self.k < 1:
            raise ValueError("j and k must be positive")

    def parity_ok(self) -> bool:
        return (self.j * self.k + self.m) % 2 == 0

    def to_spec(self):
        return spec(Kind.CEXP, 0, self.k - 1, self.j, beta=self.m, delta=self.k)


def gauss_params_spec(params: ExtendedGaussParams):
    """G_p(j;k;theta) as a SumSpec (argument 2*pi*j*n^2/k = pi*(2j)*n^2/k)."""
    return spec(Kind.CEXP, 1, params.k * params.p, 2 * params.j,
                delta=params.k, theta=params.theta)


def gauss_naive(params: ExtendedGaussParams,
                precision_bits: int = 128) -> HighPrecComplex:
    """Direct summation of G_p(j;k;theta) with a rigorous error radius."""
    if params.k * params.p > 10 ** 8:
        raise RangeTooLargeError("kp exceeds the naive summation cap")
    return direct_sum(gauss_params_spec(params), precision_bits)


def quad_exp_naive(q: QuadExpSum, precision_bits: int = 128) -> HighPrecComplex:
    """Direct summation of S(j,k,m); the oracle for gauss_fast."""
    return direct_sum(q.to_spec(), precision_bits)


def ls_transform(q: QuadExpSum) -> tuple[ClosedFormValue, QuadExpSum]:
    """One reciprocity step: value(q) = factor * conj(value(transformed)).

    The factor sqrt(k/j)*e^(i*pi*(jk-m^2)/(4jk)) is returned exactly as a
    closed-form value; raises ParityError when jk + m is odd.
    """
    if not q.parity_ok():
        raise ParityError(f"jk + m = {q.j * q.k + q.m} is odd")
    factor = ClosedFormValue(
        surd_normalize(q.j * q.k, GaussianRational.of(Fraction(1, q.j))),
        RationalAngle(q.j * q.k - q.m * q.m, 4 * q.j * q.k),
    )
    return factor, QuadExpSum(q.k, q.j, q.m)


def _reduce_indices(a: int, c: int, b: int) -> tuple[int, int]:
    """Exact rewrites of S(a,c,b): a mod 2c, b mod 2c, then the fold
    (a,b) -> (a-c, b+c) to bring a into [0, c)."""
    a %= 2 * c
    b %= 2 * c
    if a >= c:
        a -= c
        b = (b + c) % (2 * c)
    return a, b


def gauss_fast(q: QuadExpSum, precision_bits: int = 128) -> HighPrecComplex:
    """Reciprocity-descent evaluation of S(j,k,m), O(log k) steps.

    Requires jk + m even whenever a reciprocity step is needed (sums short
    enough for direct evaluation carry no parity restriction).  Front
    factors accumulate as an exact squared magnitude (a positive rational)
    and an exact phase (rational multiple of pi, sign-flipped under each
    conjugation); the single floating conversion happens at the end.
    """
    a, c, b = q.j, q.k, q.m
    mag2 = Fraction(1)
    phase = Fraction(0)
    depth = 0
    max_depth = 4 * max(q.k, q.j).bit_length() + 32
    base_terms: int
    geometric = False
    while True:
        a, b = _reduce_indices(a, c, b)
        if a == 0:
            geometric = True
            base_terms = 0
            break
        if c <= _FAST_BASE_TERMS:
            base_terms = c
            break
        if (a * c + b) % 2:
            raise ParityError(
                f"parity dead-end: jk + m = {a * c + b} odd at depth {depth}")
        mag2 *= Fraction(c, a)
        step_phase = Fraction(a * c - b * b, 4 * a * c) % 2
        phase += step_phase if depth % 2 == 0 else -step_phase
        a, c = c, a
        depth += 1
        if depth > max_depth:
            raise ReductionDepthError("reciprocity descent failed to terminate")
    work = precision_bits + 32 + depth
    with mp.workprec(work):
        if geometric:
            # sum_{n=0}^{c-1} e^(i*pi*b*n/c)
            if b % 2 == 0:
                base = mp.mpc(c if (b // 2) % c == 0 else 0, 0)
            else:
                base = 2 / (1 - mp.expjpi(mpf(b) / c))
        else:
            base = mp.mpc(0)
            for n in range(c):
                base += mp.expjpi(mpf((a * n * n + b * n) % (2 * c)) / c)
        if depth % 2 == 1:
            base = mp.conj(base)
        front = mp.sqrt(mpf(mag2.numerator) / mag2.denominator)
        front_ph = mp.expjpi(mpf((phase % 2).numerator) / (phase % 2).denominator)
        value = front * front_ph * base
        mag = float(abs(value))
    err = (mag + 1.0 + base_terms) * math.ldexp(1.0, -precision_bits - 8)
    return HighPrecComplex(value.real, value.imag, _bump(err))


def classical_gauss_quad(j: int, k: int) -> QuadExpSum:
    """G_1(j;k;0) as a QuadExpSum: sum_{n=0}^{k-1} e^(i*pi*(2j)n^2/k).

    (The n = k term of the 1..k sum equals the n = 0 term.)  The parity
    condition 2jk + 0 is always even, so this family is always fast-able.
    """
    return QuadExpSum(2 * j, k, 0)
