"""Uniform model for finite trigonometric/exponential sums with quadratic
arguments, plus the evaluation oracles.

A SumSpec describes

    sum over n = lower..upper of  s^n * f( pi*(alpha*n^2 + beta*n + gamma)/delta
                                           + 2*pi*theta*n )

with f one of sin, cos, cexp (cexp(x) = e^(ix)) and s^n the optional (-1)^n
factor.  Three independent evaluation routes are provided:

* direct_sum       -- term-by-term high-precision summation with a tracked
                      error radius,
* cyclotomic_sum   -- the exact image of the sum in the group ring of N-th
                      roots of unity (N = 2*delta*theta_den), enabling
                      certified exact zero/rational tests,
* period_reduce    -- rewriting of a pure quadratic sum as
                      multiplier * (one-period base) + residual, exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from mpmath import mp, mpf

from .exact import GaussianRational, HighPrecComplex, _bump, hpc_zero

DIRECT_SUM_CAP = 10 ** 8
CYCLOTOMIC_TERM_CAP = 10 ** 6
CYCLOTOMIC_ORDER_CAP = 10 ** 5


class RangeTooLargeError(ValueError):
    """Term count exceeds the direct-summation cap."""


class OrderTooLargeError(ValueError):
    """Root-of-unity order exceeds the group-ring cap."""


class UnsupportedShapeError(ValueError):
    """Operation requires a pure quadratic sum (beta = gamma = theta = 0)."""


class Kind(str, Enum):
    SIN = "sin"
    COS = "cos"
    CEXP = "cexp"


@dataclass(frozen=True)
class QuadraticArg:
    """Argument pi*(alpha*n^2 + beta*n + gamma)/delta + 2*pi*theta*n."""

    alpha: int
    beta: int = 0
    gamma: int = 0
    delta: int = 1
    theta: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        if self.delta <= 0:
            raise ValueError("delta must be positive")
        object.__setattr__(self, "theta", Fraction(self.theta))

    def pi_multiple(self, n: int) -> Fraction:
        """The argument at index n as an exact multiple of pi."""
        return (
            Fraction(self.alpha * n * n + self.beta * n + self.gamma, self.delta)
            + 2 * self.theta * n
        )


@dataclass(frozen=True)
class SumSpec:
    kind: Kind
    alternating: bool
    lower: int
    upper: int
    arg: QuadraticArg

    def term_count(self) -> int:
        return max(0, self.upper - self.lower + 1)

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "alternating": self.alternating,
            "lower": self.lower,
            "upper": self.upper,
            "alpha": self.arg.alpha,
            "beta": self.arg.beta,
            "gamma": self.arg.gamma,
            "delta": self.arg.delta,
            "theta": [self.arg.theta.numerator, self.arg.theta.denominator],
        }

    @staticmethod
    def from_json(obj: dict) -> "SumSpec":
        theta = obj.get("theta", [0, 1])
        return SumSpec(
            Kind(obj["kind"]),
            bool(obj.get("alternating", False)),
            int(obj["lower"]),
            int(obj["upper"]),
            QuadraticArg(
                int(obj["alpha"]),
                int(obj.get("beta", 0)),
                int(obj.get("gamma", 0)),
                int(obj.get("delta", 1)),
                Fraction(int(theta[0]), int(theta[1])),
            ),
        )


def spec(kind: Kind, lower: int, upper: int, alpha: int, beta: int = 0,
         gamma: int = 0, delta: int = 1, theta: Fraction = Fraction(0),
         alternating: bool = False) -> SumSpec:
    return SumSpec(kind, alternating, lower, upper,
                   QuadraticArg(alpha, beta, gamma, delta, theta))


def negated(s: SumSpec) -> SumSpec:
    """The spec whose value is -value(s): shift the argument by pi."""
    a = s.arg
    return SumSpec(s.kind, s.alternating, s.lower, s.upper,
                   QuadraticArg(a.alpha, a.beta, a.gamma + a.delta, a.delta, a.theta))


def conjugated(s: SumSpec) -> SumSpec:
    """The spec with negated argument (complex conjugate for CEXP)."""
    a = s.arg
    return SumSpec(s.kind, s.alternating, s.lower, s.upper,
                   QuadraticArg(-a.alpha, -a.beta, -a.gamma, a.delta, -a.theta))


# ---------------------------------------------------------------------------
# Oracle 1: direct high-precision summation


def direct_sum(s: SumSpec, precision_bits: int = 128) -> HighPrecComplex:
    """Sum the terms at working precision comfortably above precision_bits.

    The error radius is at most count * 2^(-precision_bits+6); SIN and COS
    sums return an exactly-zero imaginary part.  The per-term argument is
    reduced modulo 2*pi exactly (as a rational multiple of pi) before any
    floating evaluation, so large indices lose no accuracy.
    """
    count = s.term_count()
    if count > DIRECT_SUM_CAP:
        raise RangeTooLargeError(f"{count} terms exceed cap {DIRECT_SUM_CAP}")
    if count == 0:
        return hpc_zero()
    a = s.arg
    tden = a.theta.denominator
    # argument(n) = pi * u_n / M with u_n integer
    big_a = a.alpha * tden
    big_b = a.beta * tden + 2 * a.theta.numerator * a.delta
    big_c = a.gamma * tden
    m_den = a.delta * tden
    two_m = 2 * m_den
    work = precision_bits + 16 + count.bit_length()
    with mp.workprec(work):
        total_re = mpf(0)
        total_im = mpf(0)
        for n in range(s.lower, s.upper + 1):
            u = (big_a * n * n + big_b * n + big_c) % two_m
            x = mpf(u) / m_den
            if s.kind is Kind.SIN:
                t = mp.sinpi(x)
                if s.alternating and n & 1:
                    t = -t
                total_re += t
            elif s.kind is Kind.COS:
                t = mp.cospi(x)
                if s.alternating and n & 1:
                    t = -t
                total_re += t
            else:
                c, sn = mp.cos_sin(mp.pi * x)
                if s.alternating and n & 1:
                    c, sn = -c, -sn
                total_re += c
                total_im += sn
    err = math.ldexp(float(count), -precision_bits + 2)
    if s.kind is Kind.CEXP:
        return HighPrecComplex(total_re, total_im, _bump(err))
    return HighPrecComplex(total_re, mpf(0), _bump(err))


# ---------------------------------------------------------------------------
# Oracle 2: exact group-ring summation


def _euler_phi(n: int) -> int:
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            pk = 1
            while m % p == 0:
                m //= p
                pk *= p
            result *= pk - pk // p
        p += 1 if p == 2 else 2
    if m > 1:
        result *= m - 1
    return result


@dataclass
class CyclotomicElement:
    """sum of coeffs[r] * zeta^r with zeta = e^(2*pi*i/order).

    The representation lives in the group ring modulo x^order - 1; it is
    deliberately not reduced modulo the cyclotomic polynomial.  Zero testing
    of the embedded value is certified: a nonzero algebraic integer with all
    conjugates bounded by S has absolute value at least S^-(phi(N)-1), so a
    sufficiently precise evaluation decides exactly.
    """

    order: int
    coeffs: list

    @staticmethod
    def zero(order: int) -> "CyclotomicElement":
        return CyclotomicElement(order, [Fraction(0)] * order)

    @staticmethod
    def constant(order: int, value: Fraction) -> "CyclotomicElement":
        el = CyclotomicElement.zero(order)
        el.coeffs[0] = Fraction(value)
        return el

    def copy(self) -> "CyclotomicElement":
        return CyclotomicElement(self.order, list(self.coeffs))

    def __add__(self, other: "CyclotomicElement") -> "CyclotomicElement":
        a, b = _common_order(self, other)
        return CyclotomicElement(
            a.order, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    def __sub__(self, other: "CyclotomicElement") -> "CyclotomicElement":
        a, b = _common_order(self, other)
        return CyclotomicElement(
            a.order, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __neg__(self) -> "CyclotomicElement":
        return CyclotomicElement(self.order, [-x for x in self.coeffs])

    def scaled(self, q: Fraction) -> "CyclotomicElement":
        q = Fraction(q)
        return CyclotomicElement(self.order, [x * q for x in self.coeffs])

    def conjugate(self) -> "CyclotomicElement":
        out = [self.coeffs[0]] + [self.coeffs[self.order - r]
                                  for r in range(1, self.order)]
        return CyclotomicElement(self.order, out)

    def rotated(self, shift: int) -> "CyclotomicElement":
        """Multiply by zeta^shift."""
        shift %= self.order
        out = [Fraction(0)] * self.order
        for r, c in enumerate(self.coeffs):
            if c:
                out[(r + shift) % self.order] += c
        return CyclotomicElement(self.order, out)

    def promoted(self, new_order: int) -> "CyclotomicElement":
        if new_order % self.order:
            raise ValueError("new order must be a multiple of the old one")
        f = new_order // self.order
        out = [Fraction(0)] * new_order
        for r, c in enumerate(self.coeffs):
            if c:
                out[r * f] += c
        return CyclotomicElement(new_order, out)

    def embedding(self, precision_bits: int = 128) -> HighPrecComplex:
        """Evaluate at zeta = e^(2*pi*i/order) with a rigorous error radius."""
        nnz = 0
        abs_sum = Fraction(0)
        with mp.workprec(precision_bits):
            re = mpf(0)
            im = mpf(0)
            for r, c in enumerate(self.coeffs):
                if not c:
                    continue
                nnz += 1
                abs_sum += abs(Fraction(c))
                cval = mpf(Fraction(c).numerator) / Fraction(c).denominator
                z = mp.expjpi(mpf(2 * r) / self.order)
                re += cval * z.real
                im += cval * z.imag
        if nnz == 0:
            return hpc_zero()
        err = float(abs_sum) * (nnz + 8) * math.ldexp(1.0, -precision_bits + 2)
        return HighPrecComplex(re, im, _bump(err))

    def _folded(self) -> "CyclotomicElement":
        """Reduce with zeta^(order/2) = -1 when the order is even."""
        if self.order % 2:
            return self
        half = self.order // 2
        out = [Fraction(0)] * self.order
        for r, c in enumerate(self.coeffs):
            if not c:
                continue
            if r >= half:
                out[r - half] -= c
            else:
                out[r] += c
        return CyclotomicElement(self.order, out)

    def is_zero(self) -> bool:
        """Certified exact zero test of the embedded value."""
        work = self._folded()
        if all(c == 0 for c in work.coeffs):
            return True
        den = 1
        for c in work.coeffs:
            if c:
                den = den * Fraction(c).denominator // math.gcd(
                    den, Fraction(c).denominator)
        ints = [int(Fraction(c) * den) for c in work.coeffs]
        s_bound = sum(abs(v) for v in ints)
        if s_bound == 0:
            return True
        phi = _euler_phi(work.order)
        sbits = max(1, s_bound.bit_length())
        prec = (phi - 1) * sbits + sbits + work.order.bit_length() + 48
        if prec > 6_000_000:
            raise OrderTooLargeError("zero-test precision requirement too large")
        scaled = CyclotomicElement(work.order, ints)
        v = scaled.embedding(prec)
        with mp.workprec(prec):
            mag = mp.hypot(v.re, v.im)
            threshold = mpf(1) / mpf(s_bound) ** (phi - 1)
            return bool(mag < threshold / 2)

    def coeff_equal(self, other: "CyclotomicElement") -> bool:
        """Exact equality after the zeta^(N/2) = -1 fold (sound and cheap;
        unlike is_zero it cannot certify cancellations beyond that relation)."""
        a, b = _common_order(self, other)
        return all(Fraction(x) == Fraction(y)
                   for x, y in zip(a._folded().coeffs, b._folded().coeffs))


def _common_order(a: CyclotomicElement,
                  b: CyclotomicElement) -> tuple[CyclotomicElement, CyclotomicElement]:
    if a.order == b.order:
        return a, b
    n = math.lcm(a.order, b.order)
    if n > CYCLOTOMIC_ORDER_CAP * 4:
        raise OrderTooLargeError(f"combined order {n} too large")
    return a.promoted(n), b.promoted(n)


def cyclotomic_sum(s: SumSpec) -> CyclotomicElement:
    """Exact image of the sum in the group ring of N-th roots of unity.

    For CEXP the embedded value is the sum itself; for SIN/COS the sum is
    the imaginary/real part of the embedding.
    """
    count = s.term_count()
    if count > CYCLOTOMIC_TERM_CAP:
        raise RangeTooLargeError(f"{count} terms exceed cap {CYCLOTOMIC_TERM_CAP}")
    a = s.arg
    tden = a.theta.denominator
    order = 2 * a.delta * tden
    if order > CYCLOTOMIC_ORDER_CAP:
        raise OrderTooLargeError(f"order {order} exceeds cap {CYCLOTOMIC_ORDER_CAP}")
    big_a = a.alpha * tden
    big_b = a.beta * tden + 2 * a.theta.numerator * a.delta
    big_c = a.gamma * tden
    coeffs = [Fraction(0)] * order
    one = Fraction(1)
    for n in range(s.lower, s.upper + 1):
        u = (big_a * n * n + big_b * n + big_c) % order
        if s.alternating and n & 1:
            coeffs[u] -= one
        else:
            coeffs[u] += one
    return CyclotomicElement(order, coeffs)


def cyclotomic_value(s: SumSpec, precision_bits: int = 128) -> HighPrecComplex:
    """Embedded value of cyclotomic_sum with the kind's interpretation."""
    z = cyclotomic_sum(s).embedding(precision_bits)
    if s.kind is Kind.SIN:
        return HighPrecComplex(z.im, mpf(0), z.err)
    if s.kind is Kind.COS:
        return HighPrecComplex(z.re, mpf(0), z.err)
    return z


def element_equals_value(parts: Sequence[tuple[Kind, CyclotomicElement]],
                         value: GaussianRational) -> bool:
    """Certified check that the combined sum of the parts equals `value`.

    Each part contributes Re, Im or the full embedding according to its
    kind.  Everything is assembled as 2*i*(combined - value) in a common
    group ring, which must embed to exactly zero.
    """
    order = 4
    for _, el in parts:
        order = math.lcm(order, el.order)
    if order > CYCLOTOMIC_ORDER_CAP * 4:
        raise OrderTooLargeError(f"combined order {order} too large")
    quarter = order // 4
    acc = CyclotomicElement.zero(order)
    for kind, el in parts:
        z = el.promoted(order) if el.order != order else el
        if kind is Kind.SIN:
            acc = acc + (z - z.conjugate())                 # 2i*Im(z)
        elif kind is Kind.COS:
            acc = acc + (z + z.conjugate()).rotated(quarter)  # 2i*Re(z)
        else:
            acc = acc + z.scaled(Fraction(2)).rotated(quarter)  # 2i*z
    target = CyclotomicElement.constant(order, -2 * value.im)
    target = target + CyclotomicElement.constant(order, 2 * value.re).rotated(quarter)
    return (acc - target).is_zero()


# ---------------------------------------------------------------------------
# Oracle 3: period reduction (the induction-step rewrite, made executable)


@dataclass(frozen=True)
class ReductionStep:
    description: str
    multiplier: int
    base: SumSpec
    residual: Optional[SumSpec]


def fundamental_period(s: SumSpec) -> int:
    """Smallest T > 0 such that term(n+T) = term(n) for all n.

    Requires a pure quadratic argument.  T must satisfy delta | alpha*T and
    the collected sign (-1)^(alpha*T^2/delta) * (-1)^(T if alternating)
    must be +1; doubling T always repairs an odd sign.
    """
    a = s.arg
    if a.beta or a.gamma or a.theta:
        raise UnsupportedShapeError("period reduction needs beta=gamma=theta=0")
    t0 = a.delta // math.gcd(abs(a.alpha), a.delta) if a.alpha else 1
    m0 = a.alpha * t0 * t0 // a.delta
    flip = (m0 + (t0 if s.alternating else 0)) % 2
    return t0 if flip == 0 else 2 * t0


def period_reduce(s: SumSpec) -> ReductionStep:
    """Rewrite s as multiplier * base + residual with base inside one period.

    The identity multiplier*value(base) + value(residual) = value(s) holds
    exactly; the collected per-block shift sign is asserted to be +1, which
    is the p + p^2 parity fact that makes the rewrite valid.
    """
    period = fundamental_period(s)
    count = s.term_count()
    if count <= period:
        return ReductionStep("within one period", 1, s, None)
    blocks, rem = divmod(count, period)
    a = s.arg
    m_t = a.alpha * period * period // a.delta
    assert (m_t + (period if s.alternating else 0)) % 2 == 0
    for j in range(1, min(blocks, 8)):
        sign = (-1) ** ((m_t * j * j) % 2)
        if s.alternating:
            sign *= (-1) ** ((j * period) % 2)
        assert sign == 1, "block shift sign must collapse to +1"
    base = SumSpec(s.kind, s.alternating, s.lower, s.lower + period - 1, a)
    residual = None
    if rem:
        residual = SumSpec(s.kind, s.alternating,
                           s.lower + blocks * period, s.upper, a)
    return ReductionStep(
        f"{blocks} blocks of period {period}" + (" + residual" if rem else ""),
        blocks, base, residual)


def split_even_odd(s: SumSpec) -> tuple[SumSpec, SumSpec]:
    """Split into the even-index and odd-index parts, exactly.

    Substitutes n = 2m and n = 2m-1; a constant (-1) from the alternating
    factor on the odd part and the constant linear-phase remainder are
    folded into the polynomial part of the argument.
    """
    a = s.arg
    tden = a.theta.denominator
    # even part: n = 2m
    ev = SumSpec(
        s.kind, False,
        -((-s.lower) // 2), s.upper // 2,
        QuadraticArg(4 * a.alpha, 2 * a.beta, a.gamma, a.delta, 2 * a.theta),
    )
    # odd part: n = 2m-1; constant phase -2*pi*theta goes into gamma/delta
    d2 = a.delta * tden
    alpha2 = 4 * a.alpha * tden
    beta2 = (2 * a.beta - 4 * a.alpha) * tden
    gamma2 = (a.alpha - a.beta + a.gamma) * tden - 2 * a.theta.numerator * a.delta
    if s.alternating:
        gamma2 += d2  # odd indices carry a constant factor -1
    od = SumSpec(
        s.kind, False,
        -((-(s.lower + 1)) // 2), (s.upper + 1) // 2,
        QuadraticArg(alpha2, beta2, gamma2, d2, 2 * a.theta),
    )
    return ev, od
