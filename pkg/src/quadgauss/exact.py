"""Exact arithmetic for closed-form values.

Every closed form handled by this package is a quadratic surd with
Gaussian-rational coefficients times a rational-angle root of unity:

    (a + b*i) + (c + d*i)*sqrt(m)  multiplied by  e^(i*pi*p/q)

with a..d rational, m a squarefree non-negative integer and p/q a reduced
fraction.  The module also provides the rigorous conversion of such values
to high-precision complex enclosures (value plus an outward-rounded error
radius).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from mpmath import libmp, mp, mpf

RationalLike = Union[int, Fraction]

#: floats below this are reported instead of an underflowed 0.0 error radius
_MIN_ERR = 5e-324


def _fr(x: RationalLike) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


# ---------------------------------------------------------------------------
# Gaussian rationals


@dataclass(frozen=True)
class GaussianRational:
    """A complex number with exact rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @staticmethod
    def of(re: RationalLike, im: RationalLike = 0) -> "GaussianRational":
        return GaussianRational(_fr(re), _fr(im))

    def __add__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def scaled(self, q: RationalLike) -> "GaussianRational":
        q = _fr(q)
        return GaussianRational(self.re * q, self.im * q)

    def times_i_power(self, k: int) -> "GaussianRational":
        """Multiply by i**k."""
        k %= 4
        if k == 0:
            return self
        if k == 1:
            return GaussianRational(-self.im, self.re)
        if k == 2:
            return -self
        return GaussianRational(self.im, -self.re)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0


GR_ZERO = GaussianRational()
GR_ONE = GaussianRational.of(1)


# ---------------------------------------------------------------------------
# Surds


def _extract_square(n: int) -> tuple[int, int]:
    """Return (s, m) with n = s*s*m and m squarefree."""
    if n in (0, 1):
        return 1, n
    s, m, p = 1, n, 2
    while p * p <= m:
        p2 = p * p
        while m % p2 == 0:
            m //= p2
            s *= p
        p += 1 if p == 2 else 2
    return s, m


@dataclass(frozen=True)
class SurdValue:
    """rational_part + surd_coeff * sqrt(radicand), kept canonical.

    The radicand is squarefree; radicands 0 and 1 are folded into the
    rational part.  Construction normalizes, so any two equal values built
    from the same radicand family compare equal structurally.
    """

    rational_part: GaussianRational = GR_ZERO
    surd_coeff: GaussianRational = GR_ZERO
    radicand: int = 0

    def __post_init__(self) -> None:
        if self.radicand < 0:
            raise ValueError("radicand must be non-negative")
        rat, coeff, rad = self.rational_part, self.surd_coeff, self.radicand
        if coeff.is_zero():
            rad = 0
        elif rad == 0:
            coeff = GR_ZERO
        else:
            s, m = _extract_square(rad)
            if s != 1:
                coeff = coeff.scaled(s)
                rad = m
            if rad == 1:
                rat = rat + coeff
                coeff, rad = GR_ZERO, 0
        object.__setattr__(self, "rational_part", rat)
        object.__setattr__(self, "surd_coeff", coeff)
        object.__setattr__(self, "radicand", rad)

    def is_zero(self) -> bool:
        return self.rational_part.is_zero() and self.surd_coeff.is_zero()

    def is_rational(self) -> bool:
        return self.surd_coeff.is_zero()

    def __add__(self, other: "SurdValue") -> "SurdValue":
        if self.is_rational() or other.is_rational() or self.radicand == other.radicand:
            rad = other.radicand if self.is_rational() else self.radicand
            return SurdValue(
                self.rational_part + other.rational_part,
                self.surd_coeff + other.surd_coeff,
                rad,
            )
        raise ValueError("cannot add surds with distinct radicands")

    def __neg__(self) -> "SurdValue":
        return SurdValue(-self.rational_part, -self.surd_coeff, self.radicand)

    def __sub__(self, other: "SurdValue") -> "SurdValue":
        return self + (-other)

    def times_i_power(self, k: int) -> "SurdValue":
        return SurdValue(
            self.rational_part.times_i_power(k),
            self.surd_coeff.times_i_power(k),
            self.radicand,
        )


def surd_normalize(raw_radicand: int, coeff: GaussianRational,
                   rational_part: GaussianRational = GR_ZERO) -> SurdValue:
    """Build coeff*sqrt(raw_radicand) (+ rational_part) in canonical form."""
    if raw_radicand < 0:
        raise ValueError("radicand must be non-negative")
    return SurdValue(rational_part, coeff, raw_radicand)


# ---------------------------------------------------------------------------
# Rational angles


@dataclass(frozen=True)
class RationalAngle:
    """The phase e^(i*pi*numerator/denominator), normalized to [0, 2)."""

    numerator: int = 0
    denominator: int = 1

    def __post_init__(self) -> None:
        num, den = self.numerator, self.denominator
        if den == 0:
            raise ValueError("denominator must be nonzero")
        if den < 0:
            num, den = -num, -den
        g = math.gcd(num, den)
        if g > 1:
            num //= g
            den //= g
        num %= 2 * den
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)

    def is_identity(self) -> bool:
        return self.numerator == 0

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)


ANGLE_ZERO = RationalAngle(0, 1)


# ---------------------------------------------------------------------------
# Closed-form values


@dataclass(frozen=True)
class ClosedFormValue:
    """surd * e^(i*pi*p/q); the value domain of every catalog right side."""

    surd: SurdValue = SurdValue()
    phase: RationalAngle = ANGLE_ZERO

    def __post_init__(self) -> None:
        if self.surd.is_zero() and not self.phase.is_identity():
            object.__setattr__(self, "phase", ANGLE_ZERO)

    def is_zero(self) -> bool:
        return self.surd.is_zero()

    def canonical(self) -> "ClosedFormValue":
        """Fold quarter turns into the coefficients; fold an exact e^(i*pi/4)
        into a sqrt(2) surd when the radicand allows it."""
        surd, phase = self.surd, self.phase
        if surd.is_zero():
            return ClosedFormValue(SurdValue(), ANGLE_ZERO)
        # phase angle t = num/den in [0, 2); peel off whole quarter turns
        quarters = (2 * phase.numerator) // phase.denominator
        if quarters:
            surd = surd.times_i_power(quarters)
            phase = RationalAngle(
                2 * phase.numerator - quarters * phase.denominator,
                2 * phase.denominator,
            )
        if phase.as_fraction() == Fraction(1, 4) and surd.radicand in (0, 2):
            # (r + c*sqrt(2)) * e^(i*pi/4) = c*(1+i) + (r*(1+i)/2)*sqrt(2)
            one_plus_i = GaussianRational.of(1, 1)
            rat = surd.surd_coeff * one_plus_i
            coeff = (surd.rational_part * one_plus_i).scaled(Fraction(1, 2))
            surd = SurdValue(rat, coeff, 2)
            phase = ANGLE_ZERO
        return ClosedFormValue(surd, phase)


CF_ZERO = ClosedFormValue()


def cf_from_rational(q: RationalLike, im: RationalLike = 0) -> ClosedFormValue:
    return ClosedFormValue(SurdValue(GaussianRational.of(q, im)), ANGLE_ZERO)


def cf_equal(a: ClosedFormValue, b: ClosedFormValue) -> bool:
    """Exact structural equality after canonicalization (no floats)."""
    return a.canonical() == b.canonical()


def cf_neg(a: ClosedFormValue) -> ClosedFormValue:
    return ClosedFormValue(-a.surd, a.phase)


def cf_add(a: ClosedFormValue, b: ClosedFormValue) -> ClosedFormValue:
    """Add two closed forms sharing a phase (after canonicalization)."""
    ca, cb = a.canonical(), b.canonical()
    if ca.is_zero():
        return cb
    if cb.is_zero():
        return ca
    if ca.phase != cb.phase:
        raise ValueError("cannot add closed forms with distinct phases")
    return ClosedFormValue(ca.surd + cb.surd, ca.phase)


def cf_sub(a: ClosedFormValue, b: ClosedFormValue) -> ClosedFormValue:
    return cf_add(a, cf_neg(b))


def cf_scaled(a: ClosedFormValue, q: RationalLike) -> ClosedFormValue:
    return ClosedFormValue(
        SurdValue(a.surd.rational_part.scaled(q), a.surd.surd_coeff.scaled(q),
                  a.surd.radicand),
        a.phase,
    )


# ---------------------------------------------------------------------------
# High-precision complex enclosures


def _neg_exact(x: mpf) -> mpf:
    """Negate without rounding to the ambient context precision."""
    return mp.make_mpf(libmp.mpf_neg(x._mpf_))


@dataclass(frozen=True)
class HighPrecComplex:
    """A complex value with an outward-rounded error radius.

    err bounds the distance between (re, im) and the represented exact
    value; all arithmetic here keeps that property by over-estimating.
    """

    re: mpf
    im: mpf
    err: float = 0.0

    def conjugate(self) -> "HighPrecComplex":
        return HighPrecComplex(self.re, _neg_exact(self.im), self.err)

    def modulus(self) -> float:
        return float(mp.hypot(self.re, self.im))

    def __str__(self) -> str:
        return f"({mp.nstr(self.re, 20)} + {mp.nstr(self.im, 20)}i) +/- {self.err:.3e}"


def hpc_zero() -> HighPrecComplex:
    return HighPrecComplex(mpf(0), mpf(0), 0.0)


def _bump(err: float) -> float:
    return err if err == 0.0 or err >= _MIN_ERR else _MIN_ERR


def hpc_add(a: HighPrecComplex, b: HighPrecComplex,
            precision_bits: int = 256) -> HighPrecComplex:
    with mp.workprec(precision_bits + 8):
        re = a.re + b.re
        im = a.im + b.im
        ulp = math.ldexp(1.0 + abs(float(re)) + abs(float(im)), -precision_bits)
    return HighPrecComplex(re, im, _bump(a.err + b.err + ulp))


def hpc_sub(a: HighPrecComplex, b: HighPrecComplex,
            precision_bits: int = 256) -> HighPrecComplex:
    return hpc_add(a, HighPrecComplex(_neg_exact(b.re), _neg_exact(b.im), b.err),
                   precision_bits)


def hpc_mul(a: HighPrecComplex, b: HighPrecComplex,
            precision_bits: int = 256) -> HighPrecComplex:
    with mp.workprec(precision_bits + 8):
        re = a.re * b.re - a.im * b.im
        im = a.re * b.im + a.im * b.re
        ma = float(mp.hypot(a.re, a.im)) * 1.001 + a.err
        mb = float(mp.hypot(b.re, b.im)) * 1.001 + b.err
        ulp = math.ldexp(1.0 + abs(float(re)) + abs(float(im)), -precision_bits)
    err = ma * b.err + mb * a.err + a.err * b.err + ulp
    return HighPrecComplex(re, im, _bump(err))


def hpc_scale_rational(a: HighPrecComplex, q: GaussianRational,
                       precision_bits: int = 256) -> HighPrecComplex:
    with mp.workprec(precision_bits + 8):
        qr = mpf(q.re.numerator) / q.re.denominator
        qi = mpf(q.im.numerator) / q.im.denominator
        mq = float(mp.hypot(qr, qi))
        re = a.re * qr - a.im * qi
        im = a.re * qi + a.im * qr
        ulp = math.ldexp(1.0 + abs(float(re)) + abs(float(im)), -precision_bits + 2)
    return HighPrecComplex(re, im, _bump(a.err * mq * 1.001 + ulp))


def hpc_gap(a: HighPrecComplex, b: HighPrecComplex,
            precision_bits: int = 256) -> float:
    """|a - b| of the midpoints (error radii are accounted by the caller)."""
    with mp.workprec(precision_bits + 8):
        return float(mp.hypot(a.re - b.re, a.im - b.im))


def cf_to_complex(v: ClosedFormValue, precision_bits: int = 256) -> HighPrecComplex:
    """Convert a closed form to an enclosure at the requested precision.

    The returned radius satisfies err <= 2^(-precision_bits+8) * (1 + |v|);
    an exactly-zero closed form converts with err = 0.
    """
    if precision_bits < 64:
        raise ValueError("precision_bits must be at least 64")
    if v.is_zero():
        return hpc_zero()
    s = v.surd
    with mp.workprec(precision_bits + 32):
        re = mpf(s.rational_part.re.numerator) / s.rational_part.re.denominator
        im = mpf(s.rational_part.im.numerator) / s.rational_part.im.denominator
        if not s.surd_coeff.is_zero():
            root = mp.sqrt(s.radicand)
            re += root * s.surd_coeff.re.numerator / s.surd_coeff.re.denominator
            im += root * s.surd_coeff.im.numerator / s.surd_coeff.im.denominator
        if not v.phase.is_identity():
            c = mp.cospi(mpf(v.phase.numerator) / v.phase.denominator)
            ssin = mp.sinpi(mpf(v.phase.numerator) / v.phase.denominator)
            re, im = re * c - im * ssin, re * ssin + im * c
        mag = float(mp.hypot(re, im))
    err = math.ldexp(1.0 + mag, -precision_bits)
    return HighPrecComplex(re, im, _bump(err))


def cf_to_text(v: ClosedFormValue) -> str:
    """Canonical text form used in reports:
    "(a + b*i) + (c + d*i)*sqrt(m) * e^(i*pi*p/q)" with rationals as num/den.
    """
    c = v.canonical()

    def q(x: Fraction) -> str:
        return f"{x.numerator}/{x.denominator}"

    s = c.surd
    return (
        f"({q(s.rational_part.re)} + {q(s.rational_part.im)}*i)"
        f" + ({q(s.surd_coeff.re)} + {q(s.surd_coeff.im)}*i)"
        f"*sqrt({s.radicand})"
        f" * e^(i*pi*{c.phase.numerator}/{c.phase.denominator})"
    )
