"""The machine-readable catalog of closed-form sum identities.

Each entry pairs a parameterized left-hand sum (one or more SumSpecs) with
a parameterized exact right-hand side and a validity predicate.  Entries
come in four shapes:

* single   -- one sum equals the right side,
* sum      -- the values of several sums add up to the right side,
* each     -- every listed sum equals the right side individually,
* relation -- the reciprocity relation between two sums with exact
              square-root/phase front factors on both sides.

verify() checks an entry at a parameter point against the direct-summation
oracle, and -- when the right side is exactly rational -- against the
group-ring oracle, which yields a certified EXACT_PASS with no floating
tolerance involved.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .exact import (CF_ZERO, ClosedFormValue, GaussianRational, GR_ONE,
                    GR_ZERO, HighPrecComplex, RationalAngle, SurdValue,
                    cf_to_complex, hpc_add, hpc_gap, hpc_mul,
                    hpc_scale_rational, hpc_zero, surd_normalize)
from .sums import (Kind, OrderTooLargeError, RangeTooLargeError, SumSpec,
                   cyclotomic_sum, direct_sum, element_equals_value, negated,
                   spec)

CATALOG_VERSION = "1"


class Status(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    EXACT_PASS = "EXACT_PASS"
    OUT_OF_DOMAIN = "OUT_OF_DOMAIN"


@dataclass(frozen=True)
class RHSExpr:
    """closed + offset + residual_scale * value(residual).

    `offset` is an exact additive constant (needed where a closed form and
    a bare rational carry different phases); `residual` appears only on the
    two entries whose right side retains a short exponential sum.
    """

    closed: ClosedFormValue = CF_ZERO
    offset: GaussianRational = GR_ZERO
    residual_scale: GaussianRational = GR_ONE
    residual: Optional[SumSpec] = None

    def value(self, precision_bits: int = 128) -> HighPrecComplex:
        total = cf_to_complex(self.closed, precision_bits)
        if not self.offset.is_zero():
            off = cf_to_complex(
                ClosedFormValue(SurdValue(self.offset)), precision_bits)
            total = hpc_add(total, off, precision_bits)
        if self.residual is not None:
            res = direct_sum(self.residual, precision_bits)
            res = hpc_scale_rational(res, self.residual_scale, precision_bits)
            total = hpc_add(total, res, precision_bits)
        return total

    def exact_gaussian(self) -> Optional[GaussianRational]:
        """The value as an exact Gaussian rational, if it is one."""
        if self.residual is not None:
            return None
        c = self.closed.canonical()
        if not c.surd.is_rational() or not c.phase.is_identity():
            return None
        return c.surd.rational_part + self.offset


@dataclass(frozen=True)
class Relation:
    """lhs_factor * sum(lhs) = rhs_factor * sum(rhs_sum), exactly."""

    lhs_factor: ClosedFormValue
    rhs_factor: ClosedFormValue
    rhs_sum: SumSpec


@dataclass(frozen=True)
class IdentityEntry:
    id: str
    alias: str
    group: str
    param_names: tuple[str, ...]
    mode: str                       # single | sum | each | relation
    lhs: Callable[..., tuple[SumSpec, ...]]
    rhs: Optional[Callable[..., RHSExpr]]
    validity: Callable[..., bool]
    lhs_text: str
    rhs_text: str
    relation: Optional[Callable[..., Relation]] = None
    cross_check: str = ""
    p_zero_ok: bool = False

    def domain_ok(self, **params) -> bool:
        for name in self.param_names:
            v = params.get(name)
            if v is None:
                return False
            if name in ("k", "j") and v < 1:
                return False
            if name == "p" and v < (0 if self.p_zero_ok else 1):
                return False
        return True


@dataclass(frozen=True)
class VerificationRecord:
    id: str
    params: dict
    lhs_value: HighPrecComplex
    rhs_value: HighPrecComplex
    gap: float
    status: Status
    elapsed: float

    def passed(self) -> bool:
        return self.status in (Status.PASS, Status.EXACT_PASS)

    def to_dict(self) -> dict:
        from mpmath import mp
        with mp.workprec(220):
            return {
                "id": self.id,
                "params": dict(sorted(self.params.items())),
                "lhs": [mp.nstr(self.lhs_value.re, 40), mp.nstr(self.lhs_value.im, 40)],
                "rhs": [mp.nstr(self.rhs_value.re, 40), mp.nstr(self.rhs_value.im, 40)],
                "gap": f"{self.gap:.6e}",
                "status": self.status.value,
            }


# ---------------------------------------------------------------------------
# closed-form builders

def _sgn(k: int) -> int:
    return -1 if k & 1 else 1


def _surd(coeff, radicand: int, rational=0) -> ClosedFormValue:
    """rational + coeff*sqrt(radicand), real rational inputs."""
    return ClosedFormValue(
        surd_normalize(radicand, GaussianRational.of(Fraction(coeff)),
                       GaussianRational.of(Fraction(rational))))


def _phased_surd(coeff: GaussianRational, radicand: int,
                 num: int, den: int) -> ClosedFormValue:
    return ClosedFormValue(surd_normalize(radicand, coeff),
                           RationalAngle(num, den))


def _rational(q) -> ClosedFormValue:
    return ClosedFormValue(SurdValue(GaussianRational.of(Fraction(q))))


def _half_turn_cos_sin(k: int) -> tuple[int, int]:
    """cos(k*pi/2), sin(k*pi/2) as exact integers."""
    return ((1, 0), (0, 1), (-1, 0), (0, -1))[k % 4]


def _rhs(closed: ClosedFormValue, offset=0, scale=1,
         residual: Optional[SumSpec] = None) -> RHSExpr:
    return RHSExpr(closed, GaussianRational.of(Fraction(offset)),
                   GaussianRational.of(Fraction(scale)), residual)


def _true(**_params) -> bool:
    return True


# ---------------------------------------------------------------------------
# entry table

_ENTRIES: list[IdentityEntry] = []


def _add(id: str, alias: str, group: str, names: Sequence[str], mode: str,
         lhs, rhs, lhs_text: str, rhs_text: str, validity=_true,
         relation=None, cross_check: str = "", p_zero_ok: bool = False) -> None:
    _ENTRIES.append(IdentityEntry(
        id, alias, group, tuple(names), mode, lhs, rhs, validity,
        lhs_text, rhs_text, relation, cross_check, p_zero_ok))


def _alt(kind, lo, hi, alpha, beta=0, gamma=0, delta=1):
    return spec(kind, lo, hi, alpha, beta, gamma, delta, alternating=True)


def _pln(kind, lo, hi, alpha, beta=0, gamma=0, delta=1):
    return spec(kind, lo, hi, alpha, beta, gamma, delta)


SIN, COS, CEXP = Kind.SIN, Kind.COS, Kind.CEXP

# --- alternating sums over quadratic arguments ------------------------------

_add("A1", "A1R2e", "A", ["k"], "single",
     lambda k: (_alt(SIN, 1, 2 * k, 1, delta=4 * k),),
     lambda k: _rhs(_surd(Fraction(_sgn(k), 2), 2 * k)),
     "sum_{n=1}^{2k} (-1)^n sin(pi n^2/(4k))", "(-1)^k sqrt(2k)/2")
_add("A2", "A1R2o", "A", ["k"], "single",
     lambda k: (_alt(COS, 1, 2 * k - 2, 1, delta=2 * (2 * k - 1)),),
     lambda k: _rhs(_surd(Fraction(-_sgn(k), 2), 2 * k - 1, Fraction(-1, 2))),
     "sum_{n=1}^{2k-2} (-1)^n cos(pi n^2/(2(2k-1)))",
     "-((-1)^k sqrt(2k-1) + 1)/2")
_add("A3", "Ans1b", "A", ["k"], "single",
     lambda k: (_alt(COS, 1, 2 * k, 1, delta=4 * k),),
     lambda k: _rhs(_surd(Fraction(_sgn(k), 2), 2 * k,
                          Fraction(-1 + _sgn(k), 2))),
     "sum_{n=1}^{2k} (-1)^n cos(pi n^2/(4k))",
     "(-1 + (-1)^k + (-1)^k sqrt(2k))/2")
_add("A4", "Ans3b", "A", ["k"], "single",
     lambda k: (_alt(SIN, 1, 2 * k - 1, 1, delta=2 * (2 * k - 1)),),
     lambda k: _rhs(_surd(Fraction(_sgn(k), 2), 2 * k - 1, Fraction(_sgn(k), 2))),
     "sum_{n=1}^{2k-1} (-1)^n sin(pi n^2/(2(2k-1)))",
     "(-1)^k (1 + sqrt(2k-1))/2")
_add("A5", "X6Ca", "A", ["k"], "sum",
     lambda k: (_alt(COS, 1, 2 * k - 1, 1, delta=4 * k - 1),
                _alt(SIN, 1, 2 * k - 1, 1, delta=4 * k - 1)),
     lambda k: _rhs(_surd(Fraction(_sgn(k), 2), 4 * k - 1, Fraction(-1, 2))),
     "sum_{n=1}^{2k-1} (-1)^n [cos + sin](pi n^2/(4k-1))",
     "-1/2 + (-1)^k sqrt(4k-1)/2", cross_check="quarter-family")
_add("A6", "X6Cb", "A", ["k"], "sum",
     lambda k: (_alt(COS, 1, 2 * k - 2, 1, delta=4 * k - 3),
                negated(_alt(SIN, 1, 2 * k - 2, 1, delta=4 * k - 3))),
     lambda k: _rhs(_surd(Fraction(-_sgn(k), 2), 4 * k - 3, Fraction(-1, 2))),
     "sum_{n=1}^{2k-2} (-1)^n [cos - sin](pi n^2/(4k-3))",
     "-1/2 - (-1)^k sqrt(4k-3)/2", cross_check="quarter-family")
_add("A7", "Y6Ca2", "A", ["k"], "sum",
     lambda k: (_alt(COS, 1, 2 * k - 1, 1, delta=4 * k - 1),
                negated(_alt(SIN, 1, 2 * k - 1, 1, delta=4 * k - 1))),
     lambda k: _rhs(_surd(Fraction(-_sgn(k), 2), 4 * k - 1, Fraction(-1, 2))),
     "sum_{n=1}^{2k-1} (-1)^n [cos - sin](pi n^2/(4k-1))",
     "-1/2 - (-1)^k sqrt(4k-1)/2", cross_check="quarter-family")
_add("A8", "Y6Cb2", "A", ["k"], "sum",
     lambda k: (_alt(COS, 1, 2 * k - 2, 1, delta=4 * k - 3),
                _alt(SIN, 1, 2 * k - 2, 1, delta=4 * k - 3)),
     lambda k: _rhs(_surd(Fraction(-_sgn(k), 2), 4 * k - 3, Fraction(-1, 2))),
     "sum_{n=1}^{2k-2} (-1)^n [cos + sin](pi n^2/(4k-3))",
     "-1/2 - (-1)^k sqrt(4k-3)/2", cross_check="quarter-family")
_add("A9", "S1", "A", ["k"], "single",
     lambda k: (_alt(COS, 1, 2 * k - 1, 1, delta=4 * k - 1),),
     lambda k: _rhs(_rational(Fraction(-1, 2))),
     "sum_{n=1}^{2k-1} (-1)^n cos(pi n^2/(4k-1))", "-1/2")
_add("A10", "S2", "A", ["k"], "single",
     lambda k: (_alt(SIN, 1, 2 * k - 1, 1, delta=4 * k - 1),),
     lambda k: _rhs(_surd(Fraction(_sgn(k), 2), 4 * k - 1)),
     "sum_{n=1}^{2k-1} (-1)^n sin(pi n^2/(4k-1))", "(-1)^k sqrt(4k-1)/2")
_add("A11", "S3", "A", ["k"], "single",
     lambda k: (_alt(COS, 1, 2 * k - 2, 1, delta=4 * k - 3),),
     lambda k: _rhs(_surd(Fraction(-_sgn(k), 2), 4 * k - 3, Fraction(-1, 2))),
     "sum_{n=1}^{2k-2} (-1)^n cos(pi n^2/(4k-3))",
     "-1/2 - (-1)^k sqrt(4k-3)/2")
_add("A12", "S4", "A", ["k"], "single",
     lambda k: (_alt(SIN, 1, 2 * k - 2, 1, delta=4 * k - 3),),
     lambda k: _rhs(CF_ZERO),
     "sum_{n=1}^{2k-2} (-1)^n sin(pi n^2/(4k-3))", "0")
_add("A13", "C1a", "A", ["k"], "single",
     lambda k: (_alt(COS, 1, 4 * k - 1, 1, delta=4 * k - 1),),
     lambda k: _rhs(CF_ZERO),
     "sum_{n=1}^{4k-1} (-1)^n cos(pi n^2/(4k-1))", "0")
_add("A14", "S1a", "A", ["k"], "single",
     lambda k: (_alt(SIN, 1, 4 * k - 1, 1, delta=4 * k - 1),),
     lambda k: _rhs(_surd(_sgn(k), 4 * k - 1)),
     "sum_{n=1}^{4k-1} (-1)^n sin(pi n^2/(4k-1))", "(-1)^k sqrt(4k-1)")
_add("A15", "S3a", "A", ["k"], "single",
     lambda k: (_alt(COS, 1, 4 * k - 3, 1, delta=4 * k - 3),),
     lambda k: _rhs(_surd(-_sgn(k), 4 * k - 3)),
     "sum_{n=1}^{4k-3} (-1)^n cos(pi n^2/(4k-3))", "-(-1)^k sqrt(4k-3)")
_add("A16", "S4a", "A", ["k"], "single",
     lambda k: (_alt(SIN, 1, 4 * k - 3, 1, delta=4 * k - 3),),
     lambda k: _rhs(CF_ZERO),
     "sum_{n=1}^{4k-3} (-1)^n sin(pi n^2/(4k-3))", "0")

# --- variations: odd-indexed, symmetric-range and tabulated sums ------------

_add("B1", "S1=C1", "B", ["k"], "each",
     lambda k: (_alt(SIN, 1, 2 * k - 1, -4, 8 * k, 1 - 4 * k, 4 * (2 * k - 1)),
                _alt(COS, 1, 2 * k - 1, -4, 8 * k, 1 - 4 * k, 4 * (2 * k - 1))),
     lambda k: _rhs(_surd(Fraction(-1, 2), 4 * k - 2)),
     "sum_{n=1}^{2k-1} (-1)^n sin|cos(pi (2n-1)(4k-2n-1)/(4(2k-1)))",
     "-sqrt(k - 1/2)")
_add("B2", "S1a=C1a", "B", ["k"], "each",
     lambda k: (_pln(SIN, 1, 2 * k - 1, 4, -4, 1, 4 * (2 * k - 1)),
                _pln(COS, 1, 2 * k - 1, 4, -4, 1, 4 * (2 * k - 1))),
     lambda k: _rhs(_surd(Fraction(1, 2), 4 * k - 2)),
     "sum_{n=1}^{2k-1} sin|cos(pi (2n-1)^2/(4(2k-1)))", "sqrt(k - 1/2)")
_add("B3", "B18", "B", ["k"], "single",
     lambda k: (_alt(COS, 1, 2 * k - 1, -2, 4 * k, -k, 2 * (2 * k - 1)),),
     lambda k: _rhs(CF_ZERO),
     "sum_{n=1}^{2k-1} (-1)^n cos(pi (-2n^2+4kn-k)/(2(2k-1)))", "0",
     cross_check="B18-family")
_add("B4", "B18r", "B", ["k"], "each",
     lambda k: (_alt(SIN, -2 * k, 2 * k, 1, delta=4 * k + 1),
                _alt(COS, 1 - 2 * k, 2 * k - 1, 1, delta=4 * k - 1)),
     lambda k: _rhs(CF_ZERO),
     "sum_{n=-2k}^{2k} (-1)^n sin(pi n^2/(4k+1)) ; "
     "sum_{n=1-2k}^{2k-1} (-1)^n cos(pi n^2/(4k-1))", "0",
     cross_check="B18-family")
_add("B5", "B19", "B", ["k"], "single",
     lambda k: (_alt(SIN, 1, 2 * k - 1, -2, 4 * k, -k, 2 * (2 * k - 1)),),
     lambda k: _rhs(_surd(-1, 2 * k - 1)),
     "sum_{n=1}^{2k-1} (-1)^n sin(pi (-2n^2+4kn-k)/(2(2k-1)))",
     "-sqrt(2k-1)", cross_check="L19-family")
_add("B6", "L19a", "B", ["k"], "single",
     lambda k: (_alt(COS, -2 * k, 2 * k, 1, delta=4 * k + 1),),
     lambda k: _rhs(_surd(_sgn(k), 4 * k + 1)),
     "sum_{n=-2k}^{2k} (-1)^n cos(pi n^2/(4k+1))", "(-1)^k sqrt(4k+1)",
     cross_check="L19-family")
_add("B7", "L19b", "B", ["k"], "single",
     lambda k: (_alt(SIN, 1 - 2 * k, 2 * k - 1, 1, delta=4 * k - 1),),
     lambda k: _rhs(_surd(_sgn(k), 4 * k - 1)),
     "sum_{n=1-2k}^{2k-1} (-1)^n sin(pi n^2/(4k-1))", "(-1)^k sqrt(4k-1)",
     cross_check="L19-family")
_add("B8", "S5_alt", "B", ["k"], "each",
     lambda k: (_pln(SIN, -2 * k, 2 * k, 4, 4, 1, 4 * (4 * k + 1)),
                _pln(COS, -2 * k, 2 * k, 4, 4, 1, 4 * (4 * k + 1))),
     lambda k: _rhs(_surd(Fraction(1, 2), 8 * k + 2)),
     "sum_{n=-2k}^{2k} sin|cos(pi (2n+1)^2/(4(4k+1)))", "sqrt(8k+2)/2")
_add("B9", "Hs1", "B", ["k"], "single",
     lambda k: (_pln(SIN, 1, k, 2, delta=k),),
     lambda k: _rhs(_surd(Fraction(1 + _half_turn_cos_sin(k)[0]
                                   - _half_turn_cos_sin(k)[1], 2), k)),
     "sum_{n=1}^{k} sin(2 pi n^2/k)",
     "(sqrt(k)/2)(1 + cos(k pi/2) - sin(k pi/2))")
_add("B10", "Hc1", "B", ["k"], "single",
     lambda k: (_pln(COS, 1, k, 2, delta=k),),
     lambda k: _rhs(_surd(Fraction(1 + _half_turn_cos_sin(k)[0]
                                   + _half_turn_cos_sin(k)[1], 2), k)),
     "sum_{n=1}^{k} cos(2 pi n^2/k)",
     "(sqrt(k)/2)(1 + cos(k pi/2) + sin(k pi/2))")

# --- even/odd split lemmas ---------------------------------------------------

_add("C1", "SinLemma", "C", ["k"], "single",
     lambda k: (_pln(SIN, 0, k, 1, delta=k),),
     lambda k: _rhs(_surd(Fraction(1 + _sgn(k), 4), 2 * k)),
     "sum_{n=0}^{k} sin(pi n^2/k)", "sqrt(2k)(1 + (-1)^k)/4")
_add("C2_even", "CosLemma_even", "C", ["k"], "single",
     lambda k: (_pln(COS, 1, k, 1, delta=k),),
     lambda k: _rhs(_surd(Fraction(1, 2), 2 * k)),
     "sum_{n=1}^{k} cos(pi n^2/k), k even", "sqrt(2k)/2",
     validity=lambda k: k % 2 == 0)
_add("C2_odd", "CosLemma_odd", "C", ["k"], "single",
     lambda k: (_pln(COS, 1, k, 1, delta=k),),
     lambda k: _rhs(_rational(-1)),
     "sum_{n=1}^{k} cos(pi n^2/k), k odd", "-1",
     validity=lambda k: k % 2 == 1)
_add("C3", "OddSinSum", "C", ["k"], "each",
     lambda k: (_pln(SIN, 1, k, 4, -4, 1, 4 * k),
                _pln(COS, 1, k, 4, -4, 1, 4 * k)),
     lambda k: _rhs(_surd(Fraction(-(_sgn(k) - 1), 4), 2 * k)),
     "sum_{n=1}^{k} sin|cos(pi (2n-1)^2/(4k))", "-sqrt(2k)((-1)^k - 1)/4")

# --- upper-limit extensions ---------------------------------------------------

_add("D1", "S1pX", "D", ["k", "p"], "single",
     lambda k, p: (_alt(SIN, 1, 4 * k * p, 1, delta=4 * k),),
     lambda k, p: _rhs(_surd(p * _sgn(k), 2 * k)),
     "sum_{n=1}^{4kp} (-1)^n sin(pi n^2/(4k))", "p (-1)^k sqrt(2k)",
     p_zero_ok=True)
_add("D2", "S2pX", "D", ["k", "p"], "single",
     lambda k, p: (_alt(SIN, 1, 2 * (2 * k - 1) * p, 1, delta=2 * (2 * k - 1)),),
     lambda k, p: _rhs(_surd(p * _sgn(k), 2 * k - 1)),
     "sum_{n=1}^{2(2k-1)p} (-1)^n sin(pi n^2/(2(2k-1)))",
     "(-1)^k p sqrt(2k-1)", p_zero_ok=True)
_add("D3", "S3p", "D", ["k", "p"], "single",
     lambda k, p: (_alt(SIN, 1, (4 * k - 1) * p, 1, delta=4 * k - 1),),
     lambda k, p: _rhs(_surd(p * _sgn(k), 4 * k - 1)),
     "sum_{n=1}^{(4k-1)p} (-1)^n sin(pi n^2/(4k-1))",
     "(-1)^k p sqrt(4k-1)", p_zero_ok=True, cross_check="half-period")
_add("D4", "S4p", "D", ["k", "p"], "single",
     lambda k, p: (_alt(SIN, 1, (4 * k - 3) * p, 1, delta=4 * k - 3),),
     lambda k, p: _rhs(CF_ZERO),
     "sum_{n=1}^{(4k-3)p} (-1)^n sin(pi n^2/(4k-3))", "0", p_zero_ok=True)
_add("D5", "B3aX", "D", ["k", "p"], "single",
     lambda k, p: (_alt(COS, 1, 2 * (2 * k - 1) * p, 1, delta=2 * (2 * k - 1)),),
     lambda k, p: _rhs(_surd(-p * _sgn(k), 2 * k - 1)),
     "sum_{n=1}^{2(2k-1)p} (-1)^n cos(pi n^2/(2(2k-1)))",
     "-(-1)^k p sqrt(2k-1)", p_zero_ok=True)
_add("D6", "B4aX", "D", ["k", "p"], "single",
     lambda k, p: (_alt(COS, 1, 4 * k * p, 1, delta=4 * k),),
     lambda k, p: _rhs(_surd(p * _sgn(k), 2 * k)),
     "sum_{n=1}^{4kp} (-1)^n cos(pi n^2/(4k))", "p (-1)^k sqrt(2k)",
     p_zero_ok=True)
_add("D7", "S1px_var", "D", ["k", "p"], "single",
     lambda k, p: (_alt(COS, 1, (4 * k - 1) * p, 1, delta=4 * k - 1),),
     lambda k, p: _rhs(CF_ZERO),
     "sum_{n=1}^{(4k-1)p} (-1)^n cos(pi n^2/(4k-1))", "0", p_zero_ok=True)
_add("D8", "C3p", "D", ["k", "p"], "single",
     lambda k, p: (_alt(COS, 1, (4 * k - 3) * p, 1, delta=4 * k - 3),),
     lambda k, p: _rhs(_surd(-p * _sgn(k), 4 * k - 3)),
     "sum_{n=1}^{(4k-3)p} (-1)^n cos(pi n^2/(4k-3))",
     "-(-1)^k p sqrt(4k-3)", p_zero_ok=True)

# --- companion lemmas ---------------------------------------------------------

_add("E1", "S2p_C", "E", ["k"], "single",
     lambda k: (_pln(COS, 1, 2 * k - 1, 1, delta=2 * (2 * k - 1)),),
     lambda k: _rhs(_surd(Fraction(1, 2), 2 * k - 1, Fraction(-1, 2))),
     "sum_{n=1}^{2k-1} cos(pi n^2/(2(2k-1)))", "(sqrt(2k-1) - 1)/2")
_add("E2", "lemma2", "E", ["k"], "single",
     lambda k: (_pln(COS, 1, 2 * k, 1, delta=4 * k),),
     lambda k: _rhs(_surd(Fraction(1, 2), 2 * k, Fraction(_sgn(k) - 1, 2))),
     "sum_{n=1}^{2k} cos(pi n^2/(4k))", "(sqrt(2k) + (-1)^k - 1)/2")
_add("E3_full", "Bc3_lemma", "E", ["k"], "single",
     lambda k: (_pln(SIN, 1, 2 * k - 1, 1, delta=2 * (2 * k - 1)),),
     lambda k: _rhs(_surd(Fraction(1, 2), 2 * k - 1, Fraction(-_sgn(k), 2))),
     "sum_{n=1}^{2k-1} sin(pi n^2/(2(2k-1)))", "sqrt(2k-1)/2 - (-1)^k/2",
     cross_check="E3-readings")
_add("E3_trunc", "Bc3_lemma_trunc", "E", ["k"], "single",
     lambda k: (_pln(SIN, 1, 2 * k - 2, 1, delta=2 * (2 * k - 1)),),
     lambda k: _rhs(_surd(Fraction(1, 2), 2 * k - 1, Fraction(_sgn(k), 2))),
     "sum_{n=1}^{2k-2} sin(pi n^2/(2(2k-1)))", "sqrt(2k-1)/2 + (-1)^k/2",
     cross_check="E3-readings")
_add("E4", "S5p", "E", ["k", "p"], "single",
     lambda k, p: (_pln(SIN, 1, p * (2 * k - 1), 4, -4, 1, 4 * (2 * k - 1)),),
     lambda k, p: _rhs(_surd(Fraction(p, 2), 4 * k - 2)),
     "sum_{n=1}^{p(2k-1)} sin(pi (2n-1)^2/(4(2k-1)))", "p sqrt(4k-2)/2",
     p_zero_ok=True)
_add("E5", "S6p", "E", ["k", "p"], "single",
     lambda k, p: (_pln(SIN, 1, p * k, 2, delta=k),),
     lambda k, p: _rhs(_surd(Fraction(p * (1 + _half_turn_cos_sin(k)[0]
                                           - _half_turn_cos_sin(k)[1]), 2), k)),
     "sum_{n=1}^{pk} sin(2 pi n^2/k)",
     "(p sqrt(k)/2)(1 + cos(k pi/2) - sin(k pi/2))", p_zero_ok=True)
_add("E6", "S1p", "E", ["k", "p"], "single",
     lambda k, p: (_alt(SIN, 1, 2 * p * k, 1, delta=4 * k),),
     lambda k, p: _rhs(_surd(Fraction(p * _sgn(k), 2), 2 * k)),
     "sum_{n=1}^{2pk} (-1)^n sin(pi n^2/(4k))", "p (-1)^k sqrt(2k)/2",
     p_zero_ok=True)
_add("E7", "B3a", "E", ["k", "p"], "single",
     lambda k, p: (_alt(COS, 1, p * (2 * k - 1), 1, delta=2 * (2 * k - 1)),),
     lambda k, p: _rhs(_surd(Fraction(-p * _sgn(k), 2), 2 * k - 1,
                             Fraction(-(1 - (-1) ** p), 4))),
     "sum_{n=1}^{p(2k-1)} (-1)^n cos(pi n^2/(2(2k-1)))",
     "-(1-(-1)^p)/4 - (-1)^k p sqrt(2k-1)/2", p_zero_ok=True)
_add("E8", "B4a", "E", ["k", "p"], "single",
     lambda k, p: (_alt(COS, 1, 2 * p * k, 1, delta=4 * k),),
     lambda k, p: _rhs(_surd(Fraction(p * _sgn(k), 2), 2 * k,
                             Fraction(-(1 - (-1) ** (p * k)), 2))),
     "sum_{n=1}^{2pk} (-1)^n cos(pi n^2/(4k))",
     "p (-1)^k sqrt(2k)/2 - (1-(-1)^(pk))/2", p_zero_ok=True)
_add("E9", "S2p", "E", ["k", "p"], "single",
     lambda k, p: (_alt(SIN, 1, p * (2 * k - 1), 1, delta=2 * (2 * k - 1)),),
     lambda k, p: _rhs(_surd(Fraction(p * _sgn(k), 2), 2 * k - 1,
                             Fraction(_sgn(k) * (1 - (-1) ** p), 4))),
     "sum_{n=1}^{p(2k-1)} (-1)^n sin(pi n^2/(2(2k-1)))",
     "(-1)^k (1 + 2p sqrt(2k-1) - (-1)^p)/4", p_zero_ok=True)
_add("E10", "S1px", "E", ["k", "p"], "single",
     lambda k, p: (_alt(COS, 1, p * (4 * k - 1) - 2 * k, 1, delta=4 * k - 1),),
     lambda k, p: _rhs(_rational(Fraction(-1, 2))),
     "sum_{n=1}^{p(4k-1)-2k} (-1)^n cos(pi n^2/(4k-1))", "-1/2")
_add("E11", "B12b", "E", ["k", "p"], "single",
     lambda k, p: (_alt(COS, 1, p * (4 * k - 3) - 2 * k + 1, 1, delta=4 * k - 3),),
     lambda k, p: _rhs(_surd(Fraction(-_sgn(k) * (2 * p - 1), 2), 4 * k - 3,
                             Fraction(-1, 2))),
     "sum_{n=1}^{p(4k-3)-2k+1} (-1)^n cos(pi n^2/(4k-3))",
     "-1/2 - (-1)^k sqrt(4k-3)(p - 1/2)")
_add("E12", "B28g", "E", ["k", "p"], "single",
     lambda k, p: (_alt(SIN, 1, p * (4 * k - 1) - 2 * k, 1, delta=4 * k - 1),),
     lambda k, p: _rhs(_surd(Fraction(_sgn(k) * (2 * p - 1), 2), 4 * k - 1)),
     "sum_{n=1}^{p(4k-1)-2k} (-1)^n sin(pi n^2/(4k-1))",
     "(-1)^k (p - 1/2) sqrt(4k-1)", cross_check="half-period")

# --- root-of-unity closed forms -----------------------------------------------


def _one_plus_i_weight(k: int) -> GaussianRational:
    """(1 + i)(1 + e^(-i pi k/2)) as an exact Gaussian rational."""
    e = ((1, 0), (0, -1), (-1, 0), (0, 1))[k % 4]   # (-i)^k
    return GaussianRational.of(1, 1) * GaussianRational.of(1 + e[0], e[1])


_add("F1", "G(1;k)", "F", ["k"], "single",
     lambda k: (_pln(CEXP, 1, k, 2, delta=k),),
     lambda k: _rhs(ClosedFormValue(surd_normalize(
         k, _one_plus_i_weight(k).scaled(Fraction(1, 2))))),
     "sum_{n=1}^{k} e^(2 pi i n^2/k)",
     "(sqrt(k)/2)(1+i)(1 + e^(-i pi k/2))")
_add("F2", "GA(1;k)", "F", ["k", "p"], "single",
     lambda k, p: (_alt(CEXP, 1, p * k, 1, delta=k),),
     lambda k, p: _rhs(_phased_surd(GaussianRational.of(p), k,
                                    1 + 4 * (k // 4) - (k % 4), 4)),
     "sum_{n=1}^{pk} (-1)^n e^(i pi n^2/k)",
     "p sqrt(k) e^(i pi (1/4 + floor(k/4) - (k mod 4)/4))", p_zero_ok=True)
_add("F3", "Ge1", "F", ["k", "p"], "single",
     lambda k, p: (_pln(CEXP, 1, p * k, 4, -4, 1, 4 * k),),
     lambda k, p: _rhs(ClosedFormValue(surd_normalize(
         2 * k, GaussianRational.of(1, 1).scaled(Fraction(p * (1 - _sgn(k)), 4))))),
     "sum_{n=1}^{pk} e^(i pi (2n-1)^2/(4k))",
     "(1+i) p sqrt(2k) (1-(-1)^k)/4", p_zero_ok=True)
_add("F4", "Water1", "F", ["k", "m"], "single",
     lambda k, m: (_pln(CEXP, 0, 2 * k - 1, 1, -2 * m, m * m, 2 * k),),
     lambda k, m: _rhs(_phased_surd(GR_ONE, 2 * k, 1, 4)),
     "sum_{n=0}^{2k-1} e^(i pi (n-m)^2/(2k))", "sqrt(2k i)")
_add("F5", "Water2", "F", ["k"], "single",
     lambda k: (_pln(CEXP, 0, k - 1, 4, -4, 1, 4 * k),),
     lambda k: _rhs(_phased_surd(GR_ONE, k, 1, 4)),
     "sum_{n=0}^{k-1} e^(i pi (n-1/2)^2/k)", "sqrt(i k)",
     validity=lambda k: k % 2 == 1)
_add("F6", "Ge1a", "F", ["k", "p"], "single",
     lambda k, p: (_pln(CEXP, 1, p * k, 1, -1, 0, k),),
     lambda k, p: _rhs(_phased_surd(
         GaussianRational.of(1, 1).scaled(Fraction(p * (1 - _sgn(k)), 4)),
         2 * k, -1, 4 * k)),
     "sum_{n=1}^{pk} e^(i pi (n^2-n)/k)",
     "(1+i)/4 e^(-i pi/(4k)) p sqrt(2k) (1-(-1)^k)", p_zero_ok=True)


def _f7_rhs(k: int, p: int) -> RHSExpr:
    closed = _phased_surd(
        GaussianRational.of(1, 1).scaled(Fraction(p * (1 - _sgn(k)), 4)),
        2 * k, -1, 4 * k)
    if p == 0:
        return _rhs(closed, offset=1)
    sign = (-1) ** ((p * p * k + p) % 2)
    if sign == 1:
        # 1 - sum_{n=1}^{p} = -(sum_{n=2}^{p}) since the n=1 term equals 1
        residual = _pln(CEXP, 2, p, 1, -1, 0, k)
        return _rhs(closed, scale=-1, residual=residual)
    # 1 + sum_{n=1}^{p} = sum_{n=0}^{p} since the n=0 term equals 1
    return _rhs(closed, scale=1, residual=_pln(CEXP, 0, p, 1, -1, 0, k))


_add("F7", "canonical", "F", ["k", "p"], "single",
     lambda k, p: (_pln(CEXP, 0, p * (k - 1), 1, -1, 0, k),),
     _f7_rhs,
     "sum_{n=0}^{p(k-1)} e^(i pi (n^2-n)/k)",
     "(p/4)(1+i) e^(-i pi/(4k)) sqrt(2k)(1-(-1)^k) + 1"
     " - (-1)^(p^2 k + p) sum_{n=1}^{p} e^(i pi n(n-1)/k)", p_zero_ok=True)
_add("F8", "LsL=LsR", "F", ["k"], "single",
     lambda k: (_pln(CEXP, 0, k - 1, 1, -1, 0, k),),
     lambda k: _rhs(_phased_surd(
         GaussianRational.of(1, 1).scaled(Fraction(1, 2)), 2 * k, -1, 4 * k)),
     "sum_{n=0}^{k-1} e^(i pi (n^2-n)/k)",
     "(1/2)(1+i) e^(-i pi/(4k)) sqrt(2k)",
     validity=lambda k: k % 2 == 1)


def _f9_relation(j: int, k: int, m: int) -> Relation:
    return Relation(
        lhs_factor=ClosedFormValue(surd_normalize(j, GR_ONE)),
        rhs_factor=ClosedFormValue(
            surd_normalize(k, GR_ONE),
            RationalAngle(j * k - m * m, 4 * j * k)),
        rhs_sum=_pln(CEXP, 0, j - 1, -k, -m, 0, j),
    )


_add("F9", "LsIdent", "F", ["j", "k", "m"], "relation",
     lambda j, k, m: (_pln(CEXP, 0, k - 1, j, m, 0, k),),
     None,
     "sqrt(j) sum_{n=0}^{k-1} e^(i pi (j n^2 + n m)/k)",
     "sqrt(k) e^(i pi (jk - m^2)/(4jk)) sum_{n=0}^{j-1} e^(-i pi (n^2 k + n m)/j)",
     validity=lambda j, k, m: (j * k + m) % 2 == 0,
     relation=_f9_relation)
_add("F10", "var1", "F", ["k", "p"], "single",
     lambda k, p: (_pln(CEXP, 0, p * k * (k - 1), 1, -1, 0, k),),
     lambda k, p: _rhs(_phased_surd(
         GaussianRational.of(1, 1).scaled(Fraction(p * (k - 1) * (1 - _sgn(k)), 4)),
         2 * k, -1, 4 * k), offset=1),
     "sum_{n=0}^{pk(k-1)} e^(i pi (n^2-n)/k)",
     "1 + (p/4)(1+i) e^(-i pi/(4k)) sqrt(2k)(k-1)(1-(-1)^k)", p_zero_ok=True)
_add("F11", "var2", "F", ["k", "p"], "single",
     lambda k, p: (_pln(CEXP, 0, p * (k - 1) * (k - 1), 1, -1, 0, k),),
     lambda k, p: _rhs(_phased_surd(
         GaussianRational.of(1, 1).scaled(Fraction((k - 2) * p * (1 - _sgn(k)), 4)),
         2 * k, -1, 4 * k),
         scale=1, residual=_pln(CEXP, 0, p, 1, -1, 0, k)),
     "sum_{n=0}^{p(k-1)^2} e^(i pi n(n-1)/k)",
     "1 + sum_{n=1}^{p} e^(i pi n(n-1)/k)"
     " + (1/4)(1+i)(k-2) p sqrt(2k) e^(-i pi/(4k))(1-(-1)^k)", p_zero_ok=True)


_BY_ID = {e.id: e for e in _ENTRIES}
_BY_ALIAS = {e.alias: e for e in _ENTRIES}


def catalog_entries() -> tuple[IdentityEntry, ...]:
    return tuple(_ENTRIES)


def get_entry(key: str) -> IdentityEntry:
    entry = _BY_ID.get(key) or _BY_ALIAS.get(key)
    if entry is None:
        raise KeyError(f"unknown identity {key!r}")
    return entry


def closed_form(key: str, **params) -> RHSExpr:
    """The exact right-hand side of an entry at a parameter point."""
    entry = get_entry(key)
    if entry.rhs is None:
        raise ValueError(f"{entry.id} is a relation and has no additive closed form")
    if not entry.domain_ok(**params):
        raise ValueError(f"parameters {params} outside the domain of {entry.id}")
    if not entry.validity(**params):
        raise ValueError(f"parameters {params} violate the validity of {entry.id}")
    return entry.rhs(**params)


# ---------------------------------------------------------------------------
# verification


def _exact_check(entry: IdentityEntry, parts: Sequence[SumSpec],
                 target: GaussianRational) -> Optional[bool]:
    """Certified exact comparison via the group-ring oracle.

    Returns True/False for a definite answer, None when the oracle is not
    applicable (caps exceeded).
    """
    try:
        if entry.mode == "each":
            for part in parts:
                el = cyclotomic_sum(part)
                if not element_equals_value([(part.kind, el)], target):
                    return False
            return True
        pairs = [(part.kind, cyclotomic_sum(part)) for part in parts]
        return element_equals_value(pairs, target)
    except (OrderTooLargeError, RangeTooLargeError):
        return None


def verify(key: str, params: Optional[dict] = None, precision_bits: int = 128,
           tolerance: float = 1e-30, force: bool = False,
           allow_exact: bool = True, **kwparams) -> VerificationRecord:
    """Check one identity at one parameter point.

    PASS iff the direct-sum gap is within the combined tracked error plus
    `tolerance`; EXACT_PASS when the right side is rational and the
    group-ring oracle certifies equality exactly.  Points violating the
    validity predicate report OUT_OF_DOMAIN unless `force` is set, in which
    case both sides are evaluated anyway (expected-failure probes).
    """
    entry = get_entry(key)
    merged = dict(params or {})
    merged.update(kwparams)
    all_params = {n: merged[n] for n in entry.param_names if n in merged}
    start = time.perf_counter()
    if not entry.domain_ok(**all_params):
        raise ValueError(f"parameters {merged} outside the domain of {entry.id}")
    if not entry.validity(**all_params) and not force:
        return VerificationRecord(entry.id, all_params, hpc_zero(), hpc_zero(),
                                  float("nan"), Status.OUT_OF_DOMAIN,
                                  time.perf_counter() - start)

    parts = entry.lhs(**all_params)

    if entry.mode == "relation":
        rel = entry.relation(**all_params)
        lhs_raw = direct_sum(parts[0], precision_bits)
        lhs_value = hpc_mul(cf_to_complex(rel.lhs_factor, precision_bits),
                            lhs_raw, precision_bits)
        rhs_raw = direct_sum(rel.rhs_sum, precision_bits)
        rhs_value = hpc_mul(cf_to_complex(rel.rhs_factor, precision_bits),
                            rhs_raw, precision_bits)
        gap = hpc_gap(lhs_value, rhs_value, precision_bits)
        ok = gap <= lhs_value.err + rhs_value.err + tolerance
        return VerificationRecord(entry.id, all_params, lhs_value, rhs_value,
                                  gap, Status.PASS if ok else Status.FAIL,
                                  time.perf_counter() - start)

    rhs_expr = entry.rhs(**all_params)
    rhs_value = rhs_expr.value(precision_bits)

    exact_verdict: Optional[bool] = None
    exact_target = rhs_expr.exact_gaussian() if allow_exact else None
    if exact_target is not None:
        exact_verdict = _exact_check(entry, parts, exact_target)

    values = [direct_sum(part, precision_bits) for part in parts]
    if entry.mode == "each":
        gap = 0.0
        lhs_value = values[0]
        budget = rhs_value.err + tolerance
        ok = True
        for v in values:
            g = hpc_gap(v, rhs_value, precision_bits)
            if g > gap:
                gap, lhs_value = g, v
            ok = ok and g <= v.err + budget
    else:
        lhs_value = values[0]
        for v in values[1:]:
            lhs_value = hpc_add(lhs_value, v, precision_bits)
        gap = hpc_gap(lhs_value, rhs_value, precision_bits)
        ok = gap <= lhs_value.err + rhs_value.err + tolerance

    if exact_verdict is True:
        status = Status.EXACT_PASS
    elif exact_verdict is False:
        status = Status.FAIL
    else:
        status = Status.PASS if ok else Status.FAIL
    return VerificationRecord(entry.id, all_params, lhs_value, rhs_value, gap,
                              status, time.perf_counter() - start)


def catalog_to_json() -> dict:
    """Versioned export of the whole catalog (templates as formula text)."""
    return {
        "version": CATALOG_VERSION,
        "entries": [
            {
                "id": e.id,
                "alias": e.alias,
                "group": e.group,
                "params": list(e.param_names),
                "mode": e.mode,
                "lhs": e.lhs_text,
                "rhs": e.rhs_text,
                "validity": _validity_text(e),
                "cross_check": e.cross_check,
            }
            for e in _ENTRIES
        ],
    }


def _validity_text(e: IdentityEntry) -> str:
    if e.id == "F5" or e.id == "F8":
        return "k odd"
    if e.id == "F9":
        return "jk + m even"
    if e.id == "C2_even":
        return "k even"
    if e.id == "C2_odd":
        return "k odd"
    base = [f"{n} >= 1" for n in e.param_names if n != "m"]
    if e.p_zero_ok:
        base = [b.replace("p >= 1", "p >= 0") for b in base]
    return ", ".join(base) if base else "unconditional"
