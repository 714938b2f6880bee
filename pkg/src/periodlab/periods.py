"""Concrete period values: zig-zag graphs, P_{3,5}, and the electron g-2 series."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

import mpmath

from .arb import ArbReal, PrecisionPolicy, to_mp
from .errors import DomainError
from .ncseries import Poly, linearize
from .numerics import DEFAULT_POLICY, eval_mzv, pi_value
from .relations import ReductionTable, TableSet, reduce
from .words import MZVIndex, QLinComb

# quoted measurement the 3-loop truncation is compared against
AE_REFERENCE = Fraction(115965218091, 10**14)
AE_TOLERANCE = Fraction(2, 10**10)
DEFAULT_ALPHA_INVERSE = Fraction(137035999, 10**6)


@dataclass
class PeriodValue:
    exact: Poly
    numeric: ArbReal
    loops: int | None = None
    label: str = ""
    checks: dict = field(default_factory=dict)

    def to_dict(self, digits: int | None = None) -> dict:
        d = self.numeric.digits if digits is None else digits
        out = {"exact": str(self.exact), "numeric": self.numeric.to_decimal(d), "digits": d,
               "error_exp": self.numeric.error_exp}
        if self.loops is not None:
            out["loops"] = self.loops
        if self.label:
            out["label"] = self.label
        out.update(self.checks)
        return out


def zeta_symbol(*entries: int) -> Poly:
    return Poly.gen(MZVIndex.signed(entries))


def zigzag_coefficient(loops: int) -> Fraction:
    """Rational r with Per = r * zeta(2 loops - 3)."""
    if loops < 3:
        raise DomainError("zig-zag periods start at 3 loops")
    central = math.comb(2 * loops - 2, loops - 1)
    if loops % 2:
        return (4 - Fraction(1, 4 ** (loops - 3))) / loops * central
    return Fraction(4, loops) * central


def zigzag_period(loops: int, policy: PrecisionPolicy = DEFAULT_POLICY) -> PeriodValue:
    c = zigzag_coefficient(loops)
    z = eval_mzv(MZVIndex((2 * loops - 3,)), policy)
    return PeriodValue(zeta_symbol(2 * loops - 3) * c, z * c, loops, f"zigzag({loops})")


def p35_exact() -> Poly:
    """9 { 2/5 [29 zeta(8) - 12 zeta(3,5)] - 9 zeta(3) zeta(5) }."""
    inner = (zeta_symbol(8) * 29 - zeta_symbol(3, 5) * 12) * Fraction(2, 5)
    return (inner - zeta_symbol(3) * zeta_symbol(5) * 9) * 9


def eval_linear(comb: QLinComb[MZVIndex], policy: PrecisionPolicy) -> ArbReal:
    total = ArbReal.exact(0, policy.digits)
    for p, c in comb.items():
        v = ArbReal.exact(1, policy.digits) if p.weight == 0 else eval_mzv(p, policy)
        total = total + v * c
    return total


def p35(policy: PrecisionPolicy = DEFAULT_POLICY, tables: Mapping[int, ReductionTable] | None = None) -> PeriodValue:
    """P_{3,5} evaluated twice: constituent by constituent, and via the weight-8 basis."""
    exact = p35_exact()
    direct = exact.evaluate(policy)
    tables = tables if tables is not None else TableSet(1)
    reduced = reduce(linearize(exact), tables)
    via_basis = eval_linear(reduced, policy)
    diff = direct - via_basis
    checks = {
        "reduced": str(reduced),
        "numeric_via_basis": via_basis.to_decimal(),
        "path_difference": mpmath.nstr(abs(diff.mid), 5),
    }
    return PeriodValue(exact, direct, 6, "the six-loop combination with zeta(3,5)", checks)


# --- electron anomalous magnetic moment --------------------------------------------------


def ae_coefficients() -> dict[int, Poly]:
    """Bracket multiplying (alpha/pi)^k, with phi values as level-2 symbols.

    phi(n_1..n_d) is stored as (-1)^d times the twisted index with every twist -1.
    """

    def ph(*ns: int) -> Poly:
        return Poly.gen(MZVIndex.phi(ns)) * (-1) ** len(ns)

    one = Fraction(1, 2)
    two = ph(3) - ph(1) * ph(2) * 6 + ph(2) + Fraction(197, 2 ** 4 * 3 ** 2)
    three = (
        (ph(2) * ph(3) * 83 - ph(5) * 43) * Fraction(2, 3 ** 2)
        - ph(1, 3) * Fraction(50, 3)
        + ph(2) * ph(2) * Fraction(13, 5)
        + (ph(3) * Fraction(1, 3 ** 2) - ph(1) * ph(2) * 12) * Fraction(278, 3)
        + ph(2) * Fraction(34202, 3 ** 3 * 5)
        + Fraction(28259, 2 ** 5 * 3 ** 4)
    )
    return {1: Poly.const(one), 2: two, 3: three}


def _alpha_over_pi(alpha_inverse, policy: PrecisionPolicy) -> ArbReal:
    with policy.workdps():
        a = to_mp(Fraction(alpha_inverse) if isinstance(alpha_inverse, (int, str)) else alpha_inverse)
        if a <= 0:
            raise DomainError("alpha_inverse must be positive")
        return ArbReal.exact(1 / a, policy.digits) / pi_value(policy)


def ae_bracket(order: int, policy: PrecisionPolicy = DEFAULT_POLICY) -> ArbReal:
    return ae_coefficients()[order].evaluate(policy)


def anomalous_moment(alpha_inverse=DEFAULT_ALPHA_INVERSE, loops: int = 3, policy: PrecisionPolicy = DEFAULT_POLICY) -> ArbReal:
    """Truncation of the (alpha/pi) expansion of (g-2)/2 after ``loops`` orders."""
    if loops > 3:
        raise DomainError("expansion coefficients are only available through (α/π)³")
    if loops < 1:
        raise DomainError("loops must be 1, 2 or 3")
    x = _alpha_over_pi(alpha_inverse, policy)
    total = ArbReal.exact(0, policy.digits)
    for k in range(1, loops + 1):
        total = total + ae_bracket(k, policy) * x ** k
    return total


@dataclass
class AeReport:
    value: ArbReal
    reference: Fraction
    residual: ArbReal
    tolerance: Fraction
    brackets: dict[int, ArbReal]

    @property
    def within_tolerance(self) -> bool:
        return abs(self.residual.mid) + self.residual.rad < to_mp(self.tolerance)

    def to_dict(self, digits: int | None = None) -> dict:
        d = self.value.digits if digits is None else digits
        return {
            "numeric": self.value.to_decimal(d),
            "digits": d,
            "error_exp": self.value.error_exp,
            "reference": str(float(self.reference)),
            "residual": mpmath.nstr(self.residual.mid, 6),
            "tolerance": str(float(self.tolerance)),
            "within_tolerance": self.within_tolerance,
            "brackets": {str(k): v.to_decimal(d) for k, v in self.brackets.items()},
        }


def ae_report(alpha_inverse=DEFAULT_ALPHA_INVERSE, loops: int = 3, policy: PrecisionPolicy = DEFAULT_POLICY) -> AeReport:
    """Compare the truncated series with the quoted measurement; the residual is always reported."""
    value = anomalous_moment(alpha_inverse, loops, policy)
    residual = value - ArbReal.exact(AE_REFERENCE, policy.digits)
    brackets = {k: ae_bracket(k, policy) for k in range(1, loops + 1)}
    return AeReport(value, AE_REFERENCE, residual, AE_TOLERANCE, brackets)
