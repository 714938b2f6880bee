from fractions import Fraction

import mpmath
import pytest

from periodlab.arb import PrecisionPolicy
from periodlab.errors import DomainError
from periodlab.numerics import eval_mzv, phi
from periodlab.oracles import mzv_reference
from periodlab.periods import (
    AE_REFERENCE,
    ae_bracket,
    ae_report,
    anomalous_moment,
    p35,
    p35_exact,
    zeta_symbol,
    zigzag_coefficient,
    zigzag_period,
)
from periodlab.words import MZVIndex

P = PrecisionPolicy(30)


def test_zigzag_examples():
    assert zigzag_coefficient(3) == 6
    assert zigzag_coefficient(4) == 20
    assert zigzag_coefficient(5) == Fraction(441, 8)
    assert zigzag_coefficient(6) == 168
    with pytest.raises(DomainError):
        zigzag_coefficient(2)


@pytest.mark.parametrize("loops", range(3, 9))
def test_zigzag_numeric_matches_symbol(loops):
    pv = zigzag_period(loops, P)
    c = zigzag_coefficient(loops)
    assert pv.exact == zeta_symbol(2 * loops - 3) * c
    with mpmath.workdps(50):
        want = mpmath.mpf(c.numerator) / c.denominator * mpmath.zeta(2 * loops - 3)
        assert abs(pv.numeric.mid - want) < mpmath.mpf(10) ** -28


def test_zigzag_odd_prefactor_grows_to_four():
    prefactors = [zigzag_coefficient(l) * l / __import__("math").comb(2 * l - 2, l - 1) for l in (3, 5, 7, 9)]
    assert prefactors == sorted(prefactors)
    assert all(p < 4 for p in prefactors)
    assert all(zigzag_coefficient(l) * l / __import__("math").comb(2 * l - 2, l - 1) == 4 for l in (4, 6, 8))


def test_p35_exact_form():
    want = ((zeta_symbol(8) * 29 - zeta_symbol(3, 5) * 12) * Fraction(2, 5) - zeta_symbol(3) * zeta_symbol(5) * 9) * 9
    assert p35_exact() == want


def test_p35_two_paths(tables):
    v = p35(P, tables)
    assert mpmath.mpf(v.checks["path_difference"]) < mpmath.mpf(10) ** -25
    assert v.numeric.to_decimal(30) == "2.234565056142560313325481065966"
    with mpmath.workdps(50):
        direct = 9 * (mpmath.mpf(2) / 5 * (29 * mpmath.zeta(8) - 12 * mzv_reference((3, 5)))
                      - 9 * mpmath.zeta(3) * mpmath.zeta(5))
        assert abs(v.numeric.mid - direct) < mpmath.mpf(10) ** -25


def test_schwinger_term():
    a1 = anomalous_moment(137, 1, P)
    with mpmath.workdps(50):
        assert abs(a1.mid - 1 / (2 * mpmath.pi * 137)) < mpmath.mpf(10) ** -30


def test_two_loop_bracket():
    b = ae_bracket(2, P)
    assert b.to_decimal(30) == "-0.328478965579193784582172816965"
    with mpmath.workdps(50):
        z2, z3 = mpmath.zeta(2), mpmath.zeta(3)
        # phi(1) = log 2, phi(2) = zeta(2)/2, phi(3) = 3 zeta(3)/4
        want = 3 * z3 / 4 - 6 * mpmath.ln2 * z2 / 2 + z2 / 2 + mpmath.mpf(197) / 144
        assert abs(b.mid - want) < mpmath.mpf(10) ** -28


def test_three_loop_bracket_from_constituents():
    with mpmath.workdps(50):
        f = {n: phi([n], P).mid for n in (1, 2, 3, 5)}
        f13 = phi([1, 3], P).mid
        want = (mpmath.mpf(2) / 9 * (83 * f[2] * f[3] - 43 * f[5]) - mpmath.mpf(50) / 3 * f13
                + mpmath.mpf(13) / 5 * f[2] ** 2 + mpmath.mpf(278) / 3 * (f[3] / 9 - 12 * f[1] * f[2])
                + mpmath.mpf(34202) / 135 * f[2] + mpmath.mpf(28259) / 2592)
        assert abs(ae_bracket(3, P).mid - want) < mpmath.mpf(10) ** -25


def test_loop_limits():
    with pytest.raises(DomainError, match="through"):
        anomalous_moment(137, 4, P)
    with pytest.raises(DomainError):
        anomalous_moment(-1, 2, P)


def test_refinement_shrinks():
    a = [anomalous_moment(Fraction(137035999, 10 ** 6), k, P).mid for k in (1, 2, 3)]
    assert abs(a[2] - a[1]) < abs(a[1] - a[0])


def test_report_exposes_residual():
    r = ae_report(Fraction(137035999, 10 ** 6), 3, P)
    d = r.to_dict(30)
    assert r.reference == AE_REFERENCE
    assert {"residual", "within_tolerance", "reference", "tolerance"} <= set(d)
    with mpmath.workdps(50):
        assert abs(r.residual.mid - (r.value.mid - mpmath.mpf(115965218091) / 10 ** 14)) < mpmath.mpf(10) ** -30
