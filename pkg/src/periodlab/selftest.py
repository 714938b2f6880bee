"""Quick invariant checks behind ``periodlab selftest``."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping

import mpmath

from .arb import PrecisionPolicy
from .ncseries import associator, hoffman_count, motivic_dims
from .numerics import eta_funceq_residual, eval_mzv, zeta2_fast, zeta_even_exact
from .oracles import mzv_reference
from .periods import eval_linear, p35, zigzag_coefficient
from .relations import ReductionTable, TableSet, dims_upper_bound, generate_relations, reduce
from .words import MZVIndex, QLinComb, Word, convergent_indexes, shuffle, stuffle


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float


def _check_zeta2(ctx) -> str:
    p = ctx["policy"]
    with p.workdps():
        err = abs(zeta2_fast(p).mid - mpmath.pi ** 2 / 6)
        assert err < mpmath.mpf(10) ** -30, f"error {mpmath.nstr(err, 3)}"
    return f"|zeta2_fast - pi^2/6| = {mpmath.nstr(err, 3)}"


def _check_even(ctx) -> str:
    got = [zeta_even_exact(k) for k in (2, 4, 6)]
    assert got == [Fraction(1, 6), Fraction(1, 90), Fraction(1, 945)], got
    return "1/6, 1/90, 1/945"


def _check_euler(ctx) -> str:
    t = ctx["tables"]
    r = reduce(QLinComb.single(MZVIndex((1, 2))), t)
    assert r == QLinComb.single(MZVIndex((3,))), str(r)
    return "zeta(1,2) -> zeta(3)"


def _check_dims(ctx) -> str:
    top = ctx["dims_max"]
    got = dims_upper_bound(top, 1, ctx["tables"])
    want = motivic_dims(top)
    assert got[2:] == want[2:], f"{got} vs {want}"
    return ",".join(map(str, got))


def _check_hoffman(ctx) -> str:
    want = motivic_dims(16)
    assert [hoffman_count(n) for n in range(17)] == want
    return "n <= 16"


def _check_products(ctx) -> str:
    rng = random.Random(7)
    for _ in range(25):
        u = Word(tuple(rng.choice((0, 1)) for _ in range(rng.randint(0, 3))))
        v = Word(tuple(rng.choice((0, 1)) for _ in range(rng.randint(0, 3))))
        assert shuffle(u, v) == shuffle(v, u)
        p = MZVIndex(tuple(rng.randint(1, 3) for _ in range(rng.randint(0, 2))))
        q = MZVIndex(tuple(rng.randint(1, 3) for _ in range(rng.randint(0, 2))))
        assert stuffle(p, q) == stuffle(q, p)
    return "commutativity on 25 random pairs"


def _check_relations(ctx) -> str:
    p = ctx["policy"]
    worst = mpmath.mpf(0)
    for w in range(4, ctx["audit_max"] + 1):
        for rel in generate_relations(w):
            worst = max(worst, abs(eval_linear(rel, p).mid))
    assert worst < mpmath.mpf(10) ** -25, mpmath.nstr(worst, 3)
    return f"max |relation| = {mpmath.nstr(worst, 3)}"


def _check_hoelder(ctx) -> str:
    p = ctx["policy"]
    worst = mpmath.mpf(0)
    n = 0
    for w in range(2, 6):
        for q in convergent_indexes(w):
            worst = max(worst, abs(eval_mzv(q, p).mid - mzv_reference(q.exponents)))
            n += 1
    assert worst < mpmath.mpf(10) ** -25, mpmath.nstr(worst, 3)
    return f"{n} indexes, max diff {mpmath.nstr(worst, 3)}"


def _check_assoc(ctx) -> str:
    z = associator(3, ctx["tables"])
    z2 = MZVIndex((2,))
    assert z["01"].terms == {((z2, 1),): 1} and z["10"].terms == {((z2, 1),): -1}
    return "weight-2 part zeta(2)[e0,e1]"


def _check_zigzag(ctx) -> str:
    got = [zigzag_coefficient(n) for n in (3, 4, 5)]
    assert got == [6, 20, Fraction(441, 8)], got
    return "6, 20, 441/8"


def _check_p35(ctx) -> str:
    v = p35(ctx["policy"], ctx["tables"])
    diff = mpmath.mpf(v.checks["path_difference"])
    assert diff < mpmath.mpf(10) ** -25
    return f"paths differ by {v.checks['path_difference']}"


def _check_eta(ctx) -> str:
    p = ctx["policy"]
    worst = max(abs(eta_funceq_residual(s, p).mid) for s in ("0.1", "0.3", "0.5", "0.7", "0.9"))
    assert worst < mpmath.mpf(10) ** -25, mpmath.nstr(worst, 3)
    return f"max residual {mpmath.nstr(worst, 3)}"


CHECKS: list[tuple[str, Callable, bool]] = [
    ("zeta(2) fast series", _check_zeta2, True),
    ("exact even zetas", _check_even, True),
    ("zeta(1,2) = zeta(3)", _check_euler, True),
    ("dimension bounds", _check_dims, True),
    ("Hoffman counts", _check_hoffman, True),
    ("shuffle/stuffle commute", _check_products, True),
    ("associator weight 2", _check_assoc, True),
    ("zig-zag coefficients", _check_zigzag, True),
    ("eta functional equation", _check_eta, True),
    ("split-path MZVs vs oracle", _check_hoelder, True),
    ("P35 two paths", _check_p35, False),
    ("relation audit", _check_relations, False),
]


def run_checks(quick: bool = True, tables: Mapping[int, ReductionTable] | None = None) -> list[CheckResult]:
    ctx = {
        "policy": PrecisionPolicy(30),
        "tables": tables if tables is not None else TableSet(1),
        "dims_max": 8 if quick else 10,
        "audit_max": 8,
    }
    out = []
    for name, fn, in_quick in CHECKS:
        if quick and not in_quick:
            continue
        t0 = time.perf_counter()
        try:
            detail = fn(ctx)
            ok = True
        except AssertionError as exc:
            detail, ok = f"FAILED: {exc}", False
        except Exception as exc:  # a crash is a failed check, not a crashed run
            detail, ok = f"ERROR: {type(exc).__name__}: {exc}", False
        out.append(CheckResult(name, ok, detail, time.perf_counter() - t0))
    return out


def format_table(results: list[CheckResult]) -> str:
    width = max(len(r.name) for r in results)
    lines = [f"{'check'.ljust(width)}  status  detail"]
    for r in results:
        lines.append(f"{r.name.ljust(width)}  {'pass' if r.passed else 'FAIL':6}  {r.detail}")
    return "\n".join(lines)
