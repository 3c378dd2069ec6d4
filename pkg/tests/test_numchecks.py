import json

import mpmath
import pytest

from shefferzeta import numchecks
from shefferzeta.numchecks import (
    DOUBLE_TOL,
    NUMERIC_REGISTRY,
    SINGLE_TOL,
    NumericCheck,
    UnknownNumericCheckError,
    numeric_ids,
    run_numeric,
    verify_numeric,
)
from shefferzeta.numeric import QuadratureError, const_catalan, const_zeta_odd, moment_I

FAST = ["eq1_27", "eq3_4", "eq3_5", "eq3_7", "eq3_8", "eq3_9", "moment_values", "eq3_1"]


@pytest.fixture(scope="module")
def fast_results():
    return run_numeric(FAST)


def test_registry_ids():
    ids = numeric_ids()
    for needed in ["eq1_25", "eq1_27", "eq1_28", "eq3_1", "eq3_2", "eq3_4", "eq3_5",
                   "eq3_7", "eq3_8", "eq3_9", "thm5"]:
        assert needed in ids
    assert NUMERIC_REGISTRY["eq1_28"].tol == DOUBLE_TOL
    assert NUMERIC_REGISTRY["eq3_7"].tol == SINGLE_TOL


def test_single_integral_checks_pass(fast_results):
    assert fast_results
    for r in fast_results:
        assert r.passed, r.dumps()
        assert r.rel_diff <= r.tol
    # single integrals land far inside the tolerance
    for r in fast_results:
        if r.id in ("eq3_7", "eq3_9", "eq1_27"):
            assert r.rel_diff < mpmath.mpf(10) ** -25, r.dumps()


@pytest.mark.parametrize("params", NUMERIC_REGISTRY["eq3_2"].default_params)
def test_eq3_2_real_order_bessel(params):
    r = verify_numeric("eq3_2", params)
    assert r.passed, r.dumps()


def test_eq1_25_imaginary_order():
    r = verify_numeric("eq1_25", {"n": 1, "tau": 0.5})
    assert r.passed, r.dumps()


def test_zeta3_from_moment_against_series_oracle():
    # (7/2) zeta(3) = 2 pi G - I_2, with G and zeta(3) from the alternating series
    with mpmath.workdps(40):
        g = const_catalan(30).value
        i2 = moment_I(2, 30).value
        z3 = (2 * mpmath.pi * g - i2) * 2 / 7
        assert abs(z3 - const_zeta_odd(0, 30).value) < mpmath.mpf(10) ** -28


def test_thm5_printed_sign_probe_fails():
    r = verify_numeric("thm5", {"alpha": 3.5, "sign": "printed"}, asserted=False)
    assert not r.passed and not r.asserted
    assert abs(r.rel_diff - 2) < 1e-6


def test_json_schema(fast_results):
    keys = {"id", "params", "lhs", "rhs", "abs_diff", "rel_diff", "pass", "asserted", "prec", "tol", "error"}
    for r in fast_results:
        d = json.loads(r.dumps())
        assert set(d) == keys
        assert d["pass"] is True and d["error"] is None
        assert d["prec"] == 30
        # values carry the requested number of significant digits
        assert len(d["lhs"].replace("-", "").replace(".", "").lstrip("0")) >= 25


def test_deterministic():
    a = [r.dumps() for r in run_numeric(["eq3_7", "eq3_9"])]
    b = [r.dumps() for r in run_numeric(["eq3_7", "eq3_9"])]
    assert a == b


def test_unknown_id():
    with pytest.raises(UnknownNumericCheckError) as err:
        verify_numeric("nosuch")
    assert str(err.value) == "unknown check: nosuch"
    with pytest.raises(UnknownNumericCheckError):
        run_numeric(["eq3_7", "nosuch"])


def test_precision_floor():
    with pytest.raises(ValueError):
        verify_numeric("eq3_7", prec=10)


def test_tol_override_can_fail():
    # below the working precision nothing can pass
    r = verify_numeric("eq3_7", {"n": 1}, tol=1e-60)
    assert not r.passed and r.error is None


def test_higher_precision_tightens():
    low = verify_numeric("eq3_9", {"n": 1}, prec=20)
    high = verify_numeric("eq3_9", {"n": 1}, prec=40)
    assert low.passed and high.passed
    assert high.rel_diff < mpmath.mpf(10) ** -35


def test_quadrature_error_becomes_failure(monkeypatch):
    def boom(prec, tol):
        raise QuadratureError("no convergence")

    reg = dict(NUMERIC_REGISTRY, boom=NumericCheck("boom", boom, ({},), SINGLE_TOL, "always fails"))
    monkeypatch.setattr(numchecks, "NUMERIC_REGISTRY", reg)
    r = verify_numeric("boom")
    assert not r.passed and r.lhs is None
    assert "no convergence" in json.loads(r.dumps())["error"]


def test_probes_are_reported_but_not_asserted():
    results = run_numeric(["moment_values"], probes=True)
    assert all(r.asserted for r in results)
    assert len(results) == len(NUMERIC_REGISTRY["moment_values"].default_params)
