import json

import pytest

from shefferzeta.exact import Poly
from shefferzeta.identities import (
    GF_PDE_IDS,
    REGISTRY,
    IdentityCheck,
    SequenceTable,
    UnknownCheckError,
    Verdict,
    all_pass,
    check_ids,
    run_all,
    run_check,
)
from shefferzeta.sheffer import gen_p


@pytest.fixture(scope="module")
def sweep10():
    return run_all(10)


def test_registry_covers_expected_ids():
    ids = set(check_ids())
    for needed in ["p_values", "eq1_18", "eq1_20", "eq1_21", "eq2_14", "eq2_15", "eq2_16", "eq2_17",
                   "eq2_22_vs_2_28", "eq2_29", "eq2_30", "eq2_31", "eq2_32", "eq2_33", "eq2_34", "eq2_36",
                   "eq2_38", "eq2_41", "thm1", "thm2", "thm3", "thm4", "corollary2", "eq3_11_3_13"]:
        assert needed in ids
    assert set(GF_PDE_IDS) <= ids
    assert len(ids) == len(check_ids())


def test_all_pass_to_10(sweep10):
    assert all_pass(sweep10)
    for r in sweep10:
        assert len(r.verdicts) == r.n_range[1] - r.n_range[0] + 1


@pytest.mark.parametrize("cid", ["eq2_31", "eq2_38", "thm4"])
def test_examples(cid):
    n = 4 if cid == "eq2_38" else 1
    r = run_check(cid, n)
    assert r.passed and r.substantive >= 1


def test_eq2_38_vacuous_below_three():
    r = run_check("eq2_38", 4)
    assert r.verdicts[:2] == ["vacuous", "vacuous"]
    assert r.verdicts[-1] == "pass"


def test_deterministic():
    a = "\n".join(r.dumps() for r in run_all(6))
    b = "\n".join(r.dumps() for r in run_all(6))
    assert a == b


def test_report_json_schema(sweep10):
    for r in sweep10:
        d = json.loads(r.dumps())
        assert set(d) == {"id", "n_range", "verdicts", "counterexample"}
        assert d["counterexample"] is None
        assert all(v in ("pass", "vacuous", "fail") for v in d["verdicts"])


def test_unknown_id():
    with pytest.raises(UnknownCheckError) as err:
        run_check("nosuch", 3)
    assert "unknown check" in str(err.value)
    with pytest.raises(UnknownCheckError):
        run_all(4, ids=["eq1_18", "nosuch"])


def test_bad_ranges():
    with pytest.raises(ValueError):
        run_all(0)
    with pytest.raises(ValueError):
        run_check("eq1_18", 0)


def test_empty_range_reported_as_skip():
    late = IdentityCheck("late", 7, lambda t, n: Verdict("pass", 1, 1), "starts at 7")
    reg = dict(REGISTRY, late=late)
    reports = run_all(4, ids=["eq1_18", "late"], registry=reg)
    skip = reports[-1]
    assert skip.id == "late" and skip.skipped and skip.verdicts == [] and skip.passed


def test_ids_subset_in_registry_order():
    reports = run_all(3, ids=["thm1", "eq1_18", "thm1"])
    assert [r.id for r in reports] == ["eq1_18", "thm1"]


def _mutated(k, delta):
    c = list(gen_p(5).coeffs)
    c[k] += delta
    return SequenceTable({5: Poly(c)})


@pytest.mark.parametrize("k,delta", [(1, 1), (2, -1), (3, 1), (4, -1), (5, 1)])
def test_mutation_of_p5_is_caught(k, delta):
    reports = run_all(8, table=_mutated(k, delta))
    failing = [r for r in reports if not r.passed]
    assert failing
    first = failing[0]
    assert first.counterexample is not None
    assert first.counterexample["n"] >= 4


def test_unmutated_table_passes():
    assert all_pass(run_all(8, table=SequenceTable()))
