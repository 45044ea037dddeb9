import json
from fractions import Fraction

import pytest

from qeuclid.calculus import standard_lambdas
from qeuclid.checks import SUITES, check_names, run_suite
from qeuclid.rmatrix import frt_rhat
from qeuclid.scalars import QS


@pytest.fixture(scope="module")
def symbolic():
    return run_suite("all")


def corrupted_rhat():
    R = [row[:] for row in frt_rhat(QS)]
    R[4][4] = R[4][4] + 1
    return R


def corrupted_lambdas():
    lam = list(standard_lambdas(QS))
    lam[1] = lam[1].scale(QS.q)
    return lam


def test_all_pass(symbolic):
    failed = [(c.name, c.detail) for c in symbolic.checks if c.status == "fail"]
    assert failed == []
    assert symbolic.exit_code == 0


def test_sorted_and_prefixed(symbolic):
    names = [c.name for c in symbolic.checks]
    assert names == sorted(names)
    assert "connection.curvature_vanishes_plus" in names
    assert len(names) == sum(len(check_names(s)) for s in SUITES)


def test_json_schema(symbolic):
    data = json.loads(symbolic.to_json())
    assert set(data) == {"suite", "mode", "checks", "summary"}
    assert data["mode"] == "symbolic"
    assert data["summary"] == {"total": len(data["checks"]), "failed": 0}
    for entry in data["checks"]:
        assert set(entry) == {"name", "status", "detail", "ms"}
        assert entry["status"] in ("pass", "fail")
        assert isinstance(entry["ms"], (int, float))


def test_text_report(symbolic):
    text = symbolic.to_text()
    assert text.splitlines()[0] == "suite all (symbolic)"
    assert text.endswith(f"{len(symbolic.checks)} checks, 0 failed")


@pytest.mark.parametrize("suite", SUITES)
def test_single_suite_names(suite):
    report = run_suite(suite)
    assert [c.name for c in report.checks] == sorted(check_names(suite))
    assert report.failed == 0


def test_connection_suite_has_curvature():
    report = run_suite("connection")
    assert report.status_map()["curvature_vanishes_plus"] == "pass"


@pytest.mark.parametrize("s0", [Fraction(3, 2), Fraction(2)])
def test_numeric_shadow(symbolic, s0):
    report = run_suite("all", s0=s0)
    assert report.mode == f"numeric s={s0}"
    assert report.status_map() == symbolic.status_map()


def test_poles_at_one():
    report = run_suite("all", s0=Fraction(1))
    status = report.status_map()
    assert status["rmatrix.braid_equation"] == "pass"
    assert status["rmatrix.cubic_identity"] == "pass"
    poles = [c for c in report.checks if "pole at" in c.detail and not c.name.startswith("scalars.")]
    assert poles and all(c.status == "fail" for c in poles)
    assert status["calculus.lambda_derivations"] == "fail"
    # pole-free identities still hold in the classical limit
    assert status["calculus.frame_inverse"] == "pass"
    assert status["calculus.rtt_relations"] == "pass"
    # the two conformal factors q^2 and q^-2 coincide at q = 1
    assert status["connection.compat_factors"] == "fail"


def test_seed_is_deterministic():
    a = run_suite("algebra", seed=7).status_map()
    b = run_suite("algebra", seed=7).status_map()
    assert a == b


def test_unknown_suite():
    with pytest.raises(ValueError, match="unknown suite"):
        run_suite("geometry")


def test_corrupted_rhat_fails_with_detail():
    report = run_suite("rmatrix", rhat=corrupted_rhat())
    by_name = {c.name: c for c in report.checks}
    assert by_name["braid_equation"].status == "fail"
    assert "braid defect at 27x27 entry" in by_name["braid_equation"].detail
    assert "cubic defect nonzero at" in by_name["cubic_identity"].detail
    assert report.exit_code == 1


def test_corrupted_rhat_numeric():
    report = run_suite("rmatrix", s0=Fraction(3, 2), rhat=corrupted_rhat())
    assert report.status_map()["braid_equation"] == "fail"


def test_corrupted_lambda_fails_with_detail():
    report = run_suite("calculus", lambdas=corrupted_lambdas())
    by_name = {c.name: c for c in report.checks}
    assert by_name["lambda_derivations"].status == "fail"
    assert "[lambda_0, x^0]" in by_name["lambda_derivations"].detail
    assert by_name["dirac_equals_minus_lambda_theta"].status == "fail"
    assert "theta component 0" in by_name["dirac_equals_minus_lambda_theta"].detail
