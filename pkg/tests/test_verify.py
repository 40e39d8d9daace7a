"""Verification checks at reduced scope, plus the reporting machinery."""

import json
from fractions import Fraction

import pytest

from penta.arith import CertifiedInterval, Verdict
from penta.verify import (
    CHECKS,
    _Recorder,
    c_coefficients,
    check_bigger_n,
    check_bigger_r,
    check_bounds_m_and_sum,
    check_bounds_mij,
    check_compute_n_segments,
    check_compute_r,
    check_generic_ci,
    check_inductive,
    check_lower_bound,
    check_main_estimate,
    check_mij_and_mu,
    check_positive_expression,
    check_stepwise_n,
    format_number,
    run_check,
)

SMALL_SCOPES = [
    (check_bigger_r, dict(max_parts=3, max_entry=3, max_dc=5)),
    (check_compute_r, dict(max_total=9, d_max=9)),
    (check_mij_and_mu, dict(d_max=7)),
    (check_lower_bound, dict(i_max=9)),
    (check_positive_expression, dict(i_max=6, j_max=4)),
    (check_bounds_mij, dict(i_max=8, j_max=4)),
    (check_inductive, dict(i_max=8, j_max=4)),
    (check_bounds_m_and_sum, dict(i_max=9)),
    (check_bigger_n, dict(max_parts=3, max_entry=3, max_dc=5, r_max=12)),
    (check_generic_ci, dict(max_total=8, r_max=10)),
    (check_stepwise_n, dict(degrees=(8,), collapse_max=7)),
    (check_compute_n_segments, dict(d_min=8, d_max=10)),
    (check_main_estimate, dict(d_max=10)),
]


@pytest.mark.parametrize("check, scope", SMALL_SCOPES, ids=lambda x: getattr(x, "__name__", ""))
def test_check_verifies_at_small_scope(check, scope):
    report = check(**scope)
    assert report.status is Verdict.VERIFIED, report.witnesses
    assert report.instances > 0


def test_every_check_is_registered():
    assert {c.__name__[len("check_"):] for c, _ in SMALL_SCOPES} == set(CHECKS)


def test_run_check_rejects_unknown_id():
    with pytest.raises(KeyError):
        run_check("no_such_check")


def test_report_json_round_trip():
    report = check_lower_bound(8)
    data = json.loads(json.dumps(report.to_json()))
    assert data["status"] == "VERIFIED" and data["check_id"] == "lower_bound"
    assert "lower_bound" in report.summary_line()


def test_recorder_reports_failure_with_witness():
    rec = _Recorder("demo", "toy")
    rec.exact(True, "fine", margin=3)
    rec.exact(False, "broken", detail="1 > 2")
    report = rec.report()
    assert report.status is Verdict.FAILED
    assert report.witnesses == ["broken: 1 > 2"]


def test_recorder_certified_failure():
    rec = _Recorder("demo", "toy", precision=64)
    one = lambda p: CertifiedInterval.exact(Fraction(1), p)
    two = lambda p: CertifiedInterval.exact(Fraction(2), p)
    assert not rec.certified(lambda p: (two(p), one(p)), "2 < 1")
    assert rec.report().status is Verdict.FAILED


def test_c_coefficients_are_below_one():
    table = c_coefficients(9, 4)
    assert all(iv.hi <= 1 for iv in table.values())


def test_format_number():
    assert format_number(Fraction(1, 3), 4) == "0.3333"
