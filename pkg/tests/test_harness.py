import math

import numpy as np
import pytest

from steklov import groups, harness
from steklov.harness import CheckResult, HanHuaConstants
from steklov.subgraph import FamilyKind, ShapeFamily

Z2, Z3 = groups.lattice(2), groups.lattice(3)
H3 = groups.heisenberg()
BALL = ShapeFamily(FamilyKind.BALL)


@pytest.fixture(scope="module")
def z2_ball_records():
    return harness.run_sweep(Z2, BALL, range(2, 13), 5)


def test_unit_ball_volumes():
    assert HanHuaConstants.for_order(2).omega_d == pytest.approx(math.pi)
    assert HanHuaConstants.for_order(3).omega_d == pytest.approx(4 * math.pi / 3)
    assert HanHuaConstants.for_order(4).omega_d == pytest.approx(math.pi**2 / 2)


def test_constants_closed_form():
    c = HanHuaConstants.for_order(2)
    assert c.c_bar == pytest.approx(1.0 / (512 * math.sqrt(math.pi)))
    assert c.c_prime == pytest.approx(1.0 / 64)


def test_han_hua_star_example():
    # single interior vertex in Z^2: sigma_1 = sigma_2 = 1
    c = HanHuaConstants.for_order(2)
    lhs = 1.0 / 1.0 + 1.0 / 1.0
    rhs = c.lower_bound(1)
    assert lhs == 2.0
    assert rhs == pytest.approx(1.0 / (512 * math.sqrt(math.pi)) - 1.0 / 64)
    assert rhs == pytest.approx(-0.0145, abs=2e-4)
    assert lhs >= rhs


def test_sweep_record_shape(z2_ball_records):
    records = z2_ball_records
    assert len(records) == 11
    bs = [r.size_boundary for r in records]
    assert bs == sorted(bs) and len(set(bs)) == len(bs)  # strictly increasing
    for r in records:
        assert len(r.sigmas) == 5
        assert all(s > 0 for s in r.sigmas)
        assert r.sigma0 == pytest.approx(0, abs=1e-9)
        assert r.hh_lhs is not None and r.hh_rhs is not None


def test_sweep_punctured_ball():
    records = harness.run_sweep(Z2, ShapeFamily(FamilyKind.PUNCTURED_BALL), range(2, 9), 3)
    assert len(records) == 7
    assert all(r.family == "punctured_ball" for r in records)


def test_sweep_heisenberg_normalization():
    records = harness.run_sweep(H3, BALL, range(2, 5), 3)
    d = 4
    for r in records:
        b_pow = r.size_boundary ** (1.0 / (d - 1))
        assert r.perrin_ratio == pytest.approx(r.sigmas[0] * b_pow)
        assert r.normalized_main[2] == pytest.approx(r.sigmas[2] * b_pow * 3 ** (-(d + 2) / d))
        assert r.hh_lhs is None and r.hh_rhs is None


def test_check_han_hua(z2_ball_records):
    results = harness.check_han_hua(z2_ball_records, HanHuaConstants.for_order(2), Z2)
    assert len(results) == 1
    assert results[0].verdict
    assert results[0].value >= 0


def test_check_han_hua_z3():
    records = harness.run_sweep(Z3, BALL, range(2, 7), 3)
    results = harness.check_han_hua(records, HanHuaConstants.for_order(3), Z3)
    assert results[0].verdict


def test_check_han_hua_scope():
    records = harness.run_sweep(H3, BALL, range(2, 4), 3)
    with pytest.raises(harness.CheckScopeError):
        harness.check_han_hua(records, HanHuaConstants.for_order(4), H3)


def test_check_decay():
    records = harness.run_sweep(Z2, BALL, range(3, 21), 1)
    results = harness.check_decay(records, 2)
    assert len(results) == 1
    assert results[0].k == 1
    assert results[0].threshold == pytest.approx(-0.85)
    assert results[0].verdict
    assert results[0].value <= -0.85


def test_check_decay_needs_records(z2_ball_records):
    with pytest.raises(ValueError):
        harness.check_decay(z2_ball_records[:4], 2)


def test_check_main_bound_singleton(z2_ball_records):
    results = harness.check_main_bound(z2_ball_records[:1])
    for k, res in enumerate(results, start=1):
        assert res.value == pytest.approx(z2_ball_records[0].normalized_main[k - 1])
        assert res.verdict  # singleton sup is trivially attained early


def test_check_main_bound_no_blowup_reported(z2_ball_records):
    results = harness.check_main_bound(z2_ball_records)
    assert all(np.isfinite(r.value) for r in results)


def test_spectrum_invariants_check(z2_ball_records):
    results = harness.check_spectrum_invariants(z2_ball_records)
    assert results[0].verdict and results[0].unconditional


def test_records_csv(z2_ball_records):
    csv = harness.records_to_csv(z2_ball_records)
    lines = csv.splitlines()
    assert lines[0] == harness.RECORDS_HEADER
    assert len(lines) == 1 + 11 * 5  # long format: one row per (n, k)
    assert csv == harness.records_to_csv(z2_ball_records)  # deterministic


def test_sweep_determinism():
    a = harness.run_sweep(Z2, BALL, range(2, 6), 3)
    b = harness.run_sweep(Z2, BALL, range(2, 6), 3)
    assert harness.records_to_csv(a) == harness.records_to_csv(b)


def test_checks_csv():
    checks = [CheckResult("decay", "ball", 1, -0.97, -0.85, True)]
    csv = harness.checks_to_csv(checks)
    assert csv.splitlines()[0] == harness.CHECKS_HEADER
    assert csv.splitlines()[1] == "decay,ball,1,-0.96999999999999997,-0.84999999999999998,PASS"


def test_emit_report(tmp_path, z2_ball_records):
    checks = harness.check_decay(z2_ball_records, 2)
    written = harness.emit_report(tmp_path, z2_ball_records, checks, 2)
    names = {p.name for p in written}
    assert names == {"records.csv", "checks.csv", "decay.svg"}
    svg = (tmp_path / "decay.svg").read_text(encoding="utf-8")
    assert sum(f">k={k}<" in svg for k in range(1, 6)) == 5  # one series per k


def test_emit_report_no_checks(tmp_path, z2_ball_records):
    written = harness.emit_report(tmp_path, z2_ball_records, [], 2)
    assert not (tmp_path / "checks.csv").exists()
    assert (tmp_path / "records.csv").exists()


def test_decreasing_endpoints(z2_ball_records):
    # sigma_k at the largest ball is below sigma_k at the smallest, k <= 3
    first, last = z2_ball_records[0], z2_ball_records[-1]
    for k in range(3):
        assert last.sigmas[k] < first.sigmas[k]
