import pytest

from eisen2 import arith, checks


def test_registry_shape():
    ids = checks.registry_ids()
    assert len(ids) == len(set(ids))
    for m in range(2, 13):
        assert f"RS-DE({m})" in ids
        assert f"KS-DE({m})" in ids
    for fixed in (
        "RAM-DE", "E6STAR-ABC", "HAHN-SYS", "SIGMA3-CLASSICAL", "T7", "T5",
        "L4", "T8", "C1", "T314", "C2", "MINORS-L1", "GARVAN", "DIS", "L5",
        "P4", "T49", "DELTA-FAMILY", "THETA-REL", "JACOBI", "T9", "R24-FACT",
        "T10", "C10", "DET-L2", "TAU-PROPS", "TABLE2",
    ):
        assert fixed in ids


def test_unknown_id():
    with pytest.raises(checks.UnknownTheoremId):
        checks.run_check("NOPE")
    with pytest.raises(checks.UnknownTheoremId):
        checks.resolve_ids("NOPE")


def test_resolve_families_and_aliases():
    assert checks.resolve_ids("KS-DE") == [f"KS-DE({m})" for m in range(2, 13)]
    assert checks.resolve_ids("T5") == ["T5"]
    assert checks.resolve_ids("DELTA-L2") == ["DIS"]
    assert checks.resolve_ids("all") == checks.registry_ids()


def test_single_check_report():
    report = checks.run_check("RAM-DE", order=16)
    assert report.status == "pass"
    assert report.first_discrepancy is None
    assert report.order == 16
    payload = report.to_json_dict()
    assert set(payload) == {"id", "order", "status", "first_discrepancy", "elapsed_ms"}


def test_all_pass_at_reduced_order():
    # identities hold at every truncation, so a small order still passes
    reports = checks.run_all(order=8, nmax=24, mmax=4)
    assert all(r.status == "pass" for r in reports)


def test_parallel_matches_sequential():
    seq = checks.run_all(order=12, nmax=16, mmax=3)
    par = checks.run_all(order=12, nmax=16, mmax=3, parallel=True)
    strip = lambda rs: [(r.id, r.order, r.status, r.first_discrepancy, r.notes) for r in rs]
    assert strip(seq) == strip(par)


def test_reports_deterministic():
    a = checks.run_all(order=12, nmax=16, mmax=3)
    b = checks.run_all(order=12, nmax=16, mmax=3)
    assert [r.line() for r in a] == [r.line() for r in b]


def test_table2_flags_differing_printed_cells():
    report = checks.run_check("TABLE2")
    assert report.status == "pass"
    joined = "\n".join(report.notes)
    assert "12/517" in joined and "17/512" in joined
    assert "33/32" in joined and "-27/4" in joined


def test_t5_index_one_by_hand():
    # sigma*_3(1) = 2*1*sigma*(1) - 4(sigma*(0)sigma*(1) + sigma*(1)sigma*(0))
    lhs = arith.sigma_star(3, 1)
    rhs = 2 * arith.sigma_star(1, 1) - 4 * (
        arith.sigma_star(1, 0) * arith.sigma_star(1, 1)
        + arith.sigma_star(1, 1) * arith.sigma_star(1, 0)
    )
    assert lhs == rhs == 1


def _corrupt_sigma_star(monkeypatch, s=3, n=5):
    real = arith.sigma_star

    def corrupted(ss, nn):
        value = real(ss, nn)
        if (ss, nn) == (s, n):
            return value + 1
        return value

    monkeypatch.setattr(arith, "sigma_star", corrupted)


@pytest.mark.parametrize("check_id", ["T5", "T314", "KS-DE(3)"])
def test_injected_corruption_localizes(monkeypatch, check_id):
    # an off-by-one in sigma*_3(5) must fail exactly these checks, with the
    # first discrepancy at the earliest affected index
    _corrupt_sigma_star(monkeypatch)
    report = checks.run_check(check_id, order=12, nmax=12)
    assert report.status == "fail"
    assert report.first_discrepancy[0] == 5


def test_injected_corruption_leaves_untouched_checks_green(monkeypatch):
    _corrupt_sigma_star(monkeypatch)
    # purely level-1 checks never consult the signed divisor sums
    assert checks.run_check("RAM-DE", order=12).status == "pass"
    assert checks.run_check("SIGMA3-CLASSICAL", nmax=12).status == "pass"


def test_failing_line_format(monkeypatch):
    _corrupt_sigma_star(monkeypatch)
    report = checks.run_check("T5", nmax=12)
    line = report.line()
    assert line.startswith("FAIL  T5")
    assert "n=5" in line
