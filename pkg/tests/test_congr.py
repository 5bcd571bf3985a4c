import pytest

from telesum import congr


def test_case_ids_registered():
    expected = {
        "T1.1-n", "T1.1-p", "T1.2-odd", "T1.2-p", "T1.3-odd",
        "T1.4-n", "T1.4-p", "C1.5-n", "C1.5-p", "T1.6-int", "T1.6-p",
        "T1.7i-n", "T1.7i-p", "T1.7ii-n", "T1.7ii-p", "T1.7iii-n", "T1.7iii-p",
        "CONJ-1.18", "LEM-5.1", "LEM-6.2", "GZ-1.9", "SUN-22",
    }
    assert set(congr.CASES) == expected


def test_franel_quadratic_divisibility_small():
    rep = congr.run_case("T1.1-n", max_n=60)
    assert rep.ok and rep.checked == 59


def test_franel_quadratic_prime_case_anchor():
    # at p = 3 both sides reduce to 27 mod 81 (sum 432 vs 54 - 432)
    rep = congr.run_case("T1.1-p", max_p=3)
    assert rep.ok
    rec = rep.records[0]
    assert rec.instance == "p=3"
    assert rec.lhs_mod == rec.rhs_mod == "27"
    assert rec.modulus == "81"


def test_odd_integer_case_small_instance():
    # S_2/4 = -5, an odd integer
    rep = congr.run_case("T1.2-odd", max_n=2)
    assert rep.ok
    assert rep.records[-1].instance == "n=2"


def test_prime_two_instance():
    rep = congr.run_case("T1.2-p", max_p=2)
    assert rep.ok and rep.checked == 1
    rec = rep.records[0]
    assert rec.lhs_mod == rec.rhs_mod == "4" and rec.modulus == "8"


def test_empty_range():
    rep = congr.run_case("T1.1-n", max_n=1)  # domain starts at n = 2
    assert rep.checked == 0 and rep.ok


def test_range_guard_refusal():
    with pytest.raises(congr.RangeGuard):
        congr.run_case("T1.1-n", max_n=100000)
    with pytest.raises(congr.RangeGuard):
        congr.run_case("CONJ-1.18", max_p=101)


def test_unknown_case():
    with pytest.raises(KeyError):
        congr.run_case("NOPE")


def test_conjecture_case_is_flagged():
    assert congr.CASES["CONJ-1.18"].conjecture
    rep = congr.run_case("CONJ-1.18", max_p=11)
    assert rep.ok and rep.checked == 2  # p = 7, 11


def test_conjecture_failures_reported_distinctly(monkeypatch):
    # force a mismatch to observe the status label
    case = congr.CASES["CONJ-1.18"]
    monkeypatch.setitem(
        congr.CASES,
        "CONJ-1.18",
        type(case)(
            id=case.id, kind=case.kind, description=case.description,
            full=case.full, guard=case.guard, instances=case.instances,
            check=lambda inst: (False, "0", "1", "2"),
            problem=None, conjecture=True,
        ),
    )
    rep = congr.run_case("CONJ-1.18", max_p=7)
    assert not rep.ok
    assert rep.records[0].status == "conjecture-fail"


def test_parity_characterization_both_directions():
    rep = congr.run_case("T1.6-int", max_n=40)
    assert rep.ok
    # powers of two in range present and odd; a non-power even
    by_instance = {r.instance: r for r in rep.records}
    assert by_instance["n=32"].status == "pass"
    assert by_instance["n=32"].rhs_mod != by_instance["n=33"].rhs_mod


def test_divisibility_quotient_is_exact():
    # lhs_mod must be the true remainder, i.e. "0" on passes
    rep = congr.run_case("T1.7iii-n", max_n=12)
    assert rep.ok
    assert all(r.lhs_mod == "0" for r in rep.records)


def test_trinomial_sweep_includes_degenerate_parameters():
    rep = congr.run_case("T1.4-n", max_n=6)
    assert rep.ok
    insts = {r.instance for r in rep.records}
    assert "b=2,c=1,n=3" in insts   # b = 2c: 0^0 convention
    assert "b=-2,c=1,n=3" in insts  # b = -2c: no certificate branch
    assert "b=0,c=0,n=2" in insts


def test_trinomial_prime_side_condition():
    rep = congr.run_case("T1.4-p", max_p=5)
    assert rep.ok
    insts = {r.instance for r in rep.records}
    assert "b=1,c=1,p=5" in insts
    assert "b=5,c=1,p=5" not in insts  # p | b
    assert all("b=2,c=1" not in i for i in insts)  # b = 2c excluded everywhere


def test_report_determinism():
    a = congr.run_case("GZ-1.9", max_n=30)
    b = congr.run_case("GZ-1.9", max_n=30)
    assert a.records == b.records


def test_quick_profile_clips_ranges():
    case = congr.CASES["T1.1-n"]
    eff = congr._effective_bounds(case, "quick")
    assert eff.max_n == congr.QUICK_MAX_N
    eff = congr._effective_bounds(congr.CASES["T1.1-p"], "quick")
    assert eff.max_p == congr.QUICK_MAX_P
    with pytest.raises(ValueError):
        congr._effective_bounds(case, "bogus")


def test_lemma_parity_case():
    rep = congr.run_case("LEM-5.1", max_n=512)
    assert rep.ok and rep.checked == 512
