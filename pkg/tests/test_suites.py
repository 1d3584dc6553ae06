import pytest

from services.suites import SUITES, list_suites, run_suite, suite
from utils.errors import UnknownSuite


@pytest.mark.parametrize("suite_id", sorted(SUITES))
def test_suite_passes_on_a_few_cases(suite_id, loader):
    report = run_suite(suite_id, seed=0, cases=4, loader=loader)
    assert report.violations == []
    assert report.budget_status == "complete"
    assert report.cases_run == 4
    assert report.result == SUITES[suite_id].result


@pytest.mark.slow
@pytest.mark.parametrize("suite_id", sorted(SUITES))
def test_suite_passes_at_full_size(suite_id, loader):
    report = run_suite(suite_id, seed=0, cases=200, loader=loader)
    assert report.violations == []
    assert report.budget_status == "complete"
    assert report.cases_run == 200


def test_frattini_product_suite_accepts_mu_with_a_lower_frattini_tip(loader):
    # case 20 of seed 0 draws mu over S3 whose Frattini L-subgroup sits below mu at e
    report = run_suite("fgn_frat", seed=0, case=20, loader=loader)
    assert report.violations == []


def test_listing_matches_registry():
    listing = list_suites()
    assert [s.suite_id for s in listing.suites] == list(SUITES)
    assert len(listing.suites) == 33
    assert listing.to_json().startswith("{")


def test_runs_are_deterministic(loader):
    first = run_suite("lev_gp", seed=11, cases=6, loader=loader)
    again = run_suite("lev_gp", seed=11, cases=6, threads=3, loader=loader)
    assert first.cases_checked == again.cases_checked
    assert first.violations == again.violations


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite("no_such_suite")


def test_violations_carry_replay_commands(loader):
    @suite("always_fails", "Control", "every drawn lattice claims to be a chain")
    def always_fails(ctx):
        lattice = ctx.pool.lattice(ctx.rng, "distributive")
        ctx.expect("lattice is a chain", lattice.name == "never", lattice=lattice)

    try:
        report = run_suite("always_fails", seed=3, cases=2, loader=loader)
        assert [v.case for v in report.violations] == [0, 1]
        assert report.violations[1].inputs["replay"] == "verify always_fails --seed 3 --case 1"
        replay = run_suite("always_fails", seed=3, case=1, loader=loader)
        assert replay.violations[0].inputs == report.violations[1].inputs
        assert not replay.passed
    finally:
        SUITES.pop("always_fails", None)


def test_skipped_cases_are_not_checked(loader):
    @suite("always_skips", "Control", "hypotheses never hold")
    def always_skips(ctx):
        ctx.skip("never applicable")

    try:
        report = run_suite("always_skips", seed=0, cases=3, loader=loader)
        assert report.cases_run == 3
        assert report.cases_checked == 0
        assert report.passed
    finally:
        SUITES.pop("always_skips", None)
