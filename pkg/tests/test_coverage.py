import pytest

from crmaps.coverage import check_theorem_window, coverage_scan, explore_ranks
from crmaps.groups import gap_bound_n, invariant_rank_N, make_group
from crmaps.poly import rank


@pytest.mark.parametrize(
    "kind, p, window",
    [("seven", 7, (56, 71)), ("scalar", 2, (11, 15)), ("g1", 3, (13, 18))],
)
def test_window_examples(kind, p, window):
    rep = check_theorem_window(make_group(kind, p))
    assert rep.window == window
    assert rep.ok and not rep.holes
    assert sorted(rep.achieved) == list(range(window[0], window[1] + 1))
    for r, w in rep.achieved.items():
        assert rank(w.poly) == r and w.member


def test_seven_window_witnesses_follow_published_schedule():
    rep = check_theorem_window(make_group("seven", 7))
    assert rep.achieved[56].label == "f[-1,3]"
    assert rep.achieved[71].label == "f[4,6]"


@pytest.mark.parametrize("p", [5, 6, 7])
def test_scalar_window_needs_division_witnesses(p):
    rep = check_theorem_window(make_group("scalar", p))
    labels = {w.label.split("(")[0] for w in rep.achieved.values()}
    assert {"H", "top"} <= labels
    assert rep.ok


def test_coverage_scan_seven():
    rep = coverage_scan(make_group("seven", 7), 120)
    assert not rep.holes and rep.ok
    assert set(rep.increments) == {16}
    assert sorted(rep.achieved) == list(range(56, 121))


def test_coverage_scan_scalar():
    rep = coverage_scan(make_group("scalar", 2), 40)
    assert sorted(rep.achieved) == list(range(11, 41))
    assert set(rep.increments) == {5}


def test_coverage_scan_g1_p5():
    g = make_group("g1", 5)
    N, n = invariant_rank_N(g), gap_bound_n(g)
    assert (N, n) == (13, 28)
    rep = coverage_scan(g, n + 3 * (N - 1))
    assert rep.ok and set(rep.increments) == {N - 1}


def test_coverage_scan_rejects_low_bound():
    with pytest.raises(ValueError):
        coverage_scan(make_group("scalar", 2), 10)


def test_report_serialisation_carries_witness_polys():
    rep = check_theorem_window(make_group("g1", 3))
    data = rep.to_dict(include_polys=True)
    assert data["ok"] and data["window"] == [13, 18]
    assert all("poly" in w and w["rank"] == len(w["poly"]["terms"]) for w in data["witnesses"])


def test_explore_depth_zero():
    g = make_group("g1", 3)
    assert set(explore_ranks(g, 0).observed) == {invariant_rank_N(g)}


def test_explore_single_moves():
    ranks = set(explore_ranks(make_group("scalar", 2), 1).observed)
    assert {11, 12} <= ranks
    ranks = set(explore_ranks(make_group("seven", 7), 1).observed)
    assert {33, 34} <= ranks


def test_explore_is_deterministic():
    g = make_group("scalar", 3)
    a = explore_ranks(g, 2, beam=8).to_dict()
    b = explore_ranks(g, 2, beam=8).to_dict()
    assert a == b
