import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from consilium import (
    Ballot,
    BallotError,
    Profile,
    VoteResult,
    VotingError,
    borda_result,
    borda_scores,
    condorcet_result,
    condorcet_winner,
    copeland_scores,
    load_ballots,
    pairwise_matrix,
    tally,
)

import oracles
from conftest import make_profile, random_profile


# -- profile validation -------------------------------------------------------

def test_profile_rejects_zero_ballots():
    with pytest.raises(VotingError, match="no ballots"):
        Profile(("A", "B"), ())


def test_profile_rejects_duplicate_voter():
    with pytest.raises(VotingError, match="v1"):
        Profile(("A", "B"), (Ballot("v1", ("A", "B")), Ballot("v1", ("B", "A"))))


def test_profile_rejects_partial_ballot():
    with pytest.raises(BallotError, match="missing B"):
        Profile(("A", "B"), (Ballot("v1", ("A",)),))


def test_profile_rejects_unknown_alternative():
    with pytest.raises(BallotError, match="unknown Z"):
        Profile(("A", "B"), (Ballot("v1", ("A", "B", "Z")),))


def test_profile_rejects_tied_or_repeated_entries():
    with pytest.raises(BallotError, match="repeated A"):
        Profile(("A", "B"), (Ballot("v1", ("A", "A", "B")),))


# -- borda --------------------------------------------------------------------

def test_borda_single_ballot_point_scheme():
    # last place earns 1 point, second-to-last 2, first n
    p = make_profile(["A", "B", "C"], [["A", "B", "C"]])
    assert borda_scores(p) == {"A": 3, "B": 2, "C": 1}


def test_borda_two_voter_symmetry():
    p = make_profile(["A", "B"], [["A", "B"], ["B", "A"]])
    assert borda_scores(p) == {"A": 3, "B": 3}


def test_borda_matches_oracle_on_random_profiles():
    rng = random.Random(23)
    for _ in range(100):
        p = random_profile(rng, n_alts=4, n_voters=3)
        expected = oracles.borda_scores(
            list(p.alternatives), [list(b.ranking) for b in p.ballots]
        )
        assert borda_scores(p) == expected


def test_borda_result_unanimous():
    p = make_profile(["A", "B", "C"], [["A", "B", "C"]] * 3)
    r = borda_result(p)
    assert r.ranking.ordered == ("A", "B", "C")
    assert r.method == "borda"
    assert r.scores == {"A": 9, "B": 6, "C": 3}


def test_borda_can_elect_everyones_second_choice():
    # B is never first but wins on points: first choices split three ways
    p = make_profile(
        ["A", "B", "C", "D"],
        [["A", "B", "C", "D"], ["C", "B", "D", "A"], ["D", "B", "A", "C"]],
    )
    scores = borda_scores(p)
    expected = oracles.borda_scores(list(p.alternatives), [list(b.ranking) for b in p.ballots])
    assert scores == expected
    r = borda_result(p)
    assert r.ranking.ordered[0] == "B"
    assert all(b.ranking[0] != "B" for b in p.ballots)


def test_borda_tie_breaks_by_alternative_order():
    p = make_profile(["X", "Y"], [["X", "Y"], ["Y", "X"]])
    assert borda_result(p).ranking.ordered == ("X", "Y")
    p2 = make_profile(["Y", "X"], [["X", "Y"], ["Y", "X"]])
    assert borda_result(p2).ranking.ordered == ("Y", "X")


# -- pairwise / condorcet -------------------------------------------------------

def test_pairwise_single_ballot():
    p = make_profile(["A", "B", "C"], [["A", "B", "C"]])
    pw = pairwise_matrix(p)
    assert pw.wins_over("A", "B") == 1
    assert pw.wins_over("A", "C") == 1
    assert pw.wins_over("B", "C") == 1
    assert pw.wins_over("B", "A") == 0
    assert pw.wins.diagonal().tolist() == [0, 0, 0]


def test_pairwise_cyclic_profile():
    p = make_profile(
        ["A", "B", "C"], [["A", "B", "C"], ["B", "C", "A"], ["C", "A", "B"]]
    )
    pw = pairwise_matrix(p)
    assert pw.wins_over("A", "B") == 2
    assert pw.wins_over("B", "C") == 2
    assert pw.wins_over("C", "A") == 2


def test_pairwise_matches_oracle_and_complement():
    rng = random.Random(29)
    for _ in range(60):
        p = random_profile(rng, n_voters=7)
        pw = pairwise_matrix(p)
        expected = oracles.pairwise_wins(
            list(p.alternatives), [list(b.ranking) for b in p.ballots]
        )
        for a in p.alternatives:
            for b in p.alternatives:
                if a != b:
                    assert pw.wins_over(a, b) == expected[(a, b)]
                    assert pw.wins_over(a, b) + pw.wins_over(b, a) == p.voter_count


def test_condorcet_winner_unanimous():
    p = make_profile(["A", "B", "C"], [["A", "B", "C"]] * 5)
    assert condorcet_winner(pairwise_matrix(p)) == "A"


def test_condorcet_cycle_has_no_winner():
    p = make_profile(
        ["A", "B", "C"], [["A", "B", "C"], ["B", "C", "A"], ["C", "A", "B"]]
    )
    assert condorcet_winner(pairwise_matrix(p)) is None


def test_condorcet_tie_at_half_is_not_a_victory():
    # 2 voters split on A vs B: neither has a strict majority
    p = make_profile(["A", "B"], [["A", "B"], ["B", "A"]])
    assert condorcet_winner(pairwise_matrix(p)) is None


def test_condorcet_result_cycle_falls_back_to_session_order():
    p = make_profile(
        ["A", "B", "C"], [["A", "B", "C"], ["B", "C", "A"], ["C", "A", "B"]]
    )
    r = condorcet_result(p)
    assert r.has_condorcet_winner is False
    assert r.condorcet_winner is None
    assert r.scores == {"A": 0, "B": 0, "C": 0}
    assert borda_scores(p) == {"A": 6, "B": 6, "C": 6}
    assert r.ranking.ordered == ("A", "B", "C")


def test_condorcet_result_unanimous():
    p = make_profile(["B", "A"], [["A", "B"]] * 3)
    r = condorcet_result(p)
    assert r.ranking.ordered == ("A", "B")
    assert r.condorcet_winner == "A"
    assert r.has_condorcet_winner is True


def test_copeland_matches_oracle():
    rng = random.Random(31)
    for _ in range(80):
        p = random_profile(rng)
        got = copeland_scores(pairwise_matrix(p))
        expected = oracles.copeland_scores(
            list(p.alternatives), [list(b.ranking) for b in p.ballots]
        )
        assert got == expected


def test_copeland_ties_break_by_borda_then_order():
    # A and B both 2-0 against C/D but split against each other with 2 voters:
    # Copeland ties, Borda decides
    p = make_profile(
        ["A", "B", "C", "D"],
        [["A", "B", "C", "D"], ["B", "A", "D", "C"], ["A", "B", "D", "C"], ["B", "A", "C", "D"]],
    )
    r = condorcet_result(p)
    cope = r.scores
    assert cope["A"] == cope["B"]
    borda = borda_scores(p)
    assert borda["A"] == borda["B"]
    # full tie: session order decides
    assert r.ranking.ordered.index("A") < r.ranking.ordered.index("B")


def test_winner_heads_condorcet_ranking():
    rng = random.Random(37)
    seen_winner = 0
    for _ in range(200):
        p = random_profile(rng)
        r = condorcet_result(p)
        if r.has_condorcet_winner:
            seen_winner += 1
            assert r.ranking.ordered[0] == r.condorcet_winner
    assert seen_winner > 50


# -- serialization ---------------------------------------------------------------

def test_vote_result_doc_round_trip():
    p = make_profile(["A", "B", "C"], [["A", "B", "C"], ["A", "C", "B"]])
    for method in ("borda", "condorcet"):
        r = tally(p, method)
        assert VoteResult.from_doc(r.to_doc()) == r


def test_tally_rejects_unknown_method():
    p = make_profile(["A", "B"], [["A", "B"]])
    with pytest.raises(VotingError, match="unknown"):
        tally(p, "schulze")


def test_load_ballots_round_trip():
    text = """
    {"voters": [{"id": "dm1", "ranking": ["A", "B"]},
                {"id": "dm2", "ranking": ["B", "A"]}]}
    """
    p = load_ballots(text)
    assert p.alternatives == ("A", "B")
    assert p.ballots[1].voter == "dm2"


def test_load_ballots_honors_alternatives_field():
    text = '{"alternatives": ["B", "A"], "voters": [{"id": "v", "ranking": ["A", "B"]}]}'
    assert load_ballots(text).alternatives == ("B", "A")


def test_load_ballots_rejects_garbage():
    from consilium import ParseError

    with pytest.raises(ParseError):
        load_ballots("{nope")
    with pytest.raises(ParseError):
        load_ballots('{"voters": [{"id": "v"}]}')
    with pytest.raises(VotingError):
        load_ballots('{"voters": []}')


# -- properties ------------------------------------------------------------------

profiles = st.integers(2, 6).flatmap(
    lambda n: st.lists(
        st.permutations([f"a{i}" for i in range(n)]), min_size=1, max_size=7
    ).map(lambda rankings: make_profile([f"a{i}" for i in range(n)], rankings))
)


@given(profiles)
@settings(max_examples=150)
def test_borda_total_points_conservation(p):
    n = len(p.alternatives)
    assert sum(borda_scores(p).values()) == p.voter_count * n * (n + 1) // 2


@given(profiles)
@settings(max_examples=150)
def test_pairwise_complement_invariant(p):
    pw = pairwise_matrix(p)
    for a in p.alternatives:
        for b in p.alternatives:
            if a != b:
                assert pw.wins_over(a, b) + pw.wins_over(b, a) == p.voter_count


@given(profiles)
@settings(max_examples=150)
def test_at_most_one_strict_majority_dominator(p):
    pw = pairwise_matrix(p)
    dominators = [
        a
        for a in p.alternatives
        if all(
            2 * pw.wins_over(a, b) > p.voter_count for b in p.alternatives if b != a
        )
    ]
    assert len(dominators) <= 1
    assert condorcet_winner(pw) == (dominators[0] if dominators else None)


@given(st.integers(2, 6), st.sampled_from([1, 3, 5]), st.randoms(use_true_random=False))
@settings(max_examples=80)
def test_unanimity_both_methods(n, v, rng):
    alts = [f"a{i}" for i in range(n)]
    common = alts[:]
    rng.shuffle(common)
    p = make_profile(alts, [common] * v)
    assert borda_result(p).ranking.ordered == tuple(common)
    r = condorcet_result(p)
    assert r.ranking.ordered == tuple(common)
    assert r.condorcet_winner == common[0]


@given(profiles, st.randoms(use_true_random=False))
@settings(max_examples=80)
def test_neutrality_up_to_relabeling(p, rng):
    # permute alternative names everywhere; results must permute identically
    names = list(p.alternatives)
    shuffled = names[:]
    rng.shuffle(shuffled)
    relabel = dict(zip(names, shuffled))
    q = make_profile(
        [relabel[a] for a in p.alternatives],
        [[relabel[a] for a in b.ranking] for b in p.ballots],
    )
    for method in ("borda", "condorcet"):
        r_orig = tally(p, method)
        r_rel = tally(q, method)
        assert tuple(relabel[a] for a in r_orig.ranking.ordered) == r_rel.ranking.ordered
        assert {relabel[a]: s for a, s in r_orig.scores.items()} == r_rel.scores
        if method == "condorcet":
            assert r_rel.condorcet_winner == (
                relabel[r_orig.condorcet_winner] if r_orig.condorcet_winner else None
            )


@given(profiles, st.randoms(use_true_random=False))
@settings(max_examples=100)
def test_adjacent_swap_moves_borda_score_by_one(p, rng):
    ballot_idx = rng.randrange(len(p.ballots))
    target = list(p.ballots[ballot_idx].ranking)
    pos = rng.randrange(len(target) - 1)
    favored, displaced = target[pos + 1], target[pos]
    before = borda_scores(p)
    target[pos], target[pos + 1] = target[pos + 1], target[pos]
    rankings = [list(b.ranking) for b in p.ballots]
    rankings[ballot_idx] = target
    after = borda_scores(make_profile(list(p.alternatives), rankings))
    assert after[favored] == before[favored] + 1
    assert after[displaced] == before[displaced] - 1
    untouched = set(p.alternatives) - {favored, displaced}
    assert all(after[a] == before[a] for a in untouched)
