"""Unit tests for alphabets, transition systems, DFA algebra, omega
membership, and the emptiness/inclusion engines."""

import pytest

from omega_fdfa import (
    Alphabet,
    AlphabetError,
    AutomatonError,
    BUCHI,
    COBUCHI,
    DetOmega,
    DetTS,
    Dfa,
    Lasso,
    Nba,
    UpWord,
    dfa_lang_equal,
    dfa_minimize,
    dfa_product,
    gen_fig1,
    gen_random_dba,
    member_upword_det,
    member_upword_nba,
    nba_dba_included,
    nba_dba_intersection_witness,
    nba_nba_intersection_witness,
    run_word,
)
from omega_fdfa.core_automata import (
    canonical_dfa,
    dba_state_equiv,
    det_to_nba,
    dfa_isomorphic,
    one_pair_rabin_empty,
    sccs,
    shortest_state_words,
)

from oracles import naive_member, words_upto

AB = Alphabet(("a", "b"))


def up(u, v):
    return UpWord(AB.parse_word(u), AB.parse_word(v))


# --------------------------------------------------------------------------
# alphabets and words

def test_alphabet_single_char_round_trip():
    assert AB.parse_word("abba") == (0, 1, 1, 0)
    assert AB.format_word((0, 1, 1, 0)) == "abba"
    assert AB.parse_word("") == ()
    assert AB.format_word(()) == ""


def test_alphabet_multi_char_round_trip():
    alpha = Alphabet(("req", "ack"))
    assert alpha.parse_word("req.ack.req") == (0, 1, 0)
    assert alpha.format_word((0, 1, 0)) == "req.ack.req"


def test_alphabet_rejects_duplicates_and_unknown_letters():
    with pytest.raises(AlphabetError):
        Alphabet(("a", "a"))
    with pytest.raises(AlphabetError):
        AB.parse_word("ac")


def test_upword_requires_nonempty_period():
    with pytest.raises(AutomatonError):
        UpWord((), ())


def test_lasso_to_upword():
    assert Lasso((0,), (1, 0)).upword() == up("a", "ba")


# --------------------------------------------------------------------------
# transition systems and DFAs

def test_run_word_follows_table():
    d = gen_fig1()
    assert run_word(d.ts, 0, ()) == 0
    assert run_word(d.ts, 0, (0,)) == 1
    assert run_word(d.ts, 0, (0, 0)) == 2
    assert run_word(d.ts, 0, (0, 1, 1)) == 3
    assert run_word(d.ts, 0, (1,)) == 4


def test_run_word_rejects_bad_letter():
    d = gen_fig1()
    with pytest.raises(AlphabetError):
        run_word(d.ts, 0, (7,))


def _dfa_suffix_a():
    # words ending in a
    ts = DetTS(AB, 2, 0, ((1, 0), (1, 0)))
    return Dfa(ts, frozenset([1]))


def _dfa_even_length():
    ts = DetTS(AB, 2, 0, ((1, 1), (0, 0)))
    return Dfa(ts, frozenset([0]))


def test_dfa_product_rules():
    a, b = _dfa_suffix_a(), _dfa_even_length()
    both = dfa_product(a, b, lambda x, y: x and y)
    either = dfa_product(a, b, lambda x, y: x or y)
    for w in words_upto(2, 6):
        assert both.accepts(w) == (a.accepts(w) and b.accepts(w))
        assert either.accepts(w) == (a.accepts(w) or b.accepts(w))


def test_dfa_minimize_preserves_language_and_is_minimal():
    # a 5-state DFA with duplicated states for "ends in a"
    ts = DetTS(AB, 5, 0, ((1, 2), (3, 2), (1, 4), (3, 4), (1, 2)))
    bloated = Dfa(ts, frozenset([1, 3]))
    small = dfa_minimize(bloated)
    assert small.ts.state_count == 2
    assert dfa_lang_equal(small, bloated)
    assert dfa_lang_equal(small, _dfa_suffix_a())
    again = dfa_minimize(small)
    assert again.ts.state_count == small.ts.state_count


def test_dfa_minimize_empty_and_universal():
    empty = dfa_minimize(Dfa(DetTS(AB, 3, 0, ((1, 2), (2, 1), (0, 0))),
                             frozenset()))
    assert empty.ts.state_count == 1 and not empty.finals
    universal = dfa_minimize(Dfa(DetTS(AB, 2, 0, ((1, 1), (0, 0))),
                                 frozenset([0, 1])))
    assert universal.ts.state_count == 1 and len(universal.finals) == 1


def test_canonical_dfa_and_isomorphism():
    a = _dfa_suffix_a()
    # same language, states renumbered
    ts = DetTS(AB, 2, 1, ((0, 1), (0, 1)))
    b = Dfa(ts, frozenset([0]))
    assert dfa_isomorphic(a, b)
    assert canonical_dfa(a).ts.initial == 0
    assert not dfa_isomorphic(a, _dfa_even_length())


def test_dfa_lang_equal_detects_difference():
    assert dfa_lang_equal(_dfa_suffix_a(), _dfa_suffix_a())
    assert not dfa_lang_equal(_dfa_suffix_a(), _dfa_even_length())


def test_shortest_state_words_fig1():
    d = gen_fig1()
    words = shortest_state_words(d.ts)
    assert words == {0: (), 1: (0,), 2: (0, 0), 3: (0, 1), 4: (1,)}


# --------------------------------------------------------------------------
# omega membership

def test_member_fig1_pinned():
    d = gen_fig1()
    assert member_upword_det(d, up("", "a"))
    assert member_upword_det(d, up("a", "b"))
    assert member_upword_det(d, up("aaa", "a"))
    assert not member_upword_det(d, up("", "ab"))
    assert not member_upword_det(d, up("", "b"))
    assert not member_upword_det(d, up("aa", "b"))


def test_member_cobuchi_polarity():
    d = gen_fig1()
    flipped = DetOmega(d.ts, d.acc, COBUCHI)
    for u in words_upto(2, 3):
        for v in words_upto(2, 3):
            if v:
                w = UpWord(u, v)
                assert member_upword_det(flipped, w) != member_upword_det(d, w)


def test_member_matches_naive_oracle_on_random_dbas():
    for seed in range(12):
        d = gen_random_dba(seed, 4, 2)
        for u in words_upto(2, 3):
            for v in words_upto(2, 3):
                if v:
                    w = UpWord(u, v)
                    assert member_upword_det(d, w) == naive_member(d, w)


def test_nba_membership_agrees_with_det_view():
    for seed in range(8):
        d = gen_random_dba(seed, 3, 2)
        nba = det_to_nba(d)
        for u in words_upto(2, 2):
            for v in words_upto(2, 3):
                if v:
                    w = UpWord(u, v)
                    assert member_upword_nba(nba, w) == member_upword_det(d, w)


# --------------------------------------------------------------------------
# graphs, emptiness, inclusion

def test_sccs_topological_order():
    # 0 -> 1 <-> 2, 3 isolated with self loop
    comps = sccs([[1], [2], [1], [3]])
    assert [0] in comps and sorted(comps[comps.index([0]) + 0]) == [0]
    flat = {frozenset(c) for c in comps}
    assert flat == {frozenset([0]), frozenset([1, 2]), frozenset([3])}
    assert comps.index([0]) < comps.index(sorted([1, 2]))


def test_one_pair_rabin_empty_no_acceptance():
    d = gen_fig1()
    nba = det_to_nba(DetOmega(d.ts, frozenset(), BUCHI))
    assert one_pair_rabin_empty(nba) is None


def test_one_pair_rabin_witness_is_lex_least_shortest():
    d = gen_fig1()
    witness = one_pair_rabin_empty(det_to_nba(d))
    # shortest lasso through an accepting transition: aa into the a-loop
    assert witness == Lasso((0, 0), (0,))
    w = witness.upword()
    assert member_upword_det(d, w)


def test_one_pair_rabin_avoid_set():
    d = gen_fig1()
    nba = det_to_nba(d)
    avoid = frozenset({(2, 0, 2)})  # forbid the a-loop at state 2
    witness = one_pair_rabin_empty(nba, avoid)
    assert witness is not None
    assert (witness.stem, witness.loop) == ((0, 1), (1,))  # ab into the b-loop


def test_nba_dba_included_positive_and_witness():
    d = gen_fig1()
    assert nba_dba_included(det_to_nba(d), d) is True
    # drop the b-loop acceptance: a.b^omega escapes the smaller language
    smaller = DetOmega(d.ts, frozenset({(2, 0)}), BUCHI)
    verdict = nba_dba_included(det_to_nba(d), smaller)
    assert verdict is not True
    w = verdict.upword()
    assert member_upword_det(d, w) and not member_upword_det(smaller, w)


def test_nba_dba_intersection_witness():
    d = gen_fig1()
    assert nba_dba_intersection_witness(det_to_nba(d), d) is not None
    empty = DetOmega(d.ts, frozenset(), BUCHI)
    assert nba_dba_intersection_witness(det_to_nba(empty), d) is None
    # a^omega only vs a.b^omega only: disjoint
    only_a = DetOmega(d.ts, frozenset({(2, 0)}), BUCHI)
    only_ab = DetOmega(d.ts, frozenset({(3, 1)}), BUCHI)
    assert nba_dba_intersection_witness(det_to_nba(only_a), only_ab) is None
    w = nba_dba_intersection_witness(det_to_nba(only_a), d).upword()
    assert member_upword_det(only_a, w) and member_upword_det(d, w)


def test_nba_nba_intersection_witness():
    d = gen_fig1()
    only_a = det_to_nba(DetOmega(d.ts, frozenset({(2, 0)}), BUCHI))
    only_ab = det_to_nba(DetOmega(d.ts, frozenset({(3, 1)}), BUCHI))
    assert nba_nba_intersection_witness(only_a, only_ab) is None
    w = nba_nba_intersection_witness(only_a, det_to_nba(d))
    assert w is not None
    assert member_upword_nba(only_a, w.upword())


def test_dba_state_equiv_is_an_equivalence():
    for seed in range(6):
        d = gen_random_dba(seed, 4, 2)
        n = d.ts.state_count
        rel = {(p, q) for p in range(n) for q in range(n)
               if dba_state_equiv(d, p, q)}
        for p in range(n):
            assert (p, p) in rel
        for p, q in rel:
            assert (q, p) in rel
        for p, q in rel:
            for r in range(n):
                if (q, r) in rel:
                    assert (p, r) in rel


def test_dba_state_equiv_agrees_with_sampled_residuals():
    d = gen_fig1()
    for p in range(5):
        for q in range(5):
            if dba_state_equiv(d, p, q):
                continue
            rooted_p = DetOmega(DetTS(AB, 5, p, d.ts.delta), d.acc, BUCHI)
            rooted_q = DetOmega(DetTS(AB, 5, q, d.ts.delta), d.acc, BUCHI)
            assert any(
                member_upword_det(rooted_p, UpWord(u, v))
                != member_upword_det(rooted_q, UpWord(u, v))
                for u in words_upto(2, 3) for v in words_upto(2, 3) if v)


def test_nba_text_constraints():
    nba = Nba(AB, 2, frozenset([0]), frozenset({(0, 0, 1), (1, 1, 0)}),
              frozenset({(1, 1, 0)}))
    assert nba.state_count == 2
    with pytest.raises(AutomatonError):
        Nba(AB, 2, frozenset([0]), frozenset({(0, 0, 5)}), frozenset())
