import pytest
from hypothesis import given
from hypothesis import strategies as st

from idealsync import (GeneratorSet, InputError, Recognizer, Word,
                       anti_factorial_reduce, build_ideal_recognizer,
                       build_word_automaton, equivalent, is_factor, member,
                       minimize, parse_automaton)
from idealsync.automaton import BINARY, Dfa
from idealsync.languages import ideal_automaton, shortest_accepted, uniform_set

from oracles import contains_factor, golden, text, words_upto

W = Word.parse


def test_is_factor_examples():
    assert is_factor(W("ab"), W("babab"))
    assert is_factor(W("abaab"), W("abaab"))
    assert not is_factor(W("aaa"), W("abab"))
    assert is_factor(Word(), W("ab"))


@pytest.mark.parametrize("given_, expected", [
    ("aa,aba", "aa,aba"),
    ("a,aba", "a"),
    ("ab,ba,aba", "ab,ba"),
])
def test_anti_factorial_reduce(given_, expected):
    got = anti_factorial_reduce(GeneratorSet.parse(given_))
    assert str(got) == expected
    assert got.is_anti_factorial
    assert equivalent(build_ideal_recognizer(got), build_ideal_recognizer(GeneratorSet.parse(given_)))


def test_anti_factorial_reduce_flags_empty_word():
    got = anti_factorial_reduce(GeneratorSet.of([Word(), W("ab")]))
    assert got.is_whole_language
    assert member(build_ideal_recognizer(got), Word())


def test_word_automaton_matches_figures():
    for w in ("abaab", "babab"):
        R = build_word_automaton(w)
        gold = parse_automaton(golden(f"word_{w}.dfa"))
        assert R.dfa.delta == gold.dfa.delta
        assert R.dfa.labels == gold.dfa.labels
        assert (R.initial, set(R.accepting)) == (gold.initial, set(gold.accepting))


def test_word_automaton_named_edges():
    R = build_word_automaton("abaab")
    d, s = R.dfa, R.dfa.state_of
    assert d.delta[s("ε")][0] == s("a")
    assert d.delta[s("abaa")][0] == s("a")
    assert d.delta[s("aba")][1] == s("ab")
    R = build_word_automaton("babab")
    d, s = R.dfa, R.dfa.state_of
    assert d.delta[s("baba")][0] == s("ε")
    assert d.delta[s("bab")][1] == s("b")


def test_word_automaton_single_letter():
    R = build_word_automaton("a")
    assert R.dfa.delta == ((1, 0), (1, 1))
    with pytest.raises(InputError):
        build_word_automaton(Word())


@given(st.lists(st.integers(0, 1), min_size=1, max_size=6).map(Word))
def test_word_automaton_is_minimal_and_correct(w):
    R = build_word_automaton(w)
    assert R.num_states == len(w) + 1
    assert minimize(R).num_states == len(w) + 1
    for u in words_upto(2, len(w) + 3):
        assert member(R, Word(u)) == contains_factor(u, [w])


def test_ideal_recognizer_singleton_matches_word_automaton():
    S = GeneratorSet.parse("abaab")
    assert equivalent(build_ideal_recognizer(S), build_word_automaton("abaab"))


def test_ideal_recognizer_sigma2_has_three_states():
    R = build_ideal_recognizer(uniform_set(2))
    assert R.num_states == 3
    for w in words_upto(2, 4):
        assert member(R, Word(w)) == (len(w) >= 2)


def test_ideal_recognizer_membership_examples():
    R = build_ideal_recognizer(GeneratorSet.parse("aa,aba"))
    assert not member(R, W("bab"))
    assert member(R, W("abab"))


def test_ideal_recognizer_empty_set():
    R = build_ideal_recognizer(GeneratorSet(BINARY, frozenset()))
    assert len(R.accepting) == 0
    assert shortest_accepted(R) is None


@pytest.mark.parametrize("gens", ["aa,aba", "ab", "aaa,abb,bab", "abaab,babab", "b,aa", "abc,ca"])
def test_ideal_recognizer_agrees_with_factor_scan(gens):
    S = GeneratorSet.parse(gens)
    R = build_ideal_recognizer(S)
    for w in words_upto(S.alphabet.size, S.max_length + 3):
        assert member(R, Word(w)) == contains_factor(w, S.words)


def test_ideal_closure():
    for gens in ("aa,aba", "ab", "bab,aaa"):
        R = build_ideal_recognizer(GeneratorSet.parse(gens))
        accepted = [w for w in words_upto(2, 5) if member(R, Word(w))]
        for w in accepted:
            for x in words_upto(2, 2):
                for y in words_upto(2, 2):
                    if len(x) + len(w) + len(y) <= 8:
                        assert member(R, Word(x + w + y))


def test_minimize_merges_duplicates():
    # states 1 and 2 are both absorbing accepting copies
    R = Recognizer(Dfa(BINARY, [[1, 2], [1, 1], [2, 2]]), 0, [1, 2])
    M = minimize(R)
    assert M.num_states == 2
    assert equivalent(R, M)


def test_minimize_sigma_ge_3():
    # distinguishability oracle over words and suffixes of length ≤ 4 finds 4 classes
    R = ideal_automaton(uniform_set(3))
    assert minimize(R).num_states == 4


def test_minimize_drops_unreachable():
    R = Recognizer(Dfa(BINARY, [[0, 0], [1, 0]]), 0, [])
    assert minimize(R).num_states == 1


@given(st.lists(st.lists(st.integers(0, 1), min_size=1, max_size=4).map(Word),
                min_size=1, max_size=4))
def test_minimize_preserves_language_and_is_idempotent(words):
    S = GeneratorSet.of(words, BINARY)
    R = ideal_automaton(S)
    M = minimize(R)
    assert equivalent(R, M)
    assert minimize(M).num_states == M.num_states
    assert minimize(M).dfa.delta == M.dfa.delta


def test_equivalence_examples():
    R = ideal_automaton(GeneratorSet.parse("aa,aba"))
    assert equivalent(R, minimize(R))
    assert not equivalent(build_word_automaton("aa"), build_word_automaton("ab"))


def test_member_examples():
    R = build_word_automaton("abaab")
    assert member(R, W("abaab"))
    assert not member(R, W("ababa"))
    assert not member(R, Word())


def test_generator_set_parsing():
    S = GeneratorSet.parse("aba, aa")
    assert str(S) == "aa,aba"
    assert S.alphabet.size == 2
    assert GeneratorSet.parse("abc").alphabet.size == 3
    assert GeneratorSet.parse("aa").alphabet.size == 2
    with pytest.raises(InputError):
        GeneratorSet.parse("ac", BINARY)
    assert [text(w) for w in S] == ["aa", "aba"]
