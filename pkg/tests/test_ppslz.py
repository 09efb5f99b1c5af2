import random

import pytest
from hypothesis import given, strategies as st

from spinmcg.farey import EdgeWord, FareyError, parse_edge_word
from spinmcg.ppslz import (
    DAGGER,
    STAR,
    THEOREM_A_RELATORS,
    T_transform,
    check_FE,
    commutativity_scan,
    equal_maps,
    flip_inverse,
    flip,
    flip_word,
    independent,
    is_flip_of_edge,
    is_identity_map,
    normal_form_words,
    pentagon_groupoid_check,
    random_edge_word,
    subgroup_closure,
    times_a2,
    verify_theorem_A,
)

B, BB = parse_edge_word("B"), parse_edge_word("BB")


def test_flip_words():
    assert flip_word(B) == "bab"
    assert flip_word(BB) == "bbaaabb"
    assert flip_word(EdgeWord()) == "a"
    assert flip_inverse(B) == "bbaaabb"
    assert flip_inverse(BB) == "bab"


def test_flip_is_a_manifest_conjugate():
    for g in normal_form_words(4):
        assert flip(g).is_manifest_conjugate()


def test_flip_times_inverse_is_identity():
    for g in normal_form_words(4):
        assert is_identity_map(flip_word(g) + flip_inverse(g))


def test_flip_word_flips_its_edge():
    for g in normal_form_words(3):
        assert is_flip_of_edge(g)


@pytest.mark.parametrize("g,expected", [("B", "BB A2"), ("BB A2", "B A2"), ("B A2", "BB"), ("BB", "B")])
def test_suffix_cycle(g, expected):
    assert str(T_transform(parse_edge_word(g))) == expected


def test_T_undefined_on_empty():
    with pytest.raises(FareyError):
        T_transform(EdgeWord())


def test_T_squared_is_times_a2():
    for g in normal_form_words(5):
        assert T_transform(T_transform(g)) == times_a2(g)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_FE_on_stated_family(n):
    g = parse_edge_word(" ".join(["B"] + ["A2 B"] * n))
    assert check_FE(g)


def test_FE_fails_only_next_to_the_doe():
    # The four edges that cobound a triangle with the doe violate FE; all others satisfy it.
    bad = [str(g) for g in normal_form_words(4) if not check_FE(g)]
    assert bad == ["B", "BB", "B A2", "BB A2"]


@pytest.mark.parametrize("name", sorted(THEOREM_A_RELATORS))
def test_theorem_A_relators(name):
    assert is_identity_map(THEOREM_A_RELATORS[name])


def test_equivalent_commutator_forms():
    assert is_identity_map(STAR)
    assert is_identity_map(DAGGER)
    assert verify_theorem_A().ok


def test_named_commuting_pair():
    g, h = B, parse_edge_word("B A2")
    assert independent(g, h)
    assert equal_maps(flip_word(g) + flip_word(h), flip_word(h) + flip_word(g))


def test_cobounding_pair_is_excluded():
    assert not independent(B, BB)


def test_commutativity_scan():
    rep = commutativity_scan(2)
    assert rep.ok


def test_pentagon_groupoid():
    assert pentagon_groupoid_check().ok


def test_beta_t_subgroup_has_order_twelve():
    elements = subgroup_closure()
    assert len(elements) == 12
    assert "" in elements


@given(st.integers(0, 10**6))
def test_random_flip_round_trip(seed):
    g = random_edge_word(random.Random(seed), 6)
    assert is_identity_map(flip_inverse(g) + flip_word(g))
