from itertools import product

import pytest
from hypothesis import given, strategies as st

from spinmcg.farey import INFINITY, MINUS_ONE, ONE, ZERO
from spinmcg.piecewise import (
    IDENTITY,
    MINUS_IDENTITY,
    PiecewiseMoebiusMap,
    PiecewiseSL2Map,
    char_map,
    char_map_of_word,
    compose,
    generator_map,
    spin_lift_probe,
    verify_theorem_A_piecewise,
    word_map,
)
from spinmcg.ppslz import W1, W2
from spinmcg.spinstate import TessState, evaluate

ab_words = st.text(alphabet="ab", max_size=8)
maps = ab_words.map(char_map_of_word)


def test_identity_and_constant_maps_are_valid():
    assert PiecewiseMoebiusMap.identity().validate()
    assert PiecewiseMoebiusMap.constant((2, 1, 1, 1)).validate()


def test_mismatched_breakpoint_is_invalid():
    f = PiecewiseMoebiusMap([(ZERO, IDENTITY), (INFINITY, (1, 1, 0, 1))])
    assert not f.validate()
    assert f.violations()


def test_determinant_checked():
    with pytest.raises(ValueError):
        PiecewiseMoebiusMap.constant((2, 0, 0, 1))


def test_char_map_of_base_is_identity():
    assert char_map(TessState.base()).is_identity()


def test_beta_is_elliptic_of_order_three():
    f = char_map(evaluate("b"))
    assert len(f) == 1 and f.breakpoints == []
    assert not f.is_identity()
    assert f.power(3).is_identity()


def test_alpha_has_four_pieces():
    f = char_map(evaluate("a"))
    assert f.validate()
    assert f.breakpoints == [MINUS_ONE, ZERO, ONE, INFINITY]
    assert f.power(4).is_identity()
    assert f == generator_map("a")


@pytest.mark.parametrize("w", ["aaaa", "bbb", "ab" * 5, W1, W2])
def test_theorem_A_words_are_identity(w):
    assert word_map(w).is_identity()


def test_theorem_A_report():
    rep = verify_theorem_A_piecewise()
    assert rep.ok, rep.checks


def test_homomorphism_direction():
    # char(uv) = char(v) o char(u)
    for u, v in product(["a", "b", "ab", "ba"], repeat=2):
        assert char_map_of_word(u + v) == char_map_of_word(v).compose(char_map_of_word(u))


def test_json_round_trip():
    f = char_map_of_word("abbab")
    assert PiecewiseMoebiusMap.from_json(f.to_json()) == f


@given(maps)
def test_compose_with_identity_and_inverse(f):
    assert compose(f, PiecewiseMoebiusMap.identity()) == f
    assert compose(f, f.inverse()).is_identity()
    assert compose(f.inverse(), f).is_identity()


@given(maps, maps)
def test_piece_count_bound(f, g):
    h = compose(f, g)
    assert h.validate()
    assert len(h) <= len(f) + len(g)


@given(maps, maps, maps)
def test_compose_is_associative(f, g, h):
    assert compose(compose(f, g), h) == compose(f, compose(g, h))


@given(maps, maps, st.lists(st.sampled_from([1, -1]), min_size=8, max_size=8))
def test_projectivization_commutes_with_composition(f, g, signs):
    def lift(m, sg):
        return PiecewiseSL2Map([(s, tuple(x * e for x in mat)) for (s, mat), e in zip(m.pieces, sg)])

    F, G = lift(f, signs), lift(g, signs[::-1])
    assert F.compose(G).projectivize() == f.compose(g)


def test_char_map_is_injective_on_reachable_states():
    seen = {}
    for n in range(6):
        for letters in product("ab", repeat=n):
            s = evaluate("".join(letters))
            seen.setdefault(s, char_map(s))
    assert len(set(seen.values())) == len(seen)


def test_char_map_sends_base_doe_to_state_doe():
    for w in ["ab", "aab", "babba"]:
        s = evaluate(w)
        f = char_map(s)
        assert (f(ZERO), f(INFINITY)) == tuple(s.doe)


def test_spin_lift_probe_reports_data():
    rep = spin_lift_probe()
    assert rep.checks["candidate t squares to 1"]
    assert rep.checks["-I central"]
    best = rep.details["best"]
    assert best["holds"] <= best["of"]
    assert set(best["scorecard"]) >= {"t^2", "(tb)^3", "(ta)^4"}


def test_minus_identity_projectivizes_to_identity():
    assert PiecewiseSL2Map.constant(MINUS_IDENTITY).projectivize().is_identity()
    assert not PiecewiseSL2Map.constant(MINUS_IDENTITY).is_identity()
