import pytest
from hypothesis import given, strategies as st

from spinmcg import gf2
from spinmcg.words import WordSyntaxError, commutator, inverse, parse_word, power, pretty, reduce_word

letters = st.text(alphabet="abt", max_size=12)


def test_parse_word_syntax():
    assert parse_word("a^4") == "aaaa"
    assert parse_word("(ba)^2") == "baba"
    assert parse_word("a^-1") == "aaa"
    assert parse_word("[t,a^2]") == "t" + "aa" + "t" + "aaaaaa"
    assert parse_word(" b a ") == "ba"
    assert parse_word("") == ""


@pytest.mark.parametrize("bad", ["a^", "(ab", "[a,b", "x", "a)", "[a]"])
def test_parse_word_errors(bad):
    with pytest.raises(WordSyntaxError):
        parse_word(bad)


def test_pretty():
    assert pretty("baaabb") == "b a^3 b^2"
    assert pretty("") == "1"


@given(letters)
def test_inverse_cancels(w):
    assert reduce_word(w + inverse(w)) == ""
    assert reduce_word(inverse(w) + w) == ""


@given(letters, letters)
def test_commutator_of_inverse_pair(x, y):
    assert reduce_word(commutator(x, y) + commutator(y, x)) == ""


@given(letters, st.integers(-3, 3))
def test_power_adds(w, k):
    assert reduce_word(power(w, k) + power(w, -k)) == ""


def test_rank_and_kernel():
    rows = [0b011, 0b110, 0b101]
    assert gf2.rank(rows) == 2
    assert gf2.kernel(rows, 3) == {0, 0b111}
    assert gf2.kernel([], 3) == set(range(8))


@given(st.lists(st.integers(0, 2**8 - 1), max_size=6))
def test_kernel_is_exact(rows):
    ker = gf2.kernel(rows, 8)
    assert len(ker) == 2 ** (8 - gf2.rank(rows))
    for x in range(2**8):
        inside = all(bin(r & x).count("1") % 2 == 0 for r in rows)
        assert inside == (x in ker)


@given(st.lists(st.integers(0, 2**6 - 1), max_size=5), st.integers(0, 2**6 - 1))
def test_solve_matches_span(rows, target):
    x = gf2.solve(rows, target)
    assert (x is not None) == gf2.in_span(target, rows)
    if x is not None:
        acc = 0
        for i, r in enumerate(rows):
            if x >> i & 1:
                acc ^= r
        assert acc == target
