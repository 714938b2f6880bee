import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from periodlab.words import (
    AlphabetError,
    Alphabet,
    MZVIndex,
    QLinComb,
    Word,
    admissible_words,
    compositions,
    convergent_indexes,
    depth,
    index_of_word,
    indexes_to_words,
    is_convergent,
    shuffle,
    shuffle_lin,
    stuffle,
    stuffle_lin,
    weight,
    word_of_index,
    words_to_indexes,
)

W = Word.parse


def letters(level=1, max_size=4):
    alphabet = (0, 1) if level == 1 else (0, 1, -1)
    return st.lists(st.sampled_from(alphabet), max_size=max_size).map(lambda l: Word(tuple(l), level))


def indexes(level=1, max_depth=3):
    twists = st.just(1) if level == 1 else st.sampled_from((1, -1))
    entry = st.tuples(st.integers(1, 3), twists)
    return st.lists(entry, max_size=max_depth).map(
        lambda es: MZVIndex(tuple(e[0] for e in es), tuple(e[1] for e in es), level)
    )


def test_alphabet_levels():
    assert Alphabet(1).letters == (0, 1)
    assert set(Alphabet(2).letters) == {0, 1, -1}
    with pytest.raises(ValueError):
        Alphabet(3)


def test_word_text_round_trip():
    for text in ["110", "1m0", "0", "m"]:
        assert str(W(text)) == text
    assert W("1m0").level == 2
    assert str(Word(())) == "()"


def test_weight_depth():
    w = Word((1, 0, 0))
    assert weight(w) == 3 and depth(w) == 1
    assert not Word((0, 1)).convergent_at_one
    assert not Word((0, 0)).log_free_at_zero


def test_shuffle_examples():
    assert shuffle(Word(()), W("10")) == QLinComb.single(W("10"))
    assert shuffle(W("0"), W("1")) == QLinComb({W("01"): 1, W("10"): 1})
    assert shuffle(W("1"), W("10")) == QLinComb({W("110"): 2, W("101"): 1})
    assert str(shuffle(W("1"), W("10"))) == "2*110 + 101"


def test_shuffle_mixed_levels_rejected():
    with pytest.raises(AlphabetError):
        shuffle(W("1"), W("m"))


def test_stuffle_examples():
    z = lambda *n: MZVIndex(n)
    assert stuffle(z(2), z(3)) == QLinComb({z(2, 3): 1, z(3, 2): 1, z(5): 1})
    assert str(stuffle(z(2), z(3))) == "zeta(2,3) + zeta(3,2) + zeta(5)"
    # Li_{n1,n2} Li_{n3}: five terms, two of them merged
    r = stuffle(z(1, 2), z(3))
    assert r == QLinComb({z(1, 2, 3): 1, z(1, 3, 2): 1, z(3, 1, 2): 1, z(1, 5): 1, z(4, 2): 1})


def test_phi_squared_stuffle():
    # phi(1)^2 = (-1)^2 Li_1(-1)^2 = 2 phi(1,1) + zeta(2)
    p = MZVIndex.phi((1,))
    r = stuffle(p, p)
    assert r == QLinComb({MZVIndex((1, 1), (-1, -1), 2): 2, MZVIndex((2,), (1,), 2): 1})


def test_conversions():
    assert word_of_index(MZVIndex((2,))) == (-1, W("10"))
    assert word_of_index(MZVIndex((1, 2))) == (1, W("110"))
    assert word_of_index(MZVIndex.phi((3,))) == (-1, W("m00"))
    assert index_of_word(W("110")) == (1, MZVIndex((1, 2)))
    with pytest.raises(ValueError):
        index_of_word(W("01"))


def test_convergence():
    assert is_convergent(MZVIndex((1, 2)))
    assert not is_convergent(MZVIndex((2, 1)))
    assert is_convergent(MZVIndex.phi((1,)))
    assert is_convergent(MZVIndex.signed([-1]))
    assert not is_convergent(MZVIndex((1,), (1,), 2))


def test_signed_entries_and_printing():
    p = MZVIndex.signed([1, -3])
    assert p.level == 2 and p.twists == (1, -1)
    assert str(p) == "zeta(1,-3)"
    assert str(MZVIndex()) == "1"


def test_admissible_counts():
    assert [len(admissible_words(n)) for n in range(2, 8)] == [2 ** (n - 2) for n in range(2, 8)]
    assert [len(admissible_words(n, 2)) for n in range(2, 6)] == [4 * 3 ** (n - 2) for n in range(2, 6)]
    assert all(is_convergent(p) for p in convergent_indexes(6))


def test_compositions():
    assert list(compositions(3)) == [(1, 1, 1), (1, 2), (2, 1), (3,)]
    assert sorted(compositions(7, (2, 3))) == [(2, 2, 3), (2, 3, 2), (3, 2, 2)]


def test_lincomb_algebra():
    a = QLinComb({W("10"): 1, W("110"): Fraction(1, 2)})
    assert a - a == 0
    assert (a * 2)[W("110")] == 1
    assert W("0") not in a
    assert a.is_homogeneous is False
    assert str(-a) == "-1/2*110 - 10"


def test_print_order_is_descending():
    # zeta(m) zeta(n): highest canonical term first
    r = stuffle(MZVIndex((2,)), MZVIndex((3,)))
    assert [str(k) for k, _ in r.sorted_items()] == ["zeta(2,3)", "zeta(3,2)", "zeta(5)"]


@given(letters(), letters())
def test_shuffle_commutative_and_graded(u, v):
    r = shuffle(u, v)
    assert r == shuffle(v, u)
    assert all(len(w) == len(u) + len(v) for w in r)
    assert all(w.depth == u.depth + v.depth for w in r)
    assert sum(c for _, c in r.items()) == math.comb(len(u) + len(v), len(u))


@given(letters(max_size=3), letters(max_size=3), letters(max_size=3))
def test_shuffle_associative(u, v, w):
    left = shuffle_lin(shuffle(u, v), QLinComb.single(w))
    right = shuffle_lin(QLinComb.single(u), shuffle(v, w))
    assert left == right


@given(indexes(2), indexes(2))
def test_stuffle_commutative_and_graded(p, q):
    r = stuffle(p, q)
    assert r == stuffle(q, p)
    for s in r:
        assert s.weight == p.weight + q.weight
        assert max(p.depth, q.depth) <= s.depth <= p.depth + q.depth


@given(indexes(2, 2), indexes(2, 2), indexes(2, 2))
def test_stuffle_associative(p, q, r):
    left = stuffle_lin(stuffle(p, q), QLinComb.single(r))
    right = stuffle_lin(QLinComb.single(p), stuffle(q, r))
    assert left == right


@given(letters(2, 6))
def test_word_index_round_trip(w):
    if not w.letters or w.letters[0] == 0:
        return
    sign, p = index_of_word(w)
    assert sign == (-1) ** w.depth
    assert p.weight == w.weight
    assert word_of_index(p) == (sign, w)


@given(indexes(2))
def test_lincomb_conversion_round_trip(p):
    comb = QLinComb({p: 3})
    assert words_to_indexes(indexes_to_words(comb)) == comb
