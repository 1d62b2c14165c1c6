from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cflab.continuants import (
    Alphabet,
    Mat2,
    as_word,
    cf_value,
    concat_continuant,
    continuant,
    fibonacci,
    mirror,
    word_to_matrix,
)

words = st.lists(st.integers(min_value=1, max_value=9), min_size=1, max_size=15).map(tuple)


def fold_value(word):
    # reference: fold the fraction from the right
    acc = Fraction(0)
    for d in reversed(word):
        acc = Fraction(1, d + acc)
    return acc


def test_base_cases():
    assert continuant(()) == 1
    assert continuant((7,)) == 7
    assert continuant((2, 1, 3)) == 11
    assert continuant((1, 1, 1, 1, 1)) == 8


def test_rejects_bad_words():
    for bad in [(0,), (-1,), (1.5,), (True,), ("2",)]:
        with pytest.raises((ValueError, TypeError)):
            as_word(bad)


@given(words)
def test_value_matches_folded_fraction(word):
    val = cf_value(word)
    assert val == fold_value(word)
    assert val.denominator == continuant(word)


@given(words)
def test_three_term_recurrence(word):
    if len(word) < 2:
        return
    assert continuant(word) == word[-1] * continuant(word[:-1]) + continuant(word[:-2])


@given(words)
def test_mirror_invariance(word):
    assert continuant(word) == continuant(mirror(word))


@given(words, words)
def test_concatenation_identity(left, right):
    whole, residual = concat_continuant(left, right)
    assert residual == 0
    kd, kb = continuant(left), continuant(right)
    assert kd * kb <= whole <= 2 * kd * kb


def test_cf_value_empty_word_rejected():
    with pytest.raises(ValueError):
        cf_value(())


@given(words)
def test_matrix_entries_are_continuants(word):
    mat = word_to_matrix(word)
    assert mat.d == continuant(word)
    assert mat.b == continuant(word[1:])
    assert mat.c == continuant(word[:-1])
    assert mat.a == continuant(word[1:-1]) if len(word) >= 2 else mat.a == 0
    assert mat.det() == (-1) ** len(word)


def test_matrix_product_structure():
    gen = Mat2.generator
    assert gen(2) * gen(1) * gen(3) == word_to_matrix((2, 1, 3))
    assert word_to_matrix(()) == Mat2.identity()
    assert word_to_matrix((2, 1, 3)).as_rows() == ((1, 4), (3, 11))


def test_fibonacci_law_small():
    assert [fibonacci(n) for n in range(8)] == [0, 1, 1, 2, 3, 5, 8, 13]
    for r in range(0, 25):
        assert continuant((1,) * r) == fibonacci(r + 1)


def test_alphabet_parsing():
    assert Alphabet.from_spec("1,2").digits == (1, 2)
    assert Alphabet.from_spec("1-6,8").digits == (1, 2, 3, 4, 5, 6, 8)
    assert Alphabet.from_spec("1-5").a_max == 5
    assert Alphabet((1, 2)).label() == "1,2"
    assert 2 in Alphabet((1, 2)) and 3 not in Alphabet((1, 2))
    assert len(Alphabet.from_spec("1-7")) == 7


def test_alphabet_rejects_bad_specs():
    for bad in ["0,1", "2,2", "", "1-"]:
        with pytest.raises(ValueError):
            Alphabet.from_spec(bad)
    with pytest.raises(ValueError):
        Alphabet((4,))
    # input is a digit set; order does not matter
    assert Alphabet.from_spec("3,1").digits == (1, 3)
