"""Exact arithmetic for continuants of continued-fraction words.

A word is a finite tuple of positive integer partial quotients.  Its
continuant is defined by the three-term recurrence

    <> = 1,    <d1> = d1,    <d1..dk> = <d1..d(k-1)> * dk + <d1..d(k-2)>

and equals the denominator of the continued fraction [0; d1, ..., dk]
in lowest terms.  Everything here is arbitrary precision and exact;
floats never appear.

The 2x2 matrix picture: mapping each digit d to the matrix
[[0, 1], [1, d]] and multiplying left to right in word order gives

    [[ <d2..d(k-1)>, <d2..dk> ],
     [ <d1..d(k-1)>, <d1..dk> ]]

so the bottom-right entry is the continuant, the determinant is
(-1)^k, and the map word -> matrix is injective (the generator
matrices generate a free semigroup).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Tuple

Word = Tuple[int, ...]

__all__ = [
    "Word",
    "Alphabet",
    "Mat2",
    "as_word",
    "continuant",
    "cf_value",
    "word_to_matrix",
    "mirror",
    "concat_continuant",
    "fibonacci",
]


@dataclass(frozen=True)
class Alphabet:
    """A finite digit set  {d1 < d2 < ... < dm}  with every d >= 1, m >= 2.

    >>> Alphabet.from_spec("1-6,8").digits
    (1, 2, 3, 4, 5, 6, 8)
    """

    digits: Tuple[int, ...]

    def __post_init__(self) -> None:
        ds = self.digits
        if len(ds) < 2:
            raise ValueError("alphabet needs at least two digits, got %r" % (ds,))
        if any((not isinstance(d, int)) or d < 1 for d in ds):
            raise ValueError("alphabet digits must be integers >= 1, got %r" % (ds,))
        if any(a >= b for a, b in zip(ds, ds[1:])):
            raise ValueError("alphabet digits must be strictly increasing, got %r" % (ds,))

    @classmethod
    def from_spec(cls, text: str) -> "Alphabet":
        """Parse a digit-set description like "1,2", "1-5" or "1-6,8"."""
        digits: set[int] = set()
        for part in text.split(","):
            part = part.strip()
            if not part:
                continue
            if "-" in part:
                lo_s, hi_s = part.split("-", 1)
                lo, hi = int(lo_s), int(hi_s)
                if lo > hi:
                    raise ValueError("empty digit range %r" % part)
                digits.update(range(lo, hi + 1))
            else:
                digits.add(int(part))
        return cls(tuple(sorted(digits)))

    @property
    def a_max(self) -> int:
        """Largest digit.  Written A in the norm-window formulas."""
        return self.digits[-1]

    def __contains__(self, d: object) -> bool:
        return d in self.digits

    def __iter__(self):
        return iter(self.digits)

    def __len__(self) -> int:
        return len(self.digits)

    def label(self) -> str:
        return ",".join(str(d) for d in self.digits)


@dataclass(frozen=True)
class Mat2:
    """An integer 2x2 matrix [[a, b], [c, d]]."""

    a: int
    b: int
    c: int
    d: int

    def __mul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def norm(self) -> int:
        """Max entry.  For a word matrix all entries are nonnegative and
        the bottom-right one dominates, so this equals the continuant."""
        return max(self.a, self.b, self.c, self.d)

    def as_rows(self) -> Tuple[Tuple[int, int], Tuple[int, int]]:
        return ((self.a, self.b), (self.c, self.d))

    @classmethod
    def identity(cls) -> "Mat2":
        return cls(1, 0, 0, 1)

    @classmethod
    def generator(cls, d: int) -> "Mat2":
        if not isinstance(d, int) or d < 1:
            raise ValueError("generator digit must be an integer >= 1, got %r" % (d,))
        return cls(0, 1, 1, d)


def as_word(digits: Iterable[int]) -> Word:
    """Validate and freeze a digit sequence into a word tuple.

    Raises ValueError on non-integer or non-positive entries.
    """
    w = tuple(digits)
    for d in w:
        if not isinstance(d, int) or isinstance(d, bool) or d < 1:
            raise ValueError("word digits must be integers >= 1, got %r" % (d,))
    return w


def continuant(word: Sequence[int]) -> int:
    """Continuant of a word, by the three-term recurrence.

    >>> continuant(())
    1
    >>> continuant((2, 1, 3))
    11
    >>> continuant((1, 1, 1, 1, 1))
    8
    """
    w = as_word(word)
    prev, cur = 0, 1
    for d in w:
        prev, cur = cur, cur * d + prev
    return cur


def cf_value(word: Sequence[int]) -> Fraction:
    """Value of [0; d1, ..., dk] as an exact Fraction in lowest terms.

    The numerator is the continuant of the word with its first digit
    dropped, the denominator the continuant of the whole word.  The
    empty word has no value.

    >>> cf_value((1, 2))
    Fraction(2, 3)
    """
    w = as_word(word)
    if not w:
        raise ValueError("empty word has no continued-fraction value")
    return Fraction(continuant(w[1:]), continuant(w))


def word_to_matrix(word: Sequence[int]) -> Mat2:
    """Product of the generator matrices [[0,1],[1,d]], in word order.

    >>> word_to_matrix((2, 1, 3)).as_rows()
    ((1, 4), (3, 11))
    """
    w = as_word(word)
    m = Mat2.identity()
    for d in w:
        m = m * Mat2.generator(d)
    return m


def mirror(word: Sequence[int]) -> Word:
    """The word reversed.  Mirrors share their continuant."""
    return as_word(word)[::-1]


def concat_continuant(left: Sequence[int], right: Sequence[int]) -> Tuple[int, Fraction]:
    """Continuant of the concatenation, with the exact gluing residual.

    For nonempty words D and B,

        <D, B> = <D> <B> (1 + [mirror D] [B])

    where [w] denotes the tail value <w minus first digit> / <w>.
    Returns (continuant of D+B, residual), the residual being the
    exact difference between the two sides (always 0; kept so callers
    can log it).  Also checks the sandwich
    <D><B> <= <D,B> <= 2 <D><B>.
    """
    dw, bw = as_word(left), as_word(right)
    if not dw or not bw:
        raise ValueError("concatenation identity needs two nonempty words")
    whole = continuant(dw + bw)
    kd, kb = continuant(dw), continuant(bw)
    glue = kd * kb * (1 + cf_value(mirror(dw)) * cf_value(bw))
    residual = Fraction(whole) - glue
    if not (kd * kb <= whole <= 2 * kd * kb):
        raise AssertionError(
            "continuant sandwich violated: %d * %d vs %d" % (kd, kb, whole)
        )
    return whole, residual


def fibonacci(n: int) -> int:
    """Fibonacci numbers with F0 = 0, F1 = 1.

    The all-ones word of length r has continuant F(r+1).
    """
    if n < 0:
        raise ValueError("negative index")
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a
