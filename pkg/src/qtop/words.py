"""Words over a finite alphabet and their free-group normal form.

A letter is a pair ``(index, sign)`` with ``sign`` in ``{+1, -1}``.  Letters
are ordered by their *code*: positive letters ``0 .. k-1`` first, then the
inverse letters ``k .. 2k-1``.  This matches the point order of the two-copy
space ``Y + Y^-1`` built in :mod:`qtop.freetop`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import AlphabetMismatch, SizeLimit
from .finspace import size_limit

Letter = tuple[int, int]


@dataclass(frozen=True)
class Word:
    letters: tuple[Letter, ...]
    k: int

    def __post_init__(self):
        for y, s in self.letters:
            if not 0 <= y < self.k or s not in (1, -1):
                raise ValueError(f"bad letter {(y, s)} for alphabet of size {self.k}")

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: Word) -> Word:
        return concat(self, other)

    def codes(self) -> tuple[int, ...]:
        return tuple(letter_code(l, self.k) for l in self.letters)

    def is_reduced(self) -> bool:
        return is_reduced_letters(self.letters)

    def sign_pattern(self) -> tuple[int, ...]:
        return tuple(s for _, s in self.letters)


def identity(k: int) -> Word:
    return Word((), k)


def letter(y: int, k: int, sign: int = 1) -> Word:
    return Word(((y, sign),), k)


def word(letters: Sequence[Letter], k: int) -> Word:
    return Word(tuple((int(y), int(s)) for y, s in letters), k)


def letter_code(l: Letter, k: int) -> int:
    y, s = l
    return y if s > 0 else k + y


def code_letter(c: int, k: int) -> Letter:
    return (c, 1) if c < k else (c - k, -1)


def from_codes(codes: Sequence[int], k: int) -> Word:
    return Word(tuple(code_letter(c, k) for c in codes), k)


def reduce_letters(letters: Sequence[Letter]) -> tuple[Letter, ...]:
    stack: list[Letter] = []
    for y, s in letters:
        if stack and stack[-1][0] == y and stack[-1][1] == -s:
            stack.pop()
        else:
            stack.append((y, s))
    return tuple(stack)


def is_reduced_letters(letters: Sequence[Letter]) -> bool:
    return all(
        not (a[0] == b[0] and a[1] == -b[1]) for a, b in zip(letters, letters[1:])
    )


def concat(a: Word, b: Word) -> Word:
    if a.k != b.k:
        raise AlphabetMismatch(f"alphabets of size {a.k} and {b.k}")
    return Word(a.letters + b.letters, a.k)


def invert(w: Word) -> Word:
    return Word(tuple((y, -s) for y, s in reversed(w.letters)), w.k)


def reduce(w: Word) -> Word:
    """Free-group normal form, one stack pass."""
    return Word(reduce_letters(w.letters), w.k)


def occurrences(w: Word, y: int) -> int:
    """How many letters of ``w`` are ``y`` or ``y^-1``."""
    return sum(1 for z, _ in w.letters if z == y)


def count_words(k: int, n: int, reduced_only: bool) -> int:
    if reduced_only:
        return 1 + sum(2 * k * (2 * k - 1) ** (i - 1) for i in range(1, n + 1))
    return sum((2 * k) ** i for i in range(n + 1))


def iter_codes(k: int, n: int, reduced_only: bool) -> Iterator[tuple[int, ...]]:
    """Code tuples of length <= n in length-lexicographic order."""
    for i in range(n + 1):
        for codes in itertools.product(range(2 * k), repeat=i):
            # codes y and k + y cancel
            if reduced_only and any(
                abs(a - b) == k for a, b in zip(codes, codes[1:])
            ):
                continue
            yield codes


def enumerate_words(
    k: int, n: int, reduced_only: bool = False, limit: int | None = None
) -> list[Word]:
    if k < 1 or n < 0:
        raise ValueError("need k >= 1 and n >= 0")
    total = count_words(k, n, reduced_only)
    bound = size_limit(limit)
    if total > bound:
        raise SizeLimit(f"{total} words exceed the bound {bound}")
    return [from_codes(c, k) for c in iter_codes(k, n, reduced_only)]


def empty_token(labels: Sequence[str]) -> str:
    """``1`` names the empty word unless some letter is already called ``1``."""
    for tok in ("1", "e", "()"):
        if tok not in labels:
            return tok
    raise ValueError("alphabet labels collide with every empty-word token")


def encode(w: Word, labels: Sequence[str]) -> str:
    """Text form: ``a b' a``; the empty word is ``1`` (see :func:`empty_token`)."""
    if not w.letters:
        return empty_token(labels)
    return " ".join(labels[y] + ("'" if s < 0 else "") for y, s in w.letters)


def decode(text: str, labels: Sequence[str]) -> Word:
    k = len(labels)
    index = {l: i for i, l in enumerate(labels)}
    text = text.strip()
    if text == empty_token(labels):
        return identity(k)
    letters = []
    for tok in text.split():
        sign = 1
        if tok.endswith("'"):
            tok, sign = tok[:-1], -1
        if tok not in index:
            raise AlphabetMismatch(f"unknown letter {tok!r}")
        letters.append((index[tok], sign))
    return Word(tuple(letters), k)
