"""Word algebra over a signed letter alphabet.

Words are tuples of nonzero ints: +k is letter k (1-based), -k its inverse.
Conjugacy-class representatives are cyclically reduced words in canonical
(lexicographically minimal) rotation; orientation is part of the class, so a
word and its inverse are distinct representatives.
"""

from __future__ import annotations

from typing import Iterator, Tuple

Word = Tuple[int, ...]


def free_reduce(word: Word) -> Word:
    out: list = []
    for c in word:
        if out and out[-1] == -c:
            out.pop()
        else:
            out.append(c)
    return tuple(out)


def cyclic_reduce(word: Word) -> Word:
    w = free_reduce(word)
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return w


def canonical_rotation(word: Word) -> Word:
    if not word:
        return word
    return min(word[i:] + word[:i] for i in range(len(word)))


def canonical(word: Word) -> Word:
    return canonical_rotation(cyclic_reduce(word))


def inverse(word: Word) -> Word:
    return tuple(-c for c in reversed(word))


def rotations(word: Word) -> Iterator[Word]:
    for i in range(len(word)):
        yield word[i:] + word[:i]


def primitive_root(word: Word) -> Tuple[Word, int]:
    """(u, k) with word = u^k as a cyclic word and k maximal."""
    w = cyclic_reduce(word)
    n = len(w)
    if n == 0:
        return w, 1
    for d in range(1, n + 1):
        if n % d:
            continue
        if w == w[d:] + w[:d]:
            return w[:d], n // d
    return w, 1


def is_proper_power(word: Word) -> bool:
    return primitive_root(word)[1] >= 2


def concat(*parts: Word) -> Word:
    out: Word = ()
    for p in parts:
        out = out + tuple(p)
    return free_reduce(out)


def power(word: Word, n: int) -> Word:
    if n == 0:
        return ()
    base = word if n > 0 else inverse(word)
    return free_reduce(base * abs(n))
