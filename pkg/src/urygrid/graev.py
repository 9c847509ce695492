"""Graev seminorms on free-group words over a weighted metric alphabet.

Words are signed letter sequences; a pairing connects opposite-sign letters
by non-crossing arcs. A pairing's cost charges each arc the distance between
its letters and each unpaired letter its weight, and the seminorm of a word
is the cheapest pairing. Costs are plain non-negative grid integers and are
never capped. Two routes compute the minimum: explicit enumeration of all
pairings (the oracle) and an interval dynamic program over the leftmost
position; they must agree exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _kernels
from .errors import GuardError, ValidationError
from .spaces import FiniteMetricSpace

PAIRING_ENUMERATION_MAX_LEN = 14

Word = tuple[tuple[int, int], ...]  # (letter index, sign +1/-1)


@dataclass(frozen=True)
class WeightedAlphabet:
    """Letters with exact pairwise distances and a weight per letter.

    Unlike a diameter-capped space, alphabet distances may exceed the
    denominator (relation alphabets measured by sum-of-coordinates Hausdorff
    distances reach twice the base diameter), so the matrix is validated
    directly: symmetric, zero diagonal, triangle inequality. Weights must be
    non-negative and change by at most the distance between letters.
    """

    letters: tuple[str, ...]
    denominator: int
    dist: tuple[tuple[int, ...], ...]
    weights: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        object.__setattr__(self, "dist", tuple(tuple(r) for r in self.dist))
        object.__setattr__(self, "weights", tuple(self.weights))
        n = len(self.letters)
        if n == 0 or len(set(self.letters)) != n:
            raise ValidationError("letters must be nonempty and unique")
        if len(self.dist) != n or any(len(r) != n for r in self.dist):
            raise ValidationError(f"distance matrix is not {n}x{n}")
        if len(self.weights) != n:
            raise ValidationError("one weight per letter required")
        for i in range(n):
            if self.dist[i][i] != 0:
                raise ValidationError(f"nonzero self-distance for {self.letters[i]}")
            for j in range(n):
                e = self.dist[i][j]
                if not isinstance(e, int) or e < 0:
                    raise ValidationError(f"distance {e!r} is not a non-negative integer")
                if self.dist[j][i] != e:
                    raise ValidationError("distance matrix is not symmetric")
                for k in range(n):
                    if self.dist[i][j] > self.dist[i][k] + self.dist[k][j]:
                        raise ValidationError(
                            f"triangle inequality fails on "
                            f"({self.letters[i]},{self.letters[j]},{self.letters[k]})")
        for i in range(n):
            w = self.weights[i]
            if not isinstance(w, int) or w < 0:
                raise ValidationError(f"weight {w!r} is not a non-negative integer")
        for i in range(n):
            for j in range(n):
                if abs(self.weights[i] - self.weights[j]) > self.dist[i][j]:
                    raise ValidationError(
                        f"weights expand: |k({self.letters[i]}) - k({self.letters[j]})| "
                        f"> d", (self.letters[i], self.letters[j]))

    @property
    def n(self) -> int:
        return len(self.letters)

    def index(self, name: str) -> int:
        try:
            return self.letters.index(name)
        except ValueError:
            raise ValidationError(f"unknown letter {name!r}") from None

    def flat(self) -> list[int]:
        return [e for row in self.dist for e in row]

    @classmethod
    def from_space(cls, space: FiniteMetricSpace, weights) -> "WeightedAlphabet":
        return cls(space.points, space.denominator, space.dist, tuple(weights))


def parse_word(alphabet: WeightedAlphabet, text: str) -> Word:
    """Whitespace-separated tokens; ``name`` for a positive letter and
    ``name^-1`` for its inverse."""
    out = []
    for tok in text.split():
        if tok.endswith("^-1"):
            out.append((alphabet.index(tok[:-3]), -1))
        else:
            out.append((alphabet.index(tok), 1))
    return tuple(out)


def format_word(alphabet: WeightedAlphabet, word: Word) -> str:
    if not word:
        return ""
    return " ".join(alphabet.letters[l] + ("" if s == 1 else "^-1") for l, s in word)


def reduce_word(word: Word) -> Word:
    """Cancel adjacent mutually inverse letters until none remain."""
    stack: list[tuple[int, int]] = []
    for letter, sign in word:
        if stack and stack[-1] == (letter, -sign):
            stack.pop()
        else:
            stack.append((letter, sign))
    return tuple(stack)


def inverse_word(word: Word) -> Word:
    return tuple((letter, -sign) for letter, sign in reversed(word))


def concat(u: Word, v: Word) -> Word:
    """Concatenation without cancellation (the monoid product)."""
    return tuple(u) + tuple(v)


def group_product(u: Word, v: Word) -> Word:
    """Concatenate and reduce (the group product of reduced words)."""
    return reduce_word(concat(u, v))


def enumerate_pairings(word: Word, max_len: int = PAIRING_ENUMERATION_MAX_LEN):
    """Every valid pairing of the word as a frozenset of position arcs:
    arcs join opposite signs and never cross. Super-exponential in length,
    hence the guard."""
    if len(word) > max_len:
        raise GuardError(
            f"word of length {len(word)} exceeds the enumeration bound {max_len}; "
            f"use the dynamic program")
    signs = [s for _, s in word]
    return [frozenset(p) for p in _kernels.iter_pairings(signs, 0, len(word))]


def graev_sum(word: Word, pairing, alphabet: WeightedAlphabet) -> int:
    """Cost of one pairing: letter distances on arcs, weights off them.
    Validates that the pairing is a genuine non-crossing opposite-sign
    matching of the word's positions."""
    n = len(word)
    arcs = sorted(tuple(sorted(arc)) for arc in pairing)
    used: set[int] = set()
    for a, b in arcs:
        if not (0 <= a < b < n):
            raise ValidationError(f"arc ({a},{b}) is out of range")
        if a in used or b in used:
            raise ValidationError(f"position reused by arc ({a},{b})")
        used.update((a, b))
        if word[a][1] != -word[b][1]:
            raise ValidationError(f"arc ({a},{b}) joins equal signs")
    for (a1, b1) in arcs:
        for (a2, b2) in arcs:
            if a1 < a2 < b1 < b2:
                raise ValidationError(f"arcs ({a1},{b1}) and ({a2},{b2}) cross")
    total = 0
    for a, b in arcs:
        total += alphabet.dist[word[a][0]][word[b][0]]
    for i in range(n):
        if i not in used:
            total += alphabet.weights[word[i][0]]
    return total


def graev_norm_bruteforce(word: Word, alphabet: WeightedAlphabet,
                          max_len: int = PAIRING_ENUMERATION_MAX_LEN) -> int:
    """Minimum cost over pairings by explicit enumeration; the oracle."""
    letters = [l for l, _ in word]
    signs = [s for _, s in word]
    if len(word) > max_len:
        raise GuardError(
            f"word of length {len(word)} exceeds the enumeration bound {max_len}")
    return _kernels.graev_norm_bruteforce(letters, signs, alphabet.n,
                                          alphabet.flat(), list(alphabet.weights))


def graev_norm(word: Word, alphabet: WeightedAlphabet) -> int:
    """Minimum cost over pairings by the interval dynamic program: the
    leftmost position is unpaired, or arcs to an opposite-sign position,
    splitting the word into a nested interior and a disjoint tail. Cubic."""
    letters = [l for l, _ in word]
    signs = [s for _, s in word]
    return _kernels.graev_norm_dp(letters, signs, alphabet.n,
                                  alphabet.flat(), list(alphabet.weights))


def graev_distance(u: Word, v: Word, alphabet: WeightedAlphabet) -> int:
    """Left-invariant pseudometric induced by the seminorm: the norm of
    u^{-1} v after reduction."""
    return graev_norm(reduce_word(concat(inverse_word(u), v)), alphabet)
