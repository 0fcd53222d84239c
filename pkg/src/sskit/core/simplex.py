"""Normal-form simplices over a cell complex.

Every simplex is represented as a nondegenerate base cell together with a
strictly increasing word of degeneracy indices (Eilenberg-Zilber normal
form): ``word = (j1, ..., jk)`` with ``j1 < ... < jk`` denotes
``s_{jk} ... s_{j1}`` applied to the base.  Equality of simplices is then
a plain pair comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator


@dataclass(frozen=True, order=True)
class CellId:
    """Reference to a nondegenerate cell: (dimension, index in that dimension)."""

    dim: int
    index: int

    def __repr__(self) -> str:
        return f"CellId({self.dim},{self.index})"


@dataclass(frozen=True, order=True)
class Simplex:
    """A possibly-degenerate simplex in normal form."""

    base: CellId
    word: tuple[int, ...] = ()

    @property
    def dim(self) -> int:
        return self.base.dim + len(self.word)

    @property
    def nondegenerate(self) -> bool:
        return not self.word

    def __repr__(self) -> str:
        if not self.word:
            return f"<{self.base.dim}.{self.base.index}>"
        w = ",".join(str(j) for j in self.word)
        return f"<s{w}@{self.base.dim}.{self.base.index}>"


def word_is_valid(word: tuple[int, ...], base_dim: int) -> bool:
    """Check strict increase and the index bound j_m <= base_dim + m - 1."""
    prev = -1
    for m, j in enumerate(word):
        if j <= prev or j < 0 or j > base_dim + m:
            return False
        prev = j
    return True


def apply_degeneracy(word: tuple[int, ...], a: int) -> tuple[int, ...]:
    """Normal-form word for ``s_a`` applied on the outside of ``s_word``.

    Uses s_a s_j = s_{j+1} s_a for a <= j to push s_a inward until the
    word is strictly increasing again.
    """
    w = list(word)
    pos = len(w)
    while pos > 0 and a <= w[pos - 1]:
        w[pos - 1] += 1
        pos -= 1
    w.insert(pos, a)
    return tuple(w)


def degenerate(s: Simplex, a: int) -> Simplex:
    """Apply the degeneracy s_a (0 <= a <= dim(s)) to a simplex."""
    if not 0 <= a <= s.dim:
        raise IndexError(f"degeneracy index {a} out of range for dim {s.dim}")
    return Simplex(s.base, apply_degeneracy(s.word, a))


def constant_simplex(vertex: CellId, n: int) -> Simplex:
    """The constant n-simplex s_0^n(v) at a vertex; normal form word (0..n-1)."""
    if vertex.dim != 0:
        raise ValueError("constant simplices sit over a vertex")
    return Simplex(vertex, tuple(range(n)))


def is_constant(s: Simplex) -> bool:
    """A simplex is constant when it is an iterated s_0 of a vertex.

    Any valid degeneracy word over a 0-dimensional base is forced to be
    (0, 1, ..., k-1), so this is just a base-dimension check.
    """
    return s.base.dim == 0


def degeneracy_words(length: int, base_dim: int, top: int) -> Iterator[tuple[int, ...]]:
    """All valid degeneracy words of the given length over a base of the
    given dimension, with indices < top (= resulting dim)."""
    if length == 0:
        yield ()
        return

    def rec(prefix: list[int], start: int, m: int) -> Iterator[tuple[int, ...]]:
        if m == length:
            yield tuple(prefix)
            return
        bound = min(top - 1, base_dim + m)
        for j in range(start, bound + 1):
            prefix.append(j)
            yield from rec(prefix, j + 1, m + 1)
            prefix.pop()

    yield from rec([], 0, 0)
