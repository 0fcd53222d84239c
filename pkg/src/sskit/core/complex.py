"""Finite simplicial sets with face data in degeneracy normal form."""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

from .simplex import (
    CellId,
    Simplex,
    apply_degeneracy,
    degeneracy_words,
    word_is_valid,
)


class SimplicialSet:
    """A finite simplicial set.

    Nondegenerate cells are stored per dimension; each cell of dimension
    k >= 1 carries a tuple of k+1 face simplices (d_0 ... d_k) in normal
    form.  Instances are immutable after construction; all operations are
    pure functions of their inputs.
    """

    def __init__(
        self,
        cell_counts: Sequence[int],
        faces: dict[CellId, tuple[Simplex, ...]],
        labels: dict[CellId, str] | None = None,
    ) -> None:
        counts = list(cell_counts)
        while counts and counts[-1] == 0:
            counts.pop()
        self._counts: tuple[int, ...] = tuple(counts)
        self._faces: dict[CellId, tuple[Simplex, ...]] = dict(faces)
        self.labels: dict[CellId, str] = dict(labels or {})
        self._face_cache: dict[tuple[Simplex, int], Simplex] = {}
        self._boundary_index: dict[int, dict[tuple[Simplex, ...], list[Simplex]]] = {}
        self._structural_check()

    # -- basic queries ---------------------------------------------------

    @property
    def dim(self) -> int:
        """Top dimension with a nondegenerate cell; -1 for the empty complex."""
        return len(self._counts) - 1

    @property
    def is_empty(self) -> bool:
        return not self._counts

    def n_cells(self, dim: int) -> int:
        if 0 <= dim <= self.dim:
            return self._counts[dim]
        return 0

    def cell_counts(self) -> tuple[int, ...]:
        return self._counts

    def total_cells(self) -> int:
        return sum(self._counts)

    def cells(self, dim: int) -> list[CellId]:
        return [CellId(dim, i) for i in range(self.n_cells(dim))]

    def all_cells(self) -> Iterator[CellId]:
        for d in range(self.dim + 1):
            for i in range(self._counts[d]):
                yield CellId(d, i)

    def has_cell(self, c: CellId) -> bool:
        return 0 <= c.dim <= self.dim and 0 <= c.index < self._counts[c.dim]

    def cell_faces(self, c: CellId) -> tuple[Simplex, ...]:
        """Stored face tuple (d_0 ... d_k) of a nondegenerate cell, k >= 1."""
        return self._faces[c]

    def label(self, c: CellId) -> str:
        return self.labels.get(c, f"c{c.dim}_{c.index}")

    def cell_by_label(self, name: str) -> CellId | None:
        for c, lab in self.labels.items():
            if lab == name:
                return c
        return None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialSet):
            return NotImplemented
        return self._counts == other._counts and self._faces == other._faces

    def __hash__(self) -> int:
        return hash((self._counts, tuple(sorted(self._faces.items()))))

    def __repr__(self) -> str:
        return f"SimplicialSet(cells={self._counts})"

    # -- face and vertex computation --------------------------------------

    def face(self, s: Simplex, i: int) -> Simplex:
        """The i-th face of a simplex, in normal form.

        Commutes d_i through the degeneracy word with the standard
        identities, then applies the stored face data at the base.
        """
        if not 0 <= i <= s.dim or s.dim == 0:
            raise IndexError(f"face index {i} out of range for dim {s.dim}")
        key = (s, i)
        cached = self._face_cache.get(key)
        if cached is not None:
            return cached

        word = list(s.word)
        outer: list[int] = []  # degeneracies passed, outermost first
        result: Simplex | None = None
        while word:
            j = word.pop()
            if i == j or i == j + 1:
                result = Simplex(s.base, tuple(word))
                break
            if i < j:
                outer.append(j - 1)
            else:  # i > j + 1
                outer.append(j)
                i -= 1
        if result is None:
            result = self._faces[s.base][i]
        for a in reversed(outer):
            result = Simplex(result.base, apply_degeneracy(result.word, a))
        self._face_cache[key] = result
        return result

    def boundary(self, s: Simplex) -> tuple[Simplex, ...]:
        return tuple(self.face(s, i) for i in range(s.dim + 1))

    def vertex(self, s: Simplex, j: int) -> CellId:
        """The j-th vertex of a simplex."""
        if not 0 <= j <= s.dim:
            raise IndexError(f"vertex index {j} out of range for dim {s.dim}")
        cur = s
        for k in range(s.dim, j, -1):
            cur = self.face(cur, k)
        for _ in range(j):
            cur = self.face(cur, 0)
        return cur.base

    def vertices_of(self, s: Simplex) -> tuple[CellId, ...]:
        return tuple(self.vertex(s, j) for j in range(s.dim + 1))

    def restrict(self, s: Simplex, positions: Sequence[int]) -> Simplex:
        """Iterated face keeping only the given vertex positions (increasing)."""
        keep = list(positions)
        cur = s
        for j in range(s.dim, -1, -1):
            if j not in keep:
                cur = self.face(cur, sum(1 for k in keep if k < j))
        return cur

    # -- simplex enumeration ----------------------------------------------

    def simplices(self, n: int) -> Iterator[Simplex]:
        """All n-simplices, degenerate ones included."""
        for p in range(min(n, self.dim) + 1):
            for i in range(self._counts[p]):
                base = CellId(p, i)
                for word in degeneracy_words(n - p, p, n):
                    yield Simplex(base, word)

    def n_simplices(self, n: int) -> int:
        return sum(1 for _ in self.simplices(n))

    def simplices_with_boundary(
        self, n: int, faces: tuple[Simplex, ...]
    ) -> list[Simplex]:
        """All n-simplices whose face tuple equals the given one (n >= 1)."""
        index = self._boundary_index.get(n)
        if index is None:
            index = {}
            for s in self.simplices(n):
                index.setdefault(self.boundary(s), []).append(s)
            for group in index.values():
                group.sort()
            self._boundary_index[n] = index
        return index.get(faces, [])

    # -- internal ----------------------------------------------------------

    def _structural_check(self) -> None:
        for d in range(1, self.dim + 1):
            for i in range(self._counts[d]):
                c = CellId(d, i)
                fs = self._faces.get(c)
                if fs is None or len(fs) != d + 1:
                    raise ValueError(f"cell {c} lacks a full face tuple")
                for f in fs:
                    if f.dim != d - 1:
                        raise ValueError(f"face {f} of {c} has wrong dimension")
                    if not self.has_cell(f.base):
                        raise ValueError(f"face {f} of {c} targets a missing cell")
                    if not word_is_valid(f.word, f.base.dim):
                        raise ValueError(f"face {f} of {c} is not in normal form")


class ComplexBuilder:
    """Incremental construction of a SimplicialSet."""

    def __init__(self) -> None:
        self._counts: list[int] = []
        self._faces: dict[CellId, tuple[Simplex, ...]] = {}
        self._labels: dict[CellId, str] = {}

    def add_cell(
        self,
        dim: int,
        faces: Iterable[Simplex] = (),
        label: str | None = None,
    ) -> CellId:
        while len(self._counts) <= dim:
            self._counts.append(0)
        c = CellId(dim, self._counts[dim])
        self._counts[dim] += 1
        if dim > 0:
            self._faces[c] = tuple(faces)
        if label is not None:
            self._labels[c] = label
        return c

    def build(self) -> SimplicialSet:
        return SimplicialSet(self._counts, self._faces, self._labels)


def validate(X: SimplicialSet) -> list[str]:
    """Check every SimplicialSet invariant; return a list of violations.

    Structural problems (missing cells, malformed words) are caught at
    construction time; this checks the simplicial identities
    d_i d_j = d_{j-1} d_i (i < j) on every cell after normalization.
    """
    violations: list[str] = []
    for d in range(2, X.dim + 1):
        for c in X.cells(d):
            s = Simplex(c)
            for j in range(1, d + 1):
                for i in range(j):
                    lhs = X.face(X.face(s, j), i)
                    rhs = X.face(X.face(s, i), j - 1)
                    if lhs != rhs:
                        violations.append(
                            f"cell {X.label(c)} (dim {d}): "
                            f"d_{i} d_{j} = {lhs} but d_{j-1} d_{i} = {rhs}"
                        )
    return violations


EMPTY = SimplicialSet((), {})
