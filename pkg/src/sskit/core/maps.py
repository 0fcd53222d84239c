"""Simplicial maps and the constructions built on them.

A map is stored by its images on nondegenerate cells; the action on
degenerate simplices is forced by naturality.  Pushouts, products, joins,
subcomplexes, and exhaustive map enumeration all live here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from .budget import Budget
from .complex import SimplicialSet
from .generators import GeneratorComplex, standard_simplex, tuple_simplex
from .simplex import CellId, Simplex, degenerate


def apply_images(images: dict[CellId, Simplex], s: Simplex) -> Simplex:
    """Image of a (possibly degenerate) simplex under a cell-image table."""
    r = images[s.base]
    for j in s.word:
        r = degenerate(r, j)
    return r


class SimplicialMap:
    """A simplicial map, given by images of nondegenerate source cells."""

    def __init__(
        self,
        source: SimplicialSet,
        target: SimplicialSet,
        images: dict[CellId, Simplex],
    ) -> None:
        self.source = source
        self.target = target
        self.images = dict(images)
        for c in source.all_cells():
            img = self.images.get(c)
            if img is None:
                raise ValueError(f"no image for cell {source.label(c)}")
            if img.dim != c.dim:
                raise ValueError(
                    f"image of {source.label(c)} has dim {img.dim}, want {c.dim}"
                )
            if not target.has_cell(img.base):
                raise ValueError(f"image of {source.label(c)} not in target")

    def apply(self, s: Simplex) -> Simplex:
        return apply_images(self.images, s)

    def check(self) -> list[str]:
        """Face-compatibility violations; empty means the map is simplicial."""
        out = []
        for c in self.source.all_cells():
            if c.dim == 0:
                continue
            s = Simplex(c)
            for i in range(c.dim + 1):
                want = self.apply(self.source.face(s, i))
                got = self.target.face(self.images[c], i)
                if want != got:
                    out.append(
                        f"cell {self.source.label(c)}, face {i}: "
                        f"image face {got} != face image {want}"
                    )
        return out

    def is_mono(self) -> bool:
        """Injective on nondegenerate cells in every dimension."""
        for d in range(self.source.dim + 1):
            seen = set()
            for c in self.source.cells(d):
                img = self.images[c]
                if not img.nondegenerate or img in seen:
                    return False
                seen.add(img)
        return True

    def is_vertex_bijective(self) -> bool:
        imgs = {self.images[c].base for c in self.source.cells(0)}
        return (
            len(imgs) == self.source.n_cells(0)
            and len(imgs) == self.target.n_cells(0)
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialMap):
            return NotImplemented
        return (
            self.source.cell_counts() == other.source.cell_counts()
            and self.target.cell_counts() == other.target.cell_counts()
            and self.images == other.images
        )

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.images.items())))

    def __repr__(self) -> str:
        return f"SimplicialMap({self.source!r} -> {self.target!r})"


def identity_map(X: SimplicialSet) -> SimplicialMap:
    return SimplicialMap(X, X, {c: Simplex(c) for c in X.all_cells()})


def compose(f: SimplicialMap, g: SimplicialMap) -> SimplicialMap:
    """f followed by g (diagrammatic order)."""
    if f.target is not g.source and f.target != g.source:
        raise ValueError("maps do not compose")
    return SimplicialMap(
        f.source, g.target, {c: g.apply(img) for c, img in f.images.items()}
    )


def terminal_map(X: SimplicialSet, pt: SimplicialSet) -> SimplicialMap:
    """The unique map to a one-vertex complex with no other cells."""
    v = CellId(0, 0)
    from .simplex import constant_simplex

    return SimplicialMap(
        X, pt, {c: constant_simplex(v, c.dim) for c in X.all_cells()}
    )


# -- subcomplexes -----------------------------------------------------------


def sub_complex(
    X: SimplicialSet, keep: Iterable[CellId]
) -> tuple[SimplicialSet, SimplicialMap]:
    """Face-closed subcomplex on the given cells, with its inclusion."""
    kept = set(keep)
    reindex: dict[CellId, CellId] = {}
    counts: list[int] = []
    for d in range(X.dim + 1):
        cs = [c for c in X.cells(d) if c in kept]
        counts.append(len(cs))
        for idx, c in enumerate(cs):
            reindex[c] = CellId(d, idx)
    faces = {}
    for c in kept:
        if c.dim == 0:
            continue
        fs = []
        for f in X.cell_faces(c):
            if f.base not in kept:
                raise ValueError(f"cell set not face-closed at {X.label(c)}")
            fs.append(Simplex(reindex[f.base], f.word))
        faces[reindex[c]] = tuple(fs)
    labels = {reindex[c]: X.label(c) for c in kept}
    sub = SimplicialSet(counts, faces, labels)
    inc = SimplicialMap(sub, X, {new: Simplex(old) for old, new in reindex.items()})
    return sub, inc


def skeleton(X: SimplicialSet, n: int) -> SimplicialSet:
    return sub_complex(X, (c for c in X.all_cells() if c.dim <= n))[0]


def skeleton_inclusion(X: SimplicialSet, n: int) -> SimplicialMap:
    return sub_complex(X, (c for c in X.all_cells() if c.dim <= n))[1]


def full_subset(X: SimplicialSet, V: Iterable[CellId]) -> SimplicialMap:
    """Inclusion of the full subcomplex on a set of vertices."""
    vs = set(V)
    for v in vs:
        if v.dim != 0 or not X.has_cell(v):
            raise ValueError(f"{v} is not a vertex of the complex")
    keep = [
        c
        for c in X.all_cells()
        if all(w in vs for w in X.vertices_of(Simplex(c)))
    ]
    return sub_complex(X, keep)[1]


# -- pushouts ---------------------------------------------------------------


@dataclass
class Pushout:
    complex: SimplicialSet
    from_codomain: SimplicialMap  # C -> D
    from_total: SimplicialMap  # B -> D
    new_cells: list[CellId]  # cells of D attached from B minus A


def pushout(i: SimplicialMap, f: SimplicialMap) -> Pushout:
    """Pushout of B <-i- A -f-> C along a mono inclusion i."""
    if i.source != f.source:
        raise ValueError("pushout legs must share their source")
    if not i.is_mono():
        raise ValueError("pushout requires a mono inclusion")
    A, B, C = i.source, i.target, f.target

    hit: dict[CellId, CellId] = {}  # B-cell -> A-cell
    for a in A.all_cells():
        hit[i.images[a].base] = a

    counts = [C.n_cells(d) for d in range(max(C.dim, B.dim) + 1)]
    faces: dict[CellId, tuple[Simplex, ...]] = {
        c: C.cell_faces(c) for c in C.all_cells() if c.dim > 0
    }
    labels = dict(C.labels)
    used = set(labels.values())
    g_images: dict[CellId, Simplex] = {}
    new_cells: list[CellId] = []

    for d in range(B.dim + 1):
        for b in B.cells(d):
            if b in hit:
                g_images[b] = f.images[hit[b]]
    for d in range(B.dim + 1):
        for b in B.cells(d):
            if b in hit:
                continue
            nc = CellId(d, counts[d])
            counts[d] += 1
            g_images[b] = Simplex(nc)
            new_cells.append(nc)
            if d > 0:
                faces[nc] = tuple(
                    apply_images(g_images, s) for s in B.cell_faces(b)
                )
            lab = B.label(b)
            while lab in used:
                lab += "'"
            used.add(lab)
            labels[nc] = lab

    D = SimplicialSet(counts, faces, labels)
    inc_c = SimplicialMap(C, D, {c: Simplex(c) for c in C.all_cells()})
    g = SimplicialMap(B, D, g_images)
    return Pushout(D, inc_c, g, new_cells)


# -- products ---------------------------------------------------------------


@dataclass
class Product:
    x: SimplicialSet
    y: SimplicialSet
    complex: SimplicialSet
    cell_pair: dict[CellId, tuple[Simplex, Simplex]]
    pair_cell: dict[tuple[Simplex, Simplex], CellId]
    proj1: SimplicialMap = field(init=False)
    proj2: SimplicialMap = field(init=False)

    def __post_init__(self) -> None:
        self.proj1 = SimplicialMap(
            self.complex, self.x, {c: p[0] for c, p in self.cell_pair.items()}
        )
        self.proj2 = SimplicialMap(
            self.complex, self.y, {c: p[1] for c, p in self.cell_pair.items()}
        )

    def simplex_of_pair(self, u: Simplex, v: Simplex) -> Simplex:
        """Normal form of the pair (u, v) as a simplex of the product."""
        common = set(u.word) & set(v.word)
        if not common:
            return Simplex(self.pair_cell[(u, v)])
        j = max(common)
        inner = self.simplex_of_pair(self.x.face(u, j), self.y.face(v, j))
        from .simplex import apply_degeneracy

        return Simplex(inner.base, apply_degeneracy(inner.word, j))


def product(X: SimplicialSet, Y: SimplicialSet) -> Product:
    """Binary product; nondegenerate cells are word-disjoint simplex pairs."""
    top = X.dim + Y.dim
    cell_pair: dict[CellId, tuple[Simplex, Simplex]] = {}
    pair_cell: dict[tuple[Simplex, Simplex], CellId] = {}
    counts: list[int] = []
    for n in range(top + 1):
        pairs = sorted(
            (u, v)
            for u in X.simplices(n)
            for v in Y.simplices(n)
            if not set(u.word) & set(v.word)
        )
        counts.append(len(pairs))
        for idx, p in enumerate(pairs):
            c = CellId(n, idx)
            cell_pair[c] = p
            pair_cell[p] = c

    prod = Product.__new__(Product)
    prod.x, prod.y = X, Y
    prod.cell_pair, prod.pair_cell = cell_pair, pair_cell

    faces = {}
    labels = {}
    for c, (u, v) in cell_pair.items():
        labels[c] = f"{simplex_label(X, u)}|{simplex_label(Y, v)}"
        if c.dim == 0:
            continue
        faces[c] = tuple(
            prod.simplex_of_pair(X.face(u, i), Y.face(v, i))
            for i in range(c.dim + 1)
        )
    prod.complex = SimplicialSet(counts, faces, labels)
    prod.__post_init__()
    return prod


def product_functor(P: Product, Q: Product, f: SimplicialMap, g: SimplicialMap) -> SimplicialMap:
    """Induced map P -> Q for f: P.x -> Q.x and g: P.y -> Q.y."""
    return SimplicialMap(
        P.complex,
        Q.complex,
        {
            c: Q.simplex_of_pair(f.apply(u), g.apply(v))
            for c, (u, v) in P.cell_pair.items()
        },
    )


def simplex_label(X: SimplicialSet, s: Simplex) -> str:
    lab = X.label(s.base)
    if s.nondegenerate:
        return lab
    return "s" + ",".join(str(j) for j in s.word) + "@" + lab


# -- joins ------------------------------------------------------------------


@dataclass
class Join:
    x: SimplicialSet
    y: SimplicialSet
    complex: SimplicialSet
    inc_x: SimplicialMap
    inc_y: SimplicialMap
    pair_cell: dict[tuple[CellId, CellId], CellId]

    def embed_x(self, s: Simplex) -> Simplex:
        return Simplex(self.inc_x.images[s.base].base, s.word)

    def embed_y(self, s: Simplex) -> Simplex:
        return Simplex(self.inc_y.images[s.base].base, s.word)

    def join_simplex(self, a: Simplex, b: Simplex) -> Simplex:
        """Normal form of a * b: the pair base with b's word shifted past a."""
        base = self.pair_cell[(a.base, b.base)]
        return Simplex(base, a.word + tuple(j + a.dim + 1 for j in b.word))


def join(X: SimplicialSet, Y: SimplicialSet) -> Join:
    """Join: cells of X, cells of Y, and one (p+q+1)-cell per cell pair."""
    xdim, ydim = X.dim, Y.dim
    top = max(xdim, ydim, xdim + ydim + 1 if xdim >= 0 and ydim >= 0 else -1)
    counts = [0] * (top + 1)
    xmap: dict[CellId, CellId] = {}
    ymap: dict[CellId, CellId] = {}
    pair_cell: dict[tuple[CellId, CellId], CellId] = {}
    labels: dict[CellId, str] = {}

    def alloc(d: int) -> CellId:
        c = CellId(d, counts[d])
        counts[d] += 1
        return c

    for c in X.all_cells():
        xmap[c] = alloc(c.dim)
        labels[xmap[c]] = X.label(c)
    for c in Y.all_cells():
        ymap[c] = alloc(c.dim)
        labels[ymap[c]] = Y.label(c) + "~"
    for cx in X.all_cells():
        for cy in Y.all_cells():
            jc = alloc(cx.dim + cy.dim + 1)
            pair_cell[(cx, cy)] = jc
            labels[jc] = X.label(cx) + "*" + Y.label(cy)

    J = Join.__new__(Join)
    J.x, J.y, J.pair_cell = X, Y, pair_cell
    J.inc_x = None  # type: ignore[assignment]
    J.inc_y = None  # type: ignore[assignment]
    # temporary embed helpers usable before the complex exists
    embed_x = lambda s: Simplex(xmap[s.base], s.word)  # noqa: E731
    embed_y = lambda s: Simplex(ymap[s.base], s.word)  # noqa: E731

    def jsimp(a: Simplex, b: Simplex) -> Simplex:
        return Simplex(
            pair_cell[(a.base, b.base)],
            a.word + tuple(j + a.dim + 1 for j in b.word),
        )

    faces: dict[CellId, tuple[Simplex, ...]] = {}
    for c in X.all_cells():
        if c.dim > 0:
            faces[xmap[c]] = tuple(embed_x(s) for s in X.cell_faces(c))
    for c in Y.all_cells():
        if c.dim > 0:
            faces[ymap[c]] = tuple(embed_y(s) for s in Y.cell_faces(c))
    for (cx, cy), jc in pair_cell.items():
        p, q = cx.dim, cy.dim
        fs = []
        for i in range(p + q + 2):
            if i <= p:
                if p == 0:
                    fs.append(embed_y(Simplex(cy)))
                else:
                    fs.append(jsimp(X.face(Simplex(cx), i), Simplex(cy)))
            else:
                if q == 0:
                    fs.append(embed_x(Simplex(cx)))
                else:
                    fs.append(jsimp(Simplex(cx), Y.face(Simplex(cy), i - p - 1)))
        faces[jc] = tuple(fs)

    J.complex = SimplicialSet(counts, faces, labels)
    J.inc_x = SimplicialMap(X, J.complex, {c: Simplex(n) for c, n in xmap.items()})
    J.inc_y = SimplicialMap(Y, J.complex, {c: Simplex(n) for c, n in ymap.items()})
    return J


def join_functor(J: Join, K: Join, f: SimplicialMap, g: SimplicialMap) -> SimplicialMap:
    """Induced map J -> K for f: J.x -> K.x and g: J.y -> K.y."""
    images = {
        J.inc_x.images[c].base: K.embed_x(f.images[c]) for c in J.x.all_cells()
    }
    for c in J.y.all_cells():
        images[J.inc_y.images[c].base] = K.embed_y(g.images[c])
    for (cx, cy), jc in J.pair_cell.items():
        images[jc] = K.join_simplex(f.images[cx], g.images[cy])
    return SimplicialMap(J.complex, K.complex, images)


# -- maps out of standard simplices ----------------------------------------


def simplex_as_map(X: SimplicialSet, s: Simplex) -> SimplicialMap:
    """The map Delta^n -> X classifying an n-simplex."""
    G = standard_simplex(s.dim)
    images = {
        c: X.restrict(s, t) for t, c in G.lookup.items()
    }
    return SimplicialMap(G.complex, X, images)


def map_by_vertices(
    X: SimplicialSet, G: GeneratorComplex, vmap: dict[CellId, int]
) -> SimplicialMap:
    """Map into a tuple-indexed complex determined by a vertex assignment.

    The image vertex tuple of each cell must be weakly increasing and
    name a simplex of G.
    """
    images = {}
    for c in X.all_cells():
        t = tuple(vmap[v] for v in X.vertices_of(Simplex(c)))
        images[c] = tuple_simplex(t, G.lookup)
    return SimplicialMap(X, G.complex, images)


# -- exhaustive map enumeration ---------------------------------------------


def enumerate_maps(
    X: SimplicialSet,
    Y: SimplicialSet,
    fixed: dict[CellId, Simplex] | None = None,
    constraint: Callable[[CellId, Simplex], bool] | None = None,
    budget: Budget | None = None,
) -> Iterator[SimplicialMap]:
    """All simplicial maps X -> Y extending a partial assignment.

    Cells are assigned in increasing (dim, index) order; a candidate for a
    cell of dim >= 1 must have exactly the face tuple forced by the images
    already chosen, so consistency never needs re-checking afterwards.
    """
    cells = sorted(X.all_cells())
    images: dict[CellId, Simplex] = dict(fixed or {})
    todo = [c for c in cells if c not in images]

    def rec(k: int) -> Iterator[SimplicialMap]:
        if k == len(todo):
            yield SimplicialMap(X, Y, images)
            return
        c = todo[k]
        if c.dim == 0:
            cands: Sequence[Simplex] = [Simplex(v) for v in Y.cells(0)]
        else:
            want = tuple(
                apply_images(images, s) for s in X.cell_faces(c)
            )
            cands = Y.simplices_with_boundary(c.dim, want)
        for cand in cands:
            if constraint is not None and not constraint(c, cand):
                continue
            if budget is not None:
                budget.spend()
            images[c] = cand
            yield from rec(k + 1)
            del images[c]

    yield from rec(0)


def all_extensions(
    f: SimplicialMap,
    i: SimplicialMap,
    constraint: Callable[[CellId, Simplex], bool] | None = None,
    budget: Budget | None = None,
) -> Iterator[SimplicialMap]:
    """All maps B -> Y with g o i = f, for a mono inclusion i: A -> B."""
    if not i.is_mono():
        raise ValueError("extension requires a mono inclusion")
    fixed = {i.images[a].base: f.images[a] for a in i.source.all_cells()}
    return enumerate_maps(i.target, f.target, fixed, constraint, budget)
