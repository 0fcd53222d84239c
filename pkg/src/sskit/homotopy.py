"""Homotopy categories as presentations, with budgeted word problems.

The category of a complex has its vertices as objects and its
nondegenerate edges as generators; every nondegenerate triangle imposes
one relation, and degenerate edges are identities structurally.  Words
are composable edge sequences in diagrammatic order.  Completion is a
length-lexicographic Knuth-Bendix pass; Exact status is claimed only on
confluent termination with the irreducible-word enumeration exhausted
inside the word budget.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

from .core import (
    CellId,
    SimplicialMap,
    SimplicialSet,
    Simplex,
)
from .lifting import NO, RlpVerdict, YES, classify_map

Word = tuple[CellId, ...]

EXACT = "exact"

DEFAULT_WORD_BUDGET = 8
_MAX_RULES = 300
_MAX_PASSES = 60


def _key(w: Word) -> tuple:
    return (len(w), w)


def normal_form(w: Word, rules: list[tuple[Word, Word]]) -> Word:
    """Reduce a word to normal form (leftmost, first matching rule)."""
    changed = True
    guard = 0
    while changed:
        changed = False
        guard += 1
        if guard > 10000:
            raise RuntimeError("rewrite did not terminate")
        for i in range(len(w) + 1):
            for l, r in rules:
                if w[i : i + len(l)] == l and len(l) > 0:
                    w = w[:i] + r + w[i + len(l) :]
                    changed = True
                    break
            if changed:
                break
    return w


def _critical_pairs(r1: tuple[Word, Word], r2: tuple[Word, Word]):
    l1, o1 = r1
    l2, o2 = r2
    # overlap: proper suffix of l1 equals proper prefix of l2
    for k in range(1, min(len(l1), len(l2))):
        if l1[len(l1) - k :] == l2[:k]:
            yield (o1 + l2[k:], l1[: len(l1) - k] + o2)
    # containment: l2 occurs strictly inside l1
    if len(l2) < len(l1):
        for i in range(len(l1) - len(l2) + 1):
            if l1[i : i + len(l2)] == l2:
                yield (o1, l1[:i] + o2 + l1[i + len(l2) :])


def complete(relations: list[tuple[Word, Word]]) -> tuple[list[tuple[Word, Word]], bool]:
    """Knuth-Bendix completion under the shortlex order.

    Returns (rules, confluent); confluent is False when the rule or pass
    limits are hit, in which case the rules are still sound rewrites.
    """
    rules: list[tuple[Word, Word]] = []

    def add(a: Word, b: Word) -> bool:
        a, b = normal_form(a, rules), normal_form(b, rules)
        if a == b:
            return True
        if _key(a) < _key(b):
            a, b = b, a
        rules.append((a, b))
        return len(rules) <= _MAX_RULES

    for a, b in relations:
        if not add(a, b):
            return rules, False

    for _ in range(_MAX_PASSES):
        new: list[tuple[Word, Word]] = []
        for r1 in rules:
            for r2 in rules:
                for a, b in _critical_pairs(r1, r2):
                    if normal_form(a, rules) != normal_form(b, rules):
                        new.append((a, b))
        if not new:
            return rules, True
        for a, b in new:
            if not add(a, b):
                return rules, False
    return rules, False


@dataclass
class CategoryPresentation:
    objects: list[CellId]
    edges: dict[CellId, tuple[CellId, CellId]]  # generator -> (src, tgt)
    relations: list[tuple[Word, Word]]
    rules: list[tuple[Word, Word]]
    confluent: bool
    word_budget: int
    hom: dict[tuple[CellId, CellId], list[Word]] = field(default_factory=dict)
    exact: bool = False

    def closure_status(self, x: CellId, y: CellId) -> str:
        return EXACT if self.exact else f"truncated({self.word_budget})"

    def hom_set(self, x: CellId, y: CellId) -> list[Word]:
        return self.hom.get((x, y), [])

    def nf(self, w: Word) -> Word:
        return normal_form(w, self.rules)

    def inverse_of(self, w: Word, src: CellId, tgt: CellId) -> Word | None:
        """An inverse word among irreducible representatives, if any."""
        for g in self.hom_set(tgt, src):
            if self.nf(w + g) == () and self.nf(g + w) == ():
                return g
        return None

    def iso_exists(self, x: CellId, y: CellId) -> bool:
        if x == y:
            return True
        return any(
            self.inverse_of(w, x, y) is not None for w in self.hom_set(x, y)
        )


def _edge_endpoints(S: SimplicialSet, e: CellId) -> tuple[CellId, CellId]:
    fs = S.cell_faces(e)
    return fs[1].base, fs[0].base  # (source, target)


def _path_of(S: SimplicialSet, *faces: Simplex) -> Word:
    return tuple(f.base for f in faces if f.nondegenerate)


@functools.lru_cache(maxsize=256)
def homotopy_category(S: SimplicialSet, word_budget: int = DEFAULT_WORD_BUDGET) -> CategoryPresentation:
    objects = S.cells(0)
    edges = {e: _edge_endpoints(S, e) for e in S.cells(1)}
    relations = []
    for t in S.cells(2):
        d0, d1, d2 = S.cell_faces(t)
        relations.append((_path_of(S, d2, d0), _path_of(S, d1)))
    rules, confluent = complete(relations)
    pres = CategoryPresentation(
        objects, edges, relations, rules, confluent, word_budget
    )

    out: dict[CellId, list[CellId]] = {x: [] for x in objects}
    for e, (src, _) in edges.items():
        out[src].append(e)
    exhausted = True
    for x in objects:
        pres.hom.setdefault((x, x), []).append(())
        frontier: list[tuple[CellId, Word]] = [(x, ())]
        for _ in range(word_budget):
            nxt = []
            for at, w in frontier:
                for e in out[at]:
                    w2 = w + (e,)
                    if normal_form(w2, rules) != w2:
                        continue
                    tgt = edges[e][1]
                    pres.hom.setdefault((x, tgt), []).append(w2)
                    nxt.append((tgt, w2))
            frontier = nxt
            if not frontier:
                break
        if frontier:
            exhausted = False
    pres.exact = confluent and exhausted
    return pres


# -- equivalence edges ---------------------------------------------------------


@dataclass
class EquivalenceVerdict:
    value: str  # "yes" | "no" | "unknown"
    witness: Word | None = None


def is_equivalence_edge(
    S: SimplicialSet, e: Simplex, word_budget: int = DEFAULT_WORD_BUDGET
) -> EquivalenceVerdict:
    """Is the class of an edge invertible in the homotopy category?"""
    if e.dim != 1:
        raise ValueError("equivalence test takes an edge")
    if not e.nondegenerate:
        return EquivalenceVerdict("yes", ())
    pres = homotopy_category(S, word_budget)
    src, tgt = pres.edges[e.base]
    g = pres.inverse_of((e.base,), src, tgt)
    if g is not None:
        return EquivalenceVerdict("yes", g)
    return EquivalenceVerdict("no" if pres.exact else "unknown")


# -- pi0 -----------------------------------------------------------------------


def pi0(space) -> list[frozenset[CellId]]:
    """Vertex set modulo the edge relation (1-truncation only)."""
    X: SimplicialSet = getattr(space, "space", space)
    parent = {v: v for v in X.cells(0)}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in X.cells(1):
        a, b = _edge_endpoints(X, e)
        parent[find(a)] = find(b)
    classes: dict[CellId, set[CellId]] = {}
    for v in X.cells(0):
        classes.setdefault(find(v), set()).add(v)
    return [frozenset(c) for c in classes.values()]


# -- isofibrations and categorical fibrations ----------------------------------


@dataclass
class IsofibrationReport:
    verdict: str  # "yes" | "no" | "unknown"
    witness: tuple[CellId, CellId] | None = None  # (base edge, stranded vertex)


def check_isofibration(
    p: SimplicialMap, word_budget: int = DEFAULT_WORD_BUDGET
) -> IsofibrationReport:
    """Every equivalence edge of the base lifts, with prescribed source,
    to an equivalence edge of the total complex."""
    X, S = p.source, p.target
    unknown = False
    for f in S.cells(1):
        vf = is_equivalence_edge(S, Simplex(f), word_budget)
        if vf.value == "no":
            continue
        f_src = _edge_endpoints(S, f)[0]
        for x in X.cells(0):
            if p.images[x].base != f_src:
                continue
            lifted = False
            lift_unknown = False
            for u in X.cells(1):
                if p.images[u] != Simplex(f):
                    continue
                if _edge_endpoints(X, u)[0] != x:
                    continue
                vu = is_equivalence_edge(X, Simplex(u), word_budget)
                if vu.value == "yes":
                    lifted = True
                    break
                if vu.value == "unknown":
                    lift_unknown = True
            if lifted:
                continue
            if vf.value == "yes" and not lift_unknown:
                return IsofibrationReport("no", (f, x))
            unknown = True
    return IsofibrationReport("unknown" if unknown else "yes")


@dataclass
class CategoricalFibrationReport:
    inner: RlpVerdict
    isofibration: IsofibrationReport
    verdict: str  # "yes" (bounded) | "no" | "unknown"
    bound: int


def check_categorical_fibration(
    p: SimplicialMap,
    max_dim: int | None = None,
    node_budget: int = 10**6,
    word_budget: int = DEFAULT_WORD_BUDGET,
) -> CategoricalFibrationReport:
    rep = classify_map(p, max_dim, node_budget, classes=("inner",))
    inner = rep.classes["inner"]
    iso = check_isofibration(p, word_budget)
    if inner.status == NO or iso.verdict == "no":
        verdict = "no"
    elif inner.status == YES and iso.verdict == "yes":
        verdict = "yes"
    else:
        verdict = "unknown"
    return CategoricalFibrationReport(inner, iso, verdict, rep.checked_dim)


# -- Dwyer-Kan conditions -------------------------------------------------------


@dataclass
class DwyerKanReport:
    essentially_surjective: str
    fully_faithful: str
    failing_pair: tuple[CellId, CellId] | None = None


def collapses_to_point(X: SimplicialSet) -> bool:
    """Greedy elementary collapse; True certifies contractibility.

    A False return is inconclusive (heuristic only).
    """
    if X.n_cells(0) == 0:
        return False
    present: set[CellId] = set(X.all_cells())
    while True:
        occurrences: dict[CellId, list[CellId]] = {}
        for c in present:
            if c.dim == 0:
                continue
            for f in X.cell_faces(c):
                occurrences.setdefault(f.base, []).append(c)
        pair = None
        for tau, cos in sorted(occurrences.items()):
            if tau not in present or len(cos) != 1:
                continue
            sigma = cos[0]
            if Simplex(tau) in X.cell_faces(sigma):
                pair = (tau, sigma)
                break
        if pair is None:
            break
        present.discard(pair[0])
        present.discard(pair[1])
    return len(present) == 1 and next(iter(present)).dim == 0


def dwyer_kan_check(
    f: SimplicialMap,
    dims: int = 1,
    word_budget: int = DEFAULT_WORD_BUDGET,
) -> DwyerKanReport:
    """Essential surjectivity on homotopy categories, and a three-valued
    fully-faithfulness check on left mapping spaces."""
    from .core import hom_left  # local: keeps import graph flat

    C, D = f.source, f.target
    hd = homotopy_category(D, word_budget)
    image_objs = {f.images[c].base for c in C.cells(0)}
    ess = "yes"
    for d in D.cells(0):
        if any(hd.iso_exists(a, d) for a in image_objs):
            continue
        ess = "no" if hd.exact else "unknown"
        break

    ff = "yes"
    failing = None
    for c in C.cells(0):
        for c2 in C.cells(0):
            hc = hom_left(C, c, c2, dims)
            hdm = hom_left(D, f.images[c].base, f.images[c2].base, dims)
            level_bij = all(
                _level_bijection(f, hc.levels[n], hdm.levels[n])
                for n in range(dims + 1)
            )
            if level_bij:
                continue
            if not _pi0_bijection(f, hc, hdm):
                return DwyerKanReport(ess, "no", (c, c2))
            if collapses_to_point(hc.space) and collapses_to_point(hdm.space):
                continue
            ff = "unknown"
            failing = failing or (c, c2)
    return DwyerKanReport(ess, ff, failing)


def _level_bijection(f: SimplicialMap, src_level, tgt_level) -> bool:
    images = [f.apply(u) for u in src_level]
    return len(set(images)) == len(images) and sorted(images) == sorted(tgt_level)


def _pi0_bijection(f: SimplicialMap, hc, hdm) -> bool:
    X, Y = hc.space, hdm.space
    cls_c = pi0(hc)
    cls_d = pi0(hdm)
    rep_of = {}
    for k, cls in enumerate(cls_d):
        for v in cls:
            rep_of[v] = k
    seen = set()
    for cls in cls_c:
        v = next(iter(cls))
        u = hc._lw.element_of(v)  # ambient edge representing this vertex
        img = f.apply(u)
        tgt_vertex = hdm._lw.normalize(0, img).base
        k = rep_of[tgt_vertex]
        if k in seen:
            return False
        seen.add(k)
    return len(seen) == len(cls_d)
