"""Stage-bounded factorizations: horn attachment stages, pre-fibrancy,
saturation, descent over the 2-horn, mapping path spaces, and a
brute-force descent-extension search.

Every construction here is truncation-bounded and records its bound;
attachment enumeration ranges over ALL maps from the generator domains,
degenerate images included, which is why even a point grows under a
stage of inner-horn attachments.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .core import (
    Budget,
    BudgetExceeded,
    DEFAULT_NODE_BUDGET,
    CellId,
    SimplicialMap,
    SimplicialSet,
    Simplex,
    apply_images,
    compose,
    constant_simplex,
    enumerate_maps,
    hom_left,
    horn_complex,
    is_constant,
    product,
    restricted_function_complex,
    simplex_as_map,
    standard_simplex,
    sub_complex,
    tuple_simplex,
)
from .lifting import (
    BUDGET,
    FOUND,
    NONE,
    LiftResult,
    extend_along,
    generator_inclusion,
    generating_family,
    horn_inclusion,
    classify_map,
)

# -- simultaneous attachment (one pushout per stage) ---------------------------


@dataclass
class Attachment:
    inclusion: SimplicialMap  # generator A -> B
    map: SimplicialMap  # attaching map A -> S(m)
    new_cells: list[CellId] = field(default_factory=list)  # cells of S(m+1)
    total_map: SimplicialMap | None = None  # B -> S(m+1)


def attach_all(S: SimplicialSet, attachments: list[Attachment]) -> tuple[SimplicialSet, SimplicialMap]:
    """Pushout of the coproduct of all attachments into S, at once."""
    counts = [S.n_cells(d) for d in range(S.dim + 1)]
    faces = {c: S.cell_faces(c) for c in S.all_cells() if c.dim > 0}
    labels = dict(S.labels)
    used = set(labels.values())

    for att in attachments:
        i, alpha = att.inclusion, att.map
        B = i.target
        hit = {i.images[a].base: a for a in i.source.all_cells()}
        g: dict[CellId, Simplex] = {}
        for b in sorted(B.all_cells()):
            if b in hit:
                g[b] = alpha.images[hit[b]]
                continue
            while len(counts) <= b.dim:
                counts.append(0)
            nc = CellId(b.dim, counts[b.dim])
            counts[b.dim] += 1
            g[b] = Simplex(nc)
            att.new_cells.append(nc)
            if b.dim > 0:
                faces[nc] = tuple(apply_images(g, s) for s in B.cell_faces(b))
            lab = B.label(b)
            while lab in used:
                lab += "'"
            used.add(lab)
            labels[nc] = lab
        att.total_map = g

    out = SimplicialSet(counts, faces, labels)
    inc = SimplicialMap(S, out, {c: Simplex(c) for c in S.all_cells()})
    for att in attachments:
        att.total_map = SimplicialMap(att.inclusion.target, out, att.total_map)
    return out, inc


@dataclass
class SoaTrace:
    selector_id: str
    stages: list[SimplicialSet]
    inclusions: list[SimplicialMap]  # S(m) -> S(m+1)
    attachments: list[list[Attachment]]  # per stage

    @property
    def result(self) -> SimplicialSet:
        return self.stages[-1]

    def composite_inclusion(self) -> SimplicialMap:
        f = None
        for inc in self.inclusions:
            f = inc if f is None else compose(f, inc)
        if f is None:
            from .core import identity_map

            return identity_map(self.stages[0])
        return f


def soa_stage(
    S: SimplicialSet,
    generators: list[SimplicialMap],
    selector,
    selector_id: str = "custom",
    node_budget: int | Budget = DEFAULT_NODE_BUDGET,
) -> tuple[SimplicialSet, SimplicialMap, list[Attachment]]:
    """One stage of the small object argument: enumerate every map from a
    generator domain into S, keep those passing the selector, attach all
    of them as a single pushout.  All-or-nothing: a budget overrun raises
    before any cell is attached."""
    budget = node_budget if isinstance(node_budget, Budget) else Budget(node_budget)
    attachments = []
    for i in generators:
        for alpha in enumerate_maps(i.source, S, budget=budget):
            if selector(i, alpha):
                attachments.append(Attachment(i, alpha))
    out, inc = attach_all(S, attachments)
    return out, inc, attachments


# -- pre-fibrancy ---------------------------------------------------------------


@dataclass
class PreFibrantReport:
    lambda21_verdict: str  # "yes" | "no" | "budget"
    lambda21_witness: SimplicialMap | None
    constant_horn_verdicts: dict[int, str]  # per dimension n >= 3
    constant_horn_witness: SimplicialMap | None
    max_dim: int

    @property
    def ok(self) -> bool:
        return self.lambda21_verdict == "yes" and all(
            v == "yes" for v in self.constant_horn_verdicts.values()
        )


def _horn_d0_cell(n: int, i: int) -> CellId:
    """The cell of the horn carrying the d_0 face of the filler (i >= 1)."""
    return horn_complex(n, i).lookup[tuple(range(1, n + 1))]


def is_prefibrant(
    S: SimplicialSet,
    max_dim: int | None = None,
    node_budget: int | Budget = DEFAULT_NODE_BUDGET,
) -> PreFibrantReport:
    """Condition (i): every 2-horn at index 1 fills.  Condition (ii): every
    inner horn of dimension 3..max_dim whose d_0 face maps to a constant
    simplex fills."""
    bound = (S.dim + 1 if S.dim >= 2 else 3) if max_dim is None else max_dim
    budget = node_budget if isinstance(node_budget, Budget) else Budget(node_budget)
    report = PreFibrantReport("yes", None, {}, None, bound)
    try:
        inc = horn_inclusion(2, 1)
        for alpha in enumerate_maps(inc.source, S, budget=budget):
            if extend_along(alpha, inc, budget).status != FOUND:
                report.lambda21_verdict = "no"
                report.lambda21_witness = alpha
                return report
    except BudgetExceeded:
        report.lambda21_verdict = "budget"
        return report
    for n in range(3, bound + 1):
        report.constant_horn_verdicts[n] = "yes"
        try:
            for i in range(1, n):
                inc = horn_inclusion(n, i)
                d0 = _horn_d0_cell(n, i)
                for alpha in enumerate_maps(inc.source, S, budget=budget):
                    if not is_constant(alpha.images[d0]):
                        continue
                    if extend_along(alpha, inc, budget).status != FOUND:
                        report.constant_horn_verdicts[n] = "no"
                        report.constant_horn_witness = alpha
                        return report
        except BudgetExceeded:
            report.constant_horn_verdicts[n] = "budget"
            return report
    return report


def prefibrantize(
    S: SimplicialSet,
    stages: int = 2,
    max_dim: int | None = None,
    node_budget: int | Budget = DEFAULT_NODE_BUDGET,
) -> SoaTrace:
    """Attach fillers for the 2-horns at index 1 and for the higher inner
    horns with constant d_0 face, for the given number of stages.

    Horns that already extend are skipped, so pre-fibrant complexes are
    fixed points and the trace stops early once a stage attaches nothing.
    """
    if stages < 1:
        raise ValueError("need at least one stage")
    bound = (S.dim + 1 if S.dim >= 2 else 3) if max_dim is None else max_dim
    trace = SoaTrace("prefibrantize", [S], [], [])
    cur = S
    for _ in range(stages):
        atts = []
        budget = node_budget if isinstance(node_budget, Budget) else Budget(node_budget)
        for n in range(2, bound + 1):
            for hi in range(1, n):
                inc = horn_inclusion(n, hi)
                d0 = None if n == 2 else _horn_d0_cell(n, hi)
                for alpha in enumerate_maps(inc.source, cur, budget=budget):
                    if n > 2 and not is_constant(alpha.images[d0]):
                        continue
                    if extend_along(alpha, inc, budget).status == FOUND:
                        continue
                    atts.append(Attachment(inc, alpha))
        if not atts:
            break
        cur, step_inc = attach_all(cur, atts)
        trace.stages.append(cur)
        trace.inclusions.append(step_inc)
        trace.attachments.append(atts)
    return trace


# -- saturation of a pre-fibrant complex ----------------------------------------


@dataclass
class SaturationResult:
    truncation: SimplicialSet
    inclusion: SimplicialMap
    steps: list[tuple[int, int, CellId]]  # (n, horn index, attached n-cell)
    p2_violations: list[CellId]
    hom_levels_equal: bool
    bound: int

    def certificate(self):
        from .certify import AnodyneCertificate

        return AnodyneCertificate("inner", list(self.steps))


def saturate_prefibrant(
    S: SimplicialSet,
    up_to_dim: int,
    node_budget: int | Budget = DEFAULT_NODE_BUDGET,
) -> SaturationResult:
    """Skeletal completion of a pre-fibrant complex by attaching, in each
    dimension n = 3..up_to_dim, every inner n-horn with NON-constant d_0
    face whose image lies in the already-built part.  Verifies that every
    attached cell has non-constant d_0 and that the left mapping spaces
    are unchanged in levels <= up_to_dim - 2."""
    pre = is_prefibrant(S, up_to_dim, node_budget)
    if not pre.ok:
        raise ValueError("saturation requires a pre-fibrant input up to the bound")
    budget = node_budget if isinstance(node_budget, Budget) else Budget(node_budget)

    cur = S
    s_cells = set(S.all_cells())
    attached: set[CellId] = set()
    steps: list[tuple[int, int, CellId]] = []
    for n in range(3, up_to_dim + 1):
        allowed = [
            c
            for c in cur.all_cells()
            if (c in s_cells and c.dim <= n) or (c in attached and c.dim <= n - 1)
        ]
        part, part_inc = sub_complex(cur, allowed)
        atts = []
        for hi in range(1, n):
            inc = horn_inclusion(n, hi)
            d0 = _horn_d0_cell(n, hi)
            for alpha in enumerate_maps(inc.source, part, budget=budget):
                img = alpha.images[d0]
                # both cells created by the pushout must satisfy (P-2):
                # the filler has d_0 = img, the freed face has
                # d_0 = d_{hi-1}(img)
                if is_constant(img) or is_constant(part.face(img, hi - 1)):
                    continue
                atts.append((hi, Attachment(inc, compose(alpha, part_inc))))
        nxt, _ = attach_all(cur, [a for _, a in atts])
        for hi, att in atts:
            attached.update(att.new_cells)
            top = next(c for c in att.new_cells if c.dim == n)
            steps.append((n, hi, top))
        cur = nxt

    T = cur
    inc = SimplicialMap(S, T, {c: Simplex(c) for c in S.all_cells()})
    p2 = [
        c
        for c in attached
        if c.dim >= 1 and is_constant(T.face(Simplex(c), 0))
    ]

    levels_ok = True
    lev = max(up_to_dim - 2, 0)
    for x in S.cells(0):
        for y in S.cells(0):
            hs = hom_left(S, x, y, lev)
            ht = hom_left(T, x, y, lev)
            if any(
                set(hs.levels[k]) != set(ht.levels[k]) for k in range(lev + 1)
            ):
                levels_ok = False
    return SaturationResult(T, inc, steps, p2, levels_ok, up_to_dim)


# -- descent over the 2-horn -----------------------------------------------------


@dataclass
class TriangleDescentResult:
    stages: list[SimplicialSet]
    inclusions: list[SimplicialMap]
    base_maps: list[SimplicialMap]  # q_m : C(m) -> Delta^2
    pullback_ok: bool


def descend_over_triangle(
    p: SimplicialMap,
    stages: int = 1,
    max_dim: int = 3,
    node_budget: int | Budget = DEFAULT_NODE_BUDGET,
) -> TriangleDescentResult:
    """Modified small object argument for an inner fibration over the
    2-horn at index 1: only horns whose base simplex hits both endpoint
    vertices 0 and 2 are filled, and after every stage the part of the
    stage complex sitting over the horn must be exactly the input."""
    lam = horn_complex(2, 1)
    d2 = standard_simplex(2)
    if p.target != lam.complex:
        raise ValueError("descent input must be a map to the 2-horn at index 1")
    lam_in_d2 = generator_inclusion(lam, d2)
    lam_cells = {c.base for c in lam_in_d2.images.values()}

    X = p.source
    q = compose(p, lam_in_d2)
    cur = X
    res = TriangleDescentResult([X], [], [q], True)
    budget = node_budget if isinstance(node_budget, Budget) else Budget(node_budget)

    for _ in range(stages):
        atts: list[tuple[int, Attachment, tuple[int, ...]]] = []
        for n in range(2, max_dim + 1):
            for hi in range(1, n):
                inc = horn_inclusion(n, hi)
                horn = horn_complex(n, hi)
                for alpha in enumerate_maps(inc.source, cur, budget=budget):
                    # base simplex of the filler, read off on vertices
                    vt = tuple(
                        q.apply(alpha.images[horn.lookup[(v,)]]).base.index
                        for v in range(n + 1)
                    )
                    if not {0, 2} <= set(vt):
                        continue
                    atts.append((hi, Attachment(inc, alpha), vt))
        nxt, inc_step = attach_all(cur, [a for _, a, _ in atts])
        q_imgs = {c: q.images[c] for c in cur.all_cells()}
        for hi, att, vt in atts:
            n = att.inclusion.target.dim
            for nc in att.new_cells:
                if nc.dim == n:
                    q_imgs[nc] = tuple_simplex(vt, d2.lookup)
                else:  # the previously missing d_hi face
                    q_imgs[nc] = tuple_simplex(vt[:hi] + vt[hi + 1 :], d2.lookup)
        q = SimplicialMap(nxt, d2.complex, q_imgs)
        if q.check():
            raise RuntimeError("descent stage produced a non-simplicial base map")
        cur = nxt
        res.stages.append(cur)
        res.inclusions.append(inc_step)
        res.base_maps.append(q)

        over_horn = {c for c in cur.all_cells() if q.images[c].base in lam_cells}
        if over_horn != set(X.all_cells()):
            raise RuntimeError(
                "descent pullback check failed: the part over the horn "
                "is not the original complex"
            )
    return res


# -- mapping path space -----------------------------------------------------------


@dataclass
class PathSpaceResult:
    space: SimplicialSet
    section: SimplicialMap  # i : C -> Q(f)
    projection: SimplicialMap  # pi : Q(f) -> D
    to_source: SimplicialMap  # Q(f) -> C, first factor
    bound: int


def mapping_path_space(
    f: SimplicialMap,
    up_to: int,
    node_budget: int | Budget = DEFAULT_NODE_BUDGET,
    word_budget: int = 8,
) -> PathSpaceResult:
    """Level n of Q(f): pairs (c, u) of an n-simplex of the source and an
    equivalence-restricted homotopy u: Delta^1 x Delta^n -> D whose
    0-endpoint is f(c).  The section embeds via constant homotopies and
    the projection evaluates the 1-endpoint; f factors as pi o i."""
    from .core import LevelwiseSpace

    C, D = f.source, f.target
    budget = node_budget if isinstance(node_budget, Budget) else Budget(node_budget)
    rfc = restricted_function_complex(D, standard_simplex(1).complex, up_to, budget, word_budget)

    def endpoint(u: SimplicialMap, n: int, t: int) -> Simplex:
        P = rfc.products[n]
        delta = rfc.deltas[n]
        e = SimplicialMap(
            delta.complex,
            P.complex,
            {
                c: P.simplex_of_pair(constant_simplex(CellId(0, t), c.dim), Simplex(c))
                for c in delta.complex.all_cells()
            },
        )
        return u.apply(e.images[delta.lookup[tuple(range(n + 1))]])

    levels = [
        [
            (c, u)
            for c in C.simplices(n)
            for u in rfc.levels[n]
            if endpoint(u, n, 0) == f.apply(c)
        ]
        for n in range(up_to + 1)
    ]

    from .core import degenerate

    lw = LevelwiseSpace(
        levels,
        lambda n, e, i: (C.face(e[0], i), rfc.face_map(n, e[1], i)),
        lambda n, e, j: (degenerate(e[0], j), rfc.deg_map(n, e[1], j)),
    )
    Q = lw.space

    sec_imgs = {}
    for c in C.all_cells():
        if c.dim > up_to:
            raise ValueError("truncation bound too small for the source complex")
        P = rfc.products[c.dim]
        hom = compose(compose(P.proj2, simplex_as_map(C, Simplex(c))), f)
        sec_imgs[c] = lw.normalize(c.dim, (Simplex(c), hom))
    section = SimplicialMap(C, Q, sec_imgs)

    proj_imgs = {}
    src_imgs = {}
    for c in Q.all_cells():
        ce, u = lw.element_of(c)
        proj_imgs[c] = endpoint(u, c.dim, 1)
        src_imgs[c] = ce
    projection = SimplicialMap(Q, D, proj_imgs)
    to_source = SimplicialMap(Q, C, src_imgs)
    if compose(section, projection) != f:
        raise AssertionError("mapping path space factorization failed")
    return PathSpaceResult(Q, section, projection, to_source, up_to)


# -- brute-force descent extension ------------------------------------------------


@dataclass
class DescentSearchResult:
    status: str  # FOUND | NONE | BUDGET
    extension: SimplicialSet | None = None
    inclusion: SimplicialMap | None = None
    base_map: SimplicialMap | None = None
    cell_cap: int = 0
    max_dim: int = 0


def search_descent_extension(
    p: SimplicialMap,
    i: SimplicialMap,
    max_dim: int | None = None,
    node_budget: int | Budget = DEFAULT_NODE_BUDGET,
    cell_cap: int = 2,
) -> DescentSearchResult:
    """Exhaustive bounded search for Y over the codomain of i pulling back
    to the given complex over its domain.

    New cells sit over simplices whose base lies outside the image of i;
    at most cell_cap new cells are tried per dimension.  NONE is a
    bounded refutation (the caps are part of the verdict); BUDGET is a
    distinct outcome.
    """
    A, B = i.source, i.target
    X = p.source
    if p.target != A:
        raise ValueError("p must land in the domain of i")
    bound = B.dim + 1 if max_dim is None else max_dim
    budget = node_budget if isinstance(node_budget, Budget) else Budget(node_budget)

    a_cells = {i.images[a].base for a in A.all_cells()}
    q0 = {c: i.apply(p.images[c]) for c in X.all_cells()}

    # candidate target simplices per dimension, outside A
    outside = {
        d: sorted(
            (s for s in B.simplices(d) if s.base not in a_cells),
            key=lambda s: (len(s.word), s),  # nondegenerate images first
        )
        for d in range(bound + 1)
    }

    def try_build(per_dim: dict[int, list[tuple[Simplex, tuple[Simplex, ...]]]]):
        counts = [X.n_cells(d) for d in range(max(X.dim, bound) + 1)]
        faces = {c: X.cell_faces(c) for c in X.all_cells() if c.dim > 0}
        q = dict(q0)
        for d in range(bound + 1):
            for img, fs in per_dim.get(d, []):
                nc = CellId(d, counts[d])
                counts[d] += 1
                q[nc] = img
                if d > 0:
                    faces[nc] = fs
        try:
            Y = SimplicialSet(counts, faces)
        except ValueError:
            return None
        from .core import validate

        if validate(Y):
            return None
        try:
            qm = SimplicialMap(Y, B, q)
        except ValueError:
            return None
        if qm.check():
            return None
        rep = classify_map(qm, bound, budget.remaining() or 1, classes=("inner",))
        if rep.classes["inner"].status != "yes":
            return None
        inc = SimplicialMap(X, Y, {c: Simplex(c) for c in X.all_cells()})
        return Y, inc, qm

    def simplices_so_far(per_dim, d):
        """All d-simplices of the partial extension (X plus chosen cells)."""
        out = list(X.simplices(d))
        base_counts = [X.n_cells(k) for k in range(bound + 1)]
        for k in range(min(d, bound) + 1):
            for idx in range(len(per_dim.get(k, []))):
                c = CellId(k, base_counts[k] + idx)
                from .core import degeneracy_words

                for w in degeneracy_words(d - k, k, d):
                    out.append(Simplex(c, w))
        return out

    def rec(d: int, per_dim: dict[int, list]):
        budget.spend()
        if d > bound:
            return try_build(per_dim)
        # choose 0..cell_cap new cells at dimension d
        built = try_rec_dim(d, per_dim, [])
        return built

    def try_rec_dim(d: int, per_dim: dict[int, list], chosen: list):
        per_dim = dict(per_dim)
        per_dim[d] = chosen
        r = rec(d + 1, per_dim)
        if r is not None:
            return r
        if len(chosen) >= cell_cap:
            return None
        last_key = chosen[-1] if chosen else None
        for img in outside[d]:
            face_options = [[]]
            if d > 0:
                face_options = _face_choices(per_dim, d, img)
            for fs in face_options:
                cand = (img, tuple(fs))
                if last_key is not None and cand < last_key:
                    continue  # canonical nondecreasing order
                budget.spend()
                r = try_rec_dim(d, {k: v for k, v in per_dim.items() if k != d}, chosen + [cand])
                if r is not None:
                    return r
        return None

    def _face_choices(per_dim, d, img: Simplex):
        opts_per_face = []
        for j in range(d + 1):
            want = B.face(img, j)
            opts = [
                s
                for s in simplices_so_far(per_dim, d - 1)
                if _q_value(per_dim, s) == want
            ]
            if not opts:
                return []
            opts_per_face.append(opts)
        return [list(combo) for combo in itertools.product(*opts_per_face)]

    def _q_value(per_dim, s: Simplex) -> Simplex:
        from .core import degenerate as dg

        if X.has_cell(s.base):
            return apply_images(q0, s)
        k = s.base.dim
        img = per_dim[k][s.base.index - X.n_cells(k)][0]
        r = img
        for j in s.word:
            r = dg(r, j)
        return r

    try:
        found = rec(0, {})
    except BudgetExceeded:
        return DescentSearchResult(BUDGET, cell_cap=cell_cap, max_dim=bound)
    if found is None:
        return DescentSearchResult(NONE, cell_cap=cell_cap, max_dim=bound)
    Y, inc, qm = found
    return DescentSearchResult(FOUND, Y, inc, qm, cell_cap, bound)
