"""Cellular anodyne certificates: replay verification, exhaustive order
search, a classifier for vertex-bijective inclusions, and a
two-out-of-three consistency check.

A certificate is an ordered list of horn fillings located inside the
target complex; replaying a step adds exactly two cells, the filler and
its freed face.  Exhausting all step orders refutes CELLULAR membership
only (the saturated classes also contain retracts), so the classifier
treats exhaustion as evidence and refutes definitively only through
invariants preserved by categorical equivalences.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import (
    Budget,
    BudgetExceeded,
    CellId,
    DEFAULT_NODE_BUDGET,
    SimplicialMap,
    Simplex,
    compose,
)
from .homotopy import DEFAULT_WORD_BUDGET, homotopy_category, pi0
from .lifting import BUDGET, FOUND, NONE

# legal horn indices per class, in each dimension
HORN_RANGES = {
    "inner": lambda n: range(1, n),
    "left": lambda n: range(0, n),
    "right": lambda n: range(1, n + 1),
    "kan": lambda n: range(0, n + 1),
}

Step = tuple[int, int, CellId]  # (dimension, horn index, filler cell)


@dataclass
class AnodyneCertificate:
    family: str  # "inner" | "left" | "right" | "kan"
    steps: list[Step]


def _check_step_shape(step) -> Step:
    try:
        n, hi, top = step
    except (TypeError, ValueError):
        raise ValueError(f"malformed certificate step {step!r}") from None
    if not isinstance(top, CellId) or n < 1 or not 0 <= hi <= n:
        raise ValueError(f"malformed certificate step {step!r}")
    return n, hi, top


def _legal_step(B, present: set[CellId], family: str, step: Step):
    """The two cells the step creates, or a reason string if illegal.

    Shape errors raise; content mismatches (wrong cell, wrong codomain,
    face not yet present, face not free) report a reason instead.
    """
    n, hi, top = _check_step_shape(step)
    if hi not in HORN_RANGES[family](n):
        return f"horn index {hi} is outside the {family} range in dimension {n}"
    if top.dim != n or not B.has_cell(top):
        return f"the target has no {n}-cell {top}"
    if top in present:
        return f"filler {top} is already present"
    free = B.face(Simplex(top), hi)
    if free.word or free.base in present:
        return f"face {hi} of {top} is not free"
    for j in range(n + 1):
        if j != hi and B.face(Simplex(top), j).base not in present:
            return f"face {j} of {top} is missing from the horn image"
    return top, free.base


def verify_certificate(cert: AnodyneCertificate, i: SimplicialMap) -> bool:
    """Replay the steps from the image of i; True iff they reconstruct
    the whole target."""
    if cert.family not in HORN_RANGES:
        raise ValueError(f"unknown anodyne class {cert.family!r}")
    if not i.is_mono():
        return False
    B = i.target
    present = {i.images[a].base for a in i.source.all_cells()}
    for step in cert.steps:
        r = _legal_step(B, present, cert.family, step)
        if isinstance(r, str):
            return False
        present.update(r)
    return present == set(B.all_cells())


# -- exhaustive search ---------------------------------------------------------


@dataclass
class CertificateSearchResult:
    status: str  # FOUND | NONE | BUDGET
    certificate: AnodyneCertificate | None = None


def search_certificate(
    i: SimplicialMap,
    family: str = "inner",
    node_budget: int | Budget = DEFAULT_NODE_BUDGET,
) -> CertificateSearchResult:
    """Depth-first search over attachment orders, lex-least step first.

    NONE is order-complete: failed present-sets are memoized, so it is
    returned only once no order of horn fillings can reach the target.
    """
    if family not in HORN_RANGES:
        raise ValueError(f"unknown anodyne class {family!r}")
    if not i.is_mono():
        raise ValueError("certificate search requires a mono inclusion")
    budget = node_budget if isinstance(node_budget, Budget) else Budget(node_budget)
    B = i.target
    allc = frozenset(B.all_cells())
    start = frozenset(i.images[a].base for a in i.source.all_cells())
    if (len(allc) - len(start)) % 2:
        return CertificateSearchResult(NONE)  # steps add two cells each
    dead: set[frozenset[CellId]] = set()

    def moves(present: frozenset[CellId]):
        for top in sorted(allc - present):
            if top.dim < 1:
                continue
            for hi in HORN_RANGES[family](top.dim):
                r = _legal_step(B, set(present), family, (top.dim, hi, top))
                if not isinstance(r, str):
                    yield (top.dim, hi, top), r

    def dfs(present: frozenset[CellId], path: list[Step]):
        budget.spend()
        if present == allc:
            return list(path)
        if present in dead:
            return None
        for step, created in moves(present):
            r = dfs(present | frozenset(created), path + [step])
            if r is not None:
                return r
        dead.add(present)
        return None

    try:
        found = dfs(start, [])
    except BudgetExceeded:
        return CertificateSearchResult(BUDGET)
    if found is None:
        return CertificateSearchResult(NONE)
    cert = AnodyneCertificate(family, found)
    if not verify_certificate(cert, i):
        raise AssertionError("search produced a non-verifying certificate")
    return CertificateSearchResult(FOUND, cert)


# -- classifier for vertex-bijective inclusions ---------------------------------

INNER_ANODYNE = "inner-anodyne"
NOT_INNER_ANODYNE = "not-inner-anodyne"
UNKNOWN = "unknown"


@dataclass
class ClassifierVerdict:
    value: str  # INNER_ANODYNE | NOT_INNER_ANODYNE | UNKNOWN
    reason: str | None = None  # "not-vertex-bijective" | "equivalence-refuted"
    certificate: AnodyneCertificate | None = None
    diagnostics: list[str] = field(default_factory=list)


def _equivalence_refutation(
    i: SimplicialMap, word_budget: int
) -> str | None:
    """A reason string when a category-level invariant rules the
    inclusion out, None otherwise.

    Both invariants are preserved by any map inducing an isomorphism of
    homotopy categories, which covers the whole saturated class and not
    just its cellular part: component counts, and hom-set cardinalities
    read off exact presentations under the vertex bijection.
    """
    A, B = i.source, i.target
    ca, cb = pi0(A), pi0(B)
    if len(ca) != len(cb):
        return f"component counts differ: {len(ca)} vs {len(cb)}"
    ha = homotopy_category(A, word_budget)
    hb = homotopy_category(B, word_budget)
    if ha.exact and hb.exact:
        for x in A.cells(0):
            for y in A.cells(0):
                na = len(ha.hom_set(x, y))
                nb = len(
                    hb.hom_set(i.images[x].base, i.images[y].base)
                )
                if na != nb:
                    return (
                        f"hom-set sizes differ at "
                        f"({A.label(x)}, {A.label(y)}): {na} vs {nb}"
                    )
    return None


def classify_inclusion(
    i: SimplicialMap,
    node_budget: int | Budget = DEFAULT_NODE_BUDGET,
    word_budget: int = DEFAULT_WORD_BUDGET,
) -> ClassifierVerdict:
    """Semi-decide whether a mono inclusion is inner anodyne.

    Pipeline: vertex bijectivity (hard refutation), cellular certificate
    search (hard confirmation), equivalence-invariant refutation; the
    remainder is Unknown with the search outcome in the diagnostics.
    """
    if not i.is_mono():
        raise ValueError("classifier takes a mono inclusion")
    if not i.is_vertex_bijective():
        return ClassifierVerdict(NOT_INNER_ANODYNE, "not-vertex-bijective")
    sr = search_certificate(i, "inner", node_budget)
    if sr.status == FOUND:
        return ClassifierVerdict(INNER_ANODYNE, certificate=sr.certificate)
    diags = [
        "exhausted-cellular-search"
        if sr.status == NONE
        else "certificate search hit the node budget"
    ]
    reason = _equivalence_refutation(i, word_budget)
    if reason is not None:
        return ClassifierVerdict(
            NOT_INNER_ANODYNE, "equivalence-refuted", diagnostics=diags + [reason]
        )
    return ClassifierVerdict(UNKNOWN, diagnostics=diags)


# -- two-out-of-three consistency -------------------------------------------------


@dataclass
class TwoOutOfThreeReport:
    u: ClassifierVerdict
    v: ClassifierVerdict
    vu: ClassifierVerdict
    alarm: bool

    @property
    def pattern(self) -> tuple[str, str, str]:
        return (self.u.value, self.v.value, self.vu.value)


def check_two_out_of_three(
    u: SimplicialMap,
    v: SimplicialMap,
    node_budget: int | Budget = DEFAULT_NODE_BUDGET,
    word_budget: int = DEFAULT_WORD_BUDGET,
) -> TwoOutOfThreeReport:
    """Classify u, v and their composite; two definite positives plus a
    definite negative is impossible, so that pattern raises the alarm."""
    if u.target != v.source:
        raise ValueError("u and v are not composable")
    if not (u.is_mono() and v.is_mono()):
        raise ValueError("both inclusions must be monos")
    verdicts = [
        classify_inclusion(f, node_budget, word_budget)
        for f in (u, v, compose(u, v))
    ]
    values = [r.value for r in verdicts]
    alarm = values.count(INNER_ANODYNE) == 2 and values.count(NOT_INNER_ANODYNE) == 1
    return TwoOutOfThreeReport(*verdicts, alarm)
