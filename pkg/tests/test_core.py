"""Normal forms, complex construction, generators, and mapping spaces."""

import math
import random

import pytest
from hypothesis import given, strategies as st

from sskit.core import (
    CellId,
    ComplexBuilder,
    Simplex,
    SimplicialMap,
    SimplicialSet,
    apply_degeneracy,
    boundary_complex,
    constant_simplex,
    cosk0_complex,
    degenerate,
    enumerate_maps,
    from_vertex_tuples,
    function_complex,
    hom_left,
    horn_complex,
    identity_map,
    is_constant,
    j_truncation,
    join,
    join_functor,
    product,
    product_functor,
    pushout,
    slice_under,
    spine_complex,
    standard_simplex,
    sub_complex,
    tuple_simplex,
    validate,
    word_is_valid,
)
from sskit.lifting import generator_inclusion

from conftest import random_generator_complex


# -- degeneracy words ----------------------------------------------------------


@given(st.lists(st.integers(0, 10**6), max_size=8))
def test_apply_degeneracy_always_yields_a_valid_word(raw_ops):
    # over a vertex: after m degeneracies the simplex has dimension m,
    # so the next legal index is 0..m
    word = ()
    for r in raw_ops:
        word = apply_degeneracy(word, r % (len(word) + 1))
    assert word_is_valid(word, 0)
    assert len(word) == len(raw_ops)


def test_degeneracy_insertion_matches_the_index_shift_rule():
    # s_a s_j = s_{j+1} s_a for a <= j
    assert apply_degeneracy((2,), 0) == (0, 3)
    assert apply_degeneracy((0,), 2) == (0, 2)


def test_constant_simplex_detection():
    v = CellId(0, 0)
    assert is_constant(constant_simplex(v, 3))
    assert constant_simplex(v, 0) == Simplex(v)
    e = Simplex(CellId(1, 0))
    assert not is_constant(degenerate(e, 0))


# -- complexes and validation ---------------------------------------------------


def test_builder_rejects_inconsistent_faces():
    b = ComplexBuilder()
    x = b.add_cell(0)
    y = b.add_cell(0)
    z = b.add_cell(0)
    e = b.add_cell(1, (Simplex(y), Simplex(x)))
    f = b.add_cell(1, (Simplex(z), Simplex(y)))
    g = b.add_cell(1, (Simplex(z), Simplex(y)))  # wrong source for a triangle
    b.add_cell(2, (Simplex(f), Simplex(g), Simplex(e)))
    assert validate(b.build())


def test_equality_ignores_labels():
    a = ComplexBuilder()
    a.add_cell(0, label="p")
    b = ComplexBuilder()
    b.add_cell(0, label="q")
    assert a.build() == b.build()
    assert hash(a.build()) == hash(b.build())


def test_face_commutes_through_degeneracy_words():
    d2 = standard_simplex(2).complex
    top = Simplex(CellId(2, 0))
    s = degenerate(top, 1)
    # d_1 s_1 = id
    assert d2.face(s, 1) == top
    # d_3 s_1 = s_1 d_2
    assert d2.face(s, 3) == degenerate(d2.face(top, 2), 1)


@pytest.mark.parametrize("n", range(6))
def test_standard_simplex_counts_are_binomial(n):
    G = standard_simplex(n)
    assert validate(G.complex) == []
    for k in range(n + 1):
        assert G.complex.n_cells(k) == math.comb(n + 1, k + 1)


@pytest.mark.parametrize("n", range(1, 6))
def test_boundary_and_horn_and_spine_counts(n):
    full = standard_simplex(n).complex
    bd = boundary_complex(n).complex
    assert validate(bd) == []
    assert bd.n_cells(n - 1) == full.n_cells(n - 1)
    assert bd.dim == n - 1 or n == 0
    for i in range(n + 1):
        h = horn_complex(n, i).complex
        assert validate(h) == []
        assert h.n_cells(n - 1) == full.n_cells(n - 1) - 1
    sp = spine_complex(n).complex
    assert sp.cell_counts() == (n + 1, n)


def test_tuple_simplex_peels_repeats_as_degeneracies():
    G = standard_simplex(2)
    s = tuple_simplex((0, 0, 2), G.lookup)
    assert s.base == G.lookup[(0, 2)]
    assert s.word == (0,)
    assert tuple_simplex((1, 1, 1), G.lookup) == constant_simplex(
        G.lookup[(1,)], 2
    )


def test_from_vertex_tuples_closes_under_faces():
    G = from_vertex_tuples([(0, 1, 2, 3)])
    assert G.complex == standard_simplex(3).complex


def test_cosk0_and_j_truncation_validate():
    assert validate(cosk0_complex(3, 3).complex) == []
    J2 = j_truncation(2)
    assert validate(J2.complex) == []
    assert J2.complex.n_cells(0) == 2


@given(st.integers(0, 2**30))
def test_random_tuple_complexes_validate(seed):
    G = random_generator_complex(random.Random(seed))
    assert validate(G.complex) == []


# -- maps, products, joins, pushouts --------------------------------------------


def test_enumerate_maps_counts_simplices_of_the_target():
    d1 = standard_simplex(1).complex
    d2 = standard_simplex(2).complex
    # maps Delta^1 -> Delta^1 are exactly the 1-simplices of Delta^1
    assert sum(1 for _ in enumerate_maps(d1, d1)) == 3
    assert sum(1 for _ in enumerate_maps(d2, d1)) == 4


def test_product_of_two_intervals():
    d1 = standard_simplex(1).complex
    P = product(d1, d1)
    assert P.complex.cell_counts() == (4, 5, 2)
    assert validate(P.complex) == []
    assert P.proj1.check() == []
    assert P.proj2.check() == []


def test_product_functor_respects_identities():
    d1 = standard_simplex(1).complex
    P = product(d1, d1)
    f = product_functor(P, P, identity_map(d1), identity_map(d1))
    assert f == identity_map(P.complex)


def test_join_of_interval_and_point_is_a_triangle():
    d1 = standard_simplex(1).complex
    pt = standard_simplex(0).complex
    J = join(d1, pt)
    assert J.complex.cell_counts() == (3, 3, 1)
    assert validate(J.complex) == []
    assert J.inc_x.check() == [] and J.inc_y.check() == []


def test_join_functor_respects_identities():
    d1 = standard_simplex(1).complex
    pt = standard_simplex(0).complex
    J = join(d1, pt)
    f = join_functor(J, J, identity_map(d1), identity_map(pt))
    assert f == identity_map(J.complex)


def test_pushout_of_two_triangles_along_an_edge():
    i = generator_inclusion(standard_simplex(1), standard_simplex(2))
    ps = pushout(i, generator_inclusion(standard_simplex(1), standard_simplex(2)))
    assert ps.complex.cell_counts() == (4, 5, 2)
    assert validate(ps.complex) == []
    assert ps.from_codomain.check() == []
    assert ps.from_total.check() == []
    assert len(ps.new_cells) == 1 + 2 + 1  # a triangle minus a closed edge


def test_sub_complex_requires_face_closure_via_restriction():
    d2 = standard_simplex(2).complex
    part, inc = sub_complex(d2, [c for c in d2.all_cells() if c.dim <= 1])
    assert part.cell_counts() == (3, 3)
    assert inc.is_mono()


# -- mapping spaces ---------------------------------------------------------------


def test_hom_left_of_the_interval_is_a_point():
    d1 = standard_simplex(1).complex
    hs = hom_left(d1, CellId(0, 0), CellId(0, 1), 2)
    assert [len(l) for l in hs.levels] == [1, 1, 1]
    assert hs.space.cell_counts() == (1,)


def test_hom_left_embeds_in_the_slice():
    # every hom-space level is a subset of the slice level
    d2 = standard_simplex(2).complex
    x, y = CellId(0, 0), CellId(0, 2)
    hs = hom_left(d2, x, y, 2)
    sl = slice_under(d2, x, 2)
    for n in range(3):
        assert set(hs.levels[n]) <= set(sl.levels[n])


def test_slice_projection_is_simplicial():
    d2 = standard_simplex(2).complex
    sl = slice_under(d2, CellId(0, 0), 2)
    assert sl.space.cell_counts() == (3, 3, 1)
    assert sl.projection.check() == []


def test_function_complex_with_point_exponent_recovers_the_base():
    d2 = standard_simplex(2).complex
    pt = standard_simplex(0).complex
    fc = function_complex(d2, pt, 2)
    assert [len(l) for l in fc.levels] == [3, 6, 10]  # all simplices per level
    assert fc.space == d2


def test_function_complex_evaluation_lands_in_the_base():
    d1 = standard_simplex(1).complex
    fc = function_complex(d1, d1, 1)
    ev = fc.restrict_to_vertex(CellId(0, 0))
    assert ev.check() == []
    assert ev.target == d1
