"""Stage-bounded factorizations: attachment stages, pre-fibrancy,
saturation, descent, and mapping path spaces."""

import random

import pytest

from sskit.core import (
    compose,
    horn_complex,
    identity_map,
    is_constant,
    spine_complex,
    standard_simplex,
    validate,
)
from sskit.factorize import (
    Attachment,
    attach_all,
    descend_over_triangle,
    is_prefibrant,
    mapping_path_space,
    prefibrantize,
    saturate_prefibrant,
    search_descent_extension,
    soa_stage,
)
from sskit.lifting import FOUND, generator_inclusion, horn_inclusion

from conftest import (
    build_edges_over_horn,
    build_horn_plus_vertex,
    random_generator_complex,
)


def test_attach_all_adds_filler_and_freed_face():
    lam = horn_complex(2, 1)
    att = Attachment(horn_inclusion(2, 1), identity_map(lam.complex))
    out, inc = attach_all(lam.complex, [att])
    assert out.cell_counts() == (3, 3, 1)
    assert validate(out) == []
    assert inc.is_mono()
    assert sorted(c.dim for c in att.new_cells) == [1, 2]
    assert att.total_map.check() == []


def test_accept_all_stage_on_the_open_triangle():
    # maps from the 2-horn to itself are composable edge pairs, with
    # degenerate edges allowed: 8 in total, each attaching two cells
    lam = horn_complex(2, 1).complex
    out, inc, atts = soa_stage(lam, [horn_inclusion(2, 1)], lambda i, a: True)
    assert len(atts) == 8
    assert out.total_cells() - lam.total_cells() == 16
    assert validate(out) == []
    assert inc.is_mono()


def test_full_simplices_are_prefibrant():
    for n in range(4):
        assert is_prefibrant(standard_simplex(n).complex, 4).ok


def test_spine_is_not_prefibrant_and_the_witness_is_the_open_horn():
    rep = is_prefibrant(spine_complex(2).complex, 3)
    assert not rep.ok
    assert rep.lambda21_verdict == "no"
    assert rep.lambda21_witness is not None


def test_prefibrantize_is_idempotent_on_prefibrant_input():
    d2 = standard_simplex(2).complex
    tr = prefibrantize(d2, stages=3)
    assert tr.stages == [d2]
    assert tr.composite_inclusion() == identity_map(d2)


def test_prefibrantize_closes_the_spine_to_a_triangle():
    tr = prefibrantize(spine_complex(2).complex, stages=2)
    assert [s.cell_counts() for s in tr.stages] == [(3, 2), (3, 3, 1)]
    assert is_prefibrant(tr.result, 4).ok
    assert tr.composite_inclusion().is_mono()


def test_saturation_of_the_triangle():
    res = saturate_prefibrant(standard_simplex(2).complex, 3)
    assert res.truncation.cell_counts() == (3, 3, 15, 14)
    assert len(res.steps) == 14
    assert res.p2_violations == []
    assert res.hom_levels_equal
    assert validate(res.truncation) == []
    # every attached cell keeps a nondegenerate initial face
    T = res.truncation
    for n, hi, top in res.steps:
        from sskit.core import Simplex

        assert not is_constant(T.face(Simplex(top), 0))


def test_saturation_rejects_non_prefibrant_input():
    with pytest.raises(ValueError):
        saturate_prefibrant(spine_complex(2).complex, 3)


def test_saturation_on_random_prefibrant_truncations():
    done = 0
    seed = 0
    while done < 2:
        seed += 1
        G = random_generator_complex(random.Random(seed))
        S = prefibrantize(G.complex, stages=2).result
        if S.total_cells() > 25 or not is_prefibrant(S, 3).ok:
            continue
        res = saturate_prefibrant(S, 3)
        assert res.p2_violations == []
        assert res.hom_levels_equal
        done += 1


def test_descent_of_the_identity_over_the_open_triangle():
    lam = horn_complex(2, 1).complex
    res = descend_over_triangle(identity_map(lam), stages=2)
    assert res.pullback_ok
    assert [s.total_cells() for s in res.stages] == [5, 7, 37]
    for q in res.base_maps:
        assert q.check() == []


def test_descent_of_disjoint_edges_is_a_fixed_point():
    p = build_edges_over_horn()
    res = descend_over_triangle(p, stages=2)
    # no horn in the total complex covers both end vertices, so nothing
    # is ever attached
    assert [s.cell_counts() for s in res.stages] == [(4, 2)] * 3


def test_descent_with_an_extra_fiber_vertex():
    p = build_horn_plus_vertex()
    res = descend_over_triangle(p, stages=2)
    assert res.pullback_ok
    assert res.stages[1].cell_counts() == (4, 3, 1)


def test_mapping_path_space_factorization():
    pt = standard_simplex(0).complex
    f = generator_inclusion(standard_simplex(0), standard_simplex(1))
    res = mapping_path_space(f, 1)
    assert res.space.cell_counts() == (1,)
    assert compose(res.section, res.projection) == f
    assert compose(res.section, res.to_source) == identity_map(pt)


def test_descent_extension_search_finds_the_minimal_filler():
    lam = horn_complex(2, 1)
    i = generator_inclusion(lam, standard_simplex(2))
    res = search_descent_extension(identity_map(lam.complex), i)
    assert res.status == FOUND
    assert res.extension.cell_counts() == (3, 3, 1)
    assert res.inclusion.is_mono()
    assert res.base_map.check() == []


def test_descent_extension_search_over_the_spine():
    sp = spine_complex(2)
    i = generator_inclusion(sp, standard_simplex(2))
    res = search_descent_extension(identity_map(sp.complex), i)
    assert res.status == FOUND
    assert res.extension.cell_counts() == (3, 3, 1)
