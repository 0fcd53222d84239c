"""Finite simplicial sets: cells, maps, and the standard constructions."""

from .budget import Budget, BudgetExceeded, DEFAULT_NODE_BUDGET
from .complex import EMPTY, ComplexBuilder, SimplicialSet, validate
from .generators import (
    GeneratorComplex,
    boundary_complex,
    cosk0_complex,
    from_vertex_tuples,
    horn_complex,
    j_truncation,
    make_generator,
    spine_complex,
    standard_simplex,
    tuple_simplex,
)
from .maps import (
    Join,
    Product,
    Pushout,
    SimplicialMap,
    all_extensions,
    apply_images,
    compose,
    enumerate_maps,
    full_subset,
    identity_map,
    join,
    join_functor,
    map_by_vertices,
    product,
    product_functor,
    pushout,
    simplex_as_map,
    simplex_label,
    skeleton,
    skeleton_inclusion,
    sub_complex,
    terminal_map,
)
from .simplex import (
    CellId,
    Simplex,
    apply_degeneracy,
    constant_simplex,
    degeneracy_words,
    degenerate,
    is_constant,
    word_is_valid,
)
from .spaces import (
    FunctionComplexTruncation,
    HomSpace,
    LevelwiseSpace,
    SliceSpace,
    function_complex,
    hom_left,
    restricted_function_complex,
    slice_under,
)

__all__ = [name for name in dir() if not name.startswith("_")]
