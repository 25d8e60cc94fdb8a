"""Transversal homotopy monoids of stratified manifolds, combinatorially.

The first monoid of a manifold whose open strata are simply connected is
the loop monoid of a graph with edge involution; this package builds such
graphs, computes presentations, wedges, products, the quotient onto the
fundamental group, and the free (commutative) dagger monoids of spheres.
"""

from .constructions import (
    ProductGraph,
    check_exactness,
    inclusion_hom,
    product,
    projection_hom,
    wedge,
)
from .errors import AlphabetError, GraphError, ParseError, PsiError
from .graph import (
    Loop,
    Presentation,
    StratGraph,
    crossing_profile,
    enumerate_loops,
    factorize_loop,
    from_strata,
    graph_from_json,
    load_graph,
    loop_dagger,
    loop_mul,
    primitive_loops,
    realize_3manifold,
    validate,
)
from .quotient import (
    GroupElement,
    group_inv,
    group_mul,
    quotient_map,
    reduce_path,
    spanning_tree_presentation,
)
from .spheres import psi0, psi_sphere, tangle_interpretation
from .words import (
    Generator,
    Kind,
    Letter,
    MonoidHom,
    MonoidKind,
    Word,
    check_unitarity,
    direct_product,
    eval_hom,
    factorize_free_product,
    free_product,
    is_invertible,
    normalize,
    parse_word,
    word_dagger,
    word_mul,
)

__version__ = "0.1.0"
