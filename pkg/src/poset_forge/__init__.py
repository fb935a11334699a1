"""poset-forge: finite posets, interval decomposition, composition trees,
structured-tree embeddings and antichain experiments."""

from .core import (
    ColouredPoset,
    EmbeddingMap,
    Poset,
    QuasiOrder,
    canonical,
    check_coloured_embedding,
    check_embedding,
    coloured_embed,
    coloured_isomorphic,
    embed,
    is_isomorphic,
    make_poset,
    one_colour_palette,
    p_sum,
    product_q,
    union_q,
    zeta_tree_sum,
)
from .interval import (
    Interval,
    IntervalChain,
    enumerate_intervals,
    is_indecomposable,
    is_interval,
    maximal_interval_chain,
    quotient,
    ssr,
)
from .composition import (
    CompositionSequence,
    CompositionSet,
    composition_set_text,
    decomposition_function,
    eval_f_eta,
    eval_g,
    h_eta,
    maximal_decomposition,
    split_assoc_check,
)
from .dectree import (
    DecompositionTree,
    StructuredTree,
    decomposition_tree,
    lift_embedding,
    recompose_along_chain,
    scattered_rank,
    st_embed,
    structured_tree_text,
    subtree_extract,
    tree_rank,
    verify_st_embedding,
)
from .classify import (
    ClassSpec,
    class_check,
    indecomposable_subsets,
    is_n_free,
    pathological_prefix_check,
)
from .wqo import (
    Family,
    bad_pair_search,
    embeddability_matrix,
    fence_antichain,
)

__all__ = [name for name in dir() if not name.startswith("_")]

__version__ = "0.1.0"
