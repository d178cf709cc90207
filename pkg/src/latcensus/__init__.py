"""latcensus: finite lattices, subuniverse counting, and exhaustive small-size
verification of the extremal count values."""

from .canon import canonical_form, canonical_lattice, is_isomorphic
from .census import (
    AntichainBoundReport,
    CensusRecord,
    GapReport,
    SpectrumReport,
    TopThreeReport,
    VerdictFailure,
    census_jsonl,
    census_records,
    enumerate_lattices,
    spectrum,
    verify_antichain_bound,
    verify_gap,
    verify_top_three,
)
from .congruence import (
    Congruence,
    CongruenceSpectrumReport,
    con_spectrum,
    count_congruences,
    count_congruences_naive,
    is_congruence,
    join_irreducible_congruences,
    principal_congruence,
    verify_congruence_spectrum,
    with_con_counts,
)
from .core import (
    Atom,
    BadIndexOrder,
    DirectProduct,
    EmptyGenerator,
    ExpressionError,
    GluedSum,
    IndexOutOfRange,
    Lattice,
    LatticeError,
    NotALattice,
    NotAPoset,
    SizeLimit,
    UnknownName,
    bit_indices,
    build_expression,
    chain,
    direct_product,
    dual,
    evaluate,
    from_covers,
    from_order_matrix,
    glued_sum,
    mask_of,
    named,
    parse_expression,
    sublattice,
)
from .structure import (
    CHAIN,
    GLUED_B4,
    GLUED_N5,
    OTHER,
    Classification,
    GluedDecomposition,
    classify,
    decompose_glued_sum,
    doubly_irreducibles,
    find_antichain,
    is_chain,
    isolated_characterization_holds,
    isolated_edges,
    isolated_elements,
    join_irreducibles,
    meet_irreducibles,
)
from .subuniverse import (
    Subuniverse,
    count_subuniverses,
    count_subuniverses_naive,
    enumerate_subuniverses,
    generated_sublattice,
    is_subuniverse,
    trace_count,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
