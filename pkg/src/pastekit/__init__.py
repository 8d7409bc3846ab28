"""Combinatorics of pasting diagrams and presented monoidal theories.

The layers, bottom up: oriented graded posets (`ogp`), certified molecules
(`molecules`), frame-order combinatorics (`orders`), Gray and smash
products (`products`), the symbolic interchanger calculus (`graycat`), and
presented theories with their tensor (`theories`).  `fixtures` holds the
shipped shapes, `serialize`/`render` the JSON, DOT and SVG forms, and
`cli` the command-line driver.
"""

from .ogp import (
    Complex,
    MINUS,
    PLUS,
    StructureError,
    ValidationReport,
    spherical_boundary,
    validate_complex,
)
from .molecules import (
    Atom,
    Molecule,
    Pasting,
    PastingError,
    SubstitutionError,
    UNKNOWN,
    cell_to,
    certificate_json,
    certificate_ok,
    compos,
    enumerate_molecules,
    globe,
    globe_molecule,
    interval_chain,
    paste,
    recognize,
    spherical,
    substitute,
    u_cell,
    unique_iso,
)
from .orders import (
    KOrder,
    MaxdGraph,
    check_sim_substitution,
    frame_acyclic,
    frame_decomposition,
    frame_dimension,
    k_order,
    maxd,
    normal_1_order,
    slice_decomposition,
    totally_loop_free,
)
from .products import (
    BASEPOINT,
    LabelledComplex,
    ProductError,
    gray_labelled,
    gray_product,
    gray_projections,
    smash_collapse,
    smash_generators,
)
from .graycat import (
    Equation,
    GenApp,
    GrayExpr3,
    Interchange,
    TwoCellNF,
    four_cell_equation,
    expr_equal,
    expr_normalize,
    format_expr,
    interchanger_path,
    interpret,
    interpret_atom_in_context,
    inversion_weight,
    nf_source,
    nf_target,
)
from .theories import (
    DiagComplexPresentation,
    GenOp,
    Layered2Cell,
    Permutation,
    ProPresentation,
    Relation,
    TheoryError,
    block_sigma,
    builtin,
    perm_decompose,
    perm_recompose,
    presentation_of_smash,
    prop_quotient,
    sigma_expr,
    sigma_star_expr,
    tensor_pros,
    wire_permutation,
)

__version__ = "0.1.0"
