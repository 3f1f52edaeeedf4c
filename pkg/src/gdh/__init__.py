"""Extremal computations on generalized directed hypergraphs (GDHs)."""

__version__ = "0.1.0"

from .perm_group import (  # noqa: E402
    Permutation,
    PermutationGroup,
    canonical_rep,
    closure,
    compose,
    enumerate_subgroups,
    tuple_orbit,
)
from .core import (  # noqa: E402
    GDH,
    Family,
    TheoryMismatch,
    TheorySignature,
    add_edge,
    complete_gdh,
    count_copies,
    count_injective_homs,
    density,
    find_embedding,
    induced,
    is_family_free,
    single_edge,
)
from .lagrangian import (  # noqa: E402
    EdgePolynomial,
    LagrangianConfig,
    LagrangianResult,
    blowup,
    blowup_density,
    blowup_density_sequence,
    edge_polynomial,
    evaluate,
    uniform_lower_bound,
)
from .extremal import (  # noqa: E402
    SearchResult,
    density_bound_sequence,
    extremal_number,
    langlois_construction,
    restrict_family,
)
from .lattice import TheoryPair, expand_all, min_container, orient_k, project_family  # noqa: E402
from .jumps import (  # noqa: E402
    JumpCertificate,
    certify_jump,
    degenerate_witness,
    gap_check,
    jump_interval,
    nonjump_catalog,
    supersaturation_constant,
)
