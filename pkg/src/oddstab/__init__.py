"""oddstab: structural and spectral stability toolkit for graphs without a
fixed odd cycle.

Library layout:

- ``graph``      immutable graphs, bipartiteness, blocks
- ``graphio``    canonical edge-list and graph6 formats
- ``construct``  named family builders and seeded samplers
- ``cycles``     exact-length cycle/path search, greedy bipartite paths
- ``decompose``  peeling, dense-pair extraction, bad paths, certification
- ``spectral``   power iteration, equitable quotients, exact quartics
- ``oracle``     exhaustive enumeration and brute-force extremal records
- ``certify``    JSON certificate envelopes and re-verification
- ``suites``     the named verification suites (acceptance gate)
"""

from .construct import (
    SuspensionSpec,
    c5_blowup,
    extremal_suspension,
    random_gnr_member,
    star_suspension_family,
    turan,
)
from .cycles import (
    CycleWitness,
    PathWitness,
    circumference_lower_bound,
    find_cycle_exact,
    girth,
    greedy_bipartite_path,
    verify_cycle,
    verify_path,
)
from .decompose import (
    AnalysisParams,
    DenseCertificate,
    GnrCertificate,
    PeelTrace,
    StabilityOutcome,
    extract_dense_pair,
    find_bad_path,
    gnr_certify,
    gnr_index,
    peel,
    stability_decompose,
    verify_k_dense,
)
from .errors import OddstabError
from .graph import (
    Bipartition,
    BlockDecomposition,
    Graph,
    blocks,
    induced_subgraph,
    is_2_connected,
    is_bipartite,
)
from .graphio import (
    from_graph6,
    graph_digest,
    parse_edge_list,
    to_graph6,
    write_edge_list,
)
from .oracle import (
    ExtremalRecord,
    chromatic_number,
    counterexample_search_spectral,
    enumerate_graphs,
    ex_bruteforce,
    ex_chromatic_bruteforce,
    spex_bruteforce,
)
from .spectral import (
    QuarticPoly,
    QuotientMatrix,
    SpectralResult,
    charpoly_suspension_quotient,
    classical_bounds,
    lambda_extremal,
    largest_real_root,
    quotient_matrix,
    rotate,
    spectral_radius,
    sun_das_check,
    zls_threshold,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
