'''monoflag: exact counting, extremal constructions and SDP certificates
for the minimum density of monotone subwords.
'''

from monoflag.certificates import (
    Certificate,
    VerifiedBound,
    read_certificate,
    read_published_certificate,
    read_solver_solution,
    round_solution,
    variable_count,
    verification_report,
    verify_certificate,
    write_certificate,
)
from monoflag.constructions import (
    alternating_word,
    bucketed_word,
    folded_segments,
    folded_word,
    min_monotone_permutation,
    proper_form_word,
)
from monoflag.flags import (
    Flag,
    PairExpectationTable,
    TypeSigma,
    c_h,
    default_types,
    enumerate_flags,
    flag_density,
    joint_density,
    pair_expectation_table,
    pair_scale,
)
from monoflag.hspoly import (
    MultiPoly,
    SimplexMin,
    evaluate,
    format_poly,
    generate_hs,
    gradient,
    minimize_simplex,
    partial_derivative,
    q_of_s,
)
from monoflag.oracle import brute_min, f_skn
from monoflag.sdp import (
    ParsedSdpa,
    SdpProblem,
    assemble_problem,
    lower_bound_from_Q,
    parse_sdpa_sparse,
    problem_from_parsed,
    write_sdpa_sparse,
)
from monoflag.wordgraphs import (
    WordGraph,
    canonical_form,
    enumerate_word_graphs,
    export_graph_classes,
    graph_of_word,
    is_realizable,
    monotone_clique_density,
    realizing_word,
    representative_words,
    subgraph_density,
)
from monoflag.words import (
    MonotoneCount,
    Word,
    binary_flip_delta,
    count_monotone,
    format_word,
    make_word,
    monotone_density,
    normalize_pattern,
    parse_word,
    q_greater,
    q_less,
)

__version__ = '0.1.0'

__all__ = [
    'Certificate',
    'Flag',
    'MonotoneCount',
    'MultiPoly',
    'PairExpectationTable',
    'ParsedSdpa',
    'SdpProblem',
    'SimplexMin',
    'TypeSigma',
    'VerifiedBound',
    'Word',
    'WordGraph',
    'alternating_word',
    'assemble_problem',
    'binary_flip_delta',
    'brute_min',
    'bucketed_word',
    'c_h',
    'canonical_form',
    'count_monotone',
    'default_types',
    'enumerate_flags',
    'enumerate_word_graphs',
    'evaluate',
    'export_graph_classes',
    'f_skn',
    'flag_density',
    'folded_segments',
    'folded_word',
    'format_poly',
    'format_word',
    'generate_hs',
    'gradient',
    'graph_of_word',
    'is_realizable',
    'joint_density',
    'lower_bound_from_Q',
    'make_word',
    'min_monotone_permutation',
    'minimize_simplex',
    'monotone_clique_density',
    'monotone_density',
    'normalize_pattern',
    'pair_expectation_table',
    'pair_scale',
    'parse_sdpa_sparse',
    'parse_word',
    'partial_derivative',
    'problem_from_parsed',
    'proper_form_word',
    'q_greater',
    'q_less',
    'q_of_s',
    'read_certificate',
    'read_published_certificate',
    'read_solver_solution',
    'realizing_word',
    'representative_words',
    'round_solution',
    'subgraph_density',
    'variable_count',
    'verification_report',
    'verify_certificate',
    'write_certificate',
    'write_sdpa_sparse',
]
