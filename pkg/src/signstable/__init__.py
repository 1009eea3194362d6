"""Exact tropical dynamics and sign stability of cluster mutation loops."""

from .catalog import Example, get_example
from .cgmat import CGState, cg_init, cg_path, cg_step, duality_check
from .polynomials import char_poly
from .seeds import (
    ExchangeSeed,
    Mut,
    MutationPath,
    Swap,
    apply_path,
    builtin_seed,
    is_mutation_loop,
    mutate_matrix,
    path,
    permute_matrix,
)
from .stability import (
    ConeDescription,
    StabilityReport,
    canonical_points,
    certify_invariant_cone,
    detect_sign_stability,
    detect_weak_sign_stability,
    entropy,
    hereditary_check,
    perron_root,
    sign_cone,
    sign_leq,
    spectral_duality_check,
    stretch_factor,
)
from .surfaces import Triangulation, b_from_triangulation, builtin_triangulation, flip
from .tropical import (
    apply_loop,
    casimir,
    check_e_matrix,
    e_matrix,
    presentation_matrix,
    sign_of_path,
    trop_a_step,
    trop_ensemble,
    trop_x_step,
)

__version__ = "0.1.0"
