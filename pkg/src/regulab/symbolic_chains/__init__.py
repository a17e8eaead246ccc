"""Formal sums, factored field elements and the weight-2/3 complexes."""
from ..formal import FormalSum, accumulate  # noqa: F401
from .fields import (  # noqa: F401
    FactoredElement,
    Q,
    Qi,
    Qt,
    declare_atoms,
    monic_atom,
    set_trial_bound,
)
from .groups import atom_wedge, b2_tensor, symbol, tensor_wedge, to_json, wedge  # noqa: F401
from .maps import (  # noqa: F401
    Valuation,
    Weight2Chain,
    Weight3Chain,
    delta2,
    delta32,
    delta_n_formal,
    delta_otimes_id,
    differential2,
    differential3,
    five_term_element,
    residue_commutator,
    residue_weight3,
    specialize_sv,
    tame_symbol,
    tame_theta,
)
from .configs import (  # noqa: F401
    alt6_reference_term,
    calibrate_kappa_45,
    chain_map_defect_45,
    chain_map_defect_56,
    f4_3,
    f5_3,
    f5_of_boundary,
    f6_3,
    f6_image_unnormalized,
)
from .conditions import (  # noqa: F401
    check_condition_weight3,
    check_divisor_b2_condition,
    intersection_hypothesis,
    sym_power_membership,
)
