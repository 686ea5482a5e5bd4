"""Exact q,t-Macdonald polynomial toolkit.

Nonsymmetric Macdonald polynomials, interpolation Macdonald polynomials,
generalized q,t-binomial coefficients and Pieri-type branching coefficients,
all in exact rational-function arithmetic with brute-force cross-checks.
"""

from .algebra import (
    GENERIC,
    AlgebraError,
    ScalarContext,
    SpecializationError,
    ZPolynomial,
    divided_difference,
    elementary_symmetric,
    elementary_symmetric_at,
    poly_arith,
    scalar_canonicalize,
    specialized,
    subst_t_power,
    substitute,
)
from .comb import (
    Composition,
    HookTable,
    SuccessorWitness,
    c_I_apply,
    c_I_operator_word,
    chi_r,
    compositions,
    compositions_up_to,
    hook_products,
    is_successor,
    leg_colength_vector,
    maximal_sets,
    n_stat,
    sorting_permutation,
    spectral_vector,
    successor_test,
    successors_layered,
)
from .emac import (
    MacExpansion,
    act_T_basis,
    apply_phi_q,
    apply_T,
    generate_E,
    generate_E_inverted,
    norm_N,
    psi_coefficient,
    symmetrize_P,
)
from .istar import (
    InterpExpansion,
    apply_H,
    apply_phi_star,
    binomial_direct,
    binomial_recursive,
    extra_vanishing_test,
    generate_Estar,
    principal_value,
    spectral_evaluate,
    vanishing_solve_oracle,
    xi_apply,
)
from .pieri import (
    ExpansionTable,
    PieriProductForms,
    duality_transfer,
    interpolation_expansion,
    pieri_homogeneous,
    pieri_r1_closed,
    pieri_r1_product_form,
    product_expand_oracle,
)
from .ctnorm import (
    SpecializedWeight,
    ct_inner_product,
    specialized_weight,
    verify_orthogonality_norms,
)

__version__ = "0.1.0"
