"""Irreducibility and stability of iterated monic PCF quadratics over Q and F_p."""

from .classify import (
    ClassificationVerdict,
    Counterexample,
    ModpReport,
    Reason,
    RigidityReport,
    SpecialForm,
    classify_theorem_1_1,
    empirical_modp_check,
    find_all_n_prime,
    rigidity_sweep,
    scan,
    special_form_polynomial,
    special_type_form,
    special_type_forms,
    verdicts_to_csv,
    verdicts_to_json,
    verify_ff_rigidity,
)
from .core_arith import (
    PellSolution,
    integer_fourth_root,
    integer_sqrt,
    is_perfect_square,
    is_prime,
    ljunggren_solutions,
    pell_solutions,
    primes_up_to,
)
from .errors import DomainError, InconsistencyError, ResourceError
from .finite_field import (
    Factorization,
    FFStabilityData,
    FpPolynomial,
    Squareness,
    TypeString,
    factor,
    ff_stability_data,
    is_irreducible,
    iterate_mod,
    squareness,
    type_string,
)
from .quad_poly import (
    Family,
    IntPolynomial,
    MonicQuadratic,
    NotPCF,
    OrbitInfo,
    PCFForm,
    critical_orbit,
    detect_pcf_form,
    iterate,
)
from .stability import (
    CONJECTURAL_SET,
    AMInvariants,
    BaseCheck,
    ExceptionParameters,
    FactorWitness,
    StabilityStatus,
    StabilityVerdict,
    am_invariants,
    base_reducibility_check,
    exception_parameters,
    exceptional_shifts,
    factor_witness,
    g_sequence,
    lemma24_chain,
    required_iterate,
    rigidity_index,
    stability_verdict,
)

__version__ = "0.1.0"
