"""Finite permutation group computations centered on trivial-intersection
subgroups, coprime actions and Frobenius structure."""

from tigroups.arith import (
    complement_primes,
    factorint,
    format_primes,
    p_part,
    parse_primes,
    pi_part,
    prime_set,
)
from tigroups.coact import (
    CoprimeActionPair,
    brauer_suzuki_check,
    commutator_ga,
    controls_fusion,
    coprime_identity_suite,
    fixed_subgroup,
    has_normal_p_complement,
    make_pair,
    prop_1_6_check,
    transfer_property_suite,
)
from tigroups.corpus import (
    CatalogEntry,
    GroupSpec,
    agl1,
    alternating,
    build_group,
    catalog,
    catalog_entry,
    cyclic,
    dihedral,
    direct_product,
    field_aut_extension,
    format_spec,
    generalized_quaternion,
    load_spec,
    parse_spec,
    save_spec,
    semidirect_by_normalizing_perms,
    sl2,
    symmetric,
)
from tigroups.errors import BoundExceeded, InvalidInput, ParseError, TigroupsError
from tigroups.grouplat import (
    ConjugacyClass,
    Quotient,
    Section,
    are_conjugate_subgroups,
    centralizer,
    chief_series,
    closure,
    commutator,
    conjugacy_classes,
    core,
    derived_series,
    hall,
    intersection,
    involves,
    is_hall_in,
    is_perfect,
    is_solvable,
    isomorphic,
    join,
    minimal_normal_subgroups,
    normal_closure,
    normal_subgroups,
    normalizer,
    quotient,
    subgroups_up_to_conjugacy,
    sylow,
    trivial_subgroup,
)
from tigroups.permcore import (
    Bounds,
    Permutation,
    PermutationGroup,
    compose,
    conjugate,
    contains,
    elements,
    group_order,
    identity,
    inverse,
    parse_permutation,
)
from tigroups.thmcheck import (
    STATEMENTS,
    RunReport,
    SuiteConfig,
    compile_filter,
    run_suite,
    verify_certificate,
)
from tigroups.tiprops import (
    AnalysisReport,
    TheoremReport,
    TIWitness,
    analyze_theorem_1_2,
    build_frobenius_witness,
    decompose_OHQ,
    fixed_point_count,
    frobenius_kernel,
    is_frobenius_action,
    is_ti,
    lemma_4_1_check,
    lemma_4_2_check,
    lemma_4_3_check,
    lemma_4_4_check,
    normal_complement,
    pi_core,
    pi_series,
    prop_1_4_check,
    theorem_1_5_check,
    theorem_1_7_check,
    theorem_5_1_check,
)

__version__ = "0.1.0"

__all__ = [
    "AnalysisReport",
    "Bounds",
    "BoundExceeded",
    "CatalogEntry",
    "ConjugacyClass",
    "CoprimeActionPair",
    "GroupSpec",
    "InvalidInput",
    "ParseError",
    "Permutation",
    "PermutationGroup",
    "Quotient",
    "RunReport",
    "STATEMENTS",
    "Section",
    "SuiteConfig",
    "TIWitness",
    "TheoremReport",
    "TigroupsError",
    "agl1",
    "alternating",
    "analyze_theorem_1_2",
    "are_conjugate_subgroups",
    "brauer_suzuki_check",
    "build_frobenius_witness",
    "build_group",
    "catalog",
    "catalog_entry",
    "centralizer",
    "chief_series",
    "closure",
    "commutator",
    "commutator_ga",
    "compile_filter",
    "complement_primes",
    "compose",
    "conjugacy_classes",
    "conjugate",
    "contains",
    "controls_fusion",
    "coprime_identity_suite",
    "core",
    "cyclic",
    "decompose_OHQ",
    "derived_series",
    "dihedral",
    "direct_product",
    "elements",
    "factorint",
    "field_aut_extension",
    "fixed_point_count",
    "fixed_subgroup",
    "format_primes",
    "format_spec",
    "frobenius_kernel",
    "generalized_quaternion",
    "group_order",
    "hall",
    "has_normal_p_complement",
    "identity",
    "intersection",
    "inverse",
    "involves",
    "is_frobenius_action",
    "is_hall_in",
    "is_perfect",
    "is_solvable",
    "is_ti",
    "isomorphic",
    "join",
    "lemma_4_1_check",
    "lemma_4_2_check",
    "lemma_4_3_check",
    "lemma_4_4_check",
    "load_spec",
    "make_pair",
    "minimal_normal_subgroups",
    "normal_closure",
    "normal_complement",
    "normal_subgroups",
    "normalizer",
    "p_part",
    "parse_permutation",
    "parse_primes",
    "parse_spec",
    "pi_core",
    "pi_part",
    "pi_series",
    "prime_set",
    "prop_1_4_check",
    "prop_1_6_check",
    "quotient",
    "run_suite",
    "save_spec",
    "semidirect_by_normalizing_perms",
    "sl2",
    "subgroups_up_to_conjugacy",
    "sylow",
    "symmetric",
    "theorem_1_5_check",
    "theorem_1_7_check",
    "theorem_5_1_check",
    "transfer_property_suite",
    "trivial_subgroup",
    "verify_certificate",
]
