"""Finite-semigroup toolkit: pseudoinverses, variants, variety membership,
primary conjugacy, and exhaustive small-order enumeration."""

from .core import (
    CapExceeded,
    CayleyTable,
    EntryOutOfRange,
    NotAssociative,
    SemigroupError,
    Transformation,
    UnarySemigroup,
    adjoin_identity,
    canonical_form,
    compose,
    emit_semigroup,
    find_isomorphism,
    generate_from_transformations,
    identity_of,
    load_semigroup,
    parse_semigroup,
    power,
    product,
    validate,
)
from .green import GreenStructure, green, idempotents, is_group_h_class
from .epigroup import (
    EpigroupData,
    element_index,
    epigroup_data,
    is_completely_regular,
    pseudoinverse,
    pseudoinverse_map,
    verify_epigroup_identities,
)
from .varieties import (
    Identity,
    VarietyReport,
    eval_term,
    find_counterexample,
    in_E,
    in_V,
    in_W,
    in_W_structural,
    parse_identity,
    parse_term,
    satisfies,
)
from .variants import (
    check_pseudoinverse_transport,
    check_rho_homomorphism,
    check_variant_index,
    is_unary_variant_of_completely_regular,
    star,
    unary_variant,
    variant,
)
from .conjugacy import (
    BinaryRelation,
    ConjugacyReport,
    check_transitivity,
    conjugacy_classes,
    primary_conjugacy,
    transitive_closure,
)
from .search import (
    SearchResult,
    SearchSpec,
    count_semigroups,
    enumerate_models,
    reproduce_v1_census,
    semigroup_tables,
)
from .corpus import corpus_names, load_corpus

__version__ = "0.1.0"
