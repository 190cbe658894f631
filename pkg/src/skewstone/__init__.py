"""Finite skew Boolean algebras with intersections, their spectra, and the
duality with (rectangular) skew Boolean spaces, all at exhaustively checkable
scale."""

from .core_algebra import (
    CongruenceError,
    Partition,
    SizeCapError,
    SkewAlgebra,
    StructuralError,
    ValidationReport,
    algebras_isomorphic,
    green_partitions,
    handedness,
    make_algebra,
    mirror,
    natural_leq,
    natural_leq_via_join,
    natural_preceq,
    natural_preceq_via_join,
    quotient_by,
    second_decomposition_check,
    validate_algebra,
)
from .ideals_spectra import (
    Ideal,
    PrimeIdeal,
    RectSkewSpace,
    SpectrumPoint,
    basic_copen,
    enumerate_ideals,
    enumerate_prime_ideals,
    enumerate_prime_ideals_bruteforce,
    ideal_congruence,
    is_leq_cofinal,
    is_preceq_cofinal,
    leq_ideal_generated,
    make_space,
    preceq_ideal_generated,
    prime_reflection_bijection,
    saturate,
    skew_spectrum,
)
from .lattice_sections import (
    GlobalSection,
    LatticeSection,
    find_global_section,
    find_lattice_section,
    section_equivalence_check,
)
from .morphisms_duality import (
    HomFlags,
    Homomorphism,
    SpaceMorphism,
    SpaceMorphismFlags,
    algebra_roundtrip_iso,
    check_variant_dualities,
    classify_hom,
    classify_space_morphism,
    compose_homs,
    compose_space_morphisms,
    decompose_morphism,
    dual_of_hom,
    enumerate_homs,
    enumerate_space_morphisms,
    from_space_pair,
    hom_factorization,
    hom_of_space_morphism,
    identity_hom,
    identity_space_morphism,
    space_roundtrip_iso,
    to_space_pair,
    validate_hom,
    validate_space_morphism,
    zero_hom,
)
from .spaces_sections import (
    BandOnY,
    PartialMap,
    Section,
    dual_algebra,
    dual_algebra_rect,
    dual_algebra_right,
    enumerate_sections,
    left_band,
    partial_map_algebra,
    product_band,
    random_space,
    reflection_check,
    right_band,
    spaces_isomorphic,
    validate_space,
)
