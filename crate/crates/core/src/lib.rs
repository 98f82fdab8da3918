//! Cathedra: a finite-category computation engine.
//!
//! Categories are validated composition tables over positional indices;
//! functors, natural transformations, limits, adjunctions and presheaf
//! structure are computed by explicit formulas plus exhaustive
//! universal-property searches, every one bounded by explicit caps.

pub mod adjunction;
pub mod caps;
pub mod cat;
pub mod corpus;
pub mod finset;
pub mod functor;
pub mod limits;
pub mod presheaf;
pub mod union_find;

pub use adjunction::{
    adjoint_preservation_audit, adjunction_from_transpose, adjunction_from_unit_counit,
    compose_adjunctions, diagonal_limit_adjunction, identity_adjunction,
    initial_via_weakly_initial, oaft_left_adjoint, synthesize_left_adjoint, AdjointAudit,
    Adjunction, AdjunctionError, TransposeFamily,
};
pub use caps::Caps;
pub use cat::{
    comma_category, find_universal_object, from_monoid, from_poset, from_presentation,
    full_subcategory, product_category, slice_category, CatError, CommaResult, FiniteCategory,
    Mor, MorData, Obj, PathExpr, Presentation, SliceSide, UniversalKind,
};
pub use finset::{
    all_functions, characteristic, check_set_nat, colimit_finset, enumerate_set_nats,
    function_props, generate_equivalence, limit_finset, product_set, set_category, sum_set,
    truth_set, Atom, FinFunction, FinSet, FinSetError, FunctionProps, Partition, SetCocone,
    SetCone, SetFunctor,
};
pub use functor::{
    classify_functor, compose_functors, diagonal_functor, enumerate_functors, enumerate_nats,
    find_category_isomorphism, functor_after_nat, functor_category, hcompose, nat_after_functor,
    vcompose, Classification, Functor, FunctorCategory, FunctorError, NatTransformation,
};
pub use presheaf::{
    apply_hom_to_cone, apply_hom_to_diagram, category_of_elements, classify_subpresheaf, curry,
    density, empty_presheaf, exponential, find_representation, hom_bifunctor,
    presheaf_fragment_category, product_presheaf, representable, representable_map,
    subobject_classifier, subpresheaves, terminal_presheaf, uncurry, yoneda_backward,
    yoneda_embedding, yoneda_forward, Classifier, Density, ElementsCategory, Exponential,
    Presheaf, PresheafError, PresheafMap, Representation,
};
pub use limits::{
    all_cones, all_limit_cones, check_cocone, check_cone, colimit, colimit_cat, enumerate_cones,
    factorizations, initial_via_identity_limit, is_colimit_cocone, is_limit_cone, is_monic_epic,
    kan_left, limit, limit_cat, limit_map, limit_via_products_equalizers,
    limit_via_products_equalizers_cat, limit_via_products_equalizers_set, map_cocone, map_cone,
    preservation_report, restrict_along, verify_set_colimit, verify_set_limit, Cocone,
    ColimitOutcome, Cone, ConeSide, Diagram, LeftKan, LimitError, LimitOutcome, MonicEpic,
    ShapePreservation, DEFAULT_SAMPLE_BOUND,
};
