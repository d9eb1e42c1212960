//! Proptest strategies shared by the unit tests.

use proptest::prelude::*;

use crate::model::{Axiom, ConceptExpr, Name, RoleExpr, Signature};

const CONCEPTS: &[&str] = &["A", "B", "C"];
const ROLES: &[&str] = &["R", "S"];
const INDIVIDUALS: &[&str] = &["a"];

pub fn role() -> impl Strategy<Value = RoleExpr> {
    (prop::sample::select(ROLES), any::<bool>()).prop_map(|(n, inv)| {
        let r = RoleExpr::named(n);
        if inv {
            r.inverse()
        } else {
            r
        }
    })
}

pub fn nested_role() -> impl Strategy<Value = RoleExpr> {
    let leaf = prop_oneof![
        prop::sample::select(ROLES).prop_map(RoleExpr::named),
        Just(RoleExpr::Empty),
        Just(RoleExpr::Universal),
    ];
    leaf.prop_recursive(3, 4, 1, |inner| {
        inner.prop_map(|r| RoleExpr::Inverse(Box::new(r)))
    })
}

pub fn concept(depth: u32) -> impl Strategy<Value = ConceptExpr> {
    let leaf = prop_oneof![
        1 => Just(ConceptExpr::Top),
        1 => Just(ConceptExpr::Bottom),
        6 => prop::sample::select(CONCEPTS).prop_map(ConceptExpr::named),
        1 => prop::sample::select(INDIVIDUALS).prop_map(ConceptExpr::nominal),
    ];
    leaf.prop_recursive(depth, 24, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(ConceptExpr::not),
            prop::collection::vec(inner.clone(), 2..=3).prop_map(ConceptExpr::And),
            prop::collection::vec(inner.clone(), 2..=3).prop_map(ConceptExpr::Or),
            (role(), inner.clone()).prop_map(|(r, c)| ConceptExpr::exists(r, c)),
            (role(), inner.clone()).prop_map(|(r, c)| ConceptExpr::forall(r, c)),
            (0u32..3, role(), inner.clone()).prop_map(|(n, r, c)| ConceptExpr::at_least(n, r, c)),
            (0u32..3, role(), inner).prop_map(|(n, r, c)| ConceptExpr::at_most(n, r, c)),
        ]
    })
}

/// Any axiom, including the derived forms removed by normalization.
pub fn raw_axiom(depth: u32) -> impl Strategy<Value = Axiom> {
    prop_oneof![
        4 => axiom(depth),
        1 => (role(), concept(depth)).prop_map(|(r, c)| Axiom::Domain(r, c)),
        1 => (role(), concept(depth)).prop_map(|(r, c)| Axiom::Range(r, c)),
        1 => (concept(depth), concept(depth)).prop_map(|(c, d)| Axiom::DisjointClasses(c, d)),
    ]
}

/// Normalized axioms.
pub fn axiom(depth: u32) -> impl Strategy<Value = Axiom> {
    prop_oneof![
        5 => (concept(depth), concept(depth)).prop_map(|(c, d)| Axiom::SubClassOf(c, d)),
        3 => (concept(depth), concept(depth)).prop_map(|(c, d)| Axiom::EquivalentClasses(c, d)),
        1 => (role(), role()).prop_map(|(r, s)| Axiom::SubRoleOf(r, s)),
        1 => (role(), role()).prop_map(|(r, s)| Axiom::EquivalentRoles(r, s)),
        1 => (role(), role()).prop_map(|(r, s)| Axiom::InverseRoles(r, s)),
        1 => role().prop_map(Axiom::Transitive),
    ]
}

pub fn signature() -> impl Strategy<Value = Signature> {
    (
        prop::sample::subsequence(CONCEPTS, 0..=CONCEPTS.len()),
        prop::sample::subsequence(ROLES, 0..=ROLES.len()),
    )
        .prop_map(|(cs, rs)| Signature {
            concepts: cs.into_iter().map(Name::new).collect(),
            roles: rs.into_iter().map(Name::new).collect(),
            individuals: Default::default(),
        })
}

/// Concepts over two concept names, one role (with its inverse and the
/// universal role) and one individual: small enough for exhaustive search.
pub fn small_concept(depth: u32) -> impl Strategy<Value = ConceptExpr> {
    let leaf = prop_oneof![
        1 => Just(ConceptExpr::Top),
        1 => Just(ConceptExpr::Bottom),
        6 => prop::sample::select(&["A", "B"][..]).prop_map(ConceptExpr::named),
        1 => Just(ConceptExpr::nominal("a")),
    ];
    let role = prop_oneof![
        4 => Just(RoleExpr::named("R")),
        2 => Just(RoleExpr::named("R").inverse()),
        1 => Just(RoleExpr::Universal),
    ];
    leaf.prop_recursive(depth, 16, 3, move |inner| {
        prop_oneof![
            inner.clone().prop_map(ConceptExpr::not),
            prop::collection::vec(inner.clone(), 2..=3).prop_map(ConceptExpr::And),
            prop::collection::vec(inner.clone(), 2..=3).prop_map(ConceptExpr::Or),
            (role.clone(), inner.clone()).prop_map(|(r, c)| ConceptExpr::exists(r, c)),
            (role.clone(), inner.clone()).prop_map(|(r, c)| ConceptExpr::forall(r, c)),
            (0u32..3, role.clone(), inner.clone()).prop_map(|(n, r, c)| ConceptExpr::at_least(n, r, c)),
            (0u32..3, role.clone(), inner).prop_map(|(n, r, c)| ConceptExpr::at_most(n, r, c)),
        ]
    })
}
