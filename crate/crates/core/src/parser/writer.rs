use std::fmt::Write;

use crate::model::{Axiom, ConceptExpr, Name, Ontology, RoleExpr};

fn name(n: &Name) -> String {
    let s = n.as_str();
    let plain = !s.is_empty()
        && !s
            .chars()
            .any(|c| c.is_whitespace() || "()<>\"#:/".contains(c));
    if plain {
        s.to_string()
    } else {
        format!("<{s}>")
    }
}

fn role(r: &RoleExpr) -> String {
    match r {
        RoleExpr::Name(n) => name(n),
        RoleExpr::Inverse(r) => format!("ObjectInverseOf({})", role(r)),
        RoleExpr::Universal => "owl:topObjectProperty".into(),
        RoleExpr::Empty => "owl:bottomObjectProperty".into(),
    }
}

fn list(cs: &[ConceptExpr]) -> String {
    cs.iter().map(concept).collect::<Vec<_>>().join(" ")
}

fn concept(c: &ConceptExpr) -> String {
    match c {
        ConceptExpr::Top => "owl:Thing".into(),
        ConceptExpr::Bottom => "owl:Nothing".into(),
        ConceptExpr::Name(n) => name(n),
        ConceptExpr::OneOf(n) => format!("ObjectOneOf({})", name(n)),
        ConceptExpr::Not(c) => format!("ObjectComplementOf({})", concept(c)),
        ConceptExpr::And(cs) if cs.is_empty() => "owl:Thing".into(),
        ConceptExpr::Or(cs) if cs.is_empty() => "owl:Nothing".into(),
        ConceptExpr::And(cs) => format!("ObjectIntersectionOf({})", list(cs)),
        ConceptExpr::Or(cs) => format!("ObjectUnionOf({})", list(cs)),
        ConceptExpr::Exists(r, c) => format!("ObjectSomeValuesFrom({} {})", role(r), concept(c)),
        ConceptExpr::ForAll(r, c) => format!("ObjectAllValuesFrom({} {})", role(r), concept(c)),
        ConceptExpr::AtLeast(n, r, c) => format!("ObjectMinCardinality({n} {} {})", role(r), concept(c)),
        ConceptExpr::AtMost(n, r, c) => format!("ObjectMaxCardinality({n} {} {})", role(r), concept(c)),
    }
}

fn axiom(a: &Axiom) -> String {
    match a {
        Axiom::SubClassOf(c, d) => format!("SubClassOf({} {})", concept(c), concept(d)),
        Axiom::EquivalentClasses(c, d) => format!("EquivalentClasses({} {})", concept(c), concept(d)),
        Axiom::DisjointClasses(c, d) => format!("DisjointClasses({} {})", concept(c), concept(d)),
        Axiom::SubRoleOf(r, s) => format!("SubObjectPropertyOf({} {})", role(r), role(s)),
        Axiom::EquivalentRoles(r, s) => format!("EquivalentObjectProperties({} {})", role(r), role(s)),
        Axiom::InverseRoles(r, s) => format!("InverseObjectProperties({} {})", role(r), role(s)),
        Axiom::Transitive(r) => format!("TransitiveObjectProperty({})", role(r)),
        Axiom::Domain(r, c) => format!("ObjectPropertyDomain({} {})", role(r), concept(c)),
        Axiom::Range(r, c) => format!("ObjectPropertyRange({} {})", role(r), concept(c)),
    }
}

/// Functional syntax with declarations, one axiom per line, in ontology
/// order. Parsing the output gives back the same ontology.
pub fn serialize_ontology(o: &Ontology) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "Ontology({}", name(&Name::new(o.name())));
    let sig = o.signature();
    for c in &sig.concepts {
        let _ = writeln!(out, "  Declaration(Class({}))", name(c));
    }
    for r in &sig.roles {
        let _ = writeln!(out, "  Declaration(ObjectProperty({}))", name(r));
    }
    for i in &sig.individuals {
        let _ = writeln!(out, "  Declaration(NamedIndividual({}))", name(i));
    }
    for a in o.axioms() {
        let _ = writeln!(out, "  {}", axiom(a));
    }
    out.push_str(")\n");
    out
}
