//! Description-logic notation, used in diagnostics and traces.

use std::fmt;

use super::expr::{Axiom, ConceptExpr, RoleExpr};

impl fmt::Display for RoleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RoleExpr::Name(n) => write!(f, "{n}"),
            RoleExpr::Inverse(r) => write!(f, "{r}⁻"),
            RoleExpr::Empty => f.write_str("ε"),
            RoleExpr::Universal => f.write_str("U"),
        }
    }
}

fn write_nary(f: &mut fmt::Formatter<'_>, cs: &[ConceptExpr], op: &str) -> fmt::Result {
    f.write_str("(")?;
    for (i, c) in cs.iter().enumerate() {
        if i > 0 {
            write!(f, " {op} ")?;
        }
        write!(f, "{c}")?;
    }
    f.write_str(")")
}

impl fmt::Display for ConceptExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConceptExpr::Top => f.write_str("⊤"),
            ConceptExpr::Bottom => f.write_str("⊥"),
            ConceptExpr::Name(n) => write!(f, "{n}"),
            ConceptExpr::OneOf(n) => write!(f, "{{{n}}}"),
            ConceptExpr::Not(c) => write!(f, "¬{c}"),
            ConceptExpr::And(cs) => write_nary(f, cs, "⊓"),
            ConceptExpr::Or(cs) => write_nary(f, cs, "⊔"),
            ConceptExpr::Exists(r, c) => write!(f, "∃{r}.{c}"),
            ConceptExpr::ForAll(r, c) => write!(f, "∀{r}.{c}"),
            ConceptExpr::AtLeast(n, r, c) => write!(f, "≥{n} {r}.{c}"),
            ConceptExpr::AtMost(n, r, c) => write!(f, "≤{n} {r}.{c}"),
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axiom::SubClassOf(c, d) => write!(f, "{c} ⊑ {d}"),
            Axiom::EquivalentClasses(c, d) => write!(f, "{c} ≡ {d}"),
            Axiom::SubRoleOf(r, s) => write!(f, "{r} ⊑ {s}"),
            Axiom::EquivalentRoles(r, s) => write!(f, "{r} ≡ {s}"),
            Axiom::InverseRoles(r, s) => write!(f, "{r} ≡ ({s})⁻"),
            Axiom::Transitive(r) => write!(f, "Trans({r})"),
            Axiom::Domain(r, c) => write!(f, "Domain({r}, {c})"),
            Axiom::Range(r, c) => write!(f, "Range({r}, {c})"),
            Axiom::DisjointClasses(c, d) => write!(f, "Disjoint({c}, {d})"),
        }
    }
}
