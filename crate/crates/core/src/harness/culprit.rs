use crate::model::{are_inverse, normalize_role, Axiom, ConceptExpr, RoleExpr};

/// Axiom patterns that are semantically but not syntactically local.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CulpritType {
    /// `InverseRoles(r, inv(r))`.
    Type1,
    /// A definition `A ≡ C1 ⊓ … ⊓ Cn` with both a universal and an
    /// existential or at-least restriction on one role.
    Type2,
    None,
}

fn flatten<'a>(cs: &'a [ConceptExpr], out: &mut Vec<&'a ConceptExpr>) {
    for c in cs {
        match c {
            ConceptExpr::And(inner) => flatten(inner, out),
            other => out.push(other),
        }
    }
}

fn mixes_restrictions(conj: &[ConceptExpr]) -> bool {
    let mut flat = Vec::new();
    flatten(conj, &mut flat);
    let mut universal: Vec<RoleExpr> = Vec::new();
    let mut existential: Vec<RoleExpr> = Vec::new();
    for c in flat {
        match c {
            ConceptExpr::ForAll(r, _) => universal.push(normalize_role(r)),
            ConceptExpr::Exists(r, _) => existential.push(normalize_role(r)),
            ConceptExpr::AtLeast(n, r, _) if *n >= 1 => existential.push(normalize_role(r)),
            _ => {}
        }
    }
    universal.iter().any(|r| existential.contains(r))
}

pub fn classify_culprit(a: &Axiom) -> CulpritType {
    match a {
        Axiom::InverseRoles(r, s) if are_inverse(r, s) => CulpritType::Type1,
        Axiom::EquivalentClasses(ConceptExpr::Name(_), ConceptExpr::And(cs))
        | Axiom::EquivalentClasses(ConceptExpr::And(cs), ConceptExpr::Name(_))
            if mixes_restrictions(cs) =>
        {
            CulpritType::Type2
        }
        _ => CulpritType::None,
    }
}
