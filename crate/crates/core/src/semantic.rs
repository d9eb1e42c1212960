//! Semantic ∅-locality and Δ-locality.
//!
//! An axiom is local w.r.t. Σ when the axiom with every non-Σ concept name
//! replaced by ⊥ (⊤) and every non-Σ role by the empty (universal) relation is
//! valid. Concept axioms go through the tableau, role axioms are decided
//! structurally.

use crate::model::{normalize_axiom, normalize_role, Axiom, ConceptExpr, RoleExpr, Signature};
use crate::tableau::{is_satisfiable, SatResult};

pub use crate::tableau::Budget;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SemanticFlavor {
    /// Non-Σ symbols become empty.
    Bot,
    /// Non-Σ symbols become the whole domain.
    Top,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Local,
    NonLocal,
    Unknown(String),
}

impl Verdict {
    pub fn is_local(&self) -> bool {
        matches!(self, Verdict::Local)
    }
}

fn substitute_role(r: &RoleExpr, sig: &Signature, flavor: SemanticFlavor) -> RoleExpr {
    match r.role_name() {
        Some(n) if !sig.roles.contains(n) => match flavor {
            SemanticFlavor::Bot => RoleExpr::Empty,
            SemanticFlavor::Top => RoleExpr::Universal,
        },
        _ => r.clone(),
    }
}

fn substitute_concept(c: &ConceptExpr, sig: &Signature, flavor: SemanticFlavor) -> ConceptExpr {
    use ConceptExpr as C;
    let sc = |d: &ConceptExpr| Box::new(substitute_concept(d, sig, flavor));
    let sr = |r: &RoleExpr| substitute_role(r, sig, flavor);
    match c {
        C::Name(n) if !sig.concepts.contains(n) => match flavor {
            SemanticFlavor::Bot => C::Bottom,
            SemanticFlavor::Top => C::Top,
        },
        C::Top | C::Bottom | C::Name(_) | C::OneOf(_) => c.clone(),
        C::Not(d) => C::Not(sc(d)),
        C::And(cs) => C::And(cs.iter().map(|d| *sc(d)).collect()),
        C::Or(cs) => C::Or(cs.iter().map(|d| *sc(d)).collect()),
        C::Exists(r, d) => C::Exists(sr(r), sc(d)),
        C::ForAll(r, d) => C::ForAll(sr(r), sc(d)),
        C::AtLeast(n, r, d) => C::AtLeast(*n, sr(r), sc(d)),
        C::AtMost(n, r, d) => C::AtMost(*n, sr(r), sc(d)),
    }
}

/// Replace every symbol outside `sig` by the constant of `flavor`.
/// Nominals are left alone.
pub fn substitute(a: &Axiom, sig: &Signature, flavor: SemanticFlavor) -> Axiom {
    let c = |x: &ConceptExpr| substitute_concept(x, sig, flavor);
    let r = |x: &RoleExpr| substitute_role(x, sig, flavor);
    match a {
        Axiom::SubClassOf(x, y) => Axiom::SubClassOf(c(x), c(y)),
        Axiom::EquivalentClasses(x, y) => Axiom::EquivalentClasses(c(x), c(y)),
        Axiom::DisjointClasses(x, y) => Axiom::DisjointClasses(c(x), c(y)),
        Axiom::SubRoleOf(x, y) => Axiom::SubRoleOf(r(x), r(y)),
        Axiom::EquivalentRoles(x, y) => Axiom::EquivalentRoles(r(x), r(y)),
        Axiom::InverseRoles(x, y) => Axiom::InverseRoles(r(x), r(y)),
        Axiom::Transitive(x) => Axiom::Transitive(r(x)),
        Axiom::Domain(x, y) => Axiom::Domain(r(x), c(y)),
        Axiom::Range(x, y) => Axiom::Range(r(x), c(y)),
    }
}

/// Constant propagation through ⊥, ⊤ and the constant roles.
pub fn simplify(c: &ConceptExpr) -> ConceptExpr {
    use ConceptExpr as C;
    match c {
        C::Top | C::Bottom | C::Name(_) | C::OneOf(_) => c.clone(),
        C::Not(d) => match simplify(d) {
            C::Top => C::Bottom,
            C::Bottom => C::Top,
            C::Not(e) => *e,
            e => C::Not(Box::new(e)),
        },
        C::And(cs) => {
            let mut out = Vec::new();
            for d in cs {
                match simplify(d) {
                    C::Bottom => return C::Bottom,
                    C::Top => {}
                    C::And(inner) => out.extend(inner),
                    e => out.push(e),
                }
            }
            C::and(out)
        }
        C::Or(cs) => {
            let mut out = Vec::new();
            for d in cs {
                match simplify(d) {
                    C::Top => return C::Top,
                    C::Bottom => {}
                    C::Or(inner) => out.extend(inner),
                    e => out.push(e),
                }
            }
            C::or(out)
        }
        C::Exists(r, d) => {
            let (r, d) = (normalize_role(r), simplify(d));
            match (&r, &d) {
                (RoleExpr::Empty, _) | (_, C::Bottom) => C::Bottom,
                // The domain is never empty.
                (RoleExpr::Universal, C::Top) => C::Top,
                _ => C::Exists(r, Box::new(d)),
            }
        }
        C::ForAll(r, d) => {
            let (r, d) = (normalize_role(r), simplify(d));
            match (&r, &d) {
                (RoleExpr::Empty, _) | (_, C::Top) => C::Top,
                (RoleExpr::Universal, C::Bottom) => C::Bottom,
                _ => C::ForAll(r, Box::new(d)),
            }
        }
        C::AtLeast(n, r, d) => {
            let (r, d) = (normalize_role(r), simplify(d));
            match (*n, &r, &d) {
                (0, _, _) => C::Top,
                (_, RoleExpr::Empty, _) | (_, _, C::Bottom) => C::Bottom,
                (1, RoleExpr::Universal, C::Top) => C::Top,
                _ => C::AtLeast(*n, r, Box::new(d)),
            }
        }
        C::AtMost(n, r, d) => {
            let (r, d) = (normalize_role(r), simplify(d));
            match (&r, &d) {
                (RoleExpr::Empty, _) | (_, C::Bottom) => C::Top,
                _ => C::AtMost(*n, r, Box::new(d)),
            }
        }
    }
}

/// Whether `C ⊑ D` holds in every interpretation.
fn subsumed(c: &ConceptExpr, d: &ConceptExpr, budget: &Budget) -> Result<bool, String> {
    let test = simplify(&crate::model::nnf(&simplify(&ConceptExpr::And(vec![
        c.clone(),
        ConceptExpr::not(d.clone()),
    ]))));
    match test {
        ConceptExpr::Bottom => Ok(true),
        ConceptExpr::Top => Ok(false),
        _ => match is_satisfiable(&test, budget) {
            SatResult::Unsatisfiable => Ok(true),
            SatResult::Satisfiable(_) => Ok(false),
            SatResult::Unknown(reason) => Err(reason),
        },
    }
}

/// Validity of an axiom that may mention the constant roles. `Err` carries
/// the reason the reasoner gave up.
pub fn is_tautology(a: &Axiom, budget: &Budget) -> Result<bool, String> {
    let n = normalize_role;
    match a {
        Axiom::SubClassOf(c, d) => subsumed(c, d, budget),
        Axiom::EquivalentClasses(c, d) => match (subsumed(c, d, budget), subsumed(d, c, budget)) {
            (Ok(false), _) | (_, Ok(false)) => Ok(false),
            (Err(e), _) | (_, Err(e)) => Err(e),
            _ => Ok(true),
        },
        Axiom::SubRoleOf(r, s) => {
            let (r, s) = (n(r), n(s));
            Ok(r == RoleExpr::Empty || s == RoleExpr::Universal || r == s)
        }
        Axiom::EquivalentRoles(r, s) => Ok(n(r) == n(s)),
        Axiom::InverseRoles(r, s) => Ok(r.inverse() == n(s)),
        Axiom::Transitive(r) => Ok(n(r).is_constant()),
        Axiom::Domain(..) | Axiom::Range(..) | Axiom::DisjointClasses(..) => {
            for b in normalize_axiom(a) {
                if !is_tautology(&b, budget)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// Decide ∅-locality (`Bot`) or Δ-locality (`Top`) of `a` w.r.t. `sig`.
pub fn is_semantically_local(a: &Axiom, sig: &Signature, flavor: SemanticFlavor, budget: &Budget) -> Verdict {
    match is_tautology(&substitute(a, sig, flavor), budget) {
        Ok(true) => Verdict::Local,
        Ok(false) => Verdict::NonLocal,
        Err(reason) => Verdict::Unknown(reason),
    }
}
