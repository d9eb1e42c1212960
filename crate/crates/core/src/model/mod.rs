//! Syntax model: names, signatures, concept and role expressions, axioms and
//! ontologies. Every value is immutable once built.

mod display;
mod expr;
mod normalize;
mod ontology;
mod signature;

pub use expr::{
    normalize_role, signature_of, Axiom, ConceptExpr, HasSignature, LocalityFlavor, RoleExpr,
};
pub use normalize::{are_inverse, negate, nnf, normalize_axiom};
pub use ontology::Ontology;
pub use signature::{Entity, EntityKind, Name, Signature};
