//! Locality-based module extraction for description logic ontologies.
//!
//! The crate decides syntactic ⊥/⊤-locality with the usual grammars and
//! semantic ∅/Δ-locality with a tableau reasoner, extracts locality-based
//! modules (plain, nested and iterated), and runs a sampling experiment that
//! compares the two families of modules.

pub mod extract;
pub mod harness;
pub mod model;
pub mod oracle;
pub mod parser;
pub mod semantic;
pub mod syntactic;
pub mod tableau;

#[cfg(test)]
mod arb;

pub use extract::{
    extract, extract_module, extract_nested, extract_star, genuine_modules, verify_module,
    ExtractOptions, Locality, ModuleKind, ModuleResult,
};
pub use harness::{
    render_report, run_comparison, sample_signatures, Comparison, CulpritType, DifferenceRecord,
    HarnessError, ReportFormat, SamplingConfig, TestMode,
};
pub use model::{
    nnf, normalize_axiom, normalize_role, signature_of, Axiom, ConceptExpr, Entity, EntityKind,
    LocalityFlavor, Name, Ontology, RoleExpr, Signature,
};
pub use oracle::{eval_concept, find_countermodel, holds, Interpretation};
pub use parser::{
    parse_ontology, parse_ontology_with, parse_signature, serialize_ontology, ParseError,
    ParseErrorKind, ParseOptions, ParsedOntology,
};
pub use semantic::{is_semantically_local, Budget, SemanticFlavor, Verdict};
pub use syntactic::{classify_concept, is_syntactically_local, SyntacticClass, SyntacticFlavor};
pub use tableau::{is_satisfiable, SatResult};
