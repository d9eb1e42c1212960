use std::collections::HashSet;

use super::expr::{signature_of, Axiom, HasSignature};
use super::normalize::normalize_axiom;
use super::signature::Signature;

/// A named, ordered, duplicate-free set of normalized axioms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Ontology {
    name: String,
    axioms: Vec<Axiom>,
}

impl Ontology {
    /// Normalizes every axiom and drops structural duplicates, keeping the
    /// first occurrence.
    pub fn new(name: impl Into<String>, axioms: impl IntoIterator<Item = Axiom>) -> Self {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for a in axioms {
            for n in normalize_axiom(&a) {
                if seen.insert(n.clone()) {
                    out.push(n);
                }
            }
        }
        Ontology {
            name: name.into(),
            axioms: out,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn axioms(&self) -> &[Axiom] {
        &self.axioms
    }

    pub fn len(&self) -> usize {
        self.axioms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axioms.is_empty()
    }

    pub fn signature(&self) -> Signature {
        signature_of(self.axioms.as_slice())
    }

    pub fn contains(&self, a: &Axiom) -> bool {
        self.axioms.contains(a)
    }

    /// The ontology made of the axioms at `ids`, in the given order.
    pub fn subset(&self, name: impl Into<String>, ids: &[usize]) -> Ontology {
        Ontology {
            name: name.into(),
            axioms: ids.iter().map(|&i| self.axioms[i].clone()).collect(),
        }
    }

    /// Axiom-set inclusion, ignoring order.
    pub fn is_subset_of(&self, other: &Ontology) -> bool {
        let theirs: HashSet<&Axiom> = other.axioms.iter().collect();
        self.axioms.iter().all(|a| theirs.contains(a))
    }

    /// Same axioms, ignoring order.
    pub fn same_axioms(&self, other: &Ontology) -> bool {
        self.len() == other.len() && self.is_subset_of(other)
    }
}

impl HasSignature for Ontology {
    fn collect_signature(&self, sig: &mut Signature) {
        self.axioms.as_slice().collect_signature(sig)
    }
}
