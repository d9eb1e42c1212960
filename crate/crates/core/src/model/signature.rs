use std::borrow::Borrow;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// An interned entity name (the local part of an IRI).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Name(Arc<str>);

impl Name {
    pub fn new(s: &str) -> Self {
        Name(Arc::from(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Name {
    fn from(s: &str) -> Self {
        Name::new(s)
    }
}

impl From<String> for Name {
    fn from(s: String) -> Self {
        Name(Arc::from(s))
    }
}

impl Borrow<str> for Name {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EntityKind {
    Concept,
    Role,
    Individual,
}

/// A kind-tagged name. Concept, role and individual namespaces never mix.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Entity {
    Concept(Name),
    Role(Name),
    Individual(Name),
}

impl Entity {
    pub fn kind(&self) -> EntityKind {
        match self {
            Entity::Concept(_) => EntityKind::Concept,
            Entity::Role(_) => EntityKind::Role,
            Entity::Individual(_) => EntityKind::Individual,
        }
    }

    pub fn name(&self) -> &Name {
        match self {
            Entity::Concept(n) | Entity::Role(n) | Entity::Individual(n) => n,
        }
    }
}

impl fmt::Display for Entity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entity::Concept(n) => write!(f, "C:{n}"),
            Entity::Role(n) => write!(f, "R:{n}"),
            Entity::Individual(n) => write!(f, "I:{n}"),
        }
    }
}

/// A set of concept, role and individual names.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature {
    pub concepts: BTreeSet<Name>,
    pub roles: BTreeSet<Name>,
    pub individuals: BTreeSet<Name>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    /// Convenience constructor used heavily in tests and fixtures.
    pub fn of(concepts: &[&str], roles: &[&str]) -> Self {
        Signature {
            concepts: concepts.iter().map(|s| Name::new(s)).collect(),
            roles: roles.iter().map(|s| Name::new(s)).collect(),
            individuals: BTreeSet::new(),
        }
    }

    pub fn insert(&mut self, e: Entity) -> bool {
        match e {
            Entity::Concept(n) => self.concepts.insert(n),
            Entity::Role(n) => self.roles.insert(n),
            Entity::Individual(n) => self.individuals.insert(n),
        }
    }

    pub fn contains(&self, e: &Entity) -> bool {
        match e {
            Entity::Concept(n) => self.concepts.contains(n),
            Entity::Role(n) => self.roles.contains(n),
            Entity::Individual(n) => self.individuals.contains(n),
        }
    }

    pub fn has_concept(&self, n: &str) -> bool {
        self.concepts.contains(n)
    }

    pub fn has_role(&self, n: &str) -> bool {
        self.roles.contains(n)
    }

    pub fn has_individual(&self, n: &str) -> bool {
        self.individuals.contains(n)
    }

    pub fn len(&self) -> usize {
        self.concepts.len() + self.roles.len() + self.individuals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn extend(&mut self, other: &Signature) {
        self.concepts.extend(other.concepts.iter().cloned());
        self.roles.extend(other.roles.iter().cloned());
        self.individuals.extend(other.individuals.iter().cloned());
    }

    pub fn union(&self, other: &Signature) -> Signature {
        let mut s = self.clone();
        s.extend(other);
        s
    }

    pub fn is_subset(&self, other: &Signature) -> bool {
        self.concepts.is_subset(&other.concepts)
            && self.roles.is_subset(&other.roles)
            && self.individuals.is_subset(&other.individuals)
    }

    /// Concept and role names only: the terms a seed signature ranges over.
    pub fn terms(&self) -> impl Iterator<Item = Entity> + '_ {
        self.concepts
            .iter()
            .cloned()
            .map(Entity::Concept)
            .chain(self.roles.iter().cloned().map(Entity::Role))
    }

    pub fn entities(&self) -> impl Iterator<Item = Entity> + '_ {
        self.terms()
            .chain(self.individuals.iter().cloned().map(Entity::Individual))
    }

    pub fn term_count(&self) -> usize {
        self.concepts.len() + self.roles.len()
    }
}

impl FromIterator<Entity> for Signature {
    fn from_iter<I: IntoIterator<Item = Entity>>(iter: I) -> Self {
        let mut s = Signature::new();
        for e in iter {
            s.insert(e);
        }
        s
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |set: &BTreeSet<Name>| {
            set.iter()
                .map(|n| n.as_str())
                .collect::<Vec<_>>()
                .join(", ")
        };
        write!(f, "{{{}; {}", join(&self.concepts), join(&self.roles))?;
        if !self.individuals.is_empty() {
            write!(f, "; {}", join(&self.individuals))?;
        }
        f.write_str("}")
    }
}
