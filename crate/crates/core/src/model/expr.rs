use super::signature::{Name, Signature};

/// A role expression.
///
/// `Empty` and `Universal` only arise from locality substitution; they never
/// come out of the parser.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RoleExpr {
    Name(Name),
    Inverse(Box<RoleExpr>),
    Empty,
    Universal,
}

impl RoleExpr {
    pub fn named(n: &str) -> Self {
        RoleExpr::Name(Name::new(n))
    }

    /// The normalized inverse of this role.
    pub fn inverse(&self) -> RoleExpr {
        normalize_role(&RoleExpr::Inverse(Box::new(self.clone())))
    }

    /// The underlying role name, looking through inverses.
    pub fn role_name(&self) -> Option<&Name> {
        match self {
            RoleExpr::Name(n) => Some(n),
            RoleExpr::Inverse(r) => r.role_name(),
            RoleExpr::Empty | RoleExpr::Universal => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, RoleExpr::Empty | RoleExpr::Universal)
    }
}

/// Collapse nested inverses. The constant roles are their own inverses.
pub fn normalize_role(r: &RoleExpr) -> RoleExpr {
    match r {
        RoleExpr::Inverse(inner) => match normalize_role(inner) {
            RoleExpr::Inverse(x) => *x,
            RoleExpr::Empty => RoleExpr::Empty,
            RoleExpr::Universal => RoleExpr::Universal,
            n @ RoleExpr::Name(_) => RoleExpr::Inverse(Box::new(n)),
        },
        other => other.clone(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConceptExpr {
    Top,
    Bottom,
    Name(Name),
    Not(Box<ConceptExpr>),
    And(Vec<ConceptExpr>),
    Or(Vec<ConceptExpr>),
    Exists(RoleExpr, Box<ConceptExpr>),
    ForAll(RoleExpr, Box<ConceptExpr>),
    AtLeast(u32, RoleExpr, Box<ConceptExpr>),
    AtMost(u32, RoleExpr, Box<ConceptExpr>),
    /// A singleton nominal `{a}`.
    OneOf(Name),
}

impl ConceptExpr {
    pub fn named(n: &str) -> Self {
        ConceptExpr::Name(Name::new(n))
    }

    pub fn nominal(n: &str) -> Self {
        ConceptExpr::OneOf(Name::new(n))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(c: ConceptExpr) -> Self {
        ConceptExpr::Not(Box::new(c))
    }

    /// Conjunction; a single operand collapses to itself, none to `Top`.
    pub fn and(mut cs: Vec<ConceptExpr>) -> Self {
        match cs.len() {
            0 => ConceptExpr::Top,
            1 => cs.pop().unwrap(),
            _ => ConceptExpr::And(cs),
        }
    }

    /// Disjunction; a single operand collapses to itself, none to `Bottom`.
    pub fn or(mut cs: Vec<ConceptExpr>) -> Self {
        match cs.len() {
            0 => ConceptExpr::Bottom,
            1 => cs.pop().unwrap(),
            _ => ConceptExpr::Or(cs),
        }
    }

    pub fn exists(r: RoleExpr, c: ConceptExpr) -> Self {
        ConceptExpr::Exists(r, Box::new(c))
    }

    pub fn forall(r: RoleExpr, c: ConceptExpr) -> Self {
        ConceptExpr::ForAll(r, Box::new(c))
    }

    pub fn at_least(n: u32, r: RoleExpr, c: ConceptExpr) -> Self {
        ConceptExpr::AtLeast(n, r, Box::new(c))
    }

    pub fn at_most(n: u32, r: RoleExpr, c: ConceptExpr) -> Self {
        ConceptExpr::AtMost(n, r, Box::new(c))
    }

    /// `=n R.C`, desugared into `≥n R.C ⊓ ≤n R.C`.
    pub fn exactly(n: u32, r: RoleExpr, c: ConceptExpr) -> Self {
        ConceptExpr::And(vec![
            ConceptExpr::at_least(n, r.clone(), c.clone()),
            ConceptExpr::at_most(n, r, c),
        ])
    }

    /// Nesting depth of role restrictions.
    pub fn depth(&self) -> usize {
        match self {
            ConceptExpr::Top
            | ConceptExpr::Bottom
            | ConceptExpr::Name(_)
            | ConceptExpr::OneOf(_) => 0,
            ConceptExpr::Not(c) => c.depth(),
            ConceptExpr::And(cs) | ConceptExpr::Or(cs) => {
                cs.iter().map(|c| c.depth()).max().unwrap_or(0)
            }
            ConceptExpr::Exists(_, c)
            | ConceptExpr::ForAll(_, c)
            | ConceptExpr::AtLeast(_, _, c)
            | ConceptExpr::AtMost(_, _, c) => 1 + c.depth(),
        }
    }

    /// Apply `f` to every role expression, rebuilding the concept.
    pub fn map_roles(&self, f: &impl Fn(&RoleExpr) -> RoleExpr) -> ConceptExpr {
        use ConceptExpr::*;
        match self {
            Top | Bottom | Name(_) | OneOf(_) => self.clone(),
            Not(c) => Not(Box::new(c.map_roles(f))),
            And(cs) => And(cs.iter().map(|c| c.map_roles(f)).collect()),
            Or(cs) => Or(cs.iter().map(|c| c.map_roles(f)).collect()),
            Exists(r, c) => Exists(f(r), Box::new(c.map_roles(f))),
            ForAll(r, c) => ForAll(f(r), Box::new(c.map_roles(f))),
            AtLeast(n, r, c) => AtLeast(*n, f(r), Box::new(c.map_roles(f))),
            AtMost(n, r, c) => AtMost(*n, f(r), Box::new(c.map_roles(f))),
        }
    }

    /// Visit every sub-concept, pre-order.
    pub fn visit(&self, f: &mut impl FnMut(&ConceptExpr)) {
        f(self);
        match self {
            ConceptExpr::Not(c)
            | ConceptExpr::Exists(_, c)
            | ConceptExpr::ForAll(_, c)
            | ConceptExpr::AtLeast(_, _, c)
            | ConceptExpr::AtMost(_, _, c) => c.visit(f),
            ConceptExpr::And(cs) | ConceptExpr::Or(cs) => {
                for c in cs {
                    c.visit(f);
                }
            }
            _ => {}
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    SubClassOf(ConceptExpr, ConceptExpr),
    EquivalentClasses(ConceptExpr, ConceptExpr),
    SubRoleOf(RoleExpr, RoleExpr),
    EquivalentRoles(RoleExpr, RoleExpr),
    InverseRoles(RoleExpr, RoleExpr),
    Transitive(RoleExpr),
    Domain(RoleExpr, ConceptExpr),
    Range(RoleExpr, ConceptExpr),
    DisjointClasses(ConceptExpr, ConceptExpr),
}

impl Axiom {
    pub fn is_role_axiom(&self) -> bool {
        matches!(
            self,
            Axiom::SubRoleOf(..)
                | Axiom::EquivalentRoles(..)
                | Axiom::InverseRoles(..)
                | Axiom::Transitive(..)
        )
    }

    pub fn map_roles(&self, f: &impl Fn(&RoleExpr) -> RoleExpr) -> Axiom {
        use Axiom::*;
        match self {
            SubClassOf(c, d) => SubClassOf(c.map_roles(f), d.map_roles(f)),
            EquivalentClasses(c, d) => EquivalentClasses(c.map_roles(f), d.map_roles(f)),
            SubRoleOf(r, s) => SubRoleOf(f(r), f(s)),
            EquivalentRoles(r, s) => EquivalentRoles(f(r), f(s)),
            InverseRoles(r, s) => InverseRoles(f(r), f(s)),
            Transitive(r) => Transitive(f(r)),
            Domain(r, c) => Domain(f(r), c.map_roles(f)),
            Range(r, c) => Range(f(r), c.map_roles(f)),
            DisjointClasses(c, d) => DisjointClasses(c.map_roles(f), d.map_roles(f)),
        }
    }
}

/// Which locality notion a check or an extraction uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LocalityFlavor {
    /// Syntactic ⊥-locality.
    SynBot,
    /// Syntactic ⊤-locality.
    SynTop,
    /// Semantic ∅-locality.
    SemBot,
    /// Semantic Δ-locality.
    SemTop,
}

impl LocalityFlavor {
    pub fn is_syntactic(self) -> bool {
        matches!(self, LocalityFlavor::SynBot | LocalityFlavor::SynTop)
    }

    pub fn is_bottom(self) -> bool {
        matches!(self, LocalityFlavor::SynBot | LocalityFlavor::SemBot)
    }

    pub const ALL: [LocalityFlavor; 4] = [
        LocalityFlavor::SynBot,
        LocalityFlavor::SynTop,
        LocalityFlavor::SemBot,
        LocalityFlavor::SemTop,
    ];
}

/// Anything that has a signature.
pub trait HasSignature {
    fn collect_signature(&self, sig: &mut Signature);
}

pub fn signature_of<T: HasSignature + ?Sized>(x: &T) -> Signature {
    let mut sig = Signature::new();
    x.collect_signature(&mut sig);
    sig
}

impl HasSignature for RoleExpr {
    fn collect_signature(&self, sig: &mut Signature) {
        if let Some(n) = self.role_name() {
            if !sig.roles.contains(n) {
                sig.roles.insert(n.clone());
            }
        }
    }
}

impl HasSignature for ConceptExpr {
    fn collect_signature(&self, sig: &mut Signature) {
        match self {
            ConceptExpr::Top | ConceptExpr::Bottom => {}
            ConceptExpr::Name(n) => {
                if !sig.concepts.contains(n) {
                    sig.concepts.insert(n.clone());
                }
            }
            ConceptExpr::OneOf(n) => {
                if !sig.individuals.contains(n) {
                    sig.individuals.insert(n.clone());
                }
            }
            ConceptExpr::Not(c) => c.collect_signature(sig),
            ConceptExpr::And(cs) | ConceptExpr::Or(cs) => {
                for c in cs {
                    c.collect_signature(sig);
                }
            }
            ConceptExpr::Exists(r, c)
            | ConceptExpr::ForAll(r, c)
            | ConceptExpr::AtLeast(_, r, c)
            | ConceptExpr::AtMost(_, r, c) => {
                r.collect_signature(sig);
                c.collect_signature(sig);
            }
        }
    }
}

impl HasSignature for Axiom {
    fn collect_signature(&self, sig: &mut Signature) {
        match self {
            Axiom::SubClassOf(c, d)
            | Axiom::EquivalentClasses(c, d)
            | Axiom::DisjointClasses(c, d) => {
                c.collect_signature(sig);
                d.collect_signature(sig);
            }
            Axiom::SubRoleOf(r, s) | Axiom::EquivalentRoles(r, s) | Axiom::InverseRoles(r, s) => {
                r.collect_signature(sig);
                s.collect_signature(sig);
            }
            Axiom::Transitive(r) => r.collect_signature(sig),
            Axiom::Domain(r, c) | Axiom::Range(r, c) => {
                r.collect_signature(sig);
                c.collect_signature(sig);
            }
        }
    }
}

impl HasSignature for [Axiom] {
    fn collect_signature(&self, sig: &mut Signature) {
        for a in self {
            a.collect_signature(sig);
        }
    }
}
