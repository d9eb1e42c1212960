//! Brute-force finite-model semantics.
//!
//! This is the independent test oracle: a direct evaluator for concepts and
//! axioms over explicit finite interpretations, plus an exhaustive
//! countermodel search over small domains. It shares no code with the tableau
//! reasoner.

use std::collections::{BTreeMap, BTreeSet};

use smallvec::{smallvec, SmallVec};
use thiserror::Error;

use crate::model::{signature_of, Axiom, ConceptExpr, Name, RoleExpr, Signature};
use crate::semantic::{substitute, SemanticFlavor};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("concept name `{0}` is not interpreted")]
    MissingConcept(Name),
    #[error("role name `{0}` is not interpreted")]
    MissingRole(Name),
    #[error("individual `{0}` is not interpreted")]
    MissingIndividual(Name),
    #[error("element {0} is outside the domain")]
    OutOfDomain(usize),
}

/// A finite interpretation over the domain `0..domain_size`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Interpretation {
    pub domain_size: usize,
    pub concept_ext: BTreeMap<Name, BTreeSet<usize>>,
    pub role_ext: BTreeMap<Name, BTreeSet<(usize, usize)>>,
    pub individual_ext: BTreeMap<Name, usize>,
}

impl Interpretation {
    /// An interpretation with every name of `sig` mapped to the empty set
    /// (individuals to element 0).
    pub fn empty_over(sig: &Signature, domain_size: usize) -> Self {
        Interpretation {
            domain_size,
            concept_ext: sig.concepts.iter().map(|n| (n.clone(), BTreeSet::new())).collect(),
            role_ext: sig.roles.iter().map(|n| (n.clone(), BTreeSet::new())).collect(),
            individual_ext: sig.individuals.iter().map(|n| (n.clone(), 0)).collect(),
        }
    }
}

type Bits = SmallVec<[u64; 1]>;

fn words(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

fn empty_bits(n: usize) -> Bits {
    smallvec![0; words(n)]
}

fn full_bits(n: usize) -> Bits {
    let mut b = empty_bits(n);
    for i in 0..n {
        set(&mut b, i);
    }
    b
}

fn set(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

fn get(b: &Bits, i: usize) -> bool {
    b[i / 64] & (1 << (i % 64)) != 0
}

fn count_and(a: &Bits, b: &Bits) -> u32 {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum()
}

fn is_subset(a: &Bits, b: &Bits) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// Dense form of an interpretation, indexed by name.
struct Dense<'a> {
    n: usize,
    all: Bits,
    concepts: BTreeMap<&'a str, Bits>,
    /// Successor sets per role name, and predecessor sets for inverses.
    succ: BTreeMap<&'a str, Vec<Bits>>,
    pred: BTreeMap<&'a str, Vec<Bits>>,
    individuals: BTreeMap<&'a str, usize>,
}

impl<'a> Dense<'a> {
    fn from_interpretation(i: &'a Interpretation) -> Result<Self, OracleError> {
        let n = i.domain_size;
        let mut concepts = BTreeMap::new();
        for (name, ext) in &i.concept_ext {
            let mut b = empty_bits(n);
            for &e in ext {
                if e >= n {
                    return Err(OracleError::OutOfDomain(e));
                }
                set(&mut b, e);
            }
            concepts.insert(name.as_str(), b);
        }
        let mut succ = BTreeMap::new();
        let mut pred = BTreeMap::new();
        for (name, pairs) in &i.role_ext {
            let mut s = vec![empty_bits(n); n];
            let mut p = vec![empty_bits(n); n];
            for &(x, y) in pairs {
                if x >= n || y >= n {
                    return Err(OracleError::OutOfDomain(x.max(y)));
                }
                set(&mut s[x], y);
                set(&mut p[y], x);
            }
            succ.insert(name.as_str(), s);
            pred.insert(name.as_str(), p);
        }
        let mut individuals = BTreeMap::new();
        for (name, &e) in &i.individual_ext {
            if e >= n {
                return Err(OracleError::OutOfDomain(e));
            }
            individuals.insert(name.as_str(), e);
        }
        Ok(Dense {
            n,
            all: full_bits(n),
            concepts,
            succ,
            pred,
            individuals,
        })
    }

    /// Successor set of `x` under `r`.
    fn successors(&self, r: &RoleExpr, x: usize) -> Result<Bits, OracleError> {
        match r {
            RoleExpr::Empty => Ok(empty_bits(self.n)),
            RoleExpr::Universal => Ok(self.all.clone()),
            RoleExpr::Name(p) => self
                .succ
                .get(p.as_str())
                .map(|s| s[x].clone())
                .ok_or_else(|| OracleError::MissingRole(p.clone())),
            RoleExpr::Inverse(inner) => match &**inner {
                RoleExpr::Name(p) => self
                    .pred
                    .get(p.as_str())
                    .map(|s| s[x].clone())
                    .ok_or_else(|| OracleError::MissingRole(p.clone())),
                RoleExpr::Inverse(r2) => self.successors(r2, x),
                other => self.successors(other, x),
            },
        }
    }

    fn eval(&self, c: &ConceptExpr) -> Result<Bits, OracleError> {
        let n = self.n;
        Ok(match c {
            ConceptExpr::Top => self.all.clone(),
            ConceptExpr::Bottom => empty_bits(n),
            ConceptExpr::Name(a) => self
                .concepts
                .get(a.as_str())
                .cloned()
                .ok_or_else(|| OracleError::MissingConcept(a.clone()))?,
            ConceptExpr::OneOf(a) => {
                let e = *self
                    .individuals
                    .get(a.as_str())
                    .ok_or_else(|| OracleError::MissingIndividual(a.clone()))?;
                let mut b = empty_bits(n);
                set(&mut b, e);
                b
            }
            ConceptExpr::Not(d) => {
                let mut b = self.eval(d)?;
                for (w, a) in b.iter_mut().zip(&self.all) {
                    *w = !*w & a;
                }
                b
            }
            ConceptExpr::And(cs) => {
                let mut b = self.all.clone();
                for d in cs {
                    let e = self.eval(d)?;
                    for (w, x) in b.iter_mut().zip(&e) {
                        *w &= x;
                    }
                }
                b
            }
            ConceptExpr::Or(cs) => {
                let mut b = empty_bits(n);
                for d in cs {
                    let e = self.eval(d)?;
                    for (w, x) in b.iter_mut().zip(&e) {
                        *w |= x;
                    }
                }
                b
            }
            ConceptExpr::Exists(r, d) => self.count_filter(r, d, |k| k >= 1)?,
            ConceptExpr::AtLeast(m, r, d) => self.count_filter(r, d, |k| k >= *m)?,
            ConceptExpr::AtMost(m, r, d) => self.count_filter(r, d, |k| k <= *m)?,
            ConceptExpr::ForAll(r, d) => {
                let target = self.eval(d)?;
                let mut b = empty_bits(n);
                for x in 0..n {
                    if is_subset(&self.successors(r, x)?, &target) {
                        set(&mut b, x);
                    }
                }
                b
            }
        })
    }

    fn count_filter(
        &self,
        r: &RoleExpr,
        d: &ConceptExpr,
        keep: impl Fn(u32) -> bool,
    ) -> Result<Bits, OracleError> {
        let target = self.eval(d)?;
        let mut b = empty_bits(self.n);
        for x in 0..self.n {
            if keep(count_and(&self.successors(r, x)?, &target)) {
                set(&mut b, x);
            }
        }
        Ok(b)
    }

    fn role_pairs_all(
        &self,
        r: &RoleExpr,
        s: &RoleExpr,
        rel: impl Fn(&Bits, &Bits) -> bool,
    ) -> Result<bool, OracleError> {
        for x in 0..self.n {
            if !rel(&self.successors(r, x)?, &self.successors(s, x)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn holds(&self, a: &Axiom) -> Result<bool, OracleError> {
        match a {
            Axiom::SubClassOf(c, d) => Ok(is_subset(&self.eval(c)?, &self.eval(d)?)),
            Axiom::EquivalentClasses(c, d) => Ok(self.eval(c)? == self.eval(d)?),
            Axiom::DisjointClasses(c, d) => Ok(count_and(&self.eval(c)?, &self.eval(d)?) == 0),
            Axiom::SubRoleOf(r, s) => self.role_pairs_all(r, s, is_subset),
            Axiom::EquivalentRoles(r, s) => self.role_pairs_all(r, s, |x, y| x == y),
            Axiom::InverseRoles(r, s) => {
                let inv = RoleExpr::Inverse(Box::new(s.clone()));
                self.role_pairs_all(r, &inv, |x, y| x == y)
            }
            Axiom::Transitive(r) => {
                for x in 0..self.n {
                    let sx = self.successors(r, x)?;
                    for y in 0..self.n {
                        if get(&sx, y) && !is_subset(&self.successors(r, y)?, &sx) {
                            return Ok(false);
                        }
                    }
                }
                Ok(true)
            }
            Axiom::Domain(r, c) => {
                let ext = self.eval(c)?;
                for x in 0..self.n {
                    if count_and(&self.successors(r, x)?, &self.all) > 0 && !get(&ext, x) {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Axiom::Range(r, c) => {
                let ext = self.eval(c)?;
                for x in 0..self.n {
                    if !is_subset(&self.successors(r, x)?, &ext) {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }
}

fn to_set(b: &Bits, n: usize) -> BTreeSet<usize> {
    (0..n).filter(|&i| get(b, i)).collect()
}

/// The extension of `c` in `i`.
pub fn eval_concept(c: &ConceptExpr, i: &Interpretation) -> Result<BTreeSet<usize>, OracleError> {
    let d = Dense::from_interpretation(i)?;
    Ok(to_set(&d.eval(c)?, d.n))
}

/// Whether `i` satisfies `a`.
pub fn holds(a: &Axiom, i: &Interpretation) -> Result<bool, OracleError> {
    Dense::from_interpretation(i)?.holds(a)
}

/// Exhaustive search for an interpretation violating `a`, over domain sizes
/// `1..=max_domain`, in lexicographic order of the extensions.
///
/// The search is doubly exponential in the number of names of `a`; keep the
/// signature small.
pub fn find_countermodel(a: &Axiom, max_domain: usize) -> Option<Interpretation> {
    let sig = signature_of(a);
    let concepts: Vec<&Name> = sig.concepts.iter().collect();
    let roles: Vec<&Name> = sig.roles.iter().collect();
    let individuals: Vec<&Name> = sig.individuals.iter().collect();

    for n in 1..=max_domain {
        assert!(n * n < 64, "domain too large for enumeration");
        // One mixed-radix digit per name.
        let mut radix: Vec<u64> = Vec::new();
        radix.extend(concepts.iter().map(|_| 1u64 << n));
        radix.extend(roles.iter().map(|_| 1u64 << (n * n)));
        radix.extend(individuals.iter().map(|_| n as u64));
        let mut digits = vec![0u64; radix.len()];

        let mut dense = Dense {
            n,
            all: full_bits(n),
            concepts: BTreeMap::new(),
            succ: BTreeMap::new(),
            pred: BTreeMap::new(),
            individuals: BTreeMap::new(),
        };
        loop {
            load_digits(&mut dense, &digits, &concepts, &roles, &individuals);
            if let Ok(false) = dense.holds(a) {
                return Some(to_interpretation(&dense, &concepts, &roles, &individuals));
            }
            // Increment the counter; the last name varies fastest.
            let mut k = digits.len();
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                digits[k] += 1;
                if digits[k] < radix[k] {
                    break;
                }
                digits[k] = 0;
                if k == 0 {
                    k = usize::MAX;
                    break;
                }
            }
            if k == usize::MAX || digits.is_empty() {
                break;
            }
        }
    }
    None
}

fn load_digits<'a>(
    dense: &mut Dense<'a>,
    digits: &[u64],
    concepts: &[&'a Name],
    roles: &[&'a Name],
    individuals: &[&'a Name],
) {
    let n = dense.n;
    let mut it = digits.iter();
    for c in concepts {
        let d = *it.next().unwrap();
        dense.concepts.insert(c.as_str(), smallvec![d]);
    }
    let row = (1u64 << n) - 1;
    for r in roles {
        let d = *it.next().unwrap();
        let mut s = vec![empty_bits(n); n];
        let mut p = vec![empty_bits(n); n];
        for (x, sx) in s.iter_mut().enumerate() {
            sx[0] = (d >> (x * n)) & row;
            for (y, py) in p.iter_mut().enumerate() {
                if sx[0] & (1 << y) != 0 {
                    py[0] |= 1 << x;
                }
            }
        }
        dense.succ.insert(r.as_str(), s);
        dense.pred.insert(r.as_str(), p);
    }
    for i in individuals {
        let d = *it.next().unwrap();
        dense.individuals.insert(i.as_str(), d as usize);
    }
}

fn to_interpretation(dense: &Dense<'_>, concepts: &[&Name], roles: &[&Name], individuals: &[&Name]) -> Interpretation {
    let n = dense.n;
    let mut i = Interpretation {
        domain_size: n,
        ..Default::default()
    };
    for c in concepts {
        i.concept_ext.insert((*c).clone(), to_set(&dense.concepts[c.as_str()], n));
    }
    for r in roles {
        let succ = &dense.succ[r.as_str()];
        let pairs = (0..n)
            .flat_map(|x| (0..n).filter(move |&y| get(&succ[x], y)).map(move |y| (x, y)))
            .collect();
        i.role_ext.insert((*r).clone(), pairs);
    }
    for ind in individuals {
        i.individual_ext.insert((*ind).clone(), dense.individuals[ind.as_str()]);
    }
    i
}

/// Outcome of the brute-force locality check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refutation {
    /// A finite interpretation violating the substituted axiom.
    Refuted(Interpretation),
    NotRefuted,
}

impl Refutation {
    pub fn is_refuted(&self) -> bool {
        matches!(self, Refutation::Refuted(_))
    }
}

/// Refutation-only semantic locality: search for a countermodel of the
/// substituted axiom.
pub fn brute_force_local(a: &Axiom, sig: &Signature, flavor: SemanticFlavor, max_domain: usize) -> Refutation {
    match find_countermodel(&substitute(a, sig, flavor), max_domain) {
        Some(i) => Refutation::Refuted(i),
        None => Refutation::NotRefuted,
    }
}
