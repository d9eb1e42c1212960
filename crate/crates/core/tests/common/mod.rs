//! Fixture loading and seeded generators shared by the integration tests.

#![allow(dead_code)]

use std::path::PathBuf;

use locmod::{parse_ontology_with, Axiom, ConceptExpr, Name, Ontology, ParseOptions, RoleExpr, Signature};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixture_dir().join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Every positive fixture, sorted by file name.
pub fn fixtures() -> Vec<Ontology> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(fixture_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "ofs"))
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| {
            let text = std::fs::read_to_string(p).unwrap();
            let parsed = parse_ontology_with(&text, &ParseOptions { strict: true })
                .unwrap_or_else(|e| panic!("{}: {:?}", p.display(), e));
            if parsed.named {
                parsed.ontology
            } else {
                let stem = p.file_stem().unwrap().to_string_lossy().into_owned();
                Ontology::new(stem, parsed.ontology.axioms().to_vec())
            }
        })
        .collect()
}

pub fn fixture(stem: &str) -> Ontology {
    fixtures()
        .into_iter()
        .find(|o| o.name() == stem)
        .unwrap_or_else(|| panic!("no fixture {stem}"))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Name pools for random axioms.
#[derive(Clone, Debug)]
pub struct Pool {
    pub concepts: Vec<&'static str>,
    pub roles: Vec<&'static str>,
    pub individuals: Vec<&'static str>,
    /// Allow the universal and empty roles.
    pub constant_roles: bool,
}

impl Pool {
    pub fn names(&self) -> usize {
        self.concepts.len() + self.roles.len() + self.individuals.len()
    }
}

pub fn random_role(rng: &mut ChaCha8Rng, pool: &Pool) -> RoleExpr {
    if pool.constant_roles && rng.gen_ratio(1, 10) {
        return if rng.gen_bool(0.5) { RoleExpr::Universal } else { RoleExpr::Empty };
    }
    let r = RoleExpr::named(pool.roles.choose(rng).unwrap());
    if rng.gen_ratio(1, 3) {
        r.inverse()
    } else {
        r
    }
}

pub fn random_concept(rng: &mut ChaCha8Rng, pool: &Pool, depth: u32) -> ConceptExpr {
    let leaf = depth == 0 || rng.gen_ratio(1, 3);
    if leaf {
        return match rng.gen_range(0..10) {
            0 => ConceptExpr::Top,
            1 => ConceptExpr::Bottom,
            2 if !pool.individuals.is_empty() => ConceptExpr::nominal(pool.individuals.choose(rng).unwrap()),
            _ => ConceptExpr::named(pool.concepts.choose(rng).unwrap()),
        };
    }
    let sub = |rng: &mut ChaCha8Rng| random_concept(rng, pool, depth - 1);
    match rng.gen_range(0..8) {
        0 => ConceptExpr::not(sub(rng)),
        1 => ConceptExpr::And((0..rng.gen_range(2..=3)).map(|_| sub(rng)).collect()),
        2 => ConceptExpr::Or((0..rng.gen_range(2..=3)).map(|_| sub(rng)).collect()),
        3 => ConceptExpr::exists(random_role(rng, pool), sub(rng)),
        4 => ConceptExpr::forall(random_role(rng, pool), sub(rng)),
        5 => ConceptExpr::at_least(rng.gen_range(0..3), random_role(rng, pool), sub(rng)),
        6 => ConceptExpr::at_most(rng.gen_range(0..3), random_role(rng, pool), sub(rng)),
        _ => ConceptExpr::named(pool.concepts.choose(rng).unwrap()),
    }
}

/// A random axiom of any kind, derived forms included.
pub fn random_axiom(rng: &mut ChaCha8Rng, pool: &Pool, depth: u32) -> Axiom {
    let c = |rng: &mut ChaCha8Rng| random_concept(rng, pool, depth);
    match rng.gen_range(0..14) {
        0..=4 => Axiom::SubClassOf(c(rng), c(rng)),
        5..=7 => Axiom::EquivalentClasses(c(rng), c(rng)),
        8 => Axiom::SubRoleOf(random_role(rng, pool), random_role(rng, pool)),
        9 => Axiom::EquivalentRoles(random_role(rng, pool), random_role(rng, pool)),
        10 => Axiom::InverseRoles(random_role(rng, pool), random_role(rng, pool)),
        11 => Axiom::Transitive(random_role(rng, pool)),
        12 => Axiom::Domain(random_role(rng, pool), c(rng)),
        _ => Axiom::DisjointClasses(c(rng), c(rng)),
    }
}

/// Each concept and role name of the pool, kept with probability 1/2.
pub fn random_signature(rng: &mut ChaCha8Rng, pool: &Pool) -> Signature {
    let mut sig = Signature::new();
    for c in &pool.concepts {
        if rng.gen_bool(0.5) {
            sig.concepts.insert(Name::new(c));
        }
    }
    for r in &pool.roles {
        if rng.gen_bool(0.5) {
            sig.roles.insert(Name::new(r));
        }
    }
    sig
}

/// A large ontology shaped like a typical life-science taxonomy: a deep
/// class hierarchy with existential links, some definitions, disjointness,
/// property domains and ranges, and a small property hierarchy.
pub fn generated_ontology(axioms: usize, seed: u64) -> Ontology {
    let mut rng = rng(seed);
    let classes = axioms * 2 / 5;
    let roles = 60;
    let class = |i: usize| ConceptExpr::named(&format!("C{i}"));
    let role = |i: usize| RoleExpr::named(&format!("r{i}"));
    let mut out = Vec::with_capacity(axioms);
    for i in 1..roles {
        if rng.gen_ratio(1, 3) {
            out.push(Axiom::SubRoleOf(role(i), role(rng.gen_range(0..i))));
        }
    }
    let mut i = 1;
    // A few spare axioms make up for duplicates.
    while out.len() < axioms + axioms / 50 {
        let c = i % classes;
        let parent = rng.gen_range(c.saturating_sub(300)..c.max(1));
        // Links point at more general classes, as in real taxonomies.
        let other = rng.gen_range(0..(c / 8).max(1));
        let sibling = rng.gen_range(c.saturating_sub(20)..c.max(1));
        let r = role(rng.gen_range(0..roles));
        let a = match rng.gen_range(0..20) {
            0..=9 => Axiom::SubClassOf(class(c), class(parent)),
            10..=14 => Axiom::SubClassOf(class(c), ConceptExpr::exists(r, class(other))),
            15 | 16 => Axiom::EquivalentClasses(
                class(c),
                ConceptExpr::And(vec![class(parent), ConceptExpr::exists(r, class(sibling))]),
            ),
            17 => Axiom::DisjointClasses(class(c), class(sibling)),
            18 => Axiom::Domain(r, class(other)),
            _ => Axiom::SubClassOf(class(c), ConceptExpr::forall(r, class(other))),
        };
        out.push(a);
        i += 1;
    }
    let o = Ontology::new("generated", out);
    assert!(o.len() >= axioms, "too many duplicates: {}", o.len());
    o.subset("generated", &(0..axioms).collect::<Vec<_>>())
}

/// `n` distinct concept and role names of `o`, chosen at random.
pub fn random_seed(o: &Ontology, n: usize, seed: u64) -> Signature {
    let mut rng = rng(seed);
    let terms: Vec<_> = o.signature().terms().collect();
    terms.choose_multiple(&mut rng, n).cloned().collect()
}
