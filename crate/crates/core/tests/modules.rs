mod common;

use std::collections::BTreeSet;

use locmod::{
    extract, extract_module, extract_nested, genuine_modules, is_syntactically_local, run_comparison,
    sample_signatures, verify_module, Axiom, ConceptExpr, CulpritType, ExtractOptions, LocalityFlavor, ModuleKind,
    Ontology, SamplingConfig, Signature, SyntacticFlavor, TestMode,
};
use LocalityFlavor::*;

fn opts() -> ExtractOptions {
    ExtractOptions::default()
}

fn samples(o: &Ontology, n: usize) -> Vec<Signature> {
    sample_signatures(o, &SamplingConfig { sample_count: n, rng_seed: 11, ..Default::default() })
}

#[test]
fn modules_pass_an_independent_locality_check() {
    for o in common::fixtures() {
        for sig in samples(&o, 40) {
            for f in LocalityFlavor::ALL {
                let m = extract_module(&o, &sig, f, &opts());
                assert!(verify_module(&o, &m, f, &opts()).is_empty(), "{} {f:?}", o.name());
                assert!(sig.union(&locmod::signature_of(&m.module)) == m.extended_signature);
            }
        }
    }
}

#[test]
fn full_signature_keeps_every_nonlocal_axiom() {
    for o in common::fixtures() {
        let sig = o.signature();
        let m = extract_module(&o, &sig, SynBot, &opts());
        let expected: Vec<usize> = (0..o.len())
            .filter(|&i| !is_syntactically_local(&o.axioms()[i], &sig, SyntacticFlavor::Bot, false))
            .collect();
        assert_eq!(m.axiom_ids, expected, "{}", o.name());
        assert!(m.module.len() + 2 >= o.len(), "{}: {} of {}", o.name(), m.module.len(), o.len());
    }
}

#[test]
fn nested_is_inside_the_inner_module() {
    for o in common::fixtures() {
        for sig in samples(&o, 30) {
            for (y, z) in [(SynTop, SynBot), (SynBot, SynTop), (SemTop, SemBot)] {
                let inner = extract_module(&o, &sig, z, &opts());
                let nested = extract_nested(&o, &sig, (y, z), &opts());
                assert!(nested.axiom_ids.iter().all(|i| inner.axiom_ids.contains(i)));
            }
        }
    }
}

#[test]
fn identical_signatures_give_one_genuine_module() {
    let a = ConceptExpr::named("A");
    let b = ConceptExpr::named("B");
    let o = Ontology::new(
        "twins",
        [
            Axiom::SubClassOf(a.clone(), b.clone()),
            Axiom::SubClassOf(b.clone(), ConceptExpr::Or(vec![a.clone(), b.clone()])),
            Axiom::SubClassOf(ConceptExpr::named("C"), a),
        ],
    );
    let g = genuine_modules(&o, ModuleKind::Single(SynBot), &opts());
    let ids: Vec<&Vec<usize>> = g.iter().map(|(_, m)| &m.axiom_ids).collect();
    // The first two axioms share the signature {A, B} and the module.
    assert_eq!(ids, vec![&vec![0, 1], &vec![0, 1, 2]]);
    assert_eq!(g[0].0, o.axioms()[0]);
}

#[test]
fn koala_difference_does_not_reach_modules() {
    let o = common::fixture("koala");
    let t1a = run_comparison(&o, TestMode::T1a, &SamplingConfig::default(), &opts()).unwrap();
    assert!(!t1a.records.is_empty());
    for r in &t1a.records {
        assert_eq!(r.culprits.len(), 1);
        assert_eq!(r.culprits[0].1, CulpritType::Type2);
        assert!(r.seed_signature.has_concept("Student"));
        assert!(!r.seed_signature.has_concept("MaleStudentWith3Daughters"));
    }
    for test in [TestMode::T1b, TestMode::T2] {
        let cmp = run_comparison(&o, test, &SamplingConfig::default(), &opts()).unwrap();
        assert!(cmp.records.is_empty(), "{test}");
    }
}

#[test]
fn culprit_free_fixtures_have_no_records() {
    for name in ["animals", "molecules", "univ"] {
        let o = common::fixture(name);
        for test in TestMode::ALL {
            let cmp = run_comparison(&o, test, &SamplingConfig::default(), &opts()).unwrap();
            assert!(cmp.records.is_empty(), "{name} {test}");
        }
    }
}

#[test]
fn family_type1_records() {
    let o = common::fixture("family");
    let cmp = run_comparison(&o, TestMode::T1a, &SamplingConfig::default(), &opts()).unwrap();
    let type1: BTreeSet<usize> = (0..o.len())
        .filter(|&i| locmod::harness::classify_culprit(&o.axioms()[i]) == CulpritType::Type1)
        .collect();
    assert_eq!(type1.len(), 2);
    for r in &cmp.records {
        for (id, kind) in &r.culprits {
            assert!(type1.contains(id));
            assert_eq!(*kind, CulpritType::Type1);
        }
    }
    // Every sample containing a self-inverse role shows that axiom.
    let sigs = sample_signatures(&o, &SamplingConfig::default());
    for (case, sig) in sigs.iter().enumerate() {
        let expected: Vec<usize> = type1
            .iter()
            .copied()
            .filter(|&i| locmod::signature_of(&o.axioms()[i]).roles.is_subset(&sig.roles))
            .collect();
        let got = cmp
            .records
            .iter()
            .find(|r| r.case_id == case)
            .map(|r| r.difference_axioms.clone())
            .unwrap_or_default();
        assert_eq!(got, expected, "case {case}");
    }
}

#[test]
fn star_kinds_dispatch() {
    let o = common::fixture("univ");
    let sig = Signature::of(&["Professor"], &["teaches"]);
    let syn = extract(&o, &sig, ModuleKind::star(false), &opts());
    let sem = extract(&o, &sig, ModuleKind::star(true), &opts());
    assert_eq!(syn.kind.to_string(), "(top/bot)*");
    assert_eq!(sem.kind.to_string(), "(sem-top/sem-bot)*");
    assert_eq!(syn.chain.first(), Some(&o.len()));
    assert_eq!(sem.chain.last(), Some(&sem.module.len()));
}
