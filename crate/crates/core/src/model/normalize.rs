use super::expr::{normalize_role, Axiom, ConceptExpr, RoleExpr};

/// Negation normal form: negation is pushed down to names and nominals.
pub fn nnf(c: &ConceptExpr) -> ConceptExpr {
    use ConceptExpr::*;
    match c {
        Top | Bottom | Name(_) | OneOf(_) => c.clone(),
        Not(inner) => negate(inner),
        And(cs) => And(cs.iter().map(nnf).collect()),
        Or(cs) => Or(cs.iter().map(nnf).collect()),
        Exists(r, d) => Exists(r.clone(), Box::new(nnf(d))),
        ForAll(r, d) => ForAll(r.clone(), Box::new(nnf(d))),
        AtLeast(n, r, d) => AtLeast(*n, r.clone(), Box::new(nnf(d))),
        AtMost(n, r, d) => AtMost(*n, r.clone(), Box::new(nnf(d))),
    }
}

/// NNF of `¬c`.
pub fn negate(c: &ConceptExpr) -> ConceptExpr {
    use ConceptExpr::*;
    match c {
        Top => Bottom,
        Bottom => Top,
        Name(_) | OneOf(_) => Not(Box::new(c.clone())),
        Not(inner) => nnf(inner),
        And(cs) => Or(cs.iter().map(negate).collect()),
        Or(cs) => And(cs.iter().map(negate).collect()),
        Exists(r, d) => ForAll(r.clone(), Box::new(negate(d))),
        ForAll(r, d) => Exists(r.clone(), Box::new(negate(d))),
        // ¬(≥0 R.C) is unsatisfiable; the conjunct keeps R and C in the signature.
        AtLeast(0, r, d) => And(vec![Bottom, AtLeast(0, r.clone(), Box::new(nnf(d)))]),
        AtLeast(n, r, d) => AtMost(n - 1, r.clone(), Box::new(nnf(d))),
        AtMost(n, r, d) => AtLeast(n + 1, r.clone(), Box::new(nnf(d))),
    }
}

/// Rewrite derived axiom forms into GCIs and collapse nested inverses.
///
/// Domain, range and disjointness become subsumptions; everything else passes
/// through with its roles normalized.
pub fn normalize_axiom(a: &Axiom) -> Vec<Axiom> {
    let a = a.map_roles(&normalize_role);
    match a {
        Axiom::Domain(r, c) => vec![Axiom::SubClassOf(
            ConceptExpr::exists(r, ConceptExpr::Top),
            c,
        )],
        Axiom::Range(r, c) => vec![Axiom::SubClassOf(
            ConceptExpr::Top,
            ConceptExpr::forall(r, c),
        )],
        Axiom::DisjointClasses(c, d) => vec![Axiom::SubClassOf(
            ConceptExpr::And(vec![c, d]),
            ConceptExpr::Bottom,
        )],
        other => vec![other],
    }
}

/// True if the two roles are inverses of each other after normalization.
pub fn are_inverse(r: &RoleExpr, s: &RoleExpr) -> bool {
    normalize_role(&r.inverse()) == normalize_role(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{signature_of, Signature};
    use proptest::prelude::*;

    fn a() -> ConceptExpr {
        ConceptExpr::named("A")
    }
    fn b() -> ConceptExpr {
        ConceptExpr::named("B")
    }
    fn r() -> RoleExpr {
        RoleExpr::named("R")
    }

    #[test]
    fn de_morgan() {
        let c = ConceptExpr::not(ConceptExpr::And(vec![a(), b()]));
        assert_eq!(
            nnf(&c),
            ConceptExpr::Or(vec![ConceptExpr::not(a()), ConceptExpr::not(b())])
        );
    }

    #[test]
    fn quantifier_duality() {
        let c = ConceptExpr::not(ConceptExpr::exists(r(), a()));
        assert_eq!(nnf(&c), ConceptExpr::forall(r(), ConceptExpr::not(a())));
    }

    #[test]
    fn counting_duality() {
        let c = ConceptExpr::not(ConceptExpr::at_least(3, r(), a()));
        assert_eq!(nnf(&c), ConceptExpr::at_most(2, r(), a()));
        let c = ConceptExpr::not(ConceptExpr::at_most(2, r(), a()));
        assert_eq!(nnf(&c), ConceptExpr::at_least(3, r(), a()));
    }

    #[test]
    fn role_normalization() {
        let p = RoleExpr::named("P");
        let inv_inv = RoleExpr::Inverse(Box::new(RoleExpr::Inverse(Box::new(p.clone()))));
        assert_eq!(normalize_role(&inv_inv), p);
        let inv = RoleExpr::Inverse(Box::new(p.clone()));
        assert_eq!(normalize_role(&inv), inv);
        assert_eq!(
            normalize_role(&RoleExpr::Inverse(Box::new(RoleExpr::Empty))),
            RoleExpr::Empty
        );
        assert_eq!(
            normalize_role(&RoleExpr::Inverse(Box::new(RoleExpr::Universal))),
            RoleExpr::Universal
        );
        assert!(are_inverse(&p, &p.inverse()));
    }

    #[test]
    fn derived_axioms_become_gcis() {
        let eats = RoleExpr::named("eats");
        assert_eq!(
            normalize_axiom(&Axiom::Domain(eats.clone(), ConceptExpr::named("Animal"))),
            vec![Axiom::SubClassOf(
                ConceptExpr::exists(eats.clone(), ConceptExpr::Top),
                ConceptExpr::named("Animal")
            )]
        );
        assert_eq!(
            normalize_axiom(&Axiom::Range(eats.clone(), ConceptExpr::named("Food"))),
            vec![Axiom::SubClassOf(
                ConceptExpr::Top,
                ConceptExpr::forall(eats, ConceptExpr::named("Food"))
            )]
        );
        assert_eq!(
            normalize_axiom(&Axiom::DisjointClasses(a(), b())),
            vec![Axiom::SubClassOf(
                ConceptExpr::And(vec![a(), b()]),
                ConceptExpr::Bottom
            )]
        );
        let eq = Axiom::EquivalentClasses(a(), b());
        assert_eq!(normalize_axiom(&eq), vec![eq]);
    }

    #[test]
    fn signature_examples() {
        let duck = Axiom::SubClassOf(
            ConceptExpr::named("Duck"),
            ConceptExpr::exists(RoleExpr::named("eats"), ConceptExpr::named("Grass")),
        );
        assert_eq!(signature_of(&duck), Signature::of(&["Duck", "Grass"], &["eats"]));
        let triv = Axiom::SubClassOf(ConceptExpr::Top, ConceptExpr::Top);
        assert!(signature_of(&triv).is_empty());
        let eq = Axiom::EquivalentClasses(a(), b());
        assert_eq!(signature_of(&eq), Signature::of(&["A", "B"], &[]));
        let consts = Axiom::SubRoleOf(RoleExpr::Empty, RoleExpr::Universal);
        assert!(signature_of(&consts).is_empty());
    }

    proptest! {
        #[test]
        fn nnf_is_idempotent(c in crate::arb::concept(3)) {
            let once = nnf(&c);
            prop_assert_eq!(nnf(&once), once);
        }

        #[test]
        fn nnf_preserves_signature(c in crate::arb::concept(3)) {
            prop_assert_eq!(signature_of(&nnf(&c)), signature_of(&c));
        }

        #[test]
        fn nnf_negations_only_on_atoms(c in crate::arb::concept(3)) {
            let mut ok = true;
            nnf(&c).visit(&mut |d| {
                if let ConceptExpr::Not(inner) = d {
                    ok &= matches!(**inner, ConceptExpr::Name(_) | ConceptExpr::OneOf(_));
                }
            });
            prop_assert!(ok);
        }

        #[test]
        fn normalize_role_is_idempotent(r in crate::arb::nested_role()) {
            let once = normalize_role(&r);
            prop_assert_eq!(normalize_role(&once), once);
        }

        #[test]
        fn normalize_axiom_preserves_signature(a in crate::arb::raw_axiom(2)) {
            let sig: Signature = signature_of(&a);
            prop_assert_eq!(signature_of(normalize_axiom(&a).as_slice()), sig);
        }
    }
}
