//! Syntactic ⊥- and ⊤-locality.
//!
//! A concept is classified against the `Bot(Σ)` / `Top(Σ)` grammars of the
//! chosen flavor. Beyond the SHQ productions the grammars cover `⊔`, `∀` and
//! `≤`:
//!
//! | flavor | extra `Bot(Σ)` | extra `Top(Σ)` |
//! |--------|----------------|----------------|
//! | ⊥ | `C^⊥ ⊔ C^⊥` | `C ⊔ C^⊤`, `∀R.C^⊤`, `∀R^⊥.C`, `≤n R^⊥.C`, `≤n R.C^⊥` |
//! | ⊤ | `C^⊥ ⊔ C^⊥` | `C ⊔ C^⊤`, `∀R.C^⊤`, `∀R^⊤.C^⊤`, `≤n R.C^⊥` |
//!
//! For the ⊤ flavor, `≥n R^⊤.C^⊤` is only in `Top(Σ)` for `n = 1`: on a
//! one-element domain `≥2 R.⊤` is empty even when `R` is the universal role.

use crate::model::{normalize_axiom, normalize_role, Axiom, ConceptExpr, RoleExpr, Signature};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SyntacticClass {
    InBot,
    InTop,
    Neither,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SyntacticFlavor {
    Bot,
    Top,
}

impl SyntacticClass {
    fn negate(self) -> Self {
        match self {
            SyntacticClass::InBot => SyntacticClass::InTop,
            SyntacticClass::InTop => SyntacticClass::InBot,
            SyntacticClass::Neither => SyntacticClass::Neither,
        }
    }
}

/// A role whose name lies outside Σ. Inverses are transparent.
fn role_outside(r: &RoleExpr, sig: &Signature, flavor: SyntacticFlavor) -> bool {
    match r {
        RoleExpr::Empty => flavor == SyntacticFlavor::Bot,
        RoleExpr::Universal => flavor == SyntacticFlavor::Top,
        _ => r.role_name().is_some_and(|n| !sig.roles.contains(n)),
    }
}

pub fn classify_concept(c: &ConceptExpr, sig: &Signature, flavor: SyntacticFlavor) -> SyntacticClass {
    match flavor {
        SyntacticFlavor::Bot => classify_bot(c, sig),
        SyntacticFlavor::Top => classify_top(c, sig),
    }
}

fn and_class(cs: &[ConceptExpr], f: &impl Fn(&ConceptExpr) -> SyntacticClass) -> SyntacticClass {
    let classes: Vec<_> = cs.iter().map(f).collect();
    if classes.contains(&SyntacticClass::InBot) {
        SyntacticClass::InBot
    } else if classes.iter().all(|c| *c == SyntacticClass::InTop) {
        SyntacticClass::InTop
    } else {
        SyntacticClass::Neither
    }
}

fn or_class(cs: &[ConceptExpr], f: &impl Fn(&ConceptExpr) -> SyntacticClass) -> SyntacticClass {
    let classes: Vec<_> = cs.iter().map(f).collect();
    if classes.contains(&SyntacticClass::InTop) {
        SyntacticClass::InTop
    } else if classes.iter().all(|c| *c == SyntacticClass::InBot) {
        SyntacticClass::InBot
    } else {
        SyntacticClass::Neither
    }
}

fn classify_bot(c: &ConceptExpr, sig: &Signature) -> SyntacticClass {
    use SyntacticClass::*;
    let rec = |d: &ConceptExpr| classify_bot(d, sig);
    let outside = |r: &RoleExpr| role_outside(r, sig, SyntacticFlavor::Bot);
    match c {
        ConceptExpr::Top => InTop,
        ConceptExpr::Bottom => InBot,
        ConceptExpr::Name(n) => {
            if sig.concepts.contains(n) {
                Neither
            } else {
                InBot
            }
        }
        ConceptExpr::OneOf(_) => Neither,
        ConceptExpr::Not(d) => rec(d).negate(),
        ConceptExpr::And(cs) => and_class(cs, &rec),
        ConceptExpr::Or(cs) => or_class(cs, &rec),
        ConceptExpr::Exists(r, d) => {
            if outside(r) || rec(d) == InBot {
                InBot
            } else {
                Neither
            }
        }
        ConceptExpr::AtLeast(0, _, _) => InTop,
        ConceptExpr::AtLeast(_, r, d) => {
            if outside(r) || rec(d) == InBot {
                InBot
            } else {
                Neither
            }
        }
        ConceptExpr::ForAll(r, d) => {
            if outside(r) || rec(d) == InTop {
                InTop
            } else {
                Neither
            }
        }
        ConceptExpr::AtMost(_, r, d) => {
            if outside(r) || rec(d) == InBot {
                InTop
            } else {
                Neither
            }
        }
    }
}

fn classify_top(c: &ConceptExpr, sig: &Signature) -> SyntacticClass {
    use SyntacticClass::*;
    let rec = |d: &ConceptExpr| classify_top(d, sig);
    let outside = |r: &RoleExpr| role_outside(r, sig, SyntacticFlavor::Top);
    match c {
        ConceptExpr::Top => InTop,
        ConceptExpr::Bottom => InBot,
        ConceptExpr::Name(n) => {
            if sig.concepts.contains(n) {
                Neither
            } else {
                InTop
            }
        }
        ConceptExpr::OneOf(_) => Neither,
        ConceptExpr::Not(d) => rec(d).negate(),
        ConceptExpr::And(cs) => and_class(cs, &rec),
        ConceptExpr::Or(cs) => or_class(cs, &rec),
        ConceptExpr::Exists(r, d) => match rec(d) {
            InBot => InBot,
            InTop if outside(r) => InTop,
            _ => Neither,
        },
        ConceptExpr::AtLeast(0, _, _) => InTop,
        ConceptExpr::AtLeast(n, r, d) => match rec(d) {
            InBot => InBot,
            InTop if *n == 1 && outside(r) => InTop,
            _ => Neither,
        },
        ConceptExpr::ForAll(_, d) => {
            if rec(d) == InTop {
                InTop
            } else {
                Neither
            }
        }
        ConceptExpr::AtMost(_, _, d) => {
            if rec(d) == InBot {
                InTop
            } else {
                Neither
            }
        }
    }
}

/// Decide syntactic locality of `a` w.r.t. `sig`.
///
/// With `refined` set, `InverseRoles(r, s)` is also local whenever `s` is the
/// inverse of `r`, which makes the axiom a tautology.
pub fn is_syntactically_local(a: &Axiom, sig: &Signature, flavor: SyntacticFlavor, refined: bool) -> bool {
    use SyntacticClass::*;
    let class = |c: &ConceptExpr| classify_concept(c, sig, flavor);
    let outside = |r: &RoleExpr| role_outside(r, sig, flavor);
    match a {
        Axiom::SubClassOf(c, d) => class(c) == InBot || class(d) == InTop,
        Axiom::EquivalentClasses(c, d) => {
            let (x, y) = (class(c), class(d));
            (x == InBot && y == InBot) || (x == InTop && y == InTop)
        }
        Axiom::SubRoleOf(r, s) => match flavor {
            SyntacticFlavor::Bot => outside(r),
            SyntacticFlavor::Top => outside(s),
        },
        Axiom::EquivalentRoles(r, s) => outside(r) && outside(s),
        Axiom::InverseRoles(r, s) => {
            (outside(r) && outside(s))
                || (refined && normalize_role(&r.inverse()) == normalize_role(s))
        }
        Axiom::Transitive(r) => outside(r),
        Axiom::Domain(..) | Axiom::Range(..) | Axiom::DisjointClasses(..) => normalize_axiom(a)
            .iter()
            .all(|n| is_syntactically_local(n, sig, flavor, refined)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use SyntacticClass::*;
    use SyntacticFlavor::*;

    fn name(n: &str) -> ConceptExpr {
        ConceptExpr::named(n)
    }
    fn role(n: &str) -> RoleExpr {
        RoleExpr::named(n)
    }

    pub(crate) fn koala_rhs() -> ConceptExpr {
        ConceptExpr::And(vec![
            name("S"),
            ConceptExpr::forall(role("c"), name("F")),
            ConceptExpr::forall(role("g"), ConceptExpr::nominal("m")),
            ConceptExpr::exactly(3, role("c"), ConceptExpr::Top),
        ])
    }

    #[test]
    fn grammar_examples() {
        let sig = Signature::of(&["B"], &["R"]);
        assert_eq!(classify_concept(&name("A"), &sig, Bot), InBot);
        assert_eq!(
            classify_concept(&ConceptExpr::at_least(0, role("R"), name("B")), &sig, Bot),
            InTop
        );
        let koala_sig = Signature::of(&["S"], &["c", "g"]);
        assert_eq!(classify_concept(&koala_rhs(), &koala_sig, Bot), Neither);
    }

    #[test]
    fn constants_classify_under_both_flavors() {
        for sig in [Signature::new(), Signature::of(&["A"], &["R"])] {
            for f in [Bot, Top] {
                assert_eq!(classify_concept(&ConceptExpr::Bottom, &sig, f), InBot);
                assert_eq!(classify_concept(&ConceptExpr::Top, &sig, f), InTop);
            }
        }
    }

    #[test]
    fn nominals_are_never_local() {
        let sig = Signature::new();
        for f in [Bot, Top] {
            assert_eq!(classify_concept(&ConceptExpr::nominal("a"), &sig, f), Neither);
        }
    }

    #[test]
    fn top_flavor_counts_only_to_one() {
        let sig = Signature::new();
        let r = role("R");
        assert_eq!(
            classify_concept(&ConceptExpr::at_least(1, r.clone(), name("A")), &sig, Top),
            InTop
        );
        assert_eq!(
            classify_concept(&ConceptExpr::at_least(2, r, name("A")), &sig, Top),
            Neither
        );
    }

    #[test]
    fn equivalence_outside_signature() {
        let ax = Axiom::EquivalentClasses(name("A"), name("B"));
        let sig = Signature::of(&["A"], &[]);
        assert!(!is_syntactically_local(&ax, &sig, Bot, false));
        assert!(!is_syntactically_local(&ax, &sig, Top, false));
        assert!(is_syntactically_local(&ax, &Signature::new(), Bot, false));
    }

    #[test]
    fn inverse_tautology_truth_table() {
        let p = role("P");
        let ax = Axiom::InverseRoles(p.clone(), p.inverse());
        let with_p = Signature::of(&[], &["P"]);
        assert!(!is_syntactically_local(&ax, &with_p, Bot, false));
        assert!(is_syntactically_local(&ax, &with_p, Bot, true));
        assert!(is_syntactically_local(&ax, &Signature::new(), Bot, false));
        assert!(is_syntactically_local(&ax, &Signature::new(), Bot, true));
    }

    #[test]
    fn role_axiom_forms() {
        let sig = Signature::of(&[], &["S"]);
        let sub = Axiom::SubRoleOf(role("R"), role("S"));
        assert!(is_syntactically_local(&sub, &sig, Bot, false));
        assert!(!is_syntactically_local(&sub, &sig, Top, false));
        let sup = Axiom::SubRoleOf(role("S"), role("R"));
        assert!(!is_syntactically_local(&sup, &sig, Bot, false));
        assert!(is_syntactically_local(&sup, &sig, Top, false));
        assert!(!is_syntactically_local(&Axiom::Transitive(role("S")), &sig, Bot, false));
        assert!(is_syntactically_local(&Axiom::Transitive(role("R")), &sig, Top, false));
        let eq = Axiom::EquivalentRoles(role("R"), role("T"));
        assert!(is_syntactically_local(&eq, &sig, Bot, false));
        assert!(!is_syntactically_local(&Axiom::EquivalentRoles(role("R"), role("S")), &sig, Top, false));
    }

    #[test]
    fn duck_axioms_are_bottom_local() {
        let sig = Signature::of(&["Bird"], &[]);
        let a1 = Axiom::SubClassOf(name("Duck"), ConceptExpr::exists(role("eats"), name("Grass")));
        let a2 = Axiom::SubClassOf(name("Duck"), name("Bird"));
        assert!(is_syntactically_local(&a1, &sig, Bot, false));
        assert!(is_syntactically_local(&a2, &sig, Bot, false));
    }

    proptest! {
        #[test]
        fn never_both_bot_and_top(c in crate::arb::concept(3), sig in crate::arb::signature()) {
            for f in [Bot, Top] {
                let bot = matches!(classify_concept(&c, &sig, f), InBot);
                let top = matches!(classify_concept(&c, &sig, f), InTop);
                prop_assert!(!(bot && top));
                // The negation flips the class.
                let neg = classify_concept(&ConceptExpr::not(c.clone()), &sig, f);
                prop_assert_eq!(neg, classify_concept(&c, &sig, f).negate());
            }
        }

        #[test]
        fn refinement_only_touches_inverse_tautologies(a in crate::arb::axiom(2), sig in crate::arb::signature()) {
            for f in [Bot, Top] {
                let off = is_syntactically_local(&a, &sig, f, false);
                let on = is_syntactically_local(&a, &sig, f, true);
                if off != on {
                    match &a {
                        Axiom::InverseRoles(r, s) => prop_assert_eq!(normalize_role(&r.inverse()), normalize_role(s)),
                        _ => prop_assert!(false, "refined mode changed {}", a),
                    }
                }
            }
        }
    }
}
