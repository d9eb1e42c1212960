//! Locality-based module extraction.
//!
//! `extract_module` computes the fixpoint of the classic loop: move every
//! axiom that is not local w.r.t. the seed signature plus the signature of the
//! module built so far into the module. Locality of an axiom only depends on
//! which of its own terms are in the signature, so an axiom found local is
//! parked until one of its terms joins the signature.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::model::{signature_of, Axiom, Entity, LocalityFlavor, Ontology, Signature};
use crate::semantic::{is_semantically_local, Budget, SemanticFlavor, Verdict};
use crate::syntactic::{is_syntactically_local, SyntacticFlavor};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExtractOptions {
    /// Treat `InverseRoles(r, inv(r))` as syntactically local.
    pub refined: bool,
    pub budget: Budget,
    /// Record one line per axiom pulled into the module.
    pub trace: bool,
}

/// A locality check of one flavor.
#[derive(Clone, Debug)]
pub struct Locality {
    pub flavor: LocalityFlavor,
    pub refined: bool,
    pub budget: Budget,
}

impl Locality {
    pub fn new(flavor: LocalityFlavor, opts: &ExtractOptions) -> Self {
        Locality {
            flavor,
            refined: opts.refined,
            budget: opts.budget,
        }
    }

    pub fn check(&self, a: &Axiom, sig: &Signature) -> Verdict {
        let syn = |f| {
            if is_syntactically_local(a, sig, f, self.refined) {
                Verdict::Local
            } else {
                Verdict::NonLocal
            }
        };
        match self.flavor {
            LocalityFlavor::SynBot => syn(SyntacticFlavor::Bot),
            LocalityFlavor::SynTop => syn(SyntacticFlavor::Top),
            LocalityFlavor::SemBot => is_semantically_local(a, sig, SemanticFlavor::Bot, &self.budget),
            LocalityFlavor::SemTop => is_semantically_local(a, sig, SemanticFlavor::Top, &self.budget),
        }
    }
}

/// What was extracted. For the pair forms, the first flavor is the outer
/// extraction: `Nested(y, z)` is `y-mod(Σ, z-mod(Σ, O))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModuleKind {
    Single(LocalityFlavor),
    Nested(LocalityFlavor, LocalityFlavor),
    Star(LocalityFlavor, LocalityFlavor),
}

impl ModuleKind {
    /// `⊤⊥*` (or its semantic counterpart).
    pub fn star(semantic: bool) -> Self {
        if semantic {
            ModuleKind::Star(LocalityFlavor::SemTop, LocalityFlavor::SemBot)
        } else {
            ModuleKind::Star(LocalityFlavor::SynTop, LocalityFlavor::SynBot)
        }
    }
}

fn flavor_name(f: LocalityFlavor) -> &'static str {
    match f {
        LocalityFlavor::SynBot => "bot",
        LocalityFlavor::SynTop => "top",
        LocalityFlavor::SemBot => "sem-bot",
        LocalityFlavor::SemTop => "sem-top",
    }
}

impl fmt::Display for ModuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ModuleKind::Single(x) => f.write_str(flavor_name(x)),
            ModuleKind::Nested(y, z) => write!(f, "{}/{}", flavor_name(y), flavor_name(z)),
            ModuleKind::Star(y, z) => write!(f, "({}/{})*", flavor_name(y), flavor_name(z)),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ModuleResult {
    pub module: Ontology,
    /// Positions of the module's axioms in the source ontology, ascending.
    pub axiom_ids: Vec<usize>,
    pub seed_signature: Signature,
    /// Seed signature plus the signature of the module.
    pub extended_signature: Signature,
    pub kind: ModuleKind,
    /// Nested passes before the star fixpoint (0 for the other kinds).
    pub rounds: usize,
    /// Sizes of `M_0, M_1, …` for star extraction.
    pub chain: Vec<usize>,
    pub locality_checks: usize,
    pub wall_time: Duration,
    /// Axioms pulled in because the semantic check gave up.
    pub unknown_verdicts: usize,
    pub trace: Vec<String>,
}

#[derive(Default)]
struct Run {
    ids: Vec<usize>,
    checks: usize,
    unknown: usize,
    trace: Vec<String>,
}

impl Run {
    fn absorb(&mut self, other: Run) -> Vec<usize> {
        self.checks += other.checks;
        self.unknown += other.unknown;
        self.trace.extend(other.trace);
        other.ids
    }
}

/// Worklist fixpoint over the axioms at `within`.
fn fixpoint(o: &Ontology, within: &[usize], seed: &Signature, loc: &Locality, trace: bool) -> Run {
    let axioms = o.axioms();
    let sigs: Vec<Signature> = within.iter().map(|&i| signature_of(&axioms[i])).collect();
    let mut index: BTreeMap<Entity, Vec<usize>> = BTreeMap::new();
    for (k, s) in sigs.iter().enumerate() {
        for e in s.terms() {
            index.entry(e).or_default().push(k);
        }
    }

    let mut run = Run::default();
    let mut sig = seed.clone();
    let mut in_module = vec![false; within.len()];
    let mut queued = vec![true; within.len()];
    let mut queue: VecDeque<usize> = (0..within.len()).collect();
    while let Some(k) = queue.pop_front() {
        queued[k] = false;
        if in_module[k] {
            continue;
        }
        run.checks += 1;
        match loc.check(&axioms[within[k]], &sig) {
            Verdict::Local => continue,
            Verdict::NonLocal => {}
            Verdict::Unknown(reason) => {
                run.unknown += 1;
                if trace {
                    run.trace.push(format!("? [{}] {}: {}", within[k], axioms[within[k]], reason));
                }
            }
        }
        in_module[k] = true;
        if trace {
            run.trace.push(format!("+ [{}] {}", within[k], axioms[within[k]]));
        }
        for e in sigs[k].entities() {
            if sig.insert(e.clone()) {
                for &j in index.get(&e).map(Vec::as_slice).unwrap_or(&[]) {
                    if !in_module[j] && !queued[j] {
                        queued[j] = true;
                        queue.push_back(j);
                    }
                }
            }
        }
    }
    run.ids = (0..within.len()).filter(|&k| in_module[k]).map(|k| within[k]).collect();
    run.ids.sort_unstable();
    run
}

fn finish(o: &Ontology, seed: &Signature, kind: ModuleKind, run: Run, start: Instant) -> ModuleResult {
    let module = o.subset(o.name(), &run.ids);
    let extended = seed.union(&signature_of(&module));
    ModuleResult {
        module,
        axiom_ids: run.ids,
        seed_signature: seed.clone(),
        extended_signature: extended,
        kind,
        rounds: 0,
        chain: Vec::new(),
        locality_checks: run.checks,
        wall_time: start.elapsed(),
        unknown_verdicts: run.unknown,
        trace: run.trace,
    }
}

/// The `flavor`-module of `o` for the seed signature `sig`.
pub fn extract_module(o: &Ontology, sig: &Signature, flavor: LocalityFlavor, opts: &ExtractOptions) -> ModuleResult {
    let start = Instant::now();
    let all: Vec<usize> = (0..o.len()).collect();
    let run = fixpoint(o, &all, sig, &Locality::new(flavor, opts), opts.trace);
    finish(o, sig, ModuleKind::Single(flavor), run, start)
}

fn nested_run(o: &Ontology, within: &[usize], sig: &Signature, pair: (LocalityFlavor, LocalityFlavor), opts: &ExtractOptions) -> Run {
    let (outer, inner) = pair;
    let mut run = Run::default();
    let first = fixpoint(o, within, sig, &Locality::new(inner, opts), opts.trace);
    let mid = run.absorb(first);
    let second = fixpoint(o, &mid, sig, &Locality::new(outer, opts), opts.trace);
    run.ids = run.absorb(second);
    run
}

/// `y-mod(Σ, z-mod(Σ, O))` for `pair = (y, z)`.
pub fn extract_nested(
    o: &Ontology,
    sig: &Signature,
    pair: (LocalityFlavor, LocalityFlavor),
    opts: &ExtractOptions,
) -> ModuleResult {
    let start = Instant::now();
    let all: Vec<usize> = (0..o.len()).collect();
    let run = nested_run(o, &all, sig, pair, opts);
    finish(o, sig, ModuleKind::Nested(pair.0, pair.1), run, start)
}

/// Iterate the nested extraction from `M_0 = O` until `M_n = M_{n+1}`.
pub fn extract_star(
    o: &Ontology,
    sig: &Signature,
    pair: (LocalityFlavor, LocalityFlavor),
    opts: &ExtractOptions,
) -> ModuleResult {
    let start = Instant::now();
    let mut current: Vec<usize> = (0..o.len()).collect();
    let mut chain = vec![current.len()];
    let mut total = Run::default();
    let mut rounds = 0;
    loop {
        let step = nested_run(o, &current, sig, pair, opts);
        let next = total.absorb(step);
        if next == current {
            break;
        }
        current = next;
        chain.push(current.len());
        rounds += 1;
    }
    total.ids = current;
    let mut res = finish(o, sig, ModuleKind::Star(pair.0, pair.1), total, start);
    res.rounds = rounds;
    res.chain = chain;
    res
}

/// Dispatch on the module kind.
pub fn extract(o: &Ontology, sig: &Signature, kind: ModuleKind, opts: &ExtractOptions) -> ModuleResult {
    match kind {
        ModuleKind::Single(f) => extract_module(o, sig, f, opts),
        ModuleKind::Nested(y, z) => extract_nested(o, sig, (y, z), opts),
        ModuleKind::Star(y, z) => extract_star(o, sig, (y, z), opts),
    }
}

/// One module per axiom signature, deduplicated by content. Each entry keeps
/// the first axiom that produced it.
pub fn genuine_modules(o: &Ontology, kind: ModuleKind, opts: &ExtractOptions) -> Vec<(Axiom, ModuleResult)> {
    let all: Vec<ModuleResult> = o
        .axioms()
        .par_iter()
        .map(|a| extract(o, &signature_of(a), kind, opts))
        .collect();
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for (a, m) in o.axioms().iter().zip(all) {
        if seen.insert(m.axiom_ids.clone()) {
            out.push((a.clone(), m));
        }
    }
    out
}

/// Positions of axioms outside the module that are not local w.r.t. the
/// extended signature. Empty for a correct single-flavor module.
pub fn verify_module(o: &Ontology, m: &ModuleResult, flavor: LocalityFlavor, opts: &ExtractOptions) -> Vec<usize> {
    let loc = Locality::new(flavor, opts);
    (0..o.len())
        .filter(|i| m.axiom_ids.binary_search(i).is_err())
        .filter(|&i| !loc.check(&o.axioms()[i], &m.extended_signature).is_local())
        .collect()
}
