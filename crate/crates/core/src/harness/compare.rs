use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::extract::{extract_module, ExtractOptions, Locality};
use crate::model::{signature_of, LocalityFlavor, Ontology, Signature};
use crate::semantic::Verdict;

use super::culprit::{classify_culprit, CulpritType};
use super::sampling::{sample_signatures, SamplingConfig};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid sampling configuration: {0}")]
    InvalidConfig(String),
    #[error("{ontology}, {test} case {case}: {detail}")]
    InvariantViolation {
        ontology: String,
        test: TestMode,
        case: usize,
        detail: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TestMode {
    /// Per random signature and axiom: semantically but not syntactically local?
    T1a,
    /// Per random signature: do the two modules differ?
    T1b,
    /// Per axiom signature: do the two modules differ?
    T2,
}

impl TestMode {
    pub const ALL: [TestMode; 3] = [TestMode::T1a, TestMode::T1b, TestMode::T2];
}

impl fmt::Display for TestMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TestMode::T1a => "T1a",
            TestMode::T1b => "T1b",
            TestMode::T2 => "T2",
        })
    }
}

/// One case where the syntactic and the semantic side differ.
#[derive(Clone, Debug, PartialEq)]
pub struct DifferenceRecord {
    pub test: TestMode,
    pub case_id: usize,
    pub seed_signature: Signature,
    /// Module size (T1b, T2) or number of non-local axioms (T1a).
    pub syntactic_size: usize,
    pub semantic_size: usize,
    /// Axiom positions on the syntactic side only.
    pub difference_axioms: Vec<usize>,
    /// Difference size relative to the syntactic size, in percent.
    pub relative_difference: f64,
    pub syn_time: Duration,
    pub sem_time: Duration,
    pub culprits: Vec<(usize, CulpritType)>,
    pub unknown_verdicts: usize,
}

/// All cases of one test on one ontology.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub ontology: String,
    pub axioms: usize,
    pub test: TestMode,
    pub cases: usize,
    pub records: Vec<DifferenceRecord>,
    pub syn_total: Duration,
    pub sem_total: Duration,
    pub unknown_verdicts: usize,
}

impl Comparison {
    /// Average semantic-to-syntactic time ratio, when the syntactic side took
    /// at least a millisecond per case on average.
    pub fn time_ratio(&self) -> Option<f64> {
        if self.cases == 0 || self.syn_total < Duration::from_millis(self.cases as u64) {
            return None;
        }
        Some(self.sem_total.as_secs_f64() / self.syn_total.as_secs_f64())
    }
}

struct Outcome {
    record: Option<DifferenceRecord>,
    syn_time: Duration,
    sem_time: Duration,
    unknown: usize,
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

#[allow(clippy::too_many_arguments)]
fn record(
    o: &Ontology,
    test: TestMode,
    case_id: usize,
    sig: &Signature,
    syn: &[usize],
    sem: &[usize],
    definite: &[usize],
    times: (Duration, Duration),
    unknown: usize,
) -> Result<Outcome, HarnessError> {
    // Axioms pulled in only because the reasoner gave up prove nothing.
    if let Some(&bad) = definite.iter().find(|i| syn.binary_search(i).is_err()) {
        return Err(HarnessError::InvariantViolation {
            ontology: o.name().to_string(),
            test,
            case: case_id,
            detail: format!(
                "axiom {} is syntactically local but not semantically local: {}",
                bad,
                o.axioms()[bad]
            ),
        });
    }
    let diff: Vec<usize> = syn.iter().filter(|i| sem.binary_search(i).is_err()).copied().collect();
    let rec = (!diff.is_empty()).then(|| DifferenceRecord {
        test,
        case_id,
        seed_signature: sig.clone(),
        syntactic_size: syn.len(),
        semantic_size: sem.len(),
        relative_difference: 100.0 * diff.len() as f64 / syn.len() as f64,
        culprits: diff.iter().map(|&i| (i, classify_culprit(&o.axioms()[i]))).collect(),
        difference_axioms: diff,
        syn_time: times.0,
        sem_time: times.1,
        unknown_verdicts: unknown,
    });
    Ok(Outcome {
        record: rec,
        syn_time: times.0,
        sem_time: times.1,
        unknown,
    })
}

fn locality_case(o: &Ontology, case_id: usize, sig: &Signature, opts: &ExtractOptions) -> Result<Outcome, HarnessError> {
    let syn_loc = Locality::new(LocalityFlavor::SynBot, opts);
    let sem_loc = Locality::new(LocalityFlavor::SemBot, opts);
    let (syn, syn_time) = timed(|| {
        (0..o.len())
            .filter(|&i| !syn_loc.check(&o.axioms()[i], sig).is_local())
            .collect::<Vec<_>>()
    });
    let (verdicts, sem_time) = timed(|| {
        o.axioms()
            .iter()
            .map(|a| sem_loc.check(a, sig))
            .collect::<Vec<_>>()
    });
    let unknown = verdicts.iter().filter(|v| matches!(v, Verdict::Unknown(_))).count();
    let sem: Vec<usize> = (0..o.len()).filter(|&i| !verdicts[i].is_local()).collect();
    let definite: Vec<usize> = (0..o.len()).filter(|&i| verdicts[i] == Verdict::NonLocal).collect();
    record(o, TestMode::T1a, case_id, sig, &syn, &sem, &definite, (syn_time, sem_time), unknown)
}

fn module_case(
    o: &Ontology,
    test: TestMode,
    case_id: usize,
    sig: &Signature,
    opts: &ExtractOptions,
) -> Result<Outcome, HarnessError> {
    let syn = extract_module(o, sig, LocalityFlavor::SynBot, opts);
    let sem = extract_module(o, sig, LocalityFlavor::SemBot, opts);
    record(
        o,
        test,
        case_id,
        sig,
        &syn.axiom_ids,
        &sem.axiom_ids,
        if sem.unknown_verdicts == 0 { &sem.axiom_ids } else { &[] },
        (syn.wall_time, sem.wall_time),
        sem.unknown_verdicts,
    )
}

/// Run one test over `o`. Cases run in parallel; the result does not depend
/// on scheduling.
pub fn run_comparison(
    o: &Ontology,
    test: TestMode,
    cfg: &SamplingConfig,
    opts: &ExtractOptions,
) -> Result<Comparison, HarnessError> {
    cfg.validate()?;
    let signatures: Vec<Signature> = match test {
        TestMode::T1a | TestMode::T1b => sample_signatures(o, cfg),
        TestMode::T2 => o.axioms().iter().map(signature_of).collect(),
    };
    let run = |i: usize, sig: &Signature| match test {
        TestMode::T1a => locality_case(o, i, sig, opts),
        _ => module_case(o, test, i, sig, opts),
    };
    // Warm-up pass, not timed.
    if let Some(first) = signatures.first() {
        run(0, first)?;
    }
    let outcomes: Vec<Outcome> = signatures
        .par_iter()
        .enumerate()
        .map(|(i, sig)| run(i, sig))
        .collect::<Result<_, _>>()?;

    let mut cmp = Comparison {
        ontology: o.name().to_string(),
        axioms: o.len(),
        test,
        cases: signatures.len(),
        records: Vec::new(),
        syn_total: Duration::ZERO,
        sem_total: Duration::ZERO,
        unknown_verdicts: 0,
    };
    for out in outcomes {
        cmp.syn_total += out.syn_time;
        cmp.sem_total += out.sem_time;
        cmp.unknown_verdicts += out.unknown;
        cmp.records.extend(out.record);
    }
    Ok(cmp)
}
