use std::collections::BTreeMap;
use std::fmt::Write;

use super::compare::Comparison;
use super::culprit::CulpritType;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Markdown,
}

pub const CSV_HEADER: &str =
    "ontology,axioms,test,case_id,seed_size,syn_size,sem_size,diff_size,diff_rel,syn_ms,sem_ms,culprits";

fn culprit_label(c: CulpritType) -> &'static str {
    match c {
        CulpritType::Type1 => "type1",
        CulpritType::Type2 => "type2",
        CulpritType::None => "none",
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn ms(d: std::time::Duration) -> String {
    format!("{:.3}", d.as_secs_f64() * 1000.0)
}

fn render_csv(comparisons: &[Comparison], timings: bool) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for c in comparisons {
        for r in &c.records {
            let culprits: Vec<String> = r
                .culprits
                .iter()
                .map(|(i, t)| format!("{}:{}", i, culprit_label(*t)))
                .collect();
            let (syn_ms, sem_ms) = if timings {
                (ms(r.syn_time), ms(r.sem_time))
            } else {
                (String::new(), String::new())
            };
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{:.2},{},{},{}",
                csv_field(&c.ontology),
                c.axioms,
                c.test,
                r.case_id,
                r.seed_signature.term_count(),
                r.syntactic_size,
                r.semantic_size,
                r.difference_axioms.len(),
                r.relative_difference,
                syn_ms,
                sem_ms,
                culprits.join(";"),
            );
        }
    }
    out
}

fn span(values: impl Iterator<Item = usize>, suffix: &str) -> String {
    let v: Vec<usize> = values.collect();
    match (v.iter().min(), v.iter().max()) {
        (Some(lo), Some(hi)) if lo != hi => format!("{lo}–{hi}{suffix}"),
        (Some(lo), _) => format!("{lo}{suffix}"),
        _ => format!("0{suffix}"),
    }
}

/// Distinct difference axioms of one ontology, counted per culprit type.
fn culprit_summary(group: &[&Comparison]) -> String {
    let mut seen: BTreeMap<usize, CulpritType> = BTreeMap::new();
    for c in group {
        for r in &c.records {
            seen.extend(r.culprits.iter().copied());
        }
    }
    let mut counts: BTreeMap<CulpritType, usize> = BTreeMap::new();
    for t in seen.values() {
        *counts.entry(*t).or_default() += 1;
    }
    if counts.is_empty() {
        return "none".to_string();
    }
    counts
        .iter()
        .map(|(t, n)| {
            let label = match t {
                CulpritType::Type1 => "1",
                CulpritType::Type2 => "2",
                CulpritType::None => "other",
            };
            format!("{label} ({n}×)")
        })
        .collect::<Vec<_>>()
        .join(", ")
}

fn render_markdown(comparisons: &[Comparison], timings: bool) -> String {
    let mut out = String::new();
    out.push_str("| Ontology | #axs | Test | #differences | Diff. size (#axs) | Diff. size (rel.) | Time ratio avg. | Culprit type and frequency |\n");
    out.push_str("|---|---:|---|---:|---:|---:|---:|---|\n");
    let mut i = 0;
    while i < comparisons.len() {
        let name = &comparisons[i].ontology;
        let group: Vec<&Comparison> = comparisons[i..]
            .iter()
            .take_while(|c| &c.ontology == name)
            .collect();
        let culprits = culprit_summary(&group);
        for (k, c) in group.iter().enumerate() {
            let ratio = match c.time_ratio() {
                Some(r) if timings => format!("{r:.2}"),
                _ => "—".to_string(),
            };
            let (label, axioms, culprit) = if k == 0 {
                (c.ontology.as_str(), c.axioms.to_string(), culprits.as_str())
            } else {
                ("", String::new(), "")
            };
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} | {} | {} | {} |",
                label,
                axioms,
                c.test,
                c.records.len(),
                span(c.records.iter().map(|r| r.difference_axioms.len()), ""),
                span(c.records.iter().map(|r| r.relative_difference.round() as usize), "%"),
                ratio,
                culprit,
            );
        }
        i += group.len();
    }
    out
}

/// Render comparisons as CSV (one row per differing case) or as a markdown
/// summary table (one row per ontology and test). Timing columns are left
/// empty unless `timings` is set, which keeps the output reproducible.
pub fn render_report(comparisons: &[Comparison], format: ReportFormat, timings: bool) -> String {
    match format {
        ReportFormat::Csv => render_csv(comparisons, timings),
        ReportFormat::Markdown => render_markdown(comparisons, timings),
    }
}
