//! Audits catalog rows against OEIS b-files.

use std::collections::HashMap;

use derangekit_core::catalog::{Param, ParameterBinding, TableEntry};
use derangekit_core::{ANumber, Family};

use crate::oeis::{
    compare_with_shift, BFile, FetchMode, MatchReport, OeisClient, OeisError, Verdict,
    DEFAULT_MAX_SHIFT, DEFAULT_MIN_OVERLAP,
};

/// Block sizes tried for rows without a stated parameterization.
pub const NOTE2_BLOCK_SIZES: std::ops::RangeInclusive<u32> = 2..=6;

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub mode: FetchMode,
    pub terms: u32,
    pub max_shift: u32,
    pub min_overlap: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            mode: FetchMode::Offline,
            terms: 12,
            max_shift: DEFAULT_MAX_SHIFT,
            min_overlap: DEFAULT_MIN_OVERLAP,
        }
    }
}

#[derive(Debug, Clone)]
pub struct EntryReport {
    pub entry: TableEntry,
    pub report: MatchReport,
    /// Human-readable reason or finding; empty for plain matches.
    pub note: String,
}

impl EntryReport {
    /// Tab-separated: table, row, A-number, verdict, shift, binding, note.
    pub fn line(&self) -> String {
        let shift = match self.report.verdict {
            Verdict::Unverifiable => "-".to_string(),
            _ => format!("{:+}", self.report.shift),
        };
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.entry.table,
            self.entry.row,
            self.entry.a_number,
            self.report.verdict,
            shift,
            self.entry.binding,
            self.note
        )
        .trim_end()
        .to_string()
    }
}

/// Verifies every entry; a failure on one entry never stops the run.
pub fn verify_table(
    entries: &[TableEntry],
    client: &OeisClient,
    options: &VerifyOptions,
) -> Vec<EntryReport> {
    let mut references: HashMap<u32, Result<BFile, String>> = HashMap::new();
    entries
        .iter()
        .map(|entry| {
            let (report, note) = verify_entry(entry, client, options, &mut references);
            EntryReport {
                entry: entry.clone(),
                report,
                note,
            }
        })
        .collect()
}

fn verify_entry(
    entry: &TableEntry,
    client: &OeisClient,
    options: &VerifyOptions,
    references: &mut HashMap<u32, Result<BFile, String>>,
) -> (MatchReport, String) {
    let id = match &entry.a_number {
        ANumber::Valid(id) => *id,
        ANumber::Malformed(text) => {
            return (
                MatchReport::unverifiable(),
                format!("malformed A-number '{text}'"),
            )
        }
    };
    let reference = references
        .entry(id)
        .or_insert_with(|| {
            client
                .fetch(&format!("A{id:06}"), options.mode)
                .map_err(|e| match e {
                    OeisError::CacheMiss(_) => "no reference data (offline)".to_string(),
                    other => other.to_string(),
                })
        })
        .clone();

    if !entry.binding.is_bound() {
        return search_block_slices(entry.binding.family, reference.as_ref().ok(), options);
    }
    let reference = match reference {
        Ok(r) => r,
        Err(reason) => return (MatchReport::unverifiable(), reason),
    };
    let binding = &entry.binding;
    match binding.generate_terms(binding.start_index, options.terms) {
        Ok(terms) => {
            let report = compare_with_shift(
                &terms,
                i64::from(binding.start_index),
                &reference,
                options.max_shift,
                options.min_overlap,
            );
            let note = match report.verdict {
                Verdict::Unverifiable => "insufficient overlap with reference".to_string(),
                _ => String::new(),
            };
            (report, note)
        }
        Err(e) => (MatchReport::unverifiable(), format!("term generation failed: {e}")),
    }
}

/// Tries `D(n, k)` along `n` for each small block size `k`.
fn search_block_slices(
    family: Family,
    reference: Option<&BFile>,
    options: &VerifyOptions,
) -> (MatchReport, String) {
    let searched = format!(
        "unbound; searched k={}..{}",
        NOTE2_BLOCK_SIZES.start(),
        NOTE2_BLOCK_SIZES.end()
    );
    let Some(reference) = reference else {
        return (MatchReport::unverifiable(), format!("{searched}: no reference data"));
    };
    if family != Family::BlockDerangement {
        return (MatchReport::unverifiable(), format!("{searched}: unsupported family"));
    }
    for k in NOTE2_BLOCK_SIZES {
        let slice = ParameterBinding::nk(Param::Index, Param::Const(k));
        let Ok(terms) = slice.generate_terms(slice.start_index, options.terms) else {
            continue;
        };
        let report = compare_with_shift(
            &terms,
            i64::from(slice.start_index),
            reference,
            options.max_shift,
            options.min_overlap,
        );
        if report.verdict == Verdict::Match {
            return (report, format!("{searched}: found D(n,{k})"));
        }
    }
    (MatchReport::unverifiable(), format!("{searched}: no slice matched"))
}

/// True when any report is a mismatch.
pub fn has_mismatch(reports: &[EntryReport]) -> bool {
    reports.iter().any(|r| r.report.verdict == Verdict::Mismatch)
}
