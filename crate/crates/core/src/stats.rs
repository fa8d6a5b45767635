//! Treebank-level encoding statistics.
//!
//! Coverage measures the encoding, not a model: every gold tree is encoded
//! and decoded again, and a word counts as recovered when the decoding
//! passes give it its gold head without any repair. The label inventory is
//! the number of distinct syntactic labels used; the combined inventory also
//! distinguishes dependency relations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::codec::{Encoding, Label};
use crate::conllu::Treebank;
use crate::repair::{RepairCounts, RepairOptions};
use crate::tree::DepTree;

#[derive(Clone, Debug, PartialEq)]
pub struct CoverageReport {
    pub treebank: String,
    pub encoding: Encoding,
    pub sentences: u64,
    /// Sentences that did not validate as single-root trees.
    pub skipped_sentences: u64,
    pub words: u64,
    pub recovered_arcs: u64,
    pub recovered_trees: u64,
    /// Sentences where the encoder dropped an arc or decoding needed a
    /// heuristic.
    pub repaired_trees: u64,
    /// Decoder anomalies and repairs, plus encoder drops.
    pub repair_counts: RepairCounts,
    labels: BTreeSet<u8>,
    combined: BTreeSet<(u8, String)>,
}

impl CoverageReport {
    pub fn new(treebank: impl Into<String>, encoding: Encoding) -> Self {
        CoverageReport {
            treebank: treebank.into(),
            encoding,
            sentences: 0,
            skipped_sentences: 0,
            words: 0,
            recovered_arcs: 0,
            recovered_trees: 0,
            repaired_trees: 0,
            repair_counts: RepairCounts::default(),
            labels: BTreeSet::new(),
            combined: BTreeSet::new(),
        }
    }

    /// Fraction of gold arcs recovered. 1.0 for an empty treebank.
    pub fn arc_coverage(&self) -> f64 {
        ratio(self.recovered_arcs, self.words)
    }

    /// Fraction of sentences recovered exactly. 1.0 for an empty treebank.
    pub fn tree_coverage(&self) -> f64 {
        ratio(self.recovered_trees, self.sentences)
    }

    pub fn label_inventory(&self) -> usize {
        self.labels.len()
    }

    pub fn combined_inventory(&self) -> usize {
        self.combined.len()
    }

    /// Label indices observed, ascending.
    pub fn labels(&self) -> impl Iterator<Item = u8> + '_ {
        self.labels.iter().copied()
    }

    /// Add one sentence. Sentences that are not single-root trees are
    /// counted as skipped.
    pub fn add_tree(&mut self, tree: &DepTree) {
        if tree.validate_tree().is_err() {
            self.skipped_sentences += 1;
            return;
        }
        let (labels, drops) = self
            .encoding
            .encode(tree)
            .expect("validated trees always encode");
        let decoded = self
            .encoding
            .decode(&labels, RepairOptions::single_root())
            .expect("labels come from the same encoding");

        let mut recovered: Vec<bool> = decoded
            .raw_heads
            .iter()
            .zip(tree.heads())
            .map(|(raw, &gold)| *raw == Some(gold))
            .collect();
        for word in decoded.log.repaired_words() {
            recovered[word - 1] = false;
        }
        let hits = recovered.iter().filter(|&&r| r).count() as u64;

        self.sentences += 1;
        self.words += tree.len() as u64;
        self.recovered_arcs += hits;
        if hits == tree.len() as u64 {
            self.recovered_trees += 1;
        }
        if !drops.is_empty() || !decoded.log.is_empty() {
            self.repaired_trees += 1;
        }
        self.repair_counts += drops.counts();
        self.repair_counts += decoded.log.counts();

        for (label, deprel) in labels.iter().zip(tree.deprels()) {
            let index = label_index(label);
            self.labels.insert(index);
            self.combined.insert((index, deprel.clone()));
        }
    }

    /// Fold another report for the same encoding into this one.
    pub fn merge(&mut self, other: &CoverageReport) {
        assert_eq!(self.encoding, other.encoding, "merging different encodings");
        self.sentences += other.sentences;
        self.skipped_sentences += other.skipped_sentences;
        self.words += other.words;
        self.recovered_arcs += other.recovered_arcs;
        self.recovered_trees += other.recovered_trees;
        self.repaired_trees += other.repaired_trees;
        self.repair_counts += other.repair_counts;
        self.labels.extend(other.labels.iter().copied());
        self.combined.extend(other.combined.iter().cloned());
    }
}

fn label_index(label: &Label) -> u8 {
    match label {
        Label::Four(l) => l.index(),
        Label::Seven(l) => l.index(),
    }
}

fn ratio(num: u64, den: u64) -> f64 {
    if den == 0 {
        1.0
    } else {
        num as f64 / den as f64
    }
}

/// Measure a treebank. Sentences skipped while reading count as skipped.
pub fn measure(treebank: &Treebank, name: &str, encoding: Encoding) -> CoverageReport {
    let mut report = measure_trees(treebank.trees(), name, encoding);
    report.skipped_sentences += treebank.skipped.len() as u64;
    report
}

pub fn measure_trees<'a>(
    trees: impl IntoIterator<Item = &'a DepTree>,
    name: &str,
    encoding: Encoding,
) -> CoverageReport {
    let mut report = CoverageReport::new(name, encoding);
    for tree in trees {
        report.add_tree(tree);
    }
    report
}

#[derive(Clone, Copy, Debug, Eq, PartialEq)]
pub enum ReportFormat {
    Text,
    Tsv,
    Json,
}

impl std::str::FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(ReportFormat::Text),
            "tsv" => Ok(ReportFormat::Tsv),
            "json" => Ok(ReportFormat::Json),
            _ => Err(format!(
                "unknown report format {:?} (expected text, tsv or json)",
                s
            )),
        }
    }
}

/// One output row. Field order is the column order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportRow {
    pub treebank: String,
    pub encoding: String,
    #[serde(serialize_with = "count")]
    pub labels: f64,
    #[serde(serialize_with = "count")]
    pub combined_labels: f64,
    pub arc_coverage: f64,
    pub tree_coverage: f64,
    #[serde(serialize_with = "count")]
    pub sentences: f64,
    #[serde(serialize_with = "count")]
    pub skipped_sentences: f64,
    #[serde(serialize_with = "count")]
    pub words: f64,
    #[serde(serialize_with = "count")]
    pub repaired_trees: f64,
    #[serde(serialize_with = "count")]
    pub empty_stack_skip: f64,
    #[serde(serialize_with = "count")]
    pub leftover_stack: f64,
    #[serde(serialize_with = "count")]
    pub dropped_arc: f64,
    #[serde(serialize_with = "count")]
    pub attach_headless: f64,
    #[serde(serialize_with = "count")]
    pub cycle_break: f64,
    #[serde(serialize_with = "count")]
    pub extra_root_reattach: f64,
}

/// Whole numbers as JSON integers; macro averages keep their fraction.
fn count<S: serde::Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if x.fract() == 0.0 && *x >= 0.0 {
        s.serialize_u64(*x as u64)
    } else {
        s.serialize_f64(*x)
    }
}

pub const MACRO_AVERAGE: &str = "Macro average";

const COLUMNS: [&str; 16] = [
    "treebank",
    "encoding",
    "labels",
    "combined_labels",
    "arc_coverage",
    "tree_coverage",
    "sentences",
    "skipped_sentences",
    "words",
    "repaired_trees",
    "empty_stack_skip",
    "leftover_stack",
    "dropped_arc",
    "attach_headless",
    "cycle_break",
    "extra_root_reattach",
];

impl ReportRow {
    fn from_report(r: &CoverageReport) -> Self {
        let c = &r.repair_counts;
        ReportRow {
            treebank: r.treebank.clone(),
            encoding: r.encoding.name().to_owned(),
            labels: r.label_inventory() as f64,
            combined_labels: r.combined_inventory() as f64,
            arc_coverage: r.arc_coverage(),
            tree_coverage: r.tree_coverage(),
            sentences: r.sentences as f64,
            skipped_sentences: r.skipped_sentences as f64,
            words: r.words as f64,
            repaired_trees: r.repaired_trees as f64,
            empty_stack_skip: c.empty_stack_skip as f64,
            leftover_stack: c.leftover_stack as f64,
            dropped_arc: c.dropped_arc as f64,
            attach_headless: c.attach_headless as f64,
            cycle_break: c.cycle_break as f64,
            extra_root_reattach: c.extra_root_reattach as f64,
        }
    }

    fn numbers(&self) -> [f64; 14] {
        [
            self.labels,
            self.combined_labels,
            self.arc_coverage,
            self.tree_coverage,
            self.sentences,
            self.skipped_sentences,
            self.words,
            self.repaired_trees,
            self.empty_stack_skip,
            self.leftover_stack,
            self.dropped_arc,
            self.attach_headless,
            self.cycle_break,
            self.extra_root_reattach,
        ]
    }

    fn mean(encoding: &str, rows: &[&ReportRow]) -> Self {
        let k = rows.len() as f64;
        let mut sums = [0.0; 14];
        for row in rows {
            for (sum, x) in sums.iter_mut().zip(row.numbers()) {
                *sum += x;
            }
        }
        let m = sums.map(|s| s / k);
        ReportRow {
            treebank: MACRO_AVERAGE.to_owned(),
            encoding: encoding.to_owned(),
            labels: m[0],
            combined_labels: m[1],
            arc_coverage: m[2],
            tree_coverage: m[3],
            sentences: m[4],
            skipped_sentences: m[5],
            words: m[6],
            repaired_trees: m[7],
            empty_stack_skip: m[8],
            leftover_stack: m[9],
            dropped_arc: m[10],
            attach_headless: m[11],
            cycle_break: m[12],
            extra_root_reattach: m[13],
        }
    }

    pub fn is_macro_average(&self) -> bool {
        self.treebank == MACRO_AVERAGE
    }
}

/// Rows for a set of reports, in input order, followed by one macro-average
/// row per encoding when that encoding was measured on two or more
/// treebanks.
pub fn report_rows(reports: &[CoverageReport]) -> Vec<ReportRow> {
    let mut rows: Vec<ReportRow> = reports.iter().map(ReportRow::from_report).collect();

    let mut by_encoding: BTreeMap<Encoding, Vec<&ReportRow>> = BTreeMap::new();
    for (report, row) in reports.iter().zip(&rows) {
        by_encoding.entry(report.encoding).or_default().push(row);
    }
    let averages: Vec<ReportRow> = by_encoding
        .iter()
        .filter(|(_, rows)| {
            rows.iter()
                .map(|r| &r.treebank)
                .collect::<BTreeSet<_>>()
                .len()
                >= 2
        })
        .map(|(enc, rows)| ReportRow::mean(enc.name(), rows))
        .collect();
    rows.extend(averages);
    rows
}

/// Coverage as a percentage, with `>99.99` for values that are not 1 but
/// would round to 100.
pub fn format_percent(fraction: f64) -> String {
    let pct = fraction * 100.0;
    if fraction < 1.0 && pct >= 99.995 {
        ">99.99".to_owned()
    } else {
        format!("{:.2}", pct)
    }
}

fn format_count(x: f64) -> String {
    if x.fract() == 0.0 {
        format!("{}", x as u64)
    } else {
        format!("{:.1}", x)
    }
}

pub fn report(reports: &[CoverageReport], format: ReportFormat) -> String {
    let rows = report_rows(reports);
    match format {
        ReportFormat::Json => serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n",
        ReportFormat::Tsv => {
            let mut out = COLUMNS.join("\t");
            out.push('\n');
            for row in &rows {
                let mut fields = vec![row.treebank.clone(), row.encoding.clone()];
                for (idx, x) in row.numbers().iter().enumerate() {
                    fields.push(match idx {
                        2 | 3 => format!("{:.6}", x),
                        _ => format_count(*x),
                    });
                }
                out.push_str(&fields.join("\t"));
                out.push('\n');
            }
            out
        }
        ReportFormat::Text => {
            let header = [
                "Treebank", "Enc", "L", "L+rel", "C", "Tree C", "Sents", "Words", "Repaired",
                "Dropped",
            ];
            let body: Vec<[String; 10]> = rows
                .iter()
                .map(|r| {
                    [
                        r.treebank.clone(),
                        r.encoding.clone(),
                        format_count(r.labels),
                        format_count(r.combined_labels),
                        format_percent(r.arc_coverage),
                        format_percent(r.tree_coverage),
                        format_count(r.sentences),
                        format_count(r.words),
                        format_count(r.repaired_trees),
                        format_count(r.dropped_arc),
                    ]
                })
                .collect();
            let mut widths = header.map(str::len);
            for row in &body {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.chars().count());
                }
            }
            let mut out = String::new();
            let line = |out: &mut String, cells: &[&str]| {
                for (idx, (cell, w)) in cells.iter().zip(widths).enumerate() {
                    if idx == 0 {
                        let _ = write!(out, "{:<w$}", cell, w = w);
                    } else {
                        let _ = write!(out, "  {:>w$}", cell, w = w);
                    }
                }
                out.push('\n');
            };
            line(&mut out, &header);
            for row in &body {
                let cells: Vec<&str> = row.iter().map(String::as_str).collect();
                line(&mut out, &cells);
            }
            out
        }
    }
}
