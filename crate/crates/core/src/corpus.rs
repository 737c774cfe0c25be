//! The rank-3 and rank-4 table of flag-manifold Poincaré series, its graph
//! taxonomy, and a verifier that recomputes every entry.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cartan::{canonical_cartan, for_each_permutation, CartanError, CoxeterMatrix, EdgeOrder};
use crate::exact_poly::{IntPoly, PolyError, RatFunc};
use crate::weyl_series::{bfs_growth, poincare_flag, series_counts, BfsError, SeriesError};

/// Shipped transcription, one JSON object per line.
pub const TABLE_JSONL: &str = include_str!("../data/tables.jsonl");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown graph `{0}`")]
    UnknownGraph(String),
    #[error("graph {graph} needs {expected} labels, got {got}")]
    LabelCount { graph: Graph, expected: usize, got: usize },
    #[error("label {0} is outside 1..=4")]
    BadLabel(u8),
    #[error("reading {path}: {msg}")]
    Io { path: String, msg: String },
    #[error(transparent)]
    Cartan(#[from] CartanError),
}

/// Reduced Coxeter graphs of indecomposable rank-3 and rank-4 matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Graph {
    #[serde(rename = "3-I")]
    ThreeI,
    #[serde(rename = "3-II")]
    ThreeII,
    #[serde(rename = "4-I")]
    FourI,
    #[serde(rename = "4-II")]
    FourII,
    #[serde(rename = "4-III")]
    FourIII,
    #[serde(rename = "4-IV")]
    FourIV,
    #[serde(rename = "4-V")]
    FourV,
    #[serde(rename = "4-VI")]
    FourVI,
}

impl Graph {
    pub const ALL: [Graph; 8] = [
        Graph::ThreeI,
        Graph::ThreeII,
        Graph::FourI,
        Graph::FourII,
        Graph::FourIII,
        Graph::FourIV,
        Graph::FourV,
        Graph::FourVI,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Graph::ThreeI => "3-I",
            Graph::ThreeII => "3-II",
            Graph::FourI => "4-I",
            Graph::FourII => "4-II",
            Graph::FourIII => "4-III",
            Graph::FourIV => "4-IV",
            Graph::FourV => "4-V",
            Graph::FourVI => "4-VI",
        }
    }

    pub fn rank(self) -> usize {
        match self {
            Graph::ThreeI | Graph::ThreeII => 3,
            _ => 4,
        }
    }

    /// Edge carrying label position `k`, as 0-based vertex pairs.
    ///
    /// 3-I and 4-I are paths, 3-II a triangle, 4-II a star. 4-III is the
    /// triangle `{0,1,2}` with a pendant at 2: the pendant first, then the two
    /// triangle edges at 2, then the opposite edge. 4-IV is a square read
    /// around the cycle. 4-V is the same square followed by the chord
    /// `{0,2}`. 4-VI is the complete graph in lexicographic edge order.
    pub fn edges(self) -> &'static [(usize, usize)] {
        match self {
            Graph::ThreeI => &[(0, 1), (1, 2)],
            Graph::ThreeII => &[(0, 1), (0, 2), (1, 2)],
            Graph::FourI => &[(0, 1), (1, 2), (2, 3)],
            Graph::FourII => &[(0, 1), (0, 2), (0, 3)],
            Graph::FourIII => &FOUR_III,
            Graph::FourIV => &FOUR_IV,
            Graph::FourV => &FOUR_V,
            Graph::FourVI => &FOUR_VI,
        }
    }

    pub fn edge_count(self) -> usize {
        self.edges().len()
    }

    /// Vertex permutations preserving the edge set, as induced permutations
    /// of label positions (`perm[k]` is the image of position `k`).
    pub fn automorphisms(self) -> Vec<Vec<usize>> {
        let edges = self.edges();
        let pos = |a: usize, b: usize| {
            edges
                .iter()
                .position(|&(x, y)| (x, y) == (a.min(b), a.max(b)))
        };
        let mut out = Vec::new();
        let mut check = |p: &[usize]| {
            let induced: Option<Vec<usize>> = edges.iter().map(|&(a, b)| pos(p[a], p[b])).collect();
            if let Some(v) = induced {
                out.push(v);
            }
        };
        let mut verts: Vec<usize> = (0..self.rank()).collect();
        check(&verts.clone());
        for_each_permutation(&mut verts, &mut check);
        out.sort();
        out.dedup();
        out
    }

    /// Number of label vectors in `{1..4}^edges` up to automorphism.
    pub fn orbit_count(self) -> usize {
        let e = self.edge_count();
        let auts = self.automorphisms();
        let mut seen = BTreeSet::new();
        let mut labels = vec![1u8; e];
        loop {
            seen.insert(canonical_labels(&auts, &labels));
            if !next_labels(&mut labels) {
                break;
            }
        }
        seen.len()
    }

    /// Number of nondecreasing label vectors (multisets of edge labels).
    pub fn multiset_count(self) -> usize {
        let e = self.edge_count();
        binomial(e + 3, 3)
    }

    /// Coxeter matrix with label `labels[k]` on edge `k`.
    pub fn coxeter(self, labels: &[u8]) -> Result<CoxeterMatrix, CorpusError> {
        if labels.len() != self.edge_count() {
            return Err(CorpusError::LabelCount {
                graph: self,
                expected: self.edge_count(),
                got: labels.len(),
            });
        }
        let mut edges = Vec::with_capacity(labels.len());
        for (&(a, b), &r) in self.edges().iter().zip(labels) {
            edges.push((a, b, label_order(r)?));
        }
        Ok(CoxeterMatrix::from_edges(self.rank(), &edges)?)
    }
}

const FOUR_III: [(usize, usize); 4] = [(2, 3), (1, 2), (0, 2), (0, 1)];
const FOUR_IV: [(usize, usize); 4] = [(0, 1), (1, 2), (2, 3), (0, 3)];
const FOUR_V: [(usize, usize); 5] = [(1, 2), (2, 3), (0, 3), (0, 1), (0, 2)];
const FOUR_VI: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn next_labels(labels: &mut [u8]) -> bool {
    for v in labels.iter_mut().rev() {
        if *v < 4 {
            *v += 1;
            return true;
        }
        *v = 1;
    }
    false
}

/// Least image of `labels` under the given position permutations.
pub fn canonical_labels(auts: &[Vec<usize>], labels: &[u8]) -> Vec<u8> {
    auts.iter()
        .map(|p| {
            let mut out = vec![0u8; labels.len()];
            for (k, &l) in labels.iter().enumerate() {
                out[p[k]] = l;
            }
            out
        })
        .min()
        .unwrap_or_else(|| labels.to_vec())
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Graph {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Graph::ALL
            .into_iter()
            .find(|g| g.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| CorpusError::UnknownGraph(s.to_string()))
    }
}

/// Table labels `1, 2, 3, 4` stand for `m = 3, 4, 6, inf`.
pub fn label_order(r: u8) -> Result<EdgeOrder, CorpusError> {
    match r {
        1 => Ok(EdgeOrder::Three),
        2 => Ok(EdgeOrder::Four),
        3 => Ok(EdgeOrder::Six),
        4 => Ok(EdgeOrder::Infinite),
        other => Err(CorpusError::BadLabel(other)),
    }
}

/// One row of the shipped table, printed form kept as transcribed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableEntry {
    pub graph: Graph,
    pub index: usize,
    pub labels: Vec<u8>,
    pub num: IntPoly,
    pub den: IntPoly,
}

impl TableEntry {
    /// Printed rational function in canonical form.
    pub fn printed(&self) -> Result<RatFunc, PolyError> {
        RatFunc::new(self.num.clone(), self.den.clone())
    }

    pub fn coxeter(&self) -> Result<CoxeterMatrix, CorpusError> {
        self.graph.coxeter(&self.labels)
    }
}

#[derive(Deserialize)]
struct RawEntry {
    graph: String,
    index: usize,
    labels: Vec<u8>,
    num: Vec<i64>,
    den: Vec<i64>,
}

/// Running index ranges of each block.
pub fn index_range(g: Graph) -> (usize, usize) {
    match g {
        Graph::ThreeI => (1, 10),
        Graph::ThreeII => (11, 30),
        Graph::FourI => (1, 40),
        Graph::FourII => (41, 60),
        Graph::FourIII => (61, 220),
        Graph::FourIV => (221, 275),
        Graph::FourV => (276, 579),
        Graph::FourVI => (580, 663),
    }
}

/// Parse JSON lines, checking labels and that every block runs through its
/// index range in order.
pub fn parse_table(src: &str) -> Result<Vec<TableEntry>, CorpusError> {
    let mut out: Vec<TableEntry> = Vec::new();
    let mut last_line = 0;
    for (k, line) in src.lines().enumerate() {
        let line_no = k + 1;
        if line.trim().is_empty() {
            continue;
        }
        last_line = line_no;
        let perr = |msg: String| CorpusError::Parse { line: line_no, msg };
        let raw: RawEntry = serde_json::from_str(line).map_err(|e| perr(e.to_string()))?;
        let graph: Graph = raw.graph.parse().map_err(|e: CorpusError| perr(e.to_string()))?;
        if raw.labels.len() != graph.edge_count() {
            return Err(perr(
                CorpusError::LabelCount {
                    graph,
                    expected: graph.edge_count(),
                    got: raw.labels.len(),
                }
                .to_string(),
            ));
        }
        if let Some(&bad) = raw.labels.iter().find(|&&r| !(1..=4).contains(&r)) {
            return Err(perr(CorpusError::BadLabel(bad).to_string()));
        }
        let expected = match out.last() {
            Some(prev) if prev.graph == graph => prev.index + 1,
            _ => index_range(graph).0,
        };
        if raw.index != expected {
            return Err(perr(format!("{graph} entry {} out of sequence, expected {expected}", raw.index)));
        }
        let entry = TableEntry {
            graph,
            index: raw.index,
            labels: raw.labels,
            num: IntPoly::from_i64s(&raw.num),
            den: IntPoly::from_i64s(&raw.den),
        };
        entry.printed().map_err(|e| perr(e.to_string()))?;
        out.push(entry);
    }
    for g in Graph::ALL {
        let (lo, hi) = index_range(g);
        let got = out.iter().filter(|e| e.graph == g).count();
        if got != hi - lo + 1 {
            return Err(CorpusError::Parse {
                line: last_line,
                msg: format!("{g} has {got} entries, expected {}", hi - lo + 1),
            });
        }
    }
    Ok(out)
}

pub fn load(path: &std::path::Path) -> Result<Vec<TableEntry>, CorpusError> {
    let src = std::fs::read_to_string(path).map_err(|e| CorpusError::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })?;
    parse_table(&src)
}

/// The table shipped with the crate.
pub fn shipped() -> Vec<TableEntry> {
    parse_table(TABLE_JSONL).expect("shipped table parses")
}

/// How a block covers the label vectors of its graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coverage {
    pub graph: Graph,
    pub entries: usize,
    pub distinct_orbits: usize,
    pub orbit_count: usize,
    pub multiset_count: usize,
    /// Index pairs whose label vectors lie in the same orbit.
    pub duplicates: Vec<(usize, usize)>,
    /// Every entry's labels are nondecreasing.
    pub sorted_labels: bool,
}

impl Coverage {
    pub fn one_per_orbit(&self) -> bool {
        self.duplicates.is_empty() && self.distinct_orbits == self.orbit_count
    }

    pub fn one_per_multiset(&self) -> bool {
        self.duplicates.is_empty() && self.sorted_labels && self.entries == self.multiset_count
    }
}

pub fn coverage(entries: &[TableEntry]) -> Vec<Coverage> {
    Graph::ALL
        .into_iter()
        .map(|g| {
            let auts = g.automorphisms();
            let mut first: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
            let mut duplicates = Vec::new();
            let mut count = 0;
            let mut sorted_labels = true;
            for e in entries.iter().filter(|e| e.graph == g) {
                count += 1;
                sorted_labels &= e.labels.windows(2).all(|w| w[0] <= w[1]);
                let key = canonical_labels(&auts, &e.labels);
                match first.get(&key) {
                    Some(&i) => duplicates.push((i, e.index)),
                    None => {
                        first.insert(key, e.index);
                    }
                }
            }
            Coverage {
                graph: g,
                entries: count,
                distinct_orbits: first.len(),
                orbit_count: g.orbit_count(),
                multiset_count: g.multiset_count(),
                duplicates,
                sorted_labels,
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VerifyOptions {
    /// BFS length used to adjudicate a mismatch.
    pub bfs_length: usize,
    /// Longest BFS tried when both sides agree at `bfs_length`.
    pub max_bfs_length: usize,
    pub budget: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            bfs_length: 10,
            max_bfs_length: 16,
            budget: crate::weyl_series::DEFAULT_BUDGET,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Supports {
    Computed,
    Printed,
    Neither,
    /// Both sides agree with the BFS as far as it could go.
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Adjudication {
    pub supports: Supports,
    pub bfs: Vec<u64>,
    /// First length where the expansions of the two sides differ.
    pub first_difference: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    Match,
    /// Printed with numerator and denominator exchanged.
    Reciprocal { adjudication: Adjudication },
    Mismatch {
        adjudication: Adjudication,
        /// A rearrangement of the same labels on the graph whose series is
        /// the printed one, if there is one.
        rearranged: Option<Vec<u8>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntryReport {
    pub graph: Graph,
    pub index: usize,
    pub labels: Vec<u8>,
    pub printed: RatFunc,
    pub computed: RatFunc,
    #[serde(flatten)]
    pub outcome: Outcome,
}

impl EntryReport {
    pub fn adjudication(&self) -> Option<&Adjudication> {
        match &self.outcome {
            Outcome::Match => None,
            Outcome::Reciprocal { adjudication } | Outcome::Mismatch { adjudication, .. } => Some(adjudication),
        }
    }

    /// Matched, or a mismatch the oracle resolves for the computed value.
    pub fn resolved(&self) -> bool {
        self.adjudication().map_or(true, |a| a.supports == Supports::Computed)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub total: usize,
    pub matched: usize,
    pub reciprocal: usize,
    pub mismatched: usize,
    pub unresolved: usize,
    pub elapsed_ms: u128,
    pub entries: Vec<EntryReport>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.unresolved == 0
    }

    pub fn discrepancies(&self) -> impl Iterator<Item = &EntryReport> {
        self.entries.iter().filter(|e| e.outcome != Outcome::Match)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("{graph} entry {index}: {source}")]
    Entry {
        graph: Graph,
        index: usize,
        #[source]
        source: SeriesError,
    },
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("{0}")]
    Note(String),
}

/// Recompute every entry and adjudicate the ones that differ.
pub fn verify(entries: &[TableEntry], options: &VerifyOptions) -> Result<VerifyReport, VerifyError> {
    let start = Instant::now();
    let reports: Vec<EntryReport> = entries
        .par_iter()
        .map(|e| verify_entry(e, options))
        .collect::<Result<_, _>>()?;
    let count = |f: fn(&EntryReport) -> bool| reports.iter().filter(|r| f(r)).count();
    Ok(VerifyReport {
        total: reports.len(),
        matched: count(|r| r.outcome == Outcome::Match),
        reciprocal: count(|r| matches!(r.outcome, Outcome::Reciprocal { .. })),
        mismatched: count(|r| matches!(r.outcome, Outcome::Mismatch { .. })),
        unresolved: count(|r| !r.resolved()),
        elapsed_ms: start.elapsed().as_millis(),
        entries: reports,
    })
}

pub fn verify_entry(e: &TableEntry, options: &VerifyOptions) -> Result<EntryReport, VerifyError> {
    let wrap = |source: SeriesError| VerifyError::Entry {
        graph: e.graph,
        index: e.index,
        source,
    };
    let x = e.coxeter()?;
    let computed = poincare_flag(&x).map_err(wrap)?;
    let printed = e.printed()?;
    let outcome = if computed == printed {
        Outcome::Match
    } else {
        let adjudication = adjudicate(&x, &computed, &printed, options);
        if printed.recip().ok().as_ref() == Some(&computed) {
            Outcome::Reciprocal { adjudication }
        } else {
            Outcome::Mismatch {
                adjudication,
                rearranged: rearrangement(e.graph, &e.labels, &printed).map_err(wrap)?,
            }
        }
    };
    Ok(EntryReport {
        graph: e.graph,
        index: e.index,
        labels: e.labels.clone(),
        printed,
        computed,
        outcome,
    })
}

/// Compare both expansions with BFS growth counts, lengthening the BFS while
/// the two sides agree.
pub fn adjudicate(x: &CoxeterMatrix, computed: &RatFunc, printed: &RatFunc, options: &VerifyOptions) -> Adjudication {
    let c = canonical_cartan(x);
    let mut length = options.bfs_length;
    loop {
        let bfs = match bfs_growth(&c, length, options.budget) {
            Ok(g) => g.counts,
            Err(BfsError::BudgetExceeded { partial, .. }) => partial.counts,
        };
        let reached = bfs.len() - 1;
        let as_counts = |r: &RatFunc| series_counts(&r.expand(reached));
        let left = as_counts(computed);
        let right = as_counts(printed);
        let first_difference = computed
            .expand(options.max_bfs_length)
            .coeffs()
            .iter()
            .zip(printed.expand(options.max_bfs_length).coeffs())
            .position(|(a, b)| a != b);
        let agrees = |s: &Option<Vec<u64>>| s.as_deref() == Some(&bfs[..]);
        let supports = match (agrees(&left), agrees(&right)) {
            (true, false) => Supports::Computed,
            (false, true) => Supports::Printed,
            (false, false) => Supports::Neither,
            (true, true) => Supports::Undecided,
        };
        let exhausted = reached < length || length >= options.max_bfs_length;
        if supports != Supports::Undecided || exhausted {
            return Adjudication {
                supports,
                bfs,
                first_difference,
            };
        }
        length = (length + 2).min(options.max_bfs_length);
    }
}

/// Search the other placements of `labels` on the graph for one whose series
/// is `target`.
fn rearrangement(g: Graph, labels: &[u8], target: &RatFunc) -> Result<Option<Vec<u8>>, SeriesError> {
    let mut seen = BTreeSet::new();
    let mut found = None;
    let mut perm = labels.to_vec();
    let mut err = None;
    let mut visit = |p: &[u8]| {
        if found.is_some() || err.is_some() || !seen.insert(p.to_vec()) {
            return;
        }
        let x = g.coxeter(p).expect("labels already validated");
        match poincare_flag(&x) {
            Ok(r) if &r == target => found = Some(p.to_vec()),
            Ok(_) => {}
            Err(e) => err = Some(e),
        }
    };
    visit(&perm.clone());
    for_each_permutation(&mut perm, &mut visit);
    match err {
        Some(e) => Err(e),
        None => Ok(found),
    }
}

/// Generator and relation degrees printed alongside entry 581.
pub const PRINTED_PRESENTATION_581: ([usize; 5], [usize; 4]) = ([1, 2, 2, 2, 4], [5, 6, 6, 6]);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PresentationNote {
    pub graph: Graph,
    pub index: usize,
    pub q: IntPoly,
    pub printed_gens: Vec<usize>,
    pub printed_rels: Vec<usize>,
    /// Denominator `1 - sum t^gens + sum t^rels` of the printed presentation.
    pub printed_denominator: IntPoly,
    pub q_gens: Vec<usize>,
    pub q_rels: Vec<usize>,
    pub consistent: bool,
}

/// Compare the printed presentation for entry 581 with the one read off
/// the computed `Q`.
pub fn presentation_note() -> Result<PresentationNote, VerifyError> {
    let (graph, index) = (Graph::FourVI, 581);
    let entry = shipped()
        .into_iter()
        .find(|e| e.graph == graph && e.index == index)
        .expect("entry 581 is shipped");
    let x = entry.coxeter()?;
    let wrap = |source: SeriesError| VerifyError::Entry { graph, index, source };
    let p = poincare_flag(&x).map_err(wrap)?;
    let q = crate::homotopy_ranks::q_factorization(&p, &x)
        .map_err(|e| VerifyError::Note(e.to_string()))?
        .q;
    let from_q = crate::graded_algebra::parse_q(&q).map_err(|e| VerifyError::Note(e.to_string()))?;
    let (gens, rels) = PRINTED_PRESENTATION_581;
    let printed = crate::graded_algebra::GradedPresentation::new(gens.to_vec(), rels.to_vec())
        .map_err(|e| VerifyError::Note(e.to_string()))?;
    Ok(PresentationNote {
        graph,
        index,
        printed_denominator: printed.denominator(),
        consistent: printed == from_q,
        q,
        printed_gens: printed.gens().to_vec(),
        printed_rels: printed.rels().to_vec(),
        q_gens: from_q.gens().to_vec(),
        q_rels: from_q.rels().to_vec(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct Errata {
    pub schema: u32,
    pub bfs_length: usize,
    pub entries: Vec<EntryReport>,
    pub coverage: Vec<Coverage>,
    pub presentation: PresentationNote,
}

/// Every discrepancy of `report`, plus the coverage and presentation notes.
/// Runtime is left out so the file is reproducible.
pub fn errata(
    report: &VerifyReport,
    entries: &[TableEntry],
    options: &VerifyOptions,
) -> Result<Errata, VerifyError> {
    Ok(Errata {
        schema: 1,
        bfs_length: options.bfs_length,
        entries: report.discrepancies().cloned().collect(),
        coverage: coverage(entries)
            .into_iter()
            .filter(|c| !c.one_per_orbit())
            .collect(),
        presentation: presentation_note()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(g: Graph, index: usize) -> TableEntry {
        shipped()
            .into_iter()
            .find(|e| e.graph == g && e.index == index)
            .unwrap()
    }

    #[test]
    fn graph_names_round_trip() {
        for g in Graph::ALL {
            assert_eq!(g.name().parse::<Graph>().unwrap(), g);
            assert_eq!(serde_json::to_string(&g).unwrap(), format!("\"{g}\""));
        }
        assert!("4-VII".parse::<Graph>().is_err());
    }

    #[test]
    fn orbit_counts() {
        let got: Vec<usize> = Graph::ALL.iter().map(|g| g.orbit_count()).collect();
        assert_eq!(got, vec![10, 20, 40, 20, 160, 55, 304, 276]);
        assert_eq!(Graph::FourVI.multiset_count(), 84);
        assert_eq!(Graph::FourVI.automorphisms().len(), 24);
        assert_eq!(Graph::FourIV.automorphisms().len(), 8);
        assert_eq!(Graph::FourIII.automorphisms().len(), 2);
    }

    #[test]
    fn shipped_counts() {
        let es = shipped();
        assert_eq!(es.len(), 693);
        let cov = coverage(&es);
        for c in &cov {
            if c.graph == Graph::FourVI {
                assert!(c.one_per_multiset() && !c.one_per_orbit());
            } else {
                assert!(c.one_per_orbit(), "{c:?}");
            }
        }
    }

    #[test]
    fn printed_forms() {
        let e = entry(Graph::ThreeII, 30);
        assert_eq!(e.labels, vec![4, 4, 4]);
        assert_eq!(e.printed().unwrap(), RatFunc::from_i64s(&[1, 1], &[1, -2]).unwrap());
        let e = entry(Graph::FourVI, 663);
        assert_eq!(e.printed().unwrap(), RatFunc::from_i64s(&[1, 1], &[1, -3]).unwrap());
        let e = entry(Graph::ThreeI, 5);
        assert_eq!(e.labels, vec![2, 2]);
        let cox = e.coxeter().unwrap();
        assert_eq!(poincare_flag(&cox).unwrap(), e.printed().unwrap());
    }

    #[test]
    fn parse_errors_carry_lines() {
        let good = r#"{"graph": "3-I", "index": 1, "labels": [1, 1], "num": [1], "den": [1]}"#;
        let bad_labels = r#"{"graph": "3-I", "index": 2, "labels": [1], "num": [1], "den": [1]}"#;
        let src = format!("{good}\n{bad_labels}\n");
        assert!(matches!(parse_table(&src), Err(CorpusError::Parse { line: 2, .. })));
        let src = format!("{good}\nnot json\n");
        assert!(matches!(parse_table(&src), Err(CorpusError::Parse { line: 2, .. })));
        let skip = r#"{"graph": "3-I", "index": 3, "labels": [1, 1], "num": [1], "den": [1]}"#;
        let src = format!("{good}\n{skip}\n");
        assert!(matches!(parse_table(&src), Err(CorpusError::Parse { line: 2, .. })));
        let zero_label = r#"{"graph": "3-I", "index": 1, "labels": [0, 1], "num": [1], "den": [1]}"#;
        assert!(matches!(parse_table(zero_label), Err(CorpusError::Parse { line: 1, .. })));
        // a complete table is required
        assert!(matches!(parse_table(good), Err(CorpusError::Parse { .. })));
    }

    #[test]
    fn reciprocal_entry_is_adjudicated() {
        let r = verify_entry(&entry(Graph::FourV, 344), &VerifyOptions::default()).unwrap();
        match r.outcome {
            Outcome::Reciprocal { adjudication } => assert_eq!(adjudication.supports, Supports::Computed),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn matching_entry() {
        let r = verify_entry(&entry(Graph::ThreeII, 13), &VerifyOptions::default()).unwrap();
        assert_eq!(r.outcome, Outcome::Match);
        assert_eq!(r.labels, vec![1, 1, 3]);
    }

    #[test]
    fn adjudicate_flags_a_wrong_computation() {
        let x = Graph::ThreeII.coxeter(&[4, 4, 4]).unwrap();
        let truth = poincare_flag(&x).unwrap();
        let wrong = RatFunc::from_i64s(&[1, 1], &[1, -3]).unwrap();
        let a = adjudicate(&x, &wrong, &truth, &VerifyOptions::default());
        assert_eq!(a.supports, Supports::Printed);
        assert_eq!(a.first_difference, Some(1));
    }

    #[test]
    fn presentation_is_inconsistent() {
        let n = presentation_note().unwrap();
        assert!(!n.consistent);
        assert_eq!(n.q, IntPoly::from_i64s(&[1, -1, -3, -1, -1, 1, 3]));
        assert_eq!(n.q_gens, vec![1, 2, 2, 2, 3, 4]);
        assert_eq!(n.q_rels, vec![5, 6, 6, 6]);
    }
}
