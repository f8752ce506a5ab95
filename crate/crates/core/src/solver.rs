//! Exact satisfiability as exact cover.
//!
//! A monotone formula is x-satisfiable iff some set of variables has
//! occurrence sets that partition the clauses. With rows as the universe and
//! column supports as candidate sets this is an exact-cover instance; in the
//! design reading the same search finds a parallel class.
//!
//! The engine is in-place backtracking over the bit-packed matrix. At each
//! node it branches on the uncovered row with the fewest compatible columns
//! (ties to the lowest index unless a seed is given). Every certificate is
//! re-checked against the matrix before it leaves this module.

use std::fmt;
use std::ops::ControlFlow;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::correspondence::classify;
use crate::error::{Error, Result};
use crate::params::{independent_count, IndependentCount};
use crate::structure::{DesignView, FormulaView, IncidenceStructure};

/// Largest row count the brute-force oracle accepts.
pub const ORACLE_MAX_ROWS: usize = 28;

/// Which uncovered row to branch on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ChoicePolicy {
    /// Fewest compatible columns first.
    #[default]
    MinSupport,
    /// Lowest-indexed uncovered row.
    FirstIndex,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchConfig {
    pub node_limit: Option<u64>,
    pub solution_limit: Option<usize>,
    pub choice: ChoicePolicy,
    /// Randomizes tie-breaking under [`ChoicePolicy::MinSupport`].
    pub seed: Option<u64>,
}

impl SearchConfig {
    pub fn with_node_limit(mut self, limit: u64) -> Self {
        self.node_limit = Some(limit.max(1));
        self
    }

    pub fn with_solution_limit(mut self, limit: usize) -> Self {
        self.solution_limit = Some(limit.max(1));
        self
    }

    pub fn with_choice(mut self, choice: ChoicePolicy) -> Self {
        self.choice = choice;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes_expanded: u64,
    pub solutions_found: u64,
    /// A limit cut the search short, so a negative answer means "unknown".
    pub limit_hit: bool,
}

/// Three-way answer of a limited search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Answer {
    Found,
    NoneExists,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome<T> {
    pub result: Option<T>,
    pub stats: SearchStats,
}

impl<T> SearchOutcome<T> {
    pub fn answer(&self) -> Answer {
        match (&self.result, self.stats.limit_hit) {
            (Some(_), _) => Answer::Found,
            (None, false) => Answer::NoneExists,
            (None, true) => Answer::Unknown,
        }
    }
}

/// Why a claimed certificate is invalid.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("column {0} out of range")]
    ColumnOutOfRange(usize),
    #[error("column {0} chosen twice")]
    RepeatedColumn(usize),
    #[error("row {0} is not covered")]
    RowUncovered(usize),
    #[error("row {row} is covered by columns {first} and {second}")]
    RowCoveredTwice {
        row: usize,
        first: usize,
        second: usize,
    },
    #[error("recorded part of column {0} differs from its support")]
    PartMismatch(usize),
    #[error("column {0} belongs to no class")]
    ColumnUnused(usize),
}

/// Checks that the supports of `cols` partition the rows of `s`.
pub fn check_partition(
    s: &IncidenceStructure,
    cols: &[usize],
) -> std::result::Result<(), CertificateError> {
    let mut owner: Vec<Option<usize>> = vec![None; s.rows()];
    let mut seen = vec![false; s.cols()];
    for &j in cols {
        if j >= s.cols() {
            return Err(CertificateError::ColumnOutOfRange(j));
        }
        if std::mem::replace(&mut seen[j], true) {
            return Err(CertificateError::RepeatedColumn(j));
        }
        for &i in s.col(j) {
            if let Some(first) = owner[i].replace(j) {
                return Err(CertificateError::RowCoveredTwice {
                    row: i,
                    first,
                    second: j,
                });
            }
        }
    }
    match owner.iter().position(Option::is_none) {
        Some(i) => Err(CertificateError::RowUncovered(i)),
        None => Ok(()),
    }
}

/// A set of variables whose occurrence sets partition the clauses.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct XsatSolution {
    /// Chosen columns, ascending.
    pub chosen: Vec<usize>,
    /// Row support of each chosen column, in the same order.
    pub parts: Vec<Vec<usize>>,
}

impl XsatSolution {
    pub fn new(s: &IncidenceStructure, mut chosen: Vec<usize>) -> Self {
        chosen.sort_unstable();
        let parts = chosen.iter().map(|&j| s.col(j).to_vec()).collect();
        XsatSolution { chosen, parts }
    }

    pub fn verify(&self, s: &IncidenceStructure) -> std::result::Result<(), CertificateError> {
        check_partition(s, &self.chosen)?;
        for (j, part) in self.chosen.iter().zip(&self.parts) {
            if s.col(*j) != part.as_slice() {
                return Err(CertificateError::PartMismatch(*j));
            }
        }
        Ok(())
    }

    /// The satisfying assignment: `true` exactly on the chosen variables.
    pub fn assignment(&self, n: usize) -> Vec<bool> {
        let mut a = vec![false; n];
        for &j in &self.chosen {
            a[j] = true;
        }
        a
    }
}

/// Pairwise disjoint blocks covering every point.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParallelClass {
    /// Block indices, ascending.
    pub blocks: Vec<usize>,
}

impl ParallelClass {
    pub fn verify(&self, s: &IncidenceStructure) -> std::result::Result<(), CertificateError> {
        check_partition(s, &self.blocks)
    }
}

impl From<XsatSolution> for ParallelClass {
    fn from(sol: XsatSolution) -> Self {
        ParallelClass { blocks: sol.chosen }
    }
}

/// A partition of all blocks into parallel classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolution {
    pub classes: Vec<ParallelClass>,
}

impl Resolution {
    pub fn verify(&self, s: &IncidenceStructure) -> std::result::Result<(), CertificateError> {
        let mut used = vec![false; s.cols()];
        for class in &self.classes {
            class.verify(s)?;
            for &j in &class.blocks {
                if std::mem::replace(&mut used[j], true) {
                    return Err(CertificateError::RepeatedColumn(j));
                }
            }
        }
        match used.iter().position(|u| !u) {
            Some(j) => Err(CertificateError::ColumnUnused(j)),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Resolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (c, class) in self.classes.iter().enumerate() {
            let blocks: Vec<String> = class.blocks.iter().map(|b| (b + 1).to_string()).collect();
            writeln!(f, "class {}: {}", c + 1, blocks.join(" "))?;
        }
        Ok(())
    }
}

enum Halt {
    Done,
    NodeLimit,
}

type Flow = ControlFlow<Halt>;

struct Engine<'a> {
    s: &'a IncidenceStructure,
    node_limit: Option<u64>,
    choice: ChoicePolicy,
    rng: Option<ChaCha8Rng>,
    stats: SearchStats,
    chosen: Vec<usize>,
}

impl<'a> Engine<'a> {
    fn new(s: &'a IncidenceStructure, cfg: &SearchConfig) -> Self {
        Engine {
            s,
            node_limit: cfg.node_limit,
            choice: cfg.choice,
            rng: cfg.seed.map(ChaCha8Rng::seed_from_u64),
            stats: SearchStats::default(),
            chosen: Vec::new(),
        }
    }

    fn all_rows(&self) -> FixedBitSet {
        let mut b = FixedBitSet::with_capacity(self.s.rows());
        b.insert_range(..);
        b
    }

    fn all_cols(&self) -> FixedBitSet {
        let mut b = FixedBitSet::with_capacity(self.s.cols());
        b.insert_range(..);
        b
    }

    /// Columns in `available` that stay compatible after taking column `j`.
    fn without_conflicts(&self, available: &FixedBitSet, j: usize) -> FixedBitSet {
        let mut a = available.clone();
        for &i in self.s.col(j) {
            a.difference_with(self.s.row_bits(i));
        }
        a
    }

    /// Searches exact covers of `uncovered` using columns of `available`.
    ///
    /// `available` must only hold columns disjoint from the covered rows.
    fn cover(
        &mut self,
        uncovered: &FixedBitSet,
        available: &FixedBitSet,
        on_solution: &mut dyn FnMut(&mut Self) -> Flow,
    ) -> Flow {
        self.stats.nodes_expanded += 1;
        if self
            .node_limit
            .is_some_and(|lim| self.stats.nodes_expanded > lim)
        {
            self.stats.limit_hit = true;
            return ControlFlow::Break(Halt::NodeLimit);
        }
        let Some(row) = self.choose_row(uncovered, available) else {
            return on_solution(self);
        };
        for &j in self.s.row(row) {
            if !available.contains(j) {
                continue;
            }
            let mut rest = uncovered.clone();
            rest.difference_with(self.s.col_bits(j));
            let compatible = self.without_conflicts(available, j);
            self.chosen.push(j);
            let flow = self.cover(&rest, &compatible, on_solution);
            self.chosen.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }

    fn choose_row(&mut self, uncovered: &FixedBitSet, available: &FixedBitSet) -> Option<usize> {
        let first = uncovered.minimum()?;
        if self.choice == ChoicePolicy::FirstIndex {
            return Some(first);
        }
        let mut best = first;
        let mut best_count = usize::MAX;
        let mut ties = 0u32;
        for i in uncovered.ones() {
            let count = self.s.row_bits(i).intersection_count(available);
            if count < best_count {
                best = i;
                best_count = count;
                ties = 1;
                if count == 0 {
                    break;
                }
            } else if count == best_count {
                ties += 1;
                if let Some(rng) = self.rng.as_mut() {
                    if rng.gen_range(0..ties) == 0 {
                        best = i;
                    }
                }
            }
        }
        Some(best)
    }
}

fn verified(s: &IncidenceStructure, sol: XsatSolution) -> XsatSolution {
    if let Err(e) = sol.verify(s) {
        panic!(
            "exact-cover search produced an invalid solution {:?}: {e}",
            sol.chosen
        );
    }
    sol
}

fn search_solutions(
    s: &IncidenceStructure,
    cfg: &SearchConfig,
    max: Option<usize>,
) -> (Vec<XsatSolution>, SearchStats) {
    let mut found: Vec<Vec<usize>> = Vec::new();
    if s.has_empty_row() {
        return (Vec::new(), SearchStats::default());
    }
    let mut engine = Engine::new(s, cfg);
    let (rows, cols) = (engine.all_rows(), engine.all_cols());
    let _ = engine.cover(&rows, &cols, &mut |eng| {
        found.push(eng.chosen.clone());
        eng.stats.solutions_found += 1;
        if max.is_some_and(|max| found.len() >= max) {
            ControlFlow::Break(Halt::Done)
        } else {
            ControlFlow::Continue(())
        }
    });
    let mut solutions: Vec<XsatSolution> = found
        .into_iter()
        .map(|chosen| verified(s, XsatSolution::new(s, chosen)))
        .collect();
    solutions.sort();
    (solutions, engine.stats)
}

/// Finds one XSAT solution, or shows that none exists within the limits.
pub fn find_xsat(f: &FormulaView, cfg: &SearchConfig) -> SearchOutcome<XsatSolution> {
    let (solutions, stats) = search_solutions(f.structure(), cfg, Some(1));
    SearchOutcome {
        result: solutions.into_iter().next(),
        stats,
    }
}

/// Enumerates XSAT solutions up to `cfg.solution_limit`, sorted
/// lexicographically by chosen columns.
pub fn enumerate_xsat(f: &FormulaView, cfg: &SearchConfig) -> (Vec<XsatSolution>, SearchStats) {
    let (solutions, mut stats) = search_solutions(f.structure(), cfg, cfg.solution_limit);
    if cfg.solution_limit.is_some_and(|max| solutions.len() >= max) {
        stats.limit_hit = true;
    }
    (solutions, stats)
}

pub fn find_parallel_class(d: &DesignView, cfg: &SearchConfig) -> SearchOutcome<ParallelClass> {
    let outcome = find_xsat(&FormulaView::new(d.shared().clone()), cfg);
    SearchOutcome {
        result: outcome.result.map(ParallelClass::from),
        stats: outcome.stats,
    }
}

/// Partitions all blocks into parallel classes.
///
/// Each level searches for a parallel class among the unused blocks that
/// contains the lowest-indexed unused block, then recurses on the rest.
pub fn find_resolution(d: &DesignView, cfg: &SearchConfig) -> SearchOutcome<Resolution> {
    let s = d.structure();
    let mut engine = Engine::new(s, cfg);
    let mut classes = Vec::new();
    let unused = engine.all_cols();
    let flow = if s.has_empty_row() && s.cols() > 0 {
        ControlFlow::Continue(())
    } else {
        resolve_from(&mut engine, &unused, &mut classes)
    };
    let mut stats = engine.stats;
    let result = match flow {
        ControlFlow::Break(Halt::Done) => {
            let resolution = Resolution {
                classes: classes
                    .into_iter()
                    .map(|blocks| ParallelClass { blocks })
                    .collect(),
            };
            if let Err(e) = resolution.verify(s) {
                panic!("resolution search produced an invalid resolution: {e}");
            }
            stats.solutions_found = 1;
            Some(resolution)
        }
        _ => None,
    };
    SearchOutcome { result, stats }
}

fn resolve_from(engine: &mut Engine, unused: &FixedBitSet, classes: &mut Vec<Vec<usize>>) -> Flow {
    let Some(forced) = unused.minimum() else {
        return ControlFlow::Break(Halt::Done);
    };
    let mut uncovered = engine.all_rows();
    uncovered.difference_with(engine.s.col_bits(forced));
    let available = engine.without_conflicts(unused, forced);
    let outer = std::mem::replace(&mut engine.chosen, vec![forced]);
    let flow = engine.cover(&uncovered, &available, &mut |eng| {
        let mut class = eng.chosen.clone();
        class.sort_unstable();
        let mut rest = unused.clone();
        for &j in &class {
            rest.set(j, false);
        }
        classes.push(class);
        let inner = std::mem::take(&mut eng.chosen);
        let flow = resolve_from(eng, &rest, classes);
        eng.chosen = inner;
        if flow.is_continue() {
            classes.pop();
        }
        flow
    });
    engine.chosen = outer;
    flow
}

/// Per-variable counts of independent partners (variables sharing no clause).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndependenceReport {
    pub per_column: Vec<usize>,
    /// Closed-form count, present for exact linear regular uniform inputs.
    pub expected: Option<IndependentCount>,
    /// Every count equals the closed form (and both closed forms agree).
    pub consistent: Option<bool>,
}

pub fn independent_pairs(f: &FormulaView) -> IndependenceReport {
    let s = f.structure();
    let per_column: Vec<usize> = (0..s.cols())
        .map(|j| {
            let col = s.col_bits(j);
            (0..s.cols())
                .filter(|&o| o != j && col.is_disjoint(s.col_bits(o)))
                .count()
        })
        .collect();
    let class = classify(s);
    let expected = match (class.is_exact_linear, class.regular_l, class.uniform_k) {
        (true, Some(l), Some(k)) => Some(independent_count(s.cols() as u64, l as u64, k as u64)),
        _ => None,
    };
    let consistent = expected.map(|e| e.agrees() && per_column.iter().all(|&c| c as i64 == e.v));
    IndependenceReport {
        per_column,
        expected,
        consistent,
    }
}

/// Exhaustive row-driven enumeration used to certify the exact-cover engine.
///
/// Takes the lowest uncovered row and branches over every column containing
/// it that avoids the covered rows. Returns at most `limit` solutions in
/// canonical order.
pub fn brute_force_xsat(f: &FormulaView, limit: usize) -> Result<Vec<XsatSolution>> {
    let s = f.structure();
    let m = s.rows();
    if m > ORACLE_MAX_ROWS {
        return Err(Error::InstanceTooLarge {
            m,
            max: ORACLE_MAX_ROWS,
        });
    }
    let masks: Vec<u32> = s
        .col_supports()
        .iter()
        .map(|rows| rows.iter().fold(0u32, |acc, &i| acc | 1 << i))
        .collect();
    let full: u32 = if m == 0 { 0 } else { u32::MAX >> (32 - m) };

    fn dfs(
        masks: &[u32],
        full: u32,
        covered: u32,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if covered == full {
            out.push(chosen.clone());
            return;
        }
        let row = (!covered & full).trailing_zeros();
        for (j, &mask) in masks.iter().enumerate() {
            if mask >> row & 1 == 1 && mask & covered == 0 {
                chosen.push(j);
                dfs(masks, full, covered | mask, chosen, out, limit);
                chosen.pop();
            }
        }
    }

    let mut out = Vec::new();
    dfs(&masks, full, 0, &mut Vec::new(), &mut out, limit);
    let mut solutions: Vec<XsatSolution> = out
        .into_iter()
        .map(|chosen| verified(s, XsatSolution::new(s, chosen)))
        .collect();
    solutions.sort();
    Ok(solutions)
}
