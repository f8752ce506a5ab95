//! Incidence structures and the two views over them.
//!
//! A single 0/1 matrix with `m` rows and `n` columns is read two ways:
//!
//! * as a monotone CNF formula, rows are clauses and columns are variables;
//! * as a block design, rows are points and columns are blocks.
//!
//! So a clause width in the formula is a replication number in the design,
//! and a variable occurrence is a block size. Both views hold the same
//! [`Arc`]'d matrix; converting between them never copies it.
//!
//! Indices are 0-based everywhere in this crate. The file formats in
//! [`crate::io`] are 1-based.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use num_rational::Rational64;

use crate::error::{Error, Result};

/// Whether repeated columns (identical blocks) are accepted at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Simplicity {
    /// Reject two columns with the same support.
    #[default]
    Require,
    /// Accept repeated columns, as partial designs may carry them.
    AllowRepeated,
}

/// Immutable 0/1 incidence matrix, bit-packed per row and per column.
#[derive(Clone, PartialEq, Eq)]
pub struct IncidenceStructure {
    m: usize,
    n: usize,
    rows: Vec<FixedBitSet>,
    cols: Vec<FixedBitSet>,
    row_support: Vec<Vec<usize>>,
    col_support: Vec<Vec<usize>>,
    simple: bool,
    row_labels: Option<Vec<String>>,
    col_labels: Option<Vec<String>>,
}

impl IncidenceStructure {
    /// The canonical empty structure (no rows, no columns).
    pub fn empty() -> Self {
        IncidenceStructure {
            m: 0,
            n: 0,
            rows: Vec::new(),
            cols: Vec::new(),
            row_support: Vec::new(),
            col_support: Vec::new(),
            simple: true,
            row_labels: None,
            col_labels: None,
        }
    }

    /// Builds a simple structure from row supports over `n` columns.
    pub fn from_rows(rows: &[Vec<usize>], n: usize) -> Result<Self> {
        Self::build(rows, n, Simplicity::Require)
    }

    /// Builds a structure from row supports: entry `(i, j)` is 1 iff
    /// `rows[i]` contains `j`.
    ///
    /// Every column must occur in some row. Rows may be empty.
    pub fn build(rows: &[Vec<usize>], n: usize, simplicity: Simplicity) -> Result<Self> {
        let m = rows.len();
        check_shape(m, n)?;
        let supports = normalize_sets(rows, n)?;
        let mut cols = vec![Vec::new(); n];
        for (i, row) in supports.iter().enumerate() {
            for &j in row {
                cols[j].push(i);
            }
        }
        Self::assemble(m, n, supports, cols, simplicity)
    }

    /// Builds a structure from column supports (blocks) over `m` rows (points).
    pub fn from_columns(cols: &[Vec<usize>], m: usize, simplicity: Simplicity) -> Result<Self> {
        let n = cols.len();
        check_shape(m, n)?;
        let supports = normalize_sets(cols, m)?;
        let mut rows = vec![Vec::new(); m];
        for (j, col) in supports.iter().enumerate() {
            for &i in col {
                rows[i].push(j);
            }
        }
        Self::assemble(m, n, rows, supports, simplicity)
    }

    fn assemble(
        m: usize,
        n: usize,
        row_support: Vec<Vec<usize>>,
        col_support: Vec<Vec<usize>>,
        simplicity: Simplicity,
    ) -> Result<Self> {
        if let Some(col) = col_support.iter().position(Vec::is_empty) {
            return Err(Error::EmptyColumnSupport { col });
        }
        let duplicate = first_duplicate(&col_support);
        if let (Simplicity::Require, Some((first, second))) = (simplicity, duplicate) {
            return Err(Error::DuplicateColumn { first, second });
        }
        let rows = row_support.iter().map(|r| bitset(n, r)).collect();
        let cols = col_support.iter().map(|c| bitset(m, c)).collect();
        Ok(IncidenceStructure {
            m,
            n,
            rows,
            cols,
            row_support,
            col_support,
            simple: duplicate.is_none(),
            row_labels: None,
            col_labels: None,
        })
    }

    /// Attaches display names for the rows.
    pub fn with_row_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.m {
            return Err(Error::LabelCount {
                expected: self.m,
                got: labels.len(),
            });
        }
        self.row_labels = Some(labels);
        Ok(self)
    }

    /// Attaches display names for the columns.
    pub fn with_col_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::LabelCount {
                expected: self.n,
                got: labels.len(),
            });
        }
        self.col_labels = Some(labels);
        Ok(self)
    }

    /// Swaps the roles of rows and columns.
    ///
    /// Fails if some row is empty, since it would become a column without
    /// support.
    pub fn transpose(&self) -> Result<Self> {
        let mut t = Self::assemble(
            self.n,
            self.m,
            self.col_support.clone(),
            self.row_support.clone(),
            Simplicity::AllowRepeated,
        )?;
        t.row_labels = self.col_labels.clone();
        t.col_labels = self.row_labels.clone();
        Ok(t)
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0 && self.n == 0
    }

    pub fn entry(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(j)
    }

    /// Sorted column indices of row `i`.
    pub fn row(&self, i: usize) -> &[usize] {
        &self.row_support[i]
    }

    /// Sorted row indices of column `j`.
    pub fn col(&self, j: usize) -> &[usize] {
        &self.col_support[j]
    }

    pub fn row_bits(&self, i: usize) -> &FixedBitSet {
        &self.rows[i]
    }

    pub fn col_bits(&self, j: usize) -> &FixedBitSet {
        &self.cols[j]
    }

    pub fn row_sum(&self, i: usize) -> usize {
        self.row_support[i].len()
    }

    pub fn col_sum(&self, j: usize) -> usize {
        self.col_support[j].len()
    }

    pub fn row_supports(&self) -> &[Vec<usize>] {
        &self.row_support
    }

    pub fn col_supports(&self) -> &[Vec<usize>] {
        &self.col_support
    }

    /// Number of 1-entries.
    pub fn ones(&self) -> usize {
        self.row_support.iter().map(Vec::len).sum()
    }

    /// True when no two columns have the same support.
    pub fn is_simple(&self) -> bool {
        self.simple
    }

    /// True when some row has no 1-entry.
    pub fn has_empty_row(&self) -> bool {
        self.row_support.iter().any(Vec::is_empty)
    }

    pub fn row_labels(&self) -> Option<&[String]> {
        self.row_labels.as_deref()
    }

    pub fn col_labels(&self) -> Option<&[String]> {
        self.col_labels.as_deref()
    }

    /// Dense 0/1 rows, mostly for display and tests.
    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        (0..self.m)
            .map(|i| (0..self.n).map(|j| self.entry(i, j) as u8).collect())
            .collect()
    }
}

impl fmt::Debug for IncidenceStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IncidenceStructure {}x{}", self.m, self.n)?;
        for i in 0..self.m {
            let line: String = (0..self.n)
                .map(|j| if self.entry(i, j) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

fn check_shape(m: usize, n: usize) -> Result<()> {
    if (m == 0) != (n == 0) {
        return Err(Error::DegenerateShape { m, n });
    }
    Ok(())
}

fn normalize_sets(sets: &[Vec<usize>], bound: usize) -> Result<Vec<Vec<usize>>> {
    sets.iter()
        .enumerate()
        .map(|(set, members)| {
            let mut sorted = members.clone();
            sorted.sort_unstable();
            for w in sorted.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::DuplicateIndex { set, index: w[0] });
                }
            }
            if let Some(&index) = sorted.last().filter(|&&x| x >= bound) {
                return Err(Error::IndexOutOfRange { set, index, bound });
            }
            Ok(sorted)
        })
        .collect()
}

fn first_duplicate(supports: &[Vec<usize>]) -> Option<(usize, usize)> {
    let mut seen: HashMap<&[usize], usize> = HashMap::with_capacity(supports.len());
    for (j, s) in supports.iter().enumerate() {
        if let Some(&first) = seen.get(s.as_slice()) {
            return Some((first, j));
        }
        seen.insert(s, j);
    }
    None
}

fn bitset(len: usize, members: &[usize]) -> FixedBitSet {
    let mut b = FixedBitSet::with_capacity(len);
    for &x in members {
        b.insert(x);
    }
    b
}

/// The formula reading of a structure: rows are clauses, columns variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaView {
    structure: Arc<IncidenceStructure>,
}

impl FormulaView {
    pub fn new(structure: impl Into<Arc<IncidenceStructure>>) -> Self {
        FormulaView {
            structure: structure.into(),
        }
    }

    pub fn structure(&self) -> &IncidenceStructure {
        &self.structure
    }

    pub fn shared(&self) -> &Arc<IncidenceStructure> {
        &self.structure
    }

    /// `m`, the number of clauses.
    pub fn clause_count(&self) -> usize {
        self.structure.rows()
    }

    /// `n`, the number of variables.
    pub fn var_count(&self) -> usize {
        self.structure.cols()
    }

    /// Variables of clause `i`.
    pub fn clause(&self, i: usize) -> &[usize] {
        self.structure.row(i)
    }

    /// The clauses containing variable `j` (its occurrence set).
    pub fn occurrences(&self, j: usize) -> &[usize] {
        self.structure.col(j)
    }

    pub fn var_occurrence(&self, j: usize) -> usize {
        self.structure.col_sum(j)
    }

    pub fn clause_width(&self, i: usize) -> usize {
        self.structure.row_sum(i)
    }

    /// Mean clause width; `None` for a formula without clauses.
    pub fn mean_width(&self) -> Option<Rational64> {
        let m = self.clause_count();
        (m > 0).then(|| Rational64::new(self.structure.ones() as i64, m as i64))
    }

    /// Number of other clauses sharing no variable with clause `i`.
    pub fn disconnected_from(&self, i: usize) -> usize {
        let s = &self.structure;
        let row = s.row_bits(i);
        (0..s.rows())
            .filter(|&r| r != i && row.is_disjoint(s.row_bits(r)))
            .count()
    }

    /// Mean over clauses of [`Self::disconnected_from`]; `None` without clauses.
    pub fn mean_disconnection(&self) -> Option<Rational64> {
        let m = self.clause_count();
        if m == 0 {
            return None;
        }
        let total: usize = (0..m).map(|i| self.disconnected_from(i)).sum();
        Some(Rational64::new(total as i64, m as i64))
    }
}

/// The design reading of a structure: rows are points, columns blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesignView {
    structure: Arc<IncidenceStructure>,
}

impl DesignView {
    pub fn new(structure: impl Into<Arc<IncidenceStructure>>) -> Self {
        DesignView {
            structure: structure.into(),
        }
    }

    pub fn structure(&self) -> &IncidenceStructure {
        &self.structure
    }

    pub fn shared(&self) -> &Arc<IncidenceStructure> {
        &self.structure
    }

    pub fn point_count(&self) -> usize {
        self.structure.rows()
    }

    pub fn block_count(&self) -> usize {
        self.structure.cols()
    }

    /// Points of block `j`.
    pub fn block(&self, j: usize) -> &[usize] {
        self.structure.col(j)
    }

    /// Blocks through point `i`.
    pub fn blocks_through(&self, i: usize) -> &[usize] {
        self.structure.row(i)
    }

    pub fn block_size(&self, j: usize) -> usize {
        self.structure.col_sum(j)
    }

    pub fn replication(&self, i: usize) -> usize {
        self.structure.row_sum(i)
    }

    /// The common block size, if all blocks have the same size.
    pub fn uniform_block_size(&self) -> Option<usize> {
        uniform((0..self.block_count()).map(|j| self.block_size(j)))
    }
}

pub(crate) fn uniform(mut values: impl Iterator<Item = usize>) -> Option<usize> {
    let first = values.next()?;
    values.all(|v| v == first).then_some(first)
}
