//! Measured class membership and the formula/design conversions.

use std::collections::BTreeMap;

use num_rational::Rational64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::DesignParams;
use crate::structure::{uniform, DesignView, FormulaView, IncidenceStructure};

/// Properties of an incidence structure, all measured directly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureClass {
    pub rows: usize,
    pub cols: usize,
    /// Column sum -> number of columns with that sum.
    pub occurrence_profile: BTreeMap<usize, usize>,
    /// Row sum -> number of rows with that sum.
    pub width_profile: BTreeMap<usize, usize>,
    /// Common column sum, if any.
    pub regular_l: Option<usize>,
    /// Common row sum, if any.
    pub uniform_k: Option<usize>,
    /// Largest number of columns shared by two distinct rows.
    pub lambda_max: usize,
    /// Every pair of distinct rows shares exactly `lambda_max` columns.
    pub lambda_exact: bool,
    pub is_linear: bool,
    pub is_exact_linear: bool,
}

fn profile(values: impl Iterator<Item = usize>) -> BTreeMap<usize, usize> {
    let mut p = BTreeMap::new();
    for v in values {
        *p.entry(v).or_insert(0) += 1;
    }
    p
}

pub fn classify(s: &IncidenceStructure) -> StructureClass {
    let (m, n) = (s.rows(), s.cols());
    let mut lambda_max = 0;
    let mut lambda_min = usize::MAX;
    for i in 0..m {
        let row = s.row_bits(i);
        for r in i + 1..m {
            let meet = row.intersection_count(s.row_bits(r));
            lambda_max = lambda_max.max(meet);
            lambda_min = lambda_min.min(meet);
        }
    }
    let lambda_exact = m < 2 || lambda_min == lambda_max;
    StructureClass {
        rows: m,
        cols: n,
        occurrence_profile: profile((0..n).map(|j| s.col_sum(j))),
        width_profile: profile((0..m).map(|i| s.row_sum(i))),
        regular_l: uniform((0..n).map(|j| s.col_sum(j))),
        uniform_k: uniform((0..m).map(|i| s.row_sum(i))),
        lambda_max,
        lambda_exact,
        is_linear: lambda_max <= 1,
        is_exact_linear: lambda_exact && lambda_max == 1,
    }
}

/// Reads an `l`-regular formula as a partial `(m, l, λ)` design.
///
/// `lambda` defaults to the measured maximum pairwise meet; an explicit bound
/// is validated against it. The returned view shares the formula's matrix.
pub fn formula_to_design(
    f: &FormulaView,
    lambda: Option<usize>,
) -> Result<(DesignView, DesignParams)> {
    let class = classify(f.structure());
    let l = class.regular_l.ok_or(Error::NotRegular)?;
    let m = class.rows;
    if l >= m {
        return Err(Error::NotIncomplete { m, l });
    }
    let lambda = match lambda {
        Some(bound) if class.lambda_max > bound => {
            return Err(Error::LambdaExceeded {
                measured: class.lambda_max,
                bound,
            })
        }
        Some(bound) => bound,
        None => class.lambda_max,
    };
    let mut params = DesignParams::new(m as u64, l as u64, lambda as u64)?;
    params.balanced = class.lambda_exact && class.lambda_max == lambda;
    Ok((DesignView::new(f.shared().clone()), params))
}

/// Reads a design with uniform block size as a regular formula over the same
/// matrix: clause `i` is the set of blocks through point `i`.
pub fn design_to_formula(d: &DesignView) -> Result<FormulaView> {
    if d.block_count() > 0 && d.uniform_block_size().is_none() {
        return Err(Error::NonUniformBlocks);
    }
    Ok(FormulaView::new(d.shared().clone()))
}

/// Outcome of checking that regularity forces uniformity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Lemma1Verdict {
    /// All rows have width `k`, and `k(l−1) = λ(m−1)`.
    Holds { k: usize },
    NonUniform {
        rows: (usize, usize),
        widths: (usize, usize),
    },
    WrongReplication {
        k: usize,
        #[serde(serialize_with = "ser_ratio")]
        expected: Rational64,
    },
}

fn ser_ratio<S: serde::Serializer>(r: &Rational64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// Checks uniformity of an exact-λ, `l`-regular structure (`l ≥ 2`).
///
/// A verdict other than [`Lemma1Verdict::Holds`] means the measurement code is
/// wrong, not the mathematics.
pub fn verify_lemma1(s: &IncidenceStructure) -> Result<Lemma1Verdict> {
    let class = classify(s);
    let l = match class.regular_l {
        Some(l) if l >= 2 => l,
        _ => {
            return Err(Error::PreconditionNotMet(
                "structure must be l-regular with l >= 2".into(),
            ))
        }
    };
    if !class.lambda_exact {
        return Err(Error::PreconditionNotMet(
            "row pairs must meet in exactly lambda columns".into(),
        ));
    }
    let m = s.rows();
    let expected = Rational64::new((class.lambda_max * (m - 1)) as i64, (l - 1) as i64);
    match class.uniform_k {
        Some(k) if Rational64::from_integer(k as i64) == expected => Ok(Lemma1Verdict::Holds { k }),
        Some(k) => Ok(Lemma1Verdict::WrongReplication { k, expected }),
        None => {
            let w0 = s.row_sum(0);
            let i = (1..m).find(|&i| s.row_sum(i) != w0).expect("rows differ");
            Ok(Lemma1Verdict::NonUniform {
                rows: (0, i),
                widths: (w0, s.row_sum(i)),
            })
        }
    }
}
