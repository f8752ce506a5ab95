//! Closed-form parameter laws and existence conditions for `(m, l, λ)` designs.
//!
//! All derived quantities are exact rationals. Integrality is reported as a
//! verdict and never obtained by truncation.

use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::structure::{uniform, FormulaView};

/// Three-valued verdict for conditions that are only known for some block sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    Holds,
    Fails,
    NotCovered,
}

impl Condition {
    fn from_bool(b: bool) -> Self {
        if b {
            Condition::Holds
        } else {
            Condition::Fails
        }
    }
}

fn ser_ratio<S: Serializer>(r: &Rational64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// `(m, l, λ)` with the replication `k` and block count `n` they force.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DesignParams {
    pub m: u64,
    pub l: u64,
    pub lambda: u64,
    #[serde(serialize_with = "ser_ratio")]
    pub k: Rational64,
    #[serde(serialize_with = "ser_ratio")]
    pub n: Rational64,
    /// `m / l` when integral.
    pub alpha: Option<u64>,
    /// Every pair of points meets in exactly `lambda` blocks (not just at most).
    pub balanced: bool,
}

impl DesignParams {
    pub fn new(m: u64, l: u64, lambda: u64) -> Result<Self> {
        let k = derive_k(m, l, lambda)?;
        let n = derive_n(m, l, k)?;
        Ok(DesignParams {
            m,
            l,
            lambda,
            k,
            n,
            alpha: m.is_multiple_of(l).then(|| m / l),
            balanced: true,
        })
    }

    pub fn k_integer(&self) -> Option<u64> {
        as_natural(self.k)
    }

    pub fn n_integer(&self) -> Option<u64> {
        as_natural(self.n)
    }

    /// Checks measured replication and block count against `λ(m−1) = k(l−1)`
    /// and `nl = mk`, returning the two verdicts in that order.
    pub fn laws_hold(&self, k: u64, n: u64) -> (bool, bool) {
        (
            self.lambda * (self.m - 1) == k * (self.l - 1),
            n * self.l == self.m * k,
        )
    }
}

fn as_natural(r: Rational64) -> Option<u64> {
    r.is_integer().then(|| r.to_integer().to_u64()).flatten()
}

/// Replication number from `λ(m−1) = k(l−1)`.
pub fn derive_k(m: u64, l: u64, lambda: u64) -> Result<Rational64> {
    if l < 2 {
        return Err(Error::DegenerateParams(format!(
            "block size l = {l} must be at least 2"
        )));
    }
    if m <= l {
        return Err(Error::DegenerateParams(format!(
            "point count m = {m} must exceed block size l = {l}"
        )));
    }
    if lambda < 1 {
        return Err(Error::DegenerateParams("lambda must be at least 1".into()));
    }
    Ok(Rational64::new((lambda * (m - 1)) as i64, (l - 1) as i64))
}

/// Block count from `nl = mk`.
pub fn derive_n(m: u64, l: u64, k: Rational64) -> Result<Rational64> {
    if l == 0 {
        return Err(Error::DegenerateParams(
            "block size l must be positive".into(),
        ));
    }
    Ok(k * Rational64::from_integer(m as i64) / Rational64::from_integer(l as i64))
}

/// `m ≡ 1` or `3 (mod 6)`, the existence condition for a Steiner triple system.
pub fn sts_condition(m: u64) -> bool {
    matches!(m % 6, 1 | 3)
}

/// `m ≡ l (mod l(l−1))`, the existence condition for a resolvable `(m, l, 1)`
/// design. Only asserted for `l ∈ {3, 4}`.
pub fn resolvable_condition(m: u64, l: u64, lambda: u64) -> Condition {
    if lambda == 1 && (l == 3 || l == 4) {
        Condition::from_bool(m % (l * (l - 1)) == l % (l * (l - 1)))
    } else {
        Condition::NotCovered
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibilityReport {
    pub params: DesignParams,
    pub k_integral: bool,
    pub n_integral: bool,
    /// Fisher's inequality `n ≥ m`.
    pub fisher_ok: bool,
    pub k_ge_l: bool,
    /// `m ≡ 0 (mod l)`, necessary for a parallel class (an XSAT solution).
    pub xsat_necessary: bool,
    pub resolvable_condition: Condition,
    pub sts_exists: Condition,
    /// All of the integrality and size conditions above hold.
    pub admissible: bool,
}

pub fn admissibility(m: u64, l: u64, lambda: u64) -> Result<AdmissibilityReport> {
    let params = DesignParams::new(m, l, lambda)?;
    let k_integral = params.k.is_integer();
    let n_integral = params.n.is_integer();
    let fisher_ok = params.n >= Rational64::from_integer(m as i64);
    let k_ge_l = params.k >= Rational64::from_integer(l as i64);
    let sts_exists = if l == 3 && lambda == 1 {
        Condition::from_bool(sts_condition(m))
    } else {
        Condition::NotCovered
    };
    Ok(AdmissibilityReport {
        k_integral,
        n_integral,
        fisher_ok,
        k_ge_l,
        xsat_necessary: m.is_multiple_of(l),
        resolvable_condition: resolvable_condition(m, l, lambda),
        sts_exists,
        admissible: k_integral && n_integral && fisher_ok && k_ge_l,
        params,
    })
}

/// Number of variables independent of a given one in an exact linear
/// `l`-regular `k`-uniform formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IndependentCount {
    /// `n − 1 − l(k − 1)`.
    pub v: i64,
    /// `(l − 1)(k − l)(k − 1) / l`, absent for `l = 0`.
    #[serde(serialize_with = "ser_opt_ratio")]
    pub closed_form: Option<Rational64>,
}

fn ser_opt_ratio<S: Serializer>(
    r: &Option<Rational64>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}

impl IndependentCount {
    pub fn agrees(&self) -> bool {
        self.closed_form == Some(Rational64::from_integer(self.v))
    }
}

pub fn independent_count(n: u64, l: u64, k: u64) -> IndependentCount {
    let (n, l, k) = (n as i64, l as i64, k as i64);
    let v = n - 1 - l * (k - 1);
    let closed_form = (l != 0).then(|| Rational64::new((l - 1) * (k - l) * (k - 1), l));
    IndependentCount { v, closed_form }
}

/// Measured values behind `m = 1 + k̄(l−1) + d̄` and `nl = mk̄`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MeanIdentityReport {
    pub m: u64,
    pub n: u64,
    pub l: u64,
    #[serde(serialize_with = "ser_ratio")]
    pub mean_width: Rational64,
    #[serde(serialize_with = "ser_ratio")]
    pub mean_disconnection: Rational64,
    pub clause_identity: bool,
    pub count_identity: bool,
}

impl MeanIdentityReport {
    pub fn passed(&self) -> bool {
        self.clause_identity && self.count_identity
    }
}

/// Verifies the mean-parameter identities of an `l`-regular linear formula.
///
/// Two clauses count as disconnected iff they share no variable.
pub fn mean_identity_check(f: &FormulaView) -> Result<MeanIdentityReport> {
    let s = f.structure();
    let l = uniform((0..s.cols()).map(|j| s.col_sum(j))).ok_or(Error::NotRegular)?;
    for i in 0..s.rows() {
        for r in i + 1..s.rows() {
            if s.row_bits(i).intersection_count(s.row_bits(r)) > 1 {
                return Err(Error::NotLinear(i, r));
            }
        }
    }
    // a regular structure has columns, hence rows
    let mean_width = f.mean_width().expect("regular structure has rows");
    let mean_disconnection = f.mean_disconnection().expect("regular structure has rows");
    let (m, n) = (s.rows() as i64, s.cols() as i64);
    let lr = Rational64::from_integer(l as i64);
    let one = Rational64::from_integer(1);
    let clause_identity =
        Rational64::from_integer(m) == one + mean_width * (lr - one) + mean_disconnection;
    let count_identity =
        (Rational64::from_integer(n) * lr - Rational64::from_integer(m) * mean_width).is_zero();
    Ok(MeanIdentityReport {
        m: m as u64,
        n: n as u64,
        l: l as u64,
        mean_width,
        mean_disconnection,
        clause_identity,
        count_identity,
    })
}
