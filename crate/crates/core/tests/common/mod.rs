//! Independent oracles used by the integration tests.
//!
//! Everything here works from the dense 0/1 matrix only and shares no code
//! path with the library's bitset machinery or exact-cover engine.

#![allow(dead_code)]

use xsat_design::generators::{catalog, random_partial, sts, CATALOG_NAMES};
use xsat_design::IncidenceStructure;

pub type Dense = Vec<Vec<u8>>;

pub fn dense(s: &IncidenceStructure) -> Dense {
    s.to_dense()
}

/// Number of columns shared by rows `a` and `b`.
pub fn meet(d: &Dense, a: usize, b: usize) -> usize {
    d[a].iter()
        .zip(&d[b])
        .filter(|(x, y)| **x == 1 && **y == 1)
        .count()
}

/// Largest pairwise row meet, by a triple loop.
pub fn naive_lambda_max(d: &Dense) -> usize {
    let mut best = 0;
    for a in 0..d.len() {
        for b in a + 1..d.len() {
            best = best.max(meet(d, a, b));
        }
    }
    best
}

/// Minimum and maximum number of blocks through a pair of distinct points.
pub fn pair_coverage_range(d: &Dense) -> (usize, usize) {
    let mut lo = usize::MAX;
    let mut hi = 0;
    for a in 0..d.len() {
        for b in a + 1..d.len() {
            let c = meet(d, a, b);
            lo = lo.min(c);
            hi = hi.max(c);
        }
    }
    (lo, hi)
}

/// True if every pair of distinct points lies in exactly one block.
pub fn is_steiner(d: &Dense) -> bool {
    pair_coverage_range(d) == (1, 1)
}

pub fn row_sums(d: &Dense) -> Vec<usize> {
    d.iter()
        .map(|r| r.iter().map(|&x| x as usize).sum())
        .collect()
}

pub fn col_sums(d: &Dense) -> Vec<usize> {
    let n = d.first().map_or(0, Vec::len);
    (0..n)
        .map(|j| d.iter().map(|r| r[j] as usize).sum())
        .collect()
}

/// All column subsets whose supports partition the rows, by enumerating
/// every subset. Sorted lexicographically.
pub fn subset_xsat(d: &Dense) -> Vec<Vec<usize>> {
    let m = d.len();
    let n = d.first().map_or(0, Vec::len);
    assert!(n <= 22, "subset enumeration over {n} columns is too slow");
    let mut out = Vec::new();
    for mask in 0u64..1 << n {
        let chosen: Vec<usize> = (0..n).filter(|j| mask >> j & 1 == 1).collect();
        let exact = (0..m).all(|i| chosen.iter().filter(|&&j| d[i][j] == 1).count() == 1);
        if exact {
            out.push(chosen);
        }
    }
    out.sort();
    out
}

/// Number of clauses sharing no variable with each clause, summed.
pub fn total_disconnection(d: &Dense) -> usize {
    let m = d.len();
    (0..m)
        .map(|a| (0..m).filter(|&b| b != a && meet(d, a, b) == 0).count())
        .sum()
}

/// Columns with disjoint supports from column `j`.
pub fn independent_partners(d: &Dense, j: usize) -> usize {
    let n = d.first().map_or(0, Vec::len);
    (0..n)
        .filter(|&o| o != j && d.iter().all(|r| !(r[j] == 1 && r[o] == 1)))
        .count()
}

pub const STS_ORDERS: [usize; 6] = [7, 9, 13, 15, 19, 21];

/// Catalog designs, STS of orders 7..=21, and seeded random partial designs.
pub fn corpus() -> Vec<(String, IncidenceStructure)> {
    let mut out = Vec::new();
    for name in CATALOG_NAMES {
        out.push((name.to_string(), catalog(name).unwrap()));
    }
    for m in STS_ORDERS {
        out.push((format!("sts{m}"), sts(m).unwrap()));
    }
    out.extend(random_corpus(40));
    out
}

/// Random partial designs with `m ≤ 28`, mixing sparse and near-maximal fills.
pub fn random_corpus(count: u64) -> Vec<(String, IncidenceStructure)> {
    (0..count)
        .map(|seed| {
            let m = 4 + (seed as usize * 7) % 25;
            let l = 2 + (seed as usize) % 3;
            let l = l.min(m);
            let target = if seed % 2 == 0 { m } else { m * m };
            let s = random_partial(m, l, target, seed).unwrap();
            (format!("random({m},{l},{target},{seed})"), s)
        })
        .collect()
}
