//! Test corpus: catalog designs, Steiner triple systems, random partial designs.
//!
//! Rows are points and columns are blocks in every generated structure.
//! Nothing here is trusted: the tests re-check pair coverage on every output.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::structure::{IncidenceStructure, Simplicity};

/// Names accepted by [`catalog`].
pub const CATALOG_NAMES: [&str; 5] = ["fano", "ag2_3", "pg2_3", "kirkman_15", "complete_triangle"];

/// Lines of PG(3,2) on points 1..=15, grouped into the seven parallel classes
/// of a Kirkman schoolgirl arrangement (five triples per class).
const KIRKMAN_15: [[usize; 3]; 35] = [
    [1, 2, 3],
    [4, 8, 12],
    [5, 10, 15],
    [6, 11, 13],
    [7, 9, 14],
    [1, 4, 5],
    [2, 8, 10],
    [3, 13, 14],
    [6, 9, 15],
    [7, 11, 12],
    [1, 6, 7],
    [2, 9, 11],
    [3, 12, 15],
    [4, 10, 14],
    [5, 8, 13],
    [1, 8, 9],
    [2, 12, 14],
    [3, 5, 6],
    [4, 11, 15],
    [7, 10, 13],
    [1, 10, 11],
    [2, 13, 15],
    [3, 4, 7],
    [5, 9, 12],
    [6, 8, 14],
    [1, 12, 13],
    [2, 4, 6],
    [3, 9, 10],
    [5, 11, 14],
    [7, 8, 15],
    [1, 14, 15],
    [2, 5, 7],
    [3, 8, 11],
    [4, 9, 13],
    [6, 10, 12],
];

/// What to generate; see [`GeneratorSpec::generate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorSpec {
    Catalog(String),
    /// Bose construction for `m ≡ 3 (mod 6)`, Skolem for `m ≡ 1 (mod 6)`.
    Sts(usize),
    RandomPartial {
        m: usize,
        l: usize,
        target_n: usize,
        seed: u64,
    },
}

impl GeneratorSpec {
    pub fn generate(&self) -> Result<IncidenceStructure> {
        match self {
            GeneratorSpec::Catalog(name) => catalog(name),
            GeneratorSpec::Sts(m) => sts(*m),
            GeneratorSpec::RandomPartial {
                m,
                l,
                target_n,
                seed,
            } => random_partial(*m, *l, *target_n, *seed),
        }
    }
}

fn design(m: usize, blocks: &[Vec<usize>]) -> Result<IncidenceStructure> {
    IncidenceStructure::from_columns(blocks, m, Simplicity::Require)
}

fn cyclic(m: usize, base: &[usize]) -> Vec<Vec<usize>> {
    (0..m)
        .map(|shift| base.iter().map(|&x| (x + shift) % m).collect())
        .collect()
}

pub fn catalog(name: &str) -> Result<IncidenceStructure> {
    match name {
        // difference set {0,1,3} mod 7
        "fano" => design(7, &cyclic(7, &[0, 1, 3])),
        "ag2_3" => design(9, &affine_plane_3()),
        // difference set {0,1,3,9} mod 13
        "pg2_3" => design(13, &cyclic(13, &[0, 1, 3, 9])),
        "kirkman_15" => {
            let blocks: Vec<Vec<usize>> = KIRKMAN_15
                .iter()
                .map(|b| b.iter().map(|p| p - 1).collect())
                .collect();
            design(15, &blocks)
        }
        "complete_triangle" => design(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]),
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

/// Lines of the affine plane over Z_3, point `(x, y)` numbered `3x + y`.
fn affine_plane_3() -> Vec<Vec<usize>> {
    let mut lines = Vec::with_capacity(12);
    for (dx, dy) in [(0, 1), (1, 0), (1, 1), (1, 2)] {
        let mut seen = [false; 9];
        for start in 0..9 {
            if seen[start] {
                continue;
            }
            let (x, y) = (start / 3, start % 3);
            let line: Vec<usize> = (0..3)
                .map(|t| 3 * ((x + t * dx) % 3) + (y + t * dy) % 3)
                .collect();
            for &p in &line {
                seen[p] = true;
            }
            lines.push(line);
        }
    }
    lines
}

/// Steiner triple system of any admissible order `m ≥ 3`.
pub fn sts(m: usize) -> Result<IncidenceStructure> {
    match m % 6 {
        3 => bose_sts(m),
        1 => skolem_sts(m),
        _ => Err(Error::BadResidue {
            m,
            expected: "1 or 3 mod 6",
        }),
    }
}

/// Bose construction over Z_v, `v = m / 3` odd.
///
/// Points are `(x, i)` with `x ∈ Z_v`, `i ∈ Z_3`, numbered `3x + i`. Uses the
/// idempotent commutative quasigroup `x ∘ y = (x + y) / 2 mod v`.
pub fn bose_sts(m: usize) -> Result<IncidenceStructure> {
    if m % 6 != 3 {
        return Err(Error::BadResidue {
            m,
            expected: "3 mod 6",
        });
    }
    let v = m / 3;
    let half = v.div_ceil(2);
    let op = |x: usize, y: usize| (x + y) * half % v;
    let pt = |x: usize, i: usize| 3 * x + i % 3;
    let mut blocks = Vec::with_capacity(m * (m - 1) / 6);
    for x in 0..v {
        blocks.push(vec![pt(x, 0), pt(x, 1), pt(x, 2)]);
    }
    for x in 0..v {
        for y in x + 1..v {
            for i in 0..3 {
                blocks.push(vec![pt(x, i), pt(y, i), pt(op(x, y), i + 1)]);
            }
        }
    }
    design(m, &blocks)
}

/// Skolem construction, `m = 6t + 1` with `t ≥ 1`.
///
/// Points are `∞` (numbered `m − 1`) and `(x, i)` with `x ∈ Z_2t`, `i ∈ Z_3`,
/// numbered `3x + i`. Uses the half-idempotent commutative quasigroup on Z_2t
/// obtained by relabelling `x + y`.
pub fn skolem_sts(m: usize) -> Result<IncidenceStructure> {
    if m % 6 != 1 {
        return Err(Error::BadResidue {
            m,
            expected: "1 mod 6",
        });
    }
    if m < 7 {
        return Err(Error::DegenerateParams(format!("STS({m}) has no blocks")));
    }
    let t = (m - 1) / 6;
    let order = 2 * t;
    let op = |x: usize, y: usize| {
        let s = (x + y) % order;
        if s.is_multiple_of(2) {
            s / 2
        } else {
            t + (s - 1) / 2
        }
    };
    let pt = |x: usize, i: usize| 3 * x + i % 3;
    let inf = m - 1;
    let mut blocks = Vec::with_capacity(m * (m - 1) / 6);
    for x in 0..t {
        blocks.push(vec![pt(x, 0), pt(x, 1), pt(x, 2)]);
        for i in 0..3 {
            blocks.push(vec![inf, pt(x + t, i), pt(x, i + 1)]);
        }
    }
    for x in 0..order {
        for y in x + 1..order {
            for i in 0..3 {
                blocks.push(vec![pt(x, i), pt(y, i), pt(op(x, y), i + 1)]);
            }
        }
    }
    design(m, &blocks)
}

/// Greedy random partial `(m, l, 1)` design.
///
/// Samples `l`-subsets of points and keeps those whose pairs are all still
/// uncovered. Stops at `target_n` blocks or after `50·m` consecutive
/// rejections, so the block count may fall short of `target_n`.
pub fn random_partial(
    m: usize,
    l: usize,
    target_n: usize,
    seed: u64,
) -> Result<IncidenceStructure> {
    if l < 2 {
        return Err(Error::DegenerateParams(format!(
            "block size l = {l} must be at least 2"
        )));
    }
    if m < l {
        return Err(Error::DegenerateParams(format!(
            "point count m = {m} is smaller than block size l = {l}"
        )));
    }
    if target_n == 0 {
        return Err(Error::DegenerateParams(
            "target block count must be positive".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut covered = vec![false; m * m];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut failures = 0;
    while blocks.len() < target_n && failures < 50 * m {
        let mut block = sample(&mut rng, m, l).into_vec();
        block.sort_unstable();
        let fresh = block
            .iter()
            .enumerate()
            .all(|(a, &p)| block[a + 1..].iter().all(|&q| !covered[p * m + q]));
        if !fresh {
            failures += 1;
            continue;
        }
        failures = 0;
        for (a, &p) in block.iter().enumerate() {
            for &q in &block[a + 1..] {
                covered[p * m + q] = true;
            }
        }
        blocks.push(block);
    }
    design(m, &blocks)
}
