//! Acceptance criteria. Run with `cargo test --test acceptance`; prints one
//! PASS/FAIL line per criterion and exits non-zero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use num_rational::Rational64;

use xsat_design::correspondence::{classify, design_to_formula, formula_to_design};
use xsat_design::generators::{catalog, random_partial, sts, CATALOG_NAMES};
use xsat_design::io::{read_design_with, read_dimacs, write_design, write_dimacs};
use xsat_design::params::{
    admissibility, independent_count, mean_identity_check, sts_condition, Condition, DesignParams,
};
use xsat_design::solver::{
    brute_force_xsat, enumerate_xsat, find_resolution, find_xsat, independent_pairs, Answer,
};
use xsat_design::{DesignView, FormulaView, IncidenceStructure, SearchConfig, Simplicity};

type Verdict = Result<String, String>;
type Check<'a> = Box<dyn Fn() -> Verdict + 'a>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

const RESOLUTION_BUDGET: Duration = Duration::from_secs(10);
const ORACLE_BUDGET: Duration = Duration::from_secs(60);
const RANDOM_INSTANCES: u64 = 120;

fn parameter_laws() -> Verdict {
    for m in STS_ORDERS {
        let s = sts(m).unwrap();
        let c = classify(&s);
        ensure!(
            c.lambda_exact && c.lambda_max == 1,
            "STS({m}) is not exact with lambda 1"
        );
        ensure!(c.regular_l == Some(3), "STS({m}) blocks are not triples");
        let k = c
            .uniform_k
            .ok_or(format!("STS({m}) has no uniform replication"))? as u64;
        let n = s.cols() as u64;
        let p = DesignParams::new(m as u64, 3, 1).unwrap();
        let (bd1, bd2) = p.laws_hold(k, n);
        ensure!(bd1 && bd2, "STS({m}): k={k}, n={n} violate the laws");
        ensure!(
            p.k_integer() == Some(k) && p.n_integer() == Some(n),
            "STS({m}) derived values differ"
        );
    }
    Ok(format!("orders {STS_ORDERS:?}"))
}

fn regularity_forces_uniformity(corpus: &[(String, IncidenceStructure)]) -> Verdict {
    let mut checked = 0;
    for (name, s) in corpus {
        let c = classify(s);
        if c.lambda_exact && c.lambda_max >= 1 && c.regular_l.is_some_and(|l| l >= 2) {
            ensure!(
                c.uniform_k.is_some(),
                "{name}: exact and regular but not uniform"
            );
            checked += 1;
        }
    }
    ensure!(
        checked >= CATALOG_NAMES.len() + STS_ORDERS.len(),
        "only {checked} exact regular structures"
    );
    Ok(format!("{checked} exact regular structures, 0 violations"))
}

fn empty_below_fisher() -> Verdict {
    let mut rejected = 0;
    let mut swept = 0;
    for l in 2u64..=6 {
        for m in l + 1..=60 {
            for lambda in 1..=3 {
                let a = admissibility(m, l, lambda).unwrap();
                swept += 1;
                if a.params.k < Rational64::from_integer(l as i64) {
                    ensure!(
                        !a.admissible && !a.k_ge_l && !a.fisher_ok,
                        "({m},{l},{lambda}) admitted with k < l"
                    );
                    rejected += 1;
                }
            }
        }
    }
    ensure!(rejected > 0, "sweep never produced k < l");
    Ok(format!(
        "{swept} parameter sets, {rejected} with k < l rejected"
    ))
}

fn steiner_existence() -> Verdict {
    for m in 3u64..=100 {
        let expected = m % 6 == 1 || m % 6 == 3;
        ensure!(sts_condition(m) == expected, "condition wrong at m={m}");
        if m > 3 {
            let a = admissibility(m, 3, 1).unwrap();
            let got = a.sts_exists == Condition::Holds;
            ensure!(got == expected, "sts_exists wrong at m={m}");
        }
    }
    let mut built = Vec::new();
    for m in (3..=21).filter(|&m| sts_condition(m as u64)) {
        let s = sts(m).map_err(|e| format!("STS({m}) failed: {e}"))?;
        ensure!(is_steiner(&dense(&s)), "STS({m}) fails pair coverage");
        ensure!(
            col_sums(&dense(&s)).iter().all(|&c| c == 3),
            "STS({m}) has a non-triple"
        );
        built.push(m);
    }
    Ok(format!(
        "m in 3..=100 checked; built and verified {built:?}"
    ))
}

fn unsatisfiable_triple_systems() -> Verdict {
    for m in [13, 7] {
        let f = FormulaView::new(sts(m).unwrap());
        let oracle = brute_force_xsat(&f, usize::MAX).unwrap();
        ensure!(oracle.is_empty(), "oracle found a solution for STS({m})");
        let out = find_xsat(&f, &SearchConfig::default());
        ensure!(
            out.answer() == Answer::NoneExists,
            "engine answer {:?} for STS({m})",
            out.answer()
        );
        let a = admissibility(m as u64, 3, 1).unwrap();
        ensure!(!a.xsat_necessary, "STS({m}) passes the necessary condition");
    }
    Ok("STS(13), STS(7) UNSAT under oracle and engine".into())
}

fn parallel_class_facts() -> Verdict {
    let fano = FormulaView::new(catalog("fano").unwrap());
    ensure!(
        find_xsat(&fano, &SearchConfig::default()).answer() == Answer::NoneExists,
        "Fano not UNSAT"
    );
    let ag = FormulaView::new(catalog("ag2_3").unwrap());
    let (sols, stats) = enumerate_xsat(&ag, &SearchConfig::default());
    ensure!(!stats.limit_hit, "limit hit on AG(2,3)");
    ensure!(sols.len() == 4, "AG(2,3) has {} solutions", sols.len());
    ensure!(
        brute_force_xsat(&ag, usize::MAX).unwrap() == sols,
        "AG(2,3) oracle mismatch"
    );
    Ok("Fano UNSAT; AG(2,3) 4 solutions = oracle".into())
}

fn resolvability() -> Verdict {
    let mut notes = Vec::new();
    for (name, classes, size) in [("ag2_3", 4, 3), ("kirkman_15", 7, 5)] {
        let d = DesignView::new(catalog(name).unwrap());
        let start = Instant::now();
        let out = find_resolution(&d, &SearchConfig::default());
        let elapsed = start.elapsed();
        ensure!(elapsed < RESOLUTION_BUDGET, "{name} took {elapsed:?}");
        let res = out.result.ok_or(format!("{name}: no resolution"))?;
        ensure!(
            res.classes.len() == classes,
            "{name}: {} classes",
            res.classes.len()
        );
        let mut used = vec![0usize; d.block_count()];
        for class in &res.classes {
            ensure!(
                class.blocks.len() == size,
                "{name}: class of size {}",
                class.blocks.len()
            );
            let mut hits = vec![0usize; d.point_count()];
            for &b in &class.blocks {
                used[b] += 1;
                for &p in d.block(b) {
                    hits[p] += 1;
                }
            }
            ensure!(
                hits.iter().all(|&h| h == 1),
                "{name}: class is not a partition"
            );
        }
        ensure!(
            used.iter().all(|&u| u == 1),
            "{name}: blocks not partitioned"
        );
        notes.push(format!("{name} {classes}x{size} in {elapsed:?}"));
    }
    Ok(notes.join("; "))
}

fn independent_variables() -> Verdict {
    for (name, s, v) in [
        ("fano", catalog("fano").unwrap(), 0i64),
        ("ag2_3", catalog("ag2_3").unwrap(), 2),
        ("sts15", sts(15).unwrap(), 16),
    ] {
        let c = classify(&s);
        let (n, l, k) = (
            s.cols() as u64,
            c.regular_l.unwrap() as u64,
            c.uniform_k.unwrap() as u64,
        );
        let count = independent_count(n, l, k);
        ensure!(count.v == v, "{name}: v = {}", count.v);
        ensure!(
            count.closed_form == Some(Rational64::from_integer(v)),
            "{name}: closed form differs"
        );
        let rep = independent_pairs(&FormulaView::new(s));
        ensure!(
            rep.per_column.iter().all(|&x| x as i64 == v),
            "{name}: counts {:?}",
            rep.per_column
        );
        ensure!(rep.consistent == Some(true), "{name}: report inconsistent");
    }
    Ok("Fano v=0, AG(2,3) v=2, STS(15) v=16".into())
}

/// Random partial designs with `m` a multiple of `l`, at most 28 points and
/// about `2m` blocks. Near-complete fills are avoided: their solution counts
/// grow factorially and full enumeration would not finish.
fn oracle_corpus(count: u64) -> Vec<(String, IncidenceStructure)> {
    (0..count)
        .map(|seed| {
            let l = 2 + (seed as usize) % 3;
            let m = l * (2 + (seed as usize / 3) % (28 / l - 1));
            let s = random_partial(m, l, 2 * m, seed).unwrap();
            (format!("random({m},{l},{},{seed})", 2 * m), s)
        })
        .collect()
}

fn oracle_equivalence() -> Verdict {
    let start = Instant::now();
    let mut instances: Vec<(String, IncidenceStructure)> = CATALOG_NAMES
        .iter()
        .map(|n| (n.to_string(), catalog(n).unwrap()))
        .collect();
    instances.extend(
        STS_ORDERS
            .iter()
            .map(|&m| (format!("sts{m}"), sts(m).unwrap())),
    );
    instances.extend(oracle_corpus(RANDOM_INSTANCES));
    let mut solutions = 0;
    for (name, s) in &instances {
        ensure!(s.rows() <= 28, "{name} too large for the oracle");
        let f = FormulaView::new(s.clone());
        let oracle = brute_force_xsat(&f, usize::MAX).unwrap();
        let (engine, stats) = enumerate_xsat(&f, &SearchConfig::default());
        ensure!(!stats.limit_hit, "{name}: limit hit");
        ensure!(
            oracle == engine,
            "{name}: oracle {} vs engine {}",
            oracle.len(),
            engine.len()
        );
        solutions += oracle.len();
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < ORACLE_BUDGET, "took {elapsed:?}");
    Ok(format!(
        "{} instances ({RANDOM_INSTANCES} random), {solutions} solutions, 0 mismatches in {elapsed:?}",
        instances.len()
    ))
}

fn mean_identities(corpus: &[(String, IncidenceStructure)]) -> Verdict {
    let mut checked = 0;
    let mut disconnected = 0;
    for (name, s) in corpus {
        let c = classify(s);
        if c.regular_l.is_none() || !c.is_linear {
            continue;
        }
        let rep = mean_identity_check(&FormulaView::new(s.clone()))
            .map_err(|e| format!("{name}: {e}"))?;
        ensure!(rep.passed(), "{name}: {rep:?}");
        checked += 1;
        if rep.mean_disconnection > Rational64::from_integer(0) {
            disconnected += 1;
        }
    }
    ensure!(
        disconnected > 0,
        "no structure with positive mean disconnection"
    );
    Ok(format!(
        "{checked} regular linear structures ({disconnected} with d > 0)"
    ))
}

fn round_trips(corpus: &[(String, IncidenceStructure)]) -> Verdict {
    let mut conversions = 0;
    for (name, s) in corpus {
        let f = FormulaView::new(s.clone());
        let reread = read_dimacs(&write_dimacs(&f)).map_err(|e| format!("{name}: {e}"))?;
        ensure!(reread.structure() == s, "{name}: DIMACS round trip differs");
        let d = DesignView::new(s.clone());
        let reread = read_design_with(&write_design(&d), Simplicity::AllowRepeated)
            .map_err(|e| format!("{name}: {e}"))?;
        ensure!(reread.structure() == s, "{name}: design round trip differs");
        if let Ok((d, _)) = formula_to_design(&f, None) {
            let back = design_to_formula(&d).map_err(|e| format!("{name}: {e}"))?;
            ensure!(
                back.structure() == s,
                "{name}: conversion round trip differs"
            );
            conversions += 1;
        }
    }
    ensure!(
        conversions >= CATALOG_NAMES.len(),
        "only {conversions} conversions ran"
    );
    Ok(format!(
        "{} structures, {conversions} view conversions",
        corpus.len()
    ))
}

fn main() -> ExitCode {
    let corpus = {
        let mut c = corpus();
        c.extend(random_corpus(RANDOM_INSTANCES));
        c
    };
    let criteria: Vec<(&str, Check)> = vec![
        ("1 parameter laws on STS", Box::new(parameter_laws)),
        (
            "2 regularity forces uniformity",
            Box::new(|| regularity_forces_uniformity(&corpus)),
        ),
        ("3 no designs with k < l", Box::new(empty_below_fisher)),
        (
            "4 Steiner triple system existence",
            Box::new(steiner_existence),
        ),
        (
            "5 STS(7) and STS(13) unsatisfiable",
            Box::new(unsatisfiable_triple_systems),
        ),
        ("6 parallel class facts", Box::new(parallel_class_facts)),
        ("7 resolvability", Box::new(resolvability)),
        (
            "8 independent variable count",
            Box::new(independent_variables),
        ),
        ("9 oracle equivalence", Box::new(oracle_equivalence)),
        ("10 mean identities", Box::new(|| mean_identities(&corpus))),
        ("11 round trips", Box::new(|| round_trips(&corpus))),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        match check() {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name}: {why}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
