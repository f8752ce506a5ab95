//! Text formats: monotone DIMACS CNF for formulas and a line format for designs.
//!
//! Both formats use 1-based indices. Comment lines start with `c`.
//!
//! Design files look like
//!
//! ```text
//! c the complete design on three points
//! design 3 3 2 1
//! 1 2
//! 2 3
//! 1 3
//! ```
//!
//! The header is `design m n [l lambda]`; each following line lists the points
//! of one block. When `l` and `lambda` are given they must match the measured
//! block size and maximum pairwise meet.

use crate::correspondence::classify;
use crate::error::{Error, Result};
use crate::structure::{DesignView, FormulaView, IncidenceStructure, Simplicity};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileKind {
    Dimacs,
    Design,
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('c'))
}

/// Guesses the format from the first non-comment line.
pub fn detect(text: &str) -> Option<FileKind> {
    let (_, first) = content_lines(text).next()?;
    if first.starts_with("p ") {
        Some(FileKind::Dimacs)
    } else if first.starts_with("design") {
        Some(FileKind::Design)
    } else {
        None
    }
}

fn parse_count(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| Error::Parse {
        line,
        msg: format!("missing {what}"),
    })?;
    tok.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("bad {what} `{tok}`"),
    })
}

pub fn read_dimacs(text: &str) -> Result<FormulaView> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing `p cnf` header".into(),
    })?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("p") || toks.next() != Some("cnf") {
        return Err(Error::Parse {
            line: hline,
            msg: "expected `p cnf <vars> <clauses>`".into(),
        });
    }
    let n = parse_count(toks.next(), hline, "variable count")?;
    let m = parse_count(toks.next(), hline, "clause count")?;
    if toks.next().is_some() {
        return Err(Error::Parse {
            line: hline,
            msg: "trailing tokens in header".into(),
        });
    }

    let mut clauses: Vec<Vec<usize>> = Vec::with_capacity(m);
    let mut current: Vec<usize> = Vec::new();
    let mut last_line = hline;
    for (line, body) in lines {
        last_line = line;
        for tok in body.split_whitespace() {
            let lit: i64 = tok.parse().map_err(|_| Error::Parse {
                line,
                msg: format!("bad literal `{tok}`"),
            })?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
                continue;
            }
            if lit < 0 {
                return Err(Error::NegativeLiteral { line, literal: lit });
            }
            if lit as u64 > n as u64 {
                return Err(Error::Parse {
                    line,
                    msg: format!("variable {lit} exceeds declared count {n}"),
                });
            }
            let var = lit as usize - 1;
            if current.contains(&var) {
                return Err(Error::DuplicateLiteral { line, literal: lit });
            }
            current.push(var);
        }
    }
    if !current.is_empty() {
        return Err(Error::Parse {
            line: last_line,
            msg: "last clause is not terminated by 0".into(),
        });
    }
    if clauses.len() != m {
        return Err(Error::CountMismatch {
            what: "clauses",
            declared: m,
            found: clauses.len(),
        });
    }
    let s =
        IncidenceStructure::build(&clauses, n, Simplicity::AllowRepeated).map_err(|e| match e {
            Error::EmptyColumnSupport { col } => Error::UnusedVariable { var: col + 1 },
            other => other,
        })?;
    Ok(FormulaView::new(s))
}

/// Canonical DIMACS text: clauses in row order, literals ascending.
pub fn write_dimacs(f: &FormulaView) -> String {
    let mut out = format!("p cnf {} {}\n", f.var_count(), f.clause_count());
    for i in 0..f.clause_count() {
        for &j in f.clause(i) {
            out.push_str(&(j + 1).to_string());
            out.push(' ');
        }
        out.push_str("0\n");
    }
    out
}

/// Reads a design file, rejecting repeated blocks.
pub fn read_design(text: &str) -> Result<DesignView> {
    read_design_with(text, Simplicity::Require)
}

pub fn read_design_with(text: &str, simplicity: Simplicity) -> Result<DesignView> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing `design` header".into(),
    })?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("design") {
        return Err(Error::Parse {
            line: hline,
            msg: "expected `design <points> <blocks> [l lambda]`".into(),
        });
    }
    let m = parse_count(toks.next(), hline, "point count")?;
    let n = parse_count(toks.next(), hline, "block count")?;
    let declared = match (toks.next(), toks.next()) {
        (None, _) => None,
        (Some(l), lambda) => Some((
            parse_count(Some(l), hline, "block size")?,
            parse_count(lambda, hline, "lambda")?,
        )),
    };
    if toks.next().is_some() {
        return Err(Error::Parse {
            line: hline,
            msg: "trailing tokens in header".into(),
        });
    }

    let mut blocks = Vec::with_capacity(n);
    for (line, body) in lines {
        let mut block = Vec::new();
        for tok in body.split_whitespace() {
            let p: usize = tok.parse().map_err(|_| Error::Parse {
                line,
                msg: format!("bad point `{tok}`"),
            })?;
            if p == 0 || p > m {
                return Err(Error::Parse {
                    line,
                    msg: format!("point {p} outside 1..={m}"),
                });
            }
            if block.contains(&(p - 1)) {
                return Err(Error::Parse {
                    line,
                    msg: format!("point {p} repeated in block"),
                });
            }
            block.push(p - 1);
        }
        blocks.push(block);
    }
    if blocks.len() != n {
        return Err(Error::CountMismatch {
            what: "blocks",
            declared: n,
            found: blocks.len(),
        });
    }
    let s = IncidenceStructure::from_columns(&blocks, m, simplicity)?;
    let d = DesignView::new(s);
    if let Some((l, lambda)) = declared {
        if d.uniform_block_size() != Some(l) {
            return Err(Error::HeaderMismatch {
                what: "l",
                declared: l,
                measured: match d.uniform_block_size() {
                    Some(b) => b.to_string(),
                    None => "non-uniform".into(),
                },
            });
        }
        let measured = classify(d.structure()).lambda_max;
        if measured != lambda {
            return Err(Error::HeaderMismatch {
                what: "lambda",
                declared: lambda,
                measured: measured.to_string(),
            });
        }
    }
    Ok(d)
}

/// Canonical design text. The `l lambda` trailer is written when all blocks
/// have the same size.
pub fn write_design(d: &DesignView) -> String {
    let mut out = format!("design {} {}", d.point_count(), d.block_count());
    if let Some(l) = d.uniform_block_size() {
        let lambda = classify(d.structure()).lambda_max;
        out.push_str(&format!(" {l} {lambda}"));
    }
    out.push('\n');
    for j in 0..d.block_count() {
        let points: Vec<String> = d.block(j).iter().map(|p| (p + 1).to_string()).collect();
        out.push_str(&points.join(" "));
        out.push('\n');
    }
    out
}
