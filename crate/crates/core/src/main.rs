use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use xsat_design::correspondence::{design_to_formula, formula_to_design};
use xsat_design::generators::{catalog, random_partial, sts};
use xsat_design::io::{self, FileKind};
use xsat_design::params::admissibility;
use xsat_design::solver::{
    brute_force_xsat, enumerate_xsat, find_parallel_class, find_resolution, find_xsat, Answer,
    ChoicePolicy, SearchStats,
};
use xsat_design::{
    classify, DesignView, FormulaView, IncidenceStructure, SearchConfig, Simplicity,
};

const EXIT_ANSWERED: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_MISMATCH: u8 = 2;
const EXIT_FOUND: u8 = 10;
const EXIT_NONE: u8 = 20;
const EXIT_UNKNOWN: u8 = 30;

/// Block designs and exact satisfiability of monotone CNF formulas.
#[derive(Parser)]
#[command(name = "xsat-design", version)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Accept repeated blocks when reading design files.
    #[arg(long, global = true)]
    allow_repeated: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Derived parameters and existence conditions for an (m, l, lambda) design.
    Params { m: u64, l: u64, lambda: u64 },
    /// Measure regularity, uniformity and pairwise intersections.
    Classify { file: PathBuf },
    /// Rewrite a file in the other format.
    Convert {
        #[arg(long, value_enum)]
        to: Target,
        /// Upper bound on pairwise meets when reading a formula as a design.
        #[arg(long)]
        lambda: Option<usize>,
        file: PathBuf,
    },
    /// Decide exact satisfiability of the formula reading.
    Xsat {
        file: PathBuf,
        /// Enumerate up to N solutions (0 = all).
        #[arg(long, value_name = "N")]
        enumerate: Option<usize>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Find a parallel class of the design reading.
    ParallelClass {
        file: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Partition all blocks into parallel classes.
    Resolve {
        file: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Emit a design to stdout.
    Generate {
        #[command(subcommand)]
        what: GenerateWhat,
        #[arg(long, value_enum, default_value = "design", global = true)]
        format: Target,
    },
    /// Compare the exact-cover engine against exhaustive enumeration.
    OracleCheck { file: PathBuf },
}

#[derive(Subcommand)]
enum GenerateWhat {
    /// Steiner triple system of order m.
    Sts { m: usize },
    /// One of: fano, ag2_3, pg2_3, kirkman_15, complete_triangle.
    Catalog { name: String },
    /// Random partial (m, l, 1) design with up to n blocks.
    Random {
        m: usize,
        l: usize,
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Design,
    Cnf,
}

#[derive(clap::Args)]
struct SearchArgs {
    /// Give up with UNKNOWN after expanding N search nodes.
    #[arg(long, value_name = "N")]
    node_limit: Option<u64>,
    /// Branch on the lowest uncovered row instead of the most constrained one.
    #[arg(long)]
    first_index: bool,
    /// Seed for randomized tie-breaking.
    #[arg(long)]
    seed: Option<u64>,
}

impl SearchArgs {
    fn config(&self) -> SearchConfig {
        let mut cfg = SearchConfig::default();
        if let Some(n) = self.node_limit {
            cfg = cfg.with_node_limit(n);
        }
        if self.first_index {
            cfg = cfg.with_choice(ChoicePolicy::FirstIndex);
        }
        if let Some(s) = self.seed {
            cfg = cfg.with_seed(s);
        }
        cfg
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_ANSWERED
            });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn load(path: &Path, allow_repeated: bool) -> anyhow::Result<(FileKind, IncidenceStructure)> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let kind = io::detect(&text)
        .with_context(|| format!("{}: neither a DIMACS nor a design file", path.display()))?;
    let simplicity = if allow_repeated {
        Simplicity::AllowRepeated
    } else {
        Simplicity::Require
    };
    let s = match kind {
        FileKind::Dimacs => io::read_dimacs(&text).map(|f| f.structure().clone()),
        FileKind::Design => io::read_design_with(&text, simplicity).map(|d| d.structure().clone()),
    }
    .with_context(|| format!("parsing {}", path.display()))?;
    Ok((kind, s))
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

fn join(v: &[usize]) -> String {
    v.iter()
        .map(|x| (x + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn exit_for(answer: Answer) -> u8 {
    match answer {
        Answer::Found => EXIT_FOUND,
        Answer::NoneExists => EXIT_NONE,
        Answer::Unknown => EXIT_UNKNOWN,
    }
}

fn print_stats(stats: &SearchStats) {
    println!(
        "nodes {}  solutions {}  limit_hit {}",
        stats.nodes_expanded, stats.solutions_found, stats.limit_hit
    );
}

fn answer_word(answer: Answer, yes: &str, no: &str) -> String {
    match answer {
        Answer::Found => yes.to_string(),
        Answer::NoneExists => no.to_string(),
        Answer::Unknown => "UNKNOWN".to_string(),
    }
}

fn run(cli: &Cli) -> anyhow::Result<u8> {
    match &cli.command {
        Command::Params { m, l, lambda } => {
            let report = admissibility(*m, *l, *lambda)?;
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                let p = &report.params;
                println!("m {}  l {}  lambda {}", p.m, p.l, p.lambda);
                println!("k {}  integral {}", p.k, report.k_integral);
                println!("n {}  integral {}", p.n, report.n_integral);
                match p.alpha {
                    Some(a) => println!("alpha {a}"),
                    None => println!("alpha -"),
                }
                println!("fisher (n >= m) {}", report.fisher_ok);
                println!("k >= l {}", report.k_ge_l);
                println!("xsat necessary (m = 0 mod l) {}", report.xsat_necessary);
                println!("resolvable condition {:?}", report.resolvable_condition);
                println!("sts exists {:?}", report.sts_exists);
                println!("admissible {}", report.admissible);
            }
            Ok(EXIT_ANSWERED)
        }
        Command::Classify { file } => {
            let (_, s) = load(file, cli.allow_repeated)?;
            let c = classify(&s);
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&c)?);
            } else {
                println!("rows {}  cols {}", c.rows, c.cols);
                println!("column sums {:?}", c.occurrence_profile);
                println!("row sums {:?}", c.width_profile);
                println!(
                    "regular l {}",
                    c.regular_l.map_or("-".into(), |l| l.to_string())
                );
                println!(
                    "uniform k {}",
                    c.uniform_k.map_or("-".into(), |k| k.to_string())
                );
                println!("lambda max {}  exact {}", c.lambda_max, c.lambda_exact);
                println!("linear {}  exact linear {}", c.is_linear, c.is_exact_linear);
            }
            Ok(EXIT_ANSWERED)
        }
        Command::Convert { to, lambda, file } => {
            let (kind, s) = load(file, cli.allow_repeated)?;
            let text = match (kind, to) {
                (FileKind::Dimacs, Target::Design) => {
                    let (d, _) = formula_to_design(&FormulaView::new(s), *lambda)?;
                    io::write_design(&d)
                }
                (FileKind::Design, Target::Cnf) => {
                    io::write_dimacs(&design_to_formula(&DesignView::new(s))?)
                }
                (FileKind::Dimacs, Target::Cnf) => io::write_dimacs(&FormulaView::new(s)),
                (FileKind::Design, Target::Design) => io::write_design(&DesignView::new(s)),
            };
            print!("{text}");
            Ok(EXIT_ANSWERED)
        }
        Command::Xsat {
            file,
            enumerate,
            search,
        } => {
            let (_, s) = load(file, cli.allow_repeated)?;
            let f = FormulaView::new(s);
            let mut cfg = search.config();
            let (solutions, stats, answer) = match enumerate {
                Some(limit) => {
                    if *limit > 0 {
                        cfg = cfg.with_solution_limit(*limit);
                    }
                    let (sols, stats) = enumerate_xsat(&f, &cfg);
                    let answer = match (sols.is_empty(), stats.limit_hit) {
                        (false, _) => Answer::Found,
                        (true, false) => Answer::NoneExists,
                        (true, true) => Answer::Unknown,
                    };
                    (sols, stats, answer)
                }
                None => {
                    let out = find_xsat(&f, &cfg);
                    let answer = out.answer();
                    (out.result.into_iter().collect(), out.stats, answer)
                }
            };
            if cli.json {
                let sols: Vec<Vec<usize>> =
                    solutions.iter().map(|s| one_based(&s.chosen)).collect();
                let v = json!({ "answer": answer, "solutions": sols, "stats": stats });
                println!("{}", serde_json::to_string_pretty(&v)?);
            } else {
                println!("{}", answer_word(answer, "SAT", "UNSAT"));
                for sol in &solutions {
                    println!("v {}", join(&sol.chosen));
                }
                print_stats(&stats);
            }
            Ok(exit_for(answer))
        }
        Command::ParallelClass { file, search } => {
            let (_, s) = load(file, cli.allow_repeated)?;
            let d = DesignView::new(s);
            let out = find_parallel_class(&d, &search.config());
            let answer = out.answer();
            if cli.json {
                let blocks = out.result.as_ref().map(|c| one_based(&c.blocks));
                let v = json!({ "answer": answer, "blocks": blocks, "stats": out.stats });
                println!("{}", serde_json::to_string_pretty(&v)?);
            } else {
                println!("{}", answer_word(answer, "FOUND", "NONE"));
                if let Some(class) = &out.result {
                    for &b in &class.blocks {
                        println!("block {}: {}", b + 1, join(d.block(b)));
                    }
                }
                print_stats(&out.stats);
            }
            Ok(exit_for(answer))
        }
        Command::Resolve { file, search } => {
            let (_, s) = load(file, cli.allow_repeated)?;
            let d = DesignView::new(s);
            let out = find_resolution(&d, &search.config());
            let answer = out.answer();
            if cli.json {
                let classes: Option<Vec<Vec<usize>>> = out
                    .result
                    .as_ref()
                    .map(|r| r.classes.iter().map(|c| one_based(&c.blocks)).collect());
                let v = json!({ "answer": answer, "classes": classes, "stats": out.stats });
                println!("{}", serde_json::to_string_pretty(&v)?);
            } else {
                println!("{}", answer_word(answer, "RESOLVABLE", "NONE"));
                if let Some(r) = &out.result {
                    print!("{r}");
                }
                print_stats(&out.stats);
            }
            Ok(exit_for(answer))
        }
        Command::Generate { what, format } => {
            let s = match what {
                GenerateWhat::Sts { m } => sts(*m)?,
                GenerateWhat::Catalog { name } => catalog(name)?,
                GenerateWhat::Random { m, l, n, seed } => random_partial(*m, *l, *n, *seed)?,
            };
            match format {
                Target::Design => print!("{}", io::write_design(&DesignView::new(s))),
                Target::Cnf => print!("{}", io::write_dimacs(&FormulaView::new(s))),
            }
            Ok(EXIT_ANSWERED)
        }
        Command::OracleCheck { file } => {
            let (_, s) = load(file, cli.allow_repeated)?;
            let f = FormulaView::new(s);
            let oracle = brute_force_xsat(&f, usize::MAX)?;
            let (engine, stats) = enumerate_xsat(&f, &SearchConfig::default());
            if stats.limit_hit {
                bail!("engine stopped on a limit");
            }
            let agree = oracle == engine;
            if cli.json {
                let v = json!({
                    "oracle_solutions": oracle.len(),
                    "engine_solutions": engine.len(),
                    "agree": agree,
                });
                println!("{}", serde_json::to_string_pretty(&v)?);
            } else {
                println!("oracle {}  engine {}", oracle.len(), engine.len());
                println!("{}", if agree { "MATCH" } else { "MISMATCH" });
            }
            Ok(if agree { EXIT_ANSWERED } else { EXIT_MISMATCH })
        }
    }
}
