use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use polydom::bounds::{
    general_bounds, proof_multipliers, quoted_general_constant, theorem_bounds, verify_multiplier_combination,
    DegreeProfile,
};
use polydom::certificate::certificate;
use polydom::labeling::{validate, Variant};
use polydom::report::{records_json, table, ReportRecord, Status};
use polydom::solver::{solve_bruteforce, solve_profile_dp, Outcome, SolveResult, DEFAULT_NODE_BUDGET};
use polydom::{generate, Error, FamilyKind, LabelFunction, PolytopeGraph};

const EXIT_INADMISSIBLE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;
const EXIT_CONTRADICTION: u8 = 4;

#[derive(Parser)]
#[command(name = "polydom", version, about = "Signed (total) Roman domination on convex polytope families")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Edgelist,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SolveMethod {
    Dp,
    Bruteforce,
    Both,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a family graph as an edge list or DOT.
    Gen {
        #[arg(long)]
        family: FamilyKind,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "edgelist")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the explicit upper-bound labeling and check it.
    Cert {
        #[arg(long)]
        family: FamilyKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        variant: Variant,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a labeling file against a graph file.
    Verify {
        graph: PathBuf,
        labels: PathBuf,
        /// Defaults to the variant in the labeling header.
        #[arg(long)]
        variant: Option<Variant>,
    },
    /// Compute the exact minimum weight.
    Solve {
        #[arg(long)]
        family: FamilyKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        variant: Variant,
        #[arg(long, value_enum, default_value = "dp")]
        method: SolveMethod,
        /// Brute-force node budget.
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
        /// Write the witness labeling here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate general and per-family bounds.
    Bounds {
        #[arg(long)]
        family: FamilyKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        variant: Variant,
    },
    /// Solve a range of n and write JSON records.
    Table {
        #[arg(long)]
        family: FamilyKind,
        #[arg(long)]
        variant: Variant,
        #[arg(long, value_parser = parse_range)]
        n_range: (usize, usize),
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected lo:hi")?;
    let lo = lo.parse().map_err(|_| format!("bad lower end {lo:?}"))?;
    let hi = hi.parse().map_err(|_| format!("bad upper end {hi:?}"))?;
    Ok((lo, hi))
}

/// Failure carrying its exit code.
struct Fail(u8, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(EXIT_USAGE, e.to_string())
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Fail> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Fail(EXIT_USAGE, format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read(p: &Path) -> Result<String, Fail> {
    fs::read_to_string(p).map_err(|e| Fail(EXIT_USAGE, format!("{}: {e}", p.display())))
}

fn configure_threads() -> Result<(), Fail> {
    let Ok(raw) = std::env::var("POLYDOM_THREADS") else {
        return Ok(());
    };
    let t: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Fail(EXIT_USAGE, format!("POLYDOM_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(t)
        .build_global()
        .map_err(|e| Fail(EXIT_USAGE, format!("thread pool: {e}")))
}

fn print_result(r: &SolveResult) {
    println!("method {:?}", r.method);
    println!("gamma {}", r.gamma);
    println!(
        "stats work={} seeds={} elapsed_ms={}",
        r.stats.work,
        r.stats.seeds,
        r.elapsed.as_millis()
    );
}

fn write_witness(g: &PolytopeGraph, variant: Variant, w: &LabelFunction, out: Option<&Path>) -> Result<(), Fail> {
    if let Some(p) = out {
        emit(Some(p), &w.to_text(g, variant, None))?;
        println!("witness {}", p.display());
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Fail> {
    match cli.cmd {
        Cmd::Gen { family, n, format, out } => {
            let g = generate(family, n)?;
            let text = match format {
                Format::Edgelist => g.to_edge_list(),
                Format::Dot => g.to_dot(),
            };
            emit(out.as_deref(), &text)
        }

        Cmd::Cert { family, n, variant, out } => {
            let cert = certificate(family, variant, n)?;
            let text = cert
                .labeling
                .to_text(&cert.graph, variant, Some(&cert.source.to_string()));
            let violations = validate(&cert.graph, &cert.labeling, variant)?;
            let verdict = if violations.is_empty() { "admissible" } else { "INADMISSIBLE" };
            let summary = format!(
                "{} {} {}: weight {} claimed {} {}",
                cert.source,
                cert.graph.identity(),
                variant,
                cert.labeling.weight(),
                cert.claimed_weight,
                verdict
            );
            match out {
                Some(p) => {
                    emit(Some(&p), &text)?;
                    println!("{summary}");
                }
                None => {
                    print!("{text}");
                    eprintln!("{summary}");
                }
            }
            for v in &violations {
                eprintln!("{v}");
            }
            if !violations.is_empty() || cert.labeling.weight() != cert.claimed_weight {
                return Err(Fail(EXIT_INADMISSIBLE, "certificate check failed".into()));
            }
            Ok(())
        }

        Cmd::Verify { graph, labels, variant } => {
            let g = PolytopeGraph::parse_edge_list(&read(&graph)?)?;
            let (f, header_variant) = LabelFunction::parse_text(&g, &read(&labels)?)?;
            let variant = variant
                .or(header_variant)
                .ok_or_else(|| Fail(EXIT_USAGE, "no --variant and none in the labeling header".into()))?;
            let violations = validate(&g, &f, variant)?;
            for v in &violations {
                println!("{v}");
            }
            if violations.is_empty() {
                println!("admissible {} {} weight {}", g.identity(), variant, f.weight());
                Ok(())
            } else {
                Err(Fail(EXIT_INADMISSIBLE, format!("{} violations", violations.len())))
            }
        }

        Cmd::Solve {
            family,
            n,
            variant,
            method,
            budget,
            out,
        } => {
            let g = generate(family, n)?;
            let dp = if method != SolveMethod::Bruteforce {
                let r = solve_profile_dp(&g, variant)?;
                print_result(&r);
                Some(r)
            } else {
                None
            };
            let bf = if method != SolveMethod::Dp {
                match solve_bruteforce(&g, variant, budget)? {
                    Outcome::Solved(r) => {
                        print_result(&r);
                        Some(r)
                    }
                    Outcome::Inconclusive { nodes, elapsed } => {
                        println!("method BruteForce");
                        println!("gamma inconclusive");
                        println!("stats work={nodes} elapsed_ms={}", elapsed.as_millis());
                        return Err(Fail(EXIT_INCONCLUSIVE, format!("node budget {budget} exhausted")));
                    }
                }
            } else {
                None
            };
            if let (Some(a), Some(b)) = (&dp, &bf) {
                if a.gamma != b.gamma {
                    println!("DISAGREE");
                    return Err(Fail(EXIT_CONTRADICTION, "solvers disagree".into()));
                }
                println!("agree gamma {}", a.gamma);
            }
            let r = dp.or(bf).expect("at least one solver ran");
            write_witness(&g, variant, &r.witness, out.as_deref())?;
            let rec = ReportRecord::new(family, variant, n, Some(r.gamma))?;
            println!("status {:?}", rec.status);
            if rec.status == Status::CONTRADICTION {
                return Err(Fail(EXIT_CONTRADICTION, "gamma outside the proven interval".into()));
            }
            Ok(())
        }

        Cmd::Bounds { family, n, variant } => {
            let g = generate(family, n)?;
            let p = DegreeProfile::of(&g)?;
            println!(
                "profile delta={} Delta={} vertices={}",
                p.delta, p.big_delta, p.n_vertices
            );
            for b in general_bounds(&p, variant) {
                match b.value {
                    Some(v) => println!("{:?} {} ({})", b.kind, v, b.reason),
                    None => println!("{:?} not applicable ({})", b.kind, b.reason),
                }
            }
            for (kind, c, ceil) in quoted_general_constant(family, variant) {
                let wrap = if ceil { "ceil" } else { "" };
                println!("quoted {kind:?} {wrap}({c} n)");
            }
            match theorem_bounds(family, variant, n) {
                Ok(t) => println!(
                    "theorem {} lower {} (literal {}) upper {} exact {}",
                    t.theorem, t.lower, t.lower_literal, t.upper, t.exact
                ),
                Err(e) => println!("theorem none ({e})"),
            }
            if let Some(m) = proof_multipliers(family, variant) {
                let rows = g.class_sum_coefficients(variant)?;
                match verify_multiplier_combination(&rows, &m) {
                    Ok(c) => println!(
                        "combination coefficient {} scalar {} exact {}",
                        c.coefficient, c.scalar, c.exact
                    ),
                    Err(e) => println!("combination failed: {e}"),
                }
            }
            Ok(())
        }

        Cmd::Table {
            family,
            variant,
            n_range: (lo, hi),
            out,
        } => {
            let records = table(family, variant, lo, hi)?;
            emit(out.as_deref(), &records_json(&records))?;
            if records.iter().any(|r| r.status == Status::CONTRADICTION) {
                return Err(Fail(EXIT_CONTRADICTION, "theorem contradiction".into()));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|_| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail(code, msg)) => {
            eprintln!("polydom: {msg}");
            ExitCode::from(code)
        }
    }
}
