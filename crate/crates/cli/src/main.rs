//! `kollar` command-line interface.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error (from clap),
//! 3 uniqueness/theorem violation.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use num::BigRational;
use serde_json::{json, Value};

use kollar::alpha::{alpha_g_p1, alpha_p1, smallest_orbit, Boundary, GroupClass};
use kollar::catalog::{self, Singularity, TheoremReport};
use kollar::component::{extract_blowup, extract_vertex, KollarComponent, VertexChoice};
use kollar::dual_graph::{AdeKind, BlowupLocation, DualGraph};
use kollar::hirzebruch_jung::CyclicQuotient;
use kollar::rational::{format_rational, parse_rational};
use kollar::Error;

#[derive(Parser)]
#[command(name = "kollar", version, about = "Kollár components of Du Val and cyclic quotient surface singularities", max_term_width = 100)]
struct Cli {
    /// Emit canonical JSON instead of the human-readable report
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the minimal resolution graph of a Du Val singularity
    Resolve { kind: AdeKind, m: usize },

    /// Hirzebruch-Jung data of the cyclic quotient 1/n(1,q)
    Hj { n: u64, q: u64 },

    /// One Kollár component of an ADE singularity
    #[command(group = ArgGroup::new("choice").required(true).args(["vertex", "fork", "blowup"]))]
    Component {
        kind: AdeKind,
        m: usize,
        /// extract the k-th curve of the minimal resolution
        #[arg(long, value_name = "K")]
        vertex: Option<usize>,
        /// extract the fork curve (types D and E)
        #[arg(long)]
        fork: bool,
        /// blow up a point first: `node:<k>` (intersection of curves k and
        /// k+1) or `tail` (smooth point of the first curve); type A only
        #[arg(long, value_name = "WHERE")]
        blowup: Option<String>,
    },

    /// α of the projective line with the given boundary coefficients
    #[command(name = "alpha-p1")]
    AlphaP1 {
        /// exact rationals, `p/q` or integers
        #[arg(value_name = "COEFF", num_args = 0..)]
        coefficients: Vec<String>,
    },

    /// α_G of the projective line for a finite group: A5, S4, A4, D:<m>, C:<m>
    #[command(name = "alpha-group")]
    AlphaGroup { group: GroupClass },

    /// All known components of a Du Val singularity, with the pairwise α report
    Catalog {
        kind: AdeKind,
        m: usize,
        /// also persist the JSON catalog to this file
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },

    /// Sweep a family and check every pairwise α-sum stays below 1
    Verify {
        kind: AdeKind,
        #[arg(long, value_name = "M")]
        max_m: usize,
        /// worker threads for the sweep
        #[arg(long, default_value_t = 1, value_name = "N")]
        jobs: usize,
    },

    /// Whether some component has α ≥ 1 (weak exceptionality)
    WeaklyExceptional { kind: AdeKind, m: usize },

    /// The unique component with α ≥ 1/2, when it exists
    Semistable { kind: AdeKind, m: usize },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::UniquenessViolated(_) => ExitCode::from(3),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    match &cli.command {
        Command::Resolve { kind, m } => {
            let g = DualGraph::ade(*kind, *m)?;
            emit(cli.json, g.to_json(), || print_graph(&g));
        }
        Command::Hj { n, q } => {
            let s = CyclicQuotient::new(*n, *q)?;
            let chain = s.hj_chain();
            emit(
                cli.json,
                json!({
                    "n": s.n(),
                    "q": s.q(),
                    "chain": chain,
                    "du_val": s.is_du_val(),
                }),
                || {
                    let terms: Vec<String> = chain.iter().map(u64::to_string).collect();
                    println!("{s} = [{}]{}", terms.join(","), if s.is_du_val() { "  (Du Val)" } else { "" });
                },
            );
        }
        Command::Component { kind, m, vertex, fork, blowup } => {
            let c = match (vertex, *fork, blowup) {
                (Some(k), false, None) => extract_vertex(*kind, *m, VertexChoice::Index(*k))?,
                (None, true, None) => extract_vertex(*kind, *m, VertexChoice::Fork)?,
                (None, false, Some(spec)) => {
                    if *kind != AdeKind::A {
                        return Err(Error::InvalidParameters(
                            "--blowup applies to type A only".into(),
                        ));
                    }
                    extract_blowup(*m, parse_blowup(spec, *m)?)?
                }
                _ => unreachable!("clap group enforces exactly one choice"),
            };
            emit(cli.json, c.to_json(), || print_component(&c));
        }
        Command::AlphaP1 { coefficients } => {
            let coeffs: Result<Vec<BigRational>, Error> =
                coefficients.iter().map(|s| parse_rational(s)).collect();
            let boundary = Boundary::new(coeffs?)?;
            let alpha = alpha_p1(&boundary);
            emit(cli.json, json!({"alpha": format_rational(&alpha)}), || {
                println!("{}", format_rational(&alpha));
            });
        }
        Command::AlphaGroup { group } => {
            let alpha = alpha_g_p1(group);
            emit(
                cli.json,
                json!({
                    "group": group.to_string(),
                    "smallest_orbit": smallest_orbit(group),
                    "alpha": format_rational(&alpha),
                }),
                || println!("{}", format_rational(&alpha)),
            );
        }
        Command::Catalog { kind, m, out } => {
            let c = catalog::enumerate(&Singularity::DuVal { kind: *kind, m: *m })?;
            let j = c.to_json();
            if let Some(path) = out {
                let pretty = serde_json::to_string_pretty(&j).expect("catalog JSON serializes");
                std::fs::write(path, format!("{pretty}\n")).map_err(|e| {
                    Error::InvalidParameters(format!("cannot write {}: {e}", path.display()))
                })?;
            }
            emit(cli.json, j, || print_catalog(&c));
        }
        Command::Verify { kind, max_m, jobs } => {
            let (merged, catalogs) = sweep(*kind, *max_m, (*jobs).max(1))?;
            let ok = merged.violations.is_empty();
            emit(
                cli.json,
                json!({
                    "kind": kind.to_string(),
                    "max_m": max_m,
                    "catalogs": catalogs,
                    "pairs": merged.pairs,
                    "max_sum": merged.max_sum.as_ref().map(format_rational),
                    "violations": merged.to_json()["violations"].clone(),
                }),
                || {
                    let max = merged
                        .max_sum
                        .as_ref()
                        .map_or_else(|| "n/a".to_string(), |s| format_rational(s));
                    println!(
                        "{kind} family, m <= {max_m}: {catalogs} catalogs, {} pairs, max alpha-sum {max}, {} violations",
                        merged.pairs,
                        merged.violations.len()
                    );
                },
            );
            if !ok {
                return Ok(ExitCode::from(3));
            }
        }
        Command::WeaklyExceptional { kind, m } => {
            let we = catalog::weakly_exceptional(&Singularity::DuVal { kind: *kind, m: *m })?;
            emit(cli.json, json!({"weakly_exceptional": we}), || println!("{we}"));
        }
        Command::Semistable { kind, m } => {
            let c = catalog::semistable_component(&Singularity::DuVal { kind: *kind, m: *m })?;
            emit(
                cli.json,
                json!({"component": c.as_ref().map(KollarComponent::to_json)}),
                || match &c {
                    Some(c) => print_component(c),
                    None => println!("none"),
                },
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn emit(as_json: bool, j: Value, human: impl FnOnce()) {
    if as_json {
        println!("{j}");
    } else {
        human();
    }
}

fn parse_blowup(spec: &str, m: usize) -> Result<BlowupLocation, Error> {
    if spec == "tail" {
        return Ok(BlowupLocation::TailInterior("v1".into()));
    }
    if let Some(k) = spec.strip_prefix("node:") {
        let k: usize = k
            .parse()
            .map_err(|_| Error::InvalidLocation(format!("bad node index in `{spec}`")))?;
        if k < 1 || k >= m {
            return Err(Error::InvalidLocation(format!(
                "node {k} does not exist on A_{m}"
            )));
        }
        return Ok(BlowupLocation::Node(format!("v{k}"), format!("v{}", k + 1)));
    }
    Err(Error::InvalidLocation(format!(
        "blowup location must be `tail` or `node:<k>`, got `{spec}`"
    )))
}

fn print_graph(g: &DualGraph) {
    for v in g.vertices() {
        println!("{}  ({})", v.id, v.self_int);
    }
    let edges: Vec<String> = g.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
    println!("edges: {}", if edges.is_empty() { "none".into() } else { edges.join(" ") });
}

fn print_component(c: &KollarComponent) {
    let diff: Vec<String> = c
        .different
        .entries()
        .iter()
        .map(|e| format!("{}:{}", e.label, e.index))
        .collect();
    println!("key    {}", c.canonical_key);
    println!("diff   {}", if diff.is_empty() { "0".into() } else { diff.join("  ") });
    println!("delta  {}", format_rational(&c.delta));
    println!("alpha  {}", format_rational(&c.alpha));
}

fn print_catalog(c: &catalog::Catalog) {
    println!("{}: {} component(s)", c.singularity, c.components.len());
    for comp in &c.components {
        let idx: Vec<String> = comp.different.indices().iter().map(u64::to_string).collect();
        println!(
            "  alpha {:>8}  delta {:>5}  diff {{{}}}  {}",
            format_rational(&comp.alpha),
            format_rational(&comp.delta),
            idx.join(","),
            comp.canonical_key
        );
    }
    let r = c.report();
    let max = r
        .max_sum
        .as_ref()
        .map_or_else(|| "n/a".to_string(), |s| format_rational(s));
    println!("pairs {}  max alpha-sum {max}  violations {}", r.pairs, r.violations.len());
}

/// Family range: A_m from 1, D_m from 4, E_m in 6..=8.
fn family_range(kind: AdeKind, max_m: usize) -> Vec<usize> {
    let lo = match kind {
        AdeKind::A => 1,
        AdeKind::D => 4,
        AdeKind::E => 6,
    };
    let hi = match kind {
        AdeKind::E => max_m.min(8),
        _ => max_m,
    };
    (lo..=hi).collect()
}

fn sweep(kind: AdeKind, max_m: usize, jobs: usize) -> Result<(TheoremReport, usize), Error> {
    let ms = family_range(kind, max_m);
    let catalogs = ms.len();
    let reports: Vec<Result<TheoremReport, Error>> = if jobs <= 1 || ms.len() <= 1 {
        ms.iter()
            .map(|&m| catalog::verify_theorem(&Singularity::DuVal { kind, m }))
            .collect()
    } else {
        let chunk = ms.len().div_ceil(jobs);
        std::thread::scope(|scope| {
            let handles: Vec<_> = ms
                .chunks(chunk)
                .map(|part| {
                    scope.spawn(move || {
                        part.iter()
                            .map(|&m| catalog::verify_theorem(&Singularity::DuVal { kind, m }))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("sweep worker panicked"))
                .collect()
        })
    };
    let mut merged = TheoremReport { pairs: 0, max_sum: None, violations: Vec::new() };
    for r in reports {
        let r = r?;
        merged.pairs += r.pairs;
        if let Some(s) = r.max_sum {
            if merged.max_sum.as_ref().map_or(true, |m| *m < s) {
                merged.max_sum = Some(s);
            }
        }
        merged.violations.extend(r.violations);
    }
    Ok((merged, catalogs))
}
