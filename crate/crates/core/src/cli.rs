//! Command-line surface of the `zdclass` binary.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::census::{
    default_suite, parse_dot, parse_graph_json, realizability_screen, run_census,
    stabilization_sweep, Verdict,
};
use crate::config::{Limits, DEFAULT_SEED};
use crate::error::{Error, Result};
use crate::graph::GraphView;
use crate::ring::RingSpec;
use crate::theorems::check_graph;
use crate::zd::{gamma, gamma_e_with, to_dot, GammaOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_SPEC: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_THEOREM: i32 = 4;
pub const EXIT_NON_CONFLUENT: i32 = 5;

/// Environment variable that overrides the sampling seed.
pub const SEED_ENV: &str = "ZDCLASS_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "zdclass",
    version,
    about = "Zero-divisor class graphs of finite commutative rings"
)]
pub struct Cli {
    /// Seed for sampled checks (default from ZDCLASS_SEED, then a fixed value).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Largest ring order to construct.
    #[arg(long, global = true)]
    pub element_cap: Option<usize>,
    /// Largest monomial basis for quotient presentations.
    #[arg(long, global = true)]
    pub basis_cap: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Dot,
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the class graph of a ring.
    Graph {
        spec: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Also print the graph on individual zero divisors.
        #[arg(long)]
        classic: bool,
    },
    /// List associated primes with their maximality flags.
    Ass {
        spec: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run all structural checks; exit 4 on any failure.
    Check {
        spec: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run the census over the default suite or specs listed in a file.
    Census {
        /// One ring spec per line; blank lines and lines starting with '#' are skipped.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Screen a graph (JSON edge list or DOT) against necessary conditions.
    Screen {
        /// Graph file, or '-' for standard input.
        path: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compare class graphs across truncations var^N for N in from..=to.
    Sweep {
        spec: String,
        #[arg(long)]
        var: String,
        #[arg(long)]
        from: u32,
        #[arg(long)]
        to: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidSpec(_) | Error::Parse { .. } | Error::Domain(_) | Error::Json(_) => {
            EXIT_SPEC
        }
        Error::CapExceeded(_) => EXIT_CAP,
        Error::NonConfluent(_) => EXIT_NON_CONFLUENT,
        Error::Inconsistent(_) => EXIT_THEOREM,
        Error::Io(_) => EXIT_USAGE,
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match run(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn limits(cli: &Cli) -> Result<Limits> {
    let seed = match cli.seed {
        Some(s) => s,
        None => match std::env::var(SEED_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Error::Domain(format!("{SEED_ENV} is not an integer: '{v}'")))?,
            Err(_) => DEFAULT_SEED,
        },
    };
    let mut l = Limits::default().with_seed(seed);
    if let Some(c) = cli.element_cap {
        l.element_cap = c;
    }
    if let Some(c) = cli.basis_cap {
        l.basis_cap = c;
    }
    Ok(l)
}

fn json_line(out: &mut dyn Write, v: &impl serde::Serialize) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(v)?)?;
    Ok(())
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let limits = limits(cli)?;
    let opts = GammaOptions {
        flags: true,
        seed: limits.validation.seed,
    };
    match &cli.command {
        Command::Graph {
            spec,
            format,
            classic,
        } => {
            let ring = RingSpec::parse(spec)?.build(&limits)?;
            let e = gamma_e_with(&ring, &opts)?;
            let classic = if *classic { Some(gamma(&ring)?) } else { None };
            match format {
                Format::Dot => {
                    out.write_all(e.to_dot().as_bytes())?;
                    if let Some(g) = &classic {
                        out.write_all(
                            to_dot(&format!("{} classic", ring.name()), g, g.labels()).as_bytes(),
                        )?;
                    }
                }
                Format::Json => match &classic {
                    None => json_line(out, &e.to_json())?,
                    Some(g) => json_line(
                        out,
                        &json!({
                            "gamma_e": e.to_json(),
                            "gamma": {
                                "ring": ring.name(),
                                "vertices": g.labels(),
                                "edges": g.edges().into_iter().map(|(a, b)| [a, b]).collect::<Vec<_>>(),
                            },
                        }),
                    )?,
                },
                Format::Text => {
                    writeln!(
                        out,
                        "{}: {} vertices, {} edges",
                        ring.name(),
                        e.order(),
                        e.edge_count()
                    )?;
                    for (i, c) in e.classes().iter().enumerate() {
                        let mut flags = String::new();
                        if e.is_ass(i) {
                            flags.push_str(" ass");
                        }
                        if e.is_max_in_f(i) {
                            flags.push_str(" max");
                        }
                        writeln!(
                            out,
                            "  [{}] weight {} degree {} ann {}{flags}",
                            e.rep_name(i),
                            c.weight(),
                            e.degree(i),
                            c.ann.len()
                        )?;
                    }
                    for (a, b) in e.graph().edges() {
                        writeln!(out, "  [{}] -- [{}]", e.rep_name(a), e.rep_name(b))?;
                    }
                    if let Some(g) = &classic {
                        writeln!(
                            out,
                            "classic: {} vertices, {} edges",
                            g.order(),
                            g.edge_count()
                        )?;
                        for (a, b) in g.edges() {
                            writeln!(out, "  {} -- {}", g.label(a), g.label(b))?;
                        }
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Ass { spec, format } => {
            let ring = RingSpec::parse(spec)?.build(&limits)?;
            let e = gamma_e_with(&ring, &opts)?;
            let ass: Vec<usize> = (0..e.order()).filter(|&v| e.is_ass(v)).collect();
            match format {
                Format::Json => json_line(
                    out,
                    &json!({
                        "ring": ring.name(),
                        "associated_primes": ass.iter().map(|&v| json!({
                            "vertex": v,
                            "rep": e.rep_name(v),
                            "ann_size": e.classes()[v].ann.len(),
                            "degree": e.degree(v),
                            "is_max_in_F": e.is_max_in_f(v),
                        })).collect::<Vec<_>>(),
                    }),
                )?,
                _ => {
                    writeln!(out, "{}: {} associated primes", ring.name(), ass.len())?;
                    for &v in &ass {
                        writeln!(
                            out,
                            "  [{}] ann size {} degree {}{}",
                            e.rep_name(v),
                            e.classes()[v].ann.len(),
                            e.degree(v),
                            if e.is_max_in_f(v) {
                                " maximal in F"
                            } else {
                                ""
                            }
                        )?;
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Check { spec, format } => {
            let ring = RingSpec::parse(spec)?.build(&limits)?;
            let report = check_graph(&gamma_e_with(&ring, &opts)?)?;
            match format {
                Format::Json => json_line(out, &report)?,
                _ => out.write_all(report.to_text().as_bytes())?,
            }
            Ok(if report.all_passed() {
                EXIT_OK
            } else {
                EXIT_THEOREM
            })
        }
        Command::Census { file, format } => {
            let specs = match file {
                None => default_suite(),
                Some(path) => std::fs::read_to_string(path)?
                    .lines()
                    .map(str::trim)
                    .filter(|l| !l.is_empty() && !l.starts_with('#'))
                    .map(RingSpec::parse)
                    .collect::<Result<Vec<_>>>()?,
            };
            let census = run_census(&specs, &limits);
            match format {
                Format::Json => out.write_all(census.to_jsonl().as_bytes())?,
                _ => out.write_all(census.summary().as_bytes())?,
            }
            Ok(if census.failures() == 0 {
                EXIT_OK
            } else {
                EXIT_THEOREM
            })
        }
        Command::Screen { path, format } => {
            let text = if path.as_os_str() == "-" {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s)?;
                s
            } else {
                std::fs::read_to_string(path)?
            };
            let g = if text.trim_start().starts_with('{') {
                parse_graph_json(&text)?
            } else {
                parse_dot(&text)?
            };
            let verdict = realizability_screen(&g)?;
            match format {
                Format::Json => json_line(out, &verdict)?,
                _ if verdict.passes_necessary => writeln!(
                    out,
                    "passes necessary conditions ({} vertices, {} edges); not a proof of realizability",
                    g.order(),
                    g.edge_count()
                )?,
                _ => writeln!(
                    out,
                    "fails: {}",
                    verdict.violated.iter().map(|c| c.name()).collect::<Vec<_>>().join(", ")
                )?,
            }
            Ok(EXIT_OK)
        }
        Command::Sweep {
            spec,
            var,
            from,
            to,
            format,
        } => {
            let RingSpec::Quotient(q) = RingSpec::parse(spec)? else {
                return Err(Error::InvalidSpec("sweep needs a quot(...) spec".into()));
            };
            let report = stabilization_sweep(&q, var, *from, *to, &limits)?;
            match format {
                Format::Json => json_line(out, &report)?,
                _ => {
                    writeln!(
                        out,
                        "sweep {} over {}^N, N = {}..{}",
                        report.spec, report.var, from, to
                    )?;
                    for l in &report.levels {
                        match &l.error {
                            Some(e) => writeln!(out, "  N={}: error: {e}", l.n)?,
                            None => writeln!(
                                out,
                                "  N={}: order {} vertices {} edges {} leaves {} transient {}",
                                l.n,
                                l.order,
                                l.vertices,
                                l.edges,
                                l.leaves,
                                l.transient.len()
                            )?,
                        }
                    }
                    for s in &report.stable {
                        writeln!(
                            out,
                            "  stable N={}/{}: {} classes, {} edges, {} leaves, cut vertices [{}]",
                            s.n,
                            s.n + 1,
                            s.keys.len(),
                            s.edges.len(),
                            s.leaves,
                            s.cut_vertices.join("], [")
                        )?;
                        for (k, d) in s.keys.iter().zip(&s.degrees) {
                            writeln!(out, "    [{k}] degree {d}")?;
                        }
                    }
                    let verdict = match &report.verdict {
                        Verdict::Stabilized { at } => format!("stabilized at N={at}"),
                        Verdict::Growing { profile } => {
                            format!("growing, stable class counts {profile:?}")
                        }
                        Verdict::Inconclusive => "inconclusive".to_string(),
                    };
                    writeln!(out, "  verdict: {verdict}")?;
                    for o in &report.out_of_scope {
                        writeln!(out, "  {}: {}", o.status, o.statement)?;
                    }
                }
            }
            Ok(EXIT_OK)
        }
    }
}
