use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use tama_cli::expr;
use tama_cli::report::Record;
use tama_cli::suites::{self, Options};
use tama_cli::text::parse_diagram;
use tama_core::ama::enumerate_noncrossing;
use tama_core::emit::{emit, Format};
use tama_core::tama::DEFAULT_CAP;
use tama_core::uncross::{self, TamaDiagram};

/// Exact computations in the Weyl-Clifford algebra, the angular momentum
/// algebra and its total (TAMA) extension.
#[derive(Parser)]
#[command(name = "tama", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Number of variables.
    #[arg(long, global = true)]
    n: Option<usize>,
    #[arg(long, global = true)]
    degree: Option<u32>,
    #[arg(long, global = true)]
    max_degree: Option<u32>,
    /// json|text for reports, dot|tikz for `emit`.
    #[arg(long, global = true)]
    format: Option<String>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    #[arg(long, global = true, default_value_t = 0x7a3a)]
    seed: u64,
    /// Largest monomial count a kernel probe may build.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: u64,
    /// Zero every runtime field, for byte-comparable reports.
    #[arg(long, global = true)]
    no_timings: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate an expression and print its normal form.
    Eval {
        expr: String,
        /// Print the leading part in the associated graded algebra.
        #[arg(long)]
        gr: bool,
    },
    /// Run a verification suite (`all` runs every suite).
    Verify { suite: String },
    /// List diagrams or rules.
    Enumerate { kind: Kind },
    /// Rewrite a polynomial in O(i,j) onto uncrossable monomials.
    Rewrite { expr: String },
    /// Draw a diagram given in its text form.
    Emit { diagram: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Noncrossing,
    Uncrossable,
    Tama,
    Rules,
}

enum Failure {
    Usage(String),
    Checks,
}

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(w) = std::env::var("TAMA_WORKERS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(w.max(1)).build_global();
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let mut out = String::new();
    let mut failed = false;
    match &cli.cmd {
        Cmd::Eval { expr: src, gr } => {
            let n = cli.n.ok_or_else(|| usage("eval needs --n"))?;
            let e = expr::parse(src).map_err(usage)?;
            let text = if *gr {
                expr::evaluate_gr(&e, n).map_err(usage)?.to_canonical_string()
            } else {
                expr::evaluate(&e, n).map_err(usage)?.to_canonical_string()
            };
            out.push_str(&text);
            out.push('\n');
        }
        Cmd::Verify { suite } => {
            let opts = Options { n: cli.n, degree: cli.degree, max_degree: cli.max_degree, seed: cli.seed, cap: cli.cap, ..Options::default() };
            let mut records = suites::run_suite(suite, &opts).map_err(Failure::Usage)?;
            let text = report_format(cli)?;
            for r in records.iter_mut() {
                if cli.no_timings {
                    r.runtime_ms = 0;
                }
                failed |= !r.passed();
                out.push_str(&if text { r.to_text() } else { r.to_json() });
                out.push('\n');
            }
        }
        Cmd::Enumerate { kind } => {
            let n = cli.n.ok_or_else(|| usage("enumerate needs --n"))?;
            let degree = cli.degree.or(cli.max_degree).unwrap_or(2);
            match kind {
                Kind::Noncrossing => {
                    for d in enumerate_noncrossing(n, degree as usize) {
                        out.push_str(&format!("{d}\n"));
                    }
                }
                Kind::Uncrossable => {
                    for d in uncross::enumerate_uncrossable(n, degree).map_err(usage)? {
                        out.push_str(&format!("{d}\n"));
                    }
                }
                Kind::Tama => {
                    for d in TamaDiagram::enumerate(n, degree) {
                        out.push_str(&format!("{d}\n"));
                    }
                }
                Kind::Rules => {
                    let text = report_format(cli)?;
                    for r in uncross::derive_rules(n).map_err(usage)? {
                        if text {
                            out.push_str(&format!("{:?} {} -> {}\n", r.kind, r.pattern, r.replacement));
                        } else {
                            let rec = Record::new("rule", json!({"n": n, "a": r.source.0, "b": r.source.1}), r.certify()).detail(json!({
                                "kind": format!("{:?}", r.kind),
                                "pattern": r.pattern.to_string(),
                                "replacement": r.replacement.to_string(),
                            }));
                            out.push_str(&rec.to_json());
                            out.push('\n');
                        }
                    }
                }
            }
        }
        Cmd::Rewrite { expr: src } => {
            let n = cli.n.ok_or_else(|| usage("rewrite needs --n"))?;
            let e = expr::parse(src).map_err(usage)?;
            let p = expr::to_opoly(&e, n).map_err(usage)?;
            let (result, steps, certified) = suites::rewrite_report(&p).map_err(usage)?;
            if report_format(cli)? {
                out.push_str(&format!("{result}\n"));
            } else {
                let rec = Record::new("rewrite", json!({"n": n, "input": p.to_string()}), certified)
                    .detail(json!({"result": result.to_string(), "steps": steps}));
                out.push_str(&rec.to_json());
                out.push('\n');
            }
            failed = !certified;
        }
        Cmd::Emit { diagram } => {
            let format: Format = cli.format.as_deref().unwrap_or("tikz").parse().map_err(usage)?;
            let d = parse_diagram(diagram).map_err(usage)?;
            out.push_str(&emit(&d.drawable(), format));
        }
    }
    match &cli.out {
        Some(path) => std::fs::write(path, out).map_err(usage)?,
        None => {
            let _ = std::io::stdout().lock().write_all(out.as_bytes());
        }
    }
    if failed {
        Err(Failure::Checks)
    } else {
        Ok(())
    }
}

/// True for text output.
fn report_format(cli: &Cli) -> Result<bool, Failure> {
    match cli.format.as_deref() {
        None | Some("json") => Ok(false),
        Some("text") => Ok(true),
        Some(other) => Err(usage(format!("--format must be json or text here, got `{other}`"))),
    }
}
