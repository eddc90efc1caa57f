//! Command-line driver.
//!
//! Exit codes: 0 success, 1 input or parse error, 2 precondition violated,
//! 3 resource bound exceeded, 4 verification failed, 5 internal invariant
//! breach. Data goes to the output stream, diagnostics to the error stream.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::decompose::{decompose_higher_rank, find_separated_hyperbolic_pair, DEFAULT_SEARCH_BOUND};
use crate::enumerate::{
    connected_graphs, corpus_row, free_trees, paper_figure, small_spherical_affine_components,
    sweep_subhyperbolic_triples, verify_corpus, CorpusReport, Figure,
};
use crate::error::{Error, Result};
use crate::graph::{BondLabel, CoxeterGraph};
use crate::spectral::{classify, Tolerance};

pub mod parse;
pub mod report;

pub use parse::{parse_graph_text, serialize_graph, GraphDocument};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_VERIFY_FAIL: i32 = 4;
pub const EXIT_INTERNAL: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "coxeter", version, about = "Spectral classification of Coxeter graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the class, signature and two largest eigenvalues.
    Classify {
        file: PathBuf,
        /// Absolute width of the band around 2 (default 1e-8 * n).
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Split a connected higher-rank graph by the sign of its second eigenvector.
    Decompose {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Search for separated induced subgraphs that are each hyperbolic.
    SearchSeparated {
        file: PathBuf,
        /// Largest graph the exhaustive search accepts.
        #[arg(long, default_value_t = DEFAULT_SEARCH_BOUND)]
        max_n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Verify a corpus contains no higher-rank graph.
    Verify {
        #[command(subcommand)]
        corpus: VerifyCorpus,
    },
    /// Emit a corpus, one row per isomorphism class.
    Enumerate(EnumerateArgs),
    /// Print a fixture graph in the text format.
    Figure {
        #[arg(value_enum)]
        name: FigureArg,
    },
}

#[derive(Debug, Subcommand)]
enum VerifyCorpus {
    /// All connected simply-laced graphs with 1..=max-n vertices.
    Graphs {
        #[arg(long, default_value_t = 7)]
        max_n: usize,
    },
    /// All trees with 1..=max-n vertices.
    Trees {
        #[arg(long, default_value_t = 11)]
        max_n: usize,
    },
    /// Subhyperbolic triples over all spherical/affine components up to a size.
    Triples {
        #[arg(long, default_value_t = 4)]
        component_size: usize,
    },
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    #[arg(value_enum)]
    kind: CorpusKind,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CorpusKind {
    Graphs,
    Trees,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Jsonl,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FigureArg {
    Fig1,
    Fig2,
    #[value(name = "fig3_example")]
    Fig3Example,
}

/// Runs the CLI on `argv` (including the program name) with the process's
/// standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                EXIT_OK
            } else {
                let _ = write!(err, "{e}");
                EXIT_PARSE
            };
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn io_error(e: std::io::Error) -> Error {
    Error::Computation(format!("write failed: {e}"))
}

fn load(path: &PathBuf) -> Result<CoxeterGraph> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Construction(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_graph_text(&text)?.graph)
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map_or_else(|| "none".to_string(), |v| v.to_string())
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Classify { file, tol, json } => {
            let graph = load(&file)?;
            let tol = match tol {
                Some(t) if t > 0.0 && t.is_finite() => Tolerance::Absolute(t),
                Some(t) => return Err(Error::Domain(format!("--tol must be positive, got {t}"))),
                None => Tolerance::default(),
            };
            let c = classify(&graph, tol)?;
            if json {
                let doc = report::report("classify", &graph, &c, None);
                writeln!(out, "{}", report::to_json(&doc)).map_err(io_error)?;
            } else {
                writeln!(
                    out,
                    "{}\nsignature: {}\nlambda1: {}\nlambda2: {}\nexact: {}\napproximate: {}",
                    c.class,
                    c.signature,
                    c.lambda1,
                    fmt_opt(c.lambda2),
                    c.exact,
                    c.approximate
                )
                .map_err(io_error)?;
            }
            Ok(EXIT_OK)
        }
        Command::Decompose { file, json } => {
            let graph = load(&file)?;
            let c = classify(&graph, Tolerance::default())?;
            let cert = decompose_higher_rank(&graph)?;
            if json {
                let payload = report::Certificate::Decomposition(report::decomposition_report(&graph, &cert));
                let doc = report::report("decompose", &graph, &c, Some(payload));
                writeln!(out, "{}", report::to_json(&doc)).map_err(io_error)?;
            } else {
                writeln!(out, "lambda2: {} (multiplicity {})", cert.lambda2, cert.split.multiplicity).map_err(io_error)?;
                for (name, part) in [("positive", &cert.positive), ("negative", &cert.negative)] {
                    writeln!(
                        out,
                        "{name}: {} [{}, lambda_max {}, min residual {:e}]",
                        report::names(&graph, &part.vertices).join(" "),
                        part.classification.class,
                        part.lambda_max,
                        part.min_residual()
                    )
                    .map_err(io_error)?;
                }
                writeln!(out, "zero: {}", report::names(&graph, &cert.split.zero).join(" ")).map_err(io_error)?;
            }
            Ok(EXIT_OK)
        }
        Command::SearchSeparated { file, max_n, json } => {
            let graph = load(&file)?;
            let c = classify(&graph, Tolerance::default())?;
            let found = find_separated_hyperbolic_pair(&graph, max_n)?;
            if json {
                let payload = found
                    .as_ref()
                    .map(|cert| report::Certificate::Separation(report::separation_report(&graph, cert)));
                let doc = report::report("search-separated", &graph, &c, payload);
                writeln!(out, "{}", report::to_json(&doc)).map_err(io_error)?;
            } else {
                match &found {
                    Some(cert) => writeln!(
                        out,
                        "separated hyperbolic pair: {{{}}} [{}] and {{{}}} [{}]; graph is {}",
                        report::names(&graph, &cert.first).join(" "),
                        cert.first_class.class,
                        report::names(&graph, &cert.second).join(" "),
                        cert.second_class.class,
                        cert.whole.class
                    ),
                    None => writeln!(out, "none found"),
                }
                .map_err(io_error)?;
            }
            Ok(EXIT_OK)
        }
        Command::Verify { corpus } => verify(corpus, out, err),
        Command::Enumerate(args) => {
            let graphs = match args.kind {
                CorpusKind::Graphs => connected_graphs(args.n)?,
                CorpusKind::Trees => free_trees(args.n)?,
            };
            match args.format {
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(out);
                    for g in &graphs {
                        w.serialize(corpus_row(g)?)
                            .map_err(|e| Error::Computation(format!("csv: {e}")))?;
                    }
                    w.flush().map_err(io_error)?;
                }
                Format::Jsonl => {
                    for g in &graphs {
                        let row = serde_json::to_string(&corpus_row(g)?).expect("rows serialize");
                        writeln!(out, "{row}").map_err(io_error)?;
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Figure { name } => {
            let figure = match name {
                FigureArg::Fig1 => Figure::Fig1,
                FigureArg::Fig2 => Figure::Fig2,
                FigureArg::Fig3Example => Figure::Fig3Example,
            };
            write!(out, "{}", serialize_graph(&paper_figure(figure))).map_err(io_error)?;
            Ok(EXIT_OK)
        }
    }
}

fn print_corpus(out: &mut dyn Write, noun: &str, report: &CorpusReport) -> Result<()> {
    for (n, count) in &report.per_size {
        writeln!(out, "n={n}: {count}").map_err(io_error)?;
    }
    for (class, count) in &report.per_class {
        writeln!(out, "{class}: {count}").map_err(io_error)?;
    }
    writeln!(out, "exact: {}", report.exact).map_err(io_error)?;
    for w in &report.witnesses {
        writeln!(out, "witness: {}", w.canonical_form).map_err(io_error)?;
    }
    writeln!(
        out,
        "{} {noun}, {} higher-rank witnesses, {}",
        report.total(),
        report.witnesses.len(),
        if report.verified() { "PASS" } else { "FAIL" }
    )
    .map_err(io_error)
}

fn verify(corpus: VerifyCorpus, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let (noun, graphs) = match corpus {
        VerifyCorpus::Graphs { max_n } => {
            let mut all = Vec::new();
            for n in 1..=max_n {
                all.extend(connected_graphs(n)?);
            }
            ("graphs", all)
        }
        VerifyCorpus::Trees { max_n } => {
            let mut all = Vec::new();
            for n in 1..=max_n {
                all.extend(free_trees(n)?);
            }
            ("trees", all)
        }
        VerifyCorpus::Triples { component_size } => {
            if !(1..=crate::enumerate::MAX_GRAPH_ORDER).contains(&component_size) {
                return Err(Error::Domain(format!("--component-size must be in 1..=8, got {component_size}")));
            }
            let components = small_spherical_affine_components(component_size)?;
            let labels = [None, Some(BondLabel::THREE), Some(BondLabel::finite(4)?), Some(BondLabel::INFINITY)];
            let report = sweep_subhyperbolic_triples(&components, &labels)?;
            for (class, count) in &report.per_class {
                writeln!(out, "{class}: {count}").map_err(io_error)?;
            }
            for w in &report.witnesses {
                writeln!(out, "witness: {}", w.canonical_form).map_err(io_error)?;
            }
            writeln!(
                out,
                "{} triples over {} components, {} higher-rank witnesses, {}",
                report.graphs,
                report.components,
                report.witnesses.len(),
                if report.verified() { "PASS" } else { "FAIL" }
            )
            .map_err(io_error)?;
            return Ok(if report.verified() { EXIT_OK } else { EXIT_VERIFY_FAIL });
        }
    };
    let report = verify_corpus(&graphs)?;
    print_corpus(out, noun, &report)?;
    if report.route_mismatches > 0 {
        let _ = writeln!(
            err,
            "error: exact and floating classification routes disagree on {} graphs",
            report.route_mismatches
        );
        return Ok(EXIT_INTERNAL);
    }
    Ok(if report.verified() { EXIT_OK } else { EXIT_VERIFY_FAIL })
}

