//! `nsq`: batch front end for membership checks, closed forms, exhaustive
//! oracles and the validation suite.
//!
//! Exit status: 0 success, 1 validation disagreement, 2 usage or input
//! error, 3 search cap exceeded.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use nsq::constraints::{violations, ConstraintSpec};
use nsq::constructions::{enumerate_family, Family};
use nsq::formulas::{ex_pi_density, ex_pi_exact, ex_sigma_exact};
use nsq::search::{count_members, ex_c3c4, max_product, max_sum, ExtremalCertificate, SearchOptions, DEFAULT_MAX_NODES};
use nsq::validation::{parse_suite, stability_report, to_csv, to_records, validate_suite, ValidationOptions, DEFAULT_SUITE};
use nsq::{classify, format, is_isomorphic, Error, Fraction, Multigraph, Parallelism};

#[derive(Parser)]
#[command(name = "nsq", version, about = "Exact computations on (n,s,q)-multigraphs")]
struct Cli {
    /// Worker threads for the searches (0 picks automatically). Results do
    /// not depend on this.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Abort a search after this many nodes.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_NODES, value_parser = clap::value_parser!(u64).range(1..))]
    max_nodes: u64,
    /// Abort a search after this many seconds.
    #[arg(long, global = true, value_parser = positive_seconds)]
    max_seconds: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Human)]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Human,
    Csv,
    /// One JSON object per line.
    Records,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Product,
    Sum,
}

#[derive(Subcommand)]
enum Command {
    /// Membership in F(n,s,q) and every violating s-set of a multigraph file.
    Check {
        #[arg(long, num_args = 2, value_names = ["S", "Q"], required = true)]
        spec: Vec<u64>,
        file: PathBuf,
    },
    /// The closed-form regime of (s, q).
    Classify { s: usize, q: u64 },
    /// A member of U:a, Ustar:s,a or T:parts,a on n vertices.
    Construct {
        family: String,
        n: usize,
        /// Write to a file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Every labeled member (n <= 8) instead of the default one.
        #[arg(long)]
        all: bool,
    },
    /// Closed-form product and sum values and the product density.
    Formula { n: usize, s: usize, q: u64 },
    /// Exhaustive maximisation of the product or the sum.
    Search {
        #[arg(value_enum)]
        mode: Mode,
        n: usize,
        s: usize,
        q: u64,
        /// All extremal graphs up to isomorphism.
        #[arg(long)]
        all_witnesses: bool,
    },
    /// |F(n,s,q)| over labeled multigraphs.
    Count { n: usize, s: usize, q: u64 },
    /// The largest {C3,C4}-free graph on n vertices.
    Girth45 { n: usize },
    /// Formula-versus-oracle reports; exits 1 on any disagreement.
    Validate {
        /// File of `n s q` lines; the built-in grid otherwise.
        #[arg(long)]
        suite: Option<PathBuf>,
        /// Compare the records output with this file (exit 1 on mismatch).
        #[arg(long)]
        golden: Option<PathBuf>,
        /// Rewrite the golden file instead of comparing.
        #[arg(long, requires = "golden")]
        regen_golden: bool,
        /// Fill the time_ms column (output then varies between runs).
        #[arg(long)]
        timings: bool,
    },
    /// Near-extremal class counts over a grid of exponents.
    Stability {
        n: usize,
        s: usize,
        q: u64,
        /// Comma-separated values such as `0,1/10,0.2`.
        #[arg(long, default_value = "0")]
        eps: String,
    },
    /// Whether two multigraph files are isomorphic.
    Isocheck { a: PathBuf, b: PathBuf },
}

fn positive_seconds(text: &str) -> Result<f64, String> {
    match text.parse::<f64>() {
        Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
        _ => Err(format!("expected a positive number of seconds, got {text:?}")),
    }
}

enum Failure {
    Disagreement(String),
    Usage(String),
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded(_) => Failure::Cap(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

/// One command's result in every output format.
struct Output {
    human: String,
    record: Value,
    csv: Option<String>,
}

impl Output {
    fn new(human: impl Into<String>, record: Value) -> Self {
        Output { human: human.into(), record, csv: None }
    }

    fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Human => ensure_newline(self.human.clone()),
            OutputFormat::Records => match &self.record {
                Value::Array(items) => items.iter().map(|v| v.to_string() + "\n").collect(),
                v => v.to_string() + "\n",
            },
            OutputFormat::Csv => self.csv.clone().unwrap_or_else(|| csv_of(&self.record)),
        }
    }
}

fn ensure_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        Value::Bool(_) | Value::Number(_) => v.to_string(),
        other => format!("\"{}\"", other.to_string().replace('"', "\"\"")),
    }
}

/// A header row of keys and one row per object.
fn csv_of(record: &Value) -> String {
    let rows: Vec<&Value> = match record {
        Value::Array(items) => items.iter().collect(),
        v => vec![v],
    };
    let Some(Value::Object(first)) = rows.first() else {
        return String::new();
    };
    let keys: Vec<&String> = first.keys().collect();
    let mut out = keys.iter().map(|k| k.as_str()).collect::<Vec<_>>().join(",") + "\n";
    for row in rows {
        let cells: Vec<String> = keys.iter().map(|k| csv_cell(row.get(k.as_str()).unwrap_or(&Value::Null))).collect();
        out += &(cells.join(",") + "\n");
    }
    out
}

fn read_graph(path: &Path) -> Result<Multigraph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    format::parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn spec(s: usize, q: u64) -> Result<ConstraintSpec, Failure> {
    Ok(ConstraintSpec::new(s, q)?)
}

fn certificate_output(cert: &ExtremalCertificate) -> Output {
    let mut human = format!("{}\nnodes explored: {}\n", cert.value, cert.nodes_explored);
    if let Some(l) = cert.witness_count_labeled {
        human += &format!("labeled witnesses: {l}\n");
    }
    human += &format!("witness classes: {}\n", cert.witnesses.len());
    for w in &cert.witnesses {
        human += &(format::emit(w) + "\n");
    }
    Output::new(human, serde_json::to_value(cert).expect("certificates serialize"))
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let parallelism = Parallelism::from_threads(cli.threads);
    let search = SearchOptions {
        all_witnesses: false,
        parallelism,
        max_nodes: cli.max_nodes,
        max_seconds: cli.max_seconds,
    };
    match &cli.command {
        Command::Check { spec: sq, file } => {
            let (s, q) = (usize::try_from(sq[0]).map_err(|_| Failure::Usage("s is too large".into()))?, sq[1]);
            let spec = spec(s, q)?;
            let g = read_graph(file)?;
            let vs = violations(&g, spec);
            let mut human = if vs.is_empty() { "member\n".to_string() } else { "not a member\n".to_string() };
            human += &format!("violations: {}\n", vs.len());
            for v in &vs {
                human += &format!("{:?} sum {}\n", v.set, v.sum);
            }
            let record = json!({ "s": s, "q": q, "member": vs.is_empty(), "violations": vs });
            Ok(Output::new(human, record))
        }
        Command::Classify { s, q } => {
            let r = classify(*s, *q)?;
            let mut record = serde_json::to_value(r).expect("regimes serialize");
            record["s"] = json!(s);
            record["q"] = json!(q);
            Ok(Output::new(r.to_string(), record))
        }
        Command::Construct { family, n, out, all } => {
            let family: Family = family.parse()?;
            let members = if *all { enumerate_family(*n, family)? } else { vec![family.build(*n)?] };
            let text: String = members.iter().map(|g| format::emit(g) + "\n").collect();
            let record = Value::Array(members.iter().map(format::to_value).collect());
            match out {
                Some(path) => {
                    fs::write(path, &text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                    let summary = json!({ "family": family.to_string(), "n": n, "members": members.len(), "out": path.display().to_string() });
                    Ok(Output::new(format!("wrote {} member(s) to {}", members.len(), path.display()), summary))
                }
                None => Ok(Output::new(text, record)),
            }
        }
        Command::Formula { n, s, q } => {
            let girth = |k: usize| ex_c3c4(k, parallelism).map(|r| r.value);
            let product = ex_pi_exact(*n, *s, *q, Some(&girth))?;
            let sum = ex_sigma_exact(*n, *s, *q).ok();
            let density = ex_pi_density(*s, *q).ok();
            let mut human = format!("{product}\nstatus: {}\n", product.status());
            if let Some(v) = &sum {
                human += &format!("sum: {v} ({})\n", v.status());
            }
            if let Some(d) = &density {
                human += &format!("density: {d}\n");
            }
            let record = json!({
                "n": n, "s": s, "q": q,
                "regime": classify(*s, *q)?.tag(),
                "product": product,
                "sum": sum,
                "density": density.map(|d| json!({ "value": d, "log2": d.log2_value() })),
            });
            Ok(Output::new(human, record))
        }
        Command::Search { mode, n, s, q, all_witnesses } => {
            let opts = SearchOptions { all_witnesses: *all_witnesses, ..search };
            let cert = match mode {
                Mode::Product => max_product(*n, spec(*s, *q)?, &opts)?,
                Mode::Sum => max_sum(*n, spec(*s, *q)?, &opts)?,
            };
            Ok(certificate_output(&cert))
        }
        Command::Count { n, s, q } => {
            let c = count_members(*n, spec(*s, *q)?, &search)?;
            Ok(Output::new(c.to_string(), json!({ "n": n, "s": s, "q": q, "count": c.to_string() })))
        }
        Command::Girth45 { n } => {
            let r = ex_c3c4(*n, parallelism)?;
            let edges: Vec<String> = r.witness.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
            let human = format!("{}\nedges: {}\n", r.value, edges.join(" "));
            Ok(Output::new(human, serde_json::to_value(&r).expect("results serialize")))
        }
        Command::Validate { suite, golden, regen_golden, timings } => {
            let triples = match suite {
                Some(path) => {
                    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                    parse_suite(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
                }
                None => DEFAULT_SUITE.to_vec(),
            };
            let report = validate_suite(&triples, &ValidationOptions { search, timings: *timings })?;
            let records = to_records(&report.reports);
            if let Some(path) = golden {
                if *regen_golden {
                    fs::write(path, &records).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                } else {
                    let expected = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                    if expected != records {
                        return Err(Failure::Disagreement(format!("{} differs from the current reports", path.display())));
                    }
                }
            }
            let csv = to_csv(&report.reports);
            let s = &report.summary;
            let human = format!(
                "{csv}cases: {}, agreements: {}, disagreements: {}, cases with failing checks: {}\n",
                s.cases, s.agreements, s.disagreements, s.failed_checks
            );
            let out = Output { human, record: serde_json::to_value(&report.reports).expect("reports serialize"), csv: Some(csv) };
            if !report.all_agree() {
                eprint!("{}", out.render(cli.format));
                return Err(Failure::Disagreement(format!("{} disagreement(s)", s.disagreements)));
            }
            Ok(out)
        }
        Command::Stability { n, s, q, eps } => {
            let grid = eps
                .split(',')
                .map(|e| e.trim().parse::<Fraction>())
                .collect::<Result<Vec<_>, _>>()?;
            let rows = stability_report(*n, *s, *q, &grid, &search)?;
            let human: String = std::iter::once("eps classes max_distance\n".to_string())
                .chain(rows.iter().map(|r| format!("{} {} {}\n", r.eps, r.classes, r.max_distance)))
                .collect();
            Ok(Output::new(human, serde_json::to_value(&rows).expect("rows serialize")))
        }
        Command::Isocheck { a, b } => {
            let (g, h) = (read_graph(a)?, read_graph(b)?);
            let iso = is_isomorphic(&g, &h);
            let human = if iso { "isomorphic" } else { "not isomorphic" };
            Ok(Output::new(human, json!({ "isomorphic": iso })))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.render(cli.format));
            ExitCode::SUCCESS
        }
        Err(Failure::Disagreement(msg)) => {
            eprintln!("nsq: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("nsq: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("nsq: {msg}");
            ExitCode::from(3)
        }
    }
}
