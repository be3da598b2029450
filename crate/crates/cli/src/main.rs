use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use irregularity_core::enumerate::{enumerate_connected, enumerate_connected_all};
use irregularity_core::verify::{
    check_conjecture, verify_bicyclic, verify_family, verify_graphs, ConjectureMode,
    ConjectureReport,
};
use irregularity_core::{
    edge_irregularity, parse_graph6, reduce_to_minimum, total_irregularity, write_graph6, Family,
    Graph, VerificationReport,
};
use serde_json::json;

#[derive(Parser)]
#[command(name = "irregularity", version, about = "Total irregularity of graphs")]
struct Cli {
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute irregularity indices for every graph in a graph6 file.
    Compute {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Index::Both)]
        index: Index,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Write one graph6 record per isomorphism class.
    Enumerate {
        #[arg(long, value_enum)]
        family: EnumFamily,
        #[arg(long)]
        n: usize,
        /// Edge count, `connected` only.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the smallest values of irr_t with their closed forms.
    Verify {
        #[arg(long, value_enum)]
        family: VerifyFamily,
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        /// Rank the graphs in this graph6 file instead of enumerating.
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Search for non-regular connected graphs with irr_t < 2n - 4.
    Conjecture {
        #[arg(long, default_value_t = 1)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Mode::Sequence)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Apply branch-transformations until none is possible.
    Transform {
        #[arg(long = "in")]
        input: PathBuf,
        /// Print every step.
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Index {
    Total,
    Edge,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Sequence,
    Graph,
}

#[derive(Clone, Copy, ValueEnum)]
enum EnumFamily {
    Tree,
    Unicyclic,
    Bicyclic,
    Connected,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyFamily {
    Tree,
    Unicyclic,
    /// All three bicyclic classes plus the whole family.
    Bicyclic,
    BicyclicInfinityL1,
    BicyclicInfinityL2plus,
    BicyclicTheta,
    Connected,
}

impl VerifyFamily {
    fn family(self) -> Family {
        match self {
            VerifyFamily::Tree => Family::Tree,
            VerifyFamily::Unicyclic => Family::Unicyclic,
            VerifyFamily::Bicyclic => Family::BicyclicAll,
            VerifyFamily::BicyclicInfinityL1 => Family::BicyclicInfinityL1,
            VerifyFamily::BicyclicInfinityL2plus => Family::BicyclicInfinityL2plus,
            VerifyFamily::BicyclicTheta => Family::BicyclicTheta,
            VerifyFamily::Connected => Family::ConnectedAll,
        }
    }
}

/// Failures mapped to exit codes.
enum Failure {
    Usage(anyhow::Error),
    Io(anyhow::Error),
}

impl Failure {
    fn usage(e: impl Into<anyhow::Error>) -> Self {
        Failure::Usage(e.into())
    }

    fn io(e: impl Into<anyhow::Error>) -> Self {
        Failure::Io(e.into())
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(k) = cli.threads {
        if k == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        builder = builder.num_threads(k);
    }
    let pool = match builder.build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: cannot start worker threads: {e}");
            return ExitCode::from(3);
        }
    };
    match pool.install(|| run(cli.command)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}

fn run(command: Command) -> Outcome {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let ok = match command {
        Command::Compute { input, index, format } => compute(&mut out, &input, index, format)?,
        Command::Enumerate { family, n, m, out: path } => {
            let graphs = enumerate(family, n, m)?;
            match path {
                Some(path) => {
                    let file = fs::File::create(&path)
                        .with_context(|| format!("cannot create {}", path.display()))
                        .map_err(Failure::io)?;
                    write_records(&mut BufWriter::new(file), &graphs)?;
                }
                None => write_records(&mut out, &graphs)?,
            }
            true
        }
        Command::Verify { family, n_min, n_max, format, input } => {
            let reports = verify(family, n_min, n_max, input.as_deref())?;
            for r in &reports {
                match format {
                    ReportFormat::Json => emit_json(&mut out, r)?,
                    ReportFormat::Text => print_report(&mut out, r).map_err(Failure::io)?,
                }
            }
            reports.iter().all(VerificationReport::passed)
        }
        Command::Conjecture { n_min, n_max, mode, format } => {
            if n_min > n_max {
                return Err(Failure::usage(anyhow::anyhow!("--n-min exceeds --n-max")));
            }
            let mode = match mode {
                Mode::Sequence => ConjectureMode::Sequence,
                Mode::Graph => ConjectureMode::Graph,
            };
            let report = check_conjecture(n_min..=n_max, mode).map_err(Failure::usage)?;
            match format {
                ReportFormat::Json => emit_json(&mut out, &report)?,
                ReportFormat::Text => print_conjecture(&mut out, &report).map_err(Failure::io)?,
            }
            report.counterexample.is_none()
        }
        Command::Transform { input, trace, format } => transform(&mut out, &input, trace, format)?,
    };
    out.flush().map_err(Failure::io)?;
    Ok(ok)
}

fn read_graphs(path: &Path) -> Result<Vec<Graph>, Failure> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(Failure::io)?;
    text.lines()
        .enumerate()
        .map(|(i, line)| (i, line.trim()))
        // Optional header written by some generators.
        .filter(|(_, line)| !line.is_empty() && *line != ">>graph6<<")
        .map(|(i, line)| {
            let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
            parse_graph6(line)
                .with_context(|| format!("{}:{}: bad graph6 record", path.display(), i + 1))
                .map_err(Failure::io)
        })
        .collect()
}

fn record(g: &Graph) -> Result<String, Failure> {
    write_graph6(g).map_err(Failure::usage)
}

fn write_records(out: &mut impl Write, graphs: &[Graph]) -> Result<(), Failure> {
    for g in graphs {
        writeln!(out, "{}", record(g)?).map_err(Failure::io)?;
    }
    out.flush().map_err(Failure::io)
}

fn emit_json(out: &mut impl Write, value: &impl serde::Serialize) -> Result<(), Failure> {
    let line = serde_json::to_string(value).map_err(Failure::io)?;
    writeln!(out, "{line}").map_err(Failure::io)
}

fn compute(out: &mut impl Write, input: &Path, index: Index, format: TableFormat) -> Outcome {
    let graphs = read_graphs(input)?;
    let (total, edge) = match index {
        Index::Total => (true, false),
        Index::Edge => (false, true),
        Index::Both => (true, true),
    };
    if let TableFormat::Csv = format {
        let mut header = vec!["graph"];
        if total {
            header.push("irr_t");
        }
        if edge {
            header.push("irr");
        }
        writeln!(out, "{}", header.join(",")).map_err(Failure::io)?;
    }
    for g in &graphs {
        let name = record(g)?;
        match format {
            TableFormat::Csv => {
                let mut cells = vec![name];
                if total {
                    cells.push(total_irregularity(g).to_string());
                }
                if edge {
                    cells.push(edge_irregularity(g).to_string());
                }
                writeln!(out, "{}", cells.join(",")).map_err(Failure::io)?;
            }
            TableFormat::Json => {
                let mut obj = serde_json::Map::new();
                obj.insert("graph".into(), json!(name));
                if total {
                    obj.insert("irr_t".into(), json!(total_irregularity(g)));
                }
                if edge {
                    obj.insert("irr".into(), json!(edge_irregularity(g)));
                }
                emit_json(out, &obj)?;
            }
        }
    }
    Ok(true)
}

fn enumerate(family: EnumFamily, n: usize, m: Option<usize>) -> Result<Vec<Graph>, Failure> {
    let m_for = |fixed: usize| match m {
        Some(m) if m != fixed => Err(Failure::usage(anyhow::anyhow!(
            "--m {m} is inconsistent with the family (expected {fixed})"
        ))),
        _ => Ok(fixed),
    };
    let graphs = match family {
        EnumFamily::Tree => enumerate_connected(n, m_for(n.saturating_sub(1))?),
        EnumFamily::Unicyclic => enumerate_connected(n, m_for(n)?),
        EnumFamily::Bicyclic => enumerate_connected(n, m_for(n + 1)?),
        EnumFamily::Connected => match m {
            Some(m) => enumerate_connected(n, m),
            None => enumerate_connected_all(n),
        },
    };
    graphs.map_err(Failure::usage)
}

fn verify(
    family: VerifyFamily,
    n_min: usize,
    n_max: usize,
    input: Option<&Path>,
) -> Result<Vec<VerificationReport>, Failure> {
    if n_min > n_max {
        return Err(Failure::usage(anyhow::anyhow!("--n-min exceeds --n-max")));
    }
    let families: Vec<Family> = match family {
        VerifyFamily::Bicyclic => vec![
            Family::BicyclicInfinityL1,
            Family::BicyclicInfinityL2plus,
            Family::BicyclicTheta,
            Family::BicyclicAll,
        ],
        other => vec![other.family()],
    };
    match input {
        Some(path) => {
            let graphs = read_graphs(path)?;
            let mut reports = Vec::new();
            for n in n_min..=n_max {
                let of_order: Vec<Graph> = graphs.iter().filter(|g| g.n() == n).cloned().collect();
                for &f in &families {
                    reports.push(verify_graphs(f, n, &of_order, false).map_err(Failure::usage)?);
                }
            }
            Ok(reports)
        }
        None if matches!(family, VerifyFamily::Bicyclic) => {
            verify_bicyclic(n_min..=n_max).map_err(Failure::usage)
        }
        None => (n_min..=n_max)
            .map(|n| verify_family(families[0], n).map_err(Failure::usage))
            .collect(),
    }
}

fn print_report(out: &mut impl Write, r: &VerificationReport) -> io::Result<()> {
    let status = if r.passed() { "PASS" } else { "FAIL" };
    writeln!(out, "{} n={} {}", r.family.name(), r.n, status)?;
    for (i, rank) in r.ranks.iter().enumerate() {
        let seqs: Vec<String> = rank.sequences.iter().map(ToString::to_string).collect();
        let count = rank.count.map(|c| format!(" graphs={c}")).unwrap_or_default();
        write!(out, "  rank {}: irr_t={}{} sequences={}", i + 1, rank.value, count, seqs.join(" "))?;
        if let Some(e) = r.expected.iter().find(|e| e.rank == i + 1) {
            let verdict = r.verdict.get(i).map(|v| format!("{v:?}").to_lowercase());
            write!(out, " expected={} [{}]", e.value, verdict.unwrap_or_default())?;
        }
        writeln!(out)?;
    }
    if let Some(agrees) = r.sequence_level_agrees {
        writeln!(out, "  sequence-level ranking agrees: {agrees}")?;
    }
    if let Some(x) = &r.extremal_graph {
        writeln!(out, "  rank-1 graph is {}: {}", x.expected, x.holds)?;
    }
    Ok(())
}

fn print_conjecture(out: &mut impl Write, report: &ConjectureReport) -> io::Result<()> {
    for row in &report.rows {
        let min = row.min_nonregular.map_or("-".to_string(), |v| v.to_string());
        let seqs: Vec<String> = row.minimizers.iter().map(ToString::to_string).collect();
        writeln!(
            out,
            "n={} bound={} min_nonregular={} examined={} minimizers={}",
            row.n,
            row.bound,
            min,
            row.examined,
            seqs.join(" ")
        )?;
    }
    match &report.counterexample {
        None => writeln!(out, "no counterexample"),
        Some(c) => writeln!(
            out,
            "counterexample: n={} sequence={} irr_t={} bound={} witness={}",
            c.n,
            c.sequence,
            c.irr_t,
            c.bound,
            c.witness.as_deref().unwrap_or("-")
        ),
    }
}

fn transform(out: &mut impl Write, input: &Path, trace: bool, format: ReportFormat) -> Outcome {
    let graphs = read_graphs(input)?;
    for g in &graphs {
        let name = record(g)?;
        let (reduced, steps) = reduce_to_minimum(g)
            .with_context(|| format!("cannot transform {name}"))
            .map_err(Failure::usage)?;
        let before = total_irregularity(g);
        let after = total_irregularity(&reduced);
        match format {
            ReportFormat::Json => {
                let mut obj = json!({
                    "graph": name,
                    "irr_t": before,
                    "result": record(&reduced)?,
                    "result_irr_t": after,
                    "steps": steps.len(),
                });
                if trace {
                    obj["trace"] = json!(steps);
                }
                emit_json(out, &obj)?;
            }
            ReportFormat::Text => {
                writeln!(
                    out,
                    "{name}: irr_t {before} -> {after} in {} steps, result {}",
                    steps.len(),
                    record(&reduced)?
                )
                .map_err(Failure::io)?;
                if trace {
                    for s in &steps {
                        writeln!(
                            out,
                            "  move {:?} from {} to {}: delta {}",
                            s.moved.vertices(),
                            s.source,
                            s.target,
                            s.delta
                        )
                        .map_err(Failure::io)?;
                    }
                }
            }
        }
    }
    Ok(true)
}
