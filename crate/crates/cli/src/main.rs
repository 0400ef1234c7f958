use std::path::PathBuf;
use std::process::ExitCode;

use bos_core::complex::ComplexError;
use bos_core::diagram::{build_tait, parse_pd, ColorSide, DiagramError, LinkDiagram};
use bos_core::homology::{
    HomologyError, RunOptions, StrategyRegistry, DEFAULT_EXACT_LIMIT, DEFAULT_SEED,
};
use bos_core::invariants::catalog::{self, CatalogEntry};
use bos_core::invariants::{
    check_mirror, check_reidemeister_pair, complex_of, determinant_goeritz, skein_consistency,
    verify_diagram, CheckOutcome, InvariantError,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "bos",
    version,
    about = "BOS cohomology of link diagrams over GF(2) rational function fields"
)]
struct Cli {
    /// Worker threads; defaults to all cores.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cohomology ranks by degree.
    Homology(RunArgs),
    /// d^2, base points, colors, Euler characteristic, mirror and Reidemeister checks.
    Verify {
        #[command(flatten)]
        run: RunArgs,
        /// Verify every catalog diagram not marked slow.
        #[arg(long)]
        all: bool,
    },
    /// Skein consistency at one crossing, or at every crossing.
    Skein {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        crossing: Option<usize>,
    },
    /// List the bundled diagrams.
    Catalog {
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// States and differential entries; `--format json` prints the Tait data instead.
    DumpComplex(RunArgs),
}

#[derive(Args, Clone)]
struct RunArgs {
    /// File holding a PD code.
    path: Option<PathBuf>,
    /// Inline PD code, e.g. "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)" or UNKNOT.
    #[arg(long, conflicts_with = "path")]
    pd: Option<String>,
    /// Bundled diagram by name.
    #[arg(long, conflicts_with_all = ["path", "pd"])]
    catalog: Option<String>,
    #[arg(long, value_enum, default_value_t = Mode::Auto)]
    mode: Mode,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Differential entries above which `auto` will not fall back to exact.
    #[arg(long, default_value_t = DEFAULT_EXACT_LIMIT)]
    exact_limit: usize,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[arg(long)]
    base_arc: Option<u32>,
}

#[derive(ValueEnum, Clone, Copy)]
enum Mode {
    Exact,
    Specialized,
    /// Specialized, then evaluated at a random point of GF(2^64).
    Evaluated,
    Cancel,
    Auto,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Specialized => "specialized",
            Mode::Evaluated => "evaluated",
            Mode::Cancel => "cancel",
            Mode::Auto => "auto",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Table,
    Json,
}

enum Failure {
    Usage(String),
    Checks,
    Engine(InvariantError),
}

impl From<InvariantError> for Failure {
    fn from(e: InvariantError) -> Self {
        Failure::Engine(e)
    }
}

impl From<DiagramError> for Failure {
    fn from(e: DiagramError) -> Self {
        Failure::Engine(e.into())
    }
}

impl From<ComplexError> for Failure {
    fn from(e: ComplexError) -> Self {
        Failure::Engine(e.into())
    }
}

impl From<HomologyError> for Failure {
    fn from(e: HomologyError) -> Self {
        Failure::Engine(e.into())
    }
}

fn diagram_code(e: &DiagramError) -> u8 {
    match e {
        DiagramError::Disconnected => 3,
        DiagramError::ColoringFailure => 4,
        _ => 2,
    }
}

fn exit_code(e: &InvariantError) -> u8 {
    match e {
        InvariantError::Diagram(d) | InvariantError::Complex(ComplexError::Diagram(d)) => {
            diagram_code(d)
        }
        InvariantError::Complex(ComplexError::TooManyCrossings(_)) => 2,
        InvariantError::Homology(HomologyError::FallbackTooLarge { .. }) => 5,
        InvariantError::Homology(HomologyError::UnknownStrategy(_)) => 2,
        _ => 4,
    }
}

impl RunArgs {
    fn options(&self) -> RunOptions {
        RunOptions {
            seed: self.seed,
            exact_limit: self.exact_limit,
        }
    }

    fn entry(&self) -> Result<Option<CatalogEntry>, Failure> {
        match &self.catalog {
            None => Ok(None),
            Some(name) => catalog::find(&catalog::bundled(), name)
                .cloned()
                .map(Some)
                .ok_or_else(|| Failure::Usage(format!("no catalog entry named {name:?}"))),
        }
    }

    fn diagram(&self) -> Result<LinkDiagram, Failure> {
        let text = match (&self.path, &self.pd, self.entry()?) {
            (Some(p), _, _) => std::fs::read_to_string(p)
                .map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?
                .lines()
                .filter(|l| !l.trim_start().starts_with('#'))
                .collect::<Vec<_>>()
                .join(" "),
            (_, Some(pd), _) => pd.clone(),
            (_, _, Some(e)) => e.pd,
            _ => return Err(Failure::Usage("give a PD file, --pd or --catalog".into())),
        };
        Ok(parse_pd(&text)?)
    }
}

fn homology(args: &RunArgs) -> Result<(), Failure> {
    let d = args.diagram()?;
    let c = complex_of(&d, args.base_arc, ColorSide::Normal)?;
    let report = StrategyRegistry::default().run(args.mode.name(), &c, &args.options())?;
    match args.format {
        Format::Json => println!("{}", report.to_json()),
        Format::Table => print!("{}", report.to_table()),
    }
    Ok(())
}

fn emit(format: Format, label: &str, outcomes: &[CheckOutcome]) {
    match format {
        Format::Json => println!("{}", json!({ "diagram": label, "checks": outcomes })),
        Format::Table => {
            println!("== {label}");
            for o in outcomes {
                println!("{}", o.line());
            }
        }
    }
}

fn verify_one(
    label: &str,
    d: &LinkDiagram,
    entry: Option<&CatalogEntry>,
    args: &RunArgs,
) -> Result<bool, Failure> {
    let opts = args.options();
    let mode = args.mode.name();
    let mut outcomes = verify_diagram(d, mode, &opts)?;
    outcomes.push(check_mirror(d, mode, &opts)?);
    if let Some(e) = entry {
        let all = catalog::bundled();
        for (base, variant) in catalog::reidemeister_pairs(&all) {
            if variant.has("slow") || (base.name != e.name && variant.name != e.name) {
                continue;
            }
            let mut o =
                check_reidemeister_pair(&base.diagram()?, &variant.diagram()?, mode, &opts)?;
            o.name = format!("reidemeister {} ~ {}", base.name, variant.name);
            outcomes.push(o);
        }
    }
    emit(args.format, label, &outcomes);
    Ok(outcomes.iter().all(|o| !o.gating || o.passed()))
}

fn verify(args: &RunArgs, all: bool) -> Result<(), Failure> {
    let ok = if all {
        let mut ok = true;
        for e in catalog::bundled().iter().filter(|e| !e.has("slow")) {
            ok &= verify_one(&e.name, &e.diagram()?, Some(e), args)?;
        }
        ok
    } else {
        let entry = args.entry()?;
        let label = entry
            .as_ref()
            .map_or("input".to_string(), |e| e.name.clone());
        verify_one(&label, &args.diagram()?, entry.as_ref(), args)?
    };
    if ok {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn skein(args: &RunArgs, crossing: Option<usize>) -> Result<(), Failure> {
    let d = args.diagram()?;
    let crossings: Vec<usize> = match crossing {
        Some(c) if c >= d.crossing_count() => {
            return Err(Failure::Usage(format!("no crossing {c}")))
        }
        Some(c) => vec![c],
        None => (0..d.crossing_count()).collect(),
    };
    let outcomes = crossings
        .into_iter()
        .map(|c| skein_consistency(&d, c, args.mode.name(), &args.options()))
        .collect::<Result<Vec<_>, _>>()?;
    emit(args.format, "skein", &outcomes);
    if outcomes.iter().all(CheckOutcome::passed) {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn list_catalog(format: Format) -> Result<(), Failure> {
    let mut rows = Vec::new();
    for e in catalog::bundled() {
        let d = e.diagram()?;
        let det = determinant_goeritz(&d)?;
        rows.push((e, d.crossing_count(), d.components(), det));
    }
    match format {
        Format::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|(e, n, k, det)| json!({ "name": e.name, "crossings": n, "components": k, "det": det, "pd": e.pd }))
                .collect();
            println!("{}", serde_json::to_string_pretty(&v).expect("json"));
        }
        Format::Table => {
            println!(
                "{:<18} {:>9} {:>10} {:>5}  tags",
                "name", "crossings", "components", "det"
            );
            for (e, n, k, det) in rows {
                let tags: Vec<&str> = e.tags.keys().map(String::as_str).collect();
                println!("{:<18} {n:>9} {k:>10} {det:>5}  {}", e.name, tags.join(","));
            }
        }
    }
    Ok(())
}

fn dump(args: &RunArgs) -> Result<(), Failure> {
    let d = args.diagram()?;
    let t = build_tait(&d, args.base_arc, ColorSide::Normal)?;
    match args.format {
        Format::Json => println!("{}", t.to_json()),
        Format::Table => {
            let c = bos_core::complex::assemble(&t)?;
            print!(
                "{}",
                c.dump()
                    .map_err(|e| Failure::Engine(ComplexError::from(e).into()))?
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match &cli.command {
        Command::Homology(a) => homology(a),
        Command::Verify { run, all } => verify(run, *all),
        Command::Skein { run, crossing } => skein(run, *crossing),
        Command::Catalog { format } => list_catalog(*format),
        Command::DumpComplex(a) => dump(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Engine(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
