use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use stabgeo_cli::{commands, experiments, CliError, Experiment, ExperimentConfig, Settings};

#[derive(Parser)]
#[command(name = "stabgeo", version, about = "Stability experiments for Brunn–Minkowski type inequalities")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Santaló point and volume product of one body
    Santalo(SantaloArgs),
    /// One-dimensional midpoint inequality report
    Pl1d(Pl1dArgs),
    /// Bounds between sigma, A and eta for two bodies
    Fmp(FmpArgs),
    /// Level-stack tracer
    Pln(PlnArgs),
    /// Cap-cutting exponent scan
    CapScan(ScanArgs),
    /// Deficit against Banach–Mazur distance over random bodies
    BsScan(ScanArgs),
    /// Midpoint stability scan (`--pln` for level stacks)
    PlScan(ScanArgs),
}

#[derive(Args)]
struct SantaloArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    body: Option<String>,
    #[arg(long, conflicts_with = "profile")]
    polygon: bool,
    #[arg(long)]
    profile: bool,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    output: Option<String>,
}

#[derive(Args)]
struct Pl1dArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    f: Option<String>,
    #[arg(long)]
    g: Option<String>,
    #[arg(long)]
    m: Option<String>,
    /// arith or geom
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    output: Option<String>,
}

#[derive(Args)]
struct FmpArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    c: Option<String>,
    #[arg(long, conflicts_with = "profile")]
    polygon: bool,
    #[arg(long)]
    profile: bool,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    output: Option<String>,
}

#[derive(Args)]
struct PlnArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    f: Option<String>,
    #[arg(long)]
    g: Option<String>,
    #[arg(long)]
    m: Option<String>,
    #[arg(long)]
    r_samples: Option<usize>,
    #[arg(long)]
    output: Option<String>,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    dim: Option<usize>,
    /// `v1,v2,...`, `log:lo:hi:n` or `lin:lo:hi:n`
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    output: Option<String>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    levels: Option<usize>,
    #[arg(long)]
    points: Option<usize>,
    #[arg(long)]
    count: Option<usize>,
    #[arg(long)]
    cutoff: Option<f64>,
    /// shift or asymmetric
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    r_samples: Option<usize>,
    /// run the level-stack variant of pl-scan
    #[arg(long)]
    pln: bool,
}

fn kind(polygon: bool, profile: bool) -> Option<&'static str> {
    match (polygon, profile) {
        (true, _) => Some("polygon"),
        (_, true) => Some("profile"),
        _ => None,
    }
}

fn base(config: &Option<PathBuf>) -> Result<Settings, CliError> {
    config.as_deref().map_or(Ok(Settings::default()), Settings::load)
}

fn emit(output: Option<&str>, text: &str) -> Result<(), CliError> {
    match output {
        Some(p) => std::fs::write(Path::new(p), text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn scan(a: ScanArgs, experiment: Experiment) -> Result<(), CliError> {
    let mut s = base(&a.config)?.overlay([
        ("dim", a.dim.map(|v| v.to_string())),
        ("grid", a.grid),
        ("seed", a.seed.map(|v| v.to_string())),
        ("output", a.output),
        ("samples", a.samples.map(|v| v.to_string())),
        ("levels", a.levels.map(|v| v.to_string())),
        ("points", a.points.map(|v| v.to_string())),
        ("count", a.count.map(|v| v.to_string())),
        ("cutoff", a.cutoff.map(|v| v.to_string())),
        ("family", a.family),
        ("r_samples", a.r_samples.map(|v| v.to_string())),
    ]);
    if a.pln {
        if experiment != Experiment::PlScan {
            return Err(CliError::Config("--pln only applies to pl-scan".into()));
        }
        s.set("experiment", "pln-scan");
    }
    let cfg = ExperimentConfig::from_settings(&s, experiment)?;
    log::info!("{} over {} grid points", cfg.experiment, cfg.grid.len().max(cfg.count));
    let out = experiments::run(&cfg)?;
    for w in &out.warnings {
        log::warn!("{w}");
    }
    let csv = out.table.to_csv();
    let to_file = cfg.output_path.is_some();
    emit(cfg.output_path.as_deref().and_then(Path::to_str), &csv)?;
    for line in out.summary() {
        if to_file {
            println!("{line}");
        } else {
            eprintln!("{line}");
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Cmd::Santalo(a) => {
            let s = base(&a.config)?.overlay([
                ("body", a.body),
                ("kind", kind(a.polygon, a.profile).map(str::to_string)),
                ("dim", a.dim.map(|v| v.to_string())),
                ("output", a.output),
            ]);
            emit(s.get("output"), &commands::santalo(&s)?.to_csv())
        }
        Cmd::Pl1d(a) => {
            let s = base(&a.config)?.overlay([
                ("f", a.f),
                ("g", a.g),
                ("m", a.m),
                ("mode", a.mode),
                ("output", a.output),
            ]);
            emit(s.get("output"), &commands::pl1d(&s)?.to_csv())
        }
        Cmd::Fmp(a) => {
            let s = base(&a.config)?.overlay([
                ("k", a.k),
                ("c", a.c),
                ("kind", kind(a.polygon, a.profile).map(str::to_string)),
                ("dim", a.dim.map(|v| v.to_string())),
                ("output", a.output),
            ]);
            emit(s.get("output"), &commands::fmp(&s)?.to_csv())
        }
        Cmd::Pln(a) => {
            let s = base(&a.config)?.overlay([
                ("f", a.f),
                ("g", a.g),
                ("m", a.m),
                ("r_samples", a.r_samples.map(|v| v.to_string())),
                ("output", a.output),
            ]);
            let (summary, levels) = commands::pln(&s)?;
            emit(s.get("output"), &format!("{}\n{}", summary.to_csv(), levels.to_csv()))
        }
        Cmd::CapScan(a) => scan(a, Experiment::CapScan),
        Cmd::BsScan(a) => scan(a, Experiment::BsScan),
        Cmd::PlScan(a) => scan(a, Experiment::PlScan),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("stabgeo: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
