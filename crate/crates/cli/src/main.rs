//! Command-line workbench: classify spaces, build subspace lattices and
//! endomorphism rings, check lattice laws, run the verification suite,
//! enumerate spaces, and search for polarity counterexamples.
//!
//! Exit codes: 0 — success / all checks pass; 1 — a mathematical check
//! failed (the witness is printed); 2 — invalid input or a cap violation
//! (a single-line JSON diagnostic goes to stderr). Identical inputs and
//! seeds produce byte-identical output, and sampled modes always print
//! their seed.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;

use hermilat::lattice::LATTICE_SIZE_CAP;
use hermilat::subspace::SUBSPACE_ENUM_CAP;
use hermilat::verify::GRAM_SCAN_CAP;
use hermilat::{
    lattice_dot, lattice_of_space_capped, orthosymmetric_spaces_capped, run_suite,
    sample_spaces, CheckStatus, GaloisLattice, GramSpace, Involution, InvolutiveField, Law,
    LawCheckConfig, StarRing, SuiteConfig, SUITE_SEED,
};

#[derive(Parser)]
#[command(name = "hermilat", version, about = "Workbench for sesquilinear spaces, their *-rings, and subspace lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect a field with involution
    Field {
        #[command(subcommand)]
        cmd: FieldCmd,
    },
    /// Classify a space given by its Gram matrix
    Space {
        #[command(subcommand)]
        cmd: SpaceCmd,
    },
    /// Build or law-check subspace lattices
    Lattice {
        #[command(subcommand)]
        cmd: LatticeCmd,
    },
    /// Build the endomorphism *-ring of a space
    Ring {
        #[command(subcommand)]
        cmd: RingCmd,
    },
    /// Run the acceptance verification suite
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
    /// Enumerate or sample nondegenerate orthosymmetric spaces
    Enumerate(EnumerateArgs),
    /// Open-ended searches
    Explore {
        #[command(subcommand)]
        cmd: ExploreCmd,
    },
}

#[derive(Subcommand)]
enum FieldCmd {
    /// Print order, modulus, and involution data
    Info {
        /// Field description file (JSON)
        #[arg(long)]
        spec: PathBuf,
    },
}

#[derive(Subcommand)]
enum SpaceCmd {
    /// Print the classification report of a space
    Check {
        /// Space description file (JSON)
        #[arg(long)]
        spec: PathBuf,
        /// Also write the report to this file
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Build the subspace lattice of a space
    Build {
        /// Space description file (JSON)
        #[arg(long)]
        spec: PathBuf,
        /// Output lattice file (JSON)
        #[arg(long)]
        out: PathBuf,
        /// Also render the Hasse diagram with prime arcs as DOT
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Override the enumeration cap (also: HERMILAT_CAP_OVERRIDE)
        #[arg(long)]
        force_cap: Option<u64>,
    },
    /// Check lattice laws on a lattice file
    Verify {
        /// Lattice file (JSON)
        #[arg(long)]
        spec: PathBuf,
        /// Comma-separated laws (default: all)
        #[arg(long)]
        laws: Option<String>,
        /// Seed for sampled law checks
        #[arg(long, default_value_t = SUITE_SEED)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum RingCmd {
    /// Build the endomorphism *-ring and report its regularity
    Build {
        /// Space description file (JSON)
        #[arg(long)]
        spec: PathBuf,
        /// Also write the report to this file
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Run all suite checks over the default grid
    Suite {
        /// Seed for the sampled grid spaces and sampled law checks
        #[arg(long, default_value_t = SUITE_SEED)]
        seed: u64,
        /// Write the full report to this file
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum InvolutionArg {
    Identity,
    Frobenius,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Sample,
}

#[derive(Args)]
struct EnumerateArgs {
    /// Field characteristic (prime)
    #[arg(long)]
    p: u64,
    /// Extension degree
    #[arg(long, default_value_t = 1)]
    k: u32,
    #[arg(long, value_enum, default_value_t = InvolutionArg::Identity)]
    involution: InvolutionArg,
    /// Space dimension
    #[arg(long)]
    dim: usize,
    /// Enumeration strategy: every invertible orthosymmetric Gram, or a sample
    #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
    mode: ModeArg,
    /// Seed for sampled mode
    #[arg(long, default_value_t = SUITE_SEED)]
    seed: u64,
    /// Number of samples in sampled mode
    #[arg(long, default_value_t = 10)]
    count: usize,
    /// Override the Gram scan cap (also: HERMILAT_CAP_OVERRIDE)
    #[arg(long)]
    force_cap: Option<u64>,
}

#[derive(Subcommand)]
enum ExploreCmd {
    /// Search small complemented subalgebras for polarity failures
    PolaritySubalgebras {
        /// Space description file (JSON)
        #[arg(long)]
        spec: PathBuf,
        /// Number of generator sets to close
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
    },
}

/// Invalid input or cap violation: exit code 2.
struct Invalid(String);

impl From<hermilat::Error> for Invalid {
    fn from(e: hermilat::Error) -> Invalid {
        Invalid(e.to_string())
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(Invalid(message)) => {
            let diagnostic = serde_json::json!({ "error": message });
            eprintln!("{diagnostic}");
            ExitCode::from(2)
        }
    }
}

fn read_spec<T: DeserializeOwned>(path: &Path) -> Result<T, Invalid> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Invalid(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Invalid(format!("{}: {e}", path.display())))
}

fn write_out(path: &Path, contents: &str) -> Result<(), Invalid> {
    std::fs::write(path, contents).map_err(|e| Invalid(format!("{}: {e}", path.display())))
}

fn pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn compact<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("reports serialize")
}

/// `--force-cap` wins, then `HERMILAT_CAP_OVERRIDE`, then the default.
fn effective_cap(flag: Option<u64>, default: u64) -> Result<u64, Invalid> {
    if let Some(cap) = flag {
        return Ok(cap);
    }
    match std::env::var("HERMILAT_CAP_OVERRIDE") {
        Ok(text) => text
            .trim()
            .parse()
            .map_err(|_| Invalid(format!("HERMILAT_CAP_OVERRIDE is not a number: {text}"))),
        Err(_) => Ok(default),
    }
}

fn dispatch(cli: Cli) -> Result<u8, Invalid> {
    match cli.command {
        Command::Field { cmd: FieldCmd::Info { spec } } => field_info(&spec),
        Command::Space { cmd: SpaceCmd::Check { spec, out } } => space_check(&spec, out.as_deref()),
        Command::Lattice { cmd } => match cmd {
            LatticeCmd::Build { spec, out, dot, force_cap } => {
                lattice_build(&spec, &out, dot.as_deref(), force_cap)
            }
            LatticeCmd::Verify { spec, laws, seed } => lattice_verify(&spec, laws.as_deref(), seed),
        },
        Command::Ring { cmd: RingCmd::Build { spec, out } } => ring_build(&spec, out.as_deref()),
        Command::Verify { cmd: VerifyCmd::Suite { seed, out } } => verify_suite(seed, out.as_deref()),
        Command::Enumerate(args) => enumerate(&args),
        Command::Explore { cmd: ExploreCmd::PolaritySubalgebras { spec, budget } } => {
            explore_polarity(&spec, budget)
        }
    }
}

fn field_info(spec: &Path) -> Result<u8, Invalid> {
    let field: InvolutiveField = read_spec(spec)?;
    let star_fixed = field.elements().filter(|&a| field.star(a) == a).count();
    let report = serde_json::json!({
        "field": field,
        "order": field.order(),
        "identity_involution": field.has_identity_involution(),
        "star_fixed_elements": star_fixed,
    });
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    Ok(0)
}

fn space_check(spec: &Path, out: Option<&Path>) -> Result<u8, Invalid> {
    let space: GramSpace = read_spec(spec)?;
    let report = serde_json::json!({
        "dim": space.dim(),
        "class": space.class(),
    });
    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    println!("{text}");
    if let Some(path) = out {
        write_out(path, &text)?;
    }
    Ok(0)
}

fn lattice_build(
    spec: &Path,
    out: &Path,
    dot: Option<&Path>,
    force_cap: Option<u64>,
) -> Result<u8, Invalid> {
    let space: GramSpace = read_spec(spec)?;
    let cap = effective_cap(force_cap, SUBSPACE_ENUM_CAP.min(LATTICE_SIZE_CAP as u64))?;
    let built = lattice_of_space_capped(&space, cap)?;
    write_out(out, &pretty(&built.lattice))?;
    if let Some(path) = dot {
        write_out(path, &lattice_dot(&built.lattice))?;
    }
    let summary = serde_json::json!({
        "elements": built.lattice.size(),
        "out": out.display().to_string(),
        "dot": dot.map(|p| p.display().to_string()),
    });
    println!("{summary}");
    Ok(0)
}

fn parse_laws(arg: Option<&str>) -> Result<Vec<Law>, Invalid> {
    match arg {
        None => Ok(Law::ALL.to_vec()),
        Some(list) => list
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|name| {
                Law::from_name(name).ok_or_else(|| Invalid(format!("unknown law: {name}")))
            })
            .collect(),
    }
}

fn lattice_verify(spec: &Path, laws: Option<&str>, seed: u64) -> Result<u8, Invalid> {
    let lattice: GaloisLattice = read_spec(spec)?;
    let laws = parse_laws(laws)?;
    let config = LawCheckConfig { seed, ..LawCheckConfig::default() };
    let mut failed = false;
    for report in lattice.check_laws(&laws, &config) {
        failed |= !report.pass;
        println!("{}", compact(&report));
    }
    Ok(if failed { 1 } else { 0 })
}

fn ring_build(spec: &Path, out: Option<&Path>) -> Result<u8, Invalid> {
    let space: GramSpace = read_spec(spec)?;
    let ring = StarRing::matrix(space.clone())?;
    let regularity = ring.regularity_report()?;
    let report = serde_json::json!({
        "dim": space.dim(),
        "carrier_size": space.field().order().saturating_pow((space.dim() * space.dim()) as u32),
        "regularity": regularity,
    });
    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    println!("{text}");
    if let Some(path) = out {
        write_out(path, &text)?;
    }
    Ok(0)
}

fn verify_suite(seed: u64, out: Option<&Path>) -> Result<u8, Invalid> {
    let config = SuiteConfig {
        seed,
        law_config: LawCheckConfig { seed, ..SuiteConfig::default().law_config },
    };
    println!("{}", serde_json::json!({ "suite": "default-grid", "seed": seed }));
    let report = run_suite(&config)?;
    let mut failed = false;
    let mut skipped = false;
    for check in &report.checks {
        let verdict = match check.status {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => {
                failed = true;
                "FAIL"
            }
            CheckStatus::SkippedCap => {
                skipped = true;
                "SKIPPED-CAP"
            }
        };
        let note = match &check.witness {
            Some(w) => format!(" [{w}]"),
            None => String::new(),
        };
        println!("[{}] {verdict} {}{note}", check.id, check.anchor);
    }
    if let Some(path) = out {
        write_out(path, &pretty(&report))?;
    }
    if failed {
        return Ok(1);
    }
    if skipped {
        return Err(Invalid("suite checks were skipped by caps".into()));
    }
    Ok(0)
}

fn enumerate(args: &EnumerateArgs) -> Result<u8, Invalid> {
    let involution = match args.involution {
        InvolutionArg::Identity => Involution::Identity,
        InvolutionArg::Frobenius => Involution::FrobeniusHalf,
    };
    let field = InvolutiveField::new(args.p, args.k, None, involution)?;
    let spaces = match args.mode {
        ModeArg::Exhaustive => {
            let cap = effective_cap(args.force_cap, GRAM_SCAN_CAP)?;
            orthosymmetric_spaces_capped(&field, args.dim, cap)?
        }
        ModeArg::Sample => {
            println!("{}", serde_json::json!({ "seed": args.seed, "count": args.count }));
            sample_spaces(&field, args.dim, args.seed, args.count)?
        }
    };
    for space in &spaces {
        println!("{}", compact(space));
    }
    Ok(0)
}

fn explore_polarity(spec: &Path, budget: u64) -> Result<u8, Invalid> {
    let space: GramSpace = read_spec(spec)?;
    let report = hermilat::polarity_subalgebra_search(&space, budget)?;
    println!("{}", pretty(&report));
    Ok(0)
}
