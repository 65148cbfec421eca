//! Command-line front end for the homological algebra engine.

pub mod input;
pub mod output;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hhlab_core::algebra::{builtin, center};
use hhlab_core::dualize::rigid_dualizing;
use hhlab_core::hochschild::{
    bimodule_resolution, hh_cohomology, hh_homology, verify_ce_cohomology, verify_ce_homology,
};
use hhlab_core::module::Residual;
use hhlab_core::report::Outcome;
use hhlab_core::resolve::{ext, projective_resolution, tor};
use hhlab_core::VerificationReport;

use input::{load_algebra, AlgebraFile, Loader, DEFAULT_P};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] hhlab_core::Error),
    #[error("cannot write {path}: {source}")]
    Output {
        path: PathBuf,
        source: std::io::Error,
    },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, Args)]
pub struct RunConfig {
    /// Prime for builtins (default 101); reduces file coefficients when given.
    #[arg(long, global = true)]
    pub p: Option<u64>,
    #[arg(long, global = true, default_value_t = 4)]
    pub max_degree: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 32, value_parser = clap::value_parser!(u32).range(1..))]
    pub trials: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Record wall-clock time in reports (makes them non-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            p: None,
            max_degree: 4,
            seed: 0,
            trials: 32,
            format: Format::Text,
            out: None,
            timing: false,
        }
    }
}

/// An algebra plus optional module arguments.
#[derive(Clone, Debug, Args)]
pub struct Inputs {
    /// `builtin:name(params)` or an algebra file.
    pub algebra: String,
    /// First module: `regular`, `random:<dim>` or a module file.
    #[arg(long = "M")]
    pub m: Option<String>,
    /// Second module, same forms as `--M`.
    #[arg(long = "N")]
    pub n: Option<String>,
    /// Bimodule coefficients, same forms as `--M`.
    #[arg(long)]
    pub coeff: Option<String>,
}

#[derive(Debug, Parser)]
#[command(name = "hhlab", version, about = "Exact Hochschild (co)homology and duality checks over GF(p)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub config: RunConfig,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dimension and basis of the center.
    Center(Inputs),
    /// HH^n(A; coeff).
    HhCohomology(Inputs),
    /// HH_n(A; coeff).
    HhHomology(Inputs),
    /// Ext^n_A(M, N) for left modules.
    Ext(Inputs),
    /// Tor^A_n(M, N) for M right and N left.
    Tor(Inputs),
    /// Ranks of a free resolution of M, or of A over A^e without --M.
    Resolution(Inputs),
    /// The rigid dualizing bimodule.
    Rigid(Inputs),
    #[command(subcommand)]
    Verify(Check),
    #[command(subcommand)]
    Probe(Probe),
    /// Print a builtin algebra as an algebra file.
    BuiltinEmit { name: String },
}

#[derive(Debug, Subcommand)]
pub enum Check {
    CeCohomology(Inputs),
    CeHomology(Inputs),
    Axioms(Inputs),
    Rigidity(Inputs),
    Condition3(Inputs),
    Biduality(Inputs),
    HomDual(Inputs),
    Sep(Inputs),
    Main(Inputs),
    HocTwist(Inputs),
    Vdb(Inputs),
    Commutative(Inputs),
}

#[derive(Debug, Subcommand)]
pub enum Probe {
    Conjecture(Inputs),
}

pub enum Output {
    Report(Box<VerificationReport>),
    /// Raw JSON, e.g. an emitted algebra file.
    Json(String),
}

impl Output {
    pub fn exit_code(&self) -> i32 {
        match self {
            Output::Report(r) => exit_code(r.outcome),
            Output::Json(_) => 0,
        }
    }
}

pub fn exit_code(o: Outcome) -> i32 {
    match o {
        Outcome::Pass | Outcome::Computed => 0,
        Outcome::Fail => 1,
        Outcome::Unknown => 2,
    }
}

pub const EXIT_INPUT: i32 = 3;

fn values(check: &str, a: &hhlab_core::Algebra, dims: &[usize], bound: usize) -> VerificationReport {
    let mut r = VerificationReport::new(check, a).with_bound(bound);
    for (n, &d) in dims.iter().enumerate() {
        r.value(n, d);
    }
    r.finish()
}

pub fn execute(command: &Command, cfg: &RunConfig) -> Result<Output, CliError> {
    let start = Instant::now();
    if let Command::BuiltinEmit { name } = command {
        let a = builtin(name, cfg.p.unwrap_or(DEFAULT_P))?;
        let text = serde_json::to_string_pretty(&AlgebraFile::from_algebra(&a)).expect("plain data");
        return Ok(Output::Json(text));
    }
    let inputs = match command {
        Command::Center(i)
        | Command::HhCohomology(i)
        | Command::HhHomology(i)
        | Command::Ext(i)
        | Command::Tor(i)
        | Command::Resolution(i)
        | Command::Rigid(i) => i,
        Command::Verify(c) => match c {
            Check::CeCohomology(i)
            | Check::CeHomology(i)
            | Check::Axioms(i)
            | Check::Rigidity(i)
            | Check::Condition3(i)
            | Check::Biduality(i)
            | Check::HomDual(i)
            | Check::Sep(i)
            | Check::Main(i)
            | Check::HocTwist(i)
            | Check::Vdb(i)
            | Check::Commutative(i) => i,
        },
        Command::Probe(Probe::Conjecture(i)) => i,
        Command::BuiltinEmit { .. } => unreachable!("handled above"),
    };
    let a = load_algebra(&inputs.algebra, cfg.p)?;
    let load = Loader {
        algebra: &a,
        p_override: cfg.p,
        seed: cfg.seed,
    };
    let (m, n, coeff) = (inputs.m.as_deref(), inputs.n.as_deref(), inputs.coeff.as_deref());
    let l = cfg.max_degree;
    let (seed, trials) = (cfg.seed, cfg.trials);
    let mut report = match command {
        Command::Center(_) => {
            let (z, incl) = center(&a);
            let mut r = VerificationReport::new("center", &a);
            r.value(0, z.dim());
            for (i, col) in incl.matrix().columns().iter().enumerate() {
                r.note(format!("z{i} = {col:?}"));
            }
            r.finish()
        }
        Command::HhCohomology(_) => {
            let dims = hh_cohomology(&a, &load.bimodule(coeff, 0)?, l)?.dims();
            values("hh-cohomology", &a, &dims, l)
        }
        Command::HhHomology(_) => {
            let dims = hh_homology(&a, &load.bimodule(coeff, 0)?, l)?.dims();
            values("hh-homology", &a, &dims, l)
        }
        Command::Ext(_) => {
            let dims = ext(&load.left(m, 0)?, &load.left(n, 1)?, l, None)?.dims();
            values("ext", &a, &dims, l)
        }
        Command::Tor(_) => {
            let dims = tor(&load.right(m, 0)?, &load.left(n, 1)?, l, Residual::None)?.dims();
            values("tor", &a, &dims, l)
        }
        Command::Resolution(_) => {
            let res = match m {
                Some(_) => projective_resolution(&load.left(m, 0)?, l),
                None => bimodule_resolution(&a, l),
            };
            let mut r = VerificationReport::new("resolution", &a).with_bound(l);
            for n in 0..=res.length().min(l) {
                r.value(n, res.rank(n));
            }
            if res.is_finite() {
                r.note(format!("finite, length {}", res.length()));
            }
            if let Err(e) = res.certify() {
                r.fail(format!("exactness certificate failed: {e}"));
            }
            r.finish()
        }
        Command::Rigid(_) => {
            let d = rigid_dualizing(&a)?;
            let mut r = VerificationReport::new("rigid", &a);
            r.value(0, d.r_a().dim());
            for note in d.notes() {
                r.note(note.clone());
            }
            r.finish()
        }
        Command::Verify(check) => {
            let dual = || rigid_dualizing(&a);
            match check {
                Check::CeCohomology(_) => verify_ce_cohomology(&a, &load.left(m, 0)?, &load.left(n, 1)?, l)?,
                Check::CeHomology(_) => verify_ce_homology(&a, &load.left(m, 0)?, &load.right(n, 1)?, l)?,
                Check::Axioms(_) => dual()?.verify_dualizing_axioms(l)?,
                Check::Rigidity(_) => dual()?.verify_rigidity(l, seed, trials)?,
                Check::Condition3(_) => dual()?.verify_condition3()?,
                Check::Biduality(_) => dual()?.verify_biduality(&load.left(m, 0)?)?,
                Check::HomDual(_) => dual()?.verify_hom_dual(&load.left(m, 0)?, &load.left(n, 1)?, l, seed, trials)?,
                Check::Sep(_) => dual()?.verify_sep(&load.left(m, 0)?, &load.right(n, 1)?, l)?,
                Check::Main(_) => dual()?.verify_main(&load.left(m, 0)?, &load.right(n, 1)?, l, seed, trials)?,
                Check::HocTwist(_) => dual()?.verify_hoc_twist(&load.bimodule(coeff, 0)?, l, seed, trials)?,
                Check::Vdb(_) => dual()?.verify_vdb(l)?,
                Check::Commutative(_) => dual()?.commutative_crosscheck(&load.left(m, 0)?, &load.left(n, 1)?, l)?,
            }
        }
        Command::Probe(Probe::Conjecture(_)) => {
            rigid_dualizing(&a)?.probe_conjecture(&load.left(m, 0)?, &load.left(n, 1)?, l)?
        }
        Command::BuiltinEmit { .. } => unreachable!("handled above"),
    };
    report.seed = seed;
    report.trials = trials;
    if cfg.timing {
        report.elapsed_ms = u64::try_from(start.elapsed().as_millis()).unwrap_or(u64::MAX);
    }
    Ok(Output::Report(Box::new(report)))
}

/// Parses arguments, runs, writes the output; returns the exit code.
pub fn run<'a, I, T>(args: I, stdout: &'a mut dyn std::io::Write, stderr: &'a mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let shown = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let sink = if shown { stdout } else { stderr };
            let _ = write!(sink, "{}", e.render());
            return if shown { 0 } else { EXIT_INPUT };
        }
    };
    let result = execute(&cli.command, &cli.config).and_then(|out| {
        output::emit(&out, &cli.config, stdout)?;
        Ok(out.exit_code())
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_INPUT
        }
    }
}
