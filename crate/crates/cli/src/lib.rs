//! Command-line driver for `superhom-core`: the structure-constant file
//! format, JSON reports and the `superhom` subcommands.
//!
//! Exit codes: 0 on success or a TRIVIAL verdict, 1 on a verification
//! failure or a NONTRIVIAL verdict, 2 on usage and input errors, 3 on an
//! UNDECIDED verdict or when `--max-dim` is exceeded.

pub mod render;
pub mod sc_file;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use superhom_core::automorphisms::{relation_suite, rho_homomorphism_finding, GeneratorSpec};
use superhom_core::cartan_families::check_transitivity;
use superhom_core::homsolver::{
    analyze, cartan_diagonal_family, hom_jacobi_space, named_triples, solve_family, triple_constraints, FamilyOutcome,
    ReportOptions, Verdict,
};
use superhom_core::{AlgebraSpec, BuiltAlgebra};

use crate::sc_file::{load_sc, FileError, Loaded, ScDocument};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    Failure = 1,
    Usage = 2,
    Undecided = 3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "superhom", version, about = "Lie superalgebras and their Hom-Lie structures")]
pub struct Cli {
    /// Seed for randomized relation instances and parameter sampling.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Refuse hom-space analysis above this dimension.
    #[arg(long, global = true, default_value_t = 64)]
    pub max_dim: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build an algebra and write its structure constants.
    Build {
        spec: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check axioms, grading, closure and transitivity.
    Verify { target: String },
    /// Compute the even maps satisfying the twisted Jacobi identity.
    HomSpace { target: String },
    /// Solve the Hom-Lie constraints of one generator family.
    SolveFamily {
        target: String,
        /// A generator such as `j:lambda`, `rho:a,b,c,d`, `sigma_q^2`, or
        /// `diagonal` on Cartan-type algebras.
        #[arg(long)]
        sigma: String,
    },
    /// Full analysis with a triviality verdict.
    Report {
        target: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check the generator relations on random instances.
    Relations {
        spec: String,
        #[arg(long, default_value_t = 5)]
        instances: usize,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    File(#[from] FileError),
    #[error(transparent)]
    Core(#[from] superhom_core::Error),
}

impl CliError {
    fn exit(&self) -> Exit {
        match self {
            CliError::Core(superhom_core::Error::ResourceLimit(_)) => Exit::Undecided,
            _ => Exit::Usage,
        }
    }
}

/// What a subcommand produced: a JSON document, its text rendering, and
/// the exit code.
struct Output {
    json: Value,
    text: String,
    exit: Exit,
    /// Write the JSON here instead of stdout.
    file: Option<PathBuf>,
}

impl Output {
    fn new(json: Value, exit: Exit) -> Self {
        let text = render::text_lines(&json);
        Output {
            json,
            text,
            exit,
            file: None,
        }
    }
}

/// An algebra named on the command line, and its load report when it
/// came from a file.
struct Target {
    built: BuiltAlgebra,
    loaded: Option<Loaded>,
}

fn resolve(target: &str) -> Result<Target, CliError> {
    let path = Path::new(target);
    if path.is_file() {
        let loaded = load_sc(path)?;
        return Ok(Target {
            built: BuiltAlgebra::Loaded(loaded.algebra.clone()),
            loaded: Some(loaded),
        });
    }
    let spec: AlgebraSpec = target
        .parse()
        .map_err(|e| CliError::Usage(format!("`{target}` is neither a file nor an algebra spec: {e}")))?;
    Ok(Target {
        built: spec.build()?,
        loaded: None,
    })
}

fn guard(built: &BuiltAlgebra, max_dim: usize) -> Result<(), CliError> {
    let dim = built.algebra().dim();
    if dim > max_dim {
        return Err(superhom_core::Error::ResourceLimit(format!("dimension {dim} exceeds --max-dim {max_dim}")).into());
    }
    Ok(())
}

fn build(cli: &Cli, spec: &str, output: &Option<PathBuf>) -> Result<Output, CliError> {
    let spec: AlgebraSpec = spec.parse().map_err(|e| CliError::Usage(format!("{e}")))?;
    let built = spec.build()?;
    let g = built.algebra();
    let doc = ScDocument::from_algebra(g);
    let summary = json!({
        "algebra": g.name(),
        "bracket_records": doc.brackets.len(),
        "dim": g.dim(),
        "odd_dim": g.space().odd_dim(),
        "spec": spec.spec_string(),
    });
    let mut out = Output::new(summary, Exit::Ok);
    match output {
        Some(path) => {
            sc_file::save_sc(g, path)?;
            out.json = Value::Null;
        }
        None if cli.format == Format::Json => {
            out.json = serde_json::to_value(&doc).expect("documents serialize");
        }
        None => {}
    }
    Ok(out)
}

fn verify(target: &str) -> Result<Output, CliError> {
    let Target { built, loaded } = resolve(target)?;
    let g = built.algebra();
    let axioms = match &loaded {
        Some(l) => l.axioms.clone(),
        None => g.verify_axioms(),
    };
    let grading = g.verify_grading().ok();
    let closure = verify::closure(&built);
    let transitivity = if g.is_z_graded() && !g.space().degree_indices(-1).is_empty() {
        Some(check_transitivity(g)?)
    } else {
        None
    };
    let passed = axioms.passed()
        && grading.as_ref().is_none_or(|r| r.passed())
        && closure.as_ref().is_none_or(|r| r.passed())
        && transitivity.as_ref().is_none_or(|r| r.holds);
    let json = json!({
        "algebra": g.name(),
        "axioms": render::axioms_json(g, &axioms),
        "closure": closure.as_ref().map(|c| json!({
            "failure": c.failure,
            "pairs_checked": c.pairs_checked,
            "passed": c.passed(),
        })),
        "dim": g.dim(),
        "grading": grading.as_ref().map(render::grading_json),
        "odd_dim": g.space().odd_dim(),
        "passed": passed,
        "transitivity": transitivity.as_ref().map(render::transitivity_json),
    });
    Ok(Output::new(json, if passed { Exit::Ok } else { Exit::Failure }))
}

fn hom_space(cli: &Cli, target: &str) -> Result<Output, CliError> {
    let Target { built, .. } = resolve(target)?;
    guard(&built, cli.max_dim)?;
    let g = built.algebra();
    let basis = hom_jacobi_space(g);
    let scalar = basis.len() == 1 && basis[0].scalar_multiple_of_identity().is_some();
    let json = json!({
        "algebra": g.name(),
        "basis": basis.iter().map(render::map_json).collect::<Vec<_>>(),
        "dim": g.dim(),
        "hom_space_dim": basis.len(),
        "identity_span": scalar,
    });
    let mut out = Output::new(json, Exit::Ok);
    out.text = format!(
        "algebra     {}\ndim         {}\nhom-space   {}{}\n",
        g.name(),
        g.dim(),
        basis.len(),
        if scalar { " (identity)" } else { "" }
    );
    Ok(out)
}

fn solve_family_cmd(cli: &Cli, target: &str, sigma: &str) -> Result<Output, CliError> {
    let Target { built, .. } = resolve(target)?;
    guard(&built, cli.max_dim)?;
    let fam = match (&built, sigma) {
        (BuiltAlgebra::Cartan(c), "diagonal") => cartan_diagonal_family(c)?,
        (BuiltAlgebra::Matrix(m), s) => {
            let spec: GeneratorSpec = s.parse().map_err(|e| CliError::Usage(format!("--sigma: {e}")))?;
            spec.build(m)?
        }
        (BuiltAlgebra::Cartan(_), s) => {
            return Err(CliError::Usage(format!(
                "--sigma `{s}`: Cartan-type algebras support `diagonal`"
            )))
        }
        (BuiltAlgebra::Loaded(_), _) => {
            return Err(CliError::Usage(
                "generator families need a built algebra, not a table".into(),
            ))
        }
    };
    let g = built.algebra();
    let result = solve_family(g, &fam, cli.seed)?;
    let mut triples = Vec::new();
    for t in named_triples(&built)?.into_iter().filter(|t| t.family == fam.label()) {
        let c = triple_constraints(g, &fam, [&t.args[0], &t.args[1], &t.args[2]])?;
        triples.push(json!({
            "constraints": c.equations.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "name": t.name,
        }));
    }
    let exit = match result.outcome {
        FamilyOutcome::Identity | FamilyOutcome::Excluded => Exit::Ok,
        FamilyOutcome::Nontrivial(_) => Exit::Failure,
        FamilyOutcome::Undecided => Exit::Undecided,
    };
    let mut json = render::family_json(&result);
    json["algebra"] = json!(g.name());
    json["seed"] = json!(cli.seed);
    json["triples"] = Value::Array(triples);
    Ok(Output::new(json, exit))
}

fn report(cli: &Cli, target: &str, output: &Option<PathBuf>) -> Result<Output, CliError> {
    let Target { built, loaded } = resolve(target)?;
    let opts = ReportOptions {
        max_dim: cli.max_dim,
        seed: cli.seed,
    };
    let mut r = analyze(&built, &opts)?;
    if loaded.as_ref().is_some_and(Loaded::flagged) {
        r.findings.push("the loaded table fails verification".into());
    }
    let exit = match r.verdict {
        Verdict::Trivial => Exit::Ok,
        Verdict::Nontrivial => Exit::Failure,
        Verdict::Undecided => Exit::Undecided,
    };
    let mut out = Output::new(render::report_json(&r), exit);
    out.text = render::report_text(&r);
    out.file = output.clone();
    Ok(out)
}

fn relations(cli: &Cli, spec: &str, instances: usize) -> Result<Output, CliError> {
    let spec: AlgebraSpec = spec.parse().map_err(|e| CliError::Usage(format!("{e}")))?;
    let BuiltAlgebra::Matrix(alg) = spec.build()? else {
        return Err(CliError::Usage("relations apply to the matrix families".into()));
    };
    let reports = relation_suite(&alg, cli.seed, instances)?;
    let passed = reports.iter().all(|r| r.holds());
    let shape = alg.shape();
    let rho = if shape.m == 2 && shape.n == 2 {
        Some(rho_homomorphism_finding(&alg, cli.seed, instances)?)
    } else {
        None
    };
    let json = json!({
        "algebra": alg.algebra().name(),
        "instances": instances,
        "passed": passed,
        "relations": reports.iter().map(render::relation_json).collect::<Vec<_>>(),
        "rho_homomorphism": rho.as_ref().map(render::rho_json),
        "seed": cli.seed,
    });
    let mut out = Output::new(json, if passed { Exit::Ok } else { Exit::Failure });
    let mut text = String::new();
    for r in &reports {
        let status = if r.holds() { "ok  " } else { "FAIL" };
        text += &format!(
            "{status} {:<18} {}/{}  {}\n",
            r.name, r.passed, r.instances, r.statement
        );
    }
    if let Some(f) = &rho {
        text += &format!(
            "rho is a homomorphism of {} in {}/{} instances\n",
            f.algebra, f.homomorphisms, f.instances
        );
    }
    out.text = text;
    Ok(out)
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("SUPERHOM_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("SUPERHOM_THREADS must be a positive integer, got `{v}`")))?;
    // A pool that already exists (repeated calls in one process) is kept.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<Output, CliError> {
    configure_threads()?;
    match &cli.command {
        Command::Build { spec, output } => build(cli, spec, output),
        Command::Verify { target } => verify(target),
        Command::HomSpace { target } => hom_space(cli, target),
        Command::SolveFamily { target, sigma } => solve_family_cmd(cli, target, sigma),
        Command::Report { target, output } => report(cli, target, output),
        Command::Relations { spec, instances } => relations(cli, spec, *instances),
    }
}

fn emit(cli: &Cli, out: &Output, stdout: &mut dyn Write) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Usage(format!("writing output: {e}"));
    let pretty = |v: &Value| serde_json::to_string_pretty(v).expect("values serialize") + "\n";
    if let Some(path) = &out.file {
        std::fs::write(path, pretty(&out.json)).map_err(|source| FileError::Io {
            path: path.clone(),
            source,
        })?;
        if cli.format == Format::Text {
            stdout.write_all(out.text.as_bytes()).map_err(io)?;
        }
        return Ok(());
    }
    match cli.format {
        Format::Json if !out.json.is_null() => stdout.write_all(pretty(&out.json).as_bytes()).map_err(io),
        Format::Json => Ok(()),
        Format::Text => stdout.write_all(out.text.as_bytes()).map_err(io),
    }
}

/// Runs one command line and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { Exit::Usage } else { Exit::Ok };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code as i32;
        }
    };
    let result = dispatch(&cli).and_then(|out| emit(&cli, &out, stdout).map(|_| out.exit));
    match result {
        Ok(code) => code as i32,
        Err(e) => {
            let _ = writeln!(stderr, "superhom: {e}");
            e.exit() as i32
        }
    }
}
