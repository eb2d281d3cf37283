use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use susyw::error::Error;
use susyw::liesuper::{AlgebraSpec, Basis, Family};
use susyw::rational::{parse, render_half, Q};
use susyw::wgen::{self, Check, Document, Verification};

const EXIT_USAGE: u8 = 2;
const EXIT_FAILED: u8 = 3;
const EXIT_FLOOR: u8 = 4;

/// Free generators of supersymmetric classical W-algebras, with exact verification.
#[derive(Parser, Debug)]
#[command(name = "susyw", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit the generators read off the row determinant.
    Generate(Args),
    /// Check membership, Δ-weights and the free-generation conditions.
    Verify(Args),
    /// Check skewsymmetry and Jacobi on the basis of the affine algebra.
    CheckAxioms(Args),
    /// List Δ-weights and sizes of the generators.
    Weights(Args),
    /// Check the operator identities and dimension formulas for the family.
    Identities(Args),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Gl,
    Sl,
    Osp,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(clap::Args, Debug)]
struct Args {
    #[arg(long, value_enum)]
    family: Kind,
    /// n+1, n-1 (gl, sl); 2n+1|2n, 2n-1|2n, 2n|2n, 2n+2|2n (osp)
    #[arg(long)]
    variant: String,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Lowest exact power of D in D⁻¹ series (default -(|I|+4)).
    #[arg(long, env = "SUSYW_FLOOR", allow_hyphen_values = true)]
    floor: Option<i32>,
    /// Level k of the affine bracket; D is replaced by kD in the matrix.
    #[arg(long, default_value = "1")]
    k: String,
    /// Emit every coefficient of the row determinant, not only the minimal set.
    #[arg(long)]
    all: bool,
    /// Write the output to this file instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Progress on stderr; repeat for more.
    #[arg(long, short, action = clap::ArgAction::Count)]
    verbose: u8,
}

struct Config {
    basis: Basis,
    level: Q,
    floor: i32,
    format: Format,
    all: bool,
    output: Option<PathBuf>,
    verbose: u8,
}

enum Failure {
    Usage(String),
    Floor(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::FloorExhausted { .. } => Failure::Floor(e.to_string()),
            Error::InvalidRank { .. } | Error::Parse(_) => Failure::Usage(e.to_string()),
            _ => Failure::Other(e.to_string()),
        }
    }
}

fn config(args: &Args) -> Result<Config, Failure> {
    let kind = match args.family {
        Kind::Gl => "gl",
        Kind::Sl => "sl",
        Kind::Osp => "osp",
    };
    let family = Family::from_parts(kind, &args.variant).ok_or_else(|| {
        Failure::Usage(format!("unknown variant `{}` for family {kind}", args.variant))
    })?;
    let spec = AlgebraSpec::new(family, args.n)?;
    let floor = args.floor.unwrap_or_else(|| wgen::default_floor(&spec));
    if floor > 0 {
        return Err(Failure::Usage(format!("floor must be <= 0, got {floor}")));
    }
    let level = parse(&args.k).ok_or_else(|| Failure::Usage(format!("bad level `{}`", args.k)))?;
    if level == Q::from_integer(0.into()) {
        return Err(Failure::Usage("level must be nonzero".into()));
    }
    Ok(Config {
        basis: Basis::new(&spec)?,
        level,
        floor,
        format: args.format,
        all: args.all,
        output: args.output.clone(),
        verbose: args.verbose,
    })
}

fn log(cfg: &Config, start: Instant, msg: &str) {
    if cfg.verbose > 0 {
        eprintln!("[{:>8.2}s] {msg}", start.elapsed().as_secs_f64());
    }
}

fn render_checks(title: &str, checks: &[Check]) -> String {
    let mut s = format!("{title}\n");
    for c in checks {
        let mark = if c.passed { "PASS" } else { "FAIL" };
        s.push_str(&format!("  {mark}  {}", c.name));
        if !c.detail.is_empty() {
            s.push_str(&format!("  [{}]", c.detail));
        }
        s.push('\n');
    }
    let verdict = if wgen::all_passed(checks) { "pass" } else { "FAIL" };
    s.push_str(&format!("result: {verdict}\n"));
    s
}

fn checks_json(cfg: &Config, checks: Vec<Check>) -> Result<String, Failure> {
    let spec = cfg.basis.spec();
    let doc = serde_json::json!({
        "family": spec.family().kind(),
        "variant": spec.family().variant(),
        "algebra": spec.name(),
        "n": spec.n(),
        "k": susyw::rational::render(&cfg.level),
        "verification": Verification { passed: wgen::all_passed(&checks), checks },
    });
    serde_json::to_string_pretty(&doc).map_err(|e| Failure::Other(e.to_string()))
}

fn text_generators(cfg: &Config, doc: &Document, set: &wgen::GeneratorSet) -> String {
    let mut s = format!("{} (n = {}, k = {})\n", doc.algebra, doc.n, doc.k);
    let chosen: Vec<&wgen::Generator> = if cfg.all {
        set.generators.iter().collect()
    } else {
        set.minimal_generators()
    };
    for g in chosen {
        s.push_str(&format!(
            "{}  delta = {}  terms = {}\n  {}\n",
            g.label,
            render_half(g.delta2 as i64),
            g.poly.len(),
            g.poly.render(&cfg.basis)
        ));
    }
    s
}

/// Membership over the full 𝔫 basis, free generation, and the internal tail check.
fn verification_checks(cfg: &Config, set: &wgen::GeneratorSet, start: Instant) -> Result<Vec<Check>, Failure> {
    let basis = &cfg.basis;
    let gens: Vec<&wgen::Generator> = set.generators.iter().collect();
    log(cfg, start, &format!("membership: {} generators x {} directions", gens.len(), basis.n_ids().len()));
    let failures = wgen::verify_membership(basis, &cfg.level, &gens);
    let mut checks = vec![Check::new(
        "membership: projected bracket with every basis element of n vanishes",
        failures.is_empty(),
        failures
            .iter()
            .map(|f| format!("{{{} chi {}}} -> {}", f.n, f.w, f.residual))
            .collect::<Vec<_>>()
            .join("; "),
    )];
    log(cfg, start, "free generation");
    checks.extend(wgen::verify_free_generation(basis, set)?);
    if basis.spec().family().is_osp_even() {
        let even = wgen::rdet_osp_even(basis, &cfg.level, cfg.floor)?;
        let bad = even.tail_mismatches();
        checks.push(Check::new(
            format!("negative part equals a D^-1 a down to D^{}", cfg.floor),
            bad.is_empty(),
            if bad.is_empty() { String::new() } else { format!("mismatched powers {bad:?}") },
        ));
    }
    Ok(checks)
}

fn run(command: &Command) -> Result<(String, bool), Failure> {
    let start = Instant::now();
    let args = match command {
        Command::Generate(a)
        | Command::Verify(a)
        | Command::CheckAxioms(a)
        | Command::Weights(a)
        | Command::Identities(a) => a,
    };
    let cfg = config(args)?;
    let basis = &cfg.basis;
    log(&cfg, start, &format!("{} with floor {}", basis.spec().name(), cfg.floor));
    let (text, ok) = match command {
        Command::Generate(_) => {
            let set = wgen::generators(basis, &cfg.level, cfg.floor)?;
            log(&cfg, start, "generators extracted");
            let doc = wgen::to_document(basis, &set, cfg.all, None);
            let out = match cfg.format {
                Format::Json => serde_json::to_string_pretty(&doc).map_err(|e| Failure::Other(e.to_string()))?,
                Format::Text => text_generators(&cfg, &doc, &set),
            };
            (out, true)
        }
        Command::Verify(_) => {
            let set = wgen::generators(basis, &cfg.level, cfg.floor)?;
            log(&cfg, start, "generators extracted");
            let checks = verification_checks(&cfg, &set, start)?;
            let passed = wgen::all_passed(&checks);
            let out = match cfg.format {
                Format::Json => {
                    let doc = wgen::to_document(basis, &set, cfg.all, Some(Verification { passed, checks }));
                    serde_json::to_string_pretty(&doc).map_err(|e| Failure::Other(e.to_string()))?
                }
                Format::Text => render_checks(&format!("verify {}", basis.spec().name()), &checks),
            };
            (out, passed)
        }
        Command::CheckAxioms(_) => {
            let checks = wgen::axiom_checks(basis, &cfg.level);
            let passed = wgen::all_passed(&checks);
            let out = match cfg.format {
                Format::Json => checks_json(&cfg, checks)?,
                Format::Text => render_checks(&format!("axioms of the affine algebra over {}", basis.spec().name()), &checks),
            };
            (out, passed)
        }
        Command::Weights(_) => {
            let set = wgen::generators(basis, &cfg.level, cfg.floor)?;
            let mut checks = Vec::new();
            let chosen: Vec<&wgen::Generator> = if cfg.all {
                set.generators.iter().collect()
            } else {
                set.minimal_generators()
            };
            for g in chosen {
                let got = g.poly.delta_weight2()?;
                let passed = got.map_or(true, |d| d == g.delta2);
                let detail = match got {
                    Some(d) => format!("delta {}, {} terms", render_half(d as i64), g.poly.len()),
                    None => "vanishes".to_string(),
                };
                checks.push(Check::new(format!("{} expected delta {}", g.label, render_half(g.delta2 as i64)), passed, detail));
            }
            let passed = wgen::all_passed(&checks);
            let out = match cfg.format {
                Format::Json => checks_json(&cfg, checks)?,
                Format::Text => render_checks(&format!("weights of {}", basis.spec().name()), &checks),
            };
            (out, passed)
        }
        Command::Identities(_) => {
            let mut checks = wgen::identity_checks(basis, &cfg.level, cfg.floor)?;
            checks.extend(wgen::dimension_checks(basis)?);
            let passed = wgen::all_passed(&checks);
            let out = match cfg.format {
                Format::Json => checks_json(&cfg, checks)?,
                Format::Text => render_checks(&format!("identities for {}", basis.spec().name()), &checks),
            };
            (out, passed)
        }
    };
    log(&cfg, start, "done");
    let mut text = text;
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &cfg.output {
        Some(path) => fs::write(path, &text).map_err(|e| Failure::Other(format!("{}: {e}", path.display())))?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .map_err(|e| Failure::Other(e.to_string()))?;
        }
    }
    Ok((String::new(), ok))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok((_, true)) => ExitCode::SUCCESS,
        Ok((_, false)) => ExitCode::from(EXIT_FAILED),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Floor(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_FLOOR)
        }
        Err(Failure::Other(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_FAILED)
        }
    }
}
