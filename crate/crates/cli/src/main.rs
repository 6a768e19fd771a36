//! Command-line interface over the superalgebra toolkit: identity checks,
//! series and invariants of algebra files, family constructors, basis
//! changes and the theorem verification harness.
//!
//! Exit codes: 0 on pass/valid, 1 on violation/counterexample, 2 on
//! usage or parse errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use leibniz_core::algebra::IdentityKind;
use leibniz_core::basis_change::{
    lemma31_transform, lemma31_transform_retry, verify_preserved_products, Lemma31Case,
    Lemma31CaseKind,
};
use leibniz_core::families::{FamilyKind, FamilySpec};
use leibniz_core::fileformat::{dump_algebra, parse_algebra, parse_product_body, parse_rational};
use leibniz_core::invariants::{characteristic_sequence, SamplingConfig};
use leibniz_core::verify::{verify_theorem, TheoremId, VerifyConfig};
use leibniz_core::{Nilindex, Rat, RatSuperAlgebra};

#[derive(Parser)]
#[command(
    name = "leibniz",
    about = "Exact-arithmetic toolkit for finite-dimensional Leibniz superalgebras",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the grading and the defining identities of an algebra file
    Check { file: PathBuf },
    /// Print the descending central series with dimensions and bases
    Series { file: PathBuf },
    /// Print the nilindex (or report non-nilpotency)
    Nilindex { file: PathBuf },
    /// Print the right annihilator
    Rann { file: PathBuf },
    /// Print the characteristic sequence
    Charseq {
        file: PathBuf,
        /// Extra seeded random candidates besides the coordinate ones
        #[arg(long, default_value_t = 16)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Maximize the concatenated sequence at a single element instead
        /// of the two parts independently
        #[arg(long)]
        joint: bool,
    },
    /// Construct a model-family member and print (or write) its table
    Build(BuildArgs),
    /// Apply one of the seven adapted-basis transformations to a file
    Change(ChangeArgs),
    /// Run a verification harness and report the outcome
    Verify(VerifyArgs),
}

#[derive(Args)]
struct BuildArgs {
    /// thm21-first | thm21-second | remark21 | thm22-a | thm22-b | thm22-c
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: usize,
    /// Odd block sizes m1,m2,...; sum is the odd dimension
    #[arg(long, value_delimiter = ',', num_args = 0.., default_value = "")]
    partition: Vec<String>,
    /// Family coefficient, e.g. alpha4=1/2, theta=-1, c2_3_6=2 (repeatable)
    #[arg(long = "param")]
    params: Vec<String>,
    /// Extra product for a slot the family leaves free, e.g. "y3 y3 = x4"
    /// (repeatable)
    #[arg(long = "mixed")]
    mixed: Vec<String>,
    /// Write the table to a file instead of stdout
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ChangeArgs {
    file: PathBuf,
    /// Case name: a.1 a.2 a.3 b.1 b.2 c.1 c.2
    #[arg(long)]
    lemma31: String,
    #[arg(long = "A1", allow_hyphen_values = true)]
    a1: String,
    #[arg(long = "A2", allow_hyphen_values = true)]
    a2: String,
    /// Auxiliary parameter; when omitted for a case that needs one, an
    /// escalating retry sequence is used
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    /// Odd block sizes; inferred from the x1 action when omitted
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    partition: Option<Vec<usize>>,
    /// Write the transported table to a file instead of stdout
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// 3.1 | 3.2 | 3.3 | 2.1-max-nilindex | lemma-2.1 | lemma-3.1
    #[arg(long)]
    theorem: String,
    #[arg(long)]
    n: usize,
    #[arg(long, value_delimiter = ',', num_args = 0.., default_value = "")]
    partition: Vec<String>,
    #[arg(long, default_value_t = 500)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Coefficient pool, e.g. -1,0,1 or -2,-1,0,1,2,1/2
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "-1,0,1",
        allow_hyphen_values = true
    )]
    pool: Vec<String>,
    /// Also write the machine-readable key/value summary here
    #[arg(long)]
    report: Option<PathBuf>,
}

enum Failure {
    /// violation or counterexample
    Violation,
    /// usage or parse error
    Usage(String),
}

type CmdResult = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check { file } => cmd_check(&file),
        Command::Series { file } => cmd_series(&file),
        Command::Nilindex { file } => cmd_nilindex(&file),
        Command::Rann { file } => cmd_rann(&file),
        Command::Charseq {
            file,
            samples,
            seed,
            joint,
        } => cmd_charseq(&file, samples, seed, joint),
        Command::Build(args) => cmd_build(&args),
        Command::Change(args) => cmd_change(&args),
        Command::Verify(args) => cmd_verify(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load_algebra(path: &PathBuf) -> Result<RatSuperAlgebra, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    parse_algebra(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write_or_print(output: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match output {
        Some(path) => {
            fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn basis_combo(a: &RatSuperAlgebra, coords: &[Rat]) -> String {
    use num_traits::{One, Zero};
    let terms: Vec<String> = coords
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(k, v)| {
            if v.is_one() {
                a.basis_name(k)
            } else {
                format!("{v} {}", a.basis_name(k))
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn cmd_check(file: &PathBuf) -> CmdResult {
    let a = load_algebra(file)?;
    let mut core_ok = true;
    for (kind, label, required) in [
        (IdentityKind::Grading, "grading", true),
        (IdentityKind::LeibnizSuper, "leibniz-super", true),
        (IdentityKind::Antisymmetry, "antisymmetry", false),
        (IdentityKind::JacobiSuper, "jacobi-super", false),
    ] {
        let report = a.check_identity(kind);
        if report.holds() {
            println!("{label}: holds");
        } else {
            println!("{label}: {} violation(s)", report.violations.len());
            for v in report.violations.iter().take(5) {
                let names: Vec<String> = v.indices.iter().map(|&i| a.basis_name(i)).collect();
                println!(
                    "  at ({}): residual {}",
                    names.join(", "),
                    basis_combo(&a, &v.residual)
                );
            }
            if required {
                core_ok = false;
            }
        }
    }
    if core_ok {
        Ok(())
    } else {
        Err(Failure::Violation)
    }
}

fn cmd_series(file: &PathBuf) -> CmdResult {
    let a = load_algebra(file)?;
    let series = a.lower_central_series();
    let dims: Vec<String> = series.iter().map(|s| s.dim().to_string()).collect();
    println!("dims: {}", dims.join(", "));
    for (k, term) in series.iter().enumerate() {
        println!("L^{} (dim {}):", k + 1, term.dim());
        for row in term.basis_rows() {
            println!("  {}", basis_combo(&a, &row));
        }
    }
    if !series.last().expect("nonempty").is_zero() {
        println!("series stabilizes above zero: not nilpotent");
    }
    Ok(())
}

fn cmd_nilindex(file: &PathBuf) -> CmdResult {
    let a = load_algebra(file)?;
    match a.nilindex() {
        Nilindex::Nilpotent(s) => println!("{s}"),
        Nilindex::NotNilpotent => println!("not nilpotent"),
    }
    Ok(())
}

fn cmd_rann(file: &PathBuf) -> CmdResult {
    let a = load_algebra(file)?;
    let r = a.right_annihilator();
    println!("dim {}", r.dim());
    for row in r.basis_rows() {
        println!("  {}", basis_combo(&a, &row));
    }
    Ok(())
}

fn cmd_charseq(file: &PathBuf, samples: usize, seed: u64, joint: bool) -> CmdResult {
    let a = load_algebra(file)?;
    let mut cfg: SamplingConfig<Rat> = SamplingConfig::new(samples.max(1), seed);
    cfg.joint = joint;
    let cs = characteristic_sequence(&a, &cfg).map_err(|e| usage(e.to_string()))?;
    println!("{cs}");
    Ok(())
}

fn parse_partition(parts: &[String]) -> Result<Vec<usize>, Failure> {
    parts
        .iter()
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.parse::<usize>()
                .map_err(|_| usage(format!("bad partition entry `{p}`")))
        })
        .collect()
}

fn cmd_build(args: &BuildArgs) -> CmdResult {
    let family = FamilyKind::parse(&args.family)
        .ok_or_else(|| usage(format!("unknown family `{}`", args.family)))?;
    let partition = parse_partition(&args.partition)?;
    let mut spec: FamilySpec<Rat> = FamilySpec::new(family, args.n, partition);
    for param in &args.params {
        let (name, value) = param
            .split_once('=')
            .ok_or_else(|| usage(format!("expected name=value, got `{param}`")))?;
        let value = parse_rational(value).map_err(usage)?;
        spec.params
            .set_named(name, value)
            .map_err(|e| usage(e.to_string()))?;
    }
    let (n, m) = (args.n, spec.odd_dim());
    for text in &args.mixed {
        let tokens: Vec<(usize, &str)> = text.split_whitespace().map(|t| (1, t)).collect();
        let (left, right, coeffs) =
            parse_product_body(&tokens, n, m, 1).map_err(|e| usage(e.to_string()))?;
        spec.mixed.push((left, right, coeffs));
    }
    let (algebra, report) = spec.build().map_err(|e| usage(e.to_string()))?;
    write_or_print(&args.output, &dump_algebra(&algebra))?;
    if report.holds() {
        eprintln!("leibniz-super: holds");
        Ok(())
    } else {
        eprintln!(
            "leibniz-super: {} violation(s) — inspect the parameters",
            report.violations.len()
        );
        Err(Failure::Violation)
    }
}

/// Reads the block boundaries off the `x_1` action: `[y_j, x_1] = 0`
/// marks the end of a block.
fn infer_partition(a: &RatSuperAlgebra) -> Result<Vec<usize>, Failure> {
    use num_traits::Zero;
    let (n, m) = (a.even_dim(), a.odd_dim());
    let mut partition = Vec::new();
    let mut block = 0usize;
    for j in 1..=m {
        block += 1;
        if a.product(n + j - 1, 0).iter().all(Zero::is_zero) {
            partition.push(block);
            block = 0;
        }
    }
    if block != 0 {
        return Err(usage(
            "cannot infer the partition from the x1 action; pass --partition",
        ));
    }
    Ok(partition)
}

fn cmd_change(args: &ChangeArgs) -> CmdResult {
    let a = load_algebra(&args.file)?;
    let kind = Lemma31CaseKind::parse(&args.lemma31)
        .ok_or_else(|| usage(format!("unknown case `{}`", args.lemma31)))?;
    let a1 = parse_rational(&args.a1).map_err(usage)?;
    let a2 = parse_rational(&args.a2).map_err(usage)?;
    let partition = match &args.partition {
        Some(p) => p.clone(),
        None => infer_partition(&a)?,
    };

    let (case, transported) = match &args.a {
        Some(text) => {
            let value = parse_rational(text).map_err(usage)?;
            let case = Lemma31Case::new(kind, a1, a2).with_a(value);
            let (_, transported) =
                lemma31_transform(&a, &partition, &case).map_err(|e| usage(e.to_string()))?;
            (case, transported)
        }
        None => {
            let (case, _, transported) = lemma31_transform_retry(&a, &partition, kind, a1, a2, 20)
                .map_err(|e| usage(e.to_string()))?;
            (case, transported)
        }
    };

    write_or_print(&args.output, &dump_algebra(&transported))?;
    let report = verify_preserved_products(&a, &transported, kind.class(), &partition);
    if report.holds() {
        eprintln!(
            "case {} (a = {}): protected products preserved",
            kind.name(),
            case.a
        );
        Ok(())
    } else {
        eprintln!(
            "case {} (a = {}): {} preserved-product violation(s)",
            kind.name(),
            case.a,
            report.violations.len()
        );
        Err(Failure::Violation)
    }
}

fn cmd_verify(args: &VerifyArgs) -> CmdResult {
    let theorem = TheoremId::parse(&args.theorem)
        .ok_or_else(|| usage(format!("unknown theorem `{}`", args.theorem)))?;
    let pool: Result<Vec<Rat>, Failure> = args
        .pool
        .iter()
        .filter(|p| !p.is_empty())
        .map(|p| parse_rational(p).map_err(usage))
        .collect();
    let cfg = VerifyConfig {
        theorem,
        n: args.n,
        partition: parse_partition(&args.partition)?,
        trials: args.trials,
        seed: args.seed,
        pool: pool?,
    };
    let report = verify_theorem(&cfg).map_err(|e| usage(e.to_string()))?;
    print!("{}", report.render_human());
    if let Some(path) = &args.report {
        fs::write(path, report.render_machine())
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Violation)
    }
}
