use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use voa_verify::contragredient::build_invariant_form;
use voa_verify::fusion::FusionTensor;
use voa_verify::moduli::{
    check_associativity, check_equivariance, check_identity_axiom, nu_evaluate, parse_elements, sew,
    ModuliElement,
};
use voa_verify::rational::to_f64;
use voa_verify::report::{Status, VerificationReport};
use voa_verify::suite::{self, Suite, SuiteConfig, SuiteError};
use voa_verify::voa::{build_heisenberg, GradedVector, Partition};

#[derive(Parser)]
#[command(name = "voa-verify", version, about = "Exact identity checking for the truncated free-boson VOA")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Opts {
    /// Truncation level L of the algebra
    #[arg(long, global = true, default_value_t = 6)]
    level: usize,
    /// Exponent window [-w, w] per variable
    #[arg(long, global = true, default_value_t = 3, allow_negative_numbers = true)]
    window: i64,
    /// Series order for skew-symmetry, creation and conjugation
    #[arg(long, global = true, default_value_t = 6, allow_negative_numbers = true)]
    order: i64,
    /// Strictly increasing intermediate-weight cutoffs, comma separated
    #[arg(long, global = true, default_value = "4,8,12", value_delimiter = ',')]
    cutoffs: Vec<usize>,
    /// Truncation order M of local coordinates
    #[arg(long, global = true, default_value_t = 8)]
    moduli_order: usize,
    /// Seed for every random sample
    #[arg(long, global = true, default_value_t = 2024)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads; output does not depend on this
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Run one identity suite on the Heisenberg algebra
    Check {
        #[arg(value_enum)]
        suite: CheckSuite,
    },
    /// Contragredient modules and invariant forms
    Contragredient {
        #[command(subcommand)]
        action: ContragredientAction,
    },
    /// Fusion-rule tensors
    Fusion {
        #[command(subcommand)]
        action: FusionAction,
    },
    /// Spheres with tubes and sewing
    Moduli {
        #[command(subcommand)]
        action: ModuliAction,
    },
    /// Every suite in a fixed order
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckSuite {
    Delta,
    Creation,
    Skew,
    Commutators,
    Virasoro,
    Jacobi,
    Conjugation,
    S3,
}

#[derive(Subcommand)]
enum ContragredientAction {
    /// Print the Gram blocks of the invariant form on V
    Build,
    /// Run the contragredient and direct-sum suites
    Verify,
}

#[derive(Subcommand)]
enum FusionAction {
    /// S3 symmetry, commutativity, unit and associativity of a fusion tensor file
    Verify { file: PathBuf },
}

#[derive(Subcommand)]
enum ModuliAction {
    /// Sew the second element of the file into puncture `--at` of the first
    Sew {
        file: PathBuf,
        /// 1-based puncture of the first element
        #[arg(long, default_value_t = 1)]
        at: usize,
    },
    /// Identity, associativity and equivariance on the elements of a file
    Axioms { file: PathBuf },
    /// Evaluate the correlation function on each element at every cutoff
    Nu {
        file: PathBuf,
        /// Partitions for the punctures, `;`-separated, parts `,`-separated (empty = vacuum)
        #[arg(long, default_value = "")]
        vectors: String,
        /// Partition whose dual basis vector is paired with the result
        #[arg(long, default_value = "")]
        dual: String,
    },
}

enum Failure {
    Config(String),
}

impl From<SuiteError> for Failure {
    fn from(e: SuiteError) -> Self {
        Failure::Config(e.to_string())
    }
}

fn config(opts: &Opts) -> Result<SuiteConfig, Failure> {
    let cfg = SuiteConfig {
        level: opts.level,
        window: opts.window,
        order: opts.order,
        cutoffs: opts.cutoffs.clone(),
        moduli_order: opts.moduli_order,
        seed: opts.seed,
        ..SuiteConfig::default()
    };
    cfg.validate()?;
    if opts.jobs == 0 {
        return Err(Failure::Config("--jobs must be at least 1".into()));
    }
    Ok(cfg)
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))
}

fn parse_partition(s: &str) -> Result<Partition, Failure> {
    let parts = s
        .split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| match p.parse::<u32>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(Failure::Config(format!("bad partition part {p:?}"))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Partition::new(parts))
}

fn moduli_elements(path: &Path, order: usize) -> Result<Vec<ModuliElement>, Failure> {
    let text = read(path)?;
    let elements = parse_elements(&text).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
    if let Some(q) = elements.iter().find(|q| q.order != order) {
        return Err(Failure::Config(format!(
            "{}: element has order {} but --moduli-order is {order}",
            path.display(),
            q.order
        )));
    }
    Ok(elements)
}

fn moduli_axioms(elements: &[ModuliElement]) -> Vec<VerificationReport> {
    let mut triples = Vec::new();
    for a in elements {
        for b in elements {
            for c in elements {
                triples.push((a.clone(), b.clone(), c.clone()));
            }
        }
    }
    let reverse = |n: usize| (1..=n).rev().collect::<Vec<_>>();
    let instances: Vec<_> = elements
        .iter()
        .flat_map(|a| elements.iter().map(move |b| (a.clone(), b.clone(), reverse(a.arity()), reverse(b.arity()))))
        .collect();
    vec![
        check_identity_axiom(elements),
        check_associativity(&triples),
        check_equivariance(&instances),
    ]
}

fn moduli_nu(
    elements: &[ModuliElement],
    cfg: &SuiteConfig,
    vectors: &str,
    dual: &str,
) -> Result<Vec<VerificationReport>, Failure> {
    let alg = build_heisenberg(cfg.level);
    let dual = GradedVector::basis(parse_partition(dual)?);
    let given: Vec<GradedVector> = if vectors.trim().is_empty() {
        Vec::new()
    } else {
        vectors
            .split(';')
            .map(|p| parse_partition(p).map(GradedVector::basis))
            .collect::<Result<_, _>>()?
    };
    let mut out = Vec::new();
    for (s, q) in elements.iter().enumerate() {
        let vs = if given.is_empty() {
            vec![GradedVector::basis(Partition::empty()); q.arity()]
        } else if given.len() == q.arity() {
            given.clone()
        } else {
            return Err(Failure::Config(format!(
                "element {s} has arity {} but {} vectors were given",
                q.arity(),
                given.len()
            )));
        };
        let mut r = VerificationReport::new("nu", format!("element={s},arity={}", q.arity()));
        let mut values = Vec::new();
        for &n in &cfg.cutoffs {
            match nu_evaluate(&alg, q, &vs, &dual, n) {
                Ok(v) => {
                    r.notes.push(format!("N={n}: {} (~{:.6e}, stable={})", v.value, to_f64(&v.value), v.stable));
                    values.push(v.value);
                }
                Err(e) => r.record(false, &[s as i64, n as i64], e),
            }
        }
        r.checked += values.len();
        out.push(r);
    }
    Ok(out)
}

fn emit(suite: &str, reports: &[VerificationReport], format: Format, out: &mut Vec<String>) {
    for r in reports {
        match format {
            Format::Text => out.push(format!("[{suite}] {r}")),
            Format::Structured => out.push(r.structured_line(suite)),
        }
    }
}

fn execute(cli: &Cli) -> Result<Vec<(String, Vec<VerificationReport>)>, Failure> {
    let cfg = config(&cli.opts)?;
    let jobs = cli.opts.jobs;
    let run = |suites: &[Suite]| -> Result<Vec<(String, Vec<VerificationReport>)>, Failure> {
        let rs = suite::run(suites, &cfg, jobs)?;
        Ok(suites
            .iter()
            .map(|s| (s.to_string(), rs.iter().filter(|(t, _)| t == s).map(|(_, r)| r.clone()).collect()))
            .collect())
    };
    match &cli.command {
        Command::Check { suite } => run(&[match suite {
            CheckSuite::Delta => Suite::Delta,
            CheckSuite::Creation => Suite::Creation,
            CheckSuite::Skew => Suite::Skew,
            CheckSuite::Commutators => Suite::Commutators,
            CheckSuite::Virasoro => Suite::Virasoro,
            CheckSuite::Jacobi => Suite::Jacobi,
            CheckSuite::Conjugation => Suite::Conjugation,
            CheckSuite::S3 => Suite::S3,
        }]),
        Command::Contragredient { action: ContragredientAction::Verify } => {
            run(&[Suite::Contragredient, Suite::DirectSum])
        }
        Command::Contragredient { action: ContragredientAction::Build } => {
            let alg = build_heisenberg(cfg.level);
            let mut r = VerificationReport::new("invariant-form", format!("level={}", cfg.level));
            match build_invariant_form(&alg, &alg, &voa_verify::rational::q(1)) {
                Ok(form) => {
                    r.record(form.is_nondegenerate(), &[], "nondegenerate blocks");
                    r.record(form.symmetric, &[], "symmetric");
                    for w in 0..=cfg.level {
                        let basis = alg.basis(w);
                        for a in &basis {
                            let row: Vec<String> = basis
                                .iter()
                                .map(|b| form.pair(&GradedVector::basis(a.clone()), &GradedVector::basis(b.clone())).to_string())
                                .collect();
                            r.notes.push(format!("weight {w} {a:?}: {}", row.join(" ")));
                        }
                    }
                }
                Err(e) => r.record(false, &[], e),
            }
            Ok(vec![("contragredient".into(), vec![r])])
        }
        Command::Fusion { action: FusionAction::Verify { file } } => {
            let text = read(file)?;
            let t = FusionTensor::parse(&text).map_err(|e| Failure::Config(format!("{}: {e}", file.display())))?;
            let name = file.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            Ok(vec![("fusion".into(), suite::fusion_tensor_reports(&name, &t))])
        }
        Command::Moduli { action } => {
            let reports = match action {
                ModuliAction::Sew { file, at } => {
                    let es = moduli_elements(file, cfg.moduli_order)?;
                    if es.len() != 2 {
                        return Err(Failure::Config(format!("{}: expected two elements, found {}", file.display(), es.len())));
                    }
                    let mut r = VerificationReport::new("sew", format!("at={at}"));
                    match sew(&es[0], *at, &es[1]) {
                        Ok(s) => {
                            r.record(s.element.validate().is_ok(), &[], "sewn element is valid");
                            r.notes.push(format!("transition {s}"));
                            r.notes.extend(s.element.to_string().lines().map(String::from));
                        }
                        Err(e) => r.record(false, &[*at as i64], e),
                    }
                    vec![r]
                }
                ModuliAction::Axioms { file } => moduli_axioms(&moduli_elements(file, cfg.moduli_order)?),
                ModuliAction::Nu { file, vectors, dual } => {
                    moduli_nu(&moduli_elements(file, cfg.moduli_order)?, &cfg, vectors, dual)?
                }
            };
            Ok(vec![("moduli".into(), reports)])
        }
        Command::All => run(&Suite::ALL),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let groups = match execute(&cli) {
        Ok(g) => g,
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let mut lines = Vec::new();
    let (mut pass, mut fail, mut skipped) = (0usize, 0usize, 0usize);
    for (suite, reports) in &groups {
        emit(suite, reports, cli.opts.format, &mut lines);
        for r in reports {
            match r.status() {
                Status::Pass => pass += 1,
                Status::Fail => fail += 1,
                Status::SkippedBudget => skipped += 1,
            }
        }
    }
    let seen: BTreeSet<&str> = groups.iter().map(|(s, _)| s.as_str()).collect();
    lines.push(match cli.opts.format {
        Format::Text => format!("summary: {pass} pass, {fail} fail, {skipped} skipped ({} suites)", seen.len()),
        Format::Structured => format!(
            "summary total pass={pass},fail={fail},skipped={skipped} {} {fail}",
            if fail == 0 { "pass" } else { "fail" }
        ),
    });
    println!("{}", lines.join("\n"));
    eprintln!("elapsed {:.2}s", start.elapsed().as_secs_f64());
    if fail == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
