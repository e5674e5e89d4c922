//! Command-line front end. Structured output goes to standard out, errors
//! to standard error.
//!
//! Exit codes: 0 success, 1 an applicable check failed, 2 input error
//! (usage, parse, domain, unmet precondition), 3 unsupported operation or
//! exceeded budget.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::{Algebra, IdentityKind};
use crate::corpus::{self, SearchMode};
use crate::enumerate::{self, EnumerationBudget, RadicalKind};
use crate::error::{Error, Result};
use crate::exactfield::{Field, FieldSpec, PrimeField, Rationals};
use crate::file::{self, describe_subspace, render_subspace, AlgebraFile, LoadedAlgebra};
use crate::series::{self, SeriesKind};
use crate::structure;
use crate::verify::{Assumptions, Atom, Certificates, CheckId, Verifier};

#[derive(Parser, Debug)]
#[command(name = "nonassoc", version, about = "Structure of finite-dimensional nonassociative algebras")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,
    /// Cap on vectors visited by one enumeration
    #[arg(long, global = true)]
    pub budget_vectors: Option<u64>,
    /// Cap on subspaces visited by one enumeration
    #[arg(long, global = true)]
    pub budget_subspaces: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Field, dimension, identities and nilpotency profile
    Info { file: PathBuf },
    /// Whether a defining identity holds
    Check {
        file: PathBuf,
        #[arg(long)]
        identity: String,
    },
    /// Derived, right power, left power or bracket power series
    Series {
        file: PathBuf,
        #[arg(long)]
        kind: String,
    },
    /// Solvable radical or one of the nilradicals
    Radical {
        file: PathBuf,
        #[arg(long, default_value = "solvable")]
        which: String,
    },
    /// Frattini subalgebra and Frattini ideal
    Frattini { file: PathBuf },
    MinimalIdeals { file: PathBuf },
    ChiefSeries { file: PathBuf },
    /// Decomposition of a semisimple bicommutative algebra
    Decompose { file: PathBuf },
    /// Splitting of a φ-free algebra over its zero socle
    Split { file: PathBuf },
    /// Run theorem checks
    Verify(VerifyArgs),
    /// Enumerate or sample algebras satisfying an identity
    Search(SearchArgs),
    /// List the built-in fixtures, optionally writing them as files
    Fixtures {
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub file: PathBuf,
    #[arg(long, conflicts_with = "check", required_unless_present = "check")]
    pub all: bool,
    #[arg(long)]
    pub check: Option<String>,
    /// Take a hypothesis as given (repeatable)
    #[arg(long = "assume")]
    pub assume: Vec<String>,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long)]
    pub field: String,
    #[arg(long)]
    pub dim: usize,
    /// An identity name, or `any`
    #[arg(long, default_value = "any")]
    pub identity: String,
    #[arg(long, conflicts_with_all = ["samples", "seed", "sparsity"])]
    pub exhaustive: bool,
    /// Only tables with at most this many nonzero structure constants (exhaustive mode)
    #[arg(long)]
    pub max_nonzero: Option<usize>,
    #[arg(long)]
    pub samples: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Probability that a sampled structure constant is zero
    #[arg(long, default_value_t = 0.5)]
    pub sparsity: f64,
}

/// What a command produced: a JSON document, its text rendering, and
/// whether a check failed.
struct Output {
    json: Value,
    text: String,
    failed: bool,
}

impl Output {
    fn new(json: Value, text: impl Into<String>) -> Self {
        Output { json, text: text.into(), failed: false }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Usage(_) | Error::Domain(_) | Error::Parse(_) | Error::Precondition(_) => 2,
        Error::Unsupported(_) | Error::Budget(_) => 3,
        Error::TheoremViolation(_) => 1,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    2
                }
            };
        }
    };
    let format = cli.output;
    match execute(cli) {
        Ok(out) => {
            let written = match format {
                OutputFormat::Json => {
                    writeln!(stdout, "{}", serde_json::to_string_pretty(&out.json).expect("serialisable"))
                }
                OutputFormat::Text => write!(stdout, "{}", out.text),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: cannot write output: {e}");
                return 2;
            }
            if out.failed {
                1
            } else {
                0
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn budget(cli: &Cli) -> Result<EnumerationBudget> {
    let d = EnumerationBudget::default();
    EnumerationBudget::new(cli.budget_vectors.unwrap_or(d.max_vectors), cli.budget_subspaces.unwrap_or(d.max_subspaces))
}

fn load(path: &PathBuf) -> Result<LoadedAlgebra> {
    let mut bytes = Vec::new();
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_end(&mut bytes).map_err(|e| Error::usage(format!("cannot read standard input: {e}")))?;
    } else {
        bytes = std::fs::read(path).map_err(|e| Error::usage(format!("cannot read {}: {e}", path.display())))?;
    }
    file::parse_file(&bytes).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn execute(cli: Cli) -> Result<Output> {
    let budget = budget(&cli)?;
    match &cli.command {
        Command::Search(args) => search(args, &budget),
        Command::Fixtures { emit } => fixtures(emit.as_ref(), &budget),
        Command::Info { file }
        | Command::Check { file, .. }
        | Command::Series { file, .. }
        | Command::Radical { file, .. }
        | Command::Frattini { file }
        | Command::MinimalIdeals { file }
        | Command::ChiefSeries { file }
        | Command::Decompose { file }
        | Command::Split { file }
        | Command::Verify(VerifyArgs { file, .. }) => match load(file)? {
            LoadedAlgebra::Rational(a, c) => on_algebra(&cli.command, &a, c, &budget),
            LoadedAlgebra::Prime(a, c) => on_algebra(&cli.command, &a, c, &budget),
        },
    }
}

fn on_algebra<K: Field>(cmd: &Command, a: &Algebra<K>, certs: Certificates<K>, budget: &EnumerationBudget) -> Result<Output> {
    let sub = |s: &crate::linalg::Subspace<K>| json!(render_subspace(s));
    let show = |s: &crate::linalg::Subspace<K>| describe_subspace(a, s);
    match cmd {
        Command::Info { .. } => {
            let flags = a.identities();
            let ids: serde_json::Map<String, Value> =
                IdentityKind::ALL.iter().map(|k| (k.as_str().to_string(), json!(flags.holds(*k)))).collect();
            let profile = series::nilpotency_profile(a);
            let mut text = format!("field: {}\ndim: {}\n", a.field().spec(), a.dim());
            let holding: Vec<&str> = flags.kinds().iter().map(|k| k.as_str()).collect();
            text += &format!("identities: {}\n", if holding.is_empty() { "none".into() } else { holding.join(", ") });
            text += &format!(
                "solvable: {}, right nilpotent: {}, left nilpotent: {}, nilpotent: {}\n",
                profile.solvable, profile.right_nilpotent, profile.left_nilpotent, profile.nilpotent
            );
            Ok(Output::new(
                json!({
                    "field": a.field().spec().to_string(),
                    "dim": a.dim(),
                    "identities": ids,
                    "naturalClass": flags.natural_class(),
                    "profile": serde_json::to_value(profile).expect("serialisable"),
                }),
                text,
            ))
        }
        Command::Check { identity, .. } => {
            let kind: IdentityKind = identity.parse()?;
            let holds = a.check_identity(kind);
            Ok(Output::new(json!({"identity": kind.as_str(), "holds": holds}), format!("{kind}: {holds}\n")))
        }
        Command::Series { kind, .. } => {
            let kind: SeriesKind = kind.parse()?;
            let s = series::compute_series(a, kind);
            let mut text = String::new();
            for (i, t) in s.terms.iter().enumerate() {
                text += &format!("{}: {}\n", i + kind.first_index(), show(t));
            }
            text += &match s.index {
                Some(i) => format!("index: {i}\n"),
                None => format!("stabilises at term {}\n", s.stabilized_at.map_or("?".into(), |p| p.to_string())),
            };
            Ok(Output::new(
                json!({
                    "kind": kind.as_str(),
                    "firstIndex": kind.first_index(),
                    "terms": s.terms.iter().map(sub).collect::<Vec<_>>(),
                    "terminated": s.terminated,
                    "index": s.index,
                    "stabilizedAt": s.stabilized_at,
                }),
                text,
            ))
        }
        Command::Radical { which, .. } => {
            let kind: RadicalKind = which.parse()?;
            let r = enumerate::radical(a, kind, budget)?;
            Ok(Output::new(json!({"which": kind.as_str(), "radical": sub(&r), "dim": r.dim()}), format!("{}\n", show(&r))))
        }
        Command::Frattini { .. } => {
            let f = enumerate::frattini(a, budget)?;
            Ok(Output::new(
                json!({"frattiniSubalgebra": sub(&f.subalgebra), "frattiniIdeal": sub(&f.ideal)}),
                format!("F = {}\nφ = {}\n", show(&f.subalgebra), show(&f.ideal)),
            ))
        }
        Command::MinimalIdeals { .. } => {
            let m = enumerate::minimal_ideals(a, budget)?;
            let text: String = m.iter().map(|s| format!("{}\n", show(s))).collect();
            Ok(Output::new(json!({"minimalIdeals": m.iter().map(sub).collect::<Vec<_>>()}), text))
        }
        Command::ChiefSeries { .. } => {
            let c = series::chief_series(a, &a.zero_subspace(), &a.full(), budget)?;
            let text: String = c.ideals.iter().map(|s| format!("{}\n", show(s))).collect();
            Ok(Output::new(
                json!({"ideals": c.ideals.iter().map(sub).collect::<Vec<_>>(), "factorDims": c.factor_dims()}),
                text,
            ))
        }
        Command::Decompose { .. } => {
            let d = structure::decompose_semisimple_bicommutative(a, budget)?;
            let mut text = format!("S² = {}\nU = {}\n", show(&d.square), show(&d.complement));
            for (i, (s, p)) in d.simples.iter().zip(&d.action_pattern).enumerate() {
                text += &format!(
                    "S{} = {}  S{}U = 0: {}  US{} = 0: {}\n",
                    i + 1,
                    show(s),
                    i + 1,
                    p.simple_times_complement_zero,
                    i + 1,
                    p.complement_times_simple_zero
                );
            }
            Ok(Output::new(
                json!({
                    "square": sub(&d.square),
                    "simples": d.simples.iter().map(sub).collect::<Vec<_>>(),
                    "complement": sub(&d.complement),
                    "actionPattern": d.action_pattern.iter().map(|p| json!({
                        "simpleTimesComplementZero": p.simple_times_complement_zero,
                        "complementTimesSimpleZero": p.complement_times_simple_zero,
                    })).collect::<Vec<_>>(),
                }),
                text,
            ))
        }
        Command::Split { .. } => {
            let s = structure::phi_free_split(a, budget)?;
            let mut text = format!("Zsoc = {}\nC = {}\n", show(&s.zsoc), show(&s.complement));
            let mut doc = json!({"zeroSocle": sub(&s.zsoc), "complement": sub(&s.complement)});
            if let Some(r) = &s.bicommutative {
                text += &format!(
                    "D = {}\nE = {}\nZ1 = {}\nZ2 = {}\n",
                    show(&r.d),
                    show(&r.e),
                    show(&r.z1),
                    show(&r.z2)
                );
                doc["bicommutative"] = json!({
                    "radical": sub(&r.radical),
                    "D": sub(&r.d),
                    "E": sub(&r.e),
                    "simples": r.e_decomposition.simples.iter().map(sub).collect::<Vec<_>>(),
                    "U": sub(&r.e_decomposition.complement),
                    "Z1": sub(&r.z1),
                    "Z2": sub(&r.z2),
                    "complementNotUnique": r.e_not_unique,
                });
            }
            if !s.novikov.is_empty() {
                doc["novikov"] = Value::Array(
                    s.novikov
                        .iter()
                        .map(|w| {
                            text += &format!("{}: C∩R = {}, annihilated: {}\n", w.side, show(&w.c_cap_r), w.annihilated);
                            json!({
                                "side": w.side.as_str(),
                                "radical": sub(&w.radical),
                                "CcapR": sub(&w.c_cap_r),
                                "annihilated": w.annihilated,
                            })
                        })
                        .collect(),
                );
            }
            Ok(Output::new(doc, text))
        }
        Command::Verify(args) => {
            let assumptions: Assumptions = args.assume.iter().map(|s| s.parse::<Atom>()).collect::<Result<_>>()?;
            let v = Verifier::new(a).with_certificates(certs).with_budget(*budget).with_assumptions(assumptions);
            let reports = match &args.check {
                Some(c) => vec![v.run(c.parse::<CheckId>()?)],
                None => v.run_all(),
            };
            let mut text = String::new();
            for r in &reports {
                let status = match (r.applicable, r.holds) {
                    (false, _) => "n/a ",
                    (true, true) => "PASS",
                    (true, false) => "FAIL",
                };
                text += &format!("{status} {}", r.check);
                if let Some(reason) = &r.reason {
                    text += &format!(": {reason}");
                }
                if !r.assumed.is_empty() {
                    let names: Vec<&str> = r.assumed.iter().map(|a| a.as_str()).collect();
                    text += &format!(" [assumed {}]", names.join(", "));
                }
                text.push('\n');
                if let Some(cx) = &r.counterexample {
                    text += &format!("  counterexample: {}\n", serde_json::to_string(cx).expect("serialisable"));
                }
            }
            let failed = reports.iter().any(|r| r.failed());
            let json = serde_json::to_value(&reports).expect("serialisable");
            Ok(Output { json: json!({"reports": json, "failed": failed}), text, failed })
        }
        Command::Search(_) | Command::Fixtures { .. } => unreachable!("handled without an input file"),
    }
}

fn search(args: &SearchArgs, budget: &EnumerationBudget) -> Result<Output> {
    let kind = match args.identity.to_lowercase().as_str() {
        "any" | "all" => None,
        other => Some(other.parse::<IdentityKind>()?),
    };
    let mode = match args.samples {
        Some(samples) => {
            if args.max_nonzero.is_some() {
                return Err(Error::usage("--max-nonzero applies to exhaustive search"));
            }
            SearchMode::Random { samples, seed: args.seed, sparsity: args.sparsity }
        }
        None => SearchMode::Exhaustive { max_nonzero: args.max_nonzero },
    };
    match args.field.parse::<FieldSpec>()? {
        FieldSpec::Rationals => search_in(Rationals, args.dim, kind, mode, budget),
        FieldSpec::Prime(p) => search_in(PrimeField::new(p)?, args.dim, kind, mode, budget),
    }
}

fn search_in<K: Field>(
    field: K,
    dim: usize,
    kind: Option<IdentityKind>,
    mode: SearchMode,
    budget: &EnumerationBudget,
) -> Result<Output> {
    let found = corpus::search(field, dim, kind, mode, budget)?;
    let files: Vec<AlgebraFile> = found.iter().map(AlgebraFile::from_algebra).collect();
    let mut text = format!("{} algebras\n", files.len());
    for f in &files {
        text += &serde_json::to_string(f).expect("serialisable");
        text.push('\n');
    }
    Ok(Output::new(json!({"count": files.len(), "algebras": files}), text))
}

fn fixtures(emit: Option<&PathBuf>, budget: &EnumerationBudget) -> Result<Output> {
    let all = corpus::load_fixtures(budget)?;
    if let Some(dir) = emit {
        std::fs::create_dir_all(dir).map_err(|e| Error::usage(format!("cannot create {}: {e}", dir.display())))?;
    }
    let mut list = Vec::new();
    let mut text = String::new();
    for f in &all {
        let doc = match &f.algebra {
            LoadedAlgebra::Rational(a, c) => AlgebraFile::from_algebra(a).with_certificates(a.field(), c),
            LoadedAlgebra::Prime(a, c) => AlgebraFile::from_algebra(a).with_certificates(a.field(), c),
        };
        if let Some(dir) = emit {
            let path = dir.join(format!("{}.json", file_stem(&f.name)));
            let body = serde_json::to_string_pretty(&doc).expect("serialisable");
            std::fs::write(&path, body + "\n").map_err(|e| Error::usage(format!("cannot write {}: {e}", path.display())))?;
        }
        text += &format!("{}  {}  dim {}  {}\n", f.name, a_field_name(&doc), doc.dim, f.provenance);
        list.push(json!({"name": f.name, "provenance": f.provenance, "field": a_field_name(&doc), "dim": doc.dim}));
    }
    Ok(Output::new(json!({"fixtures": list}), text))
}

/// Fixture names contain `+`, `/` and `^`; only `/` is unsafe in a file name.
pub fn file_stem(name: &str) -> String {
    name.replace('/', "_by_")
}

fn a_field_name(doc: &AlgebraFile) -> String {
    doc.field.to_spec().map(|s| s.to_string()).unwrap_or_else(|_| "?".into())
}
