//! Argument parsing and command dispatch.
//!
//! Exit codes: 0 for success (including a passing verification run),
//! 1 when a verification sweep finds violations, 2 for usage errors,
//! malformed input, and level or budget refusals.  Errors go to
//! stderr as a single `error:`-prefixed line.

use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use quasilocal::{
    admissible_pair, class_field_of, enumerate_extensions, norm_group, norm_groups_of_index,
    Bounds, FieldSpec, IndexFeasibility, NormSubgroup, TheoremId,
};

use crate::dot::{lattice_dot, LatticeFilter};
use crate::json::{
    ExtensionDto, FieldSummaryDto, NormDto, NormReportDto, PowerQuotientDto, ReportDto, SpecDto,
};

#[derive(Parser)]
#[command(
    name = "quasilocal",
    version,
    about = "Extension lattices, norm groups and class fields of formally real quasilocal fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Filter {
    All,
    ClassFields,
}

#[derive(Args)]
struct SpecArg {
    /// Field spec: path to a JSON file, or inline JSON
    #[arg(long, value_name = "SPEC")]
    spec: String,
}

#[derive(Args)]
struct InArg {
    /// Input object: path to a JSON file, or inline JSON
    #[arg(long = "in", value_name = "JSON")]
    input: String,
}

#[derive(Args)]
struct OutArgs {
    /// Write the report here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Output format (json unless noted; lattice emits dot)
    #[arg(long, value_enum, value_name = "FORMAT")]
    format: Option<Format>,
}

#[derive(Subcommand)]
enum Command {
    /// Field invariants; with --n, the structure of the n-th power quotient
    Describe {
        #[command(flatten)]
        spec: SpecArg,
        /// Power exponent n
        #[arg(long, value_name = "N")]
        n: Option<u64>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Operations on one extension class (--in)
    Ext {
        #[command(subcommand)]
        op: ExtOp,
    },
    /// Norm-group correspondence queries
    Norm {
        #[command(subcommand)]
        op: NormOp,
    },
    /// List extension classes or norm subgroups within a bound
    Enumerate {
        #[command(subcommand)]
        what: EnumerateWhat,
    },
    /// Run exhaustive verification sweeps against the oracle
    Verify {
        #[command(flatten)]
        spec: SpecArg,
        /// Theorem id (THM_1_1, ..., REMARK_3_2_I) or "all"
        #[arg(long, default_value = "all", value_name = "ID")]
        theorem: String,
        /// Degree bound for class sweeps
        #[arg(long, value_name = "N")]
        max_degree: Option<u64>,
        /// Index bound for norm-subgroup sweeps
        #[arg(long, value_name = "N")]
        max_index: Option<u64>,
        /// Degree bound for pairwise sweeps
        #[arg(long, value_name = "N")]
        pair_degree: Option<u64>,
        /// Power sweeps cover the divisors of this modulus
        #[arg(long, value_name = "N")]
        n: Option<u64>,
        /// Cap on oracle element storage
        #[arg(long, value_name = "N")]
        budget: Option<u64>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Emit the extension lattice as Graphviz DOT
    Lattice {
        #[command(flatten)]
        spec: SpecArg,
        /// Degree bound for the lattice
        #[arg(long, default_value_t = 100, value_name = "N")]
        max_degree: u64,
        /// Keep all classes, or class fields only (with norm indexes)
        #[arg(long, value_enum, default_value_t = Filter::All)]
        filter: Filter,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Subcommand)]
enum ExtOp {
    /// Degree of the class over the base field
    Degree {
        #[command(flatten)]
        spec: SpecArg,
        #[command(flatten)]
        input: InArg,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Whether the class is a normal extension of the base field
    Normal {
        #[command(flatten)]
        spec: SpecArg,
        #[command(flatten)]
        input: InArg,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Smallest normal class containing the input
    Closure {
        #[command(flatten)]
        spec: SpecArg,
        #[command(flatten)]
        input: InArg,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Maximal odd-degree subclass
    OddPart {
        #[command(flatten)]
        spec: SpecArg,
        #[command(flatten)]
        input: InArg,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Invariant factors of the Galois group over the quadratic base
    GaloisShape {
        #[command(flatten)]
        spec: SpecArg,
        #[command(flatten)]
        input: InArg,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Subcommand)]
enum NormOp {
    /// Full correspondence report for an extension (--in extension)
    Compute {
        #[command(flatten)]
        spec: SpecArg,
        #[command(flatten)]
        input: InArg,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Index of the norm group of an extension (--in extension)
    Index {
        #[command(flatten)]
        spec: SpecArg,
        #[command(flatten)]
        input: InArg,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Invariant factors of the norm quotient (--in extension)
    Quotient {
        #[command(flatten)]
        spec: SpecArg,
        #[command(flatten)]
        input: InArg,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Class field of a norm subgroup (--in norm subgroup)
    ClassField {
        #[command(flatten)]
        spec: SpecArg,
        #[command(flatten)]
        input: InArg,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Class-field closure of an extension (--in extension)
    Cl {
        #[command(flatten)]
        spec: SpecArg,
        #[command(flatten)]
        input: InArg,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Subcommand)]
enum EnumerateWhat {
    /// All extension classes of degree at most the bound
    Extensions {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, default_value_t = 100, value_name = "N")]
        max_degree: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// All norm subgroups of index at most the bound
    NormGroups {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, default_value_t = 100, value_name = "N")]
        max_degree: u64,
        #[command(flatten)]
        out: OutArgs,
    },
}

/// Run the CLI on explicit arguments; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    0
                }
                _ => {
                    let rendered = e.to_string();
                    let first = rendered.lines().next().unwrap_or("invalid arguments");
                    if first.starts_with("error:") {
                        eprintln!("{first}");
                    } else {
                        eprintln!("error: {first}");
                    }
                    2
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

/// Treat the argument as inline JSON when it looks like JSON,
/// otherwise as a path.
fn read_input(raw: &str) -> Result<String, String> {
    let trimmed = raw.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        Ok(raw.to_string())
    } else {
        fs::read_to_string(raw).map_err(|e| format!("cannot read {raw}: {e}"))
    }
}

fn load_spec(arg: &SpecArg) -> Result<FieldSpec, String> {
    let text = read_input(&arg.spec)?;
    let dto: SpecDto =
        serde_json::from_str(&text).map_err(|e| format!("malformed spec JSON: {e}"))?;
    dto.to_spec()
}

fn load_extension(
    spec: &FieldSpec,
    arg: &InArg,
) -> Result<quasilocal::FiniteExtension, String> {
    let text = read_input(&arg.input)?;
    let dto: ExtensionDto =
        serde_json::from_str(&text).map_err(|e| format!("malformed extension JSON: {e}"))?;
    dto.to_extension(spec)
}

fn load_norm_subgroup(spec: &FieldSpec, arg: &InArg) -> Result<NormSubgroup, String> {
    let text = read_input(&arg.input)?;
    let dto: NormDto =
        serde_json::from_str(&text).map_err(|e| format!("malformed norm subgroup JSON: {e}"))?;
    dto.to_norm_subgroup(spec)
}

fn emit(out: &OutArgs, body: String) -> Result<(), String> {
    match &out.out {
        Some(path) => fs::write(path, body).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, String> {
    let mut s =
        serde_json::to_string(value).map_err(|e| format!("cannot serialize report: {e}"))?;
    s.push('\n');
    Ok(s)
}

/// Resolve json/text for commands that support both.
fn data_format(out: &OutArgs) -> Result<Format, String> {
    match out.format {
        None => Ok(Format::Json),
        Some(Format::Dot) => Err("dot format is only available for the lattice command".into()),
        Some(f) => Ok(f),
    }
}

fn dispatch(command: Command) -> Result<i32, String> {
    match command {
        Command::Describe { spec, n, out } => describe(&spec, n, &out),
        Command::Ext { op } => ext(op),
        Command::Norm { op } => norm(op),
        Command::Enumerate { what } => enumerate(what),
        Command::Verify { spec, theorem, max_degree, max_index, pair_degree, n, budget, out } => {
            verify(&spec, &theorem, max_degree, max_index, pair_degree, n, budget, &out)
        }
        Command::Lattice { spec, max_degree, filter, out } => {
            lattice(&spec, max_degree, filter, &out)
        }
    }
}

fn describe(spec_arg: &SpecArg, n: Option<u64>, out: &OutArgs) -> Result<i32, String> {
    let spec = load_spec(spec_arg)?;
    let format = data_format(out)?;
    let body = match n {
        Some(n) => {
            let (d, d1) = admissible_pair(&spec, n).map_err(|e| e.to_string())?;
            let shape =
                quasilocal::unit_quotient_shape(&spec, n).map_err(|e| e.to_string())?;
            let dto = PowerQuotientDto {
                n_e: d,
                n_e1: d1,
                shape: shape.factors().to_vec(),
                sql: spec.is_strictly_quasilocal(),
            };
            match format {
                Format::Json => to_json(&dto)?,
                _ => format!(
                    "nE {d}, nE1 {d1}, quotient {shape}, strictly quasilocal: {}\n",
                    spec.is_strictly_quasilocal()
                ),
            }
        }
        None => {
            let dto = FieldSummaryDto {
                pi1: spec.pi1().iter().copied().collect(),
                pi2: spec.pi2().iter().copied().collect(),
                level: spec.levels().iter().map(|(p, k)| (p.to_string(), *k)).collect(),
                sql: spec.is_strictly_quasilocal(),
            };
            match format {
                Format::Json => to_json(&dto)?,
                _ => format!(
                    "pi1 {:?}, pi2 {:?}, levels {:?}, strictly quasilocal: {}\n",
                    spec.pi1(),
                    spec.pi2(),
                    spec.levels(),
                    spec.is_strictly_quasilocal()
                ),
            }
        }
    };
    emit(out, body)?;
    Ok(0)
}

fn ext(op: ExtOp) -> Result<i32, String> {
    let (spec_arg, input, out, kind) = match &op {
        ExtOp::Degree { spec, input, out } => (spec, input, out, "degree"),
        ExtOp::Normal { spec, input, out } => (spec, input, out, "normal"),
        ExtOp::Closure { spec, input, out } => (spec, input, out, "closure"),
        ExtOp::OddPart { spec, input, out } => (spec, input, out, "odd-part"),
        ExtOp::GaloisShape { spec, input, out } => (spec, input, out, "galois-shape"),
    };
    let spec = load_spec(spec_arg)?;
    let x = load_extension(&spec, input)?;
    let format = data_format(out)?;
    let body = match kind {
        "degree" => match format {
            Format::Json => to_json(&serde_json::json!({ "degree": x.degree() }))?,
            _ => format!("{}\n", x.degree()),
        },
        "normal" => match format {
            Format::Json => to_json(&serde_json::json!({ "normal": x.is_normal() }))?,
            _ => format!("{}\n", x.is_normal()),
        },
        "closure" => {
            let closure = if x.is_normal() { x } else { x.adjoin_i() };
            match format {
                Format::Json => to_json(&ExtensionDto::of(&closure))?,
                _ => format!("{closure}\n"),
            }
        }
        "odd-part" => {
            let odd = x.odd_part();
            match format {
                Format::Json => to_json(&ExtensionDto::of(&odd))?,
                _ => format!("{odd}\n"),
            }
        }
        _ => {
            let shape = x.galois_shape();
            match format {
                Format::Json => to_json(&serde_json::json!({ "shape": shape.factors() }))?,
                _ => format!("{shape}\n"),
            }
        }
    };
    emit(out, body)?;
    Ok(0)
}

fn norm(op: NormOp) -> Result<i32, String> {
    match op {
        NormOp::Compute { spec, input, out } => {
            let spec = load_spec(&spec)?;
            let x = load_extension(&spec, &input)?;
            let u = norm_group(&spec, &x);
            let report = NormReportDto {
                input: ExtensionDto::of(&x),
                index: u.index(),
                quotient_shape: u.quotient_shape().factors().to_vec(),
                class_field: ExtensionDto::of(&class_field_of(&spec, &u)),
                norm_group: NormDto::of(&u),
            };
            let body = match data_format(&out)? {
                Format::Json => to_json(&report)?,
                _ => format!(
                    "norm group {u}\nindex {}\nquotient {}\nclass field {}\n",
                    u.index(),
                    u.quotient_shape(),
                    class_field_of(&spec, &u)
                ),
            };
            emit(&out, body)?;
        }
        NormOp::Index { spec, input, out } => {
            let spec = load_spec(&spec)?;
            let u = norm_group(&spec, &load_extension(&spec, &input)?);
            let body = match data_format(&out)? {
                Format::Json => to_json(&serde_json::json!({ "index": u.index() }))?,
                _ => format!("{}\n", u.index()),
            };
            emit(&out, body)?;
        }
        NormOp::Quotient { spec, input, out } => {
            let spec = load_spec(&spec)?;
            let u = norm_group(&spec, &load_extension(&spec, &input)?);
            let body = match data_format(&out)? {
                Format::Json => to_json(
                    &serde_json::json!({ "quotient_shape": u.quotient_shape().factors() }),
                )?,
                _ => format!("{}\n", u.quotient_shape()),
            };
            emit(&out, body)?;
        }
        NormOp::ClassField { spec, input, out } => {
            let spec = load_spec(&spec)?;
            let u = load_norm_subgroup(&spec, &input)?;
            let cf = class_field_of(&spec, &u);
            let body = match data_format(&out)? {
                Format::Json => to_json(&ExtensionDto::of(&cf))?,
                _ => format!("{cf}\n"),
            };
            emit(&out, body)?;
        }
        NormOp::Cl { spec, input, out } => {
            let spec = load_spec(&spec)?;
            let x = load_extension(&spec, &input)?;
            let cl = class_field_of(&spec, &norm_group(&spec, &x));
            let body = match data_format(&out)? {
                Format::Json => to_json(&ExtensionDto::of(&cl))?,
                _ => format!("{cl}\n"),
            };
            emit(&out, body)?;
        }
    }
    Ok(0)
}

fn enumerate(what: EnumerateWhat) -> Result<i32, String> {
    match what {
        EnumerateWhat::Extensions { spec, max_degree, out } => {
            let spec = load_spec(&spec)?;
            let classes =
                enumerate_extensions(&spec, max_degree).map_err(|e| e.to_string())?;
            let body = match data_format(&out)? {
                Format::Json => {
                    let dtos: Vec<ExtensionDto> = classes.iter().map(ExtensionDto::of).collect();
                    to_json(&dtos)?
                }
                _ => {
                    let mut s = String::new();
                    for x in &classes {
                        s.push_str(&format!("{x}\n"));
                    }
                    s.push_str(&format!("{} classes\n", classes.len()));
                    s
                }
            };
            emit(&out, body)?;
        }
        EnumerateWhat::NormGroups { spec, max_degree, out } => {
            let spec = load_spec(&spec)?;
            let mut subs = Vec::new();
            for n in 1..=max_degree {
                if let IndexFeasibility::Feasible(list) = norm_groups_of_index(&spec, n) {
                    subs.extend(list);
                }
            }
            let body = match data_format(&out)? {
                Format::Json => {
                    let dtos: Vec<NormDto> = subs.iter().map(NormDto::of).collect();
                    to_json(&dtos)?
                }
                _ => {
                    let mut s = String::new();
                    for u in &subs {
                        s.push_str(&format!("{u}\n"));
                    }
                    s.push_str(&format!("{} norm subgroups\n", subs.len()));
                    s
                }
            };
            emit(&out, body)?;
        }
    }
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn verify(
    spec_arg: &SpecArg,
    theorem: &str,
    max_degree: Option<u64>,
    max_index: Option<u64>,
    pair_degree: Option<u64>,
    modulus: Option<u64>,
    budget: Option<u64>,
    out: &OutArgs,
) -> Result<i32, String> {
    let spec = load_spec(spec_arg)?;
    let defaults = Bounds::default();
    let bounds = Bounds {
        max_degree: max_degree.unwrap_or(defaults.max_degree),
        max_index: max_index.unwrap_or(defaults.max_index),
        pair_degree: pair_degree.unwrap_or(defaults.pair_degree),
        modulus: modulus.unwrap_or(defaults.modulus),
        budget: budget.unwrap_or(defaults.budget),
    };
    let theorems: Vec<TheoremId> = if theorem.eq_ignore_ascii_case("all") {
        TheoremId::ALL.to_vec()
    } else {
        vec![theorem.parse().map_err(|e: quasilocal::verify::UnknownTheorem| e.to_string())?]
    };

    let mut reports = Vec::new();
    for t in theorems {
        let start = Instant::now();
        let mut report = quasilocal::verify(&spec, t, &bounds).map_err(|e| e.to_string())?;
        report.elapsed_ms = start.elapsed().as_millis() as u64;
        reports.push(report);
    }
    let all_pass = reports.iter().all(|r| r.pass());

    let body = match data_format(out)? {
        Format::Json => {
            if reports.len() == 1 {
                to_json(&ReportDto::of(&reports[0]))?
            } else {
                let dtos: Vec<ReportDto> = reports.iter().map(ReportDto::of).collect();
                to_json(&dtos)?
            }
        }
        _ => {
            let mut s = String::new();
            for r in &reports {
                s.push_str(&format!("{r} [{} ms]\n", r.elapsed_ms));
            }
            s
        }
    };
    emit(out, body)?;
    Ok(if all_pass { 0 } else { 1 })
}

fn lattice(
    spec_arg: &SpecArg,
    max_degree: u64,
    filter: Filter,
    out: &OutArgs,
) -> Result<i32, String> {
    if !matches!(out.format, None | Some(Format::Dot)) {
        return Err("the lattice command emits dot only".into());
    }
    let spec = load_spec(spec_arg)?;
    let filter = match filter {
        Filter::All => LatticeFilter::All,
        Filter::ClassFields => LatticeFilter::ClassFields,
    };
    let body = lattice_dot(&spec, max_degree, filter)?;
    emit(out, body)?;
    Ok(0)
}
