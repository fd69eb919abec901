//! Command-line entry point: parse ring specs and polynomials, dispatch to
//! the library, emit JSON/CSV/text reports, and manage the count cache.
//!
//! Exit codes: 0 success, 1 domain error (structured JSON on stderr),
//! 2 usage error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use dualfun::counting::{self, Quantity, ReportMethod};
use dualfun::dual::{format_dual_element, DualRing};
use dualfun::error::Error;
use dualfun::exhaust::{EnumLimits, DEFAULT_BUDGET};
use dualfun::null;
use dualfun::perm::{self, CriterionPath, PermVerdict, Witness};
use dualfun::poly::{self, DualPoly, FunctionTable, Poly};
use dualfun::ring::{self, FiniteRing, Ring};

mod cache;
mod render;
mod sweep;

use render::Format;

#[derive(Parser)]
#[command(name = "dualfun", version, about = "Exact polynomial-function counting over dual numbers of finite rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Hard cap on candidate polynomials per enumeration sweep.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,

    /// Worker threads for enumeration sweeps (results are identical for any
    /// worker count).
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,

    /// Output format (default: json; sweep defaults to csv).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Cache directory for count reports (also via DUALFUN_CACHE_DIR).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Ring structure queries.
    Ring {
        #[command(subcommand)]
        command: RingCommand,
    },
    /// Null-polynomial operations.
    Null {
        #[command(subcommand)]
        command: NullCommand,
    },
    /// Permutation-polynomial tests.
    Perm {
        #[command(subcommand)]
        command: PermCommand,
    },
    /// Prescribed value/derivative table construction over fields.
    Pair {
        #[command(subcommand)]
        command: PairCommand,
    },
    /// Count polynomial functions, permutations or the stabilizer order.
    Count(CountArgs),
    /// Check the counting identities on one ring.
    Verify(VerifyArgs),
    /// Batch counts over a config file, one CSV row per cell.
    Sweep(SweepArgs),
}

#[derive(Subcommand)]
enum RingCommand {
    /// Order, units, local structure and suitability of a ring (append [k]
    /// for the dual extension).
    Info {
        #[arg(long)]
        ring: String,
    },
}

#[derive(Subcommand)]
enum NullCommand {
    /// Membership of a polynomial in N / N', or nullity on the dual ring.
    Check {
        #[arg(long)]
        ring: String,
        /// Constant part (over the base ring).
        #[arg(long)]
        poly: String,
        /// alpha_i parts, repeatable, in order a1, a2, ...
        #[arg(long = "part")]
        parts: Vec<String>,
    },
    /// The canonical monic null polynomials prod (x-r) and prod (x-r)^2.
    Canonical {
        #[arg(long)]
        ring: String,
    },
    /// All null polynomials below a degree bound.
    Enumerate {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        degree: u32,
        /// Require the derivative to vanish as well (N'_n).
        #[arg(long)]
        primed: bool,
    },
}

#[derive(Subcommand)]
enum PermCommand {
    /// Permutation verdict with witness and criterion path.
    Check {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        poly: String,
        #[arg(long = "part")]
        parts: Vec<String>,
        /// Criterion to apply (default: exhaustive table for plain rings,
        /// the constant-part criterion for dual rings).
        #[arg(long, value_enum, default_value_t = PathChoice::Auto)]
        path: PathChoice,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PathChoice {
    Auto,
    Exhaustive,
    Residue,
    Components,
    ConstantPart,
}

#[derive(Subcommand)]
enum PairCommand {
    /// Construct f over a field with [f] = F and [f'] = G, deg f < 2q.
    Construct {
        #[arg(long)]
        ring: String,
        /// Value table, comma-separated element literals, one per element.
        #[arg(long = "f-table")]
        f_table: String,
        /// Derivative table, same shape.
        #[arg(long = "g-table")]
        g_table: String,
    },
}

#[derive(Args)]
struct CountArgs {
    #[arg(long)]
    ring: String,
    /// Number of dual variables (may also be given as a [k] ring suffix).
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    quantity: String,
    /// formula, enum, or both.
    #[arg(long, default_value = "both")]
    method: String,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    ring: String,
    #[arg(long)]
    k: Option<u32>,
}

#[derive(Args)]
struct SweepArgs {
    /// JSON config: {"rings": [...], "k": [...], "quantities": [...],
    /// optional "method", "budget", "workers"}.
    #[arg(long)]
    config: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            let result = match &cli.out {
                Some(path) => std::fs::write(path, output.as_bytes()).map_err(io_error),
                None => {
                    let mut stdout = std::io::stdout().lock();
                    stdout
                        .write_all(output.as_bytes())
                        .and_then(|_| stdout.write_all(b"\n"))
                        .map_err(io_error)
                }
            };
            match result {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => fail(&e),
            }
        }
        Err(e) => fail(&e),
    }
}

fn io_error(e: std::io::Error) -> CliError {
    CliError {
        code: "io_error".into(),
        message: e.to_string(),
    }
}

struct CliError {
    code: String,
    message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError {
            code: e.code().into(),
            message: e.to_string(),
        }
    }
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!(
        "{}",
        json!({ "error": e.code, "message": e.message })
    );
    ExitCode::FAILURE
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let limits = EnumLimits {
        budget: cli.budget,
        workers: cli.workers,
    };
    let format = cli.format.unwrap_or(Format::Json);
    match &cli.command {
        Command::Ring {
            command: RingCommand::Info { ring },
        } => ring_info(ring, format),
        Command::Null { command } => run_null(command, &limits, format),
        Command::Perm {
            command:
                PermCommand::Check {
                    ring,
                    poly,
                    parts,
                    path,
                },
        } => perm_check(ring, poly, parts, *path, format),
        Command::Pair {
            command:
                PairCommand::Construct {
                    ring,
                    f_table,
                    g_table,
                },
        } => pair_construct(ring, f_table, g_table, format),
        Command::Count(args) => count(cli, args, &limits, format),
        Command::Verify(args) => verify(args, &limits, format),
        Command::Sweep(args) => sweep::run(args, &limits, cli.format.unwrap_or(Format::Csv)),
    }
}

/// Ring spec with an optional [k] suffix; `k_flag` may override or agree.
fn resolve_ring(text: &str, k_flag: Option<u32>) -> Result<(FiniteRing, u32), CliError> {
    let (spec, k_suffix) = ring::parse_ring_spec(text)?;
    let ring = FiniteRing::new(spec)?;
    let k = match (k_suffix, k_flag) {
        (0, Some(k)) => k,
        (k, None) => k,
        (a, Some(b)) if a == b => a,
        (a, Some(b)) => {
            return Err(CliError {
                code: "parse_error".into(),
                message: format!("conflicting dual-variable counts: ring suffix [{a}] vs --k {b}"),
            })
        }
    };
    Ok((ring, k))
}

fn parse_dualpoly(
    base: &FiniteRing,
    k: u32,
    poly_text: &str,
    part_texts: &[String],
) -> Result<DualPoly, CliError> {
    if part_texts.len() > k as usize {
        return Err(CliError {
            code: "parse_error".into(),
            message: format!("{} parts given but the ring has k = {k}", part_texts.len()),
        });
    }
    let f0 = poly::parse_poly(base, poly_text)?;
    let mut parts: Vec<Poly> = part_texts
        .iter()
        .map(|t| poly::parse_poly(base, t))
        .collect::<Result<_, _>>()?;
    parts.resize(k as usize, Poly::zero());
    Ok(DualPoly { f0, parts })
}

fn ring_info(text: &str, format: Format) -> Result<String, CliError> {
    let (ring, k) = resolve_ring(text, None)?;
    let mut info = json!({
        "spec": ring.spec_string(),
        "order": ring.order(),
        "is_field": ring.is_field(),
        "is_local": ring.is_local(),
        "units": ring.elements().filter(|&a| ring.is_unit(a)).count(),
        "summands": ring.summands().iter().map(|s| s.spec_string()).collect::<Vec<_>>(),
    });
    if let Ok(ls) = ring.local_structure() {
        info["local"] = json!({
            "maximal_ideal": ls.maximal_ideal.iter()
                .map(|&x| ring::format_element(&ring, x)).collect::<Vec<_>>(),
            "nilpotency": ls.nilpotency,
            "residue_field": ls.residue_field.spec_string(),
        });
        info["suitable"] = json!(ring::is_suitable(&ring)?);
    }
    if k > 0 {
        let dr = DualRing::new(ring.clone(), k)?;
        let mut dual = json!({
            "spec": dr.spec_string(),
            "k": k,
            "order": Ring::order(&dr),
        });
        if let Ok(ls) = dr.local_structure() {
            dual["nilpotency"] = json!(ls.nilpotency);
            dual["maximal_ideal_size"] = json!(ls.maximal_ideal.len());
            dual["suitable"] = json!(ring::is_suitable(&dr)?);
        }
        info["dual"] = dual;
    }
    Ok(render::render_value(&info, format))
}

fn run_null(
    command: &NullCommand,
    limits: &EnumLimits,
    format: Format,
) -> Result<String, CliError> {
    match command {
        NullCommand::Check { ring, poly, parts } => {
            let (base, k) = resolve_ring(ring, None)?;
            let f = parse_dualpoly(&base, k.max(0), poly, parts)?;
            let mut out = json!({
                "ring": if k > 0 { format!("{}[{k}]", base.spec_string()) } else { base.spec_string() },
                "poly": poly::format_poly(&base, &f.f0),
                "in_N": (null::in_n(&base, &f.f0)),
                "in_N_prime": (null::in_n_prime(&base, &f.f0)),
            });
            if k > 0 {
                out["parts"] = json!(f
                    .parts
                    .iter()
                    .map(|p| poly::format_poly(&base, p))
                    .collect::<Vec<_>>());
                out["parts_in_N"] =
                    json!(f.parts.iter().map(|p| null::in_n(&base, p)).collect::<Vec<_>>());
                out["null_on_dual"] = json!((null::is_null_on_dual(&base, &f)));
            }
            Ok(render::render_value(&out, format))
        }
        NullCommand::Canonical { ring } => {
            let (base, _) = resolve_ring(ring, None)?;
            let b = null::canonical_monic_null_base(&base);
            let d = null::canonical_monic_null_dual(&base);
            let out = json!({
                "ring": base.spec_string(),
                "base": {
                    "poly": poly::format_poly(&base, &b),
                    "degree": b.degree(),
                },
                "dual": {
                    "poly": poly::format_poly(&base, &d),
                    "degree": d.degree(),
                },
            });
            Ok(render::render_value(&out, format))
        }
        NullCommand::Enumerate {
            ring,
            degree,
            primed,
        } => {
            let (base, _) = resolve_ring(ring, None)?;
            let set = null::enumerate_bounded_null(&base, *degree, *primed, limits)?;
            let out = json!({
                "ring": base.spec_string(),
                "degree_bound": set.degree_bound,
                "primed": set.primed,
                "size": set.members.len(),
                "members": set.members.iter()
                    .map(|f| poly::format_poly(&base, f)).collect::<Vec<_>>(),
            });
            Ok(render::render_value(&out, format))
        }
    }
}

fn witness_json(
    base: &FiniteRing,
    dual: Option<&DualRing>,
    witness: &Witness,
) -> serde_json::Value {
    match witness {
        Witness::Collision { x, y } => {
            let (xs, ys) = match dual {
                Some(dr) => (format_dual_element(dr, *x), format_dual_element(dr, *y)),
                None => (
                    ring::format_element(base, *x),
                    ring::format_element(base, *y),
                ),
            };
            json!({ "type": "collision", "x": xs, "y": ys, "x_index": x, "y_index": y })
        }
        Witness::NonUnitDerivative { point } => json!({
            "type": "non_unit_derivative",
            "point": ring::format_element(base, *point),
            "point_index": point,
        }),
    }
}

fn path_name(path: CriterionPath) -> &'static str {
    match path {
        CriterionPath::ExhaustiveTable => "exhaustive_table",
        CriterionPath::DualCriterion => "dual_criterion",
        CriterionPath::LocalResidue => "local_residue",
        CriterionPath::DirectSumComponents => "direct_sum_components",
        CriterionPath::NonFieldConstantPart => "non_field_constant_part",
    }
}

fn perm_check(
    ring_text: &str,
    poly_text: &str,
    part_texts: &[String],
    path: PathChoice,
    format: Format,
) -> Result<String, CliError> {
    let (base, k) = resolve_ring(ring_text, None)?;
    let f = parse_dualpoly(&base, k, poly_text, part_texts)?;

    let (verdict, dual): (PermVerdict, Option<DualRing>) = if k > 0 {
        let dr = DualRing::new(base.clone(), k)?;
        let v = match path {
            PathChoice::Auto | PathChoice::Exhaustive => perm::is_perm_on_dual(&dr, &f)?,
            PathChoice::ConstantPart => perm::is_perm_dual_nonfield(&dr, &f)?,
            PathChoice::Residue | PathChoice::Components => {
                return Err(CliError {
                    code: "method_mismatch".into(),
                    message: "residue/components paths apply to plain rings (k = 0)".into(),
                })
            }
        };
        (v, Some(dr))
    } else {
        let v = match path {
            PathChoice::Auto | PathChoice::Exhaustive => perm::is_perm_on_base(&base, &f.f0),
            PathChoice::Residue => perm::is_perm_local(&base, &f.f0)?,
            PathChoice::Components => perm::is_perm_directsum(&base, &f.f0)?,
            PathChoice::ConstantPart => {
                return Err(CliError {
                    code: "method_mismatch".into(),
                    message: "the constant-part path applies to dual rings (k >= 1)".into(),
                })
            }
        };
        (v, None)
    };

    let mut out = json!({
        "ring": if k > 0 { format!("{}[{k}]", base.spec_string()) } else { base.spec_string() },
        "poly": poly::format_poly(&base, &f.f0),
        "is_permutation": verdict.is_permutation,
        "criterion_path": path_name(verdict.criterion_path),
    });
    if k > 0 {
        out["parts"] = json!(f
            .parts
            .iter()
            .map(|p| poly::format_poly(&base, p))
            .collect::<Vec<_>>());
    }
    if let Some(w) = &verdict.witness {
        out["witness"] = witness_json(&base, dual.as_ref(), w);
    }
    Ok(render::render_value(&out, format))
}

fn parse_table(base: &FiniteRing, text: &str) -> Result<FunctionTable, CliError> {
    let values = text
        .split(',')
        .map(|t| ring::parse_element(base, t))
        .collect::<Result<Vec<_>, _>>()?;
    if values.len() != base.order() {
        return Err(CliError {
            code: "parse_error".into(),
            message: format!("table needs {} entries, got {}", base.order(), values.len()),
        });
    }
    Ok(FunctionTable { values })
}

fn pair_construct(
    ring_text: &str,
    f_text: &str,
    g_text: &str,
    format: Format,
) -> Result<String, CliError> {
    let (base, _) = resolve_ring(ring_text, None)?;
    let f_table = parse_table(&base, f_text)?;
    let g_table = parse_table(&base, g_text)?;
    let f = perm::construct_pair_field(&base, &f_table, &g_table)?;
    let check_f = poly::induce_base(&base, &f);
    let check_g = poly::induce_base(&base, &f.derivative(&base));
    let out = json!({
        "ring": base.spec_string(),
        "poly": poly::format_poly(&base, &f),
        "coeffs": poly::poly_to_json(&base, &f).coeffs,
        "degree": f.degree(),
        "verified": check_f == f_table && check_g == g_table,
    });
    Ok(render::render_value(&out, format))
}

fn count(
    cli: &Cli,
    args: &CountArgs,
    limits: &EnumLimits,
    format: Format,
) -> Result<String, CliError> {
    let (ring, k) = resolve_ring(&args.ring, args.k)?;
    let quantity: Quantity = args.quantity.parse()?;
    let method: ReportMethod = args.method.parse()?;
    if quantity == Quantity::Stab && k == 0 {
        return Err(CliError::from(Error::MethodMismatch(
            "the stabilizer needs at least one dual variable".into(),
        )));
    }
    let cache_key = cache::key(&ring.spec_string(), k, &args.quantity, &args.method, limits);
    if let Some(report) = cache::read(cli.cache_dir.as_deref(), &cache_key) {
        return Ok(render::render_report(&report, format));
    }
    let report = counting::count_report(&ring, k, quantity, method, limits)?;
    cache::write(cli.cache_dir.as_deref(), &cache_key, &report)?;
    Ok(render::render_report(&report, format))
}

fn verify(args: &VerifyArgs, limits: &EnumLimits, format: Format) -> Result<String, CliError> {
    let (ring, k) = resolve_ring(&args.ring, args.k)?;
    let k = if k == 0 { 1 } else { k };
    let rows = counting::verify_identities(&ring, k, limits);
    Ok(render::render_reports(&rows, format))
}

