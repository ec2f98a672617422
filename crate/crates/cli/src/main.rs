//! Command-line front end: parse ideal expressions and spec files, run
//! kernel computations, and execute the theorem-verification scenarios.

mod error;
mod eval;
mod output;
mod parser;
mod spec;
mod verify;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use monideal::decomposition::{
    associated_primes, astab, dim_quotient, height, irreducible_decomposition, is_unmixed,
    primary_decomposition, set_witness_box_cap,
};
use monideal::linalg::CoefficientField;
use monideal::resolution::{
    analytic_spread_transversal, betti_table, depth_quotient_with_field, dstab,
    has_linear_quotients, has_linear_resolution_with_field, regularity_with_field,
    set_lattice_cap,
};
use monideal::MonomialIdeal;

use error::CliError;
use output::Format;

#[derive(Parser)]
#[command(
    name = "monideal",
    version,
    about = "Exact computations with monomial ideals in blocked polynomial rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Target {
    /// Ideal expression; stdin is read when omitted and --spec is absent
    expr: Option<String>,

    /// Construction spec: a JSON file path or an inline constructor such as
    /// capped_veronese_gmp(2,2,7) or transversal([[1,2],[2,3]])
    #[arg(long)]
    spec: Option<String>,

    /// Raise the target to the k-th power first (bracket: the bracket
    /// exponent)
    #[arg(short, long)]
    k: Option<u32>,

    /// Stability window for astab/dstab
    #[arg(long)]
    k_max: Option<u32>,

    /// Coefficient field: q (rationals) or p=<prime>
    #[arg(long, default_value = "q")]
    field: String,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Enforce the inclusion condition when building gmp spec files
    #[arg(long)]
    strict: bool,

    /// Cap on the lcm lattice size
    #[arg(long)]
    max_lattice: Option<u64>,

    /// Cap on the witness box of the associated-prime oracle
    #[arg(long)]
    max_witness_box: Option<u64>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Scenario: one of ass-theorem, dim-theorem, unmixed-theorem,
    /// power-theorem, reg-theorem, decomposition-theorem, astab-theorem,
    /// bracket-theorem, analytic-theorem, cm-check
    scenario: String,

    /// Narrow the default grid to one spec
    #[arg(long)]
    spec: Option<String>,

    #[arg(short, long)]
    k: Option<u32>,

    #[arg(long)]
    k_max: Option<u32>,

    #[arg(long, default_value = "q")]
    field: String,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Associated primes of T/I
    Ass(Target),
    /// Irredundant irreducible decomposition
    Mindec(Target),
    /// Irredundant primary decomposition
    Primdec(Target),
    /// Multigraded Betti table of the ideal
    Betti(Target),
    /// Castelnuovo-Mumford regularity of the ideal
    Reg(Target),
    /// depth(T/I)
    Depth(Target),
    /// dim(T/I)
    Dim(Target),
    /// height(I)
    Height(Target),
    /// Whether all minimal vertex covers share one cardinality
    Unmixed(Target),
    /// Linear resolution test
    Linres(Target),
    /// Linear quotients test under the canonical descending-lex order
    Linquot(Target),
    /// Stabilization of Ass(I^k)
    Astab(Target),
    /// Stabilization of depth(T/I^k)
    Dstab(Target),
    /// Analytic spread of a transversal ideal (depth formula)
    Ell(Target),
    /// Bracket power I^[k]
    Bracket(Target),
    /// Run a verification scenario
    Verify(VerifyArgs),
    /// Evaluate an expression and print the ideal
    Eval(Target),
}

fn parse_field(text: &str) -> Result<CoefficientField, CliError> {
    match text {
        "q" | "Q" | "rationals" => Ok(CoefficientField::Rationals),
        other => match other.strip_prefix("p=") {
            Some(p) => {
                let p: u32 = p
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad prime '{}'", p)))?;
                Ok(CoefficientField::prime(p)?)
            }
            None => Err(CliError::Usage(format!(
                "bad field '{}'; expected q or p=<prime>",
                other
            ))),
        },
    }
}

fn apply_caps(max_lattice: Option<u64>, max_witness_box: Option<u64>) {
    if let Some(cap) = max_lattice {
        set_lattice_cap(cap);
    }
    if let Some(cap) = max_witness_box {
        set_witness_box_cap(cap);
    }
}

/// The target ideal, raised to the --k power when given.
fn powered_target(t: &Target) -> Result<MonomialIdeal, CliError> {
    apply_caps(t.max_lattice, t.max_witness_box);
    let ideal = spec::load_target(t.spec.as_deref(), t.expr.as_deref(), t.strict)?;
    Ok(match t.k {
        Some(k) => ideal.power(k),
        None => ideal,
    })
}

fn dispatch(command: Command) -> Result<i32, CliError> {
    match command {
        Command::Ass(t) => {
            let primes = associated_primes(&powered_target(&t)?)?;
            output::emit(
                t.format,
                "ass",
                output::primes_text(&primes),
                output::primes_json(&primes),
            );
        }
        Command::Mindec(t) => {
            let comps = irreducible_decomposition(&powered_target(&t)?)?;
            output::emit(
                t.format,
                "mindec",
                output::components_text(&comps),
                output::components_json(&comps),
            );
        }
        Command::Primdec(t) => {
            let comps = primary_decomposition(&powered_target(&t)?)?;
            output::emit(
                t.format,
                "primdec",
                output::primary_text(&comps),
                output::primary_json(&comps),
            );
        }
        Command::Betti(t) => {
            let field = parse_field(&t.field)?;
            let table = betti_table(&powered_target(&t)?, field)?;
            output::emit(
                t.format,
                "betti",
                output::betti_text(&table),
                output::betti_json(&table),
            );
        }
        Command::Reg(t) => {
            let field = parse_field(&t.field)?;
            let reg = regularity_with_field(&powered_target(&t)?, field)?;
            output::emit(t.format, "reg", reg.to_string(), json!(reg));
        }
        Command::Depth(t) => {
            let field = parse_field(&t.field)?;
            let depth = depth_quotient_with_field(&powered_target(&t)?, field)?;
            output::emit(t.format, "depth", depth.to_string(), json!(depth));
        }
        Command::Dim(t) => {
            let dim = dim_quotient(&powered_target(&t)?)?;
            output::emit(t.format, "dim", dim.to_string(), json!(dim));
        }
        Command::Height(t) => {
            let h = height(&powered_target(&t)?)?;
            output::emit(t.format, "height", h.to_string(), json!(h));
        }
        Command::Unmixed(t) => {
            let u = is_unmixed(&powered_target(&t)?)?;
            output::emit(t.format, "unmixed", u.to_string(), json!(u));
        }
        Command::Linres(t) => {
            let field = parse_field(&t.field)?;
            let report = has_linear_resolution_with_field(&powered_target(&t)?, field)?;
            let text = match &report.reason {
                Some(reason) => format!("{} ({})", report.holds, reason),
                None => report.holds.to_string(),
            };
            output::emit(
                t.format,
                "linres",
                text,
                json!({ "holds": report.holds, "reason": report.reason }),
            );
        }
        Command::Linquot(t) => {
            let q = has_linear_quotients(&powered_target(&t)?)?;
            output::emit(t.format, "linquot", q.to_string(), json!(q));
        }
        Command::Astab(t) => {
            apply_caps(t.max_lattice, t.max_witness_box);
            let ideal = spec::load_target(t.spec.as_deref(), t.expr.as_deref(), t.strict)?;
            let report = astab(&ideal, t.k_max.unwrap_or(6))?;
            let names: Vec<Vec<String>> =
                report.stable_ass.iter().map(|p| p.var_names()).collect();
            let text = format!(
                "index {} (proven: {}), stable Ass: {}",
                report.index,
                report.proven,
                output::primes_text(&report.stable_ass).replace('\n', " ")
            );
            output::emit(
                t.format,
                "astab",
                text,
                json!({ "index": report.index, "proven": report.proven, "stable_ass": names }),
            );
        }
        Command::Dstab(t) => {
            apply_caps(t.max_lattice, t.max_witness_box);
            let ideal = spec::load_target(t.spec.as_deref(), t.expr.as_deref(), t.strict)?;
            let report = dstab(&ideal, t.k_max.unwrap_or(4))?;
            let text = format!(
                "index {} (proven: {}), limit depth {}, depths {:?}",
                report.index, report.proven, report.limit_depth, report.depths
            );
            output::emit(
                t.format,
                "dstab",
                text,
                json!({
                    "index": report.index,
                    "proven": report.proven,
                    "limit_depth": report.limit_depth,
                    "depths": report.depths,
                }),
            );
        }
        Command::Ell(t) => {
            let ell = analytic_spread_transversal(&powered_target(&t)?)?;
            output::emit(t.format, "ell", ell.to_string(), json!(ell));
        }
        Command::Bracket(t) => {
            let Some(k) = t.k else {
                return Err(CliError::Usage("bracket needs --k <exponent>".into()));
            };
            apply_caps(t.max_lattice, t.max_witness_box);
            let ideal = spec::load_target(t.spec.as_deref(), t.expr.as_deref(), t.strict)?;
            let bracket = ideal.bracket_power(k);
            output::emit(
                t.format,
                "bracket",
                output::ideal_text(&bracket),
                output::ideal_json(&bracket),
            );
        }
        Command::Eval(t) => {
            let ideal = powered_target(&t)?;
            output::emit(
                t.format,
                "eval",
                output::ideal_text(&ideal),
                output::ideal_json(&ideal),
            );
        }
        Command::Verify(v) => {
            let field = parse_field(&v.field)?;
            let report =
                verify::run_scenario(&v.scenario, v.spec.as_deref(), v.k, v.k_max, field)?;
            output::emit(v.format, "verify", report.to_text(), report.to_json());
            return Ok(if report.ok() { 0 } else { 1 });
        }
    }
    Ok(0)
}

fn main() {
    let cli = Cli::parse();
    let code = match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            e.exit_code()
        }
    };
    std::process::exit(code);
}
