//! Target loading: expressions (argument or stdin) and `--spec` values,
//! which are either JSON files or inline constructor calls.

use std::io::Read;
use std::path::Path;

use monideal::constructions::{build_from_spec, ConstructionSpecJson, TransversalSpec};
use monideal::MonomialIdeal;

use crate::error::CliError;
use crate::eval::evaluate_text;
use crate::parser::{parse, Expr};

/// Load the ideal named by a `--spec` value.
pub fn load_spec_value(value: &str, strict: bool) -> Result<MonomialIdeal, CliError> {
    if Path::new(value).is_file() {
        let text = std::fs::read_to_string(value)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {}", value, e)))?;
        let mut spec: ConstructionSpecJson = serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("bad spec file {}: {}", value, e)))?;
        if let ConstructionSpecJson::Gmp { strict: s, .. } = &mut spec {
            *s = *s || strict;
        }
        return Ok(build_from_spec(&spec)?);
    }
    evaluate_text(value)
}

/// The target ideal of a command: `--spec`, the positional expression, or
/// stdin.
pub fn load_target(
    spec: Option<&str>,
    expr: Option<&str>,
    strict: bool,
) -> Result<MonomialIdeal, CliError> {
    match (spec, expr) {
        (Some(_), Some(_)) => Err(CliError::Usage(
            "give either an expression or --spec, not both".into(),
        )),
        (Some(s), None) => load_spec_value(s, strict),
        (None, Some(e)) => evaluate_text(e),
        (None, None) => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| CliError::Usage(format!("cannot read stdin: {}", e)))?;
            if text.trim().is_empty() {
                return Err(CliError::Usage(
                    "no expression given (argument, --spec, or stdin)".into(),
                ));
            }
            evaluate_text(&text)
        }
    }
}

/// A transversal spec (with optional blocks) from a `--spec` value, for
/// the scenarios that need the combinatorial data rather than the ideal.
pub fn load_transversal_spec(
    value: &str,
) -> Result<(TransversalSpec, Option<Vec<u32>>), CliError> {
    if Path::new(value).is_file() {
        let text = std::fs::read_to_string(value)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {}", value, e)))?;
        let spec: ConstructionSpecJson = serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("bad spec file {}: {}", value, e)))?;
        match spec {
            ConstructionSpecJson::Transversal { n, subsets, blocks } => {
                return Ok((TransversalSpec::new(n, subsets)?, blocks));
            }
            _ => {
                return Err(CliError::Usage(
                    "this scenario needs a transversal spec".into(),
                ))
            }
        }
    }
    let program = parse(value).map_err(|e| CliError::Usage(e.to_string()))?;
    match program.body {
        Expr::Transversal { subsets, blocks } => {
            let n = match &blocks {
                Some(b) => b.len(),
                None => subsets.iter().flatten().copied().max().unwrap_or(0),
            };
            Ok((TransversalSpec::new(n, subsets)?, blocks))
        }
        _ => Err(CliError::Usage(
            "this scenario needs a transversal([[...],...]) spec".into(),
        )),
    }
}

/// Capped-Veronese parameters from a `--spec` value.
pub fn load_capped_params(value: &str) -> Result<(u32, u32, u32), CliError> {
    let program = parse(value).map_err(|e| CliError::Usage(e.to_string()))?;
    match program.body {
        Expr::CappedVeronese { m1, m2, d } => Ok((m1, m2, d)),
        _ => Err(CliError::Usage(
            "this scenario needs a capped_veronese_gmp(m1,m2,d) spec".into(),
        )),
    }
}
