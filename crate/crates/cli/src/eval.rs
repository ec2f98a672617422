//! Ring inference, variable resolution, and evaluation of parsed
//! expressions into monomial ideals.

use monideal::constructions::{
    capped_veronese_gmp, transversal_build, veronese_type, TransversalSpec, VeroneseSpec,
};
use monideal::{Monomial, MonomialIdeal, MonomialPrime, Ring};

use crate::error::CliError;
use crate::parser::{Expr, Program};

/// Resolve the ambient ring: the declared one, or the unique ring implied
/// by constructor nodes, or the plain ring spanned by the variable tokens.
pub fn resolve_ring(program: &Program) -> Result<Ring, CliError> {
    if let Some(blocks) = &program.ring {
        return Ok(Ring::new(blocks.clone()));
    }
    let mut demanded: Vec<Ring> = Vec::new();
    let mut max_var = 0usize;
    collect_ring_demands(&program.body, &mut demanded, &mut max_var)?;
    if let Some(first) = demanded.first() {
        if demanded.iter().any(|r| r != first) {
            return Err(CliError::Usage(
                "constructors imply different rings; declare ring(...) explicitly".into(),
            ));
        }
        return Ok(first.clone());
    }
    if max_var == 0 {
        return Err(CliError::Usage(
            "cannot infer a ring; declare ring(...) before the expression".into(),
        ));
    }
    Ok(Ring::plain(max_var))
}

fn collect_ring_demands(
    expr: &Expr,
    demanded: &mut Vec<Ring>,
    max_var: &mut usize,
) -> Result<(), CliError> {
    match expr {
        Expr::Var(tok) => {
            let idx: usize = tok[1..]
                .parse()
                .map_err(|_| CliError::Usage(format!("bad variable token {}", tok)))?;
            *max_var = (*max_var).max(idx);
        }
        Expr::Prime(vars) => {
            for tok in vars {
                let idx: usize = tok[1..]
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad variable token {}", tok)))?;
                *max_var = (*max_var).max(idx);
            }
        }
        Expr::Veronese { caps, .. } => demanded.push(Ring::plain(caps.len())),
        Expr::Transversal { subsets, blocks } => {
            let n = subsets.iter().flatten().copied().max().unwrap_or(0);
            match blocks {
                Some(b) => {
                    if b.len() < n {
                        return Err(CliError::Usage(format!(
                            "transversal blocks cover {} positions but subsets use {}",
                            b.len(),
                            n
                        )));
                    }
                    demanded.push(Ring::new(b.clone()));
                }
                None => demanded.push(Ring::plain(n)),
            }
        }
        Expr::CappedVeronese { m1, m2, .. } => demanded.push(Ring::new(vec![*m1, *m2])),
        Expr::GmpFile(path) => demanded.push(load_gmp_file(path)?.ring().clone()),
        Expr::Ideal(args) => {
            for a in args {
                collect_ring_demands(a, demanded, max_var)?;
            }
        }
        Expr::One => {}
        Expr::Sum(a, b)
        | Expr::Product(a, b)
        | Expr::Intersect(a, b)
        | Expr::Colon(a, b) => {
            collect_ring_demands(a, demanded, max_var)?;
            collect_ring_demands(b, demanded, max_var)?;
        }
        Expr::Power(a, _) | Expr::Bracket(a, _) => collect_ring_demands(a, demanded, max_var)?,
    }
    Ok(())
}

/// Map a variable token to its flat index: x<i> in plain rings, x<i><j> in
/// blocked ones (the block sizes bound j, so the split is unambiguous for
/// well-formed rings; genuinely ambiguous tokens are rejected).
pub fn resolve_var(ring: &Ring, token: &str) -> Result<usize, CliError> {
    let digits = &token[1..];
    if ring.is_plain() {
        let idx: usize = digits
            .parse()
            .map_err(|_| CliError::Usage(format!("bad variable {}", token)))?;
        if idx < 1 || idx > ring.total_vars() {
            return Err(CliError::Usage(format!(
                "{} is not a variable of the {}-variable ring",
                token,
                ring.total_vars()
            )));
        }
        return Ok(idx - 1);
    }
    let mut matches = Vec::new();
    for split in 1..digits.len() {
        let (block_str, j_str) = digits.split_at(split);
        if j_str.starts_with('0') {
            continue;
        }
        let (Ok(block), Ok(j)) = (block_str.parse::<usize>(), j_str.parse::<usize>()) else {
            continue;
        };
        if block >= 1
            && block <= ring.num_blocks()
            && j >= 1
            && j <= ring.block_sizes()[block - 1] as usize
        {
            matches.push(ring.var_index(block, j));
        }
    }
    match matches.as_slice() {
        [v] => Ok(*v),
        [] => Err(CliError::Usage(format!(
            "{} names no variable of the blocked ring {:?}",
            token,
            ring.block_sizes()
        ))),
        _ => Err(CliError::Usage(format!(
            "{} is ambiguous in the blocked ring {:?}",
            token,
            ring.block_sizes()
        ))),
    }
}

pub fn evaluate(expr: &Expr, ring: &Ring) -> Result<MonomialIdeal, CliError> {
    match expr {
        Expr::Var(tok) => {
            let v = resolve_var(ring, tok)?;
            let m = Monomial::variable(ring, v);
            Ok(MonomialIdeal::from_monomials(ring, vec![m])?)
        }
        Expr::One => Ok(MonomialIdeal::unit(ring)),
        Expr::Ideal(args) => {
            let mut acc = MonomialIdeal::zero(ring);
            for a in args {
                acc = acc.sum(&evaluate(a, ring)?)?;
            }
            Ok(acc)
        }
        Expr::Prime(vars) => {
            let support: Result<Vec<usize>, CliError> =
                vars.iter().map(|t| resolve_var(ring, t)).collect();
            Ok(MonomialPrime::new(ring, support?)?.to_ideal())
        }
        Expr::Sum(a, b) => Ok(evaluate(a, ring)?.sum(&evaluate(b, ring)?)?),
        Expr::Product(a, b) => Ok(evaluate(a, ring)?.product(&evaluate(b, ring)?)?),
        Expr::Intersect(a, b) => Ok(evaluate(a, ring)?.intersect(&evaluate(b, ring)?)?),
        Expr::Colon(a, b) => Ok(evaluate(a, ring)?.colon_ideal(&evaluate(b, ring)?)?),
        Expr::Power(a, k) => Ok(evaluate(a, ring)?.power(*k)),
        Expr::Bracket(a, k) => Ok(evaluate(a, ring)?.bracket_power(*k)),
        Expr::Veronese { degree, caps } => {
            if caps.len() != ring.total_vars() {
                return Err(CliError::Usage(format!(
                    "V(...) has {} caps but the ring has {} variables",
                    caps.len(),
                    ring.total_vars()
                )));
            }
            Ok(veronese_type(
                &VeroneseSpec::new(caps.clone(), *degree)?,
                ring,
            )?)
        }
        Expr::Transversal { subsets, blocks } => {
            if let Some(b) = blocks {
                if &Ring::new(b.clone()) != ring {
                    return Err(CliError::Usage(
                        "transversal blocks disagree with the ambient ring".into(),
                    ));
                }
            }
            let spec = TransversalSpec::new(ring.num_blocks(), subsets.clone())?;
            Ok(transversal_build(&spec, Some(ring.block_sizes()))?)
        }
        Expr::CappedVeronese { m1, m2, d } => {
            if &Ring::new(vec![*m1, *m2]) != ring {
                return Err(CliError::Usage(
                    "capped_veronese_gmp blocks disagree with the ambient ring".into(),
                ));
            }
            Ok(capped_veronese_gmp(*m1, *m2, *d)?)
        }
        Expr::GmpFile(path) => {
            let ideal = load_gmp_file(path)?;
            if ideal.ring() != ring {
                return Err(CliError::Usage(
                    "the gmp spec ring disagrees with the ambient ring".into(),
                ));
            }
            Ok(ideal)
        }
    }
}

fn load_gmp_file(path: &str) -> Result<MonomialIdeal, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {}", path, e)))?;
    let spec: monideal::constructions::ConstructionSpecJson = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("bad spec file {}: {}", path, e)))?;
    Ok(monideal::constructions::build_from_spec(&spec)?)
}

/// Parse + infer + evaluate.
pub fn evaluate_text(text: &str) -> Result<MonomialIdeal, CliError> {
    let program = crate::parser::parse(text).map_err(|e| CliError::Usage(e.to_string()))?;
    let ring = resolve_ring(&program)?;
    evaluate(&program.body, &ring)
}
