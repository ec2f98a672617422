//! Text and JSON emission.  JSON objects carry `"schema": 1`, use sorted
//! keys, and are byte-stable for fixed inputs.

use serde_json::{json, Value};

use monideal::decomposition::{IrreducibleComponent, PrimaryComponent};
use monideal::resolution::BettiTable;
use monideal::{MonomialIdeal, MonomialPrime};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

pub fn emit(format: Format, command: &str, text: String, result: Value) {
    match format {
        Format::Text => println!("{}", text),
        Format::Json => {
            let envelope = json!({
                "schema": 1,
                "command": command,
                "result": result,
            });
            println!("{}", serde_json::to_string_pretty(&envelope).expect("serializable"));
        }
    }
}

pub fn primes_text(primes: &[MonomialPrime]) -> String {
    primes
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn primes_json(primes: &[MonomialPrime]) -> Value {
    Value::Array(primes.iter().map(|p| json!(p.var_names())).collect())
}

pub fn ideal_text(ideal: &MonomialIdeal) -> String {
    crate::parser::print_ideal(ideal)
}

pub fn ideal_json(ideal: &MonomialIdeal) -> Value {
    serde_json::to_value(ideal.to_json()).expect("serializable")
}

pub fn components_text(components: &[IrreducibleComponent]) -> String {
    components
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join("\n")
}

/// Irreducible components as exponent-bound maps keyed by variable name.
pub fn components_json(components: &[IrreducibleComponent]) -> Value {
    Value::Array(
        components
            .iter()
            .map(|c| {
                let ring = c.radical().ring().clone();
                let map: serde_json::Map<String, Value> = c
                    .support()
                    .into_iter()
                    .map(|v| (ring.var_name(v), json!(c.bound(v).expect("present"))))
                    .collect();
                Value::Object(map)
            })
            .collect(),
    )
}

pub fn primary_text(components: &[PrimaryComponent]) -> String {
    components
        .iter()
        .map(|c| format!("{} {}", c.radical, c.ideal))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn primary_json(components: &[PrimaryComponent]) -> Value {
    Value::Array(
        components
            .iter()
            .map(|c| {
                json!({
                    "radical": c.radical.var_names(),
                    "generators": c.ideal.to_json().generators,
                })
            })
            .collect(),
    )
}

pub fn betti_text(table: &BettiTable) -> String {
    let ring = table.ring().clone();
    let mut lines = Vec::new();
    for (i, a, rank) in table.entries() {
        let name = monideal::Monomial::new(&ring, a.clone()).to_string();
        let total: u64 = a.iter().map(|&e| e as u64).sum();
        lines.push(format!("i={} multidegree={} |a|={} rank={}", i, name, total, rank));
    }
    if lines.is_empty() {
        lines.push("empty table".into());
    }
    lines.join("\n")
}

pub fn betti_json(table: &BettiTable) -> Value {
    serde_json::to_value(table.to_json()).expect("serializable")
}
