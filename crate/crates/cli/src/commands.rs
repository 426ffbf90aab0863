//! The subcommands, as functions from parsed inputs to rendered output.

use std::fs;
use std::path::Path;

use hder::{decompose, verify, GenConfig, Generator, HigherDerivation, IncidenceAlgebra, RingSpec};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::records::{self, KIND_DECOMPOSITION, KIND_HD, KIND_TM};

/// Text to print and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub text: String,
    pub code: u8,
}

impl CommandOutput {
    fn ok(value: &Value) -> Self {
        CommandOutput { text: records::render(value), code: 0 }
    }
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

pub fn read_json(path: &Path) -> Result<Value, CliError> {
    records::parse_json(&read_file(path)?)
        .map_err(|e| CliError::Format(format!("{}: {e}", path.display())))
}

/// The declared poset and ring that every other record refers to.
#[derive(Debug, Clone)]
pub struct Workspace {
    pub alg: IncidenceAlgebra,
}

impl Workspace {
    pub fn new(poset: &Value, ring: &str) -> Result<Self, CliError> {
        let ring: RingSpec = ring.parse()?;
        Ok(Workspace { alg: IncidenceAlgebra::new(records::poset_from_json(poset)?, ring) })
    }

    pub fn load(poset_path: &Path, ring: &str) -> Result<Self, CliError> {
        Self::new(&read_json(poset_path)?, ring)
    }

    pub fn hd(&self, value: &Value) -> Result<HigherDerivation, CliError> {
        records::hd_from_json(&self.alg, value)
    }
}

fn leibniz_report(d: &HigherDerivation) -> (bool, Value) {
    let poset = d.algebra().poset();
    let violations: Vec<Value> = d
        .check()
        .iter()
        .map(|v| json!({ "order": v.order, "left": poset.segment_key(v.left), "right": poset.segment_key(v.right) }))
        .collect();
    let valid = violations.is_empty();
    let report = json!({
        "format_version": records::FORMAT_VERSION,
        "kind": "check_report",
        "record": KIND_HD,
        "valid": valid,
        "violations": violations,
    });
    (valid, report)
}

/// Validates a higher derivation (Leibniz rule) or a transitive map (chain
/// condition). Exit code 2 when invalid.
pub fn cmd_check(ws: &Workspace, record: &Value) -> Result<CommandOutput, CliError> {
    let (valid, report) = match records::record_kind(record)? {
        KIND_HD => leibniz_report(&ws.hd(record)?),
        KIND_TM => {
            let sigma = records::tm_from_json(&ws.alg, record)?;
            let poset = ws.alg.poset();
            let violations: Vec<Value> = sigma
                .check()
                .iter()
                .map(|v| match *v {
                    hder::TransitiveViolation::Chain { order, x, z, y } => json!({
                        "order": order,
                        "type": "chain",
                        "x": poset.label(x),
                        "z": poset.label(z),
                        "y": poset.label(y),
                    }),
                    hder::TransitiveViolation::Diagonal { order, x } => json!({
                        "order": order,
                        "type": "diagonal",
                        "x": poset.label(x),
                    }),
                })
                .collect();
            let valid = violations.is_empty();
            let report = json!({
                "format_version": records::FORMAT_VERSION,
                "kind": "check_report",
                "record": KIND_TM,
                "valid": valid,
                "violations": violations,
            });
            (valid, report)
        }
        other => return Err(CliError::Format(format!("cannot check a `{other}` record"))),
    };
    Ok(CommandOutput { text: records::render(&report), code: if valid { 0 } else { 2 } })
}

pub fn cmd_mul(ws: &Workspace, left: &Value, right: &Value) -> Result<CommandOutput, CliError> {
    let product = ws.hd(left)?.mul(&ws.hd(right)?)?;
    Ok(CommandOutput::ok(&records::hd_to_json(&product)))
}

pub fn cmd_inv(ws: &Workspace, record: &Value) -> Result<CommandOutput, CliError> {
    Ok(CommandOutput::ok(&records::hd_to_json(&ws.hd(record)?.inverse())))
}

pub fn cmd_gen(ws: &Workspace, seed: u64, order: usize, sparsity: f64, bound: u64) -> Result<CommandOutput, CliError> {
    let cfg = GenConfig::new(seed, sparsity, bound, order, ws.alg.ring())?;
    let d = Generator::new(cfg).hd(&ws.alg)?;
    Ok(CommandOutput::ok(&records::hd_to_json(&d)))
}

pub fn cmd_decompose(ws: &Workspace, record: &Value) -> Result<CommandOutput, CliError> {
    let d = ws.hd(record)?;
    let (valid, report) = leibniz_report(&d);
    if !valid {
        return Err(CliError::Invalid(records::render(&report)));
    }
    let dec = decompose(&d)?;
    Ok(CommandOutput::ok(&records::decomposition_to_json(&dec, true)))
}

/// Exit code 0 when `Δ_ρ ∗ σ̃` reproduces the input and `σ` is transitive,
/// 3 otherwise.
pub fn cmd_verify(ws: &Workspace, hd: &Value, decomposition: &Value) -> Result<CommandOutput, CliError> {
    if records::record_kind(decomposition)? != KIND_DECOMPOSITION {
        return Err(CliError::Format("second input must be a decomposition record".into()));
    }
    let d = ws.hd(hd)?;
    let (dec, _) = records::decomposition_from_json(&ws.alg, decomposition)?;
    let poset = ws.alg.poset();
    let mut report = serde_json::Map::new();
    let discrepancy = verify(&d, &dec.rho, &dec.sigma)?;
    let sigma_violations = dec.sigma.check();
    let verified = discrepancy.is_none() && sigma_violations.is_empty();
    report.insert("verified".into(), json!(verified));
    if let Some(bad) = discrepancy {
        report.insert(
            "discrepancy".into(),
            json!({ "order": bad.order, "segment": poset.segment_key(bad.segment) }),
        );
    }
    if let Some(v) = sigma_violations.first() {
        report.insert("sigma_violation".into(), json!(v.describe(&ws.alg)));
    }
    Ok(CommandOutput { text: records::render(&Value::Object(report)), code: if verified { 0 } else { 3 } })
}
