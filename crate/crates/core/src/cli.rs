//! File loading and the subcommand bodies behind the `repcontain` binary.
//! Every command returns a JSON value; object keys come out sorted.

use std::fs;
use std::path::{Path, PathBuf};

use num_traits::Zero;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::characters::TorusPoint;
use crate::decision::{self, AnalysisParams, Witness};
use crate::error::Error;
use crate::json::{BigNat, ElementWire};
use crate::polytope;
use crate::rational;
use crate::repn::Representation;
use crate::schur::SchurElement;
use crate::su2::{self, Certificate};
use crate::tropical::{self, Direction};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] Error),
}

impl CliError {
    /// 2 for internal inconsistencies, 1 for everything the caller can fix.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(Error::Inconsistency(_)) => 2,
            _ => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

/// Parses the representation wire format. Returns the canonical form and
/// notes about anything that had to be normalized.
pub fn parse_representation(text: &str) -> CliResult<(Representation, Vec<String>)> {
    let wire: ElementWire =
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("invalid representation JSON: {e}")))?;
    if wire.n < 2 {
        return Err(Error::InvalidVariableCount(wire.n).into());
    }
    let mut warnings = Vec::new();
    if wire.terms.iter().any(|t| t.mult.0.is_zero()) {
        return Err(CliError::Usage("multiplicities must be positive".into()));
    }
    let mut seen = std::collections::BTreeSet::new();
    if !wire.terms.iter().all(|t| seen.insert(t.partition.clone())) {
        warnings.push("duplicate partitions were merged".to_string());
    }
    let element = SchurElement::from_terms(wire.n, wire.terms.into_iter().map(|t| (t.partition, t.mult.0)))?;
    let (rep, canonical) = Representation::canonicalize_reporting(&element)?;
    if !canonical {
        warnings.push(format!("input was not canonical; full columns of height {} were removed", wire.n));
    }
    Ok((rep, warnings))
}

pub fn load_representation(path: &Path) -> CliResult<Representation> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let (rep, warnings) = parse_representation(&text).map_err(|e| match e {
        CliError::Usage(m) => CliError::Usage(format!("{}: {m}", path.display())),
        other => other,
    })?;
    for w in warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(rep)
}

fn load_pair(rho: &Path, sigma: &Path) -> CliResult<(Representation, Representation)> {
    let (r, s) = (load_representation(rho)?, load_representation(sigma)?);
    if r.n() != s.n() {
        return Err(Error::VariableMismatch { left: r.n(), right: s.n() }.into());
    }
    Ok((r, s))
}

/// One named pair of a test corpus.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusPair {
    pub name: String,
    pub rho: Representation,
    pub sigma: Representation,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CorpusFile {
    pairs: Vec<CorpusPair>,
}

pub fn parse_corpus(text: &str) -> CliResult<Vec<CorpusPair>> {
    let file: CorpusFile = serde_json::from_str(text).map_err(|e| CliError::Usage(format!("invalid corpus: {e}")))?;
    Ok(file.pairs)
}

/// All pairs from the `*.json` files of a directory, files in name order.
pub fn load_corpus_dir(dir: &Path) -> CliResult<Vec<CorpusPair>> {
    let entries = fs::read_dir(dir).map_err(|e| CliError::Usage(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let mut pairs = Vec::new();
    for f in files {
        let text = fs::read_to_string(&f).map_err(|e| CliError::Usage(format!("{}: {e}", f.display())))?;
        pairs.extend(parse_corpus(&text)?);
    }
    Ok(pairs)
}

pub fn cmd_check(rho: &Path, sigma: &Path, params: &AnalysisParams) -> CliResult<Value> {
    let (r, s) = load_pair(rho, sigma)?;
    Ok(to_value(&decision::analyze(&r, &s, params)?))
}

pub fn cmd_asymptotic(rho: &Path, sigma: &Path, n_max: u32) -> CliResult<Value> {
    let (r, s) = load_pair(rho, sigma)?;
    let found = decision::find_asymptotic_exponent(&r, &s, n_max)?;
    if let Some(e) = found {
        decision::verify_converse(&r, &s, &Witness::Exponent { k: e.minimal_n }, &[], 0, 0)?;
    }
    Ok(json!({
        "checked_up_to": n_max,
        "minimal_n": found.map(|e| e.minimal_n),
        "all_good_up_to_n_max": found.is_some_and(|e| e.all_good_up_to_n_max),
    }))
}

pub fn cmd_catalyst(rho: &Path, sigma: &Path, max_boxes: u32, max_terms: u32, params: &AnalysisParams) -> CliResult<Value> {
    let (r, s) = load_pair(rho, sigma)?;
    let eta = decision::find_catalyst(&r, &s, max_boxes, max_terms)?;
    let converse = match &eta {
        Some(eta) => Some(decision::verify_converse(
            &r,
            &s,
            &Witness::Catalyst { eta: eta.clone() },
            &[],
            params.converse_samples,
            params.seed,
        )?),
        None => None,
    };
    Ok(json!({
        "catalyst": eta.as_ref().map(to_value),
        "converse_report": converse.as_ref().map(to_value),
    }))
}

pub fn cmd_char(rep: &Path, point: &str) -> CliResult<Value> {
    let r = load_representation(rep)?;
    let x = TorusPoint::on_slice(rational::parse_rational_list(point)?)?;
    let value = crate::characters::eval_char(&r, &x)?;
    Ok(json!({
        "point": to_value(&x),
        "value": rational::format_rational(&value),
    }))
}

pub fn cmd_trop(rep: &Path, direction: &str) -> CliResult<Value> {
    let r = load_representation(rep)?;
    let y = Direction::sum_zero(rational::parse_rational_list(direction)?)?;
    let value = tropical::trop_eval_rep(&r, &y)?;
    Ok(json!({
        "direction": y.coords().iter().map(rational::format_rational).collect::<Vec<_>>(),
        "value": value.to_string(),
    }))
}

pub fn cmd_tensor(reps: &[PathBuf], power: u32) -> CliResult<Value> {
    let Some((first, rest)) = reps.split_first() else {
        return Err(CliError::Usage("tensor needs at least one --rep".into()));
    };
    let mut acc = load_representation(first)?;
    for p in rest {
        let r = load_representation(p)?;
        if r.n() != acc.n() {
            return Err(Error::VariableMismatch { left: acc.n(), right: r.n() }.into());
        }
        acc = acc.tensor(&r)?;
    }
    let result = acc.tensor_power(power);
    Ok(json!({
        "dimension": to_value(&BigNat(result.dimension())),
        "representation": to_value(&result),
    }))
}

pub fn cmd_wp(reps: &[PathBuf]) -> CliResult<Value> {
    let loaded: Vec<Representation> = reps.iter().map(|p| load_representation(p)).collect::<CliResult<_>>()?;
    let mut polytopes = Vec::new();
    for (p, r) in reps.iter().zip(&loaded) {
        let wp = polytope::weight_polytope(r)?;
        polytopes.push(json!({
            "file": p.display().to_string(),
            "generators": to_value(&wp)["generators"].clone(),
            "vertex_count": wp.vertices().len(),
            "affine_dimension": wp.affine_dimension(),
        }));
    }
    let mut pairs = Vec::new();
    for (i, a) in loaded.iter().enumerate() {
        for (j, b) in loaded.iter().enumerate() {
            if i == j || a.n() != b.n() {
                continue;
            }
            pairs.push(json!({
                "inner": i,
                "outer": j,
                "contained": polytope::wp_containment(a, b)?,
                "strictly_contained": polytope::wp_strict_containment(a, b)?,
            }));
        }
    }
    Ok(json!({ "polytopes": polytopes, "pairs": pairs }))
}

pub fn cmd_su2_certify(rho: &Path, sigma: &Path) -> CliResult<Value> {
    let (r, s) = load_pair(rho, sigma)?;
    let (mr, ms) = (su2::from_representation(&r)?, su2::from_representation(&s)?);
    let g = su2::char_diff_polynomial(&mr, &ms);
    let cert = su2::certify_strict_positive_on_ray(&g);
    let g1 = g.eval(&rational::int(1));
    let mut out = json!({
        "certificate": cert.label(),
        "g": to_value(&g),
        "g_text": g.to_string(),
        "g_at_one": rational::format_rational(&g1),
        "tropical": su2::su2_tropical_check(&mr, &ms)?,
        "witness": Value::Null,
    });
    match &cert {
        Certificate::NotPositive { witness } => out["witness"] = json!(rational::format_rational(witness)),
        Certificate::TouchesZero { lo, hi } => {
            out["root_interval"] = json!([rational::format_rational(lo), rational::format_rational(hi)]);
        }
        _ => {}
    }
    Ok(out)
}
