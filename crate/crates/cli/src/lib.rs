#![allow(clippy::needless_range_loop)]

//! Library half of the command-line tool: document model and command
//! implementations, kept separate from argument parsing for testability.

pub mod doc;

use doc::{DocError, Role, TensorDocument};
use exela::exotic::{catalog, entry_by_label, normal_form, NormalFormKind};
use exela::harmonic::Scheme;
use exela::tensor::ElasticityTensor;
use exela::{ClassLabel, ProjectionOptions};
use serde_json::{json, Value};

/// Errors split by exit code: validation failures exit 2, numerical
/// failures exit 3.
#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Numerical(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "validation error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical error: {m}"),
        }
    }
}

impl From<exela::Error> for CliError {
    fn from(e: exela::Error) -> Self {
        if e.is_validation() {
            CliError::Validation(e.to_string())
        } else {
            CliError::Numerical(e.to_string())
        }
    }
}

impl From<DocError> for CliError {
    fn from(e: DocError) -> Self {
        CliError::Validation(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Global options shared by every subcommand.
#[derive(Clone, Copy, Debug)]
pub struct Globals {
    pub tol: f64,
    pub seed: u64,
}

impl Default for Globals {
    fn default() -> Self {
        Globals {
            tol: exela::EPS_SYM,
            seed: 0,
        }
    }
}

/// Rendered command output.
pub enum Output {
    Json(Value),
    Csv(String),
}

impl Output {
    pub fn render_json(&self) -> CliResult<String> {
        match self {
            Output::Json(v) => Ok(format!(
                "{}\n",
                serde_json::to_string_pretty(v).expect("serializable output")
            )),
            Output::Csv(_) => Err(CliError::Validation(
                "this command has no JSON rendering".into(),
            )),
        }
    }
}

fn parse_scheme(s: &str) -> CliResult<Scheme> {
    match s.to_ascii_lowercase().as_str() {
        "cghd" => Ok(Scheme::Cghd),
        "swhd" => Ok(Scheme::Swhd),
        other => Err(CliError::Validation(format!(
            "unknown scheme '{other}' (expected cghd or swhd)"
        ))),
    }
}

fn parse_label(s: &str) -> CliResult<ClassLabel> {
    s.parse::<ClassLabel>().map_err(CliError::from)
}

fn mat3(m: &[[f64; 3]; 3]) -> Value {
    json!(m.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
}

fn mat6(m: &[[f64; 6]; 6]) -> Value {
    json!(m.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
}

fn structure_json(s: &exela::GeometricStructure) -> Value {
    json!(s.entries.iter().map(|l| l.to_string()).collect::<Vec<_>>())
}

fn triplet_json(t: &exela::HarmonicTriplet) -> Value {
    json!({
        "scheme": t.scheme().to_string(),
        "alpha": t.alpha,
        "beta": t.beta,
        "h_a": mat3(t.h_a.tensor().matrix()),
        "h_b": mat3(t.h_b.tensor().matrix()),
        "h4_kelvin": mat6(t.h4.tensor().kelvin()),
    })
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

pub fn cmd_decompose(text: &str, scheme: &str, _g: &Globals) -> CliResult<Output> {
    let scheme = parse_scheme(scheme)?;
    let (docu, tensor) = TensorDocument::parse(text)?;
    let t = exela::decompose(&tensor, scheme);
    Ok(Output::Json(json!({
        "role": docu.role,
        "decomposition": triplet_json(&t),
    })))
}

pub fn cmd_structure(text: &str, scheme: &str, g: &Globals) -> CliResult<Output> {
    let scheme = parse_scheme(scheme)?;
    let (_, tensor) = TensorDocument::parse(text)?;
    let s = exela::geometric_structure(&tensor, scheme, g.tol)?;
    Ok(Output::Json(json!({
        "scheme": scheme.to_string(),
        "structure": structure_json(&s),
    })))
}

/// Full report: decompositions under both schemes, geometric structures,
/// catalog match, residuals, spectrum, definiteness.
pub fn cmd_classify(text: &str, g: &Globals) -> CliResult<Output> {
    let (_, tensor) = TensorDocument::parse(text)?;
    let report = exela::classify_material(&tensor, g.tol)?;
    let cghd_t = exela::decompose(&tensor, Scheme::Cghd);
    let swhd_t = exela::decompose(&tensor, Scheme::Swhd);
    let r = &report.residuals;
    Ok(Output::Json(json!({
        "decompositions": [triplet_json(&cghd_t), triplet_json(&swhd_t)],
        "cghd_structure": structure_json(&report.cghd),
        "swhd_structure": structure_json(&report.swhd),
        "matched": report.matched.map(|e| e.label()),
        "matched_scheme": report.matched_scheme.map(|s| s.to_string()),
        "material": report.material.map(|m| m.to_string()),
        "residuals": {
            "cghd_h_a": r.cghd_h_a,
            "cghd_h_b": r.cghd_h_b,
            "swhd_h_a": r.swhd_h_a,
            "swhd_h_b": r.swhd_h_b,
            "h4": r.h4,
            "d2_dev": r.d2_dev,
            "compliance_swhd_h_b": r.compliance_swhd_h_b,
            "compliance_h4": r.compliance_h4,
        },
        "eigenvalues": tensor.spectrum().to_vec(),
        "positive_definite": report.positive_definite,
        "in_enumeration_scope": report.in_enumeration_scope,
    })))
}

pub fn cmd_clips(a: &str, b: &str, csv: bool) -> CliResult<Output> {
    let la = parse_label(a)?;
    let lb = parse_label(b)?;
    let set = exela::clips_pair(la, lb);
    let names: Vec<String> = set.iter().map(|l| l.to_string()).collect();
    if csv {
        let mut out = String::from("class\n");
        for n in &names {
            out.push_str(n);
            out.push('\n');
        }
        Ok(Output::Csv(out))
    } else {
        Ok(Output::Json(json!({
            "a": la.to_string(),
            "b": lb.to_string(),
            "classes": names,
        })))
    }
}

pub fn cmd_enumerate(class: &str, csv: bool) -> CliResult<Output> {
    let label = parse_label(class)?;
    let rows = exela::enumerate_structures(label)?;
    let entries: Vec<&exela::ExoticCatalogEntry> =
        catalog().iter().filter(|e| e.class() == label).collect();
    if csv {
        let mut out = String::from("label,class,h_a,h_b,h4,pair_ab,pair_ah,pair_bh,generic\n");
        for e in &entries {
            let s = e.signature.entries();
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                e.label(),
                e.class(),
                s[0],
                s[1],
                s[2],
                s[3],
                s[4],
                s[5],
                e.is_generic()
            ));
        }
        Ok(Output::Csv(out))
    } else {
        let rows_json: Vec<Value> = entries
            .iter()
            .map(|e| {
                json!({
                    "label": e.label(),
                    "generic": e.is_generic(),
                    "material": e.material.map(|m| m.to_string()),
                    "signature": e.signature.entries().iter().map(|l| l.to_string()).collect::<Vec<_>>(),
                })
            })
            .collect();
        debug_assert_eq!(rows.len(), entries.len());
        Ok(Output::Json(json!({
            "class": label.to_string(),
            "rows": rows_json,
        })))
    }
}

pub fn cmd_normal_form(kind: &str, params: &[f64]) -> CliResult<Output> {
    let kind: NormalFormKind = kind.parse().map_err(CliError::from)?;
    let tensor = normal_form(kind, params)?;
    let role = if kind == NormalFormKind::Iyti {
        Role::Compliance
    } else {
        Role::Stiffness
    };
    let docu = TensorDocument::from_kelvin(&tensor, role, Some(format!("{kind:?} normal form")));
    Ok(Output::Json(
        serde_json::to_value(&docu).expect("serializable document"),
    ))
}

pub fn cmd_invert(text: &str) -> CliResult<Output> {
    let (docu, tensor) = TensorDocument::parse(text)?;
    let inv = tensor.invert()?;
    let out = TensorDocument::from_kelvin(&inv, docu.role.flipped(), None);
    Ok(Output::Json(
        serde_json::to_value(&out).expect("serializable document"),
    ))
}

pub fn cmd_eig(text: &str) -> CliResult<Output> {
    let (_, tensor) = TensorDocument::parse(text)?;
    Ok(Output::Json(json!({
        "eigenvalues": tensor.spectrum().to_vec(),
        "positive_definite": tensor.is_positive_definite(exela::EPS_NUM),
    })))
}

pub fn cmd_project(text: &str, target: &str, scheme: &str, g: &Globals) -> CliResult<Output> {
    let scheme = parse_scheme(scheme)?;
    let (docu, tensor) = TensorDocument::parse(text)?;
    let entry = entry_by_label(target)
        .ok_or_else(|| CliError::Validation(format!("unknown structure label '{target}'")))?;
    let opts = ProjectionOptions {
        seed: g.seed,
        ..ProjectionOptions::default()
    };
    let result = exela::nearest_in_structure(&tensor, entry, scheme, &opts)?;
    let nearest = TensorDocument::from_kelvin(&result.nearest, docu.role, None);
    let iterations: usize = result.diagnostics.iter().map(|d| d.iterations).sum();
    Ok(Output::Json(json!({
        "target": entry.label(),
        "scheme": scheme.to_string(),
        "distance": result.distance,
        "relative_distance": result.distance / tensor.norm(),
        "rotation": mat3(result.rotation.matrix()),
        "starts": result.diagnostics.len(),
        "iterations": iterations,
        "nearest": serde_json::to_value(&nearest).expect("serializable document"),
        "positive_definite": result.nearest.is_positive_definite(exela::EPS_NUM),
    })))
}

/// Young's modulus over an equiangular grid. The compliance is the parsed
/// tensor when its role is `compliance`, otherwise the inverse is taken.
pub fn cmd_young(text: &str, grid: &str, csv: bool) -> CliResult<Output> {
    let (docu, tensor) = TensorDocument::parse(text)?;
    let (nt, np) = parse_grid(grid)?;
    let compliance: ElasticityTensor = match docu.role {
        Role::Compliance => tensor,
        Role::Stiffness => tensor.invert()?,
    };
    let samples = exela::young_surface(&compliance, nt, np)?;
    if csv {
        let mut out = String::from("theta,phi,E\n");
        for (theta, phi, e) in &samples {
            out.push_str(&format!("{theta},{phi},{e}\n"));
        }
        Ok(Output::Csv(out))
    } else {
        Ok(Output::Json(json!({
            "grid": [nt, np],
            "samples": samples
                .iter()
                .map(|(t, p, e)| json!([t, p, e]))
                .collect::<Vec<_>>(),
        })))
    }
}

fn parse_grid(grid: &str) -> CliResult<(usize, usize)> {
    let parts: Vec<&str> = grid.split(',').collect();
    if parts.len() != 2 {
        return Err(CliError::Validation(format!(
            "grid must be THETA,PHI, got '{grid}'"
        )));
    }
    let nt = parts[0]
        .trim()
        .parse::<usize>()
        .map_err(|_| CliError::Validation(format!("bad grid size '{}'", parts[0])))?;
    let np = parts[1]
        .trim()
        .parse::<usize>()
        .map_err(|_| CliError::Validation(format!("bad grid size '{}'", parts[1])))?;
    Ok((nt, np))
}
