//! Problem files: JSON, or a line-oriented text form close to a Macaulay2
//! session listing.
//!
//! ```text
//! -- bidegree (2,2) surface
//! blocks = (s,u), (t,v)
//! targets = X_0, X_1, X_2, X_3
//! f0 = 3*s^2*t*v - 2*s*u*t^2 - s^2*v^2;
//! f1 = ...
//! ```

use std::path::Path;

use implicit_core::{parse_poly, Error as CoreError, MultiDegree, ProblemInstance, Ring, Variables};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const PROBLEM_VERSION: u32 = 1;

fn default_version() -> u32 {
    PROBLEM_VERSION
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    #[serde(default = "default_version")]
    pub version: u32,
    /// Variable names, one list per projective factor.
    pub blocks: Vec<Vec<String>>,
    /// Defaults to `T_0..T_n`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_vars: Option<Vec<String>>,
    pub polynomials: Vec<String>,
    /// Checked against the degree of the polynomials when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<MultiDegree>,
}

/// Where polynomial `i` came from, for error messages.
#[derive(Clone, Debug)]
enum Origin {
    Json,
    Text { line: usize, column: usize },
}

pub fn load(path: &Path) -> Result<ProblemInstance, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| match e {
        CliError::Validation(msg) => CliError::Validation(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn parse(text: &str) -> Result<ProblemInstance, CliError> {
    let (file, origins) = if text.trim_start().starts_with('{') {
        let file: ProblemFile =
            serde_json::from_str(text).map_err(|e| CliError::Validation(format!("invalid problem file: {e}")))?;
        let n = file.polynomials.len();
        (file, vec![Origin::Json; n])
    } else {
        parse_text(text)?
    };
    build(&file, &origins)
}

fn build(file: &ProblemFile, origins: &[Origin]) -> Result<ProblemInstance, CliError> {
    if file.version != PROBLEM_VERSION {
        return Err(CliError::Validation(format!(
            "unsupported problem file version {}",
            file.version
        )));
    }
    if file.polynomials.len() < 2 {
        return Err(CliError::Validation(format!(
            "need at least two polynomials, got {}",
            file.polynomials.len()
        )));
    }
    let targets = file
        .target_vars
        .clone()
        .unwrap_or_else(|| (0..file.polynomials.len()).map(|j| format!("T_{j}")).collect());
    let vars = Variables::new(file.blocks.clone(), targets).map_err(|e| CliError::Validation(e.to_string()))?;
    let mut f = Vec::with_capacity(file.polynomials.len());
    for (i, (text, origin)) in file.polynomials.iter().zip(origins).enumerate() {
        let p = parse_poly(text, &vars, Ring::Parameter).map_err(|e| match (e, origin) {
            (CoreError::Parse(pe), Origin::Text { line, column }) => CliError::Validation(format!(
                "line {line}, column {}: {}",
                column + pe.column - 1,
                pe.kind
            )),
            (CoreError::Parse(pe), Origin::Json) => {
                CliError::Validation(format!("polynomials[{i}], column {}: {}", pe.column, pe.kind))
            }
            (e, _) => CliError::Validation(format!("polynomial {i}: {e}")),
        })?;
        f.push(p);
    }
    let inst = ProblemInstance::new(vars, f).map_err(|e| CliError::Validation(e.to_string()))?;
    if let Some(d) = &file.degree {
        if d != inst.gamma() {
            return Err(CliError::Validation(format!(
                "declared degree {d} but the polynomials have degree {}",
                inst.gamma()
            )));
        }
    }
    Ok(inst)
}

fn split_list(s: &str) -> Vec<String> {
    s.split(',').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect()
}

fn parse_blocks(s: &str, line: usize) -> Result<Vec<Vec<String>>, CliError> {
    let bad = |msg: &str| CliError::Validation(format!("line {line}: {msg}"));
    let mut blocks = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let inner = rest.strip_prefix('(').ok_or_else(|| bad("expected `(` in blocks"))?;
        let close = inner.find(')').ok_or_else(|| bad("unclosed `(` in blocks"))?;
        let names = split_list(&inner[..close]);
        if names.is_empty() {
            return Err(bad("empty block"));
        }
        blocks.push(names);
        rest = inner[close + 1..].trim_start();
        rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
    }
    if blocks.is_empty() {
        return Err(bad("no blocks given"));
    }
    Ok(blocks)
}

fn parse_text(text: &str) -> Result<(ProblemFile, Vec<Origin>), CliError> {
    let mut blocks = None;
    let mut targets = None;
    let mut degree = None;
    let mut polys: Vec<(usize, String, Origin)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split("--").next().unwrap_or("").split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let eq = content
            .find('=')
            .ok_or_else(|| CliError::Validation(format!("line {line}: expected `key = value`")))?;
        let key = content[..eq].trim();
        let value_raw = &content[eq + 1..];
        let lead = value_raw.len() - value_raw.trim_start().len();
        let value = value_raw.trim().trim_end_matches(';').trim_end();
        match key {
            "blocks" => blocks = Some(parse_blocks(value, line)?),
            "targets" | "target_vars" => targets = Some(split_list(value)),
            "degree" => {
                degree = Some(
                    value
                        .parse::<MultiDegree>()
                        .map_err(|e| CliError::Validation(format!("line {line}: {e}")))?,
                )
            }
            _ => {
                let index = key
                    .strip_prefix('f')
                    .and_then(|i| i.parse::<usize>().ok())
                    .ok_or_else(|| CliError::Validation(format!("line {line}: unknown key `{key}`")))?;
                let column = eq + 1 + lead + 1;
                polys.push((index, value.to_string(), Origin::Text { line, column }));
            }
        }
    }
    polys.sort_by_key(|p| p.0);
    for (expected, (index, _, _)) in polys.iter().enumerate() {
        if *index != expected {
            return Err(CliError::Validation(format!(
                "polynomials must be named f0, f1, ... without gaps; found f{index} where f{expected} was expected"
            )));
        }
    }
    let blocks = blocks.ok_or_else(|| CliError::Validation("missing `blocks = ...` line".into()))?;
    let (polynomials, origins) = polys.into_iter().map(|(_, p, o)| (p, o)).unzip();
    Ok((
        ProblemFile {
            version: PROBLEM_VERSION,
            blocks,
            target_vars: targets,
            polynomials,
            degree,
        },
        origins,
    ))
}
