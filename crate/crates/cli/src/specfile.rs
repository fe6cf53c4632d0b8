//! Generator spec files.
//!
//! ```text
//! # comments start with '#'
//! seed = 7
//! n = 600
//! [component]
//! mean = 0, 0
//! cov = 1                 # variance times identity
//! weight = 0.5
//! [component]
//! mean = 10, 0
//! cov = 2, 0.5; 0.5, 1    # full matrix, rows separated by ';'
//! weight = 0.5
//! [sbm]
//! n = 400
//! weights = 0.5, 0.5
//! prob_row = 0.5, 0.05
//! prob_row = 0.05, 0.5
//! ```
//!
//! A component takes exactly one of `cov`, `ball = radius` (uniform in a
//! ball) or `rademacher = scale`. Weights are either all given or all
//! omitted (equal weights). `n` and `seed` may appear at the top or inside
//! `[sbm]`.

use kfind_core::generators::{Component, ComponentKind, MixtureSpec, SbmSpec};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SpecFile {
    pub mixture: Option<MixtureSpec>,
    pub sbm: Option<SbmSpec>,
    pub n: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Default)]
struct RawComponent {
    mean: Option<Vec<f64>>,
    kind: Option<ComponentKind>,
    cov_rows: Option<Vec<Vec<f64>>>,
    cov_scalar: Option<f64>,
    weight: Option<f64>,
    line: usize,
}

#[derive(Default)]
struct RawSbm {
    rows: Vec<Vec<f64>>,
    weights: Option<Vec<f64>>,
    line: usize,
}

enum Section {
    Top,
    Component,
    Sbm,
}

fn err(line: usize, msg: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("spec line {line}: {msg}"))
}

fn parse_list(value: &str, line: usize) -> Result<Vec<f64>, CliError> {
    value
        .split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| err(line, format!("bad number {t:?}")))
        })
        .collect()
}

fn parse_scalar<T: std::str::FromStr>(value: &str, line: usize) -> Result<T, CliError> {
    value.trim().parse().map_err(|_| err(line, format!("bad value {value:?}")))
}

pub fn parse_spec(text: &str) -> Result<SpecFile, CliError> {
    let mut out = SpecFile::default();
    let mut components: Vec<RawComponent> = Vec::new();
    let mut sbm: Option<RawSbm> = None;
    let mut section = Section::Top;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if body.starts_with('[') {
            section = match body {
                "[component]" => {
                    components.push(RawComponent { line, ..Default::default() });
                    Section::Component
                }
                "[sbm]" => {
                    if sbm.is_some() {
                        return Err(err(line, "more than one [sbm] section"));
                    }
                    sbm = Some(RawSbm { line, ..Default::default() });
                    Section::Sbm
                }
                other => return Err(err(line, format!("unknown section {other}"))),
            };
            continue;
        }
        let (key, value) = body.split_once('=').ok_or_else(|| err(line, "expected key = value"))?;
        let (key, value) = (key.trim(), value.trim());
        match (&section, key) {
            (Section::Top | Section::Sbm, "seed") => out.seed = Some(parse_scalar(value, line)?),
            (Section::Top | Section::Sbm, "n") => out.n = Some(parse_scalar(value, line)?),
            (Section::Component, _) => {
                let c = components.last_mut().expect("inside a component section");
                match key {
                    "mean" => c.mean = Some(parse_list(value, line)?),
                    "weight" => c.weight = Some(parse_scalar(value, line)?),
                    "cov" | "ball" | "rademacher" if c.kind.is_some() || c.cov_rows.is_some() || c.cov_scalar.is_some() => {
                        return Err(err(line, "component shape given twice"));
                    }
                    "cov" => {
                        let rows: Vec<Vec<f64>> =
                            value.split(';').map(|r| parse_list(r, line)).collect::<Result<_, _>>()?;
                        if rows.len() == 1 && rows[0].len() == 1 {
                            c.cov_scalar = Some(rows[0][0]);
                        } else {
                            c.cov_rows = Some(rows);
                        }
                    }
                    "ball" => c.kind = Some(ComponentKind::UniformBall { radius: parse_scalar(value, line)? }),
                    "rademacher" => c.kind = Some(ComponentKind::Rademacher { scale: parse_scalar(value, line)? }),
                    other => return Err(err(line, format!("unknown component key {other}"))),
                }
            }
            (Section::Sbm, "weights") => sbm.as_mut().expect("inside [sbm]").weights = Some(parse_list(value, line)?),
            (Section::Sbm, "prob_row") => sbm.as_mut().expect("inside [sbm]").rows.push(parse_list(value, line)?),
            (_, other) => return Err(err(line, format!("unknown key {other}"))),
        }
    }
    if !components.is_empty() {
        out.mixture = Some(build_mixture(components)?);
    }
    if let Some(raw) = sbm {
        out.sbm = Some(build_sbm(raw, out.n)?);
    }
    Ok(out)
}

fn build_mixture(raw: Vec<RawComponent>) -> Result<MixtureSpec, CliError> {
    let given = raw.iter().filter(|c| c.weight.is_some()).count();
    if given != 0 && given != raw.len() {
        return Err(CliError::Input("either every component has a weight or none does".into()));
    }
    let equal = 1.0 / raw.len() as f64;
    let mut comps = Vec::with_capacity(raw.len());
    for c in raw {
        let mean = c.mean.ok_or_else(|| err(c.line, "component without mean"))?;
        let d = mean.len();
        let kind = if let Some(kind) = c.kind {
            kind
        } else if let Some(v) = c.cov_scalar {
            let mut cov = vec![0.0; d * d];
            (0..d).for_each(|i| cov[i * d + i] = v);
            ComponentKind::Gaussian { cov }
        } else if let Some(rows) = c.cov_rows {
            if rows.len() != d || rows.iter().any(|r| r.len() != d) {
                return Err(err(c.line, format!("cov must be {d} x {d}")));
            }
            ComponentKind::Gaussian { cov: rows.concat() }
        } else {
            return Err(err(c.line, "component needs cov, ball or rademacher"));
        };
        comps.push(Component { mean, kind, weight: c.weight.unwrap_or(equal) });
    }
    MixtureSpec::new(comps).map_err(|e| CliError::Input(e.to_string()))
}

fn build_sbm(raw: RawSbm, n: Option<usize>) -> Result<SbmSpec, CliError> {
    let k = raw.rows.len();
    if k == 0 {
        return Err(err(raw.line, "[sbm] needs prob_row lines"));
    }
    if raw.rows.iter().any(|r| r.len() != k) {
        return Err(err(raw.line, format!("probability matrix must be {k} x {k}")));
    }
    let weights = raw.weights.unwrap_or_else(|| vec![1.0 / k as f64; k]);
    let n = n.ok_or_else(|| err(raw.line, "[sbm] needs n"))?;
    SbmSpec::new(raw.rows.concat(), weights, n).map_err(|e| CliError::Input(e.to_string()))
}
