use std::fmt::Write as _;

use airyexp_core::ring::{factored, latex, parse_ratfunc, RatFunc};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Everything a command produces. Serialized field order is the declaration order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub variables: Vec<String>,
    pub alpha: Vec<String>,
    pub beta: Vec<String>,
    pub meta: Meta,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub order: usize,
    pub source: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub maclaurin: Option<MaclaurinMeta>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub validation: Option<Validation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_agrees: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaclaurinMeta {
    pub coeff: String,
    pub terms: usize,
    /// Domb-Sykes radius estimate, when there are enough terms.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<String>,
}

/// Numeric comparison against the contour-integral reference.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Validation {
    pub mu: String,
    pub t: String,
    pub precision: usize,
    pub eta: String,
    pub reference: String,
    pub partial_sums: Vec<String>,
    pub rel_errors: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

pub fn render(r: &Report, f: Format) -> Result<String, CliError> {
    match f {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("report serializes");
            s.push('\n');
            Ok(s)
        }
        Format::Text => text(r),
        Format::Latex => tex(r),
    }
}

fn parsed(v: &[String]) -> Result<Vec<RatFunc>, CliError> {
    v.iter().map(|s| Ok(parse_ratfunc(s)?)).collect()
}

fn text(r: &Report) -> Result<String, CliError> {
    let mut out = String::new();
    writeln!(out, "# {}", r.meta.source).unwrap();
    if let Some(m) = &r.meta.maclaurin {
        writeln!(out, "# {} about eta = 0, {} terms", m.coeff, m.terms).unwrap();
        let c = if m.coeff.starts_with("alpha") { &r.alpha } else { &r.beta };
        for (k, v) in c.iter().enumerate() {
            writeln!(out, "eta^{k}: {v}").unwrap();
        }
        if let Some(rad) = &m.radius {
            writeln!(out, "radius ~ {rad}").unwrap();
        }
        return Ok(out);
    }
    if let Some(v) = &r.meta.validation {
        writeln!(out, "mu = {}, t = {}, eta = {}, {} bits", v.mu, v.t, v.eta, v.precision).unwrap();
        writeln!(out, "reference U = {}", v.reference).unwrap();
        for (n, (s, e)) in v.partial_sums.iter().zip(&v.rel_errors).enumerate() {
            writeln!(out, "N = {n}: {s}  rel. error {e}").unwrap();
        }
        return Ok(out);
    }
    let (a, b) = (parsed(&r.alpha)?, parsed(&r.beta)?);
    for (n, (x, y)) in a.iter().zip(&b).enumerate() {
        writeln!(out, "alpha_{n} = {}", factored(x)).unwrap();
        writeln!(out, "beta_{n} = {}", factored(y)).unwrap();
    }
    if let Some(ok) = r.meta.oracle_agrees {
        writeln!(out, "residue oracle {}", if ok { "agrees" } else { "DISAGREES" }).unwrap();
    }
    Ok(out)
}

fn tex_rational(s: &str) -> Result<String, CliError> {
    Ok(latex(&parse_ratfunc(s)?))
}

fn tex(r: &Report) -> Result<String, CliError> {
    let mut out = String::new();
    if let Some(m) = &r.meta.maclaurin {
        let (name, c) = match m.coeff.strip_prefix("alpha") {
            Some(n) => (format!("\\alpha_{{{n}}}"), &r.alpha),
            None => (format!("\\beta_{{{}}}", &m.coeff["beta".len()..]), &r.beta),
        };
        let mut terms = Vec::new();
        for (k, v) in c.iter().enumerate() {
            if v == "0" {
                continue;
            }
            let coef = tex_rational(v)?;
            terms.push(match k {
                0 => coef,
                1 => format!("{coef}\\eta"),
                _ => format!("{coef}\\eta^{{{k}}}"),
            });
        }
        let body = terms.join(" + ").replace("+ -", "- ");
        writeln!(out, "{name} = {body} + O(\\eta^{{{}}})", c.len()).unwrap();
        return Ok(out);
    }
    if let Some(v) = &r.meta.validation {
        writeln!(out, "\\begin{{tabular}}{{rll}}").unwrap();
        writeln!(out, "$N$ & partial sum & rel. error \\\\").unwrap();
        for (n, (s, e)) in v.partial_sums.iter().zip(&v.rel_errors).enumerate() {
            writeln!(out, "{n} & ${s}$ & ${e}$ \\\\").unwrap();
        }
        writeln!(out, "\\end{{tabular}}").unwrap();
        return Ok(out);
    }
    let (a, b) = (parsed(&r.alpha)?, parsed(&r.beta)?);
    writeln!(out, "\\begin{{align*}}").unwrap();
    let n = a.len();
    for (k, (x, y)) in a.iter().zip(&b).enumerate() {
        let end = if k + 1 < n { " \\\\" } else { "" };
        writeln!(out, "\\alpha_{{{k}}} &= {}, & \\beta_{{{k}}} &= {}{end}", latex(x), latex(y)).unwrap();
    }
    writeln!(out, "\\end{{align*}}").unwrap();
    Ok(out)
}
