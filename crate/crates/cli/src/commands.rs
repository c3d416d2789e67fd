use airyexp_core::bleistein::CoeffTable;
use airyexp_core::numeric::{compare, map_point, xi_at, CoeffEvaluator, Ctx};
use airyexp_core::pcf::{maclaurin_of_coeff, pcf_coeff_table, radius_estimate, XiEtaForm, MIN_RADIUS_TERMS};
use airyexp_core::residue::{oracle_alpha_beta, taylor_alpha_beta};
use airyexp_core::ring::{parse_ratfunc, plain, rational_str, RatFunc, Var};

use crate::error::CliError;
use crate::report::{MaclaurinMeta, Meta, Report, Validation};

/// Significant digits printed for floating-point values.
const DIGITS: usize = 30;

fn var_names(vs: &[Var]) -> Vec<String> {
    vs.iter().map(|v| v.to_string()).collect()
}

fn strings(v: &[RatFunc]) -> Vec<String> {
    v.iter().map(plain).collect()
}

fn table_report(command: &str, t: &CoeffTable<RatFunc>) -> Report {
    Report {
        command: command.into(),
        variables: var_names(&t.variables),
        alpha: strings(&t.alphas),
        beta: strings(&t.betas),
        meta: Meta {
            order: t.order(),
            source: t.source.clone(),
            maclaurin: None,
            validation: None,
            oracle_agrees: None,
        },
    }
}

pub fn rational_example(c: &str, order: usize) -> Result<Report, CliError> {
    let c = parse_ratfunc(c)?;
    if c.constant_value().is_none() {
        return Err(CliError::Usage(format!("--c must be a rational constant, got {}", plain(&c))));
    }
    let f0 = RatFunc::var(Var::T).add(&c).inv()?;
    Ok(table_report("rational-example", &taylor_alpha_beta(&f0, order)?))
}

pub fn pcf_coeffs(order: usize) -> Result<Report, CliError> {
    Ok(table_report("pcf-coeffs", &pcf_coeff_table(order)?))
}

/// `alphaN` or `betaN`.
pub fn parse_coeff(s: &str, max: usize) -> Result<(bool, usize), String> {
    let (alpha, n) = if let Some(n) = s.strip_prefix("alpha") {
        (true, n)
    } else if let Some(n) = s.strip_prefix("beta") {
        (false, n)
    } else {
        return Err(format!("expected alphaN or betaN, got {s:?}"));
    };
    let n: usize = n.parse().map_err(|_| format!("bad index in {s:?}"))?;
    if n > max {
        return Err(format!("index {n} exceeds the maximum order {max}"));
    }
    Ok((alpha, n))
}

pub fn pcf_maclaurin(coeff: &str, alpha: bool, n: usize, terms: usize) -> Result<Report, CliError> {
    let t = pcf_coeff_table(n)?;
    let c = if alpha { &t.alphas[n] } else { &t.betas[n] };
    let m = maclaurin_of_coeff(&XiEtaForm { value: c.clone() }, terms, coeff)?;
    let series: Vec<String> = m.terms().iter().map(rational_str).collect();
    let radius = if terms >= MIN_RADIUS_TERMS {
        radius_estimate(&m).ok().map(|r| format!("{:.6}", r.estimate()))
    } else {
        None
    };
    let (a, b) = if alpha { (series, Vec::new()) } else { (Vec::new(), series) };
    Ok(Report {
        command: "pcf-maclaurin".into(),
        variables: vec!["eta".into()],
        alpha: a,
        beta: b,
        meta: Meta {
            order: n,
            source: t.source,
            maclaurin: Some(MaclaurinMeta {
                coeff: coeff.into(),
                terms,
                radius,
            }),
            validation: None,
            oracle_agrees: None,
        },
    })
}

pub fn validate(mu_s: &str, t_s: &str, order: usize, precision: usize) -> Result<Report, CliError> {
    let mut ctx = Ctx::new(precision)?;
    let mu = ctx.parse(mu_s)?;
    let t = ctx.parse(t_s)?;
    let table = pcf_coeff_table(order)?;
    let source = table.source.clone();
    let ev = CoeffEvaluator::new(table, precision)?;
    let e = compare(&mu, &t, order, &ev, &mut ctx)?;
    let m = map_point(&t, &mut ctx)?;
    let xi = xi_at(&m, precision + 32);
    let mut alpha = Vec::with_capacity(order + 1);
    let mut beta = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let (a, b) = ev.at(n, &m.eta, &xi, precision)?;
        alpha.push(ctx.decimal(&a, DIGITS)?);
        beta.push(ctx.decimal(&b, DIGITS)?);
    }
    let partial_sums = e.partial_sums.iter().map(|s| ctx.decimal(s, DIGITS)).collect::<Result<_, _>>()?;
    Ok(Report {
        command: "validate".into(),
        variables: vec!["eta".into(), "xi".into()],
        alpha,
        beta,
        meta: Meta {
            order,
            source,
            maclaurin: None,
            validation: Some(Validation {
                mu: mu_s.into(),
                t: t_s.into(),
                precision,
                eta: ctx.decimal(&m.eta, DIGITS)?,
                reference: ctx.decimal(&e.reference, DIGITS)?,
                partial_sums,
                rel_errors: e.rel_errors.iter().map(|x| format!("{x:.3e}")).collect(),
            }),
            oracle_agrees: None,
        },
    })
}

pub fn oracle_check(f0: &str, order: usize) -> Result<Report, CliError> {
    let f = parse_ratfunc(f0)?;
    let rec = taylor_alpha_beta(&f, order)?;
    let orc = oracle_alpha_beta(&f, order)?;
    let agree = rec.alphas == orc.alphas && rec.betas == orc.betas;
    let mut r = table_report("oracle-check", &rec);
    r.meta.oracle_agrees = Some(agree);
    Ok(r)
}

