use alloc::format;
use alloc::vec::Vec;

use astro_float::BigFloat;

use super::airy::airy_pair;
use super::big::{abs_f64, checked, eval_poly, from_rational, int, to_f64, Ctx, RM};
use super::mapping::{map_point, MappingPoint};
use crate::bleistein::CoeffTable;
use crate::error::NumericError;
use crate::pcf::{basis_order, maclaurin_of_coeff, maclaurin_with, XiEtaForm, XiPowers};
use crate::ring::{RatFunc, Rational, Var};

/// Below this `eta` coefficients are summed from their Maclaurin series.
pub const SERIES_ETA: f64 = 0.1;

/// Evaluates `α_n(eta, xi)`, `β_n(eta, xi)` from a table in `(eta, xi)`.
#[derive(Clone, Debug)]
pub struct CoeffEvaluator {
    table: CoeffTable<RatFunc>,
    alpha_series: Vec<Vec<Rational>>,
    beta_series: Vec<Vec<Rational>>,
}

/// Longest Maclaurin series built by [`CoeffEvaluator`].
pub const MAX_SERIES_TERMS: usize = 32;

/// Series length that resolves `p` bits for `eta < SERIES_ETA`, capped at [`MAX_SERIES_TERMS`].
pub fn series_terms(p: usize) -> usize {
    // radius ~2.81, so each term gains log2(28) ~ 4.8 bits
    (p * 10 / 48 + 6).min(MAX_SERIES_TERMS)
}

impl CoeffEvaluator {
    pub fn new(table: CoeffTable<RatFunc>, p: usize) -> Result<Self, NumericError> {
        let terms = series_terms(p);
        let forms = |v: &[RatFunc]| v.iter().map(|c| XiEtaForm { value: c.clone() }).collect::<Vec<_>>();
        let (fa, fb) = (forms(&table.alphas), forms(&table.betas));
        let order = fa.iter().chain(&fb).map(|c| basis_order(c, terms)).max().unwrap_or(terms);
        let mut basis = XiPowers::new(order).map_err(crate::error::ExpansionError::from)?;
        let mut series = |v: &[XiEtaForm]| -> Result<Vec<Vec<Rational>>, NumericError> {
            v.iter()
                .map(|c| {
                    let m = match maclaurin_with(&mut basis, c, terms, "") {
                        Ok(m) => m,
                        Err(_) => maclaurin_of_coeff(c, terms, "")?,
                    };
                    Ok(m.terms().to_vec())
                })
                .collect()
        };
        let alpha_series = series(&fa)?;
        let beta_series = series(&fb)?;
        Ok(CoeffEvaluator {
            table,
            alpha_series,
            beta_series,
        })
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    pub fn table(&self) -> &CoeffTable<RatFunc> {
        &self.table
    }

    /// `(α_n, β_n)` at the point, by branch.
    pub fn at(&self, n: usize, eta: &BigFloat, xi: &BigFloat, p: usize) -> Result<(BigFloat, BigFloat), NumericError> {
        if n > self.order() {
            return Err(NumericError::TableTooShort {
                have: self.order() + 1,
                need: n + 1,
            });
        }
        if to_f64(eta) < SERIES_ETA {
            Ok((
                eval_series(&self.alpha_series[n], eta, p),
                eval_series(&self.beta_series[n], eta, p),
            ))
        } else {
            Ok((
                eval_ratfunc(&self.table.alphas[n], eta, xi, p)?,
                eval_ratfunc(&self.table.betas[n], eta, xi, p)?,
            ))
        }
    }

    /// Both branches at one point, for consistency checks.
    pub fn both(&self, n: usize, eta: &BigFloat, xi: &BigFloat, p: usize) -> Result<[BigFloat; 4], NumericError> {
        Ok([
            eval_series(&self.alpha_series[n], eta, p),
            eval_ratfunc(&self.table.alphas[n], eta, xi, p)?,
            eval_series(&self.beta_series[n], eta, p),
            eval_ratfunc(&self.table.betas[n], eta, xi, p)?,
        ])
    }
}

pub fn eval_series(c: &[Rational], x: &BigFloat, p: usize) -> BigFloat {
    let mut acc = int(0, p);
    for k in c.iter().rev() {
        acc = acc.mul(x, p, RM).add(&from_rational(k, p), p, RM);
    }
    acc
}

pub fn eval_ratfunc(f: &RatFunc, eta: &BigFloat, xi: &BigFloat, p: usize) -> Result<BigFloat, NumericError> {
    let vals = [(Var::ETA, eta), (Var::XI, xi)];
    let n = eval_poly(f.num(), &vals, p + 32)?;
    let d = eval_poly(f.den(), &vals, p + 32)?;
    if d.is_zero() {
        return Err(NumericError::OutOfRange(format!("pole of {f}")));
    }
    checked(n.div(&d, p, RM), "coefficient")
}

/// `xi = b t / sqrt(t^2 - 1)`.
pub fn xi_at(m: &MappingPoint, p: usize) -> BigFloat {
    let b = m.eta.sqrt(p, RM);
    let r = m.t.mul(&m.t, p, RM).sub(&int(1, p), p, RM).sqrt(p, RM);
    b.mul(&m.t, p, RM).div(&r, p, RM)
}

fn gt_one(t: &BigFloat, p: usize) -> bool {
    t.sub(&int(1, p), p, RM).is_positive()
}

/// `sqrt(2 pi) (mu/sqrt2)^{z+1/2}` with `z = mu^2/2`.
fn scale(mu: &BigFloat, ctx: &mut Ctx, w: usize) -> Result<BigFloat, NumericError> {
    let z = mu.mul(mu, w, RM).div(&int(2, w), w, RM);
    let base = mu.div(&int(2, w).sqrt(w, RM), w, RM);
    let lnb = checked(base.ln(w, RM, ctx.consts()), "ln")?;
    let e = z.add(&BigFloat::from_f64(0.5, w), w, RM).mul(&lnb, w, RM);
    let pw = checked(e.exp(w, RM, ctx.consts()), "power")?;
    let pi2 = ctx.pi(w).mul(&int(2, w), w, RM);
    Ok(pi2.sqrt(w, RM).mul(&pw, w, RM))
}

/// Partial sums of the expansion of `U(-mu^2/2, mu t sqrt2)` for `n = 0..=N`.
pub fn eval_expansion(
    mu: &BigFloat,
    t: &BigFloat,
    order: usize,
    coeffs: &CoeffEvaluator,
    ctx: &mut Ctx,
) -> Result<Vec<BigFloat>, NumericError> {
    let p = ctx.precision();
    let w = p + 32;
    if !gt_one(t, w) {
        return Err(NumericError::OutOfRange(format!("t = {} must exceed 1", to_f64(t))));
    }
    if !mu.is_positive() {
        return Err(NumericError::OutOfRange(format!("mu = {} must be positive", to_f64(mu))));
    }
    if order > coeffs.order() {
        return Err(NumericError::TableTooShort {
            have: coeffs.order() + 1,
            need: order + 1,
        });
    }
    let m = map_point(t, ctx)?;
    let z = mu.mul(mu, w, RM).div(&int(2, w), w, RM);
    let z13 = z.cbrt(w, RM);
    let z23 = z13.mul(&z13, w, RM);
    let arg = m.eta.mul(&z23, w, RM);
    let (ai, aip) = airy_pair(&arg, ctx)?;
    let b = m.eta.sqrt(w, RM);
    let sh = checked(m.theta.sinh(w, RM, ctx.consts()), "sinh")?;
    let fb = b.div(&sh, w, RM).sqrt(w, RM);
    let half_z = z.div(&int(2, w), w, RM).neg();
    let ez = checked(half_z.exp(w, RM, ctx.consts()), "exp")?;
    let pref = scale(mu, ctx, w)?.mul(&ez, w, RM).mul(&fb, w, RM);
    let xi = xi_at(&m, w);
    let c_ai = ai.div(&z13, w, RM);
    let c_aip = aip.div(&z23, w, RM);
    let (mut sa, mut sb) = (int(0, w), int(0, w));
    let mut zn = int(1, w);
    let mut out = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let (a, bt) = coeffs.at(n, &m.eta, &xi, w)?;
        let (a, bt) = (a.div(&zn, w, RM), bt.div(&zn, w, RM));
        if n % 2 == 0 {
            sa = sa.add(&a, w, RM);
            sb = sb.add(&bt, w, RM);
        } else {
            sa = sa.sub(&a, w, RM);
            sb = sb.sub(&bt, w, RM);
        }
        zn = zn.mul(&z, w, RM);
        let f = c_ai.mul(&sa, w, RM).sub(&c_aip.mul(&sb, w, RM), w, RM);
        let mut u = pref.mul(&f, w, RM);
        u.set_precision(p, RM).map_err(|e| NumericError::Float(format!("{e:?}")))?;
        out.push(checked(u, "partial sum")?);
    }
    Ok(out)
}

/// Refinements allowed in [`reference_u`].
pub const MAX_HALVINGS: usize = 16;

/// `U(-mu^2/2, mu t sqrt2)` by trapezoidal quadrature on the vertical line through `s_+`.
///
/// With `s = (mu/sqrt2) sigma`, `sigma = s_+ + iy`, `phi = sigma^2/2 - 2t sigma + ln sigma`:
/// `U = (mu/sqrt2)^{z+1/2} e^{z t^2} / sqrt(2pi) * int e^{z phi} sigma^{-1/2} dy`.
pub fn reference_u(mu: &BigFloat, t: &BigFloat, ctx: &mut Ctx) -> Result<BigFloat, NumericError> {
    let p = ctx.precision();
    let w = p + 64;
    if !mu.is_positive() {
        return Err(NumericError::OutOfRange(format!("mu = {} must be positive", to_f64(mu))));
    }
    let m = map_point(t, ctx)?;
    let sp = m.s_plus.clone();
    let z = mu.mul(mu, w, RM).div(&int(2, w), w, RM);
    let two_t = t.mul(&int(2, w), w, RM);
    let sp2 = sp.mul(&sp, w, RM);
    let ln_sp = checked(sp.ln(w, RM, ctx.consts()), "ln")?;
    let phi0 = sp2
        .div(&int(2, w), w, RM)
        .sub(&two_t.mul(&sp, w, RM), w, RM)
        .add(&ln_sp, w, RM);
    let half = BigFloat::from_f64(0.5, w);
    let quarter = BigFloat::from_f64(0.25, w);
    // Re g(y) = e^{z(-y^2/2 + ln(1 + y^2/s^2)/2)} (s^2 + y^2)^{-1/4} cos(z(s y - 2t y + atan(y/s)) - atan(y/s)/2)
    let g = |y: &BigFloat, ctx: &mut Ctx| -> Result<BigFloat, NumericError> {
        let y2 = y.mul(y, w, RM);
        let r2 = sp2.add(&y2, w, RM);
        let ln_ratio = checked(r2.div(&sp2, w, RM).ln(w, RM, ctx.consts()), "ln")?;
        let re = ln_ratio.sub(&y2, w, RM).mul(&half, w, RM).mul(&z, w, RM);
        let mag = checked(re.exp(w, RM, ctx.consts()), "exp")?;
        let amp = checked(r2.ln(w, RM, ctx.consts()), "ln")?.mul(&quarter, w, RM).neg();
        let amp = checked(amp.exp(w, RM, ctx.consts()), "exp")?;
        let arg = y.div(&sp, w, RM).atan(w, RM, ctx.consts());
        let im = sp.sub(&two_t, w, RM).mul(y, w, RM).add(&arg, w, RM).mul(&z, w, RM);
        let ph = im.sub(&arg.mul(&half, w, RM), w, RM);
        let c = checked(ph.cos(w, RM, ctx.consts()), "cos")?;
        Ok(mag.mul(&amp, w, RM).mul(&c, w, RM))
    };
    // tail: z (y^2/2 - ln(1 + y^2/s^2)/2) > p ln2 + 40
    let spf = to_f64(&sp);
    let zf = to_f64(&z);
    let target = p as f64 * core::f64::consts::LN_2 + 40.0;
    let mut ymax = 1.0f64;
    loop {
        // ln(1 + q) <= q / sqrt(1 + q)
        let q = ymax * ymax / (spf * spf);
        let decay = 0.5 * ymax * ymax * (1.0 - 1.0 / sqrt_f64(1.0 + q));
        if zf * decay > target {
            break;
        }
        ymax *= 1.25;
        if ymax > 1e6 {
            return Err(NumericError::NoConvergence(0));
        }
    }
    let ymax = BigFloat::from_f64(ymax, w);
    let mut n: i64 = 8;
    let mut h = ymax.div(&int(n, w), w, RM);
    let mut sum = g(&int(0, w), ctx)?.mul(&half, w, RM);
    for k in 1..=n {
        sum = sum.add(&g(&h.mul(&int(k, w), w, RM), ctx)?, w, RM);
    }
    let mut prev = sum.mul(&h, w, RM);
    for level in 1..=MAX_HALVINGS {
        h = h.div(&int(2, w), w, RM);
        n *= 2;
        for k in (1..n).step_by(2) {
            sum = sum.add(&g(&h.mul(&int(k, w), w, RM), ctx)?, w, RM);
        }
        let cur = sum.mul(&h, w, RM);
        let diff = cur.sub(&prev, w, RM);
        let close = diff.is_zero() || match (diff.exponent(), cur.exponent()) {
            (None, _) => true,
            (Some(ed), Some(ec)) => (ed as i64) < ec as i64 - p as i64 - 8,
            _ => false,
        };
        prev = cur;
        if close && level >= 3 {
            {
                let e = z.mul(&t.mul(t, w, RM).add(&phi0, w, RM), w, RM);
                let ez = checked(e.exp(w, RM, ctx.consts()), "exp")?;
                let pi2 = ctx.pi(w).mul(&int(2, w), w, RM);
                let s = scale(mu, ctx, w)?.div(&pi2, w, RM);
                let mut u = s.mul(&ez, w, RM).mul(&prev, w, RM).mul(&int(2, w), w, RM);
                u.set_precision(p, RM).map_err(|e| NumericError::Float(format!("{e:?}")))?;
                return checked(u, "U");
            }
        }
    }
    Err(NumericError::NoConvergence(MAX_HALVINGS))
}

fn sqrt_f64(x: f64) -> f64 {
    let mut r = if x > 1.0 { x } else { 1.0 };
    for _ in 0..60 {
        r = 0.5 * (r + x / r);
    }
    r
}

/// Partial sums, reference and relative errors for one `(mu, t)`.
#[derive(Clone, Debug)]
pub struct ExpansionEvaluation {
    pub mu: BigFloat,
    pub t: BigFloat,
    pub order: usize,
    pub precision: usize,
    pub partial_sums: Vec<BigFloat>,
    pub reference: BigFloat,
    pub rel_errors: Vec<f64>,
}

pub fn compare(
    mu: &BigFloat,
    t: &BigFloat,
    order: usize,
    coeffs: &CoeffEvaluator,
    ctx: &mut Ctx,
) -> Result<ExpansionEvaluation, NumericError> {
    let p = ctx.precision();
    let partial_sums = eval_expansion(mu, t, order, coeffs, ctx)?;
    let reference = reference_u(mu, t, ctx)?;
    let rel_errors = partial_sums
        .iter()
        .map(|s| abs_f64(to_f64(&s.sub(&reference, p, RM).div(&reference, 64, RM))))
        .collect();
    Ok(ExpansionEvaluation {
        mu: mu.clone(),
        t: t.clone(),
        order,
        precision: p,
        partial_sums,
        reference,
        rel_errors,
    })
}
