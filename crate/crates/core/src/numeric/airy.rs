use alloc::format;

use astro_float::BigFloat;

use super::big::{abs_f64, checked, int, to_f64, Ctx, RM};
use crate::error::NumericError;

/// Largest `|y|` accepted by [`airy_pair`].
pub const MAX_AIRY_ARG: f64 = 160.0;

/// `Ai(y), Ai'(y), Bi(y), Bi'(y)`.
#[derive(Clone, Debug)]
pub struct AiryValues {
    pub ai: BigFloat,
    pub ai_prime: BigFloat,
    pub bi: BigFloat,
    pub bi_prime: BigFloat,
}

/// `Gamma(1/3)` from `Gamma(1/3)^3 = 2^{7/3} pi K(k_3) / 3^{1/4}`, `k_3' = (sqrt6 + sqrt2)/4`.
pub fn gamma_one_third(ctx: &mut Ctx, p: usize) -> Result<BigFloat, NumericError> {
    let w = p + 32;
    let s2 = int(2, w).sqrt(w, RM);
    let s6 = int(6, w).sqrt(w, RM);
    let kp = s6.add(&s2, w, RM).div(&int(4, w), w, RM);
    let (mut a, mut b) = (int(1, w), kp);
    for _ in 0..64 {
        let an = a.add(&b, w, RM).div(&int(2, w), w, RM);
        let bn = a.mul(&b, w, RM).sqrt(w, RM);
        let d = an.sub(&bn, w, RM);
        let done = d.is_zero() || match (d.exponent(), an.exponent()) {
            (Some(ed), Some(ea)) => (ed as i64) < ea as i64 - w as i64,
            _ => true,
        };
        a = an;
        b = bn;
        if done {
            break;
        }
    }
    let pi = ctx.pi(w);
    let k = pi.div(&a.mul(&int(2, w), w, RM), w, RM);
    let two_73 = int(4, w).mul(&int(2, w).cbrt(w, RM), w, RM);
    let three_14 = int(3, w).sqrt(w, RM).sqrt(w, RM);
    let g3 = two_73.mul(&pi, w, RM).mul(&k, w, RM).div(&three_14, w, RM);
    let mut g = g3.cbrt(w, RM);
    g.set_precision(p, RM).map_err(|e| NumericError::Float(format!("{e:?}")))?;
    checked(g, "Gamma(1/3)")
}

/// `(Ai(0), -Ai'(0)) = (3^{-2/3}/Gamma(2/3), 3^{-1/3}/Gamma(1/3))`.
pub fn airy_origin(ctx: &mut Ctx, p: usize) -> Result<(BigFloat, BigFloat), NumericError> {
    let w = p + 16;
    let g13 = gamma_one_third(ctx, w)?;
    let pi = ctx.pi(w);
    let s3 = int(3, w).sqrt(w, RM);
    let g23 = pi.mul(&int(2, w), w, RM).div(&s3.mul(&g13, w, RM), w, RM);
    let c1 = int(9, w).cbrt(w, RM).mul(&g23, w, RM).reciprocal(p, RM);
    let c2 = int(3, w).cbrt(w, RM).mul(&g13, w, RM).reciprocal(p, RM);
    Ok((c1, c2))
}

/// Extra bits needed to absorb the cancellation in `c1 f - c2 g`.
fn margin(y: f64) -> usize {
    let a = abs_f64(y);
    // (4/3) |y|^{3/2} / ln 2, with |y|^{3/2} = a * sqrt(a)
    let mut r = if a > 1.0 { a } else { 1.0 };
    for _ in 0..40 {
        r = 0.5 * (r + a / r);
    }
    (a * r * 4.0 / 3.0 / core::f64::consts::LN_2) as usize + 32
}

fn small(term: &BigFloat, sum: &BigFloat, w: usize) -> bool {
    if term.is_zero() {
        return true;
    }
    if sum.is_zero() {
        return false;
    }
    match (term.exponent(), sum.exponent()) {
        (None, _) => true,
        (Some(et), Some(es)) => (et as i64) < (es as i64) - w as i64,
        (Some(_), None) => false,
    }
}

/// Ai, Ai', Bi, Bi' at `y` to `p` bits via the Maclaurin series of the two standard solutions.
pub fn airy_all(y: &BigFloat, ctx: &mut Ctx, p: usize) -> Result<AiryValues, NumericError> {
    let yf = to_f64(y);
    if yf.is_nan() || abs_f64(yf) > MAX_AIRY_ARG {
        return Err(NumericError::OutOfRange(format!("Airy argument {yf} exceeds {MAX_AIRY_ARG}")));
    }
    let w = p + margin(yf);
    let (c1, c2) = airy_origin(ctx, w)?;
    let y = {
        let mut y = y.clone();
        y.set_precision(w, RM).map_err(|e| NumericError::Float(format!("{e:?}")))?;
        y
    };
    let y2 = y.mul(&y, w, RM);
    let y3 = y2.mul(&y, w, RM);
    // f = sum a_k, g = sum b_k, f' = sum fp_k, g' = sum gp_k
    let (mut a, mut b) = (int(1, w), y.clone());
    let (mut f, mut g) = (a.clone(), b.clone());
    let (mut fp, mut gp) = (int(0, w), int(1, w));
    let peak = {
        let a = abs_f64(yf);
        (a * a * a) as u64
    };
    let mut k: i64 = 1;
    loop {
        let dfp = a.mul(&y2, w, RM).div(&int(3 * k - 1, w), w, RM);
        let dgp = b.mul(&y2, w, RM).div(&int(3 * k, w), w, RM);
        a = a.mul(&y3, w, RM).div(&int((3 * k - 1) * (3 * k), w), w, RM);
        b = b.mul(&y3, w, RM).div(&int((3 * k) * (3 * k + 1), w), w, RM);
        f = f.add(&a, w, RM);
        g = g.add(&b, w, RM);
        fp = fp.add(&dfp, w, RM);
        gp = gp.add(&dgp, w, RM);
        let past = ((3 * k) as u64).pow(2) > peak;
        if past && small(&a, &f, w) && small(&b, &g, w) && small(&dfp, &fp, w) && small(&dgp, &gp, w) {
            break;
        }
        k += 1;
        if k > 100_000 {
            return Err(NumericError::NoConvergence(k as usize));
        }
    }
    let s3 = int(3, w).sqrt(w, RM);
    let fin = |x: BigFloat, what: &str| -> Result<BigFloat, NumericError> {
        let mut x = x;
        x.set_precision(p, RM).map_err(|e| NumericError::Float(format!("{e:?}")))?;
        checked(x, what)
    };
    let c1f = c1.mul(&f, w, RM);
    let c2g = c2.mul(&g, w, RM);
    let c1fp = c1.mul(&fp, w, RM);
    let c2gp = c2.mul(&gp, w, RM);
    Ok(AiryValues {
        ai: fin(c1f.sub(&c2g, w, RM), "Ai")?,
        ai_prime: fin(c1fp.sub(&c2gp, w, RM), "Ai'")?,
        bi: fin(s3.mul(&c1f.add(&c2g, w, RM), w, RM), "Bi")?,
        bi_prime: fin(s3.mul(&c1fp.add(&c2gp, w, RM), w, RM), "Bi'")?,
    })
}

/// `(Ai(y), Ai'(y))` at the context precision.
pub fn airy_pair(y: &BigFloat, ctx: &mut Ctx) -> Result<(BigFloat, BigFloat), NumericError> {
    let p = ctx.precision();
    let v = airy_all(y, ctx, p)?;
    Ok((v.ai, v.ai_prime))
}
