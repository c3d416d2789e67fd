use alloc::format;

use astro_float::BigFloat;

use super::big::{checked, from_rational, int, to_f64, Ctx, RM};
use crate::error::{ExpansionError, NumericError};
use crate::pcf::eta_of_w_series;

/// Below this `theta` the mapping uses the exact series `eta = w E(w)^{2/3}`, `w = theta^2`.
pub const SERIES_THETA: f64 = 0.125;

/// The saddle-point mapping at one `t >= 1`.
#[derive(Clone, Debug)]
pub struct MappingPoint {
    pub t: BigFloat,
    pub theta: BigFloat,
    pub eta: BigFloat,
    /// `A = -1/2 - t^2`.
    pub a: BigFloat,
    /// `s_+ = t + sqrt(t^2 - 1) = e^theta`.
    pub s_plus: BigFloat,
}

pub fn map_point(t: &BigFloat, ctx: &mut Ctx) -> Result<MappingPoint, NumericError> {
    let p = ctx.precision();
    let w = p + 32;
    let one = int(1, w);
    let tt = t.mul(t, w, RM);
    let d = tt.sub(&one, w, RM);
    if d.is_negative() || t.is_negative() {
        return Err(NumericError::OutOfRange(format!("t = {} < 1", to_f64(t))));
    }
    let r = d.sqrt(w, RM);
    let s_plus = t.add(&r, w, RM);
    let theta = checked(s_plus.ln(w, RM, ctx.consts()), "theta")?;
    let eta = if theta.is_zero() {
        int(0, w)
    } else if to_f64(&theta) < SERIES_THETA {
        let ww = theta.mul(&theta, w, RM);
        // each power of w < 1/64 gains 6 bits
        let order = w / 6 + 4;
        let s = eta_of_w_series(order).map_err(ExpansionError::from)?;
        let mut acc = int(0, w);
        for c in s.coeffs().iter().rev() {
            acc = acc.mul(&ww, w, RM).add(&from_rational(c, w), w, RM);
        }
        acc
    } else {
        eta_direct(&theta, ctx, w)?
    };
    let a = tt.add(&BigFloat::from_f64(0.5, w), w, RM).neg();
    let fin = |mut x: BigFloat| -> Result<BigFloat, NumericError> {
        x.set_precision(p, RM).map_err(|e| NumericError::Float(format!("{e:?}")))?;
        checked(x, "mapping")
    };
    Ok(MappingPoint {
        t: fin(t.clone())?,
        theta: fin(theta)?,
        eta: fin(eta)?,
        a: fin(a)?,
        s_plus: fin(s_plus)?,
    })
}

/// `((3/4)(sinh 2theta - 2theta))^{2/3}`.
pub fn eta_direct(theta: &BigFloat, ctx: &mut Ctx, p: usize) -> Result<BigFloat, NumericError> {
    let two_theta = theta.mul(&int(2, p), p, RM);
    let sh = checked(two_theta.sinh(p, RM, ctx.consts()), "sinh")?;
    let v = sh.sub(&two_theta, p, RM).mul(&BigFloat::from_f64(0.75, p), p, RM);
    checked(v.mul(&v, p, RM).cbrt(p, RM), "eta")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::big::abs_f64;

    #[test]
    fn coalescing_point() {
        let mut c = Ctx::new(128).unwrap();
        let one = int(1, 128);
        let m = map_point(&one, &mut c).unwrap();
        assert!(m.theta.is_zero());
        assert!(m.eta.is_zero());
        assert_eq!(to_f64(&m.a), -1.5);
        assert_eq!(to_f64(&m.s_plus), 1.0);
        assert!(map_point(&BigFloat::from_f64(0.9, 128), &mut c).is_err());
    }

    #[test]
    fn branches_agree() {
        let mut c = Ctx::new(160).unwrap();
        for th in ["0.05", "0.1", "0.124"] {
            let theta = c.parse(th).unwrap();
            let t = theta.cosh(200, RM, c.consts());
            let m = map_point(&t, &mut c).unwrap();
            let direct = eta_direct(&m.theta, &mut c, 400).unwrap();
            let rel = to_f64(&m.eta.sub(&direct, 400, RM).div(&direct, 64, RM));
            assert!(abs_f64(rel) < 1e-40, "{th}: {rel}");
        }
    }
}
