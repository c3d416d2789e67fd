use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, ToPrimitive, Zero};

use super::xi_eta::XiEtaForm;
use crate::error::{ExpansionError, SeriesError};
use crate::ring::{int, MultiPoly, Rational, Var};
use crate::series::TruncSeries;

/// Default number of Maclaurin terms.
pub const DEFAULT_TERMS: usize = 16;
/// Fewest terms accepted by [`radius_estimate`].
pub const MIN_RADIUS_TERMS: usize = 12;

fn factorial(n: usize) -> Rational {
    (1..=n).fold(Rational::one(), |acc, k| acc * int(k as i64))
}

/// `E_j = 3 * 2^{2j+1} / (2j+3)!`.
fn e_coeff(j: usize) -> Rational {
    int(3) * int(2).pow(2 * j as i32 + 1) / factorial(2 * j + 3)
}

/// `eta = w E(w)^{2/3}` as a series in `w = theta^2` through `w^order`.
pub fn eta_of_w_series(order: usize) -> Result<TruncSeries<Rational>, SeriesError> {
    let order = order.max(1);
    let e = TruncSeries::from_fn(Var::W, order, e_coeff);
    Ok(e.pow_rational(2, 3)?.shift(1).truncate(order))
}

/// `xi` as a power series in `eta` through `eta^order`.
///
/// With `w = theta^2`: `eta = w E(w)^{2/3}` and `xi = E^{1/3} theta coth(theta)`.
pub fn xi_eta_series(order: usize) -> Result<TruncSeries<Rational>, SeriesError> {
    let order = order.max(1);
    let e = TruncSeries::from_fn(Var::W, order, e_coeff);
    let w_of_eta = eta_of_w_series(order)?.revert()?;
    let cosh = TruncSeries::from_fn(Var::W, order, |m| factorial(2 * m).recip());
    let sinh = TruncSeries::from_fn(Var::W, order, |m| factorial(2 * m + 1).recip());
    let h = cosh.div(&sinh)?;
    let g = e.pow_rational(1, 3)?.mul(&h)?;
    Ok(TruncSeries::compose(&g, &w_of_eta)?.with_var(Var::ETA))
}

/// Series in `eta` of one expansion coefficient.
#[derive(Clone, PartialEq, Debug)]
pub struct EtaMaclaurin {
    pub coeffs: TruncSeries<Rational>,
    pub target: String,
}

impl EtaMaclaurin {
    pub fn terms(&self) -> &[Rational] {
        self.coeffs.coeffs()
    }
}

fn poly_series(p: &MultiPoly, xi_pows: &[TruncSeries<Rational>], order: usize) -> Result<TruncSeries<Rational>, SeriesError> {
    let mut acc = TruncSeries::zero(Var::ETA, order);
    for (m, c) in p.terms() {
        let i = m.exp(Var::ETA) as usize;
        if i > order {
            continue;
        }
        let j = m.exp(Var::XI) as usize;
        acc = acc.add(&xi_pows[j].shift(i).truncate(order).scale(c))?;
    }
    Ok(acc)
}

/// `xi(eta)` and its powers through a fixed order, shared across coefficients.
#[derive(Clone, Debug)]
pub struct XiPowers {
    pows: Vec<TruncSeries<Rational>>,
}

impl XiPowers {
    pub fn new(order: usize) -> Result<Self, SeriesError> {
        let xi = xi_eta_series(order)?;
        Ok(XiPowers {
            pows: alloc::vec![TruncSeries::one(Var::ETA, xi.order()), xi],
        })
    }

    pub fn order(&self) -> usize {
        self.pows[0].order()
    }

    fn upto(&mut self, j: usize) -> Result<&[TruncSeries<Rational>], SeriesError> {
        while self.pows.len() <= j {
            let next = self.pows[self.pows.len() - 1].mul(&self.pows[1])?;
            self.pows.push(next);
        }
        Ok(&self.pows)
    }
}

fn check_vars(c: &XiEtaForm) -> Result<(), ExpansionError> {
    match c.value.variables().into_iter().find(|x| *x != Var::ETA && *x != Var::XI) {
        Some(x) => Err(ExpansionError::UnexpectedVariable(x)),
        None => Ok(()),
    }
}

/// Like [`maclaurin_of_coeff`] but reusing `basis`; fails with `OrderExhausted` if it is too short.
pub fn maclaurin_with(
    basis: &mut XiPowers,
    c: &XiEtaForm,
    terms: usize,
    target: &str,
) -> Result<EtaMaclaurin, ExpansionError> {
    check_vars(c)?;
    let terms = terms.max(1);
    let (num, den) = (c.value.num(), c.value.den());
    let max_xi = num.degree_in(Var::XI).max(den.degree_in(Var::XI)) as usize;
    let order = basis.order();
    let pows = basis.upto(max_xi)?;
    let ns = poly_series(num, pows, order)?;
    let ds = poly_series(den, pows, order)?;
    let vd = ds.valuation().ok_or(SeriesError::ZeroDivisor)?;
    if order - vd + 1 < terms {
        return Err(SeriesError::OrderExhausted.into());
    }
    Ok(EtaMaclaurin {
        coeffs: ns.div(&ds)?.truncate(terms - 1),
        target: String::from(target),
    })
}

/// Order of basis needed for `terms` coefficients of `c`, assuming no extra cancellation.
pub fn basis_order(c: &XiEtaForm, terms: usize) -> usize {
    terms.max(1) - 1 + c.value.den().degree_in(Var::ETA) as usize
}

/// Maclaurin series of `c(eta, xi(eta))` with `terms` coefficients.
pub fn maclaurin_of_coeff(
    c: &XiEtaForm,
    terms: usize,
    target: &str,
) -> Result<EtaMaclaurin, ExpansionError> {
    check_vars(c)?;
    let mut order = basis_order(c, terms);
    loop {
        let mut basis = XiPowers::new(order)?;
        match maclaurin_with(&mut basis, c, terms, target) {
            Err(ExpansionError::Series(SeriesError::OrderExhausted)) if order < 4 * terms + 64 => order += terms.max(4),
            r => return r,
        }
    }
}

/// Ratio-test data for the radius of convergence.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct RadiusEstimate {
    /// `|c_{M-2} / c_{M-1}|` from the last two coefficients.
    pub ratio: f64,
    /// Intercept of the least-squares line `r_n = R + s/n` over the tail.
    pub fit: f64,
    pub slope: f64,
    pub tail: usize,
}

impl RadiusEstimate {
    /// The extrapolated radius.
    pub fn estimate(&self) -> f64 {
        self.fit
    }
}

fn abs(x: f64) -> f64 {
    if x < 0.0 {
        -x
    } else {
        x
    }
}

pub fn radius_estimate(m: &EtaMaclaurin) -> Result<RadiusEstimate, ExpansionError> {
    radius_of_coeffs(m.terms())
}

pub fn radius_of_coeffs(c: &[Rational]) -> Result<RadiusEstimate, ExpansionError> {
    let n = c.len();
    if n < MIN_RADIUS_TERMS {
        return Err(ExpansionError::RadiusData(MIN_RADIUS_TERMS));
    }
    let tail = n / 2;
    let mut pts = Vec::with_capacity(tail);
    for k in n - tail..n {
        if c[k].is_zero() || c[k - 1].is_zero() {
            return Err(ExpansionError::RadiusData(MIN_RADIUS_TERMS));
        }
        let r = (&c[k - 1] / &c[k]).to_f64().unwrap_or(f64::NAN);
        pts.push((1.0 / k as f64, abs(r)));
    }
    let ratio = pts[pts.len() - 1].1;
    let len = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / len;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / len;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    Ok(RadiusEstimate {
        ratio,
        fit: my - slope * mx,
        slope,
        tail,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{parse_ratfunc, rat};

    #[test]
    fn xi_leading_terms() {
        let s = xi_eta_series(3).unwrap();
        assert_eq!(s.coeff(0), int(1));
        assert_eq!(s.coeff(1), rat(2, 5));
        assert_eq!(s.coeff(2), rat(-9, 175));
    }

    #[test]
    fn eta_of_w_binomial() {
        let e = TruncSeries::from_fn(Var::W, 3, e_coeff);
        let eta = e.pow_rational(2, 3).unwrap().shift(1).truncate(3);
        assert_eq!(eta.coeff(1), int(1));
        assert_eq!(eta.coeff(2), rat(2, 15));
    }

    #[test]
    fn constant_coefficient() {
        let one = XiEtaForm { value: parse_ratfunc("1").unwrap() };
        let m = maclaurin_of_coeff(&one, 4, "alpha0").unwrap();
        assert_eq!(m.terms(), &[int(1), int(0), int(0), int(0)]);
    }

    #[test]
    fn beta1_head() {
        let b1 = XiEtaForm { value: parse_ratfunc("(5*xi^3-6*eta*xi-5)/(48*eta^2)").unwrap() };
        let m = maclaurin_of_coeff(&b1, 3, "beta1").unwrap();
        assert_eq!(m.terms(), &[rat(-9, 560), rat(7, 1800), rat(-1359, 1078000)]);
    }

    #[test]
    fn geometric_radius() {
        let c: Vec<Rational> = (0..16).map(|k| rat(1, 1 << k)).collect();
        let r = radius_of_coeffs(&c).unwrap();
        assert!(abs(r.ratio - 2.0) < 0.02);
        assert!(abs(r.fit - 2.0) < 0.02);
        assert!(radius_of_coeffs(&c[..8]).is_err());
    }
}
