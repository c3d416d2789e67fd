use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed};

use super::gcd::gcd;
use super::poly::{integer_scale, Monomial, MultiPoly};
use super::{Coeff, Rational, Var, NVARS};
use crate::error::RingError;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Quotient of polynomials in lowest terms.
///
/// Numerator and denominator are coprime, have integer coefficients with no
/// common integer factor, and the denominator's leading coefficient is positive.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, RingError> {
        if den.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = gcd(&num, &den);
        if g.is_one() {
            Ok(Self::coprime(num, den))
        } else {
            Ok(Self::coprime(
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            ))
        }
    }

    /// Normalizes integer content and sign of an already coprime pair.
    fn coprime(num: MultiPoly, den: MultiPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (l, g) = integer_scale([&num, &den].into_iter());
        let mut k = Rational::new(l, g);
        if den.lc().is_negative() {
            k = -k;
        }
        if k.is_one() {
            RatFunc { num, den }
        } else {
            RatFunc {
                num: num.scale(&k),
                den: den.scale(&k),
            }
        }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: MultiPoly::zero(),
            den: MultiPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(<Rational as One>::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::coprime(MultiPoly::constant(c), MultiPoly::one())
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(MultiPoly::var(v))
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        Self::coprime(p, MultiPoly::one())
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        let n = self.num.constant_value()?;
        let d = self.den.constant_value()?;
        Some(n / d)
    }

    pub fn contains(&self, v: Var) -> bool {
        self.num.contains(v) || self.den.contains(v)
    }

    pub fn variables(&self) -> Vec<Var> {
        Var::ALL.iter().copied().filter(|v| self.contains(*v)).collect()
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::coprime(self.num.scale(r), self.den.clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Self::new(self.num.add(&o.num), self.den.clone()).expect("nonzero denominator");
        }
        let g = gcd(&self.den, &o.den);
        if g.is_one() {
            let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
            return Self::coprime(num, self.den.mul(&o.den));
        }
        let b1 = self.den.exact_div(&g).expect("gcd divides");
        let d1 = o.den.exact_div(&g).expect("gcd divides");
        let num = self.num.mul(&d1).add(&o.num.mul(&b1));
        if num.is_zero() {
            return Self::zero();
        }
        let den = b1.mul(&o.den);
        let g2 = gcd(&num, &g);
        if g2.is_one() {
            Self::coprime(num, den)
        } else {
            Self::coprime(
                num.exact_div(&g2).expect("gcd divides"),
                den.exact_div(&g2).expect("gcd divides"),
            )
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let cut = |p: &MultiPoly, g: &MultiPoly| {
            if g.is_one() {
                p.clone()
            } else {
                p.exact_div(g).expect("gcd divides")
            }
        };
        let num = cut(&self.num, &g1).mul(&cut(&o.num, &g2));
        let den = cut(&self.den, &g2).mul(&cut(&o.den, &g1));
        Self::coprime(num, den)
    }

    pub fn inv(&self) -> Result<Self, RingError> {
        if self.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        Ok(Self::coprime(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self, RingError> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn arith(&self, o: &Self, op: ArithOp) -> Result<Self, RingError> {
        Ok(match op {
            ArithOp::Add => self.add(o),
            ArithOp::Sub => self.sub(o),
            ArithOp::Mul => self.mul(o),
            ArithOp::Div => self.checked_div(o)?,
        })
    }

    pub fn pow(&self, e: i32) -> Result<Self, RingError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        // coprime parts stay coprime under powers
        Ok(Self::coprime(base.num.pow(k), base.den.pow(k)))
    }

    pub fn differentiate(&self, v: Var) -> Self {
        if !self.contains(v) {
            return Self::zero();
        }
        let dn = self.num.derivative(v);
        if self.den.is_constant() {
            return Self::coprime(dn, self.den.clone());
        }
        let dd = self.den.derivative(v);
        // d(N/D) = (N'D - ND')/D^2; only gcd(D, D') can cancel against D^2
        let g = gcd(&self.den, &dd);
        let d1 = self.den.exact_div(&g).expect("gcd divides");
        let dd1 = dd.exact_div(&g).expect("gcd divides");
        let num = dn.mul(&d1).sub(&self.num.mul(&dd1));
        Self::new(num, d1.mul(&self.den)).expect("nonzero denominator")
    }

    /// Replaces `v` by `g`.
    pub fn substitute(&self, v: Var, g: &RatFunc) -> Result<Self, RingError> {
        if !self.contains(v) {
            return Ok(self.clone());
        }
        let (hn, dn) = homogenize(&self.num, v, g);
        let (hd, dd) = homogenize(&self.den, v, g);
        if hd.is_zero() {
            return Err(RingError::ZeroDenominator(v));
        }
        let q = &g.den;
        let (num, den) = if dn >= dd {
            (hn, hd.mul(&q.pow(dn - dd)))
        } else {
            (hn.mul(&q.pow(dd - dn)), hd)
        };
        Self::new(num, den)
    }

    /// Replaces a single variable by a rational number.
    pub fn substitute_value(&self, v: Var, x: &Rational) -> Result<Self, RingError> {
        if !self.contains(v) {
            return Ok(self.clone());
        }
        let d = self.den.eval_var(v, x);
        if d.is_zero() {
            return Err(RingError::ZeroDenominator(v));
        }
        Self::new(self.num.eval_var(v, x), d)
    }

    pub fn evaluate(&self, assignment: &[(Var, Rational)]) -> Result<Rational, RingError> {
        let mut vals: [Option<Rational>; NVARS] = Default::default();
        for (v, x) in assignment {
            vals[v.index()] = Some(x.clone());
        }
        let d = self.den.eval(&vals)?;
        if d.is_zero() {
            return Err(RingError::Pole);
        }
        Ok(self.num.eval(&vals)? / d)
    }

    /// Image under `v -> -v` for every `v` in `vars`.
    pub fn reflect(&self, vars: &[Var]) -> Self {
        Self::coprime(self.num.reflect(vars), self.den.reflect(vars))
    }

    /// Rewrites a function even in `from` as a function of `to = from^2`.
    /// Returns `None` when the function is not even in `from`.
    pub fn square_to(&self, from: Var, to: Var) -> Option<Self> {
        let odd = |p: &MultiPoly| p.terms().iter().all(|(m, _)| m.exp(from) % 2 == 1);
        let (n, d) = if !self.num.is_zero() && odd(&self.num) && odd(&self.den) {
            let f = Monomial::var(from, 1);
            (
                self.num.mul_term(&f, &<Rational as One>::one()),
                self.den.mul_term(&f, &<Rational as One>::one()),
            )
        } else {
            (self.num.clone(), self.den.clone())
        };
        let n = n.square_to(from, to)?;
        let d = d.square_to(from, to)?;
        Some(Self::new(n, d).expect("nonzero denominator"))
    }
}

/// `q^d * P(p/q)` for `g = p/q`, with `d = deg_v P`.
fn homogenize(poly: &MultiPoly, v: Var, g: &RatFunc) -> (MultiPoly, u32) {
    let coeffs = poly.to_univariate(v);
    let d = coeffs.len() - 1;
    let (p, q) = (&g.num, &g.den);
    let mut ppow = Vec::with_capacity(d + 1);
    let mut qpow = Vec::with_capacity(d + 1);
    ppow.push(MultiPoly::one());
    qpow.push(MultiPoly::one());
    for k in 1..=d {
        ppow.push(ppow[k - 1].mul(p));
        qpow.push(qpow[k - 1].mul(q));
    }
    let mut acc = MultiPoly::zero();
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        acc = acc.add(&c.mul(&ppow[k]).mul(&qpow[d - k]));
    }
    (acc, d as u32)
}

impl From<MultiPoly> for RatFunc {
    fn from(p: MultiPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl From<Rational> for RatFunc {
    fn from(r: Rational) -> Self {
        RatFunc::constant(r)
    }
}

impl Coeff for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        RatFunc::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        RatFunc::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        RatFunc::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        RatFunc::inv(self).ok()
    }
    fn from_rational(r: &Rational) -> Self {
        RatFunc::constant(r.clone())
    }
    fn scale(&self, r: &Rational) -> Self {
        RatFunc::scale(self, r)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::render::plain(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, parse_ratfunc, rat};

    fn p(s: &str) -> RatFunc {
        parse_ratfunc(s).unwrap()
    }

    #[test]
    fn partial_fractions_add() {
        assert_eq!(p("1/(t+1)").add(&p("1/(t-1)")), p("2*t/(t^2-1)"));
    }

    #[test]
    fn self_subtraction_is_zero() {
        let f = p("(s^2+eta)/(s^2-eta)^3");
        assert!(f.sub(&f).is_zero());
    }

    #[test]
    fn division_cancels() {
        let q = p("(t^2-eta)/(t-1)").checked_div(&p("t+1")).unwrap();
        assert_eq!(q, p("(t^2-eta)/(t^2-1)"));
        assert_eq!(q.num().lc(), int(1));
        assert_eq!(p("1").checked_div(&RatFunc::zero()), Err(RingError::DivisionByZero));
    }

    #[test]
    fn canonical_sign_and_content() {
        let f = p("(2*t+2)/(-4*t+6)");
        assert_eq!(f.den().lc(), int(2));
        assert_eq!(f, p("(t+1)/(3-2*t)").neg().neg());
        assert_eq!(f.num(), &p("-t-1").num().clone());
    }

    #[test]
    fn derivatives() {
        assert_eq!(p("1/(s-t)").differentiate(Var::S), p("-1/(s-t)^2"));
        assert_eq!(p("s/(s^2-eta)").differentiate(Var::S), p("-(s^2+eta)/(s^2-eta)^2"));
        assert_eq!(p("1/(s^2-eta)").differentiate(Var::ETA), p("1/(s^2-eta)^2"));
        assert!(p("s").differentiate(Var::T).is_zero());
    }

    #[test]
    fn substitutions() {
        assert_eq!(p("eta").substitute(Var::ETA, &p("b^2")).unwrap(), p("b^2"));
        let t = p("(4*b^2+u^4)/(4*b^2-u^4)");
        let r = p("1/(t+1)").substitute(Var::T, &t).unwrap();
        assert_eq!(r, p("(4*b^2-u^4)/(8*b^2)"));
        assert_eq!(r.evaluate(&[(Var::B, int(1)), (Var::U, int(1))]).unwrap(), rat(3, 8));
        let f = p("(x^2+1)/(x-3)");
        assert_eq!(f.substitute(Var::X, &p("x")).unwrap(), f);
        assert_eq!(
            p("1/(t-1)").substitute(Var::T, &p("1")),
            Err(RingError::ZeroDenominator(Var::T))
        );
    }

    #[test]
    fn evaluation() {
        assert_eq!(p("(eta+1)/(eta-1)^3").evaluate(&[(Var::ETA, int(0))]).unwrap(), int(-1));
        assert_eq!(
            p("1/(s^2-eta)").evaluate(&[(Var::S, int(-1)), (Var::ETA, int(0))]).unwrap(),
            int(1)
        );
        assert_eq!(
            p("s/(s^2-eta)").evaluate(&[(Var::S, int(2)), (Var::ETA, int(1))]).unwrap(),
            rat(2, 3)
        );
        assert_eq!(p("1/(eta-1)").evaluate(&[(Var::ETA, int(1))]), Err(RingError::Pole));
        assert_eq!(p("1/(eta-1)").evaluate(&[]), Err(RingError::Unassigned(Var::ETA)));
    }

    #[test]
    fn even_functions_fold_to_squares() {
        assert_eq!(p("b/(b^3-b)").square_to(Var::B, Var::ETA), Some(p("1/(eta-1)")));
        assert_eq!(p("b^3/(b^2+1)").square_to(Var::B, Var::ETA), None);
        let f = p("(2*b+u^2)/(2*b-u^2)");
        assert_eq!(f.reflect(&[Var::B, Var::U]).mul(&f), RatFunc::one());
    }
}
