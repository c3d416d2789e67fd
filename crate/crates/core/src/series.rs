//! Truncated power series over an exact coefficient ring.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::SeriesError;
use crate::ring::{Coeff, Rational, Var};

/// `c_0 + c_1 x + ... + c_K x^K + O(x^{K+1})`.
///
/// The stored length is the truncation contract: trailing zeros are kept.
#[derive(Clone, PartialEq, Debug)]
pub struct TruncSeries<C: Coeff> {
    coeffs: Vec<C>,
    var: Var,
}

impl<C: Coeff> TruncSeries<C> {
    /// Series of order `coeffs.len() - 1`. An empty list is read as the zero series of order 0.
    pub fn new(var: Var, mut coeffs: Vec<C>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(C::zero());
        }
        TruncSeries { coeffs, var }
    }

    /// Pads or truncates `coeffs` to exactly `order + 1` entries.
    pub fn with_order(var: Var, mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order + 1, C::zero());
        TruncSeries { coeffs, var }
    }

    pub fn from_fn(var: Var, order: usize, f: impl FnMut(usize) -> C) -> Self {
        TruncSeries {
            coeffs: (0..=order).map(f).collect(),
            var,
        }
    }

    pub fn zero(var: Var, order: usize) -> Self {
        Self::with_order(var, Vec::new(), order)
    }

    pub fn one(var: Var, order: usize) -> Self {
        Self::with_order(var, vec![C::one()], order)
    }

    /// The series variable itself.
    pub fn identity(var: Var, order: usize) -> Self {
        Self::with_order(var, vec![C::zero(), C::one()], order)
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    /// Index of the first nonzero coefficient, `None` if zero to the truncation order.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::with_order(self.var, self.coeffs[..=order.min(self.order())].to_vec(), order.min(self.order()))
    }

    /// Renames the series variable.
    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    fn check(&self, o: &Self) -> Result<usize, SeriesError> {
        if self.var != o.var {
            return Err(SeriesError::VariableMismatch(self.var, o.var));
        }
        Ok(self.order().min(o.order()))
    }

    pub fn add(&self, o: &Self) -> Result<Self, SeriesError> {
        let k = self.check(o)?;
        Ok(Self::from_fn(self.var, k, |i| self.coeffs[i].add(&o.coeffs[i])))
    }

    pub fn sub(&self, o: &Self) -> Result<Self, SeriesError> {
        let k = self.check(o)?;
        Ok(Self::from_fn(self.var, k, |i| self.coeffs[i].sub(&o.coeffs[i])))
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.var, self.order(), |i| self.coeffs[i].neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_fn(self.var, self.order(), |i| self.coeffs[i].mul(c))
    }

    /// Multiplies by `x^k`; the order grows by `k`.
    pub fn shift(&self, k: usize) -> Self {
        let mut c = vec![C::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        Self::new(self.var, c)
    }

    pub fn mul(&self, o: &Self) -> Result<Self, SeriesError> {
        let k = self.check(o)?;
        Ok(self.mul_trunc(o, k))
    }

    fn mul_trunc(&self, o: &Self, k: usize) -> Self {
        let mut out = vec![C::zero(); k + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(k + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(k + 1 - i) {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        TruncSeries {
            coeffs: out,
            var: self.var,
        }
    }

    /// Quotient `self / d` with the common power of the variable cancelled.
    ///
    /// The result has order `min(self.order, d.order) - valuation(d)`.
    pub fn div(&self, d: &Self) -> Result<Self, SeriesError> {
        let k = self.check(d)?;
        let vd = d.valuation().filter(|&v| v <= k).ok_or(SeriesError::ZeroDivisor)?;
        let order = k - vd;
        if let Some(va) = self.valuation().filter(|&v| v <= k) {
            if va < vd {
                return Err(SeriesError::NonRemovable { num: va, den: vd });
            }
        }
        let a = &self.coeffs[vd..=k];
        let b = &d.coeffs[vd..=k];
        let inv = b[0].inv().ok_or(SeriesError::ZeroDivisor)?;
        let mut q: Vec<C> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = a[n].clone();
            for j in 1..=n {
                if !b[j].is_zero() {
                    acc = acc.sub(&b[j].mul(&q[n - j]));
                }
            }
            q.push(acc.mul(&inv));
        }
        Ok(TruncSeries {
            coeffs: q,
            var: self.var,
        })
    }

    /// `outer(inner(x))`; the result lives in `inner`'s variable.
    pub fn compose(outer: &Self, inner: &Self) -> Result<Self, SeriesError> {
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstant);
        }
        let k = outer.order().min(inner.order());
        let inner = inner.truncate(k);
        let mut acc = Self::with_order(inner.var, vec![outer.coeffs[k].clone()], k);
        for c in outer.coeffs[..k].iter().rev() {
            acc = acc.mul_trunc(&inner, k);
            acc.coeffs[0] = acc.coeffs[0].add(c);
        }
        Ok(acc)
    }

    /// Compositional inverse `g` with `self(g(y)) = y` to the truncation order.
    ///
    /// Lagrange inversion: with `self = x h(x)`, `n g_n = [x^{n-1}] h^{-n}`.
    pub fn revert(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstant);
        }
        let k = self.order();
        if k == 0 {
            return Err(SeriesError::OrderExhausted);
        }
        if self.coeffs[1].inv().is_none() {
            return Err(SeriesError::NotInvertible);
        }
        let h = Self::new(self.var, self.coeffs[1..].to_vec());
        let q = Self::one(self.var, k - 1).div(&h)?;
        let mut g = Self::zero(self.var, k);
        let mut pw = q.clone();
        for n in 1..=k {
            g.coeffs[n] = pw.coeffs[n - 1].scale(&Rational::new(1.into(), n.into()));
            if n < k {
                pw = pw.mul_trunc(&q, k - 1);
            }
        }
        Ok(g)
    }

    /// `self^(p/q)` for a series with constant term one, via
    /// `k g_k = sum_{i=1..k} (r i - (k - i)) f_i g_{k-i}`, `r = p/q`.
    pub fn pow_rational(&self, p: i64, q: u64) -> Result<Self, SeriesError> {
        if self.coeffs[0] != C::one() {
            return Err(SeriesError::ConstantNotOne);
        }
        let r = Rational::new(p.into(), q.into());
        let k = self.order();
        let mut g: Vec<C> = Vec::with_capacity(k + 1);
        g.push(C::one());
        for n in 1..=k {
            let mut acc = C::zero();
            for i in 1..=n {
                if self.coeffs[i].is_zero() {
                    continue;
                }
                let w = &r * Rational::from_integer(i.into()) - Rational::from_integer((n - i).into());
                acc = acc.add(&self.coeffs[i].mul(&g[n - i]).scale(&w));
            }
            g.push(acc.scale(&Rational::new(1.into(), n.into())));
        }
        Ok(TruncSeries {
            coeffs: g,
            var: self.var,
        })
    }

    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(self.var, 0);
        }
        Self::from_fn(self.var, self.order() - 1, |i| {
            self.coeffs[i + 1].scale(&Rational::from_integer((i + 1).into()))
        })
    }
}
