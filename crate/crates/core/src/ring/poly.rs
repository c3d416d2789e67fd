use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Rational, Var, NVARS};
use crate::error::RingError;

/// Exponent vector over the global variable list.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(pub(crate) [u16; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn var(v: Var, e: u16) -> Monomial {
        let mut m = Monomial::ONE;
        m.0[v.index()] = e;
        m
    }

    pub fn from_exponents(exps: [u16; NVARS]) -> Monomial {
        Monomial(exps)
    }

    #[inline]
    pub fn exp(&self, v: Var) -> u16 {
        self.0[v.index()]
    }

    pub fn exponents(&self) -> &[u16; NVARS] {
        &self.0
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    #[inline]
    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut r = self.0;
        for (a, b) in r.iter_mut().zip(o.0.iter()) {
            *a += *b;
        }
        Monomial(r)
    }

    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        let mut r = self.0;
        for (a, b) in r.iter_mut().zip(o.0.iter()) {
            if *a < *b {
                return None;
            }
            *a -= *b;
        }
        Some(Monomial(r))
    }

    pub fn gcd(&self, o: &Monomial) -> Monomial {
        let mut r = self.0;
        for (a, b) in r.iter_mut().zip(o.0.iter()) {
            *a = (*a).min(*b);
        }
        Monomial(r)
    }
}

impl Ord for Monomial {
    // graded lexicographic, s > t > w > b > u > eta > xi > x
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with rational coefficients.
///
/// Terms are kept sorted by decreasing monomial order with no zero
/// coefficients, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct MultiPoly {
    terms: Vec<(Monomial, Rational)>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(Monomial::ONE, c)
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v, 1), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            MultiPoly { terms: vec![(m, c)] }
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(it: I) -> Self {
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in it {
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Self::from_map(acc)
    }

    fn from_map(acc: BTreeMap<Monomial, Rational>) -> Self {
        MultiPoly {
            terms: acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// True for the zero polynomial and for nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    pub fn lc(&self) -> Rational {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms.iter().map(|(m, _)| m.exp(v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|(m, _)| m.degree()).unwrap_or(0)
    }

    pub fn contains(&self, v: Var) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(v) > 0)
    }

    pub fn variables(&self) -> Vec<Var> {
        Var::ALL.iter().copied().filter(|v| self.contains(*v)).collect()
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, c * r)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(mm, cc)| (mm.mul(m), cc * c)).collect(),
        }
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate { -&t.1 } else { t.1.clone() };
            out.push((t.0, c));
        }
        MultiPoly { terms: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let p = ca * cb;
                match acc.entry(ma.mul(mb)) {
                    alloc::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(p);
                    }
                    alloc::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += p;
                    }
                }
            }
        }
        Self::from_map(acc)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn derivative(&self, v: Var) -> Self {
        let idx = v.index();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut mm = *m;
            mm.0[idx] = e - 1;
            terms.push((mm, c * Rational::from_integer(BigInt::from(e))));
        }
        // lowering one exponent can reorder terms of different degree
        Self::from_terms(terms)
    }

    /// Evaluates at a full assignment; `values[i]` belongs to the variable of index `i`.
    pub fn eval(&self, values: &[Option<Rational>; NVARS]) -> Result<Rational, RingError> {
        let mut powers: [Vec<Rational>; NVARS] = Default::default();
        for v in Var::ALL {
            let d = self.degree_in(v) as usize;
            if d == 0 {
                continue;
            }
            let x = values[v.index()].clone().ok_or(RingError::Unassigned(v))?;
            let table = &mut powers[v.index()];
            table.push(Rational::one());
            for k in 1..=d {
                let next = &table[k - 1] * &x;
                table.push(next);
            }
        }
        let mut sum = Rational::zero();
        for (m, c) in &self.terms {
            let mut p = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    p *= &powers[i][e as usize];
                }
            }
            sum += p;
        }
        Ok(sum)
    }

    /// Substitutes a rational value for one variable.
    pub fn eval_var(&self, v: Var, x: &Rational) -> Self {
        let d = self.degree_in(v) as usize;
        if d == 0 {
            return self.clone();
        }
        let mut table = vec![Rational::one()];
        for k in 1..=d {
            let next = &table[k - 1] * x;
            table.push(next);
        }
        Self::from_terms(self.terms.iter().map(|(m, c)| {
            let mut mm = *m;
            let e = mm.0[v.index()] as usize;
            mm.0[v.index()] = 0;
            (mm, c * &table[e])
        }))
    }

    /// Coefficients in powers of `v`; entry `k` multiplies `v^k` and is free of `v`.
    pub fn to_univariate(&self, v: Var) -> Vec<MultiPoly> {
        let d = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let mut mm = *m;
            let e = mm.0[v.index()] as usize;
            mm.0[v.index()] = 0;
            buckets[e].push((mm, c.clone()));
        }
        buckets
            .into_iter()
            .map(|mut ts| {
                // removing a common variable keeps relative order within a bucket
                ts.sort_by(|a, b| b.0.cmp(&a.0));
                MultiPoly { terms: ts }
            })
            .collect()
    }

    pub fn from_univariate(v: Var, coeffs: &[MultiPoly]) -> Self {
        let mut terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            let vk = Monomial::var(v, k as u16);
            for (m, cc) in &c.terms {
                terms.push((m.mul(&vk), cc.clone()));
            }
        }
        Self::from_terms(terms)
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &MultiPoly) -> Option<MultiPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (dm, dc) = d.terms[0].clone();
        if d.terms.len() == 1 {
            let inv = dc.recip();
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                terms.push((m.div(&dm)?, c * &inv));
            }
            return Some(MultiPoly { terms });
        }
        let inv = dc.recip();
        let mut rem = self.clone();
        let mut q = Vec::new();
        while let Some((rm, rc)) = rem.terms.first().cloned() {
            let m = rm.div(&dm)?;
            let c = rc * &inv;
            rem = rem.sub(&d.mul_term(&m, &c));
            q.push((m, c));
        }
        Some(MultiPoly { terms: q })
    }

    /// Smallest exponent of every variable across all terms.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let Some(first) = it.next() else {
            return Monomial::ONE;
        };
        it.fold(first.0, |acc, (m, _)| acc.gcd(m))
    }

    pub fn div_monomial(&self, m: &Monomial) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(mm, c)| (mm.div(m).expect("monomial divides every term"), c.clone()))
                .collect(),
        }
    }

    /// Writes `self = c * p` with `p` integral, primitive and with positive leading coefficient.
    pub fn integer_normalize(&self) -> (Rational, MultiPoly) {
        if self.is_zero() {
            return (Rational::zero(), Self::zero());
        }
        let (l, g) = integer_scale(core::iter::once(self));
        let mut c = Rational::new(g, l);
        if self.terms[0].1.is_negative() {
            c = -c;
        }
        let inv = c.recip();
        (c, self.scale(&inv))
    }

    /// Negates the variables in `vars`.
    pub fn reflect(&self, vars: &[Var]) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let odd = vars.iter().map(|v| m.exp(*v) as u32).sum::<u32>() % 2 == 1;
                    (*m, if odd { -c } else { c.clone() })
                })
                .collect(),
        }
    }

    /// Rewrites `from^(2k)` as `to^k`; `None` if some exponent of `from` is odd.
    pub fn square_to(&self, from: Var, to: Var) -> Option<MultiPoly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let e = m.exp(from);
            if e % 2 == 1 {
                return None;
            }
            let mut mm = *m;
            mm.0[from.index()] = 0;
            mm.0[to.index()] += e / 2;
            terms.push((mm, c.clone()));
        }
        Some(Self::from_terms(terms))
    }
}

/// Returns `(lcm of denominators, gcd of scaled numerators)` over all coefficients.
pub(crate) fn integer_scale<'a, I: Iterator<Item = &'a MultiPoly> + Clone>(polys: I) -> (BigInt, BigInt) {
    let mut l = BigInt::one();
    for p in polys.clone() {
        for (_, c) in &p.terms {
            if !c.denom().is_one() {
                l = l.lcm(c.denom());
            }
        }
    }
    let mut g = BigInt::zero();
    for p in polys {
        for (_, c) in &p.terms {
            let n = c.numer() * (&l / c.denom());
            g = g.gcd(&n);
            if g.is_one() {
                return (l, g);
            }
        }
    }
    (l, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, rat};

    fn x() -> MultiPoly {
        MultiPoly::var(Var::X)
    }
    fn t() -> MultiPoly {
        MultiPoly::var(Var::T)
    }

    #[test]
    fn grlex_orders_by_degree_first() {
        let a = Monomial::var(Var::XI, 3);
        let b = Monomial::var(Var::ETA, 1).mul(&Monomial::var(Var::XI, 1));
        assert!(a > b);
        assert!(Monomial::var(Var::ETA, 1) > Monomial::var(Var::XI, 1));
    }

    #[test]
    fn add_cancels_to_zero() {
        let p = x().add(&MultiPoly::one());
        assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn product_and_exact_division() {
        let p = x().add(&MultiPoly::one());
        let q = x().sub(&t()).scale(&int(3));
        let pq = p.mul(&q);
        assert_eq!(pq.exact_div(&q), Some(p.clone()));
        assert_eq!(pq.exact_div(&p), Some(q));
        assert_eq!(pq.exact_div(&x().add(&MultiPoly::constant(int(2)))), None);
    }

    #[test]
    fn derivative_and_eval() {
        // d/dx (x^3 + 2 x t) = 3x^2 + 2t
        let p = x().pow(3).add(&x().mul(&t()).scale(&int(2)));
        let d = p.derivative(Var::X);
        let mut vals: [Option<Rational>; NVARS] = Default::default();
        vals[Var::X.index()] = Some(rat(1, 2));
        vals[Var::T.index()] = Some(int(5));
        assert_eq!(d.eval(&vals).unwrap(), rat(3, 4) + int(10));
        vals[Var::T.index()] = None;
        assert_eq!(d.eval(&vals), Err(RingError::Unassigned(Var::T)));
    }

    #[test]
    fn univariate_round_trip() {
        let p = x().pow(2).mul(&t()).add(&t().pow(3)).add(&x());
        let u = p.to_univariate(Var::X);
        assert_eq!(u.len(), 3);
        assert_eq!(MultiPoly::from_univariate(Var::X, &u), p);
    }

    #[test]
    fn integer_normalization() {
        let p = x().scale(&rat(-2, 3)).add(&MultiPoly::constant(rat(4, 9)));
        let (c, q) = p.integer_normalize();
        assert_eq!(c, rat(-2, 9));
        assert_eq!(q, x().scale(&int(3)).sub(&MultiPoly::constant(int(2))));
    }

    #[test]
    fn reflect_and_square() {
        let b = MultiPoly::var(Var::B);
        let p = b.pow(2).add(&b);
        assert_eq!(p.reflect(&[Var::B]), b.pow(2).sub(&b));
        assert_eq!(p.square_to(Var::B, Var::ETA), None);
        assert_eq!(b.pow(4).square_to(Var::B, Var::ETA), Some(MultiPoly::var(Var::ETA).pow(2)));
    }
}
