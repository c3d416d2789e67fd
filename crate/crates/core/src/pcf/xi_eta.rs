use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::cache::xi_of_bu;
use crate::error::{ExpansionError, RingError};
use crate::ring::{int, Monomial, MultiPoly, Rational, RatFunc, Var};

/// A coefficient written in `eta = b^2` and `xi = (u^4 + 4b^2)/(4u^2)`.
#[derive(Clone, PartialEq, Debug)]
pub struct XiEtaForm {
    pub value: RatFunc,
}

impl XiEtaForm {
    /// Image under `eta -> b^2`, `xi -> (u^4 + 4b^2)/(4u^2)`.
    pub fn pullback(&self) -> Result<RatFunc, RingError> {
        pullback(&self.value)
    }
}

pub fn pullback(v: &RatFunc) -> Result<RatFunc, RingError> {
    let b2 = RatFunc::var(Var::B).mul(&RatFunc::var(Var::B));
    v.substitute(Var::ETA, &b2)?.substitute(Var::XI, &xi_of_bu())
}

/// Highest degree tried in each of `xi` and `eta`.
pub const MAX_DEGREE: usize = 48;
/// Total-degree bound of the general `N(eta, xi) / D(eta, xi)` search.
pub const MAX_GENERAL_DEGREE: usize = 8;
const CONFIRM: usize = 3;

/// Monomial coefficients of a Newton form with the given nodes.
fn newton_to_monomial(coef: &[Rational], xs: &[Rational]) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::new();
    for k in (0..coef.len()).rev() {
        // out = out * (x - xs[k]) + coef[k]
        let mut next = alloc::vec![Rational::zero(); out.len() + 1];
        for (i, c) in out.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * &xs[k];
        }
        next[0] += &coef[k];
        out = next;
    }
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

/// Interpolates a vector-valued polynomial from a node stream, stopping once
/// `CONFIRM` consecutive new nodes add nothing. Returns monomial coefficients per component.
fn interpolate<F>(mut sample: F, max_deg: usize) -> Option<Vec<Vec<Rational>>>
where
    F: FnMut() -> Option<(Rational, Vec<Rational>)>,
{
    let mut xs: Vec<Rational> = Vec::new();
    // per component: last row of the divided-difference table, and the Newton coefficients
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut coefs: Vec<Vec<Rational>> = Vec::new();
    let mut quiet = 0;
    while xs.len() < max_deg + 1 + CONFIRM {
        let (x, y) = sample()?;
        if rows.len() < y.len() {
            let n = xs.len();
            rows.resize(y.len(), alloc::vec![Rational::zero(); n]);
            coefs.resize(y.len(), alloc::vec![Rational::zero(); n]);
        }
        xs.push(x);
        let n = xs.len() - 1;
        let mut fresh = true;
        for (c, row) in rows.iter_mut().enumerate() {
            let mut next = Vec::with_capacity(n + 1);
            next.push(y.get(c).cloned().unwrap_or_else(Rational::zero));
            for l in 1..=n {
                let d = (&next[l - 1] - &row[l - 1]) / (&xs[n] - &xs[n - l]);
                next.push(d);
            }
            fresh &= next[n].is_zero();
            coefs[c].push(next[n].clone());
            *row = next;
        }
        if n > 0 && fresh {
            quiet += 1;
            if quiet == CONFIRM {
                let keep = n + 1 - CONFIRM;
                return Some(coefs.iter().map(|t| newton_to_monomial(&t[..keep], &xs[..keep])).collect());
            }
        } else {
            quiet = 0;
        }
    }
    None
}

fn xi_at(b: &Rational, u: &Rational) -> Rational {
    let u2 = u * u;
    (&u2 * &u2 + int(4) * b * b) / (int(4) * u2)
}

/// Interpolates `g(b, u)` as a polynomial in `(eta, xi)`, if it is one of moderate degree.
fn interpolate_eta_xi(g: &RatFunc) -> Option<MultiPoly> {
    let mut b_node = 0i64;
    let mut by_b = || -> Option<(Rational, Vec<Rational>)> {
        {
            b_node += 1;
            let b = int(b_node);
            // integer u with u^2 > 2b gives increasing, hence distinct, xi
            let mut u_node = 1i64;
            while u_node * u_node <= 2 * b_node {
                u_node += 1;
            }
            u_node -= 1;
            let mut by_u = || -> Option<(Rational, Vec<Rational>)> {
                for _ in 0..8 {
                    u_node += 1;
                    let u = int(u_node);
                    match g.evaluate(&[(Var::B, b.clone()), (Var::U, u.clone())]) {
                        Ok(v) => return Some((xi_at(&b, &u), alloc::vec![v])),
                        Err(_) => continue,
                    }
                }
                None
            };
            match interpolate(&mut by_u, MAX_DEGREE) {
                Some(mut c) => return Some((&b * &b, c.pop().unwrap_or_default())),
                None => return None,
            }
        }
    };
    let coeffs = interpolate(&mut by_b, MAX_DEGREE)?;
    let mut terms = Vec::new();
    for (j, col) in coeffs.iter().enumerate() {
        for (i, c) in col.iter().enumerate() {
            if !c.is_zero() {
                let m = Monomial::var(Var::ETA, i as u16).mul(&Monomial::var(Var::XI, j as u16));
                terms.push((m, c.clone()));
            }
        }
    }
    Some(MultiPoly::from_terms(terms))
}

/// Rewrites a `(b, u)` coefficient invariant under `(b, u) -> (-b, -u)` as a rational
/// function of `(eta, xi)` with a power of `eta` as denominator, verified by exact pullback.
pub fn to_xi_eta(v: &RatFunc) -> Result<XiEtaForm, ExpansionError> {
    if let Some(x) = v.variables().into_iter().find(|x| *x != Var::B && *x != Var::U) {
        return Err(ExpansionError::UnexpectedVariable(x));
    }
    if v.reflect(&[Var::B, Var::U]) != *v {
        return Err(ExpansionError::NotInvariant);
    }
    // images of (eta, xi) are even in b and in u, and fixed by u -> 2b/u
    let two_b_over_u = RatFunc::var(Var::B).scale(&int(2)).checked_div(&RatFunc::var(Var::U))?;
    if v.reflect(&[Var::B]) != *v || v.reflect(&[Var::U]) != *v || v.substitute(Var::U, &two_b_over_u)? != *v {
        return Err(ExpansionError::NoXiEtaForm);
    }
    if v.constant_value().is_some() {
        return Ok(XiEtaForm { value: v.clone() });
    }
    // a pullback of P/eta^m has a monomial denominator b^{2m} u^{2k}
    let monomial_den = v.den().len() == 1;
    match if monomial_den { eta_power_form(v)? } else { None } {
        Some(f) => Ok(f),
        None => general_form(v),
    }
}

/// Monomials `eta^i xi^j` with `i + j <= d`.
fn monomials(d: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    for tot in 0..=d {
        for i in 0..=tot {
            out.push(Monomial::var(Var::ETA, i as u16).mul(&Monomial::var(Var::XI, (tot - i) as u16)));
        }
    }
    out
}

const PRIME: u64 = (1 << 61) - 1;

fn mulm(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn invm(a: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a, PRIME - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm(acc, base);
        }
        base = mulm(base, base);
        e >>= 1;
    }
    acc
}

fn to_mod(r: &Rational) -> Option<u64> {
    let p = BigInt::from(PRIME);
    let red = |x: &BigInt| (((x % &p) + &p) % &p).to_u64();
    let (n, d) = (red(r.numer())?, red(r.denom())?);
    (d != 0).then(|| mulm(n, invm(d)))
}

/// `n/d` with `|n|, d < 2^30` congruent to `a`, if any.
fn reconstruct(a: u64) -> Option<Rational> {
    const BOUND: i128 = 1 << 30;
    let (mut r0, mut r1) = (PRIME as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 >= BOUND {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() >= BOUND {
        return None;
    }
    let (n, d) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
    Some(Rational::new(BigInt::from(n), BigInt::from(d)))
}

/// The kernel of `rows` mod the prime, if it is one-dimensional.
fn kernel_mod(mut rows: Vec<Vec<u64>>, ncols: usize) -> Option<Vec<u64>> {
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
            continue;
        };
        rows.swap(r, k);
        let inv = invm(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = mulm(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + PRIME - mulm(f, *y)) % PRIME;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    if pivots.len() + 1 != ncols {
        return None;
    }
    let free = (0..ncols).find(|c| !pivots.contains(c))?;
    let mut out = alloc::vec![0u64; ncols];
    out[free] = 1;
    for (i, &c) in pivots.iter().enumerate() {
        out[c] = (PRIME - rows[i][free]) % PRIME;
    }
    Some(out)
}

/// Sample values `(eta, xi, v)` at integer `(b, u)`.
fn samples(v: &RatFunc, count: usize) -> Vec<(u64, u64, u64)> {
    let mut out = Vec::with_capacity(count);
    let mut k = 0i64;
    while out.len() < count && k < 64 * count as i64 + 64 {
        k += 1;
        let b = int(k % 11 + 1);
        let u = int(3 * k + 1);
        let Ok(val) = v.evaluate(&[(Var::B, b.clone()), (Var::U, u.clone())]) else {
            continue;
        };
        if let (Some(e), Some(x), Some(y)) = (to_mod(&(&b * &b)), to_mod(&xi_at(&b, &u)), to_mod(&val)) {
            out.push((e, x, y));
        }
    }
    out
}

/// Solves `N - v D = 0` at sample points for `(deg N, deg D)` of growing total degree,
/// modulo a prime, then lifts and verifies the candidate exactly.
fn general_form(v: &RatFunc) -> Result<XiEtaForm, ExpansionError> {
    let pts = samples(v, monomials(MAX_GENERAL_DEGREE).len() * 2 + 8);
    let mut mismatch = false;
    for total in 1..=2 * MAX_GENERAL_DEGREE {
        for dn in total.saturating_sub(MAX_GENERAL_DEGREE)..=total.min(MAX_GENERAL_DEGREE) {
            let (nm, dm) = (monomials(dn), monomials(total - dn));
            let ncols = nm.len() + dm.len();
            if pts.len() < ncols + 4 {
                continue;
            }
            let powm = |mo: &Monomial, e: u64, x: u64| -> u64 {
                let mut acc = 1u64;
                for _ in 0..mo.exp(Var::ETA) {
                    acc = mulm(acc, e);
                }
                for _ in 0..mo.exp(Var::XI) {
                    acc = mulm(acc, x);
                }
                acc
            };
            let rows: Vec<Vec<u64>> = pts[..ncols + 4]
                .iter()
                .map(|&(e, x, y)| {
                    let mut row: Vec<u64> = nm.iter().map(|mo| powm(mo, e, x)).collect();
                    row.extend(dm.iter().map(|mo| (PRIME - mulm(y, powm(mo, e, x))) % PRIME));
                    row
                })
                .collect();
            let Some(sol) = kernel_mod(rows, ncols) else {
                continue;
            };
            let Some(lifted) = sol.iter().map(|&a| reconstruct(a)).collect::<Option<Vec<_>>>() else {
                mismatch = true;
                continue;
            };
            let num = MultiPoly::from_terms(nm.iter().cloned().zip(lifted[..nm.len()].iter().cloned()));
            let den = MultiPoly::from_terms(dm.iter().cloned().zip(lifted[nm.len()..].iter().cloned()));
            if den.is_zero() {
                continue;
            }
            let cand = RatFunc::new(num, den)?;
            if pullback(&cand)? == *v {
                return Ok(XiEtaForm { value: cand });
            }
            mismatch = true;
        }
    }
    Err(if mismatch {
        ExpansionError::PullbackMismatch
    } else {
        ExpansionError::NoXiEtaForm
    })
}

/// Candidates `P(eta, xi) / eta^m`, the shape taken by the expansion coefficients.
fn eta_power_form(v: &RatFunc) -> Result<Option<XiEtaForm>, ExpansionError> {
    let bexp = v.den().terms().iter().map(|(m, _)| m.exp(Var::B)).min().unwrap_or(0) as usize;
    let seed = bexp.div_ceil(2);
    for m in seed..=seed + 3 {
        let g = v.mul(&RatFunc::var(Var::B).pow(2 * m as i32)?);
        let Some(num) = interpolate_eta_xi(&g) else {
            continue;
        };
        let den = MultiPoly::var(Var::ETA).pow(m as u32);
        let cand = RatFunc::new(num, den)?;
        if pullback(&cand)? == *v {
            return Ok(Some(XiEtaForm { value: cand }));
        }
    }
    Ok(None)
}
