//! Independent route to the expansion coefficients of a rational amplitude:
//! kernels `A_n`, `B_n` and residues at the poles of `f0`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::bleistein::{alpha_beta, CoeffProvider, CoeffTable};
use crate::error::ExpansionError;
use crate::ring::{factored, int, parse_ratfunc, MultiPoly, Rational, RatFunc, UniPoly, Var};

/// Kernels of order `n`.
#[derive(Clone, PartialEq, Debug)]
pub struct KernelPair {
    pub n: usize,
    pub a: RatFunc,
    pub b: RatFunc,
}

impl KernelPair {
    /// `A_0 = s/(s^2-eta)`, `B_0 = 1/(s^2-eta)`.
    pub fn initial() -> Self {
        let d = s2_minus_eta();
        KernelPair {
            n: 0,
            a: RatFunc::new(MultiPoly::var(Var::S), d.clone()).expect("nonzero"),
            b: RatFunc::new(MultiPoly::one(), d).expect("nonzero"),
        }
    }
}

fn s2_minus_eta() -> MultiPoly {
    MultiPoly::var(Var::S).pow(2).sub(&MultiPoly::var(Var::ETA))
}

/// `R_{n+1} = -1/(s^2-eta) * dR_n/ds`, applied to both kernels.
pub fn next_kernel(k: &KernelPair) -> KernelPair {
    let f = RatFunc::new(MultiPoly::constant(int(-1)), s2_minus_eta()).expect("nonzero");
    KernelPair {
        n: k.n + 1,
        a: f.mul(&k.a.differentiate(Var::S)),
        b: f.mul(&k.b.differentiate(Var::S)),
    }
}

/// Residue of `f` (a function of `s`) at a simple pole `p`: `num(p)/den'(p)`.
pub fn residue_at_simple_pole(f: &RatFunc, p: &RatFunc) -> Result<RatFunc, ExpansionError> {
    let den = RatFunc::from_poly(f.den().clone());
    let at = |g: &RatFunc| g.substitute(Var::S, p).map_err(ExpansionError::from);
    if !at(&den)?.is_zero() {
        return Err(ExpansionError::NotAPole(factored(p)));
    }
    let dd = at(&den.differentiate(Var::S))?;
    if dd.is_zero() {
        return Err(ExpansionError::MultiplePole(factored(p)));
    }
    let n = at(&RatFunc::from_poly(f.num().clone()))?;
    Ok(n.checked_div(&dd)?)
}

fn check_t_only(f0: &RatFunc) -> Result<(), ExpansionError> {
    match f0.variables().into_iter().find(|v| *v != Var::T) {
        Some(v) => Err(ExpansionError::UnexpectedVariable(v)),
        None => Ok(()),
    }
}

/// Taylor data of a rational `f0(t)` at `t = ±b`, by repeated exact differentiation.
#[derive(Clone, Debug)]
pub struct TaylorProvider {
    f0: RatFunc,
    pw: Vec<RatFunc>,
    pm: Vec<RatFunc>,
}

impl TaylorProvider {
    /// Precomputes coefficients `k = 0..=max_k`.
    pub fn new(f0: &RatFunc, max_k: usize) -> Result<Self, ExpansionError> {
        check_t_only(f0)?;
        let b = RatFunc::var(Var::B);
        let mb = b.neg();
        let mut pw = Vec::with_capacity(max_k + 1);
        let mut pm = Vec::with_capacity(max_k + 1);
        let mut d = f0.clone();
        let mut kfact = Rational::one();
        for k in 0..=max_k {
            if k > 0 {
                d = d.differentiate(Var::T);
                kfact *= int(k as i64);
            }
            let inv = kfact.recip();
            pw.push(d.substitute(Var::T, &b)?.scale(&inv));
            let sign = if k % 2 == 0 { inv } else { -inv };
            pm.push(d.substitute(Var::T, &mb)?.scale(&sign));
        }
        Ok(TaylorProvider { f0: f0.clone(), pw, pm })
    }
}

impl CoeffProvider for TaylorProvider {
    type Coeff = RatFunc;
    fn b(&self) -> RatFunc {
        RatFunc::var(Var::B)
    }
    fn pw(&self, k: usize) -> Result<RatFunc, ExpansionError> {
        self.pw.get(k).cloned().ok_or(ExpansionError::ProviderExhausted(k))
    }
    fn pm(&self, k: usize) -> Result<RatFunc, ExpansionError> {
        self.pm.get(k).cloned().ok_or(ExpansionError::ProviderExhausted(k))
    }
    fn describe(&self) -> String {
        format!("f0(t) = {}", factored(&self.f0))
    }
}

/// Integration-by-parts table for a rational `f0(t)`, returned in `eta = b^2`.
pub fn taylor_alpha_beta(f0: &RatFunc, order: usize) -> Result<CoeffTable<RatFunc>, ExpansionError> {
    let prov = TaylorProvider::new(f0, 2 * order)?;
    alpha_beta(&prov, order, vec![Var::B])?.b_to_eta()
}

/// Same as [`taylor_alpha_beta`], with `f0` given in infix form.
pub fn taylor_alpha_beta_str(f0: &str, order: usize) -> Result<CoeffTable<RatFunc>, ExpansionError> {
    taylor_alpha_beta(&parse_ratfunc(f0)?, order)
}

fn uni_of(p: &MultiPoly, v: Var) -> UniPoly<RatFunc> {
    UniPoly::new(p.to_univariate(v).into_iter().map(RatFunc::from_poly).collect())
}

fn uni_rational(p: &MultiPoly, v: Var) -> UniPoly<Rational> {
    UniPoly::new(
        p.to_univariate(v)
            .into_iter()
            .map(|c| c.constant_value().expect("coefficients free of other symbols"))
            .collect(),
    )
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let e = &n / &d;
            if e != d {
                out.push(e);
            }
        }
        d += 1;
    }
    out
}

/// Distinct rational roots of a polynomial with rational coefficients.
fn rational_roots(q: &UniPoly<Rational>) -> Vec<Rational> {
    let mut roots = Vec::new();
    let Some(deg) = q.degree() else {
        return roots;
    };
    if deg == 0 {
        return roots;
    }
    let l = q.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = q.coeffs().iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
    let lo = ints.iter().position(|c| !c.is_zero()).expect("nonzero polynomial");
    if lo > 0 {
        roots.push(Rational::zero());
    }
    let a0 = &ints[lo];
    let an = &ints[deg];
    for p in divisors(a0) {
        for qd in divisors(an) {
            for sgn in [1i32, -1] {
                let r = Rational::new(&p * BigInt::from(sgn), qd.clone());
                if !roots.contains(&r) && q.eval(&r).is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    roots
}

/// Power sums `p_0..p_{d-1}` of the roots of a monic polynomial of degree `d`.
fn power_sums(q: &UniPoly<Rational>) -> Vec<Rational> {
    let d = q.degree().unwrap_or(0);
    let c = q.coeffs();
    let mut p: Vec<Rational> = vec![int(d as i64)];
    for k in 1..d {
        let mut acc = int(k as i64) * &c[d - k];
        for i in 1..k {
            acc += &c[d - i] * &p[k - i];
        }
        p.push(-acc);
    }
    p
}

/// Sum of `kernel * P/Q` residues over the roots of `rest`, a square-free factor of `Q`,
/// as a trace in `Q(eta)[s]/(rest)`.
fn trace_residues(
    kernel: &RatFunc,
    p: &UniPoly<RatFunc>,
    dq: &UniPoly<RatFunc>,
    rest: &UniPoly<Rational>,
    sums: &[Rational],
) -> Result<RatFunc, ExpansionError> {
    let lift = |u: &UniPoly<Rational>| UniPoly::new(u.coeffs().iter().map(|c| RatFunc::constant(c.clone())).collect());
    let m = lift(rest);
    let num = uni_of(kernel.num(), Var::S).mul(p);
    let den = uni_of(kernel.den(), Var::S).mul(dq);
    let inv = den
        .inv_mod(&m)
        .ok_or_else(|| ExpansionError::NotAPole(String::from("shared root of kernel and f0")))?;
    let h = num.rem(&m).expect("monic modulus").mul(&inv).rem(&m).expect("monic modulus");
    let mut acc = RatFunc::zero();
    for (i, hi) in h.coeffs().iter().enumerate() {
        acc = acc.add(&hi.scale(&sums[i]));
    }
    Ok(acc)
}

/// `α_n = -Σ Res A_n f0`, `β_n = -Σ Res B_n f0` over the poles of `f0`, for `n = 0..=N`.
pub fn oracle_alpha_beta(f0: &RatFunc, order: usize) -> Result<CoeffTable<RatFunc>, ExpansionError> {
    check_t_only(f0)?;
    let fs = f0.substitute(Var::T, &RatFunc::var(Var::S))?;
    let qs = uni_rational(fs.den(), Var::S);
    let ps = uni_rational(fs.num(), Var::S);
    let dq_deg = qs.degree().unwrap_or(0);
    if !fs.is_zero() && ps.degree().unwrap_or(0) + 1 > dq_deg {
        return Err(ExpansionError::InsufficientDecay);
    }

    let roots = rational_roots(&qs);
    let mut rest = qs.clone();
    for r in &roots {
        let lin = UniPoly::new(vec![-r.clone(), int(1)]);
        let (quo, rem) = rest.divrem(&lin).expect("nonzero");
        debug_assert!(rem.is_zero());
        rest = quo;
        if rest.eval(r).is_zero() {
            return Err(ExpansionError::MultiplePole(crate::ring::rational_str(r)));
        }
    }
    let rest = rest.monic();
    let irr = rest.degree().unwrap_or(0) > 0;
    if irr {
        let (g, _, _) = UniPoly::ext_gcd(&rest, &rest.derivative());
        if g.degree() != Some(0) {
            return Err(ExpansionError::MultiplePole(String::from("irrational pole")));
        }
    }
    let sums = power_sums(&rest);
    let lift = |u: &UniPoly<Rational>| UniPoly::new(u.coeffs().iter().map(|c| RatFunc::constant(c.clone())).collect::<Vec<_>>());
    let p_up = lift(&ps);
    let dq_up = lift(&qs.derivative());

    let total = |kernel: &RatFunc| -> Result<RatFunc, ExpansionError> {
        let g = kernel.mul(&fs);
        let mut acc = RatFunc::zero();
        for r in &roots {
            acc = acc.add(&residue_at_simple_pole(&g, &RatFunc::constant(r.clone()))?);
        }
        if irr {
            acc = acc.add(&trace_residues(kernel, &p_up, &dq_up, &rest, &sums)?);
        }
        Ok(acc.neg())
    };

    let mut k = KernelPair::initial();
    let mut alphas = Vec::with_capacity(order + 1);
    let mut betas = Vec::with_capacity(order + 1);
    for n in 0..=order {
        if fs.is_zero() {
            alphas.push(RatFunc::zero());
            betas.push(RatFunc::zero());
        } else {
            alphas.push(total(&k.a)?);
            betas.push(total(&k.b)?);
        }
        if n < order {
            k = next_kernel(&k);
        }
    }
    Ok(CoeffTable {
        alphas,
        betas,
        variables: vec![Var::ETA],
        source: format!("f0(t) = {}", factored(f0)),
    })
}
