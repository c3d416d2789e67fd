use alloc::string::String;
use alloc::vec::Vec;

use crate::bleistein::CoeffProvider;
use crate::error::ExpansionError;
use crate::ring::{int, parse_ratfunc, rat, Rational, RatFunc, Var};

const FLIP: [Var; 2] = [Var::B, Var::U];

/// `t` as a function of `(b, u)`.
pub fn t_of_bu() -> RatFunc {
    parse_ratfunc("(4*b^2+u^4)/(4*b^2-u^4)").expect("static expression")
}

/// `xi` as a function of `(b, u)`.
pub fn xi_of_bu() -> RatFunc {
    parse_ratfunc("(u^4+4*b^2)/(4*u^2)").expect("static expression")
}

/// Taylor coefficients about `w = b` of the saddle map `s(w)` and of `sqrt(s)`,
/// both in the root-free variables `(b, u)`.
#[derive(Clone, Debug)]
pub struct PcfSeriesCache {
    s_plus: Vec<RatFunc>,
    sqrt_s: Vec<RatFunc>,
}

impl PcfSeriesCache {
    /// Builds `s_k^+` and `S_k` for `k = 0..=depth`.
    pub fn build(depth: usize) -> Result<Self, ExpansionError> {
        let depth = depth.max(1);
        let s_plus = s_plus_series(depth)?;
        let sqrt_s = sqrt_s_series(&s_plus);
        Ok(PcfSeriesCache { s_plus, sqrt_s })
    }

    pub fn depth(&self) -> usize {
        self.s_plus.len() - 1
    }

    pub fn s_plus(&self) -> &[RatFunc] {
        &self.s_plus
    }

    pub fn sqrt_s(&self) -> &[RatFunc] {
        &self.sqrt_s
    }

    /// `s_k^-`: `s_k^+` with `(b, u) -> (-b, -u)`.
    pub fn s_minus(&self, k: usize) -> Option<RatFunc> {
        self.s_plus.get(k).map(|s| s.reflect(&FLIP))
    }

    /// `(p~_k^{(1)}, p~_k^{(2)})` with `p~_k^{(1)} = (k+1) S_{k+1}`.
    pub fn p_tilde(&self, k: usize) -> Result<(RatFunc, RatFunc), ExpansionError> {
        let s = self.sqrt_s.get(k + 1).ok_or(ExpansionError::ProviderExhausted(k))?;
        let pw = s.scale(&int(k as i64 + 1));
        let mut pm = pw.reflect(&FLIP);
        if k % 2 == 1 {
            pm = pm.neg();
        }
        Ok((pw, pm))
    }
}

/// Solves the `x^k` coefficient of `(s^2 - 2ts + 1) s' - x(x + 2b) s = 0`, `x = w - b`,
/// for `s_k`, one order at a time.
pub fn s_plus_series(depth: usize) -> Result<Vec<RatFunc>, ExpansionError> {
    let b = RatFunc::var(Var::B);
    let t = t_of_bu();
    let s0 = parse_ratfunc("(2*b+u^2)/(2*b-u^2)")?;
    let s1 = parse_ratfunc("(2*b+u^2)/(2*u)")?;
    let mut s = alloc::vec![s0.clone(), s1.clone()];
    let s0t = s0.sub(&t);
    // p[j]: coefficient of x^j in s^2 - 2ts + 1
    let mut p: Vec<RatFunc> = alloc::vec![
        s0.mul(&s0).sub(&t.mul(&s0).scale(&int(2))).add(&RatFunc::one()),
        s0t.mul(&s1).scale(&int(2)),
    ];
    debug_assert!(p[0].is_zero());
    for k in 2..=depth {
        let mut pk0 = RatFunc::zero();
        for i in 1..k {
            pk0 = pk0.add(&s[i].mul(&s[k - i]));
        }
        let mut r = pk0.mul(&s1);
        for j in 2..k {
            r = r.add(&p[j].mul(&s[k - j + 1]).scale(&int((k - j + 1) as i64)));
        }
        r = r.sub(&s[k - 2]).sub(&b.mul(&s[k - 1]).scale(&int(2)));
        let lead = s1.mul(&s0t).scale(&int(2 * (k as i64 + 1)));
        if lead.is_zero() {
            return Err(ExpansionError::DegenerateSolve(k));
        }
        let sk = r.neg().checked_div(&lead)?;
        p.push(pk0.add(&s0t.mul(&sk).scale(&int(2))));
        s.push(sk);
    }
    Ok(s)
}

/// `S_0 = 4u/(2b - u^2)`, `S_k = (1/(k s_0)) sum_{j=1..k} (3j/2 - k) s_j S_{k-j}`.
pub fn sqrt_s_series(s: &[RatFunc]) -> Vec<RatFunc> {
    let mut out = alloc::vec![parse_ratfunc("4*u/(2*b-u^2)").expect("static expression")];
    let s0inv = s[0].inv().expect("s_0 is nonzero");
    for k in 1..s.len() {
        let mut acc = RatFunc::zero();
        for j in 1..=k {
            let w: Rational = rat(3 * j as i64, 2) - int(k as i64);
            acc = acc.add(&s[j].mul(&out[k - j]).scale(&w));
        }
        out.push(acc.mul(&s0inv).scale(&rat(1, k as i64)));
    }
    out
}

/// Coefficients `x^0..x^K` of `(s^2 - 2ts + 1) s' - x(x + 2b) s` for a truncated `s`.
pub fn s_ode_residual(s: &[RatFunc]) -> Vec<RatFunc> {
    let b = RatFunc::var(Var::B);
    let t = t_of_bu();
    let kmax = s.len() - 1;
    let get = |i: usize| s.get(i).cloned().unwrap_or_else(RatFunc::zero);
    let p: Vec<RatFunc> = (0..=kmax)
        .map(|j| {
            let mut acc = RatFunc::zero();
            for i in 0..=j {
                acc = acc.add(&get(i).mul(&get(j - i)));
            }
            acc = acc.sub(&t.mul(&get(j)).scale(&int(2)));
            if j == 0 {
                acc = acc.add(&RatFunc::one());
            }
            acc
        })
        .collect();
    (0..=kmax)
        .map(|k| {
            let mut acc = RatFunc::zero();
            for j in 0..=k {
                acc = acc.add(&p[j].mul(&get(k - j + 1)).scale(&int((k - j + 1) as i64)));
            }
            if k >= 2 {
                acc = acc.sub(&get(k - 2));
            }
            if k >= 1 {
                acc = acc.sub(&b.mul(&get(k - 1)).scale(&int(2)));
            }
            acc
        })
        .collect()
}

/// Coefficients `x^0..x^{K-1}` of `2 s S' - S s'`.
pub fn sqrt_s_ode_residual(s: &[RatFunc], sq: &[RatFunc]) -> Vec<RatFunc> {
    let kmax = s.len().min(sq.len()) - 1;
    (0..kmax)
        .map(|k| {
            let mut acc = RatFunc::zero();
            for i in 0..=k {
                let j = k - i;
                let d_sq = sq[j + 1].scale(&int(j as i64 + 1));
                let d_s = s[j + 1].scale(&int(j as i64 + 1));
                acc = acc.add(&s[i].mul(&d_sq).scale(&int(2))).sub(&sq[i].mul(&d_s));
            }
            acc
        })
        .collect()
}

/// Taylor data of `f~(w) = dS_+/dw` at `w = ±b`.
#[derive(Clone, Debug)]
pub struct PcfProvider {
    cache: PcfSeriesCache,
}

impl PcfProvider {
    pub fn new(cache: PcfSeriesCache) -> Self {
        PcfProvider { cache }
    }

    /// Provider able to serve `k = 0..=max_k`.
    pub fn with_depth(max_k: usize) -> Result<Self, ExpansionError> {
        Ok(Self::new(PcfSeriesCache::build(max_k + 1)?))
    }

    pub fn cache(&self) -> &PcfSeriesCache {
        &self.cache
    }
}

impl CoeffProvider for PcfProvider {
    type Coeff = RatFunc;
    fn b(&self) -> RatFunc {
        RatFunc::var(Var::B)
    }
    fn pw(&self, k: usize) -> Result<RatFunc, ExpansionError> {
        Ok(self.cache.p_tilde(k)?.0)
    }
    fn pm(&self, k: usize) -> Result<RatFunc, ExpansionError> {
        Ok(self.cache.p_tilde(k)?.1)
    }
    fn describe(&self) -> String {
        String::from("parabolic cylinder U(-mu^2/2, mu*t*sqrt(2)), amplitude dS/dw normalized by f(b)")
    }
}
