//! Expansion coefficients from Taylor data at the two saddle points `t = ±b`.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::ExpansionError;
use crate::ring::{Coeff, Rational, RatFunc, Var};

/// Taylor coefficients of `f(t)` and `f(-t)` about `t = b`.
pub trait CoeffProvider {
    type Coeff: Coeff;

    /// The expansion point `b` as a ring element.
    fn b(&self) -> Self::Coeff;
    /// Coefficient of `(t-b)^k` in `f(t)`.
    fn pw(&self, k: usize) -> Result<Self::Coeff, ExpansionError>;
    /// Coefficient of `(t-b)^k` in `f(-t)`.
    fn pm(&self, k: usize) -> Result<Self::Coeff, ExpansionError>;
    fn describe(&self) -> String;
}

/// Provider backed by explicit coefficient lists.
#[derive(Clone, Debug)]
pub struct ListProvider<C: Coeff> {
    pub b: C,
    pub pw: Vec<C>,
    pub pm: Vec<C>,
    pub source: String,
}

impl<C: Coeff> CoeffProvider for ListProvider<C> {
    type Coeff = C;
    fn b(&self) -> C {
        self.b.clone()
    }
    fn pw(&self, k: usize) -> Result<C, ExpansionError> {
        self.pw.get(k).cloned().ok_or(ExpansionError::ProviderExhausted(k))
    }
    fn pm(&self, k: usize) -> Result<C, ExpansionError> {
        self.pm.get(k).cloned().ok_or(ExpansionError::ProviderExhausted(k))
    }
    fn describe(&self) -> String {
        self.source.clone()
    }
}

/// Coefficients `γ_k^{(n)}`, `δ_k^{(n)}` for `k = 0..=K_n`.
#[derive(Clone, PartialEq, Debug)]
pub struct GammaDeltaState<C: Coeff> {
    pub n: usize,
    pub gamma: Vec<C>,
    pub delta: Vec<C>,
}

impl<C: Coeff> GammaDeltaState<C> {
    /// Truncation index `K_n`.
    pub fn depth(&self) -> usize {
        self.gamma.len().saturating_sub(1)
    }
}

/// The pairs `(α_n, β_n)` for `n = 0..=N`.
#[derive(Clone, PartialEq, Debug)]
pub struct CoeffTable<C: Coeff> {
    pub alphas: Vec<C>,
    pub betas: Vec<C>,
    pub variables: Vec<Var>,
    pub source: String,
}

impl<C: Coeff> CoeffTable<C> {
    pub fn order(&self) -> usize {
        self.alphas.len().saturating_sub(1)
    }

    pub fn try_map<D: Coeff, E>(
        &self,
        variables: Vec<Var>,
        mut f: impl FnMut(&C) -> Result<D, E>,
    ) -> Result<CoeffTable<D>, E> {
        Ok(CoeffTable {
            alphas: self.alphas.iter().map(&mut f).collect::<Result<_, _>>()?,
            betas: self.betas.iter().map(&mut f).collect::<Result<_, _>>()?,
            variables,
            source: self.source.clone(),
        })
    }
}

impl CoeffTable<RatFunc> {
    /// Rewrites every entry, even in `b`, as a function of `eta = b^2`.
    pub fn b_to_eta(&self) -> Result<CoeffTable<RatFunc>, ExpansionError> {
        let mut vars: Vec<Var> = self.variables.iter().copied().filter(|v| *v != Var::B).collect();
        if !vars.contains(&Var::ETA) {
            vars.push(Var::ETA);
            vars.sort();
        }
        self.try_map(vars, |c| c.square_to(Var::B, Var::ETA).ok_or(ExpansionError::NotInvariant))
    }
}

/// `f^e_k = (pw(k) + pm(k))/2`, `f^o_k = (pw(k) - pm(k))/2` for `k = 0..=K`.
pub fn split_even_odd<P: CoeffProvider>(
    provider: &P,
    k_max: usize,
) -> Result<(Vec<P::Coeff>, Vec<P::Coeff>), ExpansionError> {
    let half = Rational::new(1.into(), 2.into());
    let mut fe = Vec::with_capacity(k_max + 1);
    let mut fo = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let w = provider.pw(k)?;
        let m = provider.pm(k)?;
        fe.push(w.add(&m).scale(&half));
        fo.push(w.sub(&m).scale(&half));
    }
    Ok((fe, fo))
}

/// Taylor coefficients of `f_o(t)/t` about `b`: `b f^{oe}_k = f^o_k - f^{oe}_{k-1}`.
pub fn oe_transform<C: Coeff>(fo: &[C], b: &C) -> Result<Vec<C>, ExpansionError> {
    let binv = b.inv().ok_or(ExpansionError::SingularB)?;
    let mut out: Vec<C> = Vec::with_capacity(fo.len());
    for (k, c) in fo.iter().enumerate() {
        let prev = if k == 0 { C::zero() } else { out[k - 1].clone() };
        out.push(c.sub(&prev).mul(&binv));
    }
    Ok(out)
}

/// Coefficients of `f` in powers of `t^2 - b^2`, split into even and odd parts.
pub fn init_gamma_delta<C: Coeff>(
    fe: &[C],
    foe: &[C],
    b: &C,
    k_max: usize,
) -> Result<GammaDeltaState<C>, ExpansionError> {
    if fe.len() <= k_max || foe.len() <= k_max {
        return Err(ExpansionError::ProviderExhausted(fe.len().min(foe.len())));
    }
    let binv = b.inv().ok_or(ExpansionError::SingularB)?;
    let mut bpow: Vec<C> = Vec::with_capacity(2 * k_max + 1);
    bpow.push(C::one());
    for m in 1..=2 * k_max {
        bpow.push(bpow[m - 1].mul(&binv));
    }
    let mut gamma = Vec::with_capacity(k_max + 1);
    let mut delta = Vec::with_capacity(k_max + 1);
    gamma.push(fe[0].clone());
    delta.push(foe[0].clone());
    for k in 1..=k_max {
        let mut g = C::zero();
        let mut d = C::zero();
        // walk j = k down to 1; weight at j = k is 2^{-k}
        let mut w = Rational::new(1.into(), num_bigint::BigInt::from(1u8) << k);
        for j in (1..=k).rev() {
            let bp = &bpow[2 * k - j];
            if !fe[j].is_zero() {
                g = g.add(&fe[j].mul(bp).scale(&w));
            }
            if !foe[j].is_zero() {
                d = d.add(&foe[j].mul(bp).scale(&w));
            }
            if j > 1 {
                let (j1, kk) = (j as i64, k as i64);
                w *= Rational::new((-(j1 - 1) * (2 * kk - j1)).into(), (2 * j1 * (kk - j1 + 1)).into());
            }
        }
        gamma.push(g);
        delta.push(d);
    }
    Ok(GammaDeltaState { n: 0, gamma, delta })
}

/// One integration-by-parts stage; the depth shrinks by two.
pub fn advance<C: Coeff>(state: &GammaDeltaState<C>, b: &C) -> Result<GammaDeltaState<C>, ExpansionError> {
    let len = state.gamma.len();
    if len < 3 {
        return Err(ExpansionError::InsufficientDepth(len));
    }
    let two_b2 = b.mul(b).scale(&Rational::from_integer(2.into()));
    let mut gamma = Vec::with_capacity(len - 2);
    let mut delta = Vec::with_capacity(len - 2);
    for k in 0..len - 2 {
        let r = |n: usize| Rational::from_integer(n.into());
        let g = state.delta[k + 1]
            .scale(&r(2 * k + 1))
            .add(&state.delta[k + 2].mul(&two_b2).scale(&r(k + 1)));
        gamma.push(g);
        delta.push(state.gamma[k + 2].scale(&r(2 * (k + 1))));
    }
    Ok(GammaDeltaState {
        n: state.n + 1,
        gamma,
        delta,
    })
}

/// `α_n = γ_0^{(n)}`, `β_n = δ_0^{(n)}` for `n = 0..=N`, from exactly `2N + 1`
/// provider entries on each side.
pub fn alpha_beta<P: CoeffProvider>(
    provider: &P,
    order: usize,
    variables: Vec<Var>,
) -> Result<CoeffTable<P::Coeff>, ExpansionError> {
    let k_max = 2 * order;
    let b = provider.b();
    let (fe, fo) = split_even_odd(provider, k_max)?;
    let foe = oe_transform(&fo, &b)?;
    let mut state = init_gamma_delta(&fe, &foe, &b, k_max)?;
    let mut alphas = Vec::with_capacity(order + 1);
    let mut betas = Vec::with_capacity(order + 1);
    for n in 0..=order {
        alphas.push(state.gamma[0].clone());
        betas.push(state.delta[0].clone());
        if n < order {
            state = advance(&state, &b)?;
        }
    }
    Ok(CoeffTable {
        alphas,
        betas,
        variables,
        source: provider.describe(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, parse_ratfunc};
    use alloc::string::ToString;
    use alloc::vec;

    fn p(s: &str) -> RatFunc {
        parse_ratfunc(s).unwrap()
    }

    fn list(pw: &[&str], pm: &[&str]) -> ListProvider<RatFunc> {
        ListProvider {
            b: RatFunc::var(Var::B),
            pw: pw.iter().map(|s| p(s)).collect(),
            pm: pm.iter().map(|s| p(s)).collect(),
            source: "list".to_string(),
        }
    }

    fn quartic() -> ListProvider<RatFunc> {
        let c = ["b^4", "4*b^3", "6*b^2", "4*b", "1"];
        list(&c, &c)
    }

    #[test]
    fn split_of_even_and_odd_inputs() {
        let (fe, fo) = split_even_odd(&quartic(), 4).unwrap();
        assert_eq!(fe, quartic().pw);
        assert!(fo.iter().all(|c| c.is_zero()));
        let cubic = list(&["b^3", "3*b^2", "3*b", "1"], &["-b^3", "-3*b^2", "-3*b", "-1"]);
        let (fe, fo) = split_even_odd(&cubic, 3).unwrap();
        assert!(fe.iter().all(|c| c.is_zero()));
        assert_eq!(fo, cubic.pw);
    }

    #[test]
    fn split_of_reciprocal() {
        let prov = list(&["1/(b+1)"], &["1/(1-b)"]);
        let (fe, fo) = split_even_odd(&prov, 0).unwrap();
        assert_eq!(fe[0], p("1/(1-b^2)"));
        assert_eq!(fo[0], p("-b/(1-b^2)"));
    }

    #[test]
    fn odd_over_t() {
        let b = RatFunc::var(Var::B);
        let fo: Vec<RatFunc> = ["b^3", "3*b^2", "3*b", "1"].iter().map(|s| p(s)).collect();
        assert_eq!(oe_transform(&fo, &b).unwrap(), vec![p("b^2"), p("2*b"), p("1"), p("0")]);
        assert_eq!(oe_transform(&[p("b"), p("1")], &b).unwrap(), vec![p("1"), p("0")]);
        assert_eq!(oe_transform(&[p("1")], &RatFunc::zero()), Err(ExpansionError::SingularB));
    }

    #[test]
    fn quartic_weights() {
        let prov = quartic();
        let b = prov.b();
        let (fe, fo) = split_even_odd(&prov, 4).unwrap();
        let foe = oe_transform(&fo, &b).unwrap();
        let st = init_gamma_delta(&fe, &foe, &b, 4).unwrap();
        assert_eq!(st.gamma, vec![p("b^4"), p("2*b^2"), p("1"), p("0"), p("0")]);
        assert!(st.delta.iter().all(|c| c.is_zero()));
        let next = advance(&st, &b).unwrap();
        assert!(next.gamma[0].is_zero());
        assert_eq!(next.delta[0], p("2"));
        assert_eq!(next.depth(), 2);
    }

    #[test]
    fn gamma_one_is_half_over_b() {
        let prov = list(&["0", "x"], &["0", "x"]);
        let b = prov.b();
        let (fe, fo) = split_even_odd(&prov, 1).unwrap();
        let foe = oe_transform(&fo, &b).unwrap();
        let st = init_gamma_delta(&fe, &foe, &b, 1).unwrap();
        assert_eq!(st.gamma[1], p("x/(2*b)"));
    }

    #[test]
    fn zero_state_stays_zero() {
        let st = GammaDeltaState {
            n: 0,
            gamma: vec![RatFunc::zero(); 5],
            delta: vec![RatFunc::zero(); 5],
        };
        let next = advance(&st, &RatFunc::var(Var::B)).unwrap();
        assert!(next.gamma.iter().chain(next.delta.iter()).all(|c| c.is_zero()));
        let short = GammaDeltaState {
            n: 0,
            gamma: vec![RatFunc::zero(); 2],
            delta: vec![RatFunc::zero(); 2],
        };
        assert_eq!(advance(&short, &RatFunc::var(Var::B)), Err(ExpansionError::InsufficientDepth(2)));
    }

    #[test]
    fn constant_input() {
        let prov = list(&["1", "0", "0"], &["1", "0", "0"]);
        let t = alpha_beta(&prov, 1, vec![Var::B]).unwrap();
        assert_eq!(t.alphas, vec![p("1"), p("0")]);
        assert_eq!(t.betas, vec![p("0"), p("0")]);
        assert!(alpha_beta(&prov, 2, vec![Var::B]).is_err());
    }

    #[test]
    fn rational_weights_match_closed_form() {
        // (-1)^{k-j} j (2k-j-1)! / (2^{2k-j} k! (k-j)!)
        let fact = |n: i64| (1..=n).fold(int(1), |a, k| a * int(k));
        for k in 1..=6i64 {
            let mut fe = vec![RatFunc::zero(); k as usize + 1];
            let foe = fe.clone();
            for j in 1..=k {
                fe.iter_mut().for_each(|c| *c = RatFunc::zero());
                fe[j as usize] = RatFunc::one();
                let st = init_gamma_delta(&fe, &foe, &RatFunc::one(), k as usize).unwrap();
                let sign = if (k - j) % 2 == 0 { int(1) } else { int(-1) };
                let expect = sign * int(j) * fact(2 * k - j - 1)
                    / (fact(k) * fact(k - j) * int(2).pow((2 * k - j) as i32));
                assert_eq!(st.gamma[k as usize], RatFunc::constant(expect));
            }
        }
    }
}
