use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::poly::MultiPoly;
use super::unipoly::UniPoly;
use super::{Rational, Var, NVARS};

/// Greatest common divisor over `Q[s,t,...]`, normalized to integer coefficients
/// with unit content and positive leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.integer_normalize().1;
    }
    if b.is_zero() {
        return a.integer_normalize().1;
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one();
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mg = ma.gcd(&mb);
    let a = a.div_monomial(&ma);
    let b = b.div_monomial(&mb);
    let g = gcd_rec(&a, &b);
    g.mul_term(&mg, &Rational::one()).integer_normalize().1
}

fn gcd_rec(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.integer_normalize().1;
    }
    if b.is_zero() {
        return a.integer_normalize().1;
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one();
    }
    if a == b {
        return a.integer_normalize().1;
    }
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if large.exact_div(small).is_some() {
        return small.integer_normalize().1;
    }

    let va = a.variables();
    let vb = b.variables();
    // a variable private to one side can only enter the gcd through its coefficients
    if let Some(v) = va.iter().find(|v| !vb.contains(v)) {
        return fold_coeffs(a, *v, b);
    }
    if let Some(v) = vb.iter().find(|v| !va.contains(v)) {
        return fold_coeffs(b, *v, a);
    }

    let v = *va
        .iter()
        .min_by_key(|v| a.degree_in(**v).max(b.degree_in(**v)))
        .expect("nonconstant polynomial has a variable");

    let ua = a.to_univariate(v);
    let ub = b.to_univariate(v);
    let ca = content(&ua);
    let cb = content(&ub);
    let c = gcd_rec(&ca, &cb);
    let pa = div_all(&ua, &ca);
    let pb = div_all(&ub, &cb);
    if coprime_images(&pa, &pb) {
        return c;
    }
    let g = prs(pa, pb);
    let g = if g.len() <= 1 {
        MultiPoly::one()
    } else {
        MultiPoly::from_univariate(v, &g)
    };
    c.mul(&g).integer_normalize().1
}

/// True when the images at some point keep both leading coefficients and are coprime;
/// the image of the gcd divides the gcd of the images, so the primitive parts are coprime.
fn coprime_images(a: &[MultiPoly], b: &[MultiPoly]) -> bool {
    const POINTS: [[i64; 3]; 3] = [[3, 5, 2], [-7, 11, 13], [17, -19, 23]];
    for pt in POINTS {
        let mut values: [Option<Rational>; NVARS] = Default::default();
        for v in Var::ALL {
            let i = v.index();
            values[i] = Some(Rational::from_integer((pt[i % 3] + 29 * (i as i64 / 3)).into()));
        }
        let image = |u: &[MultiPoly]| -> Option<UniPoly<Rational>> {
            let c: Vec<Rational> = u.iter().map(|x| x.eval(&values).ok()).collect::<Option<_>>()?;
            let p = UniPoly::new(c);
            (p.degree() == Some(u.len() - 1)).then_some(p)
        };
        let (Some(mut x), Some(mut y)) = (image(a), image(b)) else {
            continue;
        };
        while !y.is_zero() {
            let r = x.rem(&y).expect("nonzero divisor");
            x = y;
            y = r;
        }
        return x.degree() == Some(0);
    }
    false
}

fn fold_coeffs(p: &MultiPoly, v: Var, other: &MultiPoly) -> MultiPoly {
    let mut g = other.clone();
    for c in p.to_univariate(v).iter().rev() {
        if c.is_zero() {
            continue;
        }
        g = gcd_rec(c, &g);
        if g.is_constant() {
            return MultiPoly::one();
        }
    }
    g
}

/// Gcd of the coefficients of a univariate representation.
fn content(u: &[MultiPoly]) -> MultiPoly {
    let mut g = MultiPoly::zero();
    // sparse coefficients first tend to end the fold early
    let mut order: Vec<&MultiPoly> = u.iter().filter(|c| !c.is_zero()).collect();
    order.sort_by_key(|c| c.len());
    for c in order {
        g = gcd_rec(&g, c);
        if g.is_constant() {
            return MultiPoly::one();
        }
    }
    g
}

fn div_all(u: &[MultiPoly], c: &MultiPoly) -> Vec<MultiPoly> {
    if c.is_one() {
        return u.to_vec();
    }
    u.iter()
        .map(|x| x.exact_div(c).expect("content divides every coefficient"))
        .collect()
}

fn trim(u: &mut Vec<MultiPoly>) {
    while u.last().is_some_and(|c| c.is_zero()) {
        u.pop();
    }
}

fn primitive(mut u: Vec<MultiPoly>) -> Vec<MultiPoly> {
    trim(&mut u);
    let c = content(&u);
    let mut u = div_all(&u, &c);
    if let Some(l) = u.last() {
        let (k, _) = l.integer_normalize();
        let inv = k.recip();
        for x in u.iter_mut() {
            *x = x.scale(&inv);
        }
    }
    u
}

/// Sparse pseudo-remainder of `a` by `b` in the main variable.
fn prem(mut a: Vec<MultiPoly>, b: &[MultiPoly]) -> Vec<MultiPoly> {
    let db = b.len() - 1;
    let lb = &b[db];
    trim(&mut a);
    while a.len() > db {
        let da = a.len() - 1;
        let la = a[da].clone();
        let shift = da - db;
        for x in a.iter_mut() {
            *x = x.mul(lb);
        }
        for (i, bc) in b.iter().enumerate() {
            a[i + shift] = a[i + shift].sub(&bc.mul(&la));
        }
        trim(&mut a);
    }
    a
}

/// Primitive polynomial remainder sequence; returns the last nonzero element, primitive.
fn prs(a: Vec<MultiPoly>, b: Vec<MultiPoly>) -> Vec<MultiPoly> {
    let (mut a, mut b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    trim(&mut a);
    trim(&mut b);
    loop {
        if b.is_empty() {
            return primitive(a);
        }
        if b.len() == 1 {
            return b;
        }
        let r = prem(a, &b);
        a = b;
        b = primitive(r);
    }
}

/// Square-free decomposition `p = c * prod f_i^k_i` with integer-normalized factors.
/// Single-variable monomial factors are split off first.
pub(crate) fn square_free(p: &MultiPoly) -> (Rational, Vec<(MultiPoly, u32)>) {
    let mut out = Vec::new();
    if p.is_zero() {
        return (Rational::zero(), out);
    }
    sqf_rec(p, &mut out);
    let mut prod = MultiPoly::one();
    for (f, k) in &out {
        prod = prod.mul(&f.pow(*k));
    }
    (p.lc() / prod.lc(), out)
}

fn sqf_rec(p: &MultiPoly, out: &mut Vec<(MultiPoly, u32)>) {
    if p.is_constant() {
        return;
    }
    let m = p.monomial_content();
    for v in Var::ALL {
        let e = m.exp(v);
        if e > 0 {
            out.push((MultiPoly::var(v), e as u32));
        }
    }
    let mut p = p.div_monomial(&m);
    if p.is_constant() {
        return;
    }
    let v = p.variables()[0];
    let c = content(&p.to_univariate(v));
    if !c.is_constant() {
        sqf_rec(&c, out);
        p = p.exact_div(&c).expect("content divides");
    }
    yun(&p, v, out);
}

fn yun(f: &MultiPoly, v: Var, out: &mut Vec<(MultiPoly, u32)>) {
    let fp = f.derivative(v);
    let a = gcd(f, &fp);
    let mut b = f.exact_div(&a).expect("gcd divides");
    let c = fp.exact_div(&a).expect("gcd divides");
    let mut d = c.sub(&b.derivative(v));
    let mut i = 1;
    while !b.is_constant() {
        let a = gcd(&b, &d);
        if !a.is_constant() {
            out.push((a.clone(), i));
        }
        b = b.exact_div(&a).expect("gcd divides");
        let c = d.exact_div(&a).expect("gcd divides");
        d = c.sub(&b.derivative(v));
        i += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::int;

    fn v(x: Var) -> MultiPoly {
        MultiPoly::var(x)
    }
    fn c(n: i64) -> MultiPoly {
        MultiPoly::constant(int(n))
    }

    #[test]
    fn univariate_common_factor() {
        let t = v(Var::T);
        let a = t.sub(&c(1)).mul(&t.add(&c(2)));
        let b = t.sub(&c(1)).mul(&t.add(&c(3))).scale(&int(6));
        assert_eq!(gcd(&a, &b), t.sub(&c(1)));
    }

    #[test]
    fn bivariate_common_factor() {
        let s = v(Var::S);
        let eta = v(Var::ETA);
        let f = s.pow(2).sub(&eta);
        let a = f.pow(2).mul(&s.add(&c(1)));
        let b = f.mul(&s.sub(&eta)).mul(&eta);
        assert_eq!(gcd(&a, &b), f);
    }

    #[test]
    fn monomial_shortcut() {
        let b = v(Var::B);
        let u = v(Var::U);
        let a = b.pow(3).mul(&u.pow(2)).add(&b.pow(2).mul(&u));
        let m = b.pow(5).mul(&u.pow(7)).scale(&int(12));
        assert_eq!(gcd(&a, &m), b.pow(2).mul(&u));
    }

    #[test]
    fn coprime() {
        let x = v(Var::X);
        let y = v(Var::ETA);
        assert!(gcd(&x.add(&y), &x.sub(&y)).is_one());
        assert!(gcd(&x.add(&c(1)), &y.add(&c(1))).is_one());
    }

    #[test]
    fn square_free_parts() {
        let eta = v(Var::ETA);
        let xi = v(Var::XI);
        let e1 = eta.sub(&c(1));
        let p = e1.pow(5).mul(&eta.pow(3)).mul(&xi.add(&eta)).scale(&int(-40));
        let (k, fs) = square_free(&p);
        assert_eq!(k, int(-40));
        let mut prod = MultiPoly::constant(k);
        for (f, e) in &fs {
            prod = prod.mul(&f.pow(*e));
        }
        assert_eq!(prod, p);
        assert!(fs.contains(&(e1, 5)));
        assert!(fs.contains(&(eta, 3)));
    }
}
