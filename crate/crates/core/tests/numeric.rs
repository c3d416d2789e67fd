use airyexp_core::numeric::{
    airy_all, airy_pair, compare, eval_expansion, map_point, reference_u, to_f64, xi_at, BigFloat, CoeffEvaluator, Ctx,
    RM,
};
use airyexp_core::pcf::pcf_coeff_table;
use std::sync::OnceLock;

fn evaluator() -> &'static CoeffEvaluator {
    static E: OnceLock<CoeffEvaluator> = OnceLock::new();
    E.get_or_init(|| CoeffEvaluator::new(pcf_coeff_table(3).unwrap(), 200).unwrap())
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn big_rel(a: &BigFloat, b: &BigFloat) -> f64 {
    to_f64(&a.sub(b, 512, RM).div(b, 64, RM)).abs()
}

/// Ai(x) = (1/2pi) int exp((c+iy)^3/3 - x(c+iy)) dy along Re = c.
fn ai_contour(x: f64) -> f64 {
    let c = x.sqrt().max(0.5);
    let h = 0.01;
    let mut sum = 0.0;
    let n = 2000;
    for k in -n..=n {
        let y = k as f64 * h;
        // (c+iy)^3 = c^3 - 3cy^2 + i(3c^2 y - y^3)
        let re = (c * c * c - 3.0 * c * y * y) / 3.0 - x * c;
        let im = (3.0 * c * c * y - y * y * y) / 3.0 - x * y;
        sum += re.exp() * im.cos();
    }
    sum * h / (2.0 * std::f64::consts::PI)
}

#[test]
fn airy_constants() {
    let mut c = Ctx::new(128).unwrap();
    let zero = BigFloat::from_u64(0, 128);
    let (ai, aip) = airy_pair(&zero, &mut c).unwrap();
    let want_ai = 3f64.powf(-2.0 / 3.0) / statrs::function::gamma::gamma(2.0 / 3.0);
    let want_aip = -(3f64.powf(-1.0 / 3.0)) / statrs::function::gamma::gamma(1.0 / 3.0);
    assert!(rel(to_f64(&ai), want_ai) < 1e-12);
    assert!(rel(to_f64(&aip), want_aip) < 1e-12);
}

#[test]
fn airy_one_against_contour() {
    let mut c = Ctx::new(128).unwrap();
    let one = BigFloat::from_u64(1, 128);
    let (ai, _) = airy_pair(&one, &mut c).unwrap();
    let q = ai_contour(1.0);
    assert!(rel(to_f64(&ai), q) < 1e-10, "{} vs {q}", to_f64(&ai));
    assert!(rel(to_f64(&ai), 0.13529241631288141552) < 1e-15);
}

#[test]
fn airy_large_argument_decays() {
    let mut c = Ctx::new(128).unwrap();
    for y in ["35.8", "120"] {
        let yb = c.parse(y).unwrap();
        let v = airy_all(&yb, &mut c, 128).unwrap();
        assert!(v.ai.is_positive() && v.ai_prime.is_negative());
        // Ai'/Ai ~ -sqrt(y) - 1/(4y)
        let yf: f64 = y.parse().unwrap();
        let r = to_f64(&v.ai_prime.div(&v.ai, 64, RM));
        assert!(rel(r, -yf.sqrt() - 0.25 / yf) < 1e-3, "{y}: {r}");
    }
}

#[test]
fn mapping_examples_and_invariants() {
    let mut c = Ctx::new(200).unwrap();
    let one = BigFloat::from_u64(1, 200);
    let t1 = one.cosh(200, RM, c.consts());
    let m = map_point(&t1, &mut c).unwrap();
    let direct = (0.75 * (2f64.sinh() - 2.0)).powf(2.0 / 3.0);
    assert!(rel(to_f64(&m.eta), direct) < 1e-14);
    assert!(rel(to_f64(&m.theta), 1.0) < 1e-15);

    let t = c.parse("1.5").unwrap();
    let m = map_point(&t, &mut c).unwrap();
    let th = 1.5f64.acosh();
    assert!(rel(to_f64(&m.eta), (0.75 * ((2.0 * th).sinh() - 2.0 * th)).powf(2.0 / 3.0)) < 1e-12);
    assert!(rel(to_f64(&m.eta), 1.048) < 1e-3);

    for ts in ["1", "1.01", "1.1", "1.5", "2", "3"] {
        let t = c.parse(ts).unwrap();
        let m = map_point(&t, &mut c).unwrap();
        let w = 400;
        let ch = m.theta.cosh(w, RM, c.consts());
        let tt = m.t.mul(&m.t, w, RM);
        let a = tt.add(&BigFloat::from_f64(0.5, w), w, RM).neg();
        let e = m.theta.exp(w, RM, c.consts());
        let lhs = m.eta.sqrt(w, RM).mul(&m.eta, w, RM).mul(&BigFloat::from_u64(4, w), w, RM).div(&BigFloat::from_u64(3, w), w, RM);
        let two = m.theta.mul(&BigFloat::from_u64(2, w), w, RM);
        let rhs = two.sinh(w, RM, c.consts()).sub(&two, w, RM);
        let tol = 1e-55;
        assert!(to_f64(&ch.sub(&m.t, w, RM)).abs() < tol, "{ts}");
        assert!(to_f64(&a.sub(&m.a, w, RM)).abs() < tol, "{ts}");
        assert!(to_f64(&e.sub(&m.s_plus, w, RM)).abs() < tol, "{ts}");
        assert!(to_f64(&lhs.sub(&rhs, w, RM)).abs() < tol, "{ts}");
    }
}

#[test]
fn exponent_identity() {
    let mut c = Ctx::new(128).unwrap();
    let mut seed = 12345u64;
    for _ in 0..10 {
        seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let mu = 1.0 + (seed >> 40) as f64 / (1u64 << 24) as f64 * 30.0;
        let t = 1.0 + (seed & 0xffff) as f64 / 65536.0 * 3.0;
        let mub = BigFloat::from_f64(mu, 128);
        let tb = BigFloat::from_f64(t, 128);
        let m = map_point(&tb, &mut c).unwrap();
        let z = mub.mul(&mub, 128, RM).div(&BigFloat::from_u64(2, 128), 128, RM);
        let lhs = z.mul(&m.a, 256, RM).add(&z.mul(&tb.mul(&tb, 256, RM), 256, RM), 256, RM);
        let rhs = z.div(&BigFloat::from_u64(2, 128), 256, RM).neg();
        assert!(big_rel(&lhs, &rhs) < 1e-30);
    }
}

#[test]
fn reference_values() {
    let mut lo = Ctx::new(100).unwrap();
    let mut hi = Ctx::new(133).unwrap();
    let mu = lo.parse("6").unwrap();
    let t = lo.parse("1.3").unwrap();
    let a = reference_u(&mu, &t, &mut lo).unwrap();
    let b = reference_u(&mu, &t, &mut hi).unwrap();
    assert!(a.is_positive());
    assert!(big_rel(&a, &b) < 1e-28);
    assert!(rel(to_f64(&b), 27001.788685236713751557) < 1e-15);
}

#[test]
fn reference_satisfies_weber_equation() {
    // y'' = (x^2/4 + a) y with a = -mu^2/2, x = mu t sqrt2
    let mut c = Ctx::new(256).unwrap();
    let w = 256;
    let mu = c.parse("6").unwrap();
    let x0 = c.parse("11").unwrap();
    let h = c.parse("1e-12").unwrap();
    let s2mu = mu.mul(&BigFloat::from_u64(2, w).sqrt(w, RM), w, RM);
    let at = |x: &BigFloat, c: &mut Ctx| reference_u(&mu, &x.div(&s2mu, w, RM), c).unwrap();
    let um = at(&x0.sub(&h, w, RM), &mut c);
    let u0 = at(&x0, &mut c);
    let up = at(&x0.add(&h, w, RM), &mut c);
    let d2 = up.sub(&u0.mul(&BigFloat::from_u64(2, w), w, RM), w, RM).add(&um, w, RM).div(&h.mul(&h, w, RM), w, RM);
    let a = mu.mul(&mu, w, RM).div(&BigFloat::from_u64(2, w), w, RM).neg();
    let q = x0.mul(&x0, w, RM).div(&BigFloat::from_u64(4, w), w, RM).add(&a, w, RM);
    let res = d2.sub(&q.mul(&u0, w, RM), w, RM).div(&u0, w, RM);
    assert!(to_f64(&res).abs() < 1e-18, "{}", to_f64(&res));
}

#[test]
fn leading_term_only_at_order_zero() {
    let mut c = Ctx::new(200).unwrap();
    let mu = c.parse("10").unwrap();
    let t = c.parse("1.2").unwrap();
    let sums = eval_expansion(&mu, &t, 0, evaluator(), &mut c).unwrap();
    assert_eq!(sums.len(), 1);
    let full = eval_expansion(&mu, &t, 3, evaluator(), &mut c).unwrap();
    assert_eq!(to_f64(&sums[0]), to_f64(&full[0]));
    assert!(eval_expansion(&mu, &t, 4, evaluator(), &mut c).is_err());
    let one = c.parse("1").unwrap();
    assert!(eval_expansion(&mu, &one, 1, evaluator(), &mut c).is_err());
}

#[test]
fn errors_fall_with_order_and_mu() {
    let mut c = Ctx::new(200).unwrap();
    let t = c.parse("1.2").unwrap();
    let mu10 = c.parse("10").unwrap();
    let mu20 = c.parse("20").unwrap();
    let e10 = compare(&mu10, &t, 3, evaluator(), &mut c).unwrap();
    let e20 = compare(&mu20, &t, 3, evaluator(), &mut c).unwrap();
    for e in [&e10, &e20] {
        assert!(e.rel_errors.windows(2).all(|w| w[1] < w[0]), "{:?}", e.rel_errors);
    }
    let ratio = e20.rel_errors[2] / e10.rel_errors[2];
    let target = 2f64.powi(-6);
    assert!(ratio > target / 4.0 && ratio < target * 4.0, "{ratio}");
}

#[test]
fn branches_agree_near_crossover() {
    let mut c = Ctx::new(200).unwrap();
    let t = c.parse("1.05").unwrap();
    let m = map_point(&t, &mut c).unwrap();
    assert!((to_f64(&m.eta) - 0.1005).abs() < 1e-3);
    let xi = xi_at(&m, 232);
    for n in 0..=3 {
        let [sa, ra, sb, rb] = evaluator().both(n, &m.eta, &xi, 232).unwrap();
        if !ra.is_zero() {
            assert!(big_rel(&sa, &ra) < 1e-10, "alpha{n}");
        }
        if !rb.is_zero() {
            assert!(big_rel(&sb, &rb) < 1e-10, "beta{n}");
        }
    }
}
