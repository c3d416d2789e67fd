//! One line per acceptance criterion; exits nonzero if any fails.

use std::time::{Duration, Instant};

use airyexp_core::bleistein::{init_gamma_delta, oe_transform, split_even_odd, CoeffProvider};
use airyexp_core::numeric::{compare, CoeffEvaluator, Ctx};
use airyexp_core::pcf::{
    maclaurin_of_coeff, pcf_coeff_table, pcf_coeff_table_bu, pullback, radius_estimate, s_ode_residual,
    s_plus_series, sqrt_s_ode_residual, sqrt_s_series, XiEtaForm,
};
use airyexp_core::residue::{oracle_alpha_beta, taylor_alpha_beta, TaylorProvider};
use airyexp_core::ring::{parse_ratfunc, rat, RatFunc, Rational};

type Outcome = Result<String, String>;

fn p(s: &str) -> RatFunc {
    parse_ratfunc(s).unwrap()
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let el = start.elapsed();
    ensure(el < limit, format!("took {el:?}, limit {limit:?}"))
}

const ALPHA2: &str = "(385*xi^6-924*eta*xi^4+684*eta^2*xi^2-143*eta^3+70*xi^3-84*eta*xi-455)/(4608*eta^3)";
const BETA1: &str = "(5*xi^3-6*eta*xi-5)/(48*eta^2)";
const BETA3_HEAD: &str = "425425*xi^9-1531530*eta*xi^8+2040012*eta^2*xi^5-28875*xi^6-1189005*eta^3*xi^3+69300*eta*xi^4";
const BETA3_TAIL: &str = "259110*eta^4*xi-51300*eta^2*xi^2+28875*xi^3+10725*eta^3-34650*eta*xi-425425";

fn beta3(head: &str) -> RatFunc {
    p(&format!("({head}+{BETA3_TAIL})/(3317760*eta^5)"))
}

fn rational_table() -> Outcome {
    let start = Instant::now();
    let t = taylor_alpha_beta(&p("1/(t+1)"), 5).map_err(|e| e.to_string())?;
    let alphas = [
        "-1/(eta-1)",
        "(eta+1)/(eta-1)^3",
        "-4*(2*eta+1)/(eta-1)^5",
        "4*(2*eta^2+21*eta+7)/(eta-1)^7",
        "-280*(eta^2+4*eta+1)/(eta-1)^9",
        "280*(eta^3+29*eta^2+65*eta+13)/(eta-1)^11",
    ];
    let betas = [
        "1/(eta-1)",
        "-2/(eta-1)^3",
        "2*(eta+5)/(eta-1)^5",
        "-40*(eta+2)/(eta-1)^7",
        "40*(eta^2+19*eta+22)/(eta-1)^9",
        "-1120*(2*eta^2+14*eta+11)/(eta-1)^11",
    ];
    for n in 0..=5 {
        ensure(t.alphas[n] == p(alphas[n]), format!("alpha{n} = {}", t.alphas[n]))?;
        ensure(t.betas[n] == p(betas[n]), format!("beta{n} = {}", t.betas[n]))?;
    }
    within(start, Duration::from_secs(5))?;
    Ok(format!("12 entries exact, {:?}", start.elapsed()))
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let fs = ["1/(t+1)", "1/(t+2)", "t/(t^2+t+1)", "(2*t+1)/((t-3)*(t+5))", "1/(t^2+4)", "(t-1)/((t+1)*(t+3)*(t-2))"];
    for f in fs {
        let a = taylor_alpha_beta(&p(f), 5).map_err(|e| format!("{f}: {e}"))?;
        let b = oracle_alpha_beta(&p(f), 5).map_err(|e| format!("{f}: {e}"))?;
        ensure(a.alphas == b.alphas && a.betas == b.betas, format!("{f}: tables differ"))?;
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!("{} functions, n = 0..5, {:?}", fs.len(), start.elapsed()))
}

fn pcf_coefficients() -> Outcome {
    let start = Instant::now();
    let t = pcf_coeff_table(4).map_err(|e| e.to_string())?;
    let a2 = p(ALPHA2);
    let b1 = p(BETA1);
    let c = rat(2021, 34560);
    ensure(t.alphas[0].is_one() && t.betas[0].is_zero(), "order 0")?;
    ensure(t.alphas[1] == p("1/48"), "alpha1")?;
    ensure(t.betas[1] == b1, "beta1")?;
    ensure(t.alphas[2] == a2, "alpha2")?;
    ensure(t.betas[2] == p("(5*xi^3-6*eta*xi-5)/(2304*eta^2)"), "beta2")?;
    ensure(t.alphas[3] == a2.scale(&rat(1, 48)).sub(&p("1/48").scale(&c)), "alpha3")?;
    // the display carries eta*xi^8 in one term; the only consistent reading is eta*xi^7
    let printed = beta3(BETA3_HEAD);
    let corrected = beta3(&BETA3_HEAD.replace("eta*xi^8", "eta*xi^7"));
    ensure(t.betas[3] == corrected, "beta3 differs from the display beyond the xi^8 term")?;
    ensure(t.betas[3] != printed, "beta3 unexpectedly equals the literal display")?;
    ensure(maclaurin_of_coeff(&XiEtaForm { value: printed }, 4, "").is_err(), "literal beta3 is analytic")?;
    ensure(t.betas[4] == t.betas[3].scale(&rat(1, 48)).sub(&t.betas[2].scale(&c)), "beta4")?;
    within(start, Duration::from_secs(120))?;
    Ok(format!(
        "alpha0..3, beta0..4 exact; beta3 matches the display with eta*xi^8 read as eta*xi^7, {:?}",
        start.elapsed()
    ))
}

fn linear_relations() -> Outcome {
    let t = pcf_coeff_table(4).map_err(|e| e.to_string())?;
    let c = rat(2021, 34560);
    ensure(t.betas[2] == t.betas[1].scale(&rat(1, 48)), "beta2 = beta1/48")?;
    ensure(t.alphas[3] == t.alphas[2].scale(&rat(1, 48)).sub(&t.alphas[1].scale(&c)), "alpha3")?;
    ensure(t.betas[4] == t.betas[3].scale(&rat(1, 48)).sub(&t.betas[2].scale(&c)), "beta4")?;
    Ok(String::from("3 identities exact"))
}

fn rats(v: &[(i64, i64)]) -> Vec<Rational> {
    v.iter().map(|&(a, b)| rat(a, b)).collect()
}

fn maclaurin_heads() -> Outcome {
    let b1 = maclaurin_of_coeff(&XiEtaForm { value: p(BETA1) }, 6, "beta1").map_err(|e| e.to_string())?;
    let want = rats(&[(-9, 560), (7, 1800), (-1359, 1078000), (7, 16250), (-152723, 1018710000), (3997, 75968750)]);
    ensure(b1.terms() == &want[..], format!("beta1 {:?}", b1.terms()))?;
    let a2 = maclaurin_of_coeff(&XiEtaForm { value: p(ALPHA2) }, 5, "alpha2").map_err(|e| e.to_string())?;
    let want = rats(&[(-199, 115200), (6849, 4928000), (-737, 1040000), (46711, 142560000), (-975823, 6806800000)]);
    ensure(a2.terms() == &want[..], format!("alpha2 {:?}", a2.terms()))?;
    Ok(String::from("6 + 5 rationals exact"))
}

fn radius() -> Outcome {
    let b1 = maclaurin_of_coeff(&XiEtaForm { value: p(BETA1) }, 16, "beta1").map_err(|e| e.to_string())?;
    let r = radius_estimate(&b1).map_err(|e| e.to_string())?;
    let target = (1.5 * std::f64::consts::PI).powf(2.0 / 3.0);
    let dev = (r.ratio / target - 1.0).abs();
    ensure(dev < 0.05, format!("ratio {} vs {target}", r.ratio))?;
    Ok(format!("16 terms, ratio {:.4} vs {target:.4} ({:.2}%), fit {:.4}", r.ratio, dev * 100.0, r.fit))
}

fn exactness() -> Outcome {
    let s = s_plus_series(9).map_err(|e| e.to_string())?;
    ensure(s_ode_residual(&s).iter().all(|r| r.is_zero()), "s residual")?;
    let sq = sqrt_s_series(&s);
    ensure(sqrt_s_ode_residual(&s, &sq).iter().all(|r| r.is_zero()), "sqrt s residual")?;

    let bu = pcf_coeff_table_bu(4).map_err(|e| e.to_string())?;
    let xe = pcf_coeff_table(4).map_err(|e| e.to_string())?;
    for (a, b) in bu.alphas.iter().chain(&bu.betas).zip(xe.alphas.iter().chain(&xe.betas)) {
        ensure(pullback(b).map_err(|e| e.to_string())? == *a, "pullback")?;
    }

    let prov = TaylorProvider::new(&p("t^4"), 4).map_err(|e| e.to_string())?;
    let b = prov.b();
    let (fe, fo) = split_even_odd(&prov, 4).map_err(|e| e.to_string())?;
    let foe = oe_transform(&fo, &b).map_err(|e| e.to_string())?;
    let st = init_gamma_delta(&fe, &foe, &b, 4).map_err(|e| e.to_string())?;
    ensure(st.gamma[2].is_one(), format!("gamma2 = {}", st.gamma[2]))?;
    Ok(String::from("residuals zero through x^9, 10 pullbacks exact, gamma2(t^4) = 1"))
}

fn numeric() -> Outcome {
    let start = Instant::now();
    let ev = CoeffEvaluator::new(pcf_coeff_table(3).map_err(|e| e.to_string())?, 200).map_err(|e| e.to_string())?;
    let setup = start.elapsed();
    let mut ctx = Ctx::new(200).map_err(|e| e.to_string())?;
    let mut worst = Duration::ZERO;
    let mut ratios = Vec::new();
    for ts in ["1.1", "1.2", "1.5"] {
        let t = ctx.parse(ts).map_err(|e| e.to_string())?;
        let mut err2 = Vec::new();
        for ms in ["10", "20"] {
            let mu = ctx.parse(ms).map_err(|e| e.to_string())?;
            let s = Instant::now();
            let e = compare(&mu, &t, 3, &ev, &mut ctx).map_err(|e| e.to_string())?;
            worst = worst.max(s.elapsed());
            ensure(s.elapsed() < Duration::from_secs(60), format!("mu {ms}, t {ts}: {:?}", s.elapsed()))?;
            ensure(
                e.rel_errors.windows(2).all(|w| w[1] < w[0]),
                format!("mu {ms}, t {ts}: not monotone {:?}", e.rel_errors),
            )?;
            err2.push(e.rel_errors[2]);
        }
        let r = err2[1] / err2[0];
        let target = 2f64.powi(-6);
        ensure(r > target / 4.0 && r < target * 4.0, format!("t {ts}: ratio {r}"))?;
        ratios.push(format!("{ts}: {:.2}/64", r * 64.0));
    }
    Ok(format!("6 comparisons, slowest {worst:?} (+{setup:?} setup), N=2 ratios {}", ratios.join(", ")))
}

fn degenerate() -> Outcome {
    let cases: [(&str, [&str; 4], [&str; 4]); 4] = [
        ("1", ["1", "0", "0", "0"], ["0", "0", "0", "0"]),
        ("t", ["0", "0", "0", "0"], ["1", "0", "0", "0"]),
        ("t^2", ["eta", "0", "0", "0"], ["0", "0", "0", "0"]),
        ("t^4", ["eta^2", "0", "0", "0"], ["0", "2", "0", "0"]),
    ];
    for (f, a, b) in cases {
        let t = taylor_alpha_beta(&p(f), 3).map_err(|e| format!("{f}: {e}"))?;
        ensure(t.alphas == a.map(p).to_vec(), format!("{f}: alphas {:?}", t.alphas))?;
        ensure(t.betas == b.map(p).to_vec(), format!("{f}: betas {:?}", t.betas))?;
    }
    Ok(String::from("1, t, t^2, t^4 through n = 3"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("rational example table", rational_table),
        ("oracle equivalence", oracle_equivalence),
        ("pcf coefficients", pcf_coefficients),
        ("linear relations", linear_relations),
        ("maclaurin heads", maclaurin_heads),
        ("radius of convergence", radius),
        ("exactness invariants", exactness),
        ("numeric validation", numeric),
        ("degenerate inputs", degenerate),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(msg) => println!("criterion {} {name}: PASS ({msg})", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({msg})", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
