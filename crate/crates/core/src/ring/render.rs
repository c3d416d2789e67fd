use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::{One, Signed};

use super::gcd::square_free;
use super::poly::{Monomial, MultiPoly};
use super::{Rational, RatFunc, Var};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Style {
    Plain,
    Latex,
}

pub fn rational_str(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn monomial_str(m: &Monomial, style: Style) -> String {
    let mut out = String::new();
    for v in Var::ALL {
        let e = m.exp(v);
        if e == 0 {
            continue;
        }
        match style {
            Style::Plain => {
                if !out.is_empty() {
                    out.push('*');
                }
                out.push_str(v.name());
                if e > 1 {
                    out.push_str(&format!("^{e}"));
                }
            }
            Style::Latex => {
                if out.ends_with(|c: char| c.is_ascii_alphabetic()) {
                    out.push(' ');
                }
                out.push_str(v.latex());
                if e > 1 {
                    out.push_str(&format!("^{{{e}}}"));
                }
            }
        }
    }
    out
}

fn coeff_str(c: &Rational, style: Style) -> String {
    match style {
        Style::Plain => rational_str(c),
        Style::Latex => {
            if c.denom().is_one() {
                c.numer().to_string()
            } else {
                format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom())
            }
        }
    }
}

fn poly_str(p: &MultiPoly, style: Style) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        if neg {
            out.push('-');
        } else if i > 0 {
            out.push('+');
        }
        let a = c.abs();
        if m.is_one() {
            out.push_str(&coeff_str(&a, style));
            continue;
        }
        if !a.is_one() {
            out.push_str(&coeff_str(&a, style));
            if style == Style::Plain {
                out.push('*');
            }
        }
        out.push_str(&monomial_str(m, style));
    }
    out
}

fn is_single_term(p: &MultiPoly) -> bool {
    p.len() == 1
}

/// Expanded infix form, e.g. `(2*eta+1)/(eta^2-2*eta+1)`.
pub fn plain(f: &RatFunc) -> String {
    let n = poly_str(f.num(), Style::Plain);
    if f.den().is_one() {
        return n;
    }
    let n = if is_single_term(f.num()) { n } else { format!("({n})") };
    let d = poly_str(f.den(), Style::Plain);
    let bare = f.den().constant_value().is_some()
        || (f.den().len() == 1 && f.den().terms()[0].1.is_one() && f.den().terms()[0].0.degree() == 1);
    if bare {
        format!("{n}/{d}")
    } else {
        format!("{n}/({d})")
    }
}

struct Factored {
    coeff: Rational,
    factors: Vec<(MultiPoly, u32)>,
}

fn factor(p: &MultiPoly) -> Factored {
    let (coeff, mut factors) = square_free(p);
    // single variables first, then by multiplicity and size
    factors.sort_by(|a, b| {
        let ka = (a.0.len() > 1 || a.0.total_degree() > 1, a.1, a.0.total_degree(), a.0.len());
        let kb = (b.0.len() > 1 || b.0.total_degree() > 1, b.1, b.0.total_degree(), b.0.len());
        ka.cmp(&kb).then_with(|| b.0.leading().map(|t| t.0).cmp(&a.0.leading().map(|t| t.0)))
    });
    Factored { coeff, factors }
}

fn factor_str(f: &MultiPoly, k: u32, style: Style, need_paren: bool) -> String {
    let body = poly_str(f, style);
    let multi = f.len() > 1;
    let wrapped = if multi && (need_paren || k > 1) {
        match style {
            Style::Plain => format!("({body})"),
            Style::Latex => format!("\\left({body}\\right)"),
        }
    } else {
        body
    };
    if k == 1 {
        wrapped
    } else {
        match style {
            Style::Plain => format!("{wrapped}^{k}"),
            Style::Latex => format!("{wrapped}^{{{k}}}"),
        }
    }
}

fn product_str(coeff: &Rational, factors: &[(MultiPoly, u32)], style: Style, alone: bool) -> String {
    let sep = match style {
        Style::Plain => "*",
        Style::Latex => "",
    };
    let mut parts: Vec<String> = Vec::new();
    let need_paren = !alone || factors.len() > 1 || !coeff.abs().is_one();
    for (f, k) in factors {
        parts.push(factor_str(f, *k, style, need_paren));
    }
    let mut body = String::new();
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            body.push_str(sep);
            if style == Style::Latex && p.starts_with(|c: char| c.is_ascii_alphabetic()) && body.ends_with(|c: char| c.is_ascii_alphabetic()) {
                body.push(' ');
            }
        }
        body.push_str(p);
    }
    let a = coeff.abs();
    let sign = if coeff.is_negative() { "-" } else { "" };
    if parts.is_empty() {
        return format!("{sign}{}", coeff_str(&a, style));
    }
    if a.is_one() {
        format!("{sign}{body}")
    } else {
        format!("{sign}{}{sep}{body}", coeff_str(&a, style))
    }
}

fn factored_styled(f: &RatFunc, style: Style) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let n = factor(f.num());
    if f.den().is_one() {
        return product_str(&n.coeff, &n.factors, style, true);
    }
    let d = factor(f.den());
    let ns = product_str(&n.coeff, &n.factors, style, style == Style::Latex);
    let ds = product_str(&d.coeff, &d.factors, style, style == Style::Latex);
    match style {
        Style::Latex => {
            let (sign, ns) = match ns.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("", ns),
            };
            format!("{sign}\\frac{{{ns}}}{{{ds}}}")
        }
        Style::Plain => {
            let simple_den = d.factors.is_empty() || (d.factors.len() == 1 && d.coeff.is_one());
            let ds = if simple_den { ds } else { format!("({ds})") };
            format!("{ns}/{ds}")
        }
    }
}

/// Infix form with numerator and denominator split into square-free powers,
/// e.g. `280*(eta^3+29*eta^2+65*eta+13)/(eta-1)^11` or `(5*xi^3-6*eta*xi-5)/(48*eta^2)`.
pub fn factored(f: &RatFunc) -> String {
    factored_styled(f, Style::Plain)
}

/// LaTeX rendering of the factored form.
pub fn latex(f: &RatFunc) -> String {
    factored_styled(f, Style::Latex)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_ratfunc;

    fn p(s: &str) -> RatFunc {
        parse_ratfunc(s).unwrap()
    }

    #[test]
    fn plain_forms() {
        assert_eq!(plain(&p("(eta+1)/(eta-1)^3")), "(eta+1)/(eta^3-3*eta^2+3*eta-1)");
        assert_eq!(plain(&p("1/48")), "1/48");
        assert_eq!(plain(&p("-x/2")), "-x/2");
        assert_eq!(plain(&p("1/eta")), "1/eta");
    }

    #[test]
    fn factored_forms() {
        assert_eq!(factored(&p("(eta+1)/(eta-1)^3")), "(eta+1)/(eta-1)^3");
        assert_eq!(factored(&p("-1/(eta-1)")), "-1/(eta-1)");
        assert_eq!(
            factored(&p("280*(eta^3+29*eta^2+65*eta+13)/(eta-1)^11")),
            "280*(eta^3+29*eta^2+65*eta+13)/(eta-1)^11"
        );
        assert_eq!(factored(&p("(5*xi^3-6*eta*xi-5)/(48*eta^2)")), "(5*xi^3-6*eta*xi-5)/(48*eta^2)");
        assert_eq!(factored(&p("-4*(2*eta+1)/(eta-1)^5")), "-4*(2*eta+1)/(eta-1)^5");
        assert_eq!(factored(&p("1/48")), "1/48");
        assert_eq!(factored(&p("0")), "0");
        assert_eq!(factored(&p("eta^2+1")), "eta^2+1");
    }

    #[test]
    fn factored_round_trips() {
        for s in ["(eta+1)/(eta-1)^3", "-2/(eta-1)^3", "(5*xi^3-6*eta*xi-5)/(48*eta^2)", "b^2*u/(3*(u-2*b)^2)"] {
            let f = p(s);
            assert_eq!(p(&factored(&f)), f);
            assert_eq!(p(&plain(&f)), f);
        }
    }

    #[test]
    fn latex_forms() {
        assert_eq!(latex(&p("(eta+1)/(eta-1)^3")), "\\frac{\\eta+1}{\\left(\\eta-1\\right)^{3}}");
        assert_eq!(latex(&p("(5*xi^3-6*eta*xi-5)/(48*eta^2)")), "\\frac{5\\xi^{3}-6\\eta \\xi-5}{48\\eta^{2}}");
        assert_eq!(latex(&p("-2/(eta-1)^3")), "-\\frac{2}{\\left(\\eta-1\\right)^{3}}");
    }
}
