use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign, WORD_BIT_SIZE};
use num_bigint::Sign as ISign;
use num_traits::Zero;

use crate::error::NumericError;
use crate::ring::{MultiPoly, Rational, Var};

pub const RM: RoundingMode = RoundingMode::ToEven;
pub const DEFAULT_PRECISION: usize = 200;
pub const MIN_PRECISION: usize = 64;

/// Working precision plus the constants cache.
pub struct Ctx {
    p: usize,
    cc: Consts,
}

impl Ctx {
    pub fn new(bits: usize) -> Result<Self, NumericError> {
        if bits < MIN_PRECISION {
            return Err(NumericError::OutOfRange(format!("precision {bits} < {MIN_PRECISION}")));
        }
        let cc = Consts::new().map_err(|e| NumericError::Float(format!("{e:?}")))?;
        Ok(Ctx { p: bits, cc })
    }

    pub fn precision(&self) -> usize {
        self.p
    }

    pub fn consts(&mut self) -> &mut Consts {
        &mut self.cc
    }

    pub fn pi(&mut self, p: usize) -> BigFloat {
        self.cc.pi(p, RM)
    }

    /// Decimal rendering rounded to `digits` significant digits, as `d.ddd...e<exp>`.
    pub fn decimal(&mut self, x: &BigFloat, digits: usize) -> Result<String, NumericError> {
        let digits = digits.max(1);
        let mut y = x.clone();
        // guard bits so the rounding digit is settled
        let bits = (digits * 10).div_ceil(3) + 32;
        y.set_precision(bits.max(MIN_PRECISION), RM)
            .map_err(|e| NumericError::Float(format!("{e:?}")))?;
        let s = y
            .format(Radix::Dec, RM, &mut self.cc)
            .map_err(|e| NumericError::Float(format!("{e:?}")))?;
        Ok(round_decimal(&s, digits))
    }

    /// Decimal literal such as `"1.2"`.
    pub fn parse(&mut self, s: &str) -> Result<BigFloat, NumericError> {
        let v = BigFloat::parse(s, Radix::Dec, self.p, RM, &mut self.cc);
        if v.is_nan() || v.is_inf() {
            return Err(NumericError::OutOfRange(format!("cannot parse {s:?} as a number")));
        }
        Ok(v)
    }
}

/// Rounds a `[-]d.ddd[e<exp>]` string half-up to `digits` significant digits.
fn round_decimal(s: &str, digits: usize) -> String {
    let (sign, rest) = match s.strip_prefix('-') {
        Some(r) => ("-", r),
        None => ("", s),
    };
    let (mant, exp) = match rest.find(['e', 'E']) {
        Some(i) => (&rest[..i], rest[i + 1..].parse::<i64>().unwrap_or(0)),
        None => (rest, 0),
    };
    let point = mant.find('.').unwrap_or(mant.len()) as i64;
    let mut ds: Vec<u8> = mant.bytes().filter(u8::is_ascii_digit).map(|b| b - b'0').collect();
    // exponent of the first digit once leading zeros are dropped
    let lead = ds.iter().position(|&d| d != 0);
    let Some(lead) = lead else {
        return String::from("0");
    };
    let mut e10 = exp + point - 1 - lead as i64;
    ds.drain(..lead);
    let round_up = ds.get(digits).is_some_and(|&d| d >= 5);
    ds.truncate(digits);
    ds.resize(digits, 0);
    if round_up {
        let mut i = digits;
        loop {
            if i == 0 {
                ds.insert(0, 1);
                ds.pop();
                e10 += 1;
                break;
            }
            i -= 1;
            if ds[i] == 9 {
                ds[i] = 0;
            } else {
                ds[i] += 1;
                break;
            }
        }
    }
    let body: String = ds.iter().map(|d| char::from(b'0' + d)).collect();
    let (head, tail) = body.split_at(1);
    if tail.is_empty() {
        format!("{sign}{head}e{e10}")
    } else {
        format!("{sign}{head}.{tail}e{e10}")
    }
}

pub fn checked(x: BigFloat, what: &str) -> Result<BigFloat, NumericError> {
    if x.is_nan() || x.is_inf() {
        Err(NumericError::Float(format!("{what} is not finite")))
    } else {
        Ok(x)
    }
}

pub fn abs_f64(x: f64) -> f64 {
    if x < 0.0 {
        -x
    } else {
        x
    }
}

pub fn int(i: i64, p: usize) -> BigFloat {
    BigFloat::from_i64(i, p)
}

fn from_bigint(n: &num_bigint::BigInt, p: usize) -> BigFloat {
    let (sign, digits) = n.to_u64_digits();
    let exact = (digits.len() * 64).max(p);
    let base = BigFloat::from_u128(1u128 << 64, exact);
    let mut acc = BigFloat::from_u64(0, exact);
    for d in digits.iter().rev() {
        acc = acc.mul(&base, exact, RM).add(&BigFloat::from_u64(*d, exact), exact, RM);
    }
    if sign == ISign::Minus {
        acc = acc.neg();
    }
    acc
}

pub fn from_rational(r: &Rational, p: usize) -> BigFloat {
    if r.is_zero() {
        return BigFloat::from_u64(0, p);
    }
    let n = from_bigint(r.numer(), p + 64);
    let d = from_bigint(r.denom(), p + 64);
    n.div(&d, p, RM)
}

/// Nearest `f64`, saturating to infinity or zero outside its range.
pub fn to_f64(x: &BigFloat) -> f64 {
    let Some((m, _, sign, e, _)) = x.as_raw_parts() else {
        return f64::NAN;
    };
    let mut frac = 0.0f64;
    let mut scale = 1.0f64;
    let word = (WORD_BIT_SIZE as u32).min(64);
    for w in m.iter().rev().take(128 / WORD_BIT_SIZE + 1) {
        for _ in 0..word {
            scale *= 0.5;
        }
        frac += (*w as f64) * scale;
    }
    // frac in [1/2, 1); value = frac * 2^e
    let mut v = frac;
    let mut e = e as i64;
    while e > 0 {
        let step = e.min(60);
        v *= (1u64 << step) as f64;
        e -= step;
        if v.is_infinite() {
            break;
        }
    }
    while e < 0 {
        let step = (-e).min(60);
        v /= (1u64 << step) as f64;
        e += step;
        if v == 0.0 {
            break;
        }
    }
    if sign == Sign::Neg {
        -v
    } else {
        v
    }
}

/// `x^n` for a machine integer exponent of either sign.
pub fn powi(x: &BigFloat, n: i64, p: usize) -> BigFloat {
    let y = x.powi(n.unsigned_abs() as usize, p, RM);
    if n < 0 {
        y.reciprocal(p, RM)
    } else {
        y
    }
}

/// Evaluates a polynomial at the given big-float values.
pub fn eval_poly(poly: &MultiPoly, vals: &[(Var, &BigFloat)], p: usize) -> Result<BigFloat, NumericError> {
    let mut acc = BigFloat::from_u64(0, p);
    for (m, c) in poly.terms() {
        let mut term = from_rational(c, p);
        for v in Var::ALL.iter().copied().filter(|v| m.exp(*v) > 0) {
            let (_, x) = vals
                .iter()
                .find(|(w, _)| *w == v)
                .ok_or_else(|| NumericError::OutOfRange(format!("no value for {v}")))?;
            term = term.mul(&powi(x, m.exp(v) as i64, p), p, RM);
        }
        acc = acc.add(&term, p, RM);
    }
    checked(acc, "polynomial value")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    #[test]
    fn f64_round_trip() {
        for x in [1.0, -2.5, 1e-30, 3.0e40, 0.1, -7.25e-5] {
            let b = BigFloat::from_f64(x, 128);
            assert_eq!(to_f64(&b), x);
        }
        assert_eq!(to_f64(&BigFloat::from_u64(0, 64)), 0.0);
    }

    #[test]
    fn rationals() {
        let r = rat(-1359, 1078000);
        assert!((to_f64(&from_rational(&r, 128)) - (-1359.0 / 1078000.0)).abs() < 1e-20);
        let big = Rational::from_integer(num_bigint::BigInt::from(3u8).pow(90));
        let v = to_f64(&from_rational(&big, 200));
        assert!((v / 8.727963568087712e42 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn parse_and_precision() {
        let mut c = Ctx::new(128).unwrap();
        assert_eq!(to_f64(&c.parse("1.25").unwrap()), 1.25);
        assert!(c.parse("abc").is_err());
        assert!(Ctx::new(32).is_err());
        let x = c.parse("0.3125").unwrap();
        assert_eq!(c.decimal(&x, 3).unwrap(), "3.13e-1");
        let y = c.parse("-9.996").unwrap();
        assert_eq!(c.decimal(&y, 3).unwrap(), "-1.00e1");
        let z = c.parse("123456").unwrap();
        assert_eq!(c.decimal(&z, 2).unwrap(), "1.2e5");
        assert_eq!(c.decimal(&BigFloat::from_u64(0, 64), 4).unwrap(), "0");
    }
}
