//! Arbitrary-precision rationals and the small helpers used throughout.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qvec(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x)).collect()
}

/// Parses `"3"`, `"-7/4"` or a finite decimal such as `"0.125"`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational literal".into()));
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = parse_int(n)?;
        let d = parse_int(d)?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Q::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        if fp.is_empty() || !fp.bytes().all(|b| b.is_ascii_digit()) || fp.len() > 4096 {
            return Err(Error::Parse(format!("bad decimal {s:?}")));
        }
        let neg = ip.trim_start().starts_with('-');
        let ip = if ip == "-" || ip == "+" || ip.is_empty() { "0" } else { ip };
        let whole = Q::from_integer(parse_int(ip)?.abs());
        let frac = Q::new(parse_int(fp)?, BigInt::from(10u32).pow(fp.len() as u32));
        let v = whole + frac;
        return Ok(if neg { -v } else { v });
    }
    Ok(Q::from_integer(parse_int(s)?))
}

fn parse_int(s: &str) -> Result<BigInt> {
    let s = s.trim();
    let body = s.strip_prefix(['-', '+']).unwrap_or(s);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) || body.len() > 4096 {
        return Err(Error::Parse(format!("bad integer {s:?}")));
    }
    s.parse::<BigInt>()
        .map_err(|e| Error::Parse(format!("bad integer {s:?}: {e}")))
}

/// `p/q` literal, or just `p` for integers.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Exact square root when `x` is the square of a rational.
pub fn sqrt_exact(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Q::new(n, d))
    } else {
        None
    }
}

/// Writes a nonnegative rational as `c * sqrt(m)` with `m` a squarefree integer.
/// Trial division only, which is fine for the small radicands that appear here.
pub fn split_radical(x: &Q) -> Option<(Q, BigInt)> {
    if x.is_negative() {
        return None;
    }
    if x.is_zero() {
        return Some((Q::zero(), BigInt::one()));
    }
    // sqrt(n/d) = sqrt(n d) / d
    let mut rad = x.numer() * x.denom();
    let mut outside = BigInt::one();
    let mut f = BigInt::from(2);
    while &f * &f <= rad {
        let sq = &f * &f;
        while rad.is_multiple_of(&sq) {
            rad /= &sq;
            outside *= &f;
        }
        f += 1;
        if f > BigInt::from(1_000_000) {
            return None;
        }
    }
    Some((Q::new(outside, x.denom().clone()), rad))
}

pub fn to_f64(x: &Q) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn abs(x: &Q) -> Q {
    x.abs()
}

pub fn factorial(k: usize) -> Q {
    let mut f = Q::one();
    for i in 2..=k {
        f *= q(i as i64);
    }
    f
}

pub fn binomial(n: usize, k: usize) -> Q {
    if k > n {
        return Q::zero();
    }
    let mut r = Q::one();
    for i in 0..k {
        r = r * q((n - i) as i64) / q((i + 1) as i64);
    }
    r
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}
