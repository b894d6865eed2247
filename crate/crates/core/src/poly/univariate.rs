//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{fmt_q, Q};

/// Coefficients in ascending order, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UvPoly {
    coeffs: Vec<Q>,
}

impl UvPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UvPoly { coeffs }
    }

    pub fn zero() -> Self {
        UvPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c t^k`.
    pub fn monomial(c: Q, k: usize) -> Self {
        let mut v = vec![Q::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Q {
        self.coeffs.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval(&self, t: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    /// Sign of the value at `t` (-1, 0 or 1).
    pub fn sign_at(&self, t: &Q) -> i8 {
        sign(&self.eval(t))
    }

    pub fn derivative(&self) -> UvPoly {
        UvPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Q::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Q) -> UvPoly {
        UvPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division. Panics if `d` is zero.
    pub fn div_rem(&self, d: &UvPoly) -> (UvPoly, UvPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.leading();
        let mut r = self.coeffs.clone();
        let Some(n) = self.degree() else {
            return (UvPoly::zero(), UvPoly::zero());
        };
        if n < dd {
            return (UvPoly::zero(), self.clone());
        }
        let mut quot = vec![Q::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let c = &r[k + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        r.truncate(dd);
        (UvPoly::new(quot), UvPoly::new(r))
    }

    /// Quotient when `d` divides `self` exactly, otherwise `None`.
    pub fn exact_div(&self, d: &UvPoly) -> Option<UvPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &UvPoly) -> UvPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1.primitive_positive();
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> UvPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Q::one() / self.leading()))
    }

    /// Scales by a positive rational to integer coefficients with content 1.
    /// Signs everywhere are preserved.
    pub fn primitive(&self) -> UvPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * &den).to_integer()).collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        UvPoly::new(ints.into_iter().map(|c| Q::from_integer(c / &g)).collect())
    }

    /// [`UvPoly::primitive`] with positive leading coefficient. Roots and
    /// their multiplicities are unchanged.
    pub fn primitive_positive(&self) -> UvPoly {
        let p = self.primitive();
        if p.leading().is_negative() {
            -&p
        } else {
            p
        }
    }

    /// `f / gcd(f, f')`: same distinct roots, all simple.
    pub fn square_free_part(&self) -> UvPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").primitive_positive()
    }

    /// Yun decomposition: `factors[k]` is square-free and its roots are exactly
    /// the roots of multiplicity `k + 1`. Units are dropped.
    pub fn square_free_factors(&self) -> Vec<UvPoly> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let fp = self.derivative();
        let a0 = self.gcd(&fp);
        let mut b = self.exact_div(&a0).expect("gcd divides");
        let mut c = fp.exact_div(&a0).expect("gcd divides");
        let mut d = &c - &b.derivative();
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            out.push(a.primitive_positive());
            b = b.exact_div(&a).expect("gcd divides");
            c = d.exact_div(&a).expect("gcd divides");
            d = &c - &b.derivative();
        }
        while out.last().is_some_and(|f| f.degree() == Some(0)) {
            out.pop();
        }
        out
    }

    /// `t -> self(t + s)`.
    pub fn shift(&self, s: &Q) -> UvPoly {
        let mut acc = UvPoly::zero();
        let lin = UvPoly::new(vec![s.clone(), Q::one()]);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &UvPoly::constant(c.clone());
        }
        acc
    }

    /// `t -> self(-t)`.
    pub fn reflect(&self) -> UvPoly {
        UvPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        )
    }

    /// Cauchy bound: every root has absolute value below it.
    pub fn root_bound(&self) -> Q {
        let lead = self.leading().abs();
        let n = self.coeffs.len().saturating_sub(1);
        let m = self.coeffs[..n]
            .iter()
            .map(|c| c.abs() / &lead)
            .fold(Q::zero(), |a, b| if b > a { b } else { a });
        m + Q::one()
    }
}

pub(crate) fn sign(x: &Q) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

impl Add for &UvPoly {
    type Output = UvPoly;
    fn add(self, rhs: &UvPoly) -> UvPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UvPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &UvPoly {
    type Output = UvPoly;
    fn sub(self, rhs: &UvPoly) -> UvPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UvPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &UvPoly {
    type Output = UvPoly;
    fn mul(self, rhs: &UvPoly) -> UvPoly {
        if self.is_zero() || rhs.is_zero() {
            return UvPoly::zero();
        }
        let mut v = vec![Q::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UvPoly::new(v)
    }
}

impl Neg for &UvPoly {
    type Output = UvPoly;
    fn neg(self) -> UvPoly {
        UvPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl fmt::Display for UvPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => fmt_q(c),
                1 => format!("{}*t", fmt_q(c)),
                _ => format!("{}*t^{k}", fmt_q(c)),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
