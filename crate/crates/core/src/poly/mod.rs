//! Sparse multivariate polynomials over the rationals, plus dense univariate
//! polynomials in [`univariate`].
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose ordering is graded
//! lexicographic. Iterating in reverse therefore yields the canonical
//! serialization order (highest degree first, then `x1 > x2 > ...`).

pub mod univariate;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{check_dim, Error, Result};
use crate::rational::{factorial, fmt_q, Q};

pub use univariate::UvPoly;

/// Integer numerators over the least common denominator.
fn common_denominator<'a>(vals: impl Iterator<Item = &'a Q> + Clone) -> (Vec<BigInt>, BigInt) {
    let den = vals.clone().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let nums = vals.map(|v| v.numer() * (&den / v.denom())).collect();
    (nums, den)
}

fn int_poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Exponent vector. Ordered by total degree, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut v = vec![0; nvars];
        v[i] = 1;
        Monomial(v)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Result of [`MvPoly::is_homogeneous`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Yes(u32),
    /// Two terms of different total degree.
    No(Monomial, Monomial),
}

/// Sparse polynomial in `nvars` variables with exact rational coefficients.
/// No stored coefficient is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MvPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Q>,
}

impl MvPoly {
    pub fn zero(nvars: usize) -> Self {
        MvPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut p = Self::zero(nvars);
        p.terms.insert(Monomial::var(nvars, i), Q::one());
        p
    }

    /// The linear form `sum_i c_i x_i`.
    pub fn linear(coeffs: &[Q]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                p.terms.insert(Monomial::var(n, i), c.clone());
            }
        }
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Q)>,
    {
        let mut p = Self::zero(nvars);
        for (exps, c) in terms {
            check_dim(nvars, exps.len())?;
            p.add_term(Monomial(exps), c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    /// Terms in canonical (descending graded-lex) order.
    pub fn canonical_terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, exps: &[u32]) -> Q {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Q::zero)
    }

    /// Max total degree; 0 for the zero polynomial (check [`MvPoly::is_zero`]).
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> Homogeneity {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Homogeneity::Yes(0);
        };
        // graded order: the first and last key have the extreme degrees
        let last = self.terms.keys().next_back().unwrap();
        if first.degree() == last.degree() {
            Homogeneity::Yes(first.degree())
        } else {
            Homogeneity::No(first.clone(), last.clone())
        }
    }

    pub fn homogeneous_degree(&self) -> Result<u32> {
        match self.is_homogeneous() {
            Homogeneity::Yes(d) => Ok(d),
            Homogeneity::No(..) => Err(Error::NotHomogeneous),
        }
    }

    pub fn try_add(&self, other: &MvPoly) -> Result<MvPoly> {
        check_dim(self.nvars, other.nvars)?;
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn try_sub(&self, other: &MvPoly) -> Result<MvPoly> {
        check_dim(self.nvars, other.nvars)?;
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), -c.clone());
        }
        Ok(r)
    }

    pub fn try_mul(&self, other: &MvPoly) -> Result<MvPoly> {
        check_dim(self.nvars, other.nvars)?;
        let mut r = MvPoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                r.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(r)
    }

    pub fn scale(&self, c: &Q) -> MvPoly {
        if c.is_zero() {
            return MvPoly::zero(self.nvars);
        }
        MvPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MvPoly {
        let mut r = MvPoly::constant(self.nvars, Q::one());
        for _ in 0..k {
            r = &r * self;
        }
        r
    }

    pub fn eval(&self, point: &[Q]) -> Result<Q> {
        check_dim(self.nvars, point.len())?;
        let line = self.restrict_line(point, &vec![Q::zero(); self.nvars])?;
        Ok(line.coeff(0))
    }

    /// Partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> MvPoly {
        let mut r = MvPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let k = m.0[i];
            if k > 0 {
                let mut e = m.0.clone();
                e[i] -= 1;
                r.add_term(Monomial(e), c * Q::from_integer(k.into()));
            }
        }
        r
    }

    /// `D_u p = sum_i u_i dp/dx_i`.
    pub fn directional_derivative(&self, u: &[Q]) -> Result<MvPoly> {
        check_dim(self.nvars, u.len())?;
        let mut r = MvPoly::zero(self.nvars);
        for (i, ui) in u.iter().enumerate() {
            if !ui.is_zero() {
                for (m, c) in self.partial(i).terms {
                    r.add_term(m, c * ui);
                }
            }
        }
        Ok(r)
    }

    /// The univariate polynomial `t -> p(x + t e)`.
    pub fn restrict_line(&self, x: &[Q], e: &[Q]) -> Result<UvPoly> {
        check_dim(self.nvars, x.len())?;
        check_dim(self.nvars, e.len())?;
        // Work over the integers: x = X / D, e = E / D, c_m = C_m / L, so
        // p(x + t e) = sum over degrees k of (sum C_m (X + t E)^m) / (L D^k).
        let (ints, dd) = common_denominator(x.iter().chain(e));
        let (xi, ei) = ints.split_at(self.nvars);
        let (coeffs, ll) = common_denominator(self.terms.values());
        let maxexp: Vec<u32> = (0..self.nvars)
            .map(|i| self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0))
            .collect();
        // powers[i][k] = (X_i + t E_i)^k
        let powers: Vec<Vec<Vec<BigInt>>> = (0..self.nvars)
            .map(|i| {
                let base = vec![xi[i].clone(), ei[i].clone()];
                let mut v = vec![vec![BigInt::one()]];
                for k in 1..=maxexp[i] as usize {
                    let next = int_poly_mul(&v[k - 1], &base);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut by_degree: BTreeMap<u32, Vec<BigInt>> = BTreeMap::new();
        for ((m, _), c) in self.terms.iter().zip(coeffs) {
            let mut t = vec![c];
            for (i, &k) in m.0.iter().enumerate() {
                if k > 0 {
                    t = int_poly_mul(&t, &powers[i][k as usize]);
                }
            }
            let acc = by_degree.entry(m.degree()).or_default();
            if acc.len() < t.len() {
                acc.resize(t.len(), BigInt::zero());
            }
            for (a, b) in acc.iter_mut().zip(t) {
                *a += b;
            }
        }
        let mut out: Vec<Q> = Vec::new();
        for (deg, acc) in by_degree {
            let den = &ll * num_traits::pow(dd.clone(), deg as usize);
            if out.len() < acc.len() {
                out.resize(acc.len(), Q::zero());
            }
            for (o, a) in out.iter_mut().zip(acc) {
                if !a.is_zero() {
                    *o += Q::new(a, den.clone());
                }
            }
        }
        Ok(UvPoly::new(out))
    }

    /// Coefficients of `p(x + t e)` as polynomials in `x`: entry `k` is
    /// `D_e^k p / k!` (exact Taylor expansion in `t`).
    pub fn line_coefficients(&self, e: &[Q]) -> Result<Vec<MvPoly>> {
        check_dim(self.nvars, e.len())?;
        let d = self.degree() as usize;
        let mut out = Vec::with_capacity(d + 1);
        let mut cur = self.clone();
        for k in 0..=d {
            out.push(cur.scale(&(Q::one() / factorial(k))));
            cur = cur.directional_derivative(e)?;
        }
        while out.len() > 1 && out.last().is_some_and(MvPoly::is_zero) {
            out.pop();
        }
        Ok(out)
    }

    /// Substitutes `x_i <- images[i]`; all images share one variable count.
    pub fn substitute(&self, images: &[MvPoly]) -> Result<MvPoly> {
        check_dim(self.nvars, images.len())?;
        let target = images.first().map_or(0, MvPoly::nvars);
        for im in images {
            check_dim(target, im.nvars)?;
        }
        let mut cache: BTreeMap<(usize, u32), MvPoly> = BTreeMap::new();
        let mut acc = MvPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = MvPoly::constant(target, c.clone());
            for (i, &k) in m.0.iter().enumerate() {
                if k > 0 {
                    let pw = cache
                        .entry((i, k))
                        .or_insert_with(|| images[i].pow(k))
                        .clone();
                    t = &t * &pw;
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Substitutes rational values for some variables, keeping the variable count.
    pub fn fix_vars(&self, fixed: &[(usize, Q)]) -> Result<MvPoly> {
        let images: Vec<MvPoly> = (0..self.nvars)
            .map(|i| match fixed.iter().find(|(j, _)| *j == i) {
                Some((_, v)) => MvPoly::constant(self.nvars, v.clone()),
                None => MvPoly::var(self.nvars, i),
            })
            .collect();
        self.substitute(&images)
    }

    /// Re-embeds into `new_nvars` variables; variable `i` becomes `map[i]`.
    pub fn embed(&self, new_nvars: usize, map: &[usize]) -> Result<MvPoly> {
        check_dim(self.nvars, map.len())?;
        if map.iter().any(|&j| j >= new_nvars) {
            return Err(Error::Contract("embedding index out of range".into()));
        }
        let mut r = MvPoly::zero(new_nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; new_nvars];
            for (i, &k) in m.0.iter().enumerate() {
                e[map[i]] += k;
            }
            r.add_term(Monomial(e), c.clone());
        }
        Ok(r)
    }
}

impl Add for &MvPoly {
    type Output = MvPoly;
    /// Panics on a variable-count mismatch; use [`MvPoly::try_add`] to recover.
    fn add(self, rhs: &MvPoly) -> MvPoly {
        self.try_add(rhs).expect("MvPoly add")
    }
}

impl Sub for &MvPoly {
    type Output = MvPoly;
    fn sub(self, rhs: &MvPoly) -> MvPoly {
        self.try_sub(rhs).expect("MvPoly sub")
    }
}

impl Mul for &MvPoly {
    type Output = MvPoly;
    fn mul(self, rhs: &MvPoly) -> MvPoly {
        self.try_mul(rhs).expect("MvPoly mul")
    }
}

impl Add for MvPoly {
    type Output = MvPoly;
    fn add(self, rhs: MvPoly) -> MvPoly {
        &self + &rhs
    }
}

impl Sub for MvPoly {
    type Output = MvPoly;
    fn sub(self, rhs: MvPoly) -> MvPoly {
        &self - &rhs
    }
}

impl Mul for MvPoly {
    type Output = MvPoly;
    fn mul(self, rhs: MvPoly) -> MvPoly {
        &self * &rhs
    }
}

impl Neg for &MvPoly {
    type Output = MvPoly;
    fn neg(self) -> MvPoly {
        self.scale(&-Q::one())
    }
}

impl fmt::Display for MvPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.canonical_terms().enumerate() {
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("x{i}") } else { format!("x{i}^{k}") })
                .collect();
            let sep = if idx == 0 { "" } else { " + " };
            if mono.is_empty() {
                write!(f, "{sep}{}", fmt_q(c))?;
            } else if c.is_one() {
                write!(f, "{sep}{}", mono.join("*"))?;
            } else {
                write!(f, "{sep}{}*{}", fmt_q(c), mono.join("*"))?;
            }
        }
        Ok(())
    }
}
