//! Univariate Bézoutian and Hankel matrices and the unimodular congruences
//! between them.
//!
//! The core routines are generic over [`Coeff`] so the same code serves
//! concrete rational coefficients and symbolic (polynomial) coefficients.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::poly::{MvPoly, UvPoly};
use crate::rational::{binomial, Q};

/// Commutative ring elements that can act as polynomial coefficients.
pub trait Coeff: Clone {
    fn zero_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_elem(&self, rhs: &Self) -> Self;
    fn sub_elem(&self, rhs: &Self) -> Self;
    fn mul_elem(&self, rhs: &Self) -> Self;
    fn scale_elem(&self, c: &Q) -> Self;
    /// The element as a rational constant, if it is one.
    fn as_constant(&self) -> Option<Q>;
}

impl Coeff for Q {
    fn zero_like(&self) -> Self {
        Q::zero()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_elem(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_elem(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_elem(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn scale_elem(&self, c: &Q) -> Self {
        self * c
    }
    fn as_constant(&self) -> Option<Q> {
        Some(self.clone())
    }
}

impl Coeff for MvPoly {
    fn zero_like(&self) -> Self {
        MvPoly::zero(self.nvars())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_elem(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_elem(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_elem(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn scale_elem(&self, c: &Q) -> Self {
        self.scale(c)
    }
    fn as_constant(&self) -> Option<Q> {
        match self.degree() {
            0 => Some(self.coeff(&vec![0; self.nvars()])),
            _ => None,
        }
    }
}

/// Bézoutian `B_m(a, b)` from ascending coefficient lists, as nested rows.
///
/// Each pair `p > q` contributes `c_pq = a_p b_q - a_q b_p` to the entries
/// `(q + r, p - 1 - r)` for `r = 0..p-q`, which is the expansion of
/// `c_pq (t^p s^q - t^q s^p) / (t - s)`.
pub fn bezout_generic<R: Coeff>(a: &[R], b: &[R], m: usize, zero: &R) -> Result<Vec<Vec<R>>> {
    let n = a.len().max(b.len());
    if n > m + 1 {
        return Err(Error::Contract(format!("Bezoutian size {m} below degree {}", n - 1)));
    }
    let get = |v: &[R], i: usize| v.get(i).cloned().unwrap_or_else(|| zero.clone());
    let mut out = vec![vec![zero.clone(); m]; m];
    for p in 1..n {
        for q in 0..p {
            let c = get(a, p).mul_elem(&get(b, q)).sub_elem(&get(a, q).mul_elem(&get(b, p)));
            if c.is_zero_elem() {
                continue;
            }
            for r in 0..p - q {
                let (i, j) = (q + r, p - 1 - r);
                out[i][j] = out[i][j].add_elem(&c);
            }
        }
    }
    Ok(out)
}

/// First `count` Laurent coefficients `h_1, h_2, ...` of `b/a` at infinity.
/// The leading coefficient of `a` must be a nonzero constant so every
/// division is exact.
pub fn laurent_generic<R: Coeff>(b: &[R], a: &[R], count: usize) -> Result<Vec<R>> {
    let d = a.len().checked_sub(1).ok_or_else(|| Error::Contract("denominator is zero".into()))?;
    let lead = a[d]
        .as_constant()
        .filter(|c| !c.is_zero())
        .ok_or_else(|| Error::Contract("denominator leading coefficient must be a nonzero constant".into()))?;
    if b.len() > d {
        return Err(Error::Contract("numerator degree must be below denominator degree".into()));
    }
    let inv = Q::one() / lead;
    let zero = a[d].zero_like();
    let mut h: Vec<R> = Vec::with_capacity(count);
    for k in 1..=count {
        let mut acc = if k <= d { b.get(d - k).cloned().unwrap_or_else(|| zero.clone()) } else { zero.clone() };
        for j in 1..=d.min(k - 1) {
            if !a[d - j].is_zero_elem() {
                acc = acc.sub_elem(&a[d - j].mul_elem(&h[k - j - 1]));
            }
        }
        h.push(acc.scale_elem(&inv));
    }
    Ok(h)
}

/// `H_m(b/a) = [h_{i+j-1}]` as nested rows.
pub fn hankel_generic<R: Coeff>(b: &[R], a: &[R], m: usize) -> Result<Vec<Vec<R>>> {
    let h = laurent_generic(b, a, (2 * m).saturating_sub(1))?;
    Ok((0..m).map(|i| (0..m).map(|j| h[i + j].clone()).collect()).collect())
}

fn check_pair(a: &UvPoly, b: &UvPoly, m: usize) -> Result<usize> {
    let d = a.degree().ok_or_else(|| Error::Contract("denominator is zero".into()))?;
    if let Some(db) = b.degree() {
        if db >= d {
            return Err(Error::Contract(format!("need deg(b) < deg(a), got {db} >= {d}")));
        }
    }
    if d > m {
        return Err(Error::Contract(format!("need deg(a) <= m, got {d} > {m}")));
    }
    Ok(d)
}

fn to_matrix(rows: Vec<Vec<Q>>) -> QMatrix {
    QMatrix::from_rows(rows).expect("square by construction")
}

/// `B_m(a, b)`: symmetric `m × m`, requires `deg b < deg a <= m`.
pub fn bezout_matrix(a: &UvPoly, b: &UvPoly, m: usize) -> Result<QMatrix> {
    check_pair(a, b, m)?;
    Ok(to_matrix(bezout_generic(a.coeffs(), b.coeffs(), m, &Q::zero())?))
}

/// Laurent coefficients and size bundled for `H_m(b/a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HankelSpec {
    pub b: UvPoly,
    pub a: UvPoly,
    pub m: usize,
    /// `h_1, ..., h_{2m-1}`.
    pub laurent: Vec<Q>,
}

impl HankelSpec {
    pub fn new(b: &UvPoly, a: &UvPoly, m: usize) -> Result<Self> {
        let d = a.degree().ok_or_else(|| Error::Contract("denominator is zero".into()))?;
        if b.degree().is_some_and(|db| db >= d) {
            return Err(Error::Contract("need deg(b) < deg(a)".into()));
        }
        let laurent = laurent_generic(b.coeffs(), a.coeffs(), (2 * m).saturating_sub(1))?;
        Ok(HankelSpec { b: b.clone(), a: a.clone(), m, laurent })
    }

    pub fn matrix(&self) -> QMatrix {
        let m = self.m;
        to_matrix((0..m).map(|i| (0..m).map(|j| self.laurent[i + j].clone()).collect()).collect())
    }

    /// Checks that `a(t) · Σ h_k t^{-k} - b(t)` has no terms `t^{-1}` through
    /// `t^{-(2m-1-deg a)}`, i.e. the stored coefficients obey the recurrence.
    pub fn recurrence_holds(&self) -> bool {
        let d = self.a.degree().unwrap_or(0);
        let n = self.laurent.len();
        // coefficient of t^{-s} in a(t) Σ h_k t^{-k} is Σ_i a_i h_{i+s}
        (1..=n.saturating_sub(d)).all(|s| {
            (0..=d)
                .filter(|i| i + s <= n)
                .map(|i| self.a.coeff(i) * &self.laurent[i + s - 1])
                .sum::<Q>()
                .is_zero()
        })
    }
}

/// `H_m(b/a) = [h_{i+j-1}]`, requires `deg b < deg a`.
pub fn hankel_matrix(b: &UvPoly, a: &UvPoly, m: usize) -> Result<QMatrix> {
    Ok(HankelSpec::new(b, a, m)?.matrix())
}

fn require_monic(a: &UvPoly, m: usize) -> Result<usize> {
    let d = a.degree().ok_or_else(|| Error::Contract("polynomial is zero".into()))?;
    if !a.leading().is_one() {
        return Err(Error::Contract("polynomial must be monic; normalize first".into()));
    }
    if d > m {
        return Err(Error::Contract(format!("need deg(a) <= m, got {d} > {m}")));
    }
    Ok(d)
}

/// `B_m(t^{m-d} a, 1)` for monic `a` of degree `d <= m`. Entry `(i, j)`
/// (1-based) is the coefficient of `t^{i+j-1}` in `t^{m-d} a` when
/// `i + j - 1 <= m`, else 0. Unimodular.
pub fn bezout_of_one(a: &UvPoly, m: usize) -> Result<QMatrix> {
    let d = require_monic(a, m)?;
    let mut padded = vec![Q::zero(); m - d];
    padded.extend_from_slice(a.coeffs());
    Ok(to_matrix(bezout_generic(&padded, &[Q::one()], m, &Q::zero())?))
}

/// Unimodular `M_m(a)` with `B_m(a, b) = M H_m(b/a) Mᵀ` for every `b` with
/// `deg b < deg a`. Requires monic `a`.
pub fn congruence_matrix(a: &UvPoly, m: usize) -> Result<QMatrix> {
    require_monic(a, m)?;
    Ok(to_matrix(congruence_generic(a.coeffs(), m)?))
}

/// `Pᵀ B_m(t^{m-d} a, 1)` for a monic coefficient list `a` of degree
/// `d <= m`, where `P` moves the trailing `m - d` coordinates to the front.
/// The leading element of `a` must be the ring's one.
pub fn congruence_generic<R: Coeff>(a: &[R], m: usize) -> Result<Vec<Vec<R>>> {
    let d = a.len().checked_sub(1).ok_or_else(|| Error::Contract("polynomial is zero".into()))?;
    if d > m {
        return Err(Error::Contract(format!("need deg(a) <= m, got {d} > {m}")));
    }
    let zero = a[d].zero_like();
    let mut padded = vec![zero.clone(); m - d];
    padded.extend_from_slice(a);
    let b1 = bezout_generic(&padded, &[a[d].clone()], m, &zero)?;
    let k = m - d;
    Ok((0..m).map(|i| b1[if i < d { i + k } else { i - d }].clone()).collect())
}

/// Congruence for non-monic `a` with leading coefficient `c`:
/// `c · M_m(a / c)`, so that `B_m(a, b) = M H_m(b/a) Mᵀ`.
pub fn congruence_matrix_scaled(a: &UvPoly, m: usize) -> Result<QMatrix> {
    let c = a.leading();
    if c.is_zero() {
        return Err(Error::Contract("polynomial is zero".into()));
    }
    Ok(congruence_matrix(&a.scale(&(Q::one() / &c)), m)?.scale(&c))
}

/// Upper-triangular Pascal matrix `[K]_{jk} = C(k-1, j-1) t0^{k-j}`.
pub fn shift_matrix(t0: &Q, m: usize) -> QMatrix {
    let mut k = QMatrix::zeros(m, m);
    for j in 0..m {
        for c in j..m {
            k[(j, c)] = binomial(c, j) * num_traits::pow(t0.clone(), c - j);
        }
    }
    k
}
