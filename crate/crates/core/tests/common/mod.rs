#![allow(dead_code)]

use hypercert::certificates::monomials_of_degree;
use hypercert::{MvPoly, QMatrix, UvPoly, Q};
use num_bigint::BigInt;
use proptest::prelude::*;

pub fn rat() -> impl Strategy<Value = Q> {
    (-24i64..=24, 1i64..=7).prop_map(|(n, d)| Q::new(BigInt::from(n), BigInt::from(d)))
}

pub fn nonzero_rat() -> impl Strategy<Value = Q> {
    rat().prop_filter("nonzero", |v| *v != Q::from_integer(0.into()))
}

pub fn rvec(n: usize) -> impl Strategy<Value = Vec<Q>> {
    prop::collection::vec(rat(), n)
}

/// Univariate polynomial of exact degree `d`.
pub fn uv_of_degree(d: usize) -> impl Strategy<Value = UvPoly> {
    (rvec(d), nonzero_rat()).prop_map(|(mut c, lead)| {
        c.push(lead);
        UvPoly::new(c)
    })
}

/// Homogeneous form of degree `d` in `n` variables, roughly half the
/// monomials populated.
pub fn form(n: usize, d: u32) -> impl Strategy<Value = MvPoly> {
    let monos = monomials_of_degree(n, d);
    let len = monos.len();
    prop::collection::vec((rat(), any::<bool>()), len).prop_map(move |coeffs| {
        let terms = monos
            .iter()
            .zip(coeffs)
            .filter(|(_, (_, keep))| *keep)
            .map(|(m, (c, _))| (m.exps().to_vec(), c));
        MvPoly::from_terms(n, terms).expect("valid exponents")
    })
}

pub fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = QMatrix> {
    rvec(rows * cols).prop_map(move |v| QMatrix::new(rows, cols, v).expect("sized"))
}

pub fn symmetric(n: usize) -> impl Strategy<Value = QMatrix> {
    rvec(n * n).prop_map(move |v| {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                m[(i, j)] = v[i * n + j].clone();
                m[(j, i)] = v[i * n + j].clone();
            }
        }
        m
    })
}

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn axpy(a: &Q, x: &[Q], y: &[Q]) -> Vec<Q> {
    x.iter().zip(y).map(|(xi, yi)| a * xi + yi).collect()
}
