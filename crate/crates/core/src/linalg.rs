//! Dense exact rational matrices: products, rank, nullspace, determinant, and
//! an LDLᵀ-based positive-semidefiniteness certificate.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{One, Signed, Zero};

use crate::error::{check_dim, Error, Result};
use crate::rational::{fmt_q, Q};

/// Row-major dense rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl QMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Q>) -> Result<Self> {
        check_dim(rows * cols, data.len())?;
        Ok(QMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn diagonal(d: &[Q]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, v) in d.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    /// All rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Q>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            check_dim(c, row.len())?;
            data.extend(row);
        }
        Ok(QMatrix { rows: r, cols: c, data })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Q::from_integer(v.into())).collect())
                .collect(),
        )
        .expect("ragged literal")
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Q>], nrows: usize) -> Result<Self> {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            check_dim(nrows, c.len())?;
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &QMatrix) -> Result<QMatrix> {
        check_dim(self.cols, rhs.rows)?;
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Q]) -> Result<Vec<Q>> {
        check_dim(self.cols, v.len())?;
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn add(&self, rhs: &QMatrix) -> Result<QMatrix> {
        check_dim(self.rows, rhs.rows)?;
        check_dim(self.cols, rhs.cols)?;
        Ok(QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, rhs: &QMatrix) -> Result<QMatrix> {
        check_dim(self.rows, rhs.rows)?;
        check_dim(self.cols, rhs.cols)?;
        Ok(QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, c: &Q) -> QMatrix {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    /// `A B Aᵀ`.
    pub fn congruence(&self, b: &QMatrix) -> Result<QMatrix> {
        self.mul(b)?.mul(&self.transpose())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn trace(&self) -> Q {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    /// `vᵀ M v`.
    pub fn quad_form(&self, v: &[Q]) -> Result<Q> {
        check_dim(self.rows, v.len())?;
        let mv = self.mul_vec(v)?;
        Ok(v.iter().zip(&mv).map(|(a, b)| a * b).sum())
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = Q::one() / &m[(r, c)];
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    let v = &f * &m[(r, j)];
                    m[(i, j)] -= v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Exact basis of `{v : M v = 0}` as the columns of the result.
    pub fn nullspace(&self) -> QMatrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Self::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            basis[(f, k)] = Q::one();
            for (row, &pc) in pivots.iter().enumerate() {
                basis[(pc, k)] = -r[(row, f)].clone();
            }
        }
        basis
    }

    /// Determinant by Gaussian elimination over the rationals.
    pub fn det(&self) -> Result<Q> {
        check_dim(self.rows, self.cols)?;
        let mut m = self.clone();
        let mut det = Q::one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(Q::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det *= &piv;
            for i in c + 1..m.rows {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] / &piv;
                for j in c..m.cols {
                    let v = &f * &m[(c, j)];
                    m[(i, j)] -= v;
                }
            }
        }
        Ok(det)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Principal submatrix on the given index set.
    pub fn principal(&self, idx: &[usize]) -> QMatrix {
        let mut m = Self::zeros(idx.len(), idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                m[(a, b)] = self[(i, j)].clone();
            }
        }
        m
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(fmt_q).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Outcome of [`ldl_psd_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PsdCertificate {
    /// `P M Pᵀ = L diag(pivots) Lᵀ`, where row `k` of `P M Pᵀ` is row
    /// `perm[k]` of `M` and `L` is unit lower triangular.
    Psd { perm: Vec<usize>, l: QMatrix, pivots: Vec<Q> },
    /// `witnessᵀ M witness = value < 0`.
    NotPsd { witness: Vec<Q>, value: Q },
}

impl PsdCertificate {
    pub fn is_psd(&self) -> bool {
        matches!(self, PsdCertificate::Psd { .. })
    }

    /// Rebuilds `M` from the factors; `None` for a negative verdict.
    pub fn reconstruct(&self) -> Option<QMatrix> {
        let PsdCertificate::Psd { perm, l, pivots } = self else {
            return None;
        };
        let n = perm.len();
        let ldl = l.mul(&QMatrix::diagonal(pivots)).ok()?.mul(&l.transpose()).ok()?;
        let mut m = QMatrix::zeros(n, n);
        for a in 0..n {
            for b in 0..n {
                m[(perm[a], perm[b])] = ldl[(a, b)].clone();
            }
        }
        Some(m)
    }

    /// Re-verifies the certificate against `m` from scratch.
    pub fn verify(&self, m: &QMatrix) -> bool {
        match self {
            PsdCertificate::Psd { pivots, .. } => {
                pivots.iter().all(|p| !p.is_negative()) && self.reconstruct().as_ref() == Some(m)
            }
            PsdCertificate::NotPsd { witness, value } => {
                value.is_negative() && m.quad_form(witness).ok().as_ref() == Some(value)
            }
        }
    }
}

/// Exact PSD test by symmetric LDLᵀ with diagonal pivoting.
///
/// Positive diagonal entries are used as pivots. A negative diagonal entry
/// in the Schur complement gives a witness directly. Once only zero diagonal
/// entries remain, any nonzero off-diagonal `s_ij` gives the witness
/// `e_i - s_ij e_j` of value `-2 s_ij²`. Witnesses found in a Schur
/// complement are pulled back through `L`.
pub fn ldl_psd_check(m: &QMatrix) -> Result<PsdCertificate> {
    if !m.is_symmetric() {
        return Err(Error::Contract("ldl_psd_check needs a symmetric matrix".into()));
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut l = QMatrix::identity(n);
    let mut perm: Vec<usize> = (0..n).collect();
    let mut pivots = Vec::with_capacity(n);
    for k in 0..n {
        if let Some(i) = (k..n).find(|&i| a[(i, i)].is_negative()) {
            let mut z = vec![Q::zero(); n];
            z[i] = Q::one();
            return Ok(not_psd(m, &l, &perm, z));
        }
        let Some(p) = (k..n).find(|&i| a[(i, i)].is_positive()) else {
            for i in k..n {
                for j in k..n {
                    if i != j && !a[(i, j)].is_zero() {
                        let mut z = vec![Q::zero(); n];
                        z[i] = Q::one();
                        z[j] = -a[(i, j)].clone();
                        return Ok(not_psd(m, &l, &perm, z));
                    }
                }
            }
            pivots.resize(n, Q::zero());
            break;
        };
        if p != k {
            a.swap_rows(p, k);
            a = a.transpose();
            a.swap_rows(p, k);
            perm.swap(p, k);
            for j in 0..k {
                let tmp = l[(p, j)].clone();
                l[(p, j)] = l[(k, j)].clone();
                l[(k, j)] = tmp;
            }
        }
        let d = a[(k, k)].clone();
        for i in k + 1..n {
            l[(i, k)] = &a[(i, k)] / &d;
        }
        for i in k + 1..n {
            if l[(i, k)].is_zero() {
                continue;
            }
            for j in k + 1..n {
                let v = &l[(i, k)] * &a[(k, j)];
                a[(i, j)] -= v;
            }
        }
        for i in k + 1..n {
            a[(i, k)] = Q::zero();
            a[(k, i)] = Q::zero();
        }
        pivots.push(d);
    }
    Ok(PsdCertificate::Psd { perm, l, pivots })
}

/// Maps a reduced-coordinate vector `z` back to the original basis:
/// `v = Pᵀ L⁻ᵀ z`, so `vᵀ M v = zᵀ (Schur block) z`.
fn not_psd(m: &QMatrix, l: &QMatrix, perm: &[usize], z: Vec<Q>) -> PsdCertificate {
    let n = z.len();
    let mut y = z;
    for i in (0..n).rev() {
        let mut s = y[i].clone();
        for j in i + 1..n {
            if !l[(j, i)].is_zero() {
                s -= &l[(j, i)] * &y[j];
            }
        }
        y[i] = s;
    }
    let mut v = vec![Q::zero(); n];
    for (k, &orig) in perm.iter().enumerate() {
        v[orig] = y[k].clone();
    }
    let value = m.quad_form(&v).expect("square");
    PsdCertificate::NotPsd { witness: v, value }
}
