//! Square matrices with multivariate polynomial entries.

use num_traits::Zero;

use crate::error::{check_dim, Error, Result};
use crate::linalg::QMatrix;
use crate::poly::MvPoly;
use crate::rational::Q;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    nvars: usize,
    entries: Vec<Vec<MvPoly>>,
}

impl PolyMatrix {
    pub fn zeros(dim: usize, nvars: usize) -> Self {
        PolyMatrix { nvars, entries: vec![vec![MvPoly::zero(nvars); dim]; dim] }
    }

    pub fn from_rows(nvars: usize, entries: Vec<Vec<MvPoly>>) -> Result<Self> {
        let d = entries.len();
        for row in &entries {
            check_dim(d, row.len())?;
            for e in row {
                check_dim(nvars, e.nvars())?;
            }
        }
        Ok(PolyMatrix { nvars, entries })
    }

    /// Lifts a rational matrix to constant polynomial entries.
    pub fn constant(m: &QMatrix, nvars: usize) -> Result<Self> {
        check_dim(m.rows(), m.cols())?;
        let entries = (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| MvPoly::constant(nvars, m[(i, j)].clone())).collect())
            .collect();
        Ok(PolyMatrix { nvars, entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, i: usize, j: usize) -> &MvPoly {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<MvPoly>] {
        &self.entries
    }

    pub fn is_symmetric(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(MvPoly::is_zero)
    }

    pub fn eval(&self, point: &[Q]) -> Result<QMatrix> {
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(|e| e.eval(point)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        QMatrix::from_rows(rows)
    }

    fn zip(&self, other: &PolyMatrix, f: impl Fn(&MvPoly, &MvPoly) -> Result<MvPoly>) -> Result<PolyMatrix> {
        check_dim(self.dim(), other.dim())?;
        check_dim(self.nvars, other.nvars)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| f(x, y)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyMatrix { nvars: self.nvars, entries })
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.zip(other, MvPoly::try_add)
    }

    pub fn sub(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.zip(other, MvPoly::try_sub)
    }

    pub fn scale(&self, c: &Q) -> PolyMatrix {
        PolyMatrix {
            nvars: self.nvars,
            entries: self.entries.iter().map(|r| r.iter().map(|e| e.scale(c)).collect()).collect(),
        }
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        check_dim(self.dim(), other.dim())?;
        check_dim(self.nvars, other.nvars)?;
        let d = self.dim();
        let mut out = PolyMatrix::zeros(d, self.nvars);
        for i in 0..d {
            for j in 0..d {
                let mut acc = MvPoly::zero(self.nvars);
                for k in 0..d {
                    if !self.entries[i][k].is_zero() && !other.entries[k][j].is_zero() {
                        acc = &acc + &(&self.entries[i][k] * &other.entries[k][j]);
                    }
                }
                out.entries[i][j] = acc;
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> PolyMatrix {
        let d = self.dim();
        PolyMatrix {
            nvars: self.nvars,
            entries: (0..d).map(|i| (0..d).map(|j| self.entries[j][i].clone()).collect()).collect(),
        }
    }

    /// `K P Kᵀ` for a rational `K`.
    pub fn congruence_by(&self, k: &QMatrix) -> Result<PolyMatrix> {
        check_dim(self.dim(), k.rows())?;
        check_dim(self.dim(), k.cols())?;
        let kp = PolyMatrix::constant(k, self.nvars)?;
        kp.mul(self)?.mul(&kp.transpose())
    }

    /// `yᵀ P y` for a rational vector `y`.
    pub fn quad_form(&self, y: &[Q]) -> Result<MvPoly> {
        check_dim(self.dim(), y.len())?;
        let mut acc = MvPoly::zero(self.nvars);
        for (i, yi) in y.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                let c = yi * yj;
                if !c.is_zero() {
                    acc = &acc + &self.entries[i][j].scale(&c);
                }
            }
        }
        Ok(acc)
    }

    pub fn trace(&self) -> MvPoly {
        (0..self.dim()).fold(MvPoly::zero(self.nvars), |acc, i| &acc + &self.entries[i][i])
    }

    /// Determinant by cofactor expansion; intended for small dimensions.
    pub fn det(&self) -> MvPoly {
        let idx: Vec<usize> = (0..self.dim()).collect();
        self.minor(&idx, 0)
    }

    fn minor(&self, cols: &[usize], row: usize) -> MvPoly {
        if cols.is_empty() {
            return MvPoly::constant(self.nvars, Q::from_integer(1.into()));
        }
        let mut acc = MvPoly::zero(self.nvars);
        for (pos, &c) in cols.iter().enumerate() {
            let entry = &self.entries[row][c];
            if entry.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = entry * &self.minor(&rest, row + 1);
            acc = if pos % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    /// Upper-left `k × k` block.
    pub fn leading_block(&self, k: usize) -> Result<PolyMatrix> {
        if k > self.dim() {
            return Err(Error::Contract(format!("block {k} exceeds dimension {}", self.dim())));
        }
        Ok(PolyMatrix {
            nvars: self.nvars,
            entries: self.entries[..k].iter().map(|r| r[..k].to_vec()).collect(),
        })
    }
}
