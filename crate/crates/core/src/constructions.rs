//! Concrete hyperbolic polynomial families and the lifting combinators.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{check_dim, Error, Result};
use crate::graph::Graph;
use crate::hyperbolic::HyperbolicContext;
use crate::linalg::QMatrix;
use crate::poly::{Homogeneity, MvPoly, UvPoly};
use crate::polymatrix::PolyMatrix;
use crate::rational::{binomial, dot, fmt_q, q, split_radical, sqrt_exact, Q};
use crate::roots::all_roots_real;

/// The specialized Vámos quartic in four variables:
/// `x3^2 x4^2 + 4 (x1x2x3 + x1x2x4 + x1x3x4 + x2x3x4)(x1 + x2 + x3 + x4)`.
pub fn vamos_specialized() -> MvPoly {
    let x = |i| MvPoly::var(4, i);
    let e3 = &(&(&(&(&x(0) * &x(1)) * &x(2)) + &(&(&x(0) * &x(1)) * &x(3))) + &(&(&x(0) * &x(2)) * &x(3)))
        + &(&(&x(1) * &x(2)) * &x(3));
    let e1 = &(&(&x(0) + &x(1)) + &x(2)) + &x(3);
    let sq = &(&x(2) * &x(2)) * &(&x(3) * &x(3));
    &sq + &(&e3 * &e1).scale(&q(4))
}

/// Direction used with [`vamos_specialized`] for the non-SOS certificate.
pub fn vamos_direction() -> Vec<Q> {
    vec![q(0), q(0), q(1), q(1)]
}

/// Cubic attached to a graph, with its variable layout: `x0` at index 0,
/// vertex `i` at `1 + i`, edge `k` (in [`Graph::edges`] order) at
/// `1 + nverts + k`.
///
/// The polynomial is `c x0^3 - a x0 (|x|^2 + |y|^2) + b q_G(x, y)` with
/// `(c, a, b) = (2k/(k-1), 1, 1)`, or `(1, 3, sqrt(54k/(k-1)))` when
/// normalized.
#[derive(Clone, Debug)]
pub struct LabeledCubic {
    pub poly: MvPoly,
    pub graph: Graph,
    pub k: Q,
    pub normalized: bool,
    pub cubic_coeff: Q,
    pub square_coeff: Q,
    pub graph_coeff: Q,
}

impl LabeledCubic {
    pub fn nvars(&self) -> usize {
        1 + self.graph.nverts() + self.graph.edges().len()
    }

    pub fn vertex_var(&self, i: usize) -> usize {
        1 + i
    }

    pub fn edge_var(&self, k: usize) -> usize {
        1 + self.graph.nverts() + k
    }

    /// `e0`, the hyperbolicity direction.
    pub fn direction(&self) -> Vec<Q> {
        let mut e = vec![Q::zero(); self.nvars()];
        e[0] = Q::one();
        e
    }

    pub fn context(&self) -> Result<HyperbolicContext> {
        HyperbolicContext::new(self.poly.clone(), self.direction())
    }

    /// Human-readable variable names in index order.
    pub fn variable_names(&self) -> Vec<String> {
        let mut names = vec!["x0".to_string()];
        names.extend((0..self.graph.nverts()).map(|i| format!("x{}", i + 1)));
        names.extend(self.graph.edges().iter().map(|(a, b)| format!("y{}_{}", a + 1, b + 1)));
        names
    }
}

/// `q_G(x, y) = sum over edges (i, j) of x_i x_j y_ij`, in the cubic layout.
pub fn graph_form(g: &Graph) -> MvPoly {
    let n = 1 + g.nverts() + g.edges().len();
    let mut acc = MvPoly::zero(n);
    for (k, &(a, b)) in g.edges().iter().enumerate() {
        let t = &(&MvPoly::var(n, 1 + a) * &MvPoly::var(n, 1 + b)) * &MvPoly::var(n, 1 + g.nverts() + k);
        acc = &acc + &t;
    }
    acc
}

fn squared_norm(n: usize, vars: std::ops::Range<usize>) -> MvPoly {
    vars.fold(MvPoly::zero(n), |acc, i| &acc + &MvPoly::var(n, i).pow(2))
}

/// Graph cubic for parameter `k > 1`. The normalized form needs
/// `54k/(k-1)` to be a rational square (k = 3 gives coefficient 9).
pub fn graph_cubic(g: &Graph, k: &Q, normalized: bool) -> Result<LabeledCubic> {
    if k == &Q::one() {
        return Err(Error::Contract("k = 1 makes 2k/(k-1) undefined".into()));
    }
    if k < &Q::one() {
        return Err(Error::Contract(format!("k must exceed 1, got {}", fmt_q(k))));
    }
    let (c, a, b) = if normalized {
        let sq = k * q(54) / (k - q(1));
        let b = sqrt_exact(&sq).ok_or_else(|| {
            Error::Unsupported(format!("normalized graph cubic is irrational for k = {}", fmt_q(k)))
        })?;
        (q(1), q(3), b)
    } else {
        (k * q(2) / (k - q(1)), q(1), q(1))
    };
    let n = 1 + g.nverts() + g.edges().len();
    let x0 = MvPoly::var(n, 0);
    let s = squared_norm(n, 1..n);
    let poly = &(&x0.pow(3).scale(&c) - &(&x0 * &s).scale(&a)) + &graph_form(g).scale(&b);
    Ok(LabeledCubic {
        poly,
        graph: g.clone(),
        k: k.clone(),
        normalized,
        cubic_coeff: c,
        square_coeff: a,
        graph_coeff: b,
    })
}

/// `x0^3 - 3 x0 |x|^2 + 2 q(x)` in `n + 1` variables, `x0` first.
pub fn std_cubic(qpoly: &MvPoly) -> Result<MvPoly> {
    if !qpoly.is_zero() && qpoly.is_homogeneous() != Homogeneity::Yes(3) {
        return Err(Error::NotHomogeneous);
    }
    let n = qpoly.nvars() + 1;
    let map: Vec<usize> = (1..n).collect();
    let lifted = qpoly.embed(n, &map)?;
    let x0 = MvPoly::var(n, 0);
    let s = squared_norm(n, 1..n);
    Ok(&(&x0.pow(3) - &(&x0 * &s).scale(&q(3))) + &lifted.scale(&q(2)))
}

/// `sign * sqrt(square)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SqrtCoord {
    pub sign: i8,
    pub square: Q,
}

impl SqrtCoord {
    pub fn zero() -> Self {
        SqrtCoord { sign: 0, square: Q::zero() }
    }

    pub fn to_f64(&self) -> f64 {
        self.sign as f64 * crate::rational::to_f64(&self.square).sqrt()
    }
}

/// `coeff * sqrt(radicand)` with `radicand` squarefree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalValue {
    pub coeff: Q,
    pub radicand: BigInt,
}

impl RadicalValue {
    pub fn squared(&self) -> Q {
        &self.coeff * &self.coeff * Q::from_integer(self.radicand.clone())
    }
}

/// Maximizer of `q_G` on the unit sphere, supported on one maximum clique.
#[derive(Clone, Debug)]
pub struct NesterovPoint {
    pub omega: usize,
    pub clique: Vec<usize>,
    /// Square of the maximum value, `(2/27)(1 - 1/omega)`.
    pub value_squared: Q,
    /// Coordinates in the [`LabeledCubic`] layout; `x0 = 0`.
    pub coords: Vec<SqrtCoord>,
}

/// Builds the maximizer with `x_i^2 = 2/(3 omega)` on a maximum clique,
/// `y_ij^2 = 1/(3 C(omega, 2))` on its edges, all signs positive.
pub fn nesterov_maximizer(g: &Graph) -> Result<NesterovPoint> {
    let (omega, clique) = g.clique_number();
    let n = 1 + g.nverts() + g.edges().len();
    let mut coords = vec![SqrtCoord::zero(); n];
    if omega == 0 {
        return Ok(NesterovPoint { omega, clique, value_squared: Q::zero(), coords });
    }
    let w = Q::from_integer(BigInt::from(omega));
    let xsq = q(2) / (q(3) * &w);
    for &v in &clique {
        coords[1 + v] = SqrtCoord { sign: 1, square: xsq.clone() };
    }
    if omega >= 2 {
        let ysq = Q::one() / (q(3) * binomial(omega, 2));
        for (i, &a) in clique.iter().enumerate() {
            for &b in &clique[i + 1..] {
                let k = g.edge_index(a, b).ok_or_else(|| Error::Consistency("clique edge missing".into()))?;
                coords[1 + g.nverts() + k] = SqrtCoord { sign: 1, square: ysq.clone() };
            }
        }
    }
    let value_squared = q(2) / q(27) * (Q::one() - Q::one() / w);
    Ok(NesterovPoint { omega, clique, value_squared, coords })
}

impl NesterovPoint {
    /// `|point|^2`, exactly.
    pub fn squared_norm(&self) -> Q {
        self.coords.iter().filter(|c| c.sign != 0).map(|c| c.square.clone()).sum()
    }

    /// Exact `q_G` at the point. Terms are grouped by squarefree radicand;
    /// more than one surviving radicand is unsupported.
    pub fn graph_form_value(&self, g: &Graph) -> Result<RadicalValue> {
        check_dim(1 + g.nverts() + g.edges().len(), self.coords.len())?;
        let mut groups: BTreeMap<BigInt, Q> = BTreeMap::new();
        for (k, &(a, b)) in g.edges().iter().enumerate() {
            let f = [&self.coords[1 + a], &self.coords[1 + b], &self.coords[1 + g.nverts() + k]];
            let sign: i8 = f.iter().map(|c| c.sign).product();
            if sign == 0 {
                continue;
            }
            let prod: Q = f.iter().map(|c| c.square.clone()).product();
            let (c, m) = split_radical(&prod).ok_or_else(|| Error::Budget("radicand too large".into()))?;
            *groups.entry(m).or_insert_with(Q::zero) += if sign > 0 { c } else { -c };
        }
        groups.retain(|_, c| !c.is_zero());
        match groups.len() {
            0 => Ok(RadicalValue { coeff: Q::zero(), radicand: BigInt::one() }),
            1 => {
                let (radicand, coeff) = groups.into_iter().next().unwrap();
                Ok(RadicalValue { coeff, radicand })
            }
            _ => Err(Error::Unsupported("graph form value spans several radicals".into())),
        }
    }

    /// Rational polynomial whose roots are those of `t -> p(t e0 - w)` and of
    /// its conjugate. The conjugate is `-f(-t)`, so real-rootedness of the
    /// norm and of the line polynomial coincide.
    pub fn line_norm_polynomial(&self, cubic: &LabeledCubic) -> Result<UvPoly> {
        let s = self.squared_norm();
        let g = self.graph_form_value(&cubic.graph)?;
        // f(t) = c t^3 - a s t - b g
        let rational_part = UvPoly::new(vec![Q::zero(), -(&cubic.square_coeff * &s), Q::zero(), cubic.cubic_coeff.clone()]);
        let irr = &cubic.graph_coeff * &g.coeff;
        let irr_sq = &irr * &irr * Q::from_integer(g.radicand.clone());
        Ok(&(&rational_part * &rational_part) - &UvPoly::constant(irr_sq))
    }

    /// True when the line through the point in direction `e0` has non-real
    /// roots, decided by Sturm sequences on the norm polynomial.
    pub fn falsifies(&self, cubic: &LabeledCubic) -> Result<bool> {
        Ok(!all_roots_real(&self.line_norm_polynomial(cubic)?)?)
    }
}

/// `ell^k p`. Requires `ell` linear with `ell(e) > 0` and `ell(u) = 0`.
pub fn degree_lift(ctx: &HyperbolicContext, u: &[Q], ell: &MvPoly, k: u32) -> Result<MvPoly> {
    check_dim(ctx.nvars(), ell.nvars())?;
    check_dim(ctx.nvars(), u.len())?;
    if ell.is_homogeneous() != Homogeneity::Yes(1) || ell.is_zero() {
        return Err(Error::Contract("lift factor must be a nonzero linear form".into()));
    }
    if !ell.eval(ctx.direction())?.is_positive() {
        return Err(Error::Contract("lift factor must be positive at e".into()));
    }
    if !ell.eval(u)?.is_zero() {
        return Err(Error::Contract("lift factor must vanish at u".into()));
    }
    Ok(&ell.pow(k) * ctx.poly())
}

/// `q(e') p(x) + q(x') D_e p(x)` in `n + n'` variables. The lifted
/// direction is `(e, 0)`.
pub fn variable_lift(ctx: &HyperbolicContext, q_linear: &MvPoly, e_prime: &[Q]) -> Result<MvPoly> {
    check_dim(q_linear.nvars(), e_prime.len())?;
    if q_linear.is_homogeneous() != Homogeneity::Yes(1) || q_linear.is_zero() {
        return Err(Error::Contract("lift form must be a nonzero linear form".into()));
    }
    let qe = q_linear.eval(e_prime)?;
    if !qe.is_positive() {
        return Err(Error::Contract(format!("need q(e') > 0, got {}", fmt_q(&qe))));
    }
    let n = ctx.nvars();
    let total = n + q_linear.nvars();
    let left: Vec<usize> = (0..n).collect();
    let right: Vec<usize> = (n..total).collect();
    let p = ctx.poly().embed(total, &left)?;
    let dp = ctx.derivative(ctx.direction())?.embed(total, &left)?;
    let ql = q_linear.embed(total, &right)?;
    Ok(&p.scale(&qe) + &(&ql * &dp))
}

/// Hyperbolic polynomial in `n >= 4` variables of degree `d >= 4` that is
/// not SOS-hyperbolic: `x3^(d-4) (p + (x5 + ... + xn) D_e p)` for the
/// specialized Vámos quartic, with direction `(0, 0, 1, 1, 0, ..., 0)`.
pub fn vamos_family(n: usize, d: usize) -> Result<HyperbolicContext> {
    if n < 4 || d < 4 {
        return Err(Error::Contract("need n >= 4 and d >= 4".into()));
    }
    let base = HyperbolicContext::new(vamos_specialized(), vamos_direction())?;
    let mut e = vamos_direction();
    e.resize(n, Q::zero());
    let lifted = if n == 4 {
        base.poly().clone()
    } else {
        let m = n - 4;
        let ones = vec![Q::one(); m];
        let e_prime = vec![Q::one() / Q::from_integer(BigInt::from(m)); m];
        variable_lift(&base, &MvPoly::linear(&ones), &e_prime)?
    };
    let ctx = HyperbolicContext::new(lifted, e.clone())?;
    let mut u = vec![Q::zero(); n];
    u[3] = Q::one();
    let ell = MvPoly::var(n, 2);
    let p = degree_lift(&ctx, &u, &ell, (d - 4) as u32)?;
    HyperbolicContext::new(p, e)
}

/// Which special family to build.
#[derive(Clone, Debug)]
pub enum SpecialKind {
    /// Determinant of a symmetric `d × d` matrix in its upper-triangular
    /// entries, row-major.
    DetSymmetric(usize),
    /// Product of linear forms, each positive at `e`.
    LinearForms { forms: Vec<Vec<Q>>, e: Vec<Q> },
    /// Determinant of `[[x3, 0, x1], [0, x1 + x3, x2], [x1, x2, x3]]`.
    SingularCubic,
}

#[derive(Clone, Debug)]
pub struct SpecialPoly {
    pub ctx: HyperbolicContext,
    /// Symmetric matrices `A_i` with `p = det(sum x_i A_i)`, when determinantal.
    pub pencil: Option<Vec<QMatrix>>,
    pub forms: Option<Vec<Vec<Q>>>,
}

pub fn special_poly(kind: &SpecialKind) -> Result<SpecialPoly> {
    match kind {
        SpecialKind::DetSymmetric(d) => {
            let d = *d;
            if d == 0 {
                return Err(Error::Contract("matrix size must be positive".into()));
            }
            let pencil = symmetric_pencil(d);
            let e: Vec<Q> = upper_pairs(d).map(|(i, j)| if i == j { q(1) } else { q(0) }).collect();
            let p = pencil_determinant(&pencil)?;
            Ok(SpecialPoly { ctx: HyperbolicContext::new(p, e)?, pencil: Some(pencil), forms: None })
        }
        SpecialKind::LinearForms { forms, e } => {
            if forms.is_empty() {
                return Err(Error::Contract("need at least one linear form".into()));
            }
            let mut p = MvPoly::constant(e.len(), q(1));
            for f in forms {
                check_dim(e.len(), f.len())?;
                if !dot(f, e).is_positive() {
                    return Err(Error::Contract("every linear form must be positive at e".into()));
                }
                p = &p * &MvPoly::linear(f);
            }
            Ok(SpecialPoly { ctx: HyperbolicContext::new(p, e.clone())?, pencil: None, forms: Some(forms.clone()) })
        }
        SpecialKind::SingularCubic => {
            let pencil = vec![
                QMatrix::from_i64(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]),
                QMatrix::from_i64(&[&[0, 0, 0], &[0, 0, 1], &[0, 1, 0]]),
                QMatrix::identity(3),
            ];
            let p = pencil_determinant(&pencil)?;
            Ok(SpecialPoly { ctx: HyperbolicContext::new(p, vec![q(0), q(0), q(1)])?, pencil: Some(pencil), forms: None })
        }
    }
}

/// Index pairs `(i, j)`, `i <= j`, in row-major upper-triangular order.
pub fn upper_pairs(d: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..d).flat_map(move |i| (i..d).map(move |j| (i, j)))
}

/// Pencil whose generic member has entry `(i, j)` equal to the coordinate
/// of pair `(i, j)`.
pub fn symmetric_pencil(d: usize) -> Vec<QMatrix> {
    upper_pairs(d)
        .map(|(i, j)| {
            let mut m = QMatrix::zeros(d, d);
            m[(i, j)] = q(1);
            m[(j, i)] = q(1);
            m
        })
        .collect()
}

/// Coordinates of a symmetric matrix in [`upper_pairs`] order.
pub fn symmetric_coords(m: &QMatrix) -> Vec<Q> {
    upper_pairs(m.rows()).map(|(i, j)| m[(i, j)].clone()).collect()
}

/// `sum x_i A_i` as a polynomial matrix.
pub fn pencil_matrix(pencil: &[QMatrix]) -> Result<PolyMatrix> {
    let n = pencil.len();
    let d = pencil.first().map(QMatrix::rows).ok_or_else(|| Error::Contract("empty pencil".into()))?;
    let mut rows = vec![vec![MvPoly::zero(n); d]; d];
    for (k, a) in pencil.iter().enumerate() {
        check_dim(d, a.rows())?;
        check_dim(d, a.cols())?;
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                if !a[(i, j)].is_zero() {
                    *entry = &*entry + &MvPoly::var(n, k).scale(&a[(i, j)]);
                }
            }
        }
    }
    PolyMatrix::from_rows(n, rows)
}

pub fn pencil_determinant(pencil: &[QMatrix]) -> Result<MvPoly> {
    Ok(pencil_matrix(pencil)?.det())
}
