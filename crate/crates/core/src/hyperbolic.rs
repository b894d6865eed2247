//! Hyperbolic polynomials: parameterized Bézoutian and Hermite matrices,
//! hyperbolic eigenvalues, cone membership, canonical linear functionals,
//! and the certificate map `φ`.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::bezout::{bezout_generic, congruence_generic, hankel_generic, laurent_generic};
use crate::error::{check_dim, Error, Result};
use crate::linalg::{ldl_psd_check, QMatrix};
use crate::poly::{MvPoly, UvPoly};
use crate::polymatrix::PolyMatrix;
use crate::rational::{dot, fmt_q, Q};
use crate::roots::{all_roots_real, isolate_roots, refine_root, sturm_count, Bound, RootInterval, RootIsolation};
use crate::sampling::{random_vector, rng_for, Sampler};

/// A homogeneous polynomial `p` with a direction `e` such that `p(e) > 0`.
///
/// Whether `p` is actually hyperbolic in direction `e` is not an invariant;
/// that is what [`HyperbolicContext::hyperbolicity_test`] probes.
#[derive(Clone, Debug)]
pub struct HyperbolicContext {
    p: MvPoly,
    e: Vec<Q>,
    d: usize,
    p_e: Q,
    partials: Vec<MvPoly>,
    /// `D_e^k p / k!`: the `t^k` coefficient of `p(x + t e)`.
    line: Vec<MvPoly>,
    /// `line` coefficients of each partial derivative.
    partial_lines: Vec<Vec<MvPoly>>,
}

impl HyperbolicContext {
    pub fn new(p: MvPoly, e: Vec<Q>) -> Result<Self> {
        check_dim(p.nvars(), e.len())?;
        let d = p.homogeneous_degree()? as usize;
        let p_e = p.eval(&e)?;
        if !p_e.is_positive() {
            return Err(Error::Contract(format!("need p(e) > 0, got {}", fmt_q(&p_e))));
        }
        let partials: Vec<MvPoly> = (0..p.nvars()).map(|i| p.partial(i)).collect();
        let mut line = p.line_coefficients(&e)?;
        line.resize(d + 1, MvPoly::zero(p.nvars()));
        let partial_lines = partials
            .iter()
            .map(|dp| {
                let mut v = dp.line_coefficients(&e)?;
                v.resize(d, MvPoly::zero(p.nvars()));
                Ok(v)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(HyperbolicContext { p, e, d, p_e, partials, line, partial_lines })
    }

    pub fn poly(&self) -> &MvPoly {
        &self.p
    }

    pub fn direction(&self) -> &[Q] {
        &self.e
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn nvars(&self) -> usize {
        self.p.nvars()
    }

    /// `p(e)`.
    pub fn p_at_e(&self) -> &Q {
        &self.p_e
    }

    /// `D_u p`, assembled from cached partial derivatives.
    pub fn derivative(&self, u: &[Q]) -> Result<MvPoly> {
        check_dim(self.nvars(), u.len())?;
        let mut acc = MvPoly::zero(self.nvars());
        for (ui, dp) in u.iter().zip(&self.partials) {
            if !ui.is_zero() {
                acc = &acc + &dp.scale(ui);
            }
        }
        Ok(acc)
    }

    /// Symbolic coefficients of `p(x + t e)` in `t`, ascending.
    pub fn line_coefficients(&self) -> &[MvPoly] {
        &self.line
    }

    /// Symbolic coefficients of `D_u p(x + t e)` in `t`, ascending, length `d`.
    pub fn derivative_line(&self, u: &[Q]) -> Result<Vec<MvPoly>> {
        check_dim(self.nvars(), u.len())?;
        let mut out = vec![MvPoly::zero(self.nvars()); self.d];
        for (ui, lines) in u.iter().zip(&self.partial_lines) {
            if ui.is_zero() {
                continue;
            }
            for (o, c) in out.iter_mut().zip(lines) {
                *o = &*o + &c.scale(ui);
            }
        }
        Ok(out)
    }

    /// `p_x(t) = p(x + t e)`.
    pub fn p_line(&self, x: &[Q]) -> Result<UvPoly> {
        self.p.restrict_line(x, &self.e)
    }

    /// `D_u p_x(t) = D_u p(x + t e)`.
    pub fn du_line(&self, x: &[Q], u: &[Q]) -> Result<UvPoly> {
        self.derivative(u)?.restrict_line(x, &self.e)
    }

    /// `B_{p,e}(x)[u] = B_d(p_x, D_u p_x)` with symbolic `x`.
    pub fn parameterized_bezoutian(&self, u: &[Q]) -> Result<PolyMatrix> {
        let b = self.derivative_line(u)?;
        let zero = MvPoly::zero(self.nvars());
        PolyMatrix::from_rows(self.nvars(), bezout_generic(&self.line, &b, self.d, &zero)?)
    }

    /// `H_{p,e}(x)[u] = H_d(D_u p_x / p_x)` with symbolic `x`. The leading
    /// coefficient of `p_x` is the constant `p(e)`, so entries stay polynomial.
    pub fn parameterized_hermite(&self, u: &[Q]) -> Result<PolyMatrix> {
        let b = self.derivative_line(u)?;
        PolyMatrix::from_rows(self.nvars(), hankel_generic(&b, &self.line, self.d)?)
    }

    /// Symbolic `M_{p,e}(x)` with `B_{p,e}(x)[u] = M H_{p,e}(x)[u] Mᵀ` for all `u`.
    /// Built as `p(e) · M(p_x / p(e))`.
    pub fn parameterized_congruence(&self) -> Result<PolyMatrix> {
        let inv = Q::one() / &self.p_e;
        let monic: Vec<MvPoly> = self.line.iter().map(|c| c.scale(&inv)).collect();
        let m = PolyMatrix::from_rows(self.nvars(), congruence_generic(&monic, self.d)?)?;
        Ok(m.scale(&self.p_e))
    }

    /// `B_{p,e}(x)[u]` at a concrete point.
    pub fn bezoutian_at(&self, x: &[Q], u: &[Q]) -> Result<QMatrix> {
        let a = self.p_line(x)?;
        let b = self.du_line(x, u)?;
        let rows = bezout_generic(a.coeffs(), b.coeffs(), self.d, &Q::zero())?;
        QMatrix::from_rows(rows)
    }

    /// `H_{p,e}(x)[u]` at a concrete point.
    pub fn hermite_at(&self, x: &[Q], u: &[Q]) -> Result<QMatrix> {
        let a = self.p_line(x)?;
        let b = self.du_line(x, u)?;
        QMatrix::from_rows(hankel_generic(b.coeffs(), a.coeffs(), self.d)?)
    }

    /// `t -> p(t e - x)`, whose roots are the hyperbolic eigenvalues of `x`.
    pub fn eigen_poly(&self, x: &[Q]) -> Result<UvPoly> {
        let neg: Vec<Q> = x.iter().map(|v| -v.clone()).collect();
        self.p_line(&neg)
    }

    /// Hyperbolic eigenvalues of `x` (ascending), with exact multiplicities.
    pub fn hyperbolic_eigenvalues(&self, x: &[Q], width: &Q) -> Result<RootIsolation> {
        let f = self.eigen_poly(x)?;
        if !all_roots_real(&f)? {
            return Err(Error::NotHyperbolic { x: x.to_vec() });
        }
        isolate_roots(&f, width)
    }

    /// Exact real-rootedness of `p(t e - x)`.
    pub fn check_hyperbolic_on_line(&self, x: &[Q]) -> Result<LineVerdict> {
        Ok(if all_roots_real(&self.eigen_poly(x)?)? {
            LineVerdict::RealRooted
        } else {
            LineVerdict::Witness { x: x.to_vec() }
        })
    }

    /// One sampled trial: real-rootedness along the line, then exact PSD of
    /// `H_{p,e}(x)[e]`.
    pub fn trial(&self, x: &[Q]) -> Result<TrialVerdict> {
        if !all_roots_real(&self.eigen_poly(x)?)? {
            return Ok(TrialVerdict::NotRealRooted);
        }
        let h = self.hermite_at(x, &self.e)?;
        Ok(if ldl_psd_check(&h)?.is_psd() { TrialVerdict::Pass } else { TrialVerdict::HermiteNotPsd })
    }

    /// Maps `x` into the hyperplane `{x_j = 0}` along `e`, where `j` is the
    /// first coordinate with `e_j != 0`.
    pub fn project_to_complement(&self, x: &[Q]) -> Vec<Q> {
        let j = self.e.iter().position(|v| !v.is_zero()).expect("p(e) > 0 forces e != 0");
        let s = &x[j] / &self.e[j];
        x.iter().zip(&self.e).map(|(a, b)| a - &s * b).collect()
    }

    /// Randomized hyperbolicity test. Sample `i` is a pure function of
    /// `(seed, i)`; the first failing index (if any) is reported.
    pub fn hyperbolicity_test(&self, cfg: &TestConfig) -> Result<HyperbolicityReport> {
        if cfg.trials == 0 {
            return Err(Error::Contract("need at least one trial".into()));
        }
        let sampler = Sampler::around(cfg.seed, &self.e);
        let run = |i: usize| -> Result<TrialRecord> {
            let mut x = sampler.point(i);
            if cfg.complement {
                x = self.project_to_complement(&x);
            }
            let verdict = self.trial(&x)?;
            Ok(TrialRecord { trial: i, x, verdict })
        };
        let records = with_jobs(cfg.jobs, || (0..cfg.trials).into_par_iter().map(run).collect::<Result<Vec<_>>>())?;
        let failure = records.iter().find(|r| r.verdict != TrialVerdict::Pass).cloned();
        Ok(HyperbolicityReport { trials: cfg.trials, seed: cfg.seed, failure, records })
    }

    /// Classifies `u` against the closed hyperbolicity cone.
    pub fn cone_membership(&self, u: &[Q]) -> Result<Membership> {
        let f = self.eigen_poly(u)?;
        if !all_roots_real(&f)? {
            return Err(Error::NotHyperbolic { x: u.to_vec() });
        }
        let zero = Q::zero();
        let at_most_zero = sturm_count(&f, &Bound::NegInf, &Bound::Finite(zero.clone()))?;
        let zero_root = f.eval(&zero).is_zero();
        let negative = at_most_zero - usize::from(zero_root);
        if negative == 0 {
            if !zero_root {
                return Ok(Membership::Inside);
            }
            let multiplicity = isolate_roots(&f, &Q::one())?
                .intervals
                .into_iter()
                .find(|r| r.lo <= zero && zero <= r.hi)
                .map_or(1, |r| r.multiplicity);
            return Ok(Membership::Boundary { multiplicity });
        }
        let iso = isolate_roots(&f, &Q::one())?;
        let mut root = iso.intervals.into_iter().next().expect("a negative root exists");
        let mut w = Q::one();
        while !root.hi.is_negative() {
            w /= Q::from_integer(2.into());
            root = refine_root(&f, &root, &w)?;
        }
        Ok(Membership::Outside { eigenvalue: root })
    }

    /// Canonical linear functionals `λ_i'(x)[·]` at `x`, as residues of
    /// `D_u p_x / p_x`. Eigenvalues are isolated to `width`; residues are
    /// evaluated at points refined far below `width`.
    pub fn canonical_functionals(&self, x: &[Q], width: &Q) -> Result<CanonicalFunctionals> {
        if !width.is_positive() {
            return Err(Error::Contract("width must be positive".into()));
        }
        let px = self.p_line(x)?;
        if !all_roots_real(&px)? {
            return Err(Error::NotHyperbolic { x: x.to_vec() });
        }
        let s = px.square_free_part();
        let ds = s.derivative();
        let fine = width / Q::from_integer(num_bigint::BigInt::from(1u64) << 40);
        // roots of p_x are -λ; ascending roots give descending eigenvalues
        let roots = isolate_roots(&px, &fine)?;
        let mut functionals = vec![Vec::with_capacity(self.nvars()); roots.intervals.len()];
        for dp in &self.partials {
            let n = dp.restrict_line(x, &self.e)?;
            let c = (&n * &s)
                .exact_div(&px)
                .ok_or_else(|| Error::NotHyperbolic { x: x.to_vec() })?;
            for (row, r) in functionals.iter_mut().zip(&roots.intervals) {
                let t = r.midpoint();
                row.push(c.eval(&t) / ds.eval(&t));
            }
        }
        let eigenvalues = roots
            .intervals
            .iter()
            .map(|r| RootInterval { lo: -r.hi.clone(), hi: -r.lo.clone(), multiplicity: r.multiplicity })
            .collect();
        Ok(CanonicalFunctionals { x: x.to_vec(), eigenvalues, functionals, width: width.clone() })
    }

    /// `φ(x, y)[u] = yᵀ H_{p,e}(x)[u] y`.
    pub fn phi_eval(&self, x: &[Q], y: &[Q], u: &[Q]) -> Result<Q> {
        check_dim(self.d, y.len())?;
        let h = self.laurent_at(x, &self.du_line(x, u)?)?;
        Ok(pair_with_square(&h, y))
    }

    /// The functional `u -> φ(x, y)[u]` as an `n`-vector.
    pub fn phi_functional(&self, x: &[Q], y: &[Q]) -> Result<Vec<Q>> {
        check_dim(self.d, y.len())?;
        self.partials
            .iter()
            .map(|dp| Ok(pair_with_square(&self.laurent_at(x, &dp.restrict_line(x, &self.e)?)?, y)))
            .collect()
    }

    fn laurent_at(&self, x: &[Q], b: &UvPoly) -> Result<Vec<Q>> {
        let a = self.p_line(x)?;
        laurent_generic(b.coeffs(), a.coeffs(), 2 * self.d - 1)
    }

    /// Samples `(x, y)` and checks `φ(x, y)[·]` against an exact dual-cone
    /// oracle.
    pub fn dual_cone_sample_check(&self, samples: usize, seed: u64, oracle: &DualOracle) -> Result<DualReport> {
        let mut violations = Vec::new();
        for i in 0..samples {
            let mut rng = rng_for(seed, i as u64);
            let x = random_vector(&mut rng, self.nvars());
            let y = random_vector(&mut rng, self.d);
            let xi = self.phi_functional(&x, &y)?;
            if !oracle.contains(self, &x, &y, &xi)? {
                violations.push(DualViolation { x, y, functional: xi });
            }
        }
        Ok(DualReport { samples, violations })
    }

    /// Sampled check that `q` (degree `d - 1`) interlaces `p` in direction `e`.
    /// Isolating intervals that overlap count as consistent.
    pub fn check_interlaces(&self, q: &MvPoly, samples: usize, seed: u64, width: &Q) -> Result<Interlacing> {
        check_dim(self.nvars(), q.nvars())?;
        if q.homogeneous_degree()? as usize + 1 != self.d {
            return Err(Error::Contract("interlacer must have degree d - 1".into()));
        }
        let sampler = Sampler::around(seed, &self.e);
        for i in 0..samples {
            let x = sampler.point(i);
            if !self.interlaces_at(q, &x, width)? {
                return Ok(Interlacing::Violation { x });
            }
        }
        Ok(Interlacing::Consistent { samples })
    }

    fn interlaces_at(&self, q: &MvPoly, x: &[Q], width: &Q) -> Result<bool> {
        let neg: Vec<Q> = x.iter().map(|v| -v.clone()).collect();
        let fq = q.restrict_line(&neg, &self.e)?;
        if fq.degree() != Some(self.d - 1) || !all_roots_real(&fq)? {
            return Ok(false);
        }
        let lam = expand(&self.hyperbolic_eigenvalues(x, width)?);
        let mu = expand(&isolate_roots(&fq, width)?);
        // ascending: λ_1 <= μ_1 <= λ_2 <= ... <= μ_{d-1} <= λ_d
        Ok(mu.iter().enumerate().all(|(i, m)| lam[i].lo <= m.hi && m.lo <= lam[i + 1].hi))
    }
}

fn expand(iso: &RootIsolation) -> Vec<RootInterval> {
    iso.intervals
        .iter()
        .flat_map(|r| std::iter::repeat_n(r.clone(), r.multiplicity))
        .collect()
}

/// `Σ_k h_k c_{k-1}` where `c` are the coefficients of `q_y(t)²`, i.e.
/// `yᵀ [h_{i+j-1}] y`.
fn pair_with_square(h: &[Q], y: &[Q]) -> Q {
    let qy = UvPoly::new(y.to_vec());
    let sq = &qy * &qy;
    sq.coeffs().iter().zip(h).map(|(c, hk)| c * hk).sum()
}

fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match jobs.and_then(|n| rayon::ThreadPoolBuilder::new().num_threads(n).build().ok()) {
        Some(pool) => pool.install(f),
        None => f(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LineVerdict {
    RealRooted,
    /// `p(t e - x)` has a non-real root.
    Witness { x: Vec<Q> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TrialVerdict {
    Pass,
    NotRealRooted,
    /// Real-rooted line but indefinite `H_{p,e}(x)[e]`; would indicate a bug.
    HermiteNotPsd,
}

#[derive(Clone, Debug)]
pub struct TestConfig {
    pub trials: usize,
    pub seed: u64,
    /// Restrict samples to a hyperplane not containing `e`.
    pub complement: bool,
    pub jobs: Option<usize>,
}

impl TestConfig {
    pub fn new(trials: usize, seed: u64) -> Self {
        TestConfig { trials, seed, complement: false, jobs: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialRecord {
    pub trial: usize,
    pub x: Vec<Q>,
    pub verdict: TrialVerdict,
}

#[derive(Clone, Debug)]
pub struct HyperbolicityReport {
    pub trials: usize,
    pub seed: u64,
    /// First failing trial, by index.
    pub failure: Option<TrialRecord>,
    pub records: Vec<TrialRecord>,
}

impl HyperbolicityReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Inside,
    /// Zero is an eigenvalue of the given multiplicity; none are negative.
    Boundary { multiplicity: usize },
    /// Isolating interval of a negative eigenvalue.
    Outside { eigenvalue: RootInterval },
}

impl Membership {
    pub fn in_cone(&self) -> bool {
        !matches!(self, Membership::Outside { .. })
    }
}

/// Residues of `D_u p_x / p_x`, one row per distinct eigenvalue.
#[derive(Clone, Debug)]
pub struct CanonicalFunctionals {
    pub x: Vec<Q>,
    /// Descending; multiplicities are exact.
    pub eigenvalues: Vec<RootInterval>,
    /// Row `i` holds `λ_i'(x)[e_j]` for each coordinate `j`.
    pub functionals: Vec<Vec<Q>>,
    pub width: Q,
}

impl CanonicalFunctionals {
    pub fn apply(&self, i: usize, u: &[Q]) -> Q {
        dot(&self.functionals[i], u)
    }
}

/// Exact membership tests for dual hyperbolicity cones of special families.
#[derive(Clone, Debug)]
pub enum DualOracle {
    /// `p = det` on `d × d` symmetric matrices in upper-triangular row-major
    /// coordinates. The functional `ξ` is the matrix `Z` with `Z_ii = ξ_ii`,
    /// `Z_ij = ξ_ij / 2`, which must be PSD.
    SelfDualPsd { d: usize },
    /// `p = Π a_i` with linearly independent forms: `ξ` must be a
    /// nonnegative combination of the rows.
    LinearForms { forms: Vec<Vec<Q>> },
    /// `p = det A(x)` with `A(e) = I`. Certificate: `Z = q_y(-A(x))² ⪰ 0` and
    /// `A*(Z) = ξ`.
    Spectrahedral { pencil: Vec<QMatrix> },
}

impl DualOracle {
    pub fn contains(&self, ctx: &HyperbolicContext, x: &[Q], y: &[Q], xi: &[Q]) -> Result<bool> {
        match self {
            DualOracle::SelfDualPsd { d } => {
                let mut z = QMatrix::zeros(*d, *d);
                let mut k = 0;
                for i in 0..*d {
                    for j in i..*d {
                        let v = if i == j { xi[k].clone() } else { &xi[k] / Q::from_integer(2.into()) };
                        z[(i, j)] = v.clone();
                        z[(j, i)] = v;
                        k += 1;
                    }
                }
                check_dim(k, xi.len())?;
                Ok(ldl_psd_check(&z)?.is_psd())
            }
            DualOracle::LinearForms { forms } => {
                let n = xi.len();
                let m = QMatrix::from_rows(forms.clone())?.transpose();
                let mut aug = QMatrix::zeros(n, forms.len() + 1);
                for i in 0..n {
                    for j in 0..forms.len() {
                        aug[(i, j)] = m[(i, j)].clone();
                    }
                    aug[(i, forms.len())] = xi[i].clone();
                }
                let (r, piv) = aug.rref();
                if piv.contains(&forms.len()) {
                    return Ok(false);
                }
                if piv.len() < forms.len() {
                    return Err(Error::Unsupported("linear forms must be independent".into()));
                }
                Ok((0..piv.len()).all(|i| !r[(i, forms.len())].is_negative()))
            }
            DualOracle::Spectrahedral { pencil } => {
                check_dim(ctx.nvars(), pencil.len())?;
                let ax = pencil_at(pencil, x)?;
                let size = ax.rows();
                // q_y(-A) by Horner
                let mut qa = QMatrix::zeros(size, size);
                let neg = ax.scale(&-Q::one());
                for c in y.iter().rev() {
                    qa = qa.mul(&neg)?.add(&QMatrix::identity(size).scale(c))?;
                }
                let z = qa.mul(&qa)?;
                if !ldl_psd_check(&z)?.is_psd() {
                    return Ok(false);
                }
                let adj: Vec<Q> = pencil.iter().map(|a| z.mul(a).map(|m| m.trace())).collect::<Result<_>>()?;
                Ok(adj == xi)
            }
        }
    }
}

/// `Σ x_i A_i`.
pub fn pencil_at(pencil: &[QMatrix], x: &[Q]) -> Result<QMatrix> {
    check_dim(pencil.len(), x.len())?;
    let size = pencil.first().map_or(0, QMatrix::rows);
    let mut acc = QMatrix::zeros(size, size);
    for (a, xi) in pencil.iter().zip(x) {
        if !xi.is_zero() {
            acc = acc.add(&a.scale(xi))?;
        }
    }
    Ok(acc)
}

#[derive(Clone, Debug)]
pub struct DualViolation {
    pub x: Vec<Q>,
    pub y: Vec<Q>,
    pub functional: Vec<Q>,
}

#[derive(Clone, Debug)]
pub struct DualReport {
    pub samples: usize,
    pub violations: Vec<DualViolation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Interlacing {
    Consistent { samples: usize },
    Violation { x: Vec<Q> },
}

/// Coefficient vector `y` of the polynomial `q_y` of degree `< d` with
/// `q_y(nodes[j]) = [j == target]` (Lagrange interpolation).
pub fn lagrange_selector(nodes: &[Q], target: usize) -> Result<Vec<Q>> {
    let mut num = UvPoly::one();
    let mut den = Q::one();
    for (j, n) in nodes.iter().enumerate() {
        if j == target {
            continue;
        }
        num = &num * &UvPoly::new(vec![-n.clone(), Q::one()]);
        let diff = &nodes[target] - n;
        if diff.is_zero() {
            return Err(Error::Contract("interpolation nodes must be distinct".into()));
        }
        den *= diff;
    }
    let mut y = num.scale(&(Q::one() / den)).coeffs().to_vec();
    y.resize(nodes.len(), Q::zero());
    Ok(y)
}
