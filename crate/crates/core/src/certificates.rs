//! Exact verification of SOS certificates and of non-SOS obstructions.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::constructions::{graph_form, vamos_direction, vamos_specialized};
use crate::error::{check_dim, Error, Result};
use crate::graph::Graph;
use crate::hyperbolic::HyperbolicContext;
use crate::io::{self, CertificateFile, PolyJson};
use crate::linalg::{ldl_psd_check, PsdCertificate, QMatrix};
use crate::poly::{Homogeneity, Monomial, MvPoly};
use crate::polymatrix::PolyMatrix;
use crate::rational::{binomial, fmt_q, q, Q};

/// `target = basisᵀ · gram · basis` with `gram ⪰ 0`.
#[derive(Clone, Debug)]
pub struct GramCertificate {
    pub target: MvPoly,
    pub basis: Vec<MvPoly>,
    pub gram: QMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GramVerdict {
    ValidSos,
    /// Largest monomial (graded-lex) where the identity fails.
    IdentityFail { monomial: Vec<u32>, expected: Q, got: Q },
    GramNotPsd { witness: Vec<Q>, value: Q },
}

/// `basisᵀ · m · basis`.
pub fn gram_form(basis: &[MvPoly], m: &QMatrix) -> Result<MvPoly> {
    check_dim(basis.len(), m.rows())?;
    check_dim(basis.len(), m.cols())?;
    let nvars = basis.first().map_or(0, MvPoly::nvars);
    let mut acc = MvPoly::zero(nvars);
    for (i, bi) in basis.iter().enumerate() {
        let mut row = MvPoly::zero(nvars);
        for (j, bj) in basis.iter().enumerate() {
            if !m[(i, j)].is_zero() {
                row = row.try_add(&bj.scale(&m[(i, j)]))?;
            }
        }
        acc = acc.try_add(&bi.try_mul(&row)?)?;
    }
    Ok(acc)
}

/// First differing monomial of `a - b` in canonical order, if any.
fn first_difference(expected: &MvPoly, got: &MvPoly) -> Result<Option<(Vec<u32>, Q, Q)>> {
    let diff = got.try_sub(expected)?;
    let first = diff.canonical_terms().next().map(|(m, _)| m.exps().to_vec());
    Ok(first.map(|e| {
        let (a, b) = (expected.coeff(&e), got.coeff(&e));
        (e, a, b)
    }))
}

pub fn verify_gram(cert: &GramCertificate) -> Result<GramVerdict> {
    if !cert.gram.is_symmetric() {
        return Err(Error::Contract("Gram matrix must be symmetric".into()));
    }
    if let Some(b) = cert.basis.iter().find(|b| b.nvars() != cert.target.nvars()) {
        return Err(Error::Dimension { expected: cert.target.nvars(), got: b.nvars() });
    }
    let got = gram_form(&cert.basis, &cert.gram)?;
    if let Some((monomial, expected, got)) = first_difference(&cert.target, &got)? {
        return Ok(GramVerdict::IdentityFail { monomial, expected, got });
    }
    Ok(match ldl_psd_check(&cert.gram)? {
        PsdCertificate::Psd { .. } => GramVerdict::ValidSos,
        PsdCertificate::NotPsd { witness, value } => GramVerdict::GramNotPsd { witness, value },
    })
}

/// Every monomial of degree `d` in `n` variables, descending graded-lex.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(Monomial::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for a in (0..=d).rev() {
            prefix.push(a);
            rec(n, d - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial::new(Vec::new()));
        }
        return out;
    }
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

/// Candidate square factors for an SOS decomposition of `target`.
#[derive(Clone, Debug)]
pub struct AdmissibleBasis {
    /// Vertices of the Newton polytope.
    pub extreme_points: Vec<Vec<u32>>,
    /// Monomials `x^a` with `2a` in the Newton polytope, descending graded-lex.
    pub half_monomials: Vec<Monomial>,
    /// Basis of the span of `half_monomials` vanishing on the given points.
    pub basis: Vec<MvPoly>,
}

type P2 = (i64, i64);

fn cross(o: P2, a: P2, b: P2) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Counter-clockwise hull vertices with collinear points dropped.
fn convex_hull(mut pts: Vec<P2>) -> Vec<P2> {
    pts.sort_unstable();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<P2> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<P2> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn hull_contains(hull: &[P2], p: P2) -> bool {
    match hull.len() {
        0 => false,
        1 => hull[0] == p,
        2 => {
            let (a, b) = (hull[0], hull[1]);
            cross(a, b, p) == 0
                && p.0 >= a.0.min(b.0)
                && p.0 <= a.0.max(b.0)
                && p.1 >= a.1.min(b.1)
                && p.1 <= a.1.max(b.1)
        }
        _ => (0..hull.len()).all(|i| cross(hull[i], hull[(i + 1) % hull.len()], p) >= 0),
    }
}

/// Newton-polytope reduction plus vanishing conditions. Supports targets
/// involving at most three variables (a planar slice once the degree is
/// fixed).
pub fn admissible_square_basis(target: &MvPoly, vanish_points: &[Vec<Q>]) -> Result<AdmissibleBasis> {
    let n = target.nvars();
    let deg = match target.is_homogeneous() {
        Homogeneity::Yes(d) if !target.is_zero() => d,
        Homogeneity::Yes(_) => return Err(Error::Contract("target is zero".into())),
        Homogeneity::No(..) => return Err(Error::NotHomogeneous),
    };
    if deg % 2 != 0 {
        return Err(Error::Contract(format!("target degree {deg} is odd")));
    }
    for p in vanish_points {
        check_dim(n, p.len())?;
    }
    let used: Vec<usize> = (0..n).filter(|&i| target.terms().any(|(m, _)| m.exps()[i] > 0)).collect();
    if used.len() > 3 {
        return Err(Error::Unsupported(format!(
            "Newton polytope in {} effective variables; only up to 3 are supported",
            used.len()
        )));
    }
    // degree is fixed, so the last used coordinate is determined by the others
    let project = |e: &[u32]| -> P2 {
        let c = |k: usize| used.get(k).filter(|_| k + 1 < used.len()).map_or(0, |&i| e[i] as i64);
        (c(0), c(1))
    };
    let lift = |p: P2| -> Vec<u32> {
        let mut e = vec![0u32; n];
        let coords = [p.0, p.1];
        let mut rest = deg as i64;
        for (k, &i) in used.iter().enumerate() {
            if k + 1 < used.len() {
                e[i] = coords[k] as u32;
                rest -= coords[k];
            } else {
                e[i] = rest as u32;
            }
        }
        e
    };
    let hull = convex_hull(target.terms().map(|(m, _)| project(m.exps())).collect());
    let mut extreme_points: Vec<Vec<u32>> = hull.iter().map(|&p| lift(p)).collect();
    extreme_points.sort_by(|a, b| Monomial::new(b.clone()).cmp(&Monomial::new(a.clone())));

    let half = deg / 2;
    let half_monomials: Vec<Monomial> = monomials_of_degree(used.len(), half)
        .into_iter()
        .map(|m| {
            let mut e = vec![0u32; n];
            for (k, &i) in used.iter().enumerate() {
                e[i] = m.exps()[k];
            }
            Monomial::new(e)
        })
        .filter(|m| {
            let doubled: Vec<u32> = m.exps().iter().map(|a| 2 * a).collect();
            hull_contains(&hull, project(&doubled))
        })
        .collect();

    let basis = if vanish_points.is_empty() {
        half_monomials.iter().map(|m| MvPoly::from_terms(n, [(m.exps().to_vec(), Q::one())])).collect::<Result<_>>()?
    } else {
        let rows: Vec<Vec<Q>> = vanish_points
            .iter()
            .map(|p| {
                half_monomials
                    .iter()
                    .map(|m| MvPoly::from_terms(n, [(m.exps().to_vec(), Q::one())])?.eval(p))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let ns = QMatrix::from_rows(rows)?.nullspace();
        (0..ns.cols())
            .map(|c| {
                MvPoly::from_terms(
                    n,
                    half_monomials.iter().enumerate().map(|(k, m)| (m.exps().to_vec(), ns[(k, c)].clone())),
                )
            })
            .collect::<Result<_>>()?
    };
    Ok(AdmissibleBasis { extreme_points, half_monomials, basis })
}

/// A linear functional on monomials that separates `target` from the SOS
/// cone over `basis`.
#[derive(Clone, Debug)]
pub struct SeparationCertificate {
    pub target: MvPoly,
    pub functional: BTreeMap<Monomial, Q>,
    pub basis: Vec<MvPoly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InconclusiveReason {
    /// The functional is not nonnegative on squares.
    PsdFail { witness: Vec<Q>, value: Q },
    /// The functional does not take a negative value on the target.
    NonNegativeValue { value: Q },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeparationVerdict {
    NotSos { margin: Q },
    Inconclusive { reason: InconclusiveReason },
}

#[derive(Clone, Debug)]
pub struct SeparationReport {
    /// Functional applied to the target.
    pub value: Q,
    /// Functional applied to `basis · basisᵀ`.
    pub moment_matrix: QMatrix,
    pub psd: PsdCertificate,
    pub verdict: SeparationVerdict,
}

impl SeparationCertificate {
    pub fn apply(&self, p: &MvPoly) -> Result<Q> {
        let mut acc = Q::zero();
        for (m, c) in p.terms() {
            let v = self.functional.get(m).ok_or_else(|| Error::SupportMismatch(m.exps().to_vec()))?;
            acc += c * v;
        }
        Ok(acc)
    }

    pub fn moment_matrix(&self) -> Result<QMatrix> {
        let k = self.basis.len();
        let mut m = QMatrix::zeros(k, k);
        for i in 0..k {
            for j in i..k {
                let v = self.apply(&self.basis[i].try_mul(&self.basis[j])?)?;
                m[(i, j)] = v.clone();
                m[(j, i)] = v;
            }
        }
        Ok(m)
    }
}

/// `not_sos` iff the moment matrix is PSD and the target value is negative:
/// then `ℓ(target) = tr(G M) ≥ 0` for any PSD Gram `G`, a contradiction.
pub fn verify_separation(cert: &SeparationCertificate) -> Result<SeparationReport> {
    for b in &cert.basis {
        check_dim(cert.target.nvars(), b.nvars())?;
    }
    let value = cert.apply(&cert.target)?;
    let moment_matrix = cert.moment_matrix()?;
    let psd = ldl_psd_check(&moment_matrix)?;
    let verdict = match &psd {
        PsdCertificate::NotPsd { witness, value } => SeparationVerdict::Inconclusive {
            reason: InconclusiveReason::PsdFail { witness: witness.clone(), value: value.clone() },
        },
        PsdCertificate::Psd { .. } if value.is_negative() => SeparationVerdict::NotSos { margin: -value.clone() },
        PsdCertificate::Psd { .. } => {
            SeparationVerdict::Inconclusive { reason: InconclusiveReason::NonNegativeValue { value: value.clone() } }
        }
    };
    Ok(SeparationReport { value, moment_matrix, psd, verdict })
}

/// Support of the Vámos sextic, in the order of its displayed expansion.
pub const VAMOS_SUPPORT: [[u32; 3]; 22] = [
    [4, 2, 0], [4, 1, 1], [4, 0, 2], [3, 3, 0], [3, 2, 1], [3, 1, 2], [3, 0, 3], [2, 4, 0],
    [2, 3, 1], [2, 2, 2], [2, 1, 3], [2, 0, 4], [1, 4, 1], [1, 3, 2], [1, 2, 3], [1, 1, 4],
    [1, 0, 5], [0, 4, 2], [0, 3, 3], [0, 2, 4], [0, 1, 5], [0, 0, 6],
];

/// Coefficients of the Vámos sextic, paired with [`VAMOS_SUPPORT`].
pub const VAMOS_COEFFS: [i64; 22] =
    [32, 56, 28, 64, 168, 168, 64, 32, 168, 280, 176, 46, 56, 168, 176, 76, 12, 28, 64, 46, 12, 2];

/// Separating functional, paired with [`VAMOS_SUPPORT`].
pub const VAMOS_FUNCTIONAL: [i64; 22] = [
    81, -249, 323, 40, 24, -186, 32, 81, 24, 233, -89, 15, -249, -186, -89, 322, -412, 323, 32, 15, -412, 1186,
];

pub const VAMOS_MOMENT_MATRIX: [[i64; 5]; 5] = [
    [233, 48, -275, -275, 144],
    [48, 242, -178, -178, -84],
    [-275, -178, 402, 377, -117],
    [-275, -178, 377, 402, -117],
    [144, -84, -117, -117, 212],
];

/// Shipped certificate file.
pub const VAMOS_CERTIFICATE_JSON: &str = include_str!("../data/vamos_separation.json");

/// Points where the Vámos sextic vanishes.
pub fn vamos_zeros() -> Vec<Vec<Q>> {
    vec![vec![q(1), q(-1), q(0)], vec![q(1), q(0), q(-1)], vec![q(0), q(1), q(-1)]]
}

/// `x1x2x3, (x1+x2)x1x2, (x1+x3)x1x3, (x2+x3)x2x3, (x1+x2+x3)x3²`.
pub fn vamos_square_basis() -> Vec<MvPoly> {
    let x = |i| MvPoly::var(3, i);
    vec![
        &(&x(0) * &x(1)) * &x(2),
        &(&x(0) + &x(1)) * &(&x(0) * &x(1)),
        &(&x(0) + &x(2)) * &(&x(0) * &x(2)),
        &(&x(1) + &x(2)) * &(&x(1) * &x(2)),
        &(&(&x(0) + &x(1)) + &x(2)) * &x(2).pow(2),
    ]
}

/// `e1ᵀ B_{p,e}(x1, x2, x3, -x1-x2-x3)[u] e1` for the Vámos quartic with
/// `e = (0,0,1,1)`, `u = (0,0,0,1)`.
pub fn vamos_sextic() -> Result<MvPoly> {
    let ctx = HyperbolicContext::new(vamos_specialized(), vamos_direction())?;
    let b = ctx.parameterized_bezoutian(&[q(0), q(0), q(0), q(1)])?;
    let x = |i| MvPoly::var(3, i);
    let last = -&(&(&x(0) + &x(1)) + &x(2));
    b.get(0, 0).substitute(&[x(0), x(1), x(2), last])
}

/// The listed sextic, built from [`VAMOS_SUPPORT`] and [`VAMOS_COEFFS`].
pub fn vamos_listed_sextic() -> MvPoly {
    MvPoly::from_terms(3, VAMOS_SUPPORT.iter().zip(VAMOS_COEFFS).map(|(e, c)| (e.to_vec(), q(c))))
        .expect("literal data")
}

pub fn vamos_functional() -> BTreeMap<Monomial, Q> {
    VAMOS_SUPPORT.iter().zip(VAMOS_FUNCTIONAL).map(|(e, v)| (Monomial::new(e.to_vec()), q(v))).collect()
}

/// The shipped Vámos certificate, cross-checked against a from-scratch
/// recomputation, together with its verification.
#[derive(Clone, Debug)]
pub struct VamosOutcome {
    pub certificate: SeparationCertificate,
    pub sextic: MvPoly,
    pub report: SeparationReport,
}

pub fn certificate_from_file(file: &CertificateFile) -> Result<SeparationCertificate> {
    match file {
        CertificateFile::Separation { target, functional, basis, .. } => {
            let target = target.to_poly()?;
            let functional = io::functional_from_entries(functional, target.nvars())?;
            let basis = basis.iter().map(PolyJson::to_poly).collect::<Result<Vec<_>>>()?;
            Ok(SeparationCertificate { target, functional, basis })
        }
        _ => Err(Error::Contract("not a separation certificate".into())),
    }
}

pub fn vamos_certificate() -> Result<VamosOutcome> {
    let sextic = vamos_sextic()?;
    let listed = vamos_listed_sextic();
    if sextic != listed {
        let (m, e, g) = first_difference(&listed, &sextic)?.expect("polynomials differ");
        return Err(Error::Consistency(format!(
            "recomputed sextic has coefficient {} at {m:?}, listed {}",
            fmt_q(&g),
            fmt_q(&e)
        )));
    }
    let file = io::parse_certificate(VAMOS_CERTIFICATE_JSON)?;
    let shipped = certificate_from_file(&file)?;
    if shipped.target != sextic {
        return Err(Error::Consistency("shipped certificate target differs from the recomputed sextic".into()));
    }
    if shipped.functional != vamos_functional() {
        return Err(Error::Consistency("shipped functional differs from the listed values".into()));
    }
    let admissible = admissible_square_basis(&sextic, &vamos_zeros())?;
    let stacked: Vec<Vec<Q>> = admissible
        .basis
        .iter()
        .chain(&shipped.basis)
        .map(|p| admissible.half_monomials.iter().map(|m| p.coeff(m.exps())).collect())
        .collect();
    if QMatrix::from_rows(stacked)?.rank() != admissible.basis.len() || shipped.basis.len() != admissible.basis.len() {
        return Err(Error::Consistency("shipped basis does not span the admissible subspace".into()));
    }
    let report = verify_separation(&shipped)?;
    Ok(VamosOutcome { certificate: shipped, sextic, report })
}

/// Serializes a separation certificate in the shipped file format.
pub fn separation_to_file(cert: &SeparationCertificate, expected: Option<&SeparationReport>) -> CertificateFile {
    CertificateFile::Separation {
        target: PolyJson::from_poly(&cert.target),
        functional: io::functional_to_entries(&cert.functional),
        basis: cert.basis.iter().map(PolyJson::from_poly).collect(),
        expected_value: expected.map(|r| fmt_q(&r.value)),
        expected_moment_matrix: expected.map(|r| io::matrix_to_strings(&r.moment_matrix)),
    }
}

/// Correlation-matrix obstruction for a graph cubic.
#[derive(Clone, Debug)]
pub struct ObstructionReport {
    /// One row `(x_C, y_C)` per maximum clique.
    pub clique_vectors: QMatrix,
    /// Columns span the orthogonal complement of the clique vectors.
    pub complement_basis: QMatrix,
    pub weight_matrix: QMatrix,
    /// `Vᵀ D V`.
    pub restricted: QMatrix,
    pub psd: PsdCertificate,
    pub trace_value: Q,
    /// First failing stage, if any.
    pub failure: Option<String>,
}

impl ObstructionReport {
    pub fn complement_dimension(&self) -> usize {
        self.complement_basis.cols()
    }

    /// No unit-diagonal PSD matrix has every clique vector in its kernel.
    pub fn obstructed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Rows `(x_C, y_C)`: `2/(3ω)` on clique vertices and `1/(3 C(ω,2))` on
/// clique edges.
pub fn clique_vectors(g: &Graph) -> Result<QMatrix> {
    let cliques = g.maximum_cliques();
    let omega = cliques.first().map_or(0, Vec::len);
    if omega < 2 {
        return Err(Error::Contract("clique vectors need an edge".into()));
    }
    let n = g.nverts() + g.edges().len();
    let xv = q(2) / q(3 * omega as i64);
    let yv = Q::one() / (q(3) * binomial(omega, 2));
    let rows = cliques
        .iter()
        .map(|c| {
            let mut r = vec![Q::zero(); n];
            for (i, &a) in c.iter().enumerate() {
                r[a] = xv.clone();
                for &b in &c[i + 1..] {
                    let k = g.edge_index(a, b).expect("clique edge");
                    r[g.nverts() + k] = yv.clone();
                }
            }
            r
        })
        .collect();
    QMatrix::from_rows(rows)
}

/// Obstruction for an explicit complement basis `v` (columns).
pub fn obstruction_with_basis(cliques: &QMatrix, v: QMatrix, weights: &[Q]) -> Result<ObstructionReport> {
    check_dim(cliques.cols(), weights.len())?;
    check_dim(cliques.cols(), v.rows())?;
    let d = QMatrix::diagonal(weights);
    let restricted = v.transpose().mul(&d)?.mul(&v)?;
    let psd = ldl_psd_check(&restricted)?;
    let trace_value = d.trace();
    let expected_dim = cliques.cols() - cliques.rank();
    let failure = if !cliques.mul(&v)?.is_zero() {
        Some("complement basis is not orthogonal to the clique vectors".to_string())
    } else if v.rank() != expected_dim || v.cols() != expected_dim {
        Some(format!("complement basis has rank {}, expected {expected_dim}", v.rank()))
    } else if !psd.is_psd() {
        Some("restricted weight matrix is not PSD".to_string())
    } else if !trace_value.is_negative() {
        Some(format!("weight trace {} is not negative", fmt_q(&trace_value)))
    } else {
        None
    };
    Ok(ObstructionReport {
        clique_vectors: cliques.clone(),
        complement_basis: v,
        weight_matrix: d,
        restricted,
        psd,
        trace_value,
        failure,
    })
}

/// Complement basis from a nullspace computed after reversing the
/// coordinate order, which yields a different basis of the same space.
pub fn reversed_complement_basis(cliques: &QMatrix) -> QMatrix {
    let n = cliques.cols();
    let rev: Vec<Vec<Q>> = (0..n).rev().map(|j| cliques.column(j)).collect();
    let ns = QMatrix::from_columns(&rev, cliques.rows()).expect("shape").nullspace();
    let rows: Vec<Vec<Q>> = (0..n).map(|i| ns.row(n - 1 - i).to_vec()).collect();
    QMatrix::from_rows(rows).expect("shape")
}

/// Vertex weight `-11`, edge weight `4`.
pub fn icosahedral_weights() -> Vec<Q> {
    let mut w = vec![q(-11); 12];
    w.extend(vec![q(4); 30]);
    w
}

pub fn icosahedral_obstruction() -> Result<ObstructionReport> {
    let c = clique_vectors(&Graph::icosahedron())?;
    let v = c.nullspace();
    obstruction_with_basis(&c, v, &icosahedral_weights())
}

/// Same obstruction with the alternative complement basis.
pub fn icosahedral_obstruction_alt() -> Result<ObstructionReport> {
    let c = clique_vectors(&Graph::icosahedron())?;
    let v = reversed_complement_basis(&c);
    obstruction_with_basis(&c, v, &icosahedral_weights())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RecoveryVerdict {
    IdentityHolds { poly: MvPoly },
    Mismatch { monomial: Vec<u32>, expected: Q, got: Q },
}

/// Checks `tr(U F(x)²) = m_d(x)ᵀ Q m_d(x)` with `F = [[0, m_dᵀ], [m_d, 0]]`
/// and `U = diag(0, Q)`: the determinantal Hermite entry that recovers an
/// SOS form. When `target` is given it must equal the recovered form too.
pub fn sos_recovery_check(gram: &QMatrix, d: u32, m: usize, target: Option<&MvPoly>) -> Result<RecoveryVerdict> {
    let md = monomials_of_degree(m, d);
    check_dim(md.len(), gram.rows())?;
    check_dim(md.len(), gram.cols())?;
    if !gram.is_symmetric() {
        return Err(Error::Contract("Gram matrix must be symmetric".into()));
    }
    let size = md.len() + 1;
    let mono = |k: usize| MvPoly::from_terms(m, [(md[k].exps().to_vec(), Q::one())]);
    let mut f = vec![vec![MvPoly::zero(m); size]; size];
    for k in 0..md.len() {
        f[0][k + 1] = mono(k)?;
        f[k + 1][0] = mono(k)?;
    }
    let f = PolyMatrix::from_rows(m, f)?;
    let mut u = QMatrix::zeros(size, size);
    for i in 0..md.len() {
        for j in 0..md.len() {
            u[(i + 1, j + 1)] = gram[(i, j)].clone();
        }
    }
    let u = PolyMatrix::constant(&u, m)?;
    let recovered = u.mul(&f.mul(&f)?)?.trace();
    let basis: Vec<MvPoly> = (0..md.len()).map(mono).collect::<Result<_>>()?;
    let sos = gram_form(&basis, gram)?;
    if let Some((monomial, expected, got)) = first_difference(&sos, &recovered)? {
        return Ok(RecoveryVerdict::Mismatch { monomial, expected, got });
    }
    if let Some(t) = target {
        if let Some((monomial, expected, got)) = first_difference(t, &recovered)? {
            return Ok(RecoveryVerdict::Mismatch { monomial, expected, got });
        }
    }
    Ok(RecoveryVerdict::IdentityHolds { poly: recovered })
}

/// `|x|⁴ - 2 z q(x) + z² |x|²` in `n + 1` variables, `z` last. It is
/// nonnegative iff the standard cubic of `q` is hyperbolic, and must be SOS
/// if that cubic is SOS-hyperbolic.
pub fn std_cubic_sos_necessity(qpoly: &MvPoly) -> Result<MvPoly> {
    if !qpoly.is_zero() && qpoly.is_homogeneous() != Homogeneity::Yes(3) {
        return Err(Error::NotHomogeneous);
    }
    let n = qpoly.nvars();
    let total = n + 1;
    let map: Vec<usize> = (0..n).collect();
    let qz = qpoly.embed(total, &map)?;
    let z = MvPoly::var(total, n);
    let s = (0..n).fold(MvPoly::zero(total), |acc, i| &acc + &MvPoly::var(total, i).pow(2));
    Ok(&(&(&s * &s) - &(&z * &qz).scale(&q(2))) + &(&z.pow(2) * &s))
}

/// The quartic for the normalized icosahedral cubic, whose cubic part is
/// `9 q_G = 2 (9/2) q_G`. Variables: vertices, then edges, then `z`.
pub fn icosahedral_quartic() -> Result<MvPoly> {
    let g = Graph::icosahedron();
    let n = g.nverts() + g.edges().len();
    let mut images = vec![MvPoly::zero(n)];
    images.extend((0..n).map(|i| MvPoly::var(n, i)));
    let qg = graph_form(&g).substitute(&images)?;
    std_cubic_sos_necessity(&qg.scale(&(q(9) / q(2))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qvec;

    #[test]
    fn gram_verdicts() {
        let x = |i| MvPoly::var(2, i);
        let target = &x(0).pow(2) + &x(1).pow(2);
        let cert = GramCertificate { target: target.clone(), basis: vec![x(0), x(1)], gram: QMatrix::identity(2) };
        assert_eq!(verify_gram(&cert).unwrap(), GramVerdict::ValidSos);
        let bad = GramCertificate { gram: QMatrix::from_i64(&[&[1, 1], &[1, 1]]), ..cert.clone() };
        match verify_gram(&bad).unwrap() {
            GramVerdict::IdentityFail { monomial, expected, got } => {
                assert_eq!(monomial, vec![1, 1]);
                assert_eq!((expected, got), (q(0), q(2)));
            }
            v => panic!("{v:?}"),
        }
        let indefinite = GramCertificate {
            target: &x(0).pow(2) - &x(1).pow(2),
            basis: vec![x(0), x(1)],
            gram: QMatrix::from_i64(&[&[1, 0], &[0, -1]]),
        };
        assert!(matches!(verify_gram(&indefinite).unwrap(), GramVerdict::GramNotPsd { .. }));
    }

    #[test]
    fn quadratic_completion_is_sos() {
        // p = x1² - x2² - x3², e = (1,0,0), u = (2,1,0) inside the cone
        let x = |i| MvPoly::var(3, i);
        let p = &(&x(0).pow(2) - &x(1).pow(2)) - &x(2).pow(2);
        let ctx = HyperbolicContext::new(p, qvec(&[1, 0, 0])).unwrap();
        let h = ctx.parameterized_hermite(&qvec(&[2, 1, 0])).unwrap();
        let c0 = h.get(0, 0).eval(&qvec(&[0, 0, 0])).unwrap();
        assert!(c0.is_positive());
        let c1 = h.get(0, 1);
        let schur = h.get(1, 1).try_sub(&c1.try_mul(c1).unwrap().scale(&(Q::one() / &c0))).unwrap();
        // quadratic form matrix of the Schur complement
        let mut g = QMatrix::zeros(3, 3);
        for i in 0..3 {
            for j in 0..3 {
                let mut e = vec![0u32; 3];
                e[i] += 1;
                e[j] += 1;
                let c = schur.coeff(&e);
                g[(i, j)] = if i == j { c } else { c / q(2) };
            }
        }
        let cert = GramCertificate { target: schur, basis: (0..3).map(x).collect(), gram: g };
        assert_eq!(verify_gram(&cert).unwrap(), GramVerdict::ValidSos);
    }

    #[test]
    fn vamos_admissible_basis() {
        let s = vamos_listed_sextic();
        let plain = admissible_square_basis(&s, &[]).unwrap();
        let mut ext = plain.extreme_points.clone();
        ext.sort();
        let mut want = vec![vec![4, 2, 0], vec![2, 4, 0], vec![4, 0, 2], vec![0, 4, 2], vec![0, 0, 6]];
        want.sort();
        assert_eq!(ext, want);
        let mut half: Vec<Vec<u32>> = plain.half_monomials.iter().map(|m| m.exps().to_vec()).collect();
        half.sort();
        let mut want = vec![
            vec![2, 1, 0], vec![1, 2, 0], vec![2, 0, 1], vec![1, 0, 2], vec![1, 1, 1], vec![0, 2, 1],
            vec![0, 1, 2], vec![0, 0, 3],
        ];
        want.sort();
        assert_eq!(half, want);
        let vanishing = admissible_square_basis(&s, &vamos_zeros()).unwrap();
        assert_eq!(vanishing.basis.len(), 5);
        for p in &vamos_zeros() {
            assert_eq!(s.eval(p).unwrap(), q(0));
            assert!(vanishing.basis.iter().all(|b| b.eval(p).unwrap().is_zero()));
        }
    }

    #[test]
    fn admissible_basis_rejects_wide_support() {
        let x = |i| MvPoly::var(4, i);
        let t = (0..4).fold(MvPoly::zero(4), |acc, i| &acc + &x(i).pow(2));
        assert!(matches!(admissible_square_basis(&t, &[]), Err(Error::Unsupported(_))));
        assert!(admissible_square_basis(&x(0).pow(3), &[]).is_err());
        let binary = &MvPoly::var(2, 0).pow(2) + &MvPoly::var(2, 1).pow(2);
        assert_eq!(admissible_square_basis(&binary, &[]).unwrap().half_monomials.len(), 2);
    }

    #[test]
    fn vamos_sextic_recomputes() {
        let s = vamos_sextic().unwrap();
        assert_eq!(s, vamos_listed_sextic());
        assert_eq!(s.coeff(&[4, 2, 0]), q(32));
        assert_eq!(s.coeff(&[0, 0, 6]), q(2));
        // the listing is descending graded-lex
        let order: Vec<Vec<u32>> = s.canonical_terms().map(|(m, _)| m.exps().to_vec()).collect();
        assert_eq!(order, VAMOS_SUPPORT.iter().map(|e| e.to_vec()).collect::<Vec<_>>());
    }

    #[test]
    fn vamos_separation() {
        let out = vamos_certificate().unwrap();
        assert_eq!(out.report.value, q(-144));
        assert_eq!(out.report.verdict, SeparationVerdict::NotSos { margin: q(144) });
        let rows: Vec<&[i64]> = VAMOS_MOMENT_MATRIX.iter().map(|r| r.as_slice()).collect();
        assert_eq!(out.report.moment_matrix, QMatrix::from_i64(&rows));
        assert!(out.report.psd.verify(&out.report.moment_matrix));
    }

    #[test]
    fn separation_inconclusive_cases() {
        let base = vamos_certificate().unwrap().certificate;
        // evaluation at a point where the target is positive
        let pt = qvec(&[1, 2, 3]);
        let eval: BTreeMap<Monomial, Q> = base
            .functional
            .keys()
            .map(|m| (m.clone(), MvPoly::from_terms(3, [(m.exps().to_vec(), q(1))]).unwrap().eval(&pt).unwrap()))
            .collect();
        let at_point = SeparationCertificate { functional: eval, ..base.clone() };
        assert!(matches!(
            verify_separation(&at_point).unwrap().verdict,
            SeparationVerdict::Inconclusive { reason: InconclusiveReason::NonNegativeValue { .. } }
        ));
        let mut perturbed = base.clone();
        *perturbed.functional.get_mut(&Monomial::new(vec![0, 0, 6])).unwrap() = q(-1000);
        assert!(matches!(
            verify_separation(&perturbed).unwrap().verdict,
            SeparationVerdict::Inconclusive { reason: InconclusiveReason::PsdFail { .. } }
        ));
        let mut missing = base;
        missing.functional.remove(&Monomial::new(vec![0, 0, 6]));
        assert!(matches!(verify_separation(&missing), Err(Error::SupportMismatch(_))));
    }

    #[test]
    fn icosahedral_obstruction_holds() {
        let r = icosahedral_obstruction().unwrap();
        assert_eq!(r.clique_vectors.rows(), 20);
        assert_eq!(r.complement_dimension(), 22);
        assert!(r.psd.is_psd());
        assert_eq!(r.trace_value, q(-12));
        assert!(r.obstructed(), "{:?}", r.failure);
        let alt = icosahedral_obstruction_alt().unwrap();
        assert_ne!(alt.complement_basis, r.complement_basis);
        assert!(alt.obstructed());
    }

    #[test]
    fn recovery_identities() {
        let v = sos_recovery_check(&QMatrix::identity(2), 1, 2, None).unwrap();
        let x = |i| MvPoly::var(2, i);
        assert_eq!(v, RecoveryVerdict::IdentityHolds { poly: &x(0).pow(2) + &x(1).pow(2) });
        // (x1² + x2²)² over (x1², x1x2, x2²)
        let g = QMatrix::from_i64(&[&[1, 0, 1], &[0, 0, 0], &[1, 0, 1]]);
        let target = (&x(0).pow(2) + &x(1).pow(2)).pow(2);
        assert!(matches!(sos_recovery_check(&g, 2, 2, Some(&target)).unwrap(), RecoveryVerdict::IdentityHolds { .. }));
        let perturbed = QMatrix::from_i64(&[&[1, 1, 1], &[1, 0, 0], &[1, 0, 1]]);
        match sos_recovery_check(&perturbed, 2, 2, Some(&target)).unwrap() {
            RecoveryVerdict::Mismatch { monomial, .. } => assert_eq!(monomial, vec![3, 1]),
            v => panic!("{v:?}"),
        }
        assert!(sos_recovery_check(&QMatrix::identity(3), 1, 2, None).is_err());
    }

    #[test]
    fn recovery_matches_hyperbolic_phi() {
        use crate::constructions::{special_poly, symmetric_coords, SpecialKind};
        let gram = QMatrix::from_i64(&[&[2, 1], &[1, 3]]);
        let det3 = special_poly(&SpecialKind::DetSymmetric(3)).unwrap();
        let mut u = QMatrix::zeros(3, 3);
        for i in 0..2 {
            for j in 0..2 {
                u[(i + 1, j + 1)] = gram[(i, j)].clone();
            }
        }
        for pt in [qvec(&[1, 2]), qvec(&[-3, 5])] {
            let f = QMatrix::from_rows(vec![
                vec![q(0), pt[0].clone(), pt[1].clone()],
                vec![pt[0].clone(), q(0), q(0)],
                vec![pt[1].clone(), q(0), q(0)],
            ])
            .unwrap();
            let phi = det3.ctx.phi_eval(&symmetric_coords(&f), &qvec(&[0, 1, 0]), &symmetric_coords(&u)).unwrap();
            assert_eq!(phi, gram.quad_form(&pt).unwrap());
        }
    }

    #[test]
    fn quartic_is_bezoutian_form() {
        use crate::constructions::std_cubic;
        use crate::hyperbolic::HyperbolicContext;
        // 6 r(x, z) = yᵀ B_{p,e0}(0, x)[e0] y with y = (1, z, |x|²)
        let n = 3;
        let x = |i| MvPoly::var(n, i);
        let qpoly = &(&(&x(0) * &x(1)) * &x(2)) + &x(0).pow(3).scale(&q(-2));
        let p = std_cubic(&qpoly).unwrap();
        let mut e = vec![q(0); n + 1];
        e[0] = q(1);
        let ctx = HyperbolicContext::new(p, e.clone()).unwrap();
        let b = ctx.parameterized_bezoutian(&e).unwrap();
        // x0 -> z (slot n), x_i -> slot i - 1
        let map: Vec<usize> = std::iter::once(n).chain(0..n).collect();
        let entry = |i: usize, j: usize| b.get(i, j).fix_vars(&[(0, q(0))]).unwrap().embed(n + 1, &map).unwrap();
        let z = MvPoly::var(n + 1, n);
        let s = (0..n).fold(MvPoly::zero(n + 1), |acc, i| &acc + &MvPoly::var(n + 1, i).pow(2));
        let y = [MvPoly::constant(n + 1, q(1)), z, s];
        let mut form = MvPoly::zero(n + 1);
        for i in 0..3 {
            for j in 0..3 {
                form = &form + &(&(&y[i] * &y[j]) * &entry(i, j));
            }
        }
        assert_eq!(form, std_cubic_sos_necessity(&qpoly).unwrap().scale(&q(6)));
    }

    #[test]
    fn quartic_examples() {
        let x1 = MvPoly::var(1, 0);
        let r = std_cubic_sos_necessity(&x1.pow(3)).unwrap();
        let (a, z) = (MvPoly::var(2, 0), MvPoly::var(2, 1));
        assert_eq!(r, &a.pow(2) * &(&a - &z).pow(2));
        let zero = std_cubic_sos_necessity(&MvPoly::zero(2)).unwrap();
        assert_eq!(zero.coeff(&[2, 0, 2]), q(1));
        assert!(std_cubic_sos_necessity(&x1.pow(2)).is_err());
        let rg = icosahedral_quartic().unwrap();
        assert_eq!(rg.nvars(), 43);
        assert_eq!(rg.is_homogeneous(), Homogeneity::Yes(4));
        let mut e = vec![0u32; 43];
        e[0] = 4;
        assert_eq!(rg.coeff(&e), q(1));
        e[0] = 0;
        e[42] = 4;
        assert_eq!(rg.coeff(&e), q(0));
    }
}
