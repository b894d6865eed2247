//! Command implementations. Each returns the exit outcome and prints either
//! an artifact or a [`RunReport`].

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use hypercert::certificates::{
    self, GramCertificate, GramVerdict, InconclusiveReason, RecoveryVerdict, SeparationReport, SeparationVerdict,
};
use hypercert::constructions::{self, SpecialKind};
use hypercert::hyperbolic::{Interlacing, TrialRecord};
use hypercert::io::{self, CertificateFile, PolyFile};
use hypercert::linalg::PsdCertificate;
use hypercert::rational::{fmt_q, parse_q, to_f64};
use hypercert::{Graph, HyperbolicContext, Membership, MvPoly, PolyMatrix, QMatrix, RootInterval, TestConfig, Q};
use serde_json::{json, Value};

use crate::report::{Inputs, RunReport, Seed, SeedSource};
use crate::{Certify, Check, Cli, Command, Construct, Format, Global, Lift, MatrixArgs, MatrixCmd};

pub const SEED_ENV: &str = "HYPERCERT_SEED";

#[derive(Debug)]
pub struct CliError(String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<hypercert::Error> for CliError {
    fn from(e: hypercert::Error) -> Self {
        CliError(e.to_string())
    }
}

impl From<String> for CliError {
    fn from(e: String) -> Self {
        CliError(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError(e.to_string())
    }
}

type R<T> = Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Passed,
    Failed,
}

impl Outcome {
    pub fn code(self) -> u8 {
        match self {
            Outcome::Passed => 0,
            Outcome::Failed => 1,
        }
    }

    fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Passed
        } else {
            Outcome::Failed
        }
    }
}

pub fn run(cli: &Cli) -> R<Outcome> {
    let start = Instant::now();
    let g = &cli.global;
    match &cli.command {
        Command::Construct(c) => construct(c, g, start),
        Command::Check(c) => check(c, g, start),
        Command::Certify(c) => certify(c, g, start),
        Command::Matrix(m) => matrix(m, g, start),
    }
}

fn resolve_seed(g: &Global) -> R<Seed> {
    if let Some(value) = g.seed {
        return Ok(Seed { value, source: SeedSource::Argument });
    }
    match std::env::var(SEED_ENV) {
        Ok(s) => {
            let value = s.trim().parse().map_err(|_| CliError(format!("{SEED_ENV} is not a u64: {s:?}")))?;
            Ok(Seed { value, source: SeedSource::Environment })
        }
        Err(_) => Ok(Seed { value: rand::random(), source: SeedSource::Generated }),
    }
}

fn strings(v: &[Q]) -> Vec<String> {
    io::vector_to_strings(v)
}

fn interval_json(r: &RootInterval) -> Value {
    json!({
        "lo": fmt_q(&r.lo),
        "hi": fmt_q(&r.hi),
        "multiplicity": r.multiplicity,
        "approx": to_f64(&r.midpoint()),
    })
}

fn load_poly(path: &Path, inputs: &mut Inputs) -> R<(MvPoly, PolyFile)> {
    let file = io::parse_poly_file(&inputs.read(path)?)?;
    Ok((file.poly.to_poly()?, file))
}

fn load_graph(path: &Path, inputs: &mut Inputs) -> R<Graph> {
    let text = inputs.read(path)?;
    Ok(if text.trim_start().starts_with('{') { Graph::from_json(&text)? } else { Graph::parse_edge_list(&text)? })
}

fn vector(name: &str, s: &str, n: usize, inputs: &mut Inputs) -> R<Vec<Q>> {
    inputs.param(name, s);
    io::parse_vector(s, n).map_err(|e| CliError(format!("--{name}: {e}")))
}

/// `--e` when given, else the direction stored in the polynomial file.
fn direction(arg: Option<&str>, file: &PolyFile, n: usize, inputs: &mut Inputs) -> R<Vec<Q>> {
    match arg {
        Some(s) => vector("e", s, n, inputs),
        None => file.direction()?.ok_or_else(|| CliError("no direction: pass --e or store one in the file".into())),
    }
}

fn context(path: &Path, e: Option<&str>, inputs: &mut Inputs) -> R<HyperbolicContext> {
    let (p, file) = load_poly(path, inputs)?;
    let e = direction(e, &file, p.nvars(), inputs)?;
    Ok(HyperbolicContext::new(p, e)?)
}

/// A closed pipe (`| head`) is not an error for the computation.
fn print_stdout(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

/// Writes to `--out` and returns its path, or prints to stdout.
fn emit(g: &Global, text: &str) -> R<Option<String>> {
    match &g.out {
        Some(path) => {
            fs::write(path, text)?;
            Ok(Some(path.display().to_string()))
        }
        None => {
            print_stdout(text);
            Ok(None)
        }
    }
}

/// Artifact commands print the artifact, or the report when `--out` is set.
fn finish_artifact(g: &Global, mut report: RunReport, artifact: &str, start: Instant) -> R<Outcome> {
    if let Some(path) = emit(g, artifact)? {
        report.artifacts.push(path);
        print_stdout(&report.finish(start).to_json());
    }
    Ok(Outcome::Passed)
}

/// Report commands print the report and also write it to `--out` if set.
fn finish_report(g: &Global, mut report: RunReport, start: Instant) -> R<Outcome> {
    let outcome = if report.exit_code == 0 { Outcome::Passed } else { Outcome::Failed };
    if let Some(path) = &g.out {
        report.artifacts.push(path.display().to_string());
        let report = report.finish(start);
        fs::write(path, report.to_json())?;
        print_stdout(&report.to_json());
    } else {
        print_stdout(&report.finish(start).to_json());
    }
    Ok(outcome)
}

fn construct(c: &Construct, g: &Global, start: Instant) -> R<Outcome> {
    let (name, mut inputs) = match c {
        Construct::Vamos => ("construct vamos", Inputs::new("construct vamos")),
        Construct::GraphCubic { .. } => ("construct graph-cubic", Inputs::new("construct graph-cubic")),
        Construct::StdCubic { .. } => ("construct std-cubic", Inputs::new("construct std-cubic")),
        Construct::Det { .. } => ("construct det", Inputs::new("construct det")),
        Construct::SingularCubic => ("construct singular-cubic", Inputs::new("construct singular-cubic")),
        Construct::Lift(Lift::Degree { .. }) => ("construct lift degree", Inputs::new("construct lift degree")),
        Construct::Lift(Lift::Variable { .. }) => ("construct lift variable", Inputs::new("construct lift variable")),
        Construct::Lift(Lift::VamosFamily { .. }) => {
            ("construct lift vamos-family", Inputs::new("construct lift vamos-family"))
        }
    };
    let file = match c {
        Construct::Vamos => {
            let mut f = PolyFile::new(&constructions::vamos_specialized())
                .with_direction(&constructions::vamos_direction());
            f.variables = Some((1..=4).map(|i| format!("x{i}")).collect());
            f.metadata.insert("construction".into(), json!("vamos"));
            f
        }
        Construct::GraphCubic { graph, k, normalized } => {
            let gr = load_graph(graph, &mut inputs)?;
            inputs.param("k", k);
            inputs.param("normalized", &normalized.to_string());
            let kq = parse_q(k)?;
            let cubic = constructions::graph_cubic(&gr, &kq, *normalized)?;
            let (omega, clique) = gr.clique_number();
            let mut f = PolyFile::new(&cubic.poly).with_direction(&cubic.direction());
            f.variables = Some(cubic.variable_names());
            f.metadata.insert("construction".into(), json!("graph_cubic"));
            f.metadata.insert("k".into(), json!(fmt_q(&kq)));
            f.metadata.insert("normalized".into(), json!(normalized));
            f.metadata.insert("omega".into(), json!(omega));
            f.metadata.insert("clique".into(), json!(clique));
            f.metadata.insert("nverts".into(), json!(gr.nverts()));
            f.metadata.insert("edges".into(), json!(gr.edges()));
            f.metadata.insert(
                "coefficients".into(),
                json!({
                    "cubic": fmt_q(&cubic.cubic_coeff),
                    "square": fmt_q(&cubic.square_coeff),
                    "graph": fmt_q(&cubic.graph_coeff),
                }),
            );
            f
        }
        Construct::StdCubic { q } => {
            let (qp, _) = load_poly(q, &mut inputs)?;
            let p = constructions::std_cubic(&qp)?;
            let mut e = vec![Q::from_integer(0.into()); p.nvars()];
            e[0] = Q::from_integer(1.into());
            let mut f = PolyFile::new(&p).with_direction(&e);
            f.variables = Some((0..p.nvars()).map(|i| format!("x{i}")).collect());
            f.metadata.insert("construction".into(), json!("std_cubic"));
            f
        }
        Construct::Det { d } => {
            inputs.param("d", &d.to_string());
            let sp = constructions::special_poly(&SpecialKind::DetSymmetric(*d))?;
            let mut f = PolyFile::new(sp.ctx.poly()).with_direction(sp.ctx.direction());
            f.variables = Some(constructions::upper_pairs(*d).map(|(i, j)| format!("m{}_{}", i + 1, j + 1)).collect());
            f.metadata.insert("construction".into(), json!("det_symmetric"));
            f.metadata.insert("size".into(), json!(d));
            f
        }
        Construct::SingularCubic => {
            let sp = constructions::special_poly(&SpecialKind::SingularCubic)?;
            let mut f = PolyFile::new(sp.ctx.poly()).with_direction(sp.ctx.direction());
            f.variables = Some((1..=3).map(|i| format!("x{i}")).collect());
            f.metadata.insert("construction".into(), json!("singular_cubic"));
            f
        }
        Construct::Lift(l) => lift(l, &mut inputs)?,
    };
    let text = serde_json::to_string_pretty(&file).expect("plain data");
    let report = RunReport::new(name, inputs, None, "constructed", 0);
    finish_artifact(g, report, &text, start)
}

fn lift(l: &Lift, inputs: &mut Inputs) -> R<PolyFile> {
    match l {
        Lift::Degree { poly, ell, u, k, e } => {
            let ctx = context(poly, e.as_deref(), inputs)?;
            let (ellp, _) = load_poly(ell, inputs)?;
            let u = vector("u", u, ctx.nvars(), inputs)?;
            inputs.param("k", &k.to_string());
            let p = constructions::degree_lift(&ctx, &u, &ellp, *k)?;
            let mut f = PolyFile::new(&p).with_direction(ctx.direction());
            f.metadata.insert("construction".into(), json!("degree_lift"));
            Ok(f)
        }
        Lift::Variable { poly, q, e_prime, e } => {
            let ctx = context(poly, e.as_deref(), inputs)?;
            let (qp, _) = load_poly(q, inputs)?;
            let ep = vector("e-prime", e_prime, qp.nvars(), inputs)?;
            let p = constructions::variable_lift(&ctx, &qp, &ep)?;
            let mut dir = ctx.direction().to_vec();
            dir.resize(p.nvars(), Q::from_integer(0.into()));
            let mut f = PolyFile::new(&p).with_direction(&dir);
            f.metadata.insert("construction".into(), json!("variable_lift"));
            Ok(f)
        }
        Lift::VamosFamily { n, d } => {
            inputs.param("n", &n.to_string());
            inputs.param("d", &d.to_string());
            let ctx = constructions::vamos_family(*n, *d)?;
            let mut f = PolyFile::new(ctx.poly()).with_direction(ctx.direction());
            f.metadata.insert("construction".into(), json!("vamos_family"));
            Ok(f)
        }
    }
}

fn write_log(g: &Global, records: &[TrialRecord]) -> R<Option<String>> {
    let Some(path) = &g.log else { return Ok(None) };
    let mut out = std::io::BufWriter::new(fs::File::create(path)?);
    for r in records {
        let line = json!({ "trial": r.trial, "x": strings(&r.x), "verdict": r.verdict });
        writeln!(out, "{line}")?;
    }
    out.flush()?;
    Ok(Some(path.display().to_string()))
}

fn check(c: &Check, g: &Global, start: Instant) -> R<Outcome> {
    match c {
        Check::Hyperbolic { poly, e, trials, complement } => {
            let name = "check hyperbolic";
            let mut inputs = Inputs::new(name);
            let ctx = context(poly, e.as_deref(), &mut inputs)?;
            inputs.param("trials", &trials.to_string());
            inputs.param("complement", &complement.to_string());
            let seed = resolve_seed(g)?;
            let mut cfg = TestConfig::new(*trials, seed.value);
            cfg.complement = *complement;
            cfg.jobs = g.jobs;
            let rep = ctx.hyperbolicity_test(&cfg)?;
            let log = write_log(g, &rep.records)?;
            let (verdict, code, witnesses) = match &rep.failure {
                None => ("passed", 0, json!({ "trials": rep.trials })),
                Some(f) => {
                    let line = ctx.eigen_poly(&f.x)?;
                    (
                        "falsified",
                        1,
                        json!({
                            "trials": rep.trials,
                            "trial": f.trial,
                            "x": strings(&f.x),
                            "reason": f.verdict,
                            "eigen_polynomial": strings(line.coeffs()),
                        }),
                    )
                }
            };
            let mut report = RunReport::new(name, inputs, Some(seed), verdict, code);
            report.witnesses = witnesses;
            report.artifacts.extend(log);
            finish_report(g, report, start)
        }
        Check::Member { poly, u, e } => {
            let name = "check member";
            let mut inputs = Inputs::new(name);
            let ctx = context(poly, e.as_deref(), &mut inputs)?;
            let u = vector("u", u, ctx.nvars(), &mut inputs)?;
            let (verdict, code, witnesses) = match ctx.cone_membership(&u) {
                Ok(Membership::Inside) => ("inside", 0, Value::Null),
                Ok(Membership::Boundary { multiplicity }) => ("boundary", 0, json!({ "zero_multiplicity": multiplicity })),
                Ok(Membership::Outside { eigenvalue }) => {
                    ("outside", 1, json!({ "negative_eigenvalue": interval_json(&eigenvalue) }))
                }
                Err(hypercert::Error::NotHyperbolic { x }) => ("not_hyperbolic", 1, json!({ "x": strings(&x) })),
                Err(e) => return Err(e.into()),
            };
            let mut report = RunReport::new(name, inputs, None, verdict, code);
            report.witnesses = witnesses;
            finish_report(g, report, start)
        }
        Check::Eigenvalues { poly, x, e, width } => {
            let name = "check eigenvalues";
            let mut inputs = Inputs::new(name);
            let ctx = context(poly, e.as_deref(), &mut inputs)?;
            let x = vector("x", x, ctx.nvars(), &mut inputs)?;
            inputs.param("width", width);
            let w = parse_q(width)?;
            let (verdict, code, witnesses) = match ctx.hyperbolic_eigenvalues(&x, &w) {
                Ok(iso) => (
                    "real_rooted",
                    0,
                    json!({ "eigenvalues": iso.intervals.iter().map(interval_json).collect::<Vec<_>>() }),
                ),
                Err(hypercert::Error::NotHyperbolic { .. }) => {
                    let f = ctx.eigen_poly(&x)?;
                    ("not_real_rooted", 1, json!({ "eigen_polynomial": strings(f.coeffs()) }))
                }
                Err(e) => return Err(e.into()),
            };
            let mut report = RunReport::new(name, inputs, None, verdict, code);
            report.witnesses = witnesses;
            finish_report(g, report, start)
        }
        Check::Interlace { poly, q, e, samples, width } => {
            let name = "check interlace";
            let mut inputs = Inputs::new(name);
            let ctx = context(poly, e.as_deref(), &mut inputs)?;
            let (qp, _) = load_poly(q, &mut inputs)?;
            inputs.param("samples", &samples.to_string());
            inputs.param("width", width);
            let w = parse_q(width)?;
            let seed = resolve_seed(g)?;
            let (verdict, code, witnesses) = match ctx.check_interlaces(&qp, *samples, seed.value, &w)? {
                Interlacing::Consistent { samples } => ("interlaces", 0, json!({ "samples": samples })),
                Interlacing::Violation { x } => ("violated", 1, json!({ "x": strings(&x) })),
            };
            let mut report = RunReport::new(name, inputs, Some(seed), verdict, code);
            report.witnesses = witnesses;
            finish_report(g, report, start)
        }
    }
}

fn psd_json(c: &PsdCertificate) -> Value {
    match c {
        PsdCertificate::Psd { pivots, .. } => json!({ "psd": true, "pivots": strings(pivots) }),
        PsdCertificate::NotPsd { witness, value } => {
            json!({ "psd": false, "witness": strings(witness), "value": fmt_q(value) })
        }
    }
}

fn separation_json(rep: &SeparationReport) -> (&'static str, Value) {
    let mut w = json!({
        "value": fmt_q(&rep.value),
        "moment_matrix": io::matrix_to_strings(&rep.moment_matrix),
        "moment_psd": psd_json(&rep.psd),
    });
    let verdict = match &rep.verdict {
        SeparationVerdict::NotSos { margin } => {
            w["margin"] = json!(fmt_q(margin));
            "not_sos"
        }
        SeparationVerdict::Inconclusive { reason } => {
            w["reason"] = json!(match reason {
                InconclusiveReason::PsdFail { .. } => "moment_matrix_not_psd",
                InconclusiveReason::NonNegativeValue { .. } => "nonnegative_value",
            });
            "inconclusive"
        }
    };
    (verdict, w)
}

fn certify(c: &Certify, g: &Global, start: Instant) -> R<Outcome> {
    let (name, verdict, ok, witnesses, inputs) = match c {
        Certify::VamosNotSos => {
            let name = "certify vamos-not-sos";
            let out = certificates::vamos_certificate()?;
            let (verdict, mut w) = separation_json(&out.report);
            w["target_terms"] = json!(out.sextic.len());
            (name, verdict, verdict == "not_sos", w, Inputs::new(name))
        }
        Certify::IcosaNotSos => {
            let name = "certify icosa-not-sos";
            let rep = certificates::icosahedral_obstruction()?;
            let w = json!({
                "maximum_cliques": rep.clique_vectors.rows(),
                "complement_dimension": rep.complement_dimension(),
                "trace_value": fmt_q(&rep.trace_value),
                "restricted_psd": psd_json(&rep.psd),
                "failure": rep.failure,
            });
            let verdict = if rep.obstructed() { "not_sos" } else { "inconclusive" };
            (name, verdict, rep.obstructed(), w, Inputs::new(name))
        }
        Certify::Gram { file } => {
            let name = "certify gram";
            let mut inputs = Inputs::new(name);
            let CertificateFile::Gram { target, basis, gram } = io::parse_certificate(&inputs.read(file)?)? else {
                return Err(CliError("expected a certificate of kind \"gram\"".into()));
            };
            let cert = GramCertificate {
                target: target.to_poly()?,
                basis: basis.iter().map(|b| b.to_poly()).collect::<hypercert::Result<_>>()?,
                gram: io::matrix_from_strings(&gram)?,
            };
            let (verdict, w) = match certificates::verify_gram(&cert)? {
                GramVerdict::ValidSos => ("valid_sos", Value::Null),
                GramVerdict::IdentityFail { monomial, expected, got } => (
                    "identity_fail",
                    json!({ "monomial": monomial, "expected": fmt_q(&expected), "got": fmt_q(&got) }),
                ),
                GramVerdict::GramNotPsd { witness, value } => {
                    ("gram_not_psd", json!({ "witness": strings(&witness), "value": fmt_q(&value) }))
                }
            };
            (name, verdict, verdict == "valid_sos", w, inputs)
        }
        Certify::Separation { file } => {
            let name = "certify separation";
            let mut inputs = Inputs::new(name);
            let parsed = io::parse_certificate(&inputs.read(file)?)?;
            let cert = certificates::certificate_from_file(&parsed)?;
            let rep = certificates::verify_separation(&cert)?;
            let (mut verdict, mut w) = separation_json(&rep);
            if let CertificateFile::Separation { expected_value, expected_moment_matrix, .. } = &parsed {
                let value_ok = expected_value.as_ref().map_or(Ok(true), |v| parse_q(v).map(|v| v == rep.value))?;
                let matrix_ok = expected_moment_matrix
                    .as_ref()
                    .map_or(Ok(true), |m| io::matrix_from_strings(m).map(|m| m == rep.moment_matrix))?;
                w["expected_value_matches"] = json!(value_ok);
                w["expected_moment_matrix_matches"] = json!(matrix_ok);
                if !(value_ok && matrix_ok) {
                    verdict = "inconsistent";
                }
            }
            (name, verdict, verdict == "not_sos", w, inputs)
        }
        Certify::SosRecovery { file } => {
            let name = "certify sos-recovery";
            let mut inputs = Inputs::new(name);
            let CertificateFile::SosRecovery { nvars, degree, gram } = io::parse_certificate(&inputs.read(file)?)?
            else {
                return Err(CliError("expected a certificate of kind \"sos_recovery\"".into()));
            };
            let gram = io::matrix_from_strings(&gram)?;
            let (verdict, w) = match certificates::sos_recovery_check(&gram, degree, nvars, None)? {
                RecoveryVerdict::IdentityHolds { poly } => {
                    ("identity_holds", json!({ "recovered": io::PolyJson::from_poly(&poly) }))
                }
                RecoveryVerdict::Mismatch { monomial, expected, got } => (
                    "mismatch",
                    json!({ "monomial": monomial, "expected": fmt_q(&expected), "got": fmt_q(&got) }),
                ),
            };
            (name, verdict, verdict == "identity_holds", w, inputs)
        }
    };
    let outcome = Outcome::from_bool(ok);
    let mut report = RunReport::new(name, inputs, None, verdict, outcome.code());
    report.witnesses = witnesses;
    finish_report(g, report, start)
}

/// Parses `x0=0,x2=1/2` into index/value pairs.
fn parse_assignments(s: &str, n: usize) -> R<Vec<(usize, Q)>> {
    s.split(',')
        .map(|part| {
            let (var, val) = part
                .split_once('=')
                .ok_or_else(|| CliError(format!("--at: expected name=value, got {part:?}")))?;
            let idx: usize = var
                .trim()
                .strip_prefix('x')
                .and_then(|i| i.parse().ok())
                .ok_or_else(|| CliError(format!("--at: variables are x0..x{}, got {var:?}", n.saturating_sub(1))))?;
            if idx >= n {
                return Err(CliError(format!("--at: x{idx} out of range for {n} variables")));
            }
            Ok((idx, parse_q(val.trim())?))
        })
        .collect()
}

fn fix_matrix(m: &PolyMatrix, fixed: &[(usize, Q)]) -> R<PolyMatrix> {
    let rows = m
        .rows()
        .iter()
        .map(|r| r.iter().map(|p| p.fix_vars(fixed)).collect::<hypercert::Result<Vec<_>>>())
        .collect::<hypercert::Result<Vec<_>>>()?;
    Ok(PolyMatrix::from_rows(m.nvars(), rows)?)
}

fn matrix(m: &MatrixCmd, g: &Global, start: Instant) -> R<Outcome> {
    let (name, args, hermite) = match m {
        MatrixCmd::Bezout(a) => ("matrix bezout", a, false),
        MatrixCmd::Hermite(a) => ("matrix hermite", a, true),
        MatrixCmd::Phi { poly, e, x, y } => {
            let name = "matrix phi";
            let mut inputs = Inputs::new(name);
            let ctx = context(poly, e.as_deref(), &mut inputs)?;
            let x = vector("x", x, ctx.nvars(), &mut inputs)?;
            let y = vector("y", y, ctx.degree(), &mut inputs)?;
            let xi = ctx.phi_functional(&x, &y)?;
            let text = serde_json::to_string_pretty(&json!({ "functional": strings(&xi) })).expect("plain data");
            let report = RunReport::new(name, inputs, None, "computed", 0);
            return finish_artifact(g, report, &text, start);
        }
    };
    let MatrixArgs { poly, e, u, x, at, symbolic: _, format } = args;
    let mut inputs = Inputs::new(name);
    let ctx = context(poly, e.as_deref(), &mut inputs)?;
    let n = ctx.nvars();
    let u = vector("u", u, n, &mut inputs)?;
    let text = match x {
        Some(x) => {
            let x = vector("x", x, n, &mut inputs)?;
            let mat: QMatrix = if hermite { ctx.hermite_at(&x, &u)? } else { ctx.bezoutian_at(&x, &u)? };
            match format {
                Format::Json => io::matrix_to_json(&mat),
                Format::Csv => io::matrix_to_csv(&mat),
            }
        }
        None => {
            if *format == Format::Csv {
                return Err(CliError("CSV output needs a numeric matrix; pass --x".into()));
            }
            let mut mat = if hermite { ctx.parameterized_hermite(&u)? } else { ctx.parameterized_bezoutian(&u)? };
            if let Some(at) = at {
                inputs.param("at", at);
                mat = fix_matrix(&mat, &parse_assignments(at, n)?)?;
            }
            io::polymatrix_to_json(&mat)
        }
    };
    let report = RunReport::new(name, inputs, None, "computed", 0);
    finish_artifact(g, report, &text, start)
}
