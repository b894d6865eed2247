use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hypercert::certificates::VAMOS_CERTIFICATE_JSON;
use hypercert::io::{poly_from_json, polymatrix_from_json};
use hypercert::rational::q;
use hypercert::{Graph, MvPoly};
use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_hypercert"));
    c.env_remove("HYPERCERT_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout)
        .unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&o.stdout)))
}

/// Report JSON with the timing field removed.
fn stable(o: &Output) -> String {
    let mut v = json(o);
    v.as_object_mut().unwrap().remove("timings");
    v.to_string()
}

fn path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = path(dir, name);
    fs::write(&p, text).unwrap();
    p
}

fn construct(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let out = path(dir, name);
    let mut full = vec!["construct"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", s(&out)]);
    let o = run(&full);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&o)["artifacts"][0], s(&out));
    out
}

fn triangle(dir: &TempDir) -> PathBuf {
    write(dir, "triangle.edges", "# triangle\n0 1\n1 2\n0 2\n")
}

#[test]
fn construct_vamos_writes_quartic_with_direction() {
    let dir = TempDir::new().unwrap();
    let f = construct(&dir, "vamos.json", &["vamos"]);
    let text = fs::read_to_string(&f).unwrap();
    let p = poly_from_json(&text).unwrap();
    assert_eq!(p.nvars(), 4);
    assert_eq!(p.homogeneous_degree().unwrap(), 4);
    assert_eq!(p, hypercert::constructions::vamos_specialized());
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["version"], 1);
    assert_eq!(v["direction"], serde_json::json!(["0", "0", "1", "1"]));
}

#[test]
fn construct_without_out_prints_artifact() {
    let o = run(&["construct", "det", "3"]);
    assert_eq!(code(&o), 0);
    let p = poly_from_json(std::str::from_utf8(&o.stdout).unwrap()).unwrap();
    assert_eq!(p.nvars(), 6);
    assert_eq!(p.homogeneous_degree().unwrap(), 3);
}

#[test]
fn icosahedral_normalized_cubic_has_43_variables_and_e0_inside() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "icosa.edges", &Graph::icosahedron().to_edge_list());
    let f = construct(&dir, "icosa.json", &["graph-cubic", s(&g), "3", "--normalized"]);
    let text = fs::read_to_string(&f).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["poly"]["nvars"], 43);
    assert_eq!(v["metadata"]["omega"], 3);
    assert_eq!(v["metadata"]["coefficients"]["graph"], "9");
    let o = run(&["check", "member", s(&f), "--u", "e0"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["verdict"], "inside");
}

#[test]
fn irrational_normalization_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let g = triangle(&dir);
    let o = run(&["construct", "graph-cubic", s(&g), "2", "--normalized"]);
    assert_eq!(code(&o), 2);
    assert!(!o.stderr.is_empty());
}

#[test]
fn vamos_passes_sampled_hyperbolicity() {
    let dir = TempDir::new().unwrap();
    let f = construct(&dir, "vamos.json", &["vamos"]);
    let o = run(&["check", "hyperbolic", s(&f), "--e", "1,1,1,1", "--trials", "200", "--seed", "7"]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["verdict"], "passed");
    assert_eq!(r["seed"]["value"], 7);
    assert_eq!(r["seed"]["source"], "argument");
}

#[test]
fn triangle_below_clique_number_is_falsified_with_witness() {
    let dir = TempDir::new().unwrap();
    let g = triangle(&dir);
    let k2 = construct(&dir, "tri2.json", &["graph-cubic", s(&g), "2"]);
    let o = run(&["check", "hyperbolic", s(&k2), "--e", "e0", "--seed", "3"]);
    assert_eq!(code(&o), 1);
    let r = json(&o);
    assert_eq!(r["verdict"], "falsified");
    let x: Vec<hypercert::Q> = r["witnesses"]["x"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| hypercert::rational::parse_q(v.as_str().unwrap()).unwrap())
        .collect();
    let p = poly_from_json(&fs::read_to_string(&k2).unwrap()).unwrap();
    let ctx = hypercert::HyperbolicContext::new(p, hypercert::sampling::unit(7, 0)).unwrap();
    assert!(!hypercert::all_roots_real(&ctx.eigen_poly(&x).unwrap()).unwrap());

    let k3 = construct(&dir, "tri3.json", &["graph-cubic", s(&g), "3"]);
    let o = run(&["check", "hyperbolic", s(&k3), "--seed", "3", "--trials", "100"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn fixed_seed_runs_are_identical_apart_from_timings() {
    let dir = TempDir::new().unwrap();
    let g = triangle(&dir);
    let f = construct(&dir, "tri2.json", &["graph-cubic", s(&g), "2"]);
    let a = run(&["check", "hyperbolic", s(&f), "--seed", "11", "--trials", "60"]);
    let b = run(&["check", "hyperbolic", s(&f), "--seed", "11", "--trials", "60", "--jobs", "2"]);
    assert_eq!(stable(&a), stable(&b));
    assert_eq!(code(&a), code(&b));
}

#[test]
fn seed_falls_back_to_environment_then_generates() {
    let dir = TempDir::new().unwrap();
    let f = construct(&dir, "vamos.json", &["vamos"]);
    let o = bin()
        .args(["check", "hyperbolic", s(&f), "--trials", "5"])
        .env("HYPERCERT_SEED", "42")
        .output()
        .unwrap();
    let r = json(&o);
    assert_eq!(r["seed"]["value"], 42);
    assert_eq!(r["seed"]["source"], "environment");

    let o = run(&["check", "hyperbolic", s(&f), "--trials", "5"]);
    let r = json(&o);
    assert_eq!(r["seed"]["source"], "generated");
    let seed = r["seed"]["value"].as_u64().unwrap().to_string();
    let again = run(&["check", "hyperbolic", s(&f), "--trials", "5", "--seed", &seed]);
    assert_eq!(json(&again)["witnesses"], r["witnesses"]);

    let bad = bin().args(["check", "hyperbolic", s(&f)]).env("HYPERCERT_SEED", "x").output().unwrap();
    assert_eq!(code(&bad), 2);
}

#[test]
fn trial_log_has_one_ordered_line_per_trial() {
    let dir = TempDir::new().unwrap();
    let f = construct(&dir, "vamos.json", &["vamos"]);
    let log = path(&dir, "trials.jsonl");
    let o = run(&["check", "hyperbolic", s(&f), "--trials", "25", "--seed", "1", "--log", s(&log)]);
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(&log).unwrap();
    let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 25);
    for (i, l) in lines.iter().enumerate() {
        assert_eq!(l["trial"], i);
        assert_eq!(l["verdict"], "pass");
    }
    assert_eq!(json(&o)["artifacts"][0], s(&log));
}

#[test]
fn inputs_digest_ignores_paths_but_not_contents() {
    let dir = TempDir::new().unwrap();
    let a = construct(&dir, "a.json", &["vamos"]);
    let b = path(&dir, "b.json");
    fs::copy(&a, &b).unwrap();
    let ra = json(&run(&["check", "member", s(&a), "--u", "ones"]));
    let rb = json(&run(&["check", "member", s(&b), "--u", "ones"]));
    assert_eq!(ra["inputs_digest"], rb["inputs_digest"]);
    let rc = json(&run(&["check", "member", s(&a), "--u", "e2"]));
    assert_ne!(ra["inputs_digest"], rc["inputs_digest"]);
}

#[test]
fn membership_exit_codes() {
    let dir = TempDir::new().unwrap();
    let f = construct(&dir, "det2.json", &["det", "2"]);
    let inside = run(&["check", "member", s(&f), "--u", "I"]);
    assert_eq!((code(&inside), json(&inside)["verdict"].clone()), (0, "inside".into()));
    let boundary = run(&["check", "member", s(&f), "--u", "1,0,0"]);
    assert_eq!(code(&boundary), 0);
    assert_eq!(json(&boundary)["verdict"], "boundary");
    assert_eq!(json(&boundary)["witnesses"]["zero_multiplicity"], 1);
    let outside = run(&["check", "member", s(&f), "--u", "1,2,1"]);
    assert_eq!(code(&outside), 1);
    assert_eq!(json(&outside)["witnesses"]["negative_eigenvalue"]["hi"], "-1");
}

#[test]
fn eigenvalues_of_diagonal_matrix() {
    let dir = TempDir::new().unwrap();
    let f = construct(&dir, "det2.json", &["det", "2"]);
    let o = run(&["check", "eigenvalues", s(&f), "--x", "3,0,-1"]);
    assert_eq!(code(&o), 0);
    let ev = json(&o)["witnesses"]["eigenvalues"].clone();
    assert_eq!(ev[0]["lo"], "-1");
    assert_eq!(ev[1]["lo"], "3");
}

#[test]
fn interlacing_of_derivative_is_consistent() {
    let dir = TempDir::new().unwrap();
    let f = construct(&dir, "det3.json", &["det", "3"]);
    let p = poly_from_json(&fs::read_to_string(&f).unwrap()).unwrap();
    let e = hypercert::io::parse_vector("I", 6).unwrap();
    let dp = p.directional_derivative(&e).unwrap();
    let qf = write(&dir, "dp.json", &hypercert::io::poly_to_json(&dp));
    let o = run(&["check", "interlace", s(&f), s(&qf), "--samples", "20", "--seed", "5"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    assert_eq!(json(&o)["verdict"], "interlaces");
}

#[test]
fn builtin_certificates() {
    let o = run(&["certify", "vamos-not-sos"]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["verdict"], "not_sos");
    assert_eq!(r["witnesses"]["margin"], "144");
    assert_eq!(r["witnesses"]["moment_matrix"][0][0], "233");

    let o = run(&["certify", "icosa-not-sos"]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["verdict"], "not_sos");
    assert_eq!(r["witnesses"]["trace_value"], "-12");
    assert_eq!(r["witnesses"]["complement_dimension"], 22);
    assert_eq!(r["witnesses"]["restricted_psd"]["psd"], true);
}

#[test]
fn separation_file_round_trip_and_tampering() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "sep.json", VAMOS_CERTIFICATE_JSON);
    let o = run(&["certify", "separation", s(&f)]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["verdict"], "not_sos");
    assert_eq!(r["witnesses"]["expected_value_matches"], true);

    let mut v: Value = serde_json::from_str(VAMOS_CERTIFICATE_JSON).unwrap();
    v["expected_value"] = "-143".into();
    let f = write(&dir, "bad.json", &v.to_string());
    let o = run(&["certify", "separation", s(&f)]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["verdict"], "inconsistent");
}

#[test]
fn gram_certificates() {
    let dir = TempDir::new().unwrap();
    // x^2 + 2xy + 2y^2 = (x + y)^2 + y^2 over basis (x, y)
    let good = r#"{"kind":"gram",
        "target":{"nvars":2,"terms":[{"exp":[2,0],"coeff":"1"},{"exp":[1,1],"coeff":"2"},{"exp":[0,2],"coeff":"2"}]},
        "basis":[{"nvars":2,"terms":[{"exp":[1,0],"coeff":"1"}]},{"nvars":2,"terms":[{"exp":[0,1],"coeff":"1"}]}],
        "gram":[["1","1"],["1","2"]]}"#;
    let o = run(&["certify", "gram", s(&write(&dir, "good.json", good))]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["verdict"], "valid_sos");

    let wrong = good.replace(r#"["1","2"]]"#, r#"["1","3"]]"#);
    let o = run(&["certify", "gram", s(&write(&dir, "wrong.json", &wrong))]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["verdict"], "identity_fail");

    // 2xy with Gram [[0,1],[1,0]]: identity holds, matrix indefinite
    let indefinite = r#"{"kind":"gram",
        "target":{"nvars":2,"terms":[{"exp":[1,1],"coeff":"2"}]},
        "basis":[{"nvars":2,"terms":[{"exp":[1,0],"coeff":"1"}]},{"nvars":2,"terms":[{"exp":[0,1],"coeff":"1"}]}],
        "gram":[["0","1"],["1","0"]]}"#;
    let o = run(&["certify", "gram", s(&write(&dir, "indef.json", indefinite))]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["verdict"], "gram_not_psd");

    let o = run(&["certify", "gram", s(&write(&dir, "sep.json", VAMOS_CERTIFICATE_JSON))]);
    assert_eq!(code(&o), 2);
}

#[test]
fn sos_recovery_file() {
    let dir = TempDir::new().unwrap();
    let text = r#"{"kind":"sos_recovery","nvars":2,"degree":1,"gram":[["2","1"],["1","1"]]}"#;
    let o = run(&["certify", "sos-recovery", s(&write(&dir, "rec.json", text))]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["verdict"], "identity_holds");
    let p = hypercert::io::PolyJson::to_poly(&serde_json::from_value(r["witnesses"]["recovered"].clone()).unwrap())
        .unwrap();
    assert_eq!(p.coeff(&[2, 0]), q(2));
    assert_eq!(p.coeff(&[1, 1]), q(2));
    assert_eq!(p.coeff(&[0, 2]), q(1));
}

#[test]
fn standard_cubic_bezoutian_at_x0_zero() {
    let dir = TempDir::new().unwrap();
    let qf = write(&dir, "q.json", r#"{"nvars":2,"terms":[{"exp":[3,0],"coeff":"1"}]}"#);
    let f = construct(&dir, "std.json", &["std-cubic", s(&qf)]);
    let o = run(&["matrix", "bezout", s(&f), "--e", "e0", "--u", "e0", "--at", "x0=0"]);
    assert_eq!(code(&o), 0);
    let m = polymatrix_from_json(std::str::from_utf8(&o.stdout).unwrap()).unwrap();
    let x = |i| MvPoly::var(3, i);
    let sq = &x(1).pow(2) + &x(2).pow(2);
    let qq = x(1).pow(3);
    let zero = MvPoly::zero(3);
    let expected = [
        [(&sq * &sq).scale(&q(9)), qq.scale(&q(-6)), sq.scale(&q(-3))],
        [qq.scale(&q(-6)), sq.scale(&q(6)), zero.clone()],
        [sq.scale(&q(-3)), zero, MvPoly::constant(3, q(3))],
    ];
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(m.get(i, j), &expected[i][j], "entry ({i},{j})");
        }
    }
}

#[test]
fn hermite_of_determinant_is_signed_trace_moments() {
    let dir = TempDir::new().unwrap();
    let f = construct(&dir, "det2.json", &["det", "2"]);
    let o = run(&["matrix", "hermite", s(&f), "--e", "I", "--u", "1,0,2", "--symbolic"]);
    assert_eq!(code(&o), 0);
    let h = polymatrix_from_json(std::str::from_utf8(&o.stdout).unwrap()).unwrap();
    // X = [[a, b], [b, c]], U = diag(1, 2): tr(U) = 3, -tr(U X) = -(a + 2c)
    assert_eq!(h.get(0, 0), &MvPoly::constant(3, q(3)));
    let x = |i| MvPoly::var(3, i);
    assert_eq!(h.get(0, 1), &(&x(0) + &x(2).scale(&q(2))).scale(&q(-1)));
    let xs = hypercert::io::parse_vector("2,1,-1", 3).unwrap();
    assert_eq!(h.eval(&xs).unwrap()[(1, 1)], q(4 + 1 + 2 * (1 + 1)));

    let o = run(&["matrix", "hermite", s(&f), "--u", "I", "--x", "1,0,1", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let m = hypercert::io::matrix_from_csv(std::str::from_utf8(&o.stdout).unwrap()).unwrap();
    assert_eq!(m, hypercert::QMatrix::from_i64(&[&[2, -2], &[-2, 2]]));
}

#[test]
fn phi_functional_vector() {
    let dir = TempDir::new().unwrap();
    let f = construct(&dir, "det2.json", &["det", "2"]);
    let o = run(&["matrix", "phi", s(&f), "--x", "1,2,3", "--y", "1,1"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["functional"].as_array().unwrap().len(), 3);
}

#[test]
fn lifts() {
    let dir = TempDir::new().unwrap();
    let det = construct(&dir, "det2.json", &["det", "2"]);
    let ell = write(&dir, "ell.json", r#"{"nvars":3,"terms":[{"exp":[1,0,0],"coeff":"1"}]}"#);
    let f = construct(&dir, "deg.json", &["lift", "degree", s(&det), "--ell", s(&ell), "--u", "e2", "--k", "2"]);
    let p = poly_from_json(&fs::read_to_string(&f).unwrap()).unwrap();
    assert_eq!(p.homogeneous_degree().unwrap(), 4);

    let ql = write(&dir, "q.json", r#"{"nvars":2,"terms":[{"exp":[1,0],"coeff":"1"},{"exp":[0,1],"coeff":"1"}]}"#);
    let f = construct(&dir, "var.json", &["lift", "variable", s(&det), "--q", s(&ql), "--e-prime", "1,0"]);
    let text = fs::read_to_string(&f).unwrap();
    assert_eq!(poly_from_json(&text).unwrap().nvars(), 5);
    let o = run(&["check", "hyperbolic", s(&f), "--trials", "30", "--seed", "2"]);
    assert_eq!(code(&o), 0);

    let f = construct(&dir, "fam.json", &["lift", "vamos-family", "5", "5"]);
    let p = poly_from_json(&fs::read_to_string(&f).unwrap()).unwrap();
    assert_eq!((p.nvars(), p.homogeneous_degree().unwrap()), (5, 5));

    let o = run(&["construct", "lift", "degree", s(&det), "--ell", s(&ell), "--u", "e0"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&run(&[])), 2);
    assert_eq!(code(&run(&["construct", "nothing"])), 2);
    assert_eq!(code(&run(&["construct", "det", "three"])), 2);
    assert_eq!(code(&run(&["certify", "gram", "/nonexistent/file.json"])), 2);
    let dir = TempDir::new().unwrap();
    let f = construct(&dir, "det2.json", &["det", "2"]);
    assert_eq!(code(&run(&["check", "member", s(&f), "--u", "1,2"])), 2);
    assert_eq!(code(&run(&["matrix", "bezout", s(&f), "--u", "I", "--format", "csv"])), 2);
    assert_eq!(code(&run(&["matrix", "bezout", s(&f), "--u", "I", "--at", "x7=0"])), 2);
    let garbage = write(&dir, "garbage.json", "{not json");
    assert_eq!(code(&run(&["check", "member", s(&garbage), "--u", "e0"])), 2);
    assert_eq!(code(&run(&["--version"])), 0);
}
