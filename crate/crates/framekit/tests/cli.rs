use std::fs;
use std::path::{Path, PathBuf};

use framekit::format::{FrameFile, OvfFile, PFrameFile};
use framekit::run;
use framekit_core::Tolerance;
use tempfile::TempDir;

const S3: f64 = 0.8660254037844386;

fn fk(args: &[&str]) -> (i32, String) {
    run(std::iter::once("framekit").chain(args.iter().copied()))
}

fn value<'a>(out: &'a str, key: &str) -> &'a str {
    let prefix = format!("{key}: ");
    out.lines()
        .find_map(|l| l.strip_prefix(prefix.as_str()))
        .unwrap_or_else(|| panic!("no `{key}` in report:\n{out}"))
}

fn num(out: &str, key: &str) -> f64 {
    value(out, key).parse().unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn mb(dir: &TempDir) -> PathBuf {
    let v = format!("[[0,1],[-{S3},-0.5],[{S3},-0.5]]");
    write(dir, "mb.frame", &format!(r#"{{"field":"real","dim":2,"count":3,"x":{v},"tau":{v}}}"#))
}

#[test]
fn verify_mercedes_benz() {
    let dir = TempDir::new().unwrap();
    let (code, out) = fk(&["verify", s(&mb(&dir))]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(value(&out, "is_frame"), "true");
    assert_eq!(value(&out, "lower_a"), "1.5");
    assert_eq!(value(&out, "upper_b"), "1.5");
    assert_eq!(value(&out, "tight"), "true");
    assert_eq!(value(&out, "parseval"), "false");
    assert!(!value(&out, "theorem").is_empty());
}

#[test]
fn circular_then_verify() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("out.frame");
    let (code, out) = fk(&["construct", "circular", "--k", "3", "--l", "3", "-o", s(&path)]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(value(&out, "count"), "9");
    let (code, out) = fk(&["verify", s(&path)]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(value(&out, "count"), "9");
    assert_eq!(value(&out, "tight"), "true");
    assert_eq!(value(&out, "constant"), "4.5");
    assert_eq!(num(&out, "lower_a"), 4.5);
}

#[test]
fn written_files_round_trip_exactly() {
    let dir = TempDir::new().unwrap();
    let tol = Tolerance::default();
    for (k, l) in [(3, 3), (5, 5), (7, 7)] {
        let path = dir.path().join(format!("c{k}{l}.frame"));
        assert_eq!(fk(&["construct", "circular", "--k", &k.to_string(), "--l", &l.to_string(), "-o", s(&path)]).0, 0);
        let text = fs::read_to_string(&path).unwrap();
        let file: FrameFile = serde_json::from_str(&text).unwrap();
        let fp = file.to_pair(tol).unwrap();
        let again = serde_json::to_string(&FrameFile::from_pair(&fp)).unwrap();
        assert_eq!(again, text.trim_end());
        // dual of the re-read pair equals dual of the original bit for bit
        let d1 = dir.path().join("d1.frame");
        let d2 = dir.path().join("d2.frame");
        let copy = write(&dir, "copy.frame", &again);
        assert_eq!(fk(&["dual", s(&path), "-o", s(&d1)]).0, 0);
        assert_eq!(fk(&["dual", s(&copy), "-o", s(&d2)]).0, 0);
        assert_eq!(fs::read(&d1).unwrap(), fs::read(&d2).unwrap());
    }
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    assert_eq!(fk(&["--help"]).0, 0);
    assert_eq!(fk(&["verify", "--help"]).0, 0);
    assert_eq!(fk(&[]).0, 1);
    assert_eq!(fk(&["frobnicate"]).0, 1);
    assert_eq!(fk(&["construct", "circular", "--k", "three", "--l", "3"]).0, 1);

    let empty = write(&dir, "empty", "");
    let (code, out) = fk(&["verify", s(&empty)]);
    assert_eq!(code, 1);
    assert_eq!(value(&out, "error"), "ParseError");

    let (code, out) = fk(&["verify", s(&dir.path().join("missing.frame"))]);
    assert_eq!(code, 1);
    assert_eq!(value(&out, "error"), "IoError");

    let (code, _) = fk(&["--abs-tol", "-1", "verify", s(&mb(&dir))]);
    assert_eq!(code, 1);

    let single = write(&dir, "one.frame", r#"{"field":"real","dim":2,"count":1,"x":[[1,0]],"tau":[[1,0]]}"#);
    let (code, out) = fk(&["dual", s(&single)]);
    assert_eq!(code, 2, "{out}");
    assert_eq!(value(&out, "error"), "NotAFrame");
    // verify reports rather than fails
    let (code, out) = fk(&["verify", s(&single)]);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "is_frame"), "false");

    let (code, out) = fk(&["construct", "circular", "--k", "0", "--l", "3"]);
    assert_eq!(code, 2);
    assert_eq!(value(&out, "error"), "BadKL");
}

#[test]
fn malformed_files_are_parse_errors() {
    let dir = TempDir::new().unwrap();
    let cases = [
        r#"{"field":"real","dim":2,"count":1,"x":[[1,[0,1]]],"tau":[[1,0]]}"#,
        r#"{"field":"quaternion","dim":1,"count":1,"x":[[1]],"tau":[[1]]}"#,
        r#"{"field":"real","dim":2,"count":2,"x":[[1,0]],"tau":[[1,0]]}"#,
        r#"{"field":"real","dim":2,"count":1,"x":[[1,0,0]],"tau":[[1,0]]}"#,
        r#"{"field":"real","dim":1,"count":1,"x":[[1]],"tau":[[1]],"extra":3}"#,
        "[1, 2",
    ];
    for (i, text) in cases.iter().enumerate() {
        let p = write(&dir, &format!("bad{i}.frame"), text);
        let (code, out) = fk(&["verify", s(&p)]);
        assert_eq!(code, 1, "case {i}: {out}");
        assert_eq!(value(&out, "error"), "ParseError");
    }
}

#[test]
fn complex_scalars_and_mixed_notation() {
    let dir = TempDir::new().unwrap();
    // columns e1 and i·e2: a Parseval frame for C²
    let p = write(&dir, "c.frame", r#"{"field":"complex","dim":2,"count":2,"x":[[1,0],[0,[0,1]]],"tau":[[[1,0],0],[0,[0,1]]]}"#);
    let (code, out) = fk(&["verify", s(&p)]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(value(&out, "parseval"), "true");
    let (code, out) = fk(&["analyze", "formulas", s(&p)]);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "trace_s"), "[2, 0]");
}

#[test]
fn reports_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let m = mb(&dir);
    let y = write(&dir, "y.vec", &format!(r#"{{"field":"real","dim":2,"count":3,"vectors":[[0,1.02],[-{S3},-0.51],[{S3},-0.5]]}}"#));
    let pf = write(&dir, "p.pf", r#"{"p":3,"dim":2,"count":3,"f":[[1,0],[0,1],[1,1]],"tau":[[1,0],[0,1],[0.5,0.5]]}"#);
    let runs: [Vec<&str>; 3] = [
        vec!["--seed", "7", "--samples", "40", "analyze", "perturb", s(&m), "--kind", "linear", "--y", s(&y), "--alpha", "0.1"],
        vec!["--seed", "7", "pframe", "verify", s(&pf)],
        vec!["construct", "circular", "--k", "4", "--l", "5"],
    ];
    for args in &runs {
        let a = fk(args);
        let b = fk(args);
        assert_eq!(a, b);
        assert_eq!(a.0, 0, "{}", a.1);
    }
}

#[test]
fn analyze_verbs() {
    let dir = TempDir::new().unwrap();
    let m = mb(&dir);

    let (code, out) = fk(&["analyze", "reconstruct", s(&m), "--steps", "5", "--h", "1,2"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(value(&out, "within_bound"), "true");
    assert_eq!(value(&out, "final_iterate"), "[[1, 0], [2, 0]]");

    let ext = dir.path().join("ext.frame");
    let (code, out) = fk(&["analyze", "extend", s(&m), "--lambda", "2", "-o", s(&ext)]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(value(&out, "constant"), "2");
    assert_eq!(value(&fk(&["verify", s(&ext)]).1, "constant"), "2");
    let (code, out) = fk(&["analyze", "extend", s(&m), "--lambda", "1"]);
    assert_eq!((code, value(&out, "error")), (2, "LambdaTooSmall"));
    assert_eq!(fk(&["analyze", "extend", s(&m)]).0, 1);

    let skew = write(&dir, "skew.frame", r#"{"field":"real","dim":2,"count":2,"x":[[1,0],[1,1]],"tau":[[2,0],[0,0]]}"#);
    let (code, out) = fk(&["analyze", "extend", s(&skew), "--minimal"]);
    assert_eq!(code, 2, "{out}");

    let (code, out) = fk(&["analyze", "span", s(&m)]);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "is_frame"), "true");
    let line = write(&dir, "line.frame", r#"{"field":"real","dim":2,"count":2,"x":[[1,0],[2,0]],"tau":[[1,0],[1,0]]}"#);
    let (code, out) = fk(&["analyze", "span", s(&line)]);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "is_frame"), "false");
    assert_eq!(value(&out, "witness"), "[x, x]");

    let (code, out) = fk(&["analyze", "formulas", s(&m)]);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "trace_ok"), "true");
    assert_eq!(value(&out, "equal_diag_b"), "1");

    // y = 1.1·x keeps τy* self-adjoint
    let y = write(&dir, "y.vec", &format!(r#"{{"field":"real","dim":2,"count":3,"vectors":[[0,1.1],[-{a},-0.55],[{a},-0.55]]}}"#, a = 1.1 * S3));
    for kind in ["quadratic", "normsum"] {
        let (code, out) = fk(&["analyze", "perturb", s(&m), "--kind", kind, "--y", s(&y)]);
        assert_eq!(code, 0, "{out}");
        assert_eq!(value(&out, "actual_is_frame"), "true");
        assert!((num(&out, "actual_lower") - 1.65).abs() < 1e-9);
        if value(&out, "hypothesis_ok") == "true" {
            assert_eq!(value(&out, "window_holds"), "true");
        }
    }
    let (code, out) = fk(&["analyze", "perturb", s(&m), "--kind", "bessel", "--y", s(&y), "--alpha", "0.2", "--beta", "0.1"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(value(&out, "kind"), "SampledBessel");
    let (code, out) = fk(&["analyze", "perturb", s(&m), "--kind", "linear", "--y", s(&y), "--alpha", "2"]);
    assert_eq!((code, value(&out, "error")), (2, "BadParams"));

    let c = dir.path().join("c.frame");
    let (code, out) = fk(&["analyze", "convert", s(&m), "--to-complex", "-o", s(&c)]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(value(&out, "field"), "complex");
    let (code, out) = fk(&["analyze", "convert", s(&c), "--to-real"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(value(&out, "count"), "6");
    assert_eq!(value(&out, "constant"), "1.5");
    assert_eq!(fk(&["analyze", "convert", s(&m)]).0, 1);
}

#[test]
fn classify_and_group() {
    let dir = TempDir::new().unwrap();
    let (_, out) = fk(&["classify", s(&mb(&dir))]);
    assert_eq!(value(&out, "riesz_frame"), "false");
    let onb = write(&dir, "onb.frame", r#"{"field":"real","dim":2,"count":2,"x":[[0.6,0.8],[0.8,-0.6]],"tau":[[0.6,0.8],[0.8,-0.6]]}"#);
    let (code, out) = fk(&["classify", s(&onb)]);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "orthonormal_frame"), "true");

    let z3 = write(&dir, "z3.json", r#"{"order":3,"identity":0,"mul":[[0,1,2],[1,2,0],[2,0,1]]}"#);
    let out_path = dir.path().join("g.frame");
    let (code, out) = fk(&["construct", "group", "--table", s(&z3), "--x", "1,0,0", "--tau", "1,0,0", "-o", s(&out_path)]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(value(&out, "parseval"), "true");
    assert_eq!(value(&out, "invariant"), "true");
    assert_eq!(fk(&["verify", s(&out_path)]).0, 0);

    // Z₂ acting on R² by the swap
    let z2 = write(&dir, "z2.json", r#"{"order":2,"identity":0,"mul":[[0,1],[1,0]],"rep":[[[1,0],[0,1]],[[0,1],[1,0]]]}"#);
    let (code, out) = fk(&["construct", "group", "--table", s(&z2), "--x", "1,0", "--tau", "1,0"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(value(&out, "constant"), "1");
    assert_eq!(value(&out, "bound_value"), "1");

    let (code, out) = fk(&["construct", "group", "--table", s(&z3), "--x", "1,0", "--tau", "1,0"]);
    assert_eq!(code, 2, "{out}");
    let not_group = write(&dir, "ng.json", r#"{"order":2,"identity":0,"mul":[[0,1],[1,1]]}"#);
    assert_eq!(fk(&["construct", "group", "--table", s(&not_group), "--x", "1,0", "--tau", "1,0"]).0, 1);
}

#[test]
fn pframe_verbs() {
    let dir = TempDir::new().unwrap();
    let pf = write(&dir, "p.pf", r#"{"p":3,"dim":2,"count":2,"f":[[1,0],[0,1]],"tau":[[1,0],[0,8]]}"#);
    let (code, out) = fk(&["pframe", "verify", s(&pf)]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(value(&out, "resolvent_ok"), "true");
    // Ŝ = diag(1, 8): ‖Ŝ^{1/3}‖³ = 8 and ‖Ŝ^{-1/3}‖⁻³ = 1
    assert!((num(&out, "upper_b_hi") - 8.0).abs() < 1e-9);
    assert!((num(&out, "lower_a_lo") - 1.0).abs() < 1e-9);

    let d = dir.path().join("d.pf");
    let (code, out) = fk(&["pframe", "dual", s(&pf), "-o", s(&d)]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(value(&out, "is_dual"), "true");
    let text = fs::read_to_string(&d).unwrap();
    let file: PFrameFile = serde_json::from_str(&text).unwrap();
    let again = serde_json::to_string(&PFrameFile::from_pair(&file.to_pair(Tolerance::default()).unwrap())).unwrap();
    assert_eq!(again, text.trim_end());

    let neg = write(&dir, "neg.pf", r#"{"p":2,"dim":1,"count":1,"f":[[-1]],"tau":[[1]]}"#);
    let (code, out) = fk(&["pframe", "dual", s(&neg)]);
    assert_eq!(code, 2, "{out}");

    let e = write(&dir, "e.vec", r#"{"field":"real","dim":2,"count":2,"vectors":[[1,0],[0,1]]}"#);
    let y = write(&dir, "y.vec", r#"{"field":"real","dim":2,"count":2,"vectors":[[1,0.1],[0,0.9]]}"#);
    let (code, out) = fk(&["pframe", "paley-wiener", "--p", "3", "--base", s(&e), "--perturbed", s(&y)]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(value(&out, "concluded"), "true");
    assert_eq!(value(&out, "riesz"), "true");

    let (code, out) = fk(&["pframe", "fourlaws", "--x", "1,2", "--y", "0.5,-1"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(value(&out, "ineq4_ok"), "true");
    assert_eq!(value(&out, "pl4_ok"), "true");
    let (code, out) = fk(&["pframe", "fourlaws", "--x", "[[1,1],0]", "--y", "[0,[0,1]]"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(value(&out, "projection_t"), "n/a");
    assert_eq!(fk(&["pframe", "fourlaws", "--x", "1,2", "--y", "1"]).0, 2);
    assert_eq!(fk(&["pframe", "fourlaws", "--x", "1,a", "--y", "1,2"]).0, 1);
}

#[test]
fn ovf_verbs() {
    let dir = TempDir::new().unwrap();
    let m = mb(&dir);
    let bridged = dir.path().join("mb.ovf");
    let (code, out) = fk(&["ovf", "bridge", s(&m), "-o", s(&bridged)]);
    assert_eq!(code, 0, "{out}");
    let (code, out) = fk(&["ovf", "verify", s(&bridged)]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(value(&out, "constant"), "1.5");
    assert_eq!(value(&out, "d"), "1");

    let (code, out) = fk(&["ovf", "dual", s(&bridged)]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(value(&out, "is_dual"), "true");
    assert_eq!(value(&out, "constant"), "0.666666666667");

    let (code, out) = fk(&["ovf", "factorize", s(&bridged)]);
    assert_eq!((code, value(&out, "error")), (2, "ShapeMismatch"));

    let rot = write(&dir, "rot.ovf", r#"{"field":"real","m":2,"d":[1,1],"n":2,"A":[[[0.6,0.8]],[[0.8,-0.6]]],"psi":[[[1.2,1.6]],[[0.8,-0.6]]]}"#);
    let (code, out) = fk(&["ovf", "factorize", s(&rot)]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(value(&out, "weights"), "[2, 1]");
    assert_eq!(value(&out, "frame"), "true");

    // d given per member survives a rewrite as an integer
    let (code, out) = fk(&["ovf", "verify", s(&rot)]);
    assert_eq!(code, 0, "{out}");
    let file: OvfFile = serde_json::from_str(&fs::read_to_string(&rot).unwrap()).unwrap();
    let op = file.to_pair(Tolerance::default()).unwrap();
    assert_eq!(serde_json::to_value(OvfFile::from_pair(&op)).unwrap()["d"], 1);

    let onb = write(&dir, "onb.ovf", r#"{"field":"real","m":2,"d":1,"n":2,"A":[[[0.6,0.8]],[[0.8,-0.6]]],"psi":[[[0.6,0.8]],[[0.8,-0.6]]]}"#);
    let (code, out) = fk(&["ovf", "dilate", s(&onb)]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(value(&out, "orthonormal_ovf"), "true");
    let (code, out) = fk(&["ovf", "dilate", s(&bridged)]);
    assert_eq!((code, value(&out, "error")), (2, "NotParseval"));

    // the canonical Parseval version of MB dilates to an orthonormal basis of R³
    let v = format!("[[0,{r}],[-{a},-{h}],[{a},-{h}]]", r = (2.0f64 / 3.0).sqrt(), a = S3 * (2.0f64 / 3.0).sqrt(), h = 0.5 * (2.0f64 / 3.0).sqrt());
    let pm = write(&dir, "pmb.frame", &format!(r#"{{"field":"real","dim":2,"count":3,"x":{v},"tau":{v}}}"#));
    let po = dir.path().join("pmb.ovf");
    assert_eq!(fk(&["ovf", "bridge", s(&pm), "-o", s(&po)]).0, 0);
    let (code, out) = fk(&["ovf", "dilate", s(&po)]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(value(&out, "m"), "3");
    assert_eq!(value(&out, "orthonormal_ovf"), "true");
}
