use std::path::{Path, PathBuf};
use std::process::Command;

use flk_core::arith::{rat, QMatrix};
use flk_core::fixtures::{example_form, example_reduced, extension_module, quaternionic_form};
use flk_core::io::{CobordantFile, CoverFile, PrimitiveFile, ReportFile, SeifertInputFile};
use flk_core::seifert::{SeifertForm, SeifertModule};
use flk_core::witt::invariants::Verdict;
use tempfile::TempDir;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn flk(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_flk")).args(args).output().expect("flk runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn write_form(dir: &TempDir, name: &str, f: &SeifertForm) -> String {
    write(dir, name, &SeifertInputFile::from_form(f).to_json())
}

fn write_module(dir: &TempDir, name: &str, v: &SeifertModule) -> String {
    write(dir, name, &SeifertInputFile::from_module(v).to_json())
}

#[test]
fn example_invariants() {
    let ex = data("example.json");
    let (code, out, _) = flk(&["--format", "json", "invariants", ex.to_str().unwrap()]);
    assert_eq!(code, 0);
    let r: ReportFile = serde_json::from_str(&out).unwrap();
    assert_eq!(r.verdict, Verdict::Nontrivial);
    assert_eq!(r.pieces.len(), 1);
    assert_eq!(r.pieces[0].signatures.iter().map(|s| s.value).collect::<Vec<_>>(), vec![1]);
    assert_eq!(r.pieces[0].field.as_ref().unwrap().minpoly, "x^2 - x + 1");
    // Parsed and re-emitted JSON is byte-identical.
    let again = serde_json::to_string_pretty(&serde_json::to_value(&r).unwrap()).unwrap() + "\n";
    assert_eq!(again, out);
    let (_, text, _) = flk(&["invariants", ex.to_str().unwrap()]);
    assert!(text.contains("verdict: nontrivial"));
}

#[test]
fn reports_replay_byte_identically() {
    let ex = data("example.json");
    for fmt in ["json", "text"] {
        for seed in ["0", "17"] {
            let a = flk(&["--seed", seed, "--format", fmt, "invariants", ex.to_str().unwrap()]);
            let b = flk(&["--seed", seed, "--format", fmt, "invariants", ex.to_str().unwrap()]);
            assert_eq!(a, b);
        }
    }
}

#[test]
fn metabolic_file_is_trivial() {
    let dir = TempDir::new().unwrap();
    let f = example_form();
    let p = write_form(&dir, "ff.json", &f.direct_sum(&f.neg()).unwrap());
    let (code, out, _) = flk(&["--format", "json", "invariants", &p]);
    assert_eq!(code, 0);
    let r: ReportFile = serde_json::from_str(&out).unwrap();
    assert_eq!(r.verdict, Verdict::WittTrivial);
    assert!(r.pieces.is_empty());
}

#[test]
fn input_errors() {
    let dir = TempDir::new().unwrap();
    let good = std::fs::read_to_string(data("example.json")).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&good).unwrap();
    v["projections"] = serde_json::json!({"type": "blocks", "sizes": [3, 2]});
    let p = write(&dir, "sum.json", &v.to_string());
    assert_eq!(flk(&["invariants", &p]).0, 2);
    let p = write(&dir, "broken.json", "{\"mu\": 2,");
    assert_eq!(flk(&["invariants", &p]).0, 2);
    assert_eq!(flk(&["invariants", "/nonexistent/input.json"]).0, 2);
    let mut no_form = v.clone();
    no_form["projections"] = serde_json::json!({"type": "blocks", "sizes": [4, 2]});
    no_form.as_object_mut().unwrap().remove("form");
    let p = write(&dir, "noform.json", &no_form.to_string());
    assert_eq!(flk(&["invariants", &p]).0, 2);

    // Projections that are not idempotent.
    let f = example_form();
    let mut file = SeifertInputFile::from_form(&f);
    if let flk_core::io::Projections::Matrices { pi } = &mut file.projections {
        pi[0][(0, 1)] = rat(1);
    }
    let p = write(&dir, "proj.json", &file.to_json());
    let (code, _, err) = flk(&["invariants", &p]);
    assert_eq!(code, 3, "{err}");
    // Form not compatible with s.
    let mut bad = SeifertInputFile::from_form(&f);
    bad.form.as_mut().unwrap().phi = QMatrix::identity(6);
    let p = write(&dir, "phi.json", &bad.to_json());
    assert_eq!(flk(&["invariants", &p]).0, 3);
}

#[test]
fn quaternionic_input_is_unsupported() {
    let dir = TempDir::new().unwrap();
    let q = quaternionic_form();
    let p = write_form(&dir, "q.json", &q.direct_sum(&q).unwrap());
    let (code, out, _) = flk(&["--format", "json", "invariants", &p]);
    assert_eq!(code, 4);
    let r: ReportFile = serde_json::from_str(&out).unwrap();
    assert_eq!(r.verdict, Verdict::Undetermined("quaternionic".into()));
}

#[test]
fn cobordism() {
    let dir = TempDir::new().unwrap();
    let ex = data("example.json");
    let ex = ex.to_str().unwrap();
    let (code, out, _) = flk(&["--format", "json", "cobordant", ex, ex]);
    assert_eq!(code, 0);
    let c: CobordantFile = serde_json::from_str(&out).unwrap();
    assert_eq!(c.cobordism, flk_core::io::CobordismVerdict::CobordantByTheseInvariants);

    let zero = SeifertForm::new(SeifertModule::with_blocks(QMatrix::zeros(0, 0), &[0, 0]), -1, QMatrix::zeros(0, 0));
    let z = write_form(&dir, "zero.json", &zero);
    let (code, out, _) = flk(&["--format", "json", "cobordant", ex, &z]);
    assert_eq!(code, 0);
    let c: CobordantFile = serde_json::from_str(&out).unwrap();
    assert_eq!(c.cobordism, flk_core::io::CobordismVerdict::NotCobordant);

    let sym = SeifertForm::new(SeifertModule::with_blocks(QMatrix::zeros(0, 0), &[0, 0]), 1, QMatrix::zeros(0, 0));
    let s = write_form(&dir, "sym.json", &sym);
    assert_eq!(flk(&["cobordant", ex, &s]).0, 3);
}

#[test]
fn cover_outputs() {
    let dir = TempDir::new().unwrap();
    let line = SeifertModule::with_blocks(QMatrix::from_i64(&[&[1]]), &[1]);
    let p = write_module(&dir, "line.json", &line);
    let (code, out, _) = flk(&["--format", "json", "cover", &p]);
    assert_eq!(code, 0);
    let c: CoverFile = serde_json::from_str(&out).unwrap();
    assert_eq!(c.sigma, vec![vec!["z1".to_string()]]);
    assert!(c.pairing.is_none());

    let ex = data("example.json");
    let (code, out, _) = flk(&["--format", "json", "cover", ex.to_str().unwrap()]);
    assert_eq!(code, 0);
    let c: CoverFile = serde_json::from_str(&out).unwrap();
    assert_eq!(c.degree, 8);
    assert!(c.symmetry.unwrap().found);

    let (_, out, _) = flk(&["--format", "json", "--degree", "0", "cover", ex.to_str().unwrap()]);
    let c: CoverFile = serde_json::from_str(&out).unwrap();
    for row in c.sigma_inverse.iter().chain(c.pairing.as_ref().unwrap()) {
        for s in row {
            assert!(s.terms().keys().all(|w| w.is_empty()));
        }
    }
}

#[test]
fn primitive_outputs() {
    let dir = TempDir::new().unwrap();
    let zero = SeifertModule::with_blocks(QMatrix::zeros(2, 2), &[1, 1]);
    let run = |p: &str| -> PrimitiveFile {
        let (code, out, _) = flk(&["--format", "json", "primitive", p]);
        assert_eq!(code, 0);
        serde_json::from_str(&out).unwrap()
    };
    let r = run(&write_module(&dir, "zero.json", &zero));
    assert!(r.primitive);
    assert_eq!(r.layers.len(), 1);
    let r = run(&write_module(&dir, "ext.json", &extension_module()));
    assert!(r.primitive);
    assert_eq!(r.layers.len(), 2);
    let r = run(&write_form(&dir, "red.json", &example_reduced()));
    assert!(!r.primitive);
    assert!(r.max_primitive.is_empty());
    let (_, text, _) = flk(&["primitive", &write_module(&dir, "ext2.json", &extension_module())]);
    assert!(text.contains("primitive: true"));
}
