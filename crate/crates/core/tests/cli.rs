use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::{json, Value};
use tempfile::TempDir;

fn essalg() -> Command {
    Command::new(env!("CARGO_BIN_EXE_essalg"))
}

struct Run {
    code: i32,
    json: Value,
    raw: String,
}

fn run(args: &[&str]) -> Run {
    run_with(essalg().args(args))
}

fn run_with(cmd: &mut Command) -> Run {
    let out = cmd.output().expect("binary runs");
    let raw = String::from_utf8(out.stdout).unwrap();
    let json = serde_json::from_str(&raw).unwrap_or(Value::Null);
    Run { code: out.status.code().unwrap_or(-1), json, raw }
}

fn write(dir: &TempDir, name: &str, v: Value) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, v.to_string()).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn comm(vars: &[&str], rels: &[&str]) -> Value {
    json!({ "kind": "comm_presentation", "base_field": { "type": "Q" }, "vars": vars, "relations": rels })
}

#[test]
fn krull_of_the_sphere() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "sphere4.json", comm(&["x1", "x2", "x3", "x4"], &["x1^2 + x2^2 + x3^2 + x4^2 - 1"]));
    let r = run(&["krull", s(&f)]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json["witness"]["krull_dimension"], 3);
    assert_eq!(r.json["schema"], 1);
    assert_eq!(r.json["command"], "krull");
}

#[test]
fn degeneracy_with_sequence() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "plane.json", comm(&["x", "y"], &[]));
    let r = run(&["degeneracy", s(&f), "--sequence", "x,y"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json["verdict"], "NotQuasiFree");
    assert_eq!(r.json["witness"]["path"], "S");
    assert_eq!(r.json["witness"]["certificate"]["sequence"], json!(["x", "y"]));
    let line = write(&d, "line.json", comm(&["x"], &[]));
    assert_eq!(run(&["degeneracy", s(&line)]).json["verdict"], "Inconclusive");
}

#[test]
fn cover_and_replay() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "line.json", comm(&["x"], &[]));
    let r = run(&["cover", s(&f), "--elements", "x, x-1"]);
    assert_eq!(r.json["verdict"], "Verified");
    assert_eq!(r.json["witness"]["coefficients"], json!(["1", "-1"]));
    let rep = d.path().join("report.json");
    std::fs::write(&rep, &r.raw).unwrap();
    let v = run(&["--verify-report", s(&rep)]);
    assert_eq!(v.code, 0);
    assert_eq!(v.json["verdict"], "Verified");

    let bad = run(&["cover", s(&f), "--elements", "x, x^2"]);
    assert_eq!(bad.json["verdict"], "Failed");
    assert_eq!(bad.json["witness"]["ideal_basis"], json!(["x"]));
}

#[test]
fn reports_are_identical_apart_from_timing() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "gl.json", comm(&["x1", "x2", "x3", "x4", "t"], &["t*(x1*x4 - x2*x3) - 1"]));
    let strip = |mut v: Value| {
        v["timing_ms"] = json!(0);
        v.to_string()
    };
    let a = run(&["degeneracy", s(&f)]);
    let b = run(&["--jobs", "2", "degeneracy", s(&f)]);
    assert_eq!(a.json["verdict"], "NotQuasiFree");
    assert_eq!(strip(a.json), strip(b.json));
}

#[test]
fn error_exit_codes() {
    let d = TempDir::new().unwrap();
    let broken = d.path().join("broken.json");
    std::fs::write(&broken, "{ not json").unwrap();
    let r = run(&["krull", s(&broken)]);
    assert_eq!(r.code, 2);
    assert_eq!(r.json["error"]["kind"], "parse");
    let typo = write(&d, "typo.json", comm(&["x"], &["x^^2"]));
    assert_eq!(run(&["krull", s(&typo)]).code, 2);
    assert_eq!(run(&["krull", "/nonexistent/file.json"]).code, 2);
    assert_eq!(run(&["frobnicate"]).code, 2);

    let src = write(
        &d,
        "four.json",
        json!({ "kind": "nc_presentation", "base_field": { "type": "Fp", "p": 3 }, "generators": ["a", "b", "c", "d"] }),
    );
    let tgt = write(
        &d,
        "m2.json",
        json!({ "kind": "findim_algebra", "base_field": { "type": "Fp", "p": 3 }, "family": "matrix_algebra", "n": 2 }),
    );
    let r = run(&["points", s(&src), s(&tgt)]);
    assert_eq!(r.code, 3);
    assert_eq!(r.json["error"]["kind"], "resource");

    let h = write(&d, "h.json", comm(&["x", "y", "z"], &["x^2*y - z^2", "x*y^2 - z*x - 1", "z^3 - x*y*z + y"]));
    let r = run_with(essalg().env("ESSALG_BUDGET_PAIRS", "1").args(["krull", s(&h)]));
    assert_eq!(r.code, 3, "{}", r.raw);
    assert_eq!(run_with(essalg().env("ESSALG_BUDGET_DEGREE", "many").args(["krull", s(&h)])).code, 2);
}

#[test]
fn hochschild_and_lie() {
    let d = TempDir::new().unwrap();
    let dual = write(
        &d,
        "dual.json",
        json!({ "kind": "findim_algebra", "base_field": { "type": "Q" }, "family": "truncated_polynomial", "n": 2 }),
    );
    let r = run(&["hochschild", s(&dual), "--max-degree", "3"]);
    assert_eq!(r.json["verdict"], "NotQuasiFree");
    assert_eq!(r.json["witness"]["cohomology_dims"], json!([2, 1, 1, 1]));
    let c = &r.json["witness"]["complexes"][0];
    assert_eq!(c["normalized"], c["unnormalized"]);

    let sl2 = write(
        &d,
        "sl2.json",
        json!({ "kind": "lie_algebra", "base_field": { "type": "Q" }, "names": ["f", "h", "e"],
                "constants": [[1,2,2,2],[2,1,2,-2],[1,0,0,-2],[0,1,0,2],[2,0,1,1],[0,2,1,-1]] }),
    );
    let r = run(&["lie-cohomology", s(&sl2)]);
    assert_eq!(r.json["verdict"], "NotQuasiFree");
    assert_eq!(r.json["witness"]["cohomology_dims"], json!([1, 0, 0, 1]));
    assert_eq!(r.json["witness"]["degree"], 3);
}

#[test]
fn standardize_and_essential_smoothness() {
    let d = TempDir::new().unwrap();
    let free = write(
        &d,
        "free.json",
        json!({ "kind": "nc_presentation", "base_field": { "type": "Q" }, "generators": ["x", "y"] }),
    );
    let r = run(&["standardize", s(&free)]);
    assert_eq!(r.json["witness"]["idempotent"], "e");
    assert_eq!(r.json["witness"]["factors"].as_array().unwrap().len(), 2);
    let r = run(&["smooth", s(&free), "--essential"]);
    assert_eq!(r.json["verdict"], "Smooth");
    let r = run(&["smooth", s(&free), "--essential", "--mode", "etale"]);
    assert_eq!(r.json["verdict"], "NotEtale");

    let cusp = write(&d, "cusp.json", comm(&["x", "y"], &["y^2 - x^3"]));
    assert_eq!(run(&["smooth", s(&cusp)]).json["verdict"], "NotSmooth");
    let circle = write(&d, "circle.json", comm(&["x", "y"], &["x^2 + y^2 - 1"]));
    assert_eq!(run(&["smooth", s(&circle)]).json["verdict"], "Smooth");
}

#[test]
fn localization_with_witness() {
    let d = TempDir::new().unwrap();
    let f = write(
        &d,
        "loc.json",
        json!({
            "kind": "morphism", "base_field": { "type": "Q" },
            "source": { "generators": ["x", "y"], "unital": false },
            "target": { "kind": "nc_presentation", "generators": ["x", "y", "s"], "unital": false,
                        "relations": ["s*x - s - x", "x*y - y*x", "x*s - s*x", "y*s - s*y"] },
            "images": ["x", "y"],
            "element": "x - 1",
            "witness": { "forward": ["x", "y", "s - 1"], "backward": ["x", "y", "t + 1"] }
        }),
    );
    let r = run(&["localize", s(&f)]);
    assert_eq!(r.json["verdict"], "Accepted", "{}", r.raw);
    let r = run(&["localize", s(&f), "--element", "x"]);
    assert_eq!(r.json["verdict"], "Rejected");
}

#[test]
fn points_listing_and_comparison() {
    let d = TempDir::new().unwrap();
    let f2 = json!({ "type": "Fp", "p": 2 });
    let a = write(&d, "a.json", json!({ "kind": "nc_presentation", "base_field": f2, "generators": ["x"], "relations": ["x*x - x"] }));
    let b = write(&d, "b.json", json!({ "kind": "findim_algebra", "base_field": f2, "family": "ground" }));
    let r = run(&["points", s(&a), s(&b)]);
    assert_eq!(r.json["witness"]["count"], 2);
    assert_eq!(r.json["witness"]["points"][0]["images"], json!([[0]]));
    assert_eq!(r.json["witness"]["points"][1]["images"], json!([[1]]));
    let r = run(&["points", s(&a), s(&b), "--compare"]);
    assert_eq!(r.json["witness"]["comparison"]["relation"], "strict_subset");
    assert_eq!(r.json["witness"]["comparison"]["abelianization"]["bijective"], true);
    let r = run(&["points", s(&a), s(&b), "--nonunital"]);
    assert_eq!(r.json["witness"]["count"], 3);
    let rep = d.path().join("points.json");
    std::fs::write(&rep, &r.raw).unwrap();
    assert_eq!(run(&["--verify-report", s(&rep)]).json["verdict"], "Verified");
}

#[test]
fn selftest_passes() {
    let r = run(&["selftest"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json["verdict"], "Verified", "{}", r.raw);
    assert_eq!(r.json["witness"]["criteria"].as_array().unwrap().len(), 9);
}
