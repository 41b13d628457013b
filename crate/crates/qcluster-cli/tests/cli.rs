use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use qcluster::catalog::{by_name, NAMES};
use qcluster_cli::io::{parse_quiver, parse_rep, print_quiver, print_rep, LoadedRep, RepFile};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn files(ext: &str) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> =
        fs::read_dir(fixtures()).unwrap().map(|e| e.unwrap().path()).filter(|p| p.extension().is_some_and(|x| x == ext)).collect();
    v.sort();
    v
}

fn qcc(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qcc")).args(args).current_dir(fixtures()).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn quiver_files_round_trip() {
    let paths = files("quiver");
    assert_eq!(paths.len(), NAMES.len());
    for path in paths {
        let ice = parse_quiver(&fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(parse_quiver(&print_quiver(&ice)).unwrap(), ice);
        let name = path.file_stem().unwrap().to_str().unwrap();
        assert_eq!(by_name(name).unwrap().ice, ice, "{name}");
    }
}

#[test]
fn rep_files_round_trip() {
    let paths = files("rep");
    assert!(paths.len() >= 20);
    for path in paths {
        let text = fs::read_to_string(&path).unwrap();
        let parsed = parse_rep(&text).unwrap();
        assert_eq!(print_rep(&parsed), text, "{}", path.display());
        let loaded = LoadedRep::load(&path, None).unwrap();
        let lambda = loaded.family.has_parameter().then_some(2);
        let m = loaded.module(3, lambda).unwrap();
        if lambda.is_none() {
            let again = RepFile::from_rep(&m, &parsed.quiver);
            assert_eq!(again, parsed);
        }
    }
}

#[test]
fn catalog_module_quiver_matches_file_arrows() {
    let path = fixtures().join("s1.rep");
    let by_file = LoadedRep::load(&path, None).unwrap();
    let by_catalog = LoadedRep::load(&path, Some("kronecker")).unwrap();
    assert_eq!(by_file.framed.name, "kronecker");
    assert_eq!(*by_file.framed.principal, *by_catalog.framed.principal);
}

#[test]
fn golden_ccmap() {
    let (code, out) = qcc(&["ccmap", "--quiver", "kronecker", "--rep", "r1.rep", "--prime", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out, "1 * X^(-1,-1,1,0) + 1 * X^(-1,1,0,0) + 1 * X^(1,-1,1,1)\n");
    let (_, json) = qcc(&["ccmap", "--rep", "s1.rep", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v[0]["exponent"], serde_json::json!([-1, 0, 1, 0]));
    assert_eq!(v[1]["exponent"], serde_json::json!([-1, 2, 0, 0]));
    assert_eq!(v[0]["coeff"], "1");
    let (code, out) = qcc(&["grass", "--rep", "r1.rep", "--e", "0,0"]);
    assert_eq!((code, out.as_str()), (0, "1\n"));
}

#[test]
fn mutate_pentagon() {
    let (code, out) = qcc(&["mutate", "--quiver", "a2", "--seq", "1,2,1,2,1"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("x1 = 1 * X^(0,1,0,0)\nx2 = 1 * X^(1,0,0,0)\n"), "{out}");
}

#[test]
fn exit_codes() {
    assert_eq!(qcc(&["verify", "kronecker", "--prime", "3,5,7", "--formal"]).0, 0);
    assert_eq!(qcc(&["verify", "difference", "--quiver", "atilde12"]).0, 1);
    assert_eq!(qcc(&["verify", "no-such-statement"]).0, 2);
    assert_eq!(qcc(&["verify", "hall", "--quiver", "missing.quiver"]).0, 2);
    assert_eq!(qcc(&["ccmap", "--rep", "elambda_kronecker.rep"]).0, 2);
    assert_eq!(qcc(&["verify", "hall", "--quiver", "kronecker", "--orbit-budget", "5"]).0, 3);
}

#[test]
fn output_is_deterministic() {
    let serial = qcc(&["verify", "reflection", "--jobs", "1"]);
    let parallel = qcc(&["verify", "reflection", "--jobs", "4"]);
    assert_eq!(serial, parallel);
    assert_eq!(serial, qcc(&["verify", "reflection", "--jobs", "3"]));
    let a = qcc(&["verify", "pairing", "--seed", "7", "--json"]);
    assert_eq!(a.0, 0);
    assert_eq!(a, qcc(&["verify", "pairing", "--seed", "7", "--json", "--jobs", "4"]));
    let b = qcc(&["ccmap", "--rep", "r2.rep", "--prime", "3,5", "--formal"]);
    assert_eq!(b, qcc(&["ccmap", "--rep", "r2.rep", "--prime", "3,5", "--formal"]));
}
