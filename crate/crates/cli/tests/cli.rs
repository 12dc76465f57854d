use std::path::{Path, PathBuf};

use presheaf_engine::serial::{parse_certificate, parse_map, parse_presheaf, write_certificate, write_map, write_presheaf};
use realization::{parse_enriched, write_enriched};
use theta_cat::Theta;
use thetacells::{run, Outcome, SCHEMA};

fn go(args: &[&str]) -> Outcome {
    run(std::iter::once("thetacells").chain(args.iter().copied()))
}

fn field<'a>(out: &'a str, key: &str) -> Vec<&'a str> {
    let prefix = format!("{key}: ");
    out.lines().filter_map(|l| l.strip_prefix(prefix.as_str())).collect()
}

/// Runs that are fast and cover every subcommand without input files.
const GOLDEN: &[(&str, &[&str])] = &[
    ("objects", &["objects", "--theta", "2", "--dim", "2"]),
    ("objects_delta", &["objects", "--theta", "1", "--dim", "3"]),
    ("hom", &["hom", "--source", "[1]([1])", "--target", "[1]([1])"]),
    ("boundary", &["boundary", "--object", "[1]([1])"]),
    ("horn", &["horn", "--object", "[2]([0],[0])", "--k", "1"]),
    ("spine", &["spine", "--object", "[2]([1],[0])"]),
    ("generators", &["generators", "--dim", "3"]),
    ("corner", &["corner", "--region", "boundary:2", "--legs", "e[0]/[0],d[1]/[1]"]),
    ("realize", &["realize", "--object", "[3]([0],[0],[0])", "--dc", "0", "--dm", "2"]),
    ("pointwise", &["pointwise-check", "--theta", "2", "--n", "2", "--labels", "[1],[0]", "--c", "[1]"]),
    ("kstar", &["kstar", "--object", "[1]([1])", "--c", "[1]"]),
    ("necklace", &["necklace", "--theta", "1", "--object", "[2]", "--beads", "2", "--from", "0", "--to", "2"]),
    ("mapspace", &["mapspace", "--theta", "1", "--object", "[2]", "--from", "0", "--to", "2"]),
    ("resolution_r", &["resolution", "--flavor", "R", "--c", "[1]", "--n", "1"]),
    ("resolution_l", &["resolution", "--flavor", "L", "--c", "[0]", "--n", "1"]),
    ("certify_spine", &["certify-spine", "--object", "[3]([0],[1],[0])"]),
    ("certify_resolution", &["certify-resolution", "--c", "[1]", "--n", "2"]),
    ("certify_horn_product", &["certify-horn-product", "--n", "3", "--j", "2", "--m", "1"]),
    ("fibrant", &["fibrant", "--object", "[2]([0],[0])", "--dim", "2"]),
    ("cr_check", &["cr-check", "--theta", "1", "--dim", "3"]),
];

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

#[test]
fn golden_outputs() {
    let bless = std::env::var_os("THETACELLS_BLESS").is_some();
    for (name, args) in GOLDEN {
        let out = go(args);
        assert!(out.code == 0 || out.code == 2, "{name}: {}", out.stderr);
        let path = golden_dir().join(format!("{name}.txt"));
        if bless {
            std::fs::create_dir_all(golden_dir()).unwrap();
            std::fs::write(&path, &out.stdout).unwrap();
            continue;
        }
        let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden {}", path.display()));
        assert_eq!(out.stdout, want, "{name}");
    }
}

#[test]
fn output_is_deterministic_and_versioned() {
    for (_, args) in GOLDEN.iter().take(8) {
        let (a, b) = (go(args), go(args));
        assert_eq!(a, b);
        assert_eq!(a.stdout.lines().next(), Some(format!("schema: {SCHEMA}").as_str()));
    }
}

#[test]
fn spec_examples() {
    let out = go(&["objects", "--theta", "2", "--dim", "2"]);
    assert_eq!(field(&out.stdout, "count"), ["4"]);
    let out = go(&["pointwise-check", "--theta", "2", "--n", "2", "--labels", "[1],[0]", "--c", "[1]"]);
    assert_eq!(out.code, 0);
    assert_eq!(field(&out.stdout, "status"), ["ok"]);
    let out = go(&["kstar", "--object", "[1]([1])", "--c", "[1]"]);
    assert_eq!(field(&out.stdout, "level"), ["0 size 2", "1 size 5"]);
    let out = go(&["certify-resolution", "--c", "[0]", "--n", "1"]);
    assert_eq!(field(&out.stdout, "steps"), ["1"]);
    let out = go(&["certify-resolution", "--c", "[0]", "--n", "0"]);
    assert_eq!(field(&out.stdout, "steps"), ["0"]);
    let out = go(&["resolution", "--flavor", "L", "--c", "[0]", "--n", "1"]);
    assert_eq!(field(&out.stdout, "vertices"), ["2"]);
}

#[test]
fn exit_codes() {
    assert_eq!(go(&["frobnicate"]).code, 3);
    assert_eq!(go(&["objects", "--dim", "2", "--bogus"]).code, 3);
    assert_eq!(go(&["objects"]).code, 3);
    assert_eq!(go(&["hom", "--source", "[1", "--target", "[1]"]).code, 3);
    assert_eq!(go(&["pointwise-check", "--n", "3", "--labels", "[1],[0]", "--c", "[1]"]).code, 3);
    assert_eq!(go(&["verify", "/nonexistent/cert.txt"]).code, 3);
    let help = go(&["--help"]);
    assert_eq!(help.code, 0);
    for cmd in [
        "objects", "hom", "boundary", "horn", "spine", "generators", "corner", "realize", "pointwise-check", "kstar", "necklace", "mapspace",
        "resolution", "certify-spine", "certify-resolution", "certify-horn-product", "lift", "fibrant", "isofib", "verify", "cr-check",
    ] {
        assert!(help.stdout.contains(cmd), "{cmd} missing from help");
    }
    // non-final mapping space
    let out = go(&["mapspace", "--object", "[1]([1])", "--c", "[1]", "--from", "0", "--to", "1"]);
    assert_eq!(out.code, 2, "{}", out.stdout);
    assert_eq!(field(&out.stdout, "final"), ["false"]);
}

#[test]
fn corrupted_certificate_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("s.txt");
    let ps = p.to_str().unwrap();
    assert_eq!(go(&["certify-spine", "--object", "[2]([1],[0])", "--out", ps]).code, 0);
    assert_eq!(go(&["verify", ps]).code, 0);
    let text = std::fs::read_to_string(&p).unwrap();
    // swap the attaching elements of the first two steps
    let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
    let steps: Vec<usize> = (0..lines.len()).filter(|&i| lines[i].starts_with("step ")).collect();
    let (a, b) = (steps[0], steps[2]);
    lines.swap(a, b);
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, lines.join("\n") + "\n").unwrap();
    let out = go(&["verify", bad.to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert!(field(&out.stdout, "failure")[0].starts_with("step 0:"), "{}", out.stdout);
    // dropping the last step leaves the target uncovered
    let mut short = text.lines().map(str::to_string).collect::<Vec<_>>();
    short.remove(*steps.last().unwrap());
    std::fs::write(&bad, short.join("\n") + "\n").unwrap();
    let out = go(&["verify", bad.to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert_eq!(field(&out.stdout, "failure")[0].split(':').next(), Some("step 2"));
}

#[test]
fn artifacts_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = |n: &str| dir.path().join(n).to_str().unwrap().to_string();
    let t2 = Theta::new(2);
    let t1 = Theta::new(1);
    let runs: Vec<(Vec<String>, &str, &Theta)> = vec![
        (vec!["boundary".into(), "--object".into(), "[1]([1])".into()], "map", &t2),
        (vec!["horn".into(), "--object".into(), "[2]([0],[0])".into(), "--k".into(), "1".into()], "map", &t2),
        (vec!["corner".into(), "--region".into(), "horn:2:1".into(), "--legs".into(), "[0]/[0],e[1]/[1]".into()], "map", &t2),
        (vec!["kstar".into(), "--object".into(), "[1]([1])".into(), "--c".into(), "[1]".into()], "presheaf", &t1),
        (vec!["resolution".into(), "--flavor".into(), "R".into(), "--c".into(), "[1]".into(), "--n".into(), "1".into()], "presheaf", &t2),
        (vec!["resolution".into(), "--flavor".into(), "cyl".into(), "--c".into(), "[0]".into(), "--n".into(), "1".into()], "presheaf", &t2),
        (vec!["mapspace".into(), "--theta".into(), "1".into(), "--object".into(), "[2]".into(), "--from".into(), "0".into(), "--to".into(), "2".into()], "presheaf", &t1),
        (vec!["certify-spine".into(), "--object".into(), "[3]([0],[1],[0])".into()], "certificate", &t2),
        (vec!["certify-resolution".into(), "--c".into(), "[1]".into(), "--n".into(), "2".into()], "certificate", &t2),
        (vec!["certify-horn-product".into(), "--n".into(), "2".into(), "--j".into(), "1".into(), "--m".into(), "2".into()], "certificate", &t1),
        (vec!["realize".into(), "--object".into(), "[2]([1],[1])".into()], "enriched", &t2),
    ];
    for (k, (mut args, kind, cat)) in runs.into_iter().enumerate() {
        let p = path(&format!("a{k}.txt"));
        args.extend(["--out".to_string(), p.clone()]);
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = go(&argv);
        assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
        let text = std::fs::read_to_string(&p).unwrap();
        let again = match kind {
            "map" => write_map(&parse_map(cat, &text).unwrap()),
            "presheaf" => write_presheaf(&parse_presheaf(cat, &text).unwrap()),
            "certificate" => write_certificate(&parse_certificate(cat, &text).unwrap()),
            _ => write_enriched(&parse_enriched(&cat.base(), &text).unwrap()),
        };
        assert_eq!(again, text, "{args:?}");
        if kind == "certificate" {
            let mut v = vec!["verify".to_string(), p.clone()];
            if std::ptr::eq(cat, &t1) {
                v.extend(["--theta".to_string(), "1".to_string()]);
            }
            let argv: Vec<&str> = v.iter().map(String::as_str).collect();
            assert_eq!(go(&argv).code, 0, "{args:?}");
        }
    }
}

#[test]
fn lifting_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let h = dir.path().join("h.txt");
    let hs = h.to_str().unwrap();
    assert_eq!(go(&["horn", "--object", "[2]([0],[0])", "--k", "1", "--out", hs]).code, 0);
    let l = dir.path().join("l.txt");
    let out = go(&["lift", "--i", hs, "--top", hs, "--out", l.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    assert_eq!(field(&out.stdout, "lift"), ["found"]);
    // the only lift is the identity
    let m = parse_map(&Theta::new(2), &std::fs::read_to_string(&l).unwrap()).unwrap();
    assert!(m.components().iter().all(|c| c.iter().enumerate().all(|(i, &y)| i as u32 == y)));

    // spine and boundary of Δ^2, over Δ
    let s = dir.path().join("s.txt");
    let ss = s.to_str().unwrap();
    assert_eq!(go(&["spine", "--theta", "1", "--object", "[2]", "--out", ss]).code, 0);
    let b = dir.path().join("b.txt");
    let bs = b.to_str().unwrap();
    assert_eq!(go(&["boundary", "--theta", "1", "--object", "[2]", "--out", bs]).code, 0);
    let out = go(&["lift", "--theta", "1", "--i", ss, "--top", ss]);
    assert_eq!(out.code, 0);
    assert_eq!(field(&out.stdout, "lift"), ["found"]);
    let out = go(&["isofib", "--theta", "1", "--map", bs, "--dim", "1"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(field(&out.stdout, "verdict")[0].starts_with("holds up to dimension 1"));
}
