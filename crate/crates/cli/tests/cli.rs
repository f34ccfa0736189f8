use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use foldkit::folding::{orbit, Operator};
use foldkit::gallery::{a1_gallery, minimal_gallery};
use foldkit::{build_root_system, CartanType, Face, Point};
use foldkit_cli::GalleryDocument;

const DOWN: &str = r#"{"galleries":[{"alcoves":[[["-1"],["0"]],[["-2"],["-1"]]],"panels":[[["0"]],[["-1"]],[["-2"]]]}],"root_system":"A1"}"#;
const UP: &str = r#"{"galleries":[{"alcoves":[[["0"],["1"]],[["1"],["2"]]],"panels":[[["0"]],[["1"]],[["2"]]]}],"root_system":"A1"}"#;

fn foldkit(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_foldkit"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    child.wait_with_output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn validate_exit_codes() {
    let ok = foldkit(&["validate"], Some(DOWN));
    assert_eq!(ok.status.code(), Some(0), "{}", stderr(&ok));

    // p_1 = (−3) is not a face of its neighbours
    let broken = DOWN.replace(r#"[["0"]],[["-1"]],[["-2"]]"#, r#"[["0"]],[["-3"]],[["-2"]]"#);
    let bad = foldkit(&["validate", "-"], Some(&broken));
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("p_1"), "{}", stdout(&bad));

    let zero = DOWN.replace(r#"[["-2"]]]"#, r#"[["1/0"]]]"#);
    let unparsable = foldkit(&["validate"], Some(&zero));
    assert_eq!(unparsable.status.code(), Some(2));
    assert!(stderr(&unparsable).contains("ParseError"));
}

#[test]
fn apply_examples() {
    let dir = tempfile::tempdir().unwrap();
    let down = write(dir.path(), "down.json", DOWN);
    let out = foldkit(&["apply", down.to_str().unwrap(), "--op", "e", "--root", "1"], None);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let doc = GalleryDocument::parse(&stdout(&out)).unwrap();
    assert_eq!(doc.galleries, vec![a1_gallery(&[0, -1, 0], &[(-1, 0), (-1, 0)])]);
    assert_eq!(stdout(&out).trim_end(), doc.to_canonical());

    let up = write(dir.path(), "up.json", UP);
    let undefined = foldkit(&["apply", up.to_str().unwrap(), "--op", "e", "--root", "1"], None);
    assert_eq!(undefined.status.code(), Some(4));
    assert!(stderr(&undefined).contains("case (I) requires m ≤ −1"), "{}", stderr(&undefined));

    let strict = foldkit(
        &["apply", up.to_str().unwrap(), "--op", "f", "--root", "1", "--as-printed"],
        None,
    );
    assert_eq!(strict.status.code(), Some(3));
    assert!(stderr(&strict).contains("PanelNotFace"), "{}", stderr(&strict));

    let corrected = foldkit(&["apply", up.to_str().unwrap(), "--op", "f", "--root", "1"], None);
    assert_eq!(corrected.status.code(), Some(0));

    let no_root = foldkit(&["apply", up.to_str().unwrap(), "--op", "f", "--root", "2"], None);
    assert_eq!(no_root.status.code(), Some(2));
}

#[test]
fn orbit_command() {
    let out = foldkit(&["orbit", "--ops", "f1"], Some(UP));
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let doc = GalleryDocument::parse(&stdout(&out)).unwrap();
    assert_eq!(doc.galleries.len(), 3);
}

fn c2_documents() -> (String, String) {
    let rs = build_root_system("C2").unwrap();
    let origin = Face::vertex(Point::origin(2));
    let target = rs.coroot_point(&[1, 1]);
    let minimal = minimal_gallery(&rs, &origin, &Face::vertex(target));
    let galleries = orbit(&rs, &minimal, &[(Operator::F, 0), (Operator::F, 1)], 1000).unwrap();
    let folded = galleries
        .into_iter()
        .find(|g| !g.fold_positions().is_empty())
        .expect("some orbit element folds");
    (
        GalleryDocument::new(CartanType::C2, vec![minimal]).to_canonical(),
        GalleryDocument::new(CartanType::C2, vec![folded]).to_canonical(),
    )
}

#[test]
fn render_svg() {
    let dir = tempfile::tempdir().unwrap();
    let (minimal, folded) = c2_documents();
    let min_path = write(dir.path(), "min.json", &minimal);
    let fold_path = write(dir.path(), "fold.json", &folded);
    let run = |input: &Path, out: &Path| {
        let o = foldkit(&["render", input.to_str().unwrap(), "--out", out.to_str().unwrap()], None);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        std::fs::read_to_string(out).unwrap()
    };
    let a = run(&min_path, &dir.path().join("a.svg"));
    let b = run(&min_path, &dir.path().join("b.svg"));
    assert_eq!(a, b);
    assert!(a.starts_with("<svg"));
    assert!(a.contains("class=\"gallery\""));
    assert!(!a.contains("class=\"fold\""));

    let svg = run(&fold_path, &dir.path().join("c.svg"));
    let doc = GalleryDocument::parse(&folded).unwrap();
    let folds = doc.galleries[0].fold_positions();
    assert_eq!(svg.matches("class=\"fold\"").count(), folds.len());
    for i in folds {
        assert!(svg.contains(&format!("data-panel=\"{i}\"")));
    }

    let rank_one = foldkit(&["render"], Some(DOWN));
    assert_eq!(rank_one.status.code(), Some(5));
    assert!(stderr(&rank_one).contains("RankUnsupported"));
}

#[test]
fn verify_and_tree_commands() {
    let out = foldkit(
        &["verify", "--suite", "operators", "--type", "G2", "--samples", "60", "--seed", "3"],
        None,
    );
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let g2 = &report["operators"][0];
    assert_eq!(g2["type"], "G2");
    assert_eq!(g2["weight_law"]["checked"], g2["weight_law"]["passed"]);
    let defined: u64 = ["e", "f", "etilde"]
        .iter()
        .map(|op| g2["applications"][op]["defined"].as_u64().unwrap())
        .sum();
    assert_eq!(g2["weight_law"]["checked"].as_u64(), Some(defined));

    let tree = foldkit(&["tree", "--q", "3", "--radius", "4"], None);
    assert_eq!(tree.status.code(), Some(0), "{}", stdout(&tree));
    let too_big = foldkit(&["tree", "--q", "2", "--radius", "30"], None);
    assert_eq!(too_big.status.code(), Some(1));

    let bad_suite = foldkit(&["verify", "--suite", "nope"], None);
    assert_eq!(bad_suite.status.code(), Some(2));
}
