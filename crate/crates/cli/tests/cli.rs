use std::collections::BTreeSet;
use std::path::Path;
use std::process::{Command, Output};

use edgewise::edgewise::parse_off;
use edgewise::Edgewise;
use serde_json::Value;

fn edgewise(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_edgewise")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = edgewise(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&all)).unwrap();
    assert_eq!(v["schema"], "v1");
    v
}

fn golden_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden"))
}

#[test]
fn tables_match_golden_files() {
    let dir = tempfile::tempdir().unwrap();
    let listing = stdout(&["tables", "--out", dir.path().to_str().unwrap()]);
    let mut names: Vec<String> = std::fs::read_dir(golden_dir())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(listing.lines().count(), names.len());
    for name in names {
        let want = std::fs::read_to_string(golden_dir().join(&name)).unwrap();
        let got = std::fs::read_to_string(dir.path().join(&name)).unwrap();
        assert_eq!(got, want, "{name}");
    }
}

fn golden_rows(name: &str) -> Vec<Vec<u64>> {
    let text = std::fs::read_to_string(golden_dir().join(name)).unwrap();
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect()
}

#[test]
fn golden_h_matrices_have_eulerian_columns() {
    for k in 1..=7usize {
        // A(n, d) = (d + 1) A(n-1, d) + (n - d) A(n-1, d-1)
        let mut euler = vec![1u64];
        for n in 2..=k {
            let mut next = vec![0u64; n];
            for d in 0..n {
                let same = if d < euler.len() { (d as u64 + 1) * euler[d] } else { 0 };
                let lower = if d >= 1 { (n - d) as u64 * euler[d - 1] } else { 0 };
                next[d] = same + lower;
            }
            euler = next;
        }
        let rows = golden_rows(&format!("h_matrix_k{k}.csv"));
        assert_eq!(rows.len(), k);
        let cols: Vec<u64> = (1..=k).map(|d| rows.iter().map(|r| r[d]).sum()).collect();
        assert_eq!(cols, euler, "k={k}");
        let total: u64 = rows.iter().map(|r| r[1..].iter().sum::<u64>()).sum();
        assert_eq!(total, (1..=k as u64).product::<u64>());
    }
}

#[test]
fn hvector_reports_agreeing_routes() {
    let text = stdout(&["hvector", "-k", "3", "-q", "2"]);
    assert!(text.starts_with("T_{3,2} h-vector: (1,3,0)\n"), "{text}");
    assert!(text.contains("4 routes agree"));
    assert!(text.contains("h_1 = 3"));
    let v = json(&["hvector", "-k", "3", "-q", "2"]);
    assert_eq!(v["closed_form"], serde_json::json!([1, 3, 0]));
    assert_eq!(v["h1_binomial"], 5);
    assert_eq!(v["h1_discrepancy"], true);
    assert_eq!(v["agree"], true);
}

#[test]
fn large_h_vectors_fall_back_to_closed_routes() {
    let v = json(&["hvector", "-k", "12", "-q", "9", "--max-facets", "1000"]);
    assert_eq!(v["agree"], true);
    assert!(v["ascents"].is_null());
    let h: u128 = v["closed_form"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap() as u128).sum();
    assert_eq!(h, 9u128.pow(11));
}

#[test]
fn classify_links_table_for_k6() {
    let text = stdout(&["classify-links", "-k", "6", "-q", "6", "--table"]);
    let faces = text.lines().find(|l| l.trim_start().starts_with("# faces")).unwrap();
    let counts: Vec<&str> = faces.split_whitespace().skip(2).collect();
    assert_eq!(counts, ["6", "6", "6", "3", "6", "12", "2", "6", "9", "6", "1"]);
    let csv = stdout(&["classify-links", "-k", "6", "-q", "6", "--table", "--format", "csv"]);
    assert!(csv.contains("face_counts,321,12\n"));
    assert!(csv.contains("q_sequence,9,1245\n"));
    assert!(csv.contains("distinct_links,9,2469\n"));
}

#[test]
fn classify_links_by_vertices() {
    let v = json(&["classify-links", "-k", "4", "-q", "3"]);
    assert_eq!(v["link_types"], 4);
    let classes = v["classes"].as_array().unwrap();
    let vertices: u64 = classes.iter().map(|c| c["vertices"].as_u64().unwrap()).sum();
    // C(k - 1 + q, k - 1) lattice points
    assert_eq!(vertices, 20);
}

#[test]
fn star_cluster_k3() {
    let text = stdout(&["star-cluster", "-k", "3", "-q", "7"]);
    assert!(text.contains("13 facets"));
    assert!(text.contains("h from shelling      (1,9,3)"));
    assert!(text.contains("shelling valid"));
    let v = json(&["star-cluster", "-k", "3", "-q", "7"]);
    assert_eq!(v["count_ie"], 13);
    assert_eq!(v["layer_sizes"], serde_json::json!([6, 4, 3]));
    let csv = stdout(&["star-cluster", "-k", "3", "-q", "7", "--format", "csv"]);
    assert_eq!(csv.lines().count(), 14);
}

#[test]
fn shell_certificate() {
    let v = json(&["shell", "-k", "4", "-q", "3"]);
    assert_eq!(v["valid"], true);
    assert_eq!(v["restrictions_match_rule"], true);
    assert_eq!(v["facets"].as_array().unwrap().len(), 27);
    let h: Vec<u64> = v["h_vector"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    assert_eq!(h.iter().sum::<u64>(), 27);
}

#[test]
fn vertex_and_face_links() {
    let v = json(&["link", "-k", "4", "-q", "4", "--vertex", "1,2,3"]);
    assert_eq!(v["certified"], true);
    assert_eq!(v["partition"], serde_json::json!([1, 1, 1, 1]));
    let text = stdout(&[
        "link", "-k", "8", "-q", "9", "--face", "2,2,3,3,4,7,8", "--face", "1,1,3,3,3,6,7", "--face", "2,2,3,3,3,6,8",
    ]);
    assert!(text.contains("steps {1 2 7} {5 6} {3 4 8}"), "{text}");
    assert!(text.contains("descriptor (3,3,2) {(2,1), (2,1), (1,1)}"));
    assert!(text.contains("link: 10 vertices, 18 facets"));
    let model = stdout(&["link", "--partition", "2,2"]);
    assert!(model.contains("h by descents   (1,4,1,0)"), "{model}");
}

fn off_roundtrip(k: u32, q: u32, vertices: usize, facets: usize) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.off");
    let k_s = k.to_string();
    let q_s = q.to_string();
    stdout(&["export", "--off", "-k", &k_s, "-q", &q_s, "--out", path.to_str().unwrap()]);
    let mesh = parse_off(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!((mesh.coords.len(), mesh.faces.len()), (vertices, facets));
    let t = Edgewise::new(k, q).unwrap();
    let want: BTreeSet<BTreeSet<Vec<i64>>> = t
        .codes()
        .map(|a| t.decode(&a).unwrap().iter().map(|v| v.0.iter().map(|&x| x as i64).collect()).collect())
        .collect();
    let got: BTreeSet<BTreeSet<Vec<i64>>> = mesh
        .faces
        .iter()
        .map(|f| f.iter().map(|&i| mesh.coords[i][..k as usize - 1].to_vec()).collect())
        .collect();
    assert_eq!(got, want);
}

#[test]
fn off_export_round_trips() {
    off_roundtrip(3, 2, 6, 4);
    off_roundtrip(2, 5, 6, 5);
    off_roundtrip(5, 2, 15, 16);
}

#[test]
fn output_is_deterministic() {
    for args in [["build", "-k", "4", "-q", "3"], ["shell", "-k", "4", "-q", "3"], ["link", "-k", "4", "-q", "3"]] {
        let mut a = args.to_vec();
        if a[0] == "link" {
            a.extend(["--vertex", "1,1,2"]);
        }
        a.extend(["--format", "json"]);
        assert_eq!(edgewise(&a).stdout, edgewise(&a).stdout, "{a:?}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(edgewise(&["hvector", "-k", "3"]).status.code(), Some(2));
    assert_eq!(edgewise(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(edgewise(&["link", "-k", "3", "-q", "2", "--vertex", "0,5"]).status.code(), Some(2));
    assert_eq!(edgewise(&["hvector", "-k", "3", "-q", "2", "--format", "off"]).status.code(), Some(2));
    assert_eq!(edgewise(&["build", "-k", "8", "-q", "9"]).status.code(), Some(3));
    let err = edgewise(&["build", "-k", "8", "-q", "9"]).stderr;
    assert!(String::from_utf8(err).unwrap().contains("capacity"));
}
