use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

const FIXTURES: [&str; 8] = [
    "two-nuclei",
    "two-nuclei-bridge",
    "uniform-ring",
    "cl-cross",
    "al-bridge",
    "not-strong",
    "bridge-chain",
    "al-tight",
];
const METHODS: [(&str, &[&str]); 5] = [
    ("sl", &[]),
    ("cl", &[]),
    ("al", &[]),
    ("sl-alpha", &["--alpha", "1"]),
    ("sl-star", &["--alpha", "1"]),
];
const B1: &str = "x0,a1,a2,a3,x1,x2,x3";
const B2: &str = "y0,b1,b2,b3,y1,y2,y3";

fn unchain(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unchain"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = unchain(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

fn heights(doc: &serde_json::Value) -> Vec<f64> {
    doc["levels"].as_array().unwrap().iter().map(|l| l["t"].as_f64().unwrap()).collect()
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

#[test]
fn dendrograms_match_goldens() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for fixture in FIXTURES {
        for (method, extra) in METHODS {
            let mut args = vec!["cluster", "--fixture", fixture, "--method", method];
            args.extend_from_slice(extra);
            let got = stdout(&args);
            let path = golden_dir().join(format!("{fixture}.{method}.json"));
            if update {
                fs::write(&path, &got).unwrap();
            }
            let want = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
            assert_eq!(got, want, "{fixture} / {method}");
        }
    }
}

#[test]
fn documented_cluster_heights() {
    let h = heights(&json(&["cluster", "--fixture", "two-nuclei", "--method", "sl-alpha", "--alpha", "1"]));
    assert_eq!(h, [0.0, 1.0, 3.0, 5.0]);
    let h = heights(&json(&["cluster", "--fixture", "two-nuclei-bridge", "--method", "sl-star", "--alpha", "1"]));
    assert_eq!(h, [0.0, 1.0, 3.0, 6.0]);
    let ring = json(&["cluster", "--fixture", "uniform-ring", "--method", "sl-alpha", "--alpha", "1"]);
    assert_eq!(heights(&ring), [0.0, 1.0]);
    assert_eq!(ring["levels"][0]["blocks"].as_array().unwrap().len(), 8);
}

#[test]
fn output_is_deterministic() {
    for emit in ["json", "newick", "text", "ultrametric"] {
        let args = ["cluster", "--fixture", "bridge-chain", "--method", "sl-star", "--alpha", "2", "--emit", emit];
        assert_eq!(stdout(&args), stdout(&args), "{emit}");
    }
}

#[test]
fn other_emit_formats() {
    let text = stdout(&["cluster", "--fixture", "uniform-ring", "--method", "sl", "--emit", "text"]);
    assert_eq!(text.lines().last().unwrap(), "1  {x0,x1,x2,x3,y0,y1,y2,y3}");
    let newick = stdout(&["cluster", "--fixture", "uniform-ring", "--method", "sl", "--emit", "newick"]);
    assert!(newick.trim_end().ends_with(":0;"));
    let csv = stdout(&["cluster", "--fixture", "uniform-ring", "--method", "sl", "--emit", "ultrametric"]);
    assert_eq!(csv.lines().count(), 9);
}

#[test]
fn file_inputs() {
    let dir = std::env::temp_dir().join(format!("unchain-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let graph = dir.join("ring.json");
    fs::write(&graph, stdout(&["fixture", "uniform-ring"])).unwrap();
    let from_file = stdout(&["cluster", "--input", graph.to_str().unwrap(), "--method", "sl"]);
    assert_eq!(from_file, stdout(&["cluster", "--fixture", "uniform-ring", "--method", "sl"]));

    let matrix = dir.join("m.csv");
    fs::write(&matrix, ",p,q,r\np,0,1,3\nq,1,0,3\nr,3,3,0\n").unwrap();
    let text = stdout(&["cluster", "--input", matrix.to_str().unwrap(), "--method", "al", "--emit", "text"]);
    assert_eq!(text, "0  {p} {q} {r}\n1  {p,q} {r}\n3  {p,q,r}\n");
    let out = dir.join("out.nwk");
    stdout(&["cluster", "--input", matrix.to_str().unwrap(), "--method", "sl", "--emit", "newick", "--output", out.to_str().unwrap()]);
    assert_eq!(fs::read_to_string(&out).unwrap(), "((p:0.5,q:0.5):1,r:1.5):0;\n");

    let bad = dir.join("bad.csv");
    fs::write(&bad, ",p,q\np,0,x\nq,1,0\n").unwrap();
    let res = unchain(&["cluster", "--input", bad.to_str().unwrap(), "--method", "sl"]);
    assert_eq!(res.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&res.stderr).contains("cannot parse"));
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn dbscan_labelings() {
    let one = json(&["dbscan", "--fixture", "two-nuclei", "--eps", "3", "--min-pts", "4"]);
    assert_eq!(one["clusters"].as_array().unwrap().len(), 1);
    assert!(one["noise"].as_array().unwrap().is_empty());
    let bridge = json(&["dbscan", "--fixture", "two-nuclei-bridge", "--eps", "2", "--min-pts", "4"]);
    assert_eq!(bridge["clusters"].as_array().unwrap().len(), 2);
    assert_eq!(bridge["noise"].as_array().unwrap().len(), 6);
    assert_eq!(bridge["border_ambiguous"], serde_json::json!(["z0"]));
    let comps = json(&["dbscan", "--fixture", "two-nuclei", "--eps", "1", "--min-pts", "1"]);
    assert_eq!(comps["clusters"].as_array().unwrap().len(), 8);
}

#[test]
fn analyze_checks() {
    let weakly = |fixture: &str, method: &str| {
        json(&[
            "analyze", "--fixture", fixture, "--check", "weakly", "--method", method, "--alpha", "1",
            "--b1", B1, "--b2", B2, "--n1", "x0,a1,a2,a3", "--n2", "y0,b1,b2,b3",
        ])
    };
    let sl = weakly("two-nuclei", "sl-alpha");
    assert_eq!(sl["verdict"], "confirmed");
    assert_eq!(sl["conclusion"]["height"], 3.0);
    assert_eq!(weakly("cl-cross", "cl")["conclusion"]["holds"], false);
    assert_eq!(weakly("al-bridge", "al")["conclusion"]["holds"], false);

    let bridge = json(&[
        "analyze", "--fixture", "two-nuclei-bridge", "--check", "bridge", "--method", "sl-star", "--alpha", "1",
        "--b1", "x0,a1,a2,a3", "--b2", "y0,b1,b2,b3", "--z", "z0", "--x", "x1,x2,x3", "--y", "y1,y2,y3",
    ]);
    assert_eq!(bridge["verdict"], "confirmed");
    assert_eq!(bridge["conclusion"]["height"], 3.0);

    let chained = json(&["analyze", "--fixture", "not-strong", "--check", "chained", "--b1", B1, "--b2", B2]);
    assert_eq!(chained["present"], true);
    assert_eq!((chained["report"]["a"].as_f64(), chained["report"]["b"].as_f64()), (Some(2.5), Some(3.0)));

    let smaller = json(&[
        "analyze", "--fixture", "two-nuclei-bridge", "--check", "smaller-blocks", "--alpha", "1",
        "--chain", &format!("{B1};z0;{B2}"),
    ]);
    assert_eq!(smaller["report"]["witnesses"][0], serde_json::json!(["x0", "z0", "y0"]));

    let moderate = json(&[
        "analyze", "--fixture", "two-nuclei-bridge", "--check", "moderate", "--alpha", "1",
        "--chain", "x0,a1,a2,a3;z0;y0,b1,b2,b3", "--left", "x1;x2;x3", "--right", "y1;y2;y3",
        "--tj", "2", "--ti", "3",
    ]);
    assert_eq!(moderate["verdict"], "confirmed");
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        vec!["cluster", "--fixture", "two-nuclei", "--method", "sl-alpha"],
        vec!["cluster", "--fixture", "no-such", "--method", "sl"],
        vec!["cluster", "--fixture", "two-nuclei", "--method", "sl-alpha", "--alpha", "0"],
        vec!["fixture", "no-such"],
        vec!["analyze", "--fixture", "two-nuclei", "--check", "chained", "--b1", "x0,zz", "--b2", "y0"],
        vec!["analyze", "--fixture", "two-nuclei", "--check", "chained", "--b1", "x0", "--b2", "x0"],
        vec!["analyze", "--fixture", "two-nuclei", "--check", "strongly", "--b1", "x1", "--b2", "y1"],
        vec!["dbscan", "--fixture", "two-nuclei", "--eps", "1", "--min-pts", "0"],
    ] {
        let out = unchain(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    let listed = String::from_utf8(unchain(&["fixture", "no-such"]).stderr).unwrap();
    assert!(listed.contains("two-nuclei-bridge"));
}

#[test]
fn fixtures_round_trip_through_the_graph_reader() {
    for fixture in FIXTURES {
        let doc = stdout(&["fixture", fixture]);
        let g = unchain::io::EdgeList::from_json(&doc).unwrap();
        assert_eq!(g.to_json(), doc);
        assert_eq!(g.to_space().unwrap().len(), g.points.len());
    }
    let tn = unchain::io::EdgeList::from_json(&stdout(&["fixture", "two-nuclei"])).unwrap();
    assert_eq!((tn.points.len(), tn.edges.len()), (14, 43));
}
