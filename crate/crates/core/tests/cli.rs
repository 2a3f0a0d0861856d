use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use clap::Parser;
use polyminhash::cli::{Cli, Command as Sub, QuerySpec};
use polyminhash::parse_wkt_str;
use sha2::{Digest, Sha256};

fn bin(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyminhash"))
        .args(args)
        .current_dir(dir)
        .env_clear()
        .env("PATH", std::env::var("PATH").unwrap_or_default())
        .output()
        .unwrap()
}

fn ok(args: &[&str], dir: &Path) -> String {
    let out = bin(args, dir);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn sha(path: &Path) -> Vec<u8> {
    Sha256::digest(fs::read(path).unwrap()).to_vec()
}

#[test]
fn synth_rectangles_parse_cleanly_and_reproducibly() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(&["synth", "--count", "1000", "--family", "rect", "--seed", "5", "--out", "a.wkt"], d);
    ok(&["synth", "--count", "1000", "--family", "rect", "--seed", "5", "--out", "b.wkt"], d);
    assert_eq!(fs::read(d.join("a.wkt")).unwrap(), fs::read(d.join("b.wkt")).unwrap());
    let report = parse_wkt_str(&fs::read_to_string(d.join("a.wkt")).unwrap()).unwrap();
    assert_eq!(report.accepted(), 1000);
    assert_eq!(report.rejected_count(), 0);

    let tri = ok(&["synth", "--count", "50", "--min-vertices", "3", "--max-vertices", "3", "--family", "convex"], d);
    let tri = parse_wkt_str(&tri).unwrap();
    assert_eq!(tri.accepted(), 50);
    assert!(tri.polygons.iter().all(|p| p.len() == 3));
}

#[test]
fn build_query_stats_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(&["synth", "--count", "1000", "--seed", "3", "--out", "data.wkt"], d);
    let build = ok(&["build", "--dataset", "data.wkt", "--index", "m3.idx", "--m", "3"], d);
    let report: serde_json::Value = serde_json::from_str(&build).unwrap();
    assert_eq!(report["accepted"], 1000);
    assert_eq!(report["stats"]["dataset_size"], 1000);
    ok(&["build", "--dataset", "data.wkt", "--index", "again.idx", "--m", "3"], d);
    assert_eq!(sha(&d.join("m3.idx")), sha(&d.join("again.idx")));

    ok(&["build", "--dataset", "data.wkt", "--index", "m1.idx", "--m", "1"], d);
    let s1: serde_json::Value = serde_json::from_str(&ok(&["stats", "--index", "m1.idx"], d)).unwrap();
    let s3: serde_json::Value = serde_json::from_str(&ok(&["stats", "--index", "m3.idx"], d)).unwrap();
    assert!(s3["bucket_count"].as_u64() >= s1["bucket_count"].as_u64());

    let text = ok(&["query", "--dataset", "data.wkt", "--index", "m3.idx", "--id", "5", "--k", "3"], d);
    let rows: Vec<&str> = text.lines().filter(|l| l.chars().next().is_some_and(|c| c.is_ascii_digit())).collect();
    assert!(!rows.is_empty() && rows.len() <= 3);
    let first: Vec<&str> = rows[0].split('\t').collect();
    assert_eq!((first[1], first[2].parse::<f64>().unwrap()), ("5", 0.0));

    let json = ok(&["query", "--dataset", "data.wkt", "--index", "m3.idx", "--id", "5", "--format", "json"], d);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["neighbors"][0]["id"], 5);
    assert_eq!(v["signature"].as_array().unwrap().len(), 3);

    let wkt = ok(&["query", "--dataset", "data.wkt", "--index", "m3.idx", "--wkt", "POLYGON((0 0,40 0,40 30,0 30,0 0))", "--format", "json"], d);
    assert!(serde_json::from_str::<serde_json::Value>(&wkt).is_ok());

    let mismatch = bin(&["query", "--dataset", "data.wkt", "--index", "m3.idx", "--id", "5", "--m", "2"], d);
    assert_eq!(mismatch.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&mismatch.stderr).contains("config_mismatch"));
    let seed = bin(&["query", "--dataset", "data.wkt", "--index", "m3.idx", "--id", "5", "--seed", "1"], d);
    assert_eq!(seed.status.code(), Some(1));
    let unknown = bin(&["query", "--dataset", "data.wkt", "--index", "m3.idx", "--id", "5000"], d);
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("unknown_id"));

    let mut bytes = fs::read(d.join("m3.idx")).unwrap();
    let mid = bytes.len() / 2;
    bytes[mid] ^= 0xff;
    fs::write(d.join("bad.idx"), bytes).unwrap();
    let corrupt = bin(&["stats", "--index", "bad.idx"], d);
    assert_eq!(corrupt.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&corrupt.stderr).contains("corrupt_index"));
}

#[test]
fn bench_writes_table_and_sidecars() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(&["synth", "--count", "1500", "--seed", "9", "--out", "data.wkt"], d);
    ok(&["bench", "--dataset", "data.wkt", "--queries", "40", "--m", "1,3,5", "--k", "1,10", "--out", "r.csv", "--gt-cache", "gt.json"], d);
    let mut rdr = csv::Reader::from_path(d.join("r.csv")).unwrap();
    let headers = rdr.headers().unwrap().clone();
    assert_eq!(headers.iter().collect::<Vec<_>>(), polyminhash::cli::REPORT_COLUMNS.to_vec());
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 6);
    let col = |name: &str| headers.iter().position(|h| h == name).unwrap();
    for r in &rows {
        let bf: f64 = r[col("bf_time_s")].parse().unwrap();
        let total: f64 = r[col("total_s")].parse().unwrap();
        let speedup: f64 = r[col("speedup")].parse().unwrap();
        assert!((speedup - bf / total).abs() <= 1e-6 * speedup);
    }
    assert!(d.join("r.recall_pruning.csv").exists());
    assert!(d.join("r.pruning_m.csv").exists());
    assert!(d.join("gt.json").exists());

    ok(&["bench", "--dataset", "data.wkt", "--queries", "40", "--m", "1,3,5", "--k", "1,10", "--out", "r.json", "--format", "json", "--gt-cache", "gt.json"], d);
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(d.join("r.json")).unwrap()).unwrap();
    let from_csv: Vec<String> = rows.iter().map(|r| r[col("recall")].to_string()).collect();
    let from_json: Vec<f64> = v["rows"].as_array().unwrap().iter().map(|r| r["recall"].as_f64().unwrap()).collect();
    for (c, j) in from_csv.iter().zip(&from_json) {
        assert_eq!(c.parse::<f64>().unwrap(), *j);
    }
}

#[test]
fn argument_parsing_and_env_fallback() {
    let cli = Cli::try_parse_from(["polyminhash", "bench", "--dataset", "x.wkt", "--queries", "ids:1,2,3", "--m", "2,4"]).unwrap();
    match cli.command {
        Sub::Bench(b) => {
            assert_eq!(b.queries, QuerySpec::Ids(vec![1, 2, 3]));
            assert_eq!(b.hash.m, vec![2, 4]);
            assert_eq!(b.k, vec![10]);
        }
        other => panic!("{other:?}"),
    }
    assert!(Cli::try_parse_from(["polyminhash", "query", "--dataset", "a", "--index", "b"]).is_err());
    assert!(Cli::try_parse_from(["polyminhash", "query", "--dataset", "a", "--index", "b", "--id", "1", "--wkt", "x"]).is_err());
    assert!(Cli::try_parse_from(["polyminhash", "synth", "--family", "blob"]).is_err());

    // The only test in this binary that touches the environment.
    std::env::set_var("POLYMINHASH_INDEX", "from-env.idx");
    let cli = Cli::try_parse_from(["polyminhash", "stats"]).unwrap();
    let Sub::Stats(s) = cli.command else { panic!() };
    assert_eq!(s.index, Path::new("from-env.idx"));
    let cli = Cli::try_parse_from(["polyminhash", "stats", "--index", "flag.idx"]).unwrap();
    let Sub::Stats(s) = cli.command else { panic!() };
    assert_eq!(s.index, Path::new("flag.idx"));
    std::env::remove_var("POLYMINHASH_INDEX");
}
