use std::process::{Command, Output};

use rnacount_core::counting;

fn rnacount(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rnacount"))
        .args(args)
        .env_remove("RNACOUNT_MAX_SIZE")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = rnacount(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn counts_print_bare_integers() {
    assert_eq!(stdout(&["count", "--formula", "narayana", "--b", "2", "--k", "3"]), "20\n");
    assert_eq!(stdout(&["count", "--formula", "max-stack", "--b", "2", "--k", "3", "--h", "1"]), "2\n");
    assert_eq!(stdout(&["count", "--formula", "helices", "--b", "3", "--k", "4", "--s", "3"]), "93\n");
}

#[test]
fn table_csv_matches_library() {
    for id in [1, 2] {
        let text = stdout(&["table", &id.to_string()]);
        let rows = counting::helix_table(id).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("s,b,k,count"));
        let parsed: Vec<(usize, usize, usize, String)> = lines
            .map(|l| {
                let f: Vec<&str> = l.split(',').collect();
                (f[0].parse().unwrap(), f[1].parse().unwrap(), f[2].parse().unwrap(), f[3].to_owned())
            })
            .collect();
        assert_eq!(parsed.len(), rows.len());
        for (p, r) in parsed.iter().zip(&rows) {
            assert_eq!(*p, (r.s, r.b, r.k, r.count.to_string()));
        }
    }
}

#[test]
fn table_json_lines_parse() {
    let text = stdout(&["table", "2", "--format", "json"]);
    let cells: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(cells.len(), 18);
    assert!(cells.iter().any(|c| c["s"] == 2 && c["b"] == 3 && c["k"] == 3 && c["count"] == 5));
}

#[test]
fn output_is_deterministic() {
    for args in [&["enumerate", "--b", "3", "--k", "4", "--stats"][..], &["table", "1"], &["verify", "--max-size", "8"]]
    {
        assert_eq!(rnacount(args).stdout, rnacount(args).stdout, "{args:?}");
    }
}

#[test]
fn bijection_round_trips() {
    assert_eq!(stdout(&["bijection", "--which", "chen", "--input", "((.))"]), "()()()\n");
    assert_eq!(stdout(&["bijection", "--which", "sw", "--direction", "inverse", "--input", "(())"]), "(.)\n");
    let out = rnacount(&["bijection", "--which", "chen", "--input", "((..)).(.)", "--round-trip"]);
    assert!(out.status.success());
}

#[test]
fn exit_codes() {
    assert_eq!(rnacount(&["nonsense"]).status.code(), Some(2));
    assert_eq!(rnacount(&["bijection", "--which", "sw", "--input", "(()"]).status.code(), Some(2));
    assert_eq!(rnacount(&["table", "3"]).status.code(), Some(2));
    assert_eq!(rnacount(&["enumerate", "--b", "10", "--k", "1"]).status.code(), Some(2));
    assert_eq!(rnacount(&["--help"]).status.code(), Some(0));
}

#[test]
fn size_limit_from_environment() {
    let run = |limit: &str| {
        Command::new(env!("CARGO_BIN_EXE_rnacount"))
            .args(["enumerate", "--b", "2", "--k", "3"])
            .env("RNACOUNT_MAX_SIZE", limit)
            .output()
            .unwrap()
    };
    assert_eq!(run("6").status.code(), Some(2));
    assert!(run("7").status.success());
}
