use std::process::{Command, Output};

fn cak(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cak"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn first_product_of_v_with_itself() {
    let o = cak(&["nprod", "--rank", "1", "-n", "1", "v", "v"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "v");
}

#[test]
fn bracket_of_shifted_v() {
    let o = cak(&["bracket", "-n", "1", "v - D", "v - D"]);
    assert_eq!(stdout(&o).trim(), "2 v - 2 D");
}

#[test]
fn phi1_table_has_the_asymmetric_entries() {
    let o = cak(&["locality", "--map", "phi1", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<Vec<&str>> = text.lines().map(|l| l.split_whitespace().collect()).collect();
    let header = &rows[0];
    let col = |name: &str| header.iter().position(|h| *h == name).unwrap() + 1;
    let row = |name: &str| rows[1..].iter().find(|r| r[0] == name).unwrap();
    assert_eq!(row("v")[col("del1")], "2");
    assert_eq!(row("del1")[col("v")], "1");
    assert_eq!(row("xi2")[col("xi2")], "0");
}

#[test]
fn element_locality() {
    let o = cak(&["locality", "v - D", "v - D"]);
    assert_eq!(stdout(&o).trim(), "2");
}

#[test]
fn verify_w_json_report() {
    let args = ["verify", "w", "--n", "2", "--map", "phi2", "--tmax", "2", "--len", "4", "--json"];
    let o = cak(&args);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let text = stdout(&o);
    let positions: Vec<usize> = ["\"suite\"", "\"n\"", "\"map\"", "\"checks\"", "\"passed\""]
        .iter()
        .map(|k| text.find(k).unwrap())
        .collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]), "canonical field order");
    assert_eq!(v["passed"], true);
    assert_eq!(v["map"], "phi2");
    for c in v["checks"].as_array().unwrap() {
        assert!(["pass", "skip"].contains(&c["status"].as_str().unwrap()));
    }
    assert_eq!(cak(&args).stdout, o.stdout, "output is deterministic");
}

#[test]
fn verification_failure_exits_with_one() {
    // the K_n case formula does not describe n = 2
    let o = cak(&["verify", "k", "--n", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("SKIP generation replay"));
    let o = cak(&["verify", "k", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(cak(&["nprod", "--rank", "1", "xi3", "v"]).status.code(), Some(2));
    assert_eq!(cak(&["reduce", "xi1 .1"]).status.code(), Some(2));
    assert_eq!(cak(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn reduce_with_default_rules() {
    let o = cak(&["reduce", "--n", "1", "xi1 .0 del1"]);
    assert_eq!(stdout(&o).trim(), "v - del1 .0 xi1");
}

#[test]
fn reduce_with_rule_file() {
    let path = std::env::temp_dir().join(format!("cak-rules-{}.txt", std::process::id()));
    std::fs::write(&path, "# first product with v\ndel1 .1 v - del1\nv .1 v = v\n").unwrap();
    let o = cak(&["reduce", "--n", "1", "--rules", path.to_str().unwrap(), "del1 .1 (v .1 v)"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).trim(), "del1");
}

#[test]
fn rule_file_errors_carry_positions() {
    let path = std::env::temp_dir().join(format!("cak-bad-{}.txt", std::process::id()));
    std::fs::write(&path, "v .1 v - v\nxi1 .1 ?\n").unwrap();
    let o = cak(&["reduce", "--rules", path.to_str().unwrap(), "v"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2, column 8"));
}

#[test]
fn independence_reports_a_dependency() {
    let o = cak(&["indep", "--rank", "1", "v", "2 v"]);
    let text = stdout(&o);
    assert!(text.contains("rank: 1/2"));
    assert!(text.contains("dependency: 1 -1/2"));
}

#[test]
fn composition_over_an_overlap() {
    let o = cak(&["compose", "--n", "2", "v .0 xi2 - xi2 .0 v", "xi1 .1 v - xi1", "xi1 .1 v .0 xi2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("reduced: 0"));
}

#[test]
fn k_table_at_rank_one_is_symmetric() {
    let o = cak(&["table", "k", "--n", "1"]);
    let rows: Vec<Vec<String>> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.split_whitespace().skip(1).map(String::from).collect())
        .collect();
    for i in 0..rows.len() {
        for j in 0..rows.len() {
            assert_eq!(rows[i][j], rows[j][i]);
        }
    }
}
