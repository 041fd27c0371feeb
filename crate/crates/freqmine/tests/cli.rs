//! End-to-end tests of the `freqmine` binary: golden outputs, exit codes,
//! partition watermarks, and run-to-run determinism.

use std::io::Write;
use std::process::{Command, Output};

use freqmine::report;
use freqmine::tid_index::mine_improved;
use freqmine::transactions::TransactionDB;

const FIXTURE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data/groceries.basket");

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_freqmine"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is utf-8")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is utf-8")
}

fn temp_basket(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().expect("temp file");
    f.write_all(contents.as_bytes()).expect("write temp basket");
    f
}

#[test]
fn mine_table_prints_headers_and_golden_rows() {
    let out = run(&["mine", "-i", FIXTURE, "--min-sup", "2"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(
        text.contains("# m=7 min_sup=2 algorithm=improved"),
        "{text}"
    );
    assert!(
        text.contains("# records_read=75 passes=24 candidates=29"),
        "{text}"
    );
    assert!(text.contains("Milk | 5 | T1,T2,T5,T6,T7"), "{text}");
    assert!(text.contains("Milk, Butter | 3 | T2,T6,T7"), "{text}");
    assert!(
        text.contains("Milk, Butter, Jam, Bread | 2 | T6,T7"),
        "{text}"
    );
    assert!(text.contains("F4: 1 itemsets"), "{text}");
}

#[test]
fn mine_accepts_fractional_threshold() {
    let out = run(&["mine", "-i", FIXTURE, "--min-sup", "0.3"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    // ceil(0.3 * 7) = 3, which drops Coffee (support 2)
    assert!(
        text.contains("# m=7 min_sup=3 algorithm=improved"),
        "{text}"
    );
    assert!(!text.contains("Coffee"), "{text}");
}

#[test]
fn mine_csv_matches_the_library_renderer() {
    let out = run(&["mine", "-i", FIXTURE, "--min-sup", "2", "--output", "csv"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.starts_with("k,itemset,support,found_in\n"), "{text}");
    assert!(text.contains("2,Milk Butter,3,T2 T6 T7"), "{text}");

    let input = std::fs::read_to_string(FIXTURE).unwrap();
    let db = TransactionDB::parse_basket(&input, true).unwrap().db;
    let result = mine_improved(&db, 2);
    assert_eq!(text, report::levels_csv(&result.levels, db.dictionary()));
}

#[test]
fn mine_json_reports_levels_and_stats() {
    let out = run(&["mine", "-i", FIXTURE, "--min-sup", "2", "--output", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("valid json");
    assert_eq!(v["m"], 7);
    assert_eq!(v["min_sup"], 2);
    assert_eq!(v["algorithm"], "improved");
    assert_eq!(v["partial"], serde_json::Value::Null);
    assert_eq!(v["levels"].as_array().unwrap().len(), 4);
    assert_eq!(v["levels"][0]["k"], 1);
    assert_eq!(v["levels"][0]["itemsets"].as_array().unwrap().len(), 6);
    assert_eq!(v["stats"]["records_read"], 75);
    assert_eq!(v["stats"]["passes"], 24);
    assert_eq!(v["stats"]["candidates"], 29);
}

#[test]
fn mine_fpgrowth_reports_no_tid_lists_or_scan_stats() {
    let out = run(&[
        "mine",
        "-i",
        FIXTURE,
        "--min-sup",
        "2",
        "--algorithm",
        "fpgrowth",
    ]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("algorithm=fpgrowth"), "{text}");
    assert!(!text.contains("records_read"), "{text}");
    assert!(text.contains("Milk, Butter | 3 | -"), "{text}");
}

#[test]
fn classic_and_improved_report_identical_levels() {
    let classic = run(&[
        "mine",
        "-i",
        FIXTURE,
        "--min-sup",
        "2",
        "--algorithm",
        "classic",
        "--output",
        "csv",
    ]);
    let improved = run(&[
        "mine",
        "-i",
        FIXTURE,
        "--min-sup",
        "2",
        "--algorithm",
        "improved",
        "--output",
        "csv",
    ]);
    assert!(classic.status.success() && improved.status.success());
    assert_eq!(classic.stdout, improved.stdout);
}

#[test]
fn repeated_partitioned_and_threaded_runs_are_byte_identical() {
    let base = run(&["mine", "-i", FIXTURE, "--min-sup", "2"]);
    assert!(base.status.success());
    let again = run(&["mine", "-i", FIXTURE, "--min-sup", "2"]);
    let partitioned = run(&["mine", "-i", FIXTURE, "--min-sup", "2", "--partitions", "3"]);
    let threaded = Command::new(env!("CARGO_BIN_EXE_freqmine"))
        .args(["mine", "-i", FIXTURE, "--min-sup", "2"])
        .env("FREQMINE_THREADS", "4")
        .output()
        .expect("binary runs");
    for other in [&again, &partitioned, &threaded] {
        assert!(other.status.success());
        assert_eq!(base.stdout, other.stdout);
    }
}

#[test]
fn single_partition_output_is_watermarked_partial() {
    let out = run(&[
        "mine",
        "-i",
        FIXTURE,
        "--min-sup",
        "1",
        "--partitions",
        "3",
        "--only-partition",
        "0",
    ]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    // 7 records over 3 partitions: the first holds T1..T3
    assert!(
        text.contains("# PARTIAL (single-cluster): partition 0 of 3, T1..T3"),
        "{text}"
    );
    assert!(text.contains("# m=3"), "{text}");
}

#[test]
fn compare_table_reports_reduction_and_equality() {
    let out = run(&["compare", "-i", FIXTURE, "--min-sup", "2"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("# m=7 min_sup=2"), "{text}");
    assert!(
        text.contains("level | candidates | full_scan_reads | targeted_reads"),
        "{text}"
    );
    assert!(text.contains("2 | 15 | 105 | 43"), "{text}");
    assert!(text.contains("total | 29 | 168 | 75"), "{text}");
    assert!(text.contains("records_read reduction: 55.36%"), "{text}");
    assert!(text.contains("frequent itemsets: 22 (equal)"), "{text}");
}

#[test]
fn compare_csv_emits_one_row_per_algorithm() {
    let out = run(&[
        "compare",
        "-i",
        FIXTURE,
        "--min-sup",
        "2",
        "--output",
        "csv",
    ]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3, "{text}");
    assert!(lines[0].starts_with("dataset,algorithm,min_sup"), "{text}");
    assert!(lines[1].starts_with("groceries,classic,"), "{text}");
    assert!(lines[2].starts_with("groceries,improved,"), "{text}");
    assert!(lines[2].ends_with(",55.36"), "{text}");

    let with_fp = run(&[
        "compare",
        "-i",
        FIXTURE,
        "--min-sup",
        "2",
        "--output",
        "csv",
        "--fpgrowth",
    ]);
    let text = stdout_of(&with_fp);
    let fp_line = text
        .lines()
        .find(|l| l.starts_with("groceries,fpgrowth,"))
        .expect("fpgrowth row present");
    let fields: Vec<&str> = fp_line.split(',').collect();
    assert_eq!(fields[4], "14", "fp-growth reads two passes over 7 records");
    assert_eq!(fields[5], "0", "fp-growth generates no candidates");
}

#[test]
fn rules_table_reports_confidence_four_decimals() {
    let out = run(&[
        "rules",
        "-i",
        FIXTURE,
        "--min-sup",
        "2",
        "--min-conf",
        "1.0",
    ]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("min_conf=1.0000"), "{text}");
    assert!(text.contains("Coffee => Milk | 2 | 1.0000"), "{text}");
    assert!(!text.contains("0.7500"), "{text}");

    let default_conf = run(&["rules", "-i", FIXTURE, "--min-sup", "2"]);
    let text = stdout_of(&default_conf);
    assert!(text.contains("Butter => Milk | 3 | 0.7500"), "{text}");
}

#[test]
fn rules_csv_has_the_documented_header() {
    let out = run(&["rules", "-i", FIXTURE, "--min-sup", "2", "--output", "csv"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(
        text.starts_with("antecedent,consequent,support,confidence\n"),
        "{text}"
    );
    assert!(text.contains("Coffee,Milk,2,1.0000"), "{text}");
}

#[test]
fn dump_tree_prints_the_golden_tree() {
    let out = run(&["dump-tree", "-i", FIXTURE, "--min-sup", "3"]);
    assert!(out.status.success());
    let expected = "\
root
  Milk:5
    Bread:2
      Butter:2
        Cheese:1
          Jam:1
        Jam:1
    Butter:1
    Cheese:1
  Bread:2
    Butter:1
      Cheese:1
    Jam:1
";
    assert_eq!(stdout_of(&out), expected);
}

#[test]
fn bench_small_grid_emits_the_csv_schema() {
    let out = run(&[
        "bench",
        "--groups",
        "60,80",
        "--min-sups",
        "0.05,0.10",
        "--items",
        "12",
        "--seed",
        "7",
    ]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "dataset,algorithm,min_sup,elapsed_ms,records_read,candidates,frequent_count,reduction_pct"
    );
    assert_eq!(lines.len(), 1 + 2 * 2 * 2, "{text}");
    for row in &lines[1..] {
        assert_eq!(row.split(',').count(), 8, "{row}");
    }
    let improved: Vec<&&str> = lines[1..]
        .iter()
        .filter(|l| l.contains(",improved,"))
        .collect();
    assert_eq!(improved.len(), 4);
    for row in improved {
        let reduction: f64 = row.split(',').nth(7).unwrap().parse().unwrap();
        assert!(reduction > 0.0, "{row}");
    }
}

#[test]
fn bench_json_mirrors_the_csv_rows() {
    let out = run(&[
        "bench",
        "--groups",
        "50",
        "--min-sups",
        "0.10",
        "--items",
        "10",
        "--output",
        "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("valid json");
    let rows = v.as_array().expect("array of rows");
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["algorithm"], "classic");
    assert!(rows[0]["reduction_pct"].is_null());
    assert_eq!(rows[1]["algorithm"], "improved");
    assert!(rows[1]["reduction_pct"].is_number());
}

#[test]
fn usage_errors_exit_with_code_2() {
    let cases: Vec<Vec<&str>> = vec![
        vec![
            "mine",
            "-i",
            FIXTURE,
            "--min-sup",
            "2",
            "--only-partition",
            "1",
        ],
        vec![
            "mine",
            "-i",
            FIXTURE,
            "--min-sup",
            "2",
            "--algorithm",
            "fpgrowth",
            "--partitions",
            "2",
        ],
        vec![
            "mine",
            "-i",
            FIXTURE,
            "--min-sup",
            "2",
            "--partitions",
            "3",
            "--only-partition",
            "5",
        ],
        vec!["mine", "-i", FIXTURE, "--min-sup", "0"],
        vec!["mine", "-i", FIXTURE, "--min-sup", "1.5"],
        vec!["mine", "-i", FIXTURE, "--min-sup", "2", "--bogus"],
        vec!["bench", "--min-sups", "3"],
        vec![
            "rules",
            "-i",
            FIXTURE,
            "--min-sup",
            "2",
            "--min-conf",
            "0.0",
        ],
    ];
    for args in cases {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr_of(&out));
    }
}

#[test]
fn data_errors_exit_with_code_1() {
    let missing = run(&["mine", "-i", "/nonexistent/path.basket", "--min-sup", "2"]);
    assert_eq!(missing.status.code(), Some(1));
    assert!(
        stderr_of(&missing).contains("error:"),
        "{}",
        stderr_of(&missing)
    );

    let empty = temp_basket("# only a comment\n");
    let out = run(&[
        "mine",
        "-i",
        empty.path().to_str().unwrap(),
        "--min-sup",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(1), "{}", stderr_of(&out));

    let blank = temp_basket("Milk, Bread\n\nBread\n");
    let strict = run(&[
        "mine",
        "-i",
        blank.path().to_str().unwrap(),
        "--min-sup",
        "1",
        "--strict",
    ]);
    assert_eq!(strict.status.code(), Some(1), "{}", stderr_of(&strict));
    assert!(
        stderr_of(&strict).contains("line 2"),
        "{}",
        stderr_of(&strict)
    );
}

#[test]
fn closed_stdout_pipe_is_a_clean_stop() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_freqmine"))
        .args(["mine", "-i", FIXTURE, "--min-sup", "1"])
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::piped())
        .spawn()
        .expect("binary spawns");
    // close the read end before (or while) the child writes
    drop(child.stdout.take());
    let status = child.wait().expect("child exits");
    assert!(status.success(), "{status:?}");
}

#[test]
fn blank_lines_are_skipped_with_a_warning_by_default() {
    let blank = temp_basket("Milk, Bread\n\nBread\n");
    let out = run(&[
        "mine",
        "-i",
        blank.path().to_str().unwrap(),
        "--min-sup",
        "1",
    ]);
    assert!(out.status.success());
    assert!(
        stderr_of(&out).contains("warning: skipped 1 blank line(s)"),
        "{}",
        stderr_of(&out)
    );
    assert!(stdout_of(&out).contains("# m=2"), "{}", stdout_of(&out));
}
