use std::process::{Command, Output};

fn seaweed(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seaweed"))
        .args(args)
        .env_remove("SEAWEED_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let o = seaweed(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn csv_rows(text: &str) -> Vec<csv::StringRecord> {
    csv::Reader::from_reader(text.as_bytes())
        .records()
        .map(Result::unwrap)
        .collect()
}

#[test]
fn first_figure_with_all_oracles() {
    let v = json(&[
        "index", "--family", "affine-a", "--n", "10", "--outer", "9", "--inner", "4,8", "--brute", "--format", "json",
    ]);
    assert_eq!(v["index"]["combinatorial"], 0);
    assert_eq!(v["index"]["tyj"], 0);
    assert_eq!(v["index"]["brute"], 0);
    assert_eq!(v["indexOfQhat"], 1);
    assert_eq!(v["vertices"], 10);
    let arcs = v["arcs"].as_array().unwrap();
    assert_eq!(arcs.len(), 10);
    assert_eq!(arcs.iter().filter(|a| a["affine"] == true).count(), 3);
}

#[test]
fn affine_c_maximal_cuts() {
    let v = json(&[
        "index", "--family", "affine-c", "--r", "5", "--outer", "2", "--inner", "4", "--format", "json",
    ]);
    assert_eq!(v["index"]["combinatorial"], 4);
    assert_eq!(v["index"]["tyj"], 4);
    assert!(v["index"]["brute"].is_null());
}

#[test]
fn finite_a_example_text() {
    let o = seaweed(&[
        "index", "--family", "finite-a", "--n", "9", "--outer", "5,7", "--inner", "2,6",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("index:       2"), "{text}");
    assert!(text.contains("tyj:         2 = 8 + 4 + 4 - 2*7"), "{text}");
}

#[test]
fn retained_sets_are_converted_to_cuts() {
    let by_cut = json(&[
        "index", "--family", "affine-a", "--n", "10", "--outer", "9", "--inner", "4,8", "--format", "json",
    ]);
    let by_set = json(&[
        "index",
        "--family",
        "affine-a",
        "--n",
        "10",
        "--outer-set",
        "0,1,2,3,4,5,6,7,8",
        "--inner-set",
        "0,1,2,3,5,6,7,9",
        "--format",
        "json",
    ]);
    assert_eq!(by_cut, by_set);
}

#[test]
fn empty_finite_cuts() {
    let v = json(&[
        "graph", "--family", "finite-a", "--n", "7", "--outer", "--inner", "", "--format", "json",
    ]);
    let comps = v["components"].as_array().unwrap();
    assert_eq!(comps.iter().filter(|c| c["kind"] == "cycle").count(), 3);
    assert_eq!(comps.iter().filter(|c| c["kind"] == "segment").count(), 1);
    assert_eq!(v["index"]["combinatorial"], 6);
}

#[test]
fn validation_errors_exit_2() {
    let cases: &[&[&str]] = &[
        &[
            "index", "--family", "affine-a", "--n", "4", "--outer", "", "--inner", "1",
        ],
        &[
            "index", "--family", "affine-a", "--n", "4", "--outer", "7", "--inner", "1",
        ],
        &[
            "index", "--family", "affine-c", "--n", "4", "--outer", "1", "--inner", "1",
        ],
        &["index", "--family", "finite-a", "--n", "1"],
        &[
            "index", "--family", "finite-c", "--r", "3", "--outer", "1", "--inner", "2", "--brute",
        ],
        &["index", "--family", "affine-q", "--n", "4"],
        &["index", "--family", "affine-a", "--n", "4", "--outer", "x"],
        &[
            "graph", "--family", "affine-a", "--n", "4", "--outer", "1", "--inner", "1", "--format", "png",
        ],
        &["verify", "--family", "affine-a", "--max-rank", "12"],
        &["table", "--sweep", "levi", "--max", "5"],
        &["table", "--sweep", "levi", "--max", "5", "--family", "affine-a"],
        &["closed-form", "gcd", "--n", "10", "--d", "6"],
        &["closed-form", "cmax", "--r", "3", "--i", "4", "--j", "0"],
        &["--threads", "0", "closed-form", "gcd", "--n", "10", "--d", "2"],
        &["frobnicate"],
    ];
    for args in cases {
        let o = seaweed(args);
        assert_eq!(
            o.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn closed_forms() {
    assert_eq!(
        stdout(&seaweed(&["closed-form", "gcd", "--n", "10", "--d", "4"])),
        "2\n"
    );
    assert_eq!(stdout(&seaweed(&["closed-form", "gcd", "--n", "9", "--d", "3"])), "3\n");
    assert_eq!(
        stdout(&seaweed(&["closed-form", "cmax", "--r", "5", "--i", "2", "--j", "4"])),
        "4\n"
    );
    assert_eq!(
        stdout(&seaweed(&["closed-form", "cmax", "--r", "5", "--i", "3", "--j", "3"])),
        "6\n"
    );
}

#[test]
fn graph_formats() {
    let base = [
        "graph", "--family", "affine-a", "--n", "10", "--outer", "9", "--inner", "4,8", "--format",
    ];
    let with = |f: &str| {
        let mut a = base.to_vec();
        a.push(f);
        let o = seaweed(&a);
        assert_eq!(o.status.code(), Some(0));
        stdout(&o)
    };
    let dot = with("dot");
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("pos=").count(), 10);
    assert_eq!(dot.matches("affine=true").count(), 3);
    assert_eq!(dot.matches("side=inner").count(), 5);
    let tikz = with("tikz");
    assert!(tikz.contains("\\begin{tikzpicture}") && tikz.contains("\\end{tikzpicture}"));
    assert_eq!(tikz.matches("controls").count(), 10);
    assert!(with("svg").starts_with("<svg"));
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("seaweed-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("g.dot");
    let o = seaweed(&[
        "graph",
        "--family",
        "finite-c",
        "--r",
        "3",
        "--outer",
        "1",
        "--inner",
        "",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("digraph"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn gcd_table_matches_closed_form() {
    let o = seaweed(&["table", "--sweep", "gcd", "--max", "60"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text
        .starts_with("family,rank,outer,inner,cycles,segments,nonsigma_segments,iota,index,tyj,brute,closed_form\n"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), (2..=60).map(|n| n / 2).sum::<usize>());
    for row in rows {
        assert_eq!(&row[8], &row[11], "{row:?}");
        assert_eq!(&row[8], &row[9], "{row:?}");
    }
}

#[test]
fn cmax_table_matches_closed_form() {
    let o = seaweed(&["table", "--sweep", "cmax", "--max", "30"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), (1..=30).map(|r| (r + 1) * (r + 1)).sum::<usize>());
    assert!(rows.iter().all(|row| row[8] == row[11]));
}

#[test]
fn levi_table_gives_rank() {
    let o = seaweed(&["table", "--sweep", "levi", "--family", "finite-a", "--max", "12"]);
    assert_eq!(o.status.code(), Some(0));
    for row in csv_rows(&stdout(&o)) {
        let n: i64 = row[1].parse().unwrap();
        assert_eq!(row[8].parse::<i64>().unwrap(), n - 1);
    }
}

#[test]
fn table_rows_are_in_enumeration_order() {
    let o = seaweed(&[
        "table", "--sweep", "all", "--family", "affine-c", "--max", "2", "--brute",
    ]);
    assert_eq!(o.status.code(), Some(2), "brute is type A only");
    let o = seaweed(&[
        "table", "--sweep", "all", "--family", "affine-a", "--max", "3", "--brute",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 49);
    assert_eq!((&rows[0][2], &rows[0][3]), ("0", "0"));
    assert_eq!((&rows[1][2], &rows[1][3]), ("0", "1"));
    assert!(rows.iter().all(|r| r[8] == r[10]));
}

#[test]
fn verify_is_deterministic_across_runs_and_thread_counts() {
    let args = ["verify", "--max-rank", "5", "--brute", "--brute-max-rank", "4"];
    let run = |threads: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_seaweed"))
            .args(args)
            .env("SEAWEED_THREADS", threads)
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        o.stdout
    };
    let first = run("1");
    assert_eq!(first, run("1"));
    assert_eq!(first, run("3"));
    let text = String::from_utf8(first).unwrap();
    assert!(text.contains("total: "));
    assert!(text.contains("0 failures"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn help_explains_vertex_numbering() {
    let text = stdout(&seaweed(&["index", "--help"]));
    assert!(text.contains("vertex N"));
}
