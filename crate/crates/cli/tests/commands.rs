use std::io::Cursor;

use gaptile::json::TilingDocument;
use gaptile::{base_covering, BaseId, Covering};
use gaptile_cli::{run, EXIT_OK, EXIT_REJECT, EXIT_USAGE};

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn gaptile(args: &[&str], stdin: &str) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("gaptile").chain(args.iter().copied());
    let code = run(argv, &mut Cursor::new(stdin.as_bytes()), &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

#[test]
fn threshold_prints_r0() {
    let o = gaptile(&["threshold", "1", "2"], "");
    assert_eq!((o.code, o.stdout.as_str()), (EXIT_OK, "56\n"));
    assert_eq!(gaptile(&["threshold", "1", "1"], "").stdout, "48\n");
    assert_eq!(gaptile(&["threshold", "0", "1"], "").code, EXIT_REJECT);
}

#[test]
fn tile_pipes_into_verify() {
    let t = gaptile(&["tile", "1", "1", "48"], "");
    assert_eq!(t.code, EXIT_OK, "{}", t.stderr);
    let v = gaptile(&["verify", "-"], &t.stdout);
    assert_eq!((v.code, v.stdout.as_str()), (EXIT_OK, "accept\n"));
}

#[test]
fn tile_json_has_schema_and_meta() {
    let t = gaptile(&["tile", "2", "4", "216", "--json"], "");
    let doc: TilingDocument = serde_json::from_str(&t.stdout).unwrap();
    assert_eq!(doc.gaps, vec![2, 4, 216]);
    let meta = doc.meta.clone().unwrap();
    assert_eq!(doc.interval, [meta.d + 1, meta.height * 216 + meta.d]);
    assert_eq!(doc.parts.len() as i64 * 4, meta.height * 216);
    assert!(doc.parts.windows(2).all(|w| w[0][0] < w[1][0]));
    assert!(doc.verify().unwrap().is_accept());
}

#[test]
fn tile_orders_p_and_q_and_can_sort_all_gaps() {
    let swapped = gaptile(&["tile", "2", "1", "56"], "");
    let doc: TilingDocument = serde_json::from_str(&swapped.stdout).unwrap();
    assert_eq!(doc.gaps, vec![1, 2, 56]);

    assert_eq!(gaptile(&["tile", "56", "1", "2"], "").code, EXIT_REJECT);
    let sorted = gaptile(&["tile", "56", "1", "2", "--sort-gaps"], "");
    assert_eq!(sorted.stdout, swapped.stdout);
}

#[test]
fn tile_below_threshold_is_unsupported() {
    let o = gaptile(&["tile", "1", "2", "55"], "");
    assert_eq!(o.code, EXIT_REJECT);
    assert!(o.stdout.is_empty());
    assert!(o.stderr.contains("56"), "{}", o.stderr);
}

#[test]
fn tile_text_lists_parts() {
    let o = gaptile(&["tile", "1", "1", "48", "--text"], "");
    assert_eq!(o.code, EXIT_OK);
    let lines: Vec<&str> = o.stdout.lines().collect();
    assert!(lines[0].starts_with("gaps (1, 1, 48)"));
    assert!(lines[0].ends_with("height 4"));
    assert_eq!(lines.len() - 1, 48 * 4 / 4);
    assert!(lines[1..].iter().all(|l| l.split(' ').count() == 4));
}

#[test]
fn verify_reports_rejections() {
    let doc = r#"{"gaps":[1,1,1],"interval":[1,8],"parts":[[1,2,3,4],[6,7,8,9]]}"#;
    let o = gaptile(&["verify", "-"], doc);
    assert_eq!(o.code, EXIT_REJECT);
    assert!(o.stderr.contains("reject"), "{}", o.stderr);

    let wrong_gaps = r#"{"gaps":[1,1,2],"interval":[1,4],"parts":[[1,2,3,4]]}"#;
    assert_eq!(gaptile(&["verify", "-"], wrong_gaps).code, EXIT_REJECT);

    let ok = r#"{"gaps":[1,1,1],"interval":[1,8],"parts":[[1,2,3,4],[5,6,7,8]]}"#;
    assert_eq!(gaptile(&["verify", "-"], ok).code, EXIT_OK);
}

#[test]
fn malformed_documents_are_rejected() {
    assert_eq!(gaptile(&["verify", "-"], "not json").code, EXIT_REJECT);
    assert_eq!(gaptile(&["verify", "/nonexistent/tiling.json"], "").code, EXIT_REJECT);
    assert_eq!(gaptile(&["render", "-"], "{}").code, EXIT_REJECT);
}

#[test]
fn every_layer_round_trips_through_verify_covering() {
    for (kind, p, q) in [
        ("X1", 1, 2),
        ("X2", 1, 3),
        ("X1", 2, 5),
        ("Y1", 2, 3),
        ("Y2", 3, 5),
        ("Y2", 2, 2),
    ] {
        let l = gaptile(&["layer", kind, &p.to_string(), &q.to_string()], "");
        assert_eq!(l.code, EXIT_OK, "{kind}({p},{q}): {}", l.stderr);
        let v = gaptile(&["verify-covering", "-"], &l.stdout);
        assert_eq!(v.code, EXIT_OK, "{kind}({p},{q}): {}", v.stderr);
    }
    assert_eq!(gaptile(&["layer", "X1", "2", "3"], "").code, EXIT_REJECT);
}

#[test]
fn verify_covering_rejects_a_tampered_covering() {
    let mut json: serde_json::Value = serde_json::to_value(base_covering(BaseId::S1).unwrap()).unwrap();
    json["height"] = 8.into();
    let o = gaptile(&["verify-covering", "-"], &json.to_string());
    assert_eq!(o.code, EXIT_REJECT);
    assert!(o.stderr.contains("reject"));
}

#[test]
fn render_s1() {
    let s1 = serde_json::to_string(&base_covering(BaseId::S1).unwrap()).unwrap();
    let o = gaptile(&["render", "-"], &s1);
    assert_eq!(o.code, EXIT_OK);
    let lines: Vec<&str> = o.stdout.lines().collect();
    // height × (rows + header)
    assert_eq!(lines.len(), 4 * (2 + 1));
    assert_eq!(lines.iter().filter(|l| l.starts_with("z = ")).count(), 4);
    let mut labels: Vec<&str> = lines
        .iter()
        .filter(|l| !l.starts_with("z = "))
        .flat_map(|l| l.split_whitespace())
        .collect();
    assert_eq!(labels.iter().filter(|&&t| t == ".").count(), 4);
    labels.retain(|&t| t != ".");
    labels.sort_unstable();
    labels.dedup();
    assert_eq!(labels, ["1", "2", "3"]);
}

#[test]
fn render_line_count_matches_layer_shape() {
    let l = gaptile(&["layer", "Y1", "2", "3"], "");
    let c: Covering = serde_json::from_str(&l.stdout).unwrap();
    let rows = {
        let ys: Vec<i64> = c.cells().iter().map(|&(_, y)| y).collect();
        ys.iter().max().unwrap() - ys.iter().min().unwrap() + 1
    };
    let o = gaptile(&["render", "-"], &l.stdout);
    assert_eq!(o.stdout.lines().count() as i64, c.height() * (rows + 1));
}

#[test]
fn oracle_gaps_finds_least_interval() {
    let o = gaptile(&["oracle", "gaps", "1,1,1", "--max-n", "20"], "");
    assert_eq!(o.code, EXIT_OK);
    let doc: TilingDocument = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(doc.interval, [1, 4]);
    assert!(doc.verify().unwrap().is_accept());

    let o = gaptile(&["oracle", "gaps", "1,1", "--max-n", "20"], "");
    let doc: TilingDocument = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(doc.interval, [1, 3]);
}

#[test]
fn oracle_gaps_reports_failure_and_budget() {
    // parts of size 4 cannot tile [1, 3]
    assert_eq!(
        gaptile(&["oracle", "gaps", "1,1,1", "--max-n", "3"], "").code,
        EXIT_REJECT
    );
    let o = gaptile(&["oracle", "gaps", "1,2,30", "--max-n", "200", "--budget", "50"], "");
    assert_eq!(o.code, EXIT_REJECT);
    assert!(o.stderr.contains("budget"), "{}", o.stderr);
    assert_eq!(
        gaptile(&["oracle", "gaps", "1,2,3", "--max-n", "8", "--budget", "0"], "").code,
        EXIT_REJECT
    );
}

#[test]
fn oracle_cover_output_verifies() {
    let shape = "[[1,1],[1,2],[2,2]]";
    let dir = std::env::temp_dir().join(format!("gaptile-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("shape.json");
    std::fs::write(&path, shape).unwrap();
    let p = path.to_str().unwrap();

    let o = gaptile(
        &["oracle", "cover", "--shape", p, "--height", "4", "--family", "axis"],
        "",
    );
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert_eq!(gaptile(&["verify-covering", "-"], &o.stdout).code, EXIT_OK);

    let o = gaptile(
        &[
            "oracle",
            "cover",
            "--shape",
            p,
            "--height",
            "4",
            "--family",
            "skew:1+axis:1",
        ],
        "",
    );
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);

    // 3 cells × height 3 is not a multiple of 4
    let o = gaptile(
        &["oracle", "cover", "--shape", p, "--height", "3", "--family", "axis"],
        "",
    );
    assert_eq!(o.code, EXIT_REJECT);
    assert_eq!(
        gaptile(
            &["oracle", "cover", "--shape", p, "--height", "4", "--family", "axis:0"],
            ""
        )
        .code,
        EXIT_REJECT
    );
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_64() {
    for args in [
        &["tile", "1", "1"][..],
        &["bogus"],
        &["tile", "a", "1", "48"],
        &["layer", "Z9", "1", "2"],
        &[],
    ] {
        let o = gaptile(args, "");
        assert_eq!(o.code, EXIT_USAGE, "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    assert_eq!(
        gaptile(&["tile", "1", "1", "48", "--json", "--text"], "").code,
        EXIT_USAGE
    );
}

#[test]
fn help_and_version_succeed() {
    let h = gaptile(&["--help"], "");
    assert_eq!(h.code, EXIT_OK);
    assert!(h.stdout.contains("verify-covering"));
    assert_eq!(gaptile(&["--version"], "").code, EXIT_OK);
}
