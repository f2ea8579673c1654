//! Byte-exact golden outputs for the worked figures, exercised through the
//! CLI binary so argv-to-stdout determinism is covered too.

use std::process::Command;

fn run(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_signedperm"))
        .args(args)
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).expect("utf8 output")
}

fn assert_golden(args: &[&str], golden: &str) {
    assert_eq!(run(args), golden, "args: {args:?}");
}

#[test]
fn board_renders_match_goldens() {
    let cases: &[(&str, &str, &str, &str)] = &[
        ("-2 3 1", "b", "ascii", include_str!("golden/bar231_b.txt")),
        ("-2 3 1", "b", "json", include_str!("golden/bar231_b.json")),
        ("-5 6 4 -3 -1 2", "b", "ascii", include_str!("golden/big6_b.txt")),
        ("-5 6 4 -3 -1 2", "b", "json", include_str!("golden/big6_b.json")),
        ("4 5 -3 1 2", "b", "ascii", include_str!("golden/basic45_b.txt")),
        ("4 5 -3 1 2", "b", "json", include_str!("golden/basic45_b.json")),
        ("1 5 -4 -3 2", "b", "ascii", include_str!("golden/nonbasic5_b.txt")),
        ("1 5 -4 -3 2", "b", "json", include_str!("golden/nonbasic5_b.json")),
        ("4 5 -3 1 2", "c", "ascii", include_str!("golden/basic45_c.txt")),
        ("1 5 -4 -3 2", "c", "ascii", include_str!("golden/nonbasic5_c.txt")),
    ];
    for (w, kind, format, golden) in cases {
        assert_golden(&["diagram", w, "--type", kind, "--format", format], golden);
        // `render` is an alias of `diagram`.
        assert_golden(&["render", w, "--type", kind, "--format", format], golden);
    }
}

#[test]
fn essential_set_json_matches_goldens() {
    assert_golden(
        &["ess", "-2 3 1", "--type", "b"],
        include_str!("golden/bar231_ess.json"),
    );
    assert_golden(
        &["ess", "-5 6 4 -3 -1 2", "--type", "b"],
        include_str!("golden/big6_ess.json"),
    );
}

#[test]
fn output_is_reproducible_per_argv() {
    for args in [
        vec!["verify", "theorem-a", "--samples", "5", "--seed", "3"],
        vec!["verify", "matrix-rank", "--n", "2", "--samples", "2"],
        vec!["rwy", "-2 1 3"],
        vec!["info", "-2 3 1"],
    ] {
        assert_eq!(run(&args), run(&args), "args: {args:?}");
    }
}

#[test]
fn svg_render_is_wellformed() {
    let svg = run(&["diagram", "-2 3 1", "--type", "b", "--format", "svg"]);
    assert!(svg.starts_with("<svg"));
    assert!(svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches("<circle").count(), 3);
}
