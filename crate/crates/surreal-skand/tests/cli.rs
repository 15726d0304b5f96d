use std::io::Write;
use std::process::{Command, Stdio};

use surreal_skand::cli::expr::evaluate;
use surreal_skand::cli::{run_line, run_lines, CliError, Options};

const TOUR: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/scripts/tour.sur");

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_surreal"))
}

#[test]
fn every_line_of_the_tour_succeeds() {
    let script = std::fs::read_to_string(TOUR).unwrap();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let opts = Options {
        strict: true,
        ..Options::default()
    };
    assert_eq!(
        run_lines(script.as_bytes(), &mut out, &mut err, &opts, false),
        0
    );
    assert!(err.is_empty(), "{}", String::from_utf8_lossy(&err));
    let out = String::from_utf8(out).unwrap();
    assert!(out.is_ascii());
    assert!(out.starts_with("w^2*1 + -1\neps[0]\n"));
}

#[test]
fn binary_runs_scripts_with_exit_codes() {
    let ok = bin().arg(TOUR).output().unwrap();
    assert!(ok.status.success());

    let dir = std::env::temp_dir().join(format!("surreal-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let empty = dir.join("empty.sur");
    std::fs::write(&empty, "").unwrap();
    let out = bin().arg(&empty).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());

    let bad = dir.join("bad.sur");
    std::fs::write(&bad, "nf w + 1\neval ln(-w)\nnf 2\n").unwrap();
    let out = bin().args(["--strict"]).arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "w*1 + 1\n");
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .starts_with("line 2:"));

    let missing = bin().arg(dir.join("missing.sur")).output().unwrap();
    assert_eq!(missing.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn binary_reads_commands_and_stdin() {
    let out = bin()
        .args(["--json", "-c", "eval w", "-c", "cmp 1, 2"])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<serde_json::Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines[0]["value"], "w*1");
    assert_eq!(lines[0]["class"], "positive infinite");
    assert_eq!(lines[1], serde_json::json!({ "cmp": "LT", "exact": true }));
    let bad = bin().args(["-c", "eval (1"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8(bad.stderr).unwrap().contains('^'));

    let mut child = bin()
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"ord add 1, w\n# done\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "w\n");
}

#[test]
fn json_and_text_agree() {
    let text = Options::default();
    let json = Options {
        json: true,
        ..Options::default()
    };
    for e in [
        "(w+1)*(w-1)",
        "exp(w*eps[0])",
        "1/(w+1)",
        "ω^(1/2) - 3/4",
        "ln(eps[0])",
        "{1/2|1}",
    ] {
        let line = format!("eval {e}");
        let t = run_line(&line, &text).unwrap();
        let j: serde_json::Value = serde_json::from_str(&run_line(&line, &json).unwrap()).unwrap();
        let from_json = evaluate(j["value"].as_str().unwrap(), 8).unwrap().num;
        let from_text = evaluate(t.trim_end_matches(" (truncated)"), 8).unwrap().num;
        assert_eq!(from_json, from_text, "{e}");
        assert_eq!(j["exact"].as_bool().unwrap(), !t.ends_with("(truncated)"));
        assert_eq!(
            run_line(&line, &text).unwrap(),
            t,
            "output is deterministic"
        );
    }
}

#[test]
fn rendered_values_parse_back() {
    let skand = run_line(
        "skand {a,{b,{...}}} @ [w, w^2) from w*3",
        &Options::default(),
    )
    .unwrap();
    assert_eq!(
        run_line(&format!("skand {skand} == {skand}"), &Options::default()).unwrap(),
        "true"
    );
    let ord = run_line("ord natmul w+2, w^2+1", &Options::default()).unwrap();
    assert_eq!(
        run_line(&format!("ord cmp {ord}, {ord}"), &Options::default()).unwrap(),
        "EQ"
    );
    let nf = run_line("nf (w^(1/2) + eps[1]) * (2 - w^-1)", &Options::default()).unwrap();
    assert_eq!(
        run_line(&format!("nf {nf}"), &Options::default()).unwrap(),
        nf
    );
}

#[test]
fn errors_carry_positions() {
    match run_line("ord add w+, 1", &Options::default()) {
        Err(CliError::Parse { pos, .. }) => assert_eq!(pos, 10),
        other => panic!("{other:?}"),
    }
    assert!(matches!(
        run_line("gap ordinal w+1", &Options::default()),
        Err(CliError::Domain(_))
    ));
    assert!(matches!(
        run_line("eval 1 --depth 0", &Options::default()),
        Err(CliError::Parse { .. })
    ));
}
