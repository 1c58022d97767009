use std::path::PathBuf;

use cdclab::cli::{cli_main, EXIT_BUDGET, EXIT_FAILED, EXIT_OK, EXIT_USAGE};

fn run(args: &[&str]) -> i32 {
    cli_main(std::iter::once("cdclab").chain(args.iter().copied()))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cdclab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn data(name: &str) -> String {
    format!("{}/examples/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn show_and_dual() {
    assert_eq!(run(&["show", "cube", "--json"]), EXIT_OK);
    let out = scratch("dual.json");
    assert_eq!(
        run(&["dual", "cube", "--out", out.to_str().unwrap()]),
        EXIT_OK
    );
    let dual = format!("@{}", out.display());
    assert_eq!(run(&["show", &dual]), EXIT_OK);
}

#[test]
fn surgeries() {
    let out = scratch("trunc.json");
    let corr = scratch("trunc.corr.json");
    let args = [
        "truncate",
        "k4",
        "--all",
        "--out",
        out.to_str().unwrap(),
        "--correspondence",
        corr.to_str().unwrap(),
    ];
    assert_eq!(run(&args), EXIT_OK);
    assert!(std::fs::read_to_string(&corr)
        .unwrap()
        .contains("correspondence"));
    assert_eq!(run(&["truncate", "k4", "--vertex", "1"]), EXIT_OK);
    assert_eq!(run(&["augment", "cube", "--all"]), EXIT_OK);
    assert_eq!(run(&["augment", "cube", "--face", "99"]), EXIT_USAGE);
}

#[test]
fn apollonian_generate_and_check() {
    let out = scratch("apollonian.json");
    assert_eq!(
        run(&[
            "apollonian",
            "generate",
            "--stacks",
            "6",
            "--seed",
            "3",
            "--out",
            out.to_str().unwrap()
        ]),
        EXIT_OK
    );
    assert_eq!(
        run(&["apollonian", "check", out.to_str().unwrap()]),
        EXIT_OK
    );
    let cube = scratch("cube.json");
    std::fs::write(&cube, cdclab::corpus::cube().to_json()).unwrap();
    assert_eq!(
        run(&["apollonian", "check", cube.to_str().unwrap()]),
        EXIT_FAILED
    );
}

#[test]
fn cdc_commands() {
    let out = scratch("covers.json");
    assert_eq!(
        run(&[
            "cdc",
            "enumerate",
            "wheel:4",
            "--out",
            out.to_str().unwrap()
        ]),
        EXIT_OK
    );
    assert_eq!(run(&["cdc", "enumerate", "prism", "--all"]), EXIT_OK);
    assert_eq!(
        run(&[
            "cdc",
            "validate",
            "octahedron",
            "--cover",
            &data("paper_k222.json")
        ]),
        EXIT_OK
    );
    assert_eq!(
        run(&["cdc", "enumerate", "octahedron", "--max-edges", "6"]),
        EXIT_BUDGET
    );
    assert_eq!(
        run(&["cdc", "enumerate", "hexprism", "--budget", "0"]),
        EXIT_BUDGET
    );
}

#[test]
fn verify_commands() {
    assert_eq!(run(&["verify", "square", "cube"]), EXIT_OK);
    assert_eq!(run(&["verify", "prop41", "--seeds", "0..1"]), EXIT_OK);
    assert_eq!(run(&["verify", "prop41", "--seeds", "1..2"]), EXIT_FAILED);
}

#[test]
fn census_on_small_corpus() {
    let out = scratch("census.json");
    assert_eq!(
        run(&[
            "census",
            "--corpus",
            "k4;prism;wheel:4",
            "--out",
            out.to_str().unwrap()
        ]),
        EXIT_OK
    );
    assert!(std::fs::read_to_string(&out).unwrap().contains("report/v1"));
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["show", "nonsense"]), EXIT_USAGE);
    assert_eq!(run(&["no-such-command"]), EXIT_USAGE);
}
