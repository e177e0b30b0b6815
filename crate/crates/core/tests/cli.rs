use qlogic::cli::run;
use qlogic::datasets;
use qlogic::io::{parse_structure, structure_to_json};
use qlogic::{emit_dot, evaluate_structure, ks_search, Mode, Scope};

fn qlogic(args: &[&str]) -> qlogic::cli::Outcome {
    run(std::iter::once("qlogic").chain(args.iter().copied()))
}

#[test]
fn eval_golden_reports() {
    let out = qlogic(&[
        "eval",
        "--dataset",
        "pauli-qubit",
        "--state",
        "1,0",
        "--mode",
        "invariant",
    ]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, include_str!("golden/qubit_up_invariant.txt"));
    let out = qlogic(&[
        "eval",
        "--dataset",
        "pauli-qubit",
        "--state",
        "1,0",
        "--mode",
        "hilbert",
    ]);
    assert_eq!(out.stdout, include_str!("golden/qubit_up_hilbert.txt"));
    let out = qlogic(&[
        "eval",
        "--dataset",
        "pauli-qubit",
        "--state",
        "1,0",
        "--mode",
        "invariant",
        "--format",
        "structured",
    ]);
    assert_eq!(out.stdout, include_str!("golden/qubit_up_invariant.json"));
}

#[test]
fn eval_cabello() {
    let out = qlogic(&[
        "eval",
        "--dataset",
        "cabello-3",
        "--state",
        "0,0,0,1",
        "--mode",
        "invariant",
    ]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("allocated: S1 S2\n"));
    // Σ6 atoms are undetermined, including the 1+2+3 member ker(P6_4).
    for id in ["S6.1 ", "S6.2 ", "S6.3 ", "S6.4 ", "S6.1+2+3 "] {
        let line = out.stdout.lines().find(|l| l.starts_with(id)).unwrap();
        assert!(line.contains("= 0/0"), "{line}");
    }
}

#[test]
fn hasse_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.dot");
    let p = path.to_str().unwrap();
    let out = qlogic(&[
        "hasse",
        "--dataset",
        "pauli-qubit",
        "--state",
        "1,0",
        "--mode",
        "invariant",
        "--scope",
        "Sigma_x",
        "-o",
        p,
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.is_empty());
    let dot = std::fs::read_to_string(&path).unwrap();
    assert_eq!(dot.matches("shape=circle style=solid").count(), 2);
    assert!(dot.starts_with("digraph \"Sigma_x\" {\n  rankdir=BT;\n"));
}

#[test]
fn ks_search_output() {
    let out = qlogic(&["ks-search", "--dataset", "cabello-3"]);
    assert_eq!(out.code, 0);
    let mut lines = out.stdout.lines();
    assert_eq!(lines.next(), Some("count: 40"));
    assert_eq!(lines.next(), Some("S1:1 S2:1 S6:1"));
    assert_eq!(out.stdout.lines().count(), 41);
    assert_eq!(out, qlogic(&["ks-search", "--dataset", "cabello-3"]));

    let s = qlogic(&["ks-search", "--dataset", "pauli-qubit", "--format", "structured"]);
    let v: serde_json::Value = serde_json::from_str(&s.stdout).unwrap();
    assert_eq!(v["count"], 8);
    assert_eq!(v["assignments"][0][2]["context"], "Sigma_y");
}

#[test]
fn admissibility_output() {
    let out = qlogic(&[
        "admissibility",
        "--dataset",
        "pauli-qubit",
        "--state",
        "1,0",
        "--mode",
        "hilbert",
    ]);
    assert_eq!(
        out.stdout,
        "Sigma_z: true=1 false=1 gap=0 rule1=Satisfied rule2=Satisfied\n\
         Sigma_x: true=0 false=2 gap=0 rule1=Vacuous rule2=Satisfied note=NoTrueAtom\n\
         Sigma_y: true=0 false=2 gap=0 rule1=Vacuous rule2=Satisfied note=NoTrueAtom\n\
         overall: rule1=holds rule2=holds\n"
    );
    let s = qlogic(&[
        "admissibility",
        "--dataset",
        "cabello-3",
        "--state",
        "0,0,0,1",
        "--mode",
        "invariant",
        "--format",
        "structured",
    ]);
    let v: serde_json::Value = serde_json::from_str(&s.stdout).unwrap();
    assert_eq!(v["contexts"][2]["rule1"], "Vacuous");
    assert_eq!(v["contexts"][0]["true_count"], 1);
}

#[test]
fn lattice_and_datasets() {
    let out = qlogic(&["lattice", "--dataset", "pauli-qubit", "--context", "Sigma_z"]);
    assert_eq!(
        out.stdout,
        "lattice Sigma_z (4 members)\n  0    dim 0  {0}\n  2    dim 1  span{(0, 1)}\n  1    dim 1  span{(1, 0)}\n  1+2  dim 2  span{(1, 0), (0, 1)}\n"
    );
    let s = qlogic(&["lattice", "--dataset", "cabello-3", "--format", "structured"]);
    let v: serde_json::Value = serde_json::from_str(&s.stdout).unwrap();
    assert_eq!(v["lattices"].as_array().unwrap().len(), 3);
    assert_eq!(v["lattices"][0]["members"][1]["basis"][0][3], "1");

    assert_eq!(qlogic(&["datasets", "list"]).stdout, "pauli-qubit\ncabello-3\n");
}

#[test]
fn exported_dataset_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for name in datasets::NAMES {
        let path = dir.path().join(format!("{name}.json"));
        let p = path.to_str().unwrap();
        assert_eq!(qlogic(&["datasets", "export", name, "-o", p]).code, 0);
        let v = qlogic(&["validate", p]);
        assert_eq!(v.code, 0, "{}", v.stderr);
        assert!(v.stdout.starts_with("ok: dimension"));

        let builtin = datasets::by_name(name).unwrap();
        let loaded = parse_structure(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(loaded.lattices(), builtin.lattices());
        let state: Vec<_> = (0..builtin.ambient_dim())
            .map(|i| qlogic::GaussianRational::from(i as i64 + 1))
            .collect();
        for mode in [Mode::Invariant, Mode::HilbertSublattice] {
            let a = evaluate_structure(&builtin, &state, mode).unwrap();
            let b = evaluate_structure(&loaded, &state, mode).unwrap();
            assert_eq!(a, b);
            assert_eq!(emit_dot(&builtin, &a, &Scope::All), emit_dot(&loaded, &b, &Scope::All));
        }
        assert_eq!(ks_search(&builtin), ks_search(&loaded));

        // The file source gives the same report as the dataset source.
        let ones = vec!["1"; builtin.ambient_dim()].join(",");
        let from_file = qlogic(&["eval", p, "--state", &ones, "--mode", "hilbert"]);
        let from_builtin = qlogic(&["eval", "--dataset", name, "--state", &ones, "--mode", "hilbert"]);
        assert_eq!(from_file, from_builtin);
    }
    assert_eq!(structure_to_json(&datasets::cabello_3()).lines().next(), Some("{"));
}

#[test]
fn error_paths_are_nonzero_and_write_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("out.txt");
    let t = target.to_str().unwrap();

    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"dimension": 2, "contexts": [{"name": "C", "projectors": [
            {"name": "a", "matrix": [["1","0"],["0","0"]]},
            {"name": "b", "matrix": [["0","0"],["0","0"]]}]}]}"#,
    )
    .unwrap();
    let incomplete = dir.path().join("incomplete.json");
    std::fs::write(
        &incomplete,
        r#"{"dimension": 3, "contexts": [{"name": "Half", "projectors": [
            {"name": "a", "matrix": [["1","0","0"],["0","0","0"],["0","0","0"]]},
            {"name": "b", "matrix": [["0","0","0"],["0","1","0"],["0","0","0"]]}]}]}"#,
    )
    .unwrap();
    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{ not json").unwrap();

    let cases: Vec<(Vec<&str>, i32)> = vec![
        (
            vec![
                "eval",
                "--dataset",
                "nope",
                "--state",
                "1",
                "--mode",
                "hilbert",
                "-o",
                t,
            ],
            2,
        ),
        (
            vec![
                "eval",
                "--dataset",
                "pauli-qubit",
                "--state",
                "0,0",
                "--mode",
                "hilbert",
                "-o",
                t,
            ],
            2,
        ),
        (
            vec![
                "eval",
                "--dataset",
                "pauli-qubit",
                "--state",
                "1,x",
                "--mode",
                "hilbert",
                "-o",
                t,
            ],
            2,
        ),
        (
            vec![
                "eval",
                "--dataset",
                "pauli-qubit",
                "--state",
                "1,0,0",
                "--mode",
                "hilbert",
                "-o",
                t,
            ],
            2,
        ),
        (
            vec![
                "eval",
                "--dataset",
                "pauli-qubit",
                "--state",
                "1,0",
                "--mode",
                "fuzzy",
                "-o",
                t,
            ],
            2,
        ),
        (
            vec!["eval", "--dataset", "pauli-qubit", "--mode", "hilbert", "-o", t],
            2,
        ),
        (vec!["eval", "--state", "1,0", "--mode", "hilbert", "-o", t], 2),
        (
            vec![
                "hasse",
                "--dataset",
                "pauli-qubit",
                "--state",
                "1,0",
                "--mode",
                "hilbert",
                "--scope",
                "Sigma_q",
                "-o",
                t,
            ],
            2,
        ),
        (
            vec!["lattice", "--dataset", "pauli-qubit", "--context", "Sigma_q", "-o", t],
            2,
        ),
        (vec!["frobnicate"], 2),
        (vec!["validate", bad.to_str().unwrap(), "-o", t], 1),
        (vec!["validate", incomplete.to_str().unwrap(), "-o", t], 1),
        (vec!["validate", garbage.to_str().unwrap(), "-o", t], 1),
        (vec!["validate", "/no/such/file.json", "-o", t], 1),
        (vec!["datasets", "export", "nope", "-o", t], 2),
    ];
    for (args, code) in cases {
        let out = qlogic(&args);
        assert_eq!(out.code, code, "{args:?}: {}", out.stderr);
        assert!(!out.stderr.is_empty(), "{args:?}");
        assert!(!target.exists(), "{args:?} wrote output");
    }
    let out = qlogic(&["validate", incomplete.to_str().unwrap()]);
    assert!(
        out.stderr
            .contains("context Half: projectors do not sum to the identity"),
        "{}",
        out.stderr
    );
    let out = qlogic(&[
        "eval",
        "--dataset",
        "pauli-qubit",
        "--state",
        "1,x",
        "--mode",
        "hilbert",
    ]);
    assert!(out.stderr.contains("--state"), "{}", out.stderr);
}

#[test]
fn negative_state_literals_are_accepted() {
    let out = qlogic(&[
        "eval",
        "--dataset",
        "pauli-qubit",
        "--state",
        "-1,1",
        "--mode",
        "invariant",
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("allocated: Sigma_x\n"));
}

#[test]
fn help_exits_zero() {
    let out = qlogic(&["--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("ks-search"));
}
