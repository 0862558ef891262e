use std::process::{Command, Output};

fn mathieu(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mathieu"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn map(name: &str) -> String {
    format!("{}/maps/{}", env!("CARGO_MANIFEST_DIR"), name)
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = args.to_vec();
    all.push("--json");
    let out = mathieu(&all);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn dim_examples() {
    for (n, w, d) in [("3", "1,1", "8"), ("3", "0,0", "1"), ("4", "2,0,0", "10")] {
        let v = json(&["dim", "--n", n, "--weight", w]);
        assert_eq!(v["dim"], d);
        assert_eq!(
            v["input"]["weight"].as_array().unwrap().len(),
            w.split(',').count()
        );
    }
    let text = stdout(&mathieu(&["dim", "--n", "3", "--weight", "1,1"]));
    assert!(text.contains("dim: 8") && text.contains("partition: (2,1,0)"));
}

#[test]
fn dim_rejects_non_dominant() {
    let out = mathieu(&["dim", "--n", "3", "--weight", "-1,2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not dominant"));
    let out = mathieu(&["dim", "--n", "3", "--weight", "1,1,1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn decompose_examples() {
    let v = json(&["decompose", "--n", "3", "--lhs", "1,0", "--rhs", "0,1"]);
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    assert_eq!(terms[0]["weight"], serde_json::json!([1, 1]));
    assert_eq!(terms[1]["weight"], serde_json::json!([0, 0]));
    assert_eq!(v["dimension_conserved"], true);

    let v = json(&["decompose", "--n", "3", "--lhs", "2,1", "--rhs", "0,0"]);
    assert_eq!(v["terms"].as_array().unwrap().len(), 1);

    let text = stdout(&mathieu(&[
        "decompose",
        "--n",
        "3",
        "--lhs",
        "1,0",
        "--rhs",
        "1,0",
    ]));
    assert!(text.contains("{(2,0): 1, (0,1): 1}"), "{text}");
    assert!(text.contains("3 x 3 = 9 (ok)"));
}

#[test]
fn weights_and_minuscule() {
    let v = json(&["weights", "--n", "3", "--weight", "1,1"]);
    assert_eq!(v["total"], 8);
    assert_eq!(v["weights"].as_array().unwrap().len(), 7);

    let v = json(&["minuscule", "--n", "5"]);
    assert_eq!(v["tests_agree"], true);
    let minuscule: Vec<_> = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["pairing_test"] == true)
        .map(|r| r["weight"].clone())
        .collect();
    assert_eq!(minuscule.len(), 4);

    let v = json(&["minuscule", "--n", "3", "--weight", "1,1"]);
    assert_eq!(v["results"][0]["orbit_test"], false);
}

#[test]
fn invert_examples() {
    let text = stdout(&mathieu(&[
        "invert",
        "--map",
        &map("catalan.map"),
        "--degree",
        "4",
    ]));
    assert!(text.contains("F1 = x2^2 + x1"), "{text}");
    assert!(text.contains("F2 = x2\n"));
    assert!(text.contains("methods agree: true"));

    let v = json(&[
        "invert",
        "--map",
        &map("identity.map"),
        "--degree",
        "5",
        "--method",
        "fixpoint",
    ]);
    let comps = v["inverse"]["F"].as_array().unwrap();
    for (i, c) in comps.iter().enumerate() {
        assert_eq!(c["poly"], format!("x{}", i + 1));
    }
    assert!(v.get("methods_agree").is_none());

    for m in ["nilpotent.map", "tame3.map", "cubic.map"] {
        let text = stdout(&mathieu(&[
            "invert",
            "--map",
            &map(m),
            "--degree",
            "9",
            "--method",
            "both",
        ]));
        assert!(text.contains("methods agree: true"), "{m}: {text}");
    }
}

#[test]
fn verify_q_examples() {
    let v = json(&["verify-q", "--map", &map("catalan.map"), "--kmax", "3"]);
    let recs = v["records"].as_array().unwrap();
    assert_eq!(recs.len(), 3);
    assert!(recs
        .iter()
        .all(|r| r["div_zero"] == true && r["psi_matches_inverse"] == true));
    assert_eq!(v["psi_zero_from"], 2);

    let v = json(&["verify-q", "--map", &map("identity.map"), "--kmax", "4"]);
    assert!(v["records"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["psi_is_zero"] == true && r["div_zero"] == true));

    let out = mathieu(&["verify-q", "--map", &map("non_keller.map")]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("det J(f) = 2*x1 + 1"));
}

#[test]
fn mathieu_scan_examples() {
    let text = stdout(&mathieu(&[
        "mathieu-scan",
        "--n",
        "2",
        "--f",
        "[1]",
        "--h",
        "[1]",
        "--nmax",
        "6",
    ]));
    assert!(text.contains("finite-horizon evidence"));
    let v = json(&[
        "mathieu-scan",
        "--n",
        "2",
        "--f",
        "[1]",
        "--h",
        "[1]",
        "--nmax",
        "6",
    ]);
    let a: Vec<_> = v["report"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["a_n"].as_str().unwrap().to_string())
        .collect();
    let b: Vec<_> = v["report"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["b_n"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(a, ["0", "1", "0", "2", "0", "5"]);
    assert_eq!(b, ["1", "0", "2", "0", "5", "0"]);
    assert_eq!(v["label"], "finite-horizon evidence");

    let v = json(&[
        "mathieu-scan",
        "--n",
        "3",
        "--f",
        "[1,0]",
        "--h",
        "[0,1]",
        "--nmax",
        "4",
    ]);
    let a: Vec<_> = v["report"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["a_n"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(a, ["0", "0", "1", "0"]);

    let v = json(&["mathieu-scan", "--n", "2", "--f", "0", "--nmax", "3"]);
    assert_eq!(v["report"]["hypothesis_holds"], true);
    assert_eq!(v["report"]["b_vanishes_from"], 1);
}

#[test]
fn error_exit_codes() {
    assert_eq!(
        mathieu(&["dim", "--n", "3", "--weight", "1,1", "--bogus"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(mathieu(&[]).status.code(), Some(2));
    assert_eq!(
        mathieu(&["invert", "--map", "/nonexistent.map"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        mathieu(&["mathieu-scan", "--n", "9", "--f", "[1,0,0,0,0,0,0,0]"])
            .status
            .code(),
        Some(4)
    );
    assert_eq!(
        mathieu(&["mathieu-scan", "--n", "2", "--f", "[1]", "--nmax", "45"])
            .status
            .code(),
        Some(4)
    );
    assert_eq!(
        mathieu(&["verify-q", "--map", &map("catalan.map"), "--kmax", "64"])
            .status
            .code(),
        Some(4)
    );
    let out = mathieu(&["mathieu-scan", "--n", "2", "--f", "[1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let args = [
        "decompose",
        "--n",
        "4",
        "--lhs",
        "1,1,0",
        "--rhs",
        "0,1,1",
        "--json",
    ];
    assert_eq!(mathieu(&args).stdout, mathieu(&args).stdout);
    let m = map("tame3.map");
    let args = ["verify-q", "--map", m.as_str(), "--kmax", "4"];
    assert_eq!(mathieu(&args).stdout, mathieu(&args).stdout);
}
