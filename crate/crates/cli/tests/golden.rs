use std::process::{Command, Output};

use serde_json::Value;

fn opring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opring"))
        .args(args)
        .env_remove("OPRING_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = opring(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

fn golden(cases: &[(&[&str], &str)]) {
    for (args, want) in cases {
        assert_eq!(stdout(args), *want, "opring {}", args.join(" "));
    }
}

#[test]
fn differential_rule_at_small_coefficients() {
    golden(&[
        (&["nf", "--ring", "diff", "--weight", "0", "D*x"], "x*D + 1"),
        (&["nf", "--ring", "diff", "D*1"], "D"),
        (&["nf", "--ring", "diff", "D*x^2"], "x^2*D + 2*x"),
        (&["nf", "--ring", "diff", "--weight", "1", "D*x"], "x*D + D + 1"),
        (&["nf", "--ring", "diff", "--weight", "-1", "D*x"], "x*D - D + 1"),
        (&["nf", "--ring", "diff", "--weight", "1", "D*x^2"], "x^2*D + 2*x*D + D + 2*x + 1"),
    ]);
}

#[test]
fn rota_baxter_rule_at_small_coefficients() {
    golden(&[
        (&["nf", "--ring", "rb", "I*I"], "-I*x + x*I"),
        (&["nf", "--ring", "rb", "I*x*I"], "-1/2*I*x^2 + 1/2*x^2*I"),
        (&["nf", "--ring", "rb", "I*x^2*I"], "-1/3*I*x^3 + 1/3*x^3*I"),
        (&["nf", "--ring", "rb", "--weight", "1", "I*I"], "-I*x + x*I - I"),
        (&["nf", "--ring", "rb", "--weight", "-1", "I*I"], "-I*x + x*I + I"),
        (&["nf", "--ring", "drb", "D*I"], "1"),
        (&["nf", "--ring", "drb", "D*I*x*I"], "x*I"),
        (&["nf", "--ring", "drb", "I*x*I"], "-1/2*I*x^2 + 1/2*x^2*I"),
    ]);
}

#[test]
fn integro_differential_rule_at_small_coefficients() {
    golden(&[
        (&["nf", "--ring", "id", "I*D"], "-E + 1"),
        (&["nf", "--ring", "id", "I*x*D"], "-I + x"),
        (&["nf", "--ring", "id", "I*x^2*D"], "-2*I*x + x^2"),
        (&["nf", "--ring", "id", "--init", "2", "I*x*D"], "-I - 2*E + x"),
        (&["nf", "--ring", "id", "--init", "generic", "I*x*D"], "-eps*E - I + x"),
        (&["nf", "--ring", "id", "--init", "generic", "I*eps*x"], "eps*I*x"),
        (&["nf", "--ring", "id", "E*x"], "0"),
        (&["nf", "--ring", "id", "--init", "3", "E*x"], "3*E"),
    ]);
}

#[test]
fn polarization_examples() {
    golden(&[
        (&["polarize", "D{y*D{y}}"], "D{y#2*D{y#1}} + D{y#1*D{y#2}}"),
        (
            &["polarize", "x^2*y^2"],
            "x#2*x#1*y#2*y#1 + x#2*x#1*y#1*y#2 + x#1*x#2*y#2*y#1 + x#1*x#2*y#1*y#2",
        ),
        (&["polarize", "D{y^2} - 2*D{y}*y"], "D{y#2*y#1} - 2*D{y#2}*y#1 + D{y#1*y#2} - 2*D{y#1}*y#2"),
        (&["polarize", "--commutative", "x^2*y^2"], "4*x#1*x#2*y#1*y#2"),
        (&["polarize", "--commutative", "D{y^2} - 2*D{y}*y"], "2*D{y#1*y#2} - 2*y#2*D{y#1} - 2*y#1*D{y#2}"),
    ]);
}

#[test]
fn weyl_examples() {
    golden(&[
        (&["weyl-convert", "--from", "b3", "--to", "b2", "l*x"], "x*l - l^2"),
        (&["weyl-convert", "--from", "b1", "--to", "b2", "E"], "-l*D + 1"),
        (&["weyl-mul", "l", "x"], "x*l - l^2"),
        (&["weyl-mul", "l", "x^2"], "x^2*l - 2*x*l^2 + 2*l^3"),
        (&["weyl-mul", "D", "l"], "1"),
    ]);
}

#[test]
fn action_and_isomorphisms() {
    golden(&[
        (&["apply", "--ring", "id", "--init", "0", "I*x*D", "x^2+1"], "2/3*x^3"),
        (&["apply", "--ring", "id", "1 - I*D", "x^2 + 3"], "3"),
        (&["embed", "I*D"], "-E + 1"),
        (&["embed", "x*D^2"], "x*D^2"),
        (&["specialize", "--at", "0", "(1 - I*D)*x"], "0"),
        (&["specialize", "--at", "2", "(1 - I*D)*x"], "2*E"),
        (&["relator", "leibniz", "--ring", "diff", "--weight", "1", "--param", "x"], "D*x - x*D - D - 1"),
    ]);
}

#[test]
fn checks_pass_with_exit_zero() {
    for args in [
        &["check", "confluence", "--ring", "drb", "--samples", "100", "--seed", "7"][..],
        &["check", "oracle", "--ring", "rb", "--samples", "20"][..],
        &["check", "injectivity", "--bound", "2"][..],
        &["check", "bases", "--bound", "2"][..],
    ] {
        let out = opring(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
    }
}

#[test]
fn usage_and_parse_errors_exit_two() {
    for args in [
        &["nf", "--ring", "rb", "E"][..],
        &["nf", "--ring", "id", "eps*I"][..],
        &["nf", "--ring", "id", "x +"][..],
        &["nf", "--ring", "nope", "x"][..],
        &["nf", "--ring", "diff", "--init", "generic", "D"][..],
        &["frobnicate"][..],
    ] {
        let out = opring(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
    let err = String::from_utf8(opring(&["nf", "--ring", "id", "x + )"]).stderr).unwrap();
    assert!(err.contains("position 4"), "{err}");
}

#[test]
fn json_matches_text() {
    let args = ["nf", "--ring", "drb", "--format", "json", "I*x*I"];
    let value: Value = serde_json::from_str(&stdout(&args)).unwrap();
    assert_eq!(value["ring"], "drb");
    assert_eq!(value["weight"], "0/1");
    let terms = value["terms"].as_array().unwrap();
    for t in terms {
        assert!(t["scalar"].as_str().unwrap().contains('/'));
        assert!(t["word"].as_array().unwrap().iter().all(Value::is_string));
    }
    let parsed: opring::json::OpExprJson = serde_json::from_value(value).unwrap();
    let from_json = opring::json::opexpr_from_json(&parsed).unwrap();
    let text = stdout(&["nf", "--ring", "drb", "I*x*I"]);
    assert_eq!(from_json.to_string(), text);

    let weyl: Value = serde_json::from_str(&stdout(&["--format", "json", "weyl-mul", "l", "x"])).unwrap();
    assert_eq!(weyl["basis"], "b2");
    assert_eq!(weyl["terms"][0]["word"], serde_json::json!(["x^1", "l^1"]));
}

#[test]
fn seed_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_opring"))
        .args(["check", "oracle", "--ring", "drb", "--samples", "5"])
        .env("OPRING_SEED", "11")
        .output()
        .unwrap();
    assert!(out.status.success());
}
