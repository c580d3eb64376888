use std::process::{Command, Output};

const E1: &str = "a*.(a*+<-1>b*)*";

fn ratexp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ratexp")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn derived_dot_for_the_running_example() {
    let o = ratexp(&["derived", E1, "--semiring", "int", "--alphabet", "a,b", "--format", "dot"]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph {"));
    assert_eq!(dot.matches("doublecircle").count(), 2);
    for edge in ["q0 -> q0 [label=\"2a\"]", "q0 -> q1 [label=\"-b\"]", "q1 -> q0 [label=\"a\"]"] {
        assert!(dot.contains(edge), "missing {edge} in\n{dot}");
    }
}

#[test]
fn eval_of_the_identity() {
    let o = ratexp(&["eval", "\\e", ""]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1\n");
}

#[test]
fn equiv_of_two_writings() {
    let o = ratexp(&["equiv", E1, "(<2>a+<-1>b.a)*.(\\e+<-1>b)", "--max-len", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = ratexp(&["equiv", E1, "(<2>a+<-1>b.a)*", "--max-len", "3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn standard_json() {
    let o = ratexp(&["standard", "a.b", "--semiring", "boolean"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["states"], serde_json::json!(["i", "1", "2"]));
    assert_eq!(v["final"], serde_json::json!({"2": "1"}));
    assert_eq!(v["transitions"][1], serde_json::json!({"from": "1", "to": "2", "weight": "1", "label": "b"}));
}

#[test]
fn series_terms_and_derivatives() {
    let o = ratexp(&["series", "(<2>a)*", "--max-len", "2"]);
    assert_eq!(stdout(&o), "1\t\\e\n2\ta\n4\taa\n");
    let o = ratexp(&["terms", E1]);
    assert_eq!(stdout(&o), "a*.(a*+<-1>b*)*\nb*.(a*+<-1>b*)*\n");
    let o = ratexp(&["derive", E1, "--letter", "a"]);
    assert_eq!(stdout(&o), "2\ta*.(a*+<-1>b*)*\n");
    let o = ratexp(&["differential", E1]);
    assert_eq!(stdout(&o), "2\ta\ta*.(a*+<-1>b*)*\n-1\tb\tb*.(a*+<-1>b*)*\n");
    let o = ratexp(&["reconcile", E1]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn witness_and_oracle() {
    let o = ratexp(&["witness", E1, "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("(1 0)\n(1 0)\n(1 0)\n(0 1)\n"), "{text}");
    assert!(text.ends_with("conjugate: true\n"));
    let o = ratexp(&["derived", E1, "--oracle", "--max-len", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("agrees up to length 5"));
}

#[test]
fn product_monoid_and_file_input() {
    let dir = std::env::temp_dir().join(format!("ratexp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("expr.txt");
    std::fs::write(&path, "(a|x)*\n").unwrap();
    let o = ratexp(&[
        "eval", "--file", path.to_str().unwrap(), "aa|xx", "--alphabet", "a", "--alphabet2", "x",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), "1\n");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn errors_exit_with_2() {
    let o = ratexp(&["derived", "(a+\\e)*"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("(a+\\e)*"));
    let o = ratexp(&["derived", "a+*"]);
    assert_eq!(o.status.code(), Some(2));
    let o = ratexp(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}
