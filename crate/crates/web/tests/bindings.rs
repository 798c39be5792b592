use cbc_lab_web::{analyze, solve, theorem_color};
use serde_json::Value;

const C6: &str = r#"{"n":6,"edges":[[0,1],[1,2],[2,3],[3,4],[4,5],[0,5]],"backbone":[[0,1],[3,4]]}"#;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn classify_solve_and_color() {
    let a = parse(analyze(C6));
    assert!(a.get("error").is_none(), "{a}");

    let s = parse(solve(C6, 2, 0));
    assert_eq!(s["k"], 4);
    let s3 = parse(solve(C6, 2, 3));
    assert!(s3["colors"].is_null());

    for t in 1..=3 {
        let c = parse(theorem_color(C6, t));
        assert!(c.get("error").is_none(), "{c}");
    }
}

#[test]
fn errors_come_back_as_json() {
    assert!(parse(analyze("{")).get("error").is_some());
    let bad = r#"{"n":2,"edges":[[0,5]],"backbone":[]}"#;
    assert!(parse(solve(bad, 2, 0)).get("error").is_some());
    assert!(parse(theorem_color(C6, 9)).get("error").is_some());
}
