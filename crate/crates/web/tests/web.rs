use serde_json::Value;
use vertexlab_web::{components, cy_vertex, quotient};

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn quotient_of_staircase() {
    let v = parse(&quotient(3, "3,2,1").unwrap());
    assert_eq!(v["kind"], "quotient");
    assert_eq!(v["core"], serde_json::json!([]));
    assert_eq!(v["quotient"], serde_json::json!([[1], [], [1]]));
    assert!(quotient(0, "1").is_err());
    assert!(quotient(2, "1,2").is_err());
}

#[test]
fn vertex_series_agree() {
    let v = parse(&cy_vertex("[[2],[1]]", 4).unwrap());
    assert_eq!(v["agree"], true);
    assert_eq!(v["topological"], v["mirror"]);
    assert!(cy_vertex("[[1]]", 99).is_err());
    assert!(cy_vertex("[[7]]", 3).is_err());
}

#[test]
fn components_carry_tvir_agreement() {
    let v = parse(&components("[[1],[1]]", 1).unwrap());
    let cs = v["components"].as_array().unwrap();
    assert!(!cs.is_empty());
    assert!(cs.iter().all(|c| c["tvir_agree"] == true));
    assert!(components("[[1],[1]]", 9).is_err());
    assert!(components("not json", 1).is_err());
}
