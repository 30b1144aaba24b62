use serde_json::json;
use vertexlab::charlab::*;
use vertexlab::cy_vertex::*;
use vertexlab::json;
use vertexlab::partitions::*;
use vertexlab::qm_components::*;

fn ch(terms: &[(&str, i64)]) -> Character {
    let r = VarRegistry::geometric();
    Character::from_terms(
        &r,
        terms
            .iter()
            .map(|(m, k)| (Character::parse_monomial(&r, m).unwrap(), *k)),
    )
}

#[test]
fn character_encoding() {
    let c = ch(&[("x^-2 y", 3)]);
    assert_eq!(
        json::character(&c),
        json!({"terms": [{"exps": {"x": -2, "y": 1}, "mult": 3}]})
    );
    let half = Character::monomial(&VarRegistry::geometric(), Monomial::from_exps2([(0, 1), (1, -3)]), -1);
    assert_eq!(
        json::character(&half),
        json!({"terms": [{"exps2": {"x": 1, "y": -3}, "mult": -1}]})
    );
    assert_eq!(json::character(&ch(&[])), json!({"terms": []}));
}

#[test]
fn multipartition_roundtrip() {
    let l = json::parse_multipartition("[[3,1],[],[2,2]]").unwrap();
    assert_eq!(l.m(), 3);
    assert_eq!(json::multipartition(&l), json!([[3, 1], [], [2, 2]]));
    for bad in ["[1,2]", "[[1,2]]", "[[0]]", "[[-1]]", "{}", "[[1.5]]", "nope", "[]"] {
        assert!(json::parse_multipartition(bad).is_err(), "{bad}");
    }
}

#[test]
fn series_encoding() {
    let s = cy_vertex_topological(&MultiPartition::new(vec![Partition::new(vec![1]).unwrap()]).unwrap(), 2).unwrap();
    assert_eq!(
        json::series(&s),
        json!({
            "order": 2, "vars": ["Q"], "weights": [1],
            "coeffs": [
                {"exps": {}, "num": 1, "den": 1},
                {"exps": {"Q": 1}, "num": 1, "den": 1},
                {"exps": {"Q": 2}, "num": 1, "den": 1},
            ]
        })
    );
}

#[test]
fn labeling_encoding() {
    let target = MultiPartition::new(vec![Partition::new(vec![1]).unwrap(), Partition::new(vec![1]).unwrap()]).unwrap();
    let l = HookLabeling::new(&target, &[vec![0, 1], vec![1, 1]]).unwrap();
    let v = json::envelope("component", json::labeling(&l));
    assert_eq!(v["schema"], "vertexlab/1");
    assert_eq!(v["kind"], "component");
    assert_eq!(v["degree"], json!([1, 2]));
    assert_eq!(v["curve_class"], json!({"n": 1, "beta": [1]}));
    assert_eq!(v["vdim"], 1);
    assert_eq!(v["labels"][1], json!({"leg": 1, "anchor": [0, 0], "by_color": [1, 1]}));
    // output is stable byte for byte
    assert_eq!(
        v.to_string(),
        json::envelope("component", json::labeling(&l)).to_string()
    );
}

#[test]
fn anchors_are_col_row() {
    let target = MultiPartition::single(2, 0, Partition::new(vec![1, 1]).unwrap());
    let l = HookLabeling::zero(&target);
    let v = json::labeling(&l);
    assert_eq!(v["labels"][1]["anchor"], json!([0, 1]));
}

#[test]
fn crc_encoding() {
    let c = crc_check(&Partition::new(vec![2, 1, 1]).unwrap(), 2, 4).unwrap();
    assert_eq!(
        json::crc(&c),
        json!({"sign": -1, "exps": [-1, 0], "monomial": "-z_0^-1", "holds": true})
    );
}
