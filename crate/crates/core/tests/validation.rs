mod common;

use mmi_core::{Error, Resolution};
use serde_json::json;

fn load(value: serde_json::Value) -> Result<Resolution, Error> {
    Resolution::from_json(&value.to_string())
}

#[test]
fn example_loads() {
    let res = common::example();
    assert_eq!(res.ideal_count(), 2);
    assert!(res.is_m_primary());
    assert!(res.is_dicritical(1) && res.is_dicritical(4));
}

#[test]
fn rejects_malformed_documents() {
    assert!(matches!(Resolution::from_json("{"), Err(Error::Input(_))));
    assert!(matches!(
        load(json!({"exceptional": [], "extra": 1})),
        Err(Error::Input(_))
    ));
}

#[test]
fn rejects_bad_graphs() {
    let two_minus_one = json!({
        "exceptional": [{"id": "A", "self": -1}, {"id": "B", "self": -1}],
        "edges": [["A", "B"]],
        "ideals": [{"name": "a", "mult": {"A": 1, "B": 1}}]
    });
    assert!(matches!(load(two_minus_one), Err(Error::NotNegativeDefinite { .. })));

    let cycle = json!({
        "exceptional": [{"id": "A", "self": -3}, {"id": "B", "self": -3}, {"id": "C", "self": -3}],
        "edges": [["A", "B"], ["B", "C"], ["C", "A"]],
        "ideals": [{"name": "a", "mult": {"A": 1, "B": 1, "C": 1}}]
    });
    assert!(matches!(load(cycle), Err(Error::NotATree { .. })));

    let dangling = json!({
        "exceptional": [{"id": "A", "self": -1}],
        "edges": [["A", "Z"]],
        "ideals": [{"name": "a", "mult": {"A": 1}}]
    });
    assert!(matches!(load(dangling), Err(Error::DanglingReference { .. })));
}

#[test]
fn rejects_bad_ideals() {
    let base = |mult: serde_json::Value| {
        json!({
            "exceptional": [{"id": "A", "self": -2}, {"id": "B", "self": -1}],
            "edges": [["A", "B"]],
            "ideals": [{"name": "a", "mult": mult}]
        })
    };
    assert!(matches!(load(base(json!({"A": 0, "B": 1}))), Err(Error::NotAntinef { .. })));
    assert!(matches!(load(base(json!({}))), Err(Error::ZeroIdeal(_))));
    assert!(matches!(
        load(base(json!({"A": -1, "B": 1}))),
        Err(Error::NegativeMultiplicity(_))
    ));
    assert!(load(base(json!({"A": 1, "B": 2}))).is_ok());
    let no_ideals = json!({"exceptional": [{"id": "A", "self": -1}]});
    assert!(matches!(load(no_ideals), Err(Error::NoIdeals)));
}

#[test]
fn affine_components_enter_excesses_and_optional_walls() {
    // The ideal (x) on the blow-up of the origin: E with multiplicity 1 and
    // the strict transform of {x = 0} with multiplicity 1.
    let value = json!({
        "exceptional": [{"id": "E", "self": -1}],
        "affine": [{"id": "L", "meets": ["E"]}],
        "ideals": [{"name": "x", "mult": {"E": 1, "L": 1}}]
    });
    let res = load(value).unwrap();
    assert!(!res.is_m_primary());
    assert_eq!(res.ideals().excess(0, 0), &0.into());
    assert!(res.wall_components().is_empty());
    let with = res.clone().with_affine_walls(true);
    assert_eq!(with.wall_components(), vec![1]);
    // Jumping numbers of a principal smooth curve are the positive integers.
    let chain = res
        .wall_ray_restriction(&[1.into()], &mmi_core::rational::int(3))
        .unwrap();
    assert_eq!(chain, (1..=3).map(mmi_core::rational::int).collect::<Vec<_>>());
}
