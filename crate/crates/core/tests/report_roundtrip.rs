mod common;

use mmi_core::jumping::DEFAULT_DICHOTOMY_CAP;
use mmi_core::report::{
    self, CanonicalReport, EnumerationReport, MinimalJumpingDivisorReport, MmiReport,
    RegionReport, VerifyReport, WallsReport,
};
use mmi_core::OrthantPoint;
use proptest::prelude::*;
use serde::de::DeserializeOwned;
use serde::Serialize;

use common::{example, pt};

fn round_trip<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(x: &T) {
    let text = report::to_json(x);
    let back: T = serde_json::from_str(&text).unwrap();
    assert_eq!(&back, x);
    assert_eq!(report::to_json(&back), text);
}

#[test]
fn fixed_reports_round_trip() {
    let res = example();
    round_trip(&CanonicalReport::new(&res));
    let run = res.enumerate_constancy_regions(&pt(&[(1, 2), (1, 1)])).unwrap();
    round_trip(&EnumerationReport::new(&res, &run));
    round_trip(&WallsReport::new(&res, &run));
    let l = pt(&[(1, 6), (1, 1)]);
    round_trip(&VerifyReport::new(&res, &l, DEFAULT_DICHOTOMY_CAP).unwrap());
    round_trip(&MinimalJumpingDivisorReport::new(
        &res,
        &res.minimal_jumping_divisor(&l).unwrap(),
    ));
}

#[test]
fn enumeration_json_schema() {
    let res = example();
    let run = res.enumerate_constancy_regions(&pt(&[(1, 2), (1, 1)])).unwrap();
    let value = serde_json::to_value(EnumerationReport::new(&res, &run)).unwrap();
    let second = &value["records"][1];
    assert_eq!(second["representative"], serde_json::json!(["1/6", "1"]));
    assert_eq!(second["divisor"], serde_json::json!([1, 1, 1, 2, 3]));
    assert_eq!(
        second["inequalities"][0],
        serde_json::json!({"coeffs": [6, 2], "rhs": "4", "component": "E2"})
    );
    assert_eq!(second["cfacets"][0]["midpoint"], serde_json::json!(["1/6", "3/2"]));
    assert_eq!(second["predecessors"], serde_json::json!([0]));
    assert_eq!(value["visited"].as_array().unwrap().len(), 9);
    assert_eq!(value["distinct_divisors"], 5);
}

#[test]
fn output_is_deterministic() {
    let res = example();
    let corner = pt(&[(1, 1), (3, 1)]);
    let a = report::to_json(&EnumerationReport::new(
        &res,
        &res.enumerate_constancy_regions(&corner).unwrap(),
    ));
    let b = report::to_json(&EnumerationReport::new(
        &res,
        &res.enumerate_constancy_regions(&corner).unwrap(),
    ));
    assert_eq!(a, b);
}

proptest! {
    #[test]
    fn point_reports_round_trip(a in 0i64..=60, b in 1i64..=20, c in 0i64..=60, d in 1i64..=20) {
        let res = example();
        let l = OrthantPoint::from_ratios(&[(a, b), (c, d)]);
        let mmi = MmiReport::new(&res, &l).unwrap();
        let text = report::to_json(&mmi);
        prop_assert_eq!(serde_json::from_str::<MmiReport>(&text).unwrap(), mmi);
        let region = RegionReport::new(&res, &res.region_of(&l).unwrap());
        let text = report::to_json(&region);
        prop_assert_eq!(serde_json::from_str::<RegionReport>(&text).unwrap(), region);
    }
}
