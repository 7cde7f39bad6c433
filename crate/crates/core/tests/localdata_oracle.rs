//! Local data checked against a frozen table produced by an independent
//! implementation of Tate's algorithm.

use isogeny_alpha::localdata::{tate_algorithm, LocalDataRecord};
use isogeny_alpha::weierstrass::WeierstrassModel;
use serde::Deserialize;

#[derive(Deserialize)]
struct Row {
    curve: WeierstrassModel,
    p: u64,
    #[serde(flatten)]
    expected: LocalDataRecord,
}

#[test]
fn matches_frozen_local_data() {
    let rows: Vec<Row> = include_str!("data/tate_oracle.jsonl")
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(rows.len() >= 400);
    let mut failures = Vec::new();
    for row in &rows {
        let got = tate_algorithm(&row.curve, row.p).unwrap();
        if got.record() != row.expected {
            failures.push(format!("{} at {}: got {:?}, want {:?}", row.curve, row.p, got.record(), row.expected));
        }
        let (min, t) = (&got.minimal_model, &got.to_minimal);
        assert_eq!(&row.curve.transform(t).unwrap(), min);
        assert!(min.is_integral(row.p));
    }
    assert!(failures.is_empty(), "{} mismatches:\n{}", failures.len(), failures.join("\n"));
}
