use std::collections::BTreeSet;

use zdclass::census::fan_search;
use zdclass::{Limits, RingSpec};

fn specs(texts: &[&str]) -> Vec<RingSpec> {
    texts.iter().map(|t| RingSpec::parse(t).unwrap()).collect()
}

#[test]
fn even_fields_give_stars_with_q_plus_one_leaves() {
    let found = fan_search(
        &specs(&[
            "quot(Z2; x,y; x^2, y^2)",
            "quot(Z2; t,x,y; t^2+t+1, x^2, y^2)",
            "quot(Z2; t,x,y; t^3+t+1, x^2, y^2)",
        ]),
        &Limits::default(),
    );
    assert!(found.errors.is_empty(), "{:?}", found.errors);
    assert_eq!(found.realized, BTreeSet::from([3, 5, 9]));
    assert_eq!(found.characteristics, BTreeSet::from([2]));
    for f in &found.findings {
        assert!(f.conclusions_apply && f.local && f.ass_count == 1, "{f:?}");
    }
}

#[test]
fn odd_fields_do_not() {
    // (x + y)^2 = 2xy is nonzero once 2 is invertible
    let found = fan_search(
        &specs(&[
            "quot(Z3; x,y; x^2, y^2)",
            "quot(Z3; t,x,y; t^2+1, x^2, y^2)",
        ]),
        &Limits::default(),
    );
    assert!(found.findings.is_empty(), "{:?}", found.findings);
}

#[test]
fn small_stars_from_chains() {
    let found = fan_search(
        &specs(&["Z16", "Z8", "Z9", "quot(Z2; x; x^4)"]),
        &Limits::default(),
    );
    let ns: Vec<usize> = found.findings.iter().map(|f| f.n).collect();
    assert_eq!(ns, [2, 1, 2]);
    assert!(found.findings.iter().all(|f| !f.conclusions_apply));
}
