mod common;

use common::{check_case, oracle_suite};

#[test]
fn lp_objective_lies_in_dp_bracket() {
    let checks = oracle_suite(0..60, 200);
    let mut worst = 0.0f64;
    for c in &checks {
        assert!(c.certified, "case {}: certification failed", c.seed);
        assert!(
            c.within,
            "case {}: LP {} outside [{}, {}]",
            c.seed, c.lp, c.bracket.lower, c.bracket.upper
        );
        worst = worst.max(c.relative_width());
    }
    // The bracket has to be informative, not just valid.
    assert!(worst < 5e-2, "widest bracket {worst}");
}

#[test]
fn bracket_tightens_with_resolution() {
    let coarse = check_case(4, 25);
    let fine = check_case(4, 200);
    assert!(fine.bracket.width() <= coarse.bracket.width() + 1e-9);
    assert!(fine.within && coarse.within);
}
