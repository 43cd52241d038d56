mod common;

use proptest::prelude::*;
use rdp_core::algebra::{factor_univariate, Field, UPoly};

fn ok(r: common::Check) {
    if let Err(e) = r {
        panic!("{}", e);
    }
}

#[test]
fn substitutions_char2() {
    ok(common::substitution_suite(2, 200));
}

#[test]
fn substitutions_char3() {
    ok(common::substitution_suite(3, 200));
}

#[test]
fn substitutions_char5() {
    ok(common::substitution_suite(5, 200));
}

#[test]
fn substitutions_char7() {
    ok(common::substitution_suite(7, 200));
}

#[test]
fn tjurina_is_a_contact_invariant() {
    ok(common::tjurina_suite(40));
}

#[test]
fn fingerprints_separate_normal_forms() {
    ok(common::fingerprint_injectivity());
}

#[test]
fn factorizations() {
    ok(common::factorization_suite(500));
}

proptest! {
    #[test]
    fn factor_expand_roundtrip(coeffs in prop::collection::vec(0u64..5, 2..9)) {
        let field = Field::prime(5).unwrap();
        let f = UPoly::new(&field, coeffs.iter().map(|&c| field.from_digits(&[c])).collect());
        prop_assume!(f.deg() >= 1 && !f.is_zero());
        let fac = factor_univariate(&f).unwrap();
        prop_assert_eq!(fac.expand(&field), f);
    }
}
