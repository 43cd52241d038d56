use std::collections::BTreeSet;

use proptest::prelude::*;
use rdp_core::lattice::{
    check_conditions, classes_of, e8, embeddable_types, enumerate_subsystems, quotient_invariants, AdeType,
};

fn ty(s: &str) -> AdeType {
    s.parse().unwrap()
}

fn names(v: impl IntoIterator<Item = AdeType>) -> BTreeSet<String> {
    v.into_iter().map(|t| t.to_string()).collect()
}

#[test]
fn torsion_two_failures() {
    let failing = embeddable_types().into_iter().filter(|t| !check_conditions(t, 3).t_ell2);
    assert_eq!(names(failing), names(["D4+4A1", "8A1", "7A1"].map(ty)));
}

#[test]
fn char2_failures() {
    let failing = embeddable_types().into_iter().filter(|t| !check_conditions(t, 2).t_p);
    assert_eq!(names(failing), names(["D4+3A1", "2A3+2A1", "A3+4A1", "7A1", "6A1"].map(ty)));
}

#[test]
fn odd_characteristics_never_fail_t_p() {
    for p in [0, 3, 5, 7] {
        assert!(embeddable_types().iter().all(|t| check_conditions(t, p).t_p), "p = {p}");
    }
}

#[test]
fn quoted_quotients() {
    let d4 = classes_of(&ty("D4+4A1"));
    assert_eq!(d4.len(), 1);
    assert_eq!((d4[0].free_rank, d4[0].torsion.clone()), (0, vec![2, 2, 2]));
    let a8 = classes_of(&ty("8A1"));
    assert_eq!(a8.len(), 1);
    assert_eq!((a8[0].free_rank, a8[0].torsion.clone()), (0, vec![2, 2, 2, 2]));
    let a7 = classes_of(&ty("7A1"));
    assert_eq!(a7.len(), 1);
    assert_eq!(a7[0].free_rank, 1);
    assert!(a7[0].torsion.iter().filter(|&&d| d % 2 == 0).count() >= 3);
}

#[test]
fn single_root_is_primitive() {
    let a1 = classes_of(&ty("A1"));
    assert_eq!(a1.len(), 1);
    assert_eq!((a1[0].free_rank, a1[0].torsion.clone()), (7, vec![]));
}

#[test]
fn e6_plus_2a1_absent() {
    // index^2 would be det = 3 * 2 * 2 = 12, not a square
    assert!(classes_of(&ty("E6+2A1")).is_empty());
    assert!(!check_conditions(&ty("E6+2A1"), 0).e8);
}

#[test]
fn e8_passes_everything() {
    for p in [0, 2, 3, 5, 7] {
        let f = check_conditions(&ty("E8"), p);
        assert!(f.e8 && f.t_ell2 && f.t_p);
    }
}

#[test]
fn index_square_identity() {
    for c in enumerate_subsystems().iter().filter(|c| c.free_rank == 0) {
        let idx: i64 = c.torsion.iter().product();
        assert_eq!(idx * idx, c.ade.determinant(), "{}", c.ade);
    }
}

#[test]
fn bases_match_declared_types() {
    let e = e8();
    for c in enumerate_subsystems() {
        assert_eq!(c.basis.len() as u32, c.ade.rank());
        assert_eq!(c.free_rank as u32, 8 - c.ade.rank());
        let gram: Vec<Vec<i64>> = c.basis.iter().map(|&i| c.basis.iter().map(|&j| e.inner(i, j)).collect()).collect();
        assert!(gram.iter().enumerate().all(|(i, r)| r[i] == 2 && r.iter().all(|&x| (-1..=2).contains(&x))));
    }
}

fn random_unimodular(n: usize, seed: &[(usize, usize, i64)]) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
    for &(a, b, k) in seed {
        let (a, b) = (a % n, b % n);
        if a != b {
            for r in m.iter_mut() {
                r[a] += k * r[b];
            }
        }
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]
    #[test]
    fn smith_invariants_ignore_basis_choice(
        class in 0usize..1000,
        ops in proptest::collection::vec((0usize..8, 0usize..8, -3i64..=3), 0..12),
    ) {
        let classes = enumerate_subsystems();
        let c = &classes[class % classes.len()];
        let vecs = c.basis_vectors();
        let n = vecs.len();
        let u = random_unimodular(n, &ops);
        let changed: Vec<[i64; 8]> = (0..n)
            .map(|j| std::array::from_fn(|k| (0..n).map(|i| u[i][j] * vecs[i][k]).sum()))
            .collect();
        prop_assert_eq!(quotient_invariants(&changed).unwrap(), (c.free_rank, c.torsion.clone()));
    }
}
