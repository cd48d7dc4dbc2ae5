use bernsym_core::identities::{
    corollary_specialization_check, family, permutation_collapse_check, t14_family, verify_family, verify_family_with,
    verify_intro_chain, FamilyId, Status, T14Variant, SPECIALIZATIONS,
};
use bernsym_core::Weights;
use proptest::prelude::*;

fn cube(max: u64) -> impl Iterator<Item = Weights> {
    (1..=max).flat_map(move |a| (1..=max).flat_map(move |b| (1..=max).map(move |c| [a, b, c])))
}

#[test]
fn theorems_on_small_grid() {
    for id in FamilyId::THEOREMS {
        let f = family(id);
        for n in 0..=6 {
            for w in cube(3) {
                let r = verify_family(&f, n, w);
                assert!(r.passed(), "{id} n={n} w={w:?}: {:?}", r.witness);
            }
        }
    }
}

#[test]
fn corollaries_on_reduced_grid() {
    for id in FamilyId::ALL.into_iter().filter(|id| !FamilyId::THEOREMS.contains(id)) {
        let f = family(id);
        for n in 0..=6 {
            for w in cube(4) {
                assert!(verify_family(&f, n, w).passed(), "{id} n={n} w={w:?}");
            }
        }
    }
}

#[test]
fn intro_chain_on_grid() {
    for n in 0..=6 {
        for a in 1..=4 {
            for b in 1..=4 {
                assert!(verify_intro_chain(n, (a, b)).passed(), "n={n} w=({a},{b})");
            }
        }
    }
}

#[test]
fn specializations_hold() {
    for s in SPECIALIZATIONS {
        for n in [0, 3, 6] {
            for w in cube(3) {
                let r = corollary_specialization_check(s.theorem, s.corollary, n, w).unwrap();
                assert!(r.passed(), "{} n={n} w={w:?}", r.label);
            }
        }
    }
}

#[test]
fn relabeled_displays_collapse() {
    for n in 0..=5 {
        for w in cube(3) {
            assert!(permutation_collapse_check(n, w).passed(), "n={n} w={w:?}");
        }
    }
}

#[test]
fn t14_literal_third_side_fails_somewhere() {
    let literal = t14_family(T14Variant::Literal);
    let failures = (1..=4)
        .flat_map(|n| cube(3).map(move |w| (n, w)))
        .filter(|&(n, w)| !verify_family(&literal, n, w).passed())
        .count();
    assert!(failures > 0);
    assert!(verify_family(&literal, 3, [1, 1, 1]).passed());
}

#[test]
fn corrupted_side_is_reported() {
    for id in FamilyId::ALL {
        let f = family(id);
        for side in 0..f.sides.len() {
            let r = verify_family_with(&f, 3, [2, 3, 2], Some(side));
            assert_eq!(r.status, Status::Fail, "{id} side {side}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn theorems_hold_at_random_weights(
        idx in 0usize..8,
        n in 0usize..=7,
        w in (1u64..=6, 1u64..=6, 1u64..=6),
    ) {
        let id = FamilyId::THEOREMS[idx];
        let r = verify_family(&family(id), n, [w.0, w.1, w.2]);
        prop_assert!(r.passed(), "{} {:?}", id, r.witness);
    }

    #[test]
    fn reports_are_deterministic(n in 0usize..=5, w in (1u64..=4, 1u64..=4, 1u64..=4)) {
        let f = family(FamilyId::T5);
        let a = verify_family_with(&f, n, [w.0, w.1, w.2], Some(2));
        let b = verify_family_with(&f, n, [w.0, w.1, w.2], Some(2));
        prop_assert_eq!(a.witness, b.witness);
    }
}
