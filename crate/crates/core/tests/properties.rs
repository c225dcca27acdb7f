mod common;

use proptest::prelude::*;

use common::props::*;
use toric_core::linalg::{int_vec, IntMatrix};

proptest! {
    #![proptest_config(config())]

    #[test]
    fn hnf_contract_holds(a in matrix(4, 4, 9)) {
        hnf_contract(&a)?;
    }

    #[test]
    fn hnf_is_canonical_under_row_operations(a in matrix(3, 3, 9), u in unimodular(3)) {
        hnf_is_canonical(&a, &u)?;
    }

    #[test]
    fn snf_contract_holds(a in matrix(4, 4, 9)) {
        snf_contract(&a)?;
    }

    #[test]
    fn dual_lattice_is_an_involution(l in full_rank_lattice(3)) {
        dual_lattice_involution(&l)?;
    }

    #[test]
    fn saturation_is_idempotent(m in matrix(3, 4, 7)) {
        saturation_idempotent(&m)?;
    }

    #[test]
    fn dual_cone_is_an_involution(gens in generators(3)) {
        dual_cone_involution(&gens)?;
    }

    #[test]
    fn cone_membership_agrees_with_oracle(gens in generators(3), p in prop::collection::vec(-5i64..=5, 3)) {
        cone_membership_matches_oracle(&gens, &p)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, ..ProptestConfig::default() })]

    #[test]
    fn certificate_survives_unimodular_reindexing(u in unimodular(3), pick in 0usize..PAYNE_DEGREES.len()) {
        certificate_invariant_under_unimodular_reindexing(&u, pick)?;
    }
}

#[test]
fn unimodular_strategy_sanity() {
    let u = IntMatrix::new(
        vec![
            int_vec(&[1, 2, 0]),
            int_vec(&[0, 1, 0]),
            int_vec(&[0, 0, 1]),
        ],
        3,
    );
    assert!(is_unimodular(&u));
}
