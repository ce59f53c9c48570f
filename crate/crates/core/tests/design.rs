use proptest::prelude::*;
use ree_unital::design::{find_dual_kn, isomorphism_search_counted, verify_2design, DualKnOutcome};
use ree_unital::{IncidenceStructure, PointBijection, UnitalS};

fn fano() -> IncidenceStructure {
    let lines = [[0, 1, 2], [0, 3, 4], [0, 5, 6], [1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]];
    IncidenceStructure::new(7, lines.iter().map(|l| l.to_vec()).collect()).unwrap()
}

fn relabel(s: &IncidenceStructure, perm: &[u32]) -> IncidenceStructure {
    let blocks = s.blocks().iter().map(|b| b.iter().map(|&p| perm[p as usize]).collect()).collect();
    IncidenceStructure::new(s.v(), blocks).unwrap()
}

fn s_structure() -> IncidenceStructure {
    UnitalS::build().unwrap().structure().clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn relabeled_unital_is_found_isomorphic(perm in Just((0..28u32).collect::<Vec<_>>()).prop_shuffle()) {
        let s = s_structure();
        let t = relabel(&s, &perm);
        let p = verify_2design(&t).unwrap();
        prop_assert_eq!((p.v, p.b, p.r, p.k, p.lambda), (28, 63, 9, 4, 1));
        let (found, _) = isomorphism_search_counted(&s, &t);
        let bij = found.expect("relabeling is an isomorphism");
        prop_assert!(bij.is_isomorphism(&s, &t));
    }

    #[test]
    fn design_identities_hold_when_parameters_are_returned(
        keep in proptest::collection::vec(any::<bool>(), 63),
    ) {
        let s = s_structure();
        let blocks: Vec<Vec<u32>> =
            s.blocks().iter().zip(&keep).filter(|(_, &k)| k).map(|(b, _)| b.clone()).collect();
        if blocks.is_empty() {
            return Ok(());
        }
        let sub = IncidenceStructure::new(28, blocks).unwrap();
        if let Ok(p) = verify_2design(&sub) {
            prop_assert_eq!(p.b * p.k, p.v * p.r);
            prop_assert_eq!(p.lambda * (p.v - 1), p.r * (p.k - 1));
        }
    }
}

#[test]
fn removing_a_block_breaks_isomorphism() {
    let s = s_structure();
    let fewer = IncidenceStructure::new(28, s.blocks()[1..].to_vec()).unwrap();
    assert!(verify_2design(&fewer).is_err());
    assert!(isomorphism_search_counted(&s, &fewer).0.is_none());
    assert!(!PointBijection::identity(28).is_isomorphism(&s, &fewer));
}

#[test]
fn dual_kn_outcomes() {
    let f = fano();
    let four = find_dual_kn(&f, 4, 1000).unwrap();
    assert!(matches!(four.outcome, DualKnOutcome::Found(_)));
    // C(5,2) = 10 meeting points, but the plane has 7 points.
    let five = find_dual_kn(&f, 5, 1_000_000).unwrap();
    assert_eq!(five.outcome, DualKnOutcome::NoneExists);
    assert!(five.nodes > 0);
    let starved = find_dual_kn(&s_structure(), 5, 2).unwrap();
    assert_eq!(starved.outcome, DualKnOutcome::Undecided);
    assert!(find_dual_kn(&f, 2, 10).is_err());
}

#[test]
fn unital_has_dual_k5_but_no_dual_k12() {
    let s = s_structure();
    let DualKnOutcome::Found(cfg) = find_dual_kn(&s, 5, 100_000).unwrap().outcome else {
        panic!("S contains a dual K5");
    };
    assert_eq!(cfg.points.len(), 10);
    // C(12,2) = 66 > 28 points.
    assert_eq!(find_dual_kn(&s, 12, u64::MAX).unwrap().outcome, DualKnOutcome::NoneExists);
}
