use std::collections::BTreeSet;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ree_unital::design::verify_2design;
use ree_unital::perm::generate_group;
use ree_unital::rt::{intersection_scan_full, intersection_search, join_rt, omega_fix, string_of_pearls};
use ree_unital::{ReeError, ReePoint, RootGroup, RtUnital};

fn rt27() -> &'static RtUnital {
    static RT: OnceLock<RtUnital> = OnceLock::new();
    RT.get_or_init(|| RtUnital::for_order(27).unwrap())
}

fn ids(g: &RootGroup, pts: &[ReePoint]) -> Vec<u32> {
    let mut v: Vec<u32> = pts.iter().map(|&p| g.point_id(p) as u32).collect();
    v.sort_unstable();
    v
}

#[test]
fn rt3_blocks_are_the_ree_orbit_of_fix_sigma() {
    let g = RootGroup::for_order(3).unwrap();
    let rt = RtUnital::build(&g).unwrap();
    let group = generate_group(&g.ree_generators().unwrap(), 2000).unwrap();
    let z = g.field().zero();
    let fix_sigma = g.involution_fixed_points(ree_unital::InvolutionParam { a: z, c: z });
    let base = ids(&g, &fix_sigma);
    let orbit: BTreeSet<Vec<u32>> = group
        .iter()
        .map(|p| {
            let mut b: Vec<u32> = base.iter().map(|&x| p.apply(x as usize) as u32).collect();
            b.sort_unstable();
            b
        })
        .collect();
    let built: BTreeSet<Vec<u32>> = rt.structure().blocks().iter().cloned().collect();
    assert_eq!(orbit, built);
}

#[test]
fn rt3_blocks_are_all_joins() {
    let g = RootGroup::for_order(3).unwrap();
    let rt = RtUnital::build(&g).unwrap();
    let mut joins = BTreeSet::new();
    for a in 0..28 {
        for b in a + 1..28 {
            let blk = join_rt(&g, g.point(a).unwrap(), g.point(b).unwrap()).unwrap();
            joins.insert(ids(&g, &blk));
        }
    }
    let built: BTreeSet<Vec<u32>> = rt.structure().blocks().iter().cloned().collect();
    assert_eq!(joins, built);
}

#[test]
fn rt27_joins() {
    let rt = rt27();
    let g = rt.group();
    let st = rt.structure();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..2000 {
        let (a, b) = (rng.gen_range(0..g.num_points()), rng.gen_range(0..g.num_points()));
        let (p, r) = (g.point(a).unwrap(), g.point(b).unwrap());
        if a == b {
            assert_eq!(join_rt(g, p, r), Err(ReeError::SamePoint));
            continue;
        }
        let fwd = join_rt(g, p, r).unwrap();
        assert_eq!(fwd, join_rt(g, r, p).unwrap());
        assert_eq!(fwd.len(), 28);
        assert!(fwd.contains(&p) && fwd.contains(&r));
        let blk = st.joining_blocks(a, b);
        assert_eq!(blk.len(), 1);
        assert_eq!(st.block(blk[0] as usize), ids(g, &fwd).as_slice());
    }
}

#[test]
fn rt27_design_identities() {
    let p = verify_2design(rt27().structure()).unwrap();
    assert_eq!(p.b * p.k, p.v * p.r);
    assert_eq!(p.lambda * (p.v - 1), p.r * (p.k - 1));
    assert_eq!((p.v, p.b), (19684, 729 * 703));
}

#[test]
fn omega_fixes_q_plus_one_points() {
    // ω is an involution of Ree(q), so it fixes the points of one block.
    for q in [3, 27] {
        let g = RootGroup::for_order(q).unwrap();
        let fix = omega_fix(&g).unwrap();
        assert_eq!(fix.len(), q as usize + 1);
        assert!(!fix.contains(&ReePoint::Infinity));
        if q == 27 {
            assert!(rt27().find_block(&fix).is_some());
        }
    }
}

#[test]
fn intersection_pair_scan_matches_full_scan() {
    for q in [3, 27] {
        let g = RootGroup::for_order(q).unwrap();
        let pairs = intersection_search(&g);
        assert_eq!(pairs, intersection_scan_full(&g).unwrap(), "q={q}");
        assert_eq!(pairs.len(), 2);
    }
}

#[test]
fn pearls_at_q3_and_q27() {
    let g = RootGroup::for_order(3).unwrap();
    let s = string_of_pearls(&g).unwrap().summary(3);
    assert_eq!((s.configurations, s.union_points, s.union_blocks), (1, 10, 5));

    let g = RootGroup::for_order(27).unwrap();
    let chain = string_of_pearls(&g).unwrap();
    let s = chain.summary(27);
    assert_eq!((s.configurations, s.union_points, s.union_blocks), (9, 82, 29));
    assert!(s.all_share_tau_and_infinity);
    for cfg in &chain.configurations {
        for &b in &cfg.blocks {
            let pts: Vec<ReePoint> = chain.structure.block(b).iter().map(|&p| g.point(p as usize).unwrap()).collect();
            assert!(rt27().find_block(&pts).is_some(), "pearl block is a block of RT(27)");
        }
    }
}

#[test]
fn rt27_super_onan() {
    let cfg = rt27().super_onan().unwrap();
    assert_eq!((cfg.points.len(), cfg.blocks.len()), (10, 5));
}
