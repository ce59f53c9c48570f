use ree_unital::format::{read_incidence, write_incidence};
use ree_unital::unital_s::{Catalog, PRINTED};
use ree_unital::{Mat2, SemiLinear, UnitalS, F8};

fn unital() -> UnitalS {
    UnitalS::build().unwrap()
}

#[test]
fn every_pair_of_points_has_one_join() {
    let s = unital();
    let st = s.structure();
    for p in 0..28 {
        for q in p + 1..28 {
            let j = s.join_points(p, q).unwrap();
            let b = s.block_of(&j).unwrap();
            assert_eq!(st.joining_blocks(p, q), vec![b as u32]);
        }
        assert!(s.join_points(p, p).is_err());
    }
}

#[test]
fn trace_criterion_for_meets() {
    let s = unital();
    let st = s.structure();
    let meeting_traces = [F8::ONE, F8::U, F8::from_power(2), F8::from_power(4)];
    let mut pairs = 0;
    for a in 0..63 {
        for b in a + 1..63 {
            let (i, l) = (s.block_matrix(a), s.block_matrix(b));
            let common = st.meet(a, b);
            assert!(common.len() <= 1);
            assert_eq!(common.len() == 1, meeting_traces.contains(&(i * l).trace()));
            let want = common.first().map(|&p| p as usize);
            assert_eq!(s.meet_blocks(&i, &l).unwrap(), want);
            pairs += 1;
        }
    }
    assert_eq!(pairs, 1953);
    assert!(s.meet_blocks(&Mat2::IDENTITY, &s.block_matrix(0)).is_err());
}

#[test]
fn generators_preserve_incidence() {
    let s = unital();
    let st = s.structure();
    let cat = Catalog::new();
    for g in [cat.get("S"), cat.get("T"), cat.get("A")].map(SemiLinear::linear).into_iter().chain([SemiLinear::DELTA]) {
        let (pp, bp) = (s.point_perm(&g), s.block_perm(&g));
        for b in 0..63 {
            let mut img: Vec<u32> = st.block(b).iter().map(|&p| pp.apply(p as usize) as u32).collect();
            img.sort_unstable();
            assert_eq!(st.block(bp.apply(b)), img.as_slice());
        }
    }
}

#[test]
fn printed_literals_parse_to_the_catalog() {
    let cat = Catalog::new();
    for (name, lit) in PRINTED {
        let m: Mat2 = lit.parse().unwrap();
        assert_eq!(cat.get(name), m, "{name}");
        assert_eq!(m.det(), F8::ONE);
    }
    assert!(cat.entries().len() >= PRINTED.len());
}

#[test]
fn export_round_trip() {
    let s = unital();
    let mut buf = Vec::new();
    write_incidence(&mut buf, s.structure(), None).unwrap();
    let (back, field) = read_incidence(buf.as_slice()).unwrap();
    assert_eq!(back.blocks(), s.structure().blocks());
    assert_eq!(field, None);
}
