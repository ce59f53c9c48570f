//! Incidence structures on points 0..v: 2-design verification, configuration
//! checks, dual-Kₙ search and isomorphism search.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::DesignError;

/// Points `0..v` and blocks given as sorted, duplicate-free point lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceStructure {
    v: usize,
    blocks: Vec<Vec<u32>>,
    point_blocks: Vec<Vec<u32>>,
}

impl IncidenceStructure {
    /// Sorts each block and validates point indices.
    pub fn new(v: usize, mut blocks: Vec<Vec<u32>>) -> Result<IncidenceStructure, DesignError> {
        let mut point_blocks = vec![Vec::new(); v];
        for (bi, block) in blocks.iter_mut().enumerate() {
            block.sort_unstable();
            for w in block.windows(2) {
                if w[0] == w[1] {
                    return Err(DesignError::RepeatedPoint { block: bi, point: w[0] as usize });
                }
            }
            for &p in block.iter() {
                let slot =
                    point_blocks.get_mut(p as usize).ok_or(DesignError::PointOutOfRange { index: p as usize, v })?;
                slot.push(bi as u32);
            }
        }
        Ok(IncidenceStructure { v, blocks, point_blocks })
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn block(&self, b: usize) -> &[u32] {
        &self.blocks[b]
    }

    /// Blocks through `p`, ascending.
    pub fn blocks_through(&self, p: usize) -> &[u32] {
        &self.point_blocks[p]
    }

    pub fn incident(&self, p: usize, b: usize) -> bool {
        self.blocks[b].binary_search(&(p as u32)).is_ok()
    }

    /// Common points of two blocks.
    pub fn meet(&self, b1: usize, b2: usize) -> Vec<u32> {
        sorted_intersection(&self.blocks[b1], &self.blocks[b2])
    }

    /// Blocks containing both points.
    pub fn joining_blocks(&self, p1: usize, p2: usize) -> Vec<u32> {
        sorted_intersection(&self.point_blocks[p1], &self.point_blocks[p2])
    }

    /// Index of the block with exactly this point set, if present.
    pub fn find_block(&self, points: &[u32]) -> Option<usize> {
        let first = *points.first()? as usize;
        self.point_blocks.get(first)?.iter().map(|&b| b as usize).find(|&b| self.blocks[b] == points)
    }

    fn check_point(&self, p: usize) -> Result<(), DesignError> {
        if p < self.v {
            Ok(())
        } else {
            Err(DesignError::PointOutOfRange { index: p, v: self.v })
        }
    }

    fn check_block(&self, b: usize) -> Result<(), DesignError> {
        if b < self.b() {
            Ok(())
        } else {
            Err(DesignError::BlockOutOfRange { index: b, b: self.b() })
        }
    }
}

fn sorted_intersection(a: &[u32], b: &[u32]) -> Vec<u32> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Parameters of a 2-(v, k, λ) design with b blocks and replication number r.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignParams {
    pub v: usize,
    pub b: usize,
    pub r: usize,
    pub k: usize,
    pub lambda: usize,
}

/// Checks constant block size, constant replication and that every pair of
/// points lies on exactly λ blocks. The first violating pair (in
/// lexicographic order) is reported.
pub fn verify_2design(s: &IncidenceStructure) -> Result<DesignParams, DesignError> {
    let v = s.v();
    if v < 2 || s.b() == 0 {
        return Err(DesignError::Degenerate);
    }
    let k = s.blocks[0].len();
    if let Some((bi, blk)) = s.blocks.iter().enumerate().find(|(_, blk)| blk.len() != k) {
        return Err(DesignError::BlockSize { block: bi, size: blk.len(), expected: k });
    }
    let r = s.point_blocks[0].len();
    if let Some((p, bl)) = s.point_blocks.iter().enumerate().find(|(_, bl)| bl.len() != r) {
        return Err(DesignError::Replication { point: p, count: bl.len(), expected: r });
    }
    if k < 2 || !(r * (k - 1)).is_multiple_of(v - 1) {
        return Err(DesignError::NonIntegralLambda { v, k, r });
    }
    let lambda = r * (k - 1) / (v - 1);

    let violation = (0..v)
        .into_par_iter()
        .map_init(
            || vec![0u32; v],
            |counts, p| {
                for &b in &s.point_blocks[p] {
                    for &x in &s.blocks[b as usize] {
                        if x as usize > p {
                            counts[x as usize] += 1;
                        }
                    }
                }
                let mut bad = None;
                for (x, c) in counts.iter_mut().enumerate().skip(p + 1) {
                    if bad.is_none() && *c as usize != lambda {
                        bad = Some(DesignError::PairCoverage(p, x, *c as usize, lambda));
                    }
                    *c = 0;
                }
                bad
            },
        )
        .find_first(Option::is_some)
        .flatten();
    match violation {
        Some(e) => Err(e),
        None => Ok(DesignParams { v, b: s.b(), r, k, lambda }),
    }
}

/// A sub-structure of a host: chosen points, chosen blocks and the host
/// flags between them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Configuration {
    pub points: Vec<usize>,
    pub blocks: Vec<usize>,
    pub flags: Vec<(usize, usize)>,
}

impl Configuration {
    /// Collects every host flag between the chosen points and blocks.
    pub fn induced(
        host: &IncidenceStructure,
        points: &[usize],
        blocks: &[usize],
    ) -> Result<Configuration, DesignError> {
        let mut points = points.to_vec();
        let mut blocks = blocks.to_vec();
        points.sort_unstable();
        points.dedup();
        blocks.sort_unstable();
        blocks.dedup();
        for &p in &points {
            host.check_point(p)?;
        }
        for &b in &blocks {
            host.check_block(b)?;
        }
        let flags = points
            .iter()
            .flat_map(|&p| blocks.iter().map(move |&b| (p, b)))
            .filter(|&(p, b)| host.incident(p, b))
            .collect();
        Ok(Configuration { points, blocks, flags })
    }

    pub fn empty() -> Configuration {
        Configuration { points: Vec::new(), blocks: Vec::new(), flags: Vec::new() }
    }

    /// Number of chosen blocks through each chosen point, in point order.
    pub fn point_degrees(&self) -> Vec<usize> {
        self.points.iter().map(|p| self.flags.iter().filter(|f| f.0 == *p).count()).collect()
    }

    /// Number of chosen points on each chosen block, in block order.
    pub fn block_degrees(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| self.flags.iter().filter(|f| f.1 == *b).count()).collect()
    }

    /// Applies point and block relabelings (e.g. an automorphism).
    pub fn map(&self, point_map: impl Fn(usize) -> usize, block_map: impl Fn(usize) -> usize) -> Configuration {
        let mut points: Vec<usize> = self.points.iter().map(|&p| point_map(p)).collect();
        let mut blocks: Vec<usize> = self.blocks.iter().map(|&b| block_map(b)).collect();
        let mut flags: Vec<(usize, usize)> = self.flags.iter().map(|&(p, b)| (point_map(p), block_map(b))).collect();
        points.sort_unstable();
        blocks.sort_unstable();
        flags.sort_unstable();
        Configuration { points, blocks, flags }
    }
}

/// Multisets of point degrees and block degrees inside a configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreePattern {
    pub point_degrees: Vec<usize>,
    pub block_degrees: Vec<usize>,
}

impl DegreePattern {
    /// Pattern from `(degree, count)` pairs for points and blocks.
    pub fn from_counts(points: &[(usize, usize)], blocks: &[(usize, usize)]) -> DegreePattern {
        let expand = |spec: &[(usize, usize)]| {
            let mut v: Vec<usize> = spec.iter().flat_map(|&(d, n)| std::iter::repeat_n(d, n)).collect();
            v.sort_unstable();
            v
        };
        DegreePattern { point_degrees: expand(points), block_degrees: expand(blocks) }
    }

    /// The pattern of a dual-Kₙ: C(n,2) points on 2 blocks, n blocks with n−1 points.
    pub fn dual_complete(n: usize) -> DegreePattern {
        DegreePattern::from_counts(&[(2, n * (n - 1) / 2)], &[(n - 1, n)])
    }
}

/// True iff the induced degrees match `pattern`; ids out of range or flags
/// that are not host flags are errors.
pub fn validate_configuration(
    host: &IncidenceStructure,
    cfg: &Configuration,
    pattern: &DegreePattern,
) -> Result<bool, DesignError> {
    for &p in &cfg.points {
        host.check_point(p)?;
    }
    for &b in &cfg.blocks {
        host.check_block(b)?;
    }
    for &(p, b) in &cfg.flags {
        host.check_point(p)?;
        host.check_block(b)?;
        if !host.incident(p, b) {
            return Err(DesignError::Configuration(format!("({p}, {b}) is not a flag of the host")));
        }
        if !cfg.points.contains(&p) || !cfg.blocks.contains(&b) {
            return Err(DesignError::Configuration(format!("flag ({p}, {b}) leaves the configuration")));
        }
    }
    let mut pd = cfg.point_degrees();
    let mut bd = cfg.block_degrees();
    pd.sort_unstable();
    bd.sort_unstable();
    Ok(pd == pattern.point_degrees && bd == pattern.block_degrees)
}

/// Checks that `blocks` form a dual of K_n: every two meet in exactly one
/// point, and no point lies on three of them. Returns the configuration
/// spanned by the blocks and their C(n,2) meeting points.
pub fn check_dual_kn(host: &IncidenceStructure, blocks: &[usize]) -> Result<Configuration, DesignError> {
    for &b in blocks {
        host.check_block(b)?;
    }
    let mut meets = Vec::new();
    for (i, &b1) in blocks.iter().enumerate() {
        for &b2 in &blocks[i + 1..] {
            match host.meet(b1, b2).as_slice() {
                [p] => meets.push(*p as usize),
                other => {
                    return Err(DesignError::Configuration(format!(
                        "blocks {b1} and {b2} share {} points",
                        other.len()
                    )))
                }
            }
        }
    }
    let mut sorted = meets.clone();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(DesignError::Configuration(format!("point {} lies on three chosen blocks", w[0])));
    }
    let cfg = Configuration::induced(host, &meets, blocks)?;
    let n = blocks.len();
    if !validate_configuration(host, &cfg, &DegreePattern::dual_complete(n))? {
        return Err(DesignError::Configuration("meeting points lie on extra chosen blocks".into()));
    }
    Ok(cfg)
}

/// Result of a bounded dual-Kₙ search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DualKnOutcome {
    Found(Configuration),
    /// The search tree was exhausted without a witness.
    NoneExists,
    /// The node budget ran out first.
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualKnSearch {
    pub outcome: DualKnOutcome,
    /// Search-tree nodes visited (partial block sets accepted).
    pub nodes: u64,
}

struct DualKnState<'a> {
    host: &'a IncidenceStructure,
    n: usize,
    budget: u64,
    nodes: u64,
    chosen: Vec<usize>,
    meets: Vec<u32>,
}

impl DualKnState<'_> {
    /// Returns Some(true) when a witness sits in `chosen`, Some(false) when
    /// the subtree is exhausted, None on budget exhaustion.
    fn extend(&mut self, candidates: &[usize]) -> Option<bool> {
        if self.chosen.len() == self.n {
            return Some(true);
        }
        let last = self.chosen.last().copied();
        for (idx, &c) in candidates.iter().enumerate() {
            if last.is_some_and(|l| c <= l) {
                continue;
            }
            if candidates.len() - idx < self.n - self.chosen.len() {
                break;
            }
            let block = self.host.block(c);
            if self.meets.iter().any(|m| block.binary_search(m).is_ok()) {
                continue;
            }
            let mut new_meets = Vec::with_capacity(self.chosen.len());
            let ok = self.chosen.iter().all(|&b| match self.host.meet(b, c).as_slice() {
                [p] => {
                    new_meets.push(*p);
                    true
                }
                _ => false,
            });
            if !ok {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            let before = self.meets.len();
            self.meets.extend(new_meets);
            self.chosen.push(c);
            let next =
                if self.chosen.len() == 1 { blocks_meeting(self.host, c) } else { candidates[idx + 1..].to_vec() };
            match self.extend(&next) {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {}
            }
            self.chosen.pop();
            self.meets.truncate(before);
        }
        Some(false)
    }
}

fn blocks_meeting(host: &IncidenceStructure, b: usize) -> Vec<usize> {
    let mut out: Vec<usize> = host
        .block(b)
        .iter()
        .flat_map(|&p| host.blocks_through(p as usize).iter().map(|&x| x as usize))
        .filter(|&x| x != b)
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Backtracking search for n blocks forming a dual of K_n. Blocks are tried
/// in ascending id, so the witness is the lexicographically least sorted
/// block tuple. `budget` caps the number of visited nodes.
pub fn find_dual_kn(host: &IncidenceStructure, n: usize, budget: u64) -> Result<DualKnSearch, DesignError> {
    if n < 3 {
        return Err(DesignError::Configuration(format!("dual-K_n search needs n >= 3, got {n}")));
    }
    let mut st = DualKnState { host, n, budget, nodes: 0, chosen: Vec::new(), meets: Vec::new() };
    let all: Vec<usize> = (0..host.b()).collect();
    let outcome = match st.extend(&all) {
        Some(true) => {
            let blocks = st.chosen.clone();
            DualKnOutcome::Found(check_dual_kn(host, &blocks)?)
        }
        Some(false) => DualKnOutcome::NoneExists,
        None => DualKnOutcome::Undecided,
    };
    Ok(DualKnSearch { outcome, nodes: st.nodes })
}

/// A bijection from the points of one structure to the points of another.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PointBijection {
    pub map: Vec<u32>,
}

impl PointBijection {
    pub fn identity(v: usize) -> PointBijection {
        PointBijection { map: (0..v as u32).collect() }
    }

    pub fn apply(&self, p: usize) -> usize {
        self.map[p] as usize
    }

    pub fn image_of_block(&self, block: &[u32]) -> Vec<u32> {
        let mut img: Vec<u32> = block.iter().map(|&p| self.map[p as usize]).collect();
        img.sort_unstable();
        img
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &PointBijection) -> PointBijection {
        PointBijection { map: self.map.iter().map(|&p| other.map[p as usize]).collect() }
    }

    /// Whether this is a bijection carrying the blocks of `s1` onto those of `s2`
    /// (as multisets).
    pub fn is_isomorphism(&self, s1: &IncidenceStructure, s2: &IncidenceStructure) -> bool {
        if self.map.len() != s1.v() || s1.v() != s2.v() || s1.b() != s2.b() {
            return false;
        }
        let mut seen = vec![false; s2.v()];
        for &p in &self.map {
            match seen.get_mut(p as usize) {
                Some(slot) if !*slot => *slot = true,
                _ => return false,
            }
        }
        let mut target: HashMap<&[u32], usize> = HashMap::new();
        for b in s2.blocks() {
            *target.entry(b.as_slice()).or_default() += 1;
        }
        for b in s1.blocks() {
            let img = self.image_of_block(b);
            match target.get_mut(img.as_slice()) {
                Some(n) if *n > 0 => *n -= 1,
                _ => return false,
            }
        }
        true
    }
}

fn sorted_counts(iter: impl Iterator<Item = usize>) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for x in iter {
        *m.entry(x).or_insert(0) += 1;
    }
    m
}

/// Histogram of |B ∩ B'| over unordered block pairs; skipped for large b.
fn intersection_profile(s: &IncidenceStructure) -> Option<BTreeMap<usize, usize>> {
    if s.b() > 4000 {
        return None;
    }
    let mut m = BTreeMap::new();
    for i in 0..s.b() {
        for j in i + 1..s.b() {
            *m.entry(s.meet(i, j).len()).or_insert(0) += 1;
        }
    }
    Some(m)
}

struct IsoState<'a> {
    s1: &'a IncidenceStructure,
    s2: &'a IncidenceStructure,
    order: Vec<usize>,
    fwd: Vec<Option<u32>>,
    back: Vec<Option<u32>>,
    target: HashSet<&'a [u32]>,
    nodes: u64,
}

impl IsoState<'_> {
    /// Every block through `p` must have its mapped points inside a common
    /// block of the same size on the other side.
    fn consistent(from: &IncidenceStructure, to: &IncidenceStructure, map: &[Option<u32>], p: usize) -> bool {
        let image_p = map[p].expect("p is mapped") as usize;
        for &b in from.blocks_through(p) {
            let block = from.block(b as usize);
            let mapped: Vec<u32> = block.iter().filter_map(|&x| map[x as usize]).collect();
            if mapped.len() < 2 {
                continue;
            }
            let fits = to.blocks_through(image_p).iter().any(|&c| {
                let cand = to.block(c as usize);
                cand.len() == block.len() && mapped.iter().all(|m| cand.binary_search(m).is_ok())
            });
            if !fits {
                return false;
            }
        }
        true
    }

    fn search(&mut self, depth: usize) -> bool {
        self.nodes += 1;
        if depth == self.order.len() {
            let bij = PointBijection { map: self.fwd.iter().map(|x| x.unwrap()).collect() };
            return self.s1.blocks().iter().all(|b| self.target.contains(bij.image_of_block(b).as_slice()));
        }
        let p = self.order[depth];
        let deg = self.s1.blocks_through(p).len();
        for cand in 0..self.s2.v() {
            if self.back[cand].is_some() || self.s2.blocks_through(cand).len() != deg {
                continue;
            }
            self.fwd[p] = Some(cand as u32);
            self.back[cand] = Some(p as u32);
            if Self::consistent(self.s1, self.s2, &self.fwd, p)
                && Self::consistent(self.s2, self.s1, &self.back, cand)
                && self.search(depth + 1)
            {
                return true;
            }
            self.fwd[p] = None;
            self.back[cand] = None;
        }
        false
    }
}

/// Points of `s` starting at 0 and growing along blocks.
fn block_bfs_order(s: &IncidenceStructure) -> Vec<usize> {
    let mut seen = vec![false; s.v()];
    let mut order = Vec::with_capacity(s.v());
    for start in 0..s.v() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        order.push(start);
        let mut head = order.len() - 1;
        while head < order.len() {
            let p = order[head];
            head += 1;
            for &b in s.blocks_through(p) {
                for &x in s.block(b as usize) {
                    if !seen[x as usize] {
                        seen[x as usize] = true;
                        order.push(x as usize);
                    }
                }
            }
        }
    }
    order
}

/// Backtracking isomorphism search, pruned by degree sequences, block sizes
/// and block-intersection profiles. Returns `None` only after the search
/// tree is exhausted.
pub fn isomorphism_search(s1: &IncidenceStructure, s2: &IncidenceStructure) -> Option<PointBijection> {
    isomorphism_search_counted(s1, s2).0
}

/// As [`isomorphism_search`], also returning the number of visited nodes.
pub fn isomorphism_search_counted(s1: &IncidenceStructure, s2: &IncidenceStructure) -> (Option<PointBijection>, u64) {
    if s1.v() != s2.v() || s1.b() != s2.b() {
        return (None, 0);
    }
    let sizes = |s: &IncidenceStructure| sorted_counts(s.blocks().iter().map(Vec::len));
    let degrees = |s: &IncidenceStructure| sorted_counts(s.point_blocks.iter().map(Vec::len));
    if sizes(s1) != sizes(s2) || degrees(s1) != degrees(s2) {
        return (None, 0);
    }
    if intersection_profile(s1) != intersection_profile(s2) {
        return (None, 0);
    }
    let mut st = IsoState {
        s1,
        s2,
        order: block_bfs_order(s1),
        fwd: vec![None; s1.v()],
        back: vec![None; s2.v()],
        target: s2.blocks().iter().map(Vec::as_slice).collect(),
        nodes: 0,
    };
    let found = st.search(0);
    let nodes = st.nodes;
    let bij = found.then(|| PointBijection { map: st.fwd.iter().map(|x| x.unwrap()).collect() });
    (bij, nodes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fano() -> IncidenceStructure {
        let lines = [[0, 1, 3], [1, 2, 4], [2, 3, 5], [3, 4, 6], [4, 5, 0], [5, 6, 1], [6, 0, 2]];
        IncidenceStructure::new(7, lines.iter().map(|l| l.to_vec()).collect()).unwrap()
    }

    fn graph(v: usize, edges: &[(u32, u32)]) -> IncidenceStructure {
        IncidenceStructure::new(v, edges.iter().map(|&(a, b)| vec![a, b]).collect()).unwrap()
    }

    #[test]
    fn rejects_bad_blocks() {
        assert_eq!(IncidenceStructure::new(3, vec![vec![0, 3]]), Err(DesignError::PointOutOfRange { index: 3, v: 3 }));
        assert_eq!(
            IncidenceStructure::new(3, vec![vec![1, 1]]),
            Err(DesignError::RepeatedPoint { block: 0, point: 1 })
        );
    }

    #[test]
    fn fano_parameters() {
        let p = verify_2design(&fano()).unwrap();
        assert_eq!(p, DesignParams { v: 7, b: 7, r: 3, k: 3, lambda: 1 });
    }

    #[test]
    fn degenerate_single_block() {
        let s = IncidenceStructure::new(2, vec![vec![1, 0]]).unwrap();
        assert_eq!(verify_2design(&s).unwrap(), DesignParams { v: 2, b: 1, r: 1, k: 2, lambda: 1 });
        let empty = IncidenceStructure::new(2, vec![]).unwrap();
        assert_eq!(verify_2design(&empty), Err(DesignError::Degenerate));
    }

    #[test]
    fn reports_first_bad_pair() {
        // Constant k = 2, r = 3 and integral lambda = 1, but {0,1} and {2,3} are doubled.
        let s = graph(4, &[(0, 1), (0, 1), (2, 3), (2, 3), (0, 2), (1, 3)]);
        assert_eq!(verify_2design(&s), Err(DesignError::PairCoverage(0, 1, 2, 1)));
        let uneven = graph(3, &[(0, 1), (1, 2)]);
        assert!(matches!(verify_2design(&uneven), Err(DesignError::Replication { .. })));
        let mixed = IncidenceStructure::new(3, vec![vec![0, 1], vec![0, 1, 2]]).unwrap();
        assert!(matches!(verify_2design(&mixed), Err(DesignError::BlockSize { block: 1, .. })));
        let triangles = graph(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        assert!(matches!(verify_2design(&triangles), Err(DesignError::NonIntegralLambda { .. })));
    }

    #[test]
    fn configuration_patterns() {
        let host = fano();
        assert!(validate_configuration(&host, &Configuration::empty(), &DegreePattern::from_counts(&[], &[])).unwrap());
        let bad = Configuration { points: vec![9], blocks: vec![], flags: vec![] };
        assert!(matches!(
            validate_configuration(&host, &bad, &DegreePattern::from_counts(&[], &[])),
            Err(DesignError::PointOutOfRange { .. })
        ));
        let fake_flag = Configuration { points: vec![2], blocks: vec![0], flags: vec![(2, 0)] };
        assert!(validate_configuration(&host, &fake_flag, &DegreePattern::from_counts(&[(1, 1)], &[(1, 1)])).is_err());
    }

    #[test]
    fn dual_kn_in_fano() {
        let host = fano();
        let found = find_dual_kn(&host, 4, 1_000).unwrap();
        let DualKnOutcome::Found(cfg) = found.outcome else { panic!("expected a quadrilateral") };
        assert!(validate_configuration(&host, &cfg, &DegreePattern::dual_complete(4)).unwrap());
        // C(5,2) = 10 meeting points exceed the 7 points.
        let none = find_dual_kn(&host, 5, 1_000_000).unwrap();
        assert_eq!(none.outcome, DualKnOutcome::NoneExists);
        assert!(none.nodes > 0);
        let tight = find_dual_kn(&host, 5, 1).unwrap();
        assert_eq!(tight.outcome, DualKnOutcome::Undecided);
        assert!(find_dual_kn(&host, 2, 10).is_err());
    }

    #[test]
    fn dual_kn_in_triangle() {
        let tri = graph(3, &[(0, 1), (1, 2), (0, 2)]);
        assert!(matches!(find_dual_kn(&tri, 3, 100).unwrap().outcome, DualKnOutcome::Found(_)));
        assert_eq!(find_dual_kn(&tri, 4, 100).unwrap().outcome, DualKnOutcome::NoneExists);
    }

    #[test]
    fn isomorphism_of_relabeled_fano() {
        let s1 = fano();
        let perm = [3u32, 6, 0, 5, 1, 4, 2];
        let s2 = IncidenceStructure::new(
            7,
            s1.blocks().iter().map(|b| b.iter().map(|&p| perm[p as usize]).collect()).collect(),
        )
        .unwrap();
        let bij = isomorphism_search(&s1, &s2).unwrap();
        assert!(bij.is_isomorphism(&s1, &s2));
        assert!(PointBijection::identity(7).is_isomorphism(&s1, &s1));
    }

    #[test]
    fn k33_is_not_the_prism() {
        let k33 = graph(6, &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]);
        let prism = graph(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]);
        // Same sizes, degrees and intersection profile: only the search separates them.
        assert_eq!(intersection_profile(&k33), intersection_profile(&prism));
        let (res, nodes) = isomorphism_search_counted(&k33, &prism);
        assert!(res.is_none());
        assert!(nodes > 1);
    }
}
