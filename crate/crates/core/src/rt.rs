//! The Ree-Tits unital RT(q): points P = Ξ ∪ {∞}, blocks the fixed-point
//! sets of involutions of the Ree group.
//!
//! The design is materialized for q ∈ {3, 27}. Joins, the super O'Nan
//! configuration, its translates and the intersection search only need the
//! root group and work for larger q as well.

use rayon::prelude::*;
use serde::Serialize;

use crate::design::{check_dual_kn, Configuration, IncidenceStructure};
use crate::error::{DesignError, ReeError};
use crate::field::F3n;
use crate::ree::{ReeGen, ReePoint, ReeWord, RootGroup, Xi};

pub struct RtUnital {
    group: RootGroup,
    structure: IncidenceStructure,
}

impl RtUnital {
    /// Materializes every block of RT(q), q ∈ {3, 27}.
    ///
    /// The q² blocks through ∞ come from the involution parameters. Their
    /// ω-images (except Fix σ, which ω leaves invariant) are the blocks through
    /// o missing ∞, and every other block is a right translate B·ξ of one of
    /// those. A translate is kept only when ξ is its smallest point, which
    /// selects each block exactly once.
    pub fn build(group: &RootGroup) -> Result<RtUnital, ReeError> {
        let q = group.q();
        if q != 3 && q != 27 {
            return Err(ReeError::UnsupportedOrder { q, allowed: "3, 27" });
        }
        let v = group.num_points();
        let params = group.involution_params();
        let mut blocks: Vec<Vec<u32>> =
            params.iter().map(|&iv| ids(group, &group.involution_fixed_points(iv))).collect();

        let o = group.identity();
        let base: Vec<Vec<Xi>> = params
            .par_iter()
            .filter(|iv| !(iv.a.is_zero() && iv.c.is_zero()))
            .map(|&iv| {
                let mut pts = Vec::with_capacity(q as usize);
                for p in group.involution_fixed_points(iv) {
                    match group.omega(p)? {
                        ReePoint::Finite(x) if x != o => pts.push(x),
                        ReePoint::Finite(_) => {}
                        ReePoint::Infinity => {
                            return Err(ReeError::Design(DesignError::Configuration(
                                "ω-image of a block missing o contains ∞".into(),
                            )))
                        }
                    }
                }
                Ok(pts)
            })
            .collect::<Result<_, ReeError>>()?;

        let translates: Vec<Vec<u32>> = (0..v - 1)
            .into_par_iter()
            .flat_map_iter(|i| {
                let xi = group.xi_at(i);
                let own = (i + 1) as u32;
                let base = &base;
                base.iter().filter_map(move |others| {
                    let mut block = Vec::with_capacity(others.len() + 1);
                    block.push(own);
                    for &p in others {
                        let id = group.point_id(ReePoint::Finite(group.mul(p, xi))) as u32;
                        if id < own {
                            return None;
                        }
                        block.push(id);
                    }
                    Some(block)
                })
            })
            .collect();
        blocks.extend(translates);
        blocks.par_iter_mut().for_each(|b| b.sort_unstable());
        blocks.par_sort_unstable();
        if let Some(w) = blocks.windows(2).find(|w| w[0] == w[1]) {
            return Err(ReeError::Design(DesignError::Configuration(format!("block {:?} generated twice", w[0]))));
        }
        let expected = (q as usize).pow(2) * (v) / (q as usize + 1);
        if blocks.len() != expected {
            return Err(ReeError::Design(DesignError::Configuration(format!(
                "generated {} blocks, expected {expected}",
                blocks.len()
            ))));
        }
        let structure = IncidenceStructure::new(v, blocks)?;
        Ok(RtUnital { group: group.clone(), structure })
    }

    pub fn for_order(q: u32) -> Result<RtUnital, ReeError> {
        RtUnital::build(&RootGroup::for_order(q)?)
    }

    pub fn group(&self) -> &RootGroup {
        &self.group
    }

    pub fn structure(&self) -> &IncidenceStructure {
        &self.structure
    }

    pub fn block_points(&self, b: usize) -> Result<Vec<ReePoint>, ReeError> {
        self.structure.block(b).iter().map(|&p| self.group.point(p as usize)).collect()
    }

    pub fn find_block(&self, points: &[ReePoint]) -> Option<usize> {
        let mut key = ids(&self.group, points);
        key.sort_unstable();
        self.structure.find_block(&key)
    }

    /// The super O'Nan configuration 𝒮 as a configuration of this structure.
    pub fn super_onan(&self) -> Result<Configuration, ReeError> {
        let s = SuperOnan::new(&self.group)?;
        let blocks = s
            .blocks
            .iter()
            .map(|b| {
                self.find_block(b)
                    .ok_or_else(|| ReeError::Design(DesignError::Configuration("block of 𝒮 missing from RT(q)".into())))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let cfg = check_dual_kn(&self.structure, &blocks)?;
        let mut want = ids(&self.group, &s.points);
        want.sort_unstable();
        if cfg.points.iter().map(|&p| p as u32).ne(want.iter().copied()) {
            return Err(ReeError::Design(DesignError::Configuration(format!(
                "meeting points of 𝒮 are {:?}, expected {want:?}",
                cfg.points
            ))));
        }
        Ok(cfg)
    }
}

fn ids(group: &RootGroup, pts: &[ReePoint]) -> Vec<u32> {
    pts.iter().map(|&p| group.point_id(p) as u32).collect()
}

fn sorted_ids(group: &RootGroup, pts: &[ReePoint]) -> Vec<u32> {
    let mut v = ids(group, pts);
    v.sort_unstable();
    v
}

/// The block through two distinct points, as points in id order.
pub fn join_rt(group: &RootGroup, p: ReePoint, r: ReePoint) -> Result<Vec<ReePoint>, ReeError> {
    if p == r {
        return Err(ReeError::SamePoint);
    }
    let block = match (p, r) {
        (ReePoint::Infinity, ReePoint::Finite(x)) | (ReePoint::Finite(x), ReePoint::Infinity) => {
            group.involution_fixed_points(group.involution_through(x))
        }
        (ReePoint::Finite(x), ReePoint::Finite(y)) => {
            // Move x to o, then o to ∞, join there, and map back.
            let shifted = group.mul(y, group.inv(x));
            let ReePoint::Finite(image) = group.omega(ReePoint::Finite(shifted))? else {
                unreachable!("ω maps points other than o to finite points")
            };
            let at_inf = group.involution_fixed_points(group.involution_through(image));
            at_inf.into_iter().map(|z| group.omega(z).map(|w| group.translate(w, x))).collect::<Result<Vec<_>, _>>()?
        }
        (ReePoint::Infinity, ReePoint::Infinity) => unreachable!("handled above"),
    };
    let mut block = block;
    block.sort_by_key(|&z| group.point_id(z));
    Ok(block)
}

/// Named points and maps of the worked example: ε = ⟨0,0,−1⟩, λ = ⟨0,1,0⟩,
/// ε′ = ε^σ λ, α = ⟨−1,0,1⟩ and ι = (ωα)ω(ωα)⁻¹.
#[derive(Clone, Debug)]
pub struct Named {
    pub epsilon: Xi,
    pub epsilon_prime: Xi,
    pub lambda: Xi,
    pub alpha: Xi,
    pub psi: Xi,
    pub zeta: Xi,
}

impl Named {
    pub fn new(group: &RootGroup) -> Named {
        let epsilon = group.xi(0, 0, -1);
        let lambda = group.xi(0, 1, 0);
        let sigma_eps = group.eta(-group.field().one(), epsilon).expect("−1 ≠ 0");
        Named {
            epsilon,
            epsilon_prime: group.mul(sigma_eps, lambda),
            lambda,
            alpha: group.xi(-1, 0, 1),
            psi: group.xi(-1, -1, 1),
            zeta: group.xi(0, 0, 1),
        }
    }

    /// λ_t = ⟨0,t,0⟩.
    pub fn lambda_t(group: &RootGroup, t: F3n) -> Xi {
        let z = group.field().zero();
        Xi { a: z, b: t, c: z }
    }

    pub fn iota(&self, group: &RootGroup) -> ReeWord {
        use ReeGen::*;
        ReeWord(vec![Omega, Translate(self.alpha), Omega, Translate(group.inv(self.alpha)), Omega])
    }
}

/// All fixed points of ω, by scanning P.
pub fn omega_fix(group: &RootGroup) -> Result<Vec<ReePoint>, ReeError> {
    let found: Vec<Option<ReePoint>> = (0..group.num_points())
        .into_par_iter()
        .map(|i| {
            let p = group.point(i)?;
            Ok((group.omega(p)? == p).then_some(p))
        })
        .collect::<Result<_, ReeError>>()?;
    Ok(found.into_iter().flatten().collect())
}

/// Fix ι computed three ways: by joining ε and ε′, as (Fix ω · α⁻¹)^ω, and
/// by scanning for fixed points of the word for ι. Returns the three sets in
/// id order.
pub fn fix_iota_routes(group: &RootGroup) -> Result<[Vec<ReePoint>; 3], ReeError> {
    let named = Named::new(group);
    let by_join = join_rt(group, ReePoint::Finite(named.epsilon), ReePoint::Finite(named.epsilon_prime))?;
    let alpha_inv = group.inv(named.alpha);
    let mut by_omega = omega_fix(group)?
        .into_iter()
        .map(|p| group.omega(group.translate(p, alpha_inv)))
        .collect::<Result<Vec<_>, _>>()?;
    by_omega.sort_by_key(|&p| group.point_id(p));
    let by_scan = group.fixed_points(&named.iota(group))?;
    Ok([by_join, by_omega, by_scan])
}

/// The points and blocks of 𝒮, before locating them in any host structure.
#[derive(Clone, Debug)]
pub struct SuperOnan {
    /// ∞, ε, ελ, ελ², ε^σ, ε^σλ, ε^σλ², ψ, ψλ, ψλ².
    pub points: Vec<ReePoint>,
    /// Fix τ, Fix τ^σ, Fix ι, Fix ι^λ, Fix ι^λ², each in id order.
    pub blocks: Vec<Vec<ReePoint>>,
}

impl SuperOnan {
    pub fn new(group: &RootGroup) -> Result<SuperOnan, ReeError> {
        let n = Named::new(group);
        let fin = ReePoint::Finite;
        let lam = |x: Xi, k: u32| group.mul(x, group.pow(n.lambda, k));
        let sigma_eps = group.eta(-group.field().one(), n.epsilon)?;
        let mut points = vec![ReePoint::Infinity];
        for base in [n.epsilon, sigma_eps, n.psi] {
            for k in 0..3 {
                points.push(fin(lam(base, k)));
            }
        }
        let tau = join_rt(group, ReePoint::Infinity, fin(n.epsilon))?;
        let tau_sigma = join_rt(group, ReePoint::Infinity, fin(sigma_eps))?;
        let iota = join_rt(group, fin(n.epsilon), fin(n.epsilon_prime))?;
        let mut blocks = vec![tau, tau_sigma];
        for k in 0..3 {
            let shift = group.pow(n.lambda, k);
            let mut b: Vec<ReePoint> = iota.iter().map(|&p| group.translate(p, shift)).collect();
            b.sort_by_key(|&p| group.point_id(p));
            blocks.push(b);
        }
        Ok(SuperOnan { points, blocks })
    }

    pub fn translate(&self, group: &RootGroup, by: Xi) -> SuperOnan {
        let mv = |pts: &[ReePoint]| {
            let mut out: Vec<ReePoint> = pts.iter().map(|&p| group.translate(p, by)).collect();
            out.sort_by_key(|&p| group.point_id(p));
            out
        };
        SuperOnan {
            points: self.points.iter().map(|&p| group.translate(p, by)).collect(),
            blocks: self.blocks.iter().map(|b| mv(b)).collect(),
        }
    }
}

/// The translates 𝒮λ_t for t with vanishing constant coefficient, one per
/// coset of GF(3) in K.
pub struct PearlChain {
    pub translates: Vec<F3n>,
    /// Structure on all of P holding just the blocks of the translates.
    pub structure: IncidenceStructure,
    /// One dual-K₅ per translate, in `structure` ids.
    pub configurations: Vec<Configuration>,
    /// Ids of Fix τ and Fix τ^σ in `structure`.
    pub shared_blocks: [usize; 2],
    pub union_points: usize,
    pub union_blocks: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PearlSummary {
    pub q: u32,
    pub configurations: usize,
    pub union_points: usize,
    pub union_blocks: usize,
    pub all_share_tau_and_infinity: bool,
}

impl PearlChain {
    pub fn summary(&self, q: u32) -> PearlSummary {
        let shared = self
            .configurations
            .iter()
            .all(|c| c.points.first() == Some(&0) && self.shared_blocks.iter().all(|b| c.blocks.contains(b)));
        PearlSummary {
            q,
            configurations: self.configurations.len(),
            union_points: self.union_points,
            union_blocks: self.union_blocks,
            all_share_tau_and_infinity: shared,
        }
    }
}

pub fn string_of_pearls(group: &RootGroup) -> Result<PearlChain, ReeError> {
    let f = group.field();
    let base = SuperOnan::new(group)?;
    let translates: Vec<F3n> = f.elements().filter(|t| t.coeff(0) == 0).collect();
    let copies: Vec<SuperOnan> = translates.iter().map(|&t| base.translate(group, Named::lambda_t(group, t))).collect();

    let mut all_blocks: Vec<Vec<u32>> =
        copies.iter().flat_map(|c| c.blocks.iter().map(|b| sorted_ids(group, b))).collect();
    all_blocks.sort_unstable();
    all_blocks.dedup();
    let structure = IncidenceStructure::new(group.num_points(), all_blocks)?;
    let locate = |b: &[ReePoint]| structure.find_block(&sorted_ids(group, b)).expect("block was inserted above");
    let shared_blocks = [locate(&base.blocks[0]), locate(&base.blocks[1])];

    let mut configurations = Vec::with_capacity(copies.len());
    let mut union_points: Vec<usize> = Vec::new();
    for copy in &copies {
        let blocks: Vec<usize> = copy.blocks.iter().map(|b| locate(b)).collect();
        if blocks[..2] != shared_blocks {
            return Err(ReeError::Design(DesignError::Configuration("a translate moves Fix τ or Fix τ^σ".into())));
        }
        let cfg = check_dual_kn(&structure, &blocks)?;
        let mut want: Vec<usize> = copy.points.iter().map(|&p| group.point_id(p)).collect();
        want.sort_unstable();
        if cfg.points != want {
            return Err(ReeError::Design(DesignError::Configuration(format!(
                "translate has meeting points {:?}, expected {want:?}",
                cfg.points
            ))));
        }
        union_points.extend(&cfg.points);
        configurations.push(cfg);
    }
    union_points.sort_unstable();
    union_points.dedup();
    Ok(PearlChain {
        translates,
        union_points: union_points.len(),
        union_blocks: structure.b(),
        structure,
        configurations,
        shared_blocks,
    })
}

/// A solution (x, s, m) of
/// ω(⟨0,x,−1⟩) = ω(⟨0,s,−1⟩) * ⟨0,m,0⟩ with m ≠ 0.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct IntersectionSolution {
    pub x: F3n,
    pub s: F3n,
    pub m: F3n,
}

/// All solutions, found by scanning pairs (x, s) and reading m off the
/// middle coordinate. Sorted by (rank s, rank x).
///
/// With X = x^(θ+1)+1, u = −1/X and v = −1/(s^(θ+1)+1) the three
/// coordinates read u(1−x) = v(1−s), ux^θ = vs^θ + m and −u = v(1−s)m − v.
pub fn intersection_search(group: &RootGroup) -> Vec<IntersectionSolution> {
    let f = group.field();
    let one = f.one();
    let elements: Vec<F3n> = f.elements().collect();
    struct Row {
        first: u32,
        second: F3n,
        third: F3n,
        v: F3n,
        one_minus: F3n,
    }
    // Denominators x^(θ+1)+1 never vanish: x^(θ+1) is a square and −1 is not.
    let rows: Vec<Option<Row>> = elements
        .iter()
        .map(|&x| {
            let xt = group.field().theta(x);
            let d = f.mul(xt, x) + one;
            let u = -f.inv(d).ok()?;
            let one_minus = one - x;
            Some(Row { first: f.rank(f.mul(u, one_minus)), second: f.mul(u, xt), third: -u, v: u, one_minus })
        })
        .collect();
    let mut out: Vec<IntersectionSolution> = (0..elements.len())
        .into_par_iter()
        .flat_map_iter(|si| {
            let rows = &rows;
            let elements = &elements;
            let sr = rows[si].as_ref();
            (0..elements.len()).filter_map(move |xi| {
                let sr = sr?;
                let xr = rows[xi].as_ref()?;
                if xr.first != sr.first {
                    return None;
                }
                // rows store u·x^θ and −u with u playing v's role for s.
                let m = xr.second - sr.second;
                if m.is_zero() {
                    return None;
                }
                let rhs = f.mul(f.mul(sr.v, sr.one_minus), m) - sr.v;
                (xr.third == rhs).then_some(IntersectionSolution { x: elements[xi], s: elements[si], m })
            })
        })
        .collect();
    out.sort_by_key(|sol| (f.rank(sol.s), f.rank(sol.x)));
    out
}

/// The same solutions by testing every (x, s, m) with the group law and ω.
pub fn intersection_scan_full(group: &RootGroup) -> Result<Vec<IntersectionSolution>, ReeError> {
    let f = group.field();
    let z = f.zero();
    let images: Vec<Xi> =
        f.elements().map(|x| group.omega_xi(Xi { a: z, b: x, c: -f.one() })).collect::<Result<_, _>>()?;
    let mut out = Vec::new();
    for (si, s) in f.elements().enumerate() {
        for m in f.nonzero() {
            let rhs = group.mul(images[si], Xi { a: z, b: m, c: z });
            for (xi, x) in f.elements().enumerate() {
                if images[xi] == rhs {
                    out.push(IntersectionSolution { x, s, m });
                }
            }
        }
    }
    out.sort_by_key(|sol| (f.rank(sol.s), f.rank(sol.x)));
    Ok(out)
}

/// The common point ξ = ω(⟨0,x,−1⟩)·ε of Fix ι and Fix ι·μ, and μ = λ_m.
pub fn solution_meaning(group: &RootGroup, sol: &IntersectionSolution) -> Result<(Xi, Xi), ReeError> {
    let f = group.field();
    let named = Named::new(group);
    let w = group.omega_xi(Xi { a: f.zero(), b: sol.x, c: -f.one() })?;
    Ok((group.mul(w, named.epsilon), Named::lambda_t(group, sol.m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::verify_2design;

    fn g3() -> RootGroup {
        RootGroup::new(1).unwrap()
    }

    #[test]
    fn rt3_is_a_unital() {
        let rt = RtUnital::build(&g3()).unwrap();
        let p = verify_2design(rt.structure()).unwrap();
        assert_eq!((p.v, p.b, p.r, p.k, p.lambda), (28, 63, 9, 4, 1));
    }

    #[test]
    fn unsupported_build() {
        let g = RootGroup::new(5).unwrap();
        assert!(matches!(RtUnital::build(&g), Err(ReeError::UnsupportedOrder { q: 243, .. })));
    }

    #[test]
    fn join_examples() {
        let g = g3();
        let fin = ReePoint::Finite;
        let tau = join_rt(&g, ReePoint::Infinity, fin(g.xi(0, 0, -1))).unwrap();
        let mut want = vec![ReePoint::Infinity];
        want.extend((0..3).map(|y| fin(g.xi(0, y, -1))));
        want.sort_by_key(|&p| g.point_id(p));
        assert_eq!(tau, want);
        assert_eq!(join_rt(&g, ReePoint::Infinity, ReePoint::Infinity), Err(ReeError::SamePoint));
    }

    #[test]
    fn joins_match_rt3_blocks() {
        let g = g3();
        let rt = RtUnital::build(&g).unwrap();
        let mut joined = Vec::new();
        for i in 0..28 {
            for j in i + 1..28 {
                let b = join_rt(&g, g.point(i).unwrap(), g.point(j).unwrap()).unwrap();
                let back = join_rt(&g, g.point(j).unwrap(), g.point(i).unwrap()).unwrap();
                assert_eq!(b, back);
                joined.push(ids(&g, &b));
            }
        }
        joined.sort();
        joined.dedup();
        assert_eq!(joined, rt.structure().blocks());
    }

    #[test]
    fn search_q3_matches_full_scan() {
        let g = g3();
        let fast = intersection_search(&g);
        assert_eq!(fast, intersection_scan_full(&g).unwrap());
        assert_eq!(fast.len(), 2);
    }

    #[test]
    fn pearls_q3() {
        let g = g3();
        let chain = string_of_pearls(&g).unwrap();
        assert_eq!(chain.configurations.len(), 1);
        assert_eq!((chain.union_points, chain.union_blocks), (10, 5));
    }
}
