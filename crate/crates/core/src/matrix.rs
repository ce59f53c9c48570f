//! SL(2,8), ΣL(2,8) = ⟨δ⟩SL(2,8) and the 28 Sylow 3-subgroups of SL(2,8).
//!
//! δ is the semilinear map (x₀, x₁) ↦ (x₀⁴, x₁⁴); conjugating a matrix by δ
//! raises every entry to the 4th power.

use std::collections::HashMap;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use crate::error::{FieldError, GroupError};
use crate::field::F8;

/// A 2×2 matrix over GF(8), entries stored row-major.
///
/// The derived order is lexicographic on the entry bit patterns; it fixes
/// the enumeration order of SL(2,8) and the canonical form of Sylow points.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2(pub [F8; 4]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([F8::ONE, F8::ZERO, F8::ZERO, F8::ONE]);

    pub fn new(x00: F8, x01: F8, x10: F8, x11: F8) -> Mat2 {
        Mat2([x00, x01, x10, x11])
    }

    pub fn det(&self) -> F8 {
        let [a, b, c, d] = self.0;
        a * d + b * c
    }

    pub fn trace(&self) -> F8 {
        self.0[0] + self.0[3]
    }

    pub fn transpose(&self) -> Mat2 {
        let [a, b, c, d] = self.0;
        Mat2([a, c, b, d])
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat2::IDENTITY
    }

    pub fn inverse(&self) -> Result<Mat2, GroupError> {
        let det_inv = self.det().inv().map_err(|_| GroupError::Singular)?;
        let [a, b, c, d] = self.0;
        Ok(Mat2([d * det_inv, b * det_inv, c * det_inv, a * det_inv]))
    }

    /// Inverse of a determinant-one matrix (the adjugate, in characteristic 2).
    pub fn sl_inverse(&self) -> Mat2 {
        debug_assert_eq!(self.det(), F8::ONE);
        let [a, b, c, d] = self.0;
        Mat2([d, b, c, a])
    }

    pub fn pow(&self, e: u32) -> Mat2 {
        let mut acc = Mat2::IDENTITY;
        let mut base = *self;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// M^δ = δ⁻¹Mδ: every entry raised to the 4th power.
    pub fn delta_conjugate(&self) -> Mat2 {
        Mat2(self.0.map(F8::pow4))
    }

    /// M^g = g⁻¹Mg for g in SL(2,8).
    pub fn conj(&self, g: &Mat2) -> Mat2 {
        g.sl_inverse() * *self * *g
    }

    pub fn is_involution(&self) -> bool {
        !self.is_identity() && (*self * *self).is_identity()
    }

    /// Multiplicative order by repeated multiplication (at most 9 for SL(2,8)).
    pub fn order_of(&self) -> Result<u32, GroupError> {
        if self.det().is_zero() {
            return Err(GroupError::Singular);
        }
        let mut acc = *self;
        let mut k = 1;
        // |GL(2,8)| bounds every element order.
        while !acc.is_identity() {
            acc = acc * *self;
            k += 1;
            if k > 3528 {
                return Err(GroupError::Inconsistent(format!("{self} has no finite order")));
            }
        }
        Ok(k)
    }

    /// Order of a non-identity element of SL(2,8) read off from its trace:
    /// 0 gives 2, 1 gives 3, u³/u⁵/u⁶ give 7, and u/u²/u⁴ give 9.
    pub fn order_by_trace(&self) -> Result<u32, GroupError> {
        if self.is_identity() {
            return Err(GroupError::Identity);
        }
        Ok(match self.trace().log() {
            None => 2,
            Some(0) => 3,
            Some(1 | 2 | 4) => 9,
            Some(_) => 7,
        })
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let [a, b, c, d] = self.0;
        let [e, f, g, h] = rhs.0;
        Mat2([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h])
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "[[{a},{b}],[{c},{d}]]")
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Mat2 {
    type Err = FieldError;

    /// Parses `[[a,b],[c,d]]` with GF(8) entries such as `u^3`, `1`, `0`.
    fn from_str(s: &str) -> Result<Mat2, FieldError> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = cleaned
            .strip_prefix("[[")
            .and_then(|t| t.strip_suffix("]]"))
            .ok_or_else(|| FieldError::Parse(s.to_string()))?;
        let entries: Vec<&str> = inner.split("],[").flat_map(|row| row.split(',')).collect();
        if entries.len() != 4 {
            return Err(FieldError::Parse(s.to_string()));
        }
        let mut m = [F8::ZERO; 4];
        for (slot, e) in m.iter_mut().zip(entries) {
            *slot = e.parse()?;
        }
        Ok(Mat2(m))
    }
}

/// An element δᵐM of ΣL(2,8), with m taken mod 3 and M in SL(2,8).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SemiLinear {
    pub delta_exp: u8,
    pub mat: Mat2,
}

impl SemiLinear {
    pub const IDENTITY: SemiLinear = SemiLinear { delta_exp: 0, mat: Mat2::IDENTITY };
    pub const DELTA: SemiLinear = SemiLinear { delta_exp: 1, mat: Mat2::IDENTITY };

    pub fn new(delta_exp: i64, mat: Mat2) -> SemiLinear {
        SemiLinear { delta_exp: delta_exp.rem_euclid(3) as u8, mat }
    }

    pub fn linear(mat: Mat2) -> SemiLinear {
        SemiLinear { delta_exp: 0, mat }
    }

    pub fn is_identity(&self) -> bool {
        *self == SemiLinear::IDENTITY
    }

    pub fn inverse(&self) -> SemiLinear {
        // (δᵐM)⁻¹ = M⁻¹δ⁻ᵐ = δ⁻ᵐ (M⁻¹)^(δ⁻ᵐ)
        let k = (3 - self.delta_exp) % 3;
        SemiLinear { delta_exp: k, mat: delta_pow(&self.mat.sl_inverse(), k) }
    }

    pub fn order(&self) -> u32 {
        let mut acc = *self;
        let mut k = 1;
        while !acc.is_identity() {
            acc = acc * *self;
            k += 1;
        }
        k
    }

    /// x^g = g⁻¹xg for a matrix x in SL(2,8).
    pub fn conjugate(&self, x: &Mat2) -> Mat2 {
        // (δᵐM)⁻¹ x δᵐM = M⁻¹ x^(δᵐ) M
        delta_pow(x, self.delta_exp).conj(&self.mat)
    }
}

fn delta_pow(x: &Mat2, k: u8) -> Mat2 {
    (0..k).fold(*x, |acc, _| acc.delta_conjugate())
}

impl Mul for SemiLinear {
    type Output = SemiLinear;
    /// (δᵐM)(δᵏN) = δ^(m+k) M^(δᵏ) N.
    fn mul(self, rhs: SemiLinear) -> SemiLinear {
        SemiLinear {
            delta_exp: (self.delta_exp + rhs.delta_exp) % 3,
            mat: delta_pow(&self.mat, rhs.delta_exp) * rhs.mat,
        }
    }
}

/// A cyclic subgroup of order 9 of SL(2,8), standing for its normalizer in ΣL(2,8).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SylowPoint {
    pub id: usize,
    /// First order-9 element of the subgroup in enumeration order.
    pub generator: Mat2,
    /// The nine elements, sorted.
    pub elements: [Mat2; 9],
}

impl SylowPoint {
    pub fn contains(&self, x: &Mat2) -> bool {
        self.elements.binary_search(x).is_ok()
    }
}

/// All 504 elements of SL(2,8) in row-major entry order.
pub fn enumerate_sl28() -> Vec<Mat2> {
    let mut out = Vec::with_capacity(504);
    for a in F8::all() {
        for b in F8::all() {
            for c in F8::all() {
                for d in F8::all() {
                    let m = Mat2([a, b, c, d]);
                    if m.det() == F8::ONE {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

/// The 28 cyclic subgroups of order 9, ids in order of first generator.
pub fn sylow3_points(elements: &[Mat2]) -> Vec<SylowPoint> {
    let mut points: Vec<SylowPoint> = Vec::with_capacity(28);
    for g in elements {
        if g.order_by_trace() != Ok(9) || points.iter().any(|p| p.contains(g)) {
            continue;
        }
        let mut elts = [Mat2::IDENTITY; 9];
        let mut acc = Mat2::IDENTITY;
        for slot in elts.iter_mut() {
            *slot = acc;
            acc = acc * *g;
        }
        elts.sort();
        points.push(SylowPoint { id: points.len(), generator: *g, elements: elts });
    }
    points
}

/// SL(2,8) with its involutions and Sylow points, enumerated once.
pub struct Sl28 {
    elements: Vec<Mat2>,
    involutions: Vec<Mat2>,
    points: Vec<SylowPoint>,
    /// Every element of order 3 or 9, mapped to the unique Sylow point containing it.
    point_of: HashMap<Mat2, usize>,
}

impl Default for Sl28 {
    fn default() -> Self {
        Sl28::new()
    }
}

impl Sl28 {
    pub fn new() -> Sl28 {
        let elements = enumerate_sl28();
        let involutions = elements.iter().copied().filter(Mat2::is_involution).collect();
        let points = sylow3_points(&elements);
        let mut point_of = HashMap::new();
        for p in &points {
            for x in p.elements.iter().filter(|x| !x.is_identity()) {
                point_of.insert(*x, p.id);
            }
        }
        Sl28 { elements, involutions, points, point_of }
    }

    pub fn elements(&self) -> &[Mat2] {
        &self.elements
    }

    pub fn involutions(&self) -> &[Mat2] {
        &self.involutions
    }

    pub fn points(&self) -> &[SylowPoint] {
        &self.points
    }

    /// p_X: the Sylow point whose subgroup contains X (X of order 3 or 9).
    pub fn point_of(&self, x: &Mat2) -> Result<usize, GroupError> {
        self.point_of.get(x).copied().ok_or_else(|| GroupError::NotInSylow(x.to_string()))
    }

    /// Whether the involution `inv` normalizes the subgroup of `p`.
    pub fn normalizes(&self, inv: &Mat2, p: &SylowPoint) -> bool {
        p.contains(&p.generator.conj(inv))
    }

    /// Image of point `p` under conjugation by `g`.
    pub fn point_image(&self, p: usize, g: &SemiLinear) -> usize {
        let gen = g.conjugate(&self.points[p].generator);
        self.point_of[&gen]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> Mat2 {
        s.parse().unwrap()
    }

    fn named() -> (Mat2, Mat2, Mat2, Mat2) {
        (m("[[0,1],[1,0]]"), m("[[1,0],[1,1]]"), m("[[u^2,u],[u,u^4]]"), m("[[0,1],[1,1]]"))
    }

    #[test]
    fn notation_identities() {
        let (s, t, a, d) = named();
        assert_eq!(t * s, d);
        assert_eq!(a * a * a, d);
        assert_eq!(a.pow(4), a.delta_conjugate());
        assert_eq!(a.conj(&s), a.sl_inverse());
        assert_eq!(a * Mat2::IDENTITY, a);
    }

    #[test]
    fn s_conjugation_is_transpose_inverse() {
        let (s, ..) = named();
        for x in enumerate_sl28() {
            assert_eq!(x.conj(&s), x.inverse().unwrap().transpose());
        }
    }

    #[test]
    fn delta_conjugation() {
        let (s, _, a, _) = named();
        assert_eq!(a.delta_conjugate(), a.pow(4));
        assert_eq!(s.delta_conjugate(), s);
        assert_eq!(m("[[u,u^2],[u^4,u]]").delta_conjugate(), m("[[u^4,u],[u^2,u^4]]"));
        for x in enumerate_sl28() {
            let y = x.delta_conjugate();
            assert_eq!(y.det(), F8::ONE);
            assert_eq!(y.delta_conjugate().delta_conjugate(), x);
        }
    }

    #[test]
    fn orders_by_trace_examples() {
        let (s, _, a, d) = named();
        assert_eq!(s.order_by_trace(), Ok(2));
        assert_eq!(d.order_by_trace(), Ok(3));
        assert_eq!(a.trace(), F8::from_power(1));
        assert_eq!(a.order_by_trace(), Ok(9));
        assert_eq!(a.order_of(), Ok(9));
        assert_eq!(m("[[u,0],[0,u^6]]").order_of(), Ok(7));
        assert_eq!(Mat2::IDENTITY.order_by_trace(), Err(GroupError::Identity));
    }

    #[test]
    fn singular_inverse_is_an_error() {
        assert_eq!(m("[[1,1],[1,1]]").inverse(), Err(GroupError::Singular));
        assert_eq!(m("[[0,0],[0,0]]").order_of(), Err(GroupError::Singular));
    }

    #[test]
    fn group_counts() {
        let g = enumerate_sl28();
        assert_eq!(g.len(), 504);
        let mut sorted = g.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted, g, "enumeration is strictly increasing");
        let count = |k| g.iter().filter(|x| x.order_of() == Ok(k)).count();
        assert_eq!(count(2), 63);
        assert_eq!(count(9), 168);
        assert_eq!(count(3), 56);
        assert_eq!(count(7), 216);
    }

    #[test]
    fn sylow_points_intersect_trivially() {
        let sl = Sl28::new();
        let pts = sl.points();
        assert_eq!(pts.len(), 28);
        let (.., a, _) = named();
        assert!(pts.iter().any(|p| p.contains(&a)));
        for (i, p) in pts.iter().enumerate() {
            assert_eq!(p.id, i);
            for r in &pts[i + 1..] {
                let common: Vec<_> = p.elements.iter().filter(|x| r.contains(x)).collect();
                assert_eq!(common, vec![&Mat2::IDENTITY]);
            }
        }
    }

    #[test]
    fn incidence_counts() {
        let sl = Sl28::new();
        for inv in sl.involutions() {
            let n = sl.points().iter().filter(|p| sl.normalizes(inv, p)).count();
            assert_eq!(n, 4);
        }
        for p in sl.points() {
            let n = sl.involutions().iter().filter(|i| sl.normalizes(i, p)).count();
            assert_eq!(n, 9);
        }
    }

    #[test]
    fn normalizes_examples() {
        let sl = Sl28::new();
        let (s, t, _, d) = named();
        let pd = &sl.points()[sl.point_of(&d).unwrap()];
        assert!(sl.normalizes(&s, pd));
        assert!(sl.normalizes(&t, pd));
        assert!(!sl.normalizes(&m("[[u^5,1],[u,u^5]]"), pd));
    }

    #[test]
    fn delta_permutes_points_and_involutions() {
        let sl = Sl28::new();
        let mut imgs: Vec<usize> = (0..28).map(|p| sl.point_image(p, &SemiLinear::DELTA)).collect();
        imgs.sort();
        assert_eq!(imgs, (0..28).collect::<Vec<_>>());
        let mut invs: Vec<Mat2> = sl.involutions().iter().map(Mat2::delta_conjugate).collect();
        invs.sort();
        assert_eq!(invs, sl.involutions());
    }

    #[test]
    fn semilinear_arithmetic() {
        let (_, _, a, _) = named();
        let da = SemiLinear::DELTA * SemiLinear::linear(a);
        assert_eq!(da * da.inverse(), SemiLinear::IDENTITY);
        assert_eq!(da.inverse() * da, SemiLinear::IDENTITY);
        // δ⁻¹ A δ = A^δ
        let conj = SemiLinear::DELTA.inverse() * SemiLinear::linear(a) * SemiLinear::DELTA;
        assert_eq!(conj, SemiLinear::linear(a.delta_conjugate()));
        assert_eq!(SemiLinear::DELTA.conjugate(&a), a.delta_conjugate());
    }

    #[test]
    fn sylow_subgroup_of_sigma_l() {
        let (_, _, a, _) = named();
        let gens = [SemiLinear::DELTA, SemiLinear::linear(a)];
        let mut group = vec![SemiLinear::IDENTITY];
        let mut frontier = vec![SemiLinear::IDENTITY];
        while let Some(x) = frontier.pop() {
            for g in &gens {
                let y = x * *g;
                if !group.contains(&y) {
                    group.push(y);
                    frontier.push(y);
                }
            }
        }
        assert_eq!(group.len(), 27);
        assert!(group.iter().all(|x| 9 % x.order() == 0));
        let mut order9: Vec<SemiLinear> = group.iter().copied().filter(|x| x.order() == 9).collect();
        order9.sort();
        let mut expected: Vec<SemiLinear> =
            (0..3).flat_map(|k| [1, 2, 4, 5, 7, 8].map(|n| SemiLinear::new(k, a.pow(n)))).collect();
        expected.sort();
        assert_eq!(order9, expected);
        // every cube is a power of A³
        for x in &group {
            let c = *x * *x * *x;
            assert_eq!(c.delta_exp, 0);
            assert!([0, 3, 6].iter().any(|&k| c.mat == a.pow(k)));
        }
    }

    #[test]
    fn text_form() {
        let x = m("[[u^5,1],[u,u^5]]");
        assert_eq!(x.to_string(), "[[u^5,1],[u,u^5]]");
        assert_eq!(x.to_string().parse::<Mat2>().unwrap(), x);
        assert!("[[1,0],[0]]".parse::<Mat2>().is_err());
    }
}
