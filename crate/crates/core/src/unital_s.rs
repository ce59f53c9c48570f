//! The unital S of order 3 built from SL(2,8): points are the 28 Sylow
//! 3-subgroups (standing for their normalizers in ΣL(2,8)), blocks are the 63
//! involutions, and an involution is incident with a point when it
//! normalizes the subgroup.
//!
//! Point ids follow [`Sl28::points`], block ids follow the enumeration order
//! of the involutions.

use std::collections::HashMap;

use crate::design::{check_dual_kn, validate_configuration, Configuration, DegreePattern, IncidenceStructure};
use crate::error::{DesignError, GroupError};
use crate::field::F8;
use crate::matrix::{Mat2, SemiLinear, Sl28};
use crate::perm::Perm;
use crate::report::Report;

pub struct UnitalS {
    group: Sl28,
    blocks: Vec<Mat2>,
    block_index: HashMap<Mat2, usize>,
    structure: IncidenceStructure,
}

impl UnitalS {
    pub fn build() -> Result<UnitalS, GroupError> {
        let group = Sl28::new();
        let blocks: Vec<Mat2> = group.involutions().to_vec();
        let block_index = blocks.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let rows: Vec<Vec<u32>> = blocks
            .iter()
            .map(|inv| group.points().iter().filter(|p| group.normalizes(inv, p)).map(|p| p.id as u32).collect())
            .collect();
        let structure =
            IncidenceStructure::new(group.points().len(), rows).map_err(|e| GroupError::Inconsistent(e.to_string()))?;
        if structure.v() != 28 || structure.b() != 63 || structure.blocks().iter().any(|b| b.len() != 4) {
            return Err(GroupError::Inconsistent("S does not have 28 points and 63 blocks of size 4".into()));
        }
        Ok(UnitalS { group, blocks, block_index, structure })
    }

    pub fn group(&self) -> &Sl28 {
        &self.group
    }

    pub fn structure(&self) -> &IncidenceStructure {
        &self.structure
    }

    pub fn block_matrix(&self, b: usize) -> Mat2 {
        self.blocks[b]
    }

    pub fn block_of(&self, inv: &Mat2) -> Result<usize, GroupError> {
        self.block_index.get(inv).copied().ok_or_else(|| GroupError::NotInvolution(inv.to_string()))
    }

    /// p_X for X of order 3 or 9.
    pub fn point_of(&self, x: &Mat2) -> Result<usize, GroupError> {
        self.group.point_of(x)
    }

    pub fn points_on(&self, inv: &Mat2) -> Result<Vec<usize>, GroupError> {
        let b = self.block_of(inv)?;
        Ok(self.structure.block(b).iter().map(|&p| p as usize).collect())
    }

    pub fn blocks_through(&self, p: usize) -> Vec<usize> {
        self.structure.blocks_through(p).iter().map(|&b| b as usize).collect()
    }

    /// The involution normalizing both points, found by solving IB = B⁻¹I
    /// and IC = C⁻¹I linearly; falls back to [`UnitalS::join_points_scan`].
    pub fn join_points(&self, p: usize, q: usize) -> Result<Mat2, GroupError> {
        if p == q {
            return Err(GroupError::SamePoint);
        }
        let pts = self.group.points();
        let (b, c) = (pts[p].generator, pts[q].generator);
        let mut rows = inverting_equations(&b);
        rows.extend(inverting_equations(&c));
        let kernel = nullspace(&rows);
        if let [v] = kernel.as_slice() {
            let m = Mat2(*v);
            let det = m.det();
            if !det.is_zero() {
                // μ² det = 1, and square roots in GF(8) are 4th powers.
                let mu = det.inv().expect("non-zero").pow4();
                let inv = Mat2(m.0.map(|x| x * mu));
                if inv.is_involution() && self.block_index.contains_key(&inv) {
                    return Ok(inv);
                }
            }
        }
        self.join_points_scan(p, q)
    }

    /// Joining block by scanning all 63 involutions.
    pub fn join_points_scan(&self, p: usize, q: usize) -> Result<Mat2, GroupError> {
        if p == q {
            return Err(GroupError::SamePoint);
        }
        let pts = self.group.points();
        let found: Vec<Mat2> = self
            .blocks
            .iter()
            .copied()
            .filter(|i| self.group.normalizes(i, &pts[p]) && self.group.normalizes(i, &pts[q]))
            .collect();
        match found.as_slice() {
            [inv] => Ok(*inv),
            _ => Err(GroupError::Inconsistent(format!("points {p} and {q} are joined by {} blocks", found.len()))),
        }
    }

    /// The common point of two blocks: it exists iff tr(IL) ∈ {1, u, u², u⁴},
    /// and is then the Sylow point containing IL.
    pub fn meet_blocks(&self, i: &Mat2, l: &Mat2) -> Result<Option<usize>, GroupError> {
        for m in [i, l] {
            if !m.is_involution() {
                return Err(GroupError::NotInvolution(m.to_string()));
            }
        }
        if i == l {
            return Err(GroupError::SameBlock);
        }
        let il = *i * *l;
        match il.trace().log() {
            Some(0 | 1 | 2 | 4) => self.point_of(&il).map(Some),
            _ => Ok(None),
        }
    }

    /// Permutation of point ids induced by conjugation with g.
    pub fn point_perm(&self, g: &SemiLinear) -> Perm {
        let images = (0..28).map(|p| self.group.point_image(p, g) as u32).collect();
        Perm::from_images(images).expect("conjugation permutes the Sylow points")
    }

    /// Permutation of block ids induced by conjugation with g.
    pub fn block_perm(&self, g: &SemiLinear) -> Perm {
        let images = self.blocks.iter().map(|m| self.block_index[&g.conjugate(m)] as u32).collect();
        Perm::from_images(images).expect("conjugation permutes the involutions")
    }
}

/// Linear conditions on X = [[a,b],[c,d]] expressing XB = B⁻¹X.
fn inverting_equations(b: &Mat2) -> Vec<[F8; 4]> {
    let [b00, b01, b10, b11] = b.0;
    let [c00, c01, c10, c11] = b.sl_inverse().0;
    let z = F8::ZERO;
    vec![[b00 + c00, b10, c01, z], [b01, b11 + c00, z, c01], [c10, z, b00 + c11, b10], [z, c10, b01, b11 + c11]]
}

/// Basis of the solution space of rows·x = 0 over GF(8).
fn nullspace(rows: &[[F8; 4]]) -> Vec<[F8; 4]> {
    let mut m: Vec<[F8; 4]> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..4 {
        let Some(pr) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(r, pr);
        let inv = m[r][col].inv().expect("pivot is non-zero");
        m[r] = m[r].map(|x| x * inv);
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col];
                let pivot_row = m[r];
                for (x, p) in m[i].iter_mut().zip(pivot_row) {
                    *x = *x + f * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let free: Vec<usize> = (0..4).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = [F8::ZERO; 4];
            v[f] = F8::ONE;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = m[row][f];
            }
            v
        })
        .collect()
}

fn mat(s: &str) -> Mat2 {
    s.parse().expect("catalog literal")
}

/// The named elements of the explicit computations, by name.
pub struct Catalog {
    entries: Vec<(String, Mat2)>,
}

impl Catalog {
    /// Derives every named matrix from S, T, A, D, Y, G, E, M and I by
    /// conjugation with S and δ.
    pub fn new() -> Catalog {
        let s = mat("[[0,1],[1,0]]");
        let sd = SemiLinear::linear(s);
        let delta = |x: &Mat2, k: usize| (0..k).fold(*x, |acc, _| acc.delta_conjugate());
        let mut entries: Vec<(String, Mat2)> = Vec::new();
        let mut push = |name: &str, m: Mat2| entries.push((name.to_string(), m));
        push("1", Mat2::IDENTITY);
        push("S", s);
        let t = mat("[[1,0],[1,1]]");
        push("T", t);
        push("T^S", t.conj(&s));
        push("A", mat("[[u^2,u],[u,u^4]]"));
        push("D", mat("[[0,1],[1,1]]"));
        let e = mat("[[1,u],[1,u^3]]").pow(3);
        let i = mat("[[u^5,1],[u,u^5]]");
        let f = (i.delta_conjugate() * i).pow(3);
        let family: [(&str, Mat2); 5] =
            [("Y", mat("[[u,u^2],[u^4,u]]")), ("E", e), ("I", i), ("F", f), ("M", mat("[[u^3,u],[u,u^3]]"))];
        for (name, x) in family {
            push(name, x);
            push(&format!("{name}^δ"), delta(&x, 1));
            push(&format!("{name}^δ²"), delta(&x, 2));
            let xs = sd.conjugate(&x);
            push(&format!("{name}^S"), xs);
            push(&format!("{name}^Sδ"), delta(&xs, 1));
            push(&format!("{name}^Sδ²"), delta(&xs, 2));
        }
        let g = mat("[[u,u^6],[u^6,u^3]]");
        push("G", g);
        push("G^δ", delta(&g, 1));
        push("G^δ²", delta(&g, 2));
        let dvf = mat("[[u^2,u],[u^4,u^2]]");
        push("D∨F", dvf);
        push("D∨F^δ", delta(&dvf, 1));
        push("D∨F^δ²", delta(&dvf, 2));
        Catalog { entries }
    }

    pub fn get(&self, name: &str) -> Mat2 {
        self.entries
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| *m)
            .unwrap_or_else(|| panic!("unknown catalog name {name}"))
    }

    pub fn entries(&self) -> &[(String, Mat2)] {
        &self.entries
    }
}

impl Default for Catalog {
    fn default() -> Self {
        Catalog::new()
    }
}

/// Matrices as printed in the worked examples, to be matched against the
/// derived catalog.
pub const PRINTED: &[(&str, &str)] = &[
    ("T^S", "[[1,1],[0,1]]"),
    ("Y^S", "[[u,u^4],[u^2,u]]"),
    ("G^δ", "[[u^4,u^3],[u^3,u^5]]"),
    ("G^δ²", "[[u^2,u^5],[u^5,u^6]]"),
    ("E", "[[u^5,1],[u^6,u^4]]"),
    ("E^δ", "[[u^6,1],[u^3,u^2]]"),
    ("E^δ²", "[[u^3,1],[u^5,u]]"),
    ("E^S", "[[u^4,u^6],[1,u^5]]"),
    ("E^Sδ", "[[u^2,u^3],[1,u^6]]"),
    ("E^Sδ²", "[[u,u^5],[1,u^3]]"),
    ("I^δ", "[[u^6,1],[u^4,u^6]]"),
    ("I^δ²", "[[u^3,1],[u^2,u^3]]"),
    ("F", "[[u^6,u^6],[u^4,u^2]]"),
    ("F^δ", "[[u^3,u^3],[u^2,u]]"),
    ("D∨F^δ", "[[u,u^4],[u^2,u]]"),
    ("I^S", "[[u^5,u],[1,u^5]]"),
    ("I^Sδ", "[[u^6,u^4],[1,u^6]]"),
    ("I^Sδ²", "[[u^3,u^2],[1,u^3]]"),
    ("F^S", "[[u^2,u^4],[u^6,u^6]]"),
    ("F^Sδ", "[[u,u^2],[u^3,u^3]]"),
    ("F^Sδ²", "[[u^4,u],[u^5,u^5]]"),
];

fn sorted<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort();
    v
}

/// The O'Nan configuration (dual K₄), the super O'Nan configuration (dual
/// K₅) and the 13-point configuration K, each checked against its pattern.
pub struct ExplicitConfigurations {
    pub onan: Configuration,
    pub super_onan: Configuration,
    pub super_onan_mirror: Configuration,
    pub k: Configuration,
}

impl UnitalS {
    fn pts(&self, cat: &Catalog, names: &[&str]) -> Result<Vec<usize>, GroupError> {
        names.iter().map(|n| self.point_of(&cat.get(n))).collect()
    }

    fn blks(&self, cat: &Catalog, names: &[&str]) -> Result<Vec<usize>, GroupError> {
        names.iter().map(|n| self.block_of(&cat.get(n))).collect()
    }

    pub fn onan_and_super_onan(&self) -> Result<ExplicitConfigurations, DesignError> {
        let cat = Catalog::new();
        let host = &self.structure;
        let g = |e: GroupError| DesignError::Configuration(e.to_string());

        let onan_blocks = self.blks(&cat, &["T", "T^S", "I", "I^δ"]).map_err(g)?;
        let onan = check_dual_kn(host, &onan_blocks)?;
        let expected = sorted(self.pts(&cat, &["D", "E", "E^δ", "E^Sδ", "E^Sδ²", "F"]).map_err(g)?);
        if onan.points != expected {
            return Err(DesignError::Configuration(format!(
                "O'Nan configuration has points {:?}, expected {:?}",
                onan.points, expected
            )));
        }

        let k5_blocks = self.blks(&cat, &["T", "T^S", "I", "I^δ", "I^δ²"]).map_err(g)?;
        let super_onan = check_dual_kn(host, &k5_blocks)?;
        let expected =
            sorted(self.pts(&cat, &["D", "E", "E^δ", "E^δ²", "E^S", "E^Sδ", "E^Sδ²", "F", "F^δ", "F^δ²"]).map_err(g)?);
        if super_onan.points != expected {
            return Err(DesignError::Configuration(format!(
                "super O'Nan configuration has points {:?}, expected {:?}",
                super_onan.points, expected
            )));
        }

        let mirror_blocks = self.blks(&cat, &["T", "T^S", "I^S", "I^Sδ", "I^Sδ²"]).map_err(g)?;
        let super_onan_mirror = check_dual_kn(host, &mirror_blocks)?;
        let expected = sorted(
            self.pts(&cat, &["D", "E", "E^δ", "E^δ²", "E^S", "E^Sδ", "E^Sδ²", "F^S", "F^Sδ", "F^Sδ²"]).map_err(g)?,
        );
        if super_onan_mirror.points != expected {
            return Err(DesignError::Configuration(format!(
                "mirrored super O'Nan configuration has points {:?}, expected {:?}",
                super_onan_mirror.points, expected
            )));
        }

        let mut k_points = super_onan.points.clone();
        k_points.extend(&super_onan_mirror.points);
        let mut k_blocks = super_onan.blocks.clone();
        k_blocks.extend(&super_onan_mirror.blocks);
        let k = Configuration::induced(host, &k_points, &k_blocks)?;
        let pattern = DegreePattern::from_counts(&[(3, 6), (2, 7)], &[(4, 8)]);
        if k.points.len() != 13 || k.blocks.len() != 8 || !validate_configuration(host, &k, &pattern)? {
            return Err(DesignError::Configuration(format!(
                "configuration K has degrees {:?} / {:?}",
                k.point_degrees(),
                k.block_degrees()
            )));
        }
        Ok(ExplicitConfigurations { onan, super_onan, super_onan_mirror, k })
    }

    /// Re-derives every explicit statement about S and reports each one.
    pub fn verify_explicit_catalog(&self) -> Report {
        let mut rep = Report::default();
        if let Err(e) = self.catalog_checks(&mut rep) {
            rep.check("catalog evaluation", false, e.to_string());
        }
        rep
    }

    fn catalog_checks(&self, rep: &mut Report) -> Result<(), GroupError> {
        let cat = Catalog::new();
        let c = |n: &str| cat.get(n);
        let pt = |n: &str| self.point_of(&c(n));
        let s = SemiLinear::linear(c("S"));
        let delta = SemiLinear::DELTA;

        let mismatched: Vec<&str> =
            PRINTED.iter().filter(|(name, lit)| cat.get(name) != mat(lit)).map(|(name, _)| *name).collect();
        rep.check("printed matrices", mismatched.is_empty(), format!("mismatched: {mismatched:?}"));
        let a = c("A");
        rep.check(
            "A^3 = D = TS and A^4 = A^δ",
            a.pow(3) == c("D") && c("T") * c("S") == c("D") && a.pow(4) == a.delta_conjugate(),
            "",
        );

        let pd = pt("D")?;
        let through_d = sorted(self.blocks_through(pd));
        let expected = sorted(self.blks(&cat, &["S", "T", "T^S", "Y", "Y^δ", "Y^δ²", "Y^S", "Y^Sδ", "Y^Sδ²"])?);
        rep.check("blocks through p_D", through_d == expected, format!("{through_d:?}"));

        let fixed = ["S", "T", "T^S"].iter().all(|n| c(n).delta_conjugate() == c(n))
            && self.group.point_image(pd, &delta) == pd;
        rep.check("δ fixes S, T, T^S and p_D", fixed, "");

        let rows = [
            ("points on S", "S", ["D", "G", "G^δ", "G^δ²"]),
            ("points on T", "T", ["D", "E", "E^δ", "E^δ²"]),
            ("points on T^S", "T^S", ["D", "E^S", "E^Sδ", "E^Sδ²"]),
            ("points on I", "I", ["E", "E^Sδ", "F", "F^δ²"]),
        ];
        for (label, block, names) in rows {
            let got = sorted(self.points_on(&c(block))?);
            let want = sorted(self.pts(&cat, &names)?);
            let order3 = names.iter().filter(|n| **n != "D").all(|n| c(n).order_by_trace() == Ok(3));
            rep.check(label, got == want && order3, format!("{got:?}"));
        }

        let m_family = ["M", "M^δ", "M^δ²"];
        let joins_m = self.join_points(pt("E")?, pt("E^S")?)? == c("M");
        let s_fixed = m_family.iter().all(|n| s.conjugate(&c(n)) == c(n));
        let mut disjoint = true;
        for (i, x) in m_family.iter().enumerate() {
            for y in &m_family[i + 1..] {
                disjoint &= self.meet_blocks(&c(x), &c(y))?.is_none();
            }
        }
        rep.check(
            "M-family",
            joins_m && s_fixed && disjoint,
            format!("join {joins_m}, S-fixed {s_fixed}, disjoint {disjoint}"),
        );

        let i_joins = self.join_points(pt("E")?, pt("E^Sδ")?)? == c("I")
            && self.join_points(pt("E^δ")?, pt("E^Sδ²")?)? == c("I^δ")
            && self.join_points(pt("E^δ²")?, pt("E^S")?)? == c("I^δ²");
        rep.check("I-family joins", i_joins, "");

        let f = (c("I^δ") * c("I")).pow(3);
        let meet = self.meet_blocks(&c("I^δ"), &c("I"))?;
        rep.check("I^δ and I meet in p_F", f == c("F") && meet == Some(pt("F")?), format!("{meet:?}"));

        // p_F lies on I and I^δ, so p_F^δ lies on I^δ and I^δ² and the fourth
        // point of I is p_F^δ².
        let on_i = self.points_on(&c("I"))?;
        let f_delta_off_i = !on_i.contains(&pt("F^δ")?);
        rep.check("p_F^δ is not on I", f_delta_off_i, "");
        let mut joining: Vec<Mat2> = on_i.iter().map(|&p| self.join_points(pd, p)).collect::<Result<_, _>>()?;
        joining.sort();
        let want = sorted(vec![c("T"), c("T^S"), c("D∨F"), c("D∨F^δ²")]);
        let dvf_ok = self.join_points(pd, pt("F")?)? == c("D∨F")
            && self.join_points(pd, pt("F^δ")?)? == c("D∨F^δ")
            && self.join_points(pd, pt("F^δ²")?)? == c("D∨F^δ²");
        rep.check("blocks joining p_D with points of I", joining == want && dvf_ok, "");

        match self.onan_and_super_onan() {
            Ok(cfgs) => {
                rep.check("O'Nan configuration (dual K4)", cfgs.onan.points.len() == 6, "");
                rep.check("super O'Nan configuration (dual K5)", cfgs.super_onan.points.len() == 10, "");
                rep.check("mirrored super O'Nan configuration", cfgs.super_onan_mirror.points.len() == 10, "");
                rep.check("configuration K", true, "13 points, 8 blocks");
                let orbit_pts = |names: &[&str]| self.pts(&cat, names);
                let mut k_pts = orbit_pts(&["D"])?;
                for base in ["E", "F"] {
                    for suffix in ["", "^δ", "^δ²", "^S", "^Sδ", "^Sδ²"] {
                        k_pts.push(pt(&format!("{base}{suffix}"))?);
                    }
                }
                let mut k_blocks = self.blks(&cat, &["T", "T^S"])?;
                for suffix in ["", "^δ", "^δ²", "^S", "^Sδ", "^Sδ²"] {
                    k_blocks.push(self.block_of(&c(&format!("I{suffix}")))?);
                }
                let from_orbits = sorted(k_pts) == cfgs.k.points && sorted(k_blocks) == cfgs.k.blocks;
                rep.check("K is the ⟨δ,S⟩-orbit union of p_D, p_E, p_F, T, I", from_orbits, "");
            }
            Err(e) => rep.check("explicit configurations", false, e.to_string()),
        }

        let m1 = self.meet_blocks(&c("I^Sδ"), &c("I"))? == Some(pt("E^Sδ")?);
        let m2 = self.meet_blocks(&c("I^Sδ²"), &c("I"))? == Some(pt("E")?);
        let m3 = self.meet_blocks(&c("I^S"), &c("I"))?.is_none() && (c("I^S") * c("I")).trace() == F8::from_power(6);
        rep.check("meets of I with I^S, I^Sδ, I^Sδ²", m1 && m2 && m3, "");

        let on_s = self.points_on(&c("S"))?;
        let off_s: Vec<usize> = (0..28).filter(|p| !on_s.contains(p)).collect();
        let mut all_fixed = true;
        for &p in &off_s {
            let ps = self.group.point_image(p, &s);
            let bx = self.join_points(p, ps)?;
            all_fixed &= s.conjugate(&bx) == bx;
        }
        let mut covered = Vec::new();
        for n in ["E", "E^δ", "E^δ²", "F", "F^δ", "F^δ²"] {
            let p = pt(n)?;
            let bx = self.join_points(p, self.group.point_image(p, &s))?;
            covered.extend(self.points_on(&bx)?);
        }
        let partition = sorted(covered) == off_s;
        rep.check(
            "the six S-fixed blocks B_X partition the 24 points off S",
            all_fixed && partition && off_s.len() == 24,
            format!("S-fixed {all_fixed}, partition {partition}"),
        );
        Ok(())
    }
}
