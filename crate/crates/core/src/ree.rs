//! The root group Ξ of the Ree group over GF(3ⁿ), the point set
//! P = Ξ ∪ {∞}, the maps ω and η_s, and exhaustive structural checks.
//!
//! Group elements act on points from the right: the point ξ is o^ξ, a
//! translation χ maps ξ to ξ*χ, and a word g₁g₂…gₖ applies g₁ first.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use crate::error::{FieldError, ReeError};
use crate::field::{F3n, Gf3n};
use crate::perm::Perm;
use crate::report::Report;

/// ⟨a, b, c⟩ ∈ Ξ.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Xi {
    pub a: F3n,
    pub b: F3n,
    pub c: F3n,
}

impl fmt::Display for Xi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ReePoint {
    Infinity,
    Finite(Xi),
}

impl fmt::Display for ReePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReePoint::Infinity => write!(f, "inf"),
            ReePoint::Finite(x) => x.fmt(f),
        }
    }
}

/// The involution η₋₁·⟨a, −a^(θ+1), c⟩, one of the q² involutions fixing ∞.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct InvolutionParam {
    pub a: F3n,
    pub c: F3n,
}

/// η_s ξ in the semidirect product HΞ.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct StabElt {
    pub s: F3n,
    pub xi: Xi,
}

/// Generators used to write elements of the Ree group as words.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ReeGen {
    Translate(Xi),
    Eta(F3n),
    Omega,
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ReeWord(pub Vec<ReeGen>);

#[derive(Clone)]
pub struct RootGroup {
    field: Arc<Gf3n>,
    theta: u64,
}

impl fmt::Debug for RootGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootGroup({})", self.field.header())
    }
}

impl RootGroup {
    pub fn new(n: i64) -> Result<RootGroup, FieldError> {
        Ok(RootGroup::over(Arc::new(Gf3n::new(n)?)))
    }

    /// The root group for q ∈ {3, 27, 243, 2187, 19683}.
    pub fn for_order(q: u32) -> Result<RootGroup, ReeError> {
        let n = match q {
            3 => 1,
            27 => 3,
            243 => 5,
            2187 => 7,
            19683 => 9,
            _ => return Err(ReeError::UnsupportedOrder { q, allowed: "3, 27, 243, 2187, 19683" }),
        };
        Ok(RootGroup::new(n)?)
    }

    pub fn over(field: Arc<Gf3n>) -> RootGroup {
        let theta = 3u64.pow(field.theta_exponent());
        RootGroup { field, theta }
    }

    pub fn field(&self) -> &Gf3n {
        &self.field
    }

    pub fn field_arc(&self) -> Arc<Gf3n> {
        Arc::clone(&self.field)
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    /// The exponent θ as an integer power of x.
    pub fn theta_power(&self) -> u64 {
        self.theta
    }

    pub fn num_points(&self) -> usize {
        (self.q() as usize).pow(3) + 1
    }

    pub fn identity(&self) -> Xi {
        let z = self.field.zero();
        Xi { a: z, b: z, c: z }
    }

    pub fn xi(&self, a: i64, b: i64, c: i64) -> Xi {
        let f = &self.field;
        Xi { a: f.from_int(a), b: f.from_int(b), c: f.from_int(c) }
    }

    pub fn check(&self, x: Xi) -> Result<Xi, FieldError> {
        self.field.check(x.a)?;
        self.field.check(x.b)?;
        self.field.check(x.c)?;
        Ok(x)
    }

    /// All q³ elements in id order.
    pub fn elements(&self) -> impl Iterator<Item = Xi> + '_ {
        (0..self.num_points() - 1).map(move |i| self.xi_at(i))
    }

    #[inline]
    fn m(&self, x: F3n, y: F3n) -> F3n {
        self.field.mul(x, y)
    }

    #[inline]
    fn th(&self, x: F3n) -> F3n {
        self.field.theta(x)
    }

    /// ⟨a,b,c⟩*⟨x,y,z⟩ = ⟨a+x, b+y+ax^θ, ay−bx+c+z−ax^(θ+1)⟩.
    #[inline]
    pub fn mul(&self, l: Xi, r: Xi) -> Xi {
        let xt = self.th(r.a);
        let axt = self.m(l.a, xt);
        Xi { a: l.a + r.a, b: l.b + r.b + axt, c: self.m(l.a, r.b) - self.m(l.b, r.a) + l.c + r.c - self.m(axt, r.a) }
    }

    pub fn try_mul(&self, l: Xi, r: Xi) -> Result<Xi, FieldError> {
        Ok(self.mul(self.check(l)?, self.check(r)?))
    }

    /// ⟨−a, a^(θ+1)−b, −c⟩.
    #[inline]
    pub fn inv(&self, x: Xi) -> Xi {
        Xi { a: -x.a, b: self.m(self.th(x.a), x.a) - x.b, c: -x.c }
    }

    /// ⟨0, 0, −a^(θ+2)⟩, as the group law gives it.
    pub fn cube(&self, x: Xi) -> Xi {
        let z = self.field.zero();
        let a2 = self.m(x.a, x.a);
        Xi { a: z, b: z, c: -self.m(self.th(x.a), a2) }
    }

    pub fn pow(&self, x: Xi, k: u32) -> Xi {
        (0..k).fold(self.identity(), |acc, _| self.mul(acc, x))
    }

    /// Order of ξ in Ξ (1, 3 or 9).
    pub fn order(&self, x: Xi) -> u32 {
        let id = self.identity();
        let mut acc = x;
        let mut k = 1;
        while acc != id {
            acc = self.mul(acc, x);
            k += 1;
        }
        k
    }

    /// N(a,b,c) = −ac^θ + a^(θ+1)b^θ − a^(θ+3)b − a²b² + b^(θ+1) + c² − a^(2θ+4).
    pub fn norm(&self, x: Xi) -> F3n {
        let Xi { a, b, c } = x;
        let (at, bt, ct) = (self.th(a), self.th(b), self.th(c));
        let a2 = self.m(a, a);
        let at1 = self.m(at, a);
        let at3 = self.m(at1, a2);
        let b2 = self.m(b, b);
        let at4x2 = self.m(self.m(at, at), self.m(a2, a2));
        -self.m(a, ct) + self.m(at1, bt) - self.m(at3, b) - self.m(a2, b2) + self.m(bt, b) + self.m(c, c) - at4x2
    }

    /// ω on a non-trivial element of Ξ.
    pub fn omega_xi(&self, x: Xi) -> Result<Xi, ReeError> {
        let n = self.norm(x);
        if n.is_zero() {
            return Err(ReeError::VanishingNorm(x.to_string()));
        }
        let Xi { a, b, c } = x;
        let (at, bt, ct) = (self.th(a), self.th(b), self.th(c));
        let a2 = self.m(a, a);
        let at3 = self.m(self.m(at, a), a2);
        let a2t3 = self.m(at3, at);
        let first = self.m(at, bt) - ct + self.m(a, self.m(b, b)) + self.m(b, c) - a2t3;
        let second = self.m(a2, b) - self.m(a, c) + bt - at3;
        let k = -self.field.inv(n)?;
        Ok(Xi { a: self.m(k, first), b: self.m(k, second), c: self.m(k, c) })
    }

    /// ω on P: swaps ∞ and o, otherwise the scaled formula.
    pub fn omega(&self, p: ReePoint) -> Result<ReePoint, ReeError> {
        match p {
            ReePoint::Infinity => Ok(ReePoint::Finite(self.identity())),
            ReePoint::Finite(x) if x == self.identity() => Ok(ReePoint::Infinity),
            ReePoint::Finite(x) => self.omega_xi(x).map(ReePoint::Finite),
        }
    }

    /// ⟨sa, s^(θ+1)b, s^(θ+2)c⟩.
    pub fn eta(&self, s: F3n, x: Xi) -> Result<Xi, ReeError> {
        if s.is_zero() {
            return Err(ReeError::ZeroScalar);
        }
        Ok(self.eta_unchecked(s, x))
    }

    #[inline]
    fn eta_unchecked(&self, s: F3n, x: Xi) -> Xi {
        let st1 = self.m(self.th(s), s);
        Xi { a: self.m(s, x.a), b: self.m(st1, x.b), c: self.m(self.m(st1, s), x.c) }
    }

    pub fn eta_point(&self, s: F3n, p: ReePoint) -> Result<ReePoint, ReeError> {
        match p {
            ReePoint::Infinity if s.is_zero() => Err(ReeError::ZeroScalar),
            ReePoint::Infinity => Ok(ReePoint::Infinity),
            ReePoint::Finite(x) => self.eta(s, x).map(ReePoint::Finite),
        }
    }

    /// Right translation ξ ↦ ξ*χ; ∞ is fixed.
    #[inline]
    pub fn translate(&self, p: ReePoint, by: Xi) -> ReePoint {
        match p {
            ReePoint::Infinity => ReePoint::Infinity,
            ReePoint::Finite(x) => ReePoint::Finite(self.mul(x, by)),
        }
    }

    /// [α,ξ] = α⁻¹ξ⁻¹αξ, evaluated with the group law.
    pub fn commutator(&self, alpha: Xi, xi: Xi) -> Xi {
        let l = self.mul(self.inv(alpha), self.inv(xi));
        self.mul(self.mul(l, alpha), xi)
    }

    /// ⟨0, x^θa − a^θx, bx − ay + (x−a)(a^θx + x^θa)⟩, as the group law gives it.
    pub fn commutator_closed_form(&self, alpha: Xi, xi: Xi) -> Xi {
        let Xi { a, b, c: _ } = alpha;
        let Xi { a: x, b: y, c: _ } = xi;
        let (at, xt) = (self.th(a), self.th(x));
        let mid = self.m(xt, a) - self.m(at, x);
        let sym = self.m(at, x) + self.m(xt, a);
        Xi { a: self.field.zero(), b: mid, c: self.m(b, x) - self.m(a, y) + self.m(x - a, sym) }
    }

    /// Dense id in 0..q³ of a finite point.
    #[inline]
    pub fn xi_index(&self, x: Xi) -> usize {
        let q = self.q() as usize;
        let f = &self.field;
        (f.rank(x.a) as usize * q + f.rank(x.b) as usize) * q + f.rank(x.c) as usize
    }

    #[inline]
    pub fn xi_at(&self, i: usize) -> Xi {
        let q = self.q() as usize;
        let f = &self.field;
        Xi { a: f.from_rank((i / (q * q)) as u32), b: f.from_rank((i / q % q) as u32), c: f.from_rank((i % q) as u32) }
    }

    /// ∞ ↦ 0 and ⟨a,b,c⟩ ↦ 1 + rank(a)q² + rank(b)q + rank(c).
    #[inline]
    pub fn point_id(&self, p: ReePoint) -> usize {
        match p {
            ReePoint::Infinity => 0,
            ReePoint::Finite(x) => 1 + self.xi_index(x),
        }
    }

    pub fn point(&self, id: usize) -> Result<ReePoint, ReeError> {
        match id {
            0 => Ok(ReePoint::Infinity),
            i if i < self.num_points() => Ok(ReePoint::Finite(self.xi_at(i - 1))),
            _ => Err(ReeError::PointId(id)),
        }
    }

    /// Parses "inf" or "(a,b,c)" with coefficient strings as printed.
    pub fn parse_point(&self, s: &str) -> Result<ReePoint, ReeError> {
        let s = s.trim();
        if s == "inf" || s == "∞" {
            return Ok(ReePoint::Infinity);
        }
        let bad = || ReeError::Field(FieldError::Parse(s.to_string()));
        let inner = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(bad)?;
        let parts: Vec<&str> = inner.split(',').collect();
        let [a, b, c] = parts.as_slice() else { return Err(bad()) };
        let f = &self.field;
        Ok(ReePoint::Finite(Xi { a: f.parse(a)?, b: f.parse(b)?, c: f.parse(c)? }))
    }

    // HΞ arithmetic.

    pub fn stab(&self, s: F3n, xi: Xi) -> StabElt {
        StabElt { s, xi }
    }

    pub fn stab_identity(&self) -> StabElt {
        StabElt { s: self.field.one(), xi: self.identity() }
    }

    /// (η_s ξ)(η_t χ) = η_(st) ξ^(η_t) χ.
    pub fn stab_mul(&self, g: StabElt, h: StabElt) -> StabElt {
        StabElt { s: self.m(g.s, h.s), xi: self.mul(self.eta_unchecked(h.s, g.xi), h.xi) }
    }

    pub fn stab_inv(&self, g: StabElt) -> StabElt {
        let si = self.field.inv(g.s).expect("η_s has s ≠ 0");
        StabElt { s: si, xi: self.inv(self.eta_unchecked(si, g.xi)) }
    }

    pub fn stab_commutator(&self, g: StabElt, h: StabElt) -> StabElt {
        let l = self.stab_mul(self.stab_inv(g), self.stab_inv(h));
        self.stab_mul(self.stab_mul(l, g), h)
    }

    /// p · η_s ξ = (p^(η_s))ξ.
    pub fn stab_apply(&self, p: ReePoint, g: StabElt) -> ReePoint {
        match p {
            ReePoint::Infinity => ReePoint::Infinity,
            ReePoint::Finite(x) => ReePoint::Finite(self.mul(self.eta_unchecked(g.s, x), g.xi)),
        }
    }

    // Involutions fixing ∞.

    /// η₋₁·⟨a, −a^(θ+1), c⟩ as an element of HΞ.
    pub fn involution(&self, iv: InvolutionParam) -> StabElt {
        let b = -self.m(self.th(iv.a), iv.a);
        StabElt { s: -self.field.one(), xi: Xi { a: iv.a, b, c: iv.c } }
    }

    /// Fixed points of [`RootGroup::involution`]: ∞ and ⟨−a, y, ay − c − a^(θ+2)⟩
    /// for y ∈ K, listed by increasing y rank.
    pub fn involution_fixed_points(&self, iv: InvolutionParam) -> Vec<ReePoint> {
        let at2 = self.m(self.m(self.th(iv.a), iv.a), iv.a);
        let mut out = vec![ReePoint::Infinity];
        out.extend(
            self.field.elements().map(|y| ReePoint::Finite(Xi { a: -iv.a, b: y, c: self.m(iv.a, y) - iv.c - at2 })),
        );
        out
    }

    /// The involution fixing ∞ and the finite point x.
    pub fn involution_through(&self, x: Xi) -> InvolutionParam {
        let a = -x.a;
        let at2 = self.m(self.m(self.th(a), a), a);
        InvolutionParam { a, c: self.m(a, x.b) - x.c - at2 }
    }

    /// All q² parameters, a-major in rank order.
    pub fn involution_params(&self) -> Vec<InvolutionParam> {
        let f = &self.field;
        f.elements().flat_map(|a| f.elements().map(move |c| InvolutionParam { a, c })).collect()
    }

    // Words.

    pub fn apply_gen(&self, p: ReePoint, g: &ReeGen) -> Result<ReePoint, ReeError> {
        match g {
            ReeGen::Translate(x) => Ok(self.translate(p, *x)),
            ReeGen::Eta(s) => self.eta_point(*s, p),
            ReeGen::Omega => self.omega(p),
        }
    }

    pub fn apply_word(&self, p: ReePoint, w: &ReeWord) -> Result<ReePoint, ReeError> {
        w.0.iter().try_fold(p, |acc, g| self.apply_gen(acc, g))
    }

    pub fn word_inverse(&self, w: &ReeWord) -> Result<ReeWord, ReeError> {
        w.0.iter()
            .rev()
            .map(|g| {
                Ok(match g {
                    ReeGen::Translate(x) => ReeGen::Translate(self.inv(*x)),
                    ReeGen::Eta(s) => ReeGen::Eta(self.field.inv(*s)?),
                    ReeGen::Omega => ReeGen::Omega,
                })
            })
            .collect::<Result<Vec<_>, ReeError>>()
            .map(ReeWord)
    }

    /// The permutation of point ids induced by a word.
    pub fn word_perm(&self, w: &ReeWord) -> Result<Perm, ReeError> {
        let images = (0..self.num_points())
            .map(|i| self.apply_word(self.point(i)?, w).map(|p| self.point_id(p) as u32))
            .collect::<Result<Vec<u32>, ReeError>>()?;
        Ok(Perm::from_images(images).expect("group elements are bijections"))
    }

    pub fn fixed_points(&self, w: &ReeWord) -> Result<Vec<ReePoint>, ReeError> {
        let mut out = Vec::new();
        for i in 0..self.num_points() {
            let p = self.point(i)?;
            if self.apply_word(p, w)? == p {
                out.push(p);
            }
        }
        Ok(out)
    }

    /// A generating set of Ξ: ⟨e,0,0⟩, ⟨0,e,0⟩, ⟨0,0,e⟩ for basis vectors e.
    pub fn generators(&self) -> Vec<Xi> {
        let f = &self.field;
        let z = f.zero();
        let mut gens = Vec::new();
        for i in 0..f.degree() {
            let e = f.from_rank(3u32.pow(i));
            gens.push(Xi { a: e, b: z, c: z });
            gens.push(Xi { a: z, b: e, c: z });
            gens.push(Xi { a: z, b: z, c: e });
        }
        gens
    }

    /// ω and the translations by [`RootGroup::generators`], as permutations of P.
    pub fn ree_generators(&self) -> Result<Vec<Perm>, ReeError> {
        let mut gens = vec![self.word_perm(&ReeWord(vec![ReeGen::Omega]))?];
        for x in self.generators() {
            gens.push(self.word_perm(&ReeWord(vec![ReeGen::Translate(x)]))?);
        }
        Ok(gens)
    }

    fn exhaustive(&self) -> Result<(), ReeError> {
        match self.q() {
            3 | 27 => Ok(()),
            q => Err(ReeError::UnsupportedOrder { q, allowed: "3, 27" }),
        }
    }

    /// ω² = id on P, ω η_s ω = η_(s⁻¹) for each given s, and N(ξ) ≠ 0 off o.
    pub fn omega_checks(&self, scalars: &[F3n]) -> Result<Report, ReeError> {
        self.exhaustive()?;
        let mut rep = Report::default();
        let o = self.identity();
        let zero_norm = self.elements().filter(|&x| x != o && self.norm(x).is_zero()).count();
        rep.check("N(ξ) ≠ 0 for ξ ≠ o", zero_norm == 0, format!("{zero_norm} zeros"));

        let mut omega = Vec::with_capacity(self.num_points());
        for i in 0..self.num_points() {
            omega.push(self.omega(self.point(i)?)?);
        }
        let bad = (0..self.num_points()).filter(|&i| self.omega(omega[i]).map(|p| self.point_id(p)) != Ok(i)).count();
        rep.check("ω² = id on P", bad == 0, format!("{bad} points moved"));

        let mut bad_s = Vec::new();
        for &s in scalars {
            let si = self.field.inv(s)?;
            for (i, &w) in omega.iter().enumerate() {
                let lhs = self.omega(self.eta_point(s, w)?)?;
                if lhs != self.eta_point(si, self.point(i)?)? {
                    bad_s.push(s.to_string());
                    break;
                }
            }
        }
        rep.check(
            "ω η_s ω = η_(1/s)",
            bad_s.is_empty(),
            format!("{} scalars checked, failing: {bad_s:?}", scalars.len()),
        );
        Ok(rep)
    }

    /// Exponent, center, derived subgroup, nilpotency class, C_Ξ(η₋₁), the
    /// Ξ-class of σ = η₋₁ and the commutator group of R_∞ = HΞ.
    pub fn structural_checks(&self) -> Result<Report, ReeError> {
        self.exhaustive()?;
        let mut rep = Report::default();
        let q = self.q() as usize;
        let f = &self.field;
        let o = self.identity();
        let gens = self.generators();
        let all: Vec<Xi> = self.elements().collect();

        let generated = closure(&gens, |x, y| self.mul(x, y), |x| self.inv(x), &[], |_, _| unreachable!());
        rep.check("generators span Ξ", generated.len() == q * q * q, format!("{}", generated.len()));

        let cube_ok = all.iter().all(|&x| self.pow(x, 3) == self.cube(x));
        let exp9 = all.iter().all(|&x| self.pow(x, 9) == o) && all.iter().any(|&x| self.order(x) == 9);
        rep.check("cube formula and exponent 9", cube_ok && exp9, "");

        let inv_ok = all.iter().all(|&x| self.mul(x, self.inv(x)) == o);
        rep.check("inverse formula", inv_ok, "");

        let center: Vec<Xi> =
            all.iter().copied().filter(|&x| gens.iter().all(|&g| self.mul(x, g) == self.mul(g, x))).collect();
        let center_is_z = center.len() == q && center.iter().all(|x| x.a.is_zero() && x.b.is_zero());
        rep.check("center = Z", center_is_z, format!("|Z(Ξ)| = {}", center.len()));

        let conj = |x: Xi, g: Xi| self.mul(self.mul(self.inv(g), x), g);
        let mut series = vec![generated];
        loop {
            let last = series.last().expect("non-empty");
            let seeds: Vec<Xi> = last
                .iter()
                .flat_map(|&x| gens.iter().map(move |&g| (x, g)))
                .map(|(x, g)| self.commutator(x, g))
                .collect();
            let next = closure(&seeds, |x, y| self.mul(x, y), |x| self.inv(x), &gens, conj);
            let done = next.len() == 1 || next.len() == last.len();
            series.push(next);
            if done || series.len() > 6 {
                break;
            }
        }
        let derived = &series[1];
        let derived_ok = if q == 3 {
            derived.len() == 3 && derived.iter().all(|x| x.a.is_zero() && x.b.is_zero())
        } else {
            derived.len() == q * q && derived.iter().all(|x| x.a.is_zero())
        };
        rep.check("derived subgroup Ξ'", derived_ok, format!("|Ξ'| = {}", derived.len()));
        let class = series.iter().position(|s| s.len() == 1);
        let expected_class = if q == 3 { 2 } else { 3 };
        rep.check("nilpotency class", class == Some(expected_class), format!("class {class:?}"));

        let comm_ok = all
            .iter()
            .step_by(7)
            .all(|&a| all.iter().step_by(11).all(|&x| self.commutator(a, x) == self.commutator_closed_form(a, x)));
        rep.check("commutator closed form", comm_ok, "");

        let minus = -f.one();
        let lambda: Vec<Xi> = all.iter().copied().filter(|&x| self.eta_unchecked(minus, x) == x).collect();
        let lambda_ok = lambda.len() == q && lambda.iter().all(|x| x.a.is_zero() && x.c.is_zero());
        rep.check("C_Ξ(η₋₁) = Λ", lambda_ok, format!("{}", lambda.len()));

        let sigma = self.stab(minus, o);
        let class_of_sigma: HashSet<StabElt> = all
            .iter()
            .map(|&x| {
                let g = self.stab(f.one(), x);
                self.stab_mul(self.stab_mul(self.stab_inv(g), sigma), g)
            })
            .collect();
        let all_involutions = class_of_sigma.iter().all(|g| {
            g.s == minus && g.xi.b == -self.m(self.th(g.xi.a), g.xi.a) && self.stab_mul(*g, *g) == self.stab_identity()
        });
        rep.check(
            "Ξ-class of σ has q² involutions",
            class_of_sigma.len() == q * q && all_involutions,
            format!("{}", class_of_sigma.len()),
        );

        // R_∞ = HΞ is generated by η_g for a primitive g together with Ξ.
        let mut stab_gens: Vec<StabElt> = gens.iter().map(|&x| self.stab(f.one(), x)).collect();
        stab_gens.push(self.stab(f.generator(), o));
        let seeds: Vec<StabElt> = stab_gens
            .iter()
            .flat_map(|&g| stab_gens.iter().map(move |&h| (g, h)))
            .map(|(g, h)| self.stab_commutator(g, h))
            .collect();
        let stab_conj = |x: StabElt, g: StabElt| self.stab_mul(self.stab_mul(self.stab_inv(g), x), g);
        let r_derived = closure(&seeds, |x, y| self.stab_mul(x, y), |x| self.stab_inv(x), &stab_gens, stab_conj);
        let in_xi = r_derived.iter().all(|g| g.s == f.one());
        let r_ok = if q == 3 {
            r_derived.len() == 9 && r_derived.iter().all(|g| g.xi.b == -self.m(g.xi.a, g.xi.a))
        } else {
            r_derived.len() == q * q * q
        };
        rep.check("(R_∞)'", in_xi && r_ok, format!("|(R_∞)'| = {}", r_derived.len()));
        Ok(rep)
    }
}

/// The subgroup generated by `seeds` and closed under conjugation by `conj_by`
/// (a normal closure when `conj_by` generates the ambient group).
fn closure<T: Copy + Eq + Hash>(
    seeds: &[T],
    mul: impl Fn(T, T) -> T,
    inv: impl Fn(T) -> T,
    conj_by: &[T],
    conj: impl Fn(T, T) -> T,
) -> Vec<T> {
    let Some(&first) = seeds.first() else { return Vec::new() };
    let identity = mul(first, inv(first));
    let mut gens: Vec<T> = Vec::new();
    let mut seen: HashSet<T> = HashSet::from([identity]);
    let mut elements = vec![identity];
    let mut queue: VecDeque<T> = VecDeque::new();
    let mut pending: Vec<T> = seeds.to_vec();
    // Alternate between closing under multiplication by the current generators
    // and adding conjugates of generators until nothing new appears.
    loop {
        let mut added = false;
        for g in pending.drain(..) {
            if !gens.contains(&g) {
                gens.push(g);
                added = true;
            }
        }
        if !added {
            break;
        }
        queue.extend(elements.iter().copied());
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = mul(x, g);
                if seen.insert(y) {
                    elements.push(y);
                    queue.push_back(y);
                }
            }
        }
        for &g in &gens {
            for &h in conj_by {
                let c = conj(g, h);
                if !seen.contains(&c) {
                    pending.push(c);
                }
            }
        }
    }
    elements
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g3() -> RootGroup {
        RootGroup::new(1).unwrap()
    }

    #[test]
    fn product_example() {
        let g = g3();
        assert_eq!(g.mul(g.xi(1, 0, 0), g.xi(0, 1, 0)), g.xi(1, 1, 1));
        let x = g.xi(1, 2, 0);
        assert_eq!(g.mul(g.identity(), x), x);
        assert_eq!(g.inv(g.xi(-1, 0, 1)), g.xi(1, 1, -1));
        assert_eq!(g.cube(g.xi(1, 0, 0)), g.xi(0, 0, -1));
        assert_eq!(g.pow(g.xi(1, 0, 0), 3), g.xi(0, 0, -1));
    }

    #[test]
    fn commutator_special_cases() {
        for n in [1, 3] {
            let g = RootGroup::new(n).unwrap();
            let f = g.field();
            let z = f.zero();
            let e = g.xi(1, 0, 0);
            for y in f.elements() {
                let c = g.commutator(e, Xi { a: z, b: y, c: z });
                assert_eq!(c, Xi { a: z, b: z, c: -y });
                assert_eq!(c, g.commutator_closed_form(e, Xi { a: z, b: y, c: z }));
            }
            for x in f.elements() {
                let xt = f.theta(x);
                let c = g.commutator(e, Xi { a: x, b: z, c: z });
                let want = Xi { a: z, b: xt - x, c: f.mul(x - f.one(), x + xt) };
                assert_eq!(c, want);
            }
            let a = g.xi_at(5 % (g.num_points() - 1));
            assert_eq!(g.commutator(a, a), g.identity());
        }
    }

    #[test]
    fn norm_and_omega_examples() {
        let g = g3();
        assert_eq!(g.norm(g.xi(0, 1, 1)), g.field().from_int(-1));
        for c in -1..=1 {
            assert_eq!(g.norm(g.xi(0, 0, c)), g.field().from_int(c * c));
        }
        let eps = ReePoint::Finite(g.xi(0, 0, -1));
        assert_eq!(g.omega(eps).unwrap(), ReePoint::Finite(g.xi(-1, 0, 1)));
        let fixed = ReePoint::Finite(g.xi(0, 1, 1));
        assert_eq!(g.omega(fixed).unwrap(), fixed);
        assert_eq!(g.omega(ReePoint::Infinity).unwrap(), ReePoint::Finite(g.identity()));
    }

    #[test]
    fn ids_round_trip() {
        let g = RootGroup::new(3).unwrap();
        for id in [0usize, 1, 2, 100, 19683] {
            assert_eq!(g.point_id(g.point(id).unwrap()), id);
        }
        assert!(g.point(19684).is_err());
        let p = g.point(12345).unwrap();
        assert_eq!(g.parse_point(&p.to_string()).unwrap(), p);
        assert_eq!(g.parse_point("inf").unwrap(), ReePoint::Infinity);
        assert!(g.parse_point("(1,2)").is_err());
    }

    #[test]
    fn eta_errors_and_parity() {
        for n in [1, 3] {
            let g = RootGroup::new(n).unwrap();
            let f = g.field();
            assert_eq!(g.eta(f.zero(), g.identity()), Err(ReeError::ZeroScalar));
            let x = g.xi_at(1234 % (g.num_points() - 1));
            let e = g.eta(-f.one(), x).unwrap();
            assert_eq!(e, Xi { a: -x.a, b: x.b, c: -x.c });
        }
    }

    #[test]
    fn stab_arithmetic_matches_action() {
        let g = RootGroup::new(3).unwrap();
        let f = g.field();
        let a = g.stab(f.from_rank(5), g.xi_at(777));
        let b = g.stab(f.from_rank(13), g.xi_at(4242));
        let ab = g.stab_mul(a, b);
        for id in [0usize, 1, 50, 9999] {
            let p = g.point(id).unwrap();
            assert_eq!(g.stab_apply(p, ab), g.stab_apply(g.stab_apply(p, a), b));
        }
        assert_eq!(g.stab_mul(a, g.stab_inv(a)), g.stab_identity());
    }

    #[test]
    fn involution_parameters_round_trip() {
        let g = RootGroup::new(3).unwrap();
        for iv in g.involution_params().into_iter().step_by(37) {
            let pts = g.involution_fixed_points(iv);
            assert_eq!(pts.len(), 28);
            let inv = g.involution(iv);
            for p in &pts {
                assert_eq!(g.stab_apply(*p, inv), *p);
                if let ReePoint::Finite(x) = p {
                    assert_eq!(g.involution_through(*x), iv);
                }
            }
        }
    }

    #[test]
    fn unsupported_orders() {
        assert!(matches!(RootGroup::for_order(9), Err(ReeError::UnsupportedOrder { .. })));
        let g = RootGroup::new(5).unwrap();
        assert!(g.structural_checks().is_err());
    }

    #[test]
    fn structure_q3() {
        let rep = g3().structural_checks().unwrap();
        let failures: Vec<_> = rep.failures().collect();
        assert!(failures.is_empty(), "{failures:#?}");
    }
}
