use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{prime_power, Field, FieldElem, Tower};
use crate::matgrp::mat::{enumerate_gl, gl_order, Mat, MatOps};
use crate::matgrp::weyl::{self, Perm};

/// Default bound on the size of any enumerated set.
pub const DEFAULT_ENUM_CAP: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Gl,
    Sl,
    U,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Gl => "gl",
            Family::Sl => "sl",
            Family::U => "u",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gl" => Ok(Family::Gl),
            "sl" => Ok(Family::Sl),
            "u" => Ok(Family::U),
            other => Err(Error::Unsupported(format!("family {other:?}"))),
        }
    }
}

/// Which subset of `G(E)` to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Selector {
    /// `G(E)`
    GE,
    /// `G(F)`, the fixed points of the base Frobenius
    GF,
    /// `G^op(F)`, the fixed points of the twisted Frobenius
    GopF,
    UE,
    UF,
    TE,
    TF,
    BE,
    BF,
    /// `{g ∈ G(E) : σ(g) = g⁻¹}`
    Xsigma,
}

/// A Weyl group element with its canonical representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub perm: Perm,
    pub word: Vec<usize>,
    pub rep: Mat,
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }
}

/// A matrix group `G` over `F_q` together with its points over `E = F_{q^2}`,
/// the pinning-based duality involution and the twisted Frobenius.
///
/// Pinning: upper triangular Borel, diagonal torus, `x_i(u) = 1 + u·E_{i,i+1}`.
/// The Chevalley involution is `c(g) = J (gᵀ)⁻¹ J⁻¹` with `J` the alternating
/// antidiagonal, the duality involution is `ι = Inn(t₋) ∘ c` with
/// `t₋ = diag(1, -1, 1, …)`, and `σ = σ₀ ∘ ι`.
///
/// For `GL` and `SL`, `σ₀` is the entrywise `q`-power. For `U`, `σ₀ = Frob_q ∘ c`,
/// the pinning-preserving unitary Frobenius, so `G(F)` is a unitary group and
/// `σ` reduces to `g ↦ t₋ g^(q) t₋⁻¹`, whose fixed points form a form of `GL_n(F_q)`.
#[derive(Clone, Debug)]
pub struct GaloisDatum {
    family: Family,
    n: usize,
    tower: Tower,
    j: Mat,
    j_inv: Mat,
    t_minus: Mat,
    t_minus_inv: Mat,
    cap: u64,
}

impl GaloisDatum {
    /// Builds the datum and checks the pinning properties of the involutions.
    pub fn build(family: Family, n: usize, q: u32) -> Result<Self> {
        if !(2..=4).contains(&n) {
            return Err(Error::Unsupported(format!("n = {n} (supported: 2..=4)")));
        }
        let (_, k) = prime_power(q).ok_or_else(|| Error::Unsupported(format!("q = {q} is not a prime power")))?;
        if q > 16 {
            return Err(Error::Unsupported(format!("q = {q} > 16")));
        }
        if !(2..=4).contains(&q) {
            log::warn!("q = {q} is outside the tested range 2..=4");
        }
        let tower = Tower::for_q(q)?;
        debug_assert_eq!(tower.base().degree(), k);
        let ext = tower.ext();
        let one = FieldElem::ONE;
        let minus_one = ext.neg(one);
        let mut j = Mat::zero(n);
        for i in 0..n {
            j.set(i, n - 1 - i, if i % 2 == 0 { one } else { minus_one });
        }
        let t_minus = Mat::diag(&(0..n).map(|i| if i % 2 == 0 { one } else { minus_one }).collect::<Vec<_>>());
        let ops = MatOps::new(ext);
        let j_inv = ops.inv(&j).expect("J is invertible");
        let t_minus_inv = ops.inv(&t_minus).expect("t_minus is invertible");
        let datum = GaloisDatum { family, n, tower, j, j_inv, t_minus, t_minus_inv, cap: DEFAULT_ENUM_CAP };
        datum.check_pinning()?;
        Ok(datum)
    }

    pub fn with_cap(mut self, cap: u64) -> Self {
        self.cap = cap;
        self
    }

    fn check_pinning(&self) -> Result<()> {
        let ext = self.ext();
        let n = self.n;
        for i in 1..n {
            for u in ext.elements() {
                let x = self.root_elt(i, u)?;
                if self.chevalley(&x) != self.root_elt(n - i, u)? {
                    return Err(Error::Verification(format!("Chevalley involution moves x_{i}({u:?})")));
                }
                if self.duality_involution(&x) != self.root_elt(n - i, ext.neg(u))? {
                    return Err(Error::Verification(format!("duality involution on x_{i}({u:?})")));
                }
                let y = self.neg_root_elt(i, u)?;
                if self.duality_involution(&self.duality_involution(&y)) != y {
                    return Err(Error::Verification("duality involution is not an involution".into()));
                }
            }
        }
        let w0 = self.weyl_of_perm(&weyl::longest(n)).rep;
        let w0_inv = self.inv(&w0);
        let ops = self.ops();
        for pos in 0..n {
            for a in ext.units() {
                let mut d = vec![FieldElem::ONE; n];
                d[pos] = a;
                if self.family == Family::Sl {
                    d[(pos + 1) % n] = ext.inv(a).unwrap();
                }
                let t = Mat::diag(&d);
                let lhs = self.chevalley(&t);
                let rhs = ops.conj(&w0, &self.inv(&t), &w0_inv);
                if lhs != rhs {
                    return Err(Error::Verification("Chevalley involution on the torus".into()));
                }
            }
        }
        if self.chevalley(&self.chevalley(&w0)) != w0 {
            return Err(Error::Verification("Chevalley involution is not an involution".into()));
        }
        Ok(())
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> usize {
        self.tower.q()
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn ext(&self) -> &Field {
        self.tower.ext()
    }

    pub fn ops(&self) -> MatOps<'_> {
        MatOps::new(self.tower.ext())
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn j(&self) -> &Mat {
        &self.j
    }

    pub fn t_minus(&self) -> &Mat {
        &self.t_minus
    }

    pub fn identity(&self) -> Mat {
        Mat::identity(self.n)
    }

    /// Inverse of an element of `G(E)`.
    pub fn inv(&self, g: &Mat) -> Mat {
        self.ops().inv(g).expect("group elements are invertible")
    }

    #[inline]
    pub fn mul(&self, a: &Mat, b: &Mat) -> Mat {
        self.ops().mul(a, b)
    }

    /// `c(g) = J (gᵀ)⁻¹ J⁻¹`.
    pub fn chevalley(&self, g: &Mat) -> Mat {
        let ops = self.ops();
        ops.mul3(&self.j, &self.inv(&g.transpose()), &self.j_inv)
    }

    /// `ι(g) = t₋ c(g) t₋⁻¹`.
    pub fn duality_involution(&self, g: &Mat) -> Mat {
        self.ops().mul3(&self.t_minus, &self.chevalley(g), &self.t_minus_inv)
    }

    /// Entrywise `q`-power.
    pub fn frob(&self, g: &Mat) -> Mat {
        g.map(|x| self.tower.frob_q(x))
    }

    /// The Frobenius of the rational structure of `G`.
    pub fn sigma0(&self, g: &Mat) -> Mat {
        match self.family {
            Family::Gl | Family::Sl => self.frob(g),
            Family::U => self.chevalley(&self.frob(g)),
        }
    }

    /// `σ = σ₀ ∘ ι`.
    pub fn sigma(&self, g: &Mat) -> Mat {
        self.sigma0(&self.duality_involution(g))
    }

    pub fn in_ge(&self, g: &Mat) -> bool {
        if g.n() != self.n {
            return false;
        }
        let d = self.ops().det(g);
        match self.family {
            Family::Sl => d == FieldElem::ONE,
            _ => !d.is_zero(),
        }
    }

    pub fn in_gf(&self, g: &Mat) -> bool {
        self.in_ge(g) && self.sigma0(g) == *g
    }

    pub fn in_gop(&self, g: &Mat) -> bool {
        self.in_ge(g) && self.sigma(g) == *g
    }

    pub fn in_x_sigma(&self, g: &Mat) -> bool {
        self.in_ge(g) && self.sigma(g) == self.inv(g)
    }

    /// `x_{α_i}(u) = 1 + u·E_{i,i+1}` (1-based `i`).
    pub fn root_elt(&self, i: usize, u: FieldElem) -> Result<Mat> {
        if !(1..self.n).contains(&i) {
            return Err(Error::OutOfRange(format!("simple root index {i} for n = {}", self.n)));
        }
        let mut m = self.identity();
        m.set(i - 1, i, u);
        Ok(m)
    }

    /// `x_{-α_i}(u) = 1 - u·E_{i+1,i}`.
    pub fn neg_root_elt(&self, i: usize, u: FieldElem) -> Result<Mat> {
        if !(1..self.n).contains(&i) {
            return Err(Error::OutOfRange(format!("simple root index {i} for n = {}", self.n)));
        }
        let mut m = self.identity();
        m.set(i, i - 1, self.ext().neg(u));
        Ok(m)
    }

    /// `x_{e_i - e_j}(u)` for `i < j`, 0-based positions.
    pub fn root_elt_pos(&self, i: usize, j: usize, u: FieldElem) -> Mat {
        let mut m = self.identity();
        m.set(i, j, u);
        m
    }

    /// `n_{s_i} = x_i(1) x_{-i}(1) x_i(1)`.
    pub fn simple_weyl_rep(&self, i: usize) -> Result<Mat> {
        let a = self.root_elt(i, FieldElem::ONE)?;
        let b = self.neg_root_elt(i, FieldElem::ONE)?;
        Ok(self.ops().mul3(&a, &b, &a))
    }

    /// Representative of the Weyl element with the given reduced word.
    pub fn weyl_rep(&self, word: &[usize]) -> Result<WeylElement> {
        if word.iter().any(|&i| !(1..self.n).contains(&i)) {
            return Err(Error::OutOfRange(format!("word {word:?} for n = {}", self.n)));
        }
        let perm = weyl::from_word(self.n, word);
        if weyl::inversions(&perm) != word.len() {
            return Err(Error::NotReduced(word.to_vec()));
        }
        let reps: Vec<Mat> = word.iter().map(|&i| self.simple_weyl_rep(i)).collect::<Result<_>>()?;
        let rep = self.ops().product(self.n, reps.iter());
        Ok(WeylElement { perm, word: word.to_vec(), rep })
    }

    pub fn weyl_of_perm(&self, perm: &[usize]) -> WeylElement {
        self.weyl_rep(&weyl::reduced_word(perm)).expect("canonical words are reduced")
    }

    /// All Weyl elements, ordered by permutation.
    pub fn weyl_group(&self) -> Vec<WeylElement> {
        weyl::all_perms(self.n).iter().map(|p| self.weyl_of_perm(p)).collect()
    }

    /// Whether `σ₀` fixes the standard representative of `w`, i.e. `w` lies in
    /// the relative Weyl group.
    pub fn is_rational_weyl(&self, perm: &[usize]) -> bool {
        match self.family {
            Family::U => {
                let w0 = weyl::longest(self.n);
                weyl::compose(&w0, perm) == weyl::compose(perm, &w0)
            }
            _ => true,
        }
    }

    /// Number of positive absolute roots.
    pub fn positive_roots(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    fn check_cap(&self, what: &str, size: u64) -> Result<()> {
        if size > self.cap {
            return Err(Error::CapExceeded { what: what.into(), size, cap: self.cap });
        }
        Ok(())
    }

    /// `|G(E)|`.
    pub fn ge_order(&self) -> u64 {
        let big_q = (self.q() * self.q()) as u64;
        let gl = gl_order(big_q, self.n as u32);
        match self.family {
            Family::Sl => gl / (big_q - 1),
            _ => gl,
        }
    }

    /// Complete duplicate-free enumeration in canonical order.
    pub fn enumerate(&self, sel: Selector) -> Result<Vec<Mat>> {
        let ext = self.ext();
        let n = self.n;
        let mut out = match sel {
            Selector::GE => {
                self.check_cap("G(E)", gl_order((ext.order()) as u64, n as u32))?;
                let all = enumerate_gl(ext, n);
                match self.family {
                    Family::Sl => all.into_iter().filter(|g| self.in_ge(g)).collect(),
                    _ => all,
                }
            }
            Selector::GF => match self.family {
                Family::U => self.enumerate(Selector::GE)?.into_iter().filter(|g| self.in_gf(g)).collect(),
                _ => {
                    let base = self.tower.base();
                    self.check_cap("G(F)", gl_order(base.order() as u64, n as u32))?;
                    enumerate_gl(base, n)
                        .into_iter()
                        .map(|g| g.map(|x| self.tower.embed(x)))
                        .filter(|g| self.in_ge(g))
                        .collect()
                }
            },
            Selector::GopF => self.enumerate(Selector::GE)?.into_iter().filter(|g| self.in_gop(g)).collect(),
            Selector::Xsigma => self.enumerate(Selector::GE)?.into_iter().filter(|g| self.in_x_sigma(g)).collect(),
            Selector::UE => self.unipotents(ext.elements().collect()),
            Selector::UF => match self.family {
                Family::U => self.unipotents(ext.elements().collect()).into_iter().filter(|u| self.in_gf(u)).collect(),
                _ => self.unipotents(self.base_elements()),
            },
            Selector::TE => self.tori(ext.units().collect()),
            Selector::TF => match self.family {
                Family::U => self.tori(ext.units().collect()).into_iter().filter(|t| self.in_gf(t)).collect(),
                _ => self.tori(self.base_elements().into_iter().filter(|x| !x.is_zero()).collect()),
            },
            Selector::BE => self.borel(Selector::TE, Selector::UE)?,
            Selector::BF => self.borel(Selector::TF, Selector::UF)?,
        };
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    fn base_elements(&self) -> Vec<FieldElem> {
        self.tower.base().elements().map(|x| self.tower.embed(x)).collect()
    }

    fn unipotents(&self, vals: Vec<FieldElem>) -> Vec<Mat> {
        let n = self.n;
        let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let total = vals.len().pow(slots.len() as u32);
        (0..total)
            .map(|mut v| {
                let mut m = self.identity();
                for &(i, j) in &slots {
                    m.set(i, j, vals[v % vals.len()]);
                    v /= vals.len();
                }
                m
            })
            .collect()
    }

    fn tori(&self, units: Vec<FieldElem>) -> Vec<Mat> {
        let n = self.n;
        let total = units.len().pow(n as u32);
        (0..total)
            .map(|mut v| {
                let d: Vec<FieldElem> = (0..n)
                    .map(|_| {
                        let x = units[v % units.len()];
                        v /= units.len();
                        x
                    })
                    .collect();
                Mat::diag(&d)
            })
            .filter(|t| self.in_ge(t))
            .collect()
    }

    fn borel(&self, t: Selector, u: Selector) -> Result<Vec<Mat>> {
        let ts = self.enumerate(t)?;
        let us = self.enumerate(u)?;
        self.check_cap("B", (ts.len() * us.len()) as u64)?;
        let ops = self.ops();
        Ok(ts.iter().flat_map(|t| us.iter().map(move |u| ops.mul(t, u))).collect())
    }

    /// Superdiagonal sum `Σ_i u_{i,i+1}`.
    pub fn superdiag_sum(&self, u: &Mat) -> FieldElem {
        let ext = self.ext();
        (0..self.n - 1).fold(FieldElem::ZERO, |acc, i| ext.add(acc, u.get(i, i + 1)))
    }
}

/// Shorthand for [`GaloisDatum::build`].
pub fn datum_build(family: Family, n: usize, q: u32) -> Result<GaloisDatum> {
    GaloisDatum::build(family, n, q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_minus_degenerates_in_char_two() {
        let d = datum_build(Family::Gl, 2, 2).unwrap();
        assert_eq!(*d.t_minus(), d.identity());
        for g in d.enumerate(Selector::GE).unwrap() {
            assert_eq!(d.duality_involution(&g), d.chevalley(&g));
        }
    }

    #[test]
    fn involution_on_torus_gl2_f3() {
        let d = datum_build(Family::Gl, 2, 3).unwrap();
        let ext = d.ext();
        for t in d.enumerate(Selector::TE).unwrap() {
            let (a, b) = (t.get(0, 0), t.get(1, 1));
            let expect = Mat::diag(&[ext.inv(b).unwrap(), ext.inv(a).unwrap()]);
            assert_eq!(d.duality_involution(&t), expect);
        }
    }

    #[test]
    fn chevalley_fixes_pinning_gl3() {
        let d = datum_build(Family::Gl, 3, 2).unwrap();
        for u in d.ext().elements() {
            assert_eq!(d.chevalley(&d.root_elt(1, u).unwrap()), d.root_elt(2, u).unwrap());
        }
    }

    #[test]
    fn rejects_unsupported() {
        assert!(datum_build(Family::Gl, 5, 2).is_err());
        assert!(datum_build(Family::Gl, 2, 6).is_err());
        assert!(datum_build(Family::Gl, 1, 2).is_err());
    }

    #[test]
    fn gl2_f2_orders() {
        let d = datum_build(Family::Gl, 2, 2).unwrap();
        assert_eq!(d.enumerate(Selector::GE).unwrap().len(), 180);
        assert_eq!(d.enumerate(Selector::GF).unwrap().len(), 6);
        assert_eq!(d.enumerate(Selector::GopF).unwrap().len(), 18);
        assert_eq!(d.enumerate(Selector::Xsigma).unwrap().len(), 10);
        assert_eq!(d.enumerate(Selector::UE).unwrap().len(), 4);
        assert_eq!(d.enumerate(Selector::UF).unwrap().len(), 2);
        assert_eq!(d.enumerate(Selector::BE).unwrap().len(), 36);
    }

    #[test]
    fn sl2_f3_split_torus() {
        let d = datum_build(Family::Sl, 2, 3).unwrap();
        let tf = d.enumerate(Selector::TF).unwrap();
        assert_eq!(tf.len(), 2);
        for t in &tf {
            assert_eq!(d.ext().mul(t.get(0, 0), t.get(1, 1)), FieldElem::ONE);
        }
        assert_eq!(d.enumerate(Selector::GF).unwrap().len(), 24);
    }

    #[test]
    fn unipotent_orders() {
        for (fam, n, q) in [(Family::Gl, 2, 2), (Family::Gl, 3, 2), (Family::Gl, 2, 3), (Family::U, 3, 2), (Family::U, 2, 3)] {
            let d = datum_build(fam, n, q).unwrap();
            let np = d.positive_roots() as u32;
            assert_eq!(d.enumerate(Selector::UE).unwrap().len(), (q as usize).pow(2 * np));
            assert_eq!(d.enumerate(Selector::UF).unwrap().len(), (q as usize).pow(np));
        }
    }

    #[test]
    fn root_elements() {
        let d = datum_build(Family::Gl, 3, 2).unwrap();
        let ext = d.ext();
        assert_eq!(d.root_elt(1, FieldElem::ZERO).unwrap(), d.identity());
        assert!(d.root_elt(3, FieldElem::ONE).is_err());
        for u in ext.elements() {
            let x = d.root_elt(1, u).unwrap();
            assert!(x.is_upper_unitriangular());
            assert_eq!(d.mul(&x, &d.root_elt(1, ext.neg(u)).unwrap()), d.identity());
            for v in ext.elements() {
                assert_eq!(d.mul(&x, &d.root_elt(1, v).unwrap()), d.root_elt(1, ext.add(u, v)).unwrap());
                let y = d.root_elt(2, v).unwrap();
                let comm = d.ops().product(3, [&x, &y, &d.inv(&x), &d.inv(&y)]);
                assert_eq!(comm, d.root_elt_pos(0, 2, ext.mul(u, v)));
            }
        }
    }

    #[test]
    fn weyl_representatives() {
        let d = datum_build(Family::Gl, 2, 3).unwrap();
        assert_eq!(d.weyl_rep(&[]).unwrap().rep, d.identity());
        let s = d.weyl_rep(&[1]).unwrap().rep;
        let m1 = d.ext().neg(FieldElem::ONE);
        assert_eq!(s, Mat::from_rows(&[vec![FieldElem::ZERO, FieldElem::ONE], vec![m1, FieldElem::ZERO]]));
        let d3 = datum_build(Family::Gl, 3, 3).unwrap();
        let a = d3.weyl_rep(&[1, 2, 1]).unwrap();
        let b = d3.weyl_rep(&[2, 1, 2]).unwrap();
        assert_eq!(a.rep, b.rep);
        assert!(a.rep.is_monomial());
        assert!(matches!(d3.weyl_rep(&[1, 1]), Err(Error::NotReduced(_))));
    }

    #[test]
    fn weyl_reps_independent_of_word_and_normalize_torus() {
        for n in 2..=4 {
            let d = datum_build(Family::Gl, n, 3).unwrap();
            let ts = [Mat::diag(&(0..n).map(|i| d.ext().from_int(1 + (i % 2) as i64)).collect::<Vec<_>>())];
            for p in weyl::all_perms(n) {
                let a = d.weyl_rep(&weyl::reduced_word(&p)).unwrap();
                let b = d.weyl_rep(&weyl::reduced_word_left(&p)).unwrap();
                assert_eq!(a.rep, b.rep);
                assert_eq!(weyl::perm_of_monomial(&a.rep).unwrap(), p);
                for t in &ts {
                    assert!(d.ops().conj(&a.rep, t, &d.inv(&a.rep)).is_diagonal());
                }
            }
        }
    }

    #[test]
    fn sigma_properties_gl2_f2() {
        let d = datum_build(Family::Gl, 2, 2).unwrap();
        for g in d.enumerate(Selector::GE).unwrap() {
            let s = d.sigma(&g);
            assert_eq!(d.sigma(&s), g.map(|x| d.ext().frobenius(x, 2)));
            assert_eq!(d.duality_involution(&d.duality_involution(&g)), g);
            assert_eq!(d.sigma(&d.duality_involution(&g)), d.duality_involution(&s));
        }
        for x in d.enumerate(Selector::Xsigma).unwrap() {
            assert_eq!(d.sigma(&x), d.inv(&x));
        }
        for g in d.enumerate(Selector::GopF).unwrap() {
            assert_eq!(d.sigma(&g), g);
        }
    }

    #[test]
    fn sigma_preserves_borel_torus_unipotent() {
        for (fam, n, q) in [(Family::Gl, 3, 2), (Family::U, 3, 3), (Family::Sl, 2, 3)] {
            let d = datum_build(fam, n, q).unwrap();
            for u in d.enumerate(Selector::UE).unwrap() {
                assert!(d.sigma(&u).is_upper_unitriangular());
                assert!(d.sigma0(&u).is_upper_unitriangular());
            }
            for t in d.enumerate(Selector::TE).unwrap() {
                assert!(d.sigma(&t).is_diagonal());
            }
        }
    }

    #[test]
    fn unitary_family_orders() {
        let d = datum_build(Family::U, 2, 2).unwrap();
        assert_eq!(d.enumerate(Selector::GF).unwrap().len(), 18);
        assert_eq!(d.enumerate(Selector::GopF).unwrap().len(), 6);
        assert_eq!(d.enumerate(Selector::Xsigma).unwrap().len(), 30);
        let d3 = datum_build(Family::U, 2, 3).unwrap();
        // |U_2(F_3)| = q(q+1)(q^2-1), |GL_2(F_3)| = 48
        assert_eq!(d3.enumerate(Selector::GF).unwrap().len(), 96);
        assert_eq!(d3.enumerate(Selector::GopF).unwrap().len(), 48);
    }

    #[test]
    fn cap_guard() {
        let d = datum_build(Family::Gl, 2, 3).unwrap().with_cap(100);
        assert!(matches!(d.enumerate(Selector::GE), Err(Error::CapExceeded { .. })));
    }
}
