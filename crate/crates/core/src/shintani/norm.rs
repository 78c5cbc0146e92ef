use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::classchar::{ConjClasses, TwistedClasses};
use crate::error::{Error, Result};
use crate::gf::{Field, Tower};
use crate::matgrp::mat::{enumerate_gl, gl_order};
use crate::matgrp::{Family, GaloisDatum, Mat, MatOps, Selector};
use crate::shintani::rcf::invariant_factors;

/// One σ-class: its representative `g`, the norm `g σ(g)`, and the matched
/// representative of a `G^op(F)` class.
#[derive(Clone, Debug, Serialize)]
pub struct NormWitness {
    pub g: String,
    pub norm: String,
    pub matched: String,
}

/// The Shintani norm map from σ-classes of `G(E)` to classes of `G^op(F)`.
#[derive(Clone, Debug)]
pub struct NormTable {
    /// σ-class index → `G^op(F)` class index.
    pub map: Vec<usize>,
    pub norms: Vec<Mat>,
    pub witnesses: Vec<NormWitness>,
    op_classes: usize,
}

impl NormTable {
    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.op_classes];
        self.map.iter().all(|&k| !std::mem::replace(&mut seen[k], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.op_classes];
        for &k in &self.map {
            seen[k] = true;
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

fn require_connected_centralizers(d: &GaloisDatum) -> Result<()> {
    if d.family() == Family::Sl {
        return Err(Error::Unsupported("norm map for SL (centralizers may be disconnected)".into()));
    }
    Ok(())
}

/// `g ↦ g σ(g)`, matched to a `G^op(F)` class by rational canonical form over `E`.
pub fn norm_map(d: &GaloisDatum, tclasses: &TwistedClasses, opclasses: &ConjClasses) -> Result<NormTable> {
    require_connected_centralizers(d)?;
    let ext = d.ext();
    let mut by_form: FxHashMap<Vec<Vec<u8>>, usize> = FxHashMap::default();
    for (k, r) in opclasses.reps.iter().enumerate() {
        if by_form.insert(invariant_factors(ext, r), k).is_some() {
            return Err(Error::Verification(format!("two G^op(F) classes share the canonical form of {r:?}")));
        }
    }
    let mut map = Vec::with_capacity(tclasses.len());
    let mut norms = Vec::with_capacity(tclasses.len());
    let mut witnesses = Vec::with_capacity(tclasses.len());
    for g in &tclasses.reps {
        let ng = d.mul(g, &d.sigma(g));
        let k = *by_form
            .get(&invariant_factors(ext, &ng))
            .ok_or_else(|| Error::Verification(format!("norm of {g:?} matches no G^op(F) class")))?;
        witnesses.push(NormWitness { g: g.encode(ext), norm: ng.encode(ext), matched: opclasses.reps[k].encode(ext) });
        map.push(k);
        norms.push(ng);
    }
    Ok(NormTable { map, norms, witnesses, op_classes: opclasses.len() })
}

/// `σ` extended to `GL_n` over the degree-four extension of `F`.
struct QuarticSigma<'a> {
    family: Family,
    tower: &'a Tower,
    base_degree: u32,
    j: Mat,
    j_inv: Mat,
    t_minus: Mat,
    t_minus_inv: Mat,
}

impl<'a> QuarticSigma<'a> {
    fn new(d: &GaloisDatum, tower: &'a Tower) -> Self {
        let lift = |m: &Mat| m.map(|x| tower.embed(x));
        let ops = MatOps::new(tower.ext());
        let (j, t_minus) = (lift(d.j()), lift(d.t_minus()));
        QuarticSigma {
            family: d.family(),
            tower,
            base_degree: d.tower().base().degree(),
            j_inv: ops.inv(&j).unwrap(),
            t_minus_inv: ops.inv(&t_minus).unwrap(),
            j,
            t_minus,
        }
    }

    fn field(&self) -> &Field {
        self.tower.ext()
    }

    fn chevalley(&self, g: &Mat) -> Mat {
        let ops = MatOps::new(self.field());
        ops.mul3(&self.j, &ops.inv(&g.transpose()).unwrap(), &self.j_inv)
    }

    fn frob(&self, g: &Mat) -> Mat {
        g.map(|x| self.field().frobenius(x, self.base_degree))
    }

    fn sigma(&self, g: &Mat) -> Mat {
        let ops = MatOps::new(self.field());
        let iota = ops.mul3(&self.t_minus, &self.chevalley(g), &self.t_minus_inv);
        match self.family {
            Family::Gl | Family::Sl => self.frob(&iota),
            Family::U => self.chevalley(&self.frob(&iota)),
        }
    }
}

/// Outcome of the Lang-equation consistency check.
#[derive(Clone, Debug, Serialize)]
pub struct LangReport {
    pub classes: usize,
    pub reached: usize,
    pub consistent: usize,
    /// Set when the search space exceeded the bound and nothing was searched.
    pub skipped: bool,
}

/// Solves `g = h σ(h)⁻¹` for one `g` in each σ-class by running `h` over
/// `GL_n` of the degree-four extension, and checks that `σ²(h)⁻¹ h` is
/// conjugate to the matched `G^op(F)` representative.
pub fn lang_consistency(
    d: &GaloisDatum,
    tclasses: &TwistedClasses,
    opclasses: &ConjClasses,
    norm: &NormTable,
    bound: u64,
) -> Result<LangReport> {
    require_connected_centralizers(d)?;
    let big_q = (d.ext().order() as u64).pow(2);
    let classes = tclasses.len();
    let tower = Tower::for_q(d.ext().order() as u32)?;
    if gl_order(big_q, d.n() as u32) > bound {
        log::info!("Lang search skipped: |GL_{}(F_{big_q})| exceeds {bound}", d.n());
        return Ok(LangReport { classes, reached: 0, consistent: 0, skipped: true });
    }
    let hs = enumerate_gl(tower.ext(), d.n());
    let qs = QuarticSigma::new(d, &tower);
    let big = MatOps::new(tower.ext());
    let mut found: Vec<Option<Mat>> = vec![None; classes];
    let mut remaining = classes;
    for h in &hs {
        if remaining == 0 {
            break;
        }
        let g = big.mul(h, &big.inv(&qs.sigma(h)).unwrap());
        let Some(small) = restrict_mat(&tower, &g) else { continue };
        if !d.in_ge(&small) {
            continue;
        }
        let k = tclasses.index_of(&small).expect("σ-class of an element of G(E)");
        if found[k].is_none() {
            found[k] = Some(*h);
            remaining -= 1;
        }
    }
    let mut consistent = 0;
    let reached = found.iter().filter(|h| h.is_some()).count();
    for (k, h) in found.iter().enumerate() {
        let Some(h) = h else { continue };
        let x = big.mul(&big.inv(&qs.sigma(&qs.sigma(h))).unwrap(), h);
        let target = opclasses.reps[norm.map[k]].map(|c| tower.embed(c));
        if invariant_factors(tower.ext(), &x) == invariant_factors(tower.ext(), &target) {
            consistent += 1;
        } else {
            log::warn!("Lang witness for σ-class {k} is not conjugate to its norm");
        }
    }
    if reached < classes {
        log::info!("Lang search reached {reached} of {classes} σ-classes");
    }
    Ok(LangReport { classes, reached, consistent, skipped: false })
}

fn restrict_mat(tower: &Tower, g: &Mat) -> Option<Mat> {
    let mut out = Mat::zero(g.n());
    for i in 0..g.n() {
        for j in 0..g.n() {
            out.set(i, j, tower.restrict(g.get(i, j))?);
        }
    }
    Some(out)
}

/// `g = u n σ(u)⁻¹` with `u ∈ U(E)` and `n` monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XSigmaDecomposition {
    pub u: Mat,
    pub n: Mat,
    /// Whether the Bruhat factor `u1` of `g` already worked.
    pub bruhat_guided: bool,
}

/// Decomposes `g ∈ X_σ`. The left Bruhat factor is tried first; otherwise
/// `u` runs over `units` (all of `U(E)`).
pub fn x_sigma_decompose(d: &GaloisDatum, g: &Mat, units: &[Mat]) -> Result<XSigmaDecomposition> {
    if !d.in_x_sigma(g) {
        return Err(Error::NotInGroup(format!("{g:?} is not in X_σ")));
    }
    let twist = |u: &Mat| d.ops().mul3(&d.inv(u), g, &d.sigma(u));
    let finish = |u: Mat, bruhat_guided: bool| -> Result<XSigmaDecomposition> {
        let n = twist(&u);
        if d.sigma(&n) != d.inv(&n) || d.ops().mul3(&u, &n, &d.inv(&d.sigma(&u))) != *g {
            return Err(Error::Verification(format!("X_σ decomposition of {g:?}")));
        }
        Ok(XSigmaDecomposition { u, n, bruhat_guided })
    };
    let (u1, _) = crate::matgrp::u_coset_normal_form(d, g);
    if twist(&u1).is_monomial() {
        return finish(u1, true);
    }
    match units.iter().find(|u| twist(u).is_monomial()) {
        Some(u) => finish(*u, false),
        None => Err(Error::Verification(format!("no unipotent solves the decomposition of {g:?}"))),
    }
}

/// `(|B(E)^σ| / |U(E)^σ|, |T(E)^σ|)`; the quotient `B/U` is identified with `T`.
pub fn borel_fixed_point_ratio(d: &GaloisDatum) -> Result<(u64, u64, u64)> {
    let fixed = |sel: Selector| -> Result<u64> {
        Ok(d.enumerate(sel)?.iter().filter(|g| d.sigma(g) == **g).count() as u64)
    };
    let (b, u, t) = (fixed(Selector::BE)?, fixed(Selector::UE)?, fixed(Selector::TE)?);
    Ok((b, u, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classchar::{conj_classes, twisted_classes};
    use crate::gf::FieldElem;
    use crate::matgrp::datum_build;

    fn setup(fam: Family, n: usize, q: u32) -> (GaloisDatum, TwistedClasses, ConjClasses) {
        let d = datum_build(fam, n, q).unwrap();
        let tc = twisted_classes(&d, d.enumerate(Selector::GE).unwrap()).unwrap();
        let oc = conj_classes(d.ops(), d.enumerate(Selector::GopF).unwrap()).unwrap();
        (d, tc, oc)
    }

    #[test]
    fn norm_map_is_bijective() {
        for (fam, n, q) in [(Family::Gl, 2, 2), (Family::U, 2, 2), (Family::Gl, 2, 3)] {
            let (d, tc, oc) = setup(fam, n, q);
            let nt = norm_map(&d, &tc, &oc).unwrap();
            assert!(nt.is_bijective(), "{fam} {n} {q}");
            let one = tc.identity_class();
            assert_eq!(nt.map[one], oc.identity_class());
        }
    }

    #[test]
    fn scalar_norms_are_central() {
        let (d, tc, oc) = setup(Family::Gl, 2, 2);
        let nt = norm_map(&d, &tc, &oc).unwrap();
        for a in d.ext().units() {
            let g = Mat::diag(&[a, a]);
            let k = tc.index_of(&g).unwrap();
            let rep = &oc.reps[nt.map[k]];
            assert!(rep.is_diagonal() && rep.get(0, 0) == rep.get(1, 1));
            assert_eq!(oc.members(nt.map[k]).len(), 1);
        }
    }

    #[test]
    fn sl_is_rejected() {
        let (d, tc, oc) = setup(Family::Sl, 2, 2);
        assert!(matches!(norm_map(&d, &tc, &oc), Err(Error::Unsupported(_))));
    }

    #[test]
    fn x_sigma_decomposes_gl2_f4() {
        let d = datum_build(Family::Gl, 2, 2).unwrap();
        let units = d.enumerate(Selector::UE).unwrap();
        let xs = d.enumerate(Selector::Xsigma).unwrap();
        assert_eq!(xs.len(), 10);
        for g in &xs {
            let dec = x_sigma_decompose(&d, g, &units).unwrap();
            assert!(dec.n.is_monomial());
        }
        assert_eq!(x_sigma_decompose(&d, &d.identity(), &units).unwrap().n, d.identity());
        assert!(x_sigma_decompose(&d, &Mat::diag(&[FieldElem(2), FieldElem::ONE]), &units).is_err());
    }

    #[test]
    fn borel_ratio() {
        for q in [2, 3] {
            let d = datum_build(Family::Gl, 2, q).unwrap();
            let (b, u, t) = borel_fixed_point_ratio(&d).unwrap();
            assert_eq!(b % u, 0);
            assert_eq!(b / u, t);
        }
    }

    #[test]
    fn lang_consistency_gl2_f2() {
        let (d, tc, oc) = setup(Family::Gl, 2, 2);
        let nt = norm_map(&d, &tc, &oc).unwrap();
        let r = lang_consistency(&d, &tc, &oc, &nt, 100_000).unwrap();
        assert!(!r.skipped);
        assert!(r.reached > 0);
        assert_eq!(r.reached, r.consistent);
    }
}
