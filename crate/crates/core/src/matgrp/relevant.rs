use crate::error::{Error, Result};
use crate::matgrp::datum::{Family, GaloisDatum, Selector, WeylElement};
use crate::matgrp::mat::Mat;
use crate::matgrp::weyl::{self, Perm};

/// A Bessel relevant Weyl element `w = w₀ w_I` with its set `I_w` and the
/// torus subgroup `A_w`.
#[derive(Clone, Debug)]
pub struct RelevantCell {
    pub w: WeylElement,
    pub i_w: Vec<usize>,
    pub a_w: Vec<Mat>,
}

fn w0_commutes(perm: &[usize]) -> bool {
    let w0 = weyl::longest(perm.len());
    weyl::compose(&w0, perm) == weyl::compose(perm, &w0)
}

/// Relevant elements found by scanning the definition over the (relative)
/// Weyl group.
pub fn relevant_by_definition(d: &GaloisDatum) -> Vec<Perm> {
    let mut out: Vec<Perm> = weyl::all_perms(d.n())
        .into_iter()
        .filter(|p| weyl::is_bessel_relevant(p) && d.is_rational_weyl(p))
        .collect();
    out.sort();
    out
}

/// Relevant elements built as `w₀ w_I` over all subsets `I`; for the unitary
/// family only the subsets stable under `i ↦ n - i` are rational.
pub fn relevant_by_parabolics(d: &GaloisDatum) -> Vec<Perm> {
    let n = d.n();
    let mut out: Vec<Perm> = weyl::all_subsets(n)
        .into_iter()
        .filter(|s| d.family() != Family::U || s.iter().all(|&i| s.contains(&(n - i))))
        .map(|s| weyl::compose(&weyl::longest(n), &weyl::parabolic_longest(n, &s)))
        .collect();
    out.sort();
    out
}

/// `A_w = {t ∈ T(F) : t_{w(i-1)} = t_{w(i)} for i ∈ I_w}`.
pub fn a_w_subgroup(d: &GaloisDatum, w: &[usize], i_w: &[usize]) -> Result<Vec<Mat>> {
    let tf = d.enumerate(Selector::TF)?;
    Ok(tf.into_iter().filter(|t| i_w.iter().all(|&i| t.get(w[i - 1], w[i - 1]) == t.get(w[i], w[i]))).collect())
}

/// `n_w Z n_w⁻¹` where `Z` is the block-scalar part of `T(F)` for the blocks of `I`.
fn a_w_via_levi_center(d: &GaloisDatum, w: &WeylElement, i_w: &[usize]) -> Result<Vec<Mat>> {
    let blocks = weyl::blocks(d.n(), i_w);
    let nw_inv = d.inv(&w.rep);
    let ops = d.ops();
    let mut out: Vec<Mat> = d
        .enumerate(Selector::TF)?
        .into_iter()
        .filter(|t| blocks.iter().all(|b| b.iter().all(|&j| t.get(j, j) == t.get(b[0], b[0]))))
        .map(|t| ops.conj(&w.rep, &t, &nw_inv))
        .collect();
    out.sort();
    Ok(out)
}

/// The Bessel relevant cells, cross-checked two ways.
pub fn bessel_relevant(d: &GaloisDatum) -> Result<Vec<RelevantCell>> {
    let by_def = relevant_by_definition(d);
    let by_par = relevant_by_parabolics(d);
    if by_def != by_par {
        return Err(Error::Verification(format!("relevant sets disagree: {by_def:?} vs {by_par:?}")));
    }
    debug_assert!(d.family() != Family::U || by_def.iter().all(|p| w0_commutes(p)));
    by_def
        .into_iter()
        .map(|p| {
            let i_w = weyl::positive_simple_set(&p);
            let w = d.weyl_of_perm(&p);
            let a_w = a_w_subgroup(d, &p, &i_w)?;
            if a_w_via_levi_center(d, &w, &i_w)? != a_w {
                return Err(Error::Verification(format!("A_w mismatch for {p:?}")));
            }
            Ok(RelevantCell { w, i_w, a_w })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldElem;
    use crate::matgrp::datum::datum_build;

    #[test]
    fn counts() {
        let d2 = datum_build(Family::Gl, 2, 2).unwrap();
        let cells = bessel_relevant(&d2).unwrap();
        let perms: Vec<Perm> = cells.iter().map(|c| c.w.perm.clone()).collect();
        assert_eq!(perms, vec![vec![0, 1], vec![1, 0]]);
        let d3 = datum_build(Family::Gl, 3, 3).unwrap();
        assert_eq!(bessel_relevant(&d3).unwrap().len(), 4);
        let d4 = datum_build(Family::Sl, 4, 2).unwrap();
        assert_eq!(bessel_relevant(&d4).unwrap().len(), 8);
        let u3 = datum_build(Family::U, 3, 2).unwrap();
        assert_eq!(bessel_relevant(&u3).unwrap().len(), 2);
    }

    #[test]
    fn longest_element_cell() {
        for (fam, n, q) in [(Family::Gl, 3, 3), (Family::Sl, 2, 3), (Family::U, 2, 3)] {
            let d = datum_build(fam, n, q).unwrap();
            let cells = bessel_relevant(&d).unwrap();
            let top = cells.iter().find(|c| c.w.perm == weyl::longest(n)).unwrap();
            assert!(top.i_w.is_empty());
            assert_eq!(top.a_w, d.enumerate(Selector::TF).unwrap());
        }
    }

    #[test]
    fn identity_cell_is_center() {
        let d = datum_build(Family::Gl, 3, 3).unwrap();
        let cells = bessel_relevant(&d).unwrap();
        let e = cells.iter().find(|c| c.w.perm == weyl::identity(3)).unwrap();
        assert_eq!(e.a_w.len(), 2);
        assert!(e.a_w.iter().all(|t| t.diagonal().iter().all(|&x| x == t.get(0, 0))));
        let s = datum_build(Family::Sl, 2, 3).unwrap();
        let e = bessel_relevant(&s).unwrap().into_iter().find(|c| c.w.perm == weyl::identity(2)).unwrap();
        let m1 = s.ext().neg(FieldElem::ONE);
        assert_eq!(e.a_w, vec![s.identity(), Mat::diag(&[m1, m1])]);
    }
}
