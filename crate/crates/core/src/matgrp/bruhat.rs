use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::FieldElem;
use crate::matgrp::datum::GaloisDatum;
use crate::matgrp::mat::Mat;
use crate::matgrp::weyl::{self, Perm};

/// Which rational points a decomposition is taken over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Over {
    F,
    E,
}

/// `g = u1 · t · n_w · u2` with `u1 ∈ U`, `t ∈ T`, `u2 ∈ U ∩ w⁻¹U⁻w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bruhat {
    pub u1: Mat,
    pub t: Mat,
    pub w: Perm,
    pub u2: Mat,
}

/// Row-reduces `g` by adding multiples of lower rows to upper rows. Returns the
/// reducing upper unitriangular `L`, the reduced matrix `L g`, and the pivot
/// row of each column (the permutation `w`).
fn reduce(d: &GaloisDatum, g: &Mat) -> (Mat, Mat, Perm) {
    let f = d.ext();
    let n = g.n();
    let mut m = g.rows();
    let mut l = Mat::identity(n).rows();
    let mut is_pivot = vec![false; n];
    let mut w = vec![0; n];
    for col in 0..n {
        let r = (0..n)
            .rev()
            .find(|&r| !is_pivot[r] && !m[r][col].is_zero())
            .expect("invertible matrix has a pivot in every column");
        is_pivot[r] = true;
        w[col] = r;
        let inv = f.inv(m[r][col]).unwrap();
        for above in 0..r {
            let x = m[above][col];
            if x.is_zero() {
                continue;
            }
            let factor = f.mul(x, inv);
            for c in 0..n {
                let (dm, dl) = (f.mul(factor, m[r][c]), f.mul(factor, l[r][c]));
                m[above][c] = f.sub(m[above][c], dm);
                l[above][c] = f.sub(l[above][c], dl);
            }
        }
    }
    (Mat::from_rows(&l), Mat::from_rows(&m), w)
}

/// The Weyl element labelling the Bruhat cell of `g`.
pub fn bruhat_cell(d: &GaloisDatum, g: &Mat) -> Perm {
    reduce(d, g).2
}

/// `g = u · m` with `u ∈ U(E)` and `m` the canonical representative of the
/// coset `U(E) g` (zero above the pivot of every column).
pub fn u_coset_normal_form(d: &GaloisDatum, g: &Mat) -> (Mat, Mat) {
    let (l, m, _) = reduce(d, g);
    (d.inv(&l), m)
}

/// Whether `u` lies in `U ∩ w⁻¹U⁻w`: upper unitriangular with `u_{ij} = 0`
/// unless `w(i) > w(j)`.
pub fn in_u_w_minus(u: &Mat, w: &[usize]) -> bool {
    if !u.is_upper_unitriangular() {
        return false;
    }
    let n = u.n();
    (0..n).all(|i| (i + 1..n).all(|j| w[i] > w[j] || u.get(i, j).is_zero()))
}

/// Bruhat decomposition with `u2 ∈ U_w⁻`. Over `F` the input must lie in
/// `G(F)` and every factor is then rational.
pub fn bruhat_decompose(d: &GaloisDatum, g: &Mat, over: Over) -> Result<Bruhat> {
    let ok = match over {
        Over::F => d.in_gf(g),
        Over::E => d.in_ge(g),
    };
    if !ok {
        return Err(Error::NotInGroup(format!("{over:?}-points: {g:?}")));
    }
    let ops = d.ops();
    let f = d.ext();
    let (l, m, w) = reduce(d, g);
    let nw = d.weyl_of_perm(&w).rep;
    let n = g.n();
    let mut t_diag = vec![FieldElem::ONE; n];
    for (j, &r) in w.iter().enumerate() {
        t_diag[r] = f.div(m.get(r, j), nw.get(r, j)).unwrap();
    }
    let t = Mat::diag(&t_diag);
    let u2 = ops.mul3(&d.inv(&nw), &d.inv(&t), &m);
    let u1 = d.inv(&l);
    let out = Bruhat { u1, t, w, u2 };
    if !in_u_w_minus(&out.u2, &out.w) || ops.product(n, [&out.u1, &out.t, &nw, &out.u2]) != *g {
        return Err(Error::Verification(format!("Bruhat recomposition for {g:?}")));
    }
    if over == Over::F && !(d.in_gf(&out.u1) && d.in_gf(&out.t) && d.in_gf(&out.u2)) {
        return Err(Error::Verification(format!("Bruhat factors of {g:?} are not rational")));
    }
    Ok(out)
}

impl Bruhat {
    pub fn length(&self) -> usize {
        weyl::inversions(&self.w)
    }
}
