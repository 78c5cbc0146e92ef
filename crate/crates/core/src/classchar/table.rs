use std::cmp::Ordering;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classchar::classes::ConjClasses;
use crate::error::{Error, Result};
use crate::matgrp::{GaloisDatum, Mat, MatOps};

/// Largest group order accepted by [`character_table`] by default.
pub const DEFAULT_TABLE_CAP: usize = 100_000;
/// Orthogonality residual accepted for a finished table.
pub const ORTHO_TOL: f64 = 1e-8;
const MAX_RESEEDS: u64 = 8;

/// Complex values indexed by conjugacy classes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassFunction {
    pub values: Vec<Complex64>,
}

impl ClassFunction {
    pub fn new(values: Vec<Complex64>) -> Self {
        ClassFunction { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Irreducible characters of an enumerated group; rows are irreducibles in
/// canonical order, columns follow the classes the table was built from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CharacterTable {
    pub chars: Vec<Vec<Complex64>>,
    pub degrees: Vec<usize>,
    pub sizes: Vec<usize>,
    pub seed: u64,
}

impl CharacterTable {
    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    pub fn order(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn row(&self, i: usize) -> ClassFunction {
        ClassFunction::new(self.chars[i].clone())
    }

    /// Value of irreducible `i` at an element of the group.
    pub fn value(&self, classes: &ConjClasses, i: usize, g: &Mat) -> Option<Complex64> {
        classes.index_of(g).map(|k| self.chars[i][k])
    }

    /// Maximal deviations from row and column orthogonality.
    pub fn orthogonality_residuals(&self) -> (f64, f64) {
        let order = self.order() as f64;
        let r = self.chars.len();
        let mut row_res: f64 = 0.0;
        for i in 0..r {
            for j in 0..r {
                let s: Complex64 = (0..self.sizes.len())
                    .map(|k| self.chars[i][k] * self.chars[j][k].conj() * self.sizes[k] as f64)
                    .sum::<Complex64>()
                    / order;
                let target = if i == j { 1.0 } else { 0.0 };
                row_res = row_res.max((s - target).norm());
            }
        }
        let c = self.sizes.len();
        let mut col_res: f64 = 0.0;
        for k in 0..c {
            for l in 0..c {
                let s: Complex64 = (0..r).map(|i| self.chars[i][k] * self.chars[i][l].conj()).sum();
                let scale = order / self.sizes[k] as f64;
                let target = if k == l { scale } else { 0.0 };
                col_res = col_res.max((s - target).norm() / scale);
            }
        }
        (row_res, col_res)
    }

    /// Checks the structural invariants; used after computing and after loading.
    pub fn verify(&self) -> Result<()> {
        if self.chars.len() != self.sizes.len() {
            return Err(Error::Numerical(format!(
                "{} characters for {} classes",
                self.chars.len(),
                self.sizes.len()
            )));
        }
        let (row, col) = self.orthogonality_residuals();
        if row > ORTHO_TOL || col > ORTHO_TOL {
            return Err(Error::Numerical(format!("orthogonality residuals {row:e} / {col:e}")));
        }
        if self.degrees.iter().map(|d| d * d).sum::<usize>() != self.order() {
            return Err(Error::Numerical("sum of squared degrees differs from the group order".into()));
        }
        for (row, &deg) in self.chars.iter().zip(&self.degrees) {
            if row.iter().any(|v| v.norm() > deg as f64 + ORTHO_TOL) {
                return Err(Error::Numerical("character value exceeds its degree".into()));
            }
        }
        Ok(())
    }
}

/// Degree ascending, then value tuples descending, so the trivial character
/// comes first.
fn canonical_cmp(a: &(usize, Vec<Complex64>), b: &(usize, Vec<Complex64>)) -> Ordering {
    let key = |v: &Complex64| ((v.re * 1e6).round() as i64, (v.im * 1e6).round() as i64);
    a.0.cmp(&b.0).then_with(|| b.1.iter().map(key).cmp(a.1.iter().map(key)))
}

/// `C[i][k] = Σ_{x ∈ C_i} c(class of x⁻¹ z_k)` for class representatives `z_k`.
fn class_product_matrix(ops: MatOps<'_>, classes: &ConjClasses, weights: &[Complex64]) -> DMatrix<Complex64> {
    let h = classes.len();
    let group = classes.group();
    let columns: Vec<Vec<Complex64>> = (0..h)
        .into_par_iter()
        .map(|k| {
            let z = classes.reps[k];
            let mut col = vec![Complex64::new(0.0, 0.0); h];
            for (pos, _) in group.elements().iter().enumerate() {
                let xinv = &group.elements()[group.inverse_pos(pos)];
                let j = classes.index_of(&ops.mul(xinv, &z)).expect("closed group");
                col[classes.class_of_pos(pos)] += weights[j];
            }
            col
        })
        .collect();
    DMatrix::from_fn(h, h, |i, k| columns[k][i])
}

fn attempt(ops: MatOps<'_>, classes: &ConjClasses, seed: u64) -> Result<Vec<(usize, Vec<Complex64>)>> {
    let h = classes.len();
    let order = classes.order() as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights: Vec<Complex64> =
        (0..h).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    let c = class_product_matrix(ops, classes, &weights);
    let sq: Vec<f64> = classes.sizes.iter().map(|&s| (s as f64).sqrt()).collect();
    let b = DMatrix::from_fn(h, h, |i, k| c[(i, k)] * sq[k] / sq[i]);
    let herm = &b + b.adjoint();
    let eig = herm.clone().symmetric_eigen();
    let scale = herm.norm().max(1.0);
    let mut evs: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    evs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let gap = evs.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
    if gap < 1e-7 * scale {
        return Err(Error::Numerical(format!("degenerate spectrum (gap {gap:e})")));
    }
    let id = classes.identity_class();
    let mut rows = Vec::with_capacity(h);
    for col in eig.eigenvectors.column_iter() {
        let bv = &b * col;
        let lambda = col.dotc(&bv);
        if (bv - col * lambda).norm() > 1e-7 * scale {
            return Err(Error::Numerical("class-sum eigenvector not simultaneous".into()));
        }
        let v0 = col[id];
        let deg_f = v0.norm() * order.sqrt();
        let deg = deg_f.round() as usize;
        if deg == 0 || (deg_f - deg as f64).abs() > 1e-6 {
            return Err(Error::Numerical(format!("non-integral degree {deg_f}")));
        }
        let chi: Vec<Complex64> = (0..h).map(|k| col[k] / v0 * (deg as f64) / sq[k]).collect();
        rows.push((deg, chi));
    }
    Ok(rows)
}

/// Irreducible character table from class-sum eigenvectors. Deterministic for
/// a given seed; reseeds up to eight times if the spectrum is degenerate.
pub fn character_table(ops: MatOps<'_>, classes: &ConjClasses, seed: u64, cap: usize) -> Result<CharacterTable> {
    if classes.order() > cap {
        return Err(Error::CapExceeded { what: "character table".into(), size: classes.order() as u64, cap: cap as u64 });
    }
    let mut last = None;
    for k in 0..=MAX_RESEEDS {
        match attempt(ops, classes, seed.wrapping_add(k)) {
            Ok(mut rows) => {
                rows.sort_by(canonical_cmp);
                let table = CharacterTable {
                    degrees: rows.iter().map(|r| r.0).collect(),
                    chars: rows.into_iter().map(|r| r.1).collect(),
                    sizes: classes.sizes.clone(),
                    seed,
                };
                match table.verify() {
                    Ok(()) => return Ok(table),
                    Err(e) => last = Some(e),
                }
            }
            Err(e) => {
                log::debug!("character table attempt {k} failed: {e}");
                last = Some(e);
            }
        }
    }
    Err(last.unwrap())
}

/// `|G|⁻¹ Σ_k |C_k| f(k) conj(g(k))`.
pub fn inner_product(f: &ClassFunction, g: &ClassFunction, classes: &ConjClasses) -> Result<Complex64> {
    if f.len() != classes.len() {
        return Err(Error::LengthMismatch(f.len(), classes.len()));
    }
    if g.len() != classes.len() {
        return Err(Error::LengthMismatch(g.len(), classes.len()));
    }
    let s: Complex64 = (0..classes.len()).map(|k| f.values[k] * g.values[k].conj() * classes.sizes[k] as f64).sum();
    Ok(s / classes.order() as f64)
}

/// Irreducibles of `G(E)` with `χ ∘ σ = χ`.
pub fn sigma_invariant_irreps(d: &GaloisDatum, classes: &ConjClasses, table: &CharacterTable, tol: f64) -> Vec<usize> {
    let moved: Vec<usize> =
        classes.reps.iter().map(|g| classes.index_of(&d.sigma(g)).expect("σ preserves G(E)")).collect();
    (0..table.len())
        .filter(|&i| (0..classes.len()).all(|k| (table.chars[i][k] - table.chars[i][moved[k]]).norm() <= tol))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classchar::classes::conj_classes;
    use crate::matgrp::{datum_build, Family, Selector};

    fn table_for(fam: Family, n: usize, q: u32, sel: Selector) -> (GaloisDatum, ConjClasses, CharacterTable) {
        let d = datum_build(fam, n, q).unwrap();
        let cl = conj_classes(d.ops(), d.enumerate(sel).unwrap()).unwrap();
        let t = character_table(d.ops(), &cl, 7, DEFAULT_TABLE_CAP).unwrap();
        (d, cl, t)
    }

    #[test]
    fn s3_table() {
        let (_, cl, t) = table_for(Family::Gl, 2, 2, Selector::GF);
        assert_eq!(t.degrees, vec![1, 1, 2]);
        assert!(t.chars[0].iter().all(|v| (v - Complex64::new(1.0, 0.0)).norm() < 1e-9));
        // brute-force S3: sign character is -1 on the 3 involutions, 2-dim is -1 on 3-cycles
        for k in 0..cl.len() {
            let expect_sign = match cl.sizes[k] {
                1 | 2 => 1.0,
                _ => -1.0,
            };
            let expect_std = match cl.sizes[k] {
                1 => 2.0,
                2 => -1.0,
                _ => 0.0,
            };
            assert!((t.chars[1][k].re - expect_sign).abs() < 1e-9);
            assert!((t.chars[2][k].re - expect_std).abs() < 1e-9);
        }
    }

    #[test]
    fn inner_products_orthonormal() {
        let (_, cl, t) = table_for(Family::Gl, 2, 2, Selector::GE);
        for i in 0..t.len() {
            for j in 0..t.len() {
                let ip = inner_product(&t.row(i), &t.row(j), &cl).unwrap();
                let target = if i == j { 1.0 } else { 0.0 };
                assert!((ip - Complex64::new(target, 0.0)).norm() < 1e-8);
            }
        }
        let id = cl.identity_class();
        let mut reg = vec![Complex64::new(0.0, 0.0); cl.len()];
        reg[id] = Complex64::new(cl.order() as f64, 0.0);
        let ip = inner_product(&t.row(0), &ClassFunction::new(reg), &cl).unwrap();
        assert!((ip - Complex64::new(1.0, 0.0)).norm() < 1e-9);
        assert!(inner_product(&ClassFunction::new(vec![]), &t.row(0), &cl).is_err());
    }

    #[test]
    fn deterministic_given_seed() {
        let (d, cl, t) = table_for(Family::Gl, 2, 3, Selector::GF);
        let again = character_table(d.ops(), &cl, 7, DEFAULT_TABLE_CAP).unwrap();
        assert_eq!(t, again);
        assert_eq!(t.len(), 8);
    }

    #[test]
    fn table_respects_cap() {
        let d = datum_build(Family::Gl, 2, 2).unwrap();
        let cl = conj_classes(d.ops(), d.enumerate(Selector::GE).unwrap()).unwrap();
        assert!(matches!(character_table(d.ops(), &cl, 1, 100), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn sigma_invariant_count_gl2_f2() {
        let (d, cl, t) = table_for(Family::Gl, 2, 2, Selector::GE);
        let inv = sigma_invariant_irreps(&d, &cl, &t, 1e-6);
        assert!(inv.contains(&0));
        let op = conj_classes(d.ops(), d.enumerate(Selector::GopF).unwrap()).unwrap();
        assert_eq!(inv.len(), op.len());
    }
}
