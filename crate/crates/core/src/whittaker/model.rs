use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use std::sync::{Arc, Mutex};

use crate::classchar::{CharacterTable, ConjClasses};
use crate::error::{Error, Result};
use crate::matgrp::{u_coset_normal_form, GaloisDatum, Mat, Over};
use crate::whittaker::psi::NondegenChar;

/// Largest induced-space dimension `|G(E)|/|U(E)|` accepted by default.
pub const DEFAULT_MODEL_CAP: usize = 4096;

/// Canonical representatives of `U(E)\G(E)`.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    pub reps: Vec<Mat>,
    index: FxHashMap<Mat, u32>,
}

impl CosetSpace {
    pub fn new(d: &GaloisDatum, elements: &[Mat]) -> Self {
        let mut reps: Vec<Mat> = elements.par_iter().map(|g| u_coset_normal_form(d, g).1).collect();
        reps.sort_unstable();
        reps.dedup();
        let index = reps.iter().enumerate().map(|(i, r)| (*r, i as u32)).collect();
        CosetSpace { reps, index }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// `g = u · reps[i]`; returns `(ψ(u), i)`.
    #[inline]
    pub fn locate(&self, d: &GaloisDatum, psi: &NondegenChar, g: &Mat) -> (Complex64, usize) {
        let (u, m) = u_coset_normal_form(d, g);
        (psi.eval(d, &u), self.index[&m] as usize)
    }
}

/// The `π`-isotypic subspace of `Ind_{U(E)}^{G(E)} ψ` with an orthonormal basis.
///
/// Functions `f` with `f(ug) = ψ(u) f(g)` are stored by their values on the
/// coset representatives; `G(E)` acts by right translation and `I_σ f = f ∘ σ`.
#[derive(Clone, Debug)]
pub struct WhittakerModel {
    pub pi_index: usize,
    pub degree: usize,
    pub cosets: CosetSpace,
    /// Columns span the isotypic subspace (induced dimension × degree).
    pub basis: DMatrix<Complex64>,
    /// Matrix of `I_σ` on the subspace, when `π` is `σ`-invariant.
    pub intertwiner: Option<DMatrix<Complex64>>,
    /// Coordinates of the `ψ`-equivariant vector, normalized by `f(1) = 1`.
    pub bessel_vector: DVector<Complex64>,
    psi: NondegenChar,
}

/// For each representative `r`: `map(r) = u · reps[i]`, as `(ψ(u), i)`.
fn translation(
    d: &GaloisDatum,
    cosets: &CosetSpace,
    psi: &NondegenChar,
    map: impl Fn(&Mat) -> Mat + Sync,
) -> Vec<(Complex64, usize)> {
    cosets.reps.par_iter().map(|r| cosets.locate(d, psi, &map(r))).collect()
}

fn apply_rows(rows: &[(Complex64, usize)], f: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    DMatrix::from_fn(f.nrows(), f.ncols(), |r, c| rows[r].0 * f[(rows[r].1, c)])
}

fn apply_translation(
    d: &GaloisDatum,
    cosets: &CosetSpace,
    psi: &NondegenChar,
    map: impl Fn(&Mat) -> Mat + Sync,
    f: &DMatrix<Complex64>,
) -> DMatrix<Complex64> {
    apply_rows(&translation(d, cosets, psi, map), f)
}

impl WhittakerModel {
    /// `(R(g) f)(x) = f(x g)` applied to the columns of `f`.
    pub fn right_translate(&self, d: &GaloisDatum, g: &Mat, f: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        apply_translation(d, &self.cosets, &self.psi, |r| d.mul(r, g), f)
    }

    /// Matrix of `π(g)` in the orthonormal basis.
    pub fn act(&self, d: &GaloisDatum, g: &Mat) -> DMatrix<Complex64> {
        self.basis.adjoint() * self.right_translate(d, g, &self.basis)
    }

    /// `π(g) v` for a coordinate vector `v`.
    pub fn act_vec(&self, d: &GaloisDatum, g: &Mat, v: &DVector<Complex64>) -> DVector<Complex64> {
        let f = DMatrix::from_columns(&[&self.basis * v]);
        let moved = self.right_translate(d, g, &f);
        self.basis.adjoint() * moved.column(0)
    }

    /// `tr(π(g) P)` given `bp = basis · P`, without forming `π(g)`.
    pub fn trace_with(&self, d: &GaloisDatum, g: &Mat, bp: &DMatrix<Complex64>) -> Complex64 {
        let rows = translation(d, &self.cosets, &self.psi, |r| d.mul(r, g));
        rows.iter()
            .enumerate()
            .map(|(r, &(phase, i))| phase * (0..self.degree).map(|c| self.basis[(r, c)].conj() * bp[(i, c)]).sum::<Complex64>())
            .sum()
    }

    /// `tr π(g)`.
    pub fn trace(&self, d: &GaloisDatum, g: &Mat) -> Complex64 {
        self.trace_with(d, g, &self.basis)
    }

    /// `I_σ` applied to the columns of `f`.
    pub fn sigma_translate(&self, d: &GaloisDatum, f: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        apply_translation(d, &self.cosets, &self.psi, |r| d.sigma(r), f)
    }

    /// The Bessel vector as a function on the coset representatives.
    pub fn bessel_function_on_reps(&self) -> DVector<Complex64> {
        &self.basis * &self.bessel_vector
    }

    /// `Λ(π(g) v) / Λ(v)` with `Λ(f) = f(1)`, evaluated inside the model.
    pub fn bessel_value(&self, d: &GaloisDatum, g: &Mat) -> Complex64 {
        let (phase, i) = self.cosets.locate(d, &self.psi, g);
        let v = self.basis.row(i) * &self.bessel_vector;
        phase * v[(0, 0)]
    }

    pub fn dim(&self) -> usize {
        self.degree
    }
}

fn residual(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    (a - b).norm()
}

/// `Ind_{U(E)}^{G(E)} ψ` together with the `π`-independent data every
/// Whittaker model needs: coset representatives, the class of `r⁻¹ u t` for the
/// leading representatives `t`, and the right translations by `U(E)`.
pub struct InducedSpace {
    pub cosets: CosetSpace,
    psi: NondegenChar,
    psi_units: Vec<(Mat, Complex64)>,
    rep_inverses: Vec<Mat>,
    /// `class_columns[t][r·|U| + u]` is the class of `r⁻¹ u reps[t]`.
    class_columns: Mutex<Vec<Arc<Vec<u16>>>>,
    unit_translations: Vec<Vec<(Complex64, usize)>>,
}

impl InducedSpace {
    pub fn new(d: &GaloisDatum, classes: &ConjClasses, psi: &NondegenChar, cap: usize) -> Result<Self> {
        if psi.domain() != Over::E {
            return Err(Error::Unsupported("Whittaker models are built over E".into()));
        }
        if classes.len() > u16::MAX as usize {
            return Err(Error::Unsupported(format!("{} conjugacy classes", classes.len())));
        }
        let group = classes.group();
        let units = psi.units(d)?;
        let induced = group.order() / units.len();
        if induced > cap {
            return Err(Error::CapExceeded { what: "induced space".into(), size: induced as u64, cap: cap as u64 });
        }
        let cosets = CosetSpace::new(d, group.elements());
        if cosets.len() != induced {
            return Err(Error::Verification(format!("{} cosets, expected {induced}", cosets.len())));
        }
        let psi_units: Vec<(Mat, Complex64)> = units.iter().map(|u| (*u, psi.eval(d, u))).collect();
        let rep_inverses = cosets.reps.iter().map(|r| d.inv(r)).collect();
        let unit_translations = units.iter().map(|u| translation(d, &cosets, psi, |r| d.mul(r, u))).collect();
        Ok(InducedSpace {
            cosets,
            psi: psi.clone(),
            psi_units,
            rep_inverses,
            class_columns: Mutex::new(Vec::new()),
            unit_translations,
        })
    }

    pub fn dim(&self) -> usize {
        self.cosets.len()
    }

    fn class_column(&self, d: &GaloisDatum, classes: &ConjClasses, t: usize) -> Arc<Vec<u16>> {
        let mut cache = self.class_columns.lock().expect("class column cache");
        while cache.len() <= t {
            let rep = &self.cosets.reps[cache.len()];
            let ops = d.ops();
            let ut: Vec<Mat> = self.psi_units.iter().map(|(u, _)| ops.mul(u, rep)).collect();
            let col: Vec<u16> = self
                .rep_inverses
                .par_iter()
                .flat_map_iter(|rinv| ut.iter().map(move |x| classes.index_of(&ops.mul(rinv, x)).unwrap() as u16))
                .collect();
            cache.push(Arc::new(col));
        }
        cache[t].clone()
    }

    /// `(P δ_t)(r) = deg/|G| Σ_u conj χ(r⁻¹ u t) ψ(u)` for the `π`-isotypic projector `P`.
    fn projector_column(&self, d: &GaloisDatum, classes: &ConjClasses, chi: &[Complex64], scale: f64, t: usize) -> DVector<Complex64> {
        let idx = self.class_column(d, classes, t);
        let nu = self.psi_units.len();
        DVector::from_iterator(
            self.dim(),
            idx.chunks(nu).map(|row| {
                row.iter().zip(&self.psi_units).map(|(&k, (_, pu))| chi[k as usize].conj() * pu).sum::<Complex64>() * scale
            }),
        )
    }
}

/// Builds the Whittaker model of the generic irreducible `pi` of `G(E)`.
pub fn whittaker_model(
    d: &GaloisDatum,
    classes: &ConjClasses,
    table: &CharacterTable,
    pi: usize,
    psi: &NondegenChar,
    cap: usize,
    tol: f64,
) -> Result<WhittakerModel> {
    let space = InducedSpace::new(d, classes, psi, cap)?;
    whittaker_model_in(&space, d, classes, table, pi, tol)
}

/// As [`whittaker_model`], reusing the data cached in `space`.
pub fn whittaker_model_in(
    space: &InducedSpace,
    d: &GaloisDatum,
    classes: &ConjClasses,
    table: &CharacterTable,
    pi: usize,
    tol: f64,
) -> Result<WhittakerModel> {
    let group = classes.group();
    let chi = &table.chars[pi];
    let deg = table.degrees[pi];
    let scale = deg as f64 / group.order() as f64;

    let mut cols: Vec<DVector<Complex64>> = Vec::with_capacity(deg);
    for t in 0..space.dim() {
        if cols.len() == deg {
            break;
        }
        let mut v = space.projector_column(d, classes, chi, scale, t);
        for _ in 0..2 {
            for c in &cols {
                let proj = c.dotc(&v);
                v -= c * proj;
            }
        }
        let nv = v.norm();
        if nv > 1e-8 {
            cols.push(v / Complex64::new(nv, 0.0));
        }
    }
    if cols.len() != deg {
        return Err(Error::Numerical(format!("isotypic projector has rank {} ≠ {deg}", cols.len())));
    }
    let basis = DMatrix::from_columns(&cols);

    let mut model = WhittakerModel {
        pi_index: pi,
        degree: deg,
        cosets: space.cosets.clone(),
        basis,
        intertwiner: None,
        bessel_vector: DVector::zeros(deg),
        psi: space.psi.clone(),
    };

    for (k, g) in classes.reps.iter().enumerate() {
        let tr = model.trace(d, g);
        if (tr - chi[k]).norm() > tol {
            return Err(Error::Verification(format!("model character differs at class {k}: {tr} vs {}", chi[k])));
        }
    }

    // E_ψ = basisᴴ · (|U|⁻¹ Σ_u conj ψ(u) R(u)) · basis
    let mut projected = DMatrix::zeros(model.cosets.len(), deg);
    for ((_, pu), rows) in space.psi_units.iter().zip(&space.unit_translations) {
        projected += apply_rows(rows, &model.basis) * pu.conj();
    }
    projected /= Complex64::new(space.psi_units.len() as f64, 0.0);
    let e_psi = model.basis.adjoint() * projected;
    let best = (0..deg).max_by(|&a, &b| e_psi.column(a).norm().partial_cmp(&e_psi.column(b).norm()).unwrap()).unwrap();
    let v: DVector<Complex64> = e_psi.column(best).into_owned();
    let f1 = (&model.basis * &v)[model.cosets.index[&d.identity()] as usize];
    if f1.norm() < 1e-10 {
        return Err(Error::Numerical("Whittaker functional vanishes on the ψ-vector".into()));
    }
    model.bessel_vector = v / f1;

    let sigma_moved: Vec<usize> =
        classes.reps.iter().map(|g| classes.index_of(&d.sigma(g)).unwrap()).collect();
    let invariant = (0..classes.len()).all(|k| (chi[k] - chi[sigma_moved[k]]).norm() <= tol);
    if invariant {
        let ib = model.sigma_translate(d, &model.basis);
        let imat = model.basis.adjoint() * &ib;
        if residual(&ib, &(&model.basis * &imat)) > tol {
            return Err(Error::Verification("I_σ does not preserve the isotypic subspace".into()));
        }
        if residual(&(&imat * &imat), &DMatrix::identity(deg, deg)) > tol {
            return Err(Error::Verification("I_σ is not an involution".into()));
        }
        let bv = DMatrix::from_columns(&[model.bessel_vector.clone()]);
        if residual(&(&imat * &bv), &bv) > tol {
            return Err(Error::Verification("I_σ moves the Bessel vector".into()));
        }
        model.intertwiner = Some(imat);
    }
    Ok(model)
}
