use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::classchar::{CharacterTable, ConjClasses};
use crate::error::{Error, Result};
use crate::matgrp::{bruhat_decompose, weyl, GaloisDatum, Mat, Over};
use crate::whittaker::psi::NondegenChar;

/// `U` grouped by conjugacy class and `ψ`-exponent: `(class, exponent, count)`.
fn unipotent_profile(d: &GaloisDatum, classes: &ConjClasses, psi: &NondegenChar, units: &[Mat]) -> Result<Vec<(usize, u32, usize)>> {
    let mut counts: FxHashMap<(usize, u32), usize> = FxHashMap::default();
    for u in units {
        let k = classes.index_of(u).ok_or_else(|| Error::NotInGroup("unipotent element outside the group".into()))?;
        *counts.entry((k, psi.exponent(d, u))).or_default() += 1;
    }
    let mut out: Vec<(usize, u32, usize)> = counts.into_iter().map(|((k, e), c)| (k, e, c)).collect();
    out.sort_unstable();
    Ok(out)
}

/// `⟨χ_i|_U, ψ⟩ = |U|⁻¹ Σ_u χ_i(u) conj ψ(u)` for every irreducible.
pub fn multiplicities(
    d: &GaloisDatum,
    classes: &ConjClasses,
    table: &CharacterTable,
    psi: &NondegenChar,
    units: &[Mat],
) -> Result<Vec<Complex64>> {
    let profile = unipotent_profile(d, classes, psi, units)?;
    let n = units.len() as f64;
    Ok(table
        .chars
        .iter()
        .map(|row| profile.iter().map(|&(k, e, c)| row[k] * psi.root(e).conj() * c as f64).sum::<Complex64>() / n)
        .collect())
}

/// `(index, multiplicity)` for every irreducible; multiplicities must round to
/// 0 or 1 within `tol`.
pub fn generic_irreps(
    d: &GaloisDatum,
    classes: &ConjClasses,
    table: &CharacterTable,
    psi: &NondegenChar,
    units: &[Mat],
    tol: f64,
) -> Result<Vec<(usize, usize)>> {
    let m = multiplicities(d, classes, table, psi, units)?;
    m.iter()
        .enumerate()
        .map(|(i, v)| {
            let r = v.re.round();
            if (v - Complex64::new(r, 0.0)).norm() > tol || !(r == 0.0 || r == 1.0) {
                return Err(Error::Numerical(format!("multiplicity of irreducible {i} is {v}")));
            }
            Ok((i, r as usize))
        })
        .collect()
}

/// Evaluates `B(g) = |U|⁻¹ Σ_u conj ψ(u) χ(g u)` for one irreducible.
pub struct BesselEval<'a> {
    d: &'a GaloisDatum,
    classes: &'a ConjClasses,
    chi: &'a [Complex64],
    units: Vec<(Mat, Complex64)>,
}

impl<'a> BesselEval<'a> {
    pub fn new(
        d: &'a GaloisDatum,
        classes: &'a ConjClasses,
        table: &'a CharacterTable,
        pi: usize,
        psi: &NondegenChar,
        units: &[Mat],
    ) -> Self {
        let units = units.iter().map(|u| (*u, psi.eval(d, u).conj())).collect();
        BesselEval { d, classes, chi: &table.chars[pi], units }
    }

    pub fn eval(&self, g: &Mat) -> Complex64 {
        let ops = self.d.ops();
        let s: Complex64 = self
            .units
            .iter()
            .map(|(u, c)| c * self.chi[self.classes.index_of(&ops.mul(g, u)).expect("g·u lies in the group")])
            .sum();
        s / self.units.len() as f64
    }
}

/// The normalized Bessel function of one generic irreducible, tabulated on a
/// list of group elements.
#[derive(Clone, Debug)]
pub struct BesselTable {
    pub pi_index: usize,
    pub elements: Vec<Mat>,
    pub values: Vec<Complex64>,
    index: FxHashMap<Mat, u32>,
}

impl BesselTable {
    pub fn get(&self, g: &Mat) -> Option<Complex64> {
        self.index.get(g).map(|&i| self.values[i as usize])
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Mat, &Complex64)> {
        self.elements.iter().zip(&self.values)
    }

    /// CSV export: element encoding, Bruhat cell word, real and imaginary part;
    /// followed by a summary of the support per cell with the torus parts hit.
    pub fn to_csv(&self, d: &GaloisDatum, over: Over, zero_tol: f64) -> Result<String> {
        let mut out = String::from("element,cell,re,im\n");
        let mut support: std::collections::BTreeMap<Vec<usize>, Vec<Mat>> = Default::default();
        for (g, v) in self.iter() {
            let br = bruhat_decompose(d, g, over)?;
            let word: String = weyl::reduced_word(&br.w).iter().map(|i| i.to_string()).collect();
            let snap = |x: f64| if x.abs() <= zero_tol { 0.0 } else { x };
            writeln!(out, "{},w{},{:.12},{:.12}", g.encode(d.ext()), word, snap(v.re), snap(v.im)).unwrap();
            if v.norm() > zero_tol {
                support.entry(br.w).or_default().push(br.t);
            }
        }
        out.push_str("# support: cell,torus parts\n");
        for (w, mut ts) in support {
            ts.sort();
            ts.dedup();
            let word: String = weyl::reduced_word(&w).iter().map(|i| i.to_string()).collect();
            let tori: Vec<String> = ts.iter().map(|t| t.encode(d.ext())).collect();
            writeln!(out, "# w{word},{}", tori.join(" ")).unwrap();
        }
        Ok(out)
    }
}

/// Tabulates the Bessel function of the generic irreducible `pi` on `domain`,
/// normalized so that `B(1) = 1` exactly.
pub fn bessel(
    d: &GaloisDatum,
    classes: &ConjClasses,
    table: &CharacterTable,
    pi: usize,
    psi: &NondegenChar,
    units: &[Mat],
    domain: &[Mat],
    tol: f64,
) -> Result<BesselTable> {
    let mult = multiplicities(d, classes, table, psi, units)?;
    if (mult[pi] - Complex64::new(1.0, 0.0)).norm() > tol {
        return Err(Error::NotGeneric(pi));
    }
    let ev = BesselEval::new(d, classes, table, pi, psi, units);
    let b1 = ev.eval(&d.identity());
    if (b1 - Complex64::new(1.0, 0.0)).norm() > tol {
        return Err(Error::Numerical(format!("B(1) = {b1}")));
    }
    let mut values: Vec<Complex64> = domain.par_iter().map(|g| ev.eval(g) / b1).collect();
    let index: FxHashMap<Mat, u32> = domain.iter().enumerate().map(|(i, g)| (*g, i as u32)).collect();
    if let Some(&i) = index.get(&d.identity()) {
        values[i as usize] = Complex64::new(1.0, 0.0);
    }
    Ok(BesselTable { pi_index: pi, elements: domain.to_vec(), values, index })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classchar::{character_table, conj_classes, DEFAULT_TABLE_CAP};
    use crate::gf::FieldElem;
    use crate::matgrp::{datum_build, Family, Selector};
    use crate::whittaker::psi::psi_build;

    #[test]
    fn gl2_f2_standard_is_generic() {
        let d = datum_build(Family::Gl, 2, 2).unwrap();
        let cl = conj_classes(d.ops(), d.enumerate(Selector::GF).unwrap()).unwrap();
        let t = character_table(d.ops(), &cl, 1, DEFAULT_TABLE_CAP).unwrap();
        let psi = psi_build(&d, FieldElem::ONE, Over::F).unwrap();
        let units = psi.units(&d).unwrap();
        let gen = generic_irreps(&d, &cl, &t, &psi, &units, 1e-6).unwrap();
        let deg2 = t.degrees.iter().position(|&x| x == 2).unwrap();
        assert_eq!(gen[deg2].1, 1);
        let dim: usize = gen.iter().map(|&(i, m)| m * t.degrees[i]).sum();
        assert_eq!(dim, cl.order() / units.len());
    }

    #[test]
    fn transformation_rule_gl2_f2_over_e() {
        let d = datum_build(Family::Gl, 2, 2).unwrap();
        let ge = d.enumerate(Selector::GE).unwrap();
        let cl = conj_classes(d.ops(), ge.clone()).unwrap();
        let t = character_table(d.ops(), &cl, 1, DEFAULT_TABLE_CAP).unwrap();
        let psi = psi_build(&d, d.tower().default_beta(), Over::E).unwrap();
        let units = psi.units(&d).unwrap();
        let gen = generic_irreps(&d, &cl, &t, &psi, &units, 1e-6).unwrap();
        for &(pi, m) in &gen {
            if m == 0 {
                assert!(matches!(bessel(&d, &cl, &t, pi, &psi, &units, &ge, 1e-6), Err(Error::NotGeneric(_))));
                continue;
            }
            let b = bessel(&d, &cl, &t, pi, &psi, &units, &ge, 1e-6).unwrap();
            assert_eq!(b.get(&d.identity()), Some(Complex64::new(1.0, 0.0)));
            for g in ge.iter().step_by(11) {
                for u1 in &units {
                    for u2 in &units {
                        let lhs = b.get(&d.ops().mul3(u1, g, u2)).unwrap();
                        let rhs = psi.eval(&d, u1) * psi.eval(&d, u2) * b.get(g).unwrap();
                        assert!((lhs - rhs).norm() < 1e-9);
                    }
                }
            }
            let csv = b.to_csv(&d, Over::E, 1e-8).unwrap();
            assert!(csv.starts_with("element,cell,re,im\n"));
            assert!(csv.contains("# support"));
        }
    }
}
