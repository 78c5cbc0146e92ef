use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::classchar::{CharacterTable, ClassFunction, ConjClasses, TwistedClasses};
use crate::error::{Error, Result};
use crate::matgrp::{GaloisDatum, Mat};
use crate::shintani::norm::NormTable;
use crate::whittaker::WhittakerModel;

/// `g ↦ tr(π(g) ∘ I_σ)` on σ-classes, checked constant on up to three members
/// of every class besides its representative.
pub fn twisted_character(
    d: &GaloisDatum,
    model: &WhittakerModel,
    tclasses: &TwistedClasses,
    tol: f64,
) -> Result<ClassFunction> {
    let imat = model
        .intertwiner
        .as_ref()
        .ok_or_else(|| Error::Unsupported(format!("irreducible {} is not σ-invariant", model.pi_index)))?;
    let bi = &model.basis * imat;
    let value = |g: &Mat| model.trace_with(d, g, &bi);
    let values = (0..tclasses.len())
        .into_par_iter()
        .map(|k| {
            let v = value(&tclasses.reps[k]);
            let members = tclasses.members(k);
            let mut picks = vec![0, members.len() / 2, members.len() - 1];
            picks.dedup();
            for i in picks {
                let w = value(&members[i]);
                if (w - v).norm() > tol {
                    return Err(Error::Verification(format!(
                        "twisted character of {} not constant on σ-class {k}: {v} vs {w}",
                        model.pi_index
                    )));
                }
            }
            Ok(v)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassFunction::new(values))
}

#[derive(Clone, Debug, Serialize)]
pub struct BaseChangePair {
    pub pi: usize,
    pub rho: usize,
    pub epsilon: i8,
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BaseChangeResult {
    pub pairs: Vec<BaseChangePair>,
    /// σ-invariant generic irreducibles with no partner.
    pub unmatched: Vec<usize>,
    /// Largest deviation over all matched pairs.
    pub residual: f64,
}

impl BaseChangeResult {
    pub fn partner(&self, pi: usize) -> Option<&BaseChangePair> {
        self.pairs.iter().find(|p| p.pi == pi)
    }

    /// Plain-text report: one row per pair, then the norm-map witnesses.
    pub fn to_text(&self, ge_table: &CharacterTable, op_table: &CharacterTable, norm: &NormTable) -> String {
        let mut out = String::from("pi,deg_pi,rho,deg_rho,epsilon,residual\n");
        for p in &self.pairs {
            writeln!(
                out,
                "{},{},{},{},{:+},{:.3e}",
                p.pi, ge_table.degrees[p.pi], p.rho, op_table.degrees[p.rho], p.epsilon, p.residual
            )
            .unwrap();
        }
        for pi in &self.unmatched {
            writeln!(out, "{pi},{},unmatched,,,", ge_table.degrees[*pi]).unwrap();
        }
        out.push_str("# norm map: sigma_class,g,g*sigma(g),matched\n");
        for (k, w) in norm.witnesses.iter().enumerate() {
            writeln!(out, "# {k},{},{},{}", w.g, w.norm, w.matched).unwrap();
        }
        out
    }
}

/// Matches every model carrying an intertwiner with `ρ ∈ Irr(G^op(F))` and
/// `ε = ±1` such that `T_π(g) = ε χ_ρ(𝒩(g))` on all σ-classes, within `10·tol`.
pub fn base_change_match(
    d: &GaloisDatum,
    models: &[WhittakerModel],
    tclasses: &TwistedClasses,
    opclasses: &ConjClasses,
    op_table: &CharacterTable,
    norm: &NormTable,
    tol: f64,
) -> Result<BaseChangeResult> {
    if op_table.chars.first().map(|c| c.len()) != Some(opclasses.len()) {
        return Err(Error::LengthMismatch(op_table.chars.first().map_or(0, |c| c.len()), opclasses.len()));
    }
    let match_tol = 10.0 * tol;
    let one = tclasses.identity_class();
    let outcomes = models
        .iter()
        .filter(|m| m.intertwiner.is_some())
        .map(|m| -> Result<(usize, Option<BaseChangePair>)> {
            let t = twisted_character(d, m, tclasses, tol)?;
            let mut found: Vec<BaseChangePair> = Vec::new();
            for (rho, chi) in op_table.chars.iter().enumerate() {
                let ratio = t.values[one] / chi[norm.map[one]];
                let eps = ratio.re.round();
                if eps.abs() != 1.0 || (ratio - Complex64::new(eps, 0.0)).norm() > match_tol {
                    continue;
                }
                let residual = (0..tclasses.len())
                    .map(|k| (t.values[k] - chi[norm.map[k]] * eps).norm())
                    .fold(0.0, f64::max);
                if residual <= match_tol {
                    found.push(BaseChangePair { pi: m.pi_index, rho, epsilon: eps as i8, residual });
                }
            }
            if found.len() > 1 {
                let rhos: Vec<usize> = found.iter().map(|p| p.rho).collect();
                return Err(Error::Verification(format!("irreducible {} matches several ρ: {rhos:?}", m.pi_index)));
            }
            Ok((m.pi_index, found.pop()))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut pairs = Vec::new();
    let mut unmatched = Vec::new();
    for (pi, p) in outcomes {
        match p {
            Some(p) => pairs.push(p),
            None => unmatched.push(pi),
        }
    }
    let residual = pairs.iter().map(|p| p.residual).fold(0.0, f64::max);
    Ok(BaseChangeResult { pairs, unmatched, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classchar::{character_table, conj_classes, twisted_classes, DEFAULT_TABLE_CAP};
    use crate::matgrp::{datum_build, Family, Over, Selector};
    use crate::shintani::norm::norm_map;
    use crate::whittaker::{generic_irreps, psi_build, whittaker_model, DEFAULT_MODEL_CAP};

    #[test]
    fn every_invariant_generic_irreducible_of_gl2_f4_lifts() {
        let d = datum_build(Family::Gl, 2, 2).unwrap();
        let ge = d.enumerate(Selector::GE).unwrap();
        let cl = conj_classes(d.ops(), ge.clone()).unwrap();
        let table = character_table(d.ops(), &cl, 1, DEFAULT_TABLE_CAP).unwrap();
        let tc = twisted_classes(&d, ge).unwrap();
        let oc = conj_classes(d.ops(), d.enumerate(Selector::GopF).unwrap()).unwrap();
        let ot = character_table(d.ops(), &oc, 1, DEFAULT_TABLE_CAP).unwrap();
        let nt = norm_map(&d, &tc, &oc).unwrap();
        let psi = psi_build(&d, d.tower().default_beta(), Over::E).unwrap();
        let units = psi.units(&d).unwrap();
        let models: Vec<WhittakerModel> = generic_irreps(&d, &cl, &table, &psi, &units, 1e-6)
            .unwrap()
            .into_iter()
            .filter(|&(_, m)| m == 1)
            .map(|(pi, _)| whittaker_model(&d, &cl, &table, pi, &psi, DEFAULT_MODEL_CAP, 1e-8).unwrap())
            .collect();
        let invariant = models.iter().filter(|m| m.intertwiner.is_some()).count();
        assert!(invariant > 0);
        let res = base_change_match(&d, &models, &tc, &oc, &ot, &nt, 1e-8).unwrap();
        assert!(res.unmatched.is_empty());
        assert_eq!(res.pairs.len(), invariant);
        let mut rhos: Vec<usize> = res.pairs.iter().map(|p| p.rho).collect();
        rhos.sort();
        rhos.dedup();
        assert_eq!(rhos.len(), invariant);
        for m in models.iter().filter(|m| m.intertwiner.is_some()) {
            let t = twisted_character(&d, m, &tc, 1e-8).unwrap();
            let tr = m.intertwiner.as_ref().unwrap().trace();
            assert!((t.values[tc.identity_class()] - tr).norm() < 1e-10);
        }
        let text = res.to_text(&table, &ot, &nt);
        assert!(text.starts_with("pi,deg_pi"));
    }
}
