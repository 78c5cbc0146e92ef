use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{AdditiveChar, FieldElem};
use crate::matgrp::{Family, GaloisDatum, Mat, Over, Selector};

/// Largest `|U(E)|` for which the invariance checks run exhaustively.
const EXHAUSTIVE_CHECK_CAP: usize = 1 << 16;

/// The nondegenerate character `ψ(u) = ψ₀(Σ_i u_{i,i+1})` of `U(E)` or `U(F)`.
#[derive(Clone, Debug)]
pub struct NondegenChar {
    domain: Over,
    psi0: AdditiveChar,
    /// `E`-codes to `F`-codes, for characters over `F`.
    restrict: Option<Vec<Option<FieldElem>>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiInfo {
    pub domain: Over,
    pub beta: u8,
}

impl NondegenChar {
    pub fn domain(&self) -> Over {
        self.domain
    }

    pub fn beta(&self) -> FieldElem {
        self.psi0.beta()
    }

    pub fn info(&self) -> PsiInfo {
        PsiInfo { domain: self.domain, beta: self.psi0.beta().0 }
    }

    /// Exponent `m` with `ψ(u) = exp(2πi·m/p)`.
    #[inline]
    pub fn exponent(&self, d: &GaloisDatum, u: &Mat) -> u32 {
        let s = d.superdiag_sum(u);
        match &self.restrict {
            None => self.psi0.exponent(s),
            Some(r) => self.psi0.exponent(r[s.code()].expect("superdiagonal sum of a rational unipotent is rational")),
        }
    }

    #[inline]
    pub fn eval(&self, d: &GaloisDatum, u: &Mat) -> Complex64 {
        self.psi0.root(self.exponent(d, u))
    }

    pub fn root(&self, m: u32) -> Complex64 {
        self.psi0.root(m)
    }

    pub fn characteristic(&self) -> u32 {
        self.psi0.characteristic()
    }

    /// The unipotent group the character lives on.
    pub fn units(&self, d: &GaloisDatum) -> Result<Vec<Mat>> {
        d.enumerate(match self.domain {
            Over::E => Selector::UE,
            Over::F => Selector::UF,
        })
    }
}

/// Builds `ψ`. Over `E`, `β` must have relative trace zero and the result is
/// checked to be trivial on `U(F)` and `σ`-invariant. Over `F`, `β` is an
/// element of `E` lying in `F`.
pub fn psi_build(d: &GaloisDatum, beta: FieldElem, over: Over) -> Result<NondegenChar> {
    let tower = d.tower();
    let psi = match over {
        Over::E => NondegenChar { domain: over, psi0: AdditiveChar::over_ext(tower, beta)?, restrict: None },
        Over::F => {
            if beta.code() >= d.ext().order() {
                return Err(Error::InvalidBeta(format!("{beta:?} is not a field element")));
            }
            let b = tower.restrict(beta).ok_or_else(|| Error::InvalidBeta(format!("{beta:?} is not in F")))?;
            NondegenChar {
                domain: over,
                psi0: AdditiveChar::over_base(tower, b)?,
                restrict: Some(d.ext().elements().map(|x| tower.restrict(x)).collect()),
            }
        }
    };
    psi.check(d)?;
    Ok(psi)
}

impl NondegenChar {
    fn check(&self, d: &GaloisDatum) -> Result<()> {
        let ext = d.ext();
        // Root subgroups of U(F) are not single superdiagonal slices for the unitary family.
        let slices = !(self.domain == Over::F && d.family() == Family::U);
        for i in (1..d.n()).filter(|_| slices) {
            let slice_trivial = ext
                .elements()
                .filter(|&u| self.domain == Over::E || d.tower().in_base(u))
                .all(|u| self.exponent(d, &d.root_elt(i, u).unwrap()) == 0);
            if slice_trivial {
                return Err(Error::InvalidBeta(format!("ψ is trivial on the slice of α_{i}")));
            }
        }
        if self.domain == Over::F {
            return Ok(());
        }
        let big = (ext.order() as u64).pow(d.positive_roots() as u32);
        if big > EXHAUSTIVE_CHECK_CAP as u64 {
            log::info!("skipping exhaustive ψ invariance check (|U(E)| = {big})");
            return Ok(());
        }
        for u in d.enumerate(Selector::UE)? {
            let e = self.exponent(d, &u);
            if d.in_gf(&u) && e != 0 {
                return Err(Error::Verification("ψ is not trivial on U(F)".into()));
            }
            if self.exponent(d, &d.sigma(&u)) != e {
                return Err(Error::Verification("ψ is not σ-invariant".into()));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgrp::datum_build;

    #[test]
    fn basic_values() {
        let d = datum_build(Family::Gl, 2, 2).unwrap();
        let beta = d.tower().default_beta();
        let psi = psi_build(&d, beta, Over::E).unwrap();
        assert_eq!(psi.eval(&d, &d.identity()), Complex64::new(1.0, 0.0));
        let psi0 = AdditiveChar::over_ext(d.tower(), beta).unwrap();
        for u in d.ext().elements() {
            assert_eq!(psi.eval(&d, &d.root_elt(1, u).unwrap()), psi0.eval(u));
        }
        for u in d.enumerate(Selector::UE).unwrap() {
            assert_eq!(psi.exponent(&d, &d.sigma(&u)), psi.exponent(&d, &u));
        }
    }

    #[test]
    fn multiplicative_and_trivial_off_superdiagonal() {
        let d = datum_build(Family::Gl, 3, 2).unwrap();
        let psi = psi_build(&d, d.tower().default_beta(), Over::E).unwrap();
        let units = d.enumerate(Selector::UE).unwrap();
        let p = psi.characteristic();
        for a in units.iter().step_by(7) {
            for b in units.iter().step_by(5) {
                let lhs = psi.exponent(&d, &d.mul(a, b));
                assert_eq!(lhs, (psi.exponent(&d, a) + psi.exponent(&d, b)) % p);
            }
        }
        for u in d.ext().elements() {
            assert_eq!(psi.exponent(&d, &d.root_elt_pos(0, 2, u)), 0);
        }
    }

    #[test]
    fn bad_beta() {
        let d = datum_build(Family::Gl, 2, 3).unwrap();
        assert!(psi_build(&d, FieldElem::ZERO, Over::E).is_err());
        assert!(psi_build(&d, FieldElem::ONE, Over::E).is_err());
        assert!(psi_build(&d, FieldElem::ONE, Over::F).is_ok());
        assert!(psi_build(&d, d.tower().default_beta(), Over::F).is_err());
    }

    #[test]
    fn over_f_is_nontrivial_on_each_slice() {
        let d = datum_build(Family::Sl, 2, 3).unwrap();
        let psi = psi_build(&d, FieldElem::ONE, Over::F).unwrap();
        let units = psi.units(&d).unwrap();
        assert_eq!(units.len(), 3);
        let total: Complex64 = units.iter().map(|u| psi.eval(&d, u)).sum();
        assert!(total.norm() < 1e-12);
    }
}
