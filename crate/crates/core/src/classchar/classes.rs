use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::matgrp::{GaloisDatum, Mat, MatOps};

/// An enumerated finite matrix group with O(1) element lookup.
#[derive(Clone, Debug)]
pub struct Group {
    elements: Vec<Mat>,
    inverses: Vec<u32>,
    index: FxHashMap<Mat, u32>,
}

impl Group {
    /// Indexes a duplicate-free element list (sorted internally) and spot-checks
    /// closure on a seeded random sample.
    pub fn new(ops: MatOps<'_>, mut elements: Vec<Mat>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        if elements.is_empty() {
            return Err(Error::NotInGroup("empty element list".into()));
        }
        let index: FxHashMap<Mat, u32> = elements.iter().enumerate().map(|(i, g)| (*g, i as u32)).collect();
        let inverses = elements
            .par_iter()
            .map(|g| ops.inv(g).and_then(|h| index.get(&h).copied()))
            .collect::<Option<Vec<u32>>>()
            .ok_or_else(|| Error::NotInGroup("inverse missing: not closed".into()))?;
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..256.min(elements.len() * elements.len()) {
            let a = &elements[rng.gen_range(0..elements.len())];
            let b = &elements[rng.gen_range(0..elements.len())];
            if !index.contains_key(&ops.mul(a, b)) {
                return Err(Error::NotInGroup("product missing: not closed".into()));
            }
        }
        Ok(Group { elements, inverses, index })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Mat] {
        &self.elements
    }

    #[inline]
    pub fn position(&self, g: &Mat) -> Option<usize> {
        self.index.get(g).map(|&i| i as usize)
    }

    #[inline]
    pub fn contains(&self, g: &Mat) -> bool {
        self.index.contains_key(g)
    }

    #[inline]
    pub fn inverse_pos(&self, pos: usize) -> usize {
        self.inverses[pos] as usize
    }
}

/// A partition of a group into orbits, with representatives chosen as the least
/// element of each orbit in canonical order.
///
/// Used both for ordinary conjugacy classes and for `σ`-twisted classes.
#[derive(Clone, Debug)]
pub struct ConjClasses {
    pub reps: Vec<Mat>,
    pub sizes: Vec<usize>,
    group: Group,
    class_of: Vec<u32>,
}

/// Orbits of `x ↦ g x σ(g)⁻¹` on `G(E)`.
pub type TwistedClasses = ConjClasses;

impl ConjClasses {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// Class index of an element, `None` outside the group.
    #[inline]
    pub fn index_of(&self, g: &Mat) -> Option<usize> {
        self.group.position(g).map(|p| self.class_of[p] as usize)
    }

    #[inline]
    pub fn class_of_pos(&self, pos: usize) -> usize {
        self.class_of[pos] as usize
    }

    /// Members of class `k` in canonical order.
    pub fn members(&self, k: usize) -> Vec<Mat> {
        self.group.elements.iter().zip(&self.class_of).filter(|(_, &c)| c as usize == k).map(|(g, _)| *g).collect()
    }

    pub fn identity_class(&self) -> usize {
        let n = self.reps[0].n();
        self.index_of(&Mat::identity(n)).expect("group contains the identity")
    }

    fn from_orbits(group: Group, orbit: impl Fn(&Group, usize) -> Vec<usize> + Sync) -> Self {
        let n = group.order();
        let mut class_of = vec![u32::MAX; n];
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        for start in 0..n {
            if class_of[start] != u32::MAX {
                continue;
            }
            let k = reps.len() as u32;
            let mut size = 0;
            for p in orbit(&group, start) {
                if class_of[p] == u32::MAX {
                    class_of[p] = k;
                    size += 1;
                }
            }
            reps.push(group.elements[start]);
            sizes.push(size);
        }
        ConjClasses { reps, sizes, group, class_of }
    }
}

/// Conjugacy classes of the group formed by `elements`.
pub fn conj_classes(ops: MatOps<'_>, elements: Vec<Mat>) -> Result<ConjClasses> {
    let group = Group::new(ops, elements)?;
    Ok(ConjClasses::from_orbits(group, |g, start| {
        let x = g.elements[start];
        g.elements
            .par_iter()
            .enumerate()
            .map(|(i, h)| g.position(&ops.conj(h, &x, &g.elements[g.inverse_pos(i)])).expect("closed under conjugation"))
            .collect()
    }))
}

/// `σ`-twisted classes of `G(E)`, orbits of `x ↦ g x σ(g)⁻¹`.
pub fn twisted_classes(d: &GaloisDatum, ge: Vec<Mat>) -> Result<TwistedClasses> {
    let ops = d.ops();
    let group = Group::new(ops, ge)?;
    let sigma_inv: Vec<Mat> = group.elements.par_iter().map(|g| d.inv(&d.sigma(g))).collect();
    Ok(ConjClasses::from_orbits(group, |g, start| {
        let x = g.elements[start];
        g.elements
            .par_iter()
            .zip(&sigma_inv)
            .map(|(h, hs)| g.position(&ops.mul3(h, &x, hs)).expect("closed under twisted conjugation"))
            .collect()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgrp::{datum_build, Family, Selector};

    #[test]
    fn gl2_small_class_counts() {
        let d = datum_build(Family::Gl, 2, 2).unwrap();
        let cl = conj_classes(d.ops(), d.enumerate(Selector::GF).unwrap()).unwrap();
        let mut sizes = cl.sizes.clone();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(cl.sizes[cl.identity_class()], 1);
        for q in [2, 3] {
            let d = datum_build(Family::Gl, 2, q).unwrap();
            let cl = conj_classes(d.ops(), d.enumerate(Selector::GF).unwrap()).unwrap();
            assert_eq!(cl.len(), (q * q - 1) as usize);
            assert_eq!(cl.sizes.iter().sum::<usize>(), cl.order());
            assert!(cl.sizes.iter().all(|s| cl.order() % s == 0));
        }
    }

    #[test]
    fn reps_are_least_members() {
        let d = datum_build(Family::Sl, 2, 3).unwrap();
        let cl = conj_classes(d.ops(), d.enumerate(Selector::GF).unwrap()).unwrap();
        for k in 0..cl.len() {
            let m = cl.members(k);
            assert_eq!(m.len(), cl.sizes[k]);
            assert_eq!(m[0], cl.reps[k]);
        }
    }

    #[test]
    fn not_a_group() {
        let d = datum_build(Family::Gl, 2, 2).unwrap();
        let mut els = d.enumerate(Selector::GF).unwrap();
        els.pop();
        assert!(conj_classes(d.ops(), els).is_err());
    }

    #[test]
    fn twisted_identity_class_is_x_sigma() {
        for (fam, n, q) in [(Family::Gl, 2, 2), (Family::U, 2, 2)] {
            let d = datum_build(fam, n, q).unwrap();
            let tc = twisted_classes(&d, d.enumerate(Selector::GE).unwrap()).unwrap();
            let one = tc.identity_class();
            assert_eq!(tc.members(one), d.enumerate(Selector::Xsigma).unwrap());
            assert_eq!(tc.sizes.iter().sum::<usize>(), tc.order());
            let op = conj_classes(d.ops(), d.enumerate(Selector::GopF).unwrap()).unwrap();
            assert_eq!(tc.len(), op.len());
        }
    }
}
