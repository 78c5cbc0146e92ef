//! Invariant factors of `xI - A` over a finite field, used as a complete
//! conjugacy invariant (rational canonical form).

use crate::gf::{Field, FieldElem};
use crate::matgrp::Mat;

/// Polynomial with coefficients from degree 0 upwards, no trailing zeros.
type Poly = Vec<FieldElem>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn add(f: &Field, a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| f.add(*a.get(i).unwrap_or(&FieldElem::ZERO), *b.get(i).unwrap_or(&FieldElem::ZERO)))
            .collect(),
    )
}

fn neg(f: &Field, a: &Poly) -> Poly {
    a.iter().map(|&c| f.neg(c)).collect()
}

fn mul(f: &Field, a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![FieldElem::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

fn rem(f: &Field, a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    let lead_inv = f.inv(*b.last().expect("division by zero polynomial")).unwrap();
    while r.len() >= b.len() {
        let c = f.mul(*r.last().unwrap(), lead_inv);
        let shift = r.len() - b.len();
        for (i, &y) in b.iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(c, y));
        }
        r = trim(r);
    }
    r
}

fn div_exact(f: &Field, a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    let lead_inv = f.inv(*b.last().unwrap()).unwrap();
    let mut q = vec![FieldElem::ZERO; a.len().saturating_sub(b.len()) + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let c = f.mul(*r.last().unwrap(), lead_inv);
        let shift = r.len() - b.len();
        q[shift] = c;
        for (i, &y) in b.iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(c, y));
        }
        r = trim(r);
    }
    debug_assert!(r.is_empty(), "inexact polynomial division");
    trim(q)
}

fn monic(f: &Field, a: Poly) -> Poly {
    match a.last() {
        None => a,
        Some(&l) => {
            let inv = f.inv(l).unwrap();
            a.into_iter().map(|c| f.mul(c, inv)).collect()
        }
    }
}

fn gcd(f: &Field, a: &Poly, b: &Poly) -> Poly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, x)
}

/// Determinant by Laplace expansion along the first row (sizes ≤ 4).
fn det(f: &Field, m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Vec::new();
    for j in 0..n {
        if m[0][j].is_empty() {
            continue;
        }
        let minor: Vec<Vec<Poly>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, p)| p.clone()).collect()).collect();
        let term = mul(f, &m[0][j], &det(f, &minor));
        acc = if j % 2 == 0 { add(f, &acc, &term) } else { add(f, &acc, &neg(f, &term)) };
    }
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0..1usize << n).filter(|m| m.count_ones() as usize == k).map(|m| (0..n).filter(|i| m & (1 << i) != 0).collect()).collect()
}

/// Invariant factors of `xI - A` (monic, each dividing the next), as raw
/// coefficient codes. Two matrices are conjugate over the field, or over any
/// extension, exactly when these agree.
pub fn invariant_factors(f: &Field, a: &Mat) -> Vec<Vec<u8>> {
    let n = a.n();
    let char_mat: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = f.neg(a.get(i, j));
                    if i == j {
                        trim(vec![c, FieldElem::ONE])
                    } else {
                        trim(vec![c])
                    }
                })
                .collect()
        })
        .collect();
    let mut divisors: Vec<Poly> = vec![vec![FieldElem::ONE]];
    for k in 1..=n {
        let mut g: Poly = Vec::new();
        for rows in subsets(n, k) {
            for cols in subsets(n, k) {
                let minor: Vec<Vec<Poly>> =
                    rows.iter().map(|&r| cols.iter().map(|&c| char_mat[r][c].clone()).collect()).collect();
                let dm = det(f, &minor);
                g = if g.is_empty() { monic(f, dm) } else { gcd(f, &g, &dm) };
                if g.len() == 1 {
                    break;
                }
            }
            if g.len() == 1 {
                break;
            }
        }
        divisors.push(g);
    }
    (1..=n)
        .map(|k| div_exact(f, &divisors[k], &divisors[k - 1]))
        .filter(|p| p.len() > 1)
        .map(|p| p.into_iter().map(|c| c.0).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgrp::{datum_build, Family, Selector};

    #[test]
    fn scalar_and_jordan_block() {
        let d = datum_build(Family::Gl, 2, 3).unwrap();
        let f = d.ext();
        let two = f.from_int(2);
        let s = Mat::diag(&[two, two]);
        // x - 2 twice
        assert_eq!(invariant_factors(f, &s), vec![vec![1, 1], vec![1, 1]]);
        let mut j = s;
        j.set(0, 1, FieldElem::ONE);
        // (x - 2)^2 = x^2 + 2x + 1 over F_3
        assert_eq!(invariant_factors(f, &j), vec![vec![1, 2, 1]]);
    }

    #[test]
    fn classifies_gl2_f3_classes() {
        let d = datum_build(Family::Gl, 2, 3).unwrap();
        let f = d.tower().base();
        let els: Vec<Mat> = d
            .enumerate(Selector::GF)
            .unwrap()
            .into_iter()
            .map(|g| g.map(|x| d.tower().restrict(x).unwrap()))
            .collect();
        let mut keys: Vec<Vec<Vec<u8>>> = els.iter().map(|g| invariant_factors(f, g)).collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), 8);
    }
}
