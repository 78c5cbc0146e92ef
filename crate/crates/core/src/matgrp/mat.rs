use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElem};

/// Largest supported matrix size.
pub const MAX_N: usize = 4;

/// A square matrix of size at most [`MAX_N`] over a small finite field.
///
/// Entries are stored row-major as field codes; the derived ordering compares
/// entries row by row, which is the canonical ordering used for representatives.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    n: u8,
    e: [u8; MAX_N * MAX_N],
}

impl Mat {
    pub fn zero(n: usize) -> Self {
        assert!((1..=MAX_N).contains(&n), "matrix size {n} unsupported");
        Mat { n: n as u8, e: [0; MAX_N * MAX_N] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n);
        for i in 0..n {
            m.set(i, i, FieldElem::ONE);
        }
        m
    }

    pub fn diag(entries: &[FieldElem]) -> Self {
        let mut m = Mat::zero(entries.len());
        for (i, &d) in entries.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<FieldElem>]) -> Self {
        let n = rows.len();
        let mut m = Mat::zero(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "matrix must be square");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        FieldElem(self.e[i * MAX_N + j])
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: FieldElem) {
        self.e[i * MAX_N + j] = x.0;
    }

    pub fn rows(&self) -> Vec<Vec<FieldElem>> {
        (0..self.n()).map(|i| (0..self.n()).map(|j| self.get(i, j)).collect()).collect()
    }

    pub fn diagonal(&self) -> Vec<FieldElem> {
        (0..self.n()).map(|i| self.get(i, i)).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| (0..n).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn is_upper_unitriangular(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| {
            self.get(i, i) == FieldElem::ONE && (0..i).all(|j| self.get(i, j).is_zero())
        })
    }

    pub fn is_upper_triangular(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| (0..i).all(|j| self.get(i, j).is_zero()))
    }

    /// Exactly one nonzero entry in each row and column.
    pub fn is_monomial(&self) -> bool {
        let n = self.n();
        let rows_ok = (0..n).all(|i| (0..n).filter(|&j| !self.get(i, j).is_zero()).count() == 1);
        let cols_ok = (0..n).all(|j| (0..n).filter(|&i| !self.get(i, j).is_zero()).count() == 1);
        rows_ok && cols_ok
    }

    pub fn transpose(&self) -> Mat {
        let n = self.n();
        let mut t = Mat::zero(n);
        for i in 0..n {
            for j in 0..n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Applies `f` to every entry.
    pub fn map(&self, f: impl Fn(FieldElem) -> FieldElem) -> Mat {
        let mut m = *self;
        let n = self.n();
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, f(self.get(i, j)));
            }
        }
        m
    }

    /// Canonical text encoding: rows separated by `;`, entries by `,`, each
    /// entry written as its coefficient vector (lowest degree first).
    pub fn encode(&self, field: &Field) -> String {
        let p = field.characteristic();
        let digit = |c: u32| std::char::from_digit(c, p.max(2)).unwrap();
        (0..self.n())
            .map(|i| {
                (0..self.n())
                    .map(|j| field.coeffs(self.get(i, j)).into_iter().map(digit).collect::<String>())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn decode(s: &str, field: &Field) -> Result<Mat> {
        let rows: Vec<&str> = s.split(';').collect();
        let n = rows.len();
        if n == 0 || n > MAX_N {
            return Err(Error::OutOfRange(format!("matrix encoding {s:?}")));
        }
        let mut m = Mat::zero(n);
        for (i, row) in rows.iter().enumerate() {
            let entries: Vec<&str> = row.split(',').collect();
            if entries.len() != n {
                return Err(Error::OutOfRange(format!("matrix encoding {s:?}")));
            }
            for (j, entry) in entries.iter().enumerate() {
                let coeffs: Option<Vec<u32>> =
                    entry.chars().map(|c| c.to_digit(field.characteristic().max(2))).collect();
                let coeffs = coeffs.ok_or_else(|| Error::OutOfRange(format!("entry {entry:?}")))?;
                m.set(i, j, field.from_coeffs(&coeffs)?);
            }
        }
        Ok(m)
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<u8>> =
            (0..self.n()).map(|i| (0..self.n()).map(|j| self.get(i, j).0).collect()).collect();
        write!(f, "Mat{rows:?}")
    }
}

/// Matrix arithmetic over a borrowed field.
#[derive(Clone, Copy)]
pub struct MatOps<'a> {
    pub field: &'a Field,
}

impl<'a> MatOps<'a> {
    pub fn new(field: &'a Field) -> Self {
        MatOps { field }
    }

    #[inline]
    pub fn mul(&self, a: &Mat, b: &Mat) -> Mat {
        let n = a.n();
        let f = self.field;
        let mut c = Mat::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = FieldElem::ZERO;
                for k in 0..n {
                    acc = f.add(acc, f.mul(a.get(i, k), b.get(k, j)));
                }
                c.set(i, j, acc);
            }
        }
        c
    }

    pub fn mul3(&self, a: &Mat, b: &Mat, c: &Mat) -> Mat {
        self.mul(&self.mul(a, b), c)
    }

    pub fn product<'b>(&self, n: usize, factors: impl IntoIterator<Item = &'b Mat>) -> Mat {
        factors.into_iter().fold(Mat::identity(n), |acc, m| self.mul(&acc, m))
    }

    pub fn scale(&self, a: &Mat, s: FieldElem) -> Mat {
        a.map(|x| self.field.mul(s, x))
    }

    pub fn add(&self, a: &Mat, b: &Mat) -> Mat {
        let n = a.n();
        let mut c = Mat::zero(n);
        for i in 0..n {
            for j in 0..n {
                c.set(i, j, self.field.add(a.get(i, j), b.get(i, j)));
            }
        }
        c
    }

    pub fn det(&self, a: &Mat) -> FieldElem {
        let f = self.field;
        let n = a.n();
        let mut m = a.rows();
        let mut det = FieldElem::ONE;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
                return FieldElem::ZERO;
            };
            if piv != col {
                m.swap(piv, col);
                det = f.neg(det);
            }
            let pv = m[col][col];
            det = f.mul(det, pv);
            let pinv = f.inv(pv).unwrap();
            for r in col + 1..n {
                let factor = f.mul(m[r][col], pinv);
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let sub = f.mul(factor, m[col][c]);
                    m[r][c] = f.sub(m[r][c], sub);
                }
            }
        }
        det
    }

    pub fn inv(&self, a: &Mat) -> Option<Mat> {
        let f = self.field;
        let n = a.n();
        let mut m = a.rows();
        let mut r = Mat::identity(n).rows();
        for col in 0..n {
            let piv = (col..n).find(|&i| !m[i][col].is_zero())?;
            m.swap(piv, col);
            r.swap(piv, col);
            let pinv = f.inv(m[col][col]).unwrap();
            for c in 0..n {
                m[col][c] = f.mul(m[col][c], pinv);
                r[col][c] = f.mul(r[col][c], pinv);
            }
            for i in 0..n {
                if i == col || m[i][col].is_zero() {
                    continue;
                }
                let factor = m[i][col];
                for c in 0..n {
                    let (mc, rc) = (f.mul(factor, m[col][c]), f.mul(factor, r[col][c]));
                    m[i][c] = f.sub(m[i][c], mc);
                    r[i][c] = f.sub(r[i][c], rc);
                }
            }
        }
        Some(Mat::from_rows(&r))
    }

    /// Conjugate `x g x⁻¹` given `x⁻¹`.
    #[inline]
    pub fn conj(&self, x: &Mat, g: &Mat, x_inv: &Mat) -> Mat {
        self.mul(&self.mul(x, g), x_inv)
    }

    pub fn rank(&self, a: &Mat) -> usize {
        rank_of_rows(self.field, a.rows())
    }
}

/// Rank of a list of equal-length row vectors.
pub fn rank_of_rows(f: &Field, mut m: Vec<Vec<FieldElem>>) -> usize {
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(piv, rank);
        let pinv = f.inv(m[rank][col]).unwrap();
        for r in rank + 1..m.len() {
            let factor = f.mul(m[r][col], pinv);
            if factor.is_zero() {
                continue;
            }
            for c in col..cols {
                let sub = f.mul(factor, m[rank][c]);
                m[r][c] = f.sub(m[r][c], sub);
            }
        }
        rank += 1;
    }
    rank
}

/// All invertible `n × n` matrices over `field`, in canonical order.
pub fn enumerate_gl(field: &Field, n: usize) -> Vec<Mat> {
    let q = field.order();
    let rows: Vec<Vec<FieldElem>> = (0..q.pow(n as u32))
        .map(|mut v| {
            (0..n)
                .map(|_| {
                    let x = FieldElem((v % q) as u8);
                    v /= q;
                    x
                })
                .collect::<Vec<_>>()
                .into_iter()
                .rev()
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    fn rec(
        field: &Field,
        rows: &[Vec<FieldElem>],
        chosen: &mut Vec<usize>,
        n: usize,
        out: &mut Vec<Mat>,
    ) {
        if chosen.len() == n {
            let m: Vec<Vec<FieldElem>> = chosen.iter().map(|&i| rows[i].clone()).collect();
            out.push(Mat::from_rows(&m));
            return;
        }
        for (idx, row) in rows.iter().enumerate() {
            let mut cand: Vec<Vec<FieldElem>> = chosen.iter().map(|&i| rows[i].clone()).collect();
            cand.push(row.clone());
            if rank_of_rows(field, cand) == chosen.len() + 1 {
                chosen.push(idx);
                rec(field, rows, chosen, n, out);
                chosen.pop();
            }
        }
    }
    rec(field, &rows, &mut chosen, n, &mut out);
    out
}

/// `|GL_n(F_Q)|`.
pub fn gl_order(big_q: u64, n: u32) -> u64 {
    let qn = big_q.pow(n);
    (0..n).map(|i| qn - big_q.pow(i)).product()
}
