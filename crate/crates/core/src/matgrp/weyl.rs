//! Type A Weyl group combinatorics: permutations, reduced words, parabolic
//! longest elements.
//!
//! A permutation `w` is stored as `perm[j] = w(j)` on `0..n`. The simple
//! reflection `s_i` (for `1 ≤ i < n`) swaps `i - 1` and `i`, and a word
//! `[i_1, …, i_k]` denotes the product `s_{i_1} ∘ … ∘ s_{i_k}`.

use crate::matgrp::mat::Mat;

pub type Perm = Vec<usize>;

pub fn identity(n: usize) -> Perm {
    (0..n).collect()
}

/// `(a ∘ b)(j) = a(b(j))`.
pub fn compose(a: &[usize], b: &[usize]) -> Perm {
    b.iter().map(|&j| a[j]).collect()
}

pub fn inverse(a: &[usize]) -> Perm {
    let mut inv = vec![0; a.len()];
    for (j, &w) in a.iter().enumerate() {
        inv[w] = j;
    }
    inv
}

pub fn simple(n: usize, i: usize) -> Perm {
    let mut p = identity(n);
    p.swap(i - 1, i);
    p
}

pub fn longest(n: usize) -> Perm {
    (0..n).rev().collect()
}

pub fn from_word(n: usize, word: &[usize]) -> Perm {
    word.iter().fold(identity(n), |acc, &i| compose(&acc, &simple(n, i)))
}

pub fn inversions(p: &[usize]) -> usize {
    let n = p.len();
    (0..n).map(|i| (i + 1..n).filter(|&j| p[i] > p[j]).count()).sum()
}

/// A reduced word built by peeling right descents.
pub fn reduced_word(p: &[usize]) -> Vec<usize> {
    let mut w = p.to_vec();
    let mut word = Vec::new();
    while let Some(i) = (1..w.len()).find(|&i| w[i - 1] > w[i]) {
        word.push(i);
        w = compose(&w, &simple(w.len(), i));
    }
    word.reverse();
    word
}

/// A reduced word built by peeling left descents, usually different from
/// [`reduced_word`].
pub fn reduced_word_left(p: &[usize]) -> Vec<usize> {
    let mut w = p.to_vec();
    let mut word = Vec::new();
    loop {
        let inv = inverse(&w);
        let Some(i) = (1..w.len()).rev().find(|&i| inv[i - 1] > inv[i]) else {
            break;
        };
        word.push(i);
        w = compose(&simple(w.len(), i), &w);
    }
    word
}

pub fn all_perms(n: usize) -> Vec<Perm> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Perm>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Longest element of the parabolic subgroup generated by `{s_i : i ∈ subset}`:
/// reverses each maximal block of indices joined by the chosen reflections.
pub fn parabolic_longest(n: usize, subset: &[usize]) -> Perm {
    let mut p = identity(n);
    let mut start = 0;
    while start < n {
        let mut end = start;
        while end + 1 < n && subset.contains(&(end + 1)) {
            end += 1;
        }
        for j in start..=end {
            p[j] = start + end - j;
        }
        start = end + 1;
    }
    p
}

/// Blocks of `0..n` joined by the simple reflections in `subset`.
pub fn blocks(n: usize, subset: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0];
    for j in 1..n {
        if subset.contains(&j) {
            cur.push(j);
        } else {
            out.push(std::mem::replace(&mut cur, vec![j]));
        }
    }
    out.push(cur);
    out
}

/// `{i : w(α_i) > 0}` with `α_i = e_{i-1} - e_i`.
pub fn positive_simple_set(p: &[usize]) -> Vec<usize> {
    (1..p.len()).filter(|&i| p[i - 1] < p[i]).collect()
}

/// For every simple root sent to a positive root, the image is simple.
pub fn is_bessel_relevant(p: &[usize]) -> bool {
    (1..p.len()).all(|i| p[i - 1] > p[i] || p[i] == p[i - 1] + 1)
}

/// The permutation matrix pattern of `w` (no signs): `e_j ↦ e_{w(j)}`.
pub fn perm_support(p: &[usize]) -> Vec<(usize, usize)> {
    p.iter().enumerate().map(|(j, &w)| (w, j)).collect()
}

/// Reads off the permutation of a monomial matrix.
pub fn perm_of_monomial(m: &Mat) -> Option<Perm> {
    if !m.is_monomial() {
        return None;
    }
    let n = m.n();
    Some((0..n).map(|j| (0..n).find(|&i| !m.get(i, j).is_zero()).unwrap()).collect())
}

/// Nested subsets of `1..n` as sorted vectors.
pub fn all_subsets(n: usize) -> Vec<Vec<usize>> {
    let r = n.saturating_sub(1);
    (0..1usize << r)
        .map(|mask| (1..n).filter(|&i| mask & (1 << (i - 1)) != 0).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_words_have_inversion_length() {
        for n in 1..=5 {
            for p in all_perms(n) {
                let a = reduced_word(&p);
                let b = reduced_word_left(&p);
                assert_eq!(a.len(), inversions(&p));
                assert_eq!(b.len(), inversions(&p));
                assert_eq!(from_word(n, &a), p);
                assert_eq!(from_word(n, &b), p);
            }
        }
    }

    #[test]
    fn relevant_counts_match_subsets() {
        for n in 1..=5 {
            let by_def: Vec<Perm> = all_perms(n).into_iter().filter(|p| is_bessel_relevant(p)).collect();
            assert_eq!(by_def.len(), 1 << (n - 1));
            for sub in all_subsets(n) {
                let w = compose(&longest(n), &parabolic_longest(n, &sub));
                assert!(by_def.contains(&w));
                assert_eq!(positive_simple_set(&w), sub);
            }
        }
    }

    #[test]
    fn longest_element_words() {
        assert_eq!(from_word(3, &[1, 2, 1]), longest(3));
        assert_eq!(from_word(3, &[2, 1, 2]), longest(3));
        assert_eq!(inversions(&longest(4)), 6);
    }

    #[test]
    fn blocks_follow_subset() {
        assert_eq!(blocks(4, &[1, 3]), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(blocks(3, &[]), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(parabolic_longest(4, &[1, 2]), vec![2, 1, 0, 3]);
    }
}
