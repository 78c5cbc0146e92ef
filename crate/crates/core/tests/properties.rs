use proptest::prelude::*;

use bessellab::gf::{FieldElem, Tower};
use bessellab::matgrp::{bruhat_decompose, u_coset_normal_form, Family, GaloisDatum, Mat, Over, Selector};

fn datum(family: Family, n: usize, q: u32) -> GaloisDatum {
    GaloisDatum::build(family, n, q).unwrap()
}

fn mat_from(d: &GaloisDatum, codes: &[u8]) -> Mat {
    let size = d.ext().order() as u8;
    let n = d.n();
    Mat::from_rows(&(0..n).map(|i| (0..n).map(|j| FieldElem(codes[i * n + j] % size)).collect()).collect::<Vec<_>>())
}

/// An invertible `n × n` matrix over `E`, or `None` when the draw is singular.
fn invertible(d: &GaloisDatum, codes: &[u8]) -> Option<Mat> {
    let g = mat_from(d, codes);
    (!d.ops().det(&g).is_zero()).then_some(g)
}

fn unitriangular(d: &GaloisDatum, codes: &[u8]) -> Mat {
    let size = d.ext().order() as u8;
    let n = d.n();
    let mut u = Mat::identity(n);
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            u.set(i, j, FieldElem(codes[k] % size));
            k += 1;
        }
    }
    u
}

fn configs() -> impl Strategy<Value = (Family, usize, u32)> {
    prop_oneof![
        Just((Family::Gl, 2, 2)),
        Just((Family::Gl, 2, 3)),
        Just((Family::Gl, 3, 2)),
        Just((Family::U, 2, 3)),
        Just((Family::U, 3, 2)),
        Just((Family::Gl, 4, 2)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_frobenius_is_a_ring_map(q in prop_oneof![Just(2u32), Just(3), Just(4)], a in any::<u8>(), b in any::<u8>()) {
        let t = Tower::for_q(q).unwrap();
        let e = t.ext();
        let (a, b) = (FieldElem(a % e.order() as u8), FieldElem(b % e.order() as u8));
        prop_assert_eq!(t.frob_q(e.mul(a, b)), e.mul(t.frob_q(a), t.frob_q(b)));
        prop_assert_eq!(t.frob_q(e.add(a, b)), e.add(t.frob_q(a), t.frob_q(b)));
        prop_assert_eq!(t.frob_q(t.frob_q(a)), a);
        prop_assert_eq!(t.embed(t.rel_norm(a)), e.mul(a, t.frob_q(a)));
        prop_assert_eq!(t.embed(t.rel_trace(a)), e.add(a, t.frob_q(a)));
        prop_assert_eq!(t.rel_norm(e.mul(a, b)), t.base().mul(t.rel_norm(a), t.rel_norm(b)));
        prop_assert_eq!(t.restrict(t.embed(t.rel_trace(b))), Some(t.rel_trace(b)));
    }

    #[test]
    fn involutions_are_multiplicative_and_involutive(
        (family, n, q) in configs(),
        a in prop::collection::vec(any::<u8>(), 16),
        b in prop::collection::vec(any::<u8>(), 16),
    ) {
        let d = datum(family, n, q);
        let (Some(g), Some(h)) = (invertible(&d, &a), invertible(&d, &b)) else { return Ok(()); };
        let gh = d.mul(&g, &h);
        prop_assert_eq!(d.duality_involution(&gh), d.mul(&d.duality_involution(&g), &d.duality_involution(&h)));
        prop_assert_eq!(d.duality_involution(&d.duality_involution(&g)), g);
        prop_assert_eq!(d.sigma(&gh), d.mul(&d.sigma(&g), &d.sigma(&h)));
        prop_assert_eq!(d.sigma(&d.sigma(&g)), g);
        // g σ(g)⁻¹ always lies in X_σ.
        prop_assert!(d.in_x_sigma(&d.mul(&g, &d.inv(&d.sigma(&g)))));
    }

    #[test]
    fn coset_normal_form_is_constant_on_cosets(
        (family, n, q) in configs(),
        a in prop::collection::vec(any::<u8>(), 16),
        v in prop::collection::vec(any::<u8>(), 6),
    ) {
        let d = datum(family, n, q);
        let Some(g) = invertible(&d, &a) else { return Ok(()); };
        let (u, m) = u_coset_normal_form(&d, &g);
        prop_assert!(u.is_upper_unitriangular());
        prop_assert_eq!(d.mul(&u, &m), g);
        let vg = d.mul(&unitriangular(&d, &v), &g);
        prop_assert_eq!(u_coset_normal_form(&d, &vg).1, m);
    }

    #[test]
    fn bruhat_factors_recompose(
        (family, n, q) in configs(),
        a in prop::collection::vec(any::<u8>(), 16),
    ) {
        let d = datum(family, n, q);
        let Some(g) = invertible(&d, &a) else { return Ok(()); };
        let b = bruhat_decompose(&d, &g, Over::E).unwrap();
        prop_assert!(b.u1.is_upper_unitriangular() && b.u2.is_upper_unitriangular());
        prop_assert!(b.t.is_diagonal());
        let nw = d.weyl_of_perm(&b.w).rep;
        prop_assert_eq!(d.ops().product(n, [&b.u1, &b.t, &nw, &b.u2]), g);
    }
}

fn gl_order(q: u64, n: u32) -> u64 {
    (0..n).map(|i| q.pow(n) - q.pow(i)).product()
}

fn u_order(q: u64, n: u32) -> u64 {
    let signed: i64 = (1..=n).map(|i| q.pow(i) as i64 - (-1i64).pow(i)).product();
    q.pow(n * (n - 1) / 2) * signed as u64
}

#[test]
fn group_orders_match_closed_formulas() {
    for (family, n, q) in [
        (Family::Gl, 2, 2),
        (Family::Gl, 2, 3),
        (Family::Gl, 3, 2),
        (Family::Sl, 2, 2),
        (Family::Sl, 2, 3),
        (Family::U, 2, 2),
        (Family::U, 2, 3),
        (Family::U, 3, 2),
    ] {
        let d = datum(family, n, q);
        let qq = q as u64;
        let (ge, gf) = match family {
            Family::Gl => (gl_order(qq * qq, n as u32), gl_order(qq, n as u32)),
            Family::Sl => (gl_order(qq * qq, n as u32) / (qq * qq - 1), gl_order(qq, n as u32) / (qq - 1)),
            Family::U => (gl_order(qq * qq, n as u32), u_order(qq, n as u32)),
        };
        let count = |s| d.enumerate(s).unwrap().len() as u64;
        assert_eq!(count(Selector::GE), ge, "{family} {n} {q}");
        assert_eq!(count(Selector::GF), gf, "{family} {n} {q}");
        assert_eq!(count(Selector::UE), (qq * qq).pow((n * (n - 1) / 2) as u32));
        if family != Family::Sl {
            // X_σ is a single σ-class, so |X_σ| · |G^op(F)| = |G(E)|.
            let xs = count(Selector::Xsigma);
            assert_eq!(xs * count(Selector::GopF), ge, "{family} {n} {q}");
        }
    }
}
