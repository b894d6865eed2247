mod common;

use common::{axpy, q, rat, rvec, symmetric};
use hypercert::bezout::shift_matrix;
use hypercert::constructions::{
    pencil_matrix, special_poly, symmetric_coords, symmetric_pencil, vamos_direction, vamos_specialized, SpecialKind,
};
use hypercert::hyperbolic::lagrange_selector;
use hypercert::rational::to_f64;
use hypercert::{ldl_psd_check, HyperbolicContext, MvPoly, PolyMatrix, QMatrix, Q};
use num_traits::Signed;
use proptest::prelude::*;

fn vamos() -> HyperbolicContext {
    HyperbolicContext::new(vamos_specialized(), vamos_direction()).unwrap()
}

fn det(d: usize) -> HyperbolicContext {
    special_poly(&SpecialKind::DetSymmetric(d)).unwrap().ctx
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn bezoutian_is_linear_in_u(u in rvec(4), v in rvec(4), a in rat(), b in rat()) {
        let ctx = vamos();
        let w: Vec<Q> = u.iter().zip(&v).map(|(ui, vi)| &a * ui + &b * vi).collect();
        let lhs = ctx.parameterized_bezoutian(&w).unwrap();
        let bu = ctx.parameterized_bezoutian(&u).unwrap().scale(&a);
        let bv = ctx.parameterized_bezoutian(&v).unwrap().scale(&b);
        prop_assert_eq!(lhs, bu.add(&bv).unwrap());
    }

    #[test]
    fn e_shift_congruence(x in rvec(4), u in rvec(4), t0 in rat()) {
        let ctx = vamos();
        let shifted = axpy(&t0, ctx.direction(), &x);
        let lhs = ctx.bezoutian_at(&shifted, &u).unwrap();
        let rhs = shift_matrix(&t0, ctx.degree()).congruence(&ctx.bezoutian_at(&x, &u).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn determinant_membership_is_psd(u in symmetric(2), xs in prop::collection::vec(symmetric(2), 4)) {
        let ctx = det(2);
        let coords = symmetric_coords(&u);
        let inside = ctx.cone_membership(&coords).unwrap().in_cone();
        prop_assert_eq!(inside, ldl_psd_check(&u).unwrap().is_psd());
        if inside {
            for x in &xs {
                let h = ctx.hermite_at(&symmetric_coords(x), &coords).unwrap();
                prop_assert!(ldl_psd_check(&h).unwrap().is_psd());
            }
        } else {
            // x = -U puts the negative eigenvalue of U first; select it.
            let x: Vec<Q> = coords.iter().map(|v| -v.clone()).collect();
            let mut width = Q::new(1.into(), 16.into());
            let mut found = false;
            for _ in 0..50 {
                let iso = ctx.hyperbolic_eigenvalues(&coords, &width).unwrap();
                let nodes: Vec<Q> = iso.intervals.iter().map(|r| r.midpoint()).collect();
                let mut y = lagrange_selector(&nodes, 0).unwrap();
                y.resize(2, q(0));
                if ctx.phi_eval(&x, &y, &coords).unwrap().is_negative() {
                    found = true;
                    break;
                }
                width /= q(16);
            }
            prop_assert!(found);
        }
    }

    #[test]
    fn residues_at_e_sum_to_degree(x in symmetric(3)) {
        let ctx = det(3);
        let cf = ctx.canonical_functionals(&symmetric_coords(&x), &Q::new(1.into(), 1_000_000_000.into())).unwrap();
        let total: Q = (0..cf.functionals.len()).map(|k| cf.apply(k, ctx.direction())).sum();
        prop_assert!((to_f64(&total) - 3.0).abs() <= 1e-9);
    }
}

/// Frobenius Gram matrix of `W (-X)^(i-1)`, `i = 1..d`, with symbolic `X`.
fn frobenius_gram(w: &QMatrix, d: usize) -> PolyMatrix {
    let n = d * (d + 1) / 2;
    let neg_x = pencil_matrix(&symmetric_pencil(d)).unwrap().scale(&-q(1));
    let wm = PolyMatrix::constant(w, n).unwrap();
    let mut power = PolyMatrix::constant(&QMatrix::identity(d), n).unwrap();
    let mut blocks = Vec::new();
    for _ in 0..d {
        blocks.push(wm.mul(&power).unwrap());
        power = power.mul(&neg_x).unwrap();
    }
    let entries = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let mut acc = MvPoly::zero(n);
                    for r in 0..d {
                        for c in 0..d {
                            acc = &acc + &(blocks[i].get(r, c) * blocks[j].get(r, c));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    PolyMatrix::from_rows(n, entries).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn determinant_hermite_is_gram_of_square_root(w2 in symmetric(2), w3 in symmetric(3)) {
        for (d, w) in [(2usize, w2), (3, w3)] {
            let u = w.mul(&w).unwrap();
            let h = det(d).parameterized_hermite(&symmetric_coords(&u)).unwrap();
            prop_assert_eq!(h, frobenius_gram(&w, d));
        }
    }
}
