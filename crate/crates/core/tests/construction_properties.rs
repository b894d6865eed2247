mod common;

use common::{form, q, rat, rvec};
use hypercert::constructions::{
    degree_lift, graph_cubic, nesterov_maximizer, special_poly, std_cubic, vamos_family, variable_lift, SpecialKind,
};
use hypercert::{Graph, Homogeneity, HyperbolicContext, MvPoly, TestConfig, Q};
use num_traits::Signed;
use proptest::prelude::*;

/// Random simple graph on up to 6 vertices.
fn graph() -> impl Strategy<Value = Graph> {
    (1usize..=6).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let len = pairs.len();
        prop::collection::vec(any::<bool>(), len).prop_map(move |keep| {
            let edges: Vec<_> = pairs.iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| *p).collect();
            Graph::new(n, &edges).unwrap()
        })
    })
}

fn det2() -> HyperbolicContext {
    special_poly(&SpecialKind::DetSymmetric(2)).unwrap().ctx
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn graph_cubic_frontier(g in graph(), r in 1i64..=9) {
        let (omega, _) = g.clique_number();
        prop_assume!(omega >= 2);
        let w = q(omega as i64);
        let at = graph_cubic(&g, &w, false).unwrap();
        let report = at.context().unwrap().hyperbolicity_test(&TestConfig::new(20, 17)).unwrap();
        prop_assert!(report.passed());
        // any k strictly between 1 and omega
        let k = q(1) + (&w - q(1)) * Q::new(r.into(), 10.into());
        let below = graph_cubic(&g, &k, false).unwrap();
        prop_assert!(nesterov_maximizer(&g).unwrap().falsifies(&below).unwrap());
    }

    #[test]
    fn graph_cubics_are_cubic(g in graph(), k in 2i64..=5) {
        let c = graph_cubic(&g, &q(k), false).unwrap();
        prop_assert_eq!(c.poly.is_homogeneous(), Homogeneity::Yes(3));
        prop_assert_eq!(c.poly.nvars(), c.nvars());
    }

    #[test]
    fn std_cubics_are_cubic(qf in form(3, 3)) {
        let p = std_cubic(&qf).unwrap();
        prop_assert_eq!(p.is_homogeneous(), Homogeneity::Yes(3));
        prop_assert_eq!(p.nvars(), 4);
    }

    #[test]
    fn lifts_have_declared_degree(k in 1u32..=3, a in rat(), qf in rvec(2)) {
        let ctx = det2();
        let ell = MvPoly::linear(&[a.abs() + q(1), q(1), q(0)]);
        let p = degree_lift(&ctx, &[q(0), q(0), q(1)], &ell, k).unwrap();
        prop_assert_eq!(p.is_homogeneous(), Homogeneity::Yes(2 + k));
        let form = MvPoly::linear(&qf);
        let ep = [q(1), q(0)];
        if form.eval(&ep).unwrap().is_positive() {
            let v = variable_lift(&ctx, &form, &ep).unwrap();
            prop_assert_eq!(v.is_homogeneous(), Homogeneity::Yes(2));
            prop_assert_eq!(v.nvars(), 5);
        }
    }
}

#[test]
fn fixed_families_have_declared_degree() {
    for d in 1..=4 {
        let ctx = special_poly(&SpecialKind::DetSymmetric(d)).unwrap().ctx;
        assert_eq!(ctx.poly().is_homogeneous(), Homogeneity::Yes(d as u32));
    }
    let sc = special_poly(&SpecialKind::SingularCubic).unwrap().ctx;
    assert_eq!(sc.poly().is_homogeneous(), Homogeneity::Yes(3));
    for (n, d) in [(4, 4), (5, 4), (4, 6), (6, 5)] {
        let ctx = vamos_family(n, d).unwrap();
        assert_eq!(ctx.poly().is_homogeneous(), Homogeneity::Yes(d as u32));
        assert_eq!(ctx.nvars(), n);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    /// The lifted cone is the intersection of the two cones.
    #[test]
    fn degree_lift_cone_is_intersection(u in rvec(3), a in rat(), b in rat(), k in 1u32..=2) {
        let ctx = det2();
        // vanishes at (0, 0, 1), positive at e = (1, 0, 1)
        let ell = MvPoly::linear(&[a.abs() + q(1), b, q(0)]);
        let lifted = degree_lift(&ctx, &[q(0), q(0), q(1)], &ell, k).unwrap();
        let lctx = HyperbolicContext::new(lifted, ctx.direction().to_vec()).unwrap();
        let expected = !ell.eval(&u).unwrap().is_negative() && ctx.cone_membership(&u).unwrap().in_cone();
        prop_assert_eq!(lctx.cone_membership(&u).unwrap().in_cone(), expected);
    }
}
