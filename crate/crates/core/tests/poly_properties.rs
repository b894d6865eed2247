mod common;

use common::{axpy, form, rat, rvec};
use proptest::prelude::*;

proptest! {
    #[test]
    fn line_reparameterization(p in form(3, 3), x in rvec(3), e in rvec(3), s in rat(), t in rat()) {
        let shifted = axpy(&s, &e, &x);
        let lhs = p.restrict_line(&shifted, &e).unwrap();
        let rhs = p.restrict_line(&x, &e).unwrap();
        prop_assert_eq!(&lhs, &rhs.shift(&s));
        prop_assert_eq!(lhs.eval(&t), rhs.eval(&(&t + &s)));
    }

    #[test]
    fn directional_derivative_is_linear(p in form(3, 4), u in rvec(3), v in rvec(3), a in rat(), b in rat()) {
        let w: Vec<_> = u.iter().zip(&v).map(|(ui, vi)| &a * ui + &b * vi).collect();
        let lhs = p.directional_derivative(&w).unwrap();
        let du = p.directional_derivative(&u).unwrap().scale(&a);
        let dv = p.directional_derivative(&v).unwrap().scale(&b);
        prop_assert_eq!(lhs, &du + &dv);
    }

    #[test]
    fn restriction_commutes_with_evaluation(p in form(4, 3), x in rvec(4), e in rvec(4), t0 in rat()) {
        let line = p.restrict_line(&x, &e).unwrap();
        prop_assert_eq!(line.eval(&t0), p.eval(&axpy(&t0, &e, &x)).unwrap());
    }

    #[test]
    fn restriction_of_sum_and_product(p in form(3, 2), r in form(3, 2), x in rvec(3), e in rvec(3)) {
        let lp = p.restrict_line(&x, &e).unwrap();
        let lr = r.restrict_line(&x, &e).unwrap();
        prop_assert_eq!((&p + &r).restrict_line(&x, &e).unwrap(), &lp + &lr);
        prop_assert_eq!((&p * &r).restrict_line(&x, &e).unwrap(), &lp * &lr);
    }
}
