//! Property tests for the exact kernel: ring laws and bit-exact
//! serialization round-trips on arbitrary inputs.

use proptest::collection::vec;
use proptest::prelude::*;

use gerbeflow::cartan::{DiffForm, MultiVector};
use gerbeflow::kernel::scalar::Scalar;
use gerbeflow::{Poly, Rat};

const ORDER: u32 = 3;
const VARS: usize = 3;

fn arb_scalar() -> impl Strategy<Value = Scalar> {
    vec((0..ORDER, -20i64..=20, 1i64..=9), 0..4).prop_map(|entries| {
        let mut s = Scalar::zero(ORDER);
        for (e, num, den) in entries {
            let c = Scalar::h_power(e, ORDER).scale(&Rat::new(num.into(), den.into()));
            s = &s + &c;
        }
        s
    })
}

fn arb_poly() -> impl Strategy<Value = Poly> {
    vec((vec(0..4u32, VARS), arb_scalar()), 0..5).prop_map(|terms| {
        let mut p = Poly::zero(VARS, ORDER);
        for (exp, c) in terms {
            p = &p + &Poly::monomial(VARS, exp, c);
        }
        p
    })
}

fn arb_multivector() -> impl Strategy<Value = MultiVector> {
    vec(
        (
            proptest::sample::subsequence(vec![0usize, 1, 2], 0..=VARS),
            arb_poly(),
        ),
        0..4,
    )
    .prop_map(|terms| {
        let mut mv = MultiVector::zero(VARS, ORDER);
        for (dirs, c) in terms {
            mv = &mv + &MultiVector::term(VARS, &dirs, c);
        }
        mv
    })
}

fn arb_form() -> impl Strategy<Value = DiffForm> {
    vec(
        (
            proptest::sample::subsequence(vec![0usize, 1, 2], 0..=VARS),
            arb_poly(),
        ),
        0..4,
    )
    .prop_map(|terms| {
        let mut w = DiffForm::zero(VARS, ORDER);
        for (covs, c) in terms {
            w = &w + &DiffForm::term(VARS, &covs, c);
        }
        w
    })
}

proptest! {
    #[test]
    fn poly_ring_laws(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
        // commutativity and distributivity
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
        // associativity of the truncated product
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
    }

    #[test]
    fn poly_leibniz(p in arb_poly(), q in arb_poly(), i in 0usize..VARS) {
        let lhs = (&p * &q).partial(i).unwrap();
        let rhs = &(&p.partial(i).unwrap() * &q) + &(&p * &q.partial(i).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn scalar_round_trip(s in arb_scalar()) {
        let v = s.to_json();
        prop_assert_eq!(Scalar::from_json(&v, ORDER).unwrap(), s);
    }

    #[test]
    fn poly_round_trip(p in arb_poly()) {
        let v = p.to_json();
        prop_assert_eq!(Poly::from_json(&v, ORDER).unwrap(), p);
    }

    #[test]
    fn multivector_round_trip(mv in arb_multivector()) {
        let v = mv.to_json();
        prop_assert_eq!(MultiVector::from_json(&v, ORDER).unwrap(), mv);
    }

    #[test]
    fn de_rham_squares_to_zero(form in arb_form()) {
        prop_assert!(form.de_rham().de_rham().is_zero());
    }

    #[test]
    fn de_rham_leibniz(a in arb_form(), b in arb_form()) {
        // d(a ^ b) = da ^ b + (-1)^{|a|} a ^ db on homogeneous components
        for (p, ac) in a.components() {
            for (_, bc) in b.components() {
                let lhs = ac.wedge(&bc).de_rham();
                let signed = if p % 2 == 0 { ac.wedge(&bc.de_rham()) } else { -&ac.wedge(&bc.de_rham()) };
                let rhs = &ac.de_rham().wedge(&bc) + &signed;
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn form_round_trip(w in arb_form()) {
        let v = w.to_json();
        prop_assert_eq!(DiffForm::from_json(&v, ORDER).unwrap(), w);
    }
}
