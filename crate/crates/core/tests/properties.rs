use cbx_core::monopole::Series;
use cbx_core::ratfield::{q, Affine, MPoly, Mono, RatFunc};
use cbx_core::shiftalg::{DiffOp, ShiftMono};
use proptest::prelude::*;

const N: usize = 6;

fn poly(terms: &[(Vec<u8>, i64)]) -> MPoly {
    let mut p = MPoly::zero(N);
    for (exps, c) in terms {
        let mono = exps.iter().enumerate().fold(Mono::one(N), |m, (s, &e)| m.mul(&Mono::var(N, s, e)));
        p.add_term(mono, q(*c));
    }
    p
}

fn form((a, b, k): (usize, usize, i64)) -> Affine {
    Affine::var(a) - Affine::var(b) + Affine::term(0, q(k))
}

fn arb_form() -> impl Strategy<Value = (usize, usize, i64)> {
    (1..N, 1..N, -2i64..=2).prop_filter("distinct slots", |(a, b, _)| a != b)
}

fn arb_poly() -> impl Strategy<Value = MPoly> {
    prop::collection::vec((prop::collection::vec(0u8..=2, N), -3i64..=3), 1..4)
        .prop_map(|t| poly(&t))
        .prop_filter("nonzero", |p| !p.is_zero())
}

/// Polynomial times up to two linear factors over up to two linear forms.
fn arb_ratfunc() -> impl Strategy<Value = (MPoly, Vec<Affine>, Vec<Affine>)> {
    (
        arb_poly(),
        prop::collection::vec(arb_form(), 0..3),
        prop::collection::vec(arb_form(), 0..3),
    )
        .prop_map(|(p, nums, dens)| (p, nums.into_iter().map(form).collect(), dens.into_iter().map(form).collect()))
}

fn build((p, nums, dens): &(MPoly, Vec<Affine>, Vec<Affine>)) -> RatFunc {
    RatFunc::factored(p.clone(), nums, dens).unwrap()
}

fn arb_op() -> impl Strategy<Value = DiffOp> {
    prop::collection::vec((prop::collection::vec(-1i8..=1, 2), arb_ratfunc()), 1..3).prop_map(|terms| {
        let terms = terms
            .into_iter()
            .map(|(e, f)| {
                let mut exps = vec![0i8; N];
                exps[2] = e[0];
                exps[3] = e[1];
                (ShiftMono::from_exps(&exps), build(&f))
            })
            .collect();
        DiffOp::from_terms(N, terms)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn factored_equals_expanded(f in arb_ratfunc()) {
        let (p, nums, dens) = &f;
        let expanded = nums.iter().fold(p.clone(), |acc, a| acc.mul(&a.to_mpoly(N)));
        prop_assert_eq!(build(&f), RatFunc::quotient(expanded, dens).unwrap());
    }

    #[test]
    fn field_axioms(a in arb_ratfunc(), b in arb_ratfunc(), c in arb_ratfunc()) {
        let (a, b, c) = (build(&a), build(&b), build(&c));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in arb_ratfunc(), b in arb_ratfunc(), point in prop::collection::vec(-20i64..=20, N)) {
        let (a, b) = (build(&a), build(&b));
        let point: Vec<_> = point.into_iter().map(q).collect();
        if let (Ok(x), Ok(y)) = (a.eval(&point), b.eval(&point)) {
            prop_assert_eq!(a.mul(&b).eval(&point).unwrap(), &x * &y);
            prop_assert_eq!(a.add(&b).eval(&point).unwrap(), x + y);
        }
    }

    #[test]
    fn shift_is_invertible(a in arb_ratfunc(), slot in 1..N, c in -3i64..=3) {
        let a = build(&a);
        prop_assert_eq!(a.shift(slot, 0, &q(c)).shift(slot, 0, &q(-c)), a);
    }

    #[test]
    fn operator_product_is_associative(x in arb_op(), y in arb_op(), z in arb_op()) {
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.commutator(&y), x.mul(&y).sub(&y.mul(&x)));
    }

    #[test]
    fn series_ring(a in prop::collection::vec(-5i64..=5, 1..8), b in prop::collection::vec(-5i64..=5, 1..8), k in 1i64..4) {
        let order = 15;
        let s = Series::from_pairs(&a.iter().enumerate().map(|(e, c)| (e as i64, *c)).collect::<Vec<_>>(), order);
        let t = Series::from_pairs(&b.iter().enumerate().map(|(e, c)| (e as i64, *c)).collect::<Vec<_>>(), order);
        prop_assert_eq!(s.mul(&t), t.mul(&s));
        prop_assert_eq!(s.add(&t).mul(&t), s.mul(&t).add(&t.mul(&t)));
        let denom = Series::from_pairs(&[(0, 1), (k, -1)], order);
        prop_assert_eq!(Series::geometric(k, order).mul(&denom), Series::one(order));
    }
}
