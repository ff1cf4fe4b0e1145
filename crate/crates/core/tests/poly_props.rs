use implicit_core::*;
use proptest::prelude::*;

fn vars() -> Variables {
    Variables::new(
        vec![vec!["s".into(), "u".into()], vec!["t".into(), "v".into()]],
        (0..3).map(|j| format!("T_{j}")).collect(),
    )
    .unwrap()
}

fn coeff() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn poly(nvars: usize, ring: Ring, max_exp: u32) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, nvars), coeff()), 0..6).prop_map(move |terms| {
        MultiPoly::from_terms(
            ring,
            nvars,
            terms.into_iter().map(|(e, c)| (Monomial::from_exponents(e), c)),
        )
    })
}

/// Random polynomial of bidegree `(a, b)` in `s, u ; t, v`.
fn bihomogeneous(a: u32, b: u32) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((0..=a, 0..=b, coeff()), 1..5).prop_map(move |terms| {
        MultiPoly::from_terms(
            Ring::Parameter,
            4,
            terms
                .into_iter()
                .map(|(i, j, c)| (Monomial::from_exponents(vec![i, a - i, j, b - j]), c)),
        )
    })
}

fn images() -> impl Strategy<Value = Vec<MultiPoly>> {
    prop::collection::vec(bihomogeneous(1, 1), 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn display_parse_round_trip(p in poly(4, Ring::Parameter, 3), q in poly(3, Ring::Target, 3)) {
        let vars = vars();
        let text = p.display(&vars).to_string();
        prop_assert_eq!(parse_poly(&text, &vars, Ring::Parameter).unwrap(), p);
        let text = q.display(&vars).to_string();
        prop_assert_eq!(parse_poly(&text, &vars, Ring::Target).unwrap(), q);
    }

    #[test]
    fn multidegree_is_additive(p in bihomogeneous(2, 1), q in bihomogeneous(1, 3)) {
        let blocks = BlockStructure::new(vec![1, 1]).unwrap();
        prop_assume!(!p.is_zero() && !q.is_zero());
        let pq = &p * &q;
        prop_assert_eq!(
            pq.multidegree(&blocks).unwrap(),
            &p.multidegree(&blocks).unwrap() + &q.multidegree(&blocks).unwrap()
        );
    }

    #[test]
    fn substitution_is_a_ring_map(p in poly(3, Ring::Target, 2), q in poly(3, Ring::Target, 2), f in images()) {
        let sub = |x: &MultiPoly| x.substitute_targets(&f).unwrap();
        prop_assert_eq!(sub(&(&p * &q)), &sub(&p) * &sub(&q));
        prop_assert_eq!(sub(&(&p + &q)), &sub(&p) + &sub(&q));
    }

    #[test]
    fn evaluation_is_a_ring_map(
        p in poly(4, Ring::Parameter, 3),
        q in poly(4, Ring::Parameter, 3),
        x in prop::collection::vec(-6i64..=6, 4),
    ) {
        let x: Vec<Rational> = x.into_iter().map(rat).collect();
        prop_assert_eq!((&p * &q).eval_dense(&x), p.eval_dense(&x) * q.eval_dense(&x));
    }

    #[test]
    fn exact_division_inverts_multiplication(p in poly(3, Ring::Target, 3), q in poly(3, Ring::Target, 2)) {
        prop_assume!(!q.is_zero());
        prop_assert_eq!((&p * &q).div_exact(&q), Some(p));
    }

    #[test]
    fn gcd_divides_and_keeps_common_factor(
        a in poly(3, Ring::Target, 2),
        b in poly(3, Ring::Target, 2),
        c in poly(3, Ring::Target, 2),
    ) {
        prop_assume!(!a.is_zero() && !b.is_zero() && !c.is_zero());
        let (x, y) = (&a * &c, &b * &c);
        let g = gcd_poly(&x, &y).unwrap();
        prop_assert!(x.div_exact(&g).is_some());
        prop_assert!(y.div_exact(&g).is_some());
        prop_assert!(g.div_exact(&c).is_some());
    }
}
