use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use trilinear::exactmath::{gcd_binary_forms, BinaryForm, Matrix, Rational};
use trilinear::oracle::{proportional, random_automorphism, random_left_factor};
use trilinear::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=12).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn pair() -> impl Strategy<Value = [Rational; 2]> {
    (rational(), rational())
        .prop_filter("nonzero", |(a, b)| a != &Rational::from_integer(0.into()) || b != &Rational::from_integer(0.into()))
        .prop_map(|(a, b)| [a, b])
}

fn point() -> impl Strategy<Value = Point> {
    (pair(), pair(), pair()).prop_map(|(a, b, c)| [a, b, c])
}

fn form(degree: usize) -> impl Strategy<Value = BinaryForm> {
    proptest::collection::vec(rational(), degree + 1).prop_map(|c| BinaryForm::new(Axis::X, c))
}

fn rep(i: usize) -> TriLinearMap {
    representatives()[i].entries.clone()
}

fn conjugate(phi: &TriLinearMap, seed: u64) -> TriLinearMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xi = random_automorphism(&mut rng, true);
    phi.compose_right(&xi).compose_left(&random_left_factor(&mut rng)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn printed_maps_parse_back(i in 0usize..19, seed in any::<u64>()) {
        let phi = conjugate(&rep(i), seed);
        let text = phi.entry_strings().join(", ");
        prop_assert_eq!(TriLinearMap::parse(&text).unwrap(), phi);
    }

    #[test]
    fn type_is_invariant_up_to_relabelling(i in 0usize..19, seed in any::<u64>()) {
        let mut a = decide(&rep(i)).phi_type.unwrap();
        let r = decide(&conjugate(&rep(i), seed));
        prop_assert_eq!(r.verdict, Verdict::Birational);
        let mut b = r.phi_type.unwrap();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn fingerprint_follows_factor_permutations(i in 0usize..19, p in 0usize..6) {
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let phi = rep(i);
        let fp = betti_fingerprint(&phi, [2, 2, 2]);
        prop_assert_eq!(betti_fingerprint(&phi.permute_factors(perms[p]), [2, 2, 2]), fp.permuted(perms[p]));
    }

    #[test]
    fn inverse_undoes_the_map(i in 0usize..19, seed in 0u64..1000, p in point()) {
        let phi = conjugate(&rep(i), seed);
        let (inv, cert) = invert(&phi).unwrap();
        prop_assert!(cert.passed());
        let t = phi.eval_point(&p);
        if let Some(q) = inv.eval(&t) {
            for g in 0..3 {
                prop_assert!(proportional(&q[g], &p[g]));
            }
        }
    }

    #[test]
    fn fiber_points_map_to_the_target(i in 0usize..19, seed in 0u64..1000, p in point()) {
        let phi = rep(i);
        let t = phi.eval_point(&p);
        prop_assume!(t.iter().any(|c| c != &Rational::from_integer(0.into())));
        // points on a contracted surface have curves as fibers
        let f = oracle::fiber(&phi, &t, seed);
        prop_assume!(!matches!(f, Err(oracle::OracleError::Degenerate { .. })));
        let f = f.unwrap();
        for q in &f.rational_points {
            prop_assert!(proportional(&phi.eval_point(q), &t));
        }
    }

    #[test]
    fn gcd_divides_its_inputs(a in form(3), b in form(2), c in form(1)) {
        let common = a.mul(&c);
        let other = b.mul(&c);
        prop_assume!(!common.is_zero() && !other.is_zero());
        let g = gcd_binary_forms(&[common.clone(), other.clone()]).unwrap();
        prop_assert!(g.degree() >= c.degree() || c.is_zero());
        prop_assert!(common.exact_div(&g).is_some());
        prop_assert!(other.exact_div(&g).is_some());
    }

    #[test]
    fn rank_plus_nullity(rows in 1usize..6, cols in 1usize..7, cells in proptest::collection::vec(-3i64..=3, 42)) {
        let entries: Vec<Rational> = cells[..rows * cols].iter().map(|&c| Rational::from_integer(c.into())).collect();
        let m = Matrix::from_vec(rows, cols, entries);
        let kernel = m.nullspace();
        prop_assert_eq!(m.rank() + kernel.len(), cols);
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(|x| x == &Rational::from_integer(0.into())));
        }
    }
}
