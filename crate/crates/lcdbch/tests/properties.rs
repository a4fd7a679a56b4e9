//! Randomized invariants across the library modules.

use proptest::prelude::*;

use lcdbch::cosets::{coset_of, is_leader_bruteforce, is_leader_fast, lambda_lift, CosetContext};
use lcdbch::dims::{dimension_closed_form, dimension_exact, BchSpec};
use lcdbch::gf::BasePoly;
use lcdbch::modmath::{gcd_plus_minus, gcd_plus_plus, pow_big, psi};

fn small_q() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![3u64, 5, 7])
}

proptest! {
    // Both gcd helpers assert their case split against a direct gcd and
    // return an error on any disagreement.
    #[test]
    fn gcd_splits_agree_with_direct_gcd(b in 2u64..10, u in 1u64..20, v in 1u64..20) {
        gcd_plus_minus(b, u, v).unwrap();
        gcd_plus_plus(b, u, v).unwrap();
    }

    #[test]
    fn psi_satisfies_its_recursion(q in small_q(), x in 1i64..5) {
        let step = pow_big(q, 1u64 << x) - 1u32;
        prop_assert_eq!(psi(q, x).unwrap(), psi(q, x - 1).unwrap() * step);
    }

    // Every element of a coset maps to the same leader, and the leader is
    // the coset minimum.
    #[test]
    fn coset_membership_is_consistent(q in small_q(), m in 2u64..5, s in 0u64..2000) {
        let n = q.pow(m as u32) + 1;
        let s = s % n;
        let ctx = CosetContext::new(q, n).unwrap();
        let c = coset_of(&ctx, s).unwrap();
        let elems = c.elements();
        prop_assert_eq!(elems.len() as u64, c.size);
        prop_assert_eq!(elems.iter().copied().min(), Some(c.leader));
        for &e in &elems {
            prop_assert_eq!(coset_of(&ctx, e).unwrap().leader, c.leader);
        }
        prop_assert_eq!(is_leader_bruteforce(&ctx, s).unwrap(), s == c.leader);
    }

    #[test]
    fn fast_leader_test_matches_brute_force(q in small_q(), m in 2u64..5, s in 0u64..2000) {
        let n = q.pow(m as u32) + 1;
        let s = s % n;
        let ctx = CosetContext::new(q, n).unwrap();
        prop_assert_eq!(
            is_leader_fast(q, m, s).unwrap(),
            is_leader_bruteforce(&ctx, s).unwrap()
        );
    }

    // Multiplying by lambda carries leaders of Z_((q^m+1)/lambda) to leaders
    // of Z_(q^m+1) with the same coset size.
    #[test]
    fn lambda_lifting_preserves_leader_data(q in small_q(), s in 1u64..200) {
        let m = 3u64;
        let big = q.pow(m as u32) + 1;
        for lambda in 2..=q + 1 {
            if (q + 1) % lambda != 0 || big % lambda != 0 {
                continue;
            }
            let n = big / lambda;
            let s = 1 + s % (n - 1);
            let r = lambda_lift(q, m, lambda, s).unwrap();
            prop_assert_eq!(r.leader_small, r.leader_big);
            prop_assert_eq!(r.size_small, r.size_big);
        }
    }

    #[test]
    fn closed_dimension_matches_exact_in_interval(q in small_q(), e in 0u64..8) {
        // Odd m = 3 with every proper lambda; interval bound q^2/lambda.
        let big = q.pow(3) + 1;
        for lambda in 2..=q {
            if (q + 1) % lambda != 0 || big % lambda != 0 {
                continue;
            }
            let e = e.min(q * q / lambda);
            let spec = BchSpec::new(q, 3, lambda, e + 2, 0).unwrap();
            let (closed, _) = dimension_closed_form(&spec).unwrap();
            prop_assert_eq!(closed, dimension_exact(&spec).unwrap());
        }
    }

    #[test]
    fn reciprocal_is_an_involution_on_monic_polys(
        p in prop::sample::select(vec![3u64, 5, 7]),
        mut coeffs in prop::collection::vec(0u64..7, 1..8),
    ) {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        if coeffs[0] == 0 {
            coeffs[0] = 1;
        }
        coeffs.push(1); // monic
        let f = BasePoly::new(p, coeffs);
        prop_assert_eq!(f.reciprocal().unwrap().reciprocal().unwrap(), f);
    }

    // deg g = n - k and g | x^n - 1 are checked inside build_code; here we
    // check the BCH bound holds on sampled codewords.
    #[test]
    fn sampled_weights_respect_designed_distance(delta in 2u64..8, seed in 0u64..100) {
        let spec = BchSpec::new(5, 3, 3, delta, 0).unwrap();
        let code = lcdbch::code::build_code(&spec).unwrap();
        let w = lcdbch::code::min_distance_sample(&code, 50, seed).unwrap();
        prop_assert!(w >= lcdbch::dims::distance_lower_bound(&spec));
    }
}
