use fqd2n::cyclic::{self, cyclotomic_cosets, factor_xn_minus_1, FactorRole, RnElement};
use fqd2n::ff::{int, Field, Gf};
use fqd2n::poly::Poly;
use proptest::prelude::*;

fn instance() -> impl Strategy<Value = (u64, usize)> {
    (prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27]), 1usize..=30)
        .prop_filter("gcd(q, n) = 1", |&(q, n)| int::gcd(q, n as u64) == 1)
}

#[test]
fn cosets_partition_and_match_factor_degrees() {
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        for n in (1..=30u64).filter(|&n| int::gcd(q, n) == 1) {
            let cosets = cyclotomic_cosets(n, q).unwrap();
            let mut all: Vec<u64> = cosets.iter().flatten().copied().collect();
            all.sort_unstable();
            assert_eq!(all, (0..n).collect::<Vec<_>>());
            let fact = factor_xn_minus_1(&Gf::from_order(q).unwrap(), n as usize).unwrap();
            let mut a: Vec<usize> = cosets.iter().map(Vec::len).collect();
            let mut b: Vec<usize> = fact.factors().iter().map(|f| f.poly.degree().unwrap()).collect();
            a.sort_unstable();
            b.sort_unstable();
            assert_eq!(a, b, "q={q} n={n}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn factor_roles_are_consistent((q, n) in instance()) {
        let f = Gf::from_order(q).unwrap();
        let fact = factor_xn_minus_1(&f, n).unwrap();
        prop_assert_eq!(fact.product(), Poly::x_pow_minus_one(&f, n));
        prop_assert_eq!(fact.len(), fact.r() + 2 * fact.s());
        for (i, factor) in fact.factors().iter().enumerate() {
            let recip = factor.poly.monic_reciprocal().unwrap();
            match factor.role {
                FactorRole::PairCanonical | FactorRole::PairMate => {
                    let m = factor.mate.unwrap();
                    prop_assert_eq!(&fact.factors()[m].poly, &recip);
                    prop_assert_eq!(fact.factors()[m].mate, Some(i));
                }
                _ => prop_assert_eq!(&recip, &factor.poly),
            }
        }
    }

    #[test]
    fn derivative_formula_matches_oracle_on_divisors((q, n) in instance(), pick in any::<u64>()) {
        let f = Gf::from_order(q).unwrap();
        let fact = factor_xn_minus_1(&f, n).unwrap();
        let len = fact.len() as u64;
        let g = (0..len).filter(|i| pick >> (i % 64) & 1 == 1).fold(Poly::one(&f), |acc, i| {
            &acc * &fact.factors()[i as usize].poly
        });
        let e = cyclic::idempotent_derivative(&fact, &g).unwrap();
        prop_assert_eq!(&e, &cyclic::idempotent_crt_oracle(&fact, &g).unwrap());
        prop_assert!(e.is_idempotent());
    }

    #[test]
    fn idempotent_values_on_roots((q, n) in instance()) {
        // e_f(zeta^i) = 1 exactly on the coset of f
        let f = Gf::from_order(q).unwrap();
        prop_assume!(n <= 15);
        let (fact, idems) = cyclic::primitive_idempotents(&f, n).unwrap();
        let s = fact.splitting().unwrap();
        let ext = &s.field;
        for (factor, e) in fact.factors().iter().zip(&idems) {
            let coset = factor.coset.as_ref().unwrap();
            for i in 0..n as u64 {
                let v = ext.eval_base_poly(&e.to_poly(), &s.zeta_pow(i));
                prop_assert_eq!(ext.is_one(&v), coset.contains(&i));
                prop_assert!(ext.is_one(&v) || ext.is_zero(&v));
            }
        }
    }

    #[test]
    fn rn_ring_laws((q, n) in instance(), seed in any::<[u64; 6]>()) {
        let f = Gf::from_order(q).unwrap();
        let mk = |s: u64| RnElement::from_coeffs(&f, (0..n as u64).map(|k| (s.rotate_left(k as u32 * 7) ^ k) % q).collect());
        let (a, b, c) = (mk(seed[0]), mk(seed[1]), mk(seed[2]));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b).bar(), a.bar().mul(&b.bar()));
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!(a.mul(&RnElement::one(&f, n)), a);
    }
}

#[test]
fn bar_swaps_reciprocal_idempotents() {
    for (q, n) in [(2, 7), (3, 11), (5, 12), (4, 15), (9, 20)] {
        let f = Gf::from_order(q).unwrap();
        let (fact, idems) = cyclic::primitive_idempotents(&f, n).unwrap();
        for (i, factor) in fact.factors().iter().enumerate() {
            let j = factor.mate.unwrap_or(i);
            assert_eq!(idems[i].bar(), idems[j]);
        }
    }
}

#[test]
fn errors() {
    let f = Gf::from_order(4).unwrap();
    assert!(factor_xn_minus_1(&f, 6).is_err());
    assert!(factor_xn_minus_1(&f, 0).is_err());
    let fact = factor_xn_minus_1(&f, 5).unwrap();
    let not_divisor = Poly::from_ints(&f, &[1, 0, 1]);
    assert_eq!(cyclic::idempotent_derivative(&fact, &not_divisor), Err(fqd2n::Error::NotADivisor));
    assert_eq!(cyclic::idempotent_crt_oracle(&fact, &Poly::zero(&f)), Err(fqd2n::Error::NotADivisor));
    let _ = f.one();
}
