use fqd2n::ff::{int, ExtField, Field, Gf};
use num_bigint::BigUint;
use proptest::prelude::*;

const SMALL_ORDERS: [u64; 11] = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 81];

/// Every axiom over every pair, and associativity/distributivity over all
/// triples for the smaller fields.
#[test]
fn exhaustive_axioms_small_fields() {
    for q in SMALL_ORDERS {
        let f = Gf::from_order(q).unwrap();
        for a in 0..q {
            assert_eq!(f.add(&a, &f.zero()), a);
            assert_eq!(f.mul(&a, &f.one()), a);
            assert_eq!(f.add(&a, &f.neg(&a)), 0);
            if a != 0 {
                assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1, "q={q} a={a}");
            }
            for b in 0..q {
                assert_eq!(f.add(&a, &b), f.add(&b, &a));
                assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
                assert_eq!(f.sub(&f.add(&a, &b), &b), a);
            }
        }
        if q <= 27 {
            for a in 0..q {
                for b in 0..q {
                    for c in 0..q {
                        assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
                        assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
                    }
                }
            }
        }
    }
}

#[test]
fn multiplicative_group_is_cyclic_of_order_q_minus_1() {
    for q in SMALL_ORDERS {
        let f = Gf::from_order(q).unwrap();
        let g = f.primitive_element();
        let mut seen = std::collections::BTreeSet::new();
        let mut x = f.one();
        for _ in 0..q - 1 {
            seen.insert(x);
            x = f.mul(&x, &g);
        }
        assert_eq!(x, 1);
        assert_eq!(seen.len() as u64, q - 1);
    }
}

#[test]
fn encodings_round_trip_through_text() {
    for q in [9, 25, 121, 169] {
        let f = Gf::from_order(q).unwrap();
        for a in 0..q {
            assert_eq!(fqd2n::ff::parse_text(&f, &f.text(&a)), Some(a));
        }
    }
}

fn field_and_pair() -> impl Strategy<Value = (u64, u64, u64)> {
    prop::sample::select(vec![2u64, 3, 4, 8, 9, 11, 16, 25, 27, 125, 343, 1024, 2187, 65536, 1_000_003])
        .prop_flat_map(|q| (Just(q), 0..q, 0..q))
}

proptest! {
    #[test]
    fn frobenius_is_additive((q, a, b) in field_and_pair()) {
        let f = Gf::from_order(q).unwrap();
        let p = f.p();
        prop_assert_eq!(f.pow(&f.add(&a, &b), p), f.add(&f.pow(&a, p), &f.pow(&b, p)));
        prop_assert_eq!(f.pow(&a, q), a);
    }

    #[test]
    fn inverse_and_division((q, a, b) in field_and_pair()) {
        let f = Gf::from_order(q).unwrap();
        if b != 0 {
            prop_assert_eq!(f.mul(&f.div(&a, &b).unwrap(), &b), a);
        } else {
            prop_assert!(f.inv(&b).is_none());
        }
    }

    #[test]
    fn extension_axioms(base in prop::sample::select(vec![2u64, 3, 4, 5, 9]), degree in 1usize..5,
                        seed in any::<[u64; 3]>()) {
        let f = Gf::from_order(base).unwrap();
        let e = ExtField::new(&f, degree).unwrap();
        let size = e.order_u64().unwrap();
        let [a, b, c] = seed.map(|s| e.element_at(s % size).unwrap());
        prop_assert_eq!(e.mul(&a, &e.add(&b, &c)), e.add(&e.mul(&a, &b), &e.mul(&a, &c)));
        prop_assert_eq!(e.mul(&e.mul(&a, &b), &c), e.mul(&a, &e.mul(&b, &c)));
        if !e.is_zero(&a) {
            prop_assert!(e.is_one(&e.mul(&a, &e.inv(&a).unwrap())));
        }
        // a^{|F|^degree} = a
        prop_assert_eq!(e.frobenius(&a, &e.order()), a.clone());
        let fixed = e.frobenius(&a, &BigUint::from(base)) == a;
        prop_assert_eq!(fixed, e.try_project(&a).is_ok());
    }
}

#[test]
fn integer_helpers_agree_with_brute_force() {
    for n in 1..200u64 {
        let phi = (1..=n).filter(|&k| int::gcd(k, n) == 1).count() as u64;
        assert_eq!(int::euler_phi(n), phi);
        let divs: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
        assert_eq!(int::divisors(n), divs);
        for q in [2u64, 3, 4, 5, 7, 9] {
            if int::gcd(q, n) == 1 {
                assert_eq!(int::multiplicative_order(q, n), smallest_order(q, n), "q={q} n={n}");
            }
        }
    }
}

fn modpow(b: u64, e: u64, m: u64) -> u64 {
    (0..e).fold(1 % m, |acc, _| acc * b % m)
}

fn smallest_order(q: u64, n: u64) -> u64 {
    (1..=n).find(|&k| modpow(q, k, n) == 1 % n).unwrap()
}
