use fqd2n::dihedral::{
    center_basis, primitivity_check, CentralKind, DihedralAlgebra, DihedralElement, Primitivity, WedderburnKind,
    DEFAULT_BUDGET,
};
use fqd2n::ff::{int, Gf};
use fqd2n::linalg::Span;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn instance() -> impl Strategy<Value = (u64, usize)> {
    (prop::sample::select(vec![2u64, 3, 4, 5, 7, 9, 11]), 1usize..=16)
        .prop_filter("gcd(q, n) = 1", |&(q, n)| int::gcd(q, n as u64) == 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn associativity((q, n) in instance(), seed in any::<u64>()) {
        let f = Gf::from_order(q).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let [a, b, c] = [0; 3].map(|_| DihedralElement::random(&f, n, &mut rng));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn center_contains_central_idempotents((q, n) in instance()) {
        let f = Gf::from_order(q).unwrap();
        let alg = DihedralAlgebra::new(&f, n).unwrap();
        let center = center_basis(&f, n).unwrap();
        let span = Span::new(&f, &center.iter().map(DihedralElement::to_vector).collect::<Vec<_>>());
        for z in &center {
            prop_assert!(z.is_central());
        }
        for e in alg.central_idempotents() {
            prop_assert!(span.contains(&e.element.to_vector()));
        }
        // one center dimension per residue degree of each block
        let dim: usize = alg.wedderburn().components.iter().map(|c| match c.kind {
            WedderburnKind::Matrix2 => c.residue_degree,
            _ => 2,
        }).sum();
        prop_assert_eq!(span.dim(), dim);
    }

    #[test]
    fn decomposition_dimension((q, n) in instance()) {
        let f = Gf::from_order(q).unwrap();
        let d = fqd2n::dihedral::wedderburn_decomposition(&f, n).unwrap();
        prop_assert_eq!(d.total_dimension, 2 * n);
        prop_assert_eq!(d.components.iter().map(|c| c.dim).sum::<usize>(), 2 * n);
        prop_assert_eq!(d.semisimple, f.p() != 2);
    }
}

#[test]
fn sum_of_two_primitive_idempotents_is_not_primitive() {
    for (q, n) in [(3, 4), (5, 6), (2, 7), (4, 5)] {
        let f = Gf::from_order(q).unwrap();
        let alg = DihedralAlgebra::new(&f, n).unwrap();
        let center = alg.center_basis();
        let c = alg.central_idempotents();
        let sum = c[0].element.add(&c[c.len() - 1].element);
        assert_eq!(primitivity_check(&sum, &center, DEFAULT_BUDGET), Primitivity::NotPrimitive);
        assert_eq!(primitivity_check(&c[0].element, &center, 0), Primitivity::Skipped);
    }
}

#[test]
fn characteristic_two_nilpotent_block() {
    for (q, n) in [(2, 7), (4, 9), (8, 21), (16, 15)] {
        let f = Gf::from_order(q).unwrap();
        let alg = DihedralAlgebra::new(&f, n).unwrap();
        let one = DihedralElement::one(&f, n);
        let y = DihedralElement::y(&f, n);
        let w = one.add(&y).mul(&DihedralElement::from_cyclic(alg.cyclic_idempotents()[0].clone()));
        assert!(!w.is_zero());
        assert!(w.mul(&w).is_zero());
        assert!(alg.central_idempotents().iter().all(|e| e.kind != CentralKind::YPlusSplit));
        assert_eq!(alg.wedderburn().components[0].kind, WedderburnKind::TwistedPairFq);
    }
}

#[test]
fn render_format() {
    let f = Gf::from_order(3).unwrap();
    let u = DihedralElement::x(&f, 4).add(&DihedralElement::y(&f, 4));
    assert_eq!(u.render(), "(x) + (1)y");
}
