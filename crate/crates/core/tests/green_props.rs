use hopfu::green::{basis_product, f_poly_closed, f_poly_recursive, mul, presentation_check, GreenElem};
use hopfu::umod::Label;
use proptest::prelude::*;

fn basis(p: u32, l: u32, i: u32) -> GreenElem {
    GreenElem::basis(p, 1 + (l - 1) % p, i % p).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(700))]

    #[test]
    fn commutative_and_associative_on_basis_triples(
        p in prop::sample::select(vec![2u32, 3, 5]),
        (l1, i1, l2, i2, l3, i3) in (1u32..=5, 0u32..5, 1u32..=5, 0u32..5, 1u32..=5, 0u32..5),
    ) {
        let (a, b, c) = (basis(p, l1, i1), basis(p, l2, i2), basis(p, l3, i3));
        let ab = mul(&a, &b).unwrap();
        prop_assert_eq!(&ab, &mul(&b, &a).unwrap());
        prop_assert_eq!(mul(&ab, &c).unwrap(), mul(&a, &mul(&b, &c).unwrap()).unwrap());
        prop_assert_eq!(ab.dim(), a.dim() * b.dim());
        prop_assert!(ab.to_decomposition().is_some());
    }

    #[test]
    fn distributive_on_virtual_elements(
        p in prop::sample::select(vec![2u32, 3, 5]),
        xs in prop::collection::vec((1u32..=5, 0u32..5, -3i64..4), 1..4),
        ys in prop::collection::vec((1u32..=5, 0u32..5, -3i64..4), 1..4),
        zs in prop::collection::vec((1u32..=5, 0u32..5, -3i64..4), 1..4),
    ) {
        let build = |v: &[(u32, u32, i64)]| {
            v.iter().fold(GreenElem::zero(p), |acc, &(l, i, n)| &acc + &basis(p, l, i).scale(n))
        };
        let (x, y, z) = (build(&xs), build(&ys), build(&zs));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!((&x * &y).dim(), x.dim() * y.dim());
        prop_assert_eq!(GreenElem::parse(p, &x.to_string()).unwrap(), x.clone());
        prop_assert_eq!(&x * &GreenElem::one(p), x);
    }
}

#[test]
fn unit_and_projectives() {
    for p in [2, 3, 5, 7] {
        for l in 1..=p {
            for i in 0..p {
                let lab = Label::new(l, i);
                assert_eq!(basis_product(p, Label::new(1, 0), lab).unwrap(), GreenElem::basis(p, l, i).unwrap());
                // a projective times anything stays projective
                let prod = basis_product(p, Label::new(p, 0), lab).unwrap();
                assert!(prod.coeffs().keys().all(|k| k.l == p), "p={p} {lab}: {prod}");
            }
        }
    }
}

#[test]
fn f_polynomials_agree_to_twenty() {
    for n in 1..=20 {
        assert_eq!(f_poly_closed(n), f_poly_recursive(n), "f_{n}");
    }
}

#[test]
fn presentation_identities() {
    for p in [2, 3, 5, 7] {
        assert!(presentation_check(p).unwrap().passed(), "p = {p}");
    }
}
