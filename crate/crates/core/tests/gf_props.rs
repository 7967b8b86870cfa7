use hopfu::gf::{Field, FieldElem, Matrix, Subspace};
use proptest::prelude::*;

fn fields() -> Vec<Field> {
    vec![
        Field::prime(2).unwrap(),
        Field::prime(3).unwrap(),
        Field::new(2, 2, None).unwrap(),
        Field::prime(5).unwrap(),
        Field::new(3, 2, None).unwrap(),
    ]
}

fn elem(f: &Field, n: u32) -> FieldElem {
    f.from_packed(n % f.order()).unwrap()
}

fn matrix(f: &Field, rows: usize, cols: usize, seed: &[u32]) -> Matrix {
    let data = (0..rows * cols).map(|k| elem(f, seed[k % seed.len()].wrapping_mul(k as u32 + 7) >> 3)).collect();
    Matrix::from_vec(f, rows, cols, data)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn field_axioms(fi in 0usize..5, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = &fields()[fi];
        let (a, b, c) = (elem(f, a), elem(f, b), elem(f, c));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(a, f.neg(a)), FieldElem::ZERO);
        prop_assert_eq!(f.sub(a, b), f.add(a, f.neg(b)));
        if a.is_zero() {
            prop_assert!(f.inv(a).is_none());
        } else {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElem::ONE);
            prop_assert_eq!(f.pow(a, f.order() as u64 - 1), FieldElem::ONE);
        }
        // Frobenius is additive
        let p = f.characteristic() as u64;
        prop_assert_eq!(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)));
    }

    #[test]
    fn rref_idempotent_and_rank_of_transpose(
        fi in 0usize..5, rows in 1usize..7, cols in 1usize..7, seed in prop::collection::vec(any::<u32>(), 1..40)
    ) {
        let f = &fields()[fi];
        let m = matrix(f, rows, cols, &seed);
        let r = m.rref();
        prop_assert_eq!(&r.matrix.rref().matrix, &r.matrix);
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert_eq!(m.kernel().dim() + m.rank(), cols);
        for v in m.kernel().basis_vectors() {
            prop_assert!(m.mul_vec(&v).iter().all(|x| x.is_zero()));
        }
    }
}

fn random_subspace(f: &Field, ambient: usize, k: usize, seed: &[u32]) -> Subspace {
    let m = matrix(f, k, ambient, seed);
    Subspace::from_rows(&m)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1200))]

    #[test]
    fn dimension_formula(
        fi in prop::sample::select(vec![0usize, 1, 3]),
        ambient in 1usize..8,
        ka in 0usize..8,
        kb in 0usize..8,
        sa in prop::collection::vec(any::<u32>(), 1..30),
        sb in prop::collection::vec(any::<u32>(), 1..30),
    ) {
        let f = &fields()[fi];
        let a = random_subspace(f, ambient, ka, &sa);
        let b = random_subspace(f, ambient, kb, &sb);
        let sum = a.sum(&b).unwrap();
        let cap = a.intersect(&b).unwrap();
        prop_assert_eq!(cap.dim() + sum.dim(), a.dim() + b.dim());
        prop_assert!(sum.contains_subspace(&a).unwrap() && sum.contains_subspace(&b).unwrap());
        prop_assert!(a.contains_subspace(&cap).unwrap() && b.contains_subspace(&cap).unwrap());

        // independent route: kernel of [A; -B]^T gives pairs (x, y) with xA = yB
        if a.dim() > 0 && b.dim() > 0 {
            let stacked = a.basis().vstack(&b.basis().scale(f.neg(FieldElem::ONE)));
            let ker = stacked.transpose().kernel();
            let vecs: Vec<Vec<FieldElem>> = ker
                .basis_vectors()
                .iter()
                .map(|c| a.basis().vec_mul(&c[..a.dim()]))
                .collect();
            prop_assert_eq!(Subspace::span(f, ambient, &vecs), cap);
        }
        prop_assert_eq!(a.perp().perp(), a);
    }
}
