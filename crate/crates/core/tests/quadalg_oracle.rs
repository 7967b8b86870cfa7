//! Hilbert functions checked against the ideal spanned by all `V^a ⊗ R ⊗ V^b`
//! inside the full tensor power.

use hopfu::families::{list_families, negative_controls, sample_instances};
use hopfu::gf::{Field, FieldElem, Subspace};
use hopfu::quadalg::{polynomial_ring, QuadAlgebra};
use proptest::prelude::*;

fn ideal_in_full_power(alg: &QuadAlgebra, n: usize) -> Subspace {
    let f = alg.field();
    let g = alg.n_gens();
    let total = g.pow(n as u32);
    let mut rows = Vec::new();
    for r in alg.relations().basis_vectors() {
        for a in 0..=n - 2 {
            let b = n - 2 - a;
            for prefix in 0..g.pow(a as u32) {
                for suffix in 0..g.pow(b as u32) {
                    let mut v = vec![FieldElem::ZERO; total];
                    for (mid, &c) in r.iter().enumerate() {
                        if !c.is_zero() {
                            v[(prefix * g * g + mid) * g.pow(b as u32) + suffix] = c;
                        }
                    }
                    rows.push(v);
                }
            }
        }
    }
    Subspace::span(f, total, &rows)
}

fn oracle_hilbert(alg: &QuadAlgebra, max_deg: usize) -> Vec<usize> {
    let g = alg.n_gens();
    (0..=max_deg)
        .map(|n| if n < 2 { g.pow(n as u32) } else { g.pow(n as u32) - ideal_in_full_power(alg, n).dim() })
        .collect()
}

fn random_algebra(f: &Field, g: usize, nrel: usize, seed: &[u32]) -> QuadAlgebra {
    let names: Vec<String> = (1..=g).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let rels: Vec<Vec<FieldElem>> = (0..nrel)
        .map(|r| {
            (0..g * g)
                .map(|k| {
                    let s = seed[(r * g * g + k) % seed.len()].wrapping_mul(2654435761) >> 7;
                    // sparse: most coefficients zero
                    if s.is_multiple_of(3) {
                        f.from_packed(s % f.order()).unwrap()
                    } else {
                        FieldElem::ZERO
                    }
                })
                .collect()
        })
        .collect();
    QuadAlgebra::new(f, &refs, &rels).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn recursion_matches_full_ambient_ideal(
        fi in 0usize..3,
        g in 2usize..4,
        nrel in 1usize..5,
        seed in prop::collection::vec(any::<u32>(), 4..40),
    ) {
        let f = [Field::prime(2).unwrap(), Field::prime(3).unwrap(), Field::new(2, 2, None).unwrap()][fi].clone();
        let alg = random_algebra(&f, g, nrel, &seed);
        let max_deg = if g == 2 { 6 } else { 4 };
        prop_assert_eq!(alg.hilbert(max_deg).unwrap(), oracle_hilbert(&alg, max_deg));
        prop_assert_eq!(alg.hilbert(2).unwrap()[2], g * g - alg.relations().dim());
        for n in 2..=max_deg {
            prop_assert_eq!(alg.ideal_component(n).unwrap(), ideal_in_full_power(&alg, n));
        }
        let dual = alg.koszul_dual();
        prop_assert_eq!(dual.relations().dim(), g * g - alg.relations().dim());
        let double = dual.koszul_dual();
        prop_assert_eq!(double.relations(), alg.relations());
    }
}

#[test]
fn catalog_and_controls_against_oracle() {
    for spec in list_families().into_iter().chain(negative_controls()) {
        let p = spec.smallest_p();
        for inst in sample_instances(spec.id, p).unwrap() {
            let h = inst.algebra.hilbert(5).unwrap();
            assert_eq!(h, oracle_hilbert(&inst.algebra, 5), "{} {:?}", spec.id, inst.params.display());
            if spec.id.starts_with("neg") {
                continue;
            }
            if spec.shape.n_gens() == 3 {
                assert_eq!(inst.algebra.overlap_dim(), 1, "{}", spec.id);
            }
            let dual = inst.algebra.koszul_dual();
            assert_eq!(dual.koszul_dual().relations(), inst.algebra.relations());
        }
    }
}

#[test]
fn polynomial_rings() {
    for p in [2, 3, 5] {
        let f = Field::prime(p).unwrap();
        for g in 1..=4 {
            let alg = polynomial_ring(&f, g);
            let h = alg.hilbert(5).unwrap();
            let want: Vec<usize> = hopfu::families::polynomial_hilbert(g, 5);
            assert_eq!(h, want, "p={p} g={g}");
        }
    }
}
