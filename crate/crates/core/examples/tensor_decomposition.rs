//! Decompose tensor products of indecomposable U-modules two ways: by the
//! closed-form Green ring product and by brute-force linear algebra.

use hopfu::gf::Field;
use hopfu::green::basis_product;
use hopfu::umod::{decompose, standard_module, tensor, Label};

fn main() {
    let p = 3;
    let f = Field::prime(p).unwrap();
    let labels: Vec<Label> = (1..=p).flat_map(|l| (0..p).map(move |i| Label::new(l, i))).collect();
    let mut agree = 0;
    for &a in &labels {
        for &b in &labels {
            let brute = decompose(
                &tensor(&standard_module(&f, a.l, a.i).unwrap(), &standard_module(&f, b.l, b.i).unwrap()).unwrap(),
            );
            let closed = basis_product(p, a, b).unwrap();
            if closed.to_decomposition().as_ref() == Some(&brute) {
                agree += 1;
            }
            if a.i == 0 && b.i == 0 {
                println!("{a} ⊗ {b} = {brute}");
            }
        }
    }
    println!("{agree} of {} ordered pairs agree at p = {p}", labels.len() * labels.len());
}
