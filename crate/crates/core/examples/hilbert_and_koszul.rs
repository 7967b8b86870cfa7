//! Hilbert functions, quadratic duals and the Frobenius certificate.

use hopfu::gf::Field;
use hopfu::quadalg::{frobenius_check, polynomial_ring, rel, QuadAlgebra};

fn main() {
    let f3 = Field::prime(3).unwrap();
    let a = QuadAlgebra::from_terms(
        &f3,
        &["x1", "x2", "x3"],
        &[
            rel(&f3, &[(1, 1, 0), (-1, 0, 1), (1, 2, 2)]),
            rel(&f3, &[(1, 2, 0), (-1, 0, 2)]),
            rel(&f3, &[(1, 2, 1), (-1, 1, 2)]),
        ],
    )
    .unwrap();
    println!("relations {:?}", a.relations_display());
    println!("hilbert {:?}", a.hilbert(6).unwrap());
    println!("overlap dim {}", a.overlap_dim());

    let dual = a.koszul_dual();
    println!("dual relations {:?}", dual.relations_display());
    let rep = frobenius_check(&dual, 8).unwrap();
    println!("dual dims {:?}, Frobenius {}", rep.dims, rep.passed());

    let poly = polynomial_ring(&f3, 2);
    println!("k[x1,x2] hilbert {:?}", poly.hilbert(5).unwrap());
    println!("its dual {:?}", frobenius_check(&poly.koszul_dual(), 8).unwrap().dims);
}
