//! Finite fields and exact linear algebra.

use hopfu::gf::{Field, Matrix, Subspace};

fn main() {
    let f9 = Field::new(3, 2, None).unwrap();
    println!("F_9 modulus coefficients {:?}", f9.modulus());
    let t = f9.from_coeffs(&[0, 1]).unwrap();
    for e in 0..8 {
        println!("t^{e} = {}", f9.format(f9.pow(t, e)));
    }
    println!("1/t = {}", f9.format(f9.inv(t).unwrap()));

    let f5 = Field::prime(5).unwrap();
    let a = Matrix::from_ints(&f5, 3, 4, &[1, 2, 3, 4, 2, 4, 1, 3, 3, 1, 0, 2]);
    let r = a.rref();
    println!("rank {} pivots {:?}", r.rank, r.pivots);
    let ker = a.kernel();
    println!("kernel dim {}", ker.dim());

    let x = Subspace::span(&f5, 4, &[a.row(0).to_vec(), a.row(2).to_vec()]);
    let y = ker.clone();
    println!(
        "dim X = {}, dim Y = {}, dim X+Y = {}, dim X∩Y = {}",
        x.dim(),
        y.dim(),
        x.sum(&y).unwrap().dim(),
        x.intersect(&y).unwrap().dim()
    );
}
