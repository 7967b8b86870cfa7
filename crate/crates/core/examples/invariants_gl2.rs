//! U acting on k[x1,x2] through V = M(2,i): invariants, graded pieces and the
//! annihilator.

use std::sync::Arc;

use hopfu::action::make_action;
use hopfu::gf::Field;
use hopfu::quadalg::polynomial_ring;
use hopfu::umod::standard_module;

fn main() {
    for p in [2, 3] {
        let f = Field::prime(p).unwrap();
        for i in 0..p {
            let v = standard_module(&f, 2, i).unwrap();
            let act = make_action(Arc::new(polynomial_ring(&f, 2)), v.mat_u().clone(), v.mat_w().clone()).unwrap();
            let n = 2 * p as usize + 2;
            println!("p={p} V=M(2,{i}) invariant dims {:?}", act.invariant_dims(n).unwrap());
        }
    }

    let f = Field::prime(2).unwrap();
    let v = standard_module(&f, 2, 1).unwrap();
    let act = make_action(Arc::new(polynomial_ring(&f, 2)), v.mat_u().clone(), v.mat_w().clone()).unwrap();
    for (n, d) in act.graded_decompose(8).unwrap().iter().enumerate() {
        println!("A_{n} = {d}");
    }
    println!("annihilator to degree 6 has dim {}", act.annihilator(6).unwrap().dim());
}
