//! Arithmetic in the Green ring r(U) and its presentation by a, x.

use hopfu::green::{chebyshev_class, f_poly, fpdim, presentation_check, GreenElem};
use hopfu::umod::Decomposition;

fn main() {
    let p = 3;
    let (a, x) = (GreenElem::a(p), GreenElem::x(p));
    println!("a = {a}, x = {x}");
    println!("x^2 = {}", x.pow(2));
    println!("x^3 = {}", x.pow(3));
    println!("a x = {}", &a * &x);
    for l in 1..=p {
        println!("u_{l} = {}", chebyshev_class(p, l).unwrap());
    }
    for n in 1..=5 {
        println!("f_{n}(y, z) = {}", f_poly(n));
    }
    let rep = presentation_check(p).unwrap();
    println!("presentation identities hold: {}", rep.passed());

    for (l, i) in [(1, 0), (1, 1), (2, 0), (3, 0), (3, 1)] {
        let d = Decomposition::from_pairs(p, &[((l, i), 1)]);
        println!("fpdim {d} = {:.6}", fpdim(p, &d).unwrap());
    }
    let g = GreenElem::parse(p, "M(3,0) + 2S_1 - M(2,2)").unwrap();
    println!("parsed {g}, dim {}", g.dim());
}
