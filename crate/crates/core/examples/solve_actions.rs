//! Enumerate every U-module structure on the generators that preserves the
//! relations, for a skew polynomial ring and for k[x1,x2].

use std::collections::BTreeMap;

use hopfu::action::{solve_actions, DEFAULT_ACTION_BUDGET};
use hopfu::gf::Field;
use hopfu::quadalg::{polynomial_ring, skew_polynomial_ring};

fn main() {
    let f3 = Field::prime(3).unwrap();
    let two = f3.from_int(2);
    let q: BTreeMap<_, _> = [((0, 1), two), ((0, 2), two), ((1, 2), two)].into();
    let skew = skew_polynomial_ring(&f3, 3, &q);
    let sols = solve_actions(&skew, DEFAULT_ACTION_BUDGET).unwrap();
    let faithful = sols.iter().filter(|s| s.is_inner_faithful()).count();
    println!("skew ring, q_ij = 2: {} actions, {} inner faithful", sols.len(), faithful);

    let poly = polynomial_ring(&Field::prime(2).unwrap(), 2);
    let sols = solve_actions(&poly, DEFAULT_ACTION_BUDGET).unwrap();
    for s in sols.iter().filter(|s| s.is_inner_faithful()) {
        println!("k[x1,x2] over F_2: rho_u {} rho_w {}", s.rho_u, s.rho_w);
    }
}
