//! Certify every catalog family at its smallest allowed characteristic, then
//! run the negative controls.

use std::time::Instant;

use hopfu::families::{find_family, negative_controls, sample_instances, verify, CATALOG_IDS};

fn main() {
    let start = Instant::now();
    for id in CATALOG_IDS.iter().copied().chain(["t05-3-alt"]) {
        let p = find_family(id).unwrap().smallest_p();
        for inst in sample_instances(id, p).unwrap() {
            let rep = verify(&inst, 6);
            println!(
                "{:<10} p={} {:<40} {}",
                id,
                p,
                format!("{:?}", rep.params),
                if rep.passed { "pass".to_string() } else { format!("FAIL {:?}", rep.failed_checks()) }
            );
        }
    }
    println!();
    for spec in negative_controls() {
        let p = spec.smallest_p();
        for inst in sample_instances(spec.id, p).unwrap() {
            let rep = verify(&inst, 6);
            println!("{:<18} p={} {:?} failing: {:?}", spec.id, p, rep.params, rep.failed_checks());
        }
    }
    println!("\nelapsed {:.2?}", start.elapsed());
}
