//! Timing on iterated barycentric subdivisions of a few seed complexes.
//!
//! `cargo run --release --example scaling [max_rounds]`

use std::time::Instant;

use atmodel::{coops, fixtures, ATModel};

fn main() {
    let rounds: usize = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(2);
    println!(
        "{:<12} {:>5} {:>8} {:>10} {:>10} {:>10}  betti",
        "complex", "round", "m", "model ms", "verify ms", "ring ms"
    );
    for name in ["triangle", "rp2", "torus", "tetrahedron"] {
        let mut k = fixtures::load(name).unwrap();
        for round in 0..=rounds {
            let t = Instant::now();
            let m = ATModel::new(k.clone());
            let build = t.elapsed();
            let t = Instant::now();
            let ok = m.verify_contraction().is_empty();
            let verify = t.elapsed();
            let t = Instant::now();
            let products = coops::cohomology_ring(&m).len();
            let ring = t.elapsed();
            assert!(ok, "contraction failed on {name} round {round}");
            println!(
                "{:<12} {:>5} {:>8} {:>10.1} {:>10.1} {:>10.1}  {:?} ({products} constants)",
                name,
                round,
                k.len(),
                build.as_secs_f64() * 1e3,
                verify.as_secs_f64() * 1e3,
                ring.as_secs_f64() * 1e3,
                m.betti_numbers()
            );
            if round < rounds {
                k = fixtures::barycentric(&k).unwrap();
            }
        }
    }
}
