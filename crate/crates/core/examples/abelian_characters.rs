//! Invariant-factor decomposition and character table of a finite abelian group.

use verlinde::abelian::product_of_cyclic;

fn main() {
    let g = product_of_cyclic(&[2, 6]);
    println!("Z2 x Z6 has invariants {:?}, exponent {}", g.invariants(), verlinde::abelian::exponent(&g));
    for (i, psi) in g.characters().iter().enumerate() {
        let phases: Vec<String> = psi.phases.iter().map(|q| q.to_string()).collect();
        println!("  ψ{i:<2} phases {}", phases.join(" "));
    }
}
