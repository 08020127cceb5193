//! Fusion ring of A2 at level 2: products of all label pairs, read off from
//! the Verlinde formula.

use verlinde::config::{Tolerances, DEFAULT_WEYL_ORDER_CAP};
use verlinde::fusion::build_fusion_ring;
use verlinde::modular::ModularData;

fn main() -> verlinde::Result<()> {
    let md = ModularData::build("A2".parse()?, 2, DEFAULT_WEYL_ORDER_CAP, Tolerances::default())?;
    let ring = build_fusion_ring(&md)?;
    let name = |i: usize| format!("[{}]", md.spectrum.label_string(i));
    for a in 0..ring.len() {
        for b in a..ring.len() {
            let terms: Vec<String> = ring
                .product(a, b)
                .into_iter()
                .map(|(c, n)| if n == 1 { name(c) } else { format!("{n}{}", name(c)) })
                .collect();
            println!("{} x {} = {}", name(a), name(b), terms.join(" + "));
        }
    }
    println!("commutative: {}", ring.is_commutative());
    Ok(())
}
