//! Kac–Peterson S matrix, T phases, charge conjugation and the residuals of
//! the modular relations.

use verlinde::config::{Tolerances, DEFAULT_WEYL_ORDER_CAP};
use verlinde::modular::ModularData;

fn main() -> verlinde::Result<()> {
    let md = ModularData::build("B2".parse()?, 2, DEFAULT_WEYL_ORDER_CAP, Tolerances::default())?;
    for (i, row) in md.s.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|z| format!("{:+.4}{:+.4}i", z.re, z.im)).collect();
        println!("[{}] {}", md.spectrum.label_string(i), cells.join("  "));
    }
    println!("T = {:?}", md.t.iter().map(|z| format!("{:.4}", z.arg())).collect::<Vec<_>>());
    println!("conjugation = {:?}", md.conjugation);
    println!("{:#?}", md.residuals());
    Ok(())
}
