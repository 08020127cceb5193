//! Integrable labels of a WZW model with conformal weights and central charge.
//!
//! `cargo run --example spectrum -- E6 2`

use verlinde::lie::build_algebra;
use verlinde::spectrum::{enumerate_spectrum, Level};

fn main() -> verlinde::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let algebra = args.first().map_or("A2", String::as_str);
    let level: u32 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let alg = build_algebra(algebra.parse()?)?;
    let sp = enumerate_spectrum(&alg, Level(level));
    println!("{algebra} at level {level}: c = {}, {} labels", sp.central_charge, sp.len());
    for i in 0..sp.len() {
        println!("  {:>3}  [{}]  affine {:?}  Δ = {}", i, sp.label_string(i), sp.affine_dynkin(i), sp.delta(i));
    }
    Ok(())
}
