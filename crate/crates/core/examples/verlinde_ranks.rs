//! Ranks of conformal-block bundles across genera, and the sewing identity
//! that relates consecutive genera.

use verlinde::config::{Tolerances, DEFAULT_WEYL_ORDER_CAP};
use verlinde::fusion::verlinde_rank;
use verlinde::modular::ModularData;

fn main() -> verlinde::Result<()> {
    let md = ModularData::build("A1".parse()?, 3, DEFAULT_WEYL_ORDER_CAP, Tolerances::default())?;
    for genus in 0..=4 {
        let empty = verlinde_rank(&md, &[], genus)?;
        let four = verlinde_rank(&md, &[1, 1, 1, 1], genus)?;
        println!("g={genus}: rank V_g = {empty:>6}, rank V_g(1,1,1,1) = {four:>6}");
    }
    let genus = 2;
    let sewn: u64 = (0..md.len())
        .map(|mu| verlinde_rank(&md, &[2, mu, md.conjugate(mu)], genus - 1))
        .sum::<verlinde::Result<u64>>()?;
    println!("rank V_2(2) = {} = Σ_μ rank V_1(2, μ, μ⁺) = {sewn}", verlinde_rank(&md, &[2], genus)?);
    Ok(())
}
