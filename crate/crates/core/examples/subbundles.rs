//! Decompose conformal-block bundles under the group of admissible current
//! tuples and print the Fourier-transformed ranks, integral or not.

use verlinde::config::{Tolerances, DEFAULT_WEYL_ORDER_CAP};
use verlinde::currents::find_simple_currents;
use verlinde::fusion::build_fusion_ring;
use verlinde::modular::ModularData;
use verlinde::orbit::{build_current_family, decompose, SjPhase};

fn main() -> verlinde::Result<()> {
    let cases: &[(&str, u32, &[&str], u32)] = &[
        ("A1", 4, &["2", "2", "2", "2"], 0),
        ("A1", 4, &["2", "2"], 2),
        ("A2", 3, &["1,1", "1,1", "1,1"], 1),
        ("A1", 2, &["1", "1", "1", "1"], 0),
    ];
    for &(algebra, level, labels, genus) in cases {
        let md = ModularData::build(algebra.parse()?, level, DEFAULT_WEYL_ORDER_CAP, Tolerances::default())?;
        let ring = build_fusion_ring(&md)?;
        let group = find_simple_currents(&ring, &md)?;
        let family = build_current_family(&md, &group, DEFAULT_WEYL_ORDER_CAP, SjPhase::default())?;
        let idx: Vec<usize> = labels.iter().map(|l| md.spectrum.parse_label(l)).collect::<verlinde::Result<_>>()?;
        let d = decompose(&md, &group, &family, &idx, genus)?;
        let values: Vec<String> = d.values.iter().map(|z| format!("{:.3}", z.re)).collect();
        println!(
            "{algebra} k={level} {labels:?} g={genus}: total {} over {} tuples -> [{}] integral={}",
            d.total_rank,
            d.tuples.len(),
            values.join(", "),
            d.is_integral(1e-6)
        );
    }
    Ok(())
}
