//! Fold the affine diagram along each simple current and print the orbit Lie
//! algebra, the fixed points and the matrix S^J.

use verlinde::config::{Tolerances, DEFAULT_WEYL_ORDER_CAP};
use verlinde::currents::find_simple_currents;
use verlinde::fusion::build_fusion_ring;
use verlinde::modular::ModularData;
use verlinde::orbit::{build_current_family, SjPhase};

fn main() -> verlinde::Result<()> {
    for (algebra, level) in [("A3", 4), ("B2", 2), ("C3", 2), ("E6", 3)] {
        let md = ModularData::build(algebra.parse()?, level, DEFAULT_WEYL_ORDER_CAP, Tolerances::default())?;
        let ring = build_fusion_ring(&md)?;
        let group = find_simple_currents(&ring, &md)?;
        let family = build_current_family(&md, &group, DEFAULT_WEYL_ORDER_CAP, SjPhase::default())?;
        for (j, data) in &family.orbit_data {
            let sj = &family.sj[j];
            println!(
                "{algebra} k={level} J=[{}]: orbits {:?}, folded {:?} = {}, level {:?}, {} fixed points, unitarity {:.1e}",
                md.spectrum.label_string(*j),
                data.orbits,
                data.folded_cartan,
                data.classification,
                data.induced_level,
                sj.len(),
                sj.unitarity_residual()
            );
            for row in &sj.matrix {
                println!("    {}", row.iter().map(|z| format!("{:+.4}{:+.4}i", z.re, z.im)).collect::<Vec<_>>().join("  "));
            }
        }
    }
    Ok(())
}
