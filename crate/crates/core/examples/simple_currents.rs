//! Simple currents of D4 at level 2: the group, its invariants, orbits and
//! stabilizers, and monodromy charges.

use verlinde::config::{Tolerances, DEFAULT_WEYL_ORDER_CAP};
use verlinde::currents::{find_simple_currents, monodromy_charge};
use verlinde::fusion::build_fusion_ring;
use verlinde::modular::ModularData;

fn main() -> verlinde::Result<()> {
    let md = ModularData::build("D4".parse()?, 2, DEFAULT_WEYL_ORDER_CAP, Tolerances::default())?;
    let ring = build_fusion_ring(&md)?;
    let group = find_simple_currents(&ring, &md)?;
    let name = |i: usize| format!("[{}]", md.spectrum.label_string(i));
    println!("current group invariants {:?}", group.abstract_group().invariants());
    for mu in 0..md.len() {
        let os = group.orbit_and_stabilizer(mu);
        let charges: Vec<String> = group
            .elements
            .iter()
            .map(|&j| monodromy_charge(&md, &group, j, mu).map(|q| q.to_string()))
            .collect::<verlinde::Result<_>>()?;
        println!(
            "{:<12} orbit size {} stabilizer {:?} charges {:?}",
            name(mu),
            os.orbit.len(),
            os.stabilizer.elements.iter().map(|&j| name(j)).collect::<Vec<_>>(),
            charges
        );
    }
    Ok(())
}
