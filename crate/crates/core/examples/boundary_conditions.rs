//! Fusion automorphisms, the classifying algebra for charge conjugation and
//! the Cardy boundary conditions with their reflection coefficients.

use verlinde::boundary::{
    build_classifying_algebra, charge_conjugation_automorphism, enumerate_boundary_conditions, find_fusion_automorphisms,
};
use verlinde::config::{Tolerances, DEFAULT_AUTOMORPHISM_SEARCH_CAP, DEFAULT_WEYL_ORDER_CAP};
use verlinde::fusion::build_fusion_ring;
use verlinde::modular::ModularData;

fn main() -> verlinde::Result<()> {
    let md = ModularData::build("A2".parse()?, 2, DEFAULT_WEYL_ORDER_CAP, Tolerances::default())?;
    let ring = build_fusion_ring(&md)?;
    for w in find_fusion_automorphisms(&ring, &md, DEFAULT_AUTOMORPHISM_SEARCH_CAP)? {
        println!("fusion automorphism {:?}", w.permutation);
    }
    let ca = build_classifying_algebra(&ring, &charge_conjugation_automorphism(&md))?;
    for bc in enumerate_boundary_conditions(&ca, &md)? {
        let r: Vec<String> = bc.reflection.iter().map(|z| format!("{:+.3}{:+.3}i", z.re, z.im)).collect();
        println!("a=[{}] residual {:.1e}: {}", md.spectrum.label_string(bc.name), bc.residual, r.join(" "));
    }
    Ok(())
}
