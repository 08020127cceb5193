//! Doubles of labelled surfaces and the dimensions of their correlator spaces.

use verlinde::boundary::{build_double, charge_conjugation_automorphism, correlator_space_dim, LabelledSurface, Orientation};
use verlinde::config::{Tolerances, DEFAULT_WEYL_ORDER_CAP};
use verlinde::modular::ModularData;

fn main() -> verlinde::Result<()> {
    let md = ModularData::build("A1".parse()?, 4, DEFAULT_WEYL_ORDER_CAP, Tolerances::default())?;
    let omega = charge_conjugation_automorphism(&md);
    let surfaces = [
        ("disc, boundary fields 2,2,2", LabelledSurface::new(0, 1).with_boundary(2, 0).with_boundary(2, 0).with_boundary(2, 0)),
        ("disc, bulk 2 and boundary 2", LabelledSurface::new(0, 1).with_bulk(2, Orientation::Plus).with_boundary(2, 0)),
        ("annulus, one field per boundary", LabelledSurface::new(0, 2).with_boundary(1, 0).with_boundary(1, 1)),
        ("closed torus", LabelledSurface::new(1, 0)),
        ("genus 1 with 2 holes", LabelledSurface::new(1, 2)),
    ];
    for (name, x) in surfaces {
        let d = build_double(&x, &omega)?;
        println!(
            "{name:<34} double genus {} components {} labels {:?} dim {}",
            d.genus,
            d.connected_components,
            d.component_labels,
            correlator_space_dim(&x, &omega, &md)?
        );
    }
    Ok(())
}
