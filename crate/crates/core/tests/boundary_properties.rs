use proptest::prelude::*;
use verlinde::boundary::{
    build_classifying_algebra, build_double, charge_conjugation_automorphism, correlator_space_dim,
    enumerate_boundary_conditions, verify_representation, FusionAutomorphism, LabelledSurface, Orientation,
};
use verlinde::config::Tolerances;
use verlinde::fusion::{build_fusion_ring, verlinde_rank};
use verlinde::modular::ModularData;

fn theory(name: &str, k: u32) -> ModularData {
    ModularData::build(name.parse().unwrap(), k, 3_000_000, Tolerances::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn double_counts(g in 0u32..=5, b in 0u32..=5, bulk in prop::collection::vec((0usize..3, any::<bool>()), 0..4), boundary in prop::collection::vec(0usize..3, 0..4)) {
        prop_assume!(b > 0 || boundary.is_empty());
        let mut x = LabelledSurface::new(g, b);
        for &(l, plus) in &bulk {
            x = x.with_bulk(l, if plus { Orientation::Plus } else { Orientation::Minus });
        }
        for &l in &boundary {
            x = x.with_boundary(l, 0);
        }
        let omega = FusionAutomorphism { permutation: vec![0, 2, 1] };
        let d = build_double(&x, &omega).unwrap();
        prop_assert_eq!(d.insertion_labels().len(), 2 * bulk.len() + boundary.len());
        if b == 0 {
            prop_assert_eq!((d.genus, d.connected_components), (g, 2));
        } else {
            prop_assert_eq!((d.genus, d.connected_components), (2 * g + b - 1, 1));
        }
    }

    #[test]
    fn annulus_with_boundary_fields(k in 1u32..=5, a in 0usize..8, c in 0usize..8) {
        let md = theory("A1", k);
        let (a, c) = (a % md.len(), c % md.len());
        let omega = charge_conjugation_automorphism(&md);
        let x = LabelledSurface::new(0, 2).with_boundary(a, 0).with_boundary(c, 1);
        prop_assert_eq!(correlator_space_dim(&x, &omega, &md).unwrap(), verlinde_rank(&md, &[a, c], 1).unwrap());
    }
}

#[test]
fn cardy_representations_for_several_theories() {
    for (name, k) in [("A2", 2), ("A3", 1), ("B2", 1), ("C2", 2), ("D4", 1), ("G2", 2), ("F4", 1)] {
        let md = theory(name, k);
        let ring = build_fusion_ring(&md).unwrap();
        let ca = build_classifying_algebra(&ring, &charge_conjugation_automorphism(&md)).unwrap();
        let bcs = enumerate_boundary_conditions(&ca, &md).unwrap();
        assert_eq!(bcs.len(), md.len(), "{name} k={k}");
        for bc in &bcs {
            assert!(verify_representation(&bc.reflection, &ca) < 1e-8);
        }
    }
}
