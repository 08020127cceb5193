use std::sync::OnceLock;

use proptest::prelude::*;
use verlinde::config::Tolerances;
use verlinde::currents::{find_simple_currents, CurrentGroup};
use verlinde::fusion::build_fusion_ring;
use verlinde::modular::ModularData;
use verlinde::orbit::{build_current_family, decompose, CurrentFamily, SjPhase};

type Setup = (ModularData, CurrentGroup, CurrentFamily, Vec<usize>);

const THEORIES: &[(&str, u32)] = &[("A1", 4), ("A1", 6), ("A2", 3), ("A3", 2), ("A3", 4), ("E6", 3), ("A5", 2)];

fn setups() -> &'static Vec<Setup> {
    static CELL: OnceLock<Vec<Setup>> = OnceLock::new();
    CELL.get_or_init(|| {
        THEORIES
            .iter()
            .map(|&(name, k)| {
                let md = ModularData::build(name.parse().unwrap(), k, 3_000_000, Tolerances::default()).unwrap();
                let ring = build_fusion_ring(&md).unwrap();
                let group = find_simple_currents(&ring, &md).unwrap();
                let family = build_current_family(&md, &group, 3_000_000, SjPhase::default()).unwrap();
                let fixed = (0..md.len())
                    .filter(|&mu| group.stabilizer(mu).elements.len() > 1)
                    .collect();
                (md, group, family, fixed)
            })
            .collect()
    })
}

#[test]
fn every_realized_s_j_is_unitary() {
    for (_, _, family, _) in setups() {
        assert!(family.sj.values().all(|m| m.unitarity_residual() < 1e-8));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The Fourier transforms always sum to the total rank, integral or not.
    #[test]
    fn fourier_sum_rule(t in 0..THEORIES.len(), picks in prop::collection::vec(0usize..64, 1..=3), genus in 0u32..=2) {
        let (md, group, family, fixed) = &setups()[t];
        prop_assume!(!fixed.is_empty());
        let labels: Vec<usize> = picks.iter().map(|&p| fixed[p % fixed.len()]).collect();
        let d = decompose(md, group, family, &labels, genus).unwrap();
        prop_assert!(d.sum_residual < 1e-6);
        prop_assert_eq!(d.tuples[0].clone(), vec![md.vacuum(); labels.len()]);
        prop_assert!((d.traces[0].re - d.total_rank as f64).abs() < 1e-6);
    }
}
