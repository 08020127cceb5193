use std::sync::OnceLock;

use proptest::prelude::*;
use verlinde::config::Tolerances;
use verlinde::fusion::{build_fusion_ring, verlinde_rank, FusionRing};
use verlinde::modular::ModularData;

const THEORIES: &[(&str, u32)] = &[("A1", 3), ("A1", 6), ("A2", 2), ("A2", 3), ("A3", 2), ("B2", 2), ("C3", 1), ("G2", 2)];

fn theories() -> &'static Vec<(ModularData, FusionRing)> {
    static CELL: OnceLock<Vec<(ModularData, FusionRing)>> = OnceLock::new();
    CELL.get_or_init(|| {
        THEORIES
            .iter()
            .map(|&(name, k)| {
                let md = ModularData::build(name.parse().unwrap(), k, 3_000_000, Tolerances::default()).unwrap();
                let ring = build_fusion_ring(&md).unwrap();
                (md, ring)
            })
            .collect()
    })
}

fn labels_in(n: usize, max_len: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..n, 0..=max_len)
}

#[test]
fn s_matrices_are_unitary_symmetric_and_modular() {
    for (md, _) in theories() {
        let r = md.residuals();
        assert!(r.unitarity < 1e-8 && r.symmetry < 1e-8 && r.modular < 1e-6 && r.permutation < 1e-8);
        assert!(r.min_vacuum_row > 0.0);
        let c = &md.conjugation;
        assert!((0..md.len()).all(|i| c[c[i]] == i));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_is_symmetric_and_conjugation_invariant(t in 0..THEORIES.len(), seed in any::<u64>(), genus in 0u32..=2) {
        let (md, _) = &theories()[t];
        let mut labels: Vec<usize> = (0..4).map(|i| ((seed >> (8 * i)) as usize) % md.len()).collect();
        let rank = verlinde_rank(md, &labels, genus).unwrap();
        labels.reverse();
        prop_assert_eq!(verlinde_rank(md, &labels, genus).unwrap(), rank);
        let conj: Vec<usize> = labels.iter().map(|&l| md.conjugate(l)).collect();
        prop_assert_eq!(verlinde_rank(md, &conj, genus).unwrap(), rank);
    }

    #[test]
    fn vacuum_insertion_is_invisible(t in 0..THEORIES.len(), raw in labels_in(64, 3), genus in 0u32..=2) {
        let (md, _) = &theories()[t];
        let labels: Vec<usize> = raw.iter().map(|&l| l % md.len()).collect();
        let mut with_vacuum = labels.clone();
        with_vacuum.push(md.vacuum());
        prop_assert_eq!(verlinde_rank(md, &labels, genus).unwrap(), verlinde_rank(md, &with_vacuum, genus).unwrap());
    }

    #[test]
    fn sewing_two_points(t in 0..THEORIES.len(), raw in labels_in(64, 2), genus in 1u32..=2) {
        let (md, _) = &theories()[t];
        let labels: Vec<usize> = raw.iter().map(|&l| l % md.len()).collect();
        let sewn: u64 = (0..md.len())
            .map(|mu| verlinde_rank(md, &[labels.clone(), vec![mu, md.conjugate(mu)]].concat(), genus - 1).unwrap())
            .sum();
        prop_assert_eq!(verlinde_rank(md, &labels, genus).unwrap(), sewn);
    }

    #[test]
    fn fusion_ring_is_commutative_associative_unital(t in 0..THEORIES.len(), a in 0usize..64, b in 0usize..64, c in 0usize..64) {
        let (md, ring) = &theories()[t];
        let n = md.len();
        let (a, b, c) = (a % n, b % n, c % n);
        let left = ring.multiply(&ring.multiply(&ring.basis(a), &ring.basis(b)), &ring.basis(c));
        let right = ring.multiply(&ring.basis(a), &ring.multiply(&ring.basis(b), &ring.basis(c)));
        prop_assert_eq!(left, right);
        prop_assert_eq!(ring.product(a, b), ring.product(b, a));
        prop_assert_eq!(ring.product(md.vacuum(), a), vec![(a, 1)]);
        prop_assert_eq!(u64::from(ring.structure_constant(a, b, c)), verlinde_rank(md, &[a, b, md.conjugate(c)], 0).unwrap());
    }

    #[test]
    fn quantum_dimensions_multiply(t in 0..THEORIES.len(), a in 0usize..64, b in 0usize..64) {
        let (md, ring) = &theories()[t];
        let (a, b) = (a % md.len(), b % md.len());
        let lhs = md.quantum_dimension(a) * md.quantum_dimension(b);
        let rhs: f64 = ring.product(a, b).iter().map(|&(c, n)| f64::from(n) * md.quantum_dimension(c)).sum();
        prop_assert!((lhs - rhs).abs() < 1e-9);
    }
}
