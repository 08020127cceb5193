//! Surfaces with boundary: doubles, correlator counts, the classifying
//! algebra in the Cardy case and its one-dimensional representations.

use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fusion::{verlinde_rank, FusionRing};
use crate::modular::ModularData;

/// A permutation of labels preserving fusion, conformal weights mod 1 and the vacuum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FusionAutomorphism {
    pub permutation: Vec<usize>,
}

impl FusionAutomorphism {
    pub fn identity(n: usize) -> Self {
        FusionAutomorphism { permutation: (0..n).collect() }
    }

    pub fn apply(&self, label: usize) -> usize {
        self.permutation[label]
    }

    pub fn is_identity(&self) -> bool {
        self.permutation.iter().enumerate().all(|(i, &p)| i == p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientation {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BulkInsertion {
    pub label: usize,
    pub orientation: Orientation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryInsertion {
    pub label: usize,
    pub component: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelledSurface {
    pub genus: u32,
    pub boundary_components: u32,
    pub bulk: Vec<BulkInsertion>,
    pub boundary_insertions: Vec<BoundaryInsertion>,
    pub orientable: bool,
}

impl LabelledSurface {
    pub fn new(genus: u32, boundary_components: u32) -> Self {
        LabelledSurface { genus, boundary_components, bulk: Vec::new(), boundary_insertions: Vec::new(), orientable: true }
    }

    pub fn with_bulk(mut self, label: usize, orientation: Orientation) -> Self {
        self.bulk.push(BulkInsertion { label, orientation });
        self
    }

    pub fn with_boundary(mut self, label: usize, component: usize) -> Self {
        self.boundary_insertions.push(BoundaryInsertion { label, component });
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !self.orientable {
            return Err(Error::NonOrientableUnsupported);
        }
        if let Some(bad) = self.boundary_insertions.iter().find(|b| b.component >= self.boundary_components as usize) {
            return Err(Error::InvalidSurface(format!(
                "boundary insertion on component {} but the surface has {} boundary components",
                bad.component, self.boundary_components
            )));
        }
        Ok(())
    }
}

/// The double of a labelled surface as an extended curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtendedCurveData {
    pub genus: u32,
    pub connected_components: usize,
    /// Insertion labels per connected component.
    pub component_labels: Vec<Vec<usize>>,
}

impl ExtendedCurveData {
    pub fn insertion_labels(&self) -> Vec<usize> {
        self.component_labels.concat()
    }
}

/// Exhaustive search for fusion automorphisms, pruned by quantum dimension
/// and conformal weight classes.
pub fn find_fusion_automorphisms(ring: &FusionRing, md: &ModularData, cap: usize) -> Result<Vec<FusionAutomorphism>> {
    let n = ring.len();
    if n > cap {
        return Err(Error::SearchSpaceTooLarge { size: n, cap });
    }
    let tol = md.tolerances.num;
    let compatible = |a: usize, b: usize| {
        (md.spectrum.delta(a) - md.spectrum.delta(b)).fract().is_zero()
            && (md.quantum_dimension(a) - md.quantum_dimension(b)).abs() < tol
    };
    let mut found = Vec::new();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    perm[ring.unit] = ring.unit;
    used[ring.unit] = true;
    let order: Vec<usize> = (0..n).filter(|&i| i != ring.unit).collect();
    search(ring, &order, 0, &mut perm, &mut used, &compatible, &mut found);
    found.sort_by(|a: &FusionAutomorphism, b| {
        (!a.is_identity()).cmp(&!b.is_identity()).then_with(|| a.permutation.cmp(&b.permutation))
    });
    Ok(found)
}

fn search(
    ring: &FusionRing,
    order: &[usize],
    depth: usize,
    perm: &mut Vec<usize>,
    used: &mut Vec<bool>,
    compatible: &dyn Fn(usize, usize) -> bool,
    found: &mut Vec<FusionAutomorphism>,
) {
    let Some(&a) = order.get(depth) else {
        found.push(FusionAutomorphism { permutation: perm.clone() });
        return;
    };
    for image in 0..perm.len() {
        if used[image] || !compatible(a, image) {
            continue;
        }
        perm[a] = image;
        used[image] = true;
        let assigned: Vec<usize> = std::iter::once(ring.unit).chain(order[..=depth].iter().copied()).collect();
        let consistent = assigned.iter().all(|&b| {
            assigned
                .iter()
                .all(|&c| ring.coefficient(a, b, c) == ring.coefficient(perm[a], perm[b], perm[c]))
        });
        if consistent {
            search(ring, order, depth + 1, perm, used, compatible, found);
        }
        used[image] = false;
        perm[a] = usize::MAX;
    }
}

pub fn charge_conjugation_automorphism(md: &ModularData) -> FusionAutomorphism {
    FusionAutomorphism { permutation: md.conjugation.clone() }
}

/// Double a labelled surface; `b > 0` gives a connected curve of genus `2g+b−1`,
/// `b = 0` gives two copies of the surface.
pub fn build_double(surface: &LabelledSurface, omega: &FusionAutomorphism) -> Result<ExtendedCurveData> {
    surface.validate()?;
    let lift = |b: &BulkInsertion| match b.orientation {
        Orientation::Plus => (b.label, omega.apply(b.label)),
        Orientation::Minus => (omega.apply(b.label), b.label),
    };
    if surface.boundary_components == 0 {
        let (front, back): (Vec<usize>, Vec<usize>) = surface.bulk.iter().map(lift).unzip();
        return Ok(ExtendedCurveData { genus: surface.genus, connected_components: 2, component_labels: vec![front, back] });
    }
    let mut labels = Vec::with_capacity(2 * surface.bulk.len() + surface.boundary_insertions.len());
    for b in &surface.bulk {
        let (x, y) = lift(b);
        labels.extend([x, y]);
    }
    labels.extend(surface.boundary_insertions.iter().map(|b| b.label));
    Ok(ExtendedCurveData {
        genus: 2 * surface.genus + surface.boundary_components - 1,
        connected_components: 1,
        component_labels: vec![labels],
    })
}

/// Rank of the conformal-block bundle on the double, multiplied over components.
pub fn correlator_space_dim(surface: &LabelledSurface, omega: &FusionAutomorphism, md: &ModularData) -> Result<u64> {
    let double = build_double(surface, omega)?;
    double
        .component_labels
        .iter()
        .map(|labels| verlinde_rank(md, labels, double.genus))
        .product()
}

/// Classifying algebra with structure constants `Ñ_{λ₁λ₂}^{λ₃}`.
#[derive(Debug, Clone)]
pub struct ClassifyingAlgebra {
    ring: FusionRing,
}

impl ClassifyingAlgebra {
    pub fn len(&self) -> usize {
        self.ring.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ring.is_empty()
    }

    pub fn unit(&self) -> usize {
        self.ring.unit
    }

    pub fn structure_constant(&self, a: usize, b: usize, c: usize) -> u32 {
        self.ring.structure_constant(a, b, c)
    }
}

/// Only charge conjugation is supported; the structure constants are then the fusion rules.
pub fn build_classifying_algebra(ring: &FusionRing, omega: &FusionAutomorphism) -> Result<ClassifyingAlgebra> {
    if omega.permutation != ring.conjugation {
        return Err(Error::UnsupportedAutomorphism);
    }
    Ok(ClassifyingAlgebra { ring: ring.clone() })
}

#[derive(Debug, Clone)]
pub struct BoundaryCondition {
    pub name: usize,
    /// `R^a_λ` for every label `λ`.
    pub reflection: Vec<Complex64>,
    pub residual: f64,
}

/// `max |R_a R_b − Σ_c Ñ_{ab}^c R_c|`, together with `|R_Ω − 1|`.
pub fn verify_representation(r: &[Complex64], ca: &ClassifyingAlgebra) -> f64 {
    let n = ca.len();
    let mut worst = (r[ca.unit()] - 1.0).norm();
    for a in 0..n {
        for b in a..n {
            let rhs: Complex64 = (0..n).map(|c| r[c] * f64::from(ca.structure_constant(a, b, c))).sum();
            worst = worst.max((r[a] * r[b] - rhs).norm());
        }
    }
    worst
}

/// The `|I|` boundary conditions `R^a_λ = S_{λa}/S_{Ωa}`.
pub fn enumerate_boundary_conditions(ca: &ClassifyingAlgebra, md: &ModularData) -> Result<Vec<BoundaryCondition>> {
    let vac = md.vacuum();
    (0..md.len())
        .map(|a| {
            let reflection: Vec<Complex64> = (0..md.len()).map(|l| md.s[l][a] / md.s[vac][a]).collect();
            let residual = verify_representation(&reflection, ca);
            if residual > md.tolerances.num {
                return Err(Error::RepresentationVerificationFailed { label: a, residual });
            }
            Ok(BoundaryCondition { name: a, reflection, residual })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{Tolerances, DEFAULT_AUTOMORPHISM_SEARCH_CAP};
    use crate::fusion::build_fusion_ring;

    fn theory(name: &str, k: u32) -> (ModularData, FusionRing) {
        let md = ModularData::build(name.parse().unwrap(), k, 3_000_000, Tolerances::default()).unwrap();
        let ring = build_fusion_ring(&md).unwrap();
        (md, ring)
    }

    #[test]
    fn automorphisms_of_small_theories() {
        for k in 1..=5 {
            let (md, ring) = theory("A1", k);
            let autos = find_fusion_automorphisms(&ring, &md, DEFAULT_AUTOMORPHISM_SEARCH_CAP).unwrap();
            assert_eq!(autos, vec![FusionAutomorphism::identity(md.len())], "k={k}");
        }
        let (md, ring) = theory("A2", 1);
        let autos = find_fusion_automorphisms(&ring, &md, DEFAULT_AUTOMORPHISM_SEARCH_CAP).unwrap();
        assert!(autos[0].is_identity());
        assert!(autos.contains(&charge_conjugation_automorphism(&md)));
        assert_eq!(autos.len(), 2);

        let (md, ring) = theory("A2", 3);
        let err = find_fusion_automorphisms(&ring, &md, 5).unwrap_err();
        assert_eq!(err, Error::SearchSpaceTooLarge { size: 10, cap: 5 });
    }

    #[test]
    fn automorphisms_preserve_invariants() {
        for (name, k) in [("A2", 2), ("A3", 1), ("D4", 1), ("B2", 1)] {
            let (md, ring) = theory(name, k);
            for w in find_fusion_automorphisms(&ring, &md, DEFAULT_AUTOMORPHISM_SEARCH_CAP).unwrap() {
                assert_eq!(w.apply(md.vacuum()), md.vacuum());
                for a in 0..md.len() {
                    assert!((md.spectrum.delta(a) - md.spectrum.delta(w.apply(a))).fract().is_zero());
                    for b in 0..md.len() {
                        for c in 0..md.len() {
                            assert_eq!(ring.coefficient(a, b, c), ring.coefficient(w.apply(a), w.apply(b), w.apply(c)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn doubles() {
        let id = FusionAutomorphism::identity(3);
        let disc = build_double(&LabelledSurface::new(0, 1), &id).unwrap();
        assert_eq!((disc.genus, disc.connected_components), (0, 1));
        let annulus = build_double(&LabelledSurface::new(0, 2), &id).unwrap();
        assert_eq!(annulus.genus, 1);
        let torus = build_double(&LabelledSurface::new(1, 0), &id).unwrap();
        assert_eq!((torus.genus, torus.connected_components), (1, 2));

        let swap = FusionAutomorphism { permutation: vec![0, 2, 1] };
        let plus = build_double(&LabelledSurface::new(0, 0).with_bulk(1, Orientation::Plus), &swap).unwrap();
        let minus = build_double(&LabelledSurface::new(0, 0).with_bulk(1, Orientation::Minus), &swap).unwrap();
        assert_eq!(plus.component_labels, vec![vec![1], vec![2]]);
        assert_eq!(minus.component_labels, vec![vec![2], vec![1]]);
        let mut a = plus.insertion_labels();
        let mut b = minus.insertion_labels();
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b);

        let mut crosscap = LabelledSurface::new(0, 1);
        crosscap.orientable = false;
        assert_eq!(build_double(&crosscap, &id).unwrap_err(), Error::NonOrientableUnsupported);
        let bad = LabelledSurface::new(0, 1).with_boundary(0, 1);
        assert!(matches!(build_double(&bad, &id), Err(Error::InvalidSurface(_))));
    }

    #[test]
    fn correlator_dimensions() {
        let (md, ring) = theory("A1", 3);
        let c = charge_conjugation_automorphism(&md);
        for a in 0..md.len() {
            for b in 0..md.len() {
                for d in 0..md.len() {
                    let disc = LabelledSurface::new(0, 1).with_boundary(a, 0).with_boundary(b, 0).with_boundary(d, 0);
                    assert_eq!(correlator_space_dim(&disc, &c, &md).unwrap(), u64::from(ring.coefficient(a, b, d)));
                }
                let bulk_boundary = LabelledSurface::new(0, 1).with_bulk(a, Orientation::Plus).with_boundary(b, 0);
                let expected = verlinde_rank(&md, &[a, md.conjugate(a), b], 0).unwrap();
                assert_eq!(correlator_space_dim(&bulk_boundary, &c, &md).unwrap(), expected);
            }
        }
        assert_eq!(correlator_space_dim(&LabelledSurface::new(0, 0), &c, &md).unwrap(), 1);
    }

    #[test]
    fn classifying_algebra() {
        let (md, ring) = theory("A1", 1);
        let ca = build_classifying_algebra(&ring, &charge_conjugation_automorphism(&md)).unwrap();
        assert_eq!(ca.structure_constant(1, 1, 0), 1);
        assert_eq!(ca.structure_constant(1, 1, 1), 0);
        for l in 0..2 {
            for m in 0..2 {
                assert_eq!(ca.structure_constant(0, l, m), u32::from(l == m));
            }
        }
        let (md, ring) = theory("A1", 2);
        let ca = build_classifying_algebra(&ring, &charge_conjugation_automorphism(&md)).unwrap();
        assert_eq!((0..3).map(|l| ca.structure_constant(1, 1, l)).collect::<Vec<_>>(), vec![1, 0, 1]);

        let (md, ring) = theory("A2", 1);
        let id = FusionAutomorphism::identity(md.len());
        assert_eq!(build_classifying_algebra(&ring, &id).unwrap_err(), Error::UnsupportedAutomorphism);
    }

    #[test]
    fn boundary_conditions() {
        let (md, ring) = theory("A1", 1);
        let ca = build_classifying_algebra(&ring, &charge_conjugation_automorphism(&md)).unwrap();
        let bcs = enumerate_boundary_conditions(&ca, &md).unwrap();
        assert_eq!(bcs.len(), 2);
        let mut signs: Vec<f64> = bcs.iter().map(|b| b.reflection[1].re).collect();
        signs.sort_by(f64::total_cmp);
        assert!((signs[0] + 1.0).abs() < 1e-12 && (signs[1] - 1.0).abs() < 1e-12);

        for k in 1..=6 {
            let (md, ring) = theory("A1", k);
            let ca = build_classifying_algebra(&ring, &charge_conjugation_automorphism(&md)).unwrap();
            let bcs = enumerate_boundary_conditions(&ca, &md).unwrap();
            assert_eq!(bcs.len(), k as usize + 1);
            assert!(bcs.iter().all(|b| (b.reflection[md.vacuum()] - 1.0).norm() < 1e-12 && b.residual < 1e-8));
        }
    }

    #[test]
    fn representation_diagnostics() {
        let (md, ring) = theory("A2", 1);
        let ca = build_classifying_algebra(&ring, &charge_conjugation_automorphism(&md)).unwrap();
        assert_eq!(verify_representation(&vec![Complex64::new(1.0, 0.0); 3], &ca), 0.0);
        assert_eq!(verify_representation(&vec![Complex64::new(0.0, 0.0); 3], &ca), 1.0);
    }
}
