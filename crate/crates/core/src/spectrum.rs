//! Integrable highest weights of the untwisted affine algebra at level `k`:
//! the primary labels of the WZW model, their conformal weights and the
//! Virasoro central charge.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lie::{SimpleLieAlgebraData, Weight, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Level(pub u32);

impl Level {
    pub fn k(self) -> i64 {
        self.0 as i64
    }
}

/// An integrable highest weight, identified by its finite Dynkin labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineLabel {
    pub dynkin: Weight,
    pub index: usize,
}

/// The label set of a WZW model in canonical (lexicographic) order.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub algebra: SimpleLieAlgebraData,
    pub level: Level,
    pub labels: Vec<AffineLabel>,
    pub vacuum: usize,
    /// `k · dim / (k + h∨)`.
    pub central_charge: Q,
    pub conformal_weights: Vec<Q>,
}

/// All Dynkin vectors `λ ≥ 0` with `(λ, θ) ≤ k`, sorted lexicographically.
pub fn enumerate_spectrum(alg: &SimpleLieAlgebraData, level: Level) -> Spectrum {
    let mut dynkins = Vec::new();
    let mut current = vec![0; alg.rank()];
    fill(&alg.comarks, level.k(), 0, &mut current, &mut dynkins);
    dynkins.sort();

    let labels: Vec<AffineLabel> = dynkins
        .into_iter()
        .enumerate()
        .map(|(index, dynkin)| AffineLabel { dynkin, index })
        .collect();
    let conformal_weights = labels.iter().map(|l| delta(alg, level, &l.dynkin)).collect();
    let k = level.k();
    Spectrum {
        central_charge: Q::new(k * alg.dimension as i64, k + alg.dual_coxeter),
        algebra: alg.clone(),
        level,
        vacuum: 0,
        labels,
        conformal_weights,
    }
}

fn fill(comarks: &[i64], budget: i64, pos: usize, current: &mut Weight, out: &mut Vec<Weight>) {
    if pos == comarks.len() {
        out.push(current.clone());
        return;
    }
    let mut v = 0;
    while v * comarks[pos] <= budget {
        current[pos] = v;
        fill(comarks, budget - v * comarks[pos], pos + 1, current, out);
        v += 1;
    }
    current[pos] = 0;
}

fn delta(alg: &SimpleLieAlgebraData, level: Level, lambda: &[i64]) -> Q {
    let shifted: Weight = lambda.iter().zip(&alg.rho).map(|(l, r)| l + 2 * r).collect();
    let num = alg.inner_product(lambda, &shifted).expect("weight has algebra rank");
    num / Q::from_integer(2 * (level.k() + alg.dual_coxeter))
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn k(&self) -> i64 {
        self.level.k()
    }

    /// `k + h∨`.
    pub fn height(&self) -> i64 {
        self.k() + self.algebra.dual_coxeter
    }

    pub fn index_of(&self, dynkin: &[i64]) -> Result<usize> {
        self.labels
            .binary_search_by(|l| l.dynkin.as_slice().cmp(dynkin))
            .map_err(|_| Error::UnknownLabel(dynkin.iter().map(|&x| x.max(0) as u32).collect()))
    }

    pub fn label(&self, index: usize) -> Result<&AffineLabel> {
        self.labels.get(index).ok_or(Error::LabelIndexOutOfRange(index))
    }

    pub fn dynkin(&self, index: usize) -> &Weight {
        &self.labels[index].dynkin
    }

    /// Affine Dynkin labels `(k − (λ, θ), λ_1, …, λ_r)`.
    pub fn affine_dynkin(&self, index: usize) -> Weight {
        let d = self.dynkin(index);
        let mut out = Vec::with_capacity(d.len() + 1);
        out.push(self.k() - self.algebra.level_of(d));
        out.extend_from_slice(d);
        out
    }

    /// Index of the label with the given affine Dynkin labels, if integrable.
    pub fn index_of_affine(&self, affine: &[i64]) -> Option<usize> {
        if affine.iter().any(|&x| x < 0) || affine[0] + self.algebra.level_of(&affine[1..]) != self.k() {
            return None;
        }
        self.index_of(&affine[1..]).ok()
    }

    pub fn conformal_weight(&self, label: &AffineLabel) -> Result<Q> {
        let idx = self.index_of(&label.dynkin)?;
        Ok(self.conformal_weights[idx])
    }

    pub fn delta(&self, index: usize) -> Q {
        self.conformal_weights[index]
    }

    /// Parse a comma-separated Dynkin vector such as `"1,0"`.
    pub fn parse_label(&self, raw: &str) -> Result<usize> {
        let parts: std::result::Result<Vec<i64>, _> = raw.split(',').map(|p| p.trim().parse::<i64>()).collect();
        let parts = parts.map_err(|_| Error::InvalidConfig(format!("cannot parse label `{raw}`")))?;
        if parts.len() != self.algebra.rank() {
            return Err(Error::DimensionMismatch { expected: self.algebra.rank(), got: parts.len() });
        }
        if parts.iter().any(|&x| x < 0) {
            return Err(Error::InvalidConfig(format!("negative Dynkin label in `{raw}`")));
        }
        self.index_of(&parts)
    }

    pub fn label_string(&self, index: usize) -> String {
        self.dynkin(index).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// JSON form `{algebra, level, labels, delta, c}`.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumJson {
    pub algebra: String,
    pub level: u32,
    pub labels: Vec<Weight>,
    #[serde(serialize_with = "ser_rationals")]
    pub delta: Vec<Q>,
    pub c: f64,
}

fn ser_rationals<S: Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|q| q.to_string()))
}

impl From<&Spectrum> for SpectrumJson {
    fn from(sp: &Spectrum) -> Self {
        SpectrumJson {
            algebra: sp.algebra.spec.to_string(),
            level: sp.level.0,
            labels: sp.labels.iter().map(|l| l.dynkin.clone()).collect(),
            delta: sp.conformal_weights.clone(),
            c: crate::lie::q_to_f64(sp.central_charge),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::build_algebra;

    fn spectrum(alg: &str, k: u32) -> Spectrum {
        enumerate_spectrum(&build_algebra(alg.parse().unwrap()).unwrap(), Level(k))
    }

    #[test]
    fn a1_label_sets() {
        let s = spectrum("A1", 1);
        assert_eq!(s.labels.iter().map(|l| l.dynkin.clone()).collect::<Vec<_>>(), vec![vec![0], vec![1]]);
        assert_eq!(spectrum("A1", 2).len(), 3);
        for k in 0..=20 {
            assert_eq!(spectrum("A1", k).len(), k as usize + 1);
        }
    }

    #[test]
    fn level_zero_is_vacuum_only() {
        for name in ["A1", "A3", "B2", "G2", "E6"] {
            let s = spectrum(name, 0);
            assert_eq!(s.len(), 1);
            assert!(s.labels[0].dynkin.iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn conformal_weights() {
        let s = spectrum("A1", 2);
        assert_eq!(s.delta(1), Q::new(3, 16));
        assert_eq!(s.delta(s.vacuum), Q::from_integer(0));
        let s1 = spectrum("A1", 1);
        assert_eq!(s1.conformal_weight(&s1.labels[1]).unwrap(), Q::new(1, 4));
        assert_eq!(s1.central_charge, Q::from_integer(1));
        let bogus = AffineLabel { dynkin: vec![5], index: 0 };
        assert!(matches!(s1.conformal_weight(&bogus), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn integrability_and_ordering() {
        for (name, k) in [("A2", 3), ("B2", 2), ("G2", 2), ("C3", 2)] {
            let s = spectrum(name, k);
            assert_eq!(s.vacuum, 0);
            for w in s.labels.windows(2) {
                assert!(w[0].dynkin < w[1].dynkin);
            }
            for (i, l) in s.labels.iter().enumerate() {
                assert_eq!(l.index, i);
                assert!(s.algebra.level_of(&l.dynkin) <= k as i64);
                assert!(s.delta(i) >= Q::from_integer(0));
                assert_eq!(s.index_of_affine(&s.affine_dynkin(i)), Some(i));
            }
        }
        // known counts: A2 level k has (k+1)(k+2)/2 labels
        assert_eq!(spectrum("A2", 3).len(), 10);
        assert_eq!(spectrum("G2", 1).len(), 2);
    }

    #[test]
    fn delta_is_invariant_under_diagram_symmetries() {
        for (name, k) in [("A2", 4), ("A3", 3), ("D4", 2), ("E6", 2)] {
            let s = spectrum(name, k);
            for perm in s.algebra.diagram_automorphisms() {
                for i in 0..s.len() {
                    let d = s.dynkin(i);
                    let mut image = vec![0; d.len()];
                    for (node, &target) in perm.iter().enumerate() {
                        image[target] = d[node];
                    }
                    let j = s.index_of(&image).unwrap();
                    assert_eq!(s.delta(i), s.delta(j));
                }
            }
        }
    }

    #[test]
    fn parse_labels() {
        let s = spectrum("A2", 1);
        assert_eq!(s.parse_label("1,0").unwrap(), 2);
        assert_eq!(s.parse_label("0, 1").unwrap(), 1);
        assert!(s.parse_label("1").is_err());
        assert!(s.parse_label("1,1").is_err());
        assert!(s.parse_label("x,0").is_err());
    }

    #[test]
    fn json_shape() {
        let s = spectrum("A1", 2);
        let v = serde_json::to_value(SpectrumJson::from(&s)).unwrap();
        assert_eq!(v["delta"], serde_json::json!(["0", "3/16", "1/2"]));
        assert_eq!(v["labels"], serde_json::json!([[0], [1], [2]]));
        assert_eq!(v["algebra"], "A1");
        assert_eq!(v["c"], 1.5);
    }
}
