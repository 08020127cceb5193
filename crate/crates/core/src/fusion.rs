//! Verlinde ranks of conformal-block bundles and the fusion ring.

use std::collections::HashMap;
use std::sync::RwLock;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::modular::ModularData;

/// Raw Verlinde sum `Σ_μ ∏_i (S_{λ_i μ} / S_{Ω μ}) · |S_{Ω μ}|^{2−2g}`.
pub fn verlinde_sum(md: &ModularData, labels: &[usize], genus: u32) -> Result<Complex64> {
    check_labels(md, labels)?;
    let v = md.vacuum();
    let exponent = 2 - 2 * genus as i32;
    Ok((0..md.len())
        .map(|mu| {
            let s0 = md.s[v][mu].norm();
            let prod = labels
                .iter()
                .fold(Complex64::new(1.0, 0.0), |acc, &l| acc * md.s[l][mu] / s0);
            prod * s0.powi(exponent)
        })
        .sum())
}

/// Rank of the bundle of conformal blocks of genus `genus` with insertions `labels`.
///
/// The degenerate sphere cases follow from the sum itself: no insertions
/// gives 1, one insertion gives `δ_{λ,Ω}`, two give `δ_{λ₂,λ₁⁺}`.
pub fn verlinde_rank(md: &ModularData, labels: &[usize], genus: u32) -> Result<u64> {
    let z = verlinde_sum(md, labels, genus)?;
    extract_count(z, md.tolerances.int)
}

/// Nearest non-negative integer to `z`, rejecting anything further than `tol`.
pub fn extract_count(z: Complex64, tol: f64) -> Result<u64> {
    let n = z.re.round().max(0.0);
    let residual = (z.re - n).abs().max(z.im.abs());
    if residual > tol || !residual.is_finite() {
        return Err(Error::NonIntegralRank { value: z.re, residual });
    }
    Ok(n as u64)
}

pub fn fusion_coefficient(md: &ModularData, a: usize, b: usize, c: usize) -> Result<u64> {
    verlinde_rank(md, &[a, b, c], 0)
}

fn check_labels(md: &ModularData, labels: &[usize]) -> Result<()> {
    match labels.iter().find(|&&l| l >= md.len()) {
        Some(&l) => Err(Error::LabelIndexOutOfRange(l)),
        None => Ok(()),
    }
}

fn sorted_key(a: usize, b: usize, c: usize) -> [usize; 3] {
    let mut k = [a, b, c];
    k.sort_unstable();
    k
}

/// Fusion coefficients computed on demand and memoized under a symmetric key.
///
/// The cache sits behind a `RwLock`, so one instance can be shared across threads.
pub struct FusionRules<'a> {
    md: &'a ModularData,
    cache: RwLock<HashMap<[usize; 3], u64>>,
}

impl<'a> FusionRules<'a> {
    pub fn new(md: &'a ModularData) -> Self {
        FusionRules { md, cache: RwLock::new(HashMap::new()) }
    }

    pub fn coefficient(&self, a: usize, b: usize, c: usize) -> Result<u64> {
        let key = sorted_key(a, b, c);
        if let Some(&n) = self.cache.read().expect("cache lock").get(&key) {
            return Ok(n);
        }
        let n = fusion_coefficient(self.md, key[0], key[1], key[2])?;
        self.cache.write().expect("cache lock").insert(key, n);
        Ok(n)
    }

    pub fn cached(&self) -> usize {
        self.cache.read().expect("cache lock").len()
    }
}

/// The fusion ring with all coefficients precomputed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FusionRing {
    size: usize,
    /// `N_{abc}` for all ordered triples, flattened.
    table: Vec<u32>,
    pub conjugation: Vec<usize>,
    pub unit: usize,
}

/// Compute every coefficient and verify associativity exhaustively.
pub fn build_fusion_ring(md: &ModularData) -> Result<FusionRing> {
    let n = md.len();
    let mut table = vec![0u32; n * n * n];
    for a in 0..n {
        for b in a..n {
            for c in b..n {
                let value = u32::try_from(fusion_coefficient(md, a, b, c)?).expect("fusion coefficient fits u32");
                for (x, y, z) in [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
                    table[(x * n + y) * n + z] = value;
                }
            }
        }
    }
    let ring = FusionRing { size: n, table, conjugation: md.conjugation.clone(), unit: md.vacuum() };
    ring.check_associativity()?;
    Ok(ring)
}

impl FusionRing {
    /// Construct from an explicit coefficient function; used by tests and oracles.
    pub fn from_fn(size: usize, unit: usize, conjugation: Vec<usize>, f: impl Fn(usize, usize, usize) -> u32) -> Self {
        let mut table = vec![0; size * size * size];
        for a in 0..size {
            for b in 0..size {
                for c in 0..size {
                    table[(a * size + b) * size + c] = f(a, b, c);
                }
            }
        }
        FusionRing { size, table, conjugation, unit }
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    /// `N_{abc}`, the dimension of the three-point blocks on the sphere.
    pub fn coefficient(&self, a: usize, b: usize, c: usize) -> u32 {
        self.table[(a * self.size + b) * self.size + c]
    }

    /// `N_{ab}^c = N_{a,b,c⁺}`, the structure constants of `Φ_a ★ Φ_b`.
    pub fn structure_constant(&self, a: usize, b: usize, c: usize) -> u32 {
        self.coefficient(a, b, self.conjugation[c])
    }

    /// `Φ_a ★ Φ_b` as a list of `(c, multiplicity)` with nonzero multiplicity.
    pub fn product(&self, a: usize, b: usize) -> Vec<(usize, u32)> {
        (0..self.size)
            .filter_map(|c| {
                let m = self.structure_constant(a, b, c);
                (m > 0).then_some((c, m))
            })
            .collect()
    }

    /// Multiply two ring elements given as coefficient vectors.
    pub fn multiply(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.size];
        for (a, &xa) in x.iter().enumerate() {
            if xa == 0 {
                continue;
            }
            for (b, &yb) in y.iter().enumerate() {
                if yb == 0 {
                    continue;
                }
                for (c, slot) in out.iter_mut().enumerate() {
                    *slot += xa * yb * self.structure_constant(a, b, c) as i64;
                }
            }
        }
        out
    }

    pub fn basis(&self, a: usize) -> Vec<i64> {
        let mut v = vec![0; self.size];
        v[a] = 1;
        v
    }

    /// `(Φ_a ★ Φ_b) ★ Φ_c = Φ_a ★ (Φ_b ★ Φ_c)` for every triple.
    pub fn check_associativity(&self) -> Result<()> {
        let n = self.size;
        for a in 0..n {
            for b in 0..n {
                let ab = self.multiply(&self.basis(a), &self.basis(b));
                for c in 0..n {
                    let bc = self.multiply(&self.basis(b), &self.basis(c));
                    if self.multiply(&ab, &self.basis(c)) != self.multiply(&self.basis(a), &bc) {
                        return Err(Error::AssociativityViolation(a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.size).all(|a| (0..self.size).all(|b| self.product(a, b) == self.product(b, a)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Tolerances;

    fn md(name: &str, k: u32) -> ModularData {
        ModularData::build(name.parse().unwrap(), k, 3_000_000, Tolerances::default()).unwrap()
    }

    // su(2)_k fusion rule in terms of Dynkin labels a, b, c ∈ [0, k]
    fn su2_rule(k: usize, a: usize, b: usize, c: usize) -> u64 {
        let ok = (a + b + c).is_multiple_of(2) && c <= a + b && a <= b + c && b <= a + c && a + b + c <= 2 * k;
        u64::from(ok)
    }

    #[test]
    fn torus_without_insertions_counts_labels() {
        for (name, k) in [("A1", 3), ("A2", 2), ("B2", 1), ("G2", 1)] {
            let m = md(name, k);
            assert_eq!(verlinde_rank(&m, &[], 1).unwrap(), m.len() as u64);
        }
    }

    #[test]
    fn vacuum_insertion_gives_conjugation_pairing() {
        let m = md("A2", 2);
        for a in 0..m.len() {
            for b in 0..m.len() {
                let expect = u64::from(b == m.conjugate(a));
                assert_eq!(verlinde_rank(&m, &[a, b, m.vacuum()], 0).unwrap(), expect);
                assert_eq!(verlinde_rank(&m, &[a, b], 0).unwrap(), expect);
            }
            assert_eq!(verlinde_rank(&m, &[a], 0).unwrap(), u64::from(a == m.vacuum()));
        }
        assert_eq!(verlinde_rank(&m, &[], 0).unwrap(), 1);
        assert_eq!(fusion_coefficient(&m, 0, 0, 0).unwrap(), 1);
    }

    #[test]
    fn genus_two_su2_level_one() {
        assert_eq!(verlinde_rank(&md("A1", 1), &[], 2).unwrap(), 4);
    }

    #[test]
    fn su2_fusion_matches_closed_form() {
        for k in 1..=8usize {
            let m = md("A1", k as u32);
            for a in 0..=k {
                for b in 0..=k {
                    for c in 0..=k {
                        assert_eq!(fusion_coefficient(&m, a, b, c).unwrap(), su2_rule(k, a, b, c));
                    }
                }
            }
        }
    }

    #[test]
    fn su2_products() {
        let ring = build_fusion_ring(&md("A1", 1)).unwrap();
        assert_eq!(ring.product(1, 1), vec![(0, 1)]);
        let ring = build_fusion_ring(&md("A1", 2)).unwrap();
        assert_eq!(ring.product(1, 1), vec![(0, 1), (2, 1)]);
        for mu in 0..ring.len() {
            assert_eq!(ring.product(ring.unit, mu), vec![(mu, 1)]);
        }
        assert!(ring.is_commutative());
    }

    #[test]
    fn a2_level_one_is_z3_group_ring() {
        // labels (0,0), (0,1), (1,0) carry Z3 charges 0, 2, 1
        let m = md("A2", 1);
        let charge = [0usize, 2, 1];
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    let expect = u64::from((charge[a] + charge[b] + charge[c]).is_multiple_of(3));
                    assert_eq!(fusion_coefficient(&m, a, b, c).unwrap(), expect);
                }
            }
        }
    }

    #[test]
    fn memoized_rules_agree_with_ring() {
        let m = md("B2", 2);
        let ring = build_fusion_ring(&m).unwrap();
        let rules = FusionRules::new(&m);
        for a in 0..m.len() {
            for b in 0..m.len() {
                for c in 0..m.len() {
                    assert_eq!(rules.coefficient(a, b, c).unwrap(), ring.coefficient(a, b, c) as u64);
                }
            }
        }
        let n = m.len();
        assert_eq!(rules.cached(), n * (n + 1) * (n + 2) / 6);
    }

    #[test]
    fn associativity_violation_detected() {
        // totally symmetric table with 1*1 = 0 + 2, 1*2 = 1, 2*2 = 0 + 2
        let ring = FusionRing::from_fn(3, 0, vec![0, 1, 2], |a, b, c| {
            let mut k = [a, b, c];
            k.sort_unstable();
            u32::from(matches!(k, [0, 0, 0] | [0, 1, 1] | [0, 2, 2] | [1, 1, 2] | [2, 2, 2]))
        });
        assert!(matches!(ring.check_associativity(), Err(Error::AssociativityViolation(..))));
    }

    #[test]
    fn non_integral_sum_is_rejected() {
        let err = extract_count(Complex64::new(2.4, 0.0), 1e-6).unwrap_err();
        assert!(matches!(err, Error::NonIntegralRank { .. }));
        assert!(extract_count(Complex64::new(-1.0, 0.0), 1e-6).is_err());
        assert!(extract_count(Complex64::new(3.0, 1e-3), 1e-6).is_err());
        assert_eq!(extract_count(Complex64::new(3.0 - 1e-9, 1e-10), 1e-6).unwrap(), 3);
    }

    #[test]
    fn unknown_label_index() {
        let m = md("A1", 1);
        assert_eq!(verlinde_rank(&m, &[5], 0), Err(Error::LabelIndexOutOfRange(5)));
    }

    #[test]
    fn factorization_identities() {
        for (name, k) in [("A1", 3), ("A2", 2), ("G2", 1)] {
            let m = md(name, k);
            let n = m.len();
            for g in 1..=2u32 {
                for a in 0..n {
                    let lhs = verlinde_rank(&m, &[a], g).unwrap();
                    let rhs: u64 = (0..n).map(|mu| verlinde_rank(&m, &[a, mu, m.conjugate(mu)], g - 1).unwrap()).sum();
                    assert_eq!(lhs, rhs);
                }
            }
            // splitting a four-point sphere into two three-point spheres
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        for d in 0..n {
                            let lhs = verlinde_rank(&m, &[a, b, c, d], 0).unwrap();
                            let rhs: u64 = (0..n)
                                .map(|mu| {
                                    verlinde_rank(&m, &[a, b, mu], 0).unwrap()
                                        * verlinde_rank(&m, &[c, d, m.conjugate(mu)], 0).unwrap()
                                })
                                .sum();
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn eigenvalue_vectors_separate_labels() {
        let m = md("A3", 2);
        let v = m.vacuum();
        let rows: Vec<Vec<Complex64>> = (0..m.len())
            .map(|l| (0..m.len()).map(|mu| m.s[l][mu] / m.s[v][mu]).collect())
            .collect();
        for a in 0..m.len() {
            for b in a + 1..m.len() {
                let dist = rows[a].iter().zip(&rows[b]).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
                assert!(dist > 1e-6);
            }
        }
    }
}
