//! Explicit enumeration of the Weyl group of a finite simple Lie algebra.

use crate::error::{Error, Result};
use crate::lie::{SimpleLieAlgebraData, Weight};

/// The Weyl group as a list of integer matrices acting on Dynkin labels,
/// together with their determinant signs.
///
/// Matrices are stored flat and row-major; entries of Weyl matrices in the
/// Dynkin basis are small, so `i16` is enough even for E7.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    rank: usize,
    matrices: Vec<i16>,
    signs: Vec<i8>,
}

/// One group element borrowed from a [`WeylGroup`].
#[derive(Debug, Clone, Copy)]
pub struct WeylElement<'a> {
    rank: usize,
    entries: &'a [i16],
    pub sign: i8,
}

impl WeylElement<'_> {
    pub fn entry(&self, row: usize, col: usize) -> i64 {
        self.entries[row * self.rank + col] as i64
    }

    pub fn apply(&self, lambda: &[i64]) -> Weight {
        (0..self.rank)
            .map(|r| (0..self.rank).map(|c| self.entry(r, c) * lambda[c]).sum())
            .collect()
    }

    pub fn matrix(&self) -> Vec<Vec<i64>> {
        (0..self.rank).map(|r| (0..self.rank).map(|c| self.entry(r, c)).collect()).collect()
    }
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.signs.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn element(&self, idx: usize) -> WeylElement<'_> {
        let sq = self.rank * self.rank;
        WeylElement {
            rank: self.rank,
            entries: &self.matrices[idx * sq..(idx + 1) * sq],
            sign: self.signs[idx],
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = WeylElement<'_>> + '_ {
        (0..self.order()).map(move |i| self.element(i))
    }

    /// Image of `lambda` under every element, in group order, with signs.
    pub fn orbit_with_signs(&self, lambda: &[i64]) -> Vec<(Weight, i8)> {
        self.iter().map(|w| (w.apply(lambda), w.sign)).collect()
    }
}

/// Enumerate the Weyl group by walking the orbit of ρ.
///
/// Each element `w` is identified with `w(ρ)`; a child `s_i w(ρ)` is accepted
/// only when `i` is the first index where the child has a negative label, so
/// every element is produced exactly once and no visited set is needed.
pub fn generate_weyl_group(alg: &SimpleLieAlgebraData, order_cap: u64) -> Result<WeylGroup> {
    let order = alg.spec.weyl_order();
    if order > order_cap {
        return Err(Error::WeylGroupTooLarge { order, cap: order_cap });
    }
    let n = alg.rank();
    let mut matrices = Vec::with_capacity(order as usize * n * n);
    let mut signs = Vec::with_capacity(order as usize);

    // columns of the matrix are the images of the fundamental weights
    let identity: Vec<Weight> = (0..n)
        .map(|j| (0..n).map(|i| i64::from(i == j)).collect())
        .collect();
    let mut stack: Vec<(Weight, Vec<Weight>, i8)> = vec![(alg.rho.clone(), identity, 1)];

    while let Some((point, columns, sign)) = stack.pop() {
        for r in 0..n {
            for col in &columns {
                matrices.push(i16::try_from(col[r]).expect("Weyl matrix entry fits in i16"));
            }
        }
        signs.push(sign);

        for i in 0..n {
            if point[i] <= 0 {
                continue;
            }
            let child = alg.reflect(i, &point);
            if child.iter().position(|&c| c < 0) != Some(i) {
                continue;
            }
            let child_columns = columns.iter().map(|c| alg.reflect(i, c)).collect();
            stack.push((child, child_columns, -sign));
        }
    }

    assert_eq!(signs.len() as u64, order, "orbit walk must visit the whole group");
    Ok(WeylGroup { rank: n, matrices, signs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::build_algebra;
    use std::collections::HashSet;

    fn group(name: &str) -> (SimpleLieAlgebraData, WeylGroup) {
        let alg = build_algebra(name.parse().unwrap()).unwrap();
        let w = generate_weyl_group(&alg, 10_000_000).unwrap();
        (alg, w)
    }

    fn compose(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let n = a.len();
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
            .collect()
    }

    fn det(m: &[Vec<i64>]) -> i64 {
        let q: Vec<Vec<crate::lie::Q>> = m
            .iter()
            .map(|r| r.iter().map(|&x| crate::lie::Q::from_integer(x)).collect())
            .collect();
        crate::lie::determinant(&q).to_integer()
    }

    #[test]
    fn a1_group() {
        let (_, w) = group("A1");
        assert_eq!(w.order(), 2);
        let mut seen: Vec<(Vec<Vec<i64>>, i8)> = w.iter().map(|e| (e.matrix(), e.sign)).collect();
        seen.sort();
        assert_eq!(seen, vec![(vec![vec![-1]], -1), (vec![vec![1]], 1)]);
    }

    #[test]
    fn orders_match_classification() {
        for (name, order) in [("A2", 6), ("A3", 24), ("B2", 8), ("C3", 48), ("D4", 192), ("G2", 12)] {
            assert_eq!(group(name).1.order(), order, "{name}");
        }
        assert_eq!(group("F4").1.order(), 1152);
    }

    #[test]
    fn closure_and_sign_character() {
        for name in ["A2", "B2", "G2", "A3"] {
            let (alg, w) = group(name);
            let mats: HashSet<Vec<Vec<i64>>> = w.iter().map(|e| e.matrix()).collect();
            assert_eq!(mats.len(), w.order());
            assert!(mats.contains(&(0..alg.rank()).map(|i| (0..alg.rank()).map(|j| i64::from(i == j)).collect()).collect::<Vec<_>>()));
            for e in w.iter() {
                assert_eq!(det(&e.matrix()), e.sign as i64);
                for i in 0..alg.rank() {
                    // s_i as a matrix
                    let si: Vec<Vec<i64>> = (0..alg.rank())
                        .map(|r| {
                            (0..alg.rank())
                                .map(|c| i64::from(r == c) - if c == i { alg.cartan[i][r] } else { 0 })
                                .collect()
                        })
                        .collect();
                    assert!(mats.contains(&compose(&si, &e.matrix())));
                }
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let alg = build_algebra("E8".parse().unwrap()).unwrap();
        let err = generate_weyl_group(&alg, crate::config::DEFAULT_WEYL_ORDER_CAP).unwrap_err();
        assert_eq!(err, Error::WeylGroupTooLarge { order: 696_729_600, cap: 3_000_000 });
    }
}
