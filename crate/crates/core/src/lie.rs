//! Finite-dimensional simple Lie algebras: Cartan matrix, root system,
//! Weyl vector, dual Coxeter number and the invariant form on weights.
//!
//! Conventions:
//! - weights are integer vectors in the Dynkin (fundamental-weight) basis;
//! - `cartan[i][j] = 2 (α_i, α_j) / (α_j, α_j)`;
//! - the invariant form is normalized so that long roots have length² 2.
//!
//! All combinatorial data is exact (`i64` / [`Q`]); floating point only
//! enters later, in the modular data.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::diagram::IntMatrix;
use crate::error::{Error, Result};

/// Exact rational used for all Lie-theoretic data.
pub type Q = Ratio<i64>;

/// A weight in the Dynkin basis.
pub type Weight = Vec<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    pub fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Series> {
        Some(match c.to_ascii_uppercase() {
            'A' => Series::A,
            'B' => Series::B,
            'C' => Series::C,
            'D' => Series::D,
            'E' => Series::E,
            'F' => Series::F,
            'G' => Series::G,
            _ => return None,
        })
    }
}

/// Series letter plus rank, e.g. `A2` or `E6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraSpec {
    pub series: Series,
    pub rank: usize,
}

impl AlgebraSpec {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 4,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if ok {
            Ok(AlgebraSpec { series, rank })
        } else {
            Err(Error::InvalidRank { series: series.letter(), rank })
        }
    }

    /// Order of the Weyl group, from the classification.
    pub fn weyl_order(&self) -> u64 {
        let n = self.rank as u64;
        let fact = |m: u64| (1..=m).product::<u64>();
        match self.series {
            Series::A => fact(n + 1),
            Series::B | Series::C => (1u64 << n) * fact(n),
            Series::D => (1u64 << (n - 1)) * fact(n),
            Series::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Series::F => 1152,
            Series::G => 12,
        }
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.letter(), self.rank)
    }
}

impl FromStr for AlgebraSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let series = chars
            .next()
            .and_then(Series::from_letter)
            .ok_or_else(|| Error::ParseAlgebra(s.to_string()))?;
        let rank: usize = chars.as_str().parse().map_err(|_| Error::ParseAlgebra(s.to_string()))?;
        AlgebraSpec::new(series, rank)
    }
}

impl Serialize for AlgebraSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for AlgebraSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = String::deserialize(d)?;
        raw.parse().map_err(serde::de::Error::custom)
    }
}

/// Structural data of a finite simple Lie algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct SimpleLieAlgebraData {
    pub spec: AlgebraSpec,
    pub cartan: IntMatrix,
    /// `2 / (α_i, α_i)`; `diag(symmetrizer) · cartan` is the Gram matrix of simple coroots.
    pub symmetrizer: Vec<Q>,
    /// `(Λ_i, Λ_j)`, the inverse of the symmetrized Cartan matrix.
    pub quadratic_form: Vec<Vec<Q>>,
    /// Positive roots as coefficient vectors over the simple roots, sorted by height.
    pub positive_roots: Vec<Vec<i64>>,
    pub rho: Weight,
    pub dual_coxeter: i64,
    /// Highest root in Dynkin labels.
    pub highest_root: Weight,
    /// Coefficients of the highest root over the simple roots.
    pub marks: Vec<i64>,
    /// `(Λ_i, θ)`, the coefficients of θ^∨ over the simple coroots.
    pub comarks: Vec<i64>,
    pub dimension: usize,
}

/// Build the algebra data for `spec`.
pub fn build_algebra(spec: AlgebraSpec) -> Result<SimpleLieAlgebraData> {
    let spec = AlgebraSpec::new(spec.series, spec.rank)?;
    let gram = simple_root_gram(spec);
    let n = spec.rank;

    let cartan: IntMatrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let v = Q::from_integer(2) * gram[i][j] / gram[j][j];
                    debug_assert!(v.is_integer());
                    v.to_integer()
                })
                .collect()
        })
        .collect();
    let symmetrizer: Vec<Q> = (0..n).map(|i| Q::from_integer(2) / gram[i][i]).collect();
    let symmetrized: Vec<Vec<Q>> = (0..n)
        .map(|i| (0..n).map(|j| symmetrizer[i] * Q::from_integer(cartan[i][j])).collect())
        .collect();
    let quadratic_form = invert(&symmetrized).expect("symmetrized Cartan matrix is invertible");

    let positive_roots = positive_roots(&cartan);
    let top = positive_roots.last().expect("root system is non-empty").clone();
    let highest_root = root_to_weight(&cartan, &top);
    let rho = vec![1; n];

    let pairing = |mu: &[i64], nu: &[i64]| -> Q {
        let mut acc = Q::zero();
        for i in 0..n {
            for j in 0..n {
                acc += quadratic_form[i][j] * Q::from_integer(mu[i] * nu[j]);
            }
        }
        acc
    };
    let rho_theta = pairing(&rho, &highest_root);
    assert!(rho_theta.is_integer(), "(ρ, θ) must be an integer");
    let dual_coxeter = 1 + rho_theta.to_integer();

    let comarks: Vec<i64> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            let v = pairing(&e, &highest_root);
            assert!(v.is_integer(), "comarks are integers");
            v.to_integer()
        })
        .collect();

    Ok(SimpleLieAlgebraData {
        spec,
        dimension: n + 2 * positive_roots.len(),
        cartan,
        symmetrizer,
        quadratic_form,
        positive_roots,
        rho,
        dual_coxeter,
        highest_root,
        marks: top,
        comarks,
    })
}

impl SimpleLieAlgebraData {
    pub fn rank(&self) -> usize {
        self.spec.rank
    }

    /// `muᵀ · quadratic_form · nu`.
    pub fn inner_product(&self, mu: &[i64], nu: &[i64]) -> Result<Q> {
        let n = self.rank();
        for w in [mu, nu] {
            if w.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: w.len() });
            }
        }
        let mut acc = Q::zero();
        for i in 0..n {
            if mu[i] == 0 {
                continue;
            }
            for j in 0..n {
                acc += self.quadratic_form[i][j] * Q::from_integer(mu[i] * nu[j]);
            }
        }
        Ok(acc)
    }

    /// `(λ, θ)`, the level a weight occupies.
    pub fn level_of(&self, lambda: &[i64]) -> i64 {
        lambda.iter().zip(&self.comarks).map(|(a, b)| a * b).sum()
    }

    /// Integer matrix `N` and denominator `d` with `quadratic_form = N / d`.
    pub fn scaled_form(&self) -> (IntMatrix, i64) {
        let d = self
            .quadratic_form
            .iter()
            .flatten()
            .fold(1i64, |acc, q| num_integer::lcm(acc, *q.denom()));
        let m = self
            .quadratic_form
            .iter()
            .map(|row| row.iter().map(|q| (q * Q::from_integer(d)).to_integer()).collect())
            .collect();
        (m, d)
    }

    /// Simple root `α_i` in the Dynkin basis (row `i` of the Cartan matrix).
    pub fn simple_root(&self, i: usize) -> Weight {
        self.cartan[i].clone()
    }

    /// Simple Weyl reflection `s_i` applied to a weight.
    pub fn reflect(&self, i: usize, lambda: &[i64]) -> Weight {
        let c = lambda[i];
        lambda.iter().zip(&self.cartan[i]).map(|(l, a)| l - c * a).collect()
    }

    /// Symmetries of the Dynkin diagram, as node permutations.
    pub fn diagram_automorphisms(&self) -> Vec<Vec<usize>> {
        crate::diagram::automorphisms(&self.cartan)
    }
}

fn root_to_weight(cartan: &IntMatrix, root: &[i64]) -> Weight {
    let n = cartan.len();
    (0..n).map(|k| (0..n).map(|j| root[j] * cartan[j][k]).sum()).collect()
}

// Closure of the simple roots under simple reflections, in root coordinates.
fn positive_roots(cartan: &IntMatrix) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(beta) = queue.pop_front() {
        for i in 0..n {
            // <β, α_i^∨> = Σ_j β_j A_ji
            let pairing: i64 = (0..n).map(|j| beta[j] * cartan[j][i]).sum();
            let mut image = beta.clone();
            image[i] -= pairing;
            if seen.insert(image.clone()) {
                queue.push_back(image);
            }
        }
    }
    let mut pos: Vec<Vec<i64>> = seen.into_iter().filter(|r| r.iter().all(|&c| c >= 0)).collect();
    pos.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| a.cmp(b))
    });
    pos
}

// Gram matrix of the simple roots (Bourbaki numbering), long roots of length² 2.
fn simple_root_gram(spec: AlgebraSpec) -> Vec<Vec<Q>> {
    let n = spec.rank;
    let mut g = vec![vec![Q::zero(); n]; n];
    let int = Q::from_integer;
    let half = Q::new(1, 2);
    let link = |g: &mut Vec<Vec<Q>>, i: usize, j: usize, v: Q| {
        g[i][j] = v;
        g[j][i] = v;
    };
    match spec.series {
        Series::A | Series::D | Series::E => {
            for row in g.iter_mut().enumerate() {
                row.1[row.0] = int(2);
            }
            match spec.series {
                Series::A => (0..n - 1).for_each(|i| link(&mut g, i, i + 1, int(-1))),
                Series::D => {
                    (0..n - 2).for_each(|i| link(&mut g, i, i + 1, int(-1)));
                    link(&mut g, n - 3, n - 1, int(-1));
                }
                _ => {
                    // 1-3-4-5-6(-7-8), 2 attached to 4
                    link(&mut g, 0, 2, int(-1));
                    link(&mut g, 1, 3, int(-1));
                    (2..n - 1).for_each(|i| link(&mut g, i, i + 1, int(-1)));
                }
            }
        }
        Series::B => {
            (0..n - 1).for_each(|i| g[i][i] = int(2));
            g[n - 1][n - 1] = int(1);
            (0..n - 1).for_each(|i| link(&mut g, i, i + 1, int(-1)));
        }
        Series::C => {
            (0..n - 1).for_each(|i| g[i][i] = int(1));
            g[n - 1][n - 1] = int(2);
            (0..n - 2).for_each(|i| link(&mut g, i, i + 1, -half));
            link(&mut g, n - 2, n - 1, int(-1));
        }
        Series::F => {
            g[0][0] = int(2);
            g[1][1] = int(2);
            g[2][2] = int(1);
            g[3][3] = int(1);
            link(&mut g, 0, 1, int(-1));
            link(&mut g, 1, 2, int(-1));
            link(&mut g, 2, 3, -half);
        }
        Series::G => {
            g[0][0] = Q::new(2, 3);
            g[1][1] = int(2);
            link(&mut g, 0, 1, int(-1));
        }
    }
    g
}

/// Gauss–Jordan inverse over the rationals.
pub fn invert(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let p = a[col][col];
        a[col].iter_mut().for_each(|x| *x /= p);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                a[r].iter_mut().zip(pivot_row).for_each(|(x, y)| *x -= f * y);
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Sylvester's criterion on leading principal minors.
pub fn is_positive_definite(m: &[Vec<Q>]) -> bool {
    (1..=m.len()).all(|k| {
        let minor: Vec<Vec<Q>> = m[..k].iter().map(|r| r[..k].to_vec()).collect();
        determinant(&minor).is_positive()
    })
}

pub fn determinant(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Q::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Q::zero();
        };
        if pivot != col {
            a.swap(col, pivot);
            det = -det;
        }
        let p = a[col][col];
        det *= p;
        for r in col + 1..n {
            let f = a[r][col] / p;
            if !f.is_zero() {
                let pivot_row = a[col].clone();
                a[r].iter_mut().zip(pivot_row).for_each(|(x, y)| *x -= f * y);
            }
        }
    }
    det
}

/// Lossy conversion used at the numeric boundary.
pub fn q_to_f64(q: Q) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}
