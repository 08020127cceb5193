//! Modular S and T matrices of a WZW model and the charge conjugation.
//!
//! The S-matrix is the Kac–Peterson Weyl-group sum
//!
//! ```text
//! S_{λμ} = N Σ_{w ∈ W} ε(w) exp(−2πi (w(λ+ρ), μ+ρ) / (k + h∨))
//! ```
//!
//! with `N` fixed by unitarity and by `S_{ΩΩ} > 0`. Exponents are reduced
//! exactly in integer arithmetic before a single table lookup, so the only
//! rounding is in the final complex sum.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::lie::{build_algebra, AlgebraSpec, Weight, Q};
use crate::spectrum::{enumerate_spectrum, Level, Spectrum};
use crate::weyl::{generate_weyl_group, WeylGroup};

pub type CMatrix = Vec<Vec<Complex64>>;

/// S, T and the charge conjugation over the label set of a spectrum.
#[derive(Debug, Clone)]
pub struct ModularData {
    pub spectrum: Spectrum,
    pub s: CMatrix,
    pub t: Vec<Complex64>,
    /// `conjugation[λ] = λ⁺`.
    pub conjugation: Vec<usize>,
    pub tolerances: Tolerances,
}

impl ModularData {
    /// Build the algebra, its label set at `level`, and all modular data.
    pub fn build(spec: AlgebraSpec, level: u32, weyl_cap: u64, tol: Tolerances) -> Result<Self> {
        tol.validate()?;
        let alg = build_algebra(spec)?;
        let weyl = generate_weyl_group(&alg, weyl_cap)?;
        let spectrum = enumerate_spectrum(&alg, Level(level));
        Self::from_spectrum(spectrum, &weyl, tol)
    }

    pub fn from_spectrum(spectrum: Spectrum, weyl: &WeylGroup, tol: Tolerances) -> Result<Self> {
        let s = kac_peterson_s(&spectrum, weyl, tol)?;
        let t = t_matrix(&spectrum);
        let conjugation = charge_conjugation(&s, tol)?;
        let md = ModularData { spectrum, s, t, conjugation, tolerances: tol };
        let r = md.residuals();
        if r.modular > tol.modular {
            return Err(Error::NumericalInstability { check: "modular (ST)^3 = S^2", residual: r.modular });
        }
        Ok(md)
    }

    pub fn len(&self) -> usize {
        self.spectrum.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spectrum.is_empty()
    }

    pub fn vacuum(&self) -> usize {
        self.spectrum.vacuum
    }

    /// `S_{Ω,μ} / S_{Ω,Ω}`.
    pub fn quantum_dimension(&self, mu: usize) -> f64 {
        let v = self.vacuum();
        self.s[v][mu].re / self.s[v][v].re
    }

    pub fn conjugate(&self, mu: usize) -> usize {
        self.conjugation[mu]
    }

    /// Residuals of every identity the modular data must satisfy.
    pub fn residuals(&self) -> ModularResiduals {
        let n = self.len();
        let sd = dagger(&self.s);
        let unitarity = max_abs_diff(&matmul(&self.s, &sd), &identity(n));
        let symmetry = max_abs_diff(&self.s, &transpose(&self.s));
        let s2 = matmul(&self.s, &self.s);
        let perm: CMatrix = (0..n)
            .map(|i| (0..n).map(|j| complex_indicator(self.conjugation[i] == j)).collect())
            .collect();
        let permutation = max_abs_diff(&s2, &perm);
        let st: CMatrix = self
            .s
            .iter()
            .map(|row| row.iter().zip(&self.t).map(|(a, b)| a * b).collect())
            .collect();
        let st3 = matmul(&matmul(&st, &st), &st);
        let modular = max_abs_diff(&st3, &s2);
        let v = self.vacuum();
        let min_vacuum_row = self.s[v].iter().map(|z| z.re).fold(f64::INFINITY, f64::min);
        let vacuum_row_imag = self.s[v].iter().map(|z| z.im.abs()).fold(0.0, f64::max);
        ModularResiduals { unitarity, symmetry, permutation, modular, min_vacuum_row, vacuum_row_imag }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModularResiduals {
    pub unitarity: f64,
    pub symmetry: f64,
    /// `‖S² − C‖_max` against the rounded permutation.
    pub permutation: f64,
    /// `‖(ST)³ − S²‖_max`.
    pub modular: f64,
    pub min_vacuum_row: f64,
    pub vacuum_row_imag: f64,
}

/// Exact Kac–Peterson exponents, reduced modulo `modulus`.
///
/// `phase_index(x, y) = (x, y) · denom (mod modulus)` where
/// `modulus = denom · (k + h∨)`, so the phase is `exp(−2πi · index / modulus)`.
pub(crate) struct PhaseTable {
    form: Vec<Vec<i64>>,
    pub(crate) modulus: i64,
    table: Vec<Complex64>,
}

impl PhaseTable {
    pub(crate) fn new(spectrum: &Spectrum) -> Self {
        let (form, denom) = spectrum.algebra.scaled_form();
        let modulus = denom * spectrum.height();
        let table = (0..modulus)
            .map(|e| Complex64::from_polar(1.0, -2.0 * PI * e as f64 / modulus as f64))
            .collect();
        PhaseTable { form, modulus, table }
    }

    /// `form · y` as an integer vector, so that pairings become dot products.
    pub(crate) fn lower(&self, y: &[i64]) -> Vec<i64> {
        self.form.iter().map(|row| row.iter().zip(y).map(|(a, b)| a * b).sum()).collect()
    }

    pub(crate) fn phase(&self, x: &[i64], lowered_y: &[i64]) -> Complex64 {
        let dot: i64 = x.iter().zip(lowered_y).map(|(a, b)| a * b).sum();
        self.table[dot.rem_euclid(self.modulus) as usize]
    }
}

pub(crate) fn shifted(spectrum: &Spectrum, idx: usize) -> Weight {
    spectrum.dynkin(idx).iter().zip(&spectrum.algebra.rho).map(|(a, b)| a + b).collect()
}

/// Signed Weyl sum `Σ_w ε(w) exp(−2πi (w x, y)/(k+h∨))` for every pair of
/// rows/columns, given the orbits of the row weights.
pub(crate) fn weyl_sums(
    phases: &PhaseTable,
    row_orbits: &[Vec<(Weight, i8)>],
    columns: &[Weight],
) -> CMatrix {
    let lowered: Vec<Vec<i64>> = columns.iter().map(|y| phases.lower(y)).collect();
    row_orbits
        .par_iter()
        .map(|orbit| {
            lowered
                .iter()
                .map(|ly| {
                    orbit.iter().fold(Complex64::zero(), |acc, (wx, sign)| {
                        let p = phases.phase(wx, ly);
                        if *sign > 0 {
                            acc + p
                        } else {
                            acc - p
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// The Kac–Peterson S-matrix, normalized by unitarity and `S_{ΩΩ} > 0`.
pub fn kac_peterson_s(spectrum: &Spectrum, weyl: &WeylGroup, tol: Tolerances) -> Result<CMatrix> {
    if weyl.rank() != spectrum.algebra.rank() {
        return Err(Error::DimensionMismatch { expected: spectrum.algebra.rank(), got: weyl.rank() });
    }
    let n = spectrum.len();
    let phases = PhaseTable::new(spectrum);
    let shifted_weights: Vec<Weight> = (0..n).map(|i| shifted(spectrum, i)).collect();
    let orbits: Vec<Vec<(Weight, i8)>> = shifted_weights.iter().map(|x| weyl.orbit_with_signs(x)).collect();
    let mut s = weyl_sums(&phases, &orbits, &shifted_weights);

    let v = spectrum.vacuum;
    let anchor = s[v][v];
    let row_norm = s[v].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if anchor.norm() == 0.0 || row_norm == 0.0 {
        return Err(Error::NumericalInstability { check: "normalization", residual: f64::INFINITY });
    }
    let scale = anchor.conj() / (anchor.norm() * row_norm);
    s.iter_mut().flatten().for_each(|z| *z *= scale);

    let unitarity = max_abs_diff(&matmul(&s, &dagger(&s)), &identity(n));
    if unitarity > tol.num {
        return Err(Error::NumericalInstability { check: "unitarity", residual: unitarity });
    }
    let symmetry = max_abs_diff(&s, &transpose(&s));
    if symmetry > tol.num {
        return Err(Error::NumericalInstability { check: "symmetry", residual: symmetry });
    }
    Ok(s)
}

/// `T_λ = exp(2πi (Δ_λ − c/24))`, reduced modulo 1 exactly.
pub fn t_matrix(spectrum: &Spectrum) -> Vec<Complex64> {
    let c24 = spectrum.central_charge / Q::from_integer(24);
    spectrum.conformal_weights.iter().map(|&d| phase_of_rational(d - c24)).collect()
}

/// `exp(2πi q)` with `q` reduced to `[0, 1)` before conversion.
pub fn phase_of_rational(q: Q) -> Complex64 {
    let frac = q - q.floor();
    Complex64::from_polar(1.0, 2.0 * PI * crate::lie::q_to_f64(frac))
}

/// Round `S²` to a permutation matrix and return it as `λ ↦ λ⁺`.
pub fn charge_conjugation(s: &CMatrix, tol: Tolerances) -> Result<Vec<usize>> {
    let n = s.len();
    let s2 = matmul(s, s);
    let mut perm = Vec::with_capacity(n);
    let mut residual: f64 = 0.0;
    for row in &s2 {
        let (j, _) = row
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
            .expect("non-empty row");
        for (c, z) in row.iter().enumerate() {
            residual = residual.max((z - complex_indicator(c == j)).norm());
        }
        perm.push(j);
    }
    let mut hit = vec![false; n];
    let bijective = perm.iter().all(|&j| !std::mem::replace(&mut hit[j], true));
    let involution = (0..n).all(|i| perm[perm[i]] == i);
    if residual > tol.num || !bijective || !involution {
        return Err(Error::NotAPermutation { residual });
    }
    Ok(perm)
}

fn complex_indicator(b: bool) -> Complex64 {
    if b {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::zero()
    }
}

pub fn identity(n: usize) -> CMatrix {
    (0..n).map(|i| (0..n).map(|j| complex_indicator(i == j)).collect()).collect()
}

pub fn matmul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(Complex64::zero(), |acc, k| acc + row[k] * b[k][j]))
                .collect()
        })
        .collect()
}

pub fn dagger(a: &CMatrix) -> CMatrix {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    (0..cols).map(|j| (0..rows).map(|i| a[i][j].conj()).collect()).collect()
}

pub fn transpose(a: &CMatrix) -> CMatrix {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    (0..cols).map(|j| (0..rows).map(|i| a[i][j]).collect()).collect()
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// `‖A A† − 1‖_max`.
pub fn unitarity_residual(a: &CMatrix) -> f64 {
    max_abs_diff(&matmul(a, &dagger(a)), &identity(a.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn md(name: &str, k: u32) -> ModularData {
        ModularData::build(name.parse().unwrap(), k, 3_000_000, Tolerances::default()).unwrap()
    }

    // su(2)_k closed form, independent of the Weyl sum
    fn su2_s(k: u32, a: usize, b: usize) -> f64 {
        let h = (k + 2) as f64;
        (2.0 / h).sqrt() * (PI * ((a + 1) * (b + 1)) as f64 / h).sin()
    }

    #[test]
    fn su2_matches_sine_formula() {
        for k in 1..=10 {
            let m = md("A1", k);
            for a in 0..=k as usize {
                for b in 0..=k as usize {
                    let z = m.s[a][b];
                    assert!((z.re - su2_s(k, a, b)).abs() < 1e-9 && z.im.abs() < 1e-9, "k={k} ({a},{b})");
                }
            }
        }
    }

    #[test]
    fn su2_level_one_and_two_values() {
        let m = md("A1", 1);
        let r = 0.5f64.sqrt();
        assert!((m.s[0][0].re - r).abs() < 1e-12 && (m.s[1][1].re + r).abs() < 1e-12);
        let m = md("A1", 2);
        assert!((m.s[0][0].re - 0.5).abs() < 1e-12);
        assert!((m.s[0][1].re - r).abs() < 1e-12);
    }

    #[test]
    fn t_phases() {
        let m = md("A1", 1);
        let expect0 = Complex64::from_polar(1.0, -2.0 * PI / 24.0);
        let expect1 = Complex64::from_polar(1.0, 2.0 * PI * (0.25 - 1.0 / 24.0));
        assert!((m.t[0] - expect0).norm() < 1e-12);
        assert!((m.t[1] - expect1).norm() < 1e-12);
        let m = md("A1", 2);
        let ratio = m.t[1] / m.t[0];
        assert!((ratio - Complex64::from_polar(1.0, 2.0 * PI * 3.0 / 16.0)).norm() < 1e-12);
    }

    #[test]
    fn conjugation() {
        for k in 1..=5 {
            let m = md("A1", k);
            assert!(m.conjugation.iter().enumerate().all(|(i, &j)| i == j));
        }
        let m = md("A2", 1);
        // labels: (0,0), (0,1), (1,0)
        assert_eq!(m.conjugation, vec![0, 2, 1]);
        for (name, k) in [("A3", 2), ("D5", 1), ("E6", 1)] {
            let m = md(name, k);
            assert_eq!(m.conjugate(m.vacuum()), m.vacuum());
        }
    }

    #[test]
    fn modular_identities_across_series() {
        for (name, k) in [("A2", 3), ("A3", 2), ("B2", 2), ("B3", 1), ("C3", 2), ("D4", 2), ("G2", 2), ("F4", 1), ("E6", 1)] {
            let m = md(name, k);
            let r = m.residuals();
            assert!(r.unitarity < 1e-8, "{name} {k}: {r:?}");
            assert!(r.symmetry < 1e-8, "{name} {k}: {r:?}");
            assert!(r.permutation < 1e-8, "{name} {k}: {r:?}");
            assert!(r.modular < 1e-6, "{name} {k}: {r:?}");
            assert!(r.min_vacuum_row > 0.0 && r.vacuum_row_imag < 1e-8, "{name} {k}: {r:?}");
            for mu in 0..m.len() {
                assert!(m.quantum_dimension(mu) >= 1.0 - 1e-9);
            }
        }
    }

    #[test]
    fn not_a_permutation_is_rejected() {
        let h = 0.5f64.sqrt();
        let bad: CMatrix = vec![
            vec![Complex64::new(h, 0.0), Complex64::new(h, 0.0)],
            vec![Complex64::new(h, 0.0), Complex64::new(0.0, h)],
        ];
        assert!(matches!(charge_conjugation(&bad, Tolerances::default()), Err(Error::NotAPermutation { .. })));
    }

    #[test]
    fn rational_phase_is_reduced() {
        let z = phase_of_rational(Q::new(7, 4));
        assert!((z - Complex64::new(0.0, -1.0)).norm() < 1e-15);
    }
}
