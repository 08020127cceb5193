//! Acceptance criteria shared by the `selftest` subcommand and the
//! `acceptance` test target.
//!
//! Each criterion builds its own theories, compares against closed forms or
//! identities where one exists, and reports a one-line verdict.

use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::boundary::{
    build_classifying_algebra, build_double, charge_conjugation_automorphism, correlator_space_dim,
    enumerate_boundary_conditions, FusionAutomorphism, LabelledSurface,
};
use crate::config::{Tolerances, DEFAULT_WEYL_ORDER_CAP};
use crate::currents::find_simple_currents;
use crate::error::Result;
use crate::fusion::{build_fusion_ring, verlinde_rank, verlinde_sum};
use crate::modular::ModularData;
use crate::orbit::{build_current_family, decompose, trace_theta, SjPhase};

/// Theories used by criteria 2 to 5 and 7.
pub const THEORIES: &[(&str, u32)] = &[
    ("A1", 1),
    ("A1", 2),
    ("A1", 3),
    ("A1", 4),
    ("A1", 5),
    ("A1", 6),
    ("A2", 1),
    ("A2", 2),
    ("A2", 3),
    ("A3", 2),
    ("B2", 2),
    ("G2", 1),
];

/// Theories whose sub-bundle ranks are tested in criterion 6.
pub const SUBBUNDLE_THEORIES: &[(&str, u32)] = &[("A1", 2), ("A1", 4), ("A1", 6), ("A2", 3), ("A3", 2)];

pub const S_ORACLE_TOL: f64 = 1e-9;
pub const UNITARITY_TOL: f64 = 1e-8;
pub const MODULAR_TOL: f64 = 1e-6;
pub const INTEGRALITY_TOL: f64 = 1e-6;
pub const REPRESENTATION_TOL: f64 = 1e-8;
pub const RANDOM_SAMPLES: usize = 250;
pub const SEED: u64 = 0x5eed_0001;

#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "criterion {} [{verdict}] {}: {} ({} ms)", self.id, self.title, self.detail, self.elapsed_ms)
    }
}

fn timed(id: u8, title: &'static str, budget: Duration, f: impl FnOnce() -> Result<(bool, String)>) -> CriterionReport {
    let start = Instant::now();
    let outcome = f();
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    if elapsed > budget {
        passed = false;
        detail.push_str(&format!("; exceeded runtime budget of {} ms", budget.as_millis()));
    }
    CriterionReport { id, title, passed, detail, elapsed_ms: elapsed.as_millis() }
}

pub fn theory(name: &str, level: u32) -> Result<ModularData> {
    ModularData::build(name.parse()?, level, DEFAULT_WEYL_ORDER_CAP, Tolerances::default())
}

/// `S_{ab} = sqrt(2/(k+2)) sin(π(a+1)(b+1)/(k+2))` for `su(2)` at level `k`.
pub fn su2_closed_form_s(k: u32, a: usize, b: usize) -> f64 {
    let n = f64::from(k + 2);
    (2.0 / n).sqrt() * (std::f64::consts::PI * ((a + 1) * (b + 1)) as f64 / n).sin()
}

/// `N_{abc} = 1` iff `|a−b| ≤ c ≤ min(a+b, 2k−a−b)` and `a+b+c` is even.
pub fn su2_closed_form_fusion(k: usize, a: usize, b: usize, c: usize) -> u64 {
    let ok = a.abs_diff(b) <= c && c <= (a + b).min(2 * k - a - b) && (a + b + c).is_multiple_of(2);
    u64::from(ok)
}

pub fn criterion_1() -> CriterionReport {
    timed(1, "S-matrix oracle", Duration::from_secs(1), || {
        let mut worst: f64 = 0.0;
        for k in 1..=10 {
            let md = theory("A1", k)?;
            for a in 0..md.len() {
                for b in 0..md.len() {
                    worst = worst.max((md.s[a][b] - su2_closed_form_s(k, a, b)).norm());
                }
            }
        }
        Ok((worst <= S_ORACLE_TOL, format!("A1 k=1..10, max deviation {worst:.2e}")))
    })
}

pub fn criterion_2() -> CriterionReport {
    timed(2, "modular relations", Duration::from_secs(30), || {
        let mut failures = Vec::new();
        let (mut unit, mut modular): (f64, f64) = (0.0, 0.0);
        for &(name, k) in THEORIES {
            let md = theory(name, k)?;
            let r = md.residuals();
            unit = unit.max(r.unitarity).max(r.symmetry);
            modular = modular.max(r.modular);
            let n = md.len();
            let s2 = crate::modular::matmul(&md.s, &md.s);
            let permutation = (0..n).all(|i| {
                let ones: Vec<usize> = (0..n).filter(|&j| s2[i][j].re.round() == 1.0).collect();
                ones == [md.conjugation[i]]
                    && (0..n).all(|j| {
                        let z = s2[i][j];
                        z.im.round() == 0.0 && (z.re.round() == 0.0 || z.re.round() == 1.0)
                    })
            });
            if r.unitarity > UNITARITY_TOL || r.symmetry > UNITARITY_TOL || r.modular > MODULAR_TOL || !permutation {
                failures.push(format!("{name} k={k}"));
            }
        }
        Ok((
            failures.is_empty(),
            format!("{} theories, unitarity/symmetry {unit:.2e}, (ST)^3=S^2 {modular:.2e}, failures {failures:?}", THEORIES.len()),
        ))
    })
}

pub fn criterion_3() -> CriterionReport {
    timed(3, "Verlinde integrality", Duration::from_secs(60), || {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let mut worst: f64 = 0.0;
        let mut samples = 0;
        let mut failures = Vec::new();
        for &(name, k) in THEORIES {
            let md = theory(name, k)?;
            for _ in 0..RANDOM_SAMPLES {
                let genus = rng.gen_range(0..=3);
                let m = rng.gen_range(0..=4);
                let labels: Vec<usize> = (0..m).map(|_| rng.gen_range(0..md.len())).collect();
                let z = verlinde_sum(&md, &labels, genus)?;
                let n = z.re.round();
                let residual = (z.re - n).abs().max(z.im.abs());
                worst = worst.max(residual);
                if residual > INTEGRALITY_TOL || n < 0.0 {
                    failures.push(format!("{name} k={k} {labels:?} g={genus}"));
                }
                samples += 1;
            }
        }
        let mut fusion_mismatches = 0;
        for k in 1..=8usize {
            let md = theory("A1", k as u32)?;
            let ring = build_fusion_ring(&md)?;
            for a in 0..=k {
                for b in 0..=k {
                    for c in 0..=k {
                        if u64::from(ring.coefficient(a, b, c)) != su2_closed_form_fusion(k, a, b, c) {
                            fusion_mismatches += 1;
                        }
                    }
                }
            }
        }
        Ok((
            failures.is_empty() && fusion_mismatches == 0,
            format!(
                "{samples} random ranks, max residual {worst:.2e}, {} non-integral; su(2) fusion k<=8 mismatches {fusion_mismatches}",
                failures.len()
            ),
        ))
    })
}

fn tuples(n: usize, m: usize) -> Vec<Vec<usize>> {
    (0..m).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter()
            .flat_map(|t| (0..n).map(move |x| [t.clone(), vec![x]].concat()))
            .collect()
    })
}

pub fn criterion_4() -> CriterionReport {
    timed(4, "factorization identities", Duration::from_secs(60), || {
        let mut checked = 0;
        let mut violations = Vec::new();
        for &(name, k) in THEORIES {
            let md = theory(name, k)?;
            for genus in 1..=2 {
                for m in 0..=2 {
                    for labels in tuples(md.len(), m) {
                        let lhs = verlinde_rank(&md, &labels, genus)?;
                        let mut rhs = 0;
                        for mu in 0..md.len() {
                            let extended = [labels.clone(), vec![mu, md.conjugate(mu)]].concat();
                            rhs += verlinde_rank(&md, &extended, genus - 1)?;
                        }
                        if lhs != rhs {
                            violations.push(format!("{name} k={k} {labels:?} g={genus}: {lhs} vs {rhs}"));
                        }
                        checked += 1;
                    }
                }
            }
        }
        Ok((violations.is_empty(), format!("{checked} identities, {} violations", violations.len())))
    })
}

pub fn criterion_5() -> CriterionReport {
    timed(5, "trace formula at the identity", Duration::from_secs(60), || {
        let mut checked = 0;
        let mut worst: f64 = 0.0;
        for &(name, k) in THEORIES {
            let md = theory(name, k)?;
            let ring = build_fusion_ring(&md)?;
            let group = find_simple_currents(&ring, &md)?;
            let family = build_current_family(&md, &group, DEFAULT_WEYL_ORDER_CAP, SjPhase::default())?;
            for genus in 0..=2 {
                for m in 0..=3 {
                    for labels in tuples(md.len(), m) {
                        let trace = trace_theta(&md, &group, &family, &labels, genus, &vec![md.vacuum(); m])?;
                        let rank = verlinde_rank(&md, &labels, genus)?;
                        worst = worst.max((trace - rank as f64).norm());
                        checked += 1;
                    }
                }
            }
        }
        Ok((worst <= INTEGRALITY_TOL, format!("{checked} (labels, genus) pairs, max |Tr id - rank| {worst:.2e}")))
    })
}

/// One failing sub-bundle decomposition.
#[derive(Debug, Clone, Serialize)]
pub struct SubbundleViolation {
    pub algebra: String,
    pub level: u32,
    pub labels: Vec<String>,
    pub genus: u32,
    pub total_rank: u64,
    pub max_residual: f64,
    pub sum_residual: f64,
}

/// Sorted tuples of labels fixed by some nontrivial current, of every length up to `max_len`.
pub fn fixed_point_multisets(fixed: &[usize], max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn go(fixed: &[usize], start: usize, left: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !current.is_empty() {
            out.push(current.clone());
        }
        if left == 0 {
            return;
        }
        for i in start..fixed.len() {
            current.push(fixed[i]);
            go(fixed, i, left - 1, current, out);
            current.pop();
        }
    }
    go(fixed, 0, max_len, &mut current, &mut out);
    out
}

/// Every sub-bundle decomposition of criterion 6 for one theory.
pub fn subbundle_sweep(name: &str, k: u32, max_len: usize, max_genus: u32) -> Result<(usize, Vec<SubbundleViolation>)> {
    let md = theory(name, k)?;
    let ring = build_fusion_ring(&md)?;
    let group = find_simple_currents(&ring, &md)?;
    let family = build_current_family(&md, &group, DEFAULT_WEYL_ORDER_CAP, SjPhase::default())?;
    let fixed: Vec<usize> = (0..md.len())
        .filter(|&mu| group.stabilizer(mu).elements.iter().any(|&j| j != md.vacuum() && family.sj.contains_key(&j)))
        .collect();
    let mut tested = 0;
    let mut violations = Vec::new();
    for labels in fixed_point_multisets(&fixed, max_len) {
        for genus in 0..=max_genus {
            let d = decompose(&md, &group, &family, &labels, genus)?;
            tested += 1;
            if !d.is_integral(INTEGRALITY_TOL) {
                violations.push(SubbundleViolation {
                    algebra: name.to_string(),
                    level: k,
                    labels: labels.iter().map(|&l| md.spectrum.label_string(l)).collect(),
                    genus,
                    total_rank: d.total_rank,
                    max_residual: d.max_residual,
                    sum_residual: d.sum_residual,
                });
            }
        }
    }
    Ok((tested, violations))
}

pub fn criterion_6() -> CriterionReport {
    timed(6, "sub-bundle integrality", Duration::from_secs(300), || {
        let mut tested = 0;
        let mut summary = Vec::new();
        let mut first = None;
        for &(name, k) in SUBBUNDLE_THEORIES {
            let (t, violations) = subbundle_sweep(name, k, 4, 2)?;
            tested += t;
            summary.push(format!("{name} k={k}: {}/{t}", violations.len()));
            if first.is_none() {
                first = violations.into_iter().next();
            }
        }
        let detail = match &first {
            None => format!("{tested} decompositions, all integral"),
            Some(v) => format!(
                "{tested} decompositions, non-integral per theory [{}]; first finding {} k={} labels {:?} g={} residual {:.3}",
                summary.join(", "),
                v.algebra,
                v.level,
                v.labels,
                v.genus,
                v.max_residual
            ),
        };
        Ok((first.is_none(), detail))
    })
}

pub fn criterion_7() -> CriterionReport {
    timed(7, "boundary conditions", Duration::from_secs(60), || {
        let mut failures = Vec::new();
        let mut worst: f64 = 0.0;
        let mut triples = 0;
        for &(name, k) in THEORIES {
            let md = theory(name, k)?;
            let ring = build_fusion_ring(&md)?;
            let conj = charge_conjugation_automorphism(&md);
            let ca = build_classifying_algebra(&ring, &conj)?;
            let bcs = enumerate_boundary_conditions(&ca, &md)?;
            worst = bcs.iter().map(|b| b.residual).fold(worst, f64::max);
            if bcs.len() != md.len() {
                failures.push(format!("{name} k={k}: {} boundary conditions", bcs.len()));
            }
            for t in tuples(md.len(), 3) {
                let disc = LabelledSurface::new(0, 1).with_boundary(t[0], 0).with_boundary(t[1], 0).with_boundary(t[2], 0);
                if correlator_space_dim(&disc, &conj, &md)? != u64::from(ring.coefficient(t[0], t[1], t[2])) {
                    failures.push(format!("{name} k={k} disc {t:?}"));
                }
                triples += 1;
            }
        }
        Ok((
            failures.is_empty() && worst <= REPRESENTATION_TOL,
            format!("{} theories, max representation residual {worst:.2e}, {triples} disc triples, failures {failures:?}", THEORIES.len()),
        ))
    })
}

pub fn criterion_8() -> CriterionReport {
    timed(8, "double topology", Duration::from_secs(1), || {
        let id = FusionAutomorphism::identity(1);
        let mut failures = Vec::new();
        for g in 0..=3 {
            for b in 0..=3 {
                let double = build_double(&LabelledSurface::new(g, b), &id)?;
                let expected = if b == 0 { (g, 2) } else { (2 * g + b - 1, 1) };
                if (double.genus, double.connected_components) != expected {
                    failures.push(format!("g={g} b={b}"));
                }
            }
        }
        let disc = build_double(&LabelledSurface::new(0, 1), &id)?;
        let annulus = build_double(&LabelledSurface::new(0, 2), &id)?;
        let sphere_ok = (disc.genus, disc.connected_components) == (0, 1);
        let torus_ok = (annulus.genus, annulus.connected_components) == (1, 1);
        Ok((
            failures.is_empty() && sphere_ok && torus_ok,
            format!("16 surfaces with g<=3, b<=3, failures {failures:?}"),
        ))
    })
}

pub fn run_all() -> Vec<CriterionReport> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
    ]
}
