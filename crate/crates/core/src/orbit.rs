//! Orbit Lie algebras of simple currents, the matrices `S^J`, traces of
//! admissible tuples on conformal blocks and their Fourier transforms.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use serde::Serialize;

use crate::abelian::Character;
use crate::currents::{admissible_tuple_group, AdmissibleTupleGroup, CurrentGroup};
use crate::diagram::{self, IntMatrix};
use crate::error::{Error, Result};
use crate::fusion::{extract_count, verlinde_rank};
use num_traits::{One, Zero};

use crate::lie::{build_algebra, AlgebraSpec, Series, SimpleLieAlgebraData, Weight, Q};
use crate::modular::{dagger, identity, matmul, max_abs_diff, shifted, weyl_sums, CMatrix, ModularData, PhaseTable};
use crate::spectrum::Spectrum;

/// Dynkin diagram of the untwisted affine algebra; node 0 is the affine node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AffineDiagram {
    pub cartan: IntMatrix,
    pub marks: Vec<i64>,
    pub comarks: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramAutomorphism {
    pub permutation: Vec<usize>,
    pub order: usize,
}

/// Type of a folded diagram, found by matching against Cartan matrix tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum FoldedType {
    /// The automorphism permutes all nodes in one orbit; the folded matrix is `[0]`.
    Trivial,
    Finite(String),
    Affine(String),
}

impl fmt::Display for FoldedType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FoldedType::Trivial => f.write_str("trivial"),
            FoldedType::Finite(s) | FoldedType::Affine(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitAlgebraData {
    pub current: usize,
    pub automorphism: DiagramAutomorphism,
    /// Node orbits, each sorted; the orbit of the affine node comes first.
    pub orbits: Vec<Vec<usize>>,
    pub folded_cartan: IntMatrix,
    pub classification: FoldedType,
    /// Level-defining weights `m_I` of the folded nodes.
    pub folded_comarks: Vec<i64>,
    /// `None` when no fixed point exists.
    pub induced_level: Option<i64>,
    /// `J`-fixed labels in canonical order.
    pub fixed_points: Vec<usize>,
    /// Orbit-algebra labels `(ℓ_I)` of the fixed points, in the same order.
    pub folded_labels: Vec<Weight>,
}

/// How the overall phase of `S^J` is fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum SjPhase {
    /// `i^{|Δ̌₊|}` times the positive unitary normalization of the Weyl sum.
    #[default]
    KacPeterson,
    /// Rotate so that the first row is real positive where possible.
    VacuumRowPositive,
}

#[derive(Debug, Clone)]
pub struct SJMatrix {
    pub current: usize,
    pub fixed_points: Vec<usize>,
    pub matrix: CMatrix,
}

impl SJMatrix {
    pub fn len(&self) -> usize {
        self.fixed_points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fixed_points.is_empty()
    }

    pub fn position(&self, label: usize) -> Option<usize> {
        self.fixed_points.binary_search(&label).ok()
    }

    pub fn entry(&self, lambda: usize, mu: usize) -> Option<Complex64> {
        Some(self.matrix[self.position(lambda)?][self.position(mu)?])
    }

    pub fn unitarity_residual(&self) -> f64 {
        max_abs_diff(&matmul(&self.matrix, &dagger(&self.matrix)), &identity(self.len()))
    }
}

/// Append the affine node attached by `−θ`.
pub fn affine_extend(alg: &SimpleLieAlgebraData) -> AffineDiagram {
    let r = alg.rank();
    let mut cartan = vec![vec![0; r + 1]; r + 1];
    cartan[0][0] = 2;
    for j in 0..r {
        cartan[0][j + 1] = -alg.highest_root[j];
        let pairing = alg
            .inner_product(&alg.simple_root(j), &alg.highest_root)
            .expect("rank matches");
        cartan[j + 1][0] = -pairing.to_integer();
        for i in 0..r {
            cartan[i + 1][j + 1] = alg.cartan[i][j];
        }
    }
    let marks = std::iter::once(1).chain(alg.marks.iter().copied()).collect();
    let comarks = std::iter::once(1).chain(alg.comarks.iter().copied()).collect();
    AffineDiagram { cartan, marks, comarks }
}

/// `(πλ)_{π(i)} = λ_i` on affine Dynkin labels.
pub fn permute_affine(perm: &[usize], affine: &[i64]) -> Weight {
    let mut out = vec![0; affine.len()];
    for (i, &p) in perm.iter().enumerate() {
        out[p] = affine[i];
    }
    out
}

fn label_action(spectrum: &Spectrum, perm: &[usize]) -> Option<Vec<usize>> {
    (0..spectrum.len())
        .map(|mu| spectrum.index_of_affine(&permute_affine(perm, &spectrum.affine_dynkin(mu))))
        .collect()
}

/// The diagram symmetry whose action on labels is `μ ↦ J★μ`.
///
/// Among several candidates the one of smallest order wins, ties broken
/// lexicographically.
pub fn automorphism_for_current(
    diag: &AffineDiagram,
    spectrum: &Spectrum,
    group: &CurrentGroup,
    current: usize,
) -> Result<DiagramAutomorphism> {
    let p = group.position(current)?;
    let target = &group.action[p];
    diagram::automorphisms(&diag.cartan)
        .into_iter()
        .filter(|perm| label_action(spectrum, perm).as_ref() == Some(target))
        .map(|perm| DiagramAutomorphism { order: diagram::permutation_order(&perm), permutation: perm })
        .min_by_key(|a| a.order)
        .ok_or(Error::NoDiagramRealization(current))
}

/// Fold the affine diagram along `omega` and match the result against known types.
pub fn fold(diag: &AffineDiagram, omega: &DiagramAutomorphism, spectrum: &Spectrum, current: usize) -> Result<OrbitAlgebraData> {
    if omega.order == 1 {
        return Err(Error::TrivialAutomorphism);
    }
    let a = &diag.cartan;
    let orbits = diagram::cycles(&omega.permutation);
    let scale: Vec<i64> = orbits
        .iter()
        .map(|orbit| {
            let connected = orbit.iter().any(|&i| orbit.iter().any(|&j| i != j && a[i][j] != 0));
            if connected { 2 } else { 1 }
        })
        .collect();
    let n = orbits.len();
    let mut folded = vec![vec![0; n]; n];
    for (row, source) in orbits.iter().enumerate() {
        for (col, target) in orbits.iter().enumerate() {
            let values: Vec<i64> = target
                .iter()
                .map(|&j| scale[col] * source.iter().map(|&i| a[i][j]).sum::<i64>())
                .collect();
            if values.iter().any(|&v| v != values[0]) {
                return Err(Error::FoldingInconsistent { row, col });
            }
            folded[row][col] = values[0];
        }
    }
    let classification = classify(&folded)?;

    // a fixed point has affine labels ℓ_I on orbit I and folded label s_I ℓ_I
    let weights: Vec<i64> = orbits
        .iter()
        .zip(&scale)
        .map(|(o, &s)| o.len() as i64 * diag.comarks[o[0]] / s)
        .collect();
    let g = weights.iter().fold(0, |acc, &w| acc.gcd(&w));
    let folded_comarks: Vec<i64> = weights.iter().map(|w| w / g).collect();
    let trivial = classification == FoldedType::Trivial;
    if !trivial {
        if let Some(row) = (0..n).find(|&i| (0..n).map(|j| folded[i][j] * folded_comarks[j]).sum::<i64>() != 0) {
            return Err(Error::FoldingInconsistent { row, col: n });
        }
    }
    let k = spectrum.k();
    let induced_level = (k % g == 0).then_some(k / g);

    let fixed_points: Vec<usize> = match label_action(spectrum, &omega.permutation) {
        Some(action) => (0..spectrum.len()).filter(|&mu| action[mu] == mu).collect(),
        None => return Err(Error::NoDiagramRealization(current)),
    };
    let folded_labels: Vec<Weight> = fixed_points
        .iter()
        .map(|&mu| {
            let affine = spectrum.affine_dynkin(mu);
            orbits.iter().zip(&scale).map(|(o, &s)| s * affine[o[0]]).collect()
        })
        .collect();
    if !trivial {
        let expected = induced_level.map_or(0, |l| count_labels(&folded_comarks, l));
        if expected != fixed_points.len() {
            return Err(Error::FoldingInconsistent { row: fixed_points.len(), col: expected });
        }
    }
    Ok(OrbitAlgebraData {
        current,
        automorphism: omega.clone(),
        orbits,
        folded_cartan: folded,
        classification,
        folded_comarks,
        induced_level,
        fixed_points,
        folded_labels,
    })
}

fn count_labels(weights: &[i64], level: i64) -> usize {
    fn go(weights: &[i64], budget: i64) -> usize {
        match weights.split_first() {
            None => usize::from(budget == 0),
            Some((&w, rest)) => (0..=budget / w).map(|x| go(rest, budget - x * w)).sum(),
        }
    }
    go(weights, level)
}

fn algebras_of_rank(rank: usize) -> Vec<SimpleLieAlgebraData> {
    [Series::A, Series::B, Series::C, Series::D, Series::E, Series::F, Series::G]
        .into_iter()
        .filter_map(|s| AlgebraSpec::new(s, rank).ok())
        .map(|spec| build_algebra(spec).expect("valid spec"))
        .collect()
}

// A_{2l}^{(2)}: a chain with root lengths² 4, 2, …, 2, 1.
fn twisted_a_even(l: usize) -> IntMatrix {
    let lengths: Vec<i64> = (0..=l).map(|i| if i == 0 { 4 } else if i == l { 1 } else { 2 }).collect();
    let gram = |i: usize, j: usize| -> i64 {
        match (i.min(j), i.max(j)) {
            (a, b) if a == b => lengths[a],
            (0, 1) => -2,
            (a, b) if b == a + 1 => -1,
            _ => 0,
        }
    };
    (0..=l).map(|i| (0..=l).map(|j| 2 * gram(i, j) / lengths[j]).collect()).collect()
}

/// Cartan matrix tables of rank `n − 1` affine and rank `n` finite types, with names.
fn candidate_types(n: usize) -> Vec<(IntMatrix, FoldedType)> {
    let mut out = Vec::new();
    if n >= 2 {
        let l = n - 1;
        for alg in algebras_of_rank(l) {
            let ext = affine_extend(&alg).cartan;
            out.push((ext.clone(), FoldedType::Affine(format!("{}^(1)", alg.spec))));
            let twisted = match alg.spec.series {
                Series::B if l >= 3 => Some(format!("A{}^(2)", 2 * l - 1)),
                Series::C => Some(format!("D{}^(2)", l + 1)),
                Series::F => Some("E6^(2)".to_string()),
                Series::G => Some("D4^(3)".to_string()),
                _ => None,
            };
            if let Some(name) = twisted {
                out.push((diagram::transpose(&ext), FoldedType::Affine(name)));
            }
        }
        out.push((twisted_a_even(l), FoldedType::Affine(format!("A{}^(2)", 2 * l))));
    }
    for alg in algebras_of_rank(n) {
        out.push((alg.cartan.clone(), FoldedType::Finite(alg.spec.to_string())));
    }
    out
}

/// Identify a folded Cartan matrix up to node relabelling.
pub fn classify(folded: &IntMatrix) -> Result<FoldedType> {
    if folded.len() == 1 && folded[0][0] == 0 {
        return Ok(FoldedType::Trivial);
    }
    candidate_types(folded.len())
        .into_iter()
        .find(|(m, _)| diagram::isomorphism(folded, m).is_some())
        .map(|(_, t)| t)
        .ok_or_else(|| Error::UnrecognizedFoldedType(folded.clone()))
}

/// Primitive non-negative integer vector spanning the kernel of `m`, if the kernel is a line.
pub fn null_vector(m: &IntMatrix) -> Option<Vec<i64>> {
    let n = m.len();
    let mut rows: Vec<Vec<Q>> = m.iter().map(|r| r.iter().map(|&x| Q::from_integer(x)).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..n).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let lead = rows[r][c];
        rows[r].iter_mut().for_each(|x| *x /= lead);
        for i in 0..n {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c];
                let pivot_row = rows[r].clone();
                rows[i].iter_mut().zip(&pivot_row).for_each(|(x, y)| *x -= f * y);
            }
        }
        pivots.push(c);
        r += 1;
    }
    if pivots.len() + 1 != n {
        return None;
    }
    let free = (0..n).find(|c| !pivots.contains(c))?;
    let mut v = vec![Q::zero(); n];
    v[free] = Q::one();
    for (row, &c) in pivots.iter().enumerate() {
        v[c] = -rows[row][free];
    }
    let lcm = v.iter().fold(1i64, |acc, q| acc.lcm(q.denom()));
    let ints: Vec<i64> = v.iter().map(|q| (q * Q::from_integer(lcm)).to_integer()).collect();
    let g = ints.iter().fold(0i64, |acc, x| acc.gcd(x));
    let sign = if ints.iter().any(|&x| x < 0) { -1 } else { 1 };
    let out: Vec<i64> = ints.iter().map(|x| sign * x / g).collect();
    out.iter().all(|&x| x > 0).then_some(out)
}

type Matrix = Vec<Vec<i64>>;

/// Group elements with their signs, and the length of the longest element.
type SignedGroup = (Vec<(Matrix, i8)>, usize);

/// Longest element of the parabolic subgroup of the affine Weyl group
/// generated by `nodes`, as a word in simple reflections.
fn longest_word(affine_cartan: &IntMatrix, nodes: &[usize]) -> Vec<usize> {
    let n = affine_cartan.len();
    let mut mu: Weight = (0..n).map(|i| i64::from(nodes.contains(&i))).collect();
    let mut word = Vec::new();
    while let Some(&i) = nodes.iter().find(|&&i| mu[i] > 0) {
        let mi = mu[i];
        for (j, m) in mu.iter_mut().enumerate() {
            *m -= mi * affine_cartan[i][j];
        }
        word.push(i);
    }
    word
}

/// Linear part of an affine Weyl group word acting on finite Dynkin labels;
/// `s_0` acts as the reflection `s_θ`.
fn linear_part(alg: &SimpleLieAlgebraData, word: &[usize]) -> Matrix {
    let r = alg.rank();
    let columns: Vec<Weight> = (0..r)
        .map(|c| {
            let mut v: Weight = (0..r).map(|i| i64::from(i == c)).collect();
            for &letter in word {
                v = if letter == 0 {
                    let pairing = alg.level_of(&v);
                    v.iter().zip(&alg.highest_root).map(|(x, t)| x - pairing * t).collect()
                } else {
                    alg.reflect(letter - 1, &v)
                };
            }
            v
        })
        .collect();
    (0..r).map(|row| (0..r).map(|col| columns[col][row]).collect()).collect()
}

fn apply(m: &Matrix, v: &[i64]) -> Weight {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

/// Horizontal orbit Weyl group for the given choice of affine orbit: its
/// elements with signs and the length of the longest element, or `None` when
/// the sign character is not well defined.
fn horizontal_group(
    alg: &SimpleLieAlgebraData,
    diag: &AffineDiagram,
    orbits: &[Vec<usize>],
    affine_orbit: usize,
    cap: u64,
) -> Result<Option<SignedGroup>> {
    let generators: Vec<Matrix> = orbits
        .iter()
        .enumerate()
        .filter(|&(o, _)| o != affine_orbit)
        .map(|(_, nodes)| linear_part(alg, &longest_word(&diag.cartan, nodes)))
        .collect();
    let r = alg.rank();
    let id: Matrix = (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
    let mut seen: HashMap<Matrix, (i8, usize)> = HashMap::from([(id.clone(), (1, 0))]);
    let mut elements = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(m) = queue.pop_front() {
        let (sign, depth) = seen[&m];
        for g in &generators {
            let next = mat_mul(g, &m);
            match seen.get(&next) {
                Some(&(s, _)) if s == sign => return Ok(None),
                Some(_) => {}
                None => {
                    seen.insert(next.clone(), (-sign, depth + 1));
                    elements.push(next.clone());
                    queue.push_back(next);
                    if elements.len() as u64 > cap {
                        return Err(Error::WeylGroupTooLarge { order: elements.len() as u64, cap });
                    }
                }
            }
        }
    }
    let longest = seen.values().map(|&(_, d)| d).max().unwrap_or(0);
    let signed = elements
        .into_iter()
        .map(|m| {
            let sign = seen[&m].0;
            (m, sign)
        })
        .collect();
    Ok(Some((signed, longest)))
}

/// Kac–Peterson matrix of the orbit Lie algebra, indexed by the `J`-fixed labels.
///
/// The orbit Weyl group is realized inside the affine Weyl group of the
/// original algebra; translations drop out of the exponentials, so only
/// linear parts are kept. The orbit playing the affine node is the first one,
/// starting from the orbit of node 0, for which the result is unitary.
pub fn s_j_matrix(md: &ModularData, orbit: &OrbitAlgebraData, weyl_cap: u64, phase: SjPhase) -> Result<SJMatrix> {
    let sp = &md.spectrum;
    let fixed = &orbit.fixed_points;
    let wrap = |matrix: CMatrix| SJMatrix { current: orbit.current, fixed_points: fixed.clone(), matrix };
    if fixed.is_empty() {
        return Ok(wrap(Vec::new()));
    }
    let table = PhaseTable::new(sp);
    if orbit.classification == FoldedType::Trivial {
        let value = match phase {
            SjPhase::KacPeterson => {
                let x = shifted(sp, fixed[0]);
                table.phase(&x, &table.lower(&x))
            }
            SjPhase::VacuumRowPositive => Complex64::new(1.0, 0.0),
        };
        return Ok(wrap(vec![vec![value]]));
    }

    let diag = affine_extend(&sp.algebra);
    let shifted_fixed: Vec<Weight> = fixed.iter().map(|&mu| shifted(sp, mu)).collect();
    let mut best_residual = f64::INFINITY;
    for affine_orbit in 0..orbit.orbits.len() {
        let Some((group, positive_roots)) = horizontal_group(&sp.algebra, &diag, &orbit.orbits, affine_orbit, weyl_cap)? else {
            continue;
        };
        let row_orbits: Vec<Vec<(Weight, i8)>> = shifted_fixed
            .iter()
            .map(|x| group.iter().map(|(m, s)| (apply(m, x), *s)).collect())
            .collect();
        let mut matrix = weyl_sums(&table, &row_orbits, &shifted_fixed);
        let vacuum = orbit
            .folded_labels
            .iter()
            .position(|l| l.iter().enumerate().all(|(i, &x)| i == affine_orbit || x == 0))
            .unwrap_or(0);
        let norm = matrix[vacuum].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < md.tolerances.num {
            continue;
        }
        let rotation = match phase {
            SjPhase::KacPeterson => Complex64::i().powu(positive_roots as u32) / norm,
            SjPhase::VacuumRowPositive => {
                let anchor = matrix[vacuum][vacuum];
                if anchor.norm() < md.tolerances.num {
                    continue;
                }
                anchor.conj() / (anchor.norm() * norm)
            }
        };
        matrix.iter_mut().flatten().for_each(|z| *z *= rotation);
        let sj = wrap(matrix);
        let residual = sj.unitarity_residual();
        if residual <= md.tolerances.num {
            return Ok(sj);
        }
        best_residual = best_residual.min(residual);
    }
    Err(Error::NumericalInstability { check: "S^J unitarity", residual: best_residual })
}

/// `S^{J⁻¹}_{λμ} = conj(S^J_{λ μ⁺})`.
pub fn inverse_sj(sj: &SJMatrix, inverse: usize, conjugation: &[usize]) -> SJMatrix {
    let matrix = sj
        .fixed_points
        .iter()
        .map(|&lambda| {
            sj.fixed_points
                .iter()
                .map(|&mu| sj.entry(lambda, conjugation[mu]).expect("fixed points are closed under conjugation").conj())
                .collect()
        })
        .collect();
    SJMatrix { current: inverse, fixed_points: sj.fixed_points.clone(), matrix }
}

/// Everything needed to evaluate traces: `S^J` for each realized current.
#[derive(Debug, Clone)]
pub struct CurrentFamily {
    pub diagram: AffineDiagram,
    pub orbit_data: BTreeMap<usize, OrbitAlgebraData>,
    pub sj: BTreeMap<usize, SJMatrix>,
    /// Currents excluded because they have no diagram realization.
    pub unrealized: Vec<usize>,
}

pub fn build_current_family(md: &ModularData, group: &CurrentGroup, weyl_cap: u64, phase: SjPhase) -> Result<CurrentFamily> {
    let diagram = affine_extend(&md.spectrum.algebra);
    let mut orbit_data = BTreeMap::new();
    let mut sj = BTreeMap::new();
    let mut unrealized = Vec::new();
    let vac = md.vacuum();
    for &j in &group.elements {
        if j == vac {
            let all: Vec<usize> = (0..md.len()).collect();
            sj.insert(j, SJMatrix { current: j, fixed_points: all, matrix: md.s.clone() });
            continue;
        }
        let omega = match automorphism_for_current(&diagram, &md.spectrum, group, j) {
            Ok(o) => o,
            Err(Error::NoDiagramRealization(_)) => {
                unrealized.push(j);
                continue;
            }
            Err(e) => return Err(e),
        };
        let data = fold(&diagram, &omega, &md.spectrum, j)?;
        let inverse = group.inverse(j)?;
        let matrix = match sj.get(&inverse) {
            Some(partner) if inverse < j => inverse_sj(partner, j, &md.conjugation),
            _ => s_j_matrix(md, &data, weyl_cap, phase)?,
        };
        sj.insert(j, matrix);
        orbit_data.insert(j, data);
    }
    Ok(CurrentFamily { diagram, orbit_data, sj, unrealized })
}

/// `Tr Θ = Σ_μ ∏_i S^{J_i}_{λ_i μ} / S_{Ω μ} · |S_{Ω μ}|^{2−2g}`, with `μ`
/// ranging over the labels fixed by every `J_i`.
pub fn trace_theta(
    md: &ModularData,
    group: &CurrentGroup,
    family: &CurrentFamily,
    labels: &[usize],
    genus: u32,
    theta: &[usize],
) -> Result<Complex64> {
    if labels.len() != theta.len() {
        return Err(Error::DimensionMismatch { expected: labels.len(), got: theta.len() });
    }
    let vac = md.vacuum();
    let mut product = vac;
    for (&lambda, &j) in labels.iter().zip(theta) {
        if group.act(j, lambda)? != lambda {
            return Err(Error::InadmissibleTuple(format!("current {j} does not fix label {lambda}")));
        }
        product = group.multiply(product, j)?;
    }
    if product != vac {
        return Err(Error::InadmissibleTuple(format!("product of {theta:?} is {product}, not the vacuum")));
    }
    let active: Vec<usize> = theta.iter().copied().filter(|&j| j != vac).collect();
    let range = group.common_fixed_points(&active);
    let exponent = 2 - 2 * genus as i32;
    let mut total = Complex64::new(0.0, 0.0);
    for mu in range {
        let s0 = md.s[vac][mu].norm();
        let mut term = Complex64::new(s0.powi(exponent), 0.0);
        for (&lambda, &j) in labels.iter().zip(theta) {
            let entry = if j == vac {
                md.s[lambda][mu]
            } else {
                family
                    .sj
                    .get(&j)
                    .and_then(|m| m.entry(lambda, mu))
                    .ok_or(Error::MissingFixedPointEntry { current: j, label: mu })?
            };
            term *= entry / s0;
        }
        total += term;
    }
    Ok(total)
}

/// `(1/|S¹|) Σ_Θ conj(ψ(Θ)) Tr Θ` for every character `ψ`, unrounded.
pub fn fourier_transform(traces: &[Complex64], characters: &[Character]) -> Vec<Complex64> {
    let n = traces.len() as f64;
    characters
        .iter()
        .map(|psi| traces.iter().enumerate().map(|(t, tr)| psi.value(t).conj() * tr).sum::<Complex64>() / n)
        .collect()
}

/// Integral sub-bundle ranks, rejecting any value that is not a non-negative integer.
pub fn subbundle_ranks(traces: &[Complex64], characters: &[Character], tol: f64) -> Result<Vec<u64>> {
    fourier_transform(traces, characters)
        .into_iter()
        .enumerate()
        .map(|(character, z)| {
            extract_count(z, tol).map_err(|e| match e {
                Error::NonIntegralRank { value, residual } => Error::NonIntegralSubRank { character, value, residual },
                other => other,
            })
        })
        .collect()
}

/// Full decomposition of one conformal-block bundle under `S¹_{λ⃗}`.
#[derive(Debug, Clone, Serialize)]
pub struct SubbundleDecomposition {
    pub labels: Vec<usize>,
    pub genus: u32,
    pub total_rank: u64,
    pub tuples: Vec<Vec<usize>>,
    #[serde(skip)]
    pub traces: Vec<Complex64>,
    /// Unrounded Fourier transforms, one per character.
    #[serde(skip)]
    pub values: Vec<Complex64>,
    /// Largest distance of a value from a non-negative integer.
    pub max_residual: f64,
    /// `|Σ_ψ rank_ψ − total_rank|`.
    pub sum_residual: f64,
}

impl SubbundleDecomposition {
    pub fn is_integral(&self, tol: f64) -> bool {
        self.max_residual <= tol && self.sum_residual <= tol
    }

    pub fn ranks(&self, tol: f64) -> Result<Vec<u64>> {
        self.values
            .iter()
            .enumerate()
            .map(|(character, &z)| {
                extract_count(z, tol).map_err(|_| Error::NonIntegralSubRank {
                    character,
                    value: z.re,
                    residual: residual_to_count(z),
                })
            })
            .collect()
    }
}

fn residual_to_count(z: Complex64) -> f64 {
    let n = z.re.round().max(0.0);
    (z.re - n).abs().max(z.im.abs())
}

pub fn decompose(
    md: &ModularData,
    group: &CurrentGroup,
    family: &CurrentFamily,
    labels: &[usize],
    genus: u32,
) -> Result<SubbundleDecomposition> {
    let stabilizers: Vec<_> = labels
        .iter()
        .map(|&l| {
            let mut s = group.stabilizer(l);
            s.elements.retain(|j| !family.unrealized.contains(j));
            s
        })
        .collect();
    let s1: AdmissibleTupleGroup = admissible_tuple_group(group, &stabilizers)?;
    let traces = s1
        .tuples
        .iter()
        .map(|theta| trace_theta(md, group, family, labels, genus, theta))
        .collect::<Result<Vec<_>>>()?;
    let characters = s1.abstract_group().characters();
    let values = fourier_transform(&traces, &characters);
    let total_rank = verlinde_rank(md, labels, genus)?;
    let max_residual = values.iter().map(|&z| residual_to_count(z)).fold(0.0, f64::max);
    let sum: Complex64 = values.iter().sum();
    let sum_residual = (sum - Complex64::new(total_rank as f64, 0.0)).norm();
    Ok(SubbundleDecomposition {
        labels: labels.to_vec(),
        genus,
        total_rank,
        tuples: s1.tuples,
        traces,
        values,
        max_residual,
        sum_residual,
    })
}
