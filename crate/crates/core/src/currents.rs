//! Simple currents, their action on labels, stabilizers and admissible tuples.

use serde::Serialize;

use crate::abelian::FiniteAbelianGroup;
use crate::error::{Error, Result};
use crate::fusion::FusionRing;
use crate::lie::Q;
use crate::modular::ModularData;

/// The group `G` of simple currents acting on the label set.
#[derive(Debug, Clone)]
pub struct CurrentGroup {
    /// Label indices of the currents, ascending, so the vacuum comes first.
    pub elements: Vec<usize>,
    /// `action[p][μ] = J★μ` for `J = elements[p]`.
    pub action: Vec<Vec<usize>>,
    group: FiniteAbelianGroup,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stabilizer {
    pub mu: usize,
    pub elements: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitStabilizer {
    pub orbit: Vec<usize>,
    pub stabilizer: Stabilizer,
}

/// The kernel of the product map `S_{λ_1} × ⋯ × S_{λ_m} → G`.
#[derive(Debug, Clone)]
pub struct AdmissibleTupleGroup {
    pub labels: Vec<usize>,
    /// Tuples of current labels; the all-vacuum tuple comes first.
    pub tuples: Vec<Vec<usize>>,
    group: FiniteAbelianGroup,
}

/// Detect currents by quantum dimension and cross-check invertibility in the ring.
pub fn find_simple_currents(ring: &FusionRing, md: &ModularData) -> Result<CurrentGroup> {
    let n = md.len();
    let vac = md.vacuum();
    let mut elements = Vec::new();
    for j in 0..n {
        let qd = md.quantum_dimension(j);
        let by_dimension = (qd - 1.0).abs() < md.tolerances.num;
        let invertible = ring.product(j, md.conjugate(j)) == vec![(vac, 1)];
        if by_dimension != invertible {
            return Err(Error::InconsistentCurrent { label: j, quantum_dimension: qd, invertible });
        }
        if invertible {
            elements.push(j);
        }
    }

    let action = elements
        .iter()
        .map(|&j| {
            (0..n)
                .map(|mu| match ring.product(j, mu).as_slice() {
                    [(nu, 1)] => Ok(*nu),
                    _ => Err(Error::CurrentActionNotUnique { current: j, label: mu }),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let position = |label: usize| elements.binary_search(&label).expect("currents are closed under fusion");
    let table = action
        .iter()
        .map(|row| elements.iter().map(|&j2| position(row[j2])).collect())
        .collect();
    let group = FiniteAbelianGroup::from_table(table, position(vac))?;
    Ok(CurrentGroup { elements, action, group })
}

impl CurrentGroup {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, label: usize) -> Result<usize> {
        self.elements.binary_search(&label).map_err(|_| Error::NotACurrent(label))
    }

    pub fn contains(&self, label: usize) -> bool {
        self.elements.binary_search(&label).is_ok()
    }

    pub fn abstract_group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    /// `J★μ`.
    pub fn act(&self, current: usize, mu: usize) -> Result<usize> {
        let p = self.position(current)?;
        self.action[p].get(mu).copied().ok_or(Error::LabelIndexOutOfRange(mu))
    }

    pub fn multiply(&self, a: usize, b: usize) -> Result<usize> {
        self.act(a, b).and_then(|x| if self.contains(x) { Ok(x) } else { Err(Error::NotACurrent(b)) })
    }

    pub fn inverse(&self, a: usize) -> Result<usize> {
        let p = self.position(a)?;
        let q = (0..self.len()).find(|&q| self.group.multiply(p, q) == self.group.identity()).expect("group inverse");
        Ok(self.elements[q])
    }

    pub fn order_of(&self, a: usize) -> Result<usize> {
        Ok(self.group.element_order(self.position(a)?))
    }

    pub fn stabilizer(&self, mu: usize) -> Stabilizer {
        let elements = self
            .elements
            .iter()
            .zip(&self.action)
            .filter(|(_, row)| row[mu] == mu)
            .map(|(&j, _)| j)
            .collect();
        Stabilizer { mu, elements }
    }

    /// Orbit `{J★μ}` (sorted) together with `S_μ`.
    pub fn orbit_and_stabilizer(&self, mu: usize) -> OrbitStabilizer {
        let mut orbit: Vec<usize> = self.action.iter().map(|row| row[mu]).collect();
        orbit.sort_unstable();
        orbit.dedup();
        OrbitStabilizer { orbit, stabilizer: self.stabilizer(mu) }
    }

    /// Labels fixed by every element of the group generated by `currents`.
    pub fn common_fixed_points(&self, currents: &[usize]) -> Vec<usize> {
        let n = self.action.first().map_or(0, Vec::len);
        (0..n)
            .filter(|&mu| currents.iter().all(|&j| self.act(j, mu).map(|x| x == mu).unwrap_or(false)))
            .collect()
    }
}

pub fn current_action_on_weights(group: &CurrentGroup, mu: usize) -> OrbitStabilizer {
    group.orbit_and_stabilizer(mu)
}

/// Enumerate `S¹_{λ⃗}` exhaustively.
pub fn admissible_tuple_group(group: &CurrentGroup, stabilizers: &[Stabilizer]) -> Result<AdmissibleTupleGroup> {
    let vac = group.elements[group.abstract_group().identity()];
    let mut partial: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), vac)];
    for stab in stabilizers {
        let mut next = Vec::with_capacity(partial.len() * stab.elements.len());
        for (tuple, prod) in &partial {
            for &j in &stab.elements {
                let mut t = tuple.clone();
                t.push(j);
                next.push((t, group.multiply(*prod, j)?));
            }
        }
        partial = next;
    }
    let tuples: Vec<Vec<usize>> = partial.into_iter().filter(|(_, p)| *p == vac).map(|(t, _)| t).collect();
    let identity = vec![vac; stabilizers.len()];
    let abstract_group = FiniteAbelianGroup::from_elements(&tuples, &identity, |a, b| {
        a.iter().zip(b).map(|(&x, &y)| group.multiply(x, y).expect("stabilizer elements are currents")).collect()
    })?;
    Ok(AdmissibleTupleGroup {
        labels: stabilizers.iter().map(|s| s.mu).collect(),
        tuples,
        group: abstract_group,
    })
}

impl AdmissibleTupleGroup {
    pub fn order(&self) -> usize {
        self.tuples.len()
    }

    pub fn abstract_group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn index_of(&self, tuple: &[usize]) -> Result<usize> {
        self.tuples
            .iter()
            .position(|t| t == tuple)
            .ok_or_else(|| Error::InadmissibleTuple(format!("{tuple:?}")))
    }
}

/// `Q_J(λ) = Δ_J + Δ_λ − Δ_{J★λ} mod 1`, exactly.
pub fn monodromy_charge(md: &ModularData, group: &CurrentGroup, current: usize, lambda: usize) -> Result<Q> {
    let image = group.act(current, lambda)?;
    let sp = &md.spectrum;
    let q = sp.delta(current) + sp.delta(lambda) - sp.delta(image);
    let f = q.fract();
    Ok(if f < Q::from_integer(0) { f + 1 } else { f })
}
