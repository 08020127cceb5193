//! Finite abelian groups given by multiplication tables, their cyclic
//! decompositions and character tables.

use std::collections::HashMap;
use std::hash::Hash;

use num_complex::Complex64;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::lie::Q;
use crate::modular::phase_of_rational;

/// A finite group on the elements `0..n` with a Cayley table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    /// Cyclic factors `(generator, order)`; every element is uniquely
    /// `∏ g_i^{e_i}` with `0 ≤ e_i < n_i`.
    factors: Vec<(usize, usize)>,
    /// Exponent vector of every element with respect to `factors`.
    coordinates: Vec<Vec<usize>>,
}

/// A character `χ(x) = exp(2πi · phase(x))`, phases kept exactly in `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    pub phases: Vec<Q>,
}

impl Character {
    pub fn value(&self, element: usize) -> Complex64 {
        phase_of_rational(self.phases[element])
    }

    pub fn values(&self) -> Vec<Complex64> {
        (0..self.phases.len()).map(|x| self.value(x)).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.phases.iter().all(|p| *p == Q::from_integer(0))
    }
}

impl FiniteAbelianGroup {
    /// Validate a Cayley table and decompose the group into cyclic factors.
    pub fn from_table(table: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        let n = table.len();
        let bad = |msg: &str| Error::InvalidConfig(format!("not a group table: {msg}"));
        if identity >= n || table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(bad("entries out of range"));
        }
        for a in 0..n {
            if table[identity][a] != a || table[a][identity] != a {
                return Err(bad("identity"));
            }
            if !(0..n).any(|b| table[a][b] == identity) {
                return Err(bad("inverse"));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(bad("associativity"));
                    }
                }
            }
        }
        if (0..n).any(|a| (0..n).any(|b| table[a][b] != table[b][a])) {
            return Err(Error::NonAbelianGroup);
        }
        let mut group = FiniteAbelianGroup { table, identity, factors: Vec::new(), coordinates: Vec::new() };
        group.decompose();
        Ok(group)
    }

    /// Build from a list of distinct elements closed under `op`.
    pub fn from_elements<T: Clone + Eq + Hash>(elements: &[T], identity: &T, op: impl Fn(&T, &T) -> T) -> Result<Self> {
        let index: HashMap<&T, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let lookup = |x: &T| index.get(x).copied().ok_or_else(|| Error::InvalidConfig("set is not closed".into()));
        let table = elements
            .iter()
            .map(|a| elements.iter().map(|b| lookup(&op(a, b))).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_table(table, lookup(identity)?)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn multiply(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn power(&self, a: usize, e: usize) -> usize {
        (0..e).fold(self.identity, |acc, _| self.table[acc][a])
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.table[x][a];
            k += 1;
        }
        k
    }

    pub fn factors(&self) -> &[(usize, usize)] {
        &self.factors
    }

    /// Orders of the cyclic factors, e.g. `[2, 2]` for the Klein group.
    pub fn invariants(&self) -> Vec<usize> {
        self.factors.iter().map(|&(_, n)| n).collect()
    }

    pub fn coordinates(&self, element: usize) -> &[usize] {
        &self.coordinates[element]
    }

    fn decompose(&mut self) {
        let n = self.order();
        let mut chosen = Vec::new();
        let mut subgroup = vec![false; n];
        subgroup[self.identity] = true;
        let found = self.extend(&mut chosen, &mut subgroup, 1);
        assert!(found, "every finite abelian group is a product of cyclic groups");
        self.factors = chosen;

        let mut coordinates = vec![Vec::new(); n];
        let mut stack = vec![(self.identity, Vec::new())];
        while let Some((x, exps)) = stack.pop() {
            if exps.len() == self.factors.len() {
                coordinates[x] = exps;
                continue;
            }
            let (g, order) = self.factors[exps.len()];
            let mut y = x;
            for e in 0..order {
                let mut next = exps.clone();
                next.push(e);
                stack.push((y, next));
                y = self.table[y][g];
            }
        }
        self.coordinates = coordinates;
    }

    /// Depth-first search for generators whose cyclic subgroups form a direct product.
    fn extend(&self, chosen: &mut Vec<(usize, usize)>, subgroup: &mut Vec<bool>, size: usize) -> bool {
        if size == self.order() {
            return true;
        }
        let mut candidates: Vec<(usize, usize)> = (0..self.order())
            .filter(|&g| !subgroup[g])
            .map(|g| (g, self.element_order(g)))
            .filter(|&(g, order)| (1..order).all(|e| !subgroup[self.power(g, e)]))
            .collect();
        candidates.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        for (g, order) in candidates {
            if !(self.order() / size).is_multiple_of(order) {
                continue;
            }
            let members: Vec<usize> = (0..self.order()).filter(|&x| subgroup[x]).collect();
            let mut enlarged = subgroup.clone();
            let mut y = self.identity;
            for _ in 0..order {
                for &h in &members {
                    enlarged[self.table[h][y]] = true;
                }
                y = self.table[y][g];
            }
            chosen.push((g, order));
            if self.extend(chosen, &mut enlarged, size * order) {
                *subgroup = enlarged;
                return true;
            }
            chosen.pop();
        }
        false
    }

    /// All `|G|` characters; the trivial character comes first.
    pub fn characters(&self) -> Vec<Character> {
        let invariants = self.invariants();
        let mut labels: Vec<Vec<usize>> = vec![Vec::new()];
        for &n in &invariants {
            labels = labels
                .into_iter()
                .flat_map(|l| {
                    (0..n).map(move |c| {
                        let mut l = l.clone();
                        l.push(c);
                        l
                    })
                })
                .collect();
        }
        labels
            .into_iter()
            .map(|c| {
                let phases = (0..self.order())
                    .map(|x| {
                        let total = self.coordinates[x]
                            .iter()
                            .zip(&c)
                            .zip(&invariants)
                            .fold(Q::from_integer(0), |acc, ((&e, &ci), &n)| acc + Q::new((e * ci) as i64, n as i64));
                        total.fract()
                    })
                    .collect();
                Character { phases }
            })
            .collect()
    }
}

/// Character table of `G` with `G` given by a Cayley table.
pub fn characters_of(group: &FiniteAbelianGroup) -> Vec<Character> {
    group.characters()
}

/// Gram matrix `Σ_x χ_a(x) conj(χ_b(x))` of a list of characters.
pub fn orthogonality_matrix(chars: &[Character]) -> Vec<Vec<Complex64>> {
    chars
        .iter()
        .map(|a| {
            chars
                .iter()
                .map(|b| (0..a.phases.len()).map(|x| a.value(x) * b.value(x).conj()).sum())
                .collect()
        })
        .collect()
}

/// The cyclic group `ℤ_n` with additive table.
pub fn cyclic(n: usize) -> FiniteAbelianGroup {
    let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    FiniteAbelianGroup::from_table(table, 0).expect("cyclic table")
}

/// Direct product `ℤ_{n_1} × ⋯ × ℤ_{n_r}` with elements in mixed-radix order.
pub fn product_of_cyclic(orders: &[usize]) -> FiniteAbelianGroup {
    let mut elements: Vec<Vec<usize>> = vec![Vec::new()];
    for &n in orders {
        elements = elements
            .into_iter()
            .flat_map(|e| {
                (0..n).map(move |x| {
                    let mut e = e.clone();
                    e.push(x);
                    e
                })
            })
            .collect();
    }
    let zero = vec![0; orders.len()];
    FiniteAbelianGroup::from_elements(&elements, &zero, |a, b| {
        a.iter().zip(b).zip(orders).map(|((x, y), n)| (x + y) % n).collect()
    })
    .expect("direct product table")
}

/// Exponent of the group: least common multiple of the element orders.
pub fn exponent(group: &FiniteAbelianGroup) -> usize {
    group.invariants().into_iter().fold(1, |acc, n| acc.lcm(&n))
}
