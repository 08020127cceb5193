//! Node permutations of (generalized) Cartan matrices.
//!
//! A permutation `p` maps node `i` of the first matrix to node `p[i]` of the
//! second; it is an isomorphism when `b[p[i]][p[j]] == a[i][j]` for all `i, j`.

pub type IntMatrix = Vec<Vec<i64>>;

/// All automorphisms of `m`, in lexicographic order (identity first).
pub fn automorphisms(m: &IntMatrix) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    search(m, m, &mut Vec::new(), &mut vec![false; m.len()], &mut out, usize::MAX);
    out
}

/// One isomorphism from `a` onto `b`, if any.
pub fn isomorphism(a: &IntMatrix, b: &IntMatrix) -> Option<Vec<usize>> {
    if a.len() != b.len() {
        return None;
    }
    let mut out = Vec::new();
    search(a, b, &mut Vec::new(), &mut vec![false; b.len()], &mut out, 1);
    out.pop()
}

fn search(
    a: &IntMatrix,
    b: &IntMatrix,
    partial: &mut Vec<usize>,
    used: &mut [bool],
    out: &mut Vec<Vec<usize>>,
    limit: usize,
) {
    if out.len() >= limit {
        return;
    }
    let i = partial.len();
    if i == a.len() {
        out.push(partial.clone());
        return;
    }
    for cand in 0..b.len() {
        if used[cand] || a[i][i] != b[cand][cand] || signature(a, i) != signature(b, cand) {
            continue;
        }
        let consistent = partial
            .iter()
            .enumerate()
            .all(|(j, &pj)| a[i][j] == b[cand][pj] && a[j][i] == b[pj][cand]);
        if !consistent {
            continue;
        }
        used[cand] = true;
        partial.push(cand);
        search(a, b, partial, used, out, limit);
        partial.pop();
        used[cand] = false;
    }
}

// Sorted off-diagonal row and column entries; invariant under isomorphism.
fn signature(m: &IntMatrix, i: usize) -> (Vec<i64>, Vec<i64>) {
    let mut row: Vec<i64> = (0..m.len()).filter(|&j| j != i).map(|j| m[i][j]).collect();
    let mut col: Vec<i64> = (0..m.len()).filter(|&j| j != i).map(|j| m[j][i]).collect();
    row.sort_unstable();
    col.sort_unstable();
    (row, col)
}

/// Transpose of a square integer matrix.
pub fn transpose(m: &IntMatrix) -> IntMatrix {
    (0..m.len()).map(|j| (0..m.len()).map(|i| m[i][j]).collect()).collect()
}

/// Composition `(p ∘ q)[i] = p[q[i]]`.
pub fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&i| p[i]).collect()
}

/// Smallest `n ≥ 1` with `p^n = id`.
pub fn permutation_order(p: &[usize]) -> usize {
    let id: Vec<usize> = (0..p.len()).collect();
    let mut cur = p.to_vec();
    let mut n = 1;
    while cur != id {
        cur = compose(p, &cur);
        n += 1;
    }
    n
}

/// Cycles of a permutation, each listed from its smallest element, sorted.
pub fn cycles(p: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cycle.push(i);
            i = p[i];
        }
        out.push(cycle);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a_affine(n: usize) -> IntMatrix {
        // cyclic diagram on n+1 nodes
        let size = n + 1;
        let mut m = vec![vec![0; size]; size];
        for i in 0..size {
            m[i][i] = 2;
            m[i][(i + 1) % size] -= 1;
            m[(i + 1) % size][i] -= 1;
        }
        m
    }

    #[test]
    fn cyclic_diagram_has_dihedral_symmetry() {
        assert_eq!(automorphisms(&a_affine(2)).len(), 6);
        assert_eq!(automorphisms(&a_affine(3)).len(), 8);
        assert_eq!(automorphisms(&a_affine(4)).len(), 10);
    }

    #[test]
    fn non_symmetric_entries_break_symmetry() {
        // G2-like 2x2 with -1 / -3
        let m = vec![vec![2, -1], vec![-3, 2]];
        assert_eq!(automorphisms(&m), vec![vec![0, 1]]);
        assert!(isomorphism(&m, &transpose(&m)).is_some());
        let other = vec![vec![2, -1], vec![-2, 2]];
        assert!(isomorphism(&m, &other).is_none());
    }

    #[test]
    fn permutation_helpers() {
        let p = vec![1, 2, 0, 3];
        assert_eq!(permutation_order(&p), 3);
        assert_eq!(cycles(&p), vec![vec![0, 1, 2], vec![3]]);
        assert_eq!(compose(&p, &p), vec![2, 0, 1, 3]);
    }
}
