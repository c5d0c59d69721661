//! Small dense linear algebra over `Q`.

use crate::Q;
use num::{One, Zero};

/// Row-reduces `m` in place and returns the pivot columns.
pub fn rref(m: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Q::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<Q>]) -> usize {
    let mut a = m.to_vec();
    rref(&mut a).len()
}

pub fn det(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        for i in c + 1..n {
            if !a[i][c].is_zero() {
                let f = &a[i][c] / &a[c][c];
                for j in c..n {
                    let t = &f * &a[c][j];
                    a[i][j] -= t;
                }
            }
        }
    }
    d
}

pub fn inverse(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
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
    let piv = rref(&mut a);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solves `sum_j x_j cols[j] = v`; `None` when `v` is outside the span.
/// The columns must be linearly independent.
pub fn solve_columns(cols: &[Vec<Q>], v: &[Q]) -> Option<Vec<Q>> {
    let k = cols.len();
    let mut a: Vec<Vec<Q>> = (0..v.len())
        .map(|i| {
            let mut r: Vec<Q> = cols.iter().map(|c| c[i].clone()).collect();
            r.push(v[i].clone());
            r
        })
        .collect();
    let piv = rref(&mut a);
    if piv.contains(&k) {
        return None;
    }
    let mut x = vec![Q::zero(); k];
    for (r, &c) in piv.iter().enumerate() {
        x[c] = a[r][k].clone();
    }
    Some(x)
}

/// Incrementally maintained row-echelon basis of a subspace of `Q^n`,
/// with coordinates given sparsely by column keys.
#[derive(Clone, Debug)]
pub struct EchelonBasis<K: Ord + Clone> {
    rows: Vec<(K, std::collections::BTreeMap<K, Q>)>,
}

impl<K: Ord + Clone> Default for EchelonBasis<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Ord + Clone> EchelonBasis<K> {
    pub fn new() -> Self {
        EchelonBasis { rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; returns the residue.
    pub fn reduce(&self, v: &std::collections::BTreeMap<K, Q>) -> std::collections::BTreeMap<K, Q> {
        let mut v = v.clone();
        for (pivot, row) in &self.rows {
            if let Some(c) = v.get(pivot).cloned() {
                for (k, x) in row {
                    let e = v.entry(k.clone()).or_insert_with(Q::zero);
                    *e -= &c * x;
                    if e.is_zero() {
                        v.remove(k);
                    }
                }
            }
        }
        v
    }

    /// Inserts `v` if independent; returns whether the dimension grew.
    pub fn insert(&mut self, v: &std::collections::BTreeMap<K, Q>) -> bool {
        let r = self.reduce(v);
        let Some((pivot, c)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = Q::one() / c;
        let row: std::collections::BTreeMap<K, Q> =
            r.into_iter().map(|(k, x)| (k, x * &inv)).collect();
        for (_, other) in self.rows.iter_mut() {
            if let Some(c) = other.get(&pivot).cloned() {
                for (k, x) in &row {
                    let e = other.entry(k.clone()).or_insert_with(Q::zero);
                    *e -= &c * x;
                    if e.is_zero() {
                        other.remove(k);
                    }
                }
            }
        }
        self.rows.push((pivot, row));
        true
    }
}
