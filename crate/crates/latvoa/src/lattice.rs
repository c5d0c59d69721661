//! Even positive-definite lattices, ±1 cocycles, submonoids and isometries.

use crate::linalg;
use crate::{q, Error, Result, Q};
use num::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    gram: Vec<Vec<i64>>,
    names: Vec<String>,
}

impl Lattice {
    pub fn new(gram: Vec<Vec<i64>>, names: Vec<String>) -> Result<Self> {
        let r = gram.len();
        if r == 0 {
            return Err(Error::InvalidLattice("rank must be positive".into()));
        }
        if names.len() != r {
            return Err(Error::DimensionMismatch { expected: r, got: names.len() });
        }
        for row in &gram {
            if row.len() != r {
                return Err(Error::DimensionMismatch { expected: r, got: row.len() });
            }
        }
        for i in 0..r {
            for j in 0..r {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidLattice("gram matrix is not symmetric".into()));
                }
            }
            if gram[i][i] <= 0 || gram[i][i] % 2 != 0 {
                return Err(Error::InvalidLattice(format!("diagonal entry {} is not even and positive", gram[i][i])));
            }
        }
        for k in 1..=r {
            let minor: Vec<Vec<Q>> = (0..k).map(|i| (0..k).map(|j| q(gram[i][j])).collect()).collect();
            if !linalg::det(&minor).is_positive() {
                return Err(Error::InvalidLattice("gram matrix is not positive definite".into()));
            }
        }
        Ok(Lattice { gram, names })
    }

    /// `Zα` with `(α|α) = 2N`.
    pub fn rank_one(n: i64) -> Self {
        Lattice::new(vec![vec![2 * n]], vec!["a".into()]).expect("valid rank-one lattice")
    }

    /// The root lattice of type A₂ with basis α, β.
    pub fn a2() -> Self {
        Lattice::new(vec![vec![2, -1], vec![-1, 2]], vec!["a".into(), "b".into()]).expect("valid A2")
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn gram_q(&self) -> Vec<Vec<Q>> {
        self.gram.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    /// Coordinates of the Gram-dual basis: row `i` is `u^i` in the lattice basis.
    pub fn gram_inverse(&self) -> Vec<Vec<Q>> {
        linalg::inverse(&self.gram_q()).expect("positive definite")
    }

    pub fn pairing(&self, u: &[Q], v: &[Q]) -> Result<Q> {
        let r = self.rank();
        for w in [u, v] {
            if w.len() != r {
                return Err(Error::DimensionMismatch { expected: r, got: w.len() });
            }
        }
        Ok(self.pairing_unchecked(u, v))
    }

    pub(crate) fn pairing_unchecked(&self, u: &[Q], v: &[Q]) -> Q {
        let mut s = Q::zero();
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if self.gram[i][j] != 0 && !vj.is_zero() {
                    s += ui * vj * q(self.gram[i][j]);
                }
            }
        }
        s
    }

    pub fn pairing_int(&self, u: &[i64], v: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                s += u[i] * self.gram[i][j] * v[j];
            }
        }
        s
    }
}

/// Bimultiplicative ±1 cocycle given on basis pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    signs: Vec<Vec<i8>>,
}

impl Cocycle {
    pub fn new(signs: Vec<Vec<i8>>) -> Result<Self> {
        let r = signs.len();
        for row in &signs {
            if row.len() != r {
                return Err(Error::DimensionMismatch { expected: r, got: row.len() });
            }
            if row.iter().any(|&s| s != 1 && s != -1) {
                return Err(Error::InvalidLattice("cocycle entries must be ±1".into()));
            }
        }
        Ok(Cocycle { signs })
    }

    pub fn trivial(rank: usize) -> Self {
        Cocycle { signs: vec![vec![1; rank]; rank] }
    }

    /// ε(α,α)=ε(β,β)=ε(α,β)=1, ε(β,α)=−1.
    pub fn a2() -> Self {
        Cocycle { signs: vec![vec![1, 1], vec![-1, 1]] }
    }

    pub fn signs(&self) -> &[Vec<i8>] {
        &self.signs
    }

    pub fn eval(&self, g: &[i64], t: &[i64]) -> i8 {
        let mut odd = false;
        for (i, gi) in g.iter().enumerate() {
            for (j, tj) in t.iter().enumerate() {
                if self.signs[i][j] == -1 && (gi * tj).rem_euclid(2) == 1 {
                    odd = !odd;
                }
            }
        }
        if odd {
            -1
        } else {
            1
        }
    }

    pub fn validate(&self, lat: &Lattice) -> bool {
        let r = lat.rank();
        if self.signs.len() != r {
            return false;
        }
        (0..r).all(|i| {
            (0..r).all(|j| {
                let lhs = self.signs[i][j] as i64 * self.signs[j][i] as i64;
                let rhs = if lat.gram[i][j].rem_euclid(2) == 0 { 1 } else { -1 };
                lhs == rhs
            })
        })
    }
}

/// Submonoids (and the sub-semigroups used for decompositions) of a lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubMonoid {
    /// `Z·free ⊕ Z≥0·nonneg`.
    Split { free: Vec<Vec<i64>>, nonneg: Vec<Vec<i64>> },
    /// Nonnegative combinations of `generators`, searched up to `bound` per generator.
    Generated { generators: Vec<Vec<i64>>, bound: u32 },
    /// `Z·free ⊕ Z>0·positive`; does not contain 0 unless `positive` is empty.
    Semigroup { free: Vec<Vec<i64>>, positive: Vec<Vec<i64>> },
    Union(Vec<SubMonoid>),
}

pub const DEFAULT_SEARCH_BOUND: u32 = 20;

impl SubMonoid {
    pub fn split(free: Vec<Vec<i64>>, nonneg: Vec<Vec<i64>>) -> Self {
        SubMonoid::Split { free, nonneg }
    }

    pub fn generated(generators: Vec<Vec<i64>>) -> Self {
        SubMonoid::Generated { generators, bound: DEFAULT_SEARCH_BOUND }
    }

    /// `{0}`.
    pub fn zero() -> Self {
        SubMonoid::Split { free: vec![], nonneg: vec![] }
    }

    /// The whole lattice.
    pub fn full(rank: usize) -> Self {
        SubMonoid::Split { free: unit_vectors(rank), nonneg: vec![] }
    }

    /// `Z≥0 α₁ ⊕ … ⊕ Z≥0 α_r`.
    pub fn borel(rank: usize) -> Self {
        SubMonoid::Split { free: vec![], nonneg: unit_vectors(rank) }
    }

    /// `Zα ⊕ Z≥0 β` in A₂.
    pub fn a2_parabolic() -> Self {
        SubMonoid::Split { free: vec![vec![1, 0]], nonneg: vec![vec![0, 1]] }
    }

    /// `Zα ⊕ Z>0 β + Z≥0 α` in A₂.
    pub fn a2_p1() -> Self {
        SubMonoid::Union(vec![
            SubMonoid::Semigroup { free: vec![vec![1, 0]], positive: vec![vec![0, 1]] },
            SubMonoid::Split { free: vec![], nonneg: vec![vec![1, 0]] },
        ])
    }

    pub fn contains(&self, v: &[i64]) -> Result<bool> {
        match self {
            SubMonoid::Split { free, nonneg } => Ok(solve_signed(free, nonneg, v, false)),
            SubMonoid::Semigroup { free, positive } => Ok(solve_signed(free, positive, v, true)),
            SubMonoid::Union(parts) => {
                let mut undecided = false;
                for p in parts {
                    match p.contains(v) {
                        Ok(true) => return Ok(true),
                        Ok(false) => {}
                        Err(Error::Undecided) => undecided = true,
                        Err(e) => return Err(e),
                    }
                }
                if undecided {
                    Err(Error::Undecided)
                } else {
                    Ok(false)
                }
            }
            SubMonoid::Generated { generators, bound } => {
                if v.iter().all(|&x| x == 0) {
                    return Ok(true);
                }
                let cols: Vec<Vec<Q>> = generators.iter().map(|g| g.iter().map(|&x| q(x)).collect()).collect();
                if !cols.is_empty() && linalg::rank(&cols) == cols.len() {
                    return Ok(solve_signed(&[], generators, v, false));
                }
                if bounded_search(generators, v, *bound) {
                    Ok(true)
                } else {
                    Err(Error::Undecided)
                }
            }
        }
    }

    pub fn contains_q(&self, v: &[Q]) -> Result<bool> {
        let mut w = Vec::with_capacity(v.len());
        for x in v {
            match crate::to_int(x) {
                Some(i) => w.push(i),
                None => return Ok(false),
            }
        }
        self.contains(&w)
    }

    pub fn classify_borel(&self, rank: usize) -> Result<bool> {
        match self {
            SubMonoid::Split { free, nonneg } => Ok(free.is_empty() && is_unimodular_basis(nonneg, rank)),
            SubMonoid::Generated { generators, bound } => {
                let mut gens = generators.clone();
                gens.retain(|g| g.iter().any(|&x| x != 0));
                gens.sort();
                gens.dedup();
                let mut i = 0;
                while i < gens.len() && gens.len() > rank {
                    let others: Vec<Vec<i64>> =
                        gens.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g.clone()).collect();
                    let sub = SubMonoid::Generated { generators: others.clone(), bound: *bound };
                    if sub.contains(&gens[i])? {
                        gens = others;
                        i = 0;
                    } else {
                        i += 1;
                    }
                }
                Ok(is_unimodular_basis(&gens, rank))
            }
            _ => Ok(false),
        }
    }

    pub fn classify_parabolic(&self, candidate: &[Vec<i64>], rank: usize) -> Result<bool> {
        if !is_unimodular_basis(candidate, rank) {
            return Ok(false);
        }
        for c in candidate {
            if !self.contains(c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn unit_vectors(rank: usize) -> Vec<Vec<i64>> {
    (0..rank).map(|i| (0..rank).map(|j| i64::from(i == j)).collect()).collect()
}

fn is_unimodular_basis(vs: &[Vec<i64>], rank: usize) -> bool {
    if vs.len() != rank || vs.iter().any(|v| v.len() != rank) {
        return false;
    }
    let m: Vec<Vec<Q>> = vs.iter().map(|v| v.iter().map(|&x| q(x)).collect()).collect();
    linalg::det(&m).abs().is_one()
}

fn solve_signed(free: &[Vec<i64>], signed: &[Vec<i64>], v: &[i64], strict: bool) -> bool {
    let cols: Vec<Vec<Q>> = free.iter().chain(signed).map(|c| c.iter().map(|&x| q(x)).collect()).collect();
    let target: Vec<Q> = v.iter().map(|&x| q(x)).collect();
    if cols.is_empty() {
        return !strict && v.iter().all(|&x| x == 0);
    }
    let Some(x) = linalg::solve_columns(&cols, &target) else {
        return false;
    };
    if x.iter().any(|c| !c.is_integer()) {
        return false;
    }
    x[free.len()..].iter().all(|c| if strict { c.is_positive() } else { !c.is_negative() })
}

fn bounded_search(gens: &[Vec<i64>], v: &[i64], bound: u32) -> bool {
    fn go(gens: &[Vec<i64>], rest: &mut Vec<i64>, i: usize, bound: u32) -> bool {
        if i == gens.len() {
            return rest.iter().all(|&x| x == 0);
        }
        for c in 0..=bound as i64 {
            if c > 0 {
                for (r, g) in rest.iter_mut().zip(&gens[i]) {
                    *r -= g;
                }
            }
            if go(gens, rest, i + 1, bound) {
                return true;
            }
        }
        for (r, g) in rest.iter_mut().zip(&gens[i]) {
            *r += g * bound as i64;
        }
        false
    }
    let mut rest = v.to_vec();
    go(gens, &mut rest, 0, bound)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isometry {
    /// Column `j` is the image of the `j`-th basis vector.
    pub matrix: Vec<Vec<i64>>,
}

impl Isometry {
    pub fn new(matrix: Vec<Vec<i64>>) -> Self {
        Isometry { matrix }
    }

    pub fn identity(rank: usize) -> Self {
        Isometry { matrix: unit_vectors(rank) }
    }

    /// The simple reflection `s_α` of A₂: α ↦ −α, β ↦ α+β.
    pub fn a2_reflection_alpha() -> Self {
        Isometry { matrix: vec![vec![-1, 1], vec![0, 1]] }
    }

    pub fn validate(&self, lat: &Lattice) -> bool {
        let r = lat.rank();
        if self.matrix.len() != r || self.matrix.iter().any(|row| row.len() != r) {
            return false;
        }
        for i in 0..r {
            for j in 0..r {
                let ci: Vec<i64> = (0..r).map(|k| self.matrix[k][i]).collect();
                let cj: Vec<i64> = (0..r).map(|k| self.matrix[k][j]).collect();
                if lat.pairing_int(&ci, &cj) != lat.gram[i][j] {
                    return false;
                }
            }
        }
        true
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(v).fold(Q::zero(), |acc, (&m, x)| acc + q(m) * x))
            .collect()
    }
}
