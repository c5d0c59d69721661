//! Modules: `M(1,λ)` over `V_B`, and `L^(0,λ)`, `L^(½α,λ)` over `V_P`.
//!
//! Module vectors are Fock vectors whose charge carries the λ flag; the mode
//! engine of [`Vertex`] runs unchanged with a sector offset ε for the cocycle and
//! with vertex operators of the ideal charges set to zero.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::azalg::{ap_relations, relation_holds, Gen, Realization, AP_GENS};
use crate::fock::{colored_partitions, Charge, FockTerm, FockVector, LambdaData, Space};
use crate::lattice::{Cocycle, Lattice};
use crate::linalg::EchelonBasis;
use crate::vertex::Vertex;
use crate::zhu::{int_weight, Reducer};
use crate::{binom, fmt_q, q, qr, sign_pow, to_int, Error, Result, Q};

pub type Matrix = Vec<Vec<Q>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VBModuleSpec {
    /// `(α|λ)`.
    pub pairing_alpha_lambda: Q,
    /// `(λ|λ)`.
    pub lambda_norm: Q,
}

/// Module `M(1,λ)` of `V_B`: only the Heisenberg part acts.
pub struct VBModule {
    pub spec: VBModuleSpec,
    vx: Vertex,
}

fn kill_positive_alpha(c: &Charge) -> bool {
    c.v[0] >= Q::one()
}

fn kill_positive_beta(c: &Charge) -> bool {
    c.v[1] > Q::zero()
}

impl VBModule {
    pub fn new(n: i64, spec: VBModuleSpec) -> Result<Self> {
        let lambda = LambdaData { pairings: vec![spec.pairing_alpha_lambda.clone()], norm: spec.lambda_norm.clone() };
        let space = Space::new(Lattice::rank_one(n), Cocycle::trivial(1), Some(lambda))?;
        let vx = Vertex::with_sectors(space, vec![Q::zero()], Some(kill_positive_alpha));
        Ok(VBModule { spec, vx })
    }

    pub fn space(&self) -> &Space {
        self.vx.space()
    }

    /// `e^λ`.
    pub fn top(&self) -> FockVector {
        FockVector::from_term(FockTerm::exp(Charge::zero(1).with_lambda()))
    }

    /// `a_n w` for `a ∈ V_B`.
    pub fn mode(&self, a: &FockVector, n: i64, w: &FockVector) -> Result<FockVector> {
        for t in a.terms.keys() {
            if t.charge.lam || t.charge.v[0] < Q::zero() || !t.charge.v[0].is_integer() {
                return Err(Error::BadCharge(fmt_q(&t.charge.v[0])));
            }
        }
        self.vx.state_mode(a, n, w)
    }
}

/// Which sector sits under λ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Epsilon {
    Zero,
    HalfAlpha,
}

impl Epsilon {
    pub fn value(self) -> Q {
        match self {
            Epsilon::Zero => Q::zero(),
            Epsilon::HalfAlpha => qr(1, 2),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PModuleSpec {
    pub epsilon: Epsilon,
    /// `(λ|β)`; `(λ|α) = 0` always.
    pub pairing_beta_lambda: Q,
    /// `(λ|λ)`.
    pub lambda_norm: Q,
}

impl PModuleSpec {
    /// Generic choice used when none is given: `(λ|β) = 1/3`, `(λ|λ) = 0`.
    pub fn generic(epsilon: Epsilon) -> Self {
        PModuleSpec { epsilon, pairing_beta_lambda: qr(1, 3), lambda_norm: Q::zero() }
    }
}

/// `L^(ε,λ) = ⊕_n M(1, nα+ε) ⊗ e^λ` as a `V_P`-module.
pub struct PModule {
    pub spec: PModuleSpec,
    vx: Vertex,
    vp: Vertex,
}

impl PModule {
    pub fn new(spec: PModuleSpec) -> Result<Self> {
        let lambda = LambdaData { pairings: vec![Q::zero(), spec.pairing_beta_lambda.clone()], norm: spec.lambda_norm.clone() };
        let space = Space::new(Lattice::a2(), Cocycle::a2(), Some(lambda))?;
        let vx = Vertex::with_sectors(space, vec![spec.epsilon.value(), Q::zero()], Some(kill_positive_beta));
        Ok(PModule { spec, vx, vp: Vertex::new(Space::a2()) })
    }

    pub fn space(&self) -> &Space {
        self.vx.space()
    }

    /// The algebra `V_A₂` whose subalgebra `V_P` acts.
    pub fn algebra(&self) -> &Vertex {
        &self.vp
    }

    /// Charge `nα + ε + λ`.
    pub fn charge(&self, n: i64) -> Charge {
        Charge { v: vec![q(n) + self.spec.epsilon.value(), Q::zero()], lam: true }
    }

    /// `(nα+ε)` sector exponential `e^{nα+ε} ⊗ e^λ`.
    pub fn exp(&self, n: i64) -> FockVector {
        FockVector::from_term(FockTerm::exp(self.charge(n)))
    }

    /// `L(0)` eigenvalue: `Σ n_i + ½(nα+ε|nα+ε) + ½(λ|λ)`.
    pub fn lm0(&self, w: &FockTerm) -> Q {
        self.space().weight(w)
    }

    /// Lowest `L(0)` eigenvalue of the module.
    pub fn bottom_weight(&self) -> Q {
        self.lm0(&FockTerm::exp(self.charge(0)))
    }

    /// Canonical basis of the weight space `L(0) = w`, charges descending.
    pub fn basis_at(&self, w: &Q) -> Vec<FockTerm> {
        let s = self.space();
        let mut out = Vec::new();
        let mut n = 0i64;
        while s.min_weight(&self.charge(n)) <= *w || s.min_weight(&self.charge(-n)) <= *w {
            n += 1;
        }
        for k in (-n..=n).rev() {
            out.extend(s.terms_of_weight(&self.charge(k), w));
        }
        out
    }

    /// Basis of the bottom level: `[e]` or `[e^+, e^−]`.
    pub fn bottom_basis(&self) -> Vec<FockTerm> {
        self.basis_at(&self.bottom_weight())
    }

    /// Dimension of level `k` above the bottom, counted from the character.
    pub fn character_dim(&self, k: u32) -> u64 {
        let mut memo = BTreeMap::new();
        let bottom = self.bottom_weight();
        let mut total = 0;
        let mut n = -(k as i64) - 2;
        while n <= k as i64 + 2 {
            let shift = self.space().min_weight(&self.charge(n)) - &bottom;
            let d = q(k as i64) - shift;
            if let Some(d) = to_int(&d).filter(|d| *d >= 0) {
                total += colored_partitions(2, d as u32, &mut memo);
            }
            n += 1;
        }
        total
    }

    /// `a_n w` for `a ∈ V_P`.
    pub fn mode(&self, a: &FockVector, n: i64, w: &FockVector) -> Result<FockVector> {
        for t in a.terms.keys() {
            let v = t.charge.ints().filter(|_| !t.charge.lam);
            match v {
                Some(v) if v.len() == 2 && v[1] >= 0 => {}
                _ => {
                    let cs: Vec<String> = t.charge.v.iter().map(fmt_q).collect();
                    return Err(Error::BadCharge(cs.join(",")));
                }
            }
        }
        self.vx.state_mode(a, n, w)
    }

    /// `o(a) = a_{wt a − 1}` on the weight space `L(0) = level`.
    pub fn zero_mode_matrix(&self, a: &FockVector, level: &Q) -> Result<Matrix> {
        let wa = int_weight(&Space::a2(), a)?;
        let basis = self.basis_at(level);
        let index: BTreeMap<&FockTerm, usize> = basis.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let mut m = vec![vec![Q::zero(); basis.len()]; basis.len()];
        for (j, t) in basis.iter().enumerate() {
            let r = self.mode(a, wa - 1, &FockVector::from_term(t.clone()))?;
            for (u, c) in r.iter() {
                let i = index.get(u).ok_or_else(|| Error::Inconsistent("zero mode left the weight space".into()))?;
                m[*i][j] = c.clone();
            }
        }
        Ok(m)
    }

    /// Zero-mode matrices of the six `A_P` generators on the bottom level.
    pub fn bottom_matrices(&self) -> Result<BTreeMap<Gen, Matrix>> {
        let s = Space::a2();
        let level = self.bottom_weight();
        let mut out = BTreeMap::new();
        for g in AP_GENS {
            let a = Reducer::VP.generator_state(&s, g).expect("A_P generator");
            out.insert(g, self.zero_mode_matrix(&a, &level)?);
        }
        Ok(out)
    }

    /// The bottom-level action expected from the module classification.
    pub fn expected_bottom_matrices(&self) -> BTreeMap<Gen, Matrix> {
        let qb = self.spec.pairing_beta_lambda.clone();
        let z = Q::zero;
        let mut out = BTreeMap::new();
        match self.spec.epsilon {
            Epsilon::Zero => {
                for g in AP_GENS {
                    out.insert(g, vec![vec![if g == Gen::Y { qb.clone() } else { z() }]]);
                }
            }
            Epsilon::HalfAlpha => {
                let h = qr(1, 2);
                out.insert(Gen::X, vec![vec![q(1), z()], vec![z(), q(-1)]]);
                out.insert(Gen::Y, vec![vec![&qb - &h, z()], vec![z(), &qb + &h]]);
                out.insert(Gen::Xa, vec![vec![z(), q(1)], vec![z(), z()]]);
                out.insert(Gen::Xna, vec![vec![z(), z()], vec![q(1), z()]]);
                out.insert(Gen::Xb, vec![vec![z(), z()], vec![z(), z()]]);
                out.insert(Gen::Xab, vec![vec![z(), z()], vec![z(), z()]]);
            }
        }
        out
    }

    pub fn bottom_action_check(&self) -> Result<bool> {
        Ok(self.bottom_matrices()? == self.expected_bottom_matrices())
    }

    /// Dimensions of levels `0..=levels` above the bottom of the submodule
    /// generated by the bottom level under all modes of `gens`.
    pub fn generated_level_dims(&self, gens: &[FockVector], levels: u32) -> Result<Vec<usize>> {
        let s = Space::a2();
        let bottom = self.bottom_weight();
        let top = &bottom + q(levels as i64);
        let mut spans: BTreeMap<Q, EchelonBasis<FockTerm>> = BTreeMap::new();
        let mut frontier: Vec<(Q, FockVector)> = Vec::new();
        for t in self.bottom_basis() {
            let v = FockVector::from_term(t);
            spans.entry(bottom.clone()).or_default().insert(&v.terms);
            frontier.push((bottom.clone(), v));
        }
        let gen_w: Vec<(i64, &FockVector)> = gens.iter().map(|g| Ok((int_weight(&s, g)?, g))).collect::<Result<_>>()?;
        while let Some((w, v)) = frontier.pop() {
            for (wu, u) in &gen_w {
                // wt(u_n v) = wt u + w − n − 1 must land in [bottom, top]
                let nmax = crate::floor_i64(&(q(*wu) + &w - q(1) - &bottom));
                let nmin = -crate::floor_i64(&(&top - q(*wu) - &w + q(1)));
                for n in nmin..=nmax {
                    let r = self.mode(u, n, &v)?;
                    if r.is_zero() {
                        continue;
                    }
                    let wt = q(*wu) + &w - q(n) - q(1);
                    if spans.entry(wt.clone()).or_default().insert(&r.terms) {
                        frontier.push((wt, r));
                    }
                }
            }
        }
        Ok((0..=levels).map(|k| spans.get(&(&bottom + q(k as i64))).map_or(0, |e| e.dim())).collect())
    }

    /// The bottom level generates every level up to `levels` (character comparison).
    pub fn spanning_check_with(&self, gens: &[FockVector], levels: u32) -> Result<bool> {
        let got = self.generated_level_dims(gens, levels)?;
        Ok(got.iter().enumerate().all(|(k, d)| *d as u64 == self.character_dim(k as u32)))
    }

    /// [`Self::spanning_check_with`] for the six generators of `V_P`.
    pub fn spanning_check(&self, levels: u32) -> Result<bool> {
        let s = Space::a2();
        let gens: Vec<FockVector> = AP_GENS.iter().map(|g| Reducer::VP.generator_state(&s, *g).expect("generator")).collect();
        self.spanning_check_with(&gens, levels)
    }

    fn bound(vx: &Vertex, a: &FockVector, b: &FockVector) -> Result<Option<i64>> {
        let mut best: Option<i64> = None;
        for ta in a.terms.keys() {
            for tb in b.terms.keys() {
                let x = vx.mode_bound(ta, tb)?;
                best = Some(best.map_or(x, |y| y.max(x)));
            }
        }
        Ok(best)
    }

    /// Both sides of the Jacobi identity in components, `a, b ∈ V_P`, `w` in the module.
    pub fn borcherds_sides(
        &self,
        a: &FockVector,
        b: &FockVector,
        w: &FockVector,
        m: i64,
        n: i64,
        k: i64,
    ) -> Result<(FockVector, FockVector)> {
        let mut lhs = FockVector::zero();
        if let Some(bab) = Self::bound(&self.vp, a, b)? {
            let mut jmax = bab - n;
            if m >= 0 {
                jmax = jmax.min(m);
            }
            for j in 0..=jmax.max(-1) {
                let ab = self.vp.state_mode(a, n + j, b)?;
                lhs.add_scaled(&self.mode(&ab, m + k - j, w)?, &binom(m, j));
            }
        }
        let mut rhs = FockVector::zero();
        let jmax = if n >= 0 {
            n
        } else {
            let bw = Self::bound(&self.vx, b, w)?.map_or(-1, |x| x - k);
            let aw = Self::bound(&self.vx, a, w)?.map_or(-1, |x| x - m);
            bw.max(aw)
        };
        for j in 0..=jmax.max(-1) {
            let coef = sign_pow(j) * binom(n, j);
            let mut t = self.mode(a, m + n - j, &self.mode(b, k + j, w)?)?;
            t.add_scaled(&self.mode(b, n + k - j, &self.mode(a, m + j, w)?)?, &-sign_pow(n));
            rhs.add_scaled(&t, &coef);
        }
        Ok((lhs, rhs))
    }

    pub fn borcherds_check(&self, a: &FockVector, b: &FockVector, w: &FockVector, m: i64, n: i64, k: i64) -> Result<bool> {
        let (l, r) = self.borcherds_sides(a, b, w, m, n, k)?;
        Ok(l == r)
    }
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = vec![vec![Q::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

/// A_P generators sent to square matrices.
pub struct MatrixRealization<'a> {
    pub matrices: &'a BTreeMap<Gen, Matrix>,
    pub size: usize,
}

impl Realization for MatrixRealization<'_> {
    type Value = Matrix;

    fn unit(&self) -> Result<Matrix> {
        Ok((0..self.size)
            .map(|i| (0..self.size).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
            .collect())
    }

    fn generator(&self, g: Gen) -> Result<Matrix> {
        self.matrices.get(&g).cloned().ok_or(Error::DimensionMismatch { expected: 6, got: self.matrices.len() })
    }

    fn mul(&self, a: &Matrix, b: &Matrix) -> Result<Matrix> {
        Ok(mat_mul(a, b))
    }

    fn combine(&self, terms: &[(Q, Matrix)]) -> Result<Matrix> {
        let mut out = vec![vec![Q::zero(); self.size]; self.size];
        for (c, m) in terms {
            for i in 0..self.size {
                for j in 0..self.size {
                    out[i][j] += c * &m[i][j];
                }
            }
        }
        Ok(out)
    }

    fn is_zero(&self, v: &Matrix) -> bool {
        v.iter().all(|r| r.iter().all(|x| x.is_zero()))
    }
}

/// True iff the matrices satisfy all thirty defining relations of A_P.
pub fn ap_module_relation_check(matrices: &BTreeMap<Gen, Matrix>) -> Result<bool> {
    let size = matrices.get(&Gen::X).map_or(0, |m| m.len());
    for g in AP_GENS {
        let m = matrices.get(&g).ok_or(Error::DimensionMismatch { expected: 6, got: matrices.len() })?;
        if m.len() != size {
            return Err(Error::DimensionMismatch { expected: size, got: m.len() });
        }
        for row in m {
            if row.len() != size {
                return Err(Error::DimensionMismatch { expected: size, got: row.len() });
            }
        }
    }
    let r = MatrixRealization { matrices, size };
    for rel in ap_relations() {
        if !relation_holds(&r, &rel)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vb_module_examples() {
        let m = VBModule::new(1, VBModuleSpec { pairing_alpha_lambda: qr(2, 5), lambda_norm: q(1) }).unwrap();
        let s = Space::rank_one(1);
        let e = m.top();
        assert!(m.mode(&s.exp(&[1]), -3, &e).unwrap().is_zero());
        assert_eq!(m.mode(&s.h1(0), 0, &e).unwrap(), e.scaled(&qr(2, 5)));
        assert_eq!(m.mode(&s.vacuum(), -1, &e).unwrap(), e);
        assert!(matches!(m.mode(&s.exp(&[-1]), 0, &e), Err(Error::BadCharge(_))));
    }

    #[test]
    fn p_module_examples() {
        let m = PModule::new(PModuleSpec { epsilon: Epsilon::HalfAlpha, pairing_beta_lambda: qr(1, 3), lambda_norm: q(0) }).unwrap();
        let s = Space::a2();
        assert_eq!(m.mode(&s.exp(&[-1, 0]), 0, &m.exp(0)).unwrap(), m.exp(-1));
        assert!(m.mode(&s.exp(&[0, 1]), -5, &m.exp(0)).unwrap().is_zero());
        assert_eq!(m.lm0(&FockTerm::exp(m.charge(-1))), qr(1, 4));
        let m0 = PModule::new(PModuleSpec { epsilon: Epsilon::Zero, pairing_beta_lambda: qr(1, 3), lambda_norm: q(2) }).unwrap();
        assert_eq!(m0.mode(&s.h1(1), 0, &m0.exp(0)).unwrap(), m0.exp(0).scaled(&qr(1, 3)));
        assert_eq!(m0.bottom_weight(), q(1));
        let t = FockTerm::new(vec![(0, 2)], m0.charge(1));
        assert_eq!(m0.lm0(&t), q(4));
    }

    #[test]
    fn relation_check_examples() {
        let one = |x: Q| vec![vec![x]];
        let mut ms: BTreeMap<Gen, Matrix> = AP_GENS.iter().map(|g| (*g, one(q(0)))).collect();
        ms.insert(Gen::Y, one(qr(1, 3)));
        assert!(ap_module_relation_check(&ms).unwrap());
        ms.insert(Gen::X, one(q(2)));
        assert!(!ap_module_relation_check(&ms).unwrap());
        ms.insert(Gen::Xb, vec![vec![q(0); 2]; 2]);
        assert!(matches!(ap_module_relation_check(&ms), Err(Error::DimensionMismatch { .. })));
    }
}
