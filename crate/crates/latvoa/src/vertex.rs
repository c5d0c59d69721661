//! Modes of lattice vertex operators, Virasoro modes, residues and axiom checks.
//!
//! `Y(e^γ,z) = E⁻(−γ,z)E⁺(−γ,z)e_γ z^γ` is expanded directly; modes of a general
//! state are obtained by peeling one creation factor at a time:
//!
//! `(h(−m−1)v)_k b = Σ_{j<0} C(−j−1,m) h(j) v_{k−j−m−1} b + Σ_{j≥0} C(−j−1,m) v_{k−j−m−1} h(j) b`.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use crate::fock::{Charge, FockTerm, FockVector, Space};
use crate::lattice::SubMonoid;
use crate::linalg::EchelonBasis;
use crate::{binom, factorial, floor_i64, q, qr, sign_pow, to_int, Error, Result, Q};
use num::{One, Zero};

type ModeKey = (FockTerm, i64, FockTerm);

/// Mode engine over a [`Space`].
///
/// The same engine serves the modules of the parabolic subalgebra: `offset` is the
/// non-lattice shift ε subtracted from target charges before evaluating the cocycle,
/// and `kill` marks charges whose vertex operators act as zero.
pub struct Vertex {
    space: Space,
    offset: Vec<Q>,
    kill: Option<fn(&Charge) -> bool>,
    omega: FockVector,
    cache: RefCell<HashMap<ModeKey, FockVector>>,
}

impl Vertex {
    pub fn new(space: Space) -> Self {
        let r = space.rank();
        Self::with_sectors(space, vec![Q::zero(); r], None)
    }

    pub fn with_sectors(space: Space, offset: Vec<Q>, kill: Option<fn(&Charge) -> bool>) -> Self {
        let omega = conformal_vector(&space);
        Vertex { space, offset, kill, omega, cache: RefCell::new(HashMap::new()) }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    /// `ω = ½ Σ u^i(−1)u_i(−1)vac` with `{u^i}` the Gram-dual basis.
    pub fn omega(&self) -> &FockVector {
        &self.omega
    }

    /// Largest `n` for which `a_n b` can be nonzero.
    pub fn mode_bound(&self, a: &FockTerm, b: &FockTerm) -> Result<i64> {
        let c = a.charge.add(&b.charge)?;
        let s = &self.space;
        Ok(floor_i64(&(s.weight(a) + s.weight(b) - Q::one() - s.min_weight(&c))))
    }

    fn vec_bound(&self, a: &FockVector, b: &FockVector) -> Result<Option<i64>> {
        let mut best = None;
        for ta in a.terms.keys() {
            for tb in b.terms.keys() {
                let x = self.mode_bound(ta, tb)?;
                best = Some(best.map_or(x, |y: i64| y.max(x)));
            }
        }
        Ok(best)
    }

    /// `(e^γ)_n b`.
    pub fn exp_mode(&self, gamma: &Charge, n: i64, b: &FockVector) -> Result<FockVector> {
        let mut out = FockVector::zero();
        for (t, c) in b.iter() {
            out.add_scaled(&self.exp_mode_term(gamma, n, t)?, c);
        }
        Ok(out)
    }

    fn exp_mode_term(&self, gamma: &Charge, n: i64, b: &FockTerm) -> Result<FockVector> {
        let s = &self.space;
        if gamma.lam {
            return Err(Error::CocycleUndefined("λ has no lattice cocycle".into()));
        }
        let g = gamma
            .ints()
            .ok_or_else(|| Error::CocycleUndefined(format!("non-lattice charge {:?}", gamma.v)))?;
        let th = b
            .charge
            .sub_lattice(&self.offset)
            .ints()
            .ok_or_else(|| Error::CocycleUndefined(format!("non-lattice target charge {:?}", b.charge.v)))?;
        let sign = s.cocycle.eval(&g, &th);
        let p = s.pair_charges(gamma, &b.charge);
        let p = to_int(&p).ok_or_else(|| Error::NonintegralShift(crate::fmt_q(&p)))?;
        let target = gamma.add(&b.charge)?;

        // E⁺(−γ,z) on the oscillator part: k P_k = Σ_m −γ(m) P_{k−m}
        let d = b.degree() as i64;
        let mut plus: Vec<FockVector> =
            vec![FockVector::from_term(FockTerm { factors: b.factors.clone(), charge: target.clone() })];
        for k in 1..=d {
            let mut acc = FockVector::zero();
            for m in 1..=k {
                acc.add_assign(&s.heisenberg_act(&gamma.v, m, &plus[(k - m) as usize]));
            }
            plus.push(acc.scaled(&qr(-1, k)));
        }

        let mut out = FockVector::zero();
        for (k, pk) in plus.iter().enumerate() {
            if pk.is_zero() {
                continue;
            }
            // coefficient of z^{−n−1}: p + j − k = −n − 1
            let j = k as i64 - n - 1 - p;
            if j < 0 {
                continue;
            }
            // E⁻(−γ,z): j Q_j = Σ_m γ(−m) Q_{j−m}
            let mut minus: Vec<FockVector> = vec![pk.clone()];
            for jj in 1..=j {
                let mut acc = FockVector::zero();
                for m in 1..=jj {
                    acc.add_assign(&s.heisenberg_act(&gamma.v, -m, &minus[(jj - m) as usize]));
                }
                minus.push(acc.scaled(&qr(1, jj)));
            }
            out.add_assign(&minus[j as usize]);
        }
        if sign < 0 {
            out = out.scaled(&-Q::one());
        }
        Ok(out)
    }

    /// `a_n b` for arbitrary `a`, `b`, extended bilinearly.
    pub fn state_mode(&self, a: &FockVector, n: i64, b: &FockVector) -> Result<FockVector> {
        let mut out = FockVector::zero();
        for (ta, ca) in a.iter() {
            for (tb, cb) in b.iter() {
                let r = self.mode_term(ta, n, tb)?;
                out.add_scaled(&r, &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn mode_term(&self, a: &FockTerm, n: i64, b: &FockTerm) -> Result<FockVector> {
        if let Some(kill) = self.kill {
            if kill(&a.charge) {
                return Ok(FockVector::zero());
            }
        }
        if n > self.mode_bound(a, b)? {
            return Ok(FockVector::zero());
        }
        let key = (a.clone(), n, b.clone());
        if let Some(v) = self.cache.borrow().get(&key) {
            return Ok(v.clone());
        }
        let v = self.mode_term_uncached(a, n, b)?;
        self.cache.borrow_mut().insert(key, v.clone());
        Ok(v)
    }

    fn mode_term_uncached(&self, a: &FockTerm, k: i64, b: &FockTerm) -> Result<FockVector> {
        let s = &self.space;
        let Some(&(i, m1)) = a.factors.first() else {
            if a.charge.is_zero() {
                return Ok(if k == -1 { FockVector::from_term(b.clone()) } else { FockVector::zero() });
            }
            return self.exp_mode_term(&a.charge, k, b);
        };
        let m = m1 as i64 - 1;
        let v = FockTerm { factors: a.factors[1..].to_vec(), charge: a.charge.clone() };
        let mut out = FockVector::zero();

        // j < 0 (only j ≤ −m−1 contribute): C(−j−1,m) h(j) v_{k−j−m−1} b
        let bound = self.mode_bound(&v, b)?;
        let jlo = k - m - 1 - bound;
        let mut j = -m - 1;
        while j >= jlo {
            let inner = self.mode_term(&v, k - j - m - 1, b)?;
            if !inner.is_zero() {
                out.add_scaled(&s.act_basis(i, j, &inner), &binom(-j - 1, m));
            }
            j -= 1;
        }

        // j ≥ 0: C(−j−1,m) v_{k−j−m−1} h(j) b
        for j in 0..=b.max_mode() as i64 {
            let mut hb = FockVector::zero();
            s.act_basis_term(i, j, b, &Q::one(), &mut hb);
            if hb.is_zero() {
                continue;
            }
            let c = binom(-j - 1, m);
            for (t, x) in hb.iter() {
                let r = self.mode_term(&v, k - j - m - 1, t)?;
                out.add_scaled(&r, &(&c * x));
            }
        }
        Ok(out)
    }

    /// `L(n)v = ω_{n+1} v`.
    pub fn virasoro_mode(&self, n: i64, v: &FockVector) -> Result<FockVector> {
        self.state_mode(&self.omega.clone(), n + 1, v)
    }

    /// `Res_z Y(a,z) b (1+z)^p / z^q = Σ_{j=0}^{p} C(p,j) a_{j−q} b`.
    pub fn weighted_residue(&self, a: &FockVector, b: &FockVector, p: u32, qq: i64) -> Result<FockVector> {
        let mut out = FockVector::zero();
        for j in 0..=p as i64 {
            let r = self.state_mode(a, j - qq, b)?;
            out.add_scaled(&r, &binom(p as i64, j));
        }
        Ok(out)
    }

    /// Component form of the Jacobi identity.
    pub fn borcherds_check(&self, a: &FockVector, b: &FockVector, c: &FockVector, m: i64, n: i64, k: i64) -> Result<bool> {
        let (lhs, rhs) = self.borcherds_sides(a, b, c, m, n, k)?;
        Ok(lhs == rhs)
    }

    pub fn borcherds_sides(
        &self,
        a: &FockVector,
        b: &FockVector,
        c: &FockVector,
        m: i64,
        n: i64,
        k: i64,
    ) -> Result<(FockVector, FockVector)> {
        let mut lhs = FockVector::zero();
        if let Some(bab) = self.vec_bound(a, b)? {
            let mut jmax = bab - n;
            if m >= 0 {
                jmax = jmax.min(m);
            }
            for j in 0..=jmax.max(-1) {
                let ab = self.state_mode(a, n + j, b)?;
                lhs.add_scaled(&self.state_mode(&ab, m + k - j, c)?, &binom(m, j));
            }
        }
        let mut rhs = FockVector::zero();
        let jmax = if n >= 0 {
            n
        } else {
            let bc = self.vec_bound(b, c)?.map_or(-1, |x| x - k);
            let ac = self.vec_bound(a, c)?.map_or(-1, |x| x - m);
            bc.max(ac)
        };
        for j in 0..=jmax.max(-1) {
            let coef = sign_pow(j) * binom(n, j);
            if coef.is_zero() {
                continue;
            }
            let t1 = self.state_mode(a, m + n - j, &self.state_mode(b, k + j, c)?)?;
            let t2 = self.state_mode(b, n + k - j, &self.state_mode(a, m + j, c)?)?;
            let mut t = t1;
            t.add_scaled(&t2, &-sign_pow(n));
            rhs.add_scaled(&t, &coef);
        }
        Ok((lhs, rhs))
    }

    /// `a_n b = Σ_i (1/i!) (−1)^{n+i+1} L(−1)^i (b_{n+i} a)`.
    pub fn skew_symmetry_check(&self, a: &FockVector, b: &FockVector, n: i64) -> Result<bool> {
        let lhs = self.state_mode(a, n, b)?;
        let mut rhs = FockVector::zero();
        if let Some(bound) = self.vec_bound(b, a)? {
            for i in 0..=(bound - n).max(-1) {
                let mut t = self.state_mode(b, n + i, a)?;
                for _ in 0..i {
                    t = self.virasoro_mode(-1, &t)?;
                }
                rhs.add_scaled(&t, &(sign_pow(n + i + 1) / factorial(i as u32)));
            }
        }
        Ok(lhs == rhs)
    }

    /// `(L(−1)a)_n b = −n a_{n−1} b`.
    pub fn derivative_check(&self, a: &FockVector, b: &FockVector, n: i64) -> Result<bool> {
        let la = self.virasoro_mode(-1, a)?;
        let lhs = self.state_mode(&la, n, b)?;
        let rhs = self.state_mode(a, n - 1, b)?.scaled(&q(-n));
        Ok(lhs == rhs)
    }

    /// Weight and charge of every nonzero `a_n b` agree with the grading rules.
    pub fn conservation_check(&self, a: &FockTerm, n: i64, b: &FockTerm) -> Result<bool> {
        let s = &self.space;
        let r = self.mode_term(a, n, b)?;
        let w = s.weight(a) + s.weight(b) - q(n) - Q::one();
        let c = a.charge.add(&b.charge)?;
        Ok(r.terms.keys().all(|t| s.weight(t) == w && t.charge == c))
    }

    /// Finite evidence that `a` lies in the normalizer of `V_M`.
    pub fn normalizer_check(&self, m: &SubMonoid, a: &FockVector, mode_cutoff: u32, weight_cutoff: &Q) -> Result<bool> {
        Ok(self.normalizer_witness(m, a, mode_cutoff, weight_cutoff)?.is_none())
    }

    /// First `(j, w)` with `a_j w` leaving `V_M`, if any.
    pub fn normalizer_witness(
        &self,
        m: &SubMonoid,
        a: &FockVector,
        mode_cutoff: u32,
        weight_cutoff: &Q,
    ) -> Result<Option<(i64, FockTerm)>> {
        let basis = self.space.basis_upto(m, weight_cutoff)?;
        for w in &basis {
            let wv = FockVector::from_term(w.clone());
            for j in 0..=mode_cutoff as i64 {
                let r = self.state_mode(a, j, &wv)?;
                for t in r.terms.keys() {
                    if t.charge.lam || !m.contains_q(&t.charge.v)? {
                        return Ok(Some((j, w.clone())));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Dimensions, per weight `0..=cutoff`, of the span of iterated products
    /// `u¹_{−n₁}⋯u^k_{−n_k}u` with `u^i, u ∈ U ∪ {vac}`.
    pub fn generated_dims(&self, gens: &[FockVector], weight_cutoff: i64) -> Result<Vec<usize>> {
        let s = &self.space;
        let mut spans: BTreeMap<Q, EchelonBasis<FockTerm>> = BTreeMap::new();
        let mut frontier: Vec<(Q, FockVector)> = Vec::new();
        let mut seeds = vec![s.vacuum()];
        seeds.extend(gens.iter().cloned());
        let mut gen_comps: Vec<(Q, FockVector)> = Vec::new();
        for g in &seeds {
            for (w, comp) in s.weight_components(g) {
                gen_comps.push((w.clone(), comp.clone()));
                if w <= q(weight_cutoff) && spans.entry(w.clone()).or_default().insert(&comp.terms) {
                    frontier.push((w, comp));
                }
            }
        }
        while let Some((w, v)) = frontier.pop() {
            for (wu, u) in &gen_comps {
                let mut nn = 1;
                loop {
                    let wt = wu + &w + q(nn) - Q::one();
                    if wt > q(weight_cutoff) {
                        break;
                    }
                    let r = self.state_mode(u, -nn, &v)?;
                    if !r.is_zero() && spans.entry(wt.clone()).or_default().insert(&r.terms) {
                        frontier.push((wt, r));
                    }
                    nn += 1;
                }
            }
        }
        Ok((0..=weight_cutoff).map(|w| spans.get(&q(w)).map_or(0, |e| e.dim())).collect())
    }

    pub fn strong_generation_check(&self, gens: &[FockVector], m: &SubMonoid, weight_cutoff: i64) -> Result<bool> {
        let got = self.generated_dims(gens, weight_cutoff)?;
        for (w, d) in got.iter().enumerate() {
            if *d as u64 != self.space.graded_dim(m, &q(w as i64))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn conformal_vector(space: &Space) -> FockVector {
    let r = space.rank();
    let ginv = space.lattice.gram_inverse();
    let mut w = FockVector::zero();
    for i in 0..r {
        for j in 0..r {
            if !ginv[i][j].is_zero() {
                let t = FockTerm::new(vec![(i, 1), (j, 1)], Charge::zero(r));
                w.add_term(t, &ginv[i][j] * qr(1, 2));
            }
        }
    }
    w
}
