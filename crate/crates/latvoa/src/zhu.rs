//! Zhu's products `∘`, `∗` and the normal-form maps `G` onto the presented
//! algebras of [`crate::azalg`].

use num::Zero;

use crate::azalg::{Gen, NormalForm, Realization, Tag};
use crate::fock::{FockTerm, FockVector, Space};
use crate::vertex::Vertex;
use crate::{binom, fmt_q, sign_pow, to_int, Error, Result, Q};

/// Which Zhu algebra the normal-form map lands in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reducer {
    /// `V_B` for the rank one lattice with `(α|α) = 2N`.
    VB(u32),
    VA1,
    VP,
}

impl Reducer {
    pub fn tag(self) -> Tag {
        match self {
            Reducer::VB(n) => Tag::VB(n),
            Reducer::VA1 => Tag::VA1,
            Reducer::VP => Tag::AP,
        }
    }

    pub fn reduce(self, v: &FockVector) -> Result<NormalForm> {
        match self {
            Reducer::VB(n) => reduce_b(v, n),
            Reducer::VA1 => reduce_a1(v),
            Reducer::VP => reduce_p(v),
        }
    }

    /// State in `V` mapped to a generator of the algebra.
    pub fn generator_state(self, space: &Space, g: Gen) -> Option<FockVector> {
        Some(match (self, g) {
            (_, Gen::X) => space.h1(0),
            (Reducer::VB(_) | Reducer::VA1, Gen::Y) => space.exp(&[1]),
            (Reducer::VA1, Gen::Z) => space.exp(&[-1]),
            (Reducer::VP, Gen::Y) => space.h1(1),
            (Reducer::VP, Gen::Xa) => space.exp(&[1, 0]),
            (Reducer::VP, Gen::Xna) => space.exp(&[-1, 0]),
            (Reducer::VP, Gen::Xb) => space.exp(&[0, 1]),
            (Reducer::VP, Gen::Xab) => space.exp(&[1, 1]),
            _ => return None,
        })
    }

    pub fn generators(self) -> Vec<Gen> {
        match self {
            Reducer::VB(_) => vec![Gen::X, Gen::Y],
            Reducer::VA1 => vec![Gen::X, Gen::Y, Gen::Z],
            Reducer::VP => crate::azalg::AP_GENS.to_vec(),
        }
    }
}

/// Integer weight of a homogeneous vector (the zero vector has weight 0).
pub fn int_weight(space: &Space, v: &FockVector) -> Result<i64> {
    if v.is_zero() {
        return Ok(0);
    }
    let w = space.homogeneous_weight(v).ok_or_else(|| Error::NonintegralWeight("inhomogeneous vector".into()))?;
    to_int(&w).ok_or_else(|| Error::NonintegralWeight(fmt_q(&w)))
}

/// `Σ_{j≥0} C(p,j) a_{j−q} b` for any integer `p`; the sum stops at the mode bound.
pub fn residue(vx: &Vertex, a: &FockVector, b: &FockVector, p: i64, qq: i64) -> Result<FockVector> {
    let mut top = -1;
    for ta in a.terms.keys() {
        for tb in b.terms.keys() {
            top = top.max(vx.mode_bound(ta, tb)? + qq);
        }
    }
    if p >= 0 {
        top = top.min(p);
    }
    let mut out = FockVector::zero();
    for j in 0..=top {
        let c = binom(p, j);
        if !c.is_zero() {
            out.add_scaled(&vx.state_mode(a, j - qq, b)?, &c);
        }
    }
    Ok(out)
}

fn by_components(vx: &Vertex, a: &FockVector, b: &FockVector, qq: i64) -> Result<FockVector> {
    let s = vx.space();
    let mut out = FockVector::zero();
    for (_, comp) in s.weight_components(a) {
        let w = int_weight(s, &comp)?;
        out.add_assign(&residue(vx, &comp, b, w, qq)?);
    }
    Ok(out)
}

/// `a ∘ b = Res_z Y(a,z) b (1+z)^{wt a} / z²`.
pub fn circle(vx: &Vertex, a: &FockVector, b: &FockVector) -> Result<FockVector> {
    by_components(vx, a, b, 2)
}

/// `a ∗ b = Res_z Y(a,z) b (1+z)^{wt a} / z`.
pub fn star(vx: &Vertex, a: &FockVector, b: &FockVector) -> Result<FockVector> {
    by_components(vx, a, b, 1)
}

fn bad(t: &FockTerm) -> Error {
    let cs: Vec<String> = t.charge.v.iter().map(fmt_q).collect();
    Error::BadCharge(format!("[{}]{}", cs.join(","), if t.charge.lam { ";L" } else { "" }))
}

/// `(−1)^{Σ n_i}` times the word `prefix · h̄¹ ⋯ h̄ʳ`, where factor `i` maps to `bars[i]`.
fn g_image(tag: Tag, t: &FockTerm, c: &Q, prefix: &[Gen], bars: &[Gen]) -> NormalForm {
    let mut w = prefix.to_vec();
    let mut e = 0i64;
    for &(i, m) in &t.factors {
        w.push(bars[i]);
        e += m as i64 - 1;
    }
    NormalForm::word(tag, &w).scaled(&(c * sign_pow(e)))
}

fn int_charge(t: &FockTerm) -> Result<Vec<i64>> {
    if t.charge.lam {
        return Err(bad(t));
    }
    t.charge.ints().ok_or_else(|| bad(t))
}

fn reduce_with(tag: Tag, v: &FockVector, bars: &[Gen], prefix: impl Fn(&FockTerm) -> Result<Option<Vec<Gen>>>) -> Result<NormalForm> {
    let mut out = NormalForm::zero(tag);
    for (t, c) in v.iter() {
        if let Some(p) = prefix(t)? {
            out = out.add(&g_image(tag, t, c, &p, bars))?;
        }
    }
    Ok(out)
}

/// Normal-form map `V_B → C[x] ⊕ Cy`.
pub fn reduce_b(v: &FockVector, n: u32) -> Result<NormalForm> {
    reduce_with(Tag::VB(n), v, &[Gen::X], |t| {
        let k = int_charge(t)?;
        match k.as_slice() {
            [0] => Ok(Some(vec![])),
            [1] => Ok(Some(vec![Gen::Y])),
            [k] if *k >= 2 => Ok(None),
            _ => Err(bad(t)),
        }
    })
}

/// Normal-form map `V_{A1} → Cz ⊕ C[x]/(x³−x) ⊕ Cy`.
pub fn reduce_a1(v: &FockVector) -> Result<NormalForm> {
    reduce_with(Tag::VA1, v, &[Gen::X], |t| {
        let k = int_charge(t)?;
        match k.as_slice() {
            [0] => Ok(Some(vec![])),
            [1] => Ok(Some(vec![Gen::Y])),
            [-1] => Ok(Some(vec![Gen::Z])),
            [_] => Ok(None),
            _ => Err(bad(t)),
        }
    })
}

/// Normal-form map `V_P → A_P`.
pub fn reduce_p(v: &FockVector) -> Result<NormalForm> {
    reduce_with(Tag::AP, v, &[Gen::X, Gen::Y], |t| {
        let k = int_charge(t)?;
        if k.len() != 2 || k[1] < 0 {
            return Err(bad(t));
        }
        Ok(match (k[0], k[1]) {
            (0, 0) => Some(vec![]),
            (1, 0) => Some(vec![Gen::Xa]),
            (-1, 0) => Some(vec![Gen::Xna]),
            (0, 1) => Some(vec![Gen::Xb]),
            (1, 1) => Some(vec![Gen::Xab]),
            _ => None,
        })
    })
}

/// The two congruences `a∗b ≡ Res Y(b,z)a (1+z)^{wt b−1}/z` and
/// `a∗b − b∗a ≡ Res Y(a,z)b (1+z)^{wt a−1}`, compared after reduction.
pub fn zhu_identity_checks(vx: &Vertex, r: Reducer, a: &FockVector, b: &FockVector) -> Result<bool> {
    let s = vx.space();
    let (wa, wb) = (int_weight(s, a)?, int_weight(s, b)?);
    let ab = star(vx, a, b)?;
    let first = r.reduce(&ab)? == r.reduce(&residue(vx, b, a, wb - 1, 1)?)?;
    let comm = ab.minus(&star(vx, b, a)?);
    let second = r.reduce(&comm)? == r.reduce(&residue(vx, a, b, wa - 1, 0)?)?;
    Ok(first && second)
}

/// `Res Y(a,z) b (1+z)^{wt a + n} / z^{2+m}` reduces to zero for `0 ≤ n ≤ m ≤ 2`.
pub fn vanishing_family_check(vx: &Vertex, r: Reducer, a: &FockVector, b: &FockVector) -> Result<bool> {
    let wa = int_weight(vx.space(), a)?;
    for m in 0..=2 {
        for n in 0..=m {
            if !r.reduce(&residue(vx, a, b, wa + n, 2 + m)?)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Pairs `(a, b)` from `basis` with `G(a ∘ b) ≠ 0`.
pub fn verify_o_vanishing(vx: &Vertex, r: Reducer, basis: &[FockTerm]) -> Result<Vec<(FockTerm, FockTerm)>> {
    let mut bad_pairs = Vec::new();
    for a in basis {
        let av = FockVector::from_term(a.clone());
        for b in basis {
            let c = circle(vx, &av, &FockVector::from_term(b.clone()))?;
            if !r.reduce(&c)?.is_zero() {
                bad_pairs.push((a.clone(), b.clone()));
            }
        }
    }
    Ok(bad_pairs)
}

/// `G(a ∗ b) = G(a) G(b)`.
pub fn verify_homomorphism(vx: &Vertex, r: Reducer, a: &FockVector, b: &FockVector) -> Result<bool> {
    let lhs = r.reduce(&star(vx, a, b)?)?;
    let rhs = r.reduce(a)?.mul(&r.reduce(b)?)?;
    Ok(lhs == rhs)
}

/// Generators of a presented algebra realised as states, multiplied with `∗`
/// and compared modulo `O(V)` through the normal-form map.
pub struct StarRealization<'a> {
    pub vx: &'a Vertex,
    pub reducer: Reducer,
}

impl Realization for StarRealization<'_> {
    type Value = FockVector;

    fn unit(&self) -> Result<FockVector> {
        Ok(self.vx.space().vacuum())
    }

    fn generator(&self, g: Gen) -> Result<FockVector> {
        self.reducer
            .generator_state(self.vx.space(), g)
            .ok_or_else(|| Error::BadCharge(format!("no state for {}", g.name())))
    }

    fn mul(&self, a: &FockVector, b: &FockVector) -> Result<FockVector> {
        star(self.vx, a, b)
    }

    fn combine(&self, terms: &[(Q, FockVector)]) -> Result<FockVector> {
        let mut out = FockVector::zero();
        for (c, v) in terms {
            out.add_scaled(v, c);
        }
        Ok(out)
    }

    fn is_zero(&self, v: &FockVector) -> bool {
        self.reducer.reduce(v).map(|r| r.is_zero()).unwrap_or(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{q, qr};

    #[test]
    fn circle_and_star_examples() {
        for n in 1..=3 {
            let vx = Vertex::new(Space::rank_one(n));
            let s = vx.space().clone();
            let ea = s.exp(&[1]);
            let want = s.term(&[(0, 1)], &[1]).plus(&ea.scaled(&q(n)));
            assert_eq!(circle(&vx, &ea, &s.vacuum()).unwrap(), want);
            assert!(star(&vx, &ea, &ea).unwrap().is_zero());
            let h = s.h1(0);
            let d = star(&vx, &h, &ea).unwrap().minus(&star(&vx, &ea, &h).unwrap());
            let n32 = n as u32;
            assert_eq!(reduce_b(&d, n32).unwrap(), reduce_b(&ea.scaled(&q(2 * n)), n32).unwrap());
        }
    }

    #[test]
    fn cor_expansion() {
        let vx = Vertex::new(Space::rank_one(1));
        let s = vx.space().clone();
        let got = circle(&vx, &s.exp(&[1]), &s.exp(&[-1])).unwrap();
        let mut want = s.term(&[(0, 3)], &[0]).scaled(&qr(1, 3));
        want.add_assign(&s.term(&[(0, 2), (0, 1)], &[0]).scaled(&qr(1, 2)));
        want.add_assign(&s.term(&[(0, 1), (0, 1), (0, 1)], &[0]).scaled(&qr(1, 6)));
        want.add_assign(&s.term(&[(0, 2)], &[0]).scaled(&qr(1, 2)));
        want.add_assign(&s.term(&[(0, 1), (0, 1)], &[0]).scaled(&qr(1, 2)));
        assert_eq!(got, want);
        assert!(reduce_a1(&got).unwrap().is_zero());
    }

    #[test]
    fn reduce_examples() {
        let s = Space::rank_one(1);
        assert_eq!(reduce_b(&s.term(&[(0, 2)], &[0]), 1).unwrap().to_string(), "-x");
        assert_eq!(reduce_b(&s.term(&[(0, 1)], &[1]), 1).unwrap().to_string(), "-y");
        assert!(reduce_b(&s.exp(&[2]), 1).unwrap().is_zero());
        assert!(matches!(reduce_b(&s.exp(&[-1]), 1), Err(Error::BadCharge(_))));
        assert_eq!(reduce_a1(&s.term(&[(0, 1), (0, 1), (0, 1)], &[0])).unwrap().to_string(), "x");
        assert_eq!(reduce_a1(&s.exp(&[-1])).unwrap().to_string(), "z");
        let p = Space::a2();
        assert_eq!(reduce_p(&p.term(&[(1, 1)], &[0, 1])).unwrap().to_string(), "-xb");
        assert!(reduce_p(&p.exp(&[1, 2])).unwrap().is_zero());
        assert_eq!(reduce_p(&p.term(&[(0, 2), (1, 1)], &[0, 0])).unwrap().to_string(), "-x*y");
        assert!(matches!(reduce_p(&p.exp(&[0, -1])), Err(Error::BadCharge(_))));
    }

    #[test]
    fn homomorphism_examples() {
        for n in 1..=2u32 {
            let vx = Vertex::new(Space::rank_one(n as i64));
            let s = vx.space().clone();
            let r = Reducer::VB(n);
            assert!(verify_homomorphism(&vx, r, &s.exp(&[1]), &s.h1(0)).unwrap());
            assert_eq!(reduce_b(&star(&vx, &s.exp(&[1]), &s.h1(0)).unwrap(), n).unwrap(), NormalForm::gen(Tag::VB(n), Gen::Y).scaled(&q(-(n as i64))));
            assert!(zhu_identity_checks(&vx, r, &s.h1(0), &s.exp(&[1])).unwrap());
            assert!(zhu_identity_checks(&vx, r, &s.vacuum(), &s.vacuum()).unwrap());
        }
        let vx = Vertex::new(Space::a2());
        let s = vx.space().clone();
        let prod = reduce_p(&star(&vx, &s.exp(&[1, 0]), &s.exp(&[-1, 0])).unwrap()).unwrap();
        assert_eq!(prod.to_string(), "1/2*x + 1/2*x^2");
        assert!(verify_homomorphism(&vx, Reducer::VP, &s.exp(&[1, 0]), &s.exp(&[-1, 0])).unwrap());
        assert!(zhu_identity_checks(&vx, Reducer::VP, &s.exp(&[1, 0]), &s.exp(&[0, 1])).unwrap());
    }
}
