//! The invariant bilinear form on `V_L` and quasi-triangular decompositions.
//!
//! `(h(−m)u | v) = −(u | h(m)v)` strips creation factors down to
//! `(e^γ | e^{−γ}) = κ_γ`; the `κ_γ` are fixed by the invariance identity.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::fock::{FockTerm, FockVector};
use crate::lattice::SubMonoid;
use crate::linalg;
use crate::vertex::Vertex;
use crate::zhu::int_weight;
use crate::{factorial, q, sign_pow, Error, Result, Q};

/// Base pairings `κ_γ = (e^γ | e^{−γ})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormContext {
    pub base: BTreeMap<Vec<i64>, Q>,
}

impl FormContext {
    /// Only `κ_0 = 1`.
    pub fn vacuum_only(rank: usize) -> Self {
        FormContext { base: BTreeMap::from([(vec![0; rank], Q::one())]) }
    }

    pub fn kappa(&self, g: &[i64]) -> Result<&Q> {
        self.base.get(g).ok_or_else(|| Error::MissingBasePairing(format!("{g:?}")))
    }
}

fn form_term(vx: &Vertex, ctx: &FormContext, t: &FockTerm, v: &FockVector) -> Result<Q> {
    let s = vx.space();
    if let Some((&(i, m), rest)) = t.factors.split_first() {
        let u = FockTerm { factors: rest.to_vec(), charge: t.charge.clone() };
        let hv = s.act_basis(i, m as i64, v);
        return Ok(-form_term(vx, ctx, &u, &hv)?);
    }
    let g = t.charge.ints().filter(|_| !t.charge.lam).ok_or_else(|| Error::MissingBasePairing("non-lattice charge".into()))?;
    let neg: Vec<i64> = g.iter().map(|x| -x).collect();
    let target = FockTerm::exp(crate::fock::Charge::int(&neg));
    match v.terms.get(&target) {
        Some(c) => Ok(ctx.kappa(&g)? * c),
        None => Ok(Q::zero()),
    }
}

/// `(u | v)`.
pub fn form(vx: &Vertex, ctx: &FormContext, u: &FockVector, v: &FockVector) -> Result<Q> {
    let mut total = Q::zero();
    for (t, c) in u.iter() {
        // only cancelling charges pair
        let mut w = FockVector::zero();
        for (tv, cv) in v.iter() {
            if matches!(t.charge.add(&tv.charge), Ok(ch) if ch.is_zero()) {
                w.add_term(tv.clone(), cv.clone());
            }
        }
        if !w.is_zero() {
            total += c * form_term(vx, ctx, t, &w)?;
        }
    }
    Ok(total)
}

/// `(a_n b | c)` against `(−1)^{wt a} Σ_j (1/j!) (b | (L(1)^j a)_{2 wt a − j − n − 2} c)`.
pub fn invariance_sides(vx: &Vertex, ctx: &FormContext, a: &FockVector, b: &FockVector, c: &FockVector, n: i64) -> Result<(Q, Q)> {
    let wa = int_weight(vx.space(), a)?;
    let lhs = form(vx, ctx, &vx.state_mode(a, n, b)?, c)?;
    let mut rhs = Q::zero();
    let mut la = a.clone();
    let mut j = 0i64;
    while !la.is_zero() {
        let r = vx.state_mode(&la, 2 * wa - j - n - 2, c)?;
        rhs += form(vx, ctx, b, &r)? / factorial(j as u32);
        la = vx.virasoro_mode(1, &la)?;
        j += 1;
    }
    Ok((lhs, sign_pow(wa) * rhs))
}

pub fn invariance_check(vx: &Vertex, ctx: &FormContext, a: &FockVector, b: &FockVector, c: &FockVector, n: i64) -> Result<bool> {
    let (l, r) = invariance_sides(vx, ctx, a, b, c, n)?;
    Ok(l == r)
}

/// Determines `κ_γ` for the given charges from invariance on
/// `(e^γ, e^{−γ}, vac)` at `n = 2 wt(e^γ) − 1`, where both sides are single pairings.
pub fn calibrate_base_pairings(vx: &Vertex, charges: &[Vec<i64>]) -> Result<FormContext> {
    let s = vx.space();
    let rank = s.rank();
    let mut ctx = FormContext::vacuum_only(rank);
    let zero = vec![0; rank];
    for g in charges {
        if *g == zero {
            continue;
        }
        let neg: Vec<i64> = g.iter().map(|x| -x).collect();
        if !charges.contains(&neg) {
            return Err(Error::Inconsistent(format!("charges not closed under negation at {g:?}")));
        }
        let a = s.exp(g);
        let k = int_weight(s, &a)?;
        // (e^γ_{2k−1} e^{−γ} | vac) = (−1)^k (e^{−γ} | e^γ_{−1} vac) = (−1)^k κ_{−γ}·coef
        let lhs = form(vx, &FormContext::vacuum_only(rank), &vx.state_mode(&a, 2 * k - 1, &s.exp(&neg))?, &s.vacuum())?;
        let coef = vx.state_mode(&a, -1, &s.vacuum())?.terms.get(&FockTerm::exp(crate::fock::Charge::int(g))).cloned().unwrap_or_else(Q::zero);
        if coef.is_zero() {
            return Err(Error::Inconsistent(format!("no scalar equation for {g:?}")));
        }
        let kneg = lhs / (sign_pow(k) * coef);
        if kneg.is_zero() {
            return Err(Error::Inconsistent(format!("degenerate pairing at {neg:?}")));
        }
        if let Some(prev) = ctx.base.get(&neg) {
            if *prev != kneg {
                return Err(Error::Inconsistent(format!("conflicting values at {neg:?}")));
            }
        }
        ctx.base.insert(neg, kneg);
    }
    // symmetry of the form forces κ_γ = κ_{−γ}
    for (g, v) in &ctx.base {
        let neg: Vec<i64> = g.iter().map(|x| -x).collect();
        if ctx.base.get(&neg).is_some_and(|w| w != v) {
            return Err(Error::Inconsistent(format!("asymmetric pairing at {g:?}")));
        }
    }
    Ok(ctx)
}

/// Calibrates every charge of weight at most `max_w`.
pub fn calibrate_upto(vx: &Vertex, max_w: i64) -> Result<FormContext> {
    let charges = vx.space().charges_upto(&q(max_w));
    calibrate_base_pairings(vx, &charges)
}

/// `V = V_+ ⊕ V_H ⊕ V_−` described by charge sets.
#[derive(Debug, Clone)]
pub struct DecompositionSpec {
    pub name: String,
    pub plus: SubMonoid,
    pub h_part: SubMonoid,
    pub minus: SubMonoid,
}

impl DecompositionSpec {
    /// `V_{Z>0 α} ⊕ M(1,0) ⊕ V_{Z<0 α}` for a rank one lattice.
    pub fn rank_one() -> Self {
        DecompositionSpec {
            name: "rank-one".into(),
            plus: SubMonoid::Semigroup { free: vec![], positive: vec![vec![1]] },
            h_part: SubMonoid::zero(),
            minus: SubMonoid::Semigroup { free: vec![], positive: vec![vec![-1]] },
        }
    }

    /// `N_± = (Zα ⊕ Z_{±>0}β) ∪ Z_{±>0}α` with `V_H = M(1,0)`.
    pub fn a2_cone() -> Self {
        let side = |s: i64| {
            SubMonoid::Union(vec![
                SubMonoid::Semigroup { free: vec![vec![1, 0]], positive: vec![vec![0, s]] },
                SubMonoid::Semigroup { free: vec![], positive: vec![vec![s, 0]] },
            ])
        };
        DecompositionSpec { name: "a2-cone".into(), plus: side(1), h_part: SubMonoid::zero(), minus: side(-1) }
    }

    /// `N^± = Zα ⊕ Z_{±>0}β` with `V_H = V_{Zα}`.
    pub fn a2_strip() -> Self {
        let side = |s: i64| SubMonoid::Semigroup { free: vec![vec![1, 0]], positive: vec![vec![0, s]] };
        DecompositionSpec {
            name: "a2-strip".into(),
            plus: side(1),
            h_part: SubMonoid::split(vec![vec![1, 0]], vec![]),
            minus: side(-1),
        }
    }

    fn parts(&self) -> [(&'static str, &SubMonoid); 3] {
        [("plus", &self.plus), ("h", &self.h_part), ("minus", &self.minus)]
    }
}

/// One named check in a verification report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, witness: Option<String>) -> Self {
        Check { name: name.into(), pass: witness.is_none(), witness }
    }
}

fn part_of(spec: &DecompositionSpec, t: &FockTerm) -> Result<Option<usize>> {
    let Some(g) = t.charge.ints().filter(|_| !t.charge.lam) else {
        return Ok(None);
    };
    for (i, (_, m)) in spec.parts().iter().enumerate() {
        if m.contains(&g)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Verifies the quasi-triangular axioms at the given cutoffs.
pub fn quasi_triangular_check(
    vx: &Vertex,
    ctx: &FormContext,
    spec: &DecompositionSpec,
    weight_cutoff: i64,
    mode_cutoff: i64,
) -> Result<Vec<Check>> {
    let s = vx.space();
    let wc = q(weight_cutoff);
    let all = s.basis_upto(&SubMonoid::full(s.rank()), &wc)?;
    let mut checks = Vec::new();

    // graded splitting: every charge lies in exactly one part
    let mut witness = None;
    for g in s.charges_upto(&wc) {
        let hits = spec.parts().iter().filter(|(_, m)| m.contains(&g).unwrap_or(false)).count();
        if hits != 1 {
            witness = Some(format!("charge {g:?} lies in {hits} parts"));
            break;
        }
    }
    checks.push(Check::new("graded-splitting", witness));
    checks.push(Check::new(
        "vacuum-in-h",
        (!spec.h_part.contains(&vec![0; s.rank()])?).then(|| "vac not in V_H".to_string()),
    ));

    let mut parts: [Vec<FockVector>; 3] = Default::default();
    for t in &all {
        if let Some(i) = part_of(spec, t)? {
            parts[i].push(FockVector::from_term(t.clone()));
        }
    }

    // sl2 stability
    for (pi, (pname, _)) in spec.parts().iter().enumerate() {
        let mut witness = None;
        'outer: for v in &parts[pi] {
            for n in [-1, 0, 1] {
                let r = vx.virasoro_mode(n, v)?;
                for t in r.terms.keys() {
                    if part_of(spec, t)? != Some(pi) {
                        witness = Some(format!("L({n}) {} leaves V_{pname}", s.format(v)));
                        break 'outer;
                    }
                }
            }
        }
        checks.push(Check::new(format!("sl2-stable-{pname}"), witness));
    }

    // closure of each part and Y(V_H)V_± ⊆ V_±, Y(V_±)V_H ⊆ V_±
    let closure = |ai: usize, bi: usize, target: usize, name: String| -> Result<Check> {
        for a in &parts[ai] {
            for b in &parts[bi] {
                for n in -mode_cutoff..=mode_cutoff {
                    let r = vx.state_mode(a, n, b)?;
                    for t in r.terms.keys() {
                        if part_of(spec, t)? != Some(target) {
                            return Ok(Check::new(name, Some(format!("({})_{n} ({})", s.format(a), s.format(b)))));
                        }
                    }
                }
            }
        }
        Ok(Check::new(name, None))
    };
    checks.push(closure(0, 0, 0, "closed-plus".into())?);
    checks.push(closure(1, 1, 1, "closed-h".into())?);
    checks.push(closure(2, 2, 2, "closed-minus".into())?);
    checks.push(closure(1, 0, 0, "h-acts-on-plus".into())?);
    checks.push(closure(1, 2, 2, "h-acts-on-minus".into())?);
    checks.push(closure(0, 1, 0, "plus-acts-on-h".into())?);
    checks.push(closure(2, 1, 2, "minus-acts-on-h".into())?);

    // orthogonality
    let ortho = |ai: usize, bi: usize, name: &str| -> Result<Check> {
        for a in &parts[ai] {
            for b in &parts[bi] {
                let f = form(vx, ctx, a, b)?;
                if !f.is_zero() {
                    return Ok(Check::new(name, Some(format!("({} | {}) = {}", s.format(a), s.format(b), crate::fmt_q(&f)))));
                }
            }
        }
        Ok(Check::new(name, None))
    };
    checks.push(ortho(0, 0, "isotropic-plus")?);
    checks.push(ortho(2, 2, "isotropic-minus")?);
    checks.push(ortho(1, 0, "h-perp-plus")?);
    checks.push(ortho(1, 2, "h-perp-minus")?);

    // non-degeneracy of the form on V_H, per weight
    let mut witness = None;
    for w in 0..=weight_cutoff {
        let piece: Vec<&FockVector> = parts[1].iter().filter(|v| s.homogeneous_weight(v) == Some(q(w))).collect();
        let gram: Vec<Vec<Q>> = piece.iter().map(|u| piece.iter().map(|v| form(vx, ctx, u, v)).collect::<Result<_>>()).collect::<Result<_>>()?;
        if linalg::rank(&gram) != piece.len() {
            witness = Some(format!("degenerate at weight {w}"));
            break;
        }
    }
    checks.push(Check::new("h-nondegenerate", witness));
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::Space;

    #[test]
    fn form_examples() {
        let vx = Vertex::new(Space::rank_one(1));
        let s = vx.space().clone();
        let ctx = calibrate_upto(&vx, 4).unwrap();
        assert_eq!(form(&vx, &ctx, &s.vacuum(), &s.vacuum()).unwrap(), q(1));
        assert_eq!(form(&vx, &ctx, &s.h1(0), &s.h1(0)).unwrap(), q(-2));
        assert!(invariance_check(&vx, &ctx, &s.exp(&[1]), &s.exp(&[-1]), &s.vacuum(), 0).unwrap());
        let a2 = Vertex::new(Space::a2());
        let t = a2.space().clone();
        let ctx2 = calibrate_upto(&a2, 3).unwrap();
        assert!(form(&a2, &ctx2, &t.exp(&[1, 0]), &t.exp(&[0, 1])).unwrap().is_zero());
        assert!(matches!(
            form(&a2, &FormContext::vacuum_only(2), &t.exp(&[1, 0]), &t.exp(&[-1, 0])),
            Err(Error::MissingBasePairing(_))
        ));
    }

    #[test]
    fn adjoint_of_zero_mode() {
        let vx = Vertex::new(Space::rank_one(2));
        let s = vx.space().clone();
        let ctx = calibrate_upto(&vx, 4).unwrap();
        let b = s.term(&[(0, 1)], &[1]);
        let c = s.term(&[(0, 1)], &[-1]);
        assert!(invariance_check(&vx, &ctx, &s.h1(0), &b, &c, 0).unwrap());
        assert!(invariance_check(&vx, &ctx, &s.vacuum(), &b, &c, -1).unwrap());
    }
}
