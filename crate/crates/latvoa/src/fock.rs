//! Fock space states `h₁(−n₁)⋯h_k(−n_k)e^γ` with exact rational coefficients.

use std::cmp::Reverse;
use std::collections::BTreeMap;

use crate::lattice::{Cocycle, Isometry, Lattice, SubMonoid};
use crate::{fmt_q, q, qr, Error, Result, Q};
use num::{One, Signed, ToPrimitive, Zero};

/// Lattice charge with rational coordinates, optionally carrying the external weight λ.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Charge {
    pub v: Vec<Q>,
    pub lam: bool,
}

impl Charge {
    pub fn zero(rank: usize) -> Self {
        Charge { v: vec![Q::zero(); rank], lam: false }
    }

    pub fn int(v: &[i64]) -> Self {
        Charge { v: v.iter().map(|&x| q(x)).collect(), lam: false }
    }

    pub fn with_lambda(mut self) -> Self {
        self.lam = true;
        self
    }

    pub fn is_zero(&self) -> bool {
        !self.lam && self.v.iter().all(Zero::is_zero)
    }

    /// Integer coordinates, if the lattice part is integral.
    pub fn ints(&self) -> Option<Vec<i64>> {
        self.v.iter().map(crate::to_int).collect()
    }

    pub fn add(&self, other: &Charge) -> Result<Charge> {
        if self.lam && other.lam {
            return Err(Error::BadCharge("λ can appear at most once in a charge".into()));
        }
        Ok(Charge {
            v: self.v.iter().zip(&other.v).map(|(a, b)| a + b).collect(),
            lam: self.lam || other.lam,
        })
    }

    pub fn sub_lattice(&self, other: &[Q]) -> Charge {
        Charge { v: self.v.iter().zip(other).map(|(a, b)| a - b).collect(), lam: self.lam }
    }
}

/// Creation factors, canonically sorted by (mode descending, basis index ascending),
/// followed by the charge.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FockTerm {
    pub factors: Vec<(usize, u32)>,
    pub charge: Charge,
}

impl FockTerm {
    pub fn new(mut factors: Vec<(usize, u32)>, charge: Charge) -> Self {
        factors.sort_by_key(|&(i, m)| (Reverse(m), i));
        FockTerm { factors, charge }
    }

    pub fn vacuum(rank: usize) -> Self {
        FockTerm { factors: vec![], charge: Charge::zero(rank) }
    }

    pub fn exp(charge: Charge) -> Self {
        FockTerm { factors: vec![], charge }
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|f| f.1).sum()
    }

    pub fn max_mode(&self) -> u32 {
        self.factors.first().map_or(0, |f| f.1)
    }

    fn with_factor(&self, i: usize, m: u32) -> FockTerm {
        let mut f = self.factors.clone();
        let pos = f.partition_point(|&(j, n)| (Reverse(n), j) < (Reverse(m), i));
        f.insert(pos, (i, m));
        FockTerm { factors: f, charge: self.charge.clone() }
    }
}

/// Finite linear combination of Fock terms; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FockVector {
    pub terms: BTreeMap<FockTerm, Q>,
}

impl FockVector {
    pub fn zero() -> Self {
        FockVector::default()
    }

    pub fn from_term(t: FockTerm) -> Self {
        Self::from_scaled(t, Q::one())
    }

    pub fn from_scaled(t: FockTerm, c: Q) -> Self {
        let mut v = FockVector::zero();
        v.add_term(t, c);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, t: FockTerm, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(t) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &FockVector, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (t, x) in &other.terms {
            self.add_term(t.clone(), x * c);
        }
    }

    pub fn add_assign(&mut self, other: &FockVector) {
        self.add_scaled(other, &Q::one());
    }

    pub fn scaled(&self, c: &Q) -> FockVector {
        let mut v = FockVector::zero();
        v.add_scaled(self, c);
        v
    }

    pub fn plus(&self, other: &FockVector) -> FockVector {
        let mut v = self.clone();
        v.add_assign(other);
        v
    }

    pub fn minus(&self, other: &FockVector) -> FockVector {
        let mut v = self.clone();
        v.add_scaled(other, &-Q::one());
        v
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FockTerm, &Q)> {
        self.terms.iter()
    }
}

/// Declared pairings of the external weight λ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaData {
    /// `(λ|α_i)` for each basis vector.
    pub pairings: Vec<Q>,
    /// `(λ|λ)`.
    pub norm: Q,
}

/// A raw factor for [`Space::normalize`]: an arbitrary `h ∈ Q⊗L` and a mode.
pub type RawFactor = (Vec<Q>, i64);

/// Lattice, cocycle and λ data: everything needed to compute with Fock vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Space {
    pub lattice: Lattice,
    pub cocycle: Cocycle,
    pub lambda: Option<LambdaData>,
}

impl Space {
    pub fn new(lattice: Lattice, cocycle: Cocycle, lambda: Option<LambdaData>) -> Result<Self> {
        if !cocycle.validate(&lattice) {
            return Err(Error::InvalidLattice("cocycle violates ε(α,β)ε(β,α)=(−1)^(α|β)".into()));
        }
        if let Some(l) = &lambda {
            if l.pairings.len() != lattice.rank() {
                return Err(Error::DimensionMismatch { expected: lattice.rank(), got: l.pairings.len() });
            }
        }
        Ok(Space { lattice, cocycle, lambda })
    }

    /// `V_{Zα}` with `(α|α) = 2N` and trivial cocycle.
    pub fn rank_one(n: i64) -> Self {
        Space { lattice: Lattice::rank_one(n), cocycle: Cocycle::trivial(1), lambda: None }
    }

    /// `V_{A₂}` with the cocycle ε(β,α) = −1.
    pub fn a2() -> Self {
        Space { lattice: Lattice::a2(), cocycle: Cocycle::a2(), lambda: None }
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn vacuum(&self) -> FockVector {
        FockVector::from_term(FockTerm::vacuum(self.rank()))
    }

    /// `e^γ` for an integral γ.
    pub fn exp(&self, g: &[i64]) -> FockVector {
        FockVector::from_term(FockTerm::exp(Charge::int(g)))
    }

    /// `α_i(−1)vac`.
    pub fn h1(&self, i: usize) -> FockVector {
        FockVector::from_term(FockTerm::new(vec![(i, 1)], Charge::zero(self.rank())))
    }

    /// Builds a single term from (basis index, positive mode) factors and a charge.
    pub fn term(&self, factors: &[(usize, u32)], charge: &[i64]) -> FockVector {
        FockVector::from_term(FockTerm::new(factors.to_vec(), Charge::int(charge)))
    }

    fn lambda_pair(&self, h: &[Q]) -> Q {
        match &self.lambda {
            Some(l) => h.iter().zip(&l.pairings).fold(Q::zero(), |acc, (a, b)| acc + a * b),
            None => Q::zero(),
        }
    }

    /// `(h | c)` for `h ∈ Q⊗L`.
    pub fn pair_h(&self, h: &[Q], c: &Charge) -> Q {
        let mut s = self.lattice.pairing_unchecked(h, &c.v);
        if c.lam {
            s += self.lambda_pair(h);
        }
        s
    }

    pub fn pair_charges(&self, a: &Charge, b: &Charge) -> Q {
        let mut s = self.lattice.pairing_unchecked(&a.v, &b.v);
        if a.lam {
            s += self.lambda_pair(&b.v);
        }
        if b.lam {
            s += self.lambda_pair(&a.v);
        }
        if a.lam && b.lam {
            if let Some(l) = &self.lambda {
                s += &l.norm;
            }
        }
        s
    }

    /// Lowest weight `½(c|c)` of the charge sector `c`.
    pub fn min_weight(&self, c: &Charge) -> Q {
        self.pair_charges(c, c) * qr(1, 2)
    }

    pub fn weight(&self, t: &FockTerm) -> Q {
        q(t.degree() as i64) + self.min_weight(&t.charge)
    }

    /// Splits `v` into components of equal weight, in increasing weight order.
    pub fn weight_components(&self, v: &FockVector) -> Vec<(Q, FockVector)> {
        let mut out: BTreeMap<Q, FockVector> = BTreeMap::new();
        for (t, c) in v.iter() {
            out.entry(self.weight(t)).or_default().add_term(t.clone(), c.clone());
        }
        out.into_iter().collect()
    }

    /// The weight of a homogeneous vector.
    pub fn homogeneous_weight(&self, v: &FockVector) -> Option<Q> {
        let mut w = None;
        for t in v.terms.keys() {
            let x = self.weight(t);
            match &w {
                None => w = Some(x),
                Some(y) if *y == x => {}
                _ => return None,
            }
        }
        w
    }

    pub fn charge_of(&self, v: &FockVector) -> Result<Charge> {
        let mut it = v.terms.keys();
        let first = it.next().ok_or(Error::ZeroVector)?;
        if it.any(|t| t.charge != first.charge) {
            return Err(Error::MixedCharge);
        }
        Ok(first.charge.clone())
    }

    /// Expands arbitrary creation factors over the lattice basis and merges like terms.
    pub fn normalize(&self, raw: &[(Q, Vec<RawFactor>, Charge)]) -> Result<FockVector> {
        let r = self.rank();
        let mut out = FockVector::zero();
        for (c, factors, charge) in raw {
            if charge.v.len() != r {
                return Err(Error::DimensionMismatch { expected: r, got: charge.v.len() });
            }
            let mut acc = FockVector::from_scaled(FockTerm::exp(charge.clone()), c.clone());
            for (h, m) in factors {
                if *m >= 0 {
                    return Err(Error::NonnegativeMode(*m));
                }
                if h.len() != r {
                    return Err(Error::DimensionMismatch { expected: r, got: h.len() });
                }
                acc = self.heisenberg_act(h, *m, &acc);
            }
            out.add_assign(&acc);
        }
        Ok(out)
    }

    /// `α_i(m)` applied to `v`.
    pub fn act_basis(&self, i: usize, m: i64, v: &FockVector) -> FockVector {
        let mut out = FockVector::zero();
        for (t, c) in v.iter() {
            self.act_basis_term(i, m, t, c, &mut out);
        }
        out
    }

    pub(crate) fn act_basis_term(&self, i: usize, m: i64, t: &FockTerm, c: &Q, out: &mut FockVector) {
        if m < 0 {
            out.add_term(t.with_factor(i, (-m) as u32), c.clone());
        } else if m == 0 {
            let mut h = vec![Q::zero(); self.rank()];
            h[i] = Q::one();
            let e = self.pair_h(&h, &t.charge);
            out.add_term(t.clone(), c * e);
        } else {
            let mu = m as u32;
            for (p, &(j, n)) in t.factors.iter().enumerate() {
                if n != mu {
                    continue;
                }
                let g = self.lattice.gram()[i][j];
                if g == 0 {
                    continue;
                }
                let mut f = t.factors.clone();
                f.remove(p);
                out.add_term(FockTerm { factors: f, charge: t.charge.clone() }, c * q(m * g));
            }
        }
    }

    /// `h(m)` applied to `v` for `h ∈ Q⊗L`, with `K` acting as 1.
    pub fn heisenberg_act(&self, h: &[Q], m: i64, v: &FockVector) -> FockVector {
        let mut out = FockVector::zero();
        for (i, hi) in h.iter().enumerate() {
            if !hi.is_zero() {
                out.add_scaled(&self.act_basis(i, m, v), hi);
            }
        }
        out
    }

    /// All canonical factor lists with total mode `d`.
    pub fn factor_lists(&self, d: u32) -> Vec<Vec<(usize, u32)>> {
        fn go(rank: usize, left: u32, max: (u32, usize), cur: &mut Vec<(usize, u32)>, out: &mut Vec<Vec<(usize, u32)>>) {
            if left == 0 {
                out.push(cur.clone());
                return;
            }
            for m in (1..=left.min(max.0)).rev() {
                let start = if m == max.0 { max.1 } else { 0 };
                for i in start..rank {
                    cur.push((i, m));
                    go(rank, left - m, (m, i), cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self.rank(), d, (d, 0), &mut Vec::new(), &mut out);
        out
    }

    /// Canonical terms of charge `c` and weight exactly `w`.
    pub fn terms_of_weight(&self, c: &Charge, w: &Q) -> Vec<FockTerm> {
        let d = w - self.min_weight(c);
        if d.is_negative() || !d.is_integer() {
            return vec![];
        }
        let d = d.to_integer().to_u32().expect("degree fits u32");
        self.factor_lists(d).into_iter().map(|f| FockTerm { factors: f, charge: c.clone() }).collect()
    }

    /// Integral charges `γ` with `½(γ|γ) ≤ max_w`, in lexicographic order.
    pub fn charges_upto(&self, max_w: &Q) -> Vec<Vec<i64>> {
        let r = self.rank();
        let ginv = self.lattice.gram_inverse();
        let two_w = (max_w * q(2)).to_f64().unwrap_or(0.0).max(0.0);
        let bounds: Vec<i64> =
            (0..r).map(|i| (two_w * ginv[i][i].to_f64().unwrap()).sqrt().floor() as i64 + 1).collect();
        let mut out = Vec::new();
        let mut cur = vec![0i64; r];
        fn go(i: usize, bounds: &[i64], cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
            if i == bounds.len() {
                out.push(cur.clone());
                return;
            }
            for x in -bounds[i]..=bounds[i] {
                cur[i] = x;
                go(i + 1, bounds, cur, out);
            }
        }
        go(0, &bounds, &mut cur, &mut out);
        out.retain(|g| q(self.lattice.pairing_int(g, g)) * qr(1, 2) <= *max_w);
        out
    }

    /// Charges of `M` with lowest weight at most `max_w`.
    pub fn monoid_charges_upto(&self, m: &SubMonoid, max_w: &Q) -> Result<Vec<Vec<i64>>> {
        let mut out = Vec::new();
        for g in self.charges_upto(max_w) {
            if m.contains(&g)? {
                out.push(g);
            }
        }
        Ok(out)
    }

    /// Canonical basis terms of `V_M` of weight at most `max_w`.
    pub fn basis_upto(&self, m: &SubMonoid, max_w: &Q) -> Result<Vec<FockTerm>> {
        let mut out = Vec::new();
        for g in self.monoid_charges_upto(m, max_w)? {
            let c = Charge::int(&g);
            let lo = self.min_weight(&c);
            let mut w = lo;
            while w <= *max_w {
                out.extend(self.terms_of_weight(&c, &w));
                w += Q::one();
            }
        }
        out.sort_by(|a, b| (self.weight(a), &a.charge, &a.factors).cmp(&(self.weight(b), &b.charge, &b.factors)));
        Ok(out)
    }

    /// Number of canonical terms of weight exactly `n` with charge in `M`.
    pub fn graded_dim(&self, m: &SubMonoid, n: &Q) -> Result<u64> {
        let mut memo = BTreeMap::new();
        let mut total = 0u64;
        for g in self.monoid_charges_upto(m, n)? {
            let d = n - self.min_weight(&Charge::int(&g));
            if d.is_integer() {
                let d = d.to_integer().to_u32().expect("degree fits u32");
                total += colored_partitions(self.rank() as u32, d, &mut memo);
            }
        }
        Ok(total)
    }

    pub fn apply_isometry(&self, s: &Isometry, v: &FockVector) -> Result<FockVector> {
        if !s.validate(&self.lattice) {
            return Err(Error::InvalidIsometry);
        }
        let r = self.rank();
        let mut raw = Vec::new();
        for (t, c) in v.iter() {
            let factors = t
                .factors
                .iter()
                .map(|&(i, m)| {
                    let mut e = vec![Q::zero(); r];
                    e[i] = Q::one();
                    (s.apply(&e), -(m as i64))
                })
                .collect();
            raw.push((c.clone(), factors, Charge { v: s.apply(&t.charge.v), lam: t.charge.lam }));
        }
        self.normalize(&raw)
    }

    fn format_charge(&self, c: &Charge) -> String {
        if c.is_zero() {
            return "vac".into();
        }
        let coords: Vec<String> = c.v.iter().map(fmt_q).collect();
        format!("E[{}{}]", coords.join(","), if c.lam { ";L" } else { "" })
    }

    pub fn format_term(&self, t: &FockTerm) -> String {
        let mut s = String::new();
        for &(i, m) in &t.factors {
            s.push_str(&format!("{}(-{})", self.lattice.names()[i], m));
        }
        s.push_str(&self.format_charge(&t.charge));
        s
    }

    /// Terms in output order: weight, then charge, then factors.
    pub fn ordered_terms<'a>(&self, v: &'a FockVector) -> Vec<(&'a FockTerm, &'a Q)> {
        let mut ts: Vec<_> = v.iter().collect();
        ts.sort_by(|a, b| (self.weight(a.0), &a.0.charge, &a.0.factors).cmp(&(self.weight(b.0), &b.0.charge, &b.0.factors)));
        ts
    }

    /// Canonical text form, readable back by the expression grammar.
    pub fn format(&self, v: &FockVector) -> String {
        if v.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (t, c)) in self.ordered_terms(v).into_iter().enumerate() {
            let body = self.format_term(t);
            let a = c.abs();
            let coef = if a.is_one() { String::new() } else { format!("{}*", fmt_q(&a)) };
            if k == 0 {
                if c.is_negative() {
                    s.push_str(&format!("-{}*{}", fmt_q(&a), body));
                } else {
                    s.push_str(&format!("{coef}{body}"));
                }
            } else {
                s.push_str(if c.is_negative() { " - " } else { " + " });
                s.push_str(&format!("{coef}{body}"));
            }
        }
        s
    }
}

/// Number of partitions of `d` into parts of `colors` colours.
pub fn colored_partitions(colors: u32, d: u32, memo: &mut BTreeMap<(u32, u32, u32), u64>) -> u64 {
    fn go(colors: u32, d: u32, max: u32, memo: &mut BTreeMap<(u32, u32, u32), u64>) -> u64 {
        if d == 0 {
            return 1;
        }
        if max == 0 {
            return 0;
        }
        if let Some(&x) = memo.get(&(colors, d, max)) {
            return x;
        }
        // choose how many parts of size `max` (each in one of `colors` colours)
        let mut total = 0;
        let mut k = 0;
        while k * max <= d {
            total += multichoose(colors, k) * go(colors, d - k * max, max - 1, memo);
            k += 1;
        }
        memo.insert((colors, d, max), total);
        total
    }
    go(colors, d, d, memo)
}

fn multichoose(n: u32, k: u32) -> u64 {
    let mut r: u64 = 1;
    for i in 0..k as u64 {
        r = r * (n as u64 + i) / (i + 1);
    }
    r
}
