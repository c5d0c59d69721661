//! The finitely presented Zhu algebras: A(V_B) = C[x] + Cy, A(V_{A1}) and A_P,
//! with normal forms computed by word rewriting, plus the skew-polynomial
//! model of the y-part of A_P.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num::{One, Signed, Zero};
use rand::Rng;

use crate::{binom, fmt_q, q, qr, Error, Result, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tag {
    /// A(V_B) for the rank one lattice with (α|α) = 2N.
    VB(u32),
    VA1,
    AP,
}

/// Generator symbols. `Y`/`Z` double as e/f in A(V_{A1}).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    X,
    Y,
    Z,
    Xa,
    Xna,
    Xb,
    Xab,
}

impl Gen {
    pub fn name(self) -> &'static str {
        match self {
            Gen::X => "x",
            Gen::Y => "y",
            Gen::Z => "z",
            Gen::Xa => "xa",
            Gen::Xna => "xna",
            Gen::Xb => "xb",
            Gen::Xab => "xab",
        }
    }

    pub fn from_name(s: &str) -> Option<Gen> {
        Some(match s {
            "x" => Gen::X,
            "y" => Gen::Y,
            "z" => Gen::Z,
            "xa" => Gen::Xa,
            "xna" => Gen::Xna,
            "xb" => Gen::Xb,
            "xab" => Gen::Xab,
            _ => return None,
        })
    }
}

/// The six generators of A_P, in presentation order.
pub const AP_GENS: [Gen; 6] = [Gen::X, Gen::Y, Gen::Xa, Gen::Xna, Gen::Xb, Gen::Xab];

pub type Word = Vec<Gen>;

type Rule = (Word, Vec<(Q, Word)>);

fn allowed(tag: Tag, g: Gen) -> bool {
    match tag {
        Tag::VB(_) => matches!(g, Gen::X | Gen::Y),
        Tag::VA1 => matches!(g, Gen::X | Gen::Y | Gen::Z),
        Tag::AP => g != Gen::Z,
    }
}

fn vb_rules(n: u32) -> Vec<Rule> {
    use Gen::*;
    let n = q(n as i64);
    vec![
        (vec![Y, X], vec![(-n.clone(), vec![Y])]),
        (vec![X, Y], vec![(n, vec![Y])]),
        (vec![Y, Y], vec![]),
    ]
}

fn va1_rules() -> &'static [Rule] {
    static R: OnceLock<Vec<Rule>> = OnceLock::new();
    R.get_or_init(|| {
        use Gen::*;
        let h = qr(1, 2);
        vec![
            (vec![X, X, X], vec![(q(1), vec![X])]),
            (vec![X, Y], vec![(q(1), vec![Y])]),
            (vec![Y, X], vec![(q(-1), vec![Y])]),
            (vec![X, Z], vec![(q(-1), vec![Z])]),
            (vec![Z, X], vec![(q(1), vec![Z])]),
            (vec![Y, Y], vec![]),
            (vec![Z, Z], vec![]),
            (vec![Y, Z], vec![(h.clone(), vec![X, X]), (h.clone(), vec![X])]),
            (vec![Z, Y], vec![(h.clone(), vec![X, X]), (-h, vec![X])]),
        ]
    })
}

fn ap_rules() -> &'static [Rule] {
    static R: OnceLock<Vec<Rule>> = OnceLock::new();
    R.get_or_init(|| {
        use Gen::*;
        let h = qr(1, 2);
        let one = q(1);
        let m1 = q(-1);
        vec![
            (vec![X, X, X], vec![(one.clone(), vec![X])]),
            (vec![Y, X], vec![(one.clone(), vec![X, Y])]),
            (vec![X, Xa], vec![(one.clone(), vec![Xa])]),
            (vec![Xa, X], vec![(m1.clone(), vec![Xa])]),
            (vec![X, Xna], vec![(m1.clone(), vec![Xna])]),
            (vec![Xna, X], vec![(one.clone(), vec![Xna])]),
            (vec![Y, Xa], vec![(one.clone(), vec![Xa, Y]), (m1.clone(), vec![Xa])]),
            (vec![Y, Xna], vec![(one.clone(), vec![Xna, Y]), (one.clone(), vec![Xna])]),
            (vec![Xa, Xna], vec![(h.clone(), vec![X, X]), (h.clone(), vec![X])]),
            (vec![Xna, Xa], vec![(h.clone(), vec![X, X]), (-h, vec![X])]),
            (vec![Xb, Y], vec![(m1.clone(), vec![Xb])]),
            (vec![Y, Xb], vec![(one.clone(), vec![Xb])]),
            (vec![Xab, Y], vec![(m1.clone(), vec![Xab, X]), (m1.clone(), vec![Xab])]),
            (vec![Y, Xab], vec![(m1.clone(), vec![Xab, X])]),
            (vec![X, Xb], vec![(one.clone(), vec![Xb, X]), (m1.clone(), vec![Xb])]),
            (vec![X, Xab], vec![(one.clone(), vec![Xab, X]), (one.clone(), vec![Xab])]),
            (vec![Xb, X, X], vec![(one.clone(), vec![Xb, X])]),
            (vec![Xab, X, X], vec![(m1.clone(), vec![Xab, X])]),
            (vec![Xb, X, Y], vec![(m1.clone(), vec![Xb, X])]),
            (vec![Xab, X, Y], vec![]),
            (vec![Xa, Xb], vec![(one.clone(), vec![Xab, X]), (one.clone(), vec![Xab])]),
            (vec![Xb, Xa], vec![(one.clone(), vec![Xab, X])]),
            (vec![Xna, Xab], vec![(m1.clone(), vec![Xb, X]), (one.clone(), vec![Xb])]),
            (vec![Xab, Xna], vec![(m1, vec![Xb, X])]),
            (vec![Xa, Xa], vec![]),
            (vec![Xna, Xna], vec![]),
            (vec![Xb, Xb], vec![]),
            (vec![Xab, Xab], vec![]),
            (vec![Xa, Xab], vec![]),
            (vec![Xab, Xa], vec![]),
            (vec![Xb, Xab], vec![]),
            (vec![Xab, Xb], vec![]),
            (vec![Xb, Xna], vec![]),
            (vec![Xna, Xb], vec![]),
        ]
    })
}

/// First rule application in `w` (leftmost position, then rule order).
fn rewrite_once(rules: &[Rule], w: &[Gen]) -> Option<Vec<(Q, Word)>> {
    for i in 0..w.len() {
        for (lhs, rhs) in rules {
            if w[i..].starts_with(lhs) {
                let (pre, post) = (&w[..i], &w[i + lhs.len()..]);
                return Some(
                    rhs.iter()
                        .map(|(c, r)| {
                            let mut nw = pre.to_vec();
                            nw.extend_from_slice(r);
                            nw.extend_from_slice(post);
                            (c.clone(), nw)
                        })
                        .collect(),
                );
            }
        }
    }
    None
}

/// An element of one of the presented algebras, kept in normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalForm {
    tag: Tag,
    terms: BTreeMap<Word, Q>,
}

impl NormalForm {
    pub fn zero(tag: Tag) -> Self {
        NormalForm { tag, terms: BTreeMap::new() }
    }

    pub fn one(tag: Tag) -> Self {
        Self::word(tag, &[])
    }

    pub fn gen(tag: Tag, g: Gen) -> Self {
        Self::word(tag, &[g])
    }

    /// Normal form of a single word. Panics on a symbol outside the algebra.
    pub fn word(tag: Tag, w: &[Gen]) -> Self {
        Self::from_words(tag, &[(Q::one(), w.to_vec())])
    }

    /// Normal form of an arbitrary linear combination of words.
    pub fn from_words(tag: Tag, ws: &[(Q, Word)]) -> Self {
        for (_, w) in ws {
            for g in w {
                assert!(allowed(tag, *g), "symbol {} not in {:?}", g.name(), tag);
            }
        }
        let owned;
        let rules: &[Rule] = match tag {
            Tag::VB(n) => {
                owned = vb_rules(n);
                &owned
            }
            Tag::VA1 => va1_rules(),
            Tag::AP => ap_rules(),
        };
        let mut pending: BTreeMap<Word, Q> = BTreeMap::new();
        for (c, w) in ws {
            *pending.entry(w.clone()).or_insert_with(Q::zero) += c;
        }
        let mut out = NormalForm::zero(tag);
        while let Some((w, c)) = pending.pop_first() {
            if c.is_zero() {
                continue;
            }
            match rewrite_once(rules, &w) {
                Some(rhs) => {
                    for (d, nw) in rhs {
                        *pending.entry(nw).or_insert_with(Q::zero) += &c * d;
                    }
                }
                None => out.add_word(w, c),
            }
        }
        out
    }

    fn add_word(&mut self, w: Word, c: Q) {
        let e = self.terms.entry(w.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn tag(&self) -> Tag {
        self.tag
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Word, Q> {
        &self.terms
    }

    pub fn coeff(&self, w: &[Gen]) -> Q {
        self.terms.get(w).cloned().unwrap_or_else(Q::zero)
    }

    pub fn scaled(&self, c: &Q) -> Self {
        let mut out = NormalForm::zero(self.tag);
        if !c.is_zero() {
            for (w, d) in &self.terms {
                out.terms.insert(w.clone(), d * c);
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.tag != other.tag {
            return Err(Error::TagMismatch);
        }
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_word(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scaled(&q(-1)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.tag != other.tag {
            return Err(Error::TagMismatch);
        }
        let mut ws = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                ws.push((a * b, w));
            }
        }
        Ok(Self::from_words(self.tag, &ws))
    }
}

fn format_word(w: &[Gen]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let mut j = i;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        if j - i == 1 {
            parts.push(w[i].name().to_string());
        } else {
            parts.push(format!("{}^{}", w[i].name(), j - i));
        }
        i = j;
    }
    parts.join("*")
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let a = c.abs();
            let body = match (w.is_empty(), a.is_one()) {
                (true, _) => fmt_q(&a),
                (false, true) => format_word(w),
                (false, false) => format!("{}*{}", fmt_q(&a), format_word(w)),
            };
            if k == 0 {
                write!(f, "{}{}", if c.is_negative() { "-" } else { "" }, body)?;
            } else {
                write!(f, " {} {}", if c.is_negative() { "-" } else { "+" }, body)?;
            }
        }
        Ok(())
    }
}

fn is_j_word(w: &[Gen]) -> bool {
    matches!(w.first(), Some(Gen::Xb | Gen::Xab))
}

/// Split of an A_P element into its A^P part and its part in the ideal J.
pub fn ap_decompose(u: &NormalForm) -> (NormalForm, NormalForm) {
    let mut a = NormalForm::zero(Tag::AP);
    let mut j = NormalForm::zero(Tag::AP);
    for (w, c) in &u.terms {
        let part = if is_j_word(w) { &mut j } else { &mut a };
        part.terms.insert(w.clone(), c.clone());
    }
    (a, j)
}

/// Normal words spanning J.
pub fn j_basis() -> Vec<Word> {
    use Gen::*;
    vec![vec![Xb], vec![Xb, X], vec![Xab], vec![Xab, X]]
}

fn delta_weight(g: Gen, tag: Tag) -> Option<i64> {
    match (tag, g) {
        (_, Gen::X) => Some(0),
        (Tag::AP, Gen::Xa) | (Tag::VA1, Gen::Y) => Some(-1),
        (Tag::AP, Gen::Xna) | (Tag::VA1, Gen::Z) => Some(1),
        _ => None,
    }
}

/// The derivation [y, ·] on the base ring span{1, x, x², xa, xna}.
///
/// Accepts AP elements free of y and J, or VA1 elements (y, z standing for
/// xa, xna). On normal words it is diagonal: each xa contributes −1, each xna +1.
pub fn delta(a: &NormalForm) -> Result<NormalForm> {
    if let Tag::VB(_) = a.tag {
        return Err(Error::OutOfBaseRing(format!("{a}")));
    }
    let mut out = NormalForm::zero(a.tag);
    for (w, c) in &a.terms {
        let mut s = 0;
        for g in w {
            s += delta_weight(*g, a.tag).ok_or_else(|| Error::OutOfBaseRing(format!("{a}")))?;
        }
        if s != 0 {
            out.terms.insert(w.clone(), c * q(s));
        }
    }
    Ok(out)
}

/// Element of A(V_{Zα})[y; Id; δ]: coefficients (VA1-tagged) indexed by y-degree.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SkewPoly {
    pub coeffs: BTreeMap<u32, NormalForm>,
}

impl SkewPoly {
    pub fn one() -> Self {
        Self::monomial(NormalForm::one(Tag::VA1), 0)
    }

    pub fn y() -> Self {
        Self::monomial(NormalForm::one(Tag::VA1), 1)
    }

    pub fn monomial(a: NormalForm, deg: u32) -> Self {
        let mut s = SkewPoly::default();
        s.add_at(deg, &a);
        s
    }

    fn add_at(&mut self, deg: u32, a: &NormalForm) {
        let cur = self.coeffs.remove(&deg).unwrap_or_else(|| NormalForm::zero(Tag::VA1));
        let sum = cur.add(a).expect("VA1 coefficient");
        if !sum.is_zero() {
            self.coeffs.insert(deg, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// Product in the Ore extension, via y^m b = Σ_k C(m,k) δ^k(b) y^{m−k}.
pub fn skew_mul(u: &SkewPoly, v: &SkewPoly) -> SkewPoly {
    let mut out = SkewPoly::default();
    for (&m, a) in &u.coeffs {
        for (&n, b) in &v.coeffs {
            let mut d = b.clone();
            for k in 0..=m {
                if d.is_zero() {
                    break;
                }
                let term = a.mul(&d).expect("VA1 coefficient").scaled(&binom(m as i64, k as i64));
                out.add_at(m - k + n, &term);
                d = delta(&d).expect("VA1 coefficient");
            }
        }
    }
    out
}

/// The basis-preserving map A^P → A(V_{Zα})[y; Id; δ]. Fails on J.
pub fn to_skew(u: &NormalForm) -> Result<SkewPoly> {
    if u.tag != Tag::AP {
        return Err(Error::TagMismatch);
    }
    let mut out = SkewPoly::default();
    for (w, c) in &u.terms {
        let deg = w.iter().filter(|g| **g == Gen::Y).count() as u32;
        let mut base = Vec::new();
        for g in w.iter().filter(|g| **g != Gen::Y) {
            base.push(match g {
                Gen::X => Gen::X,
                Gen::Xa => Gen::Y,
                Gen::Xna => Gen::Z,
                _ => return Err(Error::OutOfBaseRing(format!("{u}"))),
            });
        }
        out.add_at(deg, &NormalForm::word(Tag::VA1, &base).scaled(c));
    }
    Ok(out)
}

/// Random A^P element: up to three normal basis words with y-degree ≤ 3.
pub fn random_ap_part<R: Rng>(rng: &mut R) -> NormalForm {
    use Gen::*;
    let mut ws = Vec::new();
    for _ in 0..rng.gen_range(1..=3) {
        let mut w = match rng.gen_range(0..5) {
            0 => vec![],
            1 => vec![X],
            2 => vec![X, X],
            3 => vec![Xa],
            _ => vec![Xna],
        };
        w.extend(std::iter::repeat(Y).take(rng.gen_range(0..=3)));
        ws.push((q(rng.gen_range(-3..=3)), w));
    }
    NormalForm::from_words(Tag::AP, &ws)
}

/// Random A_P element built from generator words of length ≤ `max_len`.
pub fn random_ap_element<R: Rng>(rng: &mut R, max_len: usize) -> NormalForm {
    let mut ws = Vec::new();
    for _ in 0..rng.gen_range(1..=2) {
        let len = rng.gen_range(0..=max_len);
        let w: Word = (0..len).map(|_| AP_GENS[rng.gen_range(0..AP_GENS.len())]).collect();
        let mut c = q(rng.gen_range(-3..=3));
        if c.is_zero() {
            c = q(1);
        }
        ws.push((c, w));
    }
    NormalForm::from_words(Tag::AP, &ws)
}

/// True iff `to_skew` intertwines `mul` and `skew_mul` on `samples` random pairs.
pub fn iso_check(samples: usize, seed: u64) -> bool {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let unit = NormalForm::one(Tag::AP);
    let mut pairs = vec![(unit.clone(), unit)];
    for _ in 0..samples {
        pairs.push((random_ap_part(&mut rng), random_ap_part(&mut rng)));
    }
    pairs.iter().all(|(u, v)| {
        let lhs = to_skew(&u.mul(v).expect("same tag"));
        let rhs = skew_mul(&to_skew(u).expect("A^P"), &to_skew(v).expect("A^P"));
        matches!(lhs, Ok(l) if l == rhs)
    })
}

/// A defining relation of A_P: Σ c·word = 0.
#[derive(Debug, Clone)]
pub struct Relation {
    pub name: String,
    pub terms: Vec<(Q, Word)>,
}

fn rel(name: &str, terms: Vec<(Q, Word)>) -> Relation {
    Relation { name: name.to_string(), terms }
}

/// The thirty defining relations of A_P.
pub fn ap_relations() -> Vec<Relation> {
    use Gen::*;
    let (one, m1, h, mh) = (q(1), q(-1), qr(1, 2), qr(-1, 2));
    vec![
        rel("x*xa = xa", vec![(one.clone(), vec![X, Xa]), (m1.clone(), vec![Xa])]),
        rel("x*xna = -xna", vec![(one.clone(), vec![X, Xna]), (one.clone(), vec![Xna])]),
        rel("xa*x = -xa", vec![(one.clone(), vec![Xa, X]), (one.clone(), vec![Xa])]),
        rel("xna*x = xna", vec![(one.clone(), vec![Xna, X]), (m1.clone(), vec![Xna])]),
        rel(
            "xa*xna = 1/2*x^2 + 1/2*x",
            vec![(one.clone(), vec![Xa, Xna]), (mh.clone(), vec![X, X]), (mh.clone(), vec![X])],
        ),
        rel(
            "xna*xa = 1/2*x^2 - 1/2*x",
            vec![(one.clone(), vec![Xna, Xa]), (mh, vec![X, X]), (h, vec![X])],
        ),
        rel("x*y = y*x", vec![(one.clone(), vec![X, Y]), (m1.clone(), vec![Y, X])]),
        rel("x^3 = x", vec![(one.clone(), vec![X, X, X]), (m1.clone(), vec![X])]),
        rel(
            "y*xa = xa*y - xa",
            vec![(one.clone(), vec![Y, Xa]), (m1.clone(), vec![Xa, Y]), (one.clone(), vec![Xa])],
        ),
        rel(
            "y*xna = xna*y + xna",
            vec![(one.clone(), vec![Y, Xna]), (m1.clone(), vec![Xna, Y]), (m1.clone(), vec![Xna])],
        ),
        rel("xb*y = -xb", vec![(one.clone(), vec![Xb, Y]), (one.clone(), vec![Xb])]),
        rel("y*xb = xb", vec![(one.clone(), vec![Y, Xb]), (m1.clone(), vec![Xb])]),
        rel(
            "xab*(x+y) = -xab",
            vec![(one.clone(), vec![Xab, X]), (one.clone(), vec![Xab, Y]), (one.clone(), vec![Xab])],
        ),
        rel(
            "(x+y)*xab = xab",
            vec![(one.clone(), vec![X, Xab]), (one.clone(), vec![Y, Xab]), (m1.clone(), vec![Xab])],
        ),
        rel(
            "x*xb = xb*x - xb",
            vec![(one.clone(), vec![X, Xb]), (m1.clone(), vec![Xb, X]), (one.clone(), vec![Xb])],
        ),
        rel(
            "x*xab = xab*x + xab",
            vec![(one.clone(), vec![X, Xab]), (m1.clone(), vec![Xab, X]), (m1.clone(), vec![Xab])],
        ),
        rel("xa*xb = -xab*y", vec![(one.clone(), vec![Xa, Xb]), (one.clone(), vec![Xab, Y])]),
        rel(
            "xb*xa = -xab*y - xab",
            vec![(one.clone(), vec![Xb, Xa]), (one.clone(), vec![Xab, Y]), (one.clone(), vec![Xab])],
        ),
        rel(
            "xna*xab = -xb*x + xb",
            vec![(one.clone(), vec![Xna, Xab]), (one.clone(), vec![Xb, X]), (m1, vec![Xb])],
        ),
        rel("xab*xna = -xb*x", vec![(one.clone(), vec![Xab, Xna]), (one.clone(), vec![Xb, X])]),
        rel("xa^2 = 0", vec![(one.clone(), vec![Xa, Xa])]),
        rel("xna^2 = 0", vec![(one.clone(), vec![Xna, Xna])]),
        rel("xb^2 = 0", vec![(one.clone(), vec![Xb, Xb])]),
        rel("xab^2 = 0", vec![(one.clone(), vec![Xab, Xab])]),
        rel("xa*xab = 0", vec![(one.clone(), vec![Xa, Xab])]),
        rel("xab*xa = 0", vec![(one.clone(), vec![Xab, Xa])]),
        rel("xb*xab = 0", vec![(one.clone(), vec![Xb, Xab])]),
        rel("xab*xb = 0", vec![(one.clone(), vec![Xab, Xb])]),
        rel("xb*xna = 0", vec![(one.clone(), vec![Xb, Xna])]),
        rel("xna*xb = 0", vec![(one, vec![Xna, Xb])]),
    ]
}

/// Somewhere the A_P generators can be sent, so relations can be tested there.
pub trait Realization {
    type Value: Clone;
    fn unit(&self) -> Result<Self::Value>;
    fn generator(&self, g: Gen) -> Result<Self::Value>;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;
    fn combine(&self, terms: &[(Q, Self::Value)]) -> Result<Self::Value>;
    fn is_zero(&self, v: &Self::Value) -> bool;
}

/// Image of a word, multiplied left to right.
pub fn eval_word<R: Realization>(r: &R, w: &[Gen]) -> Result<R::Value> {
    let mut acc = r.unit()?;
    for g in w {
        acc = r.mul(&acc, &r.generator(*g)?)?;
    }
    Ok(acc)
}

pub fn eval_relation<R: Realization>(r: &R, rel: &Relation) -> Result<R::Value> {
    let mut parts = Vec::new();
    for (c, w) in &rel.terms {
        parts.push((c.clone(), eval_word(r, w)?));
    }
    r.combine(&parts)
}

pub fn relation_holds<R: Realization>(r: &R, rel: &Relation) -> Result<bool> {
    Ok(r.is_zero(&eval_relation(r, rel)?))
}

/// A_P acting on itself.
pub struct ApSelf;

impl Realization for ApSelf {
    type Value = NormalForm;
    fn unit(&self) -> Result<NormalForm> {
        Ok(NormalForm::one(Tag::AP))
    }
    fn generator(&self, g: Gen) -> Result<NormalForm> {
        Ok(NormalForm::gen(Tag::AP, g))
    }
    fn mul(&self, a: &NormalForm, b: &NormalForm) -> Result<NormalForm> {
        a.mul(b)
    }
    fn combine(&self, terms: &[(Q, NormalForm)]) -> Result<NormalForm> {
        let mut out = NormalForm::zero(Tag::AP);
        for (c, v) in terms {
            out = out.add(&v.scaled(c))?;
        }
        Ok(out)
    }
    fn is_zero(&self, v: &NormalForm) -> bool {
        v.is_zero()
    }
}
