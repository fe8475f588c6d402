//! Weight-graded bases of `H^{⊗n}` and the operators acting on them.
//!
//! Slots are indexed from 0. An [`OperatorExpr`] is a formal sum of words of
//! atomic operators; under [`Convention::RightAction`] a word `O1 O2 ... Ok`
//! acts on the right, so `O1` is applied first.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combinatorics::{weak_compositions, WeightVector};
use crate::hopf::{self, words_with_content, HopfAlgebra, HopfBasisElement, HopfKind};
use crate::linear::{rat, LinComb, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TensorError {
    #[error("operator {atom:?} cannot act on arity {arity}")]
    Arity { atom: Atom, arity: usize },
    #[error("terms of the sum land in arities {0} and {1}")]
    MixedArity(usize, usize),
    #[error("weight mismatch: {0:?} vs {1:?}")]
    WeightMismatch(Vec<u32>, Vec<u32>),
}

/// An n-tuple of Hopf basis elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorBasisElement(pub Vec<HopfBasisElement>);

impl TensorBasisElement {
    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self, num_vars: usize) -> WeightVector {
        let mut w = vec![0u32; num_vars];
        for x in &self.0 {
            x.add_weight(&mut w);
        }
        WeightVector::new(w)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(HopfBasisElement::degree).sum()
    }
}

/// A homogeneous linear combination of basis tuples of fixed arity.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorVector {
    pub arity: usize,
    pub terms: LinComb<TensorBasisElement>,
}

impl fmt::Debug for TensorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.terms)
    }
}

impl TensorVector {
    pub fn zero(arity: usize) -> Self {
        TensorVector {
            arity,
            terms: LinComb::new(),
        }
    }

    pub fn basis(t: TensorBasisElement) -> Self {
        TensorVector {
            arity: t.arity(),
            terms: LinComb::basis(t),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    /// The common weight of all terms, or `None` for the zero vector.
    pub fn weight(&self, num_vars: usize) -> Result<Option<WeightVector>, TensorError> {
        let mut found: Option<WeightVector> = None;
        for t in self.terms.keys() {
            let w = t.weight(num_vars);
            match &found {
                None => found = Some(w),
                Some(prev) if *prev != w => {
                    return Err(TensorError::WeightMismatch(
                        prev.entries().to_vec(),
                        w.entries().to_vec(),
                    ))
                }
                _ => {}
            }
        }
        Ok(found)
    }

    /// Sum of two vectors, rejecting different arities or weights.
    pub fn checked_add(&self, other: &Self, num_vars: usize) -> Result<Self, TensorError> {
        if self.arity != other.arity {
            return Err(TensorError::MixedArity(self.arity, other.arity));
        }
        if let (Some(a), Some(b)) = (self.weight(num_vars)?, other.weight(num_vars)?) {
            if a != b {
                return Err(TensorError::WeightMismatch(
                    a.entries().to_vec(),
                    b.entries().to_vec(),
                ));
            }
        }
        let mut terms = self.terms.clone();
        terms.add_assign(&other.terms);
        Ok(TensorVector {
            arity: self.arity,
            terms,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    Identity,
    /// Transposes two slots.
    Swap(usize, usize),
    /// Antipode in one slot.
    AntipodeAt(usize),
    /// `a⊗b⊗c ↦ a₍₁₎ ⊗ a₍₂₎b ⊗ c`.
    E,
    /// `a⊗b⊗c ↦ ab₍₁₎ ⊗ b₍₂₎ ⊗ c`.
    F,
    /// Coproduct of slot `i`, raising the arity by one.
    CoproductInto(usize),
    /// `a⊗b ↦ S(b₍₁₎) ⊗ aS(b₍₂₎)`, the action of `st`.
    Rank2Gamma,
    /// `a⊗b ↦ b⊗a`.
    Rank2Tau,
    /// `a⊗b ↦ S(a)⊗b`.
    Rank2Delta,
    /// `a⊗b ↦ S(b)⊗a`.
    Rank2S,
}

impl Atom {
    /// Output arity for a given input arity, if the atom accepts it.
    pub fn output_arity(&self, arity: usize) -> Option<usize> {
        match *self {
            Atom::Identity => Some(arity),
            Atom::Swap(i, j) => (i < arity && j < arity).then_some(arity),
            Atom::AntipodeAt(i) => (i < arity).then_some(arity),
            Atom::E | Atom::F => (arity == 3).then_some(arity),
            Atom::CoproductInto(i) => (i < arity).then_some(arity + 1),
            Atom::Rank2Gamma | Atom::Rank2Tau | Atom::Rank2Delta | Atom::Rank2S => {
                (arity == 2).then_some(arity)
            }
        }
    }

    /// Image of one basis tuple, as integer-weighted terms.
    fn act(&self, t: &TensorBasisElement, out: &mut Vec<(TensorBasisElement, i64)>) {
        let s = &t.0;
        match *self {
            Atom::Identity => out.push((t.clone(), 1)),
            Atom::Swap(i, j) => {
                let mut v = s.clone();
                v.swap(i, j);
                out.push((TensorBasisElement(v), 1));
            }
            Atom::AntipodeAt(i) => {
                let mut v = s.clone();
                let (y, sign) = hopf::antipode(&s[i]);
                v[i] = y;
                out.push((TensorBasisElement(v), sign));
            }
            Atom::E => {
                for (a1, a2, c) in hopf::coproduct_terms(&s[0]) {
                    out.push((TensorBasisElement(vec![a1, hopf::mul(&a2, &s[1]), s[2].clone()]), c));
                }
            }
            Atom::F => {
                for (b1, b2, c) in hopf::coproduct_terms(&s[1]) {
                    out.push((TensorBasisElement(vec![hopf::mul(&s[0], &b1), b2, s[2].clone()]), c));
                }
            }
            Atom::CoproductInto(i) => {
                for (x1, x2, c) in hopf::coproduct_terms(&s[i]) {
                    let mut v = Vec::with_capacity(s.len() + 1);
                    v.extend_from_slice(&s[..i]);
                    v.push(x1);
                    v.push(x2);
                    v.extend_from_slice(&s[i + 1..]);
                    out.push((TensorBasisElement(v), c));
                }
            }
            Atom::Rank2Gamma => {
                let (a, b) = (&s[0], &s[1]);
                for (b1, b2, c) in hopf::coproduct_terms(b) {
                    let (sb1, e1) = hopf::antipode(&b1);
                    let (sb2, e2) = hopf::antipode(&b2);
                    out.push((TensorBasisElement(vec![sb1, hopf::mul(a, &sb2)]), c * e1 * e2));
                }
            }
            Atom::Rank2Tau => out.push((TensorBasisElement(vec![s[1].clone(), s[0].clone()]), 1)),
            Atom::Rank2Delta => {
                let (sa, e) = hopf::antipode(&s[0]);
                out.push((TensorBasisElement(vec![sa, s[1].clone()]), e));
            }
            Atom::Rank2S => {
                let (sb, e) = hopf::antipode(&s[1]);
                out.push((TensorBasisElement(vec![sb, s[0].clone()]), e));
            }
        }
    }
}

/// How a written word of operators is read.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// `x·(O1 O2) = (x·O1)·O2`: the leftmost operator is applied first.
    #[default]
    RightAction,
    /// Ordinary composition `O1 ∘ O2`: the rightmost operator is applied first.
    LeftComposition,
}

/// A formal rational combination of operator words.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorExpr {
    pub terms: Vec<(Rational, Vec<Atom>)>,
}

impl OperatorExpr {
    pub fn id() -> Self {
        Self::atom(Atom::Identity)
    }

    pub fn atom(a: Atom) -> Self {
        OperatorExpr {
            terms: vec![(Rational::one(), vec![a])],
        }
    }

    pub fn zero() -> Self {
        OperatorExpr { terms: Vec::new() }
    }

    pub fn scale(mut self, c: i64) -> Self {
        for t in &mut self.terms {
            t.0 *= rat(c);
        }
        self
    }
}

impl From<Atom> for OperatorExpr {
    fn from(a: Atom) -> Self {
        OperatorExpr::atom(a)
    }
}

impl Add for OperatorExpr {
    type Output = OperatorExpr;
    fn add(mut self, rhs: Self) -> Self {
        self.terms.extend(rhs.terms);
        self
    }
}

impl Neg for OperatorExpr {
    type Output = OperatorExpr;
    fn neg(self) -> Self {
        self.scale(-1)
    }
}

impl Sub for OperatorExpr {
    type Output = OperatorExpr;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

/// Juxtaposition of written words: `(A * B)` is the word `A B`.
impl Mul for OperatorExpr {
    type Output = OperatorExpr;
    fn mul(self, rhs: Self) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (c1, w1) in &self.terms {
            for (c2, w2) in &rhs.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                terms.push((c1 * c2, w));
            }
        }
        OperatorExpr { terms }
    }
}

/// `H^{⊗n}` for a fixed Hopf algebra and arity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TensorSpace {
    pub hopf: HopfAlgebra,
    pub arity: usize,
}

impl TensorSpace {
    pub fn new(hopf: HopfAlgebra, arity: usize) -> Self {
        assert!(arity >= 1);
        TensorSpace { hopf, arity }
    }

    /// Full basis of the weight block, sorted lexicographically.
    pub fn basis(&self, weight: &WeightVector) -> Vec<TensorBasisElement> {
        assert_eq!(weight.num_vars(), self.hopf.num_vars);
        let n = self.arity;
        // For every variable, the ways to split its multiplicity among slots.
        let splits: Vec<Vec<Vec<u32>>> = weight
            .entries()
            .iter()
            .map(|&w| weak_compositions(w, n))
            .collect();
        let mut out = Vec::new();
        let mut choice = vec![0usize; splits.len()];
        loop {
            // slot_content[slot][var]
            let slot_content: Vec<Vec<u32>> = (0..n)
                .map(|slot| {
                    splits
                        .iter()
                        .zip(&choice)
                        .map(|(s, &c)| s[c][slot])
                        .collect()
                })
                .collect();
            match self.hopf.kind {
                HopfKind::Sym => out.push(TensorBasisElement(
                    slot_content
                        .iter()
                        .map(|c| HopfBasisElement::Monomial(c.iter().map(|&x| x as u8).collect()))
                        .collect(),
                )),
                HopfKind::Tensor => {
                    let per_slot: Vec<Vec<Vec<u8>>> =
                        slot_content.iter().map(|c| words_with_content(c)).collect();
                    cartesian(&per_slot, &mut Vec::new(), &mut |ws| {
                        out.push(TensorBasisElement(
                            ws.iter().map(|w| HopfBasisElement::Word(w.to_vec())).collect(),
                        ))
                    });
                }
            }
            // odometer
            let mut i = 0;
            loop {
                if i == choice.len() {
                    out.sort();
                    return out;
                }
                choice[i] += 1;
                if choice[i] < splits[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }

    pub fn index(basis: &[TensorBasisElement]) -> HashMap<TensorBasisElement, usize> {
        basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect()
    }

    /// Applies an operator expression to a vector.
    pub fn apply(
        &self,
        op: &OperatorExpr,
        v: &TensorVector,
        convention: Convention,
    ) -> Result<TensorVector, TensorError> {
        let mut result: Option<TensorVector> = None;
        for (coeff, word) in &op.terms {
            let mut cur = v.clone();
            let order: Box<dyn Iterator<Item = &Atom>> = match convention {
                Convention::RightAction => Box::new(word.iter()),
                Convention::LeftComposition => Box::new(word.iter().rev()),
            };
            for atom in order {
                cur = apply_atom(atom, &cur)?;
            }
            match &mut result {
                None => result = Some(TensorVector {
                    arity: cur.arity,
                    terms: cur.terms.scaled(coeff),
                }),
                Some(r) => {
                    if r.arity != cur.arity {
                        return Err(TensorError::MixedArity(r.arity, cur.arity));
                    }
                    r.terms.add_scaled(&cur.terms, coeff);
                }
            }
        }
        Ok(result.unwrap_or_else(|| TensorVector::zero(v.arity)))
    }

    /// Generators of the kernel of `H^{⊗n} → \overline{H^{⊗n}}` in this
    /// weight: `Σ_i (id⊗…⊗ad_v⊗…⊗id)(t)` with `ad_v(h) = vh − hv`. Empty for
    /// Sym(V), where conjugation is already trivial.
    pub fn bar_relations(&self, weight: &WeightVector) -> Vec<TensorVector> {
        if self.hopf.kind == HopfKind::Sym {
            return Vec::new();
        }
        let mut out = Vec::new();
        for var in 0..weight.num_vars() {
            let Some(lower) = weight.minus_var(var) else {
                continue;
            };
            let v = self.hopf.generator(var);
            for t in self.basis(&lower) {
                let mut terms = LinComb::new();
                for i in 0..self.arity {
                    let mut left = t.0.clone();
                    left[i] = hopf::mul(&v, &t.0[i]);
                    terms.add_term(TensorBasisElement(left), Rational::one());
                    let mut right = t.0.clone();
                    right[i] = hopf::mul(&t.0[i], &v);
                    terms.add_term(TensorBasisElement(right), -Rational::one());
                }
                if !terms.is_zero() {
                    out.push(TensorVector {
                        arity: self.arity,
                        terms,
                    });
                }
            }
        }
        out
    }

    /// Conjugation `h ⊛ (h_1⊗…⊗h_n) = h₍₁₎h_1S(h₍₂₎) ⊗ … ⊗ h₍₂ₙ₋₁₎h_nS(h₍₂ₙ₎)`.
    pub fn conjugate(&self, h: &HopfBasisElement, t: &TensorBasisElement) -> TensorVector {
        // iterated coproduct of h into 2n factors
        let mut pieces: Vec<(Vec<HopfBasisElement>, i64)> = vec![(vec![h.clone()], 1)];
        for _ in 1..(2 * self.arity) {
            let mut next = Vec::new();
            for (parts, c) in &pieces {
                let last = parts.last().unwrap();
                for (x1, x2, d) in hopf::coproduct_terms(last) {
                    let mut p = parts[..parts.len() - 1].to_vec();
                    p.push(x1);
                    p.push(x2);
                    next.push((p, c * d));
                }
            }
            pieces = next;
        }
        let mut terms = LinComb::new();
        for (parts, c) in pieces {
            let mut slots = Vec::with_capacity(self.arity);
            let mut sign = c;
            for i in 0..self.arity {
                let (s, e) = hopf::antipode(&parts[2 * i + 1]);
                sign *= e;
                slots.push(hopf::mul(&hopf::mul(&parts[2 * i], &t.0[i]), &s));
            }
            terms.add_term(TensorBasisElement(slots), rat(sign));
        }
        TensorVector {
            arity: self.arity,
            terms,
        }
    }
}

fn cartesian<'a>(lists: &'a [Vec<Vec<u8>>], cur: &mut Vec<&'a [u8]>, emit: &mut dyn FnMut(&[&[u8]])) {
    if cur.len() == lists.len() {
        emit(cur);
        return;
    }
    for item in &lists[cur.len()] {
        cur.push(item);
        cartesian(lists, cur, emit);
        cur.pop();
    }
}

fn apply_atom(atom: &Atom, v: &TensorVector) -> Result<TensorVector, TensorError> {
    let arity = atom.output_arity(v.arity).ok_or(TensorError::Arity {
        atom: *atom,
        arity: v.arity,
    })?;
    if *atom == Atom::Identity {
        return Ok(v.clone());
    }
    let mut terms = LinComb::new();
    let mut buf = Vec::new();
    for (t, c) in v.terms.iter() {
        buf.clear();
        atom.act(t, &mut buf);
        for (img, k) in buf.drain(..) {
            let coeff = c * rat(k);
            if !coeff.is_zero() {
                terms.add_term(img, coeff);
            }
        }
    }
    Ok(TensorVector { arity, terms })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(e: &[u8]) -> HopfBasisElement {
        HopfBasisElement::Monomial(e.to_vec())
    }
    fn word(w: &[u8]) -> HopfBasisElement {
        HopfBasisElement::Word(w.to_vec())
    }
    fn tb(xs: Vec<HopfBasisElement>) -> TensorBasisElement {
        TensorBasisElement(xs)
    }

    #[test]
    fn basis_examples() {
        let s = TensorSpace::new(HopfAlgebra::sym(2), 2);
        let b = s.basis(&WeightVector::new(vec![2, 0]));
        assert_eq!(b.len(), 3);
        assert!(b.contains(&tb(vec![mono(&[1, 0]), mono(&[1, 0])])));

        let t = TensorSpace::new(HopfAlgebra::tensor(2), 2);
        let b = t.basis(&WeightVector::new(vec![1, 1]));
        assert_eq!(b.len(), 6);
        for x in [
            tb(vec![word(&[0, 1]), word(&[])]),
            tb(vec![word(&[1, 0]), word(&[])]),
            tb(vec![word(&[0]), word(&[1])]),
            tb(vec![word(&[1]), word(&[0])]),
            tb(vec![word(&[]), word(&[0, 1])]),
            tb(vec![word(&[]), word(&[1, 0])]),
        ] {
            assert!(b.contains(&x));
        }
        let mut sorted = b.clone();
        sorted.sort();
        assert_eq!(b, sorted);
    }

    #[test]
    fn basis_size_matches_brute_force() {
        // Independent count: place each of the 3 distinct letters into one of
        // 3 slots, then order the letters within each slot.
        let mut brute = 0u64;
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    let mut sizes = [0u64; 3];
                    sizes[a] += 1;
                    sizes[b] += 1;
                    sizes[c] += 1;
                    // a placement of labelled letters fixes the set per slot;
                    // orderings within each slot multiply
                    brute += sizes.iter().map(|&k| (1..=k).product::<u64>()).product::<u64>();
                }
            }
        }
        assert_eq!(brute, 60);
        let t = TensorSpace::new(HopfAlgebra::tensor(3), 3);
        assert_eq!(t.basis(&WeightVector::new(vec![1, 1, 1])).len() as u64, brute);
    }

    #[test]
    fn swap_and_e_examples() {
        let t = TensorSpace::new(HopfAlgebra::tensor(2), 2);
        let v = TensorVector::basis(tb(vec![word(&[0]), word(&[1])]));
        let out = t.apply(&Atom::Swap(0, 1).into(), &v, Convention::RightAction).unwrap();
        assert_eq!(out, TensorVector::basis(tb(vec![word(&[1]), word(&[0])])));

        let t3 = TensorSpace::new(HopfAlgebra::tensor(2), 3);
        let v = TensorVector::basis(tb(vec![word(&[0]), word(&[1]), word(&[])]));
        let out = t3.apply(&Atom::E.into(), &v, Convention::RightAction).unwrap();
        let mut expected = TensorVector::basis(tb(vec![word(&[0]), word(&[1]), word(&[])]));
        expected.terms.add_term(tb(vec![word(&[]), word(&[0, 1]), word(&[])]), rat(1));
        assert_eq!(out, expected);
    }

    #[test]
    fn arity_errors() {
        let t = TensorSpace::new(HopfAlgebra::tensor(2), 2);
        let v = TensorVector::basis(tb(vec![word(&[0]), word(&[1])]));
        assert!(t.apply(&Atom::E.into(), &v, Convention::RightAction).is_err());
        assert!(t.apply(&Atom::Swap(0, 2).into(), &v, Convention::RightAction).is_err());
        let mixed = OperatorExpr::id() + Atom::CoproductInto(0).into();
        assert!(matches!(
            t.apply(&mixed, &v, Convention::RightAction),
            Err(TensorError::MixedArity(2, 3))
        ));
    }

    #[test]
    fn checked_add_rejects_weight_mismatch() {
        let a = TensorVector::basis(tb(vec![word(&[0]), word(&[1])]));
        let b = TensorVector::basis(tb(vec![word(&[0]), word(&[0])]));
        assert!(matches!(a.checked_add(&b, 2), Err(TensorError::WeightMismatch(_, _))));
        assert!(a.checked_add(&a, 2).is_ok());
    }

    #[test]
    fn conventions_differ_on_noncommuting_words() {
        let t = TensorSpace::new(HopfAlgebra::sym(1), 3);
        let v = TensorVector::basis(tb(vec![mono(&[1]), mono(&[2]), mono(&[0])]));
        let word = OperatorExpr::atom(Atom::E) * Atom::Swap(1, 2).into();
        let r = t.apply(&word, &v, Convention::RightAction).unwrap();
        let l = t.apply(&word, &v, Convention::LeftComposition).unwrap();
        assert_ne!(r, l);
    }

    #[test]
    fn bar_relation_examples() {
        let s = TensorSpace::new(HopfAlgebra::sym(2), 2);
        assert!(s.bar_relations(&WeightVector::new(vec![1, 1])).is_empty());

        let t1 = TensorSpace::new(HopfAlgebra::tensor(2), 1);
        let rels = t1.bar_relations(&WeightVector::new(vec![1, 1]));
        // v = x on y gives xy - yx; v = y on x gives yx - xy
        assert_eq!(rels.len(), 2);
        let mut xy = LinComb::basis(tb(vec![word(&[0, 1])]));
        xy.add_term(tb(vec![word(&[1, 0])]), rat(-1));
        assert_eq!(rels[0].terms, xy);

        let t2 = TensorSpace::new(HopfAlgebra::tensor(2), 2);
        let rels = t2.bar_relations(&WeightVector::new(vec![1, 1]));
        let mut expected = LinComb::basis(tb(vec![word(&[0, 1]), word(&[])]));
        expected.add_term(tb(vec![word(&[1, 0]), word(&[])]), rat(-1));
        assert!(rels.iter().any(|r| r.terms == expected));
    }
}
