//! Basis-level structure maps of the cocommutative Hopf algebras Sym(V) and
//! T(V), with `V` primitive. T(V) carries concatenation and the unshuffle
//! coproduct.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combinatorics::binomial;
use crate::linear::{rat, LinComb, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HopfError {
    #[error("element {0:?} does not belong to {1}")]
    DescriptorMismatch(HopfBasisElement, HopfAlgebra),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HopfKind {
    Sym,
    Tensor,
}

impl fmt::Display for HopfKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HopfKind::Sym => write!(f, "sym"),
            HopfKind::Tensor => write!(f, "tensor"),
        }
    }
}

/// A basis element: an exponent vector for Sym(V), a word for T(V).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HopfBasisElement {
    Monomial(Vec<u8>),
    Word(Vec<u8>),
}

impl HopfBasisElement {
    pub fn degree(&self) -> u32 {
        match self {
            HopfBasisElement::Monomial(e) => e.iter().map(|&x| x as u32).sum(),
            HopfBasisElement::Word(w) => w.len() as u32,
        }
    }

    /// Adds this element's multidegree into `acc`.
    pub fn add_weight(&self, acc: &mut [u32]) {
        match self {
            HopfBasisElement::Monomial(e) => {
                for (a, &x) in acc.iter_mut().zip(e) {
                    *a += x as u32;
                }
            }
            HopfBasisElement::Word(w) => {
                for &l in w {
                    acc[l as usize] += 1;
                }
            }
        }
    }
}

pub type HopfVector = LinComb<HopfBasisElement>;
pub type HopfPairVector = LinComb<(HopfBasisElement, HopfBasisElement)>;

/// Sym(V) or T(V) on `num_vars` generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HopfAlgebra {
    pub kind: HopfKind,
    pub num_vars: usize,
}

impl fmt::Display for HopfAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.kind, self.num_vars)
    }
}

impl HopfAlgebra {
    pub fn new(kind: HopfKind, num_vars: usize) -> Self {
        assert!(num_vars >= 1, "a Hopf algebra needs at least one generator");
        HopfAlgebra { kind, num_vars }
    }

    pub fn sym(num_vars: usize) -> Self {
        Self::new(HopfKind::Sym, num_vars)
    }

    pub fn tensor(num_vars: usize) -> Self {
        Self::new(HopfKind::Tensor, num_vars)
    }

    pub fn unit(&self) -> HopfBasisElement {
        match self.kind {
            HopfKind::Sym => HopfBasisElement::Monomial(vec![0; self.num_vars]),
            HopfKind::Tensor => HopfBasisElement::Word(Vec::new()),
        }
    }

    /// The generator `v_var` of V.
    pub fn generator(&self, var: usize) -> HopfBasisElement {
        assert!(var < self.num_vars);
        match self.kind {
            HopfKind::Sym => {
                let mut e = vec![0; self.num_vars];
                e[var] = 1;
                HopfBasisElement::Monomial(e)
            }
            HopfKind::Tensor => HopfBasisElement::Word(vec![var as u8]),
        }
    }

    pub fn contains(&self, x: &HopfBasisElement) -> bool {
        match (self.kind, x) {
            (HopfKind::Sym, HopfBasisElement::Monomial(e)) => e.len() == self.num_vars,
            (HopfKind::Tensor, HopfBasisElement::Word(w)) => {
                w.iter().all(|&l| (l as usize) < self.num_vars)
            }
            _ => false,
        }
    }

    fn check(&self, x: &HopfBasisElement) -> Result<(), HopfError> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(HopfError::DescriptorMismatch(x.clone(), *self))
        }
    }

    pub fn product(
        &self,
        x: &HopfBasisElement,
        y: &HopfBasisElement,
    ) -> Result<HopfBasisElement, HopfError> {
        self.check(x)?;
        self.check(y)?;
        Ok(mul(x, y))
    }

    pub fn coproduct(&self, x: &HopfBasisElement) -> Result<HopfPairVector, HopfError> {
        self.check(x)?;
        Ok(coproduct_terms(x)
            .into_iter()
            .map(|(l, r, c)| ((l, r), rat(c)))
            .collect())
    }

    pub fn antipode(&self, x: &HopfBasisElement) -> Result<HopfVector, HopfError> {
        self.check(x)?;
        let (y, sign) = antipode(x);
        Ok(HopfVector::term(y, rat(sign)))
    }

    pub fn counit(&self, x: &HopfBasisElement) -> Rational {
        rat(counit(x))
    }

    /// All basis elements of the given multidegree.
    pub fn basis_of_weight(&self, weight: &[u32]) -> Vec<HopfBasisElement> {
        assert_eq!(weight.len(), self.num_vars);
        match self.kind {
            HopfKind::Sym => vec![HopfBasisElement::Monomial(
                weight.iter().map(|&w| w as u8).collect(),
            )],
            HopfKind::Tensor => words_with_content(weight)
                .into_iter()
                .map(HopfBasisElement::Word)
                .collect(),
        }
    }

    /// All basis elements of total degree `d`.
    pub fn basis_of_degree(&self, d: u32) -> Vec<HopfBasisElement> {
        crate::combinatorics::weak_compositions(d, self.num_vars)
            .iter()
            .flat_map(|w| self.basis_of_weight(w))
            .collect()
    }
}

/// Words whose letter multiset is `content`, in lexicographic order.
pub fn words_with_content(content: &[u32]) -> Vec<Vec<u8>> {
    fn rec(rest: &mut [u32], len: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for l in 0..rest.len() {
            if rest[l] > 0 {
                rest[l] -= 1;
                cur.push(l as u8);
                rec(rest, len, cur, out);
                cur.pop();
                rest[l] += 1;
            }
        }
    }
    let len = content.iter().sum::<u32>() as usize;
    let mut rest = content.to_vec();
    let mut out = Vec::new();
    rec(&mut rest, len, &mut Vec::with_capacity(len), &mut out);
    out
}

// Unchecked structure maps with integer coefficients, shared with the tensor
// operators.

pub(crate) fn mul(x: &HopfBasisElement, y: &HopfBasisElement) -> HopfBasisElement {
    match (x, y) {
        (HopfBasisElement::Monomial(a), HopfBasisElement::Monomial(b)) => {
            HopfBasisElement::Monomial(a.iter().zip(b).map(|(p, q)| p + q).collect())
        }
        (HopfBasisElement::Word(a), HopfBasisElement::Word(b)) => {
            let mut w = Vec::with_capacity(a.len() + b.len());
            w.extend_from_slice(a);
            w.extend_from_slice(b);
            HopfBasisElement::Word(w)
        }
        _ => panic!("mixed Hopf algebra kinds in product"),
    }
}

pub(crate) fn antipode(x: &HopfBasisElement) -> (HopfBasisElement, i64) {
    let sign = if x.degree().is_multiple_of(2) { 1 } else { -1 };
    match x {
        HopfBasisElement::Monomial(_) => (x.clone(), sign),
        HopfBasisElement::Word(w) => {
            let mut r = w.clone();
            r.reverse();
            (HopfBasisElement::Word(r), sign)
        }
    }
}

pub(crate) fn counit(x: &HopfBasisElement) -> i64 {
    (x.degree() == 0) as i64
}

/// Coproduct terms `(x_(1), x_(2), coefficient)`, with repeated pairs merged.
pub(crate) fn coproduct_terms(x: &HopfBasisElement) -> Vec<(HopfBasisElement, HopfBasisElement, i64)> {
    match x {
        HopfBasisElement::Monomial(alpha) => {
            let mut out = Vec::new();
            let mut beta = vec![0u8; alpha.len()];
            loop {
                let coeff: i64 = alpha
                    .iter()
                    .zip(&beta)
                    .map(|(&a, &b)| binomial(a as u64, b as u64) as i64)
                    .product();
                let rest: Vec<u8> = alpha.iter().zip(&beta).map(|(a, b)| a - b).collect();
                out.push((
                    HopfBasisElement::Monomial(beta.clone()),
                    HopfBasisElement::Monomial(rest),
                    coeff,
                ));
                // odometer over 0 <= beta <= alpha
                let mut i = 0;
                loop {
                    if i == alpha.len() {
                        return out;
                    }
                    if beta[i] < alpha[i] {
                        beta[i] += 1;
                        break;
                    }
                    beta[i] = 0;
                    i += 1;
                }
            }
        }
        HopfBasisElement::Word(w) => {
            let k = w.len();
            assert!(k < 32, "word too long for unshuffle coproduct");
            let mut merged: std::collections::BTreeMap<(Vec<u8>, Vec<u8>), i64> =
                std::collections::BTreeMap::new();
            for mask in 0u32..(1u32 << k) {
                let mut left = Vec::new();
                let mut right = Vec::new();
                for (i, &l) in w.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        left.push(l);
                    } else {
                        right.push(l);
                    }
                }
                *merged.entry((left, right)).or_default() += 1;
            }
            merged
                .into_iter()
                .map(|((l, r), c)| (HopfBasisElement::Word(l), HopfBasisElement::Word(r), c))
                .collect()
        }
    }
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
    fn pair(a: HopfBasisElement, b: HopfBasisElement) -> (HopfBasisElement, HopfBasisElement) {
        (a, b)
    }

    #[test]
    fn products() {
        let h = HopfAlgebra::sym(2);
        assert_eq!(h.product(&mono(&[2, 1]), &mono(&[1, 1])).unwrap(), mono(&[3, 2]));
        let t = HopfAlgebra::tensor(3);
        assert_eq!(t.product(&word(&[0, 1]), &word(&[2])).unwrap(), word(&[0, 1, 2]));
        assert_eq!(t.product(&word(&[0, 1]), &t.unit()).unwrap(), word(&[0, 1]));
        assert_eq!(h.product(&h.unit(), &mono(&[0, 3])).unwrap(), mono(&[0, 3]));
        assert!(h.product(&mono(&[1]), &mono(&[1, 0])).is_err());
        assert!(h.product(&word(&[0]), &mono(&[1, 0])).is_err());
    }

    #[test]
    fn coproducts() {
        let h = HopfAlgebra::sym(1);
        let d = h.coproduct(&mono(&[2])).unwrap();
        let mut expected = HopfPairVector::new();
        expected.add_term(pair(mono(&[2]), mono(&[0])), rat(1));
        expected.add_term(pair(mono(&[1]), mono(&[1])), rat(2));
        expected.add_term(pair(mono(&[0]), mono(&[2])), rat(1));
        assert_eq!(d, expected);

        let t = HopfAlgebra::tensor(2);
        let d = t.coproduct(&word(&[0, 1])).unwrap();
        let mut expected = HopfPairVector::new();
        for (l, r) in [(&[0u8, 1][..], &[][..]), (&[0], &[1]), (&[1], &[0]), (&[], &[0, 1])] {
            expected.add_term(pair(word(l), word(r)), rat(1));
        }
        assert_eq!(d, expected);

        let d = t.coproduct(&t.unit()).unwrap();
        assert_eq!(d, HopfPairVector::basis(pair(word(&[]), word(&[]))));
    }

    #[test]
    fn antipodes_and_counit() {
        let h = HopfAlgebra::sym(2);
        assert_eq!(h.antipode(&mono(&[2, 1])).unwrap(), HopfVector::term(mono(&[2, 1]), rat(-1)));
        let t = HopfAlgebra::tensor(3);
        assert_eq!(
            t.antipode(&word(&[0, 1, 2])).unwrap(),
            HopfVector::term(word(&[2, 1, 0]), rat(-1))
        );
        assert_eq!(t.antipode(&t.unit()).unwrap(), HopfVector::basis(t.unit()));
        assert_eq!(t.counit(&t.unit()), rat(1));
        assert_eq!(t.counit(&word(&[0, 1])), rat(0));
    }

    #[test]
    fn words_enumeration() {
        assert_eq!(words_with_content(&[1, 1]), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(words_with_content(&[2, 1]).len(), 3);
        assert_eq!(words_with_content(&[0, 0]), vec![Vec::<u8>::new()]);
    }
}
