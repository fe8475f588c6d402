//! Relation blocks for the finite presentations of the rank 1, 2 and 3
//! spaces `H_r(H)` and `Ω_r(H)`, and the `H¹(GL₂(ℤ); k[x,y]_g ⊗ det^k)`
//! quotient used as an independent modular-forms oracle.
//!
//! Every block lives inside one weight space of `H^{⊗r}`. The bar quotient is
//! imposed by adding [`TensorSpace::bar_relations`] rows rather than by
//! building a basis of the quotient.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combinatorics::{binomial, WeightVector};
use crate::exactla::{self, ExactError, SparseMatrix};
use crate::hopf::{self, HopfAlgebra, HopfBasisElement, HopfKind};
use crate::linear::{rat, LinComb, Rational};
use crate::tensorspace::{
    Atom, Convention, OperatorExpr, TensorBasisElement, TensorError, TensorSpace, TensorVector,
};

#[derive(Debug, Error)]
pub enum PresentationError {
    #[error("unsupported rank {0}; ranks 1, 2, 3 are implemented")]
    UnsupportedRank(u8),
    #[error("parity specialization requires the H functor, rank 3 and Sym(V)")]
    InvalidParity,
    #[error("{parity} specialization requested on a weight of total degree {degree}")]
    ParityMismatch { parity: Parity, degree: u32 },
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Functor {
    /// Bottom homology of the rank-r hairy Lie graph complex.
    #[serde(rename = "H")]
    HH,
    /// One-vertex graphs modulo boundaries of the restricted two-vertex subspace.
    #[serde(rename = "Omega")]
    Omega,
}

impl fmt::Display for Functor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Functor::HH => write!(f, "H"),
            Functor::Omega => write!(f, "Omega"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

/// Which space to compute. The number of generators of `H` is taken from the
/// weight being computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FunctorSpec {
    pub functor: Functor,
    pub rank: u8,
    pub hopf: HopfKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parity: Option<Parity>,
}

impl FunctorSpec {
    pub fn new(
        functor: Functor,
        rank: u8,
        hopf: HopfKind,
        parity: Option<Parity>,
    ) -> Result<Self, PresentationError> {
        if !(1..=3).contains(&rank) {
            return Err(PresentationError::UnsupportedRank(rank));
        }
        if parity.is_some() && (functor != Functor::HH || rank != 3 || hopf != HopfKind::Sym) {
            return Err(PresentationError::InvalidParity);
        }
        Ok(FunctorSpec {
            functor,
            rank,
            hopf,
            parity,
        })
    }

    pub fn general(functor: Functor, rank: u8, hopf: HopfKind) -> Self {
        Self::new(functor, rank, hopf, None).expect("valid spec")
    }
}

impl fmt::Display for FunctorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = match self.hopf {
            HopfKind::Sym => "Sym(V)",
            HopfKind::Tensor => "T(V)",
        };
        write!(f, "{}_{}({})", self.functor, self.rank, h)?;
        if let Some(p) = self.parity {
            write!(f, "[{p}]")?;
        }
        Ok(())
    }
}

/// Relations inside one weight block of `H^{⊗r}`.
#[derive(Clone, Debug)]
pub struct RelationBlock {
    pub basis: Vec<TensorBasisElement>,
    pub relations: SparseMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDims {
    pub ambient: usize,
    pub rank: usize,
    pub quotient: usize,
}

fn sigma(i: usize, j: usize) -> OperatorExpr {
    Atom::Swap(i - 1, j - 1).into()
}

fn s1() -> OperatorExpr {
    Atom::AntipodeAt(0).into()
}

fn id() -> OperatorExpr {
    OperatorExpr::id()
}

fn e() -> OperatorExpr {
    Atom::E.into()
}

fn f() -> OperatorExpr {
    Atom::F.into()
}

fn sss() -> OperatorExpr {
    OperatorExpr::from(Atom::AntipodeAt(0)) * Atom::AntipodeAt(1).into() * Atom::AntipodeAt(2).into()
}

/// `E σ23 + F σ13`
fn chord() -> OperatorExpr {
    e() * sigma(2, 3) + f() * sigma(1, 3)
}

/// `σ23 E σ23 + σ23 F σ13`
fn chord_twisted() -> OperatorExpr {
    sigma(2, 3) * e() * sigma(2, 3) + sigma(2, 3) * f() * sigma(1, 3)
}

/// The six operators presenting the rank 3 `H` quotient.
pub fn rank3_operators() -> Vec<OperatorExpr> {
    vec![
        id() + sss() * sigma(1, 2),
        id() + sigma(1, 3) - sigma(1, 2) * sigma(2, 3) - sigma(1, 2),
        (id() + s1()) * (id() + sigma(2, 3)),
        id() + e() * sigma(2, 3) + f() * sigma(1, 3)
            - sigma(1, 2)
            - sigma(1, 2) * f() * sigma(1, 3)
            - sigma(1, 2) * e() * sigma(2, 3),
        (id() + s1()) * (id() + chord()),
        s1() * chord_twisted() + chord(),
    ]
}

/// Operators of the rank 3 `Ω` quotient; relations 4 and 5 are built
/// elementwise in [`relation_vectors`].
pub fn omega3_operators() -> Vec<OperatorExpr> {
    let all = rank3_operators();
    vec![all[0].clone(), all[1].clone(), all[5].clone()]
}

/// Operators for the even-degree part of the rank 3 `H` quotient of Sym(V).
pub fn even_operators() -> Vec<OperatorExpr> {
    vec![
        id() + sigma(1, 2),
        id() + sigma(2, 3),
        id() - s1(),
        e() + f() - id(),
    ]
}

/// Operators for the odd-degree part of the rank 3 `H` quotient of Sym(V).
pub fn odd_operators() -> Vec<OperatorExpr> {
    vec![
        id() - sigma(1, 2),
        (id() + s1()) * (id() + sigma(2, 3)),
        (id() + s1()) * (id() + chord()),
        (id() - s1()) * (chord() - chord_twisted()),
    ]
}

struct BlockBuilder {
    space: TensorSpace,
    basis: Vec<TensorBasisElement>,
    index: HashMap<TensorBasisElement, usize>,
    matrix: SparseMatrix,
}

impl BlockBuilder {
    fn new(space: TensorSpace, weight: &WeightVector) -> Self {
        let basis = space.basis(weight);
        let index = TensorSpace::index(&basis);
        let matrix = SparseMatrix::new(basis.len());
        BlockBuilder {
            space,
            basis,
            index,
            matrix,
        }
    }

    fn push(&mut self, v: &LinComb<TensorBasisElement>) -> Result<(), PresentationError> {
        let index = &self.index;
        let row: Vec<(usize, Rational)> = v
            .iter()
            .map(|(t, c)| (*index.get(t).expect("relation leaves its weight block"), c.clone()))
            .collect();
        self.matrix.push_row(row)?;
        Ok(())
    }

    fn push_operator_images(
        &mut self,
        op: &OperatorExpr,
        convention: Convention,
    ) -> Result<(), PresentationError> {
        for i in 0..self.basis.len() {
            let v = TensorVector::basis(self.basis[i].clone());
            let img = self.space.apply(op, &v, convention)?;
            self.push(&img.terms)?;
        }
        Ok(())
    }

    /// Rows given by an elementwise formula on basis tuples.
    fn push_elementwise<F>(&mut self, mut rel: F) -> Result<(), PresentationError>
    where
        F: FnMut(&TensorBasisElement) -> LinComb<TensorBasisElement>,
    {
        for i in 0..self.basis.len() {
            let v = rel(&self.basis[i]);
            self.push(&v)?;
        }
        Ok(())
    }

    fn push_bar_relations(&mut self, weight: &WeightVector) -> Result<(), PresentationError> {
        for r in self.space.bar_relations(weight) {
            self.push(&r.terms)?;
        }
        Ok(())
    }

    fn finish(self) -> RelationBlock {
        RelationBlock {
            basis: self.basis,
            relations: self.matrix,
        }
    }
}

fn pair(a: HopfBasisElement, b: HopfBasisElement) -> TensorBasisElement {
    TensorBasisElement(vec![a, b])
}

fn add(v: &mut LinComb<TensorBasisElement>, t: TensorBasisElement, c: i64) {
    v.add_term(t, rat(c));
}

/// `a⊗b − b⊗a`
fn rel_symmetric(t: &TensorBasisElement) -> LinComb<TensorBasisElement> {
    let (a, b) = (&t.0[0], &t.0[1]);
    let mut v = LinComb::basis(t.clone());
    add(&mut v, pair(b.clone(), a.clone()), -1);
    v
}

/// `a⊗b + S(a)⊗b`
fn rel_antipode_first(t: &TensorBasisElement) -> LinComb<TensorBasisElement> {
    let (a, b) = (&t.0[0], &t.0[1]);
    let (sa, e) = hopf::antipode(a);
    let mut v = LinComb::basis(t.clone());
    add(&mut v, pair(sa, b.clone()), e);
    v
}

/// `a⊗b − S(a)⊗S(b)`
fn rel_antipode_both(t: &TensorBasisElement) -> LinComb<TensorBasisElement> {
    let (a, b) = (&t.0[0], &t.0[1]);
    let (sa, e1) = hopf::antipode(a);
    let (sb, e2) = hopf::antipode(b);
    let mut v = LinComb::basis(t.clone());
    add(&mut v, pair(sa, sb), -e1 * e2);
    v
}

/// `a⊗b + S(a₍₁₎)b ⊗ S(a₍₂₎) + S(b₍₁₎) ⊗ S(b₍₂₎)a`
fn rel_rank2_triangle(t: &TensorBasisElement) -> LinComb<TensorBasisElement> {
    let (a, b) = (&t.0[0], &t.0[1]);
    let mut v = LinComb::basis(t.clone());
    for (a1, a2, c) in hopf::coproduct_terms(a) {
        let (sa1, e1) = hopf::antipode(&a1);
        let (sa2, e2) = hopf::antipode(&a2);
        add(&mut v, pair(hopf::mul(&sa1, b), sa2), c * e1 * e2);
    }
    for (b1, b2, c) in hopf::coproduct_terms(b) {
        let (sb1, e1) = hopf::antipode(&b1);
        let (sb2, e2) = hopf::antipode(&b2);
        add(&mut v, pair(sb1, hopf::mul(&sb2, a)), c * e1 * e2);
    }
    v
}

/// `a⊗b + S(b)a₍₁₎ ⊗ a₍₂₎ + b₍₁₎ ⊗ S(a)b₍₂₎`
fn rel_omega2_triangle(t: &TensorBasisElement) -> LinComb<TensorBasisElement> {
    let (a, b) = (&t.0[0], &t.0[1]);
    let (sa, ea) = hopf::antipode(a);
    let (sb, eb) = hopf::antipode(b);
    let mut v = LinComb::basis(t.clone());
    for (a1, a2, c) in hopf::coproduct_terms(a) {
        add(&mut v, pair(hopf::mul(&sb, &a1), a2), c * eb);
    }
    for (b1, b2, c) in hopf::coproduct_terms(b) {
        add(&mut v, pair(b1, hopf::mul(&sa, &b2)), c * ea);
    }
    v
}

fn is_unit(x: &HopfBasisElement) -> bool {
    x.degree() == 0
}

/// All relation rows for `spec` in the weight block `weight`.
pub fn relation_vectors(
    spec: &FunctorSpec,
    weight: &WeightVector,
    convention: Convention,
) -> Result<RelationBlock, PresentationError> {
    let hopf = HopfAlgebra::new(spec.hopf, weight.num_vars().max(1));
    let space = TensorSpace::new(hopf, spec.rank as usize);
    let mut b = BlockBuilder::new(space, weight);
    let degree = weight.total();
    if let Some(parity) = spec.parity {
        let ok = match parity {
            Parity::Even => degree.is_multiple_of(2),
            Parity::Odd => degree % 2 == 1,
        };
        if !ok {
            return Err(PresentationError::ParityMismatch { parity, degree });
        }
    }
    match (spec.rank, spec.functor) {
        (1, _) => {
            for r in commutator_rows(&b.basis) {
                b.push(&r)?;
            }
        }
        (2, Functor::HH) => {
            b.push_bar_relations(weight)?;
            b.push_elementwise(rel_symmetric)?;
            b.push_elementwise(rel_antipode_first)?;
            b.push_elementwise(rel_rank2_triangle)?;
        }
        (2, Functor::Omega) => {
            b.push_bar_relations(weight)?;
            b.push_elementwise(rel_symmetric)?;
            b.push_elementwise(rel_antipode_both)?;
            b.push_elementwise(|t| {
                if is_unit(&t.0[0]) {
                    LinComb::basis(t.clone())
                } else {
                    LinComb::new()
                }
            })?;
            b.push_elementwise(rel_omega2_triangle)?;
        }
        (3, Functor::HH) => {
            b.push_bar_relations(weight)?;
            let ops = match spec.parity {
                None => rank3_operators(),
                Some(Parity::Even) => even_operators(),
                Some(Parity::Odd) => odd_operators(),
            };
            for op in &ops {
                b.push_operator_images(op, convention)?;
            }
        }
        (3, Functor::Omega) => {
            b.push_bar_relations(weight)?;
            for op in &omega3_operators() {
                b.push_operator_images(op, convention)?;
            }
            // 1⊗a⊗b + 1⊗b⊗a
            b.push_elementwise(|t| {
                if is_unit(&t.0[0]) {
                    let mut v = LinComb::basis(t.clone());
                    let swapped = TensorBasisElement(vec![t.0[0].clone(), t.0[2].clone(), t.0[1].clone()]);
                    v.add_term(swapped, rat(1));
                    v
                } else {
                    LinComb::new()
                }
            })?;
            // a⊗Δ(b), over the arity-2 block of the same weight
            let source = TensorSpace::new(hopf, 2);
            let cop = OperatorExpr::from(Atom::CoproductInto(1));
            for t in source.basis(weight) {
                let img = source.apply(&cop, &TensorVector::basis(t), convention)?;
                b.push(&img.terms)?;
            }
        }
        (r, _) => return Err(PresentationError::UnsupportedRank(r)),
    }
    Ok(b.finish())
}

/// Dimension of one weight block of the presented quotient. Degree 0 blocks
/// are zero by convention.
pub fn quotient_dim(
    spec: &FunctorSpec,
    weight: &WeightVector,
    convention: Convention,
) -> Result<BlockDims, PresentationError> {
    if weight.total() == 0 {
        return Ok(BlockDims {
            ambient: 0,
            rank: 0,
            quotient: 0,
        });
    }
    if spec.rank == 1 {
        let q = h1_dim(spec.hopf, weight);
        let ambient = HopfAlgebra::new(spec.hopf, weight.num_vars()).basis_of_weight(weight.entries()).len();
        return Ok(BlockDims {
            ambient,
            rank: ambient - q,
            quotient: q,
        });
    }
    let block = relation_vectors(spec, weight, convention)?;
    let ambient = block.basis.len();
    let q = exactla::quotient_dim(ambient, &block.relations)?;
    Ok(BlockDims {
        ambient,
        rank: ambient - q,
        quotient: q,
    })
}

/// Span of `ab − ba` inside a weight block of `H` (arity 1).
fn commutator_rows(basis: &[TensorBasisElement]) -> Vec<LinComb<TensorBasisElement>> {
    let mut out = Vec::new();
    for t in basis {
        if let HopfBasisElement::Word(w) = &t.0[0] {
            for k in 1..w.len() {
                let mut rotated = w[k..].to_vec();
                rotated.extend_from_slice(&w[..k]);
                if rotated != *w {
                    let mut v = LinComb::basis(t.clone());
                    add(&mut v, TensorBasisElement(vec![HopfBasisElement::Word(rotated)]), -1);
                    out.push(v);
                }
            }
        }
    }
    out
}

/// Dimension of `(id − S)(H/[H,H])` in one weight block.
pub fn h1_dim(kind: HopfKind, weight: &WeightVector) -> usize {
    if weight.total() == 0 {
        return 0;
    }
    let hopf = HopfAlgebra::new(kind, weight.num_vars());
    let basis: Vec<TensorBasisElement> = hopf
        .basis_of_weight(weight.entries())
        .into_iter()
        .map(|x| TensorBasisElement(vec![x]))
        .collect();
    let index = TensorSpace::index(&basis);
    let to_row = |v: &LinComb<TensorBasisElement>| -> Vec<(usize, Rational)> {
        v.iter().map(|(t, c)| (index[t], c.clone())).collect()
    };
    let mut commutators = SparseMatrix::new(basis.len());
    for r in commutator_rows(&basis) {
        commutators.push_row(to_row(&r)).expect("in range");
    }
    let mut with_image = commutators.clone();
    for t in &basis {
        let (s, e) = hopf::antipode(&t.0[0]);
        let mut v = LinComb::basis(t.clone());
        add(&mut v, TensorBasisElement(vec![s]), -e);
        with_image.push_row(to_row(&v)).expect("in range");
    }
    exactla::rank(&with_image) - exactla::rank(&commutators)
}

/// Determinant twist of the coefficient module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DetTwist {
    /// `det^k` with `k` even: relation `1 − τ`.
    Even,
    /// `det^k` with `k` odd: relation `1 + τ`.
    Odd,
}

type Mat2 = [[i64; 2]; 2];

/// `x^i y^j ↦ (m00 x + m01 y)^i (m10 x + m11 y)^j` on `k[x,y]_g`, indexing
/// monomials by the exponent of `x`.
fn substitute(m: &Mat2, i: usize, g: usize) -> Vec<i64> {
    let j = g - i;
    let expand = |a: i64, b: i64, n: usize| -> Vec<i64> {
        // coefficients of x^k in (a x + b y)^n
        (0..=n)
            .map(|k| binomial(n as u64, k as u64) as i64 * a.pow(k as u32) * b.pow((n - k) as u32))
            .collect()
    };
    let p = expand(m[0][0], m[0][1], i);
    let q = expand(m[1][0], m[1][1], j);
    let mut out = vec![0i64; g + 1];
    for (k1, c1) in p.iter().enumerate() {
        for (k2, c2) in q.iter().enumerate() {
            out[k1 + k2] += c1 * c2;
        }
    }
    out
}

fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

/// `dim k[x,y]_g / ⟨1+s, 1+st+(st)², 1∓τ⟩` under the right substitution
/// action of GL₂(ℤ).
pub fn gl2_h1_dim(g: usize, twist: DetTwist) -> usize {
    const I: Mat2 = [[1, 0], [0, 1]];
    const S: Mat2 = [[0, 1], [-1, 0]];
    const T: Mat2 = [[1, 1], [0, 1]];
    const TAU: Mat2 = [[0, 1], [1, 0]];
    let st = mat_mul(&S, &T);
    let st2 = mat_mul(&st, &st);
    let tau_sign = match twist {
        DetTwist::Even => -1,
        DetTwist::Odd => 1,
    };
    let relations: Vec<Vec<(i64, Mat2)>> = vec![
        vec![(1, I), (1, S)],
        vec![(1, I), (1, st), (1, st2)],
        vec![(1, I), (tau_sign, TAU)],
    ];
    let mut m = SparseMatrix::new(g + 1);
    for rel in &relations {
        for i in 0..=g {
            let mut row = vec![0i64; g + 1];
            for (c, mat) in rel {
                for (k, v) in substitute(mat, i, g).into_iter().enumerate() {
                    row[k] += c * v;
                }
            }
            m.push_row(row.into_iter().enumerate().map(|(k, v)| (k, rat(v))))
                .expect("in range");
        }
    }
    exactla::quotient_dim(g + 1, &m).expect("square")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{cusp_dim, mf_dim};

    fn w(v: &[u32]) -> WeightVector {
        WeightVector::new(v.to_vec())
    }

    #[test]
    fn spec_validation() {
        assert!(FunctorSpec::new(Functor::HH, 4, HopfKind::Sym, None).is_err());
        assert!(FunctorSpec::new(Functor::Omega, 3, HopfKind::Sym, Some(Parity::Even)).is_err());
        assert!(FunctorSpec::new(Functor::HH, 3, HopfKind::Tensor, Some(Parity::Odd)).is_err());
        assert!(FunctorSpec::new(Functor::HH, 3, HopfKind::Sym, Some(Parity::Odd)).is_ok());
    }

    #[test]
    fn parity_mismatch_is_an_error() {
        let spec = FunctorSpec::new(Functor::HH, 3, HopfKind::Sym, Some(Parity::Even)).unwrap();
        assert!(matches!(
            relation_vectors(&spec, &w(&[2, 1]), Convention::RightAction),
            Err(PresentationError::ParityMismatch { .. })
        ));
    }

    #[test]
    fn rank2_degree2_vanishes() {
        let spec = FunctorSpec::general(Functor::HH, 2, HopfKind::Sym);
        let d = quotient_dim(&spec, &w(&[1, 1]), Convention::RightAction).unwrap();
        assert_eq!(d.quotient, 0);
    }

    #[test]
    fn omega2_one_variable() {
        let spec = FunctorSpec::general(Functor::Omega, 2, HopfKind::Sym);
        assert_eq!(quotient_dim(&spec, &w(&[4]), Convention::RightAction).unwrap().quotient, 1);
        assert_eq!(quotient_dim(&spec, &w(&[8]), Convention::RightAction).unwrap().quotient, 2);
    }

    #[test]
    fn h1_examples() {
        let total: usize = crate::combinatorics::weak_compositions(3, 2)
            .into_iter()
            .map(|v| h1_dim(HopfKind::Sym, &WeightVector::new(v)))
            .sum();
        assert_eq!(total, 4);
        for v in crate::combinatorics::weak_compositions(2, 2) {
            assert_eq!(h1_dim(HopfKind::Sym, &WeightVector::new(v)), 0);
        }
        for n in 1..5usize {
            let total: usize = (0..n)
                .map(|i| {
                    let mut v = vec![0; n];
                    v[i] = 1;
                    h1_dim(HopfKind::Tensor, &WeightVector::new(v))
                })
                .sum();
            assert_eq!(total, n);
        }
    }

    #[test]
    fn gl2_examples() {
        for g in [1, 3, 5, 11] {
            assert_eq!(gl2_h1_dim(g, DetTwist::Even), 0);
            assert_eq!(gl2_h1_dim(g, DetTwist::Odd), 0);
        }
        assert_eq!(gl2_h1_dim(10, DetTwist::Even), 1);
        assert_eq!(gl2_h1_dim(2, DetTwist::Odd), 1);
        assert_eq!(gl2_h1_dim(10, DetTwist::Even), cusp_dim(12) as usize);
        assert_eq!(gl2_h1_dim(2, DetTwist::Odd), mf_dim(4) as usize);
    }
}
