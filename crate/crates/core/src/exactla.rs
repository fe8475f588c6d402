//! Exact rank of sparse rational matrices.
//!
//! [`rank`] clears denominators and runs fraction-free integer elimination
//! with a restricted Markowitz pivot search. Entries are held as `i64` while
//! they fit; any overflow restarts the elimination on big integers.
//! [`rank_rational`] is an independent echelon-form path over the rationals.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::linear::Rational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("column index {col} out of range for {ncols} columns")]
    ColumnOutOfRange { col: usize, ncols: usize },
    #[error("relation matrix has {got} columns but the ambient space has dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
}

pub type SparseRow = Vec<(usize, Rational)>;

/// Rows of sparse rational vectors over a fixed number of columns. Rows are
/// kept sorted by column with no stored zeros.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SparseMatrix {
    ncols: usize,
    rows: Vec<SparseRow>,
}

impl SparseMatrix {
    pub fn new(ncols: usize) -> Self {
        SparseMatrix {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    /// Adds a row given as (column, value) pairs in any order; duplicates are
    /// summed and zeros dropped. All-zero rows are skipped.
    pub fn push_row(&mut self, entries: impl IntoIterator<Item = (usize, Rational)>) -> Result<(), ExactError> {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (col, v) in entries {
            if col >= self.ncols {
                return Err(ExactError::ColumnOutOfRange {
                    col,
                    ncols: self.ncols,
                });
            }
            *acc.entry(col).or_insert_with(Rational::zero) += v;
        }
        let row: SparseRow = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        if !row.is_empty() {
            self.rows.push(row);
        }
        Ok(())
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = SparseMatrix::new(ncols);
        for r in rows {
            m.push_row(
                r.iter()
                    .enumerate()
                    .map(|(j, &v)| (j, Rational::from_integer(BigInt::from(v)))),
            )
            .expect("dense row width");
        }
        m
    }

    /// Rows scaled to primitive integer vectors.
    fn integer_rows(&self) -> Vec<Vec<(u32, BigInt)>> {
        self.rows
            .iter()
            .map(|row| {
                let lcm = row
                    .iter()
                    .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
                let ints: Vec<(u32, BigInt)> = row
                    .iter()
                    .map(|(c, v)| (*c as u32, v.numer() * (&lcm / v.denom())))
                    .collect();
                primitive(ints)
            })
            .collect()
    }
}

fn primitive(mut row: Vec<(u32, BigInt)>) -> Vec<(u32, BigInt)> {
    let g = row.iter().fold(<BigInt as Zero>::zero(), |g, (_, v)| Integer::gcd(&g, v));
    if !Zero::is_zero(&g) && !g.is_one() {
        for (_, v) in &mut row {
            *v /= &g;
        }
    }
    row
}

/// Integer entry type for fraction-free elimination. Arithmetic returns
/// `None` on overflow.
trait Entry: Clone + PartialEq + std::fmt::Debug {
    fn vanishes(&self) -> bool;
    /// `p*x - a*y`
    fn mul_sub(p: &Self, x: &Self, a: &Self, y: &Self) -> Option<Self>;
    fn mul(a: &Self, b: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
    fn negated(&self) -> Option<Self>;
    fn nil() -> Self;
    fn is_unit(&self) -> bool;
}

impl Entry for i64 {
    fn vanishes(&self) -> bool {
        *self == 0
    }
    fn mul_sub(p: &Self, x: &Self, a: &Self, y: &Self) -> Option<Self> {
        let v = (*p as i128) * (*x as i128) - (*a as i128) * (*y as i128);
        i64::try_from(v).ok().filter(|v| *v != i64::MIN)
    }
    fn mul(a: &Self, b: &Self) -> Option<Self> {
        a.checked_mul(*b).filter(|v| *v != i64::MIN)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn negated(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn nil() -> Self {
        0
    }
    fn is_unit(&self) -> bool {
        self.abs() == 1
    }
}

impl Entry for BigInt {
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul_sub(p: &Self, x: &Self, a: &Self, y: &Self) -> Option<Self> {
        Some(p * x - a * y)
    }
    fn mul(a: &Self, b: &Self) -> Option<Self> {
        Some(a * b)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn negated(&self) -> Option<Self> {
        Some(-self)
    }
    fn nil() -> Self {
        Zero::zero()
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
}

struct Overflow;

/// Rows examined per pivot search.
const PIVOT_SEARCH_ROWS: usize = 4;

struct Eliminator<T: Entry> {
    rows: Vec<Vec<(u32, T)>>,
    col_rows: Vec<BTreeSet<u32>>,
    by_len: BTreeSet<(usize, u32)>,
}

impl<T: Entry> Eliminator<T> {
    fn new(ncols: usize, rows: Vec<Vec<(u32, T)>>) -> Self {
        let mut col_rows = vec![BTreeSet::new(); ncols];
        let mut by_len = BTreeSet::new();
        for (r, row) in rows.iter().enumerate() {
            if row.is_empty() {
                continue;
            }
            by_len.insert((row.len(), r as u32));
            for (c, _) in row {
                col_rows[*c as usize].insert(r as u32);
            }
        }
        Eliminator {
            rows,
            col_rows,
            by_len,
        }
    }

    fn choose_pivot(&self) -> Option<(u32, u32)> {
        let mut best: Option<(usize, u32, u32)> = None;
        for &(len, r) in self.by_len.iter().take(PIVOT_SEARCH_ROWS) {
            for (c, _) in &self.rows[r as usize] {
                let cost = (len - 1) * (self.col_rows[*c as usize].len() - 1);
                let cand = (cost, r, *c);
                if best.is_none_or(|b| cand < b) {
                    best = Some(cand);
                }
            }
        }
        best.map(|(_, r, c)| (r, c))
    }

    fn detach(&mut self, r: u32) {
        let row = &self.rows[r as usize];
        self.by_len.remove(&(row.len(), r));
        for (c, _) in row {
            self.col_rows[*c as usize].remove(&r);
        }
    }

    fn attach(&mut self, r: u32) {
        let row = &self.rows[r as usize];
        if row.is_empty() {
            return;
        }
        self.by_len.insert((row.len(), r));
        for (c, _) in row {
            self.col_rows[*c as usize].insert(r);
        }
    }

    fn run(mut self) -> Result<usize, Overflow> {
        let mut rank = 0;
        while let Some((pr, pc)) = self.choose_pivot() {
            self.detach(pr);
            let pivot_row = std::mem::take(&mut self.rows[pr as usize]);
            let p = pivot_row
                .iter()
                .find(|(c, _)| *c == pc)
                .map(|(_, v)| v.clone())
                .expect("pivot entry");
            let targets: Vec<u32> = self.col_rows[pc as usize].iter().copied().collect();
            for q in targets {
                self.detach(q);
                let row = std::mem::take(&mut self.rows[q as usize]);
                let new_row = eliminate(&row, &pivot_row, pc, &p)?;
                self.rows[q as usize] = new_row;
                self.attach(q);
            }
            rank += 1;
        }
        Ok(rank)
    }
}

/// `p*row - a*pivot_row` where `a` is `row`'s entry in the pivot column,
/// reduced to its primitive part.
fn eliminate<T: Entry>(
    row: &[(u32, T)],
    pivot_row: &[(u32, T)],
    pc: u32,
    p: &T,
) -> Result<Vec<(u32, T)>, Overflow> {
    let a = row
        .iter()
        .find(|(c, _)| *c == pc)
        .map(|(_, v)| v.clone())
        .expect("row contains pivot column");
    let g = Entry::gcd(p, &a);
    let (ps, as_) = (p.div_exact(&g), a.div_exact(&g));
    let zero = T::nil();
    let mut out = Vec::with_capacity(row.len() + pivot_row.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot_row.len() {
        let ci = row.get(i).map_or(u32::MAX, |e| e.0);
        let cj = pivot_row.get(j).map_or(u32::MAX, |e| e.0);
        let (col, v) = if ci < cj {
            let v = T::mul(&ps, &row[i].1).ok_or(Overflow)?;
            i += 1;
            (ci, v)
        } else if cj < ci {
            let v = T::mul(&as_, &pivot_row[j].1)
                .and_then(|v| v.negated())
                .ok_or(Overflow)?;
            j += 1;
            (cj, v)
        } else {
            let v = T::mul_sub(&ps, &row[i].1, &as_, &pivot_row[j].1).ok_or(Overflow)?;
            i += 1;
            j += 1;
            (ci, v)
        };
        if !v.vanishes() {
            out.push((col, v));
        }
    }
    debug_assert!(out.iter().all(|(c, _)| *c != pc));
    let g = out.iter().fold(zero, |g, (_, v)| Entry::gcd(&g, v));
    if !g.vanishes() && !g.is_unit() {
        for (_, v) in &mut out {
            *v = v.div_exact(&g);
        }
    }
    Ok(out)
}

/// Rank over the rationals by fraction-free integer elimination.
pub fn rank(m: &SparseMatrix) -> usize {
    let int_rows = m.integer_rows();
    let small: Option<Vec<Vec<(u32, i64)>>> = int_rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|(c, v)| v.to_i64().filter(|x| *x != i64::MIN).map(|x| (*c, x)))
                .collect()
        })
        .collect();
    if let Some(rows) = small {
        if let Ok(r) = Eliminator::new(m.ncols, rows).run() {
            return r;
        }
    }
    match Eliminator::new(m.ncols, int_rows).run() {
        Ok(r) => r,
        Err(Overflow) => unreachable!("big integer elimination cannot overflow"),
    }
}

/// Rank over the rationals by incremental reduction to echelon form with
/// rational pivots (leading entries normalized to 1).
pub fn rank_rational(m: &SparseMatrix) -> usize {
    let mut pivots: BTreeMap<usize, SparseRow> = BTreeMap::new();
    for row in m.rows() {
        let mut cur: BTreeMap<usize, Rational> = row.iter().cloned().collect();
        while let Some((&lead, lead_val)) = cur.iter().next() {
            let lead_val = lead_val.clone();
            match pivots.get(&lead) {
                Some(prow) => {
                    for (c, v) in prow {
                        let e = cur.entry(*c).or_insert_with(Rational::zero);
                        *e -= &lead_val * v;
                        if e.is_zero() {
                            cur.remove(c);
                        }
                    }
                }
                None => {
                    let normalized: SparseRow =
                        cur.into_iter().map(|(c, v)| (c, v / &lead_val)).collect();
                    pivots.insert(lead, normalized);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// `ambient - rank(relations)`.
pub fn quotient_dim(ambient: usize, relations: &SparseMatrix) -> Result<usize, ExactError> {
    if relations.ncols() != ambient {
        return Err(ExactError::DimensionMismatch {
            expected: ambient,
            got: relations.ncols(),
        });
    }
    Ok(ambient - rank(relations))
}
