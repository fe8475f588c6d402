//! Partitions, tableau counts, Weyl dimensions and the closed-form dimension
//! formulas (cusp forms, modular forms, and the rank 2 / rank 3 bounds).

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CombinatoricsError {
    #[error("partition parts must be weakly decreasing: {0:?}")]
    NotDecreasing(Vec<u32>),
    #[error("size mismatch: shape has size {shape}, content has size {content}")]
    SizeMismatch { shape: u32, content: u32 },
    #[error("bound arguments must satisfy a >= b >= c, got ({0}, {1}, {2})")]
    NotSorted(u32, u32, u32),
    #[error("cannot parse partition {0:?}")]
    Parse(String),
}

/// A weakly decreasing sequence of positive integers. Trailing zeros are
/// stripped, so `[]` is the unique partition of 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, CombinatoricsError> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(CombinatoricsError::NotDecreasing(parts));
        }
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Sorts an arbitrary weight into the dominant representative of its orbit.
    pub fn from_weight(weight: &[u32]) -> Self {
        let mut parts = weight.to_vec();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts).expect("sorted")
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Dominance order: every partial sum of `self` is at least that of `other`.
    pub fn dominates(&self, other: &Partition) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let n = self.len().max(other.len());
        let (mut a, mut b) = (0u32, 0u32);
        for i in 0..n {
            a += self.part(i);
            b += other.part(i);
            if a < b {
                return false;
            }
        }
        true
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.part(0) as usize;
        let parts = (0..first)
            .map(|j| self.0.iter().filter(|&&p| p as usize > j).count() as u32)
            .collect();
        Partition(parts)
    }

    /// The weight vector with `m` entries, padded with zeros.
    pub fn to_weight(&self, m: usize) -> WeightVector {
        let mut v = self.0.clone();
        v.resize(m.max(v.len()), 0);
        WeightVector::new(v)
    }

    /// Exponent notation such as `[3^21]` for (3,3,1); numbers above 9 are
    /// braced, as in `[{12}]`.
    pub fn exponent_notation(&self) -> String {
        let mut s = String::from("[");
        let mut i = 0;
        while i < self.0.len() {
            let p = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == p {
                j += 1;
            }
            push_number(&mut s, p as usize);
            if j - i > 1 {
                s.push('^');
                push_number(&mut s, j - i);
            }
            i = j;
        }
        s.push(']');
        s
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = CombinatoricsError;
    fn try_from(v: Vec<u32>) -> Result<Self, Self::Error> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

/// Descending lexicographic order (a linear extension of dominance).
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.exponent_notation())
    }
}

fn push_number(s: &mut String, n: usize) {
    if n < 10 {
        s.push_str(&n.to_string());
    } else {
        s.push_str(&format!("{{{n}}}"));
    }
}

/// Parses exponent notation: `[3^21]`, `[1^6]`, `[]`. Each part is a single
/// number optionally followed by `^k`; numbers above 9 are braced; comma separated lists like `[10,2]`
/// are also accepted.
impl FromStr for Partition {
    type Err = CombinatoricsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || CombinatoricsError::Parse(s.to_string());
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(err)?;
        let mut parts = Vec::new();
        if inner.contains(',') {
            for tok in inner.split(',') {
                parts.push(tok.trim().parse::<u32>().map_err(|_| err())?);
            }
        } else {
            let chars: Vec<char> = inner.chars().filter(|c| !c.is_whitespace()).collect();
            let mut i = 0;
            while i < chars.len() {
                let part = read_number(&chars, &mut i).ok_or_else(err)? as u32;
                let mut reps = 1;
                if i < chars.len() && chars[i] == '^' {
                    i += 1;
                    reps = read_number(&chars, &mut i).ok_or_else(err)?;
                }
                parts.extend(std::iter::repeat_n(part, reps));
            }
        }
        Partition::new(parts)
    }
}

/// A single digit or a braced number.
fn read_number(chars: &[char], i: &mut usize) -> Option<usize> {
    if chars.get(*i) == Some(&'{') {
        let close = chars[*i..].iter().position(|c| *c == '}')?;
        let digits: String = chars[*i + 1..*i + close].iter().collect();
        *i += close + 1;
        digits.parse().ok()
    } else {
        let d = chars.get(*i)?.to_digit(10)?;
        *i += 1;
        Some(d as usize)
    }
}

/// Multidegree of a tensor over a fixed variable set; entries need not be sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(Vec<u32>);

impl WeightVector {
    pub fn new(multidegrees: Vec<u32>) -> Self {
        WeightVector(multidegrees)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn sorted(&self) -> Partition {
        Partition::from_weight(&self.0)
    }

    /// Weight with `var` decreased by one, if that entry is positive.
    pub fn minus_var(&self, var: usize) -> Option<WeightVector> {
        let mut v = self.0.clone();
        if v[var] == 0 {
            return None;
        }
        v[var] -= 1;
        Some(WeightVector(v))
    }
}

impl From<&[u32]> for WeightVector {
    fn from(v: &[u32]) -> Self {
        WeightVector(v.to_vec())
    }
}

/// All partitions of `n` with at most `max_parts` parts, in descending
/// lexicographic order.
pub fn partitions_of(n: u32, max_parts: usize) -> Vec<Partition> {
    fn rec(rest: u32, max_part: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if slots == 0 {
            return;
        }
        for p in (1..=rest.min(max_part)).rev() {
            cur.push(p);
            rec(rest - p, p, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, max_parts, &mut Vec::new(), &mut out);
    out
}

/// All weak compositions of `n` into exactly `parts` entries, lexicographically
/// decreasing.
pub fn weak_compositions(n: u32, parts: usize) -> Vec<Vec<u32>> {
    fn rec(rest: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 1 {
            cur.push(rest);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for first in (0..=rest).rev() {
            cur.push(first);
            rec(rest - first, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, parts, &mut Vec::new(), &mut out);
    out
}

/// Number of distinct rearrangements of `weight` padded to `m` entries.
pub fn orbit_size(p: &Partition, m: usize) -> u64 {
    if p.len() > m {
        return 0;
    }
    let mut counts: HashMap<u32, u64> = HashMap::new();
    for i in 0..m {
        *counts.entry(p.part(i)).or_default() += 1;
    }
    let mut result = factorial(m as u64);
    for c in counts.values() {
        result /= factorial(*c);
    }
    result.to_u64().expect("orbit size fits in u64")
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as u64
}

/// Number of semistandard tableaux of shape `lambda` with content `mu`.
pub fn kostka(lambda: &Partition, mu: &WeightVector) -> Result<u64, CombinatoricsError> {
    if lambda.size() != mu.total() {
        return Err(CombinatoricsError::SizeMismatch {
            shape: lambda.size(),
            content: mu.total(),
        });
    }
    if !lambda.dominates(&mu.sorted()) {
        return Ok(0);
    }
    let rows = lambda.len();
    // Shapes reachable after placing the first i letters, each as a horizontal
    // strip of length mu[i] inside lambda.
    let mut layer: HashMap<Vec<u32>, u64> = HashMap::new();
    layer.insert(vec![0; rows], 1);
    for &strip in mu.entries() {
        let mut next: HashMap<Vec<u32>, u64> = HashMap::new();
        for (shape, count) in &layer {
            let mut cur = shape.clone();
            extend_strip(lambda.parts(), shape, 0, strip, &mut cur, &mut |s| {
                *next.entry(s.to_vec()).or_default() += count;
            });
        }
        layer = next;
    }
    Ok(layer.get(lambda.parts()).copied().unwrap_or(0))
}

fn extend_strip(
    outer: &[u32],
    inner: &[u32],
    row: usize,
    remaining: u32,
    cur: &mut Vec<u32>,
    emit: &mut dyn FnMut(&[u32]),
) {
    if remaining == 0 {
        emit(cur);
        return;
    }
    if row == inner.len() {
        return;
    }
    // Row `row` may grow up to the outer shape and, for a horizontal strip,
    // not past the old length of the row above.
    let cap = if row == 0 {
        outer[0]
    } else {
        outer[row].min(inner[row - 1])
    };
    let room = cap.saturating_sub(inner[row]);
    for add in 0..=room.min(remaining) {
        cur[row] = inner[row] + add;
        extend_strip(outer, inner, row + 1, remaining - add, cur, emit);
    }
    cur[row] = inner[row];
}

/// Dimension of the Schur functor for `lambda` applied to an `m`-dimensional
/// space (hook-content formula).
pub fn weyl_dim(lambda: &Partition, m: usize) -> u64 {
    if lambda.len() > m {
        return 0;
    }
    let conj = lambda.conjugate();
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row as usize {
            let content = m as i64 + j as i64 - i as i64;
            num *= content as u64;
            let hook = (row as usize - j) + (conj.part(j) as usize - i) - 1;
            den *= hook as u64;
        }
    }
    (num / den).to_u64().expect("weyl dimension fits in u64")
}

/// Dimension of the space of weight-`w` cusp forms for PSL2(Z).
pub fn cusp_dim(w: i64) -> u64 {
    if w < 12 || w % 2 != 0 || w == 14 {
        return 0;
    }
    let q = (w / 12) as u64;
    if w % 12 == 2 {
        q.saturating_sub(1)
    } else {
        q
    }
}

/// Dimension of the space of weight-`w` modular forms for PSL2(Z).
pub fn mf_dim(w: i64) -> u64 {
    if w < 0 || w % 2 != 0 {
        return 0;
    }
    let q = (w / 12) as u64;
    if w % 12 == 2 {
        q
    } else {
        q + 1
    }
}

/// `ceil(w/3)` for even `w >= 0`, and 0 for odd `w`.
pub fn omega(w: i64) -> u64 {
    if w < 0 || w % 2 != 0 {
        return 0;
    }
    ((w + 2) / 3) as u64
}

/// `omega(w) - 1` clamped at zero; zero in odd weights.
pub fn omega_cusp_dim(w: i64) -> u64 {
    omega(w).saturating_sub(1)
}

/// `s'_{2m+2} = ceil(2m/3) - 1` for `m > 0`, zero otherwise.
pub fn s_prime(w: i64) -> u64 {
    if w % 2 != 0 || w < 4 {
        return 0;
    }
    let m = (w - 2) / 2;
    (((2 * m + 2) / 3) as u64).saturating_sub(1)
}

pub fn epsilon(a: u32, b: u32, c: u32) -> u64 {
    (a > b && b > c && a.is_multiple_of(2) && b.is_multiple_of(2) && c.is_multiple_of(2)) as u64
}

pub fn delta(a: u32, b: u32, c: u32) -> u64 {
    if a - b == b - c {
        cusp_dim((a - b + 2) as i64)
    } else {
        0
    }
}

fn check_sorted(a: u32, b: u32, c: u32) -> Result<(), CombinatoricsError> {
    if a >= b && b >= c {
        Ok(())
    } else {
        Err(CombinatoricsError::NotSorted(a, b, c))
    }
}

/// Rank 2 multiplicity of `[a,b]`: `s_{a-b+2}` if `a,b` are even,
/// `s_{a-b+2}+1` if both are odd, zero otherwise or when `a < b + 2`.
pub fn rank2_bound(a: u32, b: u32) -> Result<u64, CombinatoricsError> {
    check_sorted(a, b, 0)?;
    if a < b + 2 {
        return Ok(0);
    }
    let s = cusp_dim((a - b + 2) as i64);
    Ok(match (a % 2, b % 2) {
        (0, 0) => s,
        (1, 1) => s + 1,
        _ => 0,
    })
}

/// `s_{a-b+2} + s_{b-c+2} + delta + epsilon`.
pub fn rank3_bound(a: u32, b: u32, c: u32) -> Result<u64, CombinatoricsError> {
    check_sorted(a, b, c)?;
    Ok(cusp_dim((a - b + 2) as i64)
        + cusp_dim((b - c + 2) as i64)
        + delta(a, b, c)
        + epsilon(a, b, c))
}

/// Lower bound for multiplicities in the rank 3 Johnson-cokernel quotient:
/// the `a-b` cusp term enlarged to `omega_{a-b} - 1`, plus
/// `s_{b-c+2} + delta + epsilon`.
pub fn iota_bound(a: u32, b: u32, c: u32) -> Result<u64, CombinatoricsError> {
    check_sorted(a, b, c)?;
    Ok(omega_cusp_dim((a - b) as i64)
        + cusp_dim((b - c + 2) as i64)
        + delta(a, b, c)
        + epsilon(a, b, c))
}

/// `s_{a-b+2} + s'_{b-c+2} + delta + epsilon`.
pub fn omega3intro_bound(a: u32, b: u32, c: u32) -> Result<u64, CombinatoricsError> {
    check_sorted(a, b, c)?;
    Ok(cusp_dim((a - b + 2) as i64)
        + s_prime((b - c + 2) as i64)
        + delta(a, b, c)
        + epsilon(a, b, c))
}

/// Closed-form GL decomposition of the rank 2 quotient for Sym(V) in a given
/// degree: `omega_{k-l}` copies of `[k,l]` for `k > l > 0` and
/// `omega_{2k} - 1` copies of `[2k]`.
pub fn omega2_closed_form(degree: u32) -> Vec<(Partition, u64)> {
    let mut out = Vec::new();
    for p in partitions_of(degree, 2) {
        let (k, l) = (p.part(0), p.part(1));
        let mult = if l == 0 {
            omega_cusp_dim(k as i64)
        } else if k > l {
            omega((k - l) as i64)
        } else {
            0
        };
        if mult > 0 {
            out.push((p, mult));
        }
    }
    out
}
