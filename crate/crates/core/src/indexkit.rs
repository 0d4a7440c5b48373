//! Strictly increasing multi-indices and the combinatorics around them:
//! normalization with sign, lexicographic subset enumeration, merge signs,
//! and safe binomials.
//!
//! A [`MultiIndex`] is a strictly increasing tuple drawn from `{1..bound}`.
//! The empty tuple is allowed. Ordering is lexicographic on the entries,
//! which is the basis order used everywhere downstream.

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::rational::{int, Rational};
use crate::{Error, Result};

/// Sign of a reordering: `Plus`/`Minus` for even/odd, `Zero` when an index
/// repeats (the term vanishes by antisymmetry).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
    Zero,
}

impl Sign {
    pub fn from_parity(inversions: usize) -> Sign {
        if inversions.is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
            Sign::Zero => 0,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }

    /// Multiply a rational by this sign.
    pub fn times(self, r: &Rational) -> Rational {
        match self {
            Sign::Plus => r.clone(),
            Sign::Minus => -r.clone(),
            Sign::Zero => int(0),
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        match (self, rhs) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Plus,
            _ => Sign::Minus,
        }
    }
}

/// Strictly increasing tuple over `{1..bound}`. `Ord` is lexicographic on
/// the entries (tuples of equal content but different bound compare by
/// bound last, which never happens inside one basis).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex {
    indices: Vec<u32>,
    bound: u32,
}

impl MultiIndex {
    /// Build from already strictly increasing entries within `1..=bound`.
    pub fn new(indices: Vec<u32>, bound: u32) -> Result<MultiIndex> {
        for w in indices.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::domain(format!(
                    "indices not strictly increasing: {indices:?}"
                )));
            }
        }
        if let (Some(&first), Some(&last)) = (indices.first(), indices.last()) {
            if first < 1 || last > bound {
                return Err(Error::domain(format!(
                    "index outside 1..={bound}: {indices:?}"
                )));
            }
        }
        Ok(MultiIndex { indices, bound })
    }

    /// The empty tuple.
    pub fn empty(bound: u32) -> MultiIndex {
        MultiIndex {
            indices: Vec::new(),
            bound,
        }
    }

    /// The full tuple `(1, 2, …, bound)`.
    pub fn full(bound: u32) -> MultiIndex {
        MultiIndex {
            indices: (1..=bound).collect(),
            bound,
        }
    }

    fn from_sorted(indices: Vec<u32>, bound: u32) -> MultiIndex {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(indices.last().is_none_or(|&l| l <= bound));
        MultiIndex { indices, bound }
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, v: u32) -> bool {
        self.indices.binary_search(&v).is_ok()
    }

    /// Number of entries shared with `other` (both sides sorted: merge walk).
    pub fn intersection_size(&self, other: &MultiIndex) -> usize {
        let (mut i, mut j, mut n) = (0, 0, 0);
        while i < self.indices.len() && j < other.indices.len() {
            match self.indices[i].cmp(&other.indices[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    n += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        n
    }

    pub fn is_disjoint_from(&self, other: &MultiIndex) -> bool {
        self.intersection_size(other) == 0
    }

    pub fn is_subset_of(&self, other: &MultiIndex) -> bool {
        self.intersection_size(other) == self.indices.len()
    }

    /// Sorted union with a disjoint tuple; `None` when they overlap.
    /// The result's bound is the larger of the two.
    pub fn union_disjoint(&self, other: &MultiIndex) -> Option<MultiIndex> {
        if !self.is_disjoint_from(other) {
            return None;
        }
        let mut merged = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.indices.len() || j < other.indices.len() {
            let take_left = match (self.indices.get(i), other.indices.get(j)) {
                (Some(a), Some(b)) => a < b,
                (Some(_), None) => true,
                _ => false,
            };
            if take_left {
                merged.push(self.indices[i]);
                i += 1;
            } else {
                merged.push(other.indices[j]);
                j += 1;
            }
        }
        Some(MultiIndex::from_sorted(merged, self.bound.max(other.bound)))
    }

    /// Entries of `{1..=bound}` not present in `self`.
    pub fn complement(&self) -> MultiIndex {
        let indices = (1..=self.bound).filter(|&v| !self.contains(v)).collect();
        MultiIndex::from_sorted(indices, self.bound)
    }

    /// Entries of `self` that are `<= cutoff`, as a tuple bounded by `cutoff`.
    pub fn restrict_to(&self, cutoff: u32) -> MultiIndex {
        let indices: Vec<u32> = self
            .indices
            .iter()
            .copied()
            .take_while(|&v| v <= cutoff)
            .collect();
        MultiIndex::from_sorted(indices, cutoff)
    }

    /// Same entries viewed inside `1..=bound`; errors if one sticks out.
    pub fn with_bound(&self, bound: u32) -> Result<MultiIndex> {
        MultiIndex::new(self.indices.clone(), bound)
    }
}

impl std::fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.indices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for MultiIndex {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.indices.len()))?;
        for v in &self.indices {
            seq.serialize_element(v)?;
        }
        seq.end()
    }
}

/// A multi-index together with the sign of the reordering that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedIndex {
    pub index: MultiIndex,
    pub sign: Sign,
}

/// Sort raw entries into a [`MultiIndex`], tracking the permutation sign.
/// Repeated entries give `Sign::Zero` (and the empty index). Entries outside
/// `1..=bound` are a domain error.
pub fn normalize(raw: &[u32], bound: u32) -> Result<SignedIndex> {
    for &v in raw {
        if v < 1 || v > bound {
            return Err(Error::domain(format!("index {v} outside 1..={bound}")));
        }
    }
    let mut inversions = 0usize;
    for i in 0..raw.len() {
        for j in i + 1..raw.len() {
            if raw[i] == raw[j] {
                return Ok(SignedIndex {
                    index: MultiIndex::empty(bound),
                    sign: Sign::Zero,
                });
            }
            if raw[i] > raw[j] {
                inversions += 1;
            }
        }
    }
    let mut sorted = raw.to_vec();
    sorted.sort_unstable();
    Ok(SignedIndex {
        index: MultiIndex::from_sorted(sorted, bound),
        sign: Sign::from_parity(inversions),
    })
}

/// Sign of appending `appended` to `existing` and sorting the concatenation:
/// `Zero` on overlap, otherwise the parity of the number of pairs
/// `(x, y) ∈ existing × appended` with `x > y`.
pub fn interleave_sign(existing: &MultiIndex, appended: &MultiIndex) -> Sign {
    if !existing.is_disjoint_from(appended) {
        return Sign::Zero;
    }
    let mut inversions = 0usize;
    for &y in appended.indices() {
        inversions += existing.indices().iter().filter(|&&x| x > y).count();
    }
    Sign::from_parity(inversions)
}

/// All `r`-subsets of `ground` in lexicographic order. Empty when
/// `r > |ground|`; the single empty tuple when `r == 0`.
pub fn subsets(ground: &MultiIndex, r: usize) -> Vec<MultiIndex> {
    let items = ground.indices();
    let n = items.len();
    if r > n {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(binom(n as u64, r as i64) as usize);
    let mut pos: Vec<usize> = (0..r).collect();
    loop {
        out.push(MultiIndex::from_sorted(
            pos.iter().map(|&i| items[i]).collect(),
            ground.bound(),
        ));
        // Advance `pos` to the next combination, rightmost slot first.
        let mut i = r;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if pos[i] != i + n - r {
                pos[i] += 1;
                for j in i + 1..r {
                    pos[j] = pos[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Binomial coefficient with out-of-range arguments mapped to zero:
/// `binom(a, b) = 0` when `b < 0` or `b > a`.
pub fn binom(a: u64, b: i64) -> u64 {
    if b < 0 || b as u64 > a {
        return 0;
    }
    let b = (b as u64).min(a - b as u64);
    let mut acc: u128 = 1;
    for i in 0..b {
        acc = acc * (a - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial exceeds u64")
}

/// Arbitrary-precision binomial with the same out-of-range convention.
pub fn binom_big(a: u64, b: i64) -> num::BigInt {
    use num::BigInt;
    if b < 0 || b as u64 > a {
        return BigInt::from(0);
    }
    let b = (b as u64).min(a - b as u64);
    let mut acc = BigInt::from(1);
    for i in 0..b {
        acc = acc * BigInt::from(a - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(v: &[u32], b: u32) -> MultiIndex {
        MultiIndex::new(v.to_vec(), b).unwrap()
    }

    #[test]
    fn normalize_sorts_and_signs() {
        let s = normalize(&[2, 1], 3).unwrap();
        assert_eq!(s.index, mi(&[1, 2], 3));
        assert_eq!(s.sign, Sign::Minus);

        let s = normalize(&[3, 1, 2], 4).unwrap();
        assert_eq!(s.index, mi(&[1, 2, 3], 4));
        assert_eq!(s.sign, Sign::Plus); // two inversions

        assert_eq!(normalize(&[1, 1, 2], 3).unwrap().sign, Sign::Zero);
        assert_eq!(normalize(&[], 5).unwrap().sign, Sign::Plus);
    }

    #[test]
    fn normalize_rejects_out_of_bounds() {
        assert!(normalize(&[0, 1], 3).is_err());
        assert!(normalize(&[1, 4], 3).is_err());
    }

    /// Independent parity oracle: count adjacent swaps performed by an
    /// actual bubble sort and compare with the inversion-count sign.
    #[test]
    fn normalize_sign_matches_bubble_sort_parity() {
        fn perms(n: u32) -> Vec<Vec<u32>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for slot in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(slot, n);
                    out.push(q);
                }
            }
            out
        }
        for n in 0..=5u32 {
            for p in perms(n) {
                let mut v = p.clone();
                let mut swaps = 0usize;
                for i in 0..v.len() {
                    for j in 0..v.len().saturating_sub(i + 1) {
                        if v[j] > v[j + 1] {
                            v.swap(j, j + 1);
                            swaps += 1;
                        }
                    }
                }
                assert_eq!(
                    normalize(&p, n.max(1)).unwrap().sign,
                    Sign::from_parity(swaps),
                    "permutation {p:?}"
                );
            }
        }
    }

    #[test]
    fn subsets_lex_order_and_counts() {
        let g = mi(&[1, 2, 3], 3);
        let two = subsets(&g, 2);
        assert_eq!(two, vec![mi(&[1, 2], 3), mi(&[1, 3], 3), mi(&[2, 3], 3)]);

        assert_eq!(subsets(&g, 0), vec![MultiIndex::empty(3)]);
        assert!(subsets(&g, 4).is_empty());

        for n in 0..=10u64 {
            let g = MultiIndex::full(n as u32);
            for r in 0..=n as usize + 1 {
                let ss = subsets(&g, r);
                assert_eq!(ss.len() as u64, binom(n, r as i64));
                assert!(ss.windows(2).all(|w| w[0] < w[1]), "lex order broken");
            }
        }
    }

    #[test]
    fn subsets_of_sparse_ground() {
        let g = mi(&[2, 5, 7], 9);
        assert_eq!(
            subsets(&g, 2),
            vec![mi(&[2, 5], 9), mi(&[2, 7], 9), mi(&[5, 7], 9)]
        );
    }

    #[test]
    fn binom_edges_and_pascal() {
        assert_eq!(binom(4, 2), 6);
        assert_eq!(binom(3, 5), 0);
        assert_eq!(binom(5, -1), 0);
        assert_eq!(binom(0, 0), 1);
        for a in 1..=30u64 {
            for b in 0..=a as i64 {
                assert_eq!(binom(a, b), binom(a - 1, b - 1) + binom(a - 1, b));
            }
        }
    }

    #[test]
    fn binomial_inequality_for_system_params() {
        // binom(m+q, m) >= binom(m+q, m-s) with q = m+p-1-s, for m >= s >= 1.
        for m in 1..=8i64 {
            for p in 1..=8i64 {
                for s in 1..=m {
                    let q = m + p - 1 - s;
                    let a = (m + q) as u64;
                    assert!(
                        binom(a, m) >= binom(a, m - s),
                        "failed at m={m} p={p} s={s}"
                    );
                }
            }
        }
    }

    #[test]
    fn interleave_sign_examples() {
        assert_eq!(interleave_sign(&mi(&[1, 3], 4), &mi(&[2], 4)), Sign::Minus);
        assert_eq!(interleave_sign(&mi(&[1, 2], 4), &mi(&[2], 4)), Sign::Zero);
        assert_eq!(
            interleave_sign(&mi(&[1, 2], 4), &mi(&[3, 4], 4)),
            Sign::Plus
        );
        assert_eq!(
            interleave_sign(&MultiIndex::empty(4), &mi(&[1, 2], 4)),
            Sign::Plus
        );
    }

    /// The merge sign must agree with normalizing the concatenation.
    #[test]
    fn interleave_sign_matches_normalize_of_concatenation() {
        let bound = 6u32;
        let ground = MultiIndex::full(bound);
        for a in 0..=3usize {
            for left in subsets(&ground, a) {
                for b in 0..=3usize {
                    for right in subsets(&ground, b) {
                        let mut concat = left.indices().to_vec();
                        concat.extend_from_slice(right.indices());
                        let expect = normalize(&concat, bound).unwrap().sign;
                        assert_eq!(
                            interleave_sign(&left, &right),
                            expect,
                            "left={left} right={right}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn union_and_complement() {
        let a = mi(&[1, 4], 5);
        let b = mi(&[2, 3], 5);
        assert_eq!(a.union_disjoint(&b).unwrap(), mi(&[1, 2, 3, 4], 5));
        assert_eq!(a.union_disjoint(&a), None);
        assert_eq!(a.complement(), mi(&[2, 3, 5], 5));
        assert_eq!(MultiIndex::empty(3).complement(), MultiIndex::full(3));
        assert_eq!(mi(&[2, 3, 5], 5).restrict_to(3), mi(&[2, 3], 3));
    }
}
