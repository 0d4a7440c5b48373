//! Subset incidence systems and their combinatorial one-sided inverses.
//!
//! For parameters `(m, p, s)` with `m ≥ s ≥ 1`, `p ≥ 1` set `q = m+p-1-s`
//! and take the ground set `{1..m+q}`. The injectivity-side system `A` is
//! the 0/1 incidence matrix from `(m-s)`-subsets (columns) into `m`-subsets
//! (rows), entry 1 iff the column is contained in the row. Its left inverse
//! `B` has the closed form `B[S,T] = C_{(m-s)-|S∩T|}` where the `C_i` come
//! from the recursion in [`coeffs`]. The surjectivity-side system is the
//! transpose pair: `A' = Aᵀ`, `B' = Bᵀ`, so `A'·B' = (B·A)ᵀ = I` of size
//! `binom(m+q, m-s)` — constructed by transposition, never re-derived.

use crate::indexkit::{binom_big, subsets, MultiIndex};
use crate::rational::{int, Rational};
use crate::wedge::RationalMatrix;
use crate::{Error, Result};

/// Validated `(m, p, s)` with the derived ground-set size.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SystemParams {
    m: u32,
    p: u32,
    s: u32,
}

impl SystemParams {
    pub fn new(m: u32, p: u32, s: u32) -> Result<SystemParams> {
        if m == 0 || p == 0 || s == 0 {
            return Err(Error::domain("system parameters m, p, s must be positive"));
        }
        if s > m {
            return Err(Error::domain(format!("need s <= m, got s={s}, m={m}")));
        }
        Ok(SystemParams { m, p, s })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// `q = m + p - 1 - s` (nonnegative since `p ≥ 1`, `s ≤ m`).
    pub fn q(&self) -> u32 {
        self.m + self.p - 1 - self.s
    }

    /// Ground set `{1..m+q}`.
    pub fn ground(&self) -> MultiIndex {
        MultiIndex::full(self.m + self.q())
    }
}

/// The inverse coefficients `C_0..C_q` for given `(q, s)`:
///
/// ```text
///   C_0 = 1 / binom(q+s, s)
///   C_i = -1 / binom(q+s-i, s) · Σ_{j<i} binom(i,j) · C_j · binom(q+s-i, s-i+j)
/// ```
///
/// with out-of-range binomials equal to zero. The table is the unique
/// solution of the triangular system `Σ_j binom(u,j)·binom(q+s-u,s-j)·C_{u-j}
/// = δ_{u0}` for `u = 0..q`, which is precisely what `B·A = I` demands of
/// the closed-form inverse — the identity tests pin every value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffTable {
    q: u32,
    s: u32,
    values: Vec<Rational>,
}

impl CoeffTable {
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, i: usize) -> &Rational {
        &self.values[i]
    }
}

pub fn coeffs(q: u32, s: u32) -> CoeffTable {
    let qs = (q + s) as u64;
    let one = num::BigInt::from(1);
    let mut values: Vec<Rational> = Vec::with_capacity(q as usize + 1);
    values.push(Rational::new(one.clone(), binom_big(qs, s as i64)));
    for i in 1..=q as i64 {
        let mut sum = int(0);
        for (j, cj) in values.iter().enumerate() {
            let j = j as i64;
            let weight = binom_big(i as u64, j) * binom_big(qs - i as u64, s as i64 - i + j);
            sum += cj * Rational::from(weight);
        }
        let scale = Rational::new(one.clone(), binom_big(qs - i as u64, s as i64));
        values.push(-sum * scale);
    }
    CoeffTable { q, s, values }
}

/// Incidence matrix of the injectivity-side system: rows are the
/// `m`-subsets, columns the `(m-s)`-subsets of `{1..m+q}`, both
/// lexicographic; entry 1 iff column ⊆ row.
pub fn inj_system(params: &SystemParams) -> RationalMatrix<MultiIndex> {
    let ground = params.ground();
    let rows = subsets(&ground, params.m() as usize);
    let cols = subsets(&ground, (params.m() - params.s()) as usize);
    let mut a = RationalMatrix::new(rows, cols);
    for r in 0..a.nrows() {
        for c in 0..a.ncols() {
            if a.col_keys()[c].is_subset_of(&a.row_keys()[r]) {
                a.set(r, c, int(1));
            }
        }
    }
    a
}

/// Closed-form left inverse `B` of [`inj_system`]: `B[S,T] = C_{(m-s)-|S∩T|}`
/// for an `(m-s)`-subset row `S` and `m`-subset column `T`. `B·A = I` of
/// size `binom(m+q, m-s)`, exactly.
pub fn left_inverse(params: &SystemParams) -> RationalMatrix<MultiIndex> {
    let ground = params.ground();
    let rows = subsets(&ground, (params.m() - params.s()) as usize);
    let cols = subsets(&ground, params.m() as usize);
    let table = coeffs(params.q(), params.s());
    let mut b = RationalMatrix::new(rows, cols);
    for r in 0..b.nrows() {
        for c in 0..b.ncols() {
            let overlap = b.row_keys()[r].intersection_size(&b.col_keys()[c]);
            let i = (params.m() - params.s()) as usize - overlap;
            debug_assert!(i <= params.q() as usize, "coefficient index out of table");
            b.set(r, c, table.value(i).clone());
        }
    }
    b
}

/// Surjectivity-side system: the transpose of [`inj_system`].
pub fn surj_system(params: &SystemParams) -> RationalMatrix<MultiIndex> {
    inj_system(params).transpose()
}

/// Right inverse of [`surj_system`]: the transpose of [`left_inverse`].
pub fn right_inverse(params: &SystemParams) -> RationalMatrix<MultiIndex> {
    left_inverse(params).transpose()
}
