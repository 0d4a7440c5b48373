//! The wedge maps themselves: validated parameter tuples, the direct
//! standard-basis expansion, the single-step wedge against an arbitrary
//! coframe, and the two matrix builders.
//!
//! Sign convention. The direct expansion assigns a domain basis key
//! `(J, I)` the image
//!
//! ```text
//!   s! · (-1)^(n·s + s(s-1)/2) · Σ_S  sgn(J|S) · sgn(I|S) · (J∪S, I∪S)
//! ```
//!
//! where `S` runs over the s-subsets of `{1..N-l} \ (J ∪ I)`, and `sgn(A|S)`
//! is the sign of sorting `S` behind `A`. The normalization is pinned by the
//! requirement that this equals wedging one covector at a time
//! ([`wedge_once`], whose per-step sign is `(-1)^n` for current lower degree
//! `n`): the two routes must produce identical matrices, and the test suite
//! enforces exactly that. Neither route is ever expressed in terms of the
//! other.

use std::collections::BTreeMap;

use num::Zero;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::indexkit::{interleave_sign, subsets, MultiIndex, Sign};
use crate::rational::{format_rational, int, Rational};
use crate::space::{basis, BasisKey, Coframe, SpaceSig, TensorElement};
use crate::{Error, Result};

/// Parameters of one wedge map `W_s` from `(n, k)` to `(n+s, k+s)` on the
/// codimension-`l` space at ambient dimension `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MapSpec {
    #[serde(rename = "N")]
    dim: u32,
    #[serde(rename = "l")]
    codim: u32,
    #[serde(rename = "s")]
    power: u32,
    #[serde(rename = "n")]
    form_degree: u32,
    #[serde(rename = "k")]
    z_degree: u32,
}

impl MapSpec {
    /// Validity: `N ≥ 1`, `l < N`, `s ≥ 1`, `n + s ≤ N - l`, `k + s ≤ N`.
    pub fn new(
        dim: u32,
        codim: u32,
        power: u32,
        form_degree: u32,
        z_degree: u32,
    ) -> Result<MapSpec> {
        if dim == 0 {
            return Err(Error::domain("ambient dimension N must be positive"));
        }
        if codim >= dim {
            return Err(Error::domain(format!(
                "codimension l={codim} must satisfy l < N={dim}"
            )));
        }
        if power == 0 {
            return Err(Error::domain("wedge power s must be at least 1"));
        }
        if form_degree + power > dim - codim {
            return Err(Error::domain(format!(
                "need n+s <= N-l: {form_degree}+{power} > {}",
                dim - codim
            )));
        }
        if z_degree + power > dim {
            return Err(Error::domain(format!(
                "need k+s <= N: {z_degree}+{power} > {dim}"
            )));
        }
        Ok(MapSpec {
            dim,
            codim,
            power,
            form_degree,
            z_degree,
        })
    }

    pub fn ambient_dim(&self) -> u32 {
        self.dim
    }

    pub fn codim(&self) -> u32 {
        self.codim
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    pub fn form_degree(&self) -> u32 {
        self.form_degree
    }

    pub fn z_degree(&self) -> u32 {
        self.z_degree
    }

    pub fn lower_bound(&self) -> u32 {
        self.dim - self.codim
    }

    pub fn domain(&self) -> SpaceSig {
        SpaceSig::new(self.dim, self.codim, self.form_degree, self.z_degree)
            .expect("validated at construction")
    }

    pub fn codomain(&self) -> SpaceSig {
        SpaceSig::new(
            self.dim,
            self.codim,
            self.form_degree + self.power,
            self.z_degree + self.power,
        )
        .expect("validated at construction")
    }
}

impl std::fmt::Display for MapSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "W_{}^{}({},{}) at N={}",
            self.power, self.codim, self.form_degree, self.z_degree, self.dim
        )
    }
}

/// Every valid map spec with `N ≤ max_dim`, `s ≤ max_power`, `l ≤ max_codim`,
/// in lexicographic `(N, l, s, n, k)` order.
pub fn all_specs(max_dim: u32, max_power: u32, max_codim: u32) -> Vec<MapSpec> {
    let mut out = Vec::new();
    for dim in 1..=max_dim {
        for codim in 0..=max_codim.min(dim.saturating_sub(1)) {
            for power in 1..=max_power {
                if power > dim - codim {
                    break;
                }
                for form_degree in 0..=(dim - codim - power) {
                    for z_degree in 0..=(dim - power) {
                        out.push(
                            MapSpec::new(dim, codim, power, form_degree, z_degree)
                                .expect("enumeration stays in the valid range"),
                        );
                    }
                }
            }
        }
    }
    out
}

fn factorial(s: u32) -> Rational {
    int((1..=s as i64).product::<i64>().max(1))
}

/// Image of the single domain basis key `(lower, upper)` under the direct
/// standard-basis expansion (standard coframe). Appended indices range over
/// `{1..N-l}` minus everything already present in `lower` or `upper`.
pub fn expand_term(
    spec: &MapSpec,
    lower: &MultiIndex,
    upper: &MultiIndex,
) -> Result<TensorElement> {
    let domain = spec.domain();
    if lower.len() != spec.form_degree() as usize || upper.len() != spec.z_degree() as usize {
        return Err(Error::domain(format!(
            "key degrees ({},{}) do not match spec {}",
            lower.len(),
            upper.len(),
            spec
        )));
    }
    let lower = lower.with_bound(domain.lower_bound())?;
    let upper = upper.with_bound(spec.ambient_dim())?;

    let available: Vec<u32> = (1..=spec.lower_bound())
        .filter(|&v| !lower.contains(v) && !upper.contains(v))
        .collect();
    let ground = MultiIndex::new(available, spec.lower_bound())?;

    let s = spec.power();
    let base_parity = (spec.form_degree() * s + s * (s - 1) / 2) as usize;
    let base = Sign::from_parity(base_parity).times(&factorial(s));

    let mut out = TensorElement::zero(spec.codomain());
    for sub in subsets(&ground, s as usize) {
        let sign_lower = interleave_sign(&lower, &sub);
        let sub_upper = sub.with_bound(spec.ambient_dim())?;
        let sign_upper = interleave_sign(&upper, &sub_upper);
        let coeff = (sign_lower * sign_upper).times(&base);
        if coeff.is_zero() {
            continue;
        }
        let new_lower = lower.union_disjoint(&sub).expect("sub avoids lower");
        let new_upper = upper.union_disjoint(&sub_upper).expect("sub avoids upper");
        out.add_assign_term(
            BasisKey {
                lower: new_lower,
                upper: new_upper,
            },
            coeff,
        );
    }
    Ok(out)
}

/// Wedge one coframe covector onto `x`: degree `(n, k)` to `(n+1, k+1)`.
/// For each term `(J, I)`, each surviving lower label `mu` and coframe label
/// `c` contribute `E^c_mu · (-1)^n · sgn(J|mu) · sgn(I|c) · (J∪mu, I∪c)`.
pub fn wedge_once(x: &TensorElement, coframe: &Coframe) -> Result<TensorElement> {
    let sig = *x.sig();
    if coframe.size() != sig.ambient_dim() {
        return Err(Error::domain(format!(
            "coframe size {} does not match N={}",
            coframe.size(),
            sig.ambient_dim()
        )));
    }
    let out_sig = SpaceSig::new(
        sig.ambient_dim(),
        sig.codim(),
        sig.form_degree() + 1,
        sig.z_degree() + 1,
    )?;
    let step_sign = Sign::from_parity(sig.form_degree() as usize);
    let mut out = TensorElement::zero(out_sig);
    for (key, coeff) in x.terms() {
        for mu in 1..=sig.lower_bound() {
            if key.lower.contains(mu) {
                continue;
            }
            let mu_lower = MultiIndex::new(vec![mu], sig.lower_bound())?;
            let sign_lower = interleave_sign(&key.lower, &mu_lower);
            for c in 1..=sig.ambient_dim() {
                if key.upper.contains(c) {
                    continue;
                }
                let entry = coframe.entry(c, mu);
                if entry.is_zero() {
                    continue;
                }
                let c_upper = MultiIndex::new(vec![c], sig.ambient_dim())?;
                let sign = step_sign * sign_lower * interleave_sign(&key.upper, &c_upper);
                let contribution = sign.times(&(coeff * entry));
                if contribution.is_zero() {
                    continue;
                }
                out.add_assign_term(
                    BasisKey {
                        lower: key
                            .lower
                            .union_disjoint(&mu_lower)
                            .expect("mu avoids lower"),
                        upper: key.upper.union_disjoint(&c_upper).expect("c avoids upper"),
                    },
                    contribution,
                );
            }
        }
    }
    Ok(out)
}

/// Apply the full map: `s` successive [`wedge_once`] steps against `coframe`.
pub fn apply_map(spec: &MapSpec, x: &TensorElement, coframe: &Coframe) -> Result<TensorElement> {
    if *x.sig() != spec.domain() {
        return Err(Error::domain(format!(
            "element lives in {} but map domain is {}",
            x.sig(),
            spec.domain()
        )));
    }
    let mut cur = x.clone();
    for _ in 0..spec.power() {
        cur = wedge_once(&cur, coframe)?;
    }
    Ok(cur)
}

/// Matrix of the map in the standard coframe via the direct expansion.
/// Columns are indexed by the domain basis, rows by the codomain basis,
/// both in lexicographic order.
pub fn build_matrix_direct(spec: &MapSpec) -> Result<RationalMatrix<BasisKey>> {
    build_matrix_with(spec, |key| expand_term(spec, &key.lower, &key.upper))
}

/// Matrix of the map against an arbitrary coframe via iterated single
/// wedges. Independent of [`build_matrix_direct`] by construction.
pub fn build_matrix_iterated(
    spec: &MapSpec,
    coframe: &Coframe,
) -> Result<RationalMatrix<BasisKey>> {
    build_matrix_with(spec, |key| {
        let mut el = TensorElement::zero(spec.domain());
        el.add_assign_term(key.clone(), int(1));
        apply_map(spec, &el, coframe)
    })
}

/// Matrix of the map: the direct expansion when the coframe is standard,
/// otherwise the iterated route.
pub fn build_matrix(spec: &MapSpec, coframe: &Coframe) -> Result<RationalMatrix<BasisKey>> {
    if coframe.size() != spec.ambient_dim() {
        return Err(Error::domain(format!(
            "coframe size {} does not match N={}",
            coframe.size(),
            spec.ambient_dim()
        )));
    }
    if coframe.is_identity() {
        build_matrix_direct(spec)
    } else {
        build_matrix_iterated(spec, coframe)
    }
}

fn build_matrix_with<F>(spec: &MapSpec, column_image: F) -> Result<RationalMatrix<BasisKey>>
where
    F: Fn(&BasisKey) -> Result<TensorElement> + Sync,
{
    let domain_basis = basis(&spec.domain());
    let codomain_basis = basis(&spec.codomain());
    let row_of: BTreeMap<&BasisKey, usize> = codomain_basis
        .iter()
        .enumerate()
        .map(|(i, k)| (k, i))
        .collect();

    // Columns are independent; build them in parallel, assemble in order.
    let columns: Vec<Vec<(usize, Rational)>> = domain_basis
        .par_iter()
        .map(|key| {
            let image = column_image(key)?;
            image
                .terms()
                .map(|(k, v)| {
                    let &row = row_of
                        .get(k)
                        .ok_or_else(|| Error::domain(format!("image key {k} outside codomain")))?;
                    Ok((row, v.clone()))
                })
                .collect()
        })
        .collect::<Result<_>>()?;

    let mut out = RationalMatrix::new(codomain_basis, domain_basis);
    for (j, column) in columns.into_iter().enumerate() {
        for (i, v) in column {
            out.set(i, j, v);
        }
    }
    Ok(out)
}

/// Sparse exact matrix with typed row/column keys. Entries are kept sorted
/// by `(row, col)`; zeros are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix<K> {
    row_keys: Vec<K>,
    col_keys: Vec<K>,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl<K> RationalMatrix<K> {
    pub fn new(row_keys: Vec<K>, col_keys: Vec<K>) -> RationalMatrix<K> {
        RationalMatrix {
            row_keys,
            col_keys,
            entries: BTreeMap::new(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.row_keys.len()
    }

    pub fn ncols(&self) -> usize {
        self.col_keys.len()
    }

    pub fn row_keys(&self) -> &[K] {
        &self.row_keys
    }

    pub fn col_keys(&self) -> &[K] {
        &self.col_keys
    }

    pub fn num_entries(&self) -> usize {
        self.entries.len()
    }

    /// Set one entry (zero erases). Out-of-range indices are a programmer
    /// error and panic.
    pub fn set(&mut self, row: usize, col: usize, value: Rational) {
        assert!(
            row < self.nrows() && col < self.ncols(),
            "entry ({row},{col}) out of range"
        );
        if value.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), value);
        }
    }

    pub fn get(&self, row: usize, col: usize) -> Option<&Rational> {
        self.entries.get(&(row, col))
    }

    /// Entry value with zero default.
    pub fn at(&self, row: usize, col: usize) -> Rational {
        self.get(row, col).cloned().unwrap_or_else(|| int(0))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn dense_rows(&self) -> Vec<Vec<Rational>> {
        let mut rows = vec![vec![int(0); self.ncols()]; self.nrows()];
        for (&(r, c), v) in &self.entries {
            rows[r][c] = v.clone();
        }
        rows
    }

    pub fn is_identity(&self) -> bool {
        self.nrows() == self.ncols()
            && self.entries.len() == self.nrows()
            && self
                .entries
                .iter()
                .all(|(&(r, c), v)| r == c && *v == int(1))
    }

    /// Matrix-vector product.
    pub fn mat_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.ncols() {
            return Err(Error::domain(format!(
                "vector length {} does not match {} columns",
                v.len(),
                self.ncols()
            )));
        }
        let mut out = vec![int(0); self.nrows()];
        for (&(r, c), w) in &self.entries {
            if v[c].is_zero() {
                continue;
            }
            out[r] += w * &v[c];
        }
        Ok(out)
    }
}

impl<K: Clone> RationalMatrix<K> {
    pub fn identity(keys: Vec<K>) -> RationalMatrix<K> {
        let mut m = RationalMatrix::new(keys.clone(), keys);
        for i in 0..m.nrows() {
            m.set(i, i, int(1));
        }
        m
    }

    pub fn transpose(&self) -> RationalMatrix<K> {
        let mut out = RationalMatrix::new(self.col_keys.clone(), self.row_keys.clone());
        for (&(r, c), v) in &self.entries {
            out.entries.insert((c, r), v.clone());
        }
        out
    }
}

impl<K: Clone + PartialEq> RationalMatrix<K> {
    /// Exact product; the inner key vectors must agree.
    pub fn multiply(&self, rhs: &RationalMatrix<K>) -> Result<RationalMatrix<K>> {
        if self.ncols() != rhs.nrows() || self.col_keys != rhs.row_keys {
            return Err(Error::domain(
                "matrix product: inner dimensions/keys differ",
            ));
        }
        let mut acc: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
        for (&(r, k), v) in &self.entries {
            for (&(_, c), w) in rhs.entries.range((k, 0)..=(k, usize::MAX)) {
                let slot = acc.entry((r, c)).or_insert_with(|| int(0));
                *slot += v * w;
            }
        }
        let mut out = RationalMatrix::new(self.row_keys.clone(), rhs.col_keys.clone());
        for ((r, c), v) in acc {
            if !v.is_zero() {
                out.entries.insert((r, c), v);
            }
        }
        Ok(out)
    }
}

// JSON export: {"rows":[keys],"cols":[keys],"entries":[[r,c,"p/q"],...]}
// (entries in row-major order; export-only, intended for inspection and
// golden tests).
impl<K: Serialize> Serialize for RationalMatrix<K> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a, K> {
            rows: &'a [K],
            cols: &'a [K],
            entries: Vec<(usize, usize, String)>,
        }
        Repr {
            rows: &self.row_keys,
            cols: &self.col_keys,
            entries: self
                .entries
                .iter()
                .map(|(&(r, c), v)| (r, c, format_rational(v)))
                .collect(),
        }
        .serialize(serializer)
    }
}
