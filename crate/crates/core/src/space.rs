//! Spaces, their basis enumeration, elements with exact coefficients, and
//! coframes.
//!
//! A space signature `(N, l, n, k)` stands for the span of basis keys
//! `(lower, upper)` where `lower` is an `n`-index over `{1..N-l}` and
//! `upper` a `k`-index over `{1..N}`. Keys are ordered lexicographically by
//! `(lower, upper)`; every matrix and coordinate vector in the crate uses
//! that order.

use std::collections::BTreeMap;

use num::Zero;
use rand::Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::indexkit::{binom, normalize, subsets, MultiIndex};
use crate::rational::{format_rational, int, parse_rational, ratio, Rational};
use crate::{Error, Result};

/// Signature of one space: ambient dimension `N`, codimension `l` of the
/// subspace carrying the lower indices, lower degree `n`, upper degree `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SpaceSig {
    #[serde(rename = "N")]
    dim: u32,
    #[serde(rename = "l")]
    codim: u32,
    #[serde(rename = "n")]
    form_degree: u32,
    #[serde(rename = "k")]
    z_degree: u32,
}

impl SpaceSig {
    pub fn new(dim: u32, codim: u32, form_degree: u32, z_degree: u32) -> Result<SpaceSig> {
        if dim == 0 {
            return Err(Error::domain("ambient dimension N must be positive"));
        }
        if codim >= dim {
            return Err(Error::domain(format!(
                "codimension l={codim} must satisfy l < N={dim}"
            )));
        }
        if form_degree > dim - codim {
            return Err(Error::domain(format!(
                "lower degree n={form_degree} exceeds N-l={}",
                dim - codim
            )));
        }
        if z_degree > dim {
            return Err(Error::domain(format!(
                "upper degree k={z_degree} exceeds N={dim}"
            )));
        }
        Ok(SpaceSig {
            dim,
            codim,
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

    /// Bound for lower indices: `N - l`.
    pub fn lower_bound(&self) -> u32 {
        self.dim - self.codim
    }

    pub fn form_degree(&self) -> u32 {
        self.form_degree
    }

    pub fn z_degree(&self) -> u32 {
        self.z_degree
    }

    /// Linear dimension of the space: `binom(N-l, n) * binom(N, k)`.
    pub fn dimension(&self) -> u64 {
        binom(self.lower_bound() as u64, self.form_degree as i64)
            * binom(self.dim as u64, self.z_degree as i64)
    }
}

impl std::fmt::Display for SpaceSig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Omega_{}^({},{}) at N={}",
            self.codim, self.form_degree, self.z_degree, self.dim
        )
    }
}

/// Linear dimension of the space with the given signature.
pub fn dim(sig: &SpaceSig) -> u64 {
    sig.dimension()
}

/// One basis direction: lower index over `{1..N-l}`, upper over `{1..N}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisKey {
    pub lower: MultiIndex,
    pub upper: MultiIndex,
}

impl std::fmt::Display for BasisKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(mu={}, c={})", self.lower, self.upper)
    }
}

impl Serialize for BasisKey {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            mu: &'a MultiIndex,
            c: &'a MultiIndex,
        }
        Repr {
            mu: &self.lower,
            c: &self.upper,
        }
        .serialize(serializer)
    }
}

/// All basis keys of the space, lexicographic by `(lower, upper)`.
pub fn basis(sig: &SpaceSig) -> Vec<BasisKey> {
    let lowers = subsets(
        &MultiIndex::full(sig.lower_bound()),
        sig.form_degree() as usize,
    );
    let uppers = subsets(
        &MultiIndex::full(sig.ambient_dim()),
        sig.z_degree() as usize,
    );
    let mut out = Vec::with_capacity(lowers.len() * uppers.len());
    for lo in &lowers {
        for up in &uppers {
            out.push(BasisKey {
                lower: lo.clone(),
                upper: up.clone(),
            });
        }
    }
    out
}

/// An element of one space: finitely many basis keys with nonzero rational
/// coefficients. The map is kept sorted; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    sig: SpaceSig,
    terms: BTreeMap<BasisKey, Rational>,
}

impl TensorElement {
    pub fn zero(sig: SpaceSig) -> TensorElement {
        TensorElement {
            sig,
            terms: BTreeMap::new(),
        }
    }

    pub fn sig(&self) -> &SpaceSig {
        &self.sig
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisKey, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, key: &BasisKey) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(|| int(0))
    }

    /// Accumulate `coeff` onto `key`, dropping the entry if it cancels.
    pub(crate) fn add_assign_term(&mut self, key: BasisKey, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(key);
        match slot {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scaled(&self, factor: &Rational) -> TensorElement {
        if factor.is_zero() {
            return TensorElement::zero(self.sig);
        }
        TensorElement {
            sig: self.sig,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v * factor))
                .collect(),
        }
    }

    pub fn plus(&self, other: &TensorElement) -> Result<TensorElement> {
        if self.sig != other.sig {
            return Err(Error::domain(format!(
                "cannot add elements of {} and {}",
                self.sig, other.sig
            )));
        }
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_assign_term(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn minus(&self, other: &TensorElement) -> Result<TensorElement> {
        self.plus(&other.scaled(&int(-1)))
    }
}

/// Build an element from raw (unsorted, possibly repeating) index tuples.
/// Each raw term is normalized with its permutation sign; duplicate keys
/// merge and exact cancellations disappear.
pub fn make_element(
    sig: &SpaceSig,
    raw_terms: &[(Vec<u32>, Vec<u32>, Rational)],
) -> Result<TensorElement> {
    let mut out = TensorElement::zero(*sig);
    for (lower_raw, upper_raw, coeff) in raw_terms {
        if lower_raw.len() != sig.form_degree() as usize {
            return Err(Error::domain(format!(
                "lower tuple {lower_raw:?} has length {}, expected n={}",
                lower_raw.len(),
                sig.form_degree()
            )));
        }
        if upper_raw.len() != sig.z_degree() as usize {
            return Err(Error::domain(format!(
                "upper tuple {upper_raw:?} has length {}, expected k={}",
                upper_raw.len(),
                sig.z_degree()
            )));
        }
        let lo = normalize(lower_raw, sig.lower_bound())?;
        let up = normalize(upper_raw, sig.ambient_dim())?;
        let sign = lo.sign * up.sign;
        if sign.is_zero() {
            continue;
        }
        out.add_assign_term(
            BasisKey {
                lower: lo.index,
                upper: up.index,
            },
            sign.times(coeff),
        );
    }
    Ok(out)
}

/// Coordinates of `el` in the given basis order. Errors if a term's key is
/// not in the basis (wrong signature).
pub fn coordinates(el: &TensorElement, basis_keys: &[BasisKey]) -> Result<Vec<Rational>> {
    let positions: BTreeMap<&BasisKey, usize> =
        basis_keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut coords = vec![int(0); basis_keys.len()];
    for (k, v) in el.terms() {
        let &i = positions
            .get(k)
            .ok_or_else(|| Error::domain(format!("key {k} not in basis")))?;
        coords[i] = v.clone();
    }
    Ok(coords)
}

// --- JSON form of elements -------------------------------------------------
//
// {"N":4,"l":0,"n":2,"k":1,"terms":[{"mu":[1,2],"c":[3],"coeff":"-1/2"}]}
//
// Coefficients are emitted as canonical strings; on input a JSON integer is
// accepted too. Terms are emitted in basis order, so serialization is
// deterministic and `parse(print(x)) == x`.

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    #[serde(rename = "N")]
    dim: u32,
    l: u32,
    n: u32,
    k: u32,
    terms: Vec<TermRepr>,
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    mu: Vec<u32>,
    c: Vec<u32>,
    coeff: CoeffRepr,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoeffRepr {
    Int(i64),
    Text(String),
}

impl CoeffRepr {
    fn to_rational(&self) -> Result<Rational> {
        match self {
            CoeffRepr::Int(n) => Ok(int(*n)),
            CoeffRepr::Text(s) => parse_rational(s),
        }
    }
}

impl Serialize for TensorElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = ElementRepr {
            dim: self.sig.ambient_dim(),
            l: self.sig.codim(),
            n: self.sig.form_degree(),
            k: self.sig.z_degree(),
            terms: self
                .terms()
                .map(|(key, coeff)| TermRepr {
                    mu: key.lower.indices().to_vec(),
                    c: key.upper.indices().to_vec(),
                    coeff: CoeffRepr::Text(format_rational(coeff)),
                })
                .collect(),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TensorElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = ElementRepr::deserialize(deserializer)?;
        let sig = SpaceSig::new(repr.dim, repr.l, repr.n, repr.k).map_err(D::Error::custom)?;
        let raw: Vec<(Vec<u32>, Vec<u32>, Rational)> = repr
            .terms
            .into_iter()
            .map(|t| Ok((t.mu, t.c, t.coeff.to_rational()?)))
            .collect::<Result<_>>()
            .map_err(D::Error::custom)?;
        make_element(&sig, &raw).map_err(D::Error::custom)
    }
}

// --- Coframes ----------------------------------------------------------------

/// An invertible change of coframe on the ambient `N`-dimensional space:
/// `matrix[c-1][mu-1]` is the coefficient of basis covector `mu` in coframe
/// covector `c`. Construction checks exact invertibility.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coframe {
    size: u32,
    matrix: Vec<Vec<Rational>>,
}

impl Coframe {
    pub fn new(matrix: Vec<Vec<Rational>>) -> Result<Coframe> {
        let size = matrix.len();
        if size == 0 {
            return Err(Error::domain("coframe matrix must be nonempty"));
        }
        if matrix.iter().any(|row| row.len() != size) {
            return Err(Error::domain("coframe matrix must be square"));
        }
        if crate::oracle::dense_rank(&matrix) != size {
            return Err(Error::domain("coframe matrix is singular"));
        }
        Ok(Coframe {
            size: size as u32,
            matrix,
        })
    }

    pub fn identity(size: u32) -> Coframe {
        let n = size as usize;
        let matrix = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| if r == c { int(1) } else { int(0) })
                    .collect()
            })
            .collect();
        Coframe { size, matrix }
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    /// Coefficient `E^c_mu` (1-based labels).
    pub fn entry(&self, c: u32, mu: u32) -> &Rational {
        &self.matrix[(c - 1) as usize][(mu - 1) as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.iter().enumerate().all(|(r, row)| {
            row.iter()
                .enumerate()
                .all(|(c, v)| if r == c { *v == int(1) } else { v.is_zero() })
        })
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.matrix
    }
}

/// The standard coframe: `e^c = dx^c`.
pub fn standard_coframe(size: u32) -> Coframe {
    Coframe::identity(size)
}

/// Rows of the coframe matrix truncated to the first `N-l` columns: the
/// coefficients that survive restriction to the codimension-`l` subspace.
/// Row `c-1` lists `E^c_mu` for `mu = 1..N-l`.
pub fn restricted_columns(coframe: &Coframe, codim: u32) -> Result<Vec<Vec<Rational>>> {
    if codim >= coframe.size() {
        return Err(Error::domain(format!(
            "codimension l={codim} must satisfy l < N={}",
            coframe.size()
        )));
    }
    let keep = (coframe.size() - codim) as usize;
    Ok(coframe
        .rows()
        .iter()
        .map(|row| row[..keep].to_vec())
        .collect())
}

/// Seeded random coframe with small rational entries, rejection-sampled
/// until exactly invertible. Deterministic for a fixed RNG stream.
pub fn random_invertible_coframe(size: u32, rng: &mut impl Rng) -> Coframe {
    let n = size as usize;
    loop {
        let matrix: Vec<Vec<Rational>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        let numer = rng.gen_range(-2i64..=2);
                        let denom = if rng.gen_bool(0.25) { 2 } else { 1 };
                        ratio(numer, denom)
                    })
                    .collect()
            })
            .collect();
        if crate::oracle::dense_rank(&matrix) == n {
            return Coframe { size, matrix };
        }
    }
}

/// Reproducible random invertible coframe: the same `(size, seed)` pair
/// always yields the same matrix (ChaCha8 stream under the hood).
pub fn seeded_coframe(size: u32, seed: u64) -> Coframe {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    random_invertible_coframe(size, &mut rng)
}

// --- JSON form of coframes ---------------------------------------------------
//
// {"N":2,"matrix":[["1","0"],["0","1"]]}  (entries: string or integer)

#[derive(Serialize, Deserialize)]
struct CoframeRepr {
    #[serde(rename = "N")]
    size: u32,
    matrix: Vec<Vec<CoeffRepr>>,
}

impl Serialize for Coframe {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = CoframeRepr {
            size: self.size,
            matrix: self
                .matrix
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|v| CoeffRepr::Text(format_rational(v)))
                        .collect()
                })
                .collect(),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Coframe {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = CoframeRepr::deserialize(deserializer)?;
        let matrix: Vec<Vec<Rational>> = repr
            .matrix
            .iter()
            .map(|row| {
                row.iter()
                    .map(CoeffRepr::to_rational)
                    .collect::<Result<_>>()
            })
            .collect::<Result<_>>()
            .map_err(D::Error::custom)?;
        if matrix.len() != repr.size as usize {
            return Err(D::Error::custom(format!(
                "coframe says N={} but matrix has {} rows",
                repr.size,
                matrix.len()
            )));
        }
        Coframe::new(matrix).map_err(D::Error::custom)
    }
}
