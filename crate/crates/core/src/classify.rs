//! Closed-form classification of the wedge maps, the parameter duality,
//! and explicit kernel/cokernel witnesses.
//!
//! The criterion:
//!
//! ```text
//!   surjective  ⟺  n + k ≥ N - s
//!   injective   ⟺  n + k ≤ N - l - s
//! ```
//!
//! so a map is bijective exactly when `l = 0` and `n + k = N - s`. This
//! module never builds a matrix; the rank route lives in [`crate::oracle`]
//! and the two are compared externally.

use serde::Serialize;

use crate::indexkit::MultiIndex;
use crate::rational::int;
use crate::space::{BasisKey, TensorElement};
use crate::wedge::MapSpec;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub injective: bool,
    pub surjective: bool,
}

impl Classification {
    pub fn bijective(&self) -> bool {
        self.injective && self.surjective
    }

    pub fn label(&self) -> &'static str {
        match (self.injective, self.surjective) {
            (true, true) => "bijective",
            (true, false) => "injective",
            (false, true) => "surjective",
            (false, false) => "neither",
        }
    }
}

/// Evaluate the closed-form criterion.
pub fn classify(spec: &MapSpec) -> Classification {
    let n = spec.form_degree() as i64;
    let k = spec.z_degree() as i64;
    let dim = spec.ambient_dim() as i64;
    let codim = spec.codim() as i64;
    let s = spec.power() as i64;
    Classification {
        injective: n + k <= dim - codim - s,
        surjective: n + k >= dim - s,
    }
}

/// The dual parameter tuple: same `(N, l, s)`, degrees
/// `n' = N - l - n - s`, `k' = N - k - s`. An involution that swaps
/// injectivity and surjectivity.
pub fn dual(spec: &MapSpec) -> MapSpec {
    let n2 = spec.lower_bound() - spec.form_degree() - spec.power();
    let k2 = spec.ambient_dim() - spec.z_degree() - spec.power();
    MapSpec::new(spec.ambient_dim(), spec.codim(), spec.power(), n2, k2)
        .expect("dual of a valid spec is valid")
}

/// Dimension-comparison classification, meaningful only at `l = 0`:
/// injective ⟺ dim domain ≤ dim codomain, surjective ⟺ ≥.
pub fn classify_by_dims(spec: &MapSpec) -> Result<Classification> {
    if spec.codim() != 0 {
        return Err(Error::Unsupported(
            "dimension-comparison classification is only valid at l = 0".into(),
        ));
    }
    let dom = spec.domain().dimension();
    let cod = spec.codomain().dimension();
    Ok(Classification {
        injective: dom <= cod,
        surjective: dom >= cod,
    })
}

/// A nonzero element the map sends exactly to zero. Defined whenever the
/// map is not injective (`n + k > N - l - s`).
///
/// Construction: lower index `J = {1..n}`; upper index `I` continues with
/// `{n+1..n+k}`, wrapping around to `{1..}` past `N`. Together they cover
/// so much of `{1..N-l}` that fewer than `s` wedge labels remain, so the
/// image of the single basis term vanishes.
pub fn kernel_witness(spec: &MapSpec) -> Result<TensorElement> {
    if classify(spec).injective {
        return Err(Error::precondition(format!(
            "{spec} is injective: kernel is trivial"
        )));
    }
    let n = spec.form_degree();
    let k = spec.z_degree();
    let dim = spec.ambient_dim();
    let lower = MultiIndex::new((1..=n).collect(), spec.lower_bound())?;
    let upper_entries: Vec<u32> = if n + k <= dim {
        (n + 1..=n + k).collect()
    } else {
        // wrap: {1..n+k-N} ∪ {n+1..N}; disjoint since n+k-N ≤ n-s < n
        (1..=n + k - dim).chain(n + 1..=dim).collect()
    };
    let upper = MultiIndex::new(upper_entries, dim)?;
    let mut el = TensorElement::zero(spec.domain());
    el.add_assign_term(BasisKey { lower, upper }, int(1));
    Ok(el)
}

/// A codomain basis key outside the image span. Defined whenever the map
/// is not surjective (`n + k < N - s`).
///
/// Every image key shares at least `s` labels between its lower and upper
/// index (the appended set sits in both); the witness key shares fewer
/// than `s`, so the unit vector on it is unreachable.
pub fn cokernel_witness(spec: &MapSpec) -> Result<BasisKey> {
    if classify(spec).surjective {
        return Err(Error::precondition(format!(
            "{spec} is surjective: cokernel is trivial"
        )));
    }
    let dim = spec.ambient_dim();
    let s = spec.power();
    let low_len = spec.form_degree() + s; // codomain lower degree
    let up_len = spec.z_degree() + s; // codomain upper degree
    let lower = MultiIndex::new((1..=low_len).collect(), spec.lower_bound())?;
    let tail = dim - low_len; // room above the lower block
    let upper_entries: Vec<u32> = if up_len <= tail {
        (low_len + 1..=low_len + up_len).collect()
    } else {
        // wrap: overlap size up_len - tail < s by the non-surjectivity bound
        (1..=up_len - tail).chain(low_len + 1..=dim).collect()
    };
    let upper = MultiIndex::new(upper_entries, dim)?;
    Ok(BasisKey { lower, upper })
}
