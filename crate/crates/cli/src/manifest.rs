//! Known discrepancies between the closed-form criterion and previously
//! circulated classifications of specific maps.
//!
//! The verification sweep consults this list and attaches the flag and note
//! to the matching record. Entries here never make a sweep fail and are
//! never used to override a computation: the rank oracle adjudicates every
//! tuple at run time, flagged or not.

use wedgemap::wedge::MapSpec;

#[derive(Clone, Copy, Debug)]
pub struct ManifestEntry {
    pub ambient_dim: u32,
    pub codim: u32,
    pub power: u32,
    pub form_degree: u32,
    pub z_degree: u32,
    /// Stable machine-readable flag emitted in reports.
    pub flag: &'static str,
    /// Human-readable account of the discrepancy and its resolution.
    pub note: &'static str,
}

/// All known discrepancies.
pub const KNOWN: &[ManifestEntry] = &[ManifestEntry {
    ambient_dim: 4,
    codim: 1,
    power: 2,
    form_degree: 1,
    z_degree: 1,
    flag: "remark-5.4-conflict",
    note: "A previously circulated side remark describes this map as not \
           surjective. The exact computation says otherwise: the 4x12 matrix \
           has rank 4, the full codomain dimension, so the map is surjective \
           exactly as the closed-form criterion (n + k = 2 = N - s) predicts. \
           The criterion's verdict stands; the tuple is flagged so reports \
           surface the conflict instead of silently passing over it.",
}];

/// The manifest entry matching a parameter tuple, if any.
pub fn lookup(spec: &MapSpec) -> Option<&'static ManifestEntry> {
    KNOWN.iter().find(|e| {
        e.ambient_dim == spec.ambient_dim()
            && e.codim == spec.codim()
            && e.power == spec.power()
            && e.form_degree == spec.form_degree()
            && e.z_degree == spec.z_degree()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_finds_the_flagged_tuple_and_nothing_else() {
        let flagged = MapSpec::new(4, 1, 2, 1, 1).unwrap();
        let entry = lookup(&flagged).expect("flagged tuple present");
        assert_eq!(entry.flag, "remark-5.4-conflict");

        for other in wedgemap::wedge::all_specs(4, 3, 3) {
            if other != flagged {
                assert!(lookup(&other).is_none(), "{other}");
            }
        }
    }
}
