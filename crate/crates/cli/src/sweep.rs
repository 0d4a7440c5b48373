//! Exhaustive dual-route verification over a parameter range.
//!
//! For every valid tuple `(N, l, s, n, k)` in range, the sweep evaluates the
//! closed-form criterion and, independently, builds the matrix of the map
//! and takes its exact rank. The two verdicts must agree; any disagreement
//! is a discrepancy and fails the sweep unless the tuple carries a known
//! flag from [`crate::manifest`]. Optionally the rank is re-computed under
//! seeded random invertible coframes, which must never change it.

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use wedgemap::classify::classify;
use wedgemap::oracle;
use wedgemap::space::{seeded_coframe, Coframe};
use wedgemap::wedge::{all_specs, build_matrix, MapSpec};
use wedgemap::Result;

use crate::manifest;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SweepParams {
    #[serde(rename = "max_N")]
    pub max_dim: u32,
    pub max_s: u32,
    pub max_l: u32,
    /// Base seed for the random-coframe rank checks.
    pub seed: u64,
    /// Whether to run the rank oracle at all.
    pub oracle: bool,
    /// Random invertible coframes to re-rank each map under (0 disables).
    pub coframe_checks: u32,
}

impl Default for SweepParams {
    fn default() -> Self {
        SweepParams {
            max_dim: 4,
            max_s: 3,
            max_l: 3,
            seed: 20260814,
            oracle: true,
            coframe_checks: 1,
        }
    }
}

/// Everything the sweep learned about one parameter tuple.
#[derive(Clone, Debug, Serialize)]
pub struct SpecRecord {
    pub spec: MapSpec,
    pub dim_domain: u64,
    pub dim_codomain: u64,
    pub predicted: &'static str,
    pub predicted_injective: bool,
    pub predicted_surjective: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_injective: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_surjective: Option<bool>,
    /// `Some(false)` when criterion and oracle disagree.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub routes_agree: Option<bool>,
    /// `Some(false)` when a coframe change moved the rank.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coframe_rank_stable: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flag: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
}

impl SpecRecord {
    /// A record is clean when no enabled check reported a problem.
    pub fn clean(&self) -> bool {
        self.routes_agree.unwrap_or(true) && self.coframe_rank_stable.unwrap_or(true)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub params: SweepParams,
    pub total_specs: usize,
    /// Records whose checks reported a problem (flagged or not).
    pub discrepancies: Vec<SpecRecord>,
    /// Records carrying a manifest flag, clean or not.
    pub flagged: Vec<SpecRecord>,
    pub elapsed_ms: u128,
    /// True when every discrepancy is covered by a manifest flag.
    pub pass: bool,
    pub records: Vec<SpecRecord>,
}

/// Deterministic per-tuple seed so runs are reproducible regardless of
/// iteration order.
fn per_spec_seed(base: u64, spec: &MapSpec, round: u32) -> u64 {
    let packed = [
        spec.ambient_dim(),
        spec.codim(),
        spec.power(),
        spec.form_degree(),
        spec.z_degree(),
    ]
    .iter()
    .fold(0u64, |acc, &v| {
        acc.wrapping_mul(1_000_003).wrapping_add(v as u64)
    });
    base ^ packed
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(round as u64)
}

fn record_for(spec: &MapSpec, params: &SweepParams) -> Result<SpecRecord> {
    let cls = classify(spec);
    let entry = manifest::lookup(spec);
    let mut rec = SpecRecord {
        spec: *spec,
        dim_domain: spec.domain().dimension(),
        dim_codomain: spec.codomain().dimension(),
        predicted: cls.label(),
        predicted_injective: cls.injective,
        predicted_surjective: cls.surjective,
        oracle_rank: None,
        oracle_injective: None,
        oracle_surjective: None,
        routes_agree: None,
        coframe_rank_stable: None,
        flag: entry.map(|e| e.flag),
        note: entry.map(|e| e.note),
    };
    if params.oracle {
        let m = build_matrix(spec, &Coframe::identity(spec.ambient_dim()))?;
        let rank = oracle::rank(&m).rank;
        let inj = rank == m.ncols();
        let surj = rank == m.nrows();
        rec.oracle_rank = Some(rank);
        rec.oracle_injective = Some(inj);
        rec.oracle_surjective = Some(surj);
        rec.routes_agree = Some(inj == cls.injective && surj == cls.surjective);
        if params.coframe_checks > 0 {
            let mut stable = true;
            for round in 0..params.coframe_checks {
                let cf =
                    seeded_coframe(spec.ambient_dim(), per_spec_seed(params.seed, spec, round));
                let m2 = build_matrix(spec, &cf)?;
                stable &= oracle::rank(&m2).rank == rank;
            }
            rec.coframe_rank_stable = Some(stable);
        }
    }
    Ok(rec)
}

/// Run the sweep. Record order follows the lexicographic tuple order, so
/// reports are deterministic.
pub fn run_sweep(params: &SweepParams) -> Result<SweepReport> {
    let t0 = Instant::now();
    let specs = all_specs(params.max_dim, params.max_s, params.max_l);
    let records: Vec<SpecRecord> = specs
        .par_iter()
        .map(|spec| record_for(spec, params))
        .collect::<Result<_>>()?;
    let discrepancies: Vec<SpecRecord> = records.iter().filter(|r| !r.clean()).cloned().collect();
    let flagged: Vec<SpecRecord> = records
        .iter()
        .filter(|r| r.flag.is_some())
        .cloned()
        .collect();
    let pass = discrepancies.iter().all(|r| r.flag.is_some());
    Ok(SweepReport {
        params: *params,
        total_specs: records.len(),
        discrepancies,
        flagged,
        elapsed_ms: t0.elapsed().as_millis(),
        pass,
        records,
    })
}

/// Human-readable summary of a sweep report.
pub fn render_report(report: &SweepReport) -> String {
    let p = &report.params;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "verification sweep: N <= {}, s <= {}, l <= {} (oracle: {}, coframe checks per map: {}, seed {})",
        p.max_dim,
        p.max_s,
        p.max_l,
        if p.oracle { "on" } else { "off" },
        if p.oracle { p.coframe_checks } else { 0 },
        p.seed
    );
    let _ = writeln!(out, "maps checked: {}", report.total_specs);
    if p.oracle {
        let agreeing = report
            .records
            .iter()
            .filter(|r| r.routes_agree == Some(true))
            .count();
        let _ = writeln!(
            out,
            "criterion and rank oracle agree: {}/{}",
            agreeing, report.total_specs
        );
        if p.coframe_checks > 0 {
            let stable = report
                .records
                .iter()
                .filter(|r| r.coframe_rank_stable == Some(true))
                .count();
            let _ = writeln!(
                out,
                "rank stable under coframe change: {}/{}",
                stable, report.total_specs
            );
        }
    } else {
        let _ = writeln!(out, "rank oracle skipped: criterion evaluated only");
    }
    if report.flagged.is_empty() {
        let _ = writeln!(out, "flagged tuples: none");
    } else {
        let _ = writeln!(out, "flagged tuples: {}", report.flagged.len());
        for r in &report.flagged {
            let _ = write!(
                out,
                "  {} [{}]: predicted {}",
                r.spec,
                r.flag.unwrap_or("?"),
                r.predicted
            );
            if let Some(rank) = r.oracle_rank {
                let _ = write!(
                    out,
                    "; oracle rank {} of {}x{} -> {}",
                    rank,
                    r.dim_codomain,
                    r.dim_domain,
                    verdict_word(
                        r.oracle_injective == Some(true),
                        r.oracle_surjective == Some(true)
                    ),
                );
            }
            out.push('\n');
            if let Some(note) = r.note {
                let _ = writeln!(out, "    note: {note}");
            }
        }
    }
    let unflagged: Vec<&SpecRecord> = report
        .discrepancies
        .iter()
        .filter(|r| r.flag.is_none())
        .collect();
    if unflagged.is_empty() {
        let _ = writeln!(out, "discrepancies: none");
    } else {
        let _ = writeln!(out, "discrepancies: {}", unflagged.len());
        for r in unflagged {
            let _ = writeln!(
                out,
                "  {}: predicted {}, oracle rank {:?} (domain dim {}, codomain dim {}), rank stable: {:?}",
                r.spec, r.predicted, r.oracle_rank, r.dim_domain, r.dim_codomain, r.coframe_rank_stable
            );
        }
    }
    let _ = writeln!(
        out,
        "{} ({:.2}s)",
        if report.pass { "PASS" } else { "FAIL" },
        report.elapsed_ms as f64 / 1000.0
    );
    out
}

fn verdict_word(injective: bool, surjective: bool) -> &'static str {
    match (injective, surjective) {
        (true, true) => "bijective",
        (true, false) => "injective",
        (false, true) => "surjective",
        (false, false) => "neither",
    }
}
