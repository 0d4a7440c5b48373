//! `wedgemap`: exact construction and classification of coframe wedge maps
//! on exterior-algebra spaces.
//!
//! Exit codes: 0 success, 1 verification failure (or runtime error),
//! 2 usage error, 3 refused resource limit.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use wedgemap::classify::{classify, classify_by_dims, cokernel_witness, dual, kernel_witness};
use wedgemap::oracle::{self, SolveStatus};
use wedgemap::rational::format_rational;
use wedgemap::space::{Coframe, TensorElement};
use wedgemap::systems::{
    coeffs, inj_system, left_inverse, right_inverse, surj_system, SystemParams,
};
use wedgemap::wedge::{apply_map, build_matrix, MapSpec};
use wedgemap_cli::manifest;
use wedgemap_cli::sweep::{render_report, run_sweep, SweepParams};
use wedgemap_cli::table;

/// Refuse `verify` sweeps above this ambient dimension: matrix sizes grow
/// combinatorially and an exact rank pass would monopolize the machine.
const MAX_VERIFY_DIM: u32 = 7;

#[derive(Parser)]
#[command(
    name = "wedgemap",
    version,
    about = "Exact construction and classification of coframe wedge maps on exterior-algebra spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Ascii,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Ascii)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// One map `W_s^l(n,k)` at ambient dimension `N`.
#[derive(Args)]
struct SpecArgs {
    /// Ambient dimension N.
    #[arg(long = "N")]
    ambient_dim: u32,
    /// Codimension l of the subspace carrying lower indices.
    #[arg(long, default_value_t = 0)]
    l: u32,
    /// Wedge power s.
    #[arg(long)]
    s: u32,
    /// Lower (form) degree n of the domain.
    #[arg(long)]
    n: u32,
    /// Upper degree k of the domain.
    #[arg(long)]
    k: u32,
}

impl SpecArgs {
    fn to_spec(&self) -> wedgemap::Result<MapSpec> {
        MapSpec::new(self.ambient_dim, self.l, self.s, self.n, self.k)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the injectivity/surjectivity table over all degrees (n, k).
    Table {
        /// Ambient dimension N.
        #[arg(long = "N")]
        ambient_dim: u32,
        /// Wedge power s.
        #[arg(long, default_value_t = 1)]
        s: u32,
        /// Codimension l.
        #[arg(long, default_value_t = 0)]
        l: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Classify one map by the closed-form criterion.
    Classify {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print domain/codomain dimensions (with the dimension-comparison
    /// verdict at l = 0, where it is equivalent to the criterion).
    Dims {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Construct explicit kernel/cokernel witnesses for one map.
    Witness {
        #[command(flatten)]
        spec: SpecArgs,
        /// Skip the matrix-level verification of the witnesses.
        #[arg(long)]
        no_check: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Cross-check the criterion against the exact rank oracle over a range.
    Verify {
        /// Largest ambient dimension N to sweep (refused above 7).
        #[arg(long = "max-N", default_value_t = 4)]
        max_dim: u32,
        /// Largest wedge power s.
        #[arg(long = "max-s", default_value_t = 3)]
        max_s: u32,
        /// Largest codimension l.
        #[arg(long = "max-l", default_value_t = 3)]
        max_l: u32,
        /// Base seed for the random-coframe rank checks.
        #[arg(long, default_value_t = 20260814)]
        seed: u64,
        /// Evaluate the criterion only; skip matrices and ranks.
        #[arg(long)]
        no_oracle: bool,
        /// Random invertible coframes to re-rank each map under.
        #[arg(long, default_value_t = 1)]
        coframe_checks: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print the inverse-coefficient table c_0..c_q for overlap parameters.
    Coeffs {
        /// Largest possible overlap defect q.
        q: u32,
        /// Wedge power s (at least 1).
        s: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Build the subset incidence systems for (m, p, s) and certify both
    /// one-sided inverses exactly.
    InverseCheck {
        /// Subset size m.
        m: u32,
        /// Surplus parameter p; the overlap defect is q = m + p - 1 - s and
        /// the ground set is {1 .. m+q}.
        p: u32,
        /// Wedge power s (at most m).
        s: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Apply the wedge map to an element read from a JSON file.
    Apply {
        /// Path to the element JSON: {"N":..,"l":..,"n":..,"k":..,
        /// "terms": [{"mu": [..], "c": [..], "coeff": "p/q"}, ..]}.
        element: PathBuf,
        /// Wedge power s.
        #[arg(long)]
        s: u32,
        /// Optional coframe JSON ({"N":..,"matrix":[[..],..]}); identity
        /// coframe by default.
        #[arg(long)]
        coframe: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            let usage = err.downcast_ref::<wedgemap::Error>().is_some_and(|e| {
                matches!(e, wedgemap::Error::Domain(_) | wedgemap::Error::Parse(_))
            });
            if usage {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn emit(output: &OutputArgs, text: String) -> anyhow::Result<()> {
    match &output.out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing output to {}", path.display()))
        }
    }
}

fn emit_json(output: &OutputArgs, value: &serde_json::Value) -> anyhow::Result<()> {
    emit(
        output,
        format!("{}\n", serde_json::to_string_pretty(value)?),
    )
}

fn run(command: Command) -> anyhow::Result<ExitCode> {
    match command {
        Command::Table {
            ambient_dim,
            s,
            l,
            output,
        } => {
            match output.format {
                Format::Ascii => emit(&output, table::render_ascii(ambient_dim, s, l)?)?,
                Format::Json => emit_json(
                    &output,
                    &serde_json::to_value(table::table(ambient_dim, s, l)?)?,
                )?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify { spec, output } => cmd_classify(&spec.to_spec()?, &output),
        Command::Dims { spec, output } => cmd_dims(&spec.to_spec()?, &output),
        Command::Witness {
            spec,
            no_check,
            output,
        } => cmd_witness(&spec.to_spec()?, no_check, &output),
        Command::Verify {
            max_dim,
            max_s,
            max_l,
            seed,
            no_oracle,
            coframe_checks,
            output,
        } => {
            if max_dim > MAX_VERIFY_DIM {
                eprintln!(
                    "refusing to sweep N > {MAX_VERIFY_DIM}: exact ranks at that size would \
                     run for hours; lower --max-N"
                );
                return Ok(ExitCode::from(3));
            }
            let params = SweepParams {
                max_dim,
                max_s,
                max_l,
                seed,
                oracle: !no_oracle,
                coframe_checks: if no_oracle { 0 } else { coframe_checks },
            };
            let report = run_sweep(&params)?;
            match output.format {
                Format::Ascii => emit(&output, render_report(&report))?,
                Format::Json => emit_json(&output, &serde_json::to_value(&report)?)?,
            }
            Ok(if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Coeffs { q, s, output } => {
            if s == 0 {
                return Err(wedgemap::Error::domain("wedge power s must be at least 1").into());
            }
            let table = coeffs(q, s);
            match output.format {
                Format::Ascii => {
                    let line = table
                        .values()
                        .iter()
                        .map(format_rational)
                        .collect::<Vec<_>>()
                        .join(" ");
                    emit(&output, format!("{line}\n"))?;
                }
                Format::Json => {
                    let values: Vec<String> = table.values().iter().map(format_rational).collect();
                    emit_json(&output, &json!({ "q": q, "s": s, "values": values }))?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::InverseCheck { m, p, s, output } => cmd_inverse_check(m, p, s, &output),
        Command::Apply {
            element,
            s,
            coframe,
            output,
        } => cmd_apply(&element, s, coframe.as_deref(), &output),
    }
}

fn classification_json(spec: &MapSpec) -> serde_json::Value {
    let cls = classify(spec);
    json!({
        "injective": cls.injective,
        "surjective": cls.surjective,
        "label": cls.label(),
    })
}

fn cmd_classify(spec: &MapSpec, output: &OutputArgs) -> anyhow::Result<ExitCode> {
    let cls = classify(spec);
    let d = dual(spec);
    let dual_cls = classify(&d);
    let entry = manifest::lookup(spec);
    match output.format {
        Format::Ascii => {
            let mut text = String::new();
            text.push_str(&format!("{spec}: {}\n", cls.label()));
            text.push_str(&format!(
                "  domain   {} (dimension {})\n",
                spec.domain(),
                spec.domain().dimension()
            ));
            text.push_str(&format!(
                "  codomain {} (dimension {})\n",
                spec.codomain(),
                spec.codomain().dimension()
            ));
            text.push_str(&format!(
                "  injective: {}   surjective: {}\n",
                yes_no(cls.injective),
                yes_no(cls.surjective)
            ));
            text.push_str(&format!(
                "  dual map {}: {} (duality swaps the two sides)\n",
                d,
                dual_cls.label()
            ));
            if let Some(entry) = entry {
                text.push_str(&format!("  flag [{}]: {}\n", entry.flag, entry.note));
            }
            emit(output, text)?;
        }
        Format::Json => {
            emit_json(
                output,
                &json!({
                    "spec": spec,
                    "classification": classification_json(spec),
                    "domain": { "space": spec.domain(), "dimension": spec.domain().dimension() },
                    "codomain": { "space": spec.codomain(), "dimension": spec.codomain().dimension() },
                    "dual": { "spec": d, "classification": classification_json(&d) },
                    "flag": entry.map(|e| e.flag),
                    "note": entry.map(|e| e.note),
                }),
            )?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_dims(spec: &MapSpec, output: &OutputArgs) -> anyhow::Result<ExitCode> {
    let dom = spec.domain().dimension();
    let cod = spec.codomain().dimension();
    let dims_verdict = classify_by_dims(spec).ok();
    match output.format {
        Format::Ascii => {
            let mut text = String::new();
            text.push_str(&format!(
                "{spec}: domain dimension {dom}, codomain dimension {cod}\n"
            ));
            match dims_verdict {
                Some(v) => text.push_str(&format!(
                    "  dimension comparison (valid at l = 0): {}\n",
                    v.label()
                )),
                None => text
                    .push_str("  dimension comparison not conclusive at l > 0; use `classify`\n"),
            }
            emit(output, text)?;
        }
        Format::Json => {
            emit_json(
                output,
                &json!({
                    "spec": spec,
                    "dim_domain": dom,
                    "dim_codomain": cod,
                    "dims_verdict": dims_verdict.map(|v| v.label()),
                }),
            )?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_witness(spec: &MapSpec, no_check: bool, output: &OutputArgs) -> anyhow::Result<ExitCode> {
    let cls = classify(spec);
    let kernel = if cls.injective {
        None
    } else {
        Some(kernel_witness(spec)?)
    };
    let cokernel = if cls.surjective {
        None
    } else {
        Some(cokernel_witness(spec)?)
    };

    // Verification. The kernel witness is pushed through the map directly;
    // the cokernel witness unit vector is handed to the exact solver, which
    // must report infeasibility. The solve needs the full matrix, so it is
    // skipped (with a notice) when the matrix would be huge.
    let mut kernel_checked = None;
    let mut cokernel_checked = None;
    if !no_check {
        let cf = Coframe::identity(spec.ambient_dim());
        if let Some(el) = &kernel {
            kernel_checked = Some(apply_map(spec, el, &cf)?.is_zero());
        }
        if let Some(key) = &cokernel {
            let entries = spec.domain().dimension() * spec.codomain().dimension();
            if entries <= 250_000 {
                let m = build_matrix(spec, &cf)?;
                let rhs: Vec<_> = m
                    .row_keys()
                    .iter()
                    .map(|r| wedgemap::rational::int(i64::from(r == key)))
                    .collect();
                let res = oracle::solve(&m, &rhs)?;
                cokernel_checked = Some(res.status == SolveStatus::Infeasible);
            }
        }
    }
    if kernel_checked == Some(false) || cokernel_checked == Some(false) {
        // Cannot happen; belt and braces for the exit-code contract.
        anyhow::bail!("witness verification failed for {spec}");
    }

    match output.format {
        Format::Ascii => {
            let mut text = format!("{spec}: {}\n", cls.label());
            match &kernel {
                None => text.push_str("  kernel: trivial (map is injective); no witness\n"),
                Some(el) => {
                    let (key, coeff) = el.terms().next().expect("witness is a single term");
                    text.push_str(&format!(
                        "  kernel witness: {} {} in {}{}\n",
                        format_rational(coeff),
                        key,
                        spec.domain(),
                        check_suffix(kernel_checked, "maps to zero"),
                    ));
                }
            }
            match &cokernel {
                None => text.push_str("  cokernel: trivial (map is surjective); no witness\n"),
                Some(key) => text.push_str(&format!(
                    "  cokernel witness: unit vector on {} in {}{}\n",
                    key,
                    spec.codomain(),
                    check_suffix(cokernel_checked, "outside the image"),
                )),
            }
            emit(output, text)?;
        }
        Format::Json => {
            emit_json(
                output,
                &json!({
                    "spec": spec,
                    "classification": classification_json(spec),
                    "kernel_witness": kernel,
                    "kernel_checked": kernel_checked,
                    "cokernel_witness": cokernel,
                    "cokernel_checked": cokernel_checked,
                }),
            )?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn check_suffix(checked: Option<bool>, what: &str) -> String {
    match checked {
        Some(true) => format!(" (verified: {what})"),
        Some(false) => " (VERIFICATION FAILED)".to_string(),
        None => String::new(),
    }
}

/// First entry where a square product deviates from the identity, as
/// `(row, col, value)`.
fn first_identity_defect(
    product: &wedgemap::wedge::RationalMatrix<wedgemap::indexkit::MultiIndex>,
) -> Option<(usize, usize, String)> {
    for r in 0..product.nrows() {
        for c in 0..product.ncols() {
            let expected = wedgemap::rational::int(i64::from(r == c));
            let got = product.at(r, c);
            if got != expected {
                return Some((r, c, format_rational(&got)));
            }
        }
    }
    None
}

fn cmd_inverse_check(m: u32, p: u32, s: u32, output: &OutputArgs) -> anyhow::Result<ExitCode> {
    let params = SystemParams::new(m, p, s)?;
    let a = inj_system(&params);
    let b = left_inverse(&params);
    let left_product = b.multiply(&a)?;
    let left_defect = first_identity_defect(&left_product);
    let left_ok = left_defect.is_none();
    let a2 = surj_system(&params);
    let b2 = right_inverse(&params);
    let right_product = a2.multiply(&b2)?;
    let right_defect = first_identity_defect(&right_product);
    let right_ok = right_defect.is_none();
    let ok = left_ok && right_ok;

    match output.format {
        Format::Ascii => {
            let mut text = format!(
                "subset systems at m={m} p={p} s={s}: ground set size {}, overlap defect q={}\n",
                params.ground().len(),
                params.q()
            );
            text.push_str(&format!(
                "  left inverse:  B ({}x{}) against A ({}x{}): B*A = I {}\n",
                b.nrows(),
                b.ncols(),
                a.nrows(),
                a.ncols(),
                defect_text(left_ok, &left_defect)
            ));
            text.push_str(&format!(
                "  right inverse: B' ({}x{}) against A' ({}x{}): A'*B' = I {}\n",
                b2.nrows(),
                b2.ncols(),
                a2.nrows(),
                a2.ncols(),
                defect_text(right_ok, &right_defect)
            ));
            emit(output, text)?;
        }
        Format::Json => {
            let first_defect = left_defect
                .as_ref()
                .or(right_defect.as_ref())
                .map(|(r, c, v)| json!({"row": r, "col": c, "value": v}));
            emit_json(
                output,
                &json!({
                    "m": m, "p": p, "s": s,
                    "ground_size": params.ground().len(),
                    "q": params.q(),
                    "left_identity": left_ok,
                    "right_identity": right_ok,
                    "first_defect": first_defect,
                    "shape_A": [a.nrows(), a.ncols()],
                    "shape_B": [b.nrows(), b.ncols()],
                }),
            )?;
        }
    }
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn defect_text(ok: bool, defect: &Option<(usize, usize, String)>) -> String {
    match (ok, defect) {
        (true, _) => "confirmed".to_string(),
        (false, Some((r, c, v))) => {
            format!("FAILED (first offending entry: row {r}, col {c} = {v})")
        }
        (false, None) => "FAILED".to_string(),
    }
}

fn cmd_apply(
    element_path: &std::path::Path,
    s: u32,
    coframe_path: Option<&std::path::Path>,
    output: &OutputArgs,
) -> anyhow::Result<ExitCode> {
    let text = fs::read_to_string(element_path)
        .with_context(|| format!("reading element from {}", element_path.display()))?;
    let element: TensorElement = serde_json::from_str(&text)
        .with_context(|| format!("parsing element JSON in {}", element_path.display()))?;
    let sig = element.sig();
    let spec = MapSpec::new(
        sig.ambient_dim(),
        sig.codim(),
        s,
        sig.form_degree(),
        sig.z_degree(),
    )?;
    let coframe = match coframe_path {
        None => Coframe::identity(sig.ambient_dim()),
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading coframe from {}", path.display()))?;
            let cf: Coframe = serde_json::from_str(&text)
                .with_context(|| format!("parsing coframe JSON in {}", path.display()))?;
            if cf.size() != sig.ambient_dim() {
                return Err(wedgemap::Error::domain(format!(
                    "coframe size {} does not match ambient dimension {}",
                    cf.size(),
                    sig.ambient_dim()
                ))
                .into());
            }
            cf
        }
    };
    let image = apply_map(&spec, &element, &coframe)?;
    match output.format {
        Format::Ascii => {
            let mut text = format!("{spec} applied to {} term(s):\n", element.num_terms());
            if image.is_zero() {
                text.push_str("  0\n");
            } else {
                for (key, coeff) in image.terms() {
                    text.push_str(&format!("  {} {}\n", format_rational(coeff), key));
                }
            }
            emit(output, text)?;
        }
        Format::Json => emit_json(output, &serde_json::to_value(&image)?)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
