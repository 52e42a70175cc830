//! The `theta-forge` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use theta_forge_core::jacobi_like::{cusp_combination, psi, verify_root_identity};
use theta_forge_core::lattice::InsertionVector;
use theta_forge_core::modforms::{eisenstein_e2, eisenstein_e2k, theta_expand, ThetaSpec};
use theta_forge_core::qseries::FracQSeries;
use theta_forge_core::verify::{campaign, Campaign, Law};

use crate::catalog::{self, Lattice, Source, CATALOG_ENV};
use crate::json::{report_to_json, series_to_json};
use crate::vspec::{parse_ints, parse_vspec};
use crate::ForgeError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "theta-forge", version, about = "Theta series of even quadratic forms: expansion and verification")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// q-expansion of Σ ⟨v,m⟩ᵏ q^Q(m), optionally over a congruence class.
    ExpandTheta {
        /// Built-in name, catalog name or path to a lattice JSON file.
        #[arg(long)]
        lattice: String,
        /// Number of whole powers of q.
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        prec: u64,
        #[arg(long, default_value_t = 0)]
        k: u32,
        /// Insertion vector, e.g. "1,0 / s=1/2". Defaults to the first root over √2.
        #[arg(long, allow_hyphen_values = true)]
        v: Option<String>,
        /// Class representative h (comma-separated integers).
        #[arg(long, allow_hyphen_values = true)]
        class: Option<String>,
    },
    /// The E₂-corrected form Ψ(k), or with --cusp the combination
    /// Ψ(2k) − γ(k,2k)(−1/12)ᵏ·θ·E_{2k} whose constant term vanishes.
    ExpandPsi {
        #[arg(long)]
        lattice: String,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        prec: u64,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long, allow_hyphen_values = true)]
        v: Option<String>,
        #[arg(long)]
        cusp: bool,
    },
    /// Eisenstein series E_w for even w ≥ 2.
    ExpandEisenstein {
        #[arg(long)]
        weight: u32,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        prec: u64,
    },
    /// Exact check of Ψ(α/√2, 4) = (1/48)·E₄·θ for a root α.
    VerifyIdentity {
        #[arg(long)]
        lattice: String,
        /// Highest power of q checked.
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
        prec: u64,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
    },
    /// Seeded numeric campaign over the transformation laws.
    VerifyLaws {
        #[arg(long)]
        lattice: String,
        /// Comma-separated law ids; all laws when omitted.
        #[arg(long)]
        laws: Option<String>,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
        x_prec: u64,
        #[arg(long, allow_hyphen_values = true)]
        v: Option<String>,
    },
    /// Lists the built-in and catalog-directory lattices.
    Catalog,
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code: 0 success, 1 a failed check, 2 a usage or configuration error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return e.exit_code().clamp(0, 255) as u8;
        }
    };
    let dir = std::env::var_os(CATALOG_ENV).map(PathBuf::from);
    match execute(&cli, dir.as_deref(), out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// Runs a parsed command; `Ok(false)` means a check ran and failed.
pub fn execute(cli: &Cli, catalog_dir: Option<&Path>, out: &mut dyn Write) -> Result<bool, ForgeError> {
    let lattice = |name: &str| catalog::resolve(name, catalog_dir);
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::ExpandTheta { lattice: name, prec, k, v, class } => {
            let lat = lattice(name)?;
            // The vector only matters for k > 0, so a rootless form needs no --v then.
            let v = match (v, k) {
                (None, 0) => InsertionVector::default_unit(&lat.form),
                _ => insertion(&lat, v.as_deref())?,
            };
            let h = class.as_deref().map(|c| lat.form.class(&parse_ints(c)?).map_err(ForgeError::from)).transpose()?;
            let spec = ThetaSpec::new(lat.form, v, *k, h)?;
            write_series(out, json, &theta_expand(&spec, *prec)?)?;
            Ok(true)
        }
        Command::ExpandPsi { lattice: name, prec, k, v, cusp } => {
            let lat = lattice(name)?;
            let v = insertion(&lat, v.as_deref())?;
            let s = if *cusp { cusp_combination(&lat.form, &v, *k, *prec)? } else { psi(&lat.form, &v, *k, *prec)? };
            write_series(out, json, &s)?;
            Ok(true)
        }
        Command::ExpandEisenstein { weight, prec } => {
            let s = match weight {
                2 => eisenstein_e2(*prec)?,
                w if w % 2 == 0 && *w >= 4 => eisenstein_e2k(w / 2, *prec)?,
                _ => return Err(ForgeError::Usage(format!("weight must be even and at least 2, got {weight}"))),
            };
            write_series(out, json, &s)?;
            Ok(true)
        }
        Command::VerifyIdentity { lattice: name, prec, alpha } => {
            let lat = lattice(name)?;
            let alpha = alpha.as_deref().map(parse_ints).transpose()?;
            let rep = verify_root_identity(&lat.form, *prec, alpha.as_deref())?;
            if json {
                let v = json!({
                    "lattice": lat.name,
                    "alpha": rep.alpha,
                    "through": rep.through,
                    "residual": series_to_json(&rep.residual),
                    "pass": rep.pass,
                });
                writeln!(out, "{}", serde_json::to_string(&v).expect("serializable"))?;
            } else {
                writeln!(out, "root alpha: {:?}", rep.alpha)?;
                match rep.residual.terms().next() {
                    None => writeln!(out, "root identity residual: 0 through q^{}", rep.through)?,
                    Some((e, c)) => writeln!(
                        out,
                        "root identity residual: nonzero through q^{}, lowest term {c}·q^{e}",
                        rep.through
                    )?,
                }
            }
            Ok(rep.pass)
        }
        Command::VerifyLaws { lattice: name, laws, count, seed, tol, x_prec, v } => {
            if !(tol.is_finite() && *tol > 0.0) {
                return Err(ForgeError::Usage(format!("--tol must be positive, got {tol}")));
            }
            let lat = lattice(name)?;
            let v = insertion(&lat, v.as_deref())?;
            let laws = match laws {
                None => Law::ALL.to_vec(),
                Some(list) => list
                    .split(',')
                    .map(|id| id.trim().parse::<Law>().map_err(|_| ForgeError::Usage(format!("unknown law `{id}`"))))
                    .collect::<Result<_, _>>()?,
            };
            let run = Campaign { laws, count: *count, seed: *seed, tol: *tol, x_prec: *x_prec as usize };
            let reports = campaign(&lat.form, &v, &run)?;
            let failed = reports.iter().filter(|r| !r.pass).count();
            if json {
                let v = Value::Array(reports.iter().map(report_to_json).collect());
                writeln!(out, "{}", serde_json::to_string(&v).expect("serializable"))?;
            } else {
                for r in &reports {
                    let inputs: Vec<String> = r.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
                    let mark = if r.pass { "PASS" } else { "FAIL" };
                    writeln!(out, "{mark} {:<12} residual {:.3e} (tol {:e})  {}", r.law.id(), r.residual, r.tol, inputs.join(" "))?;
                }
                writeln!(out, "{} passed, {failed} failed", reports.len() - failed)?;
            }
            Ok(failed == 0)
        }
        Command::Catalog => {
            let all = catalog::list(catalog_dir)?;
            if json {
                let v: Vec<Value> = all
                    .iter()
                    .map(|l| {
                        json!({
                            "name": l.name,
                            "gram": l.form.gram_rows(),
                            "rank": l.form.rank(),
                            "det": l.form.det(),
                            "level": l.form.level(),
                            "source": source_label(&l.source),
                        })
                    })
                    .collect();
                writeln!(out, "{}", serde_json::to_string(&Value::Array(v)).expect("serializable"))?;
            } else {
                for l in &all {
                    writeln!(
                        out,
                        "{:<8} rank {:<2} det {:<4} level {:<4} {}",
                        l.name,
                        l.form.rank(),
                        l.form.det(),
                        l.form.level(),
                        source_label(&l.source)
                    )?;
                }
            }
            Ok(true)
        }
    }
}

fn source_label(s: &Source) -> String {
    match s {
        Source::BuiltIn => "built-in".into(),
        Source::File(p) => p.display().to_string(),
    }
}

/// The explicit vector, or `α/√2` for the first root. A rootless form has
/// no canonical choice, so it must be given explicitly.
fn insertion(lat: &Lattice, spec: Option<&str>) -> Result<InsertionVector, ForgeError> {
    let v = match spec {
        Some(s) => parse_vspec(s)?,
        None => {
            let alpha = lat.form.first_root().ok_or_else(|| {
                ForgeError::Usage(format!("{} has no root; pass an insertion vector with --v", lat.name))
            })?;
            InsertionVector::from_root(&alpha)?
        }
    };
    if v.dim() != lat.form.rank() {
        return Err(ForgeError::Usage(format!("--v has {} entries, the form has rank {}", v.dim(), lat.form.rank())));
    }
    Ok(v)
}

fn write_series(out: &mut dyn Write, json: bool, s: &FracQSeries) -> Result<(), ForgeError> {
    if json {
        writeln!(out, "{}", serde_json::to_string(&series_to_json(s)).expect("serializable"))?;
    } else if s.exp_denom() == 1 {
        let cs: Vec<String> = (0..s.prec()).map(|e| s.coeff_at(e).map(|c| c.to_string())).collect::<Result<_, _>>()?;
        writeln!(out, "coefficients: [{}]", cs.join(", "))?;
    } else {
        let m = s.exp_denom();
        writeln!(out, "exponents in units of 1/{m}, known below q^({}/{m})", s.prec())?;
        for (e, c) in s.terms() {
            writeln!(out, "q^({e}/{m}): {c}")?;
        }
    }
    Ok(())
}
