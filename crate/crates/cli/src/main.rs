//! Command-line front end: growth vectors, symbol algebras, recognition,
//! flat models, Legendrian checks, and the full correspondence pipeline,
//! with deterministic JSON reports.
//!
//! Exit codes: 0 all checks pass, 1 at least one check failed, 2 input error.

mod report;

use clap::{Args, Parser, Subcommand};
use report::{scalar_strings, usize_list, ConfigEcho, Report};
use serde_json::{json, Value};
use sgv_core::algebra::{AlgebraFile, GradedNilpotentLieAlgebra};
use sgv_core::check::{Check, CheckList};
use sgv_core::cubic::CubicForm;
use sgv_core::distribution::{
    check_regular, parse_distribution_text, small_growth_vector, symbol_algebra,
    DistributionSpec, RegularityVerdict,
};
use sgv_core::flat::{left_invariant_fields, to_distribution_text, verify_correspondence, LiftMode};
use sgv_core::gplus::{make_gplus, recognize_gplus, RecognizeOutcome};
use sgv_core::legendrian::{check_nondegenerate_forms, legendrian_of_cubic, ParamLegendrian};
use sgv_core::sample::Sampler;
use sgv_core::Scalar;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "sgv",
    about = "Exact bracket invariants of distributions and the graded algebras of cubic forms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Root seed; all sampling derives from it deterministically.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of sampled points for probabilistic checks.
    #[arg(long, default_value_t = 10)]
    samples: usize,
    /// Depth cap for derived-flag computations.
    #[arg(long, default_value_t = 6)]
    max_steps: usize,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format (only `json`).
    #[arg(long, default_value = "json")]
    format: String,
}

#[derive(Args, Clone)]
struct CubicInput {
    /// Cubic form: inline `F111=1,F122=-1/3` entries or a path to a cubic
    /// text file.
    #[arg(long)]
    cubic: String,
    /// Dimension m (required for inline cubic entries).
    #[arg(long)]
    m: Option<usize>,
}

#[derive(Args, Clone)]
struct CubicInputOpt {
    #[arg(long)]
    cubic: Option<String>,
    #[arg(long)]
    m: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Small growth vector of a distribution file, with regularity sampling.
    GrowthVector {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Symbol algebra at the base point: graded dimensions and exact
    /// structure constants.
    Symbol {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Recognize a graded algebra (JSON structure constants) as the algebra
    /// of a cubic form.
    Recognize {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Build the flat model of a cubic's graded algebra (or of an algebra
    /// file) and write the distribution in text format.
    FlatModel {
        #[command(flatten)]
        cubic: CubicInputOpt,
        /// Graded algebra JSON file to realize instead of a cubic.
        #[arg(long)]
        algebra: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
        /// Where to write the distribution text file.
        #[arg(long)]
        distribution_out: Option<PathBuf>,
    },
    /// Run the nondegenerate-fundamental-forms verdicts on a Legendrian cone.
    LegendrianCheck {
        /// Legendrian text file; omit to build the cone of --cubic.
        file: Option<PathBuf>,
        #[command(flatten)]
        cubic: CubicInputOpt,
        #[command(flatten)]
        common: Common,
    },
    /// Full correspondence pipeline for a cubic form, contact lift included.
    VerifyCorrespondence {
        #[command(flatten)]
        cubic: CubicInput,
        #[command(flatten)]
        common: Common,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::GrowthVector { file, common } => {
            check_format(&common)?;
            let d = load_distribution(&file)?;
            let mut rep = Report::new("growth-vector", echo(&common, vec![display_path(&file)]));
            let gv = small_growth_vector(&d, common.max_steps).map_err(|e| e.to_string())?;
            rep.set_result("growth_vector", usize_list(&gv));
            rep.extend_checks(regularity_checks(&d, &common)?);
            emit(&rep, &common)
        }
        Command::Symbol { file, common } => {
            check_format(&common)?;
            let d = load_distribution(&file)?;
            let mut rep = Report::new("symbol", echo(&common, vec![display_path(&file)]));
            let gv = small_growth_vector(&d, common.max_steps).map_err(|e| e.to_string())?;
            rep.set_result("growth_vector", usize_list(&gv));
            let mut checks = regularity_checks(&d, &common)?;
            match symbol_algebra(&d, common.max_steps) {
                Ok(sym) => {
                    rep.set_result("graded_dims", usize_list(sym.graded_dims()));
                    rep.set_result("structure_constants", constants_json(&sym));
                    checks.push(Check::pass("symbol-lie-axioms"));
                }
                Err(e) => checks.push(Check::fail("symbol-lie-axioms", e.to_string())),
            }
            rep.extend_checks(checks);
            emit(&rep, &common)
        }
        Command::Recognize { file, common } => {
            check_format(&common)?;
            let text = read_file(&file)?;
            let parsed: AlgebraFile =
                serde_json::from_str(&text).map_err(|e| format!("{}: {e}", file.display()))?;
            let algebra =
                GradedNilpotentLieAlgebra::from_file(&parsed).map_err(|e| e.to_string())?;
            let mut rep = Report::new("recognize", echo(&common, vec![display_path(&file)]));
            rep.set_result("graded_dims", usize_list(algebra.graded_dims()));
            let mut checks = CheckList::new();
            match recognize_gplus(&algebra).map_err(|e| e.to_string())? {
                RecognizeOutcome::Recognized { cubic, basis } => {
                    rep.set_result("recognized", Value::Bool(true));
                    rep.set_result("m", Value::from(cubic.m()));
                    rep.set_result("cubic", Value::from(cubic.to_string()));
                    rep.set_result(
                        "basis_rows",
                        Value::Array(basis.iter().map(|r| scalar_strings(r)).collect()),
                    );
                    checks.push(Check::pass("recognized"));
                }
                RecognizeOutcome::Rejected(reason) => {
                    rep.set_result("recognized", Value::Bool(false));
                    rep.set_result("reason", Value::from(reason.code()));
                    checks.push(Check::fail("recognized", reason.code()));
                }
            }
            rep.extend_checks(checks);
            emit(&rep, &common)
        }
        Command::FlatModel {
            cubic,
            algebra,
            common,
            distribution_out,
        } => {
            check_format(&common)?;
            let (algebra, input_echo) = match (algebra, cubic.cubic) {
                (Some(path), _) => {
                    let text = read_file(&path)?;
                    let parsed: AlgebraFile = serde_json::from_str(&text)
                        .map_err(|e| format!("{}: {e}", path.display()))?;
                    (
                        GradedNilpotentLieAlgebra::from_file(&parsed).map_err(|e| e.to_string())?,
                        display_path(&path),
                    )
                }
                (None, Some(spec)) => {
                    let f = load_cubic(&spec, cubic.m)?;
                    let gp = make_gplus(&f).map_err(|e| e.to_string())?;
                    (gp.algebra().clone(), spec)
                }
                (None, None) => return Err("flat-model needs --cubic or --algebra".into()),
            };
            let mut rep = Report::new("flat-model", echo(&common, vec![input_echo]));
            let model = left_invariant_fields(&algebra).map_err(|e| e.to_string())?;
            let text = to_distribution_text(&model);
            rep.set_result("graded_dims", usize_list(algebra.graded_dims()));
            rep.set_result("chart_dim", Value::from(algebra.dim()));
            rep.set_result("distribution_text", Value::from(text.clone()));
            let mut checks = CheckList::new();
            checks.push(Check::pass("left-invariant-homomorphism"));
            rep.extend_checks(checks);
            if let Some(path) = distribution_out {
                std::fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display()))?;
            }
            emit(&rep, &common)
        }
        Command::LegendrianCheck {
            file,
            cubic,
            common,
        } => {
            check_format(&common)?;
            let (s, input_echo) = match (&file, &cubic.cubic) {
                (Some(path), _) => {
                    let text = read_file(path)?;
                    (
                        ParamLegendrian::parse_text(&text).map_err(|e| e.to_string())?,
                        display_path(path),
                    )
                }
                (None, Some(spec)) => {
                    let f = load_cubic(spec, cubic.m)?;
                    (legendrian_of_cubic(&f).map_err(|e| e.to_string())?, spec.clone())
                }
                (None, None) => return Err("legendrian-check needs a file or --cubic".into()),
            };
            let mut rep = Report::new("legendrian-check", echo(&common, vec![input_echo]));
            rep.set_result("m", Value::from(s.m()));
            // Verdicts at the base parameter and at sampled points; each
            // condition passes only if it passes at every evaluated point.
            let mut points = vec![s.base_param().to_vec()];
            let mut sampler = Sampler::new(common.seed, "legendrian-check points");
            let mut tries = 0;
            while points.len() < common.samples + 1 && tries < 100 * (common.samples + 1) {
                tries += 1;
                let p = sampler.point(s.m());
                if sgv_core::legendrian::fundamental_forms(&s, &p).is_ok() {
                    points.push(p);
                }
            }
            let mut verdicts: Option<CheckList> = None;
            let mut iii_cubic = None;
            for p in &points {
                let v = check_nondegenerate_forms(&s, p, common.seed).map_err(|e| e.to_string())?;
                iii_cubic.get_or_insert_with(|| v.iii_cubic.clone());
                verdicts = Some(match verdicts.take() {
                    None => v.checks,
                    Some(mut acc) => {
                        for (a, b) in acc.checks.iter_mut().zip(v.checks.checks) {
                            if b.verdict == sgv_core::check::Verdict::Fail
                                && a.verdict != sgv_core::check::Verdict::Fail
                            {
                                *a = b;
                            }
                        }
                        acc
                    }
                });
            }
            if let Some(c) = iii_cubic {
                rep.set_result("iii_cubic", Value::from(c.to_string()));
            }
            rep.set_result("points_checked", Value::from(points.len()));
            rep.extend_checks(verdicts.unwrap_or_default());
            emit(&rep, &common)
        }
        Command::VerifyCorrespondence { cubic, common } => {
            check_format(&common)?;
            let f = load_cubic(&cubic.cubic, cubic.m)?;
            let mut rep = Report::new(
                "verify-correspondence",
                echo(&common, vec![cubic.cubic.clone()]),
            );
            let result = verify_correspondence(
                &f,
                common.seed,
                common.samples,
                common.max_steps,
                LiftMode::Full,
            )
            .map_err(|e| e.to_string())?;
            rep.set_result("m", Value::from(result.m));
            rep.set_result("cubic", Value::from(f.to_string()));
            if let Some(g) = &result.growth {
                rep.set_result("growth_vector", usize_list(g));
            }
            rep.extend_checks(result.checks);
            emit(&rep, &common)
        }
    }
}

fn echo(common: &Common, inputs: Vec<String>) -> ConfigEcho {
    ConfigEcho {
        seed: common.seed,
        samples: common.samples,
        max_steps: common.max_steps,
        inputs,
    }
}

fn check_format(common: &Common) -> Result<(), String> {
    if common.format != "json" {
        return Err(format!("unsupported format `{}` (only json)", common.format));
    }
    Ok(())
}

fn display_path(p: &PathBuf) -> String {
    p.display().to_string()
}

fn read_file(path: &PathBuf) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_distribution(path: &PathBuf) -> Result<DistributionSpec, String> {
    let text = read_file(path)?;
    parse_distribution_text(&text).map_err(|e| format!("{}: {e}", path.display()))
}

/// Inline entries `F111=1,F122=-1/3` (1-based digit indices) or a file path.
fn load_cubic(spec: &str, m: Option<usize>) -> Result<CubicForm, String> {
    if spec.contains('=') {
        let m = m.ok_or("--m is required with inline cubic entries")?;
        let mut entries = Vec::new();
        for part in spec.split(',') {
            let part = part.trim();
            let Some(rest) = part.strip_prefix('F') else {
                return Err(format!("bad cubic entry `{part}` (expected Fabc=value)"));
            };
            let Some((idx, val)) = rest.split_once('=') else {
                return Err(format!("bad cubic entry `{part}`"));
            };
            let digits: Vec<usize> = idx
                .chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| format!("bad index digits in `{part}`"))
                })
                .collect::<Result<_, _>>()?;
            if digits.len() != 3 || digits.iter().any(|&d| d == 0) {
                return Err(format!("cubic entry `{part}` needs three 1-based digits"));
            }
            let coeff = Scalar::parse(val).map_err(|e| e.to_string())?;
            entries.push(([digits[0] - 1, digits[1] - 1, digits[2] - 1], coeff));
        }
        CubicForm::new(m, entries).map_err(|e| e.to_string())
    } else {
        let text = std::fs::read_to_string(spec).map_err(|e| format!("{spec}: {e}"))?;
        let f = CubicForm::parse_text(&text).map_err(|e| format!("{spec}: {e}"))?;
        if let Some(m) = m {
            if m != f.m() {
                return Err(format!("--m {m} contradicts file dimension {}", f.m()));
            }
        }
        Ok(f)
    }
}

fn regularity_checks(d: &DistributionSpec, common: &Common) -> Result<CheckList, String> {
    let mut checks = CheckList::new();
    match check_regular(d, common.samples, common.seed, common.max_steps) {
        Ok(RegularityVerdict::Regular { samples }) => {
            checks.push(Check::pass(format!("regular-sampled-{samples}")));
        }
        Ok(RegularityVerdict::RankJump {
            witness,
            found,
            expected,
        }) => {
            let w: Vec<String> = witness.iter().map(|s| s.to_string()).collect();
            checks.push(Check::fail(
                "regular-sampled",
                format!(
                    "growth {found:?} (expected {expected:?}) at ({})",
                    w.join(", ")
                ),
            ));
        }
        Err(e) => return Err(e.to_string()),
    }
    Ok(checks)
}

fn constants_json(g: &GradedNilpotentLieAlgebra) -> Value {
    let mut out = Vec::new();
    for i in 0..g.dim() {
        for j in i + 1..g.dim() {
            let v = g.bracket_basis(i, j);
            if v.iter().any(|s| !s.is_zero()) {
                out.push(json!([
                    i,
                    j,
                    v.iter().map(|s| s.to_string()).collect::<Vec<_>>()
                ]));
            }
        }
    }
    Value::Array(out)
}

fn emit(rep: &Report, common: &Common) -> Result<bool, String> {
    let json = rep.to_json();
    match &common.out {
        Some(path) => {
            std::fs::write(path, &json).map_err(|e| format!("{}: {e}", path.display()))?
        }
        None => print!("{json}"),
    }
    Ok(rep.all_passed())
}
