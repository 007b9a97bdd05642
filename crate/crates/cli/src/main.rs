//! `kmalg`: command-line front end for exact affine Kac-Moody computations.
//!
//! Every command prints one JSON document (to stdout or `--out`). Exit status
//! is 0 when all verdicts pass, 1 when one fails, 2 for usage errors, and 3, 4
//! and 5 for parse, schema and parameter errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use kmalg::cartan::{
    builtin_families, classify, identify, realization_dims, FamilyEntry, GeneralizedCartanMatrix,
};
use kmalg::involution::fixed_and_eigenspaces;
use kmalg::io::{
    element_from_json, element_json, involution_from_json, named_algebra, named_km,
    named_real_form, osaka_report_json, parse_json, record_from_json, render_element, InputError,
    SCHEMA,
};
use kmalg::kmext::jacobi_suite;
use kmalg::loops::real_loop_basis;
use kmalg::osaka::{
    build_catalog_a1, duality_pairing, involution_counts, osaka_verify, verify_all,
};
use kmalg::scalar::rat_to_string;

const DEFAULT_DEGREE: i64 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "kmalg",
    version,
    about = "Exact computations in geometric affine Kac-Moody algebras"
)]
struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug, Clone, Copy)]
struct DegreeArg {
    /// Truncation degree; falls back to KMALG_DEFAULT_DEGREE, then 3.
    #[arg(long, env = "KMALG_DEFAULT_DEGREE")]
    degree: Option<i64>,
}

impl DegreeArg {
    fn get(self) -> Result<i64, CliError> {
        let d = self.degree.unwrap_or(DEFAULT_DEGREE);
        if !(0..=64).contains(&d) {
            return Err(param(format!("degree must lie in 0..=64, got {d}")));
        }
        Ok(d)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a generalized Cartan matrix.
    Classify {
        #[arg(long = "in")]
        input: PathBuf,
        /// Extra named matrices to identify against.
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// Bracket two extended elements.
    Bracket {
        #[arg(long)]
        lhs: PathBuf,
        #[arg(long)]
        rhs: PathBuf,
    },
    /// Killing Gram matrix of a truncated real loop algebra.
    KillingGram {
        #[arg(long)]
        algebra: String,
        #[command(flatten)]
        degree: DegreeArg,
        /// Fail unless the verdict equals this one.
        #[arg(long)]
        expect: Option<String>,
    },
    /// Randomized exact Jacobi identity check.
    JacobiCheck {
        #[arg(long)]
        trials: u64,
        #[command(flatten)]
        degree: DegreeArg,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        twist: u32,
        #[arg(long, default_value = "su2")]
        algebra: String,
    },
    /// Cartan decomposition of a named real form under an involution.
    Decompose {
        #[arg(long)]
        form: String,
        #[arg(long)]
        involution: PathBuf,
        #[command(flatten)]
        degree: DegreeArg,
    },
    /// OSAKA catalog and verification.
    Osaka {
        #[command(subcommand)]
        command: OsakaCommand,
    },
    /// Tabulated numbers of second-kind involutions.
    Counts {
        #[arg(long)]
        family: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum OsakaCommand {
    /// Verify all eight a₁⁽¹⁾ records and their duality table.
    Catalog {
        #[command(flatten)]
        degree: DegreeArg,
    },
    /// Verify a single record.
    Verify {
        #[arg(long)]
        record: PathBuf,
        #[command(flatten)]
        degree: DegreeArg,
    },
}

#[derive(Debug)]
enum CliError {
    Input(InputError),
    Output(String),
}

impl From<InputError> for CliError {
    fn from(e: InputError) -> Self {
        CliError::Input(e)
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(InputError::Parse { .. }) => 3,
            CliError::Input(InputError::Schema(_)) => 4,
            CliError::Input(InputError::Param(_)) => 5,
            CliError::Output(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(e) => write!(f, "{e}"),
            CliError::Output(e) => write!(f, "{e}"),
        }
    }
}

fn param(msg: impl Into<String>) -> CliError {
    CliError::Input(InputError::Param(msg.into()))
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError::Parse {
        location: path.display().to_string(),
        message: e.to_string(),
    })?;
    Ok(parse_json(&text, &path.display().to_string())?)
}

fn schema(msg: impl Into<String>) -> CliError {
    CliError::Input(InputError::Schema(msg.into()))
}

/// A bare integer matrix or `{"matrix": [[...]]}`.
fn cartan_from_json(v: &Value) -> Result<GeneralizedCartanMatrix, CliError> {
    let m = if v.is_array() {
        v
    } else {
        v.get("matrix")
            .ok_or_else(|| schema("missing \"matrix\""))?
    };
    let rows: Vec<Vec<i64>> =
        serde_json::from_value(m.clone()).map_err(|e| schema(e.to_string()))?;
    GeneralizedCartanMatrix::validate(rows).map_err(|e| schema(e.to_string()))
}

/// A list of families or `{"families": [...]}`.
fn catalog_from_json(v: &Value) -> Result<Vec<FamilyEntry>, CliError> {
    let list = if v.is_array() {
        v
    } else {
        v.get("families")
            .ok_or_else(|| schema("missing \"families\""))?
    };
    serde_json::from_value(list.clone()).map_err(|e| schema(e.to_string()))
}

fn rats(v: &[kmalg::scalar::Rational]) -> Vec<String> {
    v.iter().map(rat_to_string).collect()
}

/// Runs one command, returning the report body and whether it passed.
fn run(command: &Command) -> Result<(Value, bool), CliError> {
    match command {
        Command::Classify { input, catalog } => {
            let a = cartan_from_json(&read_json(input)?)?;
            let mut families = builtin_families();
            if let Some(path) = catalog {
                let mut extra = catalog_from_json(&read_json(path)?)?;
                extra.append(&mut families);
                families = extra;
            }
            let class = classify(&a);
            let family = identify(&a, &families);
            let blocks: Vec<Value> = class
                .blocks
                .iter()
                .map(|b| json!({"indices": b.indices, "kind": format!("{:?}", b.kind), "witness": b.witness.as_deref().map(rats)}))
                .collect();
            let body = json!({
                "command": "classify",
                "matrix": a.entries(),
                "kind": format!("{:?}", class.kind),
                "synthetic": class.synthetic,
                "witness": class.witness.as_deref().map(rats),
                "components": class.components,
                "blocks": blocks,
                "family": family.as_ref().map(|f| f.name.clone()),
                "family_dim": family.as_ref().and_then(|f| f.dim),
                "dims": realization_dims(&a),
            });
            Ok((body, true))
        }
        Command::Bracket { lhs, rhs } => {
            let (na, ka, x) = element_from_json(&read_json(lhs)?)?;
            let (nb, kb, y) = element_from_json(&read_json(rhs)?)?;
            if na != nb || ka.twist_order() != kb.twist_order() {
                return Err(param(format!(
                    "operands live in different algebras ({na}, twist {}) and ({nb}, twist {})",
                    ka.twist_order(),
                    kb.twist_order()
                )));
            }
            let z = ka.hat_bracket(&x, &y).map_err(|e| param(e.to_string()))?;
            let body = json!({
                "command": "bracket",
                "lhs": render_element(ka.finite(), &x),
                "rhs": render_element(ka.finite(), &y),
                "text": render_element(ka.finite(), &z),
                "result": element_json(&na, &ka, &z),
            });
            Ok((body, true))
        }
        Command::KillingGram {
            algebra,
            degree,
            expect,
        } => {
            let n = degree.get()?;
            let g = named_algebra(algebra)?;
            let (la, basis) = real_loop_basis(&g, n).map_err(|_| {
                param(format!(
                    "killing-gram needs a real algebra; {algebra} is complex"
                ))
            })?;
            let report = la.killing_gram(&basis).map_err(|e| param(e.to_string()))?;
            let verdict = report.verdict.as_str();
            let passed = expect.as_deref().map_or(true, |e| e == verdict);
            let (p, m, z) = report.signature;
            let body = json!({
                "command": "killing-gram",
                "algebra": algebra,
                "degree": n,
                "dim": basis.len(),
                "signature": {"positive": p, "negative": m, "zero": z},
                "verdict": verdict,
                "expected": expect,
            });
            Ok((body, passed))
        }
        Command::JacobiCheck {
            trials,
            degree,
            seed,
            twist,
            algebra,
        } => {
            let n = degree.get()?;
            let km = named_km(algebra, *twist)?;
            if *trials == 0 {
                eprintln!("warning: --trials 0 checks nothing; passing vacuously");
            }
            let report = jacobi_suite(&km, *trials, n, *seed);
            let body = json!({
                "command": "jacobi-check",
                "algebra": algebra,
                "twist": twist,
                "degree": n,
                "seed": seed,
                "trials": report.trials,
                "failures": report.failures,
                "passed": report.passed(),
            });
            Ok((body, report.passed()))
        }
        Command::Decompose {
            form,
            involution,
            degree,
        } => {
            let n = degree.get()?;
            let (km, rf) = named_real_form(form)?;
            let inv = involution_from_json(&km, &read_json(involution)?)?;
            inv.validate(&km)
                .map_err(|e| param(format!("involution: {e}")))?;
            let dec = match fixed_and_eigenspaces(&km, &inv.to_map(), &rf, n) {
                Ok(d) => d,
                Err(e) => {
                    let body = json!({"command": "decompose", "form": form, "degree": n, "error": e.to_string(), "passed": false});
                    return Ok((body, false));
                }
            };
            let relations = dec.cartan_relations();
            let verdict =
                |r: Result<kmalg::loops::GramReport, _>| r.ok().map(|g| g.verdict.as_str());
            let t = &dec.truncation;
            let render = |s: &kmalg::involution::TruncSubspace| -> Vec<String> {
                s.elements(t)
                    .iter()
                    .map(|x| render_element(km.finite(), x))
                    .collect()
            };
            let body = json!({
                "command": "decompose",
                "form": form,
                "involution": inv.label,
                "degree": n,
                "dim_real": dec.real.dim(),
                "dim_K": dec.k.dim(),
                "dim_P": dec.p.dim(),
                "K_cd": dec.k.cd_dim(),
                "P_cd": dec.p.cd_dim(),
                "K_gram": verdict(dec.k_loop_gram()),
                "P_gram": verdict(dec.p_loop_gram()),
                "cartan_relations": relations,
                "K_basis": render(&dec.k),
                "P_basis": render(&dec.p),
                "passed": relations,
            });
            Ok((body, relations))
        }
        Command::Osaka {
            command: OsakaCommand::Catalog { degree },
        } => {
            let n = degree.get()?;
            let catalog = build_catalog_a1();
            let reports = verify_all(&catalog, n);
            let duality = duality_pairing(&catalog, n);
            let dual_ok = duality
                .iter()
                .all(|d| d.matches_declared && d.type_flips && d.double_dual_identity);
            let passed = catalog.len() == 8 && reports.iter().all(|r| r.passed()) && dual_ok;
            let body = json!({
                "command": "osaka-catalog",
                "degree": n,
                "count": catalog.len(),
                "records": reports.iter().map(osaka_report_json).collect::<Vec<_>>(),
                "duality": duality.iter().map(|d| json!({
                    "name": d.name,
                    "partner": d.partner,
                    "matches_declared": d.matches_declared,
                    "type_flips": d.type_flips,
                    "double_dual_identity": d.double_dual_identity,
                })).collect::<Vec<_>>(),
                "passed": passed,
            });
            Ok((body, passed))
        }
        Command::Osaka {
            command: OsakaCommand::Verify { record, degree },
        } => {
            let n = degree.get()?;
            let rec = record_from_json(&read_json(record)?)?;
            let report = osaka_verify(&rec, n);
            let mut body = osaka_report_json(&report);
            body["command"] = json!("osaka-verify");
            Ok((body, report.passed()))
        }
        Command::Counts { family } => {
            let table = involution_counts();
            match family {
                None => Ok((json!({"command": "counts", "counts": table.counts}), true)),
                Some(f) => match table.lookup(f) {
                    Ok(c) => Ok((json!({"command": "counts", "family": f, "count": c}), true)),
                    Err(e) => Ok((
                        json!({"command": "counts", "family": f, "count": null, "status": "NotTabulated", "message": e.to_string()}),
                        false,
                    )),
                },
            }
        }
    }
}

fn emit(out: Option<&Path>, body: &Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(body).expect("serializable") + "\n";
    match out {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| CliError::Output(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(&cli.command).and_then(|(mut body, passed)| {
        body["schema"] = json!(SCHEMA);
        body["timing_ms"] = json!(start.elapsed().as_millis() as u64);
        emit(cli.out.as_deref(), &body)?;
        Ok(passed)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
