//! Batch command-line front end for the Leonard pair toolkit.
//!
//! Every command reads JSON files (or command-line scalars), performs one
//! operation, and writes one deterministic JSON report to stdout or to
//! `--output`. Exit code 0 means success, 1 means the input was parsed but
//! is mathematically invalid (the report says why), 2 means a usage or
//! parse error.

use clap::{Parser, Subcommand, ValueEnum};
use leonard_core::exactfield::{FieldSpec, FieldValue};
use leonard_core::io::{
    grid_to_strings, parse_field_name, poly_to_coeff_strings, values_to_strings, FieldDto,
    MatrixDto, ParameterDataDto, RecognitionResultDto, RelationReportDto, ValidationReportDto,
};
use leonard_core::params::{
    d4_transform, qracah_params, validate_parameter_array, D4Element, ParameterData, QRacahInput,
};
use leonard_core::polys::{
    build_poly_bundle, orthogonality_check, qracah_u_value, recurrence_data, QRacahEvalInput,
};
use leonard_core::relations::{
    compute_relation_scalars, verify_tridiagonal_relations, RelationScalars,
};
use leonard_core::system::{build_split_form, recognize_leonard_pair};
use serde_json::{json, Value};
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "leonard",
    version,
    about = "Construct, validate, recognize, and transform Leonard pairs over exact fields"
)]
struct Cli {
    /// Default field for inputs without an explicit one: "rational" or
    /// "p:<prime>". Overrides the LEONARD_FIELD environment variable; a
    /// "field" key inside an input file always wins over both.
    #[arg(long, global = true)]
    field: Option<String>,

    /// Write the JSON report to this path instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the five defining conditions of a parameter array file.
    Validate { params: PathBuf },
    /// Build the split-form matrix pair of a valid parameter array.
    Build { params: PathBuf },
    /// Decide whether a matrix pair is a Leonard pair and list every
    /// idempotent ordering with its parameter array.
    Recognize { a: PathBuf, a_star: PathBuf },
    /// List the parameter arrays of all eight relatives of a system.
    Relatives { params: PathBuf },
    /// Compute the cubic relation scalars and verify both commutator
    /// identities on the split form.
    Relations {
        params: PathBuf,
        /// Verify against fixed preset scalars instead of computed ones.
        #[arg(long, value_enum)]
        preset: Option<Preset>,
        /// Deformation parameter for the q-serre preset.
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
    },
    /// Emit polynomial sequences, recurrence scalars, the evaluation table,
    /// and orthogonality status.
    Polys { params: PathBuf },
    /// Generate a q-Racah parameter array from scalar inputs.
    Qracah {
        #[arg(long)]
        d: usize,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, allow_hyphen_values = true)]
        h: String,
        #[arg(long, allow_hyphen_values = true)]
        hstar: String,
        #[arg(long, allow_hyphen_values = true)]
        r1: String,
        #[arg(long, allow_hyphen_values = true)]
        r2: String,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, allow_hyphen_values = true)]
        sstar: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        theta0: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        thetastar0: String,
        /// Also evaluate the hypergeometric sum on the full index grid and
        /// compare it with the polynomial evaluation table.
        #[arg(long = "check-4phi3")]
        check_4phi3: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Preset {
    /// beta = q^2 + q^{-2}, all four remaining scalars zero.
    QSerre,
    /// beta = 2, gamma = gamma* = 0, rho = rho* = 16.
    DolanGrady,
}

enum Failure {
    /// Input parsed but is mathematically invalid; the report explains.
    Invalid(Value),
    /// Malformed arguments or unreadable/unparseable input.
    Usage(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let default_spec = match resolve_default_spec(&cli.field) {
        Ok(spec) => spec,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    match run(&cli.command, default_spec.as_ref()) {
        Ok(report) => match emit(&cli.output, &report) {
            Ok(()) => ExitCode::SUCCESS,
            Err(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
        },
        Err(Failure::Invalid(report)) => match emit(&cli.output, &report) {
            Ok(()) => ExitCode::from(1),
            Err(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
        },
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn resolve_default_spec(flag: &Option<String>) -> Result<Option<FieldSpec>, String> {
    let name = match flag {
        Some(name) => Some(name.clone()),
        None => std::env::var("LEONARD_FIELD").ok(),
    };
    match name {
        None => Ok(None),
        Some(name) => parse_field_name(&name).map(Some).map_err(|e| e.to_string()),
    }
}

fn emit(output: &Option<PathBuf>, report: &Value) -> Result<(), String> {
    let mut text = serde_json::to_string_pretty(report).expect("report serializes");
    text.push('\n');
    match output {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => fs::write(path, text)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
    }
}

fn read_json(path: &PathBuf) -> Result<Value, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("cannot parse {}: {e}", path.display())))
}

fn to_value<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("report serializes")
}

/// Read a parameter file and run the five-condition check. Returns the
/// array with its report; an invalid array is not an error here, so each
/// command decides how to react.
fn load_params(
    path: &PathBuf,
    default_spec: Option<&FieldSpec>,
) -> Result<(ParameterData, Value, bool), Failure> {
    let raw = read_json(path)?;
    let dto: ParameterDataDto = serde_json::from_value(raw)
        .map_err(|e| Failure::Usage(format!("bad parameter file {}: {e}", path.display())))?;
    let p = dto
        .to_params(default_spec)
        .map_err(|e| Failure::Usage(format!("bad parameter file {}: {e}", path.display())))?;
    let report = validate_parameter_array(&p)
        .map_err(|e| Failure::Usage(format!("bad parameter file {}: {e}", path.display())))?;
    let overall = report.overall;
    Ok((p, to_value(&ValidationReportDto::from_report(&report)), overall))
}

/// Like `load_params` but turns an invalid array into exit code 1 with the
/// per-condition report attached.
fn load_valid_params(
    path: &PathBuf,
    default_spec: Option<&FieldSpec>,
) -> Result<ParameterData, Failure> {
    let (p, report, overall) = load_params(path, default_spec)?;
    if !overall {
        return Err(Failure::Invalid(json!({
            "error": "parameter array failed validation",
            "validation": report,
        })));
    }
    Ok(p)
}

fn parse_scalar(s: &str, spec: &FieldSpec, what: &str) -> Result<FieldValue, Failure> {
    FieldValue::parse(s, spec).map_err(|_| Failure::Usage(format!("cannot parse --{what} {s}")))
}

fn run(command: &Command, default_spec: Option<&FieldSpec>) -> Result<Value, Failure> {
    match command {
        Command::Validate { params } => {
            let (_, report, overall) = load_params(params, default_spec)?;
            if overall {
                Ok(report)
            } else {
                Err(Failure::Invalid(report))
            }
        }
        Command::Build { params } => {
            let p = load_valid_params(params, default_spec)?;
            let rep = build_split_form(&p)
                .map_err(|e| Failure::Invalid(json!({ "error": e.to_string() })))?;
            Ok(json!({
                "field": to_value(&FieldDto::from_spec(&p.spec())),
                "d": p.d,
                "a": to_value(&MatrixDto::from_matrix(rep.a())),
                "a_star": to_value(&MatrixDto::from_matrix(rep.a_star())),
            }))
        }
        Command::Recognize { a, a_star } => {
            let a_dto: MatrixDto = serde_json::from_value(read_json(a)?)
                .map_err(|e| Failure::Usage(format!("bad matrix file {}: {e}", a.display())))?;
            let astar_dto: MatrixDto = serde_json::from_value(read_json(a_star)?)
                .map_err(|e| {
                    Failure::Usage(format!("bad matrix file {}: {e}", a_star.display()))
                })?;
            let a_mat = a_dto
                .to_matrix(default_spec)
                .map_err(|e| Failure::Usage(format!("bad matrix file {}: {e}", a.display())))?;
            let astar_mat = astar_dto.to_matrix(default_spec).map_err(|e| {
                Failure::Usage(format!("bad matrix file {}: {e}", a_star.display()))
            })?;
            let result = recognize_leonard_pair(&a_mat, &astar_mat)
                .map_err(|e| Failure::Invalid(json!({ "error": e.to_string() })))?;
            Ok(to_value(&RecognitionResultDto::from_result(
                &result,
                &a_mat.spec(),
            )))
        }
        Command::Relatives { params } => {
            let p = load_valid_params(params, default_spec)?;
            let orbit: Vec<Value> = D4Element::all()
                .iter()
                .map(|e| {
                    json!({
                        "element": e.name(),
                        "params": to_value(&ParameterDataDto::from_params(&d4_transform(&p, e))),
                    })
                })
                .collect();
            Ok(json!({ "orbit": orbit }))
        }
        Command::Relations { params, preset, q } => {
            let p = load_valid_params(params, default_spec)?;
            let scalars = match preset {
                None => compute_relation_scalars(&p)
                    .map_err(|e| Failure::Invalid(json!({ "error": e.to_string() })))?,
                Some(preset) => preset_scalars(*preset, q, &p.spec(), p.d)?,
            };
            let rep = build_split_form(&p)
                .map_err(|e| Failure::Invalid(json!({ "error": e.to_string() })))?;
            let report = verify_tridiagonal_relations(&rep, &scalars);
            let dto = RelationReportDto::from_report(&scalars, &report);
            let value = to_value(&dto);
            if report.is_clean() {
                Ok(value)
            } else {
                Err(Failure::Invalid(value))
            }
        }
        Command::Polys { params } => {
            let p = load_valid_params(params, default_spec)?;
            let rep = build_split_form(&p)
                .map_err(|e| Failure::Invalid(json!({ "error": e.to_string() })))?;
            let bundle = build_poly_bundle(&p)
                .map_err(|e| Failure::Invalid(json!({ "error": e.to_string() })))?;
            let rec = recurrence_data(&rep, &p)
                .map_err(|e| Failure::Invalid(json!({ "error": e.to_string() })))?;
            let orth = orthogonality_check(&bundle, &rec, &p);
            let coeffs = |seq: &[leonard_core::exactfield::Poly]| -> Vec<Vec<String>> {
                seq.iter().map(poly_to_coeff_strings).collect()
            };
            let u_table: Vec<Vec<FieldValue>> = (0..=p.d)
                .map(|i| (0..=p.d).map(|j| bundle.u[i].eval(&p.theta[j])).collect())
                .collect();
            Ok(json!({
                "field": to_value(&FieldDto::from_spec(&p.spec())),
                "d": p.d,
                "p": coeffs(&bundle.p),
                "p_star": coeffs(&bundle.p_star),
                "u": coeffs(&bundle.u),
                "u_star": coeffs(&bundle.u_star),
                "a": values_to_strings(&rec.a),
                "x": values_to_strings(&rec.x),
                "b": values_to_strings(&rec.b),
                "c": values_to_strings(&rec.c),
                "k": values_to_strings(&rec.k),
                "m": values_to_strings(&rec.m),
                "n": rec.n.to_string(),
                "u_table": grid_to_strings(&u_table),
                "orthogonality_clean": orth.is_clean(),
            }))
        }
        Command::Qracah {
            d,
            q,
            h,
            hstar,
            r1,
            r2,
            s,
            sstar,
            theta0,
            thetastar0,
            check_4phi3,
        } => {
            let spec = default_spec.cloned().unwrap_or(FieldSpec::Rational);
            let input = QRacahInput {
                d: *d,
                q: parse_scalar(q, &spec, "q")?,
                h: parse_scalar(h, &spec, "h")?,
                h_star: parse_scalar(hstar, &spec, "hstar")?,
                r1: parse_scalar(r1, &spec, "r1")?,
                r2: parse_scalar(r2, &spec, "r2")?,
                s: parse_scalar(s, &spec, "s")?,
                s_star: parse_scalar(sstar, &spec, "sstar")?,
                theta0: parse_scalar(theta0, &spec, "theta0")?,
                theta_star0: parse_scalar(thetastar0, &spec, "thetastar0")?,
            };
            let p = qracah_params(&input)
                .map_err(|e| Failure::Invalid(json!({ "error": e.to_string() })))?;
            let mut report = json!({
                "params": to_value(&ParameterDataDto::from_params(&p)),
            });
            if *check_4phi3 {
                let bundle = build_poly_bundle(&p)
                    .map_err(|e| Failure::Invalid(json!({ "error": e.to_string() })))?;
                let u_table: Vec<Vec<FieldValue>> = (0..=p.d)
                    .map(|i| (0..=p.d).map(|j| bundle.u[i].eval(&p.theta[j])).collect())
                    .collect();
                let mut hyper = Vec::with_capacity(p.d + 1);
                for i in 0..=p.d {
                    let mut row = Vec::with_capacity(p.d + 1);
                    for j in 0..=p.d {
                        let value = qracah_u_value(&QRacahEvalInput {
                            i,
                            j,
                            input: input.clone(),
                        })
                        .map_err(|e| Failure::Invalid(json!({ "error": e.to_string() })))?;
                        row.push(value);
                    }
                    hyper.push(row);
                }
                let matches = u_table == hyper;
                let obj = report.as_object_mut().expect("report is an object");
                obj.insert("u_table".into(), to_value(&grid_to_strings(&u_table)));
                obj.insert(
                    "hypergeometric_table".into(),
                    to_value(&grid_to_strings(&hyper)),
                );
                obj.insert("tables_match".into(), Value::Bool(matches));
                if !matches {
                    return Err(Failure::Invalid(report));
                }
            }
            Ok(report)
        }
    }
}

fn preset_scalars(
    preset: Preset,
    q: &Option<String>,
    spec: &FieldSpec,
    d: usize,
) -> Result<RelationScalars, Failure> {
    let zero = FieldValue::zero(spec);
    match preset {
        Preset::QSerre => {
            let q = match q {
                Some(text) => parse_scalar(text, spec, "q")?,
                None => {
                    return Err(Failure::Usage(
                        "--preset q-serre requires --q".to_string(),
                    ))
                }
            };
            let q2 = q.mul(&q);
            if q2.is_zero() {
                return Err(Failure::Invalid(json!({
                    "error": "q-serre preset needs an invertible q",
                })));
            }
            let beta = q2.add(&q2.inv().expect("nonzero"));
            Ok(RelationScalars {
                beta,
                gamma: zero.clone(),
                gamma_star: zero.clone(),
                rho: zero.clone(),
                rho_star: zero,
                unique: d >= 3,
            })
        }
        Preset::DolanGrady => Ok(RelationScalars {
            beta: FieldValue::from_i64(spec, 2),
            gamma: zero.clone(),
            gamma_star: zero.clone(),
            rho: FieldValue::from_i64(spec, 16),
            rho_star: FieldValue::from_i64(spec, 16),
            unique: d >= 3,
        }),
    }
}
