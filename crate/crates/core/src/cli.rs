//! Command-line front end. [`run`] is pure apart from reading spec files, so the binary and
//! the tests share it.

use clap::{Parser, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::center::{
    build_center, class_coeffs, commutant_center, reference_center, span_compare, BuildMode, CenterBasis,
    CenterError, CoeffMode,
};
use crate::hecke::builtin::render_json;
use crate::hecke::{check_relations, specialized_relations_hold, BraidWord, HeckeAlgebra, SpecError};
use crate::trace::{dual_basis, gram, mm_condition_check, trace_property_check, DualBasis, TraceError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Check braid, Hecke, inverse and centrality relations of the matrix model.
    Validate,
    /// Expand a braid word in the basis.
    Eval,
    /// Gram matrix of the trace, with symmetry and unit-determinant certification.
    Gram,
    /// Dual basis with respect to the trace.
    Dual,
    /// Check τ(x⁻¹π) = 0 for every basis word x ≠ 1.
    MmCheck,
    /// Center by the commutant method (and the class-coefficient constructions when
    /// representations are available).
    Center,
    /// Compare the computed center with the reference basis and the class-coefficient bases.
    Compare,
    /// Full pipeline as a single JSON document (regardless of --output).
    Report,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Debug, Parser)]
#[command(name = "hecke", version, about = "Exact computations in small generic Hecke algebras")]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,
    /// Builtin group (a2, g4) or path to a group JSON file.
    #[arg(long, short)]
    pub group: String,
    /// Braid word such as "s1^2 s2^-1" (for eval).
    #[arg(long, short)]
    pub word: Option<String>,
    #[arg(long, short, value_enum, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,
    /// Seed for the randomized property checks.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of random pairs for the trace-property check.
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CERTIFICATION: i32 = 2;

enum Failure {
    Usage(String),
    Certification(String),
}

impl From<SpecError> for Failure {
    fn from(e: SpecError) -> Self {
        match e {
            SpecError::Relation(_) => Failure::Certification(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<TraceError> for Failure {
    fn from(e: TraceError) -> Self {
        match e {
            TraceError::Spec(s) => s.into(),
            TraceError::NoPiWord => Failure::Usage(e.to_string()),
            _ => Failure::Certification(e.to_string()),
        }
    }
}

impl From<CenterError> for Failure {
    fn from(e: CenterError) -> Self {
        match e {
            CenterError::Spec(s) => s.into(),
            _ => Failure::Certification(e.to_string()),
        }
    }
}

/// Result of one command: JSON document, text rendering, and whether it certified.
struct Output {
    json: Value,
    text: String,
    ok: bool,
}

pub fn run(config: &RunConfig) -> RunOutcome {
    let result = HeckeAlgebra::load(&config.group)
        .map_err(Failure::from)
        .and_then(|alg| dispatch(&alg, config));
    match result {
        Ok(out) => RunOutcome {
            status: if out.ok { EXIT_OK } else { EXIT_CERTIFICATION },
            // `report` is always a single JSON document.
            stdout: match (config.command, config.output) {
                (Command::Report, _) | (_, OutputFormat::Json) => render_json(&out.json),
                (_, OutputFormat::Text) => out.text,
            },
            stderr: String::new(),
        },
        Err(Failure::Usage(msg)) => RunOutcome {
            status: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Certification(msg)) => RunOutcome {
            status: EXIT_CERTIFICATION,
            stdout: String::new(),
            stderr: format!("certification failed: {msg}\n"),
        },
    }
}

fn dispatch(alg: &HeckeAlgebra, config: &RunConfig) -> Result<Output, Failure> {
    match config.command {
        Command::Validate => validate(alg, config.seed),
        Command::Eval => eval(alg, config.word.as_deref()),
        Command::Gram => gram_cmd(alg),
        Command::Dual => dual_cmd(alg),
        Command::MmCheck => mm_cmd(alg),
        Command::Center => center_cmd(alg),
        Command::Compare => compare_cmd(alg),
        Command::Report => report(alg, config),
    }
}

fn validate(alg: &HeckeAlgebra, seed: u64) -> Result<Output, Failure> {
    let report = check_relations(alg);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let specialized = specialized_relations_hold(alg, &mut rng, 3)?;
    let ok = report.passed() && specialized;
    let mut text = format!("group {}\n", report.group);
    for c in &report.checks {
        text.push_str(&format!("{} {}\n", if c.passed { "ok  " } else { "FAIL" }, c.name));
        if let Some(d) = &c.detail {
            text.push_str(&format!("     {d}\n"));
        }
    }
    text.push_str(&format!(
        "{} relations at 3 random rational points (seed {seed})\n",
        if specialized { "ok  " } else { "FAIL" }
    ));
    Ok(Output {
        json: json!({
            "group": report.group,
            "checks": report.checks,
            "specialized_points": 3,
            "specialized_passed": specialized,
            "passed": ok,
        }),
        text,
        ok,
    })
}

fn eval(alg: &HeckeAlgebra, word: Option<&str>) -> Result<Output, Failure> {
    let word = word.ok_or_else(|| Failure::Usage("eval needs --word".into()))?;
    let w = BraidWord::parse(word)?;
    let v = alg.word_to_element(&w)?;
    let rendered = alg.format_element(&v);
    Ok(Output {
        json: json!({ "word": w.to_string(), "coefficients": v, "text": rendered }),
        text: format!("{rendered}\n"),
        ok: true,
    })
}

fn gram_cmd(alg: &HeckeAlgebra) -> Result<Output, Failure> {
    let g = gram(alg)?;
    Ok(Output {
        text: format!(
            "Gram matrix {n}x{n}: symmetric, det = {} (unit, inverse {})\n",
            g.det,
            g.det_inverse,
            n = g.matrix.rows()
        ),
        json: json!({
            "matrix": g.matrix,
            "det": g.det,
            "det_inverse": g.det_inverse,
            "symmetric": true,
            "unit_determinant": true,
        }),
        ok: true,
    })
}

fn duals(alg: &HeckeAlgebra) -> Result<DualBasis, Failure> {
    Ok(dual_basis(&gram(alg)?)?)
}

fn dual_cmd(alg: &HeckeAlgebra) -> Result<Output, Failure> {
    let d = duals(alg)?;
    let mut text = String::new();
    for (i, v) in d.vectors.iter().enumerate() {
        text.push_str(&format!("{}^v = {}\n", alg.spec().basis_label(i), alg.format_element(v)));
    }
    Ok(Output {
        json: json!({ "vectors": d.vectors, "duality_verified": true }),
        text,
        ok: true,
    })
}

fn mm_cmd(alg: &HeckeAlgebra) -> Result<Output, Failure> {
    let mm = mm_condition_check(alg)?;
    let mut text = format!("pi = {}\ntau(pi) = {}\n", mm.pi_word, mm.tau_pi);
    let nonzero: Vec<String> = mm
        .values
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(j, v)| format!("b{j}: {v}"))
        .collect();
    if nonzero.is_empty() {
        text.push_str(&format!("tau(x^-1 pi) = 0 for all {} basis words x != 1\n", mm.values.len()));
    } else {
        text.push_str(&format!("nonzero values:\n  {}\n", nonzero.join("\n  ")));
    }
    Ok(Output {
        ok: mm.passed,
        json: serde_json::to_value(&mm).expect("serializable"),
        text,
    })
}

struct ClassBasis {
    construction: &'static str,
    class_reps: String,
    basis: CenterBasis,
}

/// The two class-coefficient constructions for every stored set of class representatives.
fn class_bases(alg: &HeckeAlgebra, duals: &DualBasis) -> Result<Vec<ClassBasis>, Failure> {
    let spec = alg.spec();
    let mut out = Vec::new();
    if spec.representations.is_empty() {
        return Ok(out);
    }
    for set in &spec.class_reps {
        let f = class_coeffs(alg, &spec.representations, &set.basis, CoeffMode::FOnBasis, None)?;
        out.push(ClassBasis {
            construction: "y_C = sum_w f_{w,C} b_w^v",
            class_reps: set.name.clone(),
            basis: build_center(alg, &f, BuildMode::YFromDuals, Some(duals))?,
        });
        let g = class_coeffs(alg, &spec.representations, &set.basis, CoeffMode::GOnDuals, Some(duals))?;
        out.push(ClassBasis {
            construction: "z_C = sum_w g_{w,C} b_w",
            class_reps: set.name.clone(),
            basis: build_center(alg, &g, BuildMode::ZFromBasis, None)?,
        });
    }
    Ok(out)
}

fn basis_text(alg: &HeckeAlgebra, title: &str, b: &CenterBasis) -> String {
    let mut text = format!("{title}\n");
    for (i, v) in b.vectors.iter().enumerate() {
        let flag = if b.is_polynomial(i) {
            "polynomial"
        } else if b.is_integral(i) {
            "in R"
        } else {
            "not in R"
        };
        text.push_str(&format!("  [{}] {}  ({flag})\n", i + 1, alg.format_element(v)));
    }
    text
}

struct CenterRun {
    json: Value,
    text: String,
    ok: bool,
}

fn center_run(alg: &HeckeAlgebra, with_compare: bool) -> Result<CenterRun, Failure> {
    let computed = commutant_center(alg)?;
    let mut text = basis_text(alg, &format!("commutant center ({} vectors)", computed.len()), &computed);
    let mut json = json!({ "commutant": computed.report(alg) });
    let mut ok = (0..computed.len()).all(|i| computed.is_integral(i));

    if let Some(reference) = reference_center(alg) {
        let cmp = span_compare(alg, &computed, &reference)?;
        let passed = cmp.equal_f_span && cmp.x_in_r_span_of_y && cmp.y_in_r_span_of_x;
        ok &= passed;
        text.push_str(&format!(
            "against reference: equal F-span {}, computed in R-span of reference {}, reference in R-span of computed {}\n",
            cmp.equal_f_span, cmp.x_in_r_span_of_y, cmp.y_in_r_span_of_x
        ));
        json["reference_comparison"] = json!(cmp);
    }

    if !alg.spec().representations.is_empty() {
        let d = duals(alg)?;
        let mut items = Vec::new();
        for t in class_bases(alg, &d)? {
            text.push_str(&basis_text(alg, &format!("{} ({} representatives)", t.construction, t.class_reps), &t.basis));
            let mut item = json!({
                "construction": t.construction,
                "class_reps": t.class_reps,
                "basis": t.basis.report(alg),
            });
            if with_compare {
                let cmp = span_compare(alg, &t.basis, &computed)?;
                ok &= cmp.equal_f_span;
                text.push_str(&format!(
                    "  vs commutant: equal F-span {}, in R-span of commutant {}, commutant in its R-span {}\n",
                    cmp.equal_f_span, cmp.x_in_r_span_of_y, cmp.y_in_r_span_of_x
                ));
                item["commutant_comparison"] = json!(cmp);
            }
            items.push(item);
        }
        json["class_coefficient_bases"] = Value::Array(items);
    }
    Ok(CenterRun { json, text, ok })
}

fn center_cmd(alg: &HeckeAlgebra) -> Result<Output, Failure> {
    let r = center_run(alg, false)?;
    Ok(Output {
        json: r.json,
        text: r.text,
        ok: r.ok,
    })
}

fn compare_cmd(alg: &HeckeAlgebra) -> Result<Output, Failure> {
    if alg.spec().reference_center.is_none() && alg.spec().representations.is_empty() {
        return Err(Failure::Usage(
            "group has neither a reference center nor representations to compare against".into(),
        ));
    }
    let r = center_run(alg, true)?;
    Ok(Output {
        json: r.json,
        text: r.text,
        ok: r.ok,
    })
}

fn report(alg: &HeckeAlgebra, config: &RunConfig) -> Result<Output, Failure> {
    let validation = validate(alg, config.seed)?;
    if !validation.ok {
        return Ok(Output {
            json: json!({ "group": alg.spec().name, "validate": validation.json }),
            text: String::new(),
            ok: false,
        });
    }
    let g = gram(alg)?;
    let d = dual_basis(&g)?;
    let trace_property = trace_property_check(alg, config.samples, config.seed)?;
    let mm = match alg.spec().pi_word {
        Some(_) => Some(mm_condition_check(alg)?),
        None => None,
    };
    let center = center_run(alg, true)?;
    let ok = trace_property.passed && mm.as_ref().is_none_or(|m| m.passed) && center.ok;

    Ok(Output {
        json: json!({
            "group": alg.spec().name,
            "seed": config.seed,
            "validate": validation.json,
            "gram": { "det": g.det, "det_inverse": g.det_inverse, "symmetric": true, "unit_determinant": true },
            "dual": { "vectors": d.vectors, "duality_verified": true },
            "trace_property": trace_property,
            "mm_condition": mm,
            "center": center.json,
            "passed": ok,
        }),
        text: String::new(),
        ok,
    })
}
