use std::path::Path;
use std::time::Instant;

use decision_engine::{decide, equivalent_upto_ground, Backend, DecideConfig, Route, SatVerdict, Witness};
use fol_semantics::{equivalent_upto_with_budget, evaluate_sentence, Side, Structure, DEFAULT_BUDGET};
use fol_syntax::{to_nnf, to_standard_form, Formula};
use generators::{
    brute_force_tiler, canonical_domino_model, canonical_hierarchy_model, domino_parts, expand_counting,
    generate_hard_family, hard_family_model, hierarchy_parts, sf_equality_elim, smp_to_sf, DominoFile,
    HierarchyParams, DEFAULT_ELEMENT_CAP,
};
use serde_json::{json, Value};
use sf_analysis::{analyze, interaction_partition, is_mfo, AnalysisError};

use crate::args::{BackendArg, EquivMethod, Gen, Input};
use crate::error::CliError;
use crate::input::{parse_arg, read_file};

/// What a command produced: the JSON report, its plain-text rendering and
/// the exit code.
pub struct Report {
    pub json: Value,
    pub text: String,
    pub exit: i32,
}

impl Report {
    fn ok(json: Value, text: impl Into<String>) -> Report {
        Report {
            json,
            text: text.into(),
            exit: 0,
        }
    }
}

/// Enumeration budget, overridable through `SEPFRAG_BUDGET`.
pub fn enumeration_budget() -> Result<u128, CliError> {
    match std::env::var("SEPFRAG_BUDGET") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("SEPFRAG_BUDGET must be a nonnegative integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

pub fn check(input: &Input) -> Result<Report, CliError> {
    let f = input.formula()?;
    let sf = to_standard_form(&f)?;
    let standard = sf.to_formula().to_string();
    if let Some(report) = analyze(&sf) {
        let mut json = report.to_json();
        json["standard_form"] = standard.clone().into();
        let text = format!(
            "separated: yes\nstrongly separated: {}\nmonadic: {}\nBSR: {}\ndegree: {}\nstandard form: {standard}",
            yes(report.is_ssf),
            yes(report.is_mfo),
            yes(report.is_bsr),
            report.degree
        );
        return Ok(Report::ok(json, text));
    }
    let reason = match interaction_partition(&sf) {
        Err(AnalysisError::NotSF { atom }) => format!("atom {atom} mixes universal and existential variables"),
        Err(e) => e.to_string(),
        Ok(_) => "outside the separated fragment".into(),
    };
    let json = json!({
        "is_sf": false,
        "is_ssf": false,
        "is_bsr": false,
        "is_mfo": is_mfo(&f),
        "reason": reason,
        "standard_form": standard,
    });
    Ok(Report::ok(json, format!("separated: no ({reason})\nstandard form: {standard}")))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn to_bsr(input: &Input) -> Result<Report, CliError> {
    let f = input.formula()?;
    let start = Instant::now();
    let sf = to_standard_form(&f)?;
    let bsr = sf2bsr::to_bsr(&sf)?;
    let elapsed_ms = start.elapsed().as_millis() as u64;
    let text = bsr.to_formula().to_string();
    let stats = json!({
        "leading_existentials": bsr.stats.leading_existentials,
        "lemma12_bound": bsr.stats.lemma12_bound.to_string(),
        "within_bound": bsr.stats.within_bound,
        "dedup_count": bsr.stats.dedup_count,
        "elapsed_ms": elapsed_ms,
    });
    let rendered = format!("{text}\n{stats}");
    Ok(Report::ok(json!({ "formula": text, "stats": stats }), rendered))
}

pub fn run_decide(
    input: &Input,
    max_size: usize,
    backend: BackendArg,
    emit_model: Option<&Path>,
) -> Result<Report, CliError> {
    let f = input.formula()?;
    let cfg = DecideConfig {
        max_model_size: max_size,
        backend: match backend {
            BackendArg::Auto => Backend::Auto,
            BackendArg::Dpll => Backend::Dpll,
            BackendArg::Horn => Backend::Horn,
            BackendArg::Krom => Backend::Krom,
        },
        ..DecideConfig::default()
    };
    let d = decide(&f, &cfg)?;
    let route = match &d.route {
        Route::Propositional {
            backend,
            horn,
            krom,
            equality,
        } => json!({
            "kind": "propositional",
            "backend": format!("{backend:?}").to_lowercase(),
            "horn": horn,
            "krom": krom,
            "equality": equality,
        }),
        Route::ModelSearch { bound, searched } => json!({
            "kind": "model-search",
            "bound": { "value": bound.value, "expression": bound.expression, "source": bound.source },
            "searched": searched,
        }),
    };
    let mut json = json!({ "verdict": d.verdict.label(), "route": route });
    let (exit, mut text) = match &d.verdict {
        SatVerdict::Sat(w) => {
            let model = match w {
                Witness::Structure(a) => a.to_json(),
                Witness::Assignment(v) => json!(v),
            };
            if let Some(path) = emit_model {
                let body = serde_json::to_string_pretty(&model).expect("json serializes");
                std::fs::write(path, body + "\n").map_err(|source| CliError::Io {
                    path: path.display().to_string(),
                    source,
                })?;
            }
            let text = format!("SAT\n{model}");
            json["model"] = model;
            (0, text)
        }
        SatVerdict::Unsat => (1, "UNSAT".to_string()),
        SatVerdict::Inconclusive { searched, bound } => {
            json["searched"] = (*searched).into();
            json["bound"] = bound.clone().into();
            (2, format!("INCONCLUSIVE: no model up to size {searched}; bound {bound}"))
        }
    };
    if let Route::ModelSearch { bound, .. } = &d.route {
        text.push_str(&format!("\nbound: {} ({})", bound.expression, bound.source));
    }
    Ok(Report { json, text, exit })
}

fn labelled(parts: &[(String, Formula)]) -> Value {
    parts
        .iter()
        .map(|(label, f)| json!({ "label": label, "formula": f.to_string() }))
        .collect()
}

fn generated(formula: &Formula, extra: Value, model: Option<&Structure>) -> Report {
    let mut json = json!({ "formula": formula.to_string() });
    if let (Value::Object(target), Value::Object(more)) = (&mut json, extra) {
        target.extend(more);
    }
    let mut text = formula.to_string();
    if let Some(a) = model {
        json["model"] = a.to_json();
        text.push('\n');
        text.push_str(&a.to_json().to_string());
    }
    Report::ok(json, text)
}

pub fn generate(cmd: &Gen) -> Result<Report, CliError> {
    match cmd {
        Gen::Hierarchy { kappa, mu, with_model } => {
            let p = HierarchyParams::new(*kappa, *mu)?;
            let parts = hierarchy_parts(p);
            let f = Formula::And(parts.iter().map(|(_, f)| f.clone()).collect());
            let model = with_model.then(|| canonical_hierarchy_model(p)).transpose()?;
            Ok(generated(&f, json!({ "parts": labelled(&parts) }), model.as_ref()))
        }
        Gen::Domino {
            spec,
            kappa,
            mu,
            with_model,
        } => {
            let file = DominoFile::from_json(&read_file(spec)?)?;
            let p = HierarchyParams::new(*kappa, *mu)?;
            let mut parts = hierarchy_parts(p);
            parts.extend(domino_parts(&file.system, &file.word, p)?);
            let f = Formula::And(parts.iter().map(|(_, f)| f.clone()).collect());
            let t = p.torus_size();
            let mut extra = json!({ "torus_size": t.to_string(), "parts": labelled(&parts) });
            let mut model = None;
            if *with_model {
                let size = t
                    .to_u64()
                    .filter(|&t| t as usize <= DEFAULT_ELEMENT_CAP)
                    .ok_or_else(|| CliError::Budget {
                        message: format!("torus exceeds the cap of {DEFAULT_ELEMENT_CAP}"),
                        bound: t.to_string(),
                    })? as usize;
                match brute_force_tiler(&file.system, &file.word, size) {
                    Some(tiling) => {
                        extra["tiling"] = json!(tiling.cells);
                        model = Some(canonical_domino_model(&file.system, &file.word, p, &tiling)?);
                    }
                    None => extra["tiling"] = Value::Null,
                }
            }
            Ok(generated(&f, extra, model.as_ref()))
        }
        Gen::Hard { n, with_model } => {
            let f = generate_hard_family(*n)?;
            let model = with_model.then(|| hard_family_model(*n)).transpose()?;
            Ok(generated(&f, json!({ "n": n }), model.as_ref()))
        }
        Gen::Smp { bound, input } => {
            if *bound == 0 {
                return Err(CliError::Usage("--bound must be at least 1".into()));
            }
            let f = to_nnf(&input.formula()?)?;
            let out = smp_to_sf(&f, *bound)?;
            Ok(generated(&out.formula, json!({ "predicates": out.predicates }), None))
        }
    }
}

pub fn eliminate_eq(input: &Input) -> Result<Report, CliError> {
    let out = sf_equality_elim(&input.formula()?)?;
    Ok(generated(&out.formula, json!({ "predicate": out.predicate }), None))
}

pub fn run_expand_counting(input: &Input) -> Result<Report, CliError> {
    let out = expand_counting(&input.formula()?);
    let mut report = generated(
        &out.formula,
        json!({ "separation_warning": out.separation_warning }),
        None,
    );
    if out.separation_warning {
        report.text.push_str("\nwarning: the expansion is not separated");
    }
    Ok(report)
}

pub fn eval(input: &Input, model: &Path) -> Result<Report, CliError> {
    let f = input.formula()?;
    let a = Structure::from_json(&read_file(model)?, Some(&f.signature()?))?;
    let value = evaluate_sentence(&a, &f)?;
    Ok(Report::ok(json!({ "value": value }), value.to_string()))
}

pub fn equiv(left: &str, right: &str, up_to: usize, method: EquivMethod) -> Result<Report, CliError> {
    if up_to == 0 {
        return Err(CliError::Usage("--up-to must be at least 1".into()));
    }
    let f = parse_arg(left)?;
    let g = parse_arg(right)?;
    let (equal, counterexample) = match method {
        EquivMethod::Enumerate => {
            let v = equivalent_upto_with_budget(&f, &g, up_to, enumeration_budget()?)?;
            let cx = v.counterexample.map(|c| {
                json!({
                    "structure": c.structure.to_json(),
                    "assignment": c.assignment,
                    "true_in": match c.true_in { Side::First => "left", Side::Second => "right" },
                })
            });
            (v.equal, cx)
        }
        EquivMethod::Ground => {
            let v = equivalent_upto_ground(&f, &g, up_to)?;
            let cx = v.counterexample.map(|a| {
                let left_true = evaluate_sentence(&a, &f).unwrap_or(false);
                json!({
                    "structure": a.to_json(),
                    "true_in": if left_true { "left" } else { "right" },
                })
            });
            (v.equal, cx)
        }
    };
    let mut json = json!({ "equal": equal, "up_to": up_to });
    let text = match counterexample {
        Some(cx) => {
            let text = format!("different\n{}", cx["structure"]);
            json["counterexample"] = cx;
            text
        }
        None => "equal".to_string(),
    };
    Ok(Report::ok(json, text))
}
