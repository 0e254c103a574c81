//! The satisfiability procedure for sentences of the separated fragment.

use std::collections::BTreeSet;

use fol_semantics::{evaluate_sentence, Structure};
use fol_syntax::{to_nnf, to_standard_form, Formula, Quantifier, Signature, SyntaxError};
use sf_analysis::{bounds, is_sf, Magnitude};
use sf2bsr::{to_bsr_with_limits, PushLimits};

use crate::dpll::dpll_sat;
use crate::equality::ground_equality_elim;
use crate::error::DecisionError;
use crate::ground::{canonical_constant_maps, Grounder};
use crate::horn::horn_sat;
use crate::krom::krom_sat;
use crate::propositional::{herbrand_structure, to_propositional};
use crate::skolem::skolemize_existential;
use crate::verdict::{SatVerdict, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Backend {
    /// Horn or Krom solver when the clause set qualifies, DPLL otherwise.
    #[default]
    Auto,
    Dpll,
    Horn,
    Krom,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecideConfig {
    pub max_model_size: usize,
    pub backend: Backend,
    /// Decide sentences without universal quantifiers propositionally
    /// rather than by model search.
    pub prefer_propositional: bool,
}

impl Default for DecideConfig {
    fn default() -> DecideConfig {
        DecideConfig {
            max_model_size: 5,
            backend: Backend::Auto,
            prefer_propositional: true,
        }
    }
}

/// The small-model bound used by the search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelBound {
    /// The bound when it evaluates to a machine integer.
    pub value: Option<u64>,
    /// The bound as an expression, and where it comes from.
    pub expression: String,
    pub source: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Route {
    Propositional { backend: Backend, horn: bool, krom: bool, equality: bool },
    ModelSearch { bound: ModelBound, searched: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub verdict: SatVerdict,
    pub route: Route,
}

pub fn decide_sat(s: &Formula, cfg: &DecideConfig) -> Result<SatVerdict, DecisionError> {
    Ok(decide(s, cfg)?.verdict)
}

/// Expands counting quantifiers, then decides sentences without universal
/// quantifiers propositionally and all others by searching for models of
/// increasing size up to the smaller of the small-model bound and
/// `cfg.max_model_size`. Every SAT verdict carries a structure that has
/// been checked against the input.
pub fn decide(s: &Formula, cfg: &DecideConfig) -> Result<Decision, DecisionError> {
    let free = s.free_vars();
    if !free.is_empty() {
        return Err(SyntaxError::NotASentence(free.into_iter().collect()).into());
    }
    let expanded = generators::expand_counting(s).formula;
    let decision = if cfg.prefer_propositional && !has_universals(&expanded)? {
        decide_propositionally(&expanded, cfg.backend)?
    } else {
        search_models(&expanded, cfg.max_model_size)?
    };
    if let Some(a) = decision.verdict.structure() {
        if !evaluate_sentence(a, s)? {
            return Err(DecisionError::WitnessRejected(format!("{}", a.to_json())));
        }
    }
    Ok(decision)
}

fn has_universals(f: &Formula) -> Result<bool, DecisionError> {
    fn walk(f: &Formula) -> bool {
        match f {
            Formula::Quant { q: Quantifier::Exists, body, .. } => walk(body),
            Formula::Quant { .. } => true,
            _ => f.children().into_iter().any(walk),
        }
    }
    Ok(walk(&to_nnf(f)?))
}

fn decide_propositionally(s: &Formula, backend: Backend) -> Result<Decision, DecisionError> {
    let ground = skolemize_existential(s)?;
    let equality = ground.has_equality();
    let (ground, predicate) = if equality {
        let out = ground_equality_elim(&ground)?;
        (out.formula, Some(out.predicate))
    } else {
        (ground, None)
    };
    let prop = to_propositional(&ground)?;
    let class = prop.cnf.classify();
    let chosen = match backend {
        Backend::Auto if class.horn => Backend::Horn,
        // equality elimination does not keep clause sets Krom, so those go to DPLL
        Backend::Auto if class.krom && !equality => Backend::Krom,
        Backend::Auto => Backend::Dpll,
        other => other,
    };
    let verdict = match chosen {
        Backend::Horn => horn_sat(&prop.cnf)?,
        Backend::Krom => krom_sat(&prop.cnf)?,
        _ => dpll_sat(&prop.cnf),
    };
    let verdict = match verdict {
        SatVerdict::Sat(Witness::Assignment(values)) => {
            let mut constants: BTreeSet<String> = ground.constants();
            constants.extend(s.constants());
            let sig = s.signature()?;
            let a = herbrand_structure(&prop.atoms, &values, &constants, &sig, predicate.as_deref());
            SatVerdict::Sat(Witness::Structure(a))
        }
        other => other,
    };
    Ok(Decision {
        verdict,
        route: Route::Propositional {
            backend: chosen,
            horn: class.horn,
            krom: class.krom,
            equality,
        },
    })
}

const BSR_PROBE_LIMITS: PushLimits = PushLimits {
    clause_limit: 5_000,
    selection_limit: 5_000,
};

/// The least applicable small-model bound: `∃*∀*` sentences (directly or
/// after translation) are bounded by their leading existentials plus
/// constants, monadic sentences without equality by `2^k`, and all
/// separated sentences by the degree-based and alternation-based towers.
pub fn small_model_bound(s: &Formula) -> Result<ModelBound, DecisionError> {
    let sf = to_standard_form(s)?;
    if !is_sf(&sf) {
        return Ok(ModelBound {
            value: None,
            expression: "none".into(),
            source: "not separated",
        });
    }
    let report = bounds(&sf)?;
    let mut candidates: Vec<(u64, String, &'static str)> = Vec::new();
    if let Some(b) = report.prop5_bound {
        candidates.push((b, b.to_string(), "existential prefix"));
    } else if let Ok(bsr) = to_bsr_with_limits(&sf, BSR_PROBE_LIMITS) {
        let consts = bsr.to_formula().constants().len();
        let b = (bsr.existentials.len() + consts).max(1) as u64;
        candidates.push((b, b.to_string(), "existential prefix after translation"));
    }
    if let Some(b) = report.prop6_bound.as_ref().and_then(|b| u64::try_from(b).ok()) {
        candidates.push((b, b.to_string(), "monadic"));
    }
    for (expr, source) in [(&report.expr1_model_size, "degree"), (&report.prop9_bound, "alternations")] {
        if let Magnitude::Exact(v) = expr.evaluate() {
            if let Ok(b) = u64::try_from(&v) {
                candidates.push((b, expr.to_string(), source));
            }
        }
    }
    Ok(match candidates.into_iter().min_by_key(|c| c.0) {
        Some((b, expression, source)) => ModelBound {
            value: Some(b),
            expression,
            source,
        },
        None => ModelBound {
            value: None,
            expression: report.expr1_model_size.to_string(),
            source: "degree",
        },
    })
}

/// Searches for a model with exactly `size` elements by grounding and DPLL,
/// over every canonical interpretation of the constants.
pub fn model_of_size(s: &Formula, sig: &Signature, size: usize) -> Result<Option<Structure>, DecisionError> {
    let constants: Vec<String> = s.constants().into_iter().chain(sig.constants.iter().cloned()).collect::<BTreeSet<_>>().into_iter().collect();
    for map in canonical_constant_maps(&constants, size) {
        let mut g = Grounder::new(size, map);
        let root = g.ground(s)?;
        let (cnf, atoms) = g.into_cnf(root);
        if let SatVerdict::Sat(Witness::Assignment(values)) = dpll_sat(&cnf) {
            return Ok(Some(atoms.structure(&values, sig)));
        }
    }
    Ok(None)
}

fn search_models(s: &Formula, max_size: usize) -> Result<Decision, DecisionError> {
    let bound = small_model_bound(s)?;
    let limit = bound.value.map_or(max_size, |b| (b as usize).min(max_size));
    let sig = s.signature()?;
    for size in 1..=limit {
        if let Some(a) = model_of_size(s, &sig, size)? {
            return Ok(Decision {
                verdict: SatVerdict::Sat(Witness::Structure(a)),
                route: Route::ModelSearch { bound, searched: size },
            });
        }
    }
    let verdict = match bound.value {
        Some(b) if b as usize <= max_size => SatVerdict::Unsat,
        _ => SatVerdict::Inconclusive {
            searched: limit,
            bound: bound.expression.clone(),
        },
    };
    Ok(Decision {
        verdict,
        route: Route::ModelSearch { bound, searched: limit },
    })
}
