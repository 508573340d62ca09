//! Command implementations. Each returns a [`Report`]; printing and the
//! process exit code are left to the binary.

use std::path::Path;
use std::sync::Arc;

use maslov_folib::{
    augment, bounded_model_search, extract_type_set, model_check_sentence, parse_formula, rectify_apart, render,
    Formula, OuterTypeSet, Parsed, PartialStructure, SearchOutcome, Signature,
};
use maslov_fragments::{classify, conjuncts, to_prenex, Classification, FragmentClass};
use maslov_games::{reduce_type_set, solve, solve_sentence, Game, Solution};
use maslov_hardfam::{gen_phi_n, gen_phi_n_constant_free, prototypical_model, prototypical_model_constant_free};
use maslov_modelbuild::{build_model_auto, build_model_param_skolem, position_colours, sample_grid_base, BuildConfig};
use maslov_reductions::{enumerate_partitions, expand_model, reduce_with_signature, translate_fauf};
use maslov_tournaments::{
    build_paley, default_multiplicity, sample_paradoxical, verify_k_extension, verify_paradoxical,
    verify_paradoxical_len, ColourfulTournament, Tournament,
};
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::error::{CliError, Result, Verdict};

/// What a command produced.
#[derive(Debug, Clone)]
pub struct Report {
    pub verdict: Verdict,
    pub text: String,
    pub json: Value,
}

impl Report {
    fn new(verdict: Verdict, text: impl Into<String>, json: Value) -> Self {
        Report {
            verdict,
            text: text.into(),
            json,
        }
    }

    /// The report as it should be printed under `cfg`.
    pub fn render(&self, cfg: &RunConfig) -> String {
        if cfg.json() {
            serde_json::to_string_pretty(&self.json).expect("JSON values serialise")
        } else {
            self.text.clone()
        }
    }
}

pub fn read_formula(path: &Path) -> Result<Parsed> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(parse_formula(&text)?)
}

pub fn read_structure(path: &Path, sig: Arc<Signature>) -> Result<PartialStructure> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text)?;
    Ok(PartialStructure::from_json(&v, sig)?)
}

fn class_names(c: &Classification) -> Vec<String> {
    c.classes.iter().map(ToString::to_string).collect()
}

/// Largest number of variables over the prenexed conjuncts: the grade the
/// type set must cover for every conjunct game.
pub fn game_grade(f: &Formula) -> Result<u32> {
    let parts: Vec<Formula> = conjuncts(f).into_iter().cloned().collect();
    let mut g = 0;
    for p in rectify_apart(&parts) {
        let p = to_prenex(&p)?;
        g = g.max(p.specials.len() + p.word.len());
    }
    Ok(g as u32)
}

/// Type set of `a` after padding every element to `g` copies.
pub fn padded_beta(a: &PartialStructure, g: u32) -> Result<OuterTypeSet> {
    Ok(extract_type_set(&augment(a, g)?, g)?)
}

pub fn cmd_classify(path: &Path) -> Result<Report> {
    let p = read_formula(path)?;
    let c = classify(&p.formula);
    let mut text = format!("classes: {}\n", class_names(&c).join(", "));
    if let Some(g) = c.grade {
        text.push_str(&format!("grade: {g}\n"));
    }
    if !c.conjunct_grades.is_empty() {
        text.push_str(&format!("conjunct grades: {:?}\n", c.conjunct_grades));
    }
    text.push_str(&format!("size: {}\n", p.formula.size()));
    for d in &c.diagnostics {
        text.push_str(&format!("note: {d}\n"));
    }
    let supported = c.contains(FragmentClass::DKbar) || c.is_kbar();
    let json = json!({
        "command": "classify",
        "classes": class_names(&c),
        "classification": c,
        "size": p.formula.size(),
        "supported": supported,
    });
    Ok(Report::new(Verdict::from_bool(supported), text, json))
}

pub fn cmd_check(formula: &Path, structure: &Path) -> Result<Report> {
    let p = read_formula(formula)?;
    let a = read_structure(structure, Arc::new(p.signature.clone()))?;
    let holds = model_check_sentence(&a, &p.formula)?;
    Ok(Report::new(
        Verdict::from_bool(holds),
        format!("{holds}\n"),
        json!({"command": "check", "holds": holds}),
    ))
}

/// Cross-check of a found model through the game on its padded type set.
fn game_cross_check(f: &Formula, c: &Classification, model: &PartialStructure, cfg: &RunConfig) -> Result<Value> {
    if !(c.is_kbar() || c.contains(FragmentClass::DKbar)) {
        return Ok(json!({"applicable": false}));
    }
    let g = game_grade(f)?;
    let beta = padded_beta(model, g)?;
    match solve_sentence(f, &beta, &cfg.solve()) {
        Ok(out) => Ok(json!({
            "applicable": true,
            "grade": g,
            "padding": g,
            "type_count": beta.len(),
            "eloisa_wins": out.eloisa_wins,
        })),
        Err(maslov_games::GameError::BudgetExhausted { budget }) => Ok(json!({
            "applicable": true,
            "grade": g,
            "padding": g,
            "budget_exhausted": budget,
        })),
        Err(e) => Err(e.into()),
    }
}

pub fn cmd_sat(path: &Path, cfg: &RunConfig, force: bool, identify_constants: bool) -> Result<Report> {
    let p = read_formula(path)?;
    let c = classify(&p.formula);
    let supported = c.is_kbar() || c.contains(FragmentClass::DKbar) || c.contains(FragmentClass::ForallUf);
    if !supported && !force {
        let mut msg = String::from("sentence is in none of the supported classes (K, DK, forall-UF)");
        for d in &c.diagnostics {
            msg.push_str(&format!("\n  {d}"));
        }
        msg.push_str("\n  pass --force to search anyway");
        return Err(CliError::Input(msg));
    }
    let search = cfg.search();
    let partitions = if identify_constants {
        enumerate_partitions(p.signature.constants())?
    } else {
        vec![maslov_reductions::ConstantPartition::identity(p.signature.constants())]
    };
    let mut exhausted = None;
    for part in &partitions {
        let (g, sig) = if part.is_identity() {
            (p.formula.clone(), Arc::new(p.signature.clone()))
        } else {
            reduce_with_signature(&p.formula, &p.signature, part)?
        };
        match bounded_model_search(sig, &g, &search)? {
            SearchOutcome::Model(m) => {
                let game = game_cross_check(&g, &classify(&g), &m, cfg)?;
                if game.get("eloisa_wins") == Some(&Value::Bool(false)) {
                    return Err(CliError::Budget(
                        "model found but the game on its type set is lost; refusing to report a verdict".into(),
                    ));
                }
                let mut obj = json!({
                    "command": "sat",
                    "verdict": "sat",
                    "classes": class_names(&c),
                    "model_size": m.unnamed_size(),
                    "model": m.to_json()?,
                    "game": game,
                });
                let mut text = format!("sat: model with {} unnamed elements\n", m.unnamed_size());
                if !part.is_identity() {
                    let e = expand_model(&m, &g, part, &p.signature)?;
                    obj["constant_blocks"] = json!(part.blocks());
                    obj["expansion_checked"] = json!(e.satisfies(&p.formula)?);
                    text.push_str(&format!("constants identified as {:?}\n", part.blocks()));
                }
                match obj["game"].get("eloisa_wins") {
                    Some(Value::Bool(true)) => text.push_str("game on the padded type set: Eloisa wins\n"),
                    _ if obj["game"]["applicable"] == json!(false) => {
                        text.push_str("game cross-check not applicable outside DK\n")
                    }
                    _ => text.push_str("game cross-check ran out of budget\n"),
                }
                text.push_str(&serde_json::to_string_pretty(&obj["model"])?);
                text.push('\n');
                return Ok(Report::new(Verdict::Positive, text, obj));
            }
            SearchOutcome::NoneUpTo(_) => {}
            SearchOutcome::BudgetExhausted { nodes, completed_below, reason } => {
                exhausted = Some((nodes, completed_below, reason));
            }
        }
    }
    let n = cfg.max_model_size;
    if let Some((nodes, below, reason)) = exhausted {
        let obj = json!({
            "command": "sat",
            "verdict": "unknown",
            "classes": class_names(&c),
            "nodes": nodes,
            "completed_below": below,
            "reason": reason,
        });
        return Ok(Report::new(
            Verdict::Unknown,
            format!("unknown: budget exhausted after {nodes} nodes ({reason})\n"),
            obj,
        ));
    }
    Ok(Report::new(
        Verdict::Negative,
        format!("unsat: no model with at most {n} unnamed elements\n"),
        json!({"command": "sat", "verdict": "unsat", "classes": class_names(&c), "max_size": n}),
    ))
}

/// Type set from `--beta`, or from the first model the bounded search finds.
fn beta_for(p: &Parsed, beta: Option<&Path>, cfg: &RunConfig) -> Result<(OuterTypeSet, u32, &'static str)> {
    let g = game_grade(&p.formula)?;
    let sig = Arc::new(p.signature.clone());
    let (a, source) = match beta {
        Some(path) => (read_structure(path, sig)?, "file"),
        None => match bounded_model_search(sig, &p.formula, &cfg.search())? {
            SearchOutcome::Model(m) => (m, "search"),
            _ => {
                return Err(CliError::Input(
                    "no model within the search bounds to take types from; pass --beta".into(),
                ))
            }
        },
    };
    Ok((padded_beta(&a, g)?, g, source))
}

pub fn cmd_solve_game(formula: &Path, beta: Option<&Path>, reduce: bool, cfg: &RunConfig) -> Result<Report> {
    let p = read_formula(formula)?;
    let (beta, g, source) = beta_for(&p, beta, cfg)?;
    let c = classify(&p.formula);
    if !c.is_kbar() {
        let out = solve_sentence(&p.formula, &beta, &cfg.solve())?;
        let obj = json!({
            "command": "solve-game",
            "beta_source": source,
            "grade": g,
            "type_count": beta.len(),
            "eloisa_wins": out.eloisa_wins,
            "losing_conjunct": out.losing_conjunct(),
            "conjunct_wins": out.per_conjunct.iter().map(Solution::eloisa_wins).collect::<Vec<_>>(),
        });
        let text = if out.eloisa_wins {
            format!("Eloisa wins all {} conjunct games\n", out.per_conjunct.len())
        } else {
            format!("Abelard wins conjunct {}\n", out.losing_conjunct().unwrap_or(0))
        };
        return Ok(Report::new(Verdict::from_bool(out.eloisa_wins), text, obj));
    }
    let game = Game::from_sentence(&p.formula, &beta)?;
    let sol = solve(&game, &cfg.solve())?;
    let mut obj = json!({
        "command": "solve-game",
        "beta_source": source,
        "grade": g,
        "type_count": beta.len(),
        "one_types": beta.one_types().len(),
        "eloisa_wins": sol.eloisa_wins(),
    });
    let mut text;
    match &sol {
        Solution::Eloisa(table) => {
            text = format!("Eloisa wins; strategy has {} entries\n", table.len());
            obj["strategy"] = table.to_json();
            if reduce {
                let red = reduce_type_set(&game, table, &cfg.solve())?;
                let still = solve(&Game::new(game.prenex(), &red.beta)?, &cfg.solve())?.eloisa_wins();
                obj["reduced"] = json!({
                    "type_count": red.beta.len(),
                    "one_types": red.beta.one_types().len(),
                    "eloisa_wins": still,
                });
                text.push_str(&format!(
                    "reduced: {} -> {} 1-types, Eloisa {}\n",
                    beta.one_types().len(),
                    red.beta.one_types().len(),
                    if still { "still wins" } else { "loses" }
                ));
            }
        }
        Solution::Abelard(counter) => {
            text = String::from("Abelard wins\n");
            obj["abelard_opening"] = counter.opening.to_json();
        }
    }
    Ok(Report::new(Verdict::from_bool(sol.eloisa_wins()), text, obj))
}

pub fn cmd_build_model(formula: &Path, beta: Option<&Path>, grid: bool, cfg: &RunConfig) -> Result<Report> {
    let p = read_formula(formula)?;
    if !classify(&p.formula).is_kbar() {
        return Err(CliError::Input("build-model needs a single K sentence".into()));
    }
    let (beta, _, source) = beta_for(&p, beta, cfg)?;
    let game = Game::from_sentence(&p.formula, &beta)?;
    let omega = match solve(&game, &cfg.solve())? {
        Solution::Eloisa(t) => t,
        Solution::Abelard(_) => {
            return Ok(Report::new(
                Verdict::Negative,
                "Abelard wins; no model is built\n",
                json!({"command": "build-model", "eloisa_wins": false}),
            ))
        }
    };
    let bc = BuildConfig::default();
    let built = if grid {
        let pc = position_colours(&game, &omega)?;
        let base = sample_grid_base(&game, &pc, cfg.seed, 4096)?;
        build_model_param_skolem(&game, &omega, &base, &bc)?.0
    } else {
        build_model_auto(&game, &omega, cfg.seed, &bc)?
    };
    let holds = model_check_sentence(&built.structure, &p.formula)?;
    let obj = json!({
        "command": "build-model",
        "beta_source": source,
        "eloisa_wins": true,
        "report": built.report,
        "model_check": holds,
        "model": built.structure.to_json()?,
    });
    let text = format!(
        "built {} elements over {} position colours; model_check = {holds}\n",
        built.structure.unnamed_size(),
        built.report.colours
    );
    Ok(Report::new(Verdict::from_bool(holds), text, obj))
}

pub fn cmd_tournament_sample(
    vertex_colours: usize,
    arc_colours: usize,
    multiplicity: Option<usize>,
    cfg: &RunConfig,
) -> Result<Report> {
    if vertex_colours == 0 {
        return Err(CliError::Input("--vertex-colours must be positive".into()));
    }
    let n = multiplicity.unwrap_or_else(|| default_multiplicity(vertex_colours, arc_colours));
    let (t, attempts) = sample_paradoxical(vertex_colours, arc_colours, n, cfg.seed)?;
    let obj = json!({
        "command": "tournament-sample",
        "multiplicity": n,
        "attempts": attempts,
        "tournament": t.to_json(),
    });
    Ok(Report::new(
        Verdict::Positive,
        format!("paradoxical tournament on {} vertices after {attempts} attempts\n", t.len()),
        obj,
    ))
}

pub fn cmd_tournament_paley(prime: u64, k: usize, emit: bool) -> Result<Report> {
    let t = ColourfulTournament::materialise(&build_paley(prime)?)?;
    let paradoxical = verify_paradoxical(&t)?.passed();
    let ext = verify_k_extension(&t, k);
    let ok = paradoxical && ext.passed();
    let mut obj = json!({
        "command": "tournament-paley",
        "prime": prime,
        "paradoxical": paradoxical,
        "k": k,
        "k_extension": ext,
    });
    if emit {
        obj["tournament"] = t.to_json();
    }
    let text = format!(
        "Paley({prime}): paradoxical = {paradoxical}, {k}-extension = {}\n",
        ext.passed()
    );
    Ok(Report::new(Verdict::from_bool(ok), text, obj))
}

pub fn cmd_tournament_verify(path: &Path, ell: Option<usize>) -> Result<Report> {
    let text = std::fs::read_to_string(path)?;
    let t = ColourfulTournament::from_json(&serde_json::from_str(&text)?)?;
    let ell = ell.unwrap_or(t.arc_colours());
    let report = verify_paradoxical_len(&t, ell)?;
    Ok(Report::new(
        Verdict::from_bool(report.passed()),
        format!("paradoxical for tuples of length {ell}: {}\n", report.passed()),
        json!({"command": "tournament-verify", "ell": ell, "report": report}),
    ))
}

pub fn cmd_gen_phin(n: usize, constant_free: bool, model_out: Option<&Path>) -> Result<Report> {
    let inst = if constant_free {
        gen_phi_n_constant_free(n)?
    } else {
        gen_phi_n(n)?
    };
    let c = classify(&inst.formula);
    let text = render(&inst.signature, &inst.formula);
    let mut obj = json!({
        "command": "gen-phin",
        "n": n,
        "constant_free": constant_free,
        "size": inst.formula.size(),
        "classes": class_names(&c),
        "grade": c.grade,
        "formula": text,
    });
    if let Some(out) = model_out {
        let m = if constant_free {
            prototypical_model_constant_free(n)?
        } else {
            prototypical_model(n)?
        };
        let model = m.structure.to_json()?;
        std::fs::write(out, serde_json::to_string_pretty(&model)?)?;
        obj["model_file"] = json!(out.display().to_string());
    }
    Ok(Report::new(Verdict::Positive, format!("{text}\n"), obj))
}

pub fn cmd_translate_fauf(path: &Path) -> Result<Report> {
    let p = read_formula(path)?;
    let t = translate_fauf(&p.formula, &p.signature)?;
    let conj = t.conjuncts();
    let skolem = conj.iter().all(|c| classify(c).is_skolem());
    let text = render(&t.signature, &t.formula());
    let axioms: Vec<Value> = t
        .axioms
        .iter()
        .map(|a| json!({"predicate": a.predicate, "stands_for": a.subformula.to_string()}))
        .collect();
    let obj = json!({
        "command": "translate-fauf",
        "formula": text,
        "axioms": axioms,
        "conjuncts_skolem": skolem,
    });
    Ok(Report::new(Verdict::Positive, format!("{text}\n"), obj))
}

pub fn cmd_translate_constants(path: &Path) -> Result<Report> {
    let p = read_formula(path)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for part in enumerate_partitions(p.signature.constants())? {
        let (g, sig) = reduce_with_signature(&p.formula, &p.signature, &part)?;
        let rendered = render(&sig, &g);
        text.push_str(&format!("# {:?}\n{rendered}\n", part.blocks()));
        rows.push(json!({"blocks": part.blocks(), "size": g.size(), "formula": rendered}));
    }
    Ok(Report::new(
        Verdict::Positive,
        text,
        json!({"command": "translate-constants", "original_size": p.formula.size(), "partitions": rows}),
    ))
}
