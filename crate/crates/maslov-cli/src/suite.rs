//! The acceptance suite: ten end-to-end checks across all crates, each with
//! a wall-clock limit. `maslov demo` and the `acceptance` test run it.

use std::sync::Arc;
use std::time::{Duration, Instant};

use maslov_folib::{
    bounded_model_search, model_check_sentence, parse_formula, parse_with_signature, Elem, Formula, OuterTypeSet,
    PartialStructure, SearchConfig, Signature,
};
use maslov_fragments::{classify, examples, to_prenex};
use maslov_games::{reduce_type_set, solve, Game, Solution, SolveConfig, StrategyTable};
use maslov_hardfam::{
    check_chain, decompose_permutation, distinct_witnesses, gen_phi_n, prototypical_model, search_decompositions,
    Permutation,
};
use maslov_modelbuild::{build_model_auto, build_model_param_skolem, position_colours, sample_grid_base, BuildConfig};
use maslov_reductions::{enumerate_partitions, expand_model, expand_translation_model, reduce_with_signature, translate_fauf};
use maslov_tournaments::{
    build_paley, default_multiplicity, sample_paradoxical, sample_random_sized, three_cycle, verify_k_extension,
    verify_paradoxical, ColourfulTournament, Tournament, MAX_ATTEMPTS,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::commands::padded_beta;

/// Inputs the suite reads. Everything else is fixed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Prime for the 2-extension check; only 67 is expected to pass.
    pub paley_prime: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 0, paley_prime: 67 }
    }
}

type Check = fn(&SuiteConfig) -> Result<String, String>;

pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub limit: Duration,
    check: Check,
}

pub const CRITERIA: [Criterion; 10] = [
    Criterion { id: 1, name: "classification triple", limit: Duration::from_secs(1), check: classification },
    Criterion { id: 2, name: "paradoxical tournaments", limit: Duration::from_secs(60), check: paradoxical },
    Criterion { id: 3, name: "Paley tournaments", limit: Duration::from_secs(60), check: paley },
    Criterion { id: 4, name: "game soundness chain", limit: Duration::from_secs(300), check: soundness_chain },
    Criterion { id: 5, name: "type set reduction", limit: Duration::from_secs(60), check: type_reduction },
    Criterion { id: 6, name: "hard family phi_3", limit: Duration::from_secs(300), check: hard_family },
    Criterion { id: 7, name: "permutation decomposition", limit: Duration::from_secs(60), check: decomposition },
    Criterion { id: 8, name: "forall-UF translation", limit: Duration::from_secs(120), check: fauf },
    Criterion { id: 9, name: "constants reduction", limit: Duration::from_secs(60), check: constants },
    Criterion { id: 10, name: "witness-chain grid", limit: Duration::from_secs(60), check: grid },
];

/// Outcome of one criterion. `elapsed` is left out of the JSON so that
/// reports are reproducible byte for byte.
#[derive(Debug, Clone, Serialize)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub limit_secs: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Criterion {
    pub fn run(&self, cfg: &SuiteConfig) -> Outcome {
        let start = Instant::now();
        let result = (self.check)(cfg);
        let elapsed = start.elapsed();
        let (mut passed, mut detail) = match result {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        if passed && elapsed > self.limit {
            passed = false;
            detail = format!("{detail}; over the {:?} limit", self.limit);
        }
        Outcome {
            id: self.id,
            name: self.name,
            passed,
            detail,
            limit_secs: self.limit.as_secs(),
            elapsed,
        }
    }
}

pub fn criterion(id: u8) -> Option<&'static Criterion> {
    CRITERIA.iter().find(|c| c.id == id)
}

/// Runs the selected criteria (all when `only` is empty) in order.
pub fn run(cfg: &SuiteConfig, only: &[u8]) -> Vec<Outcome> {
    CRITERIA
        .iter()
        .filter(|c| only.is_empty() || only.contains(&c.id))
        .map(|c| c.run(cfg))
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn classification(_: &SuiteConfig) -> Result<String, String> {
    let parse = |s: &str| parse_formula(s).map(|p| classify(&p.formula)).map_err(err);
    let co = parse(examples::CO_AUTHORS)?;
    ensure(co.is_kbar() && co.grade == Some(3), || format!("co-authors: {:?} grade {:?}", co.classes, co.grade))?;
    let ma = parse(examples::MARRIAGE)?;
    ensure(ma.is_kbar() && ma.grade == Some(2) && !ma.is_skolem(), || {
        format!("marriage: {:?} grade {:?}", ma.classes, ma.grade)
    })?;
    let tr = parse(examples::TRANS)?;
    ensure(!tr.is_kbar(), || format!("transitivity classified as {:?}", tr.classes))?;
    Ok("co-authors K grade 3; marriage K grade 2, not Skolem; transitivity not K".into())
}

fn paradoxical(cfg: &SuiteConfig) -> Result<String, String> {
    ensure(verify_paradoxical(&three_cycle()).map_err(err)?.passed(), || "3-cycle rejected".into())?;
    let n = default_multiplicity(2, 1);
    let (t, attempts) = sample_paradoxical(2, 1, n, cfg.seed).map_err(err)?;
    ensure(attempts <= MAX_ATTEMPTS, || format!("{attempts} attempts"))?;
    // ℓ!·|ℛ| − 1 = 3 vertices for ℓ = 2 and two vertex colours.
    for seed in 0..50u64 {
        let small = sample_random_sized(3, 2, 2, cfg.seed.wrapping_add(seed)).map_err(err)?;
        ensure(!verify_paradoxical(&small).map_err(err)?.passed(), || {
            format!("3-vertex sample {seed} passed the verifier")
        })?;
    }
    Ok(format!(
        "3-cycle passes; sampler (n = {n}, {} vertices) passed after {attempts} attempt(s); 50 undersized samples fail",
        t.len()
    ))
}

fn paley(cfg: &SuiteConfig) -> Result<String, String> {
    let seven = ColourfulTournament::materialise(&build_paley(7).map_err(err)?).map_err(err)?;
    for a in 0..7 {
        for b in 0..7 {
            ensure(a == b || seven.arc(a, b) != seven.arc(b, a), || format!("Paley(7) arc {a},{b}"))?;
        }
    }
    ensure(verify_paradoxical(&seven).map_err(err)?.passed(), || "Paley(7) not 1-paradoxical".into())?;
    let p = cfg.paley_prime;
    let big = ColourfulTournament::materialise(&build_paley(p).map_err(|e| format!("Paley({p}): {e}"))?).map_err(err)?;
    ensure(verify_k_extension(&big, 2).passed(), || format!("Paley({p}) lacks the 2-extension property"))?;
    Ok(format!("Paley(7) antisymmetric and 1-paradoxical; Paley({p}) has the 2-extension property"))
}

fn pqr() -> Arc<Signature> {
    Arc::new(Signature::from_parts(Vec::<&str>::new(), [("P", 1), ("Q", 1), ("R", 2)]).expect("valid signature"))
}

fn sentence(sig: &Arc<Signature>, text: &str) -> Result<Formula, String> {
    parse_with_signature(text, (**sig).clone()).map(|p| p.formula).map_err(err)
}

fn grade_of(f: &Formula) -> Result<u32, String> {
    let p = to_prenex(f).map_err(err)?;
    Ok((p.specials.len() + p.word.len()) as u32)
}

pub const SATISFIABLE_CORPUS: [&str; 6] = [
    "forall x. exists y. R(x,y)",
    "forall x. exists y. (R(x,y) & ~R(y,x))",
    "forall x. exists y. ((P(x) | P(y)) & (~P(x) | ~P(y)) & R(x,y))",
    "forall x. exists y. forall z. (R(x,y) & (P(z) | Q(y)))",
    "forall x. exists y. (Q(y) & (P(x) -> R(x,y)))",
    "forall x. forall z. exists y. (R(x,y) & (R(z,y) | P(y)) & ~Q(y))",
];

pub const UNSATISFIABLE_CORPUS: [&str; 4] = [
    "forall x. exists y. (R(x,y) & ~R(x,y))",
    "forall x. (P(x) & ~P(x))",
    "forall x. exists y. ((P(x) -> Q(y)) & P(x) & ~Q(y))",
    "forall x. forall z. exists y. ((R(x,y) | R(z,y)) & ~R(x,y) & ~R(z,y))",
];

fn random_structure(sig: &Arc<Signature>, rng: &mut ChaCha8Rng) -> PartialStructure {
    let n = rng.gen_range(1..=3u32);
    let mut a = PartialStructure::empty_total(sig.clone(), n);
    for i in 1..=n {
        for r in ["P", "Q"] {
            if rng.gen_bool(0.5) {
                a.set_true_by_name(r, vec![Elem::Unnamed(i)]).expect("unary fact");
            }
        }
        for j in 1..=n {
            if rng.gen_bool(0.5) {
                a.set_true_by_name("R", vec![Elem::Unnamed(i), Elem::Unnamed(j)]).expect("binary fact");
            }
        }
    }
    a
}

fn soundness_chain(cfg: &SuiteConfig) -> Result<String, String> {
    let sig = pqr();
    let solver = SolveConfig::default();
    let mut built_sizes = Vec::new();
    for text in SATISFIABLE_CORPUS {
        let f = sentence(&sig, text)?;
        let found = bounded_model_search(sig.clone(), &f, &SearchConfig::default()).map_err(err)?;
        let a = found.model().ok_or_else(|| format!("no small model of {text}"))?;
        let beta = padded_beta(a, grade_of(&f)?).map_err(err)?;
        let game = Game::from_sentence(&f, &beta).map_err(err)?;
        let omega = match solve(&game, &solver).map_err(err)? {
            Solution::Eloisa(t) => t,
            Solution::Abelard(_) => return Err(format!("game lost on a model's types: {text}")),
        };
        let built = build_model_auto(&game, &omega, cfg.seed, &BuildConfig::default()).map_err(err)?;
        ensure(model_check_sentence(&built.structure, &f).map_err(err)?, || {
            format!("built structure is not a model of {text}")
        })?;
        built_sizes.push(built.structure.unnamed_size());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let tried: Vec<PartialStructure> = (0..6).map(|_| random_structure(&sig, &mut rng)).collect();
    let mut games = 0;
    for text in UNSATISFIABLE_CORPUS {
        let f = sentence(&sig, text)?;
        let g = grade_of(&f)?;
        for a in &tried {
            let beta = padded_beta(a, g).map_err(err)?;
            let game = Game::from_sentence(&f, &beta).map_err(err)?;
            ensure(!solve(&game, &solver).map_err(err)?.eloisa_wins(), || format!("Eloisa wins {text}"))?;
            games += 1;
        }
    }
    Ok(format!(
        "{} sentences built and checked (sizes {built_sizes:?}); {} contradictions lost in all {games} games",
        SATISFIABLE_CORPUS.len(),
        UNSATISFIABLE_CORPUS.len()
    ))
}

fn type_reduction(_: &SuiteConfig) -> Result<String, String> {
    let sig = pqr();
    // Q separates the two elements, but the matrix never mentions it.
    let mut a = PartialStructure::empty_total(sig.clone(), 2);
    a.set_true_by_name("Q", vec![Elem::Unnamed(1)]).map_err(err)?;
    for i in 1..=2 {
        for j in 1..=2 {
            a.set_true_by_name("R", vec![Elem::Unnamed(i), Elem::Unnamed(j)]).map_err(err)?;
        }
    }
    let f = sentence(&sig, "forall x. exists y. R(x,y)")?;
    let beta: OuterTypeSet = padded_beta(&a, 2).map_err(err)?;
    let game = Game::from_sentence(&f, &beta).map_err(err)?;
    let omega: StrategyTable = solve(&game, &SolveConfig::default())
        .map_err(err)?
        .strategy()
        .cloned()
        .ok_or("game lost on the model's own types")?;
    let red = reduce_type_set(&game, &omega, &SolveConfig::default()).map_err(err)?;
    let (before, after) = (beta.one_types().len(), red.beta.one_types().len());
    ensure(after < before, || format!("1-types {before} -> {after}"))?;
    let again = Game::new(game.prenex(), &red.beta).map_err(err)?;
    ensure(solve(&again, &SolveConfig::default()).map_err(err)?.eloisa_wins(), || {
        "reduced game lost".into()
    })?;
    Ok(format!("1-types {before} -> {after}, {} -> {} outer-types; Eloisa still wins", beta.len(), red.beta.len()))
}

fn hard_family(_: &SuiteConfig) -> Result<String, String> {
    let inst = gen_phi_n(3).map_err(err)?;
    let c = classify(&inst.formula);
    ensure(c.is_skolem() && c.grade == Some(5), || format!("{:?} grade {:?}", c.classes, c.grade))?;
    let sizes: Vec<usize> = (3..=6)
        .map(|n| gen_phi_n(n).map(|i| i.formula.size()))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let steps: Vec<usize> = sizes.windows(2).map(|w| w[1] - w[0]).collect();
    ensure(steps.windows(2).all(|w| w[0] == w[1]), || format!("sizes {sizes:?} not linear in n"))?;
    let m = prototypical_model(3).map_err(err)?;
    ensure(m.structure.unnamed_size() == 6, || format!("{} unnamed elements", m.structure.unnamed_size()))?;
    ensure(model_check_sentence(&m.structure, &inst.formula).map_err(err)?, || "model_check false".into())?;
    let w = distinct_witnesses(&m);
    ensure(w == 6, || format!("{w} distinct witnesses"))?;
    let chain = check_chain(&m);
    ensure(chain.passed() && chain.pairs_checked == 30, || {
        format!("chain: {} pairs, failures {:?}", chain.pairs_checked, chain.failures)
    })?;
    Ok(format!(
        "phi_3 K-Skolem grade 5, |phi_n| for n = 3..6: {sizes:?}; model of 6 unnamed elements checks; 6 witnesses; 30 chain pairs"
    ))
}

fn decomposition(_: &SuiteConfig) -> Result<String, String> {
    let mut pairs = 0;
    for n in 1..=5 {
        let perms = Permutation::all(n);
        for pi in &perms {
            for pi2 in &perms {
                pairs += 1;
                let d = decompose_permutation(pi, pi2).map_err(err)?;
                if pi == pi2 {
                    ensure(d.is_none(), || format!("decomposition of {pi:?} into itself"))?;
                    let brute = search_decompositions(pi, pi2).map_err(err)?;
                    ensure(brute.is_empty(), || format!("brute force decomposes {pi:?} into itself"))?;
                } else {
                    let d = d.ok_or_else(|| format!("no decomposition {pi:?} -> {pi2:?}"))?;
                    ensure(d.is_admissible() && &d.recompose(pi) == pi2, || {
                        format!("bad decomposition {pi:?} -> {pi2:?}: {d:?}")
                    })?;
                }
            }
        }
    }
    Ok(format!("{pairs} ordered pairs for n <= 5"))
}

fn elems(v: &[u32]) -> Vec<Elem> {
    v.iter().map(|&i| Elem::Unnamed(i)).collect()
}

/// Small models of uniform sentences for the expansion recipe.
fn hand_built_models() -> Result<Vec<(maslov_folib::Parsed, PartialStructure)>, String> {
    let lost = parse_formula(examples::LOST_PROOF).map_err(err)?;
    let mut a = PartialStructure::empty_total(Arc::new(lost.signature.clone()), 4);
    for (r, t) in [
        ("assertion", &[1][..]),
        ("scientist", &[2]),
        ("claims", &[2, 1]),
        ("proof_of", &[3, 1]),
        ("found", &[2, 3]),
        ("margin", &[4]),
        ("contains", &[4, 3]),
        ("too_small", &[4]),
    ] {
        a.set_true_by_name(r, elems(t)).map_err(err)?;
    }

    let serial = parse_formula("forall x. exists y. R(x,y) & (forall z. R(y,z) | P(z))").map_err(err)?;
    let mut b = PartialStructure::empty_total(Arc::new(serial.signature.clone()), 2);
    for t in [[1, 2], [2, 2], [2, 1]] {
        b.set_true_by_name("R", elems(&t)).map_err(err)?;
    }

    let uniform = parse_formula("const c; forall x y. (R(x,y) | ~R(y,x)) & (P(x) | Q(y) | P(c)) & exists z. R(z,x)")
        .map_err(err)?;
    let mut c = PartialStructure::empty_total(Arc::new(uniform.signature.clone()), 3);
    let k = Elem::Const(0);
    for i in 1..=3 {
        for j in 1..=3 {
            c.set_true_by_name("R", elems(&[i, j])).map_err(err)?;
        }
        c.set_true_by_name("R", vec![k, Elem::Unnamed(i)]).map_err(err)?;
        c.set_true_by_name("R", vec![Elem::Unnamed(i), k]).map_err(err)?;
    }
    c.set_true_by_name("R", vec![k, k]).map_err(err)?;
    c.set_true_by_name("P", vec![k]).map_err(err)?;

    Ok(vec![(lost, a), (serial, b), (uniform, c)])
}

fn fauf(_: &SuiteConfig) -> Result<String, String> {
    let p = parse_formula(examples::LOST_PROOF).map_err(err)?;
    let t = translate_fauf(&p.formula, &p.signature).map_err(err)?;
    for c in t.conjuncts() {
        ensure(classify(&c).is_skolem(), || format!("conjunct not K-Skolem: {c}"))?;
    }
    let out = bounded_model_search(t.signature_arc(), &t.formula(), &SearchConfig::default()).map_err(err)?;
    let m = out.model().ok_or_else(|| format!("no model of the translation: {out:?}"))?;
    let reduct = m.reduct(Arc::new(p.signature.clone())).map_err(err)?;
    ensure(model_check_sentence(&reduct, &p.formula).map_err(err)?, || "reduct is not a model".into())?;
    let models = hand_built_models()?;
    for (parsed, model) in &models {
        ensure(model_check_sentence(model, &parsed.formula).map_err(err)?, || {
            format!("hand-built structure is not a model of {}", parsed.formula)
        })?;
        let t = translate_fauf(&parsed.formula, &parsed.signature).map_err(err)?;
        let e = expand_translation_model(model, &t).map_err(err)?;
        ensure(model_check_sentence(&e, &t.formula()).map_err(err)?, || {
            format!("expansion fails for {}", parsed.formula)
        })?;
    }
    Ok(format!(
        "{} conjuncts, all K-Skolem; model with {} unnamed elements, reduct checks; {} expansions check",
        t.conjuncts().len(),
        m.unnamed_size(),
        models.len()
    ))
}

pub const THREE_CONSTANT_FORMULAS: [&str; 4] = [
    "const a b c; R(a,b) & ~R(b,c) & forall x. (R(x,a) -> P(x))",
    "const a b c; (P(a) & ~P(b)) | (R(c,c) & ~R(a,a))",
    "const a b c; forall x. (P(x) -> R(x,a)) & P(b) & ~R(c,a) & P(c)",
    "const a b c; forall x. (R(a,x) | R(b,x) | R(c,x)) & ~P(a) & (P(b) | P(c))",
];

fn constants(_: &SuiteConfig) -> Result<String, String> {
    let search = SearchConfig { max_size: 2, ..SearchConfig::default() };
    let mut satisfiable = 0;
    for src in THREE_CONSTANT_FORMULAS {
        let p = parse_formula(src).map_err(err)?;
        let consts = p.signature.constants().to_vec();
        let parts = enumerate_partitions(&consts).map_err(err)?;
        ensure(parts.len() == 5, || format!("{} partitions", parts.len()))?;
        let direct = bounded_model_search(Arc::new(p.signature.clone()), &p.formula, &search).map_err(err)?;
        for part in &parts {
            let (g, sig) = reduce_with_signature(&p.formula, &p.signature, part).map_err(err)?;
            ensure(g.size() == p.formula.size(), || format!("size changed for {:?} in {src}", part.blocks()))?;
            let out = bounded_model_search(sig, &g, &search).map_err(err)?;
            if part.is_identity() {
                ensure(out.model().is_some() == direct.model().is_some(), || {
                    format!("identity partition disagrees with direct search on {src}")
                })?;
            }
            if let Some(b) = out.model() {
                let e = expand_model(b, &g, part, &p.signature).map_err(err)?;
                ensure(e.satisfies(&p.formula).map_err(err)?, || {
                    format!("expansion for {:?} fails {src}", part.blocks())
                })?;
                ensure(&e.induced_partition(&consts) == part, || "expansion induces another partition".into())?;
                satisfiable += 1;
            }
        }
    }
    Ok(format!(
        "{} formulas x 5 partitions keep their size; {satisfiable} satisfiable reductions expand to models",
        THREE_CONSTANT_FORMULAS.len()
    ))
}

fn grid(cfg: &SuiteConfig) -> Result<String, String> {
    let sig = pqr();
    let f = sentence(&sig, "forall x. exists z1. exists z2. (R(x,z1) & R(z1,z2) & ~R(z2,x) & (P(z1) | P(z2)))")?;
    let mut a = PartialStructure::empty_total(sig.clone(), 3);
    for (r, t) in [("R", &[1, 2][..]), ("R", &[2, 3]), ("R", &[3, 1]), ("P", &[2]), ("P", &[3])] {
        a.set_true_by_name(r, elems(t)).map_err(err)?;
    }
    let beta = padded_beta(&a, grade_of(&f)?).map_err(err)?;
    let game = Game::from_sentence(&f, &beta).map_err(err)?;
    let omega = solve(&game, &SolveConfig::default())
        .map_err(err)?
        .strategy()
        .cloned()
        .ok_or("grid toy game lost")?;
    let pc = position_colours(&game, &omega).map_err(err)?;
    let base = sample_grid_base(&game, &pc, cfg.seed, 256).map_err(err)?;
    let (model, grid) = build_model_param_skolem(&game, &omega, &base, &BuildConfig::default()).map_err(err)?;
    ensure(grid.chains_hold(1), || "witness chains broken".into())?;
    ensure(model_check_sentence(&model.structure, &f).map_err(err)?, || "grid model fails the sentence".into())?;
    Ok(format!(
        "{}x{} grid over {} vertices; chains hold; model checks",
        grid.rows,
        grid.cols,
        grid.tournament.len()
    ))
}
