//! The generated sentences, their prototypical models, and the chain of
//! facts that separates the witnesses.

use std::time::Instant;

use maslov_folib::{model_check_sentence, Elem, Quant};
use maslov_fragments::{classify, to_prenex, FragmentClass};
use maslov_hardfam::*;

#[test]
fn phi_3_shape() {
    let inst = gen_phi_n(3).unwrap();
    let f = &inst.formula;
    assert_eq!(f.count_quantifiers(Quant::Forall), 5);
    assert_eq!(f.count_quantifiers(Quant::Exists), 1);
    assert_eq!(f.constants().len(), 5);
    assert!(f.relations().values().all(|&a| a == 7));
    assert_eq!(f.relations().len(), 6);
    let c = classify(f);
    assert!(c.is_kbar() && c.is_skolem(), "{:?}", c.diagnostics);
    assert_eq!(c.grade, Some(5));
    assert_eq!(c.universal_count, 5);
}

#[test]
fn grades_and_linear_size() {
    let mut sizes = Vec::new();
    for n in 3..=9 {
        let inst = gen_phi_n(n).unwrap();
        let c = classify(&inst.formula);
        assert!(c.is_skolem());
        assert_eq!(c.grade, Some(2 * n - 1));
        assert_eq!(inst.formula.count_quantifiers(Quant::Exists), 1);
        sizes.push(inst.formula.size() as i64);
    }
    let steps: Vec<i64> = sizes.windows(2).map(|w| w[1] - w[0]).collect();
    assert!(steps.windows(2).all(|w| w[0] == w[1]), "sizes {sizes:?} are not affine in n");
    // Atom count does not depend on n.
    let atoms: Vec<usize> = (3..=9).map(|n| gen_phi_n(n).unwrap().formula.atoms().len()).collect();
    assert!(atoms.iter().all(|&a| a == atoms[0]));
}

#[test]
fn constant_free_shape() {
    for n in 3..=6 {
        let inst = gen_phi_n_constant_free(n).unwrap();
        let f = &inst.formula;
        assert!(f.constants().is_empty());
        assert_eq!(f.count_quantifiers(Quant::Forall), 2 * n + 1);
        assert_eq!(f.count_quantifiers(Quant::Exists), 1);
        let c = classify(f);
        assert!(c.is_kbar() && c.contains(FragmentClass::KbarSkolem), "{:?}", c.diagnostics);
        assert_eq!(c.grade, Some(2 * n + 1));
        let p = to_prenex(f).unwrap();
        let specials: std::collections::BTreeSet<_> = p.specials.iter().map(|v| v.0.clone()).collect();
        for a in f.atoms() {
            let vars: std::collections::BTreeSet<_> = a.vars().into_iter().map(|v| v.0.clone()).collect();
            assert!(
                vars == specials || vars.contains("w") || vars.len() == 1,
                "atom {a:?} has neither all specials nor w"
            );
        }
    }
}

#[test]
fn small_n_is_refused() {
    assert_eq!(gen_phi_n(2).unwrap_err(), HardError::TooSmall(2));
    assert!(gen_phi_n_constant_free(1).is_err());
    assert!(matches!(prototypical_model(5), Err(HardError::TooLarge { n: 5, max: 4 })));
}

#[test]
fn prototypical_model_of_phi_3() {
    let m = prototypical_model(3).unwrap();
    assert_eq!(m.structure.unnamed_size(), 6);
    assert_eq!(m.structure.domain().len(), 11);
    let start = Instant::now();
    assert!(model_check_sentence(&m.structure, &m.instance.formula).unwrap());
    eprintln!("model check of phi_3 took {:?}", start.elapsed());
    assert_eq!(distinct_witnesses(&m), 6);
    for pi in &m.permutations {
        assert_eq!(m.witnesses_of(pi), vec![m.witness(pi)]);
    }
    let chain = check_chain(&m);
    assert_eq!(chain.pairs_checked, 30);
    assert!(chain.passed(), "{:?}", chain.failures);
}

#[test]
fn chain_and_distinctness_for_n_4() {
    let m = prototypical_model(4).unwrap();
    assert_eq!(m.structure.unnamed_size(), 24);
    assert_eq!(distinct_witnesses(&m), 24);
    let chain = check_chain(&m);
    assert_eq!(chain.pairs_checked, 24 * 23);
    assert!(chain.passed());
}

#[test]
fn removing_a_fact_breaks_the_model() {
    let m = prototypical_model(3).unwrap();
    let g = Permutation::cycle(3);
    let pi = Permutation::identity(3);
    let t = m.tuple(&pi.compose(&g), m.witness(&pi), 1);
    let mut broken = maslov_folib::PartialStructure::empty_total(m.structure.signature_arc().clone(), 6);
    let cr = m.structure.signature().relation_id("Cr").unwrap();
    for (r, u) in m.structure.iter_true() {
        if !(r == cr && *u == t) {
            broken.set_true(r, u.clone()).unwrap();
        }
    }
    assert!(!model_check_sentence(&broken, &m.instance.formula).unwrap());
}

#[test]
fn constant_free_model_of_phi_3() {
    let m = prototypical_model_constant_free(3).unwrap();
    assert_eq!(m.structure.unnamed_size(), 11);
    assert!(m.structure.domain().iter().all(|e| !matches!(e, Elem::Const(_))));
    let start = Instant::now();
    assert!(model_check_sentence(&m.structure, &m.instance.formula).unwrap());
    eprintln!("model check of constant-free phi_3 took {:?}", start.elapsed());
    assert_eq!(distinct_witnesses(&m), 6);
    assert!(check_chain(&m).passed());
}

/// Plain recursive evaluation, independent of the compiled evaluator.
fn naive(a: &maslov_folib::PartialStructure, f: &maslov_folib::Formula, env: &mut Vec<(String, Elem)>) -> bool {
    use maslov_folib::{Formula, Term};
    match f {
        Formula::Atom(at) => {
            let tuple: Vec<Elem> = at
                .args
                .iter()
                .map(|t| match t {
                    Term::Var(v) => env.iter().rev().find(|(n, _)| *n == v.0).unwrap().1,
                    Term::Const(c) => Elem::Const(a.signature().constant_id(c).unwrap().0),
                })
                .collect();
            a.value_by_name(&at.rel, &tuple).unwrap().unwrap()
        }
        Formula::Not(x) => !naive(a, x, env),
        Formula::And(x, y) => naive(a, x, env) && naive(a, y, env),
        Formula::Or(x, y) => naive(a, x, env) || naive(a, y, env),
        Formula::Implies(x, y) => !naive(a, x, env) || naive(a, y, env),
        Formula::Forall(v, b) | Formula::Exists(v, b) => {
            let universal = matches!(f, Formula::Forall(..));
            for e in a.domain() {
                env.push((v.0.clone(), e));
                let r = naive(a, b, env);
                env.pop();
                if r != universal {
                    return !universal;
                }
            }
            universal
        }
    }
}

#[test]
fn phi_3_holds_under_plain_evaluation() {
    let m = prototypical_model(3).unwrap();
    assert!(naive(&m.structure, &m.instance.formula, &mut Vec::new()));
}
