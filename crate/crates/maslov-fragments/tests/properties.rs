//! Classification and prenex conversion against brute-force oracles.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use maslov_folib::{
    model_check_sentence, parse_formula, Elem, Formula, PartialStructure, Quant, Signature, Term,
    Var,
};
use maslov_fragments::*;
use proptest::prelude::*;

fn var_name(i: u8) -> Var {
    Var::new(["x", "y", "z", "u"][i as usize % 4])
}

/// Sentences with negation on atoms only, over P/1, Q/1, R/2.
fn sentence() -> impl Strategy<Value = Formula> {
    let leaf = (0u8..3, 0u8..4, 0u8..4, any::<bool>()).prop_map(|(r, a, b, neg)| {
        let at = match r {
            0 => Formula::atom("P", vec![Term::Var(var_name(a))]),
            1 => Formula::atom("Q", vec![Term::Var(var_name(a))]),
            _ => Formula::atom("R", vec![Term::Var(var_name(a)), Term::Var(var_name(b))]),
        };
        if neg {
            Formula::not(at)
        } else {
            at
        }
    });
    leaf.prop_recursive(5, 32, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (0u8..4, inner.clone()).prop_map(|(v, b)| Formula::forall(var_name(v), b)),
            (0u8..4, inner).prop_map(|(v, b)| Formula::exists(var_name(v), b)),
        ]
    })
    .prop_map(|f| {
        let free: Vec<Var> = f.free_vars().into_iter().collect();
        free.into_iter().rev().fold(f, |acc, v| Formula::forall(v, acc)).rectify()
    })
}

/// Prefixes recomputed from scratch: (quantifier, variable, under ∃) per
/// binder on the path, filtered per atom.
fn oracle_prefixes(f: &Formula) -> (Vec<Vec<(Quant, Var)>>, BTreeMap<Var, (Quant, bool)>) {
    fn go(
        f: &Formula,
        path: &mut Vec<(Quant, Var)>,
        atoms: &mut Vec<Vec<(Quant, Var)>>,
        binders: &mut BTreeMap<Var, (Quant, bool)>,
    ) {
        match f {
            Formula::Atom(a) => {
                let vs = a.var_set();
                atoms.push(path.iter().filter(|(_, v)| vs.contains(v)).cloned().collect());
            }
            Formula::Not(g) => go(g, path, atoms, binders),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                go(a, path, atoms, binders);
                go(b, path, atoms, binders);
            }
            Formula::Forall(v, b) | Formula::Exists(v, b) => {
                let q = if matches!(f, Formula::Forall(..)) { Quant::Forall } else { Quant::Exists };
                let under = path.iter().any(|(q, _)| *q == Quant::Exists);
                binders.insert(v.clone(), (q, under));
                path.push((q, v.clone()));
                go(b, path, atoms, binders);
                path.pop();
            }
        }
    }
    let mut atoms = Vec::new();
    let mut binders = BTreeMap::new();
    go(f, &mut Vec::new(), &mut atoms, &mut binders);
    (atoms, binders)
}

/// Membership in K̄ straight from the definition: try every set of
/// eligible universals as the special variables.
fn oracle_kbar(f: &Formula) -> Option<BTreeSet<usize>> {
    let (atoms, binders) = oracle_prefixes(f);
    let eligible: Vec<&Var> = binders
        .iter()
        .filter(|(_, (q, under))| *q == Quant::Forall && !under)
        .map(|(v, _)| v)
        .collect();
    let mut grades = BTreeSet::new();
    for mask in 0u32..(1 << eligible.len()) {
        let s: BTreeSet<&Var> = eligible
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, v)| *v)
            .collect();
        let ok = atoms.iter().all(|p| {
            p.len() <= 1
                || p.last().unwrap().0 == Quant::Exists
                || (p.iter().all(|(q, _)| *q == Quant::Forall)
                    && p.iter().map(|(_, v)| v).collect::<BTreeSet<_>>() == s)
        });
        if ok {
            grades.insert(s.len());
        }
    }
    (!grades.is_empty()).then_some(grades)
}

fn all_structures(sig: &Arc<Signature>, k: u32) -> Vec<PartialStructure> {
    let base = PartialStructure::empty_total(sig.clone(), k);
    let dom = base.domain();
    let mut cells: Vec<(&str, Vec<Elem>)> = Vec::new();
    for a in &dom {
        cells.push(("P", vec![*a]));
        cells.push(("Q", vec![*a]));
        for b in &dom {
            cells.push(("R", vec![*a, *b]));
        }
    }
    (0u32..1 << cells.len())
        .map(|mask| {
            let mut s = base.clone();
            for (i, (r, t)) in cells.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    s.set_true_by_name(r, t.clone()).unwrap();
                }
            }
            s
        })
        .collect()
}

fn small_sig() -> Arc<Signature> {
    Arc::new(Signature::from_parts(Vec::<String>::new(), [("P", 1), ("Q", 1), ("R", 2)]).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn kbar_membership_matches_the_definition(f in sentence()) {
        let c = classify(&f);
        let oracle = oracle_kbar(&f);
        prop_assert_eq!(c.is_kbar(), oracle.is_some(), "{} {:?}", f, c.diagnostics);
        if let (Some(g), Some(grades)) = (c.grade, oracle) {
            prop_assert!(grades.contains(&g));
        }
    }

    #[test]
    fn class_implications_hold(f in sentence()) {
        let c = classify(&f);
        if c.is_skolem() { prop_assert!(c.is_kbar()); }
        if c.contains(FragmentClass::Ackermann) { prop_assert!(c.contains(FragmentClass::KbarForall(1))); }
        if c.contains(FragmentClass::Godel) { prop_assert!(c.contains(FragmentClass::KbarForall(2))); }
        if c.is_kbar() {
            prop_assert!(c.contains(FragmentClass::DKbar));
            prop_assert_eq!(c.grade, Some(c.specials.len()));
        }
    }

    #[test]
    fn prenex_is_a_classification_fixed_point(f in sentence()) {
        let c = classify(&f);
        prop_assume!(c.is_kbar());
        let p = to_prenex(&f).unwrap();
        let again = classify(&p.to_formula());
        prop_assert!(again.is_kbar());
        prop_assert_eq!(again.grade, Some(p.grade()));
        if p.dummy.is_none() {
            prop_assert_eq!(again.grade, c.grade);
            // Prenexing may leave the uniform fragment; everything else is kept.
            let strip = |s: &BTreeSet<FragmentClass>| -> BTreeSet<FragmentClass> {
                s.iter().copied().filter(|k| *k != FragmentClass::ForallUf).collect()
            };
            prop_assert_eq!(strip(&again.classes), strip(&c.classes));
        }
        prop_assert_eq!(c.is_skolem(), p.is_skolem_shape());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn prenex_preserves_truth_on_small_structures(f in sentence()) {
        prop_assume!(classify(&f).is_kbar());
        let g = to_prenex(&f).unwrap().to_formula();
        let sig = small_sig();
        for k in 1..=2 {
            for a in all_structures(&sig, k) {
                prop_assert_eq!(
                    model_check_sentence(&a, &f).unwrap(),
                    model_check_sentence(&a, &g).unwrap()
                );
            }
        }
    }
}

#[test]
fn worked_examples_classify_as_documented() {
    let expect: [(&str, Option<usize>, bool); 4] = [
        ("co_authors", Some(3), true),
        ("marriage", Some(2), false),
        ("trans", None, false),
        ("infinity_axiom", None, false),
    ];
    for (name, grade, skolem) in expect {
        let src = examples::ALL.iter().find(|(n, _)| *n == name).unwrap().1;
        let c = classify(&parse_formula(src).unwrap().formula);
        assert_eq!(c.grade, grade, "{name}");
        assert_eq!(c.is_skolem(), skolem, "{name}");
    }
}

#[test]
fn classification_serialises_to_json() {
    let c = classify(&parse_formula(examples::CO_AUTHORS).unwrap().formula);
    let v = serde_json::to_value(&c).unwrap();
    assert_eq!(v["grade"], 3);
    assert_eq!(v["universal_count"], 3);
    assert!(v["classes"].as_array().unwrap().len() >= 3);
}

#[test]
fn marriage_prenex_keeps_alternation() {
    let f = parse_formula(examples::MARRIAGE).unwrap().formula;
    let p = to_prenex(&f).unwrap();
    let quants: Vec<Quant> = p.word.iter().map(|(q, _)| *q).collect();
    assert_eq!(quants, [Quant::Exists, Quant::Forall, Quant::Exists]);
    assert!(!p.is_skolem_shape());
}
