//! 1-types, outer-types, hull-types and type sets.
//!
//! A type of grade `k` is a partial structure over the unnamed elements
//! `1..=k` plus the constants. Which tuples it defines depends on its
//! kind: a hull-type defines exactly the tuples whose unnamed elements
//! are all of `1..=k`; an outer-type additionally defines every tuple
//! with at most one unnamed element. The 0-type (grade 0) describes the
//! constants alone.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{FolError, Result};
use crate::signature::{RelId, Signature};
use crate::structure::{support_of, Definedness, Elem, PartialStructure, Support};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum TypeKind {
    /// Grade-1 type; 1-types, 1-outer-types and 1-hull-types coincide.
    One,
    Outer(u32),
    Hull(u32),
}

impl TypeKind {
    pub fn grade(self) -> u32 {
        match self {
            TypeKind::One => 1,
            TypeKind::Outer(k) | TypeKind::Hull(k) => k,
        }
    }
}

/// Supports defined by an outer-type of grade `k`.
pub fn outer_supports(k: u32) -> BTreeSet<Support> {
    let mut s: BTreeSet<Support> = BTreeSet::new();
    s.insert(vec![]);
    for i in 1..=k {
        s.insert(vec![i]);
    }
    s.insert((1..=k).collect());
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TypeAtom {
    kind: TypeKind,
    body: PartialStructure,
}

impl PartialOrd for TypeAtom {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TypeAtom {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.grade(), self.kind, &self.body).cmp(&(other.grade(), other.kind, &other.body))
    }
}

impl TypeAtom {
    /// Wraps a structure, checking that its defined part matches `kind`.
    pub fn new(kind: TypeKind, body: PartialStructure) -> Result<Self> {
        let k = kind.grade();
        if body.unnamed_size() != k {
            return Err(FolError::InvalidStructure(format!(
                "type of grade {k} over {} unnamed elements",
                body.unnamed_size()
            )));
        }
        let want = match kind {
            TypeKind::One | TypeKind::Outer(_) => outer_supports(k),
            TypeKind::Hull(k) => [(1..=k).collect::<Vec<u32>>()].into_iter().collect(),
        };
        match body.definedness() {
            Definedness::BySupport(s) if *s == want => {}
            Definedness::Total if kind == TypeKind::Outer(0) => {}
            _ => {
                return Err(FolError::InvalidStructure(format!(
                    "definedness does not match {kind:?}"
                )))
            }
        }
        let kind = if kind == TypeKind::Outer(1) {
            TypeKind::One
        } else {
            kind
        };
        let body = if let Definedness::Total = body.definedness() {
            let mut b = PartialStructure::empty_partial(body.signature_arc().clone(), 0, want);
            for (r, t) in body.iter_true() {
                b.insert_unchecked(r, t.clone());
            }
            b
        } else {
            body
        };
        Ok(TypeAtom { kind, body })
    }

    /// Builds a type from raw true tuples; tuples must lie in the defined
    /// part of `kind`.
    pub fn from_truths(
        sig: Arc<Signature>,
        kind: TypeKind,
        truths: impl IntoIterator<Item = (RelId, Vec<Elem>)>,
    ) -> Result<Self> {
        let k = kind.grade();
        let supports = match kind {
            TypeKind::One | TypeKind::Outer(_) => outer_supports(k),
            TypeKind::Hull(k) => [(1..=k).collect::<Vec<u32>>()].into_iter().collect(),
        };
        let mut body = PartialStructure::empty_partial(sig, k, supports);
        for (r, t) in truths {
            body.set_true(r, t)?;
        }
        TypeAtom::new(kind, body)
    }

    pub fn kind(&self) -> TypeKind {
        self.kind
    }

    pub fn grade(&self) -> u32 {
        self.kind.grade()
    }

    pub fn body(&self) -> &PartialStructure {
        &self.body
    }

    pub fn is_hull(&self) -> bool {
        matches!(self.kind, TypeKind::Hull(_))
    }

    /// The 0-type induced on the constants.
    pub fn zero_projection(&self) -> TypeAtom {
        let truths: Vec<(RelId, Vec<Elem>)> = self
            .body
            .iter_true()
            .filter(|(_, t)| t.iter().all(|e| e.is_const()))
            .map(|(r, t)| (r, t.clone()))
            .collect();
        TypeAtom::from_truths(self.body.signature_arc().clone(), TypeKind::Outer(0), truths)
            .expect("constant tuples are defined in a 0-type")
    }

    /// The 1-type of unnamed element `i` (1-based). Not available for
    /// hull-types.
    pub fn one_projection(&self, i: u32) -> Result<TypeAtom> {
        if self.is_hull() || i == 0 || i > self.grade() {
            return Err(FolError::Invalid(format!(
                "no 1-type projection {i} of a {:?}",
                self.kind
            )));
        }
        let truths: Vec<(RelId, Vec<Elem>)> = self
            .body
            .iter_true()
            .filter(|(_, t)| {
                let s = support_of(t);
                s.is_empty() || s == [i]
            })
            .map(|(r, t)| {
                (
                    r,
                    t.iter()
                        .map(|e| match e {
                            Elem::Unnamed(_) => Elem::Unnamed(1),
                            c => *c,
                        })
                        .collect(),
                )
            })
            .collect();
        TypeAtom::from_truths(self.body.signature_arc().clone(), TypeKind::One, truths)
    }

    /// 1-type projections in coordinate order.
    pub fn one_types(&self) -> Vec<TypeAtom> {
        (1..=self.grade())
            .map(|i| self.one_projection(i).expect("coordinate in range"))
            .collect()
    }

    /// Image under the coordinate map `i -> sigma[i-1]`.
    pub fn permuted(&self, sigma: &[u32]) -> TypeAtom {
        TypeAtom {
            kind: self.kind,
            body: self.body.relabel(sigma, self.grade()),
        }
    }

    /// True tuples whose unnamed elements are all of `1..=k`.
    pub fn hull_truths(&self) -> Vec<(RelId, Vec<Elem>)> {
        let full: Vec<u32> = (1..=self.grade()).collect();
        self.body
            .iter_true()
            .filter(|(_, t)| support_of(t) == full)
            .map(|(r, t)| (r, t.clone()))
            .collect()
    }

    /// The hull-type part of an outer-type.
    pub fn hull(&self) -> TypeAtom {
        let k = self.grade();
        TypeAtom::from_truths(
            self.body.signature_arc().clone(),
            TypeKind::Hull(k),
            self.hull_truths(),
        )
        .expect("hull tuples are defined")
    }

    /// Outer-type assembled from a 0-type, a sequence of 1-types and the
    /// true tuples of a hull over `1..=k` (k = number of 1-types).
    pub fn assemble(
        zero: &TypeAtom,
        ones: &[&TypeAtom],
        hull: impl IntoIterator<Item = (RelId, Vec<Elem>)>,
    ) -> Result<TypeAtom> {
        let k = ones.len() as u32;
        let sig = zero.body.signature_arc().clone();
        let mut truths: Vec<(RelId, Vec<Elem>)> =
            zero.body.iter_true().map(|(r, t)| (r, t.clone())).collect();
        for (i, one) in ones.iter().enumerate() {
            if one.zero_projection() != *zero {
                return Err(FolError::Invalid("1-type disagrees with the 0-type".into()));
            }
            for (r, t) in one.body.iter_true() {
                if t.iter().any(|e| !e.is_const()) {
                    truths.push((
                        r,
                        t.iter()
                            .map(|e| match e {
                                Elem::Unnamed(_) => Elem::Unnamed(i as u32 + 1),
                                c => *c,
                            })
                            .collect(),
                    ));
                }
            }
        }
        if k >= 2 {
            truths.extend(hull);
        }
        let kind = match k {
            0 => TypeKind::Outer(0),
            1 => TypeKind::One,
            k => TypeKind::Outer(k),
        };
        TypeAtom::from_truths(sig, kind, truths)
    }

    /// Human-readable description.
    pub fn describe(&self) -> BTreeMap<String, Vec<String>> {
        self.body.describe()
    }
}

/// True tuples of a structure grouped by support.
pub struct SupportIndex<'a> {
    a: &'a PartialStructure,
    by_support: HashMap<Support, Vec<(RelId, &'a Vec<Elem>)>>,
}

impl<'a> SupportIndex<'a> {
    pub fn new(a: &'a PartialStructure) -> Self {
        let mut by_support: HashMap<Support, Vec<(RelId, &'a Vec<Elem>)>> = HashMap::new();
        for (r, t) in a.iter_true() {
            by_support.entry(support_of(t)).or_default().push((r, t));
        }
        SupportIndex { a, by_support }
    }

    pub fn structure(&self) -> &PartialStructure {
        self.a
    }

    /// Supports carrying at least one true tuple.
    pub fn nonempty_supports(&self) -> impl Iterator<Item = &Support> + '_ {
        self.by_support.keys()
    }

    fn check(&self, elems: &[u32]) -> Result<()> {
        for (i, e) in elems.iter().enumerate() {
            if *e == 0 || *e > self.a.unnamed_size() {
                return Err(FolError::OutOfDomain(e.to_string()));
            }
            if elems[..i].contains(e) {
                return Err(FolError::RepeatedElement(e.to_string()));
            }
        }
        Ok(())
    }

    fn require_defined(&self, s: &[u32]) -> Result<()> {
        if self.a.is_defined_support(s) {
            Ok(())
        } else {
            Err(FolError::UndefinedAtom(format!("support {s:?} is not defined")))
        }
    }

    /// Tuples with support exactly `set(elems)`, relabelled `elems[i] -> i+1`.
    fn relabelled(&self, elems: &[u32], support: &[u32]) -> Vec<(RelId, Vec<Elem>)> {
        let Some(list) = self.by_support.get(support) else {
            return Vec::new();
        };
        list.iter()
            .map(|(r, t)| {
                (
                    *r,
                    t.iter()
                        .map(|e| match e {
                            Elem::Unnamed(x) => {
                                let pos = elems.iter().position(|y| y == x).expect("in support");
                                Elem::Unnamed(pos as u32 + 1)
                            }
                            c => *c,
                        })
                        .collect(),
                )
            })
            .collect()
    }

    pub fn zero_type(&self) -> Result<TypeAtom> {
        self.require_defined(&[])?;
        TypeAtom::from_truths(
            self.a.signature_arc().clone(),
            TypeKind::Outer(0),
            self.relabelled(&[], &[]),
        )
    }

    pub fn one_type(&self, e: u32) -> Result<TypeAtom> {
        self.outer_type(&[e])
    }

    /// Outer-type of a tuple of distinct unnamed elements.
    pub fn outer_type(&self, elems: &[u32]) -> Result<TypeAtom> {
        self.check(elems)?;
        let k = elems.len() as u32;
        let mut truths = self.relabelled(&[], &[]);
        self.require_defined(&[])?;
        for e in elems {
            self.require_defined(&[*e])?;
            truths.extend(self.relabelled(elems, &[*e]));
        }
        if k >= 2 {
            let mut s = elems.to_vec();
            s.sort_unstable();
            self.require_defined(&s)?;
            truths.extend(self.relabelled(elems, &s));
        }
        let kind = match k {
            0 => TypeKind::Outer(0),
            1 => TypeKind::One,
            k => TypeKind::Outer(k),
        };
        TypeAtom::from_truths(self.a.signature_arc().clone(), kind, truths)
    }

    /// Hull-type of a tuple of distinct unnamed elements.
    pub fn hull_type(&self, elems: &[u32]) -> Result<TypeAtom> {
        self.check(elems)?;
        let mut s = elems.to_vec();
        s.sort_unstable();
        self.require_defined(&s)?;
        let k = elems.len() as u32;
        let kind = if k == 1 { TypeKind::One } else { TypeKind::Hull(k) };
        if k == 1 {
            return self.outer_type(elems);
        }
        TypeAtom::from_truths(self.a.signature_arc().clone(), kind, self.relabelled(elems, &s))
    }
}

/// Outer-type of `elems` (distinct unnamed elements, 1-based) in `a`.
pub fn outer_type_of(a: &PartialStructure, elems: &[u32]) -> Result<TypeAtom> {
    SupportIndex::new(a).outer_type(elems)
}

/// A set of outer-types of grade at most `max_grade`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OuterTypeSet {
    members: BTreeSet<TypeAtom>,
    max_grade: u32,
}

impl OuterTypeSet {
    pub fn new(max_grade: u32) -> Self {
        OuterTypeSet {
            members: BTreeSet::new(),
            max_grade,
        }
    }

    pub fn from_members(max_grade: u32, members: impl IntoIterator<Item = TypeAtom>) -> Result<Self> {
        let mut s = OuterTypeSet::new(max_grade);
        for m in members {
            s.insert(m)?;
        }
        Ok(s)
    }

    pub fn insert(&mut self, t: TypeAtom) -> Result<bool> {
        if t.is_hull() {
            return Err(FolError::Invalid("type sets hold outer-types only".into()));
        }
        if t.grade() > self.max_grade {
            return Err(FolError::Invalid(format!(
                "grade {} exceeds the maximum {}",
                t.grade(),
                self.max_grade
            )));
        }
        Ok(self.members.insert(t))
    }

    pub fn max_grade(&self) -> u32 {
        self.max_grade
    }

    pub fn members(&self) -> &BTreeSet<TypeAtom> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, t: &TypeAtom) -> bool {
        self.members.contains(t)
    }

    pub fn of_grade(&self, k: u32) -> impl Iterator<Item = &TypeAtom> + '_ {
        self.members.iter().filter(move |t| t.grade() == k)
    }

    /// The 1-types (β_*), in the set's order.
    pub fn one_types(&self) -> Vec<&TypeAtom> {
        self.of_grade(1).collect()
    }

    /// The common 0-type when the set is consistent.
    pub fn zero_type(&self) -> Option<TypeAtom> {
        let mut it = self.members.iter().map(|t| t.zero_projection());
        let first = it.next()?;
        if it.all(|z| z == first) {
            Some(first)
        } else {
            None
        }
    }

    pub fn is_consistent(&self) -> bool {
        self.members.is_empty() || self.zero_type().is_some()
    }

    pub fn signature(&self) -> Option<&Signature> {
        self.members.iter().next().map(|t| t.body().signature())
    }

    pub fn signature_arc(&self) -> Option<&Arc<Signature>> {
        self.members.iter().next().map(|t| t.body().signature_arc())
    }
}

/// One violated condition found by [`check_closed`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// Two members induce different 0-types.
    ZeroTypeClash { first: usize, second: usize },
    /// The 0-type projection of a member is missing.
    MissingZeroType,
    /// The `coordinate`-th 1-type of member `member` is missing.
    MissingProjection { member: usize, coordinate: u32 },
    /// A permuted copy of a member is missing.
    MissingPermutation { member: usize, permutation: Vec<u32> },
    /// No member realises this sequence of 1-types (indices into β_*).
    MissingExtension { sequence: Vec<usize> },
    /// A member exceeds the declared maximum grade.
    GradeTooLarge { member: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    pub consistent: bool,
    pub violations: Vec<Violation>,
}

impl ClosureReport {
    pub fn is_closed(&self) -> bool {
        self.consistent && self.violations.is_empty()
    }
}

/// All permutations of `1..=k` in lexicographic order.
pub fn permutations(k: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = (1..=k).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let n = cur.len();
        if n < 2 {
            break;
        }
        let Some(i) = (0..n - 1).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).expect("exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// Checks consistency and the three closure conditions up to grade `g`.
pub fn check_closed(beta: &OuterTypeSet, g: u32) -> ClosureReport {
    let members: Vec<&TypeAtom> = beta.members().iter().collect();
    let mut violations = Vec::new();
    let mut consistent = true;
    let zeros: Vec<TypeAtom> = members.iter().map(|t| t.zero_projection()).collect();
    for i in 1..zeros.len() {
        if zeros[i] != zeros[0] {
            consistent = false;
            violations.push(Violation::ZeroTypeClash { first: 0, second: i });
        }
    }
    if let Some(z) = zeros.first() {
        if consistent && !beta.contains(z) {
            violations.push(Violation::MissingZeroType);
        }
    }
    for (idx, t) in members.iter().enumerate() {
        if t.grade() > g {
            violations.push(Violation::GradeTooLarge { member: idx });
            continue;
        }
        if t.grade() >= 2 {
            for i in 1..=t.grade() {
                let p = t.one_projection(i).expect("coordinate in range");
                if !beta.contains(&p) {
                    violations.push(Violation::MissingProjection {
                        member: idx,
                        coordinate: i,
                    });
                }
            }
            for sigma in permutations(t.grade()).into_iter().skip(1) {
                if !beta.contains(&t.permuted(&sigma)) {
                    violations.push(Violation::MissingPermutation {
                        member: idx,
                        permutation: sigma,
                    });
                }
            }
        }
    }
    let ones = beta.one_types();
    let index: HashMap<&TypeAtom, usize> = ones.iter().enumerate().map(|(i, t)| (*t, i)).collect();
    for k in 2..=g {
        let realised: BTreeSet<Vec<usize>> = beta
            .of_grade(k)
            .filter_map(|t| {
                t.one_types()
                    .iter()
                    .map(|p| index.get(p).copied())
                    .collect::<Option<Vec<usize>>>()
            })
            .collect();
        if ones.is_empty() {
            continue;
        }
        let mut seq = vec![0usize; k as usize];
        loop {
            if !realised.contains(&seq) {
                violations.push(Violation::MissingExtension {
                    sequence: seq.clone(),
                });
            }
            // odometer increment
            let mut pos = seq.len();
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                seq[pos] += 1;
                if seq[pos] < ones.len() {
                    break;
                }
                seq[pos] = 0;
                if pos == 0 {
                    pos = usize::MAX;
                    break;
                }
            }
            if pos == usize::MAX {
                break;
            }
        }
    }
    ClosureReport {
        consistent,
        violations,
    }
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

/// Multisets of size `k` over `0..n` as non-decreasing sequences.
fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, k, i, cur, out);
            cur.pop();
        }
    }
    go(n, k, 0, &mut cur, &mut out);
    out
}

/// Distinct orderings of a non-decreasing sequence.
fn distinct_orderings(ms: &[usize]) -> Vec<Vec<usize>> {
    let mut cur = ms.to_vec();
    let mut out = vec![cur.clone()];
    loop {
        let n = cur.len();
        if n < 2 {
            break;
        }
        let Some(i) = (0..n - 1).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).expect("exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
    out
}

/// All outer-types of grade ≤ `g` realised by tuples of distinct unnamed
/// elements of the total structure `a`, plus its 0-type.
///
/// Tuples whose exact support carries no true tuple all share the empty
/// hull, so instead of enumerating them the function counts, per
/// multiset of 1-types, how many element sets exist and how many of them
/// carry a non-empty hull.
pub fn extract_type_set(a: &PartialStructure, g: u32) -> Result<OuterTypeSet> {
    if !a.is_total() {
        return Err(FolError::NotTotal);
    }
    if g == 0 {
        return Err(FolError::Invalid("maximum grade must be at least 1".into()));
    }
    let idx = SupportIndex::new(a);
    let mut beta = OuterTypeSet::new(g);
    let zero = idx.zero_type()?;
    beta.insert(zero.clone())?;
    let mut type_of: Vec<usize> = Vec::with_capacity(a.unnamed_size() as usize);
    let mut ones: Vec<TypeAtom> = Vec::new();
    let mut ones_index: HashMap<TypeAtom, usize> = HashMap::new();
    for e in 1..=a.unnamed_size() {
        let t = idx.one_type(e)?;
        let id = *ones_index.entry(t.clone()).or_insert_with(|| {
            ones.push(t.clone());
            ones.len() - 1
        });
        type_of.push(id);
    }
    let mut realisers = vec![0u64; ones.len()];
    for id in &type_of {
        realisers[*id] += 1;
    }
    for t in &ones {
        beta.insert(t.clone())?;
    }
    // Supports with a non-empty hull, grouped by size.
    let mut hulls: BTreeMap<usize, Vec<&Support>> = BTreeMap::new();
    for s in idx.nonempty_supports() {
        if s.len() >= 2 && s.len() as u32 <= g {
            hulls.entry(s.len()).or_default().push(s);
        }
    }
    for list in hulls.values_mut() {
        list.sort();
    }
    for k in 2..=g.min(a.unnamed_size()) as usize {
        let mut nonempty_per_multiset: HashMap<Vec<usize>, u128> = HashMap::new();
        for s in hulls.get(&k).map(|v| v.as_slice()).unwrap_or(&[]) {
            let mut ms: Vec<usize> = s.iter().map(|e| type_of[*e as usize - 1]).collect();
            ms.sort_unstable();
            *nonempty_per_multiset.entry(ms).or_default() += 1;
            for order in permutations(k as u32) {
                let elems: Vec<u32> = order.iter().map(|i| s[*i as usize - 1]).collect();
                beta.insert(idx.outer_type(&elems)?)?;
            }
        }
        for ms in multisets(ones.len(), k) {
            let mut total: u128 = 1;
            let mut i = 0;
            while i < ms.len() {
                let j = (i..ms.len()).find(|&j| ms[j] != ms[i]).unwrap_or(ms.len());
                total = total.saturating_mul(binomial(realisers[ms[i]], (j - i) as u64));
                i = j;
            }
            let nonempty = nonempty_per_multiset.get(&ms).copied().unwrap_or(0);
            if total > nonempty {
                for seq in distinct_orderings(&ms) {
                    let parts: Vec<&TypeAtom> = seq.iter().map(|i| &ones[*i]).collect();
                    beta.insert(TypeAtom::assemble(&zero, &parts, Vec::new())?)?;
                }
            }
        }
    }
    Ok(beta)
}

/// Copies every element (unnamed ones and the constants' interpretations)
/// `copies` times as fresh unnamed elements. Equality-free formulas
/// cannot tell the result from the original, and each 1-type realised by
/// an element is now realised by at least `copies` unnamed elements.
pub fn augment(a: &PartialStructure, copies: u32) -> Result<PartialStructure> {
    if !a.is_total() {
        return Err(FolError::NotTotal);
    }
    if copies == 0 {
        return Err(FolError::Invalid("need at least one copy".into()));
    }
    let originals = a.domain();
    let new_size = originals.len() as u32 * copies;
    // copies of originals[i] are 1 + i*copies .. (i+1)*copies
    let copies_of = |e: Elem| -> Vec<Elem> {
        let i = originals.iter().position(|o| *o == e).expect("domain element") as u32;
        let mut v: Vec<Elem> = (0..copies).map(|c| Elem::Unnamed(1 + i * copies + c)).collect();
        if e.is_const() {
            v.insert(0, e);
        }
        v
    };
    let mut out = PartialStructure::empty_total(a.signature_arc().clone(), new_size);
    for (r, t) in a.iter_true() {
        let choices: Vec<Vec<Elem>> = t.iter().map(|e| copies_of(*e)).collect();
        let mut idx = vec![0usize; t.len()];
        loop {
            out.insert_unchecked(r, idx.iter().zip(&choices).map(|(i, c)| c[*i]).collect());
            let mut p = idx.len();
            let mut done = true;
            while p > 0 {
                p -= 1;
                idx[p] += 1;
                if idx[p] < choices[p].len() {
                    done = false;
                    break;
                }
                idx[p] = 0;
            }
            if done {
                break;
            }
        }
    }
    Ok(out)
}
