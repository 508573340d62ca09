//! Sample sentences used throughout the workspace.

/// Three co-authoring scientists wrote a common article.
pub const CO_AUTHORS: &str = "\
forall s1 s2 s3. (scientist(s1) & scientist(s2) & scientist(s3) & co_authors(s1,s2,s3))
  -> exists a. (article(a) & written_by(a,s1,s2,s3))";

/// Every married couple eventually meets a problem on some later date.
pub const MARRIAGE: &str = "\
forall h w. husband_and_wife(h,w) ->
  exists p. problem(p) & (forall d. date(d) ->
    exists d2. date(d2) & later_than(d2,d) & occurs_to_at(p,h,w,d2))";

/// Transitivity of a binary relation.
pub const TRANS: &str = "forall x y z. (T(x,y) & T(y,z)) -> T(x,z)";

/// Claims need proofs, and proofs do not fit in margins.
pub const LOST_PROOF: &str = "\
forall a s. (assertion(a) & scientist(s) & claims(s,a)) ->
  exists p. proof_of(p,a) & found(s,p) &
    (forall m. (margin(m) & contains(m,p)) -> too_small(m))";

/// Satisfiable, but only by infinite structures. The alternation in front
/// of the universal pair keeps it out of K̄.
pub const INFINITY_AXIOM: &str = "\
forall y. exists z. forall x1 x2. R(y,z) & (R(x1,x2) -> ~R(x2,x1))
  & ((R(x2,x1) & R(x1,z)) -> R(x2,z))";

pub const ALL: [(&str, &str); 5] = [
    ("co_authors", CO_AUTHORS),
    ("marriage", MARRIAGE),
    ("trans", TRANS),
    ("lost_proof", LOST_PROOF),
    ("infinity_axiom", INFINITY_AXIOM),
];
