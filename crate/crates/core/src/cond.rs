//! Conditions of the three bad-set forcings and their order-theoretic
//! operations: validation, extension, σ-centered merges, the possible-
//! extension characterization, and prefix satisfaction.

use crate::maps::MonotoneMap;
use crate::pairs::{pair_budget, pair_rank_with_budget, PairSetRep};
use crate::rank::{omega_rank, RankError, RankResult};
use crate::sets::SetRep;
use crate::strings::{BinStr, PairStr, Str};
use crate::trees::TreeRep;

/// ω-bushy tree forcing condition: a tree with a bad set, small above the stem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LBCond {
    pub tree: TreeRep,
    pub bad: SetRep,
    pub stem: Str,
}

/// Hechler forcing with bad sets: a stem, a functional lower bound with
/// finite support (absolute positions), and a bad set small above the stem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HBCond {
    pub stem: Str,
    pub f: Vec<u32>,
    pub bad: SetRep,
}

impl HBCond {
    pub fn bound_at(&self, i: usize) -> u32 {
        self.f.get(i).copied().unwrap_or(0)
    }
}

/// Iterated Cohen-then-Hechler condition: the Cohen part `mindom`, the stem
/// `stm = f(mindom)`, the name `f` for the infinitary part, and a pair bad
/// set small above the key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ICond {
    pub stm: Str,
    pub map: MonotoneMap,
    pub mindom: BinStr,
    pub bad: PairSetRep,
}

impl ICond {
    pub fn key(&self) -> PairStr {
        PairStr::new(self.mindom.clone(), self.stm.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cond {
    LB(LBCond),
    HB(HBCond),
    IT(ICond),
}

impl Cond {
    pub fn forcing_tag(&self) -> &'static str {
        match self {
            Cond::LB(_) => "LB",
            Cond::HB(_) => "HB",
            Cond::IT(_) => "IT",
        }
    }

    /// The finite approximation the condition pins down.
    pub fn stem_view(&self) -> PrefixVal {
        match self {
            Cond::LB(c) => PrefixVal::Baire(c.stem.clone()),
            Cond::HB(c) => PrefixVal::Baire(c.stem.clone()),
            Cond::IT(c) => PrefixVal::Pair(c.key()),
        }
    }
}

/// Prefix argument for satisfaction checks: a Baire string, or a pair of
/// prefixes for the iterated forcing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrefixVal {
    Baire(Str),
    Pair(PairStr),
}

/// Check every invariant of the condition, using the rank engines for the
/// smallness clauses.
pub fn validate_condition(c: &Cond) -> Result<bool, RankError> {
    match c {
        Cond::LB(c) => {
            if c.tree.stem() != c.stem {
                return Ok(false);
            }
            if let TreeRep::Graft(g) = &c.tree {
                for (k, tail) in &g.nodes {
                    if !c.stem.is_prefix_of(k) {
                        continue;
                    }
                    let named = g.named_children(k);
                    match tail {
                        Some(_) => {}
                        None if named.is_empty() => {
                            // Closed leaf: must lie in the bad set.
                            if !c.bad.member(k) {
                                return Ok(false);
                            }
                        }
                        None => {
                            // Finitely many children at or above the stem:
                            // not ω-bushy.
                            return Ok(false);
                        }
                    }
                }
            }
            Ok(omega_rank(&c.tree, &c.bad, &c.stem)? == RankResult::Small)
        }
        Cond::HB(c) => Ok(omega_rank(&TreeRep::full(), &c.bad, &c.stem)? == RankResult::Small),
        Cond::IT(c) => {
            if c.map.validate().is_err() {
                return Ok(false);
            }
            if c.map.eval(&c.mindom) != c.stm {
                return Ok(false);
            }
            Ok(pair_rank_with_budget(&c.bad, &c.key(), pair_budget(&c.bad))?
                == RankResult::Small)
        }
    }
}

/// Bounded-extensional superset check on the string algebra.
pub fn set_superset(big: &SetRep, small: &SetRep) -> bool {
    let depth = big.depth().max(small.depth()) + 1;
    let cap = big.entry_bound().max(small.entry_bound()) + 1;
    let mut frontier = vec![Str::empty()];
    for _ in 0..=depth {
        for s in &frontier {
            if small.member(s) && !big.member(s) {
                return false;
            }
        }
        let mut next = Vec::new();
        for s in &frontier {
            for n in 0..=cap {
                next.push(s.child(n));
            }
        }
        frontier = next;
    }
    true
}

/// Bounded-extensional superset check on the pair algebra.
pub fn pair_set_superset(big: &PairSetRep, small: &PairSetRep) -> bool {
    let sd = big.second_depth().max(small.second_depth()) + 1;
    let fd = (big.first_depth().max(small.first_depth()) + 2) as usize;
    let cap = big.entry_bound().max(small.entry_bound()) + 1;
    let stretch = big.max_stretch().max(small.max_stretch());
    let fd = fd.max(stretch as usize * (sd as usize + 1)).min(10);
    let sigmas = BinStr::all_up_to_len(fd);
    let mut taus = vec![Str::empty()];
    let mut frontier = vec![Str::empty()];
    for _ in 0..sd {
        let mut next = Vec::new();
        for t in &frontier {
            for n in 0..=cap {
                next.push(t.child(n));
            }
        }
        taus.extend(next.iter().cloned());
        frontier = next;
    }
    for s in &sigmas {
        for t in &taus {
            let p = PairStr::new(s.clone(), t.clone());
            if small.member(&p) && !big.member(&p) {
                return false;
            }
        }
    }
    true
}

/// Does `p` extend `q` (same forcing, every clause of the definition)?
pub fn extends_q(p: &Cond, q: &Cond) -> bool {
    match (p, q) {
        (Cond::LB(p), Cond::LB(q)) => {
            q.stem.is_prefix_of(&p.stem)
                && p.tree.included_in(&q.tree)
                && set_superset(&p.bad, &q.bad)
        }
        (Cond::HB(p), Cond::HB(q)) => {
            if !q.stem.is_prefix_of(&p.stem) || !set_superset(&p.bad, &q.bad) {
                return false;
            }
            let support = p.f.len().max(q.f.len());
            if (0..support).any(|i| p.bound_at(i) < q.bound_at(i)) {
                return false;
            }
            // New stem entries must clear the older bound.
            (q.stem.len()..p.stem.len()).all(|i| p.stem.entry(i) >= q.bound_at(i))
        }
        (Cond::IT(p), Cond::IT(q)) => {
            if !q.mindom.is_prefix_of(&p.mindom)
                || !q.stm.is_prefix_of(&p.stm)
                || !pair_set_superset(&p.bad, &q.bad)
            {
                return false;
            }
            // |f_p(σ)| ≤ |f_q(σ)| and f_p(σ) ≥ f_q(σ) for σ ⪰ mindom_q,
            // checked on a bounded sample past both tables.
            let horizon = p.map.max_key_len().max(q.map.max_key_len())
                + (p.map.stretch.max(q.map.stretch) as usize) * 2
                + 2;
            let mut frontier = vec![q.mindom.clone()];
            for _ in 0..=horizon.saturating_sub(q.mindom.len()) {
                for sigma in &frontier {
                    let a = p.map.eval(sigma);
                    let b = q.map.eval(sigma);
                    if a.len() > b.len() {
                        return false;
                    }
                    if (0..a.len()).any(|i| a.entry(i) < b.entry(i)) {
                        return false;
                    }
                }
                let mut next = Vec::new();
                for sigma in &frontier {
                    next.push(sigma.child(0));
                    next.push(sigma.child(1));
                }
                frontier = next;
            }
            true
        }
        _ => false,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MergeError {
    #[error("conditions do not share a centering key")]
    NotCentered,
    #[error(transparent)]
    Rank(#[from] RankError),
}

/// Common extension of two same-key conditions: pointwise-max functional
/// part, union of bad sets (valid by the union law).
pub fn centered_merge(p: &Cond, q: &Cond) -> Result<Cond, MergeError> {
    match (p, q) {
        (Cond::HB(p), Cond::HB(q)) => {
            if p.stem != q.stem {
                return Err(MergeError::NotCentered);
            }
            let n = p.f.len().max(q.f.len());
            let f = (0..n).map(|i| p.bound_at(i).max(q.bound_at(i))).collect();
            Ok(Cond::HB(HBCond {
                stem: p.stem.clone(),
                f,
                bad: SetRep::Union(vec![p.bad.clone(), q.bad.clone()]).canon(),
            }))
        }
        (Cond::IT(p), Cond::IT(q)) => {
            if p.key() != q.key() {
                return Err(MergeError::NotCentered);
            }
            let map = p.map.merge_max(&q.map, &p.mindom, 0);
            Ok(Cond::IT(ICond {
                stm: p.stm.clone(),
                map,
                mindom: p.mindom.clone(),
                bad: PairSetRep::Union(vec![p.bad.clone(), q.bad.clone()]).canon(1),
            }))
        }
        _ => Err(MergeError::NotCentered),
    }
}

/// Membership of a pair in the convergence, domination-failure, and
/// possible-extension sets of an iterated condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IterMembership {
    pub in_c: bool,
    pub in_d: bool,
    pub in_e: bool,
}

/// Decide C_p, D_p, and E_p = C_p ∖ (cl_p(B_p) ∪ D_p) at a pair ⪰ the key.
pub fn iter_membership(p: &ICond, pair: &PairStr) -> Result<IterMembership, RankError> {
    let in_c = p.map.len_at(&pair.first) >= pair.second.len();
    let in_d = in_dom_failure(p, pair);
    let in_e = if in_c && !in_d {
        pair_rank_with_budget(&p.bad, pair, pair_budget(&p.bad))? == RankResult::Small
    } else {
        false
    };
    Ok(IterMembership { in_c, in_d, in_e })
}

/// (σ,τ) ∈ D_p iff every σ′ ⪰ σ with |f(σ′)| ≥ |τ| has f(σ′) ≰ τ. Decided
/// via the pad rule's eventual behaviour: the candidate limit values are the
/// table values on keys compatible with σ, each padded by the fill.
fn in_dom_failure(p: &ICond, pair: &PairStr) -> bool {
    let tau = &pair.second;
    if tau.is_empty() {
        // f(σ′) ↾ 0 ≤ ⟨⟩ always; never in D.
        return false;
    }
    let mut scenarios: Vec<Str> = vec![p.map.eval(&pair.first)];
    for (k, _) in &p.map.table {
        if pair.first.is_strict_prefix_of(k) {
            scenarios.push(p.map.eval(k));
        }
    }
    for base in scenarios {
        let mut v = base;
        while v.len() < tau.len() {
            v = v.child(p.map.fill);
        }
        if (0..tau.len()).all(|i| v.entry(i) <= tau.entry(i)) {
            return false;
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ExtendError {
    #[error("the target is not a possible extension")]
    NotAnExtension,
    #[error(transparent)]
    Rank(#[from] RankError),
}

/// Extend an iterated condition to a given key pair (which must be a possible
/// extension): the functional part is overridden at the target and inherits
/// the old entries past it.
pub fn extension_at(p: &ICond, target: &PairStr) -> Result<ICond, ExtendError> {
    if !p.key().leq(target) {
        return Err(ExtendError::NotAnExtension);
    }
    let m = iter_membership(p, target)?;
    if !m.in_e {
        return Err(ExtendError::NotAnExtension);
    }
    let map = p.map.override_at(&target.first, &target.second);
    Ok(ICond {
        stm: target.second.clone(),
        map,
        mindom: target.first.clone(),
        bad: p.bad.clone(),
    })
}

/// Extend a Hechler condition to a given stem (f-respecting and small in the
/// bad set).
pub fn hb_extension_at(p: &HBCond, target: &Str) -> Result<HBCond, ExtendError> {
    if !p.stem.is_prefix_of(target) {
        return Err(ExtendError::NotAnExtension);
    }
    for i in p.stem.len()..target.len() {
        if target.entry(i) < p.bound_at(i) {
            return Err(ExtendError::NotAnExtension);
        }
    }
    if omega_rank(&TreeRep::full(), &p.bad, target)? != RankResult::Small {
        return Err(ExtendError::NotAnExtension);
    }
    Ok(HBCond {
        stem: target.clone(),
        f: p.f.clone(),
        bad: p.bad.clone(),
    })
}

/// Does a finite prefix respect the condition: compatible with the stem,
/// above the functional/tree lower bounds on its domain, with no prefix in
/// the bad set (nor in D_p for the iterated forcing)?
pub fn satisfies_prefix(c: &Cond, x: &PrefixVal) -> bool {
    match (c, x) {
        (Cond::LB(c), PrefixVal::Baire(x)) => {
            if !x.comparable(&c.stem) || !c.tree.member(x) {
                return false;
            }
            x.prefixes().all(|p| !c.bad.member(&p))
        }
        (Cond::HB(c), PrefixVal::Baire(x)) => {
            if !x.comparable(&c.stem) {
                return false;
            }
            for i in c.stem.len()..x.len() {
                if x.entry(i) < c.bound_at(i) {
                    return false;
                }
            }
            x.prefixes().all(|p| !c.bad.member(&p))
        }
        (Cond::IT(c), PrefixVal::Pair(x)) => {
            if !x.first.comparable(&c.mindom) || !x.second.comparable(&c.stm) {
                return false;
            }
            for i in 0..=x.first.len() {
                for j in 0..=x.second.len() {
                    let p = PairStr::new(x.first.truncate(i), x.second.truncate(j));
                    if c.bad.member(&p) {
                        return false;
                    }
                    if c.key().leq(&p) && in_dom_failure(c, &p) {
                        return false;
                    }
                }
            }
            true
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[u32]) -> Str {
        Str::from_slice(v)
    }

    fn bs(v: &[u8]) -> BinStr {
        BinStr::from_slice(v)
    }

    fn it_top_with_fill(fill: u32) -> ICond {
        ICond {
            stm: Str::empty(),
            map: MonotoneMap::pad_only(1, fill),
            mindom: BinStr::empty(),
            bad: PairSetRep::Empty,
        }
    }

    #[test]
    fn validate_examples() {
        let ok = Cond::LB(LBCond {
            tree: TreeRep::full(),
            bad: SetRep::UpFin(vec![s(&[0])]),
            stem: Str::empty(),
        });
        assert!(validate_condition(&ok).unwrap());

        let big = Cond::LB(LBCond {
            tree: TreeRep::full(),
            bad: SetRep::MinLen(2),
            stem: Str::empty(),
        });
        assert!(!validate_condition(&big).unwrap());

        let it = Cond::IT(it_top_with_fill(0));
        assert!(validate_condition(&it).unwrap());
    }

    #[test]
    fn extends_examples() {
        let bad = SetRep::Empty;
        let top = Cond::LB(LBCond {
            tree: TreeRep::full(),
            bad: bad.clone(),
            stem: Str::empty(),
        });
        let dom = Cond::LB(LBCond {
            tree: TreeRep::threshold(Str::empty(), vec![6, 4]),
            bad,
            stem: Str::empty(),
        });
        assert!(extends_q(&dom, &top));
        assert!(!extends_q(&top, &dom));

        let q = Cond::HB(HBCond {
            stem: Str::empty(),
            f: vec![3],
            bad: SetRep::Empty,
        });
        let p = Cond::HB(HBCond {
            stem: s(&[3]),
            f: vec![3],
            bad: SetRep::Empty,
        });
        assert!(extends_q(&p, &q));
        let r = Cond::HB(HBCond {
            stem: s(&[2]),
            f: vec![3],
            bad: SetRep::Empty,
        });
        assert!(!extends_q(&r, &q));
    }

    #[test]
    fn merge_examples() {
        let p = Cond::HB(HBCond {
            stem: Str::empty(),
            f: vec![3],
            bad: SetRep::Empty,
        });
        let q = Cond::HB(HBCond {
            stem: Str::empty(),
            f: vec![1, 4],
            bad: SetRep::Empty,
        });
        match centered_merge(&p, &q).unwrap() {
            Cond::HB(m) => assert_eq!(m.f, vec![3, 4]),
            _ => unreachable!(),
        }
        let a = Cond::HB(HBCond {
            stem: s(&[1]),
            f: vec![],
            bad: SetRep::Empty,
        });
        let b = Cond::HB(HBCond {
            stem: s(&[2]),
            f: vec![],
            bad: SetRep::Empty,
        });
        assert_eq!(centered_merge(&a, &b), Err(MergeError::NotCentered));
    }

    #[test]
    fn iter_membership_examples() {
        let p = it_top_with_fill(2);
        let m = iter_membership(&p, &PairStr::new(bs(&[0, 1]), s(&[5, 2]))).unwrap();
        assert!(m.in_c && !m.in_d && m.in_e);
        let m = iter_membership(&p, &PairStr::new(bs(&[0]), s(&[5, 2]))).unwrap();
        assert!(!m.in_c && !m.in_e);
        let m = iter_membership(&p, &PairStr::new(bs(&[0, 1]), s(&[1, 2]))).unwrap();
        assert!(m.in_d && !m.in_e);
    }

    #[test]
    fn extension_at_example() {
        let p = it_top_with_fill(2);
        let target = PairStr::new(bs(&[0, 1]), s(&[5, 2]));
        let q = extension_at(&p, &target).unwrap();
        assert_eq!(q.mindom, bs(&[0, 1]));
        assert_eq!(q.stm, s(&[5, 2]));
        assert_eq!(q.map.eval(&bs(&[0, 1])), s(&[5, 2]));
        assert!(validate_condition(&Cond::IT(q.clone())).unwrap());
        assert!(extends_q(&Cond::IT(q), &Cond::IT(p.clone())));

        let nope = PairStr::new(bs(&[0, 1]), s(&[1, 2]));
        assert_eq!(extension_at(&p, &nope), Err(ExtendError::NotAnExtension));
    }

    #[test]
    fn satisfies_prefix_examples() {
        let hb = Cond::HB(HBCond {
            stem: Str::empty(),
            f: vec![3],
            bad: SetRep::UpFin(vec![s(&[5])]),
        });
        assert!(satisfies_prefix(&hb, &PrefixVal::Baire(s(&[4, 9]))));
        assert!(!satisfies_prefix(&hb, &PrefixVal::Baire(s(&[5, 0]))));

        let lb = Cond::LB(LBCond {
            tree: TreeRep::threshold(Str::empty(), vec![6, 4]),
            bad: SetRep::UpFin(vec![s(&[7])]),
            stem: Str::empty(),
        });
        assert!(satisfies_prefix(&lb, &PrefixVal::Baire(s(&[8, 4]))));
        assert!(!satisfies_prefix(&lb, &PrefixVal::Baire(s(&[5, 4]))));
    }
}
