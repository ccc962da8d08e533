//! The ω-rank engine: decides whether an upward-closed set is ω-big in a tree
//! above a node, and computes the least rank when it is.
//!
//! Rank 0 means the node already lies in the set. A node gets rank α+1 when
//! infinitely many of its children in the tree have rank ≤ α. Children beyond
//! the joint breakpoint of the tree and the set share one localized state, so
//! "infinitely many" is decided by that tail class: finitely many exceptional
//! children can never witness it. Recursion is memoized on canonical residual
//! states; atom depths shrink strictly along the tail chain, so the state
//! space is finite.

use std::collections::BTreeMap;

use crate::sets::SetRep;
use crate::strings::Str;
use crate::trees::{Cursor, TreeRep};

/// Result of a bigness query.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RankResult {
    Small,
    Big(u32),
}

impl RankResult {
    pub fn is_big(&self) -> bool {
        matches!(self, RankResult::Big(_))
    }

    pub fn rank(&self) -> Option<u32> {
        match self {
            RankResult::Small => None,
            RankResult::Big(r) => Some(*r),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RankError {
    #[error("node is not in the tree")]
    NotInTree,
    #[error("rank recursion exceeded its budget")]
    Overflow,
}

struct Engine<'a> {
    tree: &'a TreeRep,
    memo: BTreeMap<(Cursor, SetRep), Option<u32>>,
    budget: u32,
}

impl<'a> Engine<'a> {
    fn rank(&mut self, cur: &Cursor, bad: &SetRep, depth: u32) -> Result<Option<u32>, RankError> {
        if bad.is_top() {
            return Ok(Some(0));
        }
        if depth > self.budget {
            return Err(RankError::Overflow);
        }
        if *bad == SetRep::Empty {
            return Ok(None);
        }
        let key = (cur.clone(), bad.clone());
        if let Some(v) = self.memo.get(&key) {
            return Ok(*v);
        }
        if bad.member(&Str::empty()) {
            self.memo.insert(key, Some(0));
            return Ok(Some(0));
        }
        // Mark in progress: a state whose rank depends on itself has no finite
        // rank (ranks strictly decrease along the recursion), so re-entry
        // reads as Small, which is the least-fixpoint answer.
        self.memo.insert(key.clone(), None);
        let children = cur.children(self.tree);
        let result = match children.tail {
            None => None,
            Some(sel) => {
                let bp = bad.child_breakpoint();
                let rep = sel.first_at_least(bp.max(sel.from));
                let child_cur = cur.descend(self.tree, rep);
                let child_bad = bad.residual(&Str::from_slice(&[rep])).canon();
                self.rank(&child_cur, &child_bad, depth + 1)?.map(|r| r + 1)
            }
        };
        self.memo.insert(key, result);
        Ok(result)
    }
}

/// Least ω-rank of `s` for the set `bad` in `tree`, or `Small`.
pub fn omega_rank(tree: &TreeRep, bad: &SetRep, s: &Str) -> Result<RankResult, RankError> {
    let budget = bad.depth() + tree_depth_bound(tree) + 2;
    omega_rank_with_budget(tree, bad, s, budget)
}

pub fn omega_rank_with_budget(
    tree: &TreeRep,
    bad: &SetRep,
    s: &Str,
    budget: u32,
) -> Result<RankResult, RankError> {
    let cur = Cursor::at(tree, s).ok_or(RankError::NotInTree)?;
    let local = bad.residual(s).canon();
    let mut engine = Engine {
        tree,
        memo: BTreeMap::new(),
        budget,
    };
    Ok(match engine.rank(&cur, &local, 0)? {
        None => RankResult::Small,
        Some(r) => RankResult::Big(r),
    })
}

fn tree_depth_bound(tree: &TreeRep) -> u32 {
    match tree {
        TreeRep::Threshold(t) => (t.stem.len() + t.theta.len()) as u32,
        TreeRep::Graft(g) => g
            .nodes
            .iter()
            .map(|(k, v)| k.len() as u32 + v.as_ref().map(|t| t.levels.len() as u32).unwrap_or(0))
            .max()
            .unwrap_or(0),
    }
}

/// Independent brute-force evaluator: recursion over full strings with no
/// residual canonicalization or memoization; the `∃^∞` quantifier is read at
/// the single fresh value past every numeric bound of the instance.
pub fn brute_rank(tree: &TreeRep, bad: &SetRep, s: &Str) -> Result<RankResult, RankError> {
    if !tree.member(s) {
        return Err(RankError::NotInTree);
    }
    let fresh_base = instance_entry_bound(tree, bad, s) + 1;
    let fuel = bad.depth() + 3;
    Ok(match brute(tree, bad, s, fresh_base, fuel) {
        None => RankResult::Small,
        Some(r) => RankResult::Big(r),
    })
}

fn brute(tree: &TreeRep, bad: &SetRep, s: &Str, fresh: u32, fuel: u32) -> Option<u32> {
    if bad.member(s) {
        return Some(0);
    }
    if fuel == 0 {
        return None;
    }
    // The fresh value stands in for the whole tail class; a stride tail may
    // need alignment.
    let children = tree.children(s)?;
    let sel = children.tail?;
    let n = sel.first_at_least(fresh.max(sel.from));
    brute(tree, bad, &s.child(n), fresh, fuel - 1).map(|r| r + 1)
}

fn instance_entry_bound(tree: &TreeRep, bad: &SetRep, s: &Str) -> u32 {
    let mut w = bad.entry_bound().max(s.max_entry());
    match tree {
        TreeRep::Threshold(t) => {
            w = w.max(t.stem.max_entry());
            w = w.max(t.theta.iter().copied().max().unwrap_or(0));
        }
        TreeRep::Graft(g) => {
            for (k, v) in &g.nodes {
                w = w.max(k.max_entry());
                if let Some(tail) = v {
                    for sel in &tail.levels {
                        w = w.max(sel.from + sel.stride);
                    }
                }
            }
        }
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[u32]) -> Str {
        Str::from_slice(v)
    }

    #[test]
    fn omega_rank_examples() {
        let full = TreeRep::full();
        assert_eq!(
            omega_rank(&full, &SetRep::Empty, &Str::empty()).unwrap(),
            RankResult::Small
        );
        assert_eq!(
            omega_rank(&full, &SetRep::MinLen(2), &Str::empty()).unwrap(),
            RankResult::Big(2)
        );
        assert_eq!(
            omega_rank(&full, &SetRep::UpFin(vec![s(&[0])]), &Str::empty()).unwrap(),
            RankResult::Small
        );
        assert_eq!(
            omega_rank(&full, &SetRep::UpFin(vec![s(&[0])]), &s(&[0])).unwrap(),
            RankResult::Big(0)
        );
        let th5 = TreeRep::threshold(Str::empty(), vec![5]);
        assert_eq!(
            omega_rank(&th5, &SetRep::MinLen(1), &Str::empty()).unwrap(),
            RankResult::Big(1)
        );
    }

    #[test]
    fn rank_in_graft_trees() {
        use crate::trees::{GraftTree, TailSpec};
        // A closed-leaf graft: nothing is big above the leaf except members.
        let mut g = GraftTree::new();
        g.insert_chain(&s(&[1]));
        let t = TreeRep::Graft(g);
        assert_eq!(
            omega_rank(&t, &SetRep::MinLen(1), &s(&[1])).unwrap(),
            RankResult::Big(0)
        );
        assert_eq!(
            omega_rank(&t, &SetRep::MinLen(2), &s(&[1])).unwrap(),
            RankResult::Small
        );
        // Finitely many children can never witness bigness.
        assert_eq!(
            omega_rank(&t, &SetRep::MinLen(2), &Str::empty()).unwrap(),
            RankResult::Small
        );
        // With a tail the rank comes back.
        let mut g = GraftTree::new();
        g.set_tail(&Str::empty(), TailSpec::full());
        let t = TreeRep::Graft(g);
        assert_eq!(
            omega_rank(&t, &SetRep::MinLen(2), &Str::empty()).unwrap(),
            RankResult::Big(2)
        );
    }

    #[test]
    fn rank_agrees_with_brute_force_spot() {
        let cases = vec![
            (TreeRep::full(), SetRep::MinLen(2)),
            (TreeRep::full(), SetRep::UpFin(vec![s(&[0]), s(&[1, 1])])),
            (
                TreeRep::threshold(Str::empty(), vec![2]),
                SetRep::Union(vec![SetRep::CoordGE(0, 3), SetRep::UpFin(vec![s(&[2, 2])])]),
            ),
            (
                TreeRep::threshold(s(&[1]), vec![0, 3]),
                SetRep::Union(vec![SetRep::CoordGE(1, 1), SetRep::MinLen(3)]),
            ),
        ];
        for (tree, bad) in cases {
            for base in [s(&[]), s(&[1]), s(&[1, 3])] {
                if !tree.member(&base) {
                    continue;
                }
                assert_eq!(
                    omega_rank(&tree, &bad, &base).unwrap(),
                    brute_rank(&tree, &bad, &base).unwrap(),
                    "tree {tree:?} bad {bad:?} at {base}"
                );
            }
        }
    }
}
