//! Bushy witness trees: verifiable certificates that a set is ω-big in a tree
//! above a stem, plus the big-or-avoid dichotomy.
//!
//! A witness is a finite node table. Internal nodes at or above the stem carry
//! a generic-child template: a threshold t such that every tree child n ≥ t is
//! a witness child sharing one subtree shape (residual states coincide beyond
//! the breakpoints, which is what keeps witnesses finite). Leaves must land in
//! the certified set.

use std::collections::{BTreeMap, BTreeSet};

use crate::rank::{omega_rank, RankError, RankResult};
use crate::sets::SetRep;
use crate::strings::Str;
use crate::trees::{Cursor, ThresholdTree, TreeRep};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WitnessNode {
    /// Explicitly named children (finite list).
    pub named: BTreeSet<u32>,
    /// Generic-child template: every tree child n ≥ t continues with the
    /// shape stored under the representative child key `node⌢t`.
    pub template: Option<u32>,
}

impl WitnessNode {
    pub fn is_leaf(&self) -> bool {
        self.named.is_empty() && self.template.is_none()
    }
}

/// A finite certificate of ω-bigness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BushyWitness {
    pub stem: Str,
    pub nodes: BTreeMap<Str, WitnessNode>,
}

impl BushyWitness {
    pub fn single(stem: Str) -> Self {
        let mut nodes = BTreeMap::new();
        nodes.insert(stem.clone(), WitnessNode::default());
        BushyWitness { stem, nodes }
    }

    pub fn leaves(&self) -> impl Iterator<Item = &Str> {
        self.nodes
            .iter()
            .filter(|(_, n)| n.is_leaf())
            .map(|(k, _)| k)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ExtractError {
    #[error("the set is not big above the node")]
    NotBig,
    #[error(transparent)]
    Rank(#[from] RankError),
}

/// Build the canonical witness for a `Big` instance: the pure tail-template
/// chain of strictly descending ranks.
pub fn extract_witness(
    tree: &TreeRep,
    bad: &SetRep,
    s: &Str,
) -> Result<BushyWitness, ExtractError> {
    match omega_rank(tree, bad, s)? {
        RankResult::Small => Err(ExtractError::NotBig),
        RankResult::Big(_) => {
            let mut w = BushyWitness {
                stem: s.clone(),
                nodes: BTreeMap::new(),
            };
            let mut cur = Cursor::at(tree, s).expect("ranked node is in the tree");
            let mut b = bad.residual(s).canon();
            let mut path = s.clone();
            loop {
                if b.member(&Str::empty()) {
                    w.nodes.insert(path.clone(), WitnessNode::default());
                    return Ok(w);
                }
                let children = cur.children(tree);
                let sel = children.tail.expect("ranked node has a cofinal tail");
                let named_max = children
                    .named
                    .iter()
                    .copied()
                    .max()
                    .map(|m| m + 1)
                    .unwrap_or(0);
                let rep = sel.first_at_least(b.child_breakpoint().max(sel.from).max(named_max));
                w.nodes.insert(
                    path.clone(),
                    WitnessNode {
                        named: BTreeSet::new(),
                        template: Some(rep),
                    },
                );
                cur = cur.descend(tree, rep);
                b = b.residual(&Str::from_slice(&[rep])).canon();
                path = path.child(rep);
            }
        }
    }
}

/// Check a witness against a tree and a set: nodes in the tree, ω-bushy above
/// the stem (generic template at every internal node), finite and acyclic by
/// construction, and every leaf in the set. Template subtrees are re-checked
/// against the residual state of every exceptional generic child and of the
/// shared tail class.
pub fn verify_witness(tree: &TreeRep, bad: &SetRep, w: &BushyWitness) -> bool {
    // Structure: the table is rooted at the stem and every non-stem key must
    // be reachable from its parent as a named child or the template rep.
    if !w.nodes.contains_key(&w.stem) {
        return false;
    }
    for key in w.nodes.keys() {
        if !w.stem.is_prefix_of(key) {
            return false;
        }
        if key == &w.stem {
            continue;
        }
        let parent = key.parent().expect("non-stem key extends the stem");
        let Some(pn) = w.nodes.get(&parent) else {
            return false;
        };
        let last = key.entry(key.len() - 1);
        if !pn.named.contains(&last) && pn.template != Some(last) {
            return false;
        }
    }
    // Referenced children must exist.
    for (key, node) in &w.nodes {
        for &n in node.named.iter().chain(node.template.iter()) {
            if !w.nodes.contains_key(&key.child(n)) {
                return false;
            }
        }
    }
    let Some(cur) = Cursor::at(tree, &w.stem) else {
        return false;
    };
    let b = bad.residual(&w.stem).canon();
    verify_sub(tree, w, &w.stem, &cur, &b)
}

fn verify_sub(tree: &TreeRep, w: &BushyWitness, key: &Str, cur: &Cursor, b: &SetRep) -> bool {
    let node = &w.nodes[key];
    if node.is_leaf() {
        return b.member(&Str::empty());
    }
    let children = cur.children(tree);
    for &n in &node.named {
        if !children.contains(n) {
            return false;
        }
        let cb = b.residual(&Str::from_slice(&[n])).canon();
        if !verify_sub(tree, w, &key.child(n), &cur.descend(tree, n), &cb) {
            return false;
        }
    }
    // Bushiness above the stem: internal nodes need the generic template.
    let Some(t) = node.template else {
        return false;
    };
    let Some(sel) = children.tail else {
        return false;
    };
    if !children.contains(t) {
        return false;
    }
    let rep_key = key.child(t);
    let rep_star = sel.first_at_least(t.max(sel.from).max(b.child_breakpoint()));
    // Every tree child n ≥ t must continue with the shared shape: the named
    // tree children, the grid points up to the stabilized class, and the
    // class representative itself.
    let mut points: Vec<u32> = children.named.iter().copied().filter(|&n| n >= t).collect();
    let mut g = sel.first_at_least(t);
    while g <= rep_star {
        points.push(g);
        match g.checked_add(sel.stride) {
            Some(next) => g = next,
            None => break,
        }
    }
    points.sort();
    points.dedup();
    for n in points {
        let cb = b.residual(&Str::from_slice(&[n])).canon();
        if !verify_sub(tree, w, &rep_key, &cur.descend(tree, n), &cb) {
            return false;
        }
    }
    true
}

/// The two arms of the big-or-avoid dichotomy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Dichotomy {
    /// A Laver-style tree all of whose paths pass through the set.
    LaverInto(TreeRep),
    /// A Hechler-style tree none of whose nodes has a prefix in the closure.
    HechlerAvoid(TreeRep),
}

/// Decide bigness above `s` (which must extend the stem of the threshold tree)
/// and return either the prolonged witness tree or the avoiding subtree.
pub fn big_dichotomy(
    tree: &ThresholdTree,
    bad: &SetRep,
    s: &Str,
) -> Result<Dichotomy, RankError> {
    let tr = TreeRep::Threshold(tree.clone());
    if !tr.member(s) {
        return Err(RankError::NotInTree);
    }
    if !tree.stem.is_prefix_of(s) {
        return Err(RankError::NotInTree);
    }
    let result = omega_rank(&tr, bad, s)?;
    let mut cur = Cursor::at(&tr, s).unwrap();
    let mut b = bad.residual(s).canon();
    let mut theta = Vec::new();
    match result {
        RankResult::Big(rank) => {
            for _ in 0..rank {
                let sel = cur.children(&tr).tail.expect("ranked node has a tail");
                let rep = sel.first_at_least(b.child_breakpoint().max(sel.from));
                theta.push(rep);
                cur = cur.descend(&tr, rep);
                b = b.residual(&Str::from_slice(&[rep])).canon();
            }
            Ok(Dichotomy::LaverInto(TreeRep::threshold(s.clone(), theta)))
        }
        RankResult::Small => {
            loop {
                let levels_left = match &cur {
                    Cursor::Sels { levels } => !levels.is_empty(),
                    _ => unreachable!("above the stem of a threshold tree"),
                };
                if b == SetRep::Empty && !levels_left {
                    break;
                }
                let sel = cur.children(&tr).tail.expect("threshold nodes have tails");
                let rep = sel.first_at_least(b.child_breakpoint().max(sel.from));
                theta.push(rep);
                cur = cur.descend(&tr, rep);
                b = b.residual(&Str::from_slice(&[rep])).canon();
            }
            Ok(Dichotomy::HechlerAvoid(TreeRep::threshold(
                s.clone(),
                theta,
            )))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[u32]) -> Str {
        Str::from_slice(v)
    }

    #[test]
    fn extract_rank_one() {
        let w = extract_witness(&TreeRep::full(), &SetRep::MinLen(1), &Str::empty()).unwrap();
        let root = &w.nodes[&Str::empty()];
        assert_eq!(root.template, Some(0));
        assert!(w.nodes[&s(&[0])].is_leaf());
        assert!(verify_witness(
            &TreeRep::full(),
            &SetRep::MinLen(1),
            &w
        ));
    }

    #[test]
    fn extract_stem_in_set() {
        let b = SetRep::UpFin(vec![s(&[2])]);
        let w = extract_witness(&TreeRep::full(), &b, &s(&[2])).unwrap();
        assert_eq!(w.nodes.len(), 1);
        assert!(verify_witness(&TreeRep::full(), &b, &w));
    }

    #[test]
    fn extract_not_big() {
        let b = SetRep::UpFin(vec![s(&[0])]);
        assert_eq!(
            extract_witness(&TreeRep::full(), &b, &Str::empty()),
            Err(ExtractError::NotBig)
        );
    }

    #[test]
    fn verify_rejects_mutations() {
        let b = SetRep::MinLen(1);
        let full = TreeRep::full();
        let w = extract_witness(&full, &b, &Str::empty()).unwrap();

        // Template removal: root keeps named children only.
        let mut broken = w.clone();
        let root = broken.nodes.get_mut(&Str::empty()).unwrap();
        root.template = None;
        root.named.insert(0);
        assert!(!verify_witness(&full, &b, &broken));

        // Leaf relabeled outside the set: empty string is not in MinLen(1).
        let single = BushyWitness::single(Str::empty());
        assert!(!verify_witness(&full, &b, &single));
    }

    #[test]
    fn verify_checks_tree_membership() {
        // Witness template points below the tree's threshold.
        let tree = TreeRep::threshold(Str::empty(), vec![3]);
        let b = SetRep::MinLen(1);
        let mut w = extract_witness(&tree, &b, &Str::empty()).unwrap();
        assert!(verify_witness(&tree, &b, &w));
        // Shift the template rep below the threshold.
        let mut nodes = BTreeMap::new();
        for (k, v) in w.nodes.iter() {
            let mut v = v.clone();
            if v.template == Some(3) {
                v.template = Some(1);
            }
            let k2 = if *k == s(&[3]) { s(&[1]) } else { k.clone() };
            nodes.insert(k2, v);
        }
        w.nodes = nodes;
        assert!(!verify_witness(&tree, &b, &w));
    }

    #[test]
    fn dichotomy_examples() {
        let full = ThresholdTree::full();
        match big_dichotomy(&full, &SetRep::MinLen(2), &Str::empty()).unwrap() {
            Dichotomy::LaverInto(t) => {
                assert!(t.is_full());
            }
            other => panic!("expected LaverInto, got {other:?}"),
        }
        match big_dichotomy(&full, &SetRep::UpFin(vec![s(&[0])]), &Str::empty()).unwrap() {
            Dichotomy::HechlerAvoid(t) => {
                assert_eq!(t, TreeRep::threshold(Str::empty(), vec![1]));
            }
            other => panic!("expected HechlerAvoid, got {other:?}"),
        }
        match big_dichotomy(&full, &SetRep::Empty, &Str::empty()).unwrap() {
            Dichotomy::HechlerAvoid(t) => assert!(t.is_full()),
            other => panic!("expected HechlerAvoid, got {other:?}"),
        }
    }

    #[test]
    fn dichotomy_soundness_spot() {
        let full = ThresholdTree::full();
        let b = SetRep::Union(vec![SetRep::UpFin(vec![s(&[0]), s(&[2])]), SetRep::Empty]);
        match big_dichotomy(&full, &b, &Str::empty()).unwrap() {
            Dichotomy::HechlerAvoid(t) => {
                for node in t.explored_nodes(3, 5) {
                    assert!(
                        node.prefixes().all(|p| !b.member(&p)),
                        "node {node} has a prefix in the set"
                    );
                }
            }
            other => panic!("expected HechlerAvoid, got {other:?}"),
        }
        let b2 = SetRep::MinLen(2);
        match big_dichotomy(&full, &b2, &Str::empty()).unwrap() {
            Dichotomy::LaverInto(t) => {
                for node in t.explored_nodes(3, 4) {
                    if node.len() >= 3 {
                        assert!(node.prefixes().any(|p| b2.member(&p)));
                    }
                }
            }
            other => panic!("expected LaverInto, got {other:?}"),
        }
    }
}
