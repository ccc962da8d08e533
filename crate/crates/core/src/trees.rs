//! Symbolic infinite trees on ω^<ω.
//!
//! Two forms: threshold trees (a stem plus per-level lower bounds, the
//! Hechler-style presentation, pruned and ω-bushy above the stem) and grafts
//! (a finite skeleton of named nodes whose members may carry an infinite tail
//! of generic children). Tails select children by a lower bound and a stride,
//! so a level can also pick a periodic child class.

use std::collections::BTreeMap;

use crate::spectrum::{Period, Spectrum};
use crate::strings::Str;

/// Child selector for one level of a tail: the children n ≥ from with
/// n ≡ from (mod stride).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LevelSel {
    pub from: u32,
    pub stride: u32,
}

impl LevelSel {
    pub const FULL: LevelSel = LevelSel { from: 0, stride: 1 };

    pub fn full() -> Self {
        Self::FULL
    }

    pub fn at_least(from: u32) -> Self {
        LevelSel { from, stride: 1 }
    }

    pub fn contains(&self, n: u32) -> bool {
        n >= self.from && (n - self.from) % self.stride == 0
    }

    /// Least selected child ≥ n.
    pub fn first_at_least(&self, n: u32) -> u32 {
        if n <= self.from {
            self.from
        } else {
            self.from + (n - self.from).div_ceil(self.stride) * self.stride
        }
    }

    pub fn least(&self) -> u32 {
        self.from
    }

    pub fn period(&self) -> Period {
        Period {
            from: self.from,
            stride: self.stride,
        }
    }

    /// Does every selected child of `self` beyond some point lie in `other`,
    /// with full (not just cofinal) coverage? Requires alignment.
    pub fn subset_of(&self, other: &LevelSel) -> bool {
        self.from >= other.from
            && self.stride % other.stride == 0
            && (self.from - other.from) % other.stride == 0
    }
}

/// An infinite suffix of child selectors; levels beyond the vector are full.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct TailSpec {
    pub levels: Vec<LevelSel>,
}

impl TailSpec {
    pub fn full() -> Self {
        TailSpec { levels: vec![] }
    }

    pub fn from_theta(theta: &[u32]) -> Self {
        TailSpec {
            levels: theta.iter().map(|&t| LevelSel::at_least(t)).collect(),
        }
    }

    pub fn level(&self, j: usize) -> LevelSel {
        self.levels.get(j).copied().unwrap_or(LevelSel::FULL)
    }

    pub fn suffix(&self, j: usize) -> TailSpec {
        TailSpec {
            levels: self.levels.get(j.min(self.levels.len())..).map(|l| l.to_vec()).unwrap_or_default(),
        }
    }

    /// Normalized: trailing full selectors dropped.
    pub fn canon(mut self) -> TailSpec {
        while self.levels.last() == Some(&LevelSel::FULL) {
            self.levels.pop();
        }
        self
    }

    pub fn accepts(&self, suffix: &Str) -> bool {
        (0..suffix.len()).all(|j| self.level(j).contains(suffix.entry(j)))
    }
}

/// Threshold tree: `{τ : τ ⪯ stem}` together with the extensions of the stem
/// whose entries clear the per-level bounds.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ThresholdTree {
    pub stem: Str,
    pub theta: Vec<u32>,
}

impl ThresholdTree {
    pub fn full() -> Self {
        ThresholdTree {
            stem: Str::empty(),
            theta: vec![],
        }
    }

    pub fn bound(&self, level_past_stem: usize) -> u32 {
        self.theta.get(level_past_stem).copied().unwrap_or(0)
    }

    pub fn member(&self, s: &Str) -> bool {
        if s.is_prefix_of(&self.stem) {
            return true;
        }
        if !self.stem.is_prefix_of(s) {
            return false;
        }
        (self.stem.len()..s.len()).all(|i| s.entry(i) >= self.bound(i - self.stem.len()))
    }

    fn canon(mut self) -> ThresholdTree {
        while self.theta.last() == Some(&0) {
            self.theta.pop();
        }
        self
    }
}

/// Graft: finite prefix-closed skeleton of named nodes; each may carry a tail
/// of generic children. A named node with no children and no tail is a closed
/// leaf.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GraftTree {
    pub nodes: BTreeMap<Str, Option<TailSpec>>,
}

impl GraftTree {
    pub fn new() -> Self {
        let mut nodes = BTreeMap::new();
        nodes.insert(Str::empty(), None);
        GraftTree { nodes }
    }

    /// Insert a node and all its prefixes (prefixes get no tail unless present).
    pub fn insert_chain(&mut self, s: &Str) {
        for p in s.prefixes() {
            self.nodes.entry(p).or_insert(None);
        }
    }

    pub fn set_tail(&mut self, s: &Str, tail: TailSpec) {
        self.insert_chain(s);
        self.nodes.insert(s.clone(), Some(tail.canon()));
    }

    pub fn named_children(&self, s: &Str) -> Vec<u32> {
        let mut out = Vec::new();
        for k in self.nodes.keys() {
            if k.len() == s.len() + 1 && s.is_prefix_of(k) {
                out.push(k.entry(s.len()));
            }
        }
        out
    }

    /// Longest named prefix of `s`.
    fn anchor(&self, s: &Str) -> Str {
        let mut best = Str::empty();
        for p in s.prefixes() {
            if self.nodes.contains_key(&p) {
                best = p;
            }
        }
        best
    }

    pub fn member(&self, s: &Str) -> bool {
        if self.nodes.contains_key(s) {
            return true;
        }
        let w = self.anchor(s);
        match self.nodes.get(&w) {
            Some(Some(tail)) => {
                let suffix = s.strip_prefix(&w).unwrap();
                tail.accepts(&suffix)
            }
            _ => false,
        }
    }

    pub fn prefix_closed(&self) -> bool {
        self.nodes
            .keys()
            .all(|k| k.parent().map(|p| self.nodes.contains_key(&p)).unwrap_or(true))
    }
}

/// A symbolic infinite (or grafted finite) tree.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TreeRep {
    Threshold(ThresholdTree),
    Graft(GraftTree),
}

/// What a node of a tree offers as children.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NodeChildren {
    pub named: Vec<u32>,
    pub tail: Option<LevelSel>,
}

impl NodeChildren {
    pub fn is_empty(&self) -> bool {
        self.named.is_empty() && self.tail.is_none()
    }

    pub fn contains(&self, n: u32) -> bool {
        self.named.contains(&n) || self.tail.map(|t| t.contains(n)).unwrap_or(false)
    }

    /// Least child, if any.
    pub fn least(&self) -> Option<u32> {
        let named = self.named.iter().copied().min();
        let tail = self.tail.map(|t| t.least());
        match (named, tail) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    /// Least child ≥ n, if any.
    pub fn least_at_least(&self, n: u32) -> Option<u32> {
        let named = self.named.iter().copied().filter(|&m| m >= n).min();
        let tail = self.tail.map(|t| t.first_at_least(n));
        match (named, tail) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    pub fn spectrum(&self) -> Spectrum {
        let mut sp = Spectrum::constant(false);
        if let Some(sel) = self.tail {
            if sel.stride == 1 {
                sp = sp.or(&Spectrum::step_at(sel.from));
            } else {
                sp = sp.or(&Spectrum::periodic(sel.period()));
            }
        }
        for &n in &self.named {
            if !sp.eval(n) {
                sp = sp.or(&Spectrum::exception(n, true));
            }
        }
        sp
    }
}

/// Membership, child spectrum, and leaf status of a node.
#[derive(Clone, Debug)]
pub struct TreeNodeInfo {
    pub member: bool,
    pub child_spec: Spectrum,
    pub is_leaf: bool,
}

/// Error for `common_branch`.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("stems are incompatible")]
pub struct IncompatibleStems;

impl TreeRep {
    pub fn full() -> TreeRep {
        TreeRep::Threshold(ThresholdTree::full())
    }

    pub fn threshold(stem: Str, theta: Vec<u32>) -> TreeRep {
        TreeRep::Threshold(ThresholdTree { stem, theta }.canon())
    }

    pub fn is_full(&self) -> bool {
        matches!(self, TreeRep::Threshold(t) if t.stem.is_empty() && t.theta.iter().all(|&x| x == 0))
    }

    pub fn member(&self, s: &Str) -> bool {
        match self {
            TreeRep::Threshold(t) => t.member(s),
            TreeRep::Graft(g) => g.member(s),
        }
    }

    /// Children of a node; `None` if the node is not in the tree.
    pub fn children(&self, s: &Str) -> Option<NodeChildren> {
        if !self.member(s) {
            return None;
        }
        match self {
            TreeRep::Threshold(t) => {
                if s.is_strict_prefix_of(&t.stem) {
                    Some(NodeChildren {
                        named: vec![t.stem.entry(s.len())],
                        tail: None,
                    })
                } else {
                    Some(NodeChildren {
                        named: vec![],
                        tail: Some(LevelSel::at_least(t.bound(s.len() - t.stem.len()))),
                    })
                }
            }
            TreeRep::Graft(g) => {
                if g.nodes.contains_key(s) {
                    let named = g.named_children(s);
                    let tail = g.nodes[s].as_ref().map(|t| t.level(0));
                    Some(NodeChildren { named, tail })
                } else {
                    let w = g.anchor(s);
                    let tail = g.nodes[&w].as_ref().expect("member implies tail");
                    let j = s.len() - w.len();
                    Some(NodeChildren {
                        named: vec![],
                        tail: Some(tail.level(j)),
                    })
                }
            }
        }
    }

    pub fn is_leaf(&self, s: &Str) -> bool {
        self.children(s).map(|c| c.is_empty()).unwrap_or(false)
    }

    pub fn node_info(&self, s: &Str) -> TreeNodeInfo {
        match self.children(s) {
            None => TreeNodeInfo {
                member: false,
                child_spec: Spectrum::constant(false),
                is_leaf: false,
            },
            Some(c) => TreeNodeInfo {
                member: true,
                child_spec: c.spectrum(),
                is_leaf: c.is_empty(),
            },
        }
    }

    /// The ⪯-least splitting node (conventional root for conditions).
    pub fn stem(&self) -> Str {
        match self {
            TreeRep::Threshold(t) => t.stem.clone(),
            TreeRep::Graft(_) => {
                let mut cur = Str::empty();
                loop {
                    let c = self.children(&cur).expect("root is a member");
                    if c.tail.is_some() || c.named.len() != 1 {
                        return cur;
                    }
                    cur = cur.child(c.named[0]);
                }
            }
        }
    }

    /// `[T] ≠ ∅`, decidable for the representation.
    pub fn has_path(&self) -> bool {
        match self {
            TreeRep::Threshold(_) => true,
            TreeRep::Graft(g) => g.nodes.values().any(|t| t.is_some()),
        }
    }

    /// The full subtree `T_τ = {σ : σ ⪯ τ ∨ τ ⪯ σ}`, in absolute coordinates.
    pub fn subtree_at(&self, tau: &Str) -> Option<TreeRep> {
        if !self.member(tau) {
            return None;
        }
        match self {
            TreeRep::Threshold(t) => {
                if tau.is_prefix_of(&t.stem) {
                    Some(TreeRep::Threshold(t.clone()))
                } else {
                    let skip = tau.len() - t.stem.len();
                    Some(TreeRep::threshold(
                        tau.clone(),
                        t.theta.get(skip..).map(|x| x.to_vec()).unwrap_or_default(),
                    ))
                }
            }
            TreeRep::Graft(g) => {
                let mut nodes: BTreeMap<Str, Option<TailSpec>> = BTreeMap::new();
                for p in tau.prefixes() {
                    nodes.insert(p, None);
                }
                if g.nodes.contains_key(tau) {
                    for (k, v) in &g.nodes {
                        if tau.is_prefix_of(k) {
                            nodes.insert(k.clone(), v.clone());
                        }
                    }
                } else {
                    let w = g.anchor(tau);
                    let tail = g.nodes[&w].as_ref().unwrap();
                    let j = tau.len() - w.len();
                    nodes.insert(tau.clone(), Some(tail.suffix(j)));
                }
                Some(TreeRep::Graft(GraftTree { nodes }))
            }
        }
    }

    /// Prune the tree so that entries at absolute positions ≥ `floor_from`
    /// clear `h(position)+1`: the thinning used to force domination. Named
    /// skeleton nodes violating the bound are dropped with their subtrees.
    pub fn dominate(&self, h: &[u32], floor_from: usize) -> TreeRep {
        let bound = |pos: usize| -> u32 {
            if pos < floor_from {
                0
            } else {
                h.get(pos).map(|&v| v + 1).unwrap_or(0)
            }
        };
        match self {
            TreeRep::Threshold(t) => {
                let mut theta = t.theta.clone();
                let need = (t.stem.len() + theta.len()).max(h.len());
                theta.resize(need.saturating_sub(t.stem.len()), 0);
                for (j, th) in theta.iter_mut().enumerate() {
                    *th = (*th).max(bound(t.stem.len() + j));
                }
                TreeRep::threshold(t.stem.clone(), theta)
            }
            TreeRep::Graft(g) => {
                let mut nodes: BTreeMap<Str, Option<TailSpec>> = BTreeMap::new();
                'nodes: for (k, v) in &g.nodes {
                    for i in 0..k.len() {
                        if k.entry(i) < bound(i) {
                            continue 'nodes;
                        }
                    }
                    let v2 = v.as_ref().map(|tail| {
                        let depth = tail.levels.len().max(h.len().saturating_sub(k.len()));
                        let mut levels = Vec::with_capacity(depth);
                        for j in 0..depth {
                            let sel = tail.level(j);
                            let b = bound(k.len() + j);
                            levels.push(LevelSel {
                                from: sel.first_at_least(b.max(sel.from)),
                                stride: sel.stride,
                            });
                        }
                        TailSpec { levels }.canon()
                    });
                    nodes.insert(k.clone(), v2);
                }
                TreeRep::Graft(GraftTree { nodes })
            }
        }
    }

    /// Explored fragment: nodes to `depth`, sampling named children plus tail
    /// grid points with entries ≤ `entry_cap` (always including the least
    /// selected child).
    pub fn explored_nodes(&self, depth: usize, entry_cap: u32) -> Vec<Str> {
        let mut out = vec![Str::empty()];
        let mut frontier = vec![Str::empty()];
        for _ in 0..depth {
            let mut next = Vec::new();
            for u in &frontier {
                if let Some(c) = self.children(u) {
                    let mut ns: Vec<u32> = c.named.iter().copied().filter(|&n| n <= entry_cap).collect();
                    if let Some(sel) = c.tail {
                        let mut n = sel.least();
                        loop {
                            if n > entry_cap && n != sel.least() {
                                break;
                            }
                            ns.push(n);
                            n = match n.checked_add(sel.stride) {
                                Some(v) => v,
                                None => break,
                            };
                            if n > entry_cap {
                                break;
                            }
                        }
                    }
                    ns.sort();
                    ns.dedup();
                    for n in ns {
                        next.push(u.child(n));
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }
}

/// Position inside a tree, in a form the rank engine can memoize on.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cursor {
    /// Below the stem of a threshold tree: the forced remaining stem.
    BelowStem { rest: Vec<u32>, levels: Vec<LevelSel> },
    /// Inside a region of pure per-level selectors.
    Sels { levels: Vec<LevelSel> },
    /// At a named node of the (fixed) graft.
    GraftAt(Str),
}

impl Cursor {
    pub fn root(tree: &TreeRep) -> Cursor {
        match tree {
            TreeRep::Threshold(t) => {
                let levels: Vec<LevelSel> = t.theta.iter().map(|&x| LevelSel::at_least(x)).collect();
                if t.stem.is_empty() {
                    Cursor::Sels { levels }
                } else {
                    Cursor::BelowStem {
                        rest: t.stem.0.clone(),
                        levels,
                    }
                }
            }
            TreeRep::Graft(_) => Cursor::GraftAt(Str::empty()),
        }
    }

    /// Cursor at a given member node.
    pub fn at(tree: &TreeRep, s: &Str) -> Option<Cursor> {
        if !tree.member(s) {
            return None;
        }
        Some(match tree {
            TreeRep::Threshold(t) => {
                let levels: Vec<LevelSel> = t.theta.iter().map(|&x| LevelSel::at_least(x)).collect();
                if s.is_strict_prefix_of(&t.stem) {
                    Cursor::BelowStem {
                        rest: t.stem.0[s.len()..].to_vec(),
                        levels,
                    }
                } else {
                    Cursor::Sels {
                        levels: levels.get(s.len() - t.stem.len()..).map(|x| x.to_vec()).unwrap_or_default(),
                    }
                }
            }
            TreeRep::Graft(g) => {
                if g.nodes.contains_key(s) {
                    Cursor::GraftAt(s.clone())
                } else {
                    let w = g.anchor(s);
                    let tail = g.nodes[&w].as_ref().unwrap();
                    let j = s.len() - w.len();
                    Cursor::Sels {
                        levels: tail.suffix(j).levels,
                    }
                }
            }
        })
    }

    /// Children offered at this cursor. The graft is consulted for GraftAt.
    pub fn children(&self, tree: &TreeRep) -> NodeChildren {
        match self {
            Cursor::BelowStem { rest, .. } => NodeChildren {
                named: vec![rest[0]],
                tail: None,
            },
            Cursor::Sels { levels } => NodeChildren {
                named: vec![],
                tail: Some(levels.first().copied().unwrap_or(LevelSel::FULL)),
            },
            Cursor::GraftAt(k) => match tree {
                TreeRep::Graft(g) => NodeChildren {
                    named: g.named_children(k),
                    tail: g.nodes[k].as_ref().map(|t| t.level(0)),
                },
                _ => unreachable!("graft cursor over non-graft"),
            },
        }
    }

    /// Cursor for child `n`, which must be a child at this position.
    pub fn descend(&self, tree: &TreeRep, n: u32) -> Cursor {
        match self {
            Cursor::BelowStem { rest, levels } => {
                debug_assert_eq!(n, rest[0]);
                if rest.len() == 1 {
                    Cursor::Sels {
                        levels: levels.clone(),
                    }
                } else {
                    Cursor::BelowStem {
                        rest: rest[1..].to_vec(),
                        levels: levels.clone(),
                    }
                }
            }
            Cursor::Sels { levels } => Cursor::Sels {
                levels: levels.get(1..).map(|x| x.to_vec()).unwrap_or_default(),
            },
            Cursor::GraftAt(k) => match tree {
                TreeRep::Graft(g) => {
                    let child = k.child(n);
                    if g.nodes.contains_key(&child) {
                        Cursor::GraftAt(child)
                    } else {
                        let tail = g.nodes[k].as_ref().expect("descend through tail");
                        Cursor::Sels {
                            levels: tail.suffix(1).levels,
                        }
                    }
                }
                _ => unreachable!(),
            },
        }
    }
}

impl TreeRep {
    fn subset_with(&self, other: &TreeRep) -> bool {
        fn go(
            ta: &TreeRep,
            tb: &TreeRep,
            a: &Cursor,
            b: &Cursor,
            seen: &mut Vec<(Cursor, Cursor)>,
        ) -> bool {
            let key = (a.clone(), b.clone());
            if seen.contains(&key) {
                return true;
            }
            seen.push(key);
            let ca = a.children(ta);
            let cb = b.children(tb);
            for &n in &ca.named {
                if !cb.contains(n) {
                    return false;
                }
                if !go(ta, tb, &a.descend(ta, n), &b.descend(tb, n), seen) {
                    return false;
                }
            }
            if let Some(sa) = ca.tail {
                match cb.tail {
                    None => return false,
                    Some(sb) => {
                        // Grid points of sa below the aligned region must be
                        // named in b; the cofinal region must align.
                        if !sa.subset_of(&sb) {
                            // Allow sa to start below sb.from when every early
                            // grid point is a named child of b.
                            let aligned = LevelSel {
                                from: sa.first_at_least(sb.from),
                                stride: sa.stride,
                            };
                            if !aligned.subset_of(&sb) {
                                return false;
                            }
                            let mut n = sa.from;
                            while n < aligned.from {
                                if !cb.named.contains(&n) {
                                    return false;
                                }
                                if !go(ta, tb, &a.descend(ta, n), &b.descend(tb, n), seen) {
                                    return false;
                                }
                                n += sa.stride;
                            }
                            let rep = aligned.from;
                            if !go(ta, tb, &a.descend(ta, rep), &b.descend(tb, rep), seen) {
                                return false;
                            }
                        } else {
                            let rep = sa.from;
                            if !go(ta, tb, &a.descend(ta, rep), &b.descend(tb, rep), seen) {
                                return false;
                            }
                        }
                        // Grid points that happen to be named in b with bespoke
                        // subtrees must still cover the uniform continuation.
                        for &n in &cb.named {
                            if sa.contains(n) {
                                if !go(ta, tb, &a.descend(ta, n), &b.descend(tb, n), seen) {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
            true
        }
        let mut seen = Vec::new();
        go(self, other, &Cursor::root(self), &Cursor::root(other), &mut seen)
    }
}

/// Leftmost common branch prefix of an ω-bushy tree and a Hechler-style tree.
pub fn common_branch(t: &TreeRep, s: &TreeRep, depth: usize) -> Result<Str, IncompatibleStems> {
    let st = t.stem();
    let ss = s.stem();
    if !st.comparable(&ss) {
        return Err(IncompatibleStems);
    }
    let long = if st.len() >= ss.len() { &st } else { &ss };
    if !t.member(long) || !s.member(long) {
        return Err(IncompatibleStems);
    }
    let mut cur = Str::empty();
    while cur.len() < depth {
        let ct = t.children(&cur).ok_or(IncompatibleStems)?;
        let cs = s.children(&cur).ok_or(IncompatibleStems)?;
        let bound = scan_bound(&ct).max(scan_bound(&cs));
        let mut found = None;
        for n in 0..=bound {
            if ct.contains(n) && cs.contains(n) {
                found = Some(n);
                break;
            }
        }
        match found {
            Some(n) => cur = cur.child(n),
            None => return Err(IncompatibleStems),
        }
    }
    Ok(cur)
}

fn scan_bound(c: &NodeChildren) -> u32 {
    let mut b = c.named.iter().copied().max().unwrap_or(0);
    if let Some(sel) = c.tail {
        b = b.max(sel.from + 2 * sel.stride);
    }
    b + 2
}

impl TreeRep {
    /// Structural inclusion check.
    pub fn included_in(&self, other: &TreeRep) -> bool {
        self.subset_with(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[u32]) -> Str {
        Str::from_slice(v)
    }

    #[test]
    fn threshold_membership() {
        let t = TreeRep::threshold(Str::empty(), vec![4]);
        assert!(!t.member(&s(&[3])));
        assert!(t.member(&s(&[4])));
        assert!(t.member(&s(&[4, 0])));
        let info = t.node_info(&Str::empty());
        assert!(info.member);
        assert!(!info.child_spec.eval(3));
        assert!(info.child_spec.eval(4));
        assert!(!info.is_leaf);
    }

    #[test]
    fn graft_closed_leaf() {
        let mut g = GraftTree::new();
        g.insert_chain(&s(&[1]));
        let t = TreeRep::Graft(g);
        assert!(t.node_info(&s(&[1])).is_leaf);
        assert!(!t.has_path());
    }

    #[test]
    fn graft_with_tail_has_path() {
        let mut g = GraftTree::new();
        g.set_tail(&s(&[0]), TailSpec::full());
        let t = TreeRep::Graft(g);
        assert!(t.has_path());
        assert!(t.member(&s(&[0, 7, 3])));
        assert!(!t.member(&s(&[1])));
    }

    #[test]
    fn has_path_examples() {
        assert!(TreeRep::full().has_path());
        let mut g = GraftTree::new();
        g.insert_chain(&s(&[0]));
        assert!(!TreeRep::Graft(g).has_path());
    }

    #[test]
    fn common_branch_examples() {
        let full = TreeRep::full();
        let th4 = TreeRep::threshold(Str::empty(), vec![4]);
        assert_eq!(common_branch(&full, &th4, 2).unwrap(), s(&[4, 0]));
        assert_eq!(common_branch(&full, &full, 3).unwrap(), s(&[0, 0, 0]));
        let th2 = TreeRep::threshold(Str::empty(), vec![2]);
        let th5 = TreeRep::threshold(Str::empty(), vec![5]);
        assert_eq!(common_branch(&th2, &th5, 1).unwrap(), s(&[5]));
    }

    #[test]
    fn common_branch_incompatible() {
        let a = TreeRep::threshold(s(&[0]), vec![]);
        let b = TreeRep::threshold(s(&[1]), vec![]);
        assert_eq!(common_branch(&a, &b, 1), Err(IncompatibleStems));
        // Compatible stems but the longer stem misses the other tree.
        let c = TreeRep::threshold(Str::empty(), vec![5]);
        assert_eq!(common_branch(&a, &c, 1), Err(IncompatibleStems));
    }

    #[test]
    fn subset_thresholds() {
        let a = TreeRep::threshold(Str::empty(), vec![6, 4]);
        let b = TreeRep::full();
        assert!(a.included_in(&b));
        assert!(!b.included_in(&a));
        assert!(a.included_in(&a));
    }

    #[test]
    fn subtree_at_threshold() {
        let t = TreeRep::threshold(Str::empty(), vec![2, 5]);
        let sub = t.subtree_at(&s(&[3])).unwrap();
        assert_eq!(sub, TreeRep::threshold(s(&[3]), vec![5]));
        assert!(t.subtree_at(&s(&[1])).is_none());
    }

    #[test]
    fn stride_tails() {
        let mut g = GraftTree::new();
        g.set_tail(
            &Str::empty(),
            TailSpec {
                levels: vec![LevelSel { from: 0, stride: 2 }],
            },
        );
        let t = TreeRep::Graft(g);
        assert!(t.member(&s(&[2])));
        assert!(!t.member(&s(&[3])));
        assert!(t.member(&s(&[2, 9])));
        let info = t.node_info(&Str::empty());
        assert!(info.child_spec.eval(0));
        assert!(!info.child_spec.eval(1));
        assert!(info.child_spec.infinitely_true());
    }

    #[test]
    fn graft_stem_walk() {
        let mut g = GraftTree::new();
        g.insert_chain(&s(&[2, 1]));
        g.set_tail(&s(&[2, 1]), TailSpec::full());
        let t = TreeRep::Graft(g);
        assert_eq!(t.stem(), s(&[2, 1]));
    }

    #[test]
    fn dominate_threshold() {
        let t = TreeRep::full();
        let d = t.dominate(&[5, 3], 0);
        assert_eq!(d, TreeRep::threshold(Str::empty(), vec![6, 4]));
        assert!(d.member(&s(&[6, 4])));
        assert!(!d.member(&s(&[5])));
    }
}
