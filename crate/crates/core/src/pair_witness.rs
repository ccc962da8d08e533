//! Bigness witnesses for the pair calculus: finite node sets with a
//! justification map, generic-child templates on the second coordinate, and
//! deep-representative markers for length-stabilized binary classes.

use std::collections::BTreeMap;

use crate::pairs::{analyze, pair_budget, pair_rank_with_budget, PairSetRep};
use crate::rank::{RankError, RankResult};
use crate::strings::{BinStr, PairStr};
use crate::witness::ExtractError;

/// One class of generic children: every binary extension sharing the
/// representative's localized state, paired with every second coordinate
/// n ≥ n_from, continues with the shape stored under `child`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairClass {
    /// Suffix relative to the parent node's first coordinate; extends the
    /// template's sigma_prime.
    pub rep_sigma: BinStr,
    pub n_from: u32,
    pub child: usize,
}

/// Children template of an internal node: the strict extension σ′ past which
/// every binary string can be extended into one of the classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairTemplate {
    /// Nonempty suffix relative to the parent node's first coordinate.
    pub sigma_prime: BinStr,
    pub classes: Vec<PairClass>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairWitnessNode {
    /// Representative pair in absolute coordinates.
    pub pair: PairStr,
    /// Indices of the nodes justifying this one (empty exactly at the stem).
    pub justifiers: Vec<usize>,
    /// Present iff the node is internal (a justification for its children).
    pub template: Option<PairTemplate>,
}

/// A finite certificate of pair-bigness: node 0 is the stem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairWitness {
    pub stem: PairStr,
    pub nodes: Vec<PairWitnessNode>,
}

impl PairWitness {
    pub fn single(stem: PairStr) -> Self {
        PairWitness {
            stem: stem.clone(),
            nodes: vec![PairWitnessNode {
                pair: stem,
                justifiers: vec![],
                template: None,
            }],
        }
    }

    pub fn leaf_indices(&self) -> Vec<usize> {
        self.nodes
            .iter()
            .enumerate()
            .filter(|(_, n)| n.template.is_none())
            .map(|(i, _)| i)
            .collect()
    }
}

/// Extract the canonical witness for a big instance: descending ranks with
/// one deep representative per first-coordinate state class.
pub fn extract_pair_witness(b: &PairSetRep, p: &PairStr) -> Result<PairWitness, ExtractError> {
    extract_pair_witness_budget(b, p, pair_budget(b))
}

pub fn extract_pair_witness_budget(
    b: &PairSetRep,
    p: &PairStr,
    budget: u32,
) -> Result<PairWitness, ExtractError> {
    let (mut an, root) = analyze(b, p, budget)?;
    if an.rank_state(&root).is_none() {
        return Err(ExtractError::NotBig);
    }
    let mut w = PairWitness {
        stem: p.clone(),
        nodes: vec![],
    };
    build(&mut an, &mut w, root, p.clone(), None)?;
    Ok(w)
}

fn build(
    an: &mut crate::pairs::PairAnalysis,
    w: &mut PairWitness,
    state: PairSetRep,
    pair: PairStr,
    justifier: Option<usize>,
) -> Result<usize, ExtractError> {
    let rank = an.rank_state(&state).expect("build called on ranked state");
    let idx = w.nodes.len();
    w.nodes.push(PairWitnessNode {
        pair: pair.clone(),
        justifiers: justifier.into_iter().collect(),
        template: None,
    });
    if rank == 0 {
        return Ok(idx);
    }
    let target = rank - 1;
    // Leftmost shortest strict suffix σ′ whose cone is dense into the target
    // rank classes.
    let nrank_le = |an: &mut crate::pairs::PairAnalysis, s: &PairSetRep, c: u32| -> bool {
        let child = an.second_child(s, s.second_breakpoint());
        an.rank_state(&child).map(|r| r <= c).unwrap_or(false)
    };
    let mut sigma_prime = None;
    let mut frontier = vec![BinStr::empty()];
    'bfs: for _ in 0..64 {
        let mut next = Vec::new();
        for v in &frontier {
            for bit in 0..=1u8 {
                let cand = v.child(bit);
                let cs = an.sigma_append(&state, &cand);
                let graph = an.sigma_graph(&cs).map_err(ExtractError::Rank)?;
                let mut states: Vec<&PairSetRep> = graph.keys().collect();
                states.sort();
                let good: Vec<PairSetRep> = states
                    .iter()
                    .filter(|s| nrank_le(an, s, target))
                    .map(|s| (*s).clone())
                    .collect();
                if !good.is_empty() && all_reach(&graph, &cs, &good) {
                    sigma_prime = Some((cand, cs, graph, good));
                    break 'bfs;
                }
                next.push(cand);
            }
        }
        frontier = next;
    }
    let (sigma_prime, sp_state, graph, class_states) =
        sigma_prime.expect("ranked state admits a dense strict extension");
    // One representative per class state: leftmost shortest path from σ′.
    let mut classes = Vec::new();
    for cstate in class_states {
        let suffix = shortest_path(&graph, &sp_state, &cstate);
        let rep_sigma = sigma_prime.concat(&suffix);
        let n_from = cstate.second_breakpoint();
        let child_state = an.second_child(&cstate, n_from);
        let child_pair = PairStr::new(
            pair.first.concat(&rep_sigma),
            pair.second.child(n_from),
        );
        let child = build(an, w, child_state, child_pair, Some(idx))?;
        classes.push(PairClass {
            rep_sigma,
            n_from,
            child,
        });
    }
    w.nodes[idx].template = Some(PairTemplate {
        sigma_prime,
        classes,
    });
    Ok(idx)
}

/// Every state reachable from `root` (including it) can σ-reach some target.
fn all_reach(
    graph: &BTreeMap<PairSetRep, [PairSetRep; 2]>,
    root: &PairSetRep,
    targets: &[PairSetRep],
) -> bool {
    let mut can: BTreeMap<&PairSetRep, bool> = graph
        .keys()
        .map(|s| (s, targets.contains(s)))
        .collect();
    loop {
        let mut changed = false;
        for (s, succ) in graph {
            if !can[s] && succ.iter().any(|t| can[t]) {
                *can.get_mut(s).unwrap() = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut seen: Vec<&PairSetRep> = Vec::new();
    let mut q = vec![root];
    while let Some(t) = q.pop() {
        if seen.contains(&t) {
            continue;
        }
        seen.push(t);
        if !can[t] {
            return false;
        }
        for u in &graph[t] {
            q.push(u);
        }
    }
    true
}

/// Leftmost shortest bit path from one state to another in a σ-graph.
fn shortest_path(
    graph: &BTreeMap<PairSetRep, [PairSetRep; 2]>,
    from: &PairSetRep,
    to: &PairSetRep,
) -> BinStr {
    if from == to {
        return BinStr::empty();
    }
    let mut frontier = vec![(from.clone(), BinStr::empty())];
    let mut seen = vec![from.clone()];
    loop {
        let mut next = Vec::new();
        for (s, path) in &frontier {
            for bit in 0..=1u8 {
                let t = graph[s][bit as usize].clone();
                let p = path.child(bit);
                if t == *to {
                    return p;
                }
                if !seen.contains(&t) {
                    seen.push(t.clone());
                    next.push((t, p));
                }
            }
        }
        assert!(!next.is_empty(), "target state is reachable");
        frontier = next;
    }
}

/// Verify the four structural conditions, acyclicity, and that all leaves lie
/// in the set. Template density is model-checked on the localized state
/// graph; template subtrees are re-checked at every exceptional generic child
/// and at the stabilized tail class.
pub fn verify_pair_witness(b: &PairSetRep, w: &PairWitness) -> bool {
    verify_pair_witness_budget(b, w, pair_budget(b) + w.nodes.len() as u32)
}

pub fn verify_pair_witness_budget(b: &PairSetRep, w: &PairWitness, budget: u32) -> bool {
    if w.nodes.is_empty() || w.nodes[0].pair != w.stem || !w.nodes[0].justifiers.is_empty() {
        return false;
    }
    // Structure: justification edges shrink the first coordinate strictly and
    // extend the second by exactly one entry; every node sits above the stem.
    for (i, node) in w.nodes.iter().enumerate() {
        if !w.stem.leq(&node.pair) {
            return false;
        }
        if i != 0 && node.justifiers.is_empty() {
            return false;
        }
        for &j in &node.justifiers {
            if j >= w.nodes.len() {
                return false;
            }
            let parent = &w.nodes[j];
            if !parent.pair.first.is_strict_prefix_of(&node.pair.first) {
                return false;
            }
            let tau = &node.pair.second;
            if tau.len() != parent.pair.second.len() + 1
                || !parent.pair.second.is_prefix_of(tau)
            {
                return false;
            }
        }
    }
    // Template consistency and reachability of every node from the stem.
    let mut reached = vec![false; w.nodes.len()];
    reached[0] = true;
    let mut queue = vec![0usize];
    while let Some(i) = queue.pop() {
        if let Some(t) = &w.nodes[i].template {
            if t.sigma_prime.is_empty() {
                return false;
            }
            if t.classes.is_empty() {
                return false;
            }
            for class in &t.classes {
                if !t.sigma_prime.is_prefix_of(&class.rep_sigma) {
                    return false;
                }
                if class.child >= w.nodes.len() || class.child == i {
                    return false;
                }
                let child = &w.nodes[class.child];
                if !child.justifiers.contains(&i) {
                    return false;
                }
                let expect = PairStr::new(
                    w.nodes[i].pair.first.concat(&class.rep_sigma),
                    w.nodes[i].pair.second.child(class.n_from),
                );
                if child.pair != expect {
                    return false;
                }
                if !reached[class.child] {
                    reached[class.child] = true;
                    queue.push(class.child);
                }
            }
        }
    }
    if !reached.iter().all(|&r| r) {
        return false;
    }
    // A node is a justifier iff it has a template.
    let mut justifies = vec![false; w.nodes.len()];
    for node in &w.nodes {
        for &j in &node.justifiers {
            justifies[j] = true;
        }
    }
    for (i, node) in w.nodes.iter().enumerate() {
        if node.template.is_some() != justifies[i] {
            return false;
        }
    }

    let horizon = budget as i64 + 1;
    let mut an = crate::pairs::PairAnalysis::fresh(horizon);
    let root = b.localize(&w.stem).canon(horizon);
    verify_sub(&mut an, w, 0, root, w.nodes.len() as u32 + budget)
}

fn verify_sub(
    an: &mut crate::pairs::PairAnalysis,
    w: &PairWitness,
    idx: usize,
    state: PairSetRep,
    fuel: u32,
) -> bool {
    if fuel == 0 {
        return false;
    }
    let node = &w.nodes[idx];
    let Some(template) = &node.template else {
        return state.member(&PairStr::root());
    };
    let sp_state = an.sigma_append(&state, &template.sigma_prime);
    let Ok(graph) = an.sigma_graph(&sp_state) else {
        return false;
    };
    let mut class_states = Vec::new();
    for class in &template.classes {
        let cstate = an.sigma_append(&state, &class.rep_sigma);
        if !graph.contains_key(&cstate) {
            return false;
        }
        class_states.push(cstate);
    }
    if !all_reach(&graph, &sp_state, &class_states) {
        return false;
    }
    for (class, cstate) in template.classes.iter().zip(class_states.iter()) {
        let bp = cstate.second_breakpoint().max(class.n_from);
        for n in class.n_from..=bp {
            let child_state = an.second_child(cstate, n);
            if !verify_sub(an, w, class.child, child_state, fuel - 1) {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("a per-leaf witness stem differs from its graft leaf")]
pub struct StemMismatch;

/// Concatenate an outer witness with per-leaf witnesses: the union of the
/// node sets and justification maps, keeping the outer stem. Leaves of the
/// result are exactly the inner witnesses' leaves. Leaves without an entry
/// stand as their own (single-node) continuation.
pub fn concat_pair_witnesses(
    outer: &PairWitness,
    per_leaf: &BTreeMap<usize, PairWitness>,
) -> Result<PairWitness, StemMismatch> {
    for (&idx, inner) in per_leaf {
        if idx >= outer.nodes.len() || outer.nodes[idx].template.is_some() {
            return Err(StemMismatch);
        }
        if inner.stem != outer.nodes[idx].pair {
            return Err(StemMismatch);
        }
    }
    let mut merged = outer.clone();
    for (&leaf, inner) in per_leaf {
        let base = merged.nodes.len();
        let remap = |i: usize| if i == 0 { leaf } else { base + i - 1 };
        for (i, node) in inner.nodes.iter().enumerate().skip(1) {
            let _ = i;
            merged.nodes.push(PairWitnessNode {
                pair: node.pair.clone(),
                justifiers: node.justifiers.iter().map(|&j| remap(j)).collect(),
                template: node.template.as_ref().map(|t| PairTemplate {
                    sigma_prime: t.sigma_prime.clone(),
                    classes: t
                        .classes
                        .iter()
                        .map(|c| PairClass {
                            rep_sigma: c.rep_sigma.clone(),
                            n_from: c.n_from,
                            child: remap(c.child),
                        })
                        .collect(),
                }),
            });
        }
        merged.nodes[leaf].template = inner.nodes[0].template.as_ref().map(|t| PairTemplate {
            sigma_prime: t.sigma_prime.clone(),
            classes: t
                .classes
                .iter()
                .map(|c| PairClass {
                    rep_sigma: c.rep_sigma.clone(),
                    n_from: c.n_from,
                    child: remap(c.child),
                })
                .collect(),
        });
    }
    Ok(merged)
}

/// Convenience: the round trip used by the idempotency law. Requires the
/// instance to be big.
pub fn pair_rank_is_big(b: &PairSetRep, p: &PairStr) -> Result<bool, RankError> {
    Ok(matches!(
        pair_rank_with_budget(b, p, pair_budget(b))?,
        RankResult::Big(_)
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strings::Str;

    fn bs(v: &[u8]) -> BinStr {
        BinStr::from_slice(v)
    }

    fn pr(f: &[u8], s: &[u32]) -> PairStr {
        PairStr::new(bs(f), Str::from_slice(s))
    }

    #[test]
    fn extract_minlen_second() {
        let b = PairSetRep::MinLenSecond(1);
        let w = extract_pair_witness(&b, &PairStr::root()).unwrap();
        assert!(w.nodes[0].template.is_some());
        assert!(verify_pair_witness(&b, &w));
    }

    #[test]
    fn extract_stem_member() {
        let b = PairSetRep::UpFinP(vec![PairStr::root()]);
        let w = extract_pair_witness(&b, &PairStr::root()).unwrap();
        assert_eq!(w.nodes.len(), 1);
        assert!(verify_pair_witness(&b, &w));
    }

    #[test]
    fn extract_not_big() {
        assert_eq!(
            extract_pair_witness(&PairSetRep::Empty, &PairStr::root()),
            Err(ExtractError::NotBig)
        );
    }

    #[test]
    fn extract_first_coordinate_cone() {
        let b = PairSetRep::UpFinP(vec![pr(&[0], &[])]);
        let w = extract_pair_witness(&b, &PairStr::root()).unwrap();
        assert!(verify_pair_witness(&b, &w));
        // The justification must strictly extend the first coordinate.
        for node in &w.nodes[1..] {
            assert!(!node.pair.first.is_empty());
        }
    }

    #[test]
    fn verify_rejects_mutations() {
        let b = PairSetRep::MinLenSecond(1);
        let w = extract_pair_witness(&b, &PairStr::root()).unwrap();

        // Justification whose first coordinate does not strictly shrink.
        let mut broken = w.clone();
        for node in broken.nodes.iter_mut().skip(1) {
            node.pair.first = BinStr::empty();
        }
        assert!(!verify_pair_witness(&b, &broken));

        // Justification cycle: make the stem justified by its child.
        let mut cyclic = w.clone();
        cyclic.nodes[0].justifiers = vec![1];
        assert!(!verify_pair_witness(&b, &cyclic));

        // Leaf outside the set.
        let single = PairWitness::single(PairStr::root());
        assert!(!verify_pair_witness(&b, &single));
    }

    #[test]
    fn concat_round_trip() {
        // Outer certifies a single-node witness; inner the same.
        let b = PairSetRep::UpFinP(vec![PairStr::root()]);
        let outer = PairWitness::single(PairStr::root());
        let mut map = BTreeMap::new();
        map.insert(0usize, PairWitness::single(PairStr::root()));
        let merged = concat_pair_witnesses(&outer, &map).unwrap();
        assert_eq!(merged.nodes.len(), 1);
        assert!(verify_pair_witness(&b, &merged));

        // Mismatched stem.
        let mut bad = BTreeMap::new();
        bad.insert(0usize, PairWitness::single(pr(&[0], &[])));
        assert_eq!(concat_pair_witnesses(&outer, &bad), Err(StemMismatch));
    }
}
