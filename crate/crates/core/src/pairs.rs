//! Bigness on 2^<ω × ω^<ω: the pair-rank recursion
//!
//!   rank(σ,τ) = 0 iff (σ,τ) ∈ B, and for α > 0,
//!   rank(σ,τ) ≤ α iff ∃σ′ ≻ σ ∀σ″ ⪰ σ′ ∃σ‴ ⪰ σ″ ∃^∞n rank(σ‴, τ⌢n) < α.
//!
//! First-coordinate quantifiers are evaluated over the finite quotient of
//! binary strings by residual-state equivalence (one deep representative per
//! class); the ∃^∞ on the second coordinate is read off the tail class beyond
//! the breakpoint. Stretch offsets are clamped once they are satisfied for
//! every point within the recursion horizon, which keeps the state space
//! finite; a configurable budget guards the rest.

use std::collections::BTreeMap;

use crate::rank::{RankError, RankResult};
use crate::strings::{pf_reduce_pairs, BinStr, PairStr, Str};

/// A symbolic subset of 2^<ω × ω^<ω.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PairSetRep {
    Empty,
    /// Upward closure (componentwise prefix order) of finitely many pairs.
    UpFinP(Vec<PairStr>),
    /// Pairs whose second coordinate has length ≥ k.
    MinLenSecond(u32),
    /// Pairs with ⌊(|σ|+phase)/stretch⌋ ≥ |τ| + offset. Not upward closed in
    /// the second coordinate; admitted where the consumer documents it.
    StretchGE { stretch: u32, phase: u32, offset: i64 },
    Union(Vec<PairSetRep>),
    Inter(Vec<PairSetRep>),
}

impl PairSetRep {
    pub fn top() -> PairSetRep {
        PairSetRep::MinLenSecond(0)
    }

    pub fn is_top(&self) -> bool {
        matches!(self, PairSetRep::MinLenSecond(0))
    }

    pub fn member(&self, p: &PairStr) -> bool {
        match self {
            PairSetRep::Empty => false,
            PairSetRep::UpFinP(gens) => gens.iter().any(|g| g.leq(p)),
            PairSetRep::MinLenSecond(k) => p.second.len() as u32 >= *k,
            PairSetRep::StretchGE {
                stretch,
                phase,
                offset,
            } => {
                let lhs = (p.first.len() as i64 + *phase as i64).div_euclid(*stretch as i64);
                lhs >= p.second.len() as i64 + offset
            }
            PairSetRep::Union(parts) => parts.iter().any(|q| q.member(p)),
            PairSetRep::Inter(parts) => parts.iter().all(|q| q.member(p)),
        }
    }

    /// Localization at a pair: the set of suffix pairs landing in `self`.
    pub fn localize(&self, at: &PairStr) -> PairSetRep {
        match self {
            PairSetRep::Empty => PairSetRep::Empty,
            PairSetRep::UpFinP(gens) => {
                let mut out = Vec::new();
                for g in gens {
                    let f = if g.first.is_prefix_of(&at.first) {
                        Some(BinStr::empty())
                    } else {
                        g.first.strip_prefix(&at.first)
                    };
                    let s = if g.second.is_prefix_of(&at.second) {
                        Some(Str::empty())
                    } else {
                        g.second.strip_prefix(&at.second)
                    };
                    if let (Some(f), Some(s)) = (f, s) {
                        out.push(PairStr::new(f, s));
                    }
                }
                if out.is_empty() {
                    PairSetRep::Empty
                } else {
                    PairSetRep::UpFinP(out)
                }
            }
            PairSetRep::MinLenSecond(k) => {
                PairSetRep::MinLenSecond(k.saturating_sub(at.second.len() as u32))
            }
            PairSetRep::StretchGE {
                stretch,
                phase,
                offset,
            } => PairSetRep::StretchGE {
                stretch: *stretch,
                phase: phase + at.first.len() as u32,
                offset: offset + at.second.len() as i64,
            },
            PairSetRep::Union(parts) => {
                PairSetRep::Union(parts.iter().map(|q| q.localize(at)).collect())
            }
            PairSetRep::Inter(parts) => {
                PairSetRep::Inter(parts.iter().map(|q| q.localize(at)).collect())
            }
        }
    }

    /// Canonical form relative to a clamping horizon on remaining
    /// second-coordinate growth.
    pub fn canon(&self, horizon: i64) -> PairSetRep {
        enum Kind {
            U,
            I,
        }
        fn flatten(s: &PairSetRep, kind: &Kind, acc: &mut Vec<PairSetRep>, horizon: i64) {
            match (s, kind) {
                (PairSetRep::Union(parts), Kind::U) => {
                    for p in parts {
                        flatten(p, kind, acc, horizon);
                    }
                }
                (PairSetRep::Inter(parts), Kind::I) => {
                    for p in parts {
                        flatten(p, kind, acc, horizon);
                    }
                }
                _ => acc.push(s.canon(horizon)),
            }
        }
        match self {
            PairSetRep::Empty => PairSetRep::Empty,
            PairSetRep::UpFinP(gens) => {
                let r = pf_reduce_pairs(gens);
                if r.is_empty() {
                    PairSetRep::Empty
                } else if r.iter().any(|g| g.first.is_empty() && g.second.is_empty()) {
                    PairSetRep::top()
                } else {
                    PairSetRep::UpFinP(r)
                }
            }
            PairSetRep::MinLenSecond(k) => PairSetRep::MinLenSecond(*k),
            PairSetRep::StretchGE {
                stretch,
                phase,
                offset,
            } => {
                let s = (*stretch).max(1);
                let q = phase / s;
                let r = phase % s;
                let c = offset - q as i64;
                if c <= -horizon {
                    // Satisfied for every point reachable within the horizon.
                    PairSetRep::top()
                } else {
                    PairSetRep::StretchGE {
                        stretch: s,
                        phase: r,
                        offset: c,
                    }
                }
            }
            PairSetRep::Union(_) => {
                let mut parts = Vec::new();
                flatten(self, &Kind::U, &mut parts, horizon);
                let mut out = Vec::new();
                for p in parts {
                    if p.is_top() {
                        return PairSetRep::top();
                    }
                    if p != PairSetRep::Empty {
                        out.push(p);
                    }
                }
                out.sort();
                out.dedup();
                match out.len() {
                    0 => PairSetRep::Empty,
                    1 => out.pop().unwrap(),
                    _ => PairSetRep::Union(out),
                }
            }
            PairSetRep::Inter(_) => {
                let mut parts = Vec::new();
                flatten(self, &Kind::I, &mut parts, horizon);
                let mut out = Vec::new();
                for p in parts {
                    if p == PairSetRep::Empty {
                        return PairSetRep::Empty;
                    }
                    if !p.is_top() {
                        out.push(p);
                    }
                }
                out.sort();
                out.dedup();
                match out.len() {
                    0 => PairSetRep::top(),
                    1 => out.pop().unwrap(),
                    _ => PairSetRep::Inter(out),
                }
            }
        }
    }

    /// First n beyond which all second-coordinate children share a state.
    pub(crate) fn second_breakpoint(&self) -> u32 {
        match self {
            PairSetRep::UpFinP(gens) => gens
                .iter()
                .map(|g| {
                    if g.second.is_empty() {
                        0
                    } else {
                        g.second.entry(0) + 1
                    }
                })
                .max()
                .unwrap_or(0),
            PairSetRep::Union(parts) | PairSetRep::Inter(parts) => parts
                .iter()
                .map(|p| p.second_breakpoint())
                .max()
                .unwrap_or(0),
            _ => 0,
        }
    }

    pub fn second_depth(&self) -> u32 {
        match self {
            PairSetRep::Empty => 0,
            PairSetRep::UpFinP(gens) => {
                gens.iter().map(|g| g.second.len() as u32).max().unwrap_or(0)
            }
            PairSetRep::MinLenSecond(k) => *k,
            PairSetRep::StretchGE { offset, .. } => (*offset).max(0) as u32,
            PairSetRep::Union(parts) | PairSetRep::Inter(parts) => {
                parts.iter().map(|p| p.second_depth()).max().unwrap_or(0)
            }
        }
    }

    pub fn first_depth(&self) -> u32 {
        match self {
            PairSetRep::UpFinP(gens) => {
                gens.iter().map(|g| g.first.len() as u32).max().unwrap_or(0)
            }
            PairSetRep::Union(parts) | PairSetRep::Inter(parts) => {
                parts.iter().map(|p| p.first_depth()).max().unwrap_or(0)
            }
            _ => 0,
        }
    }

    /// Largest numeric entry compared against on the second coordinate.
    pub fn entry_bound(&self) -> u32 {
        match self {
            PairSetRep::UpFinP(gens) => gens.iter().map(|g| g.second.max_entry()).max().unwrap_or(0),
            PairSetRep::Union(parts) | PairSetRep::Inter(parts) => {
                parts.iter().map(|p| p.entry_bound()).max().unwrap_or(0)
            }
            _ => 0,
        }
    }

    /// Largest stretch among stretch atoms (1 if none).
    pub fn max_stretch(&self) -> u32 {
        match self {
            PairSetRep::StretchGE { stretch, .. } => (*stretch).max(1),
            PairSetRep::Union(parts) | PairSetRep::Inter(parts) => {
                parts.iter().map(|p| p.max_stretch()).max().unwrap_or(1)
            }
            _ => 1,
        }
    }

    pub fn max_offset(&self) -> i64 {
        match self {
            PairSetRep::StretchGE { offset, .. } => (*offset).max(0),
            PairSetRep::Union(parts) | PairSetRep::Inter(parts) => {
                parts.iter().map(|p| p.max_offset()).max().unwrap_or(0)
            }
            _ => 0,
        }
    }
}

/// Default recursion budget for a representation.
pub fn pair_budget(b: &PairSetRep) -> u32 {
    b.second_depth() + b.first_depth() + 4
}

fn all_stretch(s: &PairSetRep) -> bool {
    match s {
        PairSetRep::StretchGE { .. } => true,
        PairSetRep::Union(parts) | PairSetRep::Inter(parts) => parts.iter().all(all_stretch),
        _ => false,
    }
}

/// Finalized least-fixpoint analysis of the pair-rank functional on the
/// states reachable from one localized root. Also used by witness extraction
/// and verification.
pub(crate) struct PairAnalysis {
    pub(crate) horizon: i64,
    table: BTreeMap<PairSetRep, Option<u32>>,
    graphs: BTreeMap<PairSetRep, BTreeMap<PairSetRep, [PairSetRep; 2]>>,
}

impl PairAnalysis {
    /// A context with an empty table, for callers that only need state
    /// transitions and σ-graphs.
    pub(crate) fn fresh(horizon: i64) -> PairAnalysis {
        PairAnalysis {
            horizon,
            table: BTreeMap::new(),
            graphs: BTreeMap::new(),
        }
    }

    pub(crate) fn sigma_child(&self, state: &PairSetRep, bit: u8) -> PairSetRep {
        state
            .localize(&PairStr::new(BinStr::from_slice(&[bit]), Str::empty()))
            .canon(self.horizon)
    }

    pub(crate) fn sigma_append(&self, state: &PairSetRep, suffix: &BinStr) -> PairSetRep {
        state
            .localize(&PairStr::new(suffix.clone(), Str::empty()))
            .canon(self.horizon)
    }

    pub(crate) fn second_child(&self, state: &PairSetRep, n: u32) -> PairSetRep {
        state
            .localize(&PairStr::new(BinStr::empty(), Str::from_slice(&[n])))
            .canon(self.horizon)
    }

    /// σ-reachability graph from a state: nodes with their two bit successors.
    pub(crate) fn sigma_graph(
        &mut self,
        root: &PairSetRep,
    ) -> Result<BTreeMap<PairSetRep, [PairSetRep; 2]>, RankError> {
        if let Some(g) = self.graphs.get(root) {
            return Ok(g.clone());
        }
        let mut graph = BTreeMap::new();
        let mut queue = vec![root.clone()];
        while let Some(s) = queue.pop() {
            if graph.contains_key(&s) {
                continue;
            }
            if graph.len() >= 4096 {
                return Err(RankError::Overflow);
            }
            let succ = [self.sigma_child(&s, 0), self.sigma_child(&s, 1)];
            for t in &succ {
                if !graph.contains_key(t) {
                    queue.push(t.clone());
                }
            }
            graph.insert(s, succ);
        }
        self.graphs.insert(root.clone(), graph.clone());
        Ok(graph)
    }

    /// Rank evaluable without the table: member, empty, or stretch-only.
    fn base_rank(state: &PairSetRep) -> Option<Option<u32>> {
        if state.member(&PairStr::root()) {
            return Some(Some(0));
        }
        if *state == PairSetRep::Empty {
            return Some(None);
        }
        // A non-member state built from stretch atoms alone has rank exactly
        // 1: growing σ drives every offset below zero simultaneously, after
        // which all second-coordinate children are members. Evaluating this
        // analytically keeps the state pool off the unbounded offset ascent.
        if all_stretch(state) {
            return Some(Some(1));
        }
        None
    }

    pub(crate) fn rank_state(&self, state: &PairSetRep) -> Option<u32> {
        match Self::base_rank(state) {
            Some(v) => v,
            None => self.table.get(state).copied().flatten(),
        }
    }

    /// One application of the rank functional at a state, reading child ranks
    /// from the given table.
    fn eval(
        &mut self,
        state: &PairSetRep,
        table: &BTreeMap<PairSetRep, Option<u32>>,
    ) -> Result<Option<u32>, RankError> {
        if let Some(v) = Self::base_rank(state) {
            return Ok(v);
        }
        let graph = self.sigma_graph(state)?;
        let read = |child: &PairSetRep| -> Option<u32> {
            match Self::base_rank(child) {
                Some(v) => v,
                None => table.get(child).copied().flatten(),
            }
        };
        // nrank(s): rank of the shared tail class of second-coordinate
        // children; finitely many exceptional children never witness ∃^∞.
        let mut nrank: BTreeMap<&PairSetRep, Option<u32>> = BTreeMap::new();
        for s in graph.keys() {
            let child = self.second_child(s, s.second_breakpoint());
            nrank.insert(s, read(&child));
        }
        let mut cs: Vec<u32> = nrank.values().filter_map(|v| *v).collect();
        cs.sort();
        cs.dedup();
        for c in cs {
            if q_holds(&graph, state, |s| nrank[s].map(|r| r <= c).unwrap_or(false)) {
                return Ok(Some(c + 1));
            }
        }
        Ok(None)
    }
}

/// The ∃σ′ ≻ σ ∀σ″ ⪰ σ′ ∃σ‴ ⪰ σ″ pattern over a σ-state graph.
pub(crate) fn q_holds(
    graph: &BTreeMap<PairSetRep, [PairSetRep; 2]>,
    root: &PairSetRep,
    g: impl Fn(&PairSetRep) -> bool,
) -> bool {
    // CanReach: states from which some σ-extension (possibly itself) is in g.
    let mut can: BTreeMap<&PairSetRep, bool> = graph.keys().map(|s| (s, g(s))).collect();
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
    // Candidate σ′ states: reachable from the root in ≥ 1 step; all states
    // reachable from the candidate (including itself) must be in CanReach.
    let mut strict: Vec<&PairSetRep> = Vec::new();
    let mut queue: Vec<&PairSetRep> = graph[root].iter().collect();
    while let Some(s) = queue.pop() {
        if strict.contains(&s) {
            continue;
        }
        strict.push(s);
        for t in &graph[s] {
            if !strict.contains(&t) {
                queue.push(t);
            }
        }
    }
    'cand: for s in strict {
        let mut seen: Vec<&PairSetRep> = Vec::new();
        let mut q = vec![s];
        while let Some(t) = q.pop() {
            if seen.contains(&t) {
                continue;
            }
            seen.push(t);
            if !can[t] {
                continue 'cand;
            }
            for u in &graph[t] {
                q.push(u);
            }
        }
        return true;
    }
    false
}

/// Kleene iteration of the rank functional from the empty table over the
/// state pool reachable from the root (σ-graphs plus tail-class children).
pub(crate) fn analyze(
    b: &PairSetRep,
    p: &PairStr,
    budget: u32,
) -> Result<(PairAnalysis, PairSetRep), RankError> {
    let horizon = budget as i64 + 1;
    let mut an = PairAnalysis {
        horizon,
        table: BTreeMap::new(),
        graphs: BTreeMap::new(),
    };
    let root = b.localize(p).canon(horizon);

    // Build the pool: close under σ-graphs and tail-class children, stopping
    // at states whose rank is evaluable without the table. Track the
    // second-coordinate depth to enforce the budget.
    let mut pool: Vec<PairSetRep> = Vec::new();
    let mut frontier: std::collections::VecDeque<(PairSetRep, u32)> =
        std::collections::VecDeque::from([(root.clone(), 0)]);
    let mut seen: BTreeMap<PairSetRep, ()> = BTreeMap::new();
    while let Some((s, d)) = frontier.pop_front() {
        if seen.contains_key(&s) {
            continue;
        }
        seen.insert(s.clone(), ());
        if PairAnalysis::base_rank(&s).is_some() {
            continue;
        }
        if d >= budget {
            return Err(RankError::Overflow);
        }
        pool.push(s.clone());
        let graph = an.sigma_graph(&s)?;
        for t in graph.keys() {
            if !seen.contains_key(t) {
                frontier.push_back((t.clone(), d));
            }
            let child = an.second_child(t, t.second_breakpoint());
            if !seen.contains_key(&child) {
                frontier.push_back((child, d + 1));
            }
        }
    }

    // Iterate to the least fixpoint; ranks only appear or decrease.
    let max_rounds = pool.len() as u32 * (budget + 2) + 2;
    let mut rounds = 0;
    loop {
        let prev = an.table.clone();
        let mut next = BTreeMap::new();
        for s in &pool {
            next.insert(s.clone(), an.eval(s, &prev)?);
        }
        let stable = next == prev;
        an.table = next;
        if stable {
            break;
        }
        rounds += 1;
        if rounds > max_rounds {
            return Err(RankError::Overflow);
        }
    }
    Ok((an, root))
}

/// Least pair-rank of `p` for the set `b`, or `Small`.
pub fn pair_rank(b: &PairSetRep, p: &PairStr) -> Result<RankResult, RankError> {
    pair_rank_with_budget(b, p, pair_budget(b))
}

pub fn pair_rank_with_budget(
    b: &PairSetRep,
    p: &PairStr,
    budget: u32,
) -> Result<RankResult, RankError> {
    let (an, root) = analyze(b, p, budget)?;
    Ok(match an.rank_state(&root) {
        None => RankResult::Small,
        Some(r) => RankResult::Big(r),
    })
}

/// Bounded brute-force evaluator: binary strings to a length cap, the ∃^∞
/// quantifier read at the single fresh value past the instance's entry bound,
/// quantifier sweeps done bottom-up over the bounded binary tree. Independent
/// of the state machinery.
pub fn pair_rank_oracle(b: &PairSetRep, p: &PairStr, sigma_cap: usize, budget: u32) -> Option<u32> {
    let fresh = b.entry_bound().max(p.second.max_entry()) + 1;
    // Universe: extensions of p.first by at most sigma_cap bits.
    let mut universe: Vec<BinStr> = vec![p.first.clone()];
    let mut frontier = vec![p.first.clone()];
    for _ in 0..sigma_cap {
        let mut next = Vec::new();
        for s in &frontier {
            next.push(s.child(0));
            next.push(s.child(1));
        }
        universe.extend(next.iter().cloned());
        frontier = next;
    }
    universe.sort();

    // ranks[level] : σ ↦ rank of (σ, p.second ⌢ fresh^level), computed from
    // the deepest level up.
    let levels = budget as usize + 1;
    let mut ranks: Vec<BTreeMap<BinStr, Option<u32>>> = vec![BTreeMap::new(); levels];
    for level in (0..levels).rev() {
        let mut tau = p.second.clone();
        for _ in 0..level {
            tau = tau.child(fresh);
        }
        // Pass 0: members get rank 0.
        for s in &universe {
            let m = b.member(&PairStr::new(s.clone(), tau.clone()));
            ranks[level].insert(s.clone(), if m { Some(0) } else { None });
        }
        if level + 1 >= levels {
            continue;
        }
        let child_ranks = ranks[level + 1].clone();
        let mut cs: Vec<u32> = child_ranks.values().filter_map(|v| *v).collect();
        cs.sort();
        cs.dedup();
        for c in cs {
            // good(σ): some extension σ‴ ⪰ σ in the universe has fresh-child
            // rank ≤ c.
            let mut good: BTreeMap<&BinStr, bool> = BTreeMap::new();
            for s in universe.iter().rev() {
                let own = child_ranks[s].map(|r| r <= c).unwrap_or(false);
                let kids = if s.len() < p.first.len() + sigma_cap {
                    *good.get(&s.child(0)).unwrap_or(&false) || *good.get(&s.child(1)).unwrap_or(&false)
                } else {
                    false
                };
                good.insert(s, own || kids);
            }
            let good: BTreeMap<BinStr, bool> = good.into_iter().map(|(k, v)| (k.clone(), v)).collect();
            // alldense(σ′): every σ″ ⪰ σ′ in the universe is good.
            let mut alldense: BTreeMap<BinStr, bool> = BTreeMap::new();
            for s in universe.iter().rev() {
                let kids = if s.len() < p.first.len() + sigma_cap {
                    alldense[&s.child(0)] && alldense[&s.child(1)]
                } else {
                    true
                };
                alldense.insert(s.clone(), good[s] && kids);
            }
            // exists-strict(σ): some strict extension is alldense. At the cap
            // the residual state has stabilized, so extensions of a boundary
            // string behave like the string itself.
            let mut es: BTreeMap<BinStr, bool> = BTreeMap::new();
            for s in universe.iter().rev() {
                let v = if s.len() < p.first.len() + sigma_cap {
                    alldense[&s.child(0)]
                        || alldense[&s.child(1)]
                        || es[&s.child(0)]
                        || es[&s.child(1)]
                } else {
                    alldense[s]
                };
                es.insert(s.clone(), v);
            }
            for s in &universe {
                if ranks[level][s].is_none() && es[s] {
                    ranks[level].insert(s.clone(), Some(c + 1));
                }
            }
        }
    }
    ranks[0][&p.first]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(v: &[u8]) -> BinStr {
        BinStr::from_slice(v)
    }

    fn st(v: &[u32]) -> Str {
        Str::from_slice(v)
    }

    fn pr(f: &[u8], s: &[u32]) -> PairStr {
        PairStr::new(bs(f), st(s))
    }

    #[test]
    fn pair_rank_examples() {
        assert_eq!(
            pair_rank(&PairSetRep::Empty, &PairStr::root()).unwrap(),
            RankResult::Small
        );
        assert_eq!(
            pair_rank(&PairSetRep::MinLenSecond(1), &PairStr::root()).unwrap(),
            RankResult::Big(1)
        );
        let b = PairSetRep::UpFinP(vec![pr(&[0], &[])]);
        assert_eq!(pair_rank(&b, &PairStr::root()).unwrap(), RankResult::Big(1));
        assert_eq!(pair_rank(&b, &pr(&[1], &[])).unwrap(), RankResult::Small);
    }

    #[test]
    fn stretch_is_cp_like() {
        // ⌊|σ|/1⌋ ≥ |τ|: big above everything.
        let cp = PairSetRep::StretchGE {
            stretch: 1,
            phase: 0,
            offset: 0,
        };
        assert_eq!(pair_rank(&cp, &PairStr::root()).unwrap(), RankResult::Big(0));
        assert_eq!(
            pair_rank(&cp, &pr(&[], &[5])).unwrap(),
            RankResult::Big(1)
        );
        assert_eq!(
            pair_rank(&cp, &pr(&[1, 0], &[5, 5, 5])).unwrap(),
            RankResult::Big(1)
        );
    }

    #[test]
    fn min_len_second_rank_counts_levels() {
        assert_eq!(
            pair_rank(&PairSetRep::MinLenSecond(3), &PairStr::root()).unwrap(),
            RankResult::Big(3)
        );
        assert_eq!(
            pair_rank(&PairSetRep::MinLenSecond(3), &pr(&[], &[9, 9])).unwrap(),
            RankResult::Big(1)
        );
    }

    #[test]
    fn oracle_agrees_spot() {
        let cases = vec![
            PairSetRep::MinLenSecond(2),
            PairSetRep::UpFinP(vec![pr(&[0], &[]), pr(&[1], &[2])]),
            PairSetRep::Union(vec![
                PairSetRep::UpFinP(vec![pr(&[0, 1], &[1])]),
                PairSetRep::MinLenSecond(2),
            ]),
            PairSetRep::Inter(vec![
                PairSetRep::MinLenSecond(1),
                PairSetRep::StretchGE {
                    stretch: 1,
                    phase: 0,
                    offset: 0,
                },
            ]),
        ];
        for b in cases {
            for p in [PairStr::root(), pr(&[0], &[]), pr(&[1], &[0])] {
                let budget = pair_budget(&b);
                let engine = pair_rank(&b, &p).unwrap();
                let cap = (b.first_depth() + p.first.len() as u32
                    + b.max_stretch() * (b.max_offset() as u32 + budget + 1)
                    + 2) as usize;
                let oracle = pair_rank_oracle(&b, &p, cap.min(10), budget);
                assert_eq!(engine.rank(), oracle, "set {b:?} at {p:?}");
            }
        }
    }

    #[test]
    fn union_law_spot() {
        let a = PairSetRep::UpFinP(vec![pr(&[0], &[])]);
        let b = PairSetRep::MinLenSecond(2);
        let u = PairSetRep::Union(vec![a.clone(), b.clone()]);
        for p in [PairStr::root(), pr(&[0], &[1])] {
            let ra = pair_rank(&a, &p).unwrap().rank();
            let rb = pair_rank(&b, &p).unwrap().rank();
            let ru = pair_rank(&u, &p).unwrap().rank();
            let expect = match (ra, rb) {
                (Some(x), Some(y)) => Some(x.min(y)),
                (x, y) => x.or(y),
            };
            assert_eq!(ru, expect);
        }
    }
}
