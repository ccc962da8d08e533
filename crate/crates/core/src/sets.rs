//! Symbolic upward-closed subsets of ω^<ω.
//!
//! Every atom denotes a set closed under the prefix-extension order, so the
//! invariant "bad sets are upwards closed" holds structurally. The algebra is
//! closed under localization at a string (residuals), which the rank engine
//! relies on.

use crate::spectrum::Spectrum;
use crate::strings::{pf_reduce, Str};

/// An upward-closed subset of ω^<ω.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SetRep {
    /// The empty set.
    Empty,
    /// Upward closure of a finite set of generators.
    UpFin(Vec<Str>),
    /// All strings of length ≥ k.
    MinLen(u32),
    /// All strings s with |s| > i and s(i) ≥ m.
    CoordGE(u32, u32),
    /// Finite union.
    Union(Vec<SetRep>),
}

impl SetRep {
    /// The set of all strings.
    pub fn top() -> SetRep {
        SetRep::UpFin(vec![Str::empty()])
    }

    pub fn is_top(&self) -> bool {
        matches!(self, SetRep::UpFin(g) if g.iter().any(|s| s.is_empty()))
    }

    pub fn member(&self, s: &Str) -> bool {
        match self {
            SetRep::Empty => false,
            SetRep::UpFin(gens) => gens.iter().any(|g| g.is_prefix_of(s)),
            SetRep::MinLen(k) => s.len() as u32 >= *k,
            SetRep::CoordGE(i, m) => (s.len() as u32) > *i && s.entry(*i as usize) >= *m,
            SetRep::Union(parts) => parts.iter().any(|p| p.member(s)),
        }
    }

    /// Localization at `s`: the set { t : s⌢t ∈ self }, itself in the algebra.
    pub fn residual(&self, s: &Str) -> SetRep {
        match self {
            SetRep::Empty => SetRep::Empty,
            SetRep::UpFin(gens) => {
                let mut out = Vec::new();
                for g in gens {
                    if g.is_prefix_of(s) {
                        return SetRep::top();
                    }
                    if let Some(rest) = g.strip_prefix(s) {
                        out.push(rest);
                    }
                }
                if out.is_empty() {
                    SetRep::Empty
                } else {
                    SetRep::UpFin(out)
                }
            }
            SetRep::MinLen(k) => {
                let k = k.saturating_sub(s.len() as u32);
                if k == 0 {
                    SetRep::top()
                } else {
                    SetRep::MinLen(k)
                }
            }
            SetRep::CoordGE(i, m) => {
                if (*i as usize) < s.len() {
                    if s.entry(*i as usize) >= *m {
                        SetRep::top()
                    } else {
                        SetRep::Empty
                    }
                } else {
                    SetRep::CoordGE(i - s.len() as u32, *m)
                }
            }
            SetRep::Union(parts) => SetRep::Union(parts.iter().map(|p| p.residual(s)).collect()),
        }
    }

    /// Canonical form: unions flattened and sorted, generators reduced,
    /// absorbing atoms simplified. Equal canonical forms denote equal sets in
    /// most practically occurring cases and serve as memoization keys.
    pub fn canon(&self) -> SetRep {
        fn flatten(s: &SetRep, acc: &mut Vec<SetRep>) {
            match s {
                SetRep::Union(parts) => {
                    for p in parts {
                        flatten(p, acc);
                    }
                }
                other => {
                    let c = atom_canon(other);
                    if c != SetRep::Empty {
                        acc.push(c);
                    }
                }
            }
        }
        fn atom_canon(s: &SetRep) -> SetRep {
            match s {
                SetRep::Empty => SetRep::Empty,
                SetRep::UpFin(gens) => {
                    let r = pf_reduce(gens);
                    if r.is_empty() {
                        SetRep::Empty
                    } else {
                        SetRep::UpFin(r)
                    }
                }
                SetRep::MinLen(0) => SetRep::top(),
                SetRep::MinLen(k) => SetRep::MinLen(*k),
                SetRep::CoordGE(i, 0) => SetRep::MinLen(i + 1),
                SetRep::CoordGE(i, m) => SetRep::CoordGE(*i, *m),
                SetRep::Union(_) => unreachable!(),
            }
        }
        let mut parts = Vec::new();
        flatten(self, &mut parts);
        if parts.iter().any(|p| p.is_top()) {
            return SetRep::top();
        }
        parts.sort();
        parts.dedup();
        match parts.len() {
            0 => SetRep::Empty,
            1 => parts.pop().unwrap(),
            _ => SetRep::Union(parts),
        }
    }

    /// Child spectrum at `s`: n ↦ member(self, s⌢n).
    pub fn child_spectrum(&self, s: &Str) -> Spectrum {
        match self {
            SetRep::Empty => Spectrum::constant(false),
            SetRep::UpFin(gens) => {
                let mut out = Spectrum::constant(false);
                for g in gens {
                    if g.is_prefix_of(s) {
                        return Spectrum::constant(true);
                    }
                    if g.len() == s.len() + 1 && s.is_prefix_of(g) {
                        out = out.or(&Spectrum::exception(g.entry(s.len()), true));
                    }
                }
                out
            }
            SetRep::MinLen(k) => Spectrum::constant(s.len() as u32 + 1 >= *k),
            SetRep::CoordGE(i, m) => {
                let i = *i as usize;
                if i < s.len() {
                    Spectrum::constant(s.entry(i) >= *m)
                } else if i == s.len() {
                    Spectrum::step_at(*m)
                } else {
                    Spectrum::constant(false)
                }
            }
            SetRep::Union(parts) => {
                let mut out = Spectrum::constant(false);
                for p in parts {
                    out = out.or(&p.child_spectrum(s));
                }
                out
            }
        }
    }

    /// First n beyond which all children s⌢n of the root of this (residual)
    /// set share the same residual.
    pub fn child_breakpoint(&self) -> u32 {
        match self {
            SetRep::Empty => 0,
            SetRep::UpFin(gens) => gens
                .iter()
                .map(|g| if g.is_empty() { 0 } else { g.entry(0) + 1 })
                .max()
                .unwrap_or(0),
            SetRep::MinLen(_) => 0,
            SetRep::CoordGE(0, m) => *m,
            SetRep::CoordGE(_, _) => 0,
            SetRep::Union(parts) => parts.iter().map(|p| p.child_breakpoint()).max().unwrap_or(0),
        }
    }

    /// Representation depth: the length horizon past which membership is
    /// determined by MinLen atoms alone.
    pub fn depth(&self) -> u32 {
        match self {
            SetRep::Empty => 0,
            SetRep::UpFin(gens) => gens.iter().map(|g| g.len() as u32).max().unwrap_or(0),
            SetRep::MinLen(k) => *k,
            SetRep::CoordGE(i, _) => i + 1,
            SetRep::Union(parts) => parts.iter().map(|p| p.depth()).max().unwrap_or(0),
        }
    }

    /// Largest numeric entry the representation compares coordinates against.
    pub fn entry_bound(&self) -> u32 {
        match self {
            SetRep::Empty => 0,
            SetRep::UpFin(gens) => gens.iter().map(|g| g.max_entry()).max().unwrap_or(0),
            SetRep::MinLen(_) => 0,
            SetRep::CoordGE(_, m) => *m,
            SetRep::Union(parts) => parts.iter().map(|p| p.entry_bound()).max().unwrap_or(0),
        }
    }
}

/// The complement of T⁺ = { σ : ∃τ ∈ T, |τ| = |σ|, τ ≤ σ } for a finite
/// prefix-closed tree T, as an upward-closed set.
///
/// Exact on strings whose entries stay within the tree's entry bound plus one;
/// beyond the tree's depth every string is included via a MinLen atom.
pub fn t_plus_complement(tree: &[Str]) -> SetRep {
    if tree.is_empty() {
        return SetRep::top();
    }
    let depth = tree.iter().map(|t| t.len()).max().unwrap_or(0);
    let entry_cap = tree.iter().map(|t| t.max_entry()).max().unwrap_or(0) + 1;
    let mut parts: Vec<SetRep> = vec![SetRep::MinLen(depth as u32 + 1)];

    let in_t_plus = |s: &Str| -> bool {
        tree.iter()
            .any(|t| t.len() == s.len() && crate::strings::pointwise_leq(t, s))
    };

    // Enumerate strings of each length ≤ depth with entries ≤ entry_cap and
    // keep the ≺-minimal ones outside T⁺.
    let mut gens: Vec<Str> = Vec::new();
    let mut level: Vec<Str> = vec![Str::empty()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for s in &level {
            // Children of a string already outside T⁺ are covered by upward
            // closure; only extend strings still inside T⁺.
            if !in_t_plus(s) {
                continue;
            }
            for n in 0..=entry_cap {
                let c = s.child(n);
                if in_t_plus(&c) {
                    next.push(c);
                } else {
                    gens.push(c);
                }
            }
        }
        level = next;
    }
    if !gens.is_empty() {
        parts.push(SetRep::UpFin(pf_reduce(&gens)));
    }
    SetRep::Union(parts).canon()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[u32]) -> Str {
        Str::from_slice(v)
    }

    #[test]
    fn membership_examples() {
        assert!(SetRep::UpFin(vec![s(&[0])]).member(&s(&[0, 4])));
        assert!(!SetRep::MinLen(2).member(&s(&[7])));
        let u = SetRep::Union(vec![SetRep::CoordGE(1, 3), SetRep::UpFin(vec![s(&[9])])]);
        assert!(u.member(&s(&[0, 3])));
    }

    #[test]
    fn upward_closure_structural() {
        let b = SetRep::Union(vec![
            SetRep::CoordGE(1, 2),
            SetRep::UpFin(vec![s(&[1, 2])]),
            SetRep::MinLen(3),
        ]);
        let pts = [s(&[1, 2]), s(&[0, 2]), s(&[4, 4, 4])];
        for p in &pts {
            if b.member(p) {
                assert!(b.member(&p.child(0)));
                assert!(b.member(&p.child(9)));
            }
        }
    }

    #[test]
    fn child_spectrum_examples() {
        let sp = SetRep::UpFin(vec![s(&[0])]).child_spectrum(&Str::empty());
        assert!(sp.eval(0));
        assert!(!sp.eval(1));
        assert!(!sp.infinitely_true());

        let sp = SetRep::MinLen(1).child_spectrum(&Str::empty());
        assert!(sp.eval(0) && sp.eval(7) && sp.infinitely_true());
        assert!(sp.exceptions.is_empty());

        let sp = SetRep::CoordGE(0, 5).child_spectrum(&Str::empty());
        assert!(!sp.eval(4));
        assert!(sp.eval(5));
    }

    #[test]
    fn spectrum_matches_membership() {
        let b = SetRep::Union(vec![
            SetRep::CoordGE(1, 3),
            SetRep::UpFin(vec![s(&[2]), s(&[0, 1])]),
            SetRep::MinLen(2),
        ]);
        for base in [s(&[]), s(&[0]), s(&[4]), s(&[0, 1])] {
            let sp = b.child_spectrum(&base);
            for n in 0..10 {
                assert_eq!(sp.eval(n), b.member(&base.child(n)), "at {base} child {n}");
            }
        }
    }

    #[test]
    fn residual_matches_membership() {
        let b = SetRep::Union(vec![
            SetRep::CoordGE(1, 3),
            SetRep::UpFin(vec![s(&[2]), s(&[0, 1])]),
            SetRep::MinLen(3),
        ]);
        for base in [s(&[]), s(&[0]), s(&[2]), s(&[0, 1]), s(&[5, 5])] {
            let r = b.residual(&base);
            for t in [s(&[]), s(&[0]), s(&[1]), s(&[3, 3]), s(&[0, 1, 2])] {
                assert_eq!(r.member(&t), b.member(&base.concat(&t)));
            }
        }
    }

    #[test]
    fn t_plus_complement_examples() {
        // {⟨⟩} → MinLen(1)
        let c = t_plus_complement(&[s(&[])]);
        assert_eq!(c, SetRep::MinLen(1));

        // {⟨⟩,⟨3⟩} → Union[UpFin{⟨0⟩,⟨1⟩,⟨2⟩}, MinLen(2)]
        let c = t_plus_complement(&[s(&[]), s(&[3])]);
        assert_eq!(
            c,
            SetRep::Union(vec![
                SetRep::UpFin(vec![s(&[0]), s(&[1]), s(&[2])]),
                SetRep::MinLen(2),
            ])
        );

        // ∅ → everything
        let c = t_plus_complement(&[]);
        assert!(c.is_top());
    }

    #[test]
    fn t_plus_complement_pointwise() {
        // Exactness within the entry cap.
        let tree = vec![s(&[]), s(&[0]), s(&[2]), s(&[0, 3])];
        let c = t_plus_complement(&tree);
        let w = 4u32; // entries < 4
        let in_t_plus = |x: &Str| {
            tree.iter()
                .any(|t| t.len() == x.len() && crate::strings::pointwise_leq(t, x))
        };
        let mut frontier = vec![s(&[])];
        for _ in 0..3 {
            let mut next = Vec::new();
            for b in &frontier {
                for n in 0..=w {
                    next.push(b.child(n));
                }
            }
            for x in &next {
                assert_eq!(c.member(x), !in_t_plus(x), "at {x}");
            }
            frontier = next;
        }
    }
}
