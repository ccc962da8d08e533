//! Finite carriers for the infinitary parts of conditions: monotone maps
//! 2^<ω → ω^<ω with a pad rule, and bounded functionals on strings and pairs.
//!
//! The pad rule (stretch, phase, fill) fixes a canonical infinite tail: past
//! the finite table, outputs extend by the fill value at one entry per
//! `stretch` input bits. That makes convergence lengths and pointwise
//! comparisons decidable while the table carries construction-specific
//! overrides.

use std::collections::BTreeMap;

use crate::sets::SetRep;
use crate::strings::{pf_reduce, BinStr, PairStr, Str};

/// A total monotone map 2^<ω → ω^<ω with |f(σ)| ≤ |σ| and unbounded
/// convergence along every branch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneMap {
    pub table: BTreeMap<BinStr, Str>,
    pub stretch: u32,
    pub phase: i64,
    pub fill: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MapError {
    #[error("stretch must be at least 1")]
    BadStretch,
    #[error("pad length exceeds input length (phase too large)")]
    BadPhase,
    #[error("table value longer than its key")]
    ValueTooLong,
    #[error("table is not monotone")]
    NotMonotone,
}

impl MonotoneMap {
    /// The trivial map with the given pad rule and no overrides.
    pub fn pad_only(stretch: u32, fill: u32) -> Self {
        MonotoneMap {
            table: BTreeMap::new(),
            stretch,
            phase: 0,
            fill,
        }
    }

    pub fn pad_len(&self, input_len: usize) -> usize {
        let l = (input_len as i64 + self.phase).div_euclid(self.stretch as i64);
        l.max(0) as usize
    }

    fn base(&self, sigma: &BinStr) -> Str {
        let mut best: Option<(&BinStr, &Str)> = None;
        for (k, v) in &self.table {
            if k.is_prefix_of(sigma) {
                match best {
                    Some((bk, _)) if bk.len() >= k.len() => {}
                    _ => best = Some((k, v)),
                }
            }
        }
        best.map(|(_, v)| v.clone()).unwrap_or_default()
    }

    pub fn eval(&self, sigma: &BinStr) -> Str {
        let mut v = self.base(sigma);
        let want = self.pad_len(sigma.len()).min(sigma.len());
        while v.len() < want {
            v = v.child(self.fill);
        }
        v
    }

    pub fn len_at(&self, sigma: &BinStr) -> usize {
        self.eval(sigma).len()
    }

    pub fn validate(&self) -> Result<(), MapError> {
        if self.stretch == 0 {
            return Err(MapError::BadStretch);
        }
        if self.phase >= self.stretch as i64 {
            return Err(MapError::BadPhase);
        }
        for (k, v) in &self.table {
            if v.len() > k.len() {
                return Err(MapError::ValueTooLong);
            }
        }
        for (k1, v1) in &self.table {
            for (k2, v2) in &self.table {
                if k1.is_strict_prefix_of(k2) && !v1.is_prefix_of(v2) {
                    return Err(MapError::NotMonotone);
                }
            }
        }
        // Pad entries injected below a key must agree with the key's value.
        for k in self.table.keys() {
            for i in 0..k.len() {
                let p = k.truncate(i);
                if !self.eval(&p).is_prefix_of(&self.eval(k)) {
                    return Err(MapError::NotMonotone);
                }
            }
        }
        Ok(())
    }

    /// Largest numeric entry mentioned by values or the fill.
    pub fn entry_bound(&self) -> u32 {
        self.table
            .values()
            .map(|v| v.max_entry())
            .max()
            .unwrap_or(0)
            .max(self.fill)
    }

    pub fn max_key_len(&self) -> usize {
        self.table.keys().map(|k| k.len()).max().unwrap_or(0)
    }

    /// The override map used by possible-extension construction: f′(σ) = τ,
    /// f′ agrees with `self` past |τ| above σ, and is slowed to converge only
    /// above σ elsewhere.
    pub fn override_at(&self, sigma: &BinStr, tau: &Str) -> MonotoneMap {
        let mut table: BTreeMap<BinStr, Str> = BTreeMap::new();
        table.insert(sigma.clone(), tau.clone());
        for (k, _) in &self.table {
            if sigma.is_strict_prefix_of(k) {
                let old = self.eval(k);
                let mut v = tau.clone();
                for i in tau.len()..old.len() {
                    v = v.child(old.entry(i));
                }
                table.insert(k.clone(), v);
            }
        }
        MonotoneMap {
            table,
            stretch: self.stretch,
            phase: -(sigma.len() as i64),
            fill: self.fill,
        }
    }

    /// Entrywise max with a functional Φ above `mindom`, at positions ≥
    /// `guard` only, truncated to the shorter convergence length. Realizes
    /// the merge used for σ-centeredness and for domination over the first
    /// coordinate.
    pub fn merge_max(&self, phi: &MonotoneMap, mindom: &BinStr, guard: usize) -> MonotoneMap {
        let stretch = self.stretch.max(phi.stretch);
        // Phase chosen so the merged pad never outruns either input's pad.
        let phase = ((self.phase * stretch as i64).div_euclid(self.stretch as i64))
            .min((phi.phase * stretch as i64).div_euclid(phi.stretch as i64));
        let fill = self.fill.max(phi.fill);
        let mut keys: Vec<BinStr> = self.table.keys().cloned().collect();
        keys.extend(phi.table.keys().cloned());
        keys.push(mindom.clone());
        keys.sort();
        keys.dedup();
        let mut table = BTreeMap::new();
        for k in keys {
            if k.is_strict_prefix_of(mindom) {
                table.insert(k.clone(), self.eval(&k));
                continue;
            }
            if !mindom.is_prefix_of(&k) {
                // Off the cone: keep the base map's behaviour.
                table.insert(k.clone(), self.eval(&k));
                continue;
            }
            let a = self.eval(&k);
            if k == *mindom {
                table.insert(k.clone(), a);
                continue;
            }
            let b = phi.eval(&k);
            let len = a.len().min(b.len());
            let mut v = Vec::with_capacity(len);
            for i in 0..len {
                let x = a.entry(i);
                let y = b.entry(i);
                v.push(if i >= guard { x.max(y) } else { x });
            }
            table.insert(k.clone(), Str(v));
        }
        MonotoneMap {
            table,
            stretch,
            phase,
            fill,
        }
    }
}

/// A bounded functional on Baire-space strings: either a finite monotone
/// table or the entrywise remainder map σ(i) mod k on the first `depth`
/// coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Functional {
    Table(BTreeMap<Str, Str>),
    EntryMod { modulus: u32, depth: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedFunctional {
    pub func: Functional,
    /// Entrywise bound h; entries at positions past the vector are bounded
    /// by 0. None means unbounded (not admissible for trace tasks).
    pub bound: Option<Vec<u32>>,
}

impl BoundedFunctional {
    pub fn bound_at(&self, i: usize) -> u32 {
        self.bound
            .as_ref()
            .map(|h| h.get(i).copied().unwrap_or(0))
            .unwrap_or(u32::MAX)
    }

    /// The value string Φ(σ) on the converged coordinates.
    pub fn eval(&self, sigma: &Str) -> Str {
        match &self.func {
            Functional::Table(t) => {
                let mut best: Option<(&Str, &Str)> = None;
                for (k, v) in t {
                    if k.is_prefix_of(sigma) {
                        match best {
                            Some((bk, _)) if bk.len() >= k.len() => {}
                            _ => best = Some((k, v)),
                        }
                    }
                }
                best.map(|(_, v)| v.clone()).unwrap_or_default()
            }
            Functional::EntryMod { modulus, depth } => {
                let m = (*modulus).max(1);
                let n = (*depth as usize).min(sigma.len());
                Str((0..n).map(|i| sigma.entry(i) % m).collect())
            }
        }
    }

    pub fn validate(&self) -> Result<(), MapError> {
        match &self.func {
            Functional::Table(t) => {
                for (k1, v1) in t {
                    for (k2, v2) in t {
                        if k1.is_strict_prefix_of(k2) && !v1.is_prefix_of(v2) {
                            return Err(MapError::NotMonotone);
                        }
                    }
                }
                if let Some(h) = &self.bound {
                    for v in t.values() {
                        for i in 0..v.len() {
                            if v.entry(i) > h.get(i).copied().unwrap_or(0) {
                                return Err(MapError::ValueTooLong);
                            }
                        }
                    }
                }
                Ok(())
            }
            Functional::EntryMod { modulus, depth } => {
                if *modulus == 0 {
                    return Err(MapError::BadStretch);
                }
                if let Some(h) = &self.bound {
                    for i in 0..*depth as usize {
                        if modulus - 1 > h.get(i).copied().unwrap_or(0) {
                            return Err(MapError::ValueTooLong);
                        }
                    }
                }
                Ok(())
            }
        }
    }

    /// The set of strings on which the functional converges at coordinate m,
    /// compiled into the set algebra.
    pub fn convergence_set(&self, m: u32) -> SetRep {
        match &self.func {
            Functional::Table(t) => {
                let gens: Vec<Str> = t
                    .iter()
                    .filter(|(_, v)| v.len() as u32 > m)
                    .map(|(k, _)| k.clone())
                    .collect();
                if gens.is_empty() {
                    SetRep::Empty
                } else {
                    SetRep::UpFin(pf_reduce(&gens))
                }
            }
            Functional::EntryMod { depth, .. } => {
                if m < *depth {
                    SetRep::MinLen(m + 1)
                } else {
                    SetRep::Empty
                }
            }
        }
    }

    /// For table functionals: the set of strings whose value at coordinate m
    /// equals j.
    pub fn table_value_set(&self, m: u32, j: u32) -> Option<SetRep> {
        match &self.func {
            Functional::Table(t) => {
                let gens: Vec<Str> = t
                    .iter()
                    .filter(|(_, v)| v.len() as u32 > m && v.entry(m as usize) == j)
                    .map(|(k, _)| k.clone())
                    .collect();
                Some(if gens.is_empty() {
                    SetRep::Empty
                } else {
                    SetRep::UpFin(pf_reduce(&gens))
                })
            }
            Functional::EntryMod { .. } => None,
        }
    }
}

/// A {0,1}-valued bounded functional on pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairFunctional {
    Table(BTreeMap<PairStr, BinStr>),
    /// Bit i of the value is τ(i) mod 2, for i < depth.
    SecondParity { depth: u32 },
}

impl PairFunctional {
    pub fn eval(&self, p: &PairStr) -> BinStr {
        match self {
            PairFunctional::Table(t) => {
                let mut best: Option<&BinStr> = None;
                for (k, v) in t {
                    if k.leq(p) {
                        match best {
                            Some(bv) if bv.len() >= v.len() => {}
                            _ => best = Some(v),
                        }
                    }
                }
                best.cloned().unwrap_or_default()
            }
            PairFunctional::SecondParity { depth } => {
                let n = (*depth as usize).min(p.second.len());
                BinStr((0..n).map(|i| (p.second.entry(i) % 2) as u8).collect())
            }
        }
    }

    pub fn validate(&self) -> Result<(), MapError> {
        if let PairFunctional::Table(t) = self {
            for (k1, v1) in t {
                for (k2, v2) in t {
                    if k1.leq(k2) && *k1 != *k2 && !v1.is_prefix_of(v2) && !v2.is_prefix_of(v1) {
                        return Err(MapError::NotMonotone);
                    }
                }
            }
        }
        Ok(())
    }

    /// Convergence at bit m, compiled into the pair algebra.
    pub fn convergence_set(&self, m: u32) -> crate::pairs::PairSetRep {
        use crate::pairs::PairSetRep;
        match self {
            PairFunctional::Table(t) => {
                let gens: Vec<PairStr> = t
                    .iter()
                    .filter(|(_, v)| v.len() as u32 > m)
                    .map(|(k, _)| k.clone())
                    .collect();
                if gens.is_empty() {
                    PairSetRep::Empty
                } else {
                    PairSetRep::UpFinP(crate::strings::pf_reduce_pairs(&gens))
                }
            }
            PairFunctional::SecondParity { depth } => {
                if m < *depth {
                    crate::pairs::PairSetRep::MinLenSecond(m + 1)
                } else {
                    crate::pairs::PairSetRep::Empty
                }
            }
        }
    }
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

    #[test]
    fn pad_only_eval() {
        let f = MonotoneMap::pad_only(1, 2);
        assert_eq!(f.eval(&bs(&[])), st(&[]));
        assert_eq!(f.eval(&bs(&[0, 1])), st(&[2, 2]));
        f.validate().unwrap();
    }

    #[test]
    fn stretch_two() {
        let f = MonotoneMap::pad_only(2, 0);
        assert_eq!(f.eval(&bs(&[0])), st(&[]));
        assert_eq!(f.eval(&bs(&[0, 1])), st(&[0]));
        assert_eq!(f.eval(&bs(&[0, 1, 0, 1])), st(&[0, 0]));
    }

    #[test]
    fn override_slows_convergence() {
        let f = MonotoneMap::pad_only(1, 2);
        let g = f.override_at(&bs(&[0, 1]), &st(&[5, 2]));
        g.validate().unwrap();
        assert_eq!(g.eval(&bs(&[0, 1])), st(&[5, 2]));
        assert_eq!(g.eval(&bs(&[0])), st(&[]));
        // Above the override the old entries resume past |τ|, padded anew.
        assert_eq!(g.eval(&bs(&[0, 1, 0])), st(&[5, 2]));
        assert_eq!(g.eval(&bs(&[0, 1, 0, 1, 0])), st(&[5, 2, 2]));
    }

    #[test]
    fn merge_max_dominates() {
        let f = MonotoneMap::pad_only(1, 0);
        let phi = MonotoneMap::pad_only(1, 1);
        let g = f.merge_max(&phi, &BinStr::empty(), 0);
        g.validate().unwrap();
        for sigma in [bs(&[0]), bs(&[1, 0]), bs(&[1, 1, 0])] {
            let v = g.eval(&sigma);
            let w = phi.eval(&sigma);
            for i in 0..v.len().min(w.len()) {
                assert!(v.entry(i) >= w.entry(i));
            }
        }
    }

    #[test]
    fn entry_mod_functional() {
        let phi = BoundedFunctional {
            func: Functional::EntryMod {
                modulus: 2,
                depth: 2,
            },
            bound: Some(vec![1, 1]),
        };
        phi.validate().unwrap();
        assert_eq!(phi.eval(&st(&[0, 2])), st(&[0, 0]));
        assert_eq!(phi.eval(&st(&[3])), st(&[1]));
        assert_eq!(phi.convergence_set(0), SetRep::MinLen(1));
        assert_eq!(phi.convergence_set(2), SetRep::Empty);
    }

    #[test]
    fn table_functional_sets() {
        let mut t = BTreeMap::new();
        t.insert(st(&[0]), st(&[0]));
        t.insert(st(&[0, 1]), st(&[0, 1]));
        let phi = BoundedFunctional {
            func: Functional::Table(t),
            bound: Some(vec![1, 1]),
        };
        phi.validate().unwrap();
        assert_eq!(phi.convergence_set(0), SetRep::UpFin(vec![st(&[0])]));
        assert_eq!(
            phi.table_value_set(1, 1),
            Some(SetRep::UpFin(vec![st(&[0, 1])]))
        );
    }
}
