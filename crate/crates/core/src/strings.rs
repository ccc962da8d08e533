//! Finite strings over the naturals, binary strings, and pairs thereof.

use std::fmt;

/// A finite sequence of naturals; a node of the full tree on ω.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Str(pub Vec<u32>);

impl Str {
    pub fn empty() -> Self {
        Str(Vec::new())
    }

    pub fn from_slice(entries: &[u32]) -> Self {
        Str(entries.to_vec())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entry(&self, i: usize) -> u32 {
        self.0[i]
    }

    /// The child `self⌢n`.
    pub fn child(&self, n: u32) -> Str {
        let mut v = self.0.clone();
        v.push(n);
        Str(v)
    }

    pub fn parent(&self) -> Option<Str> {
        if self.0.is_empty() {
            None
        } else {
            Some(Str(self.0[..self.0.len() - 1].to_vec()))
        }
    }

    pub fn concat(&self, other: &Str) -> Str {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Str(v)
    }

    /// Prefix relation `self ⪯ other`.
    pub fn is_prefix_of(&self, other: &Str) -> bool {
        self.0.len() <= other.0.len() && other.0[..self.0.len()] == self.0[..]
    }

    pub fn is_strict_prefix_of(&self, other: &Str) -> bool {
        self.0.len() < other.0.len() && self.is_prefix_of(other)
    }

    pub fn comparable(&self, other: &Str) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }

    /// The suffix left after removing the prefix `p`, if `p ⪯ self`.
    pub fn strip_prefix(&self, p: &Str) -> Option<Str> {
        if p.is_prefix_of(self) {
            Some(Str(self.0[p.0.len()..].to_vec()))
        } else {
            None
        }
    }

    pub fn truncate(&self, len: usize) -> Str {
        Str(self.0[..len.min(self.0.len())].to_vec())
    }

    pub fn max_entry(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// All prefixes of `self`, shortest first (including `⟨⟩` and `self`).
    pub fn prefixes(&self) -> impl Iterator<Item = Str> + '_ {
        (0..=self.0.len()).map(move |k| Str(self.0[..k].to_vec()))
    }
}

/// `a(i) ≤ b(i)` on the common domain; strings of different length are comparable.
pub fn pointwise_leq(a: &Str, b: &Str) -> bool {
    a.0.iter().zip(b.0.iter()).all(|(x, y)| x <= y)
}

impl fmt::Debug for Str {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Str {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", e)?;
        }
        write!(f, "]")
    }
}

/// A finite binary string.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BinStr(pub Vec<u8>);

impl BinStr {
    pub fn empty() -> Self {
        BinStr(Vec::new())
    }

    pub fn from_slice(bits: &[u8]) -> Self {
        debug_assert!(bits.iter().all(|&b| b <= 1));
        BinStr(bits.to_vec())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bit(&self, i: usize) -> u8 {
        self.0[i]
    }

    pub fn child(&self, b: u8) -> BinStr {
        debug_assert!(b <= 1);
        let mut v = self.0.clone();
        v.push(b);
        BinStr(v)
    }

    pub fn concat(&self, other: &BinStr) -> BinStr {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        BinStr(v)
    }

    pub fn is_prefix_of(&self, other: &BinStr) -> bool {
        self.0.len() <= other.0.len() && other.0[..self.0.len()] == self.0[..]
    }

    pub fn is_strict_prefix_of(&self, other: &BinStr) -> bool {
        self.0.len() < other.0.len() && self.is_prefix_of(other)
    }

    pub fn comparable(&self, other: &BinStr) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }

    pub fn strip_prefix(&self, p: &BinStr) -> Option<BinStr> {
        if p.is_prefix_of(self) {
            Some(BinStr(self.0[p.0.len()..].to_vec()))
        } else {
            None
        }
    }

    pub fn truncate(&self, len: usize) -> BinStr {
        BinStr(self.0[..len.min(self.0.len())].to_vec())
    }

    pub fn zeros(n: usize) -> BinStr {
        BinStr(vec![0; n])
    }

    /// All binary strings of the given length, lexicographically.
    pub fn all_of_len(n: usize) -> Vec<BinStr> {
        let mut out = vec![BinStr::empty()];
        for _ in 0..n {
            let mut next = Vec::with_capacity(out.len() * 2);
            for s in &out {
                next.push(s.child(0));
                next.push(s.child(1));
            }
            out = next;
        }
        out
    }

    /// All binary strings of length at most `n`, shortest first.
    pub fn all_up_to_len(n: usize) -> Vec<BinStr> {
        let mut out = Vec::new();
        for k in 0..=n {
            out.extend(BinStr::all_of_len(k));
        }
        out
    }
}

impl fmt::Debug for BinStr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for BinStr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", e)?;
        }
        write!(f, "]")
    }
}

/// A pair `(σ, τ) ∈ 2^<ω × ω^<ω`, ordered componentwise by the prefix relation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PairStr {
    pub first: BinStr,
    pub second: Str,
}

impl PairStr {
    pub fn new(first: BinStr, second: Str) -> Self {
        PairStr { first, second }
    }

    pub fn root() -> Self {
        PairStr::new(BinStr::empty(), Str::empty())
    }

    /// Componentwise prefix relation.
    pub fn leq(&self, other: &PairStr) -> bool {
        self.first.is_prefix_of(&other.first) && self.second.is_prefix_of(&other.second)
    }

    pub fn comparable(&self, other: &PairStr) -> bool {
        self.leq(other) || other.leq(self)
    }
}

impl fmt::Debug for PairStr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.first, self.second)
    }
}

impl fmt::Display for PairStr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.first, self.second)
    }
}

/// The ≺-minimal elements of a finite set of strings: an antichain denoting the
/// same open set.
pub fn pf_reduce(set: &[Str]) -> Vec<Str> {
    let mut sorted: Vec<Str> = set.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut out: Vec<Str> = Vec::new();
    for s in sorted {
        if !out.iter().any(|m| m.is_prefix_of(&s)) {
            out.push(s);
        }
    }
    out.sort();
    out
}

/// The ≺-minimal elements of a finite set of binary strings.
pub fn pf_reduce_bin(set: &[BinStr]) -> Vec<BinStr> {
    let mut sorted: Vec<BinStr> = set.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut out: Vec<BinStr> = Vec::new();
    for s in sorted {
        if !out.iter().any(|m| m.is_prefix_of(&s)) {
            out.push(s);
        }
    }
    out.sort();
    out
}

/// The ⪯-minimal elements of a finite set of pairs (componentwise order).
pub fn pf_reduce_pairs(set: &[PairStr]) -> Vec<PairStr> {
    let mut sorted: Vec<PairStr> = set.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut out: Vec<PairStr> = Vec::new();
    for s in sorted {
        if !out.iter().any(|m| m.leq(&s)) {
            out.push(s);
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[u32]) -> Str {
        Str::from_slice(v)
    }

    #[test]
    fn pointwise_leq_examples() {
        assert!(pointwise_leq(&s(&[]), &s(&[5])));
        assert!(pointwise_leq(&s(&[3, 7]), &s(&[3])));
        assert!(!pointwise_leq(&s(&[2, 9]), &s(&[2, 8])));
    }

    #[test]
    fn pf_reduce_examples() {
        assert_eq!(pf_reduce(&[s(&[0]), s(&[0, 1])]), vec![s(&[0])]);
        assert_eq!(pf_reduce(&[]), Vec::<Str>::new());
        assert_eq!(
            pf_reduce(&[s(&[1, 2]), s(&[3]), s(&[1])]),
            vec![s(&[1]), s(&[3])]
        );
    }

    #[test]
    fn prefix_relations() {
        assert!(s(&[]).is_prefix_of(&s(&[1, 2])));
        assert!(!s(&[7]).is_prefix_of(&s(&[8])));
        assert_eq!(s(&[1, 2, 3]).strip_prefix(&s(&[1])), Some(s(&[2, 3])));
    }
}
