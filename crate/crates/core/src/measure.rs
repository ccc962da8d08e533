//! Exact-rational cylinder measures on Cantor space, the trace-to-nowhere-
//! dense-tree transform, and Schnorr test approximations. No floating point:
//! all measure checks are equalities on dyadic rationals.

use std::fmt;

use crate::strings::{pf_reduce_bin, BinStr};

/// A nonnegative dyadic rational num / 2^log_den, kept in lowest terms.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dyadic {
    pub num: u128,
    pub log_den: u32,
}

impl Dyadic {
    pub fn zero() -> Dyadic {
        Dyadic { num: 0, log_den: 0 }
    }

    pub fn one() -> Dyadic {
        Dyadic { num: 1, log_den: 0 }
    }

    /// 1 / 2^k.
    pub fn pow2_inv(k: u32) -> Dyadic {
        Dyadic { num: 1, log_den: k }
    }

    pub fn new(num: u128, log_den: u32) -> Dyadic {
        Dyadic { num, log_den }.normalize()
    }

    fn normalize(mut self) -> Dyadic {
        if self.num == 0 {
            return Dyadic::zero();
        }
        while self.log_den > 0 && self.num % 2 == 0 {
            self.num /= 2;
            self.log_den -= 1;
        }
        self
    }

    pub fn add(self, other: Dyadic) -> Dyadic {
        let k = self.log_den.max(other.log_den);
        let a = self.num << (k - self.log_den);
        let b = other.num << (k - other.log_den);
        Dyadic::new(a + b, k)
    }

    pub fn leq(self, other: Dyadic) -> bool {
        let k = self.log_den.max(other.log_den);
        (self.num << (k - self.log_den)) <= (other.num << (k - other.log_den))
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.num, self.log_den)
    }
}

/// A finite union of basic cylinders of Cantor space, kept prefix-free.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CylinderUnion {
    pub gens: Vec<BinStr>,
}

impl CylinderUnion {
    pub fn new(gens: &[BinStr]) -> CylinderUnion {
        CylinderUnion {
            gens: pf_reduce_bin(gens),
        }
    }

    pub fn contains_prefix(&self, x: &BinStr) -> bool {
        self.gens.iter().any(|g| g.is_prefix_of(x))
    }
}

/// Σ 2^{-|s|} over the prefix-free normalization; always in [0,1].
pub fn cylinder_measure(u: &CylinderUnion) -> Dyadic {
    let gens = pf_reduce_bin(&u.gens);
    let mut total = Dyadic::zero();
    for g in &gens {
        total = total.add(Dyadic::pow2_inv(g.len() as u32));
    }
    total
}

/// A Schnorr test approximation: levels with declared exact measures.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SchnorrApprox {
    pub levels: Vec<(CylinderUnion, Dyadic)>,
}

/// The level-n open set ⋃_{n ≤ m ≤ M} [h(m)] of the interleaver test, with
/// its exact measure. h(m) must have length m.
pub fn schnorr_from_interleaver(h: &[BinStr], n: usize) -> (CylinderUnion, Dyadic) {
    let mut gens = Vec::new();
    for (m, s) in h.iter().enumerate().skip(1) {
        debug_assert_eq!(s.len(), m);
        if m >= n {
            gens.push(s.clone());
        }
    }
    let u = CylinderUnion::new(&gens);
    let m = cylinder_measure(&u);
    (u, m)
}

/// Every declared measure equals the computed one and the final level's
/// measure is at most ε.
pub fn validate_schnorr(s: &SchnorrApprox, eps: Dyadic) -> bool {
    for (u, declared) in &s.levels {
        if cylinder_measure(u) != *declared {
            return false;
        }
    }
    match s.levels.last() {
        None => true,
        Some((_, m)) => m.leq(eps),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("malformed trace: level size or string length out of bounds")]
pub struct MalformedTrace;

/// The closed nowhere dense tree carved out by a trace of binary prefixes:
/// T = { ρ : ∀m ≤ log₂|ρ|, ρ↾2^m ∈ F(m) }, materialized to the trace horizon.
/// Returns the admissible level strings at each power 2^n together with the
/// level counts (each ≤ 2^n).
pub fn trace_nowhere_dense(
    f: &[Vec<BinStr>],
) -> Result<(Vec<Vec<BinStr>>, Vec<usize>), MalformedTrace> {
    for (n, level) in f.iter().enumerate() {
        if level.len() > (1usize << n) {
            return Err(MalformedTrace);
        }
        for s in level {
            if s.len() != (1usize << n) {
                return Err(MalformedTrace);
            }
        }
    }
    let mut levels: Vec<Vec<BinStr>> = Vec::new();
    for (n, level) in f.iter().enumerate() {
        let mut admissible = Vec::new();
        for s in level {
            let ok = if n == 0 {
                true
            } else {
                levels[n - 1]
                    .iter()
                    .any(|p| p.is_prefix_of(s))
            };
            if ok {
                admissible.push(s.clone());
            }
        }
        admissible.sort();
        admissible.dedup();
        levels.push(admissible);
    }
    let counts = levels.iter().map(|l| l.len()).collect();
    Ok((levels, counts))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(v: &[u8]) -> BinStr {
        BinStr::from_slice(v)
    }

    #[test]
    fn measure_examples() {
        let u = CylinderUnion::new(&[bs(&[0]), bs(&[1, 0])]);
        assert_eq!(cylinder_measure(&u), Dyadic::new(3, 2));
        let u = CylinderUnion::new(&[bs(&[0]), bs(&[0, 1])]);
        assert_eq!(cylinder_measure(&u), Dyadic::new(1, 1));
        let u = CylinderUnion::default();
        assert_eq!(cylinder_measure(&u), Dyadic::zero());
    }

    #[test]
    fn interleaver_levels() {
        // h(m) = 0^m
        let h: Vec<BinStr> = (0..=4).map(BinStr::zeros).collect();
        let (u, m) = schnorr_from_interleaver(&h, 2);
        assert_eq!(u.gens, vec![bs(&[0, 0])]);
        assert_eq!(m, Dyadic::new(1, 2));

        let (_, m0) = schnorr_from_interleaver(&h, 5);
        assert_eq!(m0, Dyadic::zero());

        let h = vec![BinStr::empty(), bs(&[0]), bs(&[0, 1]), bs(&[1, 1, 1])];
        let (_, m) = schnorr_from_interleaver(&h, 2);
        assert_eq!(m, Dyadic::new(3, 3));
    }

    #[test]
    fn validate_schnorr_examples() {
        let h: Vec<BinStr> = (0..=4).map(BinStr::zeros).collect();
        let mut approx = SchnorrApprox::default();
        for n in 0..=3 {
            let (u, m) = schnorr_from_interleaver(&h, n);
            approx.levels.push((u, m));
        }
        assert!(validate_schnorr(&approx, Dyadic::new(1, 1)));

        let mut wrong = approx.clone();
        wrong.levels[1].1 = Dyadic::new(1, 3);
        assert!(!validate_schnorr(&wrong, Dyadic::one()));

        assert!(validate_schnorr(&SchnorrApprox::default(), Dyadic::one()));
    }

    #[test]
    fn tail_bound() {
        // For |h(m)| = m the level-n measure is at most 2^{-n+1}.
        let h = vec![
            BinStr::empty(),
            bs(&[1]),
            bs(&[0, 1]),
            bs(&[1, 1, 0]),
            bs(&[0, 0, 0, 0]),
        ];
        for n in 1..=4u32 {
            let (_, m) = schnorr_from_interleaver(&h, n as usize);
            assert!(m.leq(Dyadic::pow2_inv(n - 1)));
        }
    }

    #[test]
    fn trace_tree_examples() {
        // All-zero trace: every level count is 1.
        let f: Vec<Vec<BinStr>> = (0..3).map(|n| vec![BinStr::zeros(1 << n)]).collect();
        let (_, counts) = trace_nowhere_dense(&f).unwrap();
        assert_eq!(counts, vec![1, 1, 1]);

        // Oversized level.
        let bad = vec![vec![bs(&[0]), bs(&[1])]];
        assert_eq!(trace_nowhere_dense(&bad), Err(MalformedTrace));

        let f = vec![vec![bs(&[1])], vec![bs(&[1, 0])]];
        let (levels, counts) = trace_nowhere_dense(&f).unwrap();
        assert_eq!(levels[1], vec![bs(&[1, 0])]);
        assert_eq!(counts, vec![1, 1]);
    }
}
