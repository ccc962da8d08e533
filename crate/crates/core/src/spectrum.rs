//! Child spectra: how a property of `s⌢n` varies with `n`.
//!
//! For the set algebra this is always an eventually constant step function
//! plus finitely many exceptions, so the `∃^∞ n` quantifier is read off the
//! tail value: finitely many exceptional `n` can never witness "infinitely
//! many". Tree tails may additionally select a periodic child class.

use std::collections::BTreeMap;

/// A cofinal periodic child class: the values `from, from+stride, from+2·stride, …`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Period {
    pub from: u32,
    pub stride: u32,
}

impl Period {
    pub fn contains(&self, n: u32) -> bool {
        n >= self.from && (n - self.from) % self.stride == 0
    }

    /// Least member of the class that is ≥ `n`.
    pub fn first_at_least(&self, n: u32) -> u32 {
        if n <= self.from {
            self.from
        } else {
            let d = n - self.from;
            self.from + d.div_ceil(self.stride) * self.stride
        }
    }
}

/// An eventually constant step function with finite exceptions, and optionally
/// a periodic cofinal class that overrides the step tail.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Spectrum {
    /// Value below every step threshold.
    pub base: bool,
    /// Sorted thresholds; the greatest threshold ≤ n gives the value at n.
    pub steps: Vec<(u32, bool)>,
    /// Finite overrides, applied after steps and period.
    pub exceptions: BTreeMap<u32, bool>,
    /// When present, for n ≥ period.from the value is `period.contains(n)`
    /// (used for tree tails with a stride; never set by the set algebra).
    pub period: Option<Period>,
}

impl Spectrum {
    pub fn constant(v: bool) -> Self {
        Spectrum {
            base: v,
            ..Default::default()
        }
    }

    /// False below m, true from m on.
    pub fn step_at(m: u32) -> Self {
        if m == 0 {
            return Spectrum::constant(true);
        }
        Spectrum {
            base: false,
            steps: vec![(m, true)],
            ..Default::default()
        }
    }

    pub fn exception(n: u32, v: bool) -> Self {
        let mut e = BTreeMap::new();
        e.insert(n, v);
        Spectrum {
            base: false,
            exceptions: e,
            ..Default::default()
        }
    }

    pub fn periodic(p: Period) -> Self {
        Spectrum {
            base: false,
            period: Some(p),
            ..Default::default()
        }
    }

    fn step_eval(&self, n: u32) -> bool {
        let mut v = self.base;
        for &(t, b) in &self.steps {
            if n >= t {
                v = b;
            } else {
                break;
            }
        }
        v
    }

    pub fn eval(&self, n: u32) -> bool {
        if let Some(&v) = self.exceptions.get(&n) {
            return v;
        }
        if let Some(p) = self.period {
            if n >= p.from {
                return p.contains(n);
            }
        }
        self.step_eval(n)
    }

    /// The eventual step value (ignoring period and exceptions).
    pub fn step_tail(&self) -> bool {
        self.steps.last().map(|&(_, b)| b).unwrap_or(self.base)
    }

    /// Whether the spectrum is true for infinitely many n. Exceptions are
    /// finite and never witness this; a periodic class always does.
    pub fn infinitely_true(&self) -> bool {
        self.period.is_some() || self.step_tail()
    }

    /// Whether the spectrum is true for all but finitely many n.
    pub fn cofinitely_true(&self) -> bool {
        match self.period {
            Some(p) => p.stride == 1,
            None => self.step_tail(),
        }
    }

    /// A bound past which the step function is constant and there are no
    /// exceptions (the period, if any, still applies).
    pub fn breakpoint(&self) -> u32 {
        let mut b = self.steps.last().map(|&(t, _)| t).unwrap_or(0);
        if let Some((&e, _)) = self.exceptions.iter().next_back() {
            b = b.max(e + 1);
        }
        if let Some(p) = self.period {
            b = b.max(p.from);
        }
        b
    }

    /// Pointwise or. Periods are expected on at most one operand.
    pub fn or(&self, other: &Spectrum) -> Spectrum {
        assert!(
            self.period.is_none() || other.period.is_none(),
            "or of two periodic spectra is not supported"
        );
        if self.period.is_some() || other.period.is_some() {
            // Fall back to exception table up to the joint breakpoint and keep
            // the single period for the tail.
            let (pp, qq) = if self.period.is_some() {
                (self, other)
            } else {
                (other, self)
            };
            let p = pp.period.unwrap();
            let mut out = Spectrum {
                base: qq.base,
                steps: qq.steps.clone(),
                exceptions: BTreeMap::new(),
                period: Some(p),
            };
            let hor = self.breakpoint().max(other.breakpoint());
            for n in 0..=hor {
                let v = self.eval(n) || other.eval(n);
                if v != out.eval(n) {
                    out.exceptions.insert(n, v);
                }
            }
            // Beyond hor, out.eval(n) = qq.step_tail() || p.contains(n); the
            // true value is the same since both operands are stable there.
            return out;
        }
        let mut thresholds: Vec<u32> = vec![];
        thresholds.extend(self.steps.iter().map(|&(t, _)| t));
        thresholds.extend(other.steps.iter().map(|&(t, _)| t));
        thresholds.sort();
        thresholds.dedup();
        let mut steps = Vec::new();
        let base = self.base || other.base;
        let mut last = base;
        for t in thresholds {
            let v = self.step_eval(t) || other.step_eval(t);
            if v != last {
                steps.push((t, v));
                last = v;
            }
        }
        let mut out = Spectrum {
            base,
            steps,
            exceptions: BTreeMap::new(),
            period: None,
        };
        let mut keys: Vec<u32> = self.exceptions.keys().copied().collect();
        keys.extend(other.exceptions.keys().copied());
        keys.sort();
        keys.dedup();
        for n in keys {
            let v = self.eval(n) || other.eval(n);
            if v != out.step_eval(n) {
                out.exceptions.insert(n, v);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_and_exception() {
        let s = Spectrum::step_at(5);
        assert!(!s.eval(4));
        assert!(s.eval(5));
        assert!(s.infinitely_true());

        let e = Spectrum::exception(0, true);
        assert!(e.eval(0));
        assert!(!e.eval(1));
        assert!(!e.infinitely_true());
    }

    #[test]
    fn or_combines() {
        let s = Spectrum::step_at(3).or(&Spectrum::exception(1, true));
        assert!(s.eval(1));
        assert!(!s.eval(2));
        assert!(s.eval(3));
        assert!(s.eval(100));
    }

    #[test]
    fn periodic_class() {
        let p = Spectrum::periodic(Period { from: 1, stride: 2 });
        assert!(!p.eval(0));
        assert!(p.eval(1));
        assert!(!p.eval(2));
        assert!(p.eval(3));
        assert!(p.infinitely_true());
        assert!(!p.cofinitely_true());
        assert_eq!(Period { from: 1, stride: 2 }.first_at_least(4), 5);
        assert_eq!(Period { from: 1, stride: 2 }.first_at_least(5), 5);
    }
}
