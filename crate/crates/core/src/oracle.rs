//! Brute-force ground truth for positive braids.
//!
//! Relations preserve length, so the class of a positive word under single
//! relation applications is finite and breadth-first search enumerates it
//! completely. Everything here is exponential and meant for small inputs;
//! the bounds are enforced so that a truncated class can never be mistaken
//! for a complete one.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use crate::words::{apply_relation_in_place, BraidWord, RelationTrace, TraceStep};
use crate::{BraidError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBounds {
    pub max_len: usize,
    pub max_strands: usize,
}

impl Default for OracleBounds {
    fn default() -> Self {
        OracleBounds {
            max_len: 10,
            max_strands: 5,
        }
    }
}

/// All positive words equal in `B_n⁺` to `representative`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceClass {
    pub representative: BraidWord,
    pub members: BTreeSet<BraidWord>,
}

impl EquivalenceClass {
    pub fn contains(&self, w: &BraidWord) -> bool {
        self.members.contains(w)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Oracle {
    pub bounds: OracleBounds,
}

impl Oracle {
    pub fn new(bounds: OracleBounds) -> Self {
        Oracle { bounds }
    }

    fn admit(&self, w: &BraidWord) -> Result<Vec<u16>> {
        let idx = w.require_positive()?;
        if w.strands() > self.bounds.max_strands {
            return Err(BraidError::BoundExceeded {
                what: "strands",
                value: w.strands(),
                limit: self.bounds.max_strands,
            });
        }
        if w.len() > self.bounds.max_len {
            return Err(BraidError::BoundExceeded {
                what: "word length",
                value: w.len(),
                limit: self.bounds.max_len,
            });
        }
        Ok(idx)
    }

    pub fn enumerate_class(&self, w: &BraidWord) -> Result<EquivalenceClass> {
        let start = self.admit(w)?;
        let mut seen: HashSet<Vec<u16>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(start.clone());
        queue.push_back(start);
        while let Some(cur) = queue.pop_front() {
            for (_, next) in neighbours(&cur) {
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        let members = seen
            .into_iter()
            .map(|idx| BraidWord::from_indices(w.strands(), &idx))
            .collect();
        Ok(EquivalenceClass {
            representative: w.clone(),
            members,
        })
    }

    pub fn oracle_equal(&self, u: &BraidWord, v: &BraidWord) -> Result<bool> {
        u.check_same_strands(v)?;
        self.admit(u)?;
        self.admit(v)?;
        if u.len() != v.len() {
            return Ok(false);
        }
        Ok(self.enumerate_class(u)?.contains(v))
    }

    /// `{ i : some member of the class of w starts with σ_i }`.
    pub fn left_divisor_letters(&self, w: &BraidWord) -> Result<BTreeSet<usize>> {
        Ok(self
            .enumerate_class(w)?
            .members
            .iter()
            .filter_map(|m| m.letters().first().map(|l| l.index()))
            .collect())
    }

    /// A shortest relation sequence rewriting `u` into `v` exactly.
    pub fn certificate(&self, u: &BraidWord, v: &BraidWord) -> Result<Option<RelationTrace>> {
        u.check_same_strands(v)?;
        let start = self.admit(u)?;
        let goal = self.admit(v)?;
        if start.len() != goal.len() {
            return Ok(None);
        }
        let mut parent: HashMap<Vec<u16>, Option<(Vec<u16>, TraceStep)>> = HashMap::new();
        let mut queue = VecDeque::new();
        parent.insert(start.clone(), None);
        queue.push_back(start);
        while let Some(cur) = queue.pop_front() {
            if cur == goal {
                let mut steps = Vec::new();
                let mut at = cur;
                while let Some(Some((prev, step))) = parent.get(&at) {
                    steps.push(*step);
                    at = prev.clone();
                }
                steps.reverse();
                return Ok(Some(RelationTrace::from(steps)));
            }
            for (step, next) in neighbours(&cur) {
                if !parent.contains_key(&next) {
                    parent.insert(next.clone(), Some((cur.clone(), step)));
                    queue.push_back(next);
                }
            }
        }
        Ok(None)
    }
}

/// Every word one relation away, in position order.
fn neighbours(w: &[u16]) -> Vec<(TraceStep, Vec<u16>)> {
    let mut out = Vec::new();
    for p in 0..w.len() {
        for step in [TraceStep::commute(p), TraceStep::triple(p)] {
            let mut next = w.to_vec();
            if apply_relation_in_place(&mut next, step).is_ok() {
                out.push((step, next));
            }
        }
    }
    out
}

/// Every positive step-by-step rewrite available at some position.
pub fn applicable_steps(w: &BraidWord) -> Vec<TraceStep> {
    match w.positive_indices() {
        Some(idx) => neighbours(&idx).into_iter().map(|(s, _)| s).collect(),
        None => Vec::new(),
    }
}

/// All positive words on `n` strands of exactly `len` letters, in
/// lexicographic order.
pub fn positive_words(n: usize, len: usize) -> Vec<BraidWord> {
    let gens = n - 1;
    let count = gens.pow(len as u32);
    (0..count)
        .map(|mut code| {
            let mut idx = vec![0u16; len];
            for slot in idx.iter_mut().rev() {
                *slot = (code % gens) as u16 + 1;
                code /= gens;
            }
            BraidWord::from_indices(n, &idx)
        })
        .collect()
}

/// All positive words on `n` strands with at most `max_len` letters.
pub fn positive_words_up_to(n: usize, max_len: usize) -> Vec<BraidWord> {
    (0..=max_len).flat_map(|l| positive_words(n, l)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pw(n: usize, g: &[usize]) -> BraidWord {
        BraidWord::positive(n, g).unwrap()
    }

    fn set(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    #[test]
    fn classes() {
        let o = Oracle::default();
        let c = o.enumerate_class(&pw(3, &[1, 2])).unwrap();
        assert_eq!(c.members.into_iter().collect::<Vec<_>>(), vec![pw(3, &[1, 2])]);
        let c = o.enumerate_class(&pw(3, &[1, 2, 1])).unwrap();
        assert_eq!(
            c.members.into_iter().collect::<Vec<_>>(),
            vec![pw(3, &[1, 2, 1]), pw(3, &[2, 1, 2])]
        );
        assert_eq!(o.enumerate_class(&pw(3, &[])).unwrap().len(), 1);
        // Δ4 has 16 reduced words.
        let d4 = crate::permutations::make_delta(4).unwrap();
        assert_eq!(o.enumerate_class(d4.word()).unwrap().len(), 16);
    }

    #[test]
    fn class_invariants() {
        let o = Oracle::default();
        let w = pw(4, &[1, 2, 3, 2, 1, 3, 2]);
        let c = o.enumerate_class(&w).unwrap();
        for m in &c.members {
            assert_eq!(m.len(), w.len());
            assert_eq!(m.exponent_sum(), w.exponent_sum());
            for step in applicable_steps(m) {
                assert!(c.contains(&m.apply_relation(step).unwrap()));
            }
        }
    }

    #[test]
    fn equality() {
        let o = Oracle::default();
        assert!(o.oracle_equal(&pw(4, &[1, 3]), &pw(4, &[3, 1])).unwrap());
        assert!(!o.oracle_equal(&pw(3, &[1, 1]), &pw(3, &[2, 2])).unwrap());
        assert!(o.oracle_equal(&pw(3, &[1, 2, 1]), &pw(3, &[2, 1, 2])).unwrap());
        assert!(!o.oracle_equal(&pw(3, &[1]), &pw(3, &[1, 1])).unwrap());
    }

    #[test]
    fn left_divisors() {
        let o = Oracle::default();
        assert_eq!(o.left_divisor_letters(&pw(3, &[2, 1, 2])).unwrap(), set(&[1, 2]));
        assert_eq!(o.left_divisor_letters(&pw(3, &[1, 2])).unwrap(), set(&[1]));
        let d4 = crate::permutations::make_delta(4).unwrap();
        assert_eq!(o.left_divisor_letters(d4.word()).unwrap(), set(&[1, 2, 3]));
    }

    #[test]
    fn certificates() {
        let o = Oracle::default();
        let t = o.certificate(&pw(3, &[1, 2, 1]), &pw(3, &[2, 1, 2])).unwrap().unwrap();
        assert_eq!(t.steps(), &[TraceStep::triple(0)]);
        let w = pw(4, &[1, 2, 3]);
        assert!(o.certificate(&w, &w).unwrap().unwrap().is_empty());
        let t = o.certificate(&pw(4, &[1, 3, 2]), &pw(4, &[3, 1, 2])).unwrap().unwrap();
        assert_eq!(t.steps(), &[TraceStep::commute(0)]);
        assert_eq!(o.certificate(&pw(3, &[1, 2]), &pw(3, &[2, 1])).unwrap(), None);

        let d4 = crate::permutations::make_delta(4).unwrap();
        let target = d4.word().reverse();
        let t = o.certificate(d4.word(), &target).unwrap().unwrap();
        assert_eq!(d4.word().apply_trace(&t).unwrap(), target);
    }

    #[test]
    fn bounds_are_enforced() {
        let o = Oracle::new(OracleBounds { max_len: 3, max_strands: 3 });
        assert_eq!(
            o.enumerate_class(&pw(3, &[1, 2, 1, 2])),
            Err(BraidError::BoundExceeded { what: "word length", value: 4, limit: 3 })
        );
        assert!(matches!(
            o.enumerate_class(&pw(4, &[1])),
            Err(BraidError::BoundExceeded { what: "strands", .. })
        ));
        let neg = BraidWord::from_signed(3, &[-1]).unwrap();
        assert_eq!(o.enumerate_class(&neg), Err(BraidError::NotPositive));
    }

    #[test]
    fn word_enumeration() {
        assert_eq!(positive_words(3, 3).len(), 8);
        assert_eq!(positive_words_up_to(4, 2).len(), 1 + 3 + 9);
        assert_eq!(positive_words(4, 2)[1], pw(4, &[1, 2]));
    }
}
