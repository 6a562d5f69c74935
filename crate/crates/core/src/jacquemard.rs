//! Jacquemard's leading-letter extraction.
//!
//! Given a positive word `w` and a generator `σ_i`, rewrite `w` with the
//! Artin relations until it begins with `σ_i`, or report that no positive
//! `w'` with `σ_i·w' = w` exists. Every relation applied is logged in a
//! [`RelationTrace`] in whole-word coordinates.

use crate::words::{apply_relation_in_place, BraidWord, RelationTrace, TraceStep};
use crate::Result;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Success(BraidWord),
    Failure,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractionResult {
    pub outcome: Outcome,
    /// Empty on failure and on the `w ≡ σ_i w'` fast path.
    pub trace: RelationTrace,
}

impl ExtractionResult {
    pub fn is_success(&self) -> bool {
        matches!(self.outcome, Outcome::Success(_))
    }

    pub fn word(&self) -> Option<&BraidWord> {
        match &self.outcome {
            Outcome::Success(w) => Some(w),
            Outcome::Failure => None,
        }
    }

    fn failure() -> Self {
        ExtractionResult {
            outcome: Outcome::Failure,
            trace: RelationTrace::new(),
        }
    }
}

/// Returned by [`extract_with_limit`] when the recursion budget runs out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LimitExceeded;

pub fn extract(w: &BraidWord, i: usize) -> Result<ExtractionResult> {
    Ok(run(w, i, None)?.expect("no recursion limit"))
}

/// As [`extract`], but at most `max_recursion` nested recursive calls.
pub fn extract_with_limit(
    w: &BraidWord,
    i: usize,
    max_recursion: usize,
) -> Result<std::result::Result<ExtractionResult, LimitExceeded>> {
    run(w, i, Some(max_recursion))
}

fn run(
    w: &BraidWord,
    i: usize,
    limit: Option<usize>,
) -> Result<std::result::Result<ExtractionResult, LimitExceeded>> {
    let mut word = w.require_positive()?;
    w.check_generator(i)?;
    let mut trace = RelationTrace::new();
    let mut search = Search {
        word: &mut word,
        trace: &mut trace,
        limit,
    };
    Ok(match search.extract_at(0, i as u16, 0) {
        Err(LimitExceeded) => Err(LimitExceeded),
        Ok(false) => Ok(ExtractionResult::failure()),
        Ok(true) => Ok(ExtractionResult {
            outcome: Outcome::Success(BraidWord::from_indices(w.strands(), &word)),
            trace,
        }),
    })
}

struct Search<'a> {
    word: &'a mut Vec<u16>,
    trace: &'a mut RelationTrace,
    limit: Option<usize>,
}

impl Search<'_> {
    fn apply(&mut self, step: TraceStep) {
        apply_relation_in_place(self.word, step).expect("extraction only applies matching relations");
        self.trace.push(step);
    }

    /// Rewrites `word[start..]` in place so that `word[start] == i`.
    fn extract_at(&mut self, start: usize, i: u16, depth: usize) -> std::result::Result<bool, LimitExceeded> {
        loop {
            if self.word.get(start) == Some(&i) {
                return Ok(true);
            }
            // Leftmost occurrence, rescanned after every Triple.
            let Some(offset) = self.word[start..].iter().position(|&g| g == i) else {
                return Ok(false);
            };
            let mut p = start + offset;

            // Step (1): commute left past far generators.
            while p > start {
                let j = self.word[p - 1];
                debug_assert_ne!(j, i, "σ_i left of the leftmost σ_i");
                if j.abs_diff(i) >= 2 {
                    self.apply(TraceStep::commute(p - 1));
                    p -= 1;
                } else {
                    break;
                }
            }
            if p == start {
                return Ok(true);
            }

            // Step (2): word = w0 σ_j σ_i w1 with |i - j| = 1; pull σ_j to
            // the front of w1, then σ_j σ_i σ_j -> σ_i σ_j σ_i.
            let j = self.word[p - 1];
            if self.limit.is_some_and(|max| depth >= max) {
                return Err(LimitExceeded);
            }
            if !self.extract_at(p + 1, j, depth + 1)? {
                return Ok(false);
            }
            self.apply(TraceStep::triple(p - 1));
        }
    }
}
