//! Braid words over the Artin generators `σ_1 … σ_{n-1}`.
//!
//! A [`BraidWord`] is pure syntax: two words are `==` only when they agree
//! letter by letter. Equality in the braid group lives in
//! [`crate::garside::braid_equal`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{BraidError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }
}

/// `σ_i` or `σ_i^{-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    index: u16,
    sign: Sign,
}

impl Letter {
    /// Panics if `index == 0`.
    pub fn new(index: usize, sign: Sign) -> Self {
        assert!(index >= 1 && index <= u16::MAX as usize, "generator index must be >= 1");
        Letter {
            index: index as u16,
            sign,
        }
    }

    pub fn pos(index: usize) -> Self {
        Letter::new(index, Sign::Pos)
    }

    pub fn neg(index: usize) -> Self {
        Letter::new(index, Sign::Neg)
    }

    pub fn index(self) -> usize {
        self.index as usize
    }

    pub fn sign(self) -> Sign {
        self.sign
    }

    pub fn is_positive(self) -> bool {
        self.sign == Sign::Pos
    }

    pub fn inverse(self) -> Self {
        Letter {
            index: self.index,
            sign: self.sign.flip(),
        }
    }

    /// Signed-integer form used for I/O: `σ_3^{-1}` is `-3`.
    pub fn to_signed(self) -> i64 {
        self.index as i64 * self.sign.as_i64()
    }
}

/// A finite word in the Artin generators of `B_n`, with `n` carried along.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

fn check_strands(n: usize) -> Result<()> {
    if n < 2 {
        return Err(BraidError::TooFewStrands(n));
    }
    Ok(())
}

impl BraidWord {
    /// The trivial braid `e` on `n` strands.
    pub fn identity(n: usize) -> Result<Self> {
        check_strands(n)?;
        Ok(BraidWord {
            strands: n,
            letters: Vec::new(),
        })
    }

    pub fn new(n: usize, letters: Vec<Letter>) -> Result<Self> {
        check_strands(n)?;
        if let Some(bad) = letters.iter().find(|l| l.index() >= n) {
            return Err(BraidError::IndexOutOfRange {
                index: bad.index(),
                strands: n,
            });
        }
        Ok(BraidWord { strands: n, letters })
    }

    /// Builds a word from signed integers (`-2` is `σ_2^{-1}`).
    pub fn from_signed(n: usize, gens: &[i64]) -> Result<Self> {
        let letters = gens
            .iter()
            .map(|&g| signed_to_letter(g, n).map_err(|reason| BraidError::Parse {
                token: g.to_string(),
                reason,
            }))
            .collect::<Result<Vec<_>>>()?;
        BraidWord::new(n, letters)
    }

    /// Builds a positive word from generator indices.
    pub fn positive(n: usize, indices: &[usize]) -> Result<Self> {
        BraidWord::new(n, indices.iter().map(|&i| Letter::pos(i)).collect())
    }

    /// Parses the whitespace-separated signed-integer text form.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        check_strands(n)?;
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            let g: i64 = token.parse().map_err(|_| BraidError::Parse {
                token: token.to_string(),
                reason: "not an integer",
            })?;
            let letter = signed_to_letter(g, n).map_err(|reason| BraidError::Parse {
                token: token.to_string(),
                reason,
            })?;
            letters.push(letter);
        }
        Ok(BraidWord { strands: n, letters })
    }

    // Internal constructor for letters already known to be in range.
    pub(crate) fn from_parts(strands: usize, letters: Vec<Letter>) -> Self {
        debug_assert!(strands >= 2 && letters.iter().all(|l| l.index() < strands));
        BraidWord { strands, letters }
    }

    pub(crate) fn from_indices(strands: usize, indices: &[u16]) -> Self {
        BraidWord::from_parts(
            strands,
            indices.iter().map(|&i| Letter::pos(i as usize)).collect(),
        )
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn to_signed(&self) -> Vec<i64> {
        self.letters.iter().map(|l| l.to_signed()).collect()
    }

    /// Generator indices of a positive word; `None` if any letter is inverted.
    pub fn positive_indices(&self) -> Option<Vec<u16>> {
        self.letters
            .iter()
            .map(|l| l.is_positive().then_some(l.index))
            .collect()
    }

    pub(crate) fn require_positive(&self) -> Result<Vec<u16>> {
        self.positive_indices().ok_or(BraidError::NotPositive)
    }

    pub(crate) fn check_same_strands(&self, other: &BraidWord) -> Result<()> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch {
                left: self.strands,
                right: other.strands,
            });
        }
        Ok(())
    }

    pub fn check_generator(&self, i: usize) -> Result<()> {
        if i == 0 || i >= self.strands {
            return Err(BraidError::IndexOutOfRange {
                index: i,
                strands: self.strands,
            });
        }
        Ok(())
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        self.check_same_strands(other)?;
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord::from_parts(self.strands, letters))
    }

    /// `rev`: the same letters read right to left.
    pub fn reverse(&self) -> BraidWord {
        let letters = self.letters.iter().rev().copied().collect();
        BraidWord::from_parts(self.strands, letters)
    }

    /// Group inverse: reversed, every sign negated.
    pub fn invert(&self) -> BraidWord {
        let letters = self.letters.iter().rev().map(|l| l.inverse()).collect();
        BraidWord::from_parts(self.strands, letters)
    }

    /// Free-group reduction. Braid relations are never used.
    pub fn free_reduce(&self) -> BraidWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        BraidWord::from_parts(self.strands, out)
    }

    /// `σ_j ↦ σ_{n-j}`, the automorphism satisfying `Δ·x = flip(x)·Δ`.
    pub fn flip(&self) -> BraidWord {
        let n = self.strands;
        let letters = self
            .letters
            .iter()
            .map(|l| Letter::new(n - l.index(), l.sign()))
            .collect();
        BraidWord::from_parts(n, letters)
    }

    /// `flip` applied `k` times (only the parity matters).
    pub fn flip_pow(&self, k: i64) -> BraidWord {
        if k.rem_euclid(2) == 1 {
            self.flip()
        } else {
            self.clone()
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// Number of letters, `|w|`.
    pub fn word_length(&self) -> usize {
        self.letters.len()
    }

    /// Image under the abelianization `B_n → Z`.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.sign().as_i64()).sum()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| l.is_positive())
    }

    /// `w ≡ rev(w)` letter by letter.
    pub fn is_palindromic_word(&self) -> bool {
        let n = self.letters.len();
        (0..n / 2).all(|k| self.letters[k] == self.letters[n - 1 - k])
    }

    pub fn apply_relation(&self, step: TraceStep) -> Result<BraidWord> {
        let mut idx = self.require_positive()?;
        apply_relation_in_place(&mut idx, step)?;
        Ok(BraidWord::from_indices(self.strands, &idx))
    }

    /// Replays a whole trace, step by step.
    pub fn apply_trace(&self, trace: &RelationTrace) -> Result<BraidWord> {
        let mut idx = self.require_positive()?;
        for &step in trace.steps() {
            apply_relation_in_place(&mut idx, step)?;
        }
        Ok(BraidWord::from_indices(self.strands, &idx))
    }
}

fn signed_to_letter(g: i64, n: usize) -> std::result::Result<Letter, &'static str> {
    if g == 0 {
        return Err("zero is not a generator");
    }
    let index = g.unsigned_abs() as usize;
    if index >= n {
        return Err("generator index out of range");
    }
    let sign = if g > 0 { Sign::Pos } else { Sign::Neg };
    Ok(Letter::new(index, sign))
}

pub(crate) fn apply_relation_in_place(w: &mut [u16], step: TraceStep) -> Result<()> {
    let p = step.position;
    let width = step.kind.width();
    if p + width > w.len() {
        return Err(BraidError::PositionOutOfRange {
            position: p,
            len: w.len(),
        });
    }
    let mismatch = BraidError::PatternMismatch {
        kind: step.kind.tag(),
        position: p,
    };
    match step.kind {
        RelationKind::Commute => {
            if w[p].abs_diff(w[p + 1]) < 2 {
                return Err(mismatch);
            }
            w.swap(p, p + 1);
        }
        RelationKind::Triple => {
            let (a, b, c) = (w[p], w[p + 1], w[p + 2]);
            if a != c || a.abs_diff(b) != 1 {
                return Err(mismatch);
            }
            w[p] = b;
            w[p + 1] = a;
            w[p + 2] = b;
        }
    }
    Ok(())
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", l.to_signed())?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct WordRepr {
    n: usize,
    letters: Vec<i64>,
}

impl Serialize for BraidWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WordRepr {
            n: self.strands,
            letters: self.to_signed(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BraidWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = WordRepr::deserialize(d)?;
        BraidWord::from_signed(repr.n, &repr.letters).map_err(serde::de::Error::custom)
    }
}

/// Which Artin relation a rewrite step used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationKind {
    /// `σ_i σ_j = σ_j σ_i` for `|i - j| ≥ 2`.
    Commute,
    /// `σ_i σ_{i+1} σ_i = σ_{i+1} σ_i σ_{i+1}`.
    Triple,
}

impl RelationKind {
    /// Number of letters rewritten.
    pub fn width(self) -> usize {
        match self {
            RelationKind::Commute => 2,
            RelationKind::Triple => 3,
        }
    }

    fn tag(self) -> char {
        match self {
            RelationKind::Commute => 'C',
            RelationKind::Triple => 'T',
        }
    }
}

/// One relation application; `position` is the zero-based index of the
/// leftmost rewritten letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TraceStep {
    pub kind: RelationKind,
    pub position: usize,
}

impl TraceStep {
    pub fn commute(position: usize) -> Self {
        TraceStep {
            kind: RelationKind::Commute,
            position,
        }
    }

    pub fn triple(position: usize) -> Self {
        TraceStep {
            kind: RelationKind::Triple,
            position,
        }
    }

    /// One past the last rewritten position.
    pub fn end(self) -> usize {
        self.position + self.kind.width()
    }
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.kind.tag(), self.position)
    }
}

impl FromStr for TraceStep {
    type Err = BraidError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason| BraidError::Parse {
            token: s.to_string(),
            reason,
        };
        let (tag, pos) = s.trim().split_once('@').ok_or_else(|| bad("expected C@p or T@p"))?;
        let position = pos.parse().map_err(|_| bad("position is not an integer"))?;
        let kind = match tag {
            "C" => RelationKind::Commute,
            "T" => RelationKind::Triple,
            _ => return Err(bad("unknown relation tag")),
        };
        Ok(TraceStep { kind, position })
    }
}

/// Ordered log of relation applications.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct RelationTrace {
    steps: Vec<TraceStep>,
}

impl RelationTrace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, step: TraceStep) {
        self.steps.push(step);
    }

    pub fn steps(&self) -> &[TraceStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

impl From<Vec<TraceStep>> for RelationTrace {
    fn from(steps: Vec<TraceStep>) -> Self {
        RelationTrace { steps }
    }
}

impl fmt::Display for RelationTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for step in &self.steps {
            writeln!(f, "{step}")?;
        }
        Ok(())
    }
}

impl FromStr for RelationTrace {
    type Err = BraidError;

    fn from_str(s: &str) -> Result<Self> {
        s.lines()
            .filter(|l| !l.trim().is_empty())
            .map(str::parse)
            .collect::<Result<Vec<_>>>()
            .map(RelationTrace::from)
    }
}
