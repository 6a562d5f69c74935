//! Garside left-canonical form `β = Δ^k α_1 ⋯ α_r` and braid equality.
//!
//! Negative letters are rewritten as `σ_i^{-1} = Δ^{-1}·(Δσ_i^{-1})` and the
//! `Δ^{-1}` is pushed to the far left through `x·Δ^{-1} = Δ^{-1}·flip(x)`.
//! The remaining positive product of permutation braids is made
//! left-weighted by local sliding: a generator that starts `α_{i+1}` but
//! does not finish `α_i` moves from the head of `α_{i+1}` to the tail of
//! `α_i`, one generator at a time, until nothing moves. Leading `Δ`
//! factors are then absorbed into `k`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::permutations::{make_delta, Permutation, PermutationBraid};
use crate::words::BraidWord;
use crate::{BraidError, Result};

/// The unique decomposition `Δ^inf · α_1 ⋯ α_r` with `inf` maximal and the
/// factors satisfying Thurston's condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeftCanonicalForm {
    strands: usize,
    inf: i64,
    factors: Vec<PermutationBraid>,
}

impl LeftCanonicalForm {
    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn inf(&self) -> i64 {
        self.inf
    }

    pub fn factors(&self) -> &[PermutationBraid] {
        &self.factors
    }

    /// `inf + r`.
    pub fn sup(&self) -> i64 {
        self.inf + self.factors.len() as i64
    }

    /// `Δ^inf` spelled with the `Δ` word, followed by the factor words.
    /// Positive whenever `inf ≥ 0`.
    pub fn to_word(&self) -> BraidWord {
        let mut w = delta_power_word(self.strands, self.inf);
        for f in &self.factors {
            w = w.concat(f.word()).expect("factor strands match");
        }
        w
    }

    /// Thurston's condition on every adjacent pair, nontrivial factors, and
    /// maximal `inf`.
    pub fn is_left_canonical(&self) -> bool {
        self.factors.iter().all(|f| !f.is_trivial())
            && self.factors.first().is_none_or(|f| !f.is_delta())
            && self
                .factors
                .windows(2)
                .all(|pair| pair[1].starting_set().is_subset(&pair[0].finishing_set()))
    }

    /// Compact representation used as a memoization key.
    pub fn key(&self) -> String {
        let mut s = self.inf.to_string();
        for f in &self.factors {
            s.push('|');
            s.push_str(&f.perm().to_string());
        }
        s
    }

    /// Parses the `D^k | [w1][w2]...` text form for `n` strands.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let bad = |reason| BraidError::Parse {
            token: text.to_string(),
            reason,
        };
        let (head, tail) = text.split_once('|').ok_or_else(|| bad("missing `|`"))?;
        let inf: i64 = head
            .trim()
            .strip_prefix("D^")
            .ok_or_else(|| bad("expected `D^k`"))?
            .parse()
            .map_err(|_| bad("Δ exponent is not an integer"))?;
        let mut factors = Vec::new();
        let mut rest = tail.trim();
        while !rest.is_empty() {
            let body = rest.strip_prefix('[').ok_or_else(|| bad("expected `[`"))?;
            let (inner, after) = body.split_once(']').ok_or_else(|| bad("unclosed `[`"))?;
            let w = BraidWord::parse(inner, n)?;
            factors.push(PermutationBraid::from_word(w)?.canonical());
            rest = after.trim_start();
        }
        LeftCanonicalForm::from_parts(n, inf, factors)
    }

    /// Validating constructor.
    pub fn from_parts(n: usize, inf: i64, factors: Vec<PermutationBraid>) -> Result<Self> {
        if factors.iter().any(|f| f.strands() != n) {
            return Err(BraidError::Precondition("factor strand count differs".into()));
        }
        let nf = LeftCanonicalForm {
            strands: n,
            inf,
            factors: factors.into_iter().map(|f| f.canonical()).collect(),
        };
        if !nf.is_left_canonical() {
            return Err(BraidError::Precondition("factors are not left-canonical".into()));
        }
        Ok(nf)
    }
}

impl PermutationBraid {
    fn canonical(self) -> Self {
        PermutationBraid::from_permutation(self.perm().clone())
    }
}

impl fmt::Display for LeftCanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D^{} |", self.inf)?;
        if !self.factors.is_empty() {
            f.write_str(" ")?;
        }
        for factor in &self.factors {
            write!(f, "[{}]", factor.word())?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct FormRepr {
    n: usize,
    inf: i64,
    factors: Vec<Vec<i64>>,
}

impl Serialize for LeftCanonicalForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FormRepr {
            n: self.strands,
            inf: self.inf,
            factors: self.factors.iter().map(|f| f.word().to_signed()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LeftCanonicalForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = FormRepr::deserialize(d)?;
        let factors = repr
            .factors
            .iter()
            .map(|g| BraidWord::from_signed(repr.n, g).and_then(PermutationBraid::from_word))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        LeftCanonicalForm::from_parts(repr.n, repr.inf, factors).map_err(serde::de::Error::custom)
    }
}

/// A word for `Δ^m` (the `Δ` word repeated, or its inverse repeated).
pub fn delta_power_word(n: usize, m: i64) -> BraidWord {
    let delta = make_delta(n).expect("n >= 2 for every BraidWord");
    let unit = if m >= 0 {
        delta.word().clone()
    } else {
        delta.word().invert()
    };
    let mut letters = Vec::with_capacity(unit.len() * m.unsigned_abs() as usize);
    for _ in 0..m.unsigned_abs() {
        letters.extend_from_slice(unit.letters());
    }
    BraidWord::from_parts(n, letters)
}

/// A word for `Δ^m · w`.
pub fn multiply_delta_power(w: &BraidWord, m: i64) -> BraidWord {
    delta_power_word(w.strands(), m)
        .concat(w)
        .expect("same strand count")
}

/// A word for `w · Δ^m`, built as `Δ^m · flip^m(w)`.
pub fn multiply_delta_power_right(w: &BraidWord, m: i64) -> BraidWord {
    multiply_delta_power(&w.flip_pow(m), m)
}

pub fn normal_form(w: &BraidWord) -> LeftCanonicalForm {
    let n = w.strands();
    let reversal = Permutation::reversal(n);
    let mut inf: i64 = 0;
    let mut factors: Vec<Permutation> = Vec::new();
    let mut total = 0usize;

    for l in w.letters() {
        let i = l.index();
        if l.is_positive() {
            // Greedy left-to-right factorization.
            match factors.last_mut() {
                Some(last) if !last.has_inverse_descent(i) => last.push_generator(i),
                _ => {
                    let mut p = Permutation::identity(n);
                    p.push_generator(i);
                    factors.push(p);
                }
            }
            total += 1;
        } else {
            // Δ^k·P·σ_i^{-1} = Δ^{k-1}·flip(P)·(Δσ_i^{-1}).
            for f in &mut factors {
                *f = f.flip();
            }
            inf -= 1;
            let mut complement = reversal.clone();
            complement.push_generator(i);
            if !complement.is_identity() {
                total += complement.inversions();
                factors.push(complement);
            }
        }
    }

    slide(&mut factors, total);

    let leading = factors.iter().take_while(|f| f.is_reversal()).count();
    inf += leading as i64;
    let factors = factors
        .into_iter()
        .skip(leading)
        .map(PermutationBraid::from_permutation)
        .collect();

    let nf = LeftCanonicalForm {
        strands: n,
        inf,
        factors,
    };
    debug_assert!(nf.is_left_canonical(), "sliding produced {nf}");
    nf
}

fn slide(factors: &mut Vec<Permutation>, total_letters: usize) {
    let n = factors.first().map_or(0, |f| f.len());
    let budget = factors.len() * total_letters + 1;
    let mut passes = 0;
    loop {
        let mut changed = false;
        for k in 1..factors.len() {
            let (head, tail) = factors.split_at_mut(k);
            let (a, b) = (&mut head[k - 1], &mut tail[0]);
            while let Some(j) =
                (1..n).find(|&j| b.has_descent(j) && !a.has_inverse_descent(j))
            {
                a.push_generator(j);
                b.pop_front_generator(j);
                changed = true;
            }
        }
        factors.retain(|f| !f.is_identity());
        if !changed {
            break;
        }
        passes += 1;
        assert!(
            passes <= budget,
            "left-canonical sliding exceeded {budget} passes"
        );
    }
}

/// Equality in `B_n`.
pub fn braid_equal(u: &BraidWord, v: &BraidWord) -> Result<bool> {
    u.check_same_strands(v)?;
    Ok(normal_form(u) == normal_form(v))
}

/// `n(w)`: the number of leading `Δ` factors of a positive braid.
pub fn n_leading_deltas(w: &BraidWord) -> Result<i64> {
    w.require_positive()?;
    Ok(normal_form(w).inf)
}

/// Whether `w = σ_i·w'` for some positive `w'`.
pub fn left_divisible_by(w: &BraidWord, i: usize) -> Result<bool> {
    w.require_positive()?;
    w.check_generator(i)?;
    Ok(nf_left_divisible_by(&normal_form(w), i))
}

pub(crate) fn nf_left_divisible_by(nf: &LeftCanonicalForm, i: usize) -> bool {
    nf.inf >= 1 || nf.factors.first().is_some_and(|f| f.starting_set().contains(&i))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, g: &[i64]) -> BraidWord {
        BraidWord::from_signed(n, g).unwrap()
    }

    fn perms(nf: &LeftCanonicalForm) -> Vec<Permutation> {
        nf.factors().iter().map(|f| f.perm().clone()).collect()
    }

    fn perm_of(n: usize, g: &[i64]) -> Permutation {
        crate::permutations::word_to_permutation(&w(n, g))
    }

    #[test]
    fn trivial_and_delta() {
        let e = normal_form(&w(3, &[]));
        assert_eq!((e.inf(), e.factors().len()), (0, 0));
        let d = normal_form(&w(3, &[2, 1, 2]));
        assert_eq!((d.inf(), d.factors().len()), (1, 0));
    }

    #[test]
    fn worked_example() {
        let nf = normal_form(&w(4, &[1, 3, 3, 3, 3, 1]));
        assert_eq!(nf.inf(), 0);
        let expected: Vec<_> = [&[3, 1][..], &[3, 1], &[3], &[3]]
            .iter()
            .map(|g| perm_of(4, g))
            .collect();
        assert_eq!(perms(&nf), expected);
        assert_eq!(nf.to_string(), "D^0 | [1 3][1 3][3][3]");
    }

    #[test]
    fn single_inverse() {
        let nf = normal_form(&w(3, &[-1]));
        assert_eq!(nf.inf(), -1);
        assert_eq!(perms(&nf), vec![perm_of(3, &[1, 2])]);
    }

    #[test]
    fn equality_examples() {
        assert!(braid_equal(&w(3, &[1, 2, 1]), &w(3, &[2, 1, 2])).unwrap());
        assert!(braid_equal(&w(4, &[1, 3]), &w(4, &[3, 1])).unwrap());
        assert!(!braid_equal(&w(3, &[1]), &w(3, &[2])).unwrap());
        assert!(braid_equal(&w(3, &[1, -1, 2]), &w(3, &[2])).unwrap());
        assert!(braid_equal(&w(3, &[1, 2, -1]), &w(3, &[-2, 1, 2])).unwrap());
        assert!(braid_equal(&w(3, &[1]), &w(4, &[1])).is_err());
    }

    #[test]
    fn leading_deltas() {
        assert_eq!(n_leading_deltas(&w(3, &[])).unwrap(), 0);
        assert_eq!(n_leading_deltas(&w(3, &[1, 2, 1, 1, 2, 1])).unwrap(), 2);
        assert_eq!(n_leading_deltas(&w(4, &[1, 3, 3, 3, 3, 1])).unwrap(), 0);
        assert_eq!(n_leading_deltas(&w(3, &[-1])), Err(BraidError::NotPositive));
    }

    #[test]
    fn left_divisibility() {
        assert!(left_divisible_by(&w(3, &[2, 1, 2]), 1).unwrap());
        assert!(!left_divisible_by(&w(3, &[1, 2]), 2).unwrap());
        let d4 = make_delta(4).unwrap();
        for i in 1..4 {
            assert!(left_divisible_by(d4.word(), i).unwrap());
        }
        assert!(!left_divisible_by(&w(3, &[]), 1).unwrap());
        assert!(left_divisible_by(&w(3, &[1]), 3).is_err());
    }

    #[test]
    fn delta_powers() {
        let x = w(3, &[1, -2, 2, 2]);
        assert_eq!(multiply_delta_power(&x, 0), x);
        // Δσ1 = σ2Δ.
        let lhs = multiply_delta_power(&w(3, &[1]), 1);
        let rhs = multiply_delta_power_right(&w(3, &[2]), 1);
        assert!(braid_equal(&lhs, &rhs).unwrap());
        assert!(braid_equal(&rhs, &w(3, &[2, 1, 2, 1])).unwrap());
        // Δ^2 is central.
        let d2x = multiply_delta_power(&x, 2);
        let xd2 = x.concat(&delta_power_word(3, 2)).unwrap();
        assert!(braid_equal(&d2x, &xd2).unwrap());
        assert_eq!(normal_form(&delta_power_word(4, -3)).inf(), -3);
    }

    #[test]
    fn flatten_round_trip() {
        for g in [&[1, -2, 3, 3, -1][..], &[-1, -1, -2], &[2, 3, 1, 2, -3]] {
            let x = w(4, g);
            let nf = normal_form(&x);
            assert!(nf.is_left_canonical());
            assert_eq!(normal_form(&nf.to_word()), nf);
        }
    }

    #[test]
    fn text_and_json_forms() {
        let nf = normal_form(&w(4, &[1, 3, 3, 3, 3, 1, -2]));
        let text = nf.to_string();
        assert_eq!(LeftCanonicalForm::parse(&text, 4).unwrap(), nf);
        let json = serde_json::to_string(&nf).unwrap();
        assert_eq!(serde_json::from_str::<LeftCanonicalForm>(&json).unwrap(), nf);

        let e = normal_form(&w(3, &[]));
        assert_eq!(e.to_string(), "D^0 |");
        assert_eq!(LeftCanonicalForm::parse("D^0 |", 3).unwrap(), e);
        assert_eq!(
            serde_json::to_string(&normal_form(&w(4, &[1, 3, 3]))).unwrap(),
            r#"{"n":4,"inf":0,"factors":[[1,3],[3]]}"#
        );
        // Not left-weighted: σ1 · σ2σ1.
        assert!(LeftCanonicalForm::parse("D^0 | [1][2 1]", 3).is_err());
        // Leading Δ must be absorbed.
        assert!(LeftCanonicalForm::parse("D^0 | [1 2 1]", 3).is_err());
    }
}
