//! The symmetric-group side of `B_n`: the canonical epimorphism `B_n → S_n`,
//! positive permutation braids `S_n⁺`, and the Garside element `Δ`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::words::{BraidWord, Letter};
use crate::{BraidError, Result};

/// A bijection on strand positions. `image(s)` is the final position of the
/// strand that starts at position `s` (both 1-based at the API boundary).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    // 0-based images.
    images: Vec<u16>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u16).collect(),
        }
    }

    /// `i ↦ n + 1 - i`, the permutation of `Δ`.
    pub fn reversal(n: usize) -> Self {
        Permutation {
            images: (0..n as u16).rev().collect(),
        }
    }

    /// From 1-based images, e.g. `[2, 1, 3]`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &p in images {
            if p == 0 || p > n || seen[p - 1] {
                return Err(BraidError::Precondition(format!(
                    "{images:?} is not a permutation of 1..={n}"
                )));
            }
            seen[p - 1] = true;
        }
        Ok(Permutation {
            images: images.iter().map(|&p| (p - 1) as u16).collect(),
        })
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&p| p as usize + 1).collect()
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(s, &p)| s == p as usize)
    }

    pub fn is_reversal(&self) -> bool {
        let n = self.images.len();
        self.images.iter().enumerate().all(|(s, &p)| p as usize == n - 1 - s)
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (s, &p) in self.images.iter().enumerate() {
            images[p as usize] = s as u16;
        }
        Permutation { images }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Self {
        Permutation {
            images: self.images.iter().map(|&p| other.images[p as usize]).collect(),
        }
    }

    /// Conjugation by the reversal; the image of `flip(w)` is `flip` of the image of `w`.
    pub fn flip(&self) -> Self {
        let n = self.images.len() as u16;
        Permutation {
            images: self.images.iter().rev().map(|&p| n - 1 - p).collect(),
        }
    }

    pub fn inversions(&self) -> usize {
        let p = &self.images;
        (0..p.len())
            .flat_map(|a| (a + 1..p.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| p[a] > p[b])
            .count()
    }

    /// Strands starting at positions `i`, `i+1` end up swapped.
    pub(crate) fn has_descent(&self, i: usize) -> bool {
        self.images[i - 1] > self.images[i]
    }

    /// Strands ending at positions `i`, `i+1` started swapped.
    pub(crate) fn has_inverse_descent(&self, i: usize) -> bool {
        let a = self.images.iter().position(|&p| p as usize == i - 1).unwrap();
        let b = self.images.iter().position(|&p| p as usize == i).unwrap();
        a > b
    }

    /// Image of `self·σ_i`.
    pub(crate) fn push_generator(&mut self, i: usize) {
        let (lo, hi) = ((i - 1) as u16, i as u16);
        for p in &mut self.images {
            if *p == lo {
                *p = hi;
            } else if *p == hi {
                *p = lo;
            }
        }
    }

    /// Image of `σ_i^{-1}·self`.
    pub(crate) fn pop_front_generator(&mut self, i: usize) {
        self.images.swap(i - 1, i);
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, p) in self.images.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", p + 1)?;
        }
        f.write_str("]")
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.images().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(d)?;
        Permutation::from_images(&images).map_err(serde::de::Error::custom)
    }
}

/// The permutation associated to a (signed) braid word.
pub fn word_to_permutation(w: &BraidWord) -> Permutation {
    let mut p = Permutation::identity(w.strands());
    for l in w.letters() {
        p.push_generator(l.index());
    }
    p
}

/// True iff no pair of strands crosses twice in the positive word `w`.
pub fn is_permutation_braid(w: &BraidWord) -> Result<bool> {
    let idx = w.require_positive()?;
    let n = w.strands();
    let mut at: Vec<usize> = (0..n).collect();
    let mut crossed = vec![false; n * n];
    for i in idx {
        let (p, q) = (i as usize - 1, i as usize);
        let (a, b) = (at[p].min(at[q]), at[p].max(at[q]));
        if std::mem::replace(&mut crossed[a * n + b], true) {
            return Ok(false);
        }
        at.swap(p, q);
    }
    Ok(true)
}

/// An element of `S_n⁺`: a positive word in which every strand pair crosses
/// at most once, with its permutation cached.
///
/// Equality is equality of permutations, which is group equality inside `S_n⁺`.
#[derive(Debug, Clone)]
pub struct PermutationBraid {
    word: BraidWord,
    perm: Permutation,
}

impl PartialEq for PermutationBraid {
    fn eq(&self, other: &Self) -> bool {
        self.perm == other.perm
    }
}

impl Eq for PermutationBraid {}

impl PermutationBraid {
    pub fn from_word(word: BraidWord) -> Result<Self> {
        if !is_permutation_braid(&word)? {
            return Err(BraidError::Precondition(format!(
                "`{word}` is not a permutation braid"
            )));
        }
        let perm = word_to_permutation(&word);
        Ok(PermutationBraid { word, perm })
    }

    /// The canonical representative of `p`; see [`permutation_to_braid`].
    pub fn from_permutation(p: Permutation) -> Self {
        let word = canonical_word(&p);
        PermutationBraid { word, perm: p }
    }

    pub fn word(&self) -> &BraidWord {
        &self.word
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn strands(&self) -> usize {
        self.word.strands()
    }

    pub fn is_trivial(&self) -> bool {
        self.perm.is_identity()
    }

    pub fn is_delta(&self) -> bool {
        self.perm.is_reversal()
    }

    /// `rev` maps `S_n⁺` to itself.
    pub fn reverse(&self) -> Self {
        PermutationBraid {
            word: self.word.reverse(),
            perm: self.perm.inverse(),
        }
    }

    /// Generators `σ_i` with `σ_i ≼ self` (left divisors).
    pub fn starting_set(&self) -> BTreeSet<usize> {
        (1..self.strands()).filter(|&i| self.perm.has_descent(i)).collect()
    }

    /// Generators `σ_i` with `self ≽ σ_i` (right divisors).
    pub fn finishing_set(&self) -> BTreeSet<usize> {
        (1..self.strands())
            .filter(|&i| self.perm.has_inverse_descent(i))
            .collect()
    }
}

/// Bubble-sort reading: sweep left to right, emitting `σ_i` whenever the
/// strands at positions `i`, `i+1` still have to swap.
fn canonical_word(p: &Permutation) -> BraidWord {
    let n = p.len();
    let mut at: Vec<u16> = (0..n as u16).collect();
    let target = |s: u16| p.images[s as usize];
    let mut letters = Vec::with_capacity(p.inversions());
    loop {
        let mut swapped = false;
        for pos in 0..n.saturating_sub(1) {
            if target(at[pos]) > target(at[pos + 1]) {
                at.swap(pos, pos + 1);
                letters.push(Letter::pos(pos + 1));
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    BraidWord::from_parts(n, letters)
}

/// Canonical bijection `S_n → S_n⁺`.
pub fn permutation_to_braid(p: &Permutation) -> PermutationBraid {
    PermutationBraid::from_permutation(p.clone())
}

/// `Δ = (σ_1 ⋯ σ_{n-1})(σ_1 ⋯ σ_{n-2}) ⋯ (σ_1 σ_2) σ_1`, written exactly so.
pub fn make_delta(n: usize) -> Result<PermutationBraid> {
    if n < 2 {
        return Err(BraidError::TooFewStrands(n));
    }
    let letters = (1..n)
        .rev()
        .flat_map(|top| (1..=top).map(Letter::pos))
        .collect();
    Ok(PermutationBraid {
        word: BraidWord::from_parts(n, letters),
        perm: Permutation::reversal(n),
    })
}

/// All `n!` permutations in lexicographic order of images.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
        if cur.len() == n {
            out.push(Permutation::from_images(cur).unwrap());
            return;
        }
        for v in 1..=n {
            if !used[v - 1] {
                used[v - 1] = true;
                cur.push(v);
                rec(n, cur, used, out);
                cur.pop();
                used[v - 1] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
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
    fn images_of_words() {
        assert_eq!(word_to_permutation(&pw(3, &[1])).images(), vec![2, 1, 3]);
        assert!(word_to_permutation(&pw(3, &[])).is_identity());
        let d4 = make_delta(4).unwrap();
        assert_eq!(word_to_permutation(d4.word()).images(), vec![4, 3, 2, 1]);
        // Signs do not matter.
        let s = BraidWord::from_signed(3, &[-1, 2]).unwrap();
        assert_eq!(word_to_permutation(&s), word_to_permutation(&pw(3, &[1, 2])));
    }

    #[test]
    fn delta_words() {
        assert_eq!(make_delta(2).unwrap().word(), &pw(2, &[1]));
        assert_eq!(make_delta(3).unwrap().word(), &pw(3, &[1, 2, 1]));
        let d4 = make_delta(4).unwrap();
        assert_eq!(d4.word(), &pw(4, &[1, 2, 3, 1, 2, 1]));
        assert_eq!(d4.word().len(), 6);
        for n in 2..8 {
            let d = make_delta(n).unwrap();
            assert_eq!(d.word().len(), n * (n - 1) / 2);
            assert!(d.perm().is_reversal());
            assert_eq!(word_to_permutation(d.word()), *d.perm());
        }
        assert_eq!(make_delta(1).unwrap_err(), BraidError::TooFewStrands(1));
    }

    #[test]
    fn permutation_braid_predicate() {
        assert!(!is_permutation_braid(&pw(3, &[1, 1])).unwrap());
        assert!(is_permutation_braid(&pw(4, &[1, 3])).unwrap());
        for n in 2..7 {
            assert!(is_permutation_braid(make_delta(n).unwrap().word()).unwrap());
        }
        // σ1σ2σ1σ2: strands 1 and 3 meet twice? no, but the word is too long.
        assert!(!is_permutation_braid(&pw(3, &[1, 2, 1, 2])).unwrap());
        let neg = BraidWord::from_signed(3, &[-1]).unwrap();
        assert_eq!(is_permutation_braid(&neg), Err(BraidError::NotPositive));
    }

    #[test]
    fn bijection() {
        assert!(permutation_to_braid(&Permutation::identity(4)).word().is_empty());
        let swap = Permutation::from_images(&[2, 1, 3]).unwrap();
        assert_eq!(permutation_to_braid(&swap).word(), &pw(3, &[1]));
        for n in 2..=5 {
            for p in all_permutations(n) {
                let b = permutation_to_braid(&p);
                assert_eq!(word_to_permutation(b.word()), p);
                assert_eq!(b.word().len(), p.inversions());
                assert!(is_permutation_braid(b.word()).unwrap());
            }
        }
        assert_eq!(all_permutations(4).len(), 24);
    }

    #[test]
    fn divisor_sets() {
        let s1 = PermutationBraid::from_word(pw(3, &[1])).unwrap();
        assert_eq!(s1.starting_set(), set(&[1]));
        let d4 = make_delta(4).unwrap();
        assert_eq!(d4.starting_set(), set(&[1, 2, 3]));
        assert_eq!(d4.finishing_set(), set(&[1, 2, 3]));
        let s13 = PermutationBraid::from_word(pw(4, &[1, 3])).unwrap();
        assert_eq!(s13.starting_set(), set(&[1, 3]));
        let s12 = PermutationBraid::from_word(pw(3, &[1, 2])).unwrap();
        assert_eq!(s12.starting_set(), set(&[1]));
        assert_eq!(s12.finishing_set(), set(&[2]));
        let s3 = PermutationBraid::from_word(pw(4, &[3])).unwrap();
        assert_eq!(s3.finishing_set(), set(&[3]));
    }

    #[test]
    fn finishing_is_starting_of_reverse() {
        for p in all_permutations(5) {
            let b = permutation_to_braid(&p);
            let r = b.reverse();
            assert!(is_permutation_braid(r.word()).unwrap());
            assert_eq!(word_to_permutation(r.word()), *r.perm());
            assert_eq!(b.finishing_set(), r.starting_set());
        }
    }

    #[test]
    fn generator_updates_match_words() {
        let p = word_to_permutation(&pw(4, &[1, 2, 3]));
        let mut q = p.clone();
        q.push_generator(2);
        assert_eq!(q, word_to_permutation(&pw(4, &[1, 2, 3, 2])));
        let mut r = word_to_permutation(&pw(4, &[2, 1, 3]));
        r.pop_front_generator(2);
        assert_eq!(r, word_to_permutation(&pw(4, &[1, 3])));
        let f = word_to_permutation(&pw(5, &[1, 2, 4]));
        assert_eq!(f.flip(), word_to_permutation(&pw(5, &[1, 2, 4]).flip()));
    }

    #[test]
    fn homomorphism() {
        let u = pw(4, &[1, 2, 3, 3]);
        let v = pw(4, &[2, 1]);
        let uv = u.concat(&v).unwrap();
        assert_eq!(
            word_to_permutation(&uv),
            word_to_permutation(&u).then(&word_to_permutation(&v))
        );
    }

    #[test]
    fn permutation_serialization() {
        let p = Permutation::from_images(&[2, 1, 3]).unwrap();
        assert_eq!(p.to_string(), "[2,1,3]");
        assert_eq!(serde_json::to_string(&p).unwrap(), "[2,1,3]");
        assert_eq!(serde_json::from_str::<Permutation>("[2,1,3]").unwrap(), p);
        assert!(Permutation::from_images(&[1, 1]).is_err());
    }
}
