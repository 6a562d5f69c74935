//! Palindromic braids and the map `v ↦ v·rev(v)`.
//!
//! The map is injective on `B_n`, so a braid of the form `β = v·rev(v)`
//! determines `v` up to group equality. [`decompose_positive`] recovers `v`
//! for positive `β` by peeling a generator off both ends at a time;
//! [`decompose`] reduces the signed case to the positive one by shifting
//! with powers of `Δ`.

use std::collections::HashMap;

use serde::Serialize;

use crate::garside::{
    braid_equal, delta_power_word, multiply_delta_power, n_leading_deltas, nf_left_divisible_by,
    normal_form, LeftCanonicalForm,
};
use crate::jacquemard::extract;
use crate::words::{BraidWord, Letter};
use crate::{BraidError, Result};

/// `β = root·rev(root)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PalindromicDecomposition {
    pub root: BraidWord,
    pub root_normal_form: LeftCanonicalForm,
}

impl PalindromicDecomposition {
    fn new(root: BraidWord) -> Self {
        let root_normal_form = normal_form(&root);
        PalindromicDecomposition {
            root,
            root_normal_form,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecomposeOptions {
    /// Trust `inf(v·rev(v)) = 2·inf(v)` and try only `k = inf/2`. When off,
    /// every `k` with `2k` in `[inf - 2, inf + 2]` is tried.
    pub inf_shortcut: bool,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions { inf_shortcut: true }
    }
}

/// `v·rev(v)`.
pub fn square(v: &BraidWord) -> BraidWord {
    v.concat(&v.reverse()).expect("same strand count")
}

/// `β = rev(β)` in `B_n`.
pub fn is_palindromic_braid(w: &BraidWord) -> bool {
    normal_form(w) == normal_form(&w.reverse())
}

/// Removes one `σ_i` from the left and one from the right of a positive
/// word, if both are divisors.
fn strip_both_ends(b: &BraidWord, i: usize) -> Result<Option<BraidWord>> {
    let Some(left) = extract(b, i)?.word().cloned() else {
        return Ok(None);
    };
    let tail = BraidWord::from_parts(b.strands(), left.letters()[1..].to_vec());
    let Some(right) = extract(&tail.reverse(), i)?.word().cloned() else {
        return Ok(None);
    };
    let core = BraidWord::from_parts(b.strands(), right.letters()[1..].to_vec()).reverse();
    debug_assert_eq!(core.len() + 2, b.len());
    Ok(Some(core))
}

struct PositiveSearch {
    memo: HashMap<String, Option<BraidWord>>,
    all_branches: bool,
    roots: Vec<BraidWord>,
}

impl PositiveSearch {
    fn root_of(&mut self, b: &BraidWord) -> Result<Option<BraidWord>> {
        if b.is_empty() {
            return Ok(Some(b.clone()));
        }
        let nf = normal_form(b);
        let key = nf.key();
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }
        let mut found = None;
        for i in 1..b.strands() {
            if !nf_left_divisible_by(&nf, i) {
                continue;
            }
            let Some(core) = strip_both_ends(b, i)? else {
                continue;
            };
            if let Some(u) = self.root_of(&core)? {
                let mut letters = vec![Letter::pos(i)];
                letters.extend_from_slice(u.letters());
                found = Some(BraidWord::from_parts(b.strands(), letters));
                break;
            }
        }
        self.memo.insert(key, found.clone());
        Ok(found)
    }

    /// Top level: optionally keep going after the first success so that the
    /// roots of every branch can be compared.
    fn top(&mut self, b: &BraidWord) -> Result<Option<BraidWord>> {
        if !self.all_branches {
            return self.root_of(b);
        }
        let nf = normal_form(b);
        for i in 1..b.strands() {
            if !nf_left_divisible_by(&nf, i) {
                continue;
            }
            if let Some(core) = strip_both_ends(b, i)? {
                if let Some(u) = self.root_of(&core)? {
                    let mut letters = vec![Letter::pos(i)];
                    letters.extend_from_slice(u.letters());
                    self.roots.push(BraidWord::from_parts(b.strands(), letters));
                }
            }
        }
        Ok(self.roots.first().cloned())
    }
}

/// Finds positive `v` with `v·rev(v) = b` for positive `b`, or `None`.
pub fn decompose_positive(b: &BraidWord) -> Result<Option<PalindromicDecomposition>> {
    b.require_positive()?;
    if b.len() % 2 == 1 {
        return Ok(None);
    }
    let mut search = PositiveSearch {
        memo: HashMap::new(),
        all_branches: false,
        roots: Vec::new(),
    };
    Ok(search.top(b)?.map(PalindromicDecomposition::new))
}

/// Roots reached through every admissible first letter of `b`. By
/// injectivity they are all group-equal; exposed so that can be checked.
pub fn positive_roots_all_branches(b: &BraidWord) -> Result<Vec<BraidWord>> {
    b.require_positive()?;
    if b.is_empty() {
        return Ok(vec![b.clone()]);
    }
    if b.len() % 2 == 1 {
        return Ok(Vec::new());
    }
    let mut search = PositiveSearch {
        memo: HashMap::new(),
        all_branches: true,
        roots: Vec::new(),
    };
    search.top(b)?;
    Ok(search.roots)
}

pub fn decompose(b: &BraidWord) -> Result<Option<PalindromicDecomposition>> {
    decompose_with(b, DecomposeOptions::default())
}

/// Finds `v ∈ B_n` with `v·rev(v) = b`, or `None`.
pub fn decompose_with(b: &BraidWord, opts: DecomposeOptions) -> Result<Option<PalindromicDecomposition>> {
    let nf = normal_form(b);
    if nf != normal_form(&b.reverse()) {
        return Ok(None);
    }
    let inf = nf.inf();
    let shifts: Vec<i64> = if opts.inf_shortcut {
        if inf.rem_euclid(2) == 1 {
            return Ok(None);
        }
        vec![inf / 2]
    } else {
        ((inf - 2).div_euclid(2)..=(inf + 2).div_euclid(2))
            .filter(|k| (inf - 2..=inf + 2).contains(&(2 * k)))
            .collect()
    };
    let n = b.strands();
    for k in shifts {
        // Δ^{-k}·b·Δ^{-k} = Δ^{-2k}·flip^k(b).
        let shifted = delta_power_word(n, -2 * k).concat(&b.flip_pow(k))?;
        let core_nf = normal_form(&shifted);
        if core_nf.inf() < 0 {
            continue;
        }
        if let Some(found) = decompose_positive(&core_nf.to_word())? {
            let root = multiply_delta_power(&found.root, k);
            return Ok(Some(PalindromicDecomposition::new(root)));
        }
    }
    Ok(None)
}

/// One instance of injectivity: `v·rev(v) = w·rev(w)` iff `v = w`.
/// `false` would be a counterexample.
pub fn verify_uniqueness(v: &BraidWord, w: &BraidWord) -> Result<bool> {
    v.check_same_strands(w)?;
    Ok(braid_equal(&square(v), &square(w))? == braid_equal(v, w)?)
}

/// Extracts `σ_i` from `v·rev(v)` and checks that every relation used lies
/// inside the first half of the word.
///
/// Requires `σ_i` to left-divide `v·rev(v)`.
pub fn verify_locality(v: &BraidWord, i: usize) -> Result<bool> {
    v.require_positive()?;
    v.check_generator(i)?;
    if v.is_empty() {
        return Err(BraidError::Precondition("root must be nonempty".into()));
    }
    let sq = square(v);
    if !nf_left_divisible_by(&normal_form(&sq), i) {
        return Err(BraidError::Precondition(format!(
            "σ_{i} does not left-divide the square of `{v}`"
        )));
    }
    let result = extract(&sq, i)?;
    if !result.is_success() {
        return Err(BraidError::Precondition(format!(
            "σ_{i} could not be extracted from the square of `{v}`"
        )));
    }
    let half = v.len();
    Ok(result.trace.steps().iter().all(|s| s.end() <= half))
}

/// `(n(v), n(v·rev(v)))`; the second is always twice the first.
pub fn count_leading_deltas_doubles(v: &BraidWord) -> Result<(i64, i64)> {
    Ok((n_leading_deltas(v)?, n_leading_deltas(&square(v))?))
}

/// For nonempty positive `v` whose normal form does not start with `Δ`,
/// whether the normal form of `v·rev(v)` does not either.
pub fn first_factor_not_delta_preserved(v: &BraidWord) -> Result<bool> {
    if v.is_empty() {
        return Err(BraidError::Precondition("word must be nonempty".into()));
    }
    if n_leading_deltas(v)? != 0 {
        return Err(BraidError::Precondition(format!(
            "normal form of `{v}` starts with Δ"
        )));
    }
    Ok(normal_form(&square(v)).inf() == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, g: &[i64]) -> BraidWord {
        BraidWord::from_signed(n, g).unwrap()
    }

    fn root(b: &BraidWord) -> Option<BraidWord> {
        decompose(b).unwrap().map(|d| d.root)
    }

    #[test]
    fn squares() {
        assert_eq!(square(&w(3, &[1])), w(3, &[1, 1]));
        assert_eq!(square(&w(3, &[])), w(3, &[]));
        assert_eq!(square(&w(4, &[1, 3, 3])), w(4, &[1, 3, 3, 3, 3, 1]));
        assert!(is_palindromic_braid(&square(&w(4, &[1, -2, 3, 3]))));
    }

    #[test]
    fn palindromic_braids() {
        assert!(is_palindromic_braid(&w(4, &[1, 3])));
        assert!(!is_palindromic_braid(&w(3, &[1, 2])));
        assert!(is_palindromic_braid(&w(3, &[1, 2, 1])));
    }

    #[test]
    fn positive_decompositions() {
        let r = decompose_positive(&w(4, &[1, 3, 3, 3, 3, 1])).unwrap().unwrap();
        assert!(braid_equal(&r.root, &w(4, &[1, 3, 3])).unwrap());
        assert_eq!(decompose_positive(&w(4, &[1, 3])).unwrap(), None);
        assert_eq!(decompose_positive(&w(3, &[])).unwrap().unwrap().root, w(3, &[]));
        assert_eq!(decompose_positive(&w(3, &[1, 1])).unwrap().unwrap().root, w(3, &[1]));
        assert_eq!(decompose_positive(&w(3, &[1, 2, 1])).unwrap(), None);
        assert_eq!(decompose_positive(&w(3, &[-1, -1])), Err(BraidError::NotPositive));
    }

    #[test]
    fn root_first_letter_need_not_head_the_input() {
        // σ1σ3σ3σ3σ3σ1 written starting with σ3.
        let b = w(4, &[3, 1, 3, 3, 1, 3]);
        let r = root(&b).unwrap();
        assert!(braid_equal(&r, &w(4, &[1, 3, 3])).unwrap());
        let all = positive_roots_all_branches(&b).unwrap();
        assert_eq!(all.len(), 2);
        assert!(braid_equal(&all[0], &all[1]).unwrap());
    }

    #[test]
    fn signed_decompositions() {
        let r = root(&square(&w(3, &[-1]))).unwrap();
        assert!(braid_equal(&r, &w(3, &[-1])).unwrap());
        let r = root(&w(3, &[1, 2, 1, 1, 2, 1])).unwrap();
        assert!(braid_equal(&r, &w(3, &[1, 2, 1])).unwrap());
        let v = w(4, &[2, -1, -3, 2, -2, 3]);
        let r = root(&square(&v)).unwrap();
        assert!(braid_equal(&r, &v).unwrap());
        let no_shortcut = DecomposeOptions { inf_shortcut: false };
        let r2 = decompose_with(&square(&v), no_shortcut).unwrap().unwrap().root;
        assert!(braid_equal(&r2, &v).unwrap());
    }

    #[test]
    fn non_decomposable() {
        assert_eq!(root(&w(4, &[1, 3])), None);
        assert_eq!(root(&w(3, &[1, 2])), None);
        // Palindromic, odd infimum.
        assert_eq!(root(&w(3, &[1, 2, 1])), None);
        assert_eq!(root(&w(3, &[-1, -2, -1])), None);
    }

    #[test]
    fn uniqueness_instances() {
        assert!(verify_uniqueness(&w(3, &[1]), &w(3, &[2])).unwrap());
        assert!(verify_uniqueness(&w(3, &[1, 2]), &w(3, &[1, 2, 1, -1])).unwrap());
        assert!(verify_uniqueness(&w(3, &[1]), &w(4, &[1])).is_err());
    }

    #[test]
    fn locality_instances() {
        assert!(verify_locality(&w(3, &[1, 2]), 1).unwrap());
        assert!(verify_locality(&w(3, &[2, 1, 2, 2]), 1).unwrap());
        // σ1 divides neither σ2σ1 nor its square σ2σ1σ1σ2.
        assert!(matches!(verify_locality(&w(3, &[2, 1]), 1), Err(BraidError::Precondition(_))));
        assert!(verify_locality(&w(3, &[]), 1).is_err());
    }

    #[test]
    fn square_and_root_share_left_divisors() {
        for n in [3, 4] {
            for v in crate::oracle::positive_words_up_to(n, 5) {
                let sq = square(&v);
                for i in 1..n {
                    assert_eq!(
                        crate::garside::left_divisible_by(&v, i).unwrap(),
                        crate::garside::left_divisible_by(&sq, i).unwrap(),
                        "{v} / {i}"
                    );
                }
            }
        }
    }

    #[test]
    fn corollaries() {
        assert_eq!(count_leading_deltas_doubles(&w(3, &[1])).unwrap(), (0, 0));
        assert_eq!(count_leading_deltas_doubles(&w(3, &[1, 2, 1])).unwrap(), (1, 2));
        assert_eq!(count_leading_deltas_doubles(&w(3, &[1, 2, 1, 1])).unwrap(), (1, 2));
        assert!(first_factor_not_delta_preserved(&w(4, &[1, 3, 3])).unwrap());
        assert!(matches!(
            first_factor_not_delta_preserved(&w(2, &[1])),
            Err(BraidError::Precondition(_))
        ));
        assert!(first_factor_not_delta_preserved(&w(3, &[])).is_err());
    }
}
