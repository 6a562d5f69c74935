//! Executable verification sweeps.
//!
//! Each sweep checks one claim on every instance in a finite range (or on a
//! seeded random sample) and reports the instances that violate it. These
//! back the `verify` CLI subcommand and the acceptance test suite.

use std::collections::{HashMap, HashSet};
use std::fmt;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::garside::{
    braid_equal, delta_power_word, left_divisible_by, nf_left_divisible_by, normal_form,
};
use crate::jacquemard::extract;
use crate::oracle::{applicable_steps, positive_words, positive_words_up_to, Oracle, OracleBounds};
use crate::palindrome::{
    count_leading_deltas_doubles, decompose, first_factor_not_delta_preserved, is_palindromic_braid,
    square, verify_locality,
};
use crate::par::{self, Exec};
use crate::permutations::{all_permutations, is_permutation_braid, make_delta, permutation_to_braid};
use crate::words::{BraidWord, Letter, Sign};

/// Outcome of one sweep. `violations` is sorted, so reports are
/// deterministic regardless of execution mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub name: String,
    pub checked: usize,
    pub violations: Vec<String>,
}

impl Report {
    fn new(name: impl Into<String>, checked: usize, mut violations: Vec<String>) -> Self {
        violations.sort();
        Report {
            name: name.into(),
            checked,
            violations,
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Combines several reports under one name.
    pub fn merge(name: impl Into<String>, parts: Vec<Report>) -> Self {
        let checked = parts.iter().map(|r| r.checked).sum();
        let violations = parts
            .into_iter()
            .flat_map(|r| {
                let prefix = r.name;
                r.violations.into_iter().map(move |v| format!("{prefix}: {v}"))
            })
            .collect();
        Report::new(name, checked, violations)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: checked {}, violations {}",
            self.name,
            self.checked,
            self.violations.len()
        )?;
        for v in self.violations.iter().take(20) {
            write!(f, "\n  {v}")?;
        }
        Ok(())
    }
}

fn show(w: &BraidWord) -> String {
    format!("[{w}]")
}

/// Injectivity of `v ↦ v·rev(v)` on every pair of the given words.
pub fn injectivity(name: &str, words: &[BraidWord], exec: Exec) -> Report {
    let keys: Vec<(String, String)> = par::map(exec, words, |v| {
        (normal_form(v).key(), normal_form(&square(v)).key())
    });
    let rows: Vec<usize> = (0..words.len()).collect();
    let violations = par::flat_map(exec, &rows, |&a| {
        (a..words.len())
            .filter(|&b| (keys[a].1 == keys[b].1) != (keys[a].0 == keys[b].0))
            .map(|b| format!("v={} w={}", show(&words[a]), show(&words[b])))
            .collect()
    });
    let n = words.len();
    Report::new(name, n * (n + 1) / 2, violations)
}

/// Injectivity on explicit pairs.
pub fn injectivity_pairs(name: &str, pairs: &[(BraidWord, BraidWord)], exec: Exec) -> Report {
    let violations = par::flat_map(exec, pairs, |(v, w)| {
        let sq = braid_equal(&square(v), &square(w)).unwrap();
        let roots = braid_equal(v, w).unwrap();
        if sq == roots {
            vec![]
        } else {
            vec![format!("v={} w={}", show(v), show(w))]
        }
    });
    Report::new(name, pairs.len(), violations)
}

/// `decompose(v·rev(v))` succeeds with a root equal to `v`.
pub fn round_trip(name: &str, words: &[BraidWord], exec: Exec) -> Report {
    let violations = par::flat_map(exec, words, |v| match decompose(&square(v)) {
        Ok(Some(d)) if braid_equal(&d.root, v).unwrap() => vec![],
        Ok(Some(d)) => vec![format!("v={} root={}", show(v), show(&d.root))],
        Ok(None) => vec![format!("v={} not decomposed", show(v))],
        Err(e) => vec![format!("v={} error {e}", show(v))],
    });
    Report::new(name, words.len(), violations)
}

/// Every even-length positive palindromic word of length `≤ max_len` is
/// decomposed iff it is a square of some positive word of half its length.
pub fn decompose_completeness(n: usize, max_len: usize, exec: Exec) -> Report {
    let squares: HashSet<String> = positive_words_up_to(n, max_len / 2)
        .iter()
        .map(|v| normal_form(&square(v)).key())
        .collect();
    let candidates: Vec<BraidWord> = (0..=max_len)
        .step_by(2)
        .flat_map(|l| positive_words(n, l))
        .collect();
    let violations = par::flat_map(exec, &candidates, |b| {
        let is_square = squares.contains(&normal_form(b).key());
        let found = decompose(b).unwrap();
        match (&found, is_square) {
            (Some(d), true) if braid_equal(&square(&d.root), b).unwrap() => vec![],
            (None, false) => vec![],
            _ => vec![format!(
                "b={} square={is_square} decomposed={}",
                show(b),
                found.is_some()
            )],
        }
    });
    Report::new(
        format!("decompose completeness B{n} len<={max_len}"),
        candidates.len(),
        violations,
    )
}

/// Generators `σ_i` that left-divide `v·rev(v)`.
pub fn square_first_letters(v: &BraidWord) -> Vec<usize> {
    let nf = normal_form(&square(v));
    (1..v.strands()).filter(|&i| nf_left_divisible_by(&nf, i)).collect()
}

/// Relation locality for every positive `v` with `1 ≤ |v| ≤ max_len` and
/// every `σ_i` that can be extracted from `v·rev(v)`.
pub fn locality(n: usize, max_len: usize, exec: Exec) -> Report {
    let words: Vec<BraidWord> = (1..=max_len).flat_map(|l| positive_words(n, l)).collect();
    let results: Vec<(usize, Vec<String>)> = par::map(exec, &words, |v| {
        let letters = square_first_letters(v);
        let bad = letters
            .iter()
            .filter_map(|&i| match verify_locality(v, i) {
                Ok(true) => None,
                Ok(false) => Some(format!("v={} i={i} left the first half", show(v))),
                Err(e) => Some(format!("v={} i={i} error {e}", show(v))),
            })
            .collect();
        (letters.len(), bad)
    });
    let checked = results.iter().map(|r| r.0).sum();
    let violations = results.into_iter().flat_map(|r| r.1).collect();
    Report::new(format!("locality B{n} 1<=len<={max_len}"), checked, violations)
}

/// `n(v·rev(v)) = 2n(v)` for every positive `v`, and the leading factor of
/// `v·rev(v)` is not `Δ` whenever that of `v` is not.
pub fn corollaries(n: usize, max_len: usize, exec: Exec) -> Report {
    let words = positive_words_up_to(n, max_len);
    let doubles = par::flat_map(exec, &words, |v| {
        let (a, b) = count_leading_deltas_doubles(v).unwrap();
        if b == 2 * a {
            vec![]
        } else {
            vec![format!("v={} n(v)={a} n(vv̄)={b}", show(v))]
        }
    });
    let inf_zero: Vec<&BraidWord> = words
        .iter()
        .filter(|v| !v.is_empty() && normal_form(v).inf() == 0)
        .collect();
    let first = par::flat_map(exec, &inf_zero, |v| match first_factor_not_delta_preserved(v) {
        Ok(true) => vec![],
        Ok(false) => vec![format!("v={} square starts with Δ", show(v))],
        Err(e) => vec![format!("v={} error {e}", show(v))],
    });
    Report::merge(
        format!("corollaries B{n} len<={max_len}"),
        vec![
            Report::new("leading deltas double", words.len(), doubles),
            Report::new("leading factor not Δ", inf_zero.len(), first),
        ],
    )
}

/// `inf(v·rev(v)) = 2·inf(v)` on arbitrary (signed) words.
pub fn signed_inf_doubles(name: &str, words: &[BraidWord], exec: Exec) -> Report {
    let violations = par::flat_map(exec, words, |v| {
        let (a, b) = (normal_form(v).inf(), normal_form(&square(v)).inf());
        if b == 2 * a {
            vec![]
        } else {
            vec![format!("v={} inf(v)={a} inf(vv̄)={b}", show(v))]
        }
    });
    Report::new(name, words.len(), violations)
}

/// Garside normal-form equality against oracle class membership on every
/// pair of equal-length positive words, Jacquemard success against oracle
/// left divisors, and starting/finishing sets of every permutation braid.
pub fn oracle_agreement(n: usize, max_len: usize, exec: Exec) -> Report {
    let oracle = Oracle::new(OracleBounds {
        max_len: max_len.max(n * (n - 1) / 2),
        max_strands: n,
    });
    let mut parts = Vec::new();

    let mut eq_checked = 0;
    let mut eq_bad = Vec::new();
    for l in 0..=max_len {
        let words = positive_words(n, l);
        let class_id: HashMap<&BraidWord, usize> = {
            let classes = par::map(exec, &words, |w| {
                oracle.enumerate_class(w).unwrap().members.into_iter().next().unwrap()
            });
            let mut ids = HashMap::new();
            let mut seen = HashMap::new();
            for (w, rep) in words.iter().zip(classes) {
                let next = seen.len();
                ids.insert(w, *seen.entry(rep).or_insert(next));
            }
            ids
        };
        let keys = par::map(exec, &words, |w| normal_form(w).key());
        let rows: Vec<usize> = (0..words.len()).collect();
        eq_bad.extend(par::flat_map(exec, &rows, |&a| {
            (a..words.len())
                .filter(|&b| (keys[a] == keys[b]) != (class_id[&words[a]] == class_id[&words[b]]))
                .map(|b| format!("u={} v={}", show(&words[a]), show(&words[b])))
                .collect()
        }));
        eq_checked += words.len() * (words.len() + 1) / 2;
    }
    parts.push(Report::new("braid_equal vs oracle", eq_checked, eq_bad));

    let words = positive_words_up_to(n, max_len);
    let extract_bad = par::flat_map(exec, &words, |w| {
        let divisors = oracle.left_divisor_letters(w).unwrap();
        (1..n)
            .filter_map(|i| {
                let r = extract(w, i).unwrap();
                let expected = divisors.contains(&i);
                let sound = match r.word() {
                    Some(out) => {
                        out.letters()[0].index() == i
                            && out.len() == w.len()
                            && w.apply_trace(&r.trace).ok().as_ref() == Some(out)
                            && oracle.oracle_equal(out, w).unwrap()
                    }
                    None => true,
                };
                let agrees = r.is_success() == expected
                    && left_divisible_by(w, i).unwrap() == expected
                    && sound;
                (!agrees).then(|| format!("w={} i={i} extract={}", show(w), r.is_success()))
            })
            .collect()
    });
    parts.push(Report::new("extract vs oracle", words.len() * (n - 1), extract_bad));

    let perms = all_permutations(n);
    let sets_bad = par::flat_map(exec, &perms, |p| {
        let b = permutation_to_braid(p);
        let start = oracle.left_divisor_letters(b.word()).unwrap();
        let finish = oracle.left_divisor_letters(&b.word().reverse()).unwrap();
        if b.starting_set() == start && b.finishing_set() == finish {
            vec![]
        } else {
            vec![format!("perm={p}")]
        }
    });
    parts.push(Report::new("divisor sets vs oracle", perms.len(), sets_bad));

    Report::merge(format!("oracle agreement B{n} len<={max_len}"), parts)
}

/// `rev(Δ_n) = Δ_n` and `rev` preserves `S_n⁺`.
pub fn reversal_lemma(max_strands: usize, perm_strands: usize) -> Report {
    let mut bad = Vec::new();
    for n in 2..=max_strands {
        let d = make_delta(n).unwrap();
        if !braid_equal(&d.word().reverse(), d.word()).unwrap() {
            bad.push(format!("rev(Δ_{n}) != Δ_{n}"));
        }
    }
    let perms = all_permutations(perm_strands);
    for p in &perms {
        let b = permutation_to_braid(p);
        if !is_permutation_braid(&b.word().reverse()).unwrap() {
            bad.push(format!("rev of {p} is not a permutation braid"));
        }
    }
    Report::new(
        "reversal lemma",
        max_strands.saturating_sub(1) + perms.len(),
        bad,
    )
}

/// `rev(v^{-1}) ≡ rev(v)^{-1}` letter by letter.
pub fn reverse_inverse_commute(name: &str, words: &[BraidWord]) -> Report {
    let bad = words
        .iter()
        .filter(|v| v.invert().reverse() != v.reverse().invert())
        .map(show)
        .collect();
    Report::new(name, words.len(), bad)
}

/// `Δ²·w = w·Δ²`.
pub fn delta_square_central(name: &str, words: &[BraidWord], exec: Exec) -> Report {
    let bad = par::flat_map(exec, words, |w| {
        let d2 = delta_power_word(w.strands(), 2);
        let left = d2.concat(w).unwrap();
        let right = w.concat(&d2).unwrap();
        if braid_equal(&left, &right).unwrap() {
            vec![]
        } else {
            vec![show(w)]
        }
    });
    Report::new(name, words.len(), bad)
}

/// For each word, `steps` random relations are applied and the normal form
/// compared to the original one.
pub fn rewrite_stability(name: &str, words: &[BraidWord], steps: usize, seed: u64, exec: Exec) -> Report {
    let mut rng = StdRng::seed_from_u64(seed);
    let pairs: Vec<(BraidWord, BraidWord)> = words
        .iter()
        .map(|w| (w.clone(), random_relation_walk(w, steps, &mut rng)))
        .collect();
    let bad = par::flat_map(exec, &pairs, |(w, moved)| {
        if normal_form(w) == normal_form(moved) {
            vec![]
        } else {
            vec![format!("w={} moved={}", show(w), show(moved))]
        }
    });
    Report::new(name, words.len(), bad)
}

/// Squares are palindromic braids.
pub fn squares_palindromic(name: &str, words: &[BraidWord], exec: Exec) -> Report {
    let bad = par::flat_map(exec, words, |v| {
        if is_palindromic_braid(&square(v)) {
            vec![]
        } else {
            vec![show(v)]
        }
    });
    Report::new(name, words.len(), bad)
}

pub fn random_signed_word<R: Rng>(n: usize, max_len: usize, rng: &mut R) -> BraidWord {
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len)
        .map(|_| {
            let sign = if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg };
            Letter::new(rng.gen_range(1..n), sign)
        })
        .collect();
    BraidWord::new(n, letters).unwrap()
}

pub fn random_positive_word<R: Rng>(n: usize, max_len: usize, rng: &mut R) -> BraidWord {
    let len = rng.gen_range(0..=max_len);
    let idx: Vec<usize> = (0..len).map(|_| rng.gen_range(1..n)).collect();
    BraidWord::positive(n, &idx).unwrap()
}

/// `steps` random applicable positive relations; stops early if none apply.
pub fn random_relation_walk<R: Rng>(w: &BraidWord, steps: usize, rng: &mut R) -> BraidWord {
    let mut cur = w.clone();
    for _ in 0..steps {
        let options = applicable_steps(&cur);
        if options.is_empty() {
            break;
        }
        let step = options[rng.gen_range(0..options.len())];
        cur = cur.apply_relation(step).unwrap();
    }
    cur
}

/// A random word group-equal to `w` of at most `max_len` letters, built from
/// signed commutations, same-sign braid relations, conjugate relations
/// `σ_i σ_j σ_i^{-1} = σ_j^{-1} σ_i σ_j` and inserted cancelling pairs.
pub fn random_equal_word<R: Rng>(w: &BraidWord, steps: usize, max_len: usize, rng: &mut R) -> BraidWord {
    let n = w.strands();
    let mut letters = w.letters().to_vec();
    for _ in 0..steps {
        let len = letters.len();
        match rng.gen_range(0..4) {
            0 if len >= 2 => {
                let p = rng.gen_range(0..len - 1);
                if letters[p].index().abs_diff(letters[p + 1].index()) >= 2 {
                    letters.swap(p, p + 1);
                }
            }
            1 if len >= 3 => {
                let p = rng.gen_range(0..len - 2);
                let (a, b, c) = (letters[p], letters[p + 1], letters[p + 2]);
                if a == c && a.sign() == b.sign() && a.index().abs_diff(b.index()) == 1 {
                    letters[p] = b;
                    letters[p + 1] = a;
                    letters[p + 2] = b;
                }
            }
            2 if len >= 3 => {
                let p = rng.gen_range(0..len - 2);
                let (a, b, c) = (letters[p], letters[p + 1], letters[p + 2]);
                // σ_i^ε σ_j^ε σ_i^{-ε} = σ_j^{-ε} σ_i^ε σ_j^ε and back.
                if c == a.inverse() && a.sign() == b.sign() && a.index().abs_diff(b.index()) == 1 {
                    letters[p] = b.inverse();
                    letters[p + 1] = a;
                    letters[p + 2] = b;
                } else if a == c.inverse()
                    && b.sign() == c.sign()
                    && a.index().abs_diff(b.index()) == 1
                {
                    letters[p] = b;
                    letters[p + 1] = c;
                    letters[p + 2] = b.inverse();
                }
            }
            3 if len + 2 <= max_len => {
                let p = rng.gen_range(0..=len);
                let sign = if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg };
                let l = Letter::new(rng.gen_range(1..n), sign);
                letters.splice(p..p, [l, l.inverse()]);
            }
            _ => {}
        }
    }
    BraidWord::new(n, letters).unwrap()
}

/// Random signed pairs on `B_3`/`B_4`: half independent, half group-equal
/// by construction.
pub fn signed_pairs(count: usize, max_len: usize, seed: u64) -> Vec<(BraidWord, BraidWord)> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let n = if k % 2 == 0 { 3 } else { 4 };
            let v = random_signed_word(n, max_len, &mut rng);
            let w = if rng.gen_bool(0.5) {
                random_signed_word(n, max_len, &mut rng)
            } else {
                random_equal_word(&v, 30, max_len, &mut rng)
            };
            (v, w)
        })
        .collect()
}

pub fn signed_words(count: usize, strands: &[usize], max_len: usize, seed: u64) -> Vec<BraidWord> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|k| random_signed_word(strands[k % strands.len()], max_len, &mut rng))
        .collect()
}

pub fn positive_sample(count: usize, n: usize, max_len: usize, seed: u64) -> Vec<BraidWord> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count).map(|_| random_positive_word(n, max_len, &mut rng)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Uniqueness,
    Locality,
    Corollaries,
}

/// The CLI suites: exhaustive over positive words on `n` strands up to
/// `max_len` letters.
pub fn run_suite(suite: Suite, n: usize, max_len: usize, exec: Exec) -> Report {
    match suite {
        Suite::Uniqueness => {
            let words = positive_words_up_to(n, max_len);
            Report::merge(
                format!("uniqueness B{n} len<={max_len}"),
                vec![
                    injectivity("injectivity", &words, exec),
                    round_trip("round trip", &words, exec),
                ],
            )
        }
        Suite::Locality => locality(n, max_len, exec),
        Suite::Corollaries => corollaries(n, max_len, exec),
    }
}
