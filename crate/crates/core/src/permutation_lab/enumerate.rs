//! Exhaustive and constructive enumerators.
//!
//! The exhaustive enumerators walk every arrangement of the colored symbols
//! and filter by a predicate; they are the oracles the counting formulas are
//! checked against. `generate_constructive` builds the same family from
//! cycles and blue placement words instead.

use std::fmt;

use num_bigint::BigInt;

use super::colored::{is_poly_cauchy, ColoredPermutation, Entry};
use super::cycles::{canonical_cycles, next_permutation, Cycles};
use super::{LabError, SizeGuard, PARTIAL_LIMIT};
use crate::exact_math::{Monomial, MultiPoly, Symbol};

/// Visits every arrangement of `reds` and `blues` in lexicographic order
/// (`Red < Blue`).
pub fn arrangements(n: usize, k: usize, reds: &[u32], blues: &[u32], mut f: impl FnMut(&ColoredPermutation)) {
    let mut entries: Vec<Entry> =
        reds.iter().map(|&r| Entry::Red(r)).chain(blues.iter().map(|&b| Entry::Blue(b))).collect();
    entries.sort_unstable();
    loop {
        f(&ColoredPermutation::new_unchecked(n, k, entries.clone()));
        if !next_permutation(&mut entries) {
            break;
        }
    }
}

fn full_range(n: usize) -> Vec<u32> {
    (1..=n as u32).collect()
}

/// Every permutation of the `n + k` colored symbols accepted by `predicate`,
/// in lexicographic order. Refuses `n + k > 9`.
pub fn enumerate_brute(
    n: usize,
    k: usize,
    predicate: impl Fn(&ColoredPermutation) -> bool,
) -> Result<Vec<ColoredPermutation>, LabError> {
    enumerate_brute_with(SizeGuard::default(), n, k, predicate)
}

pub fn enumerate_brute_with(
    guard: SizeGuard,
    n: usize,
    k: usize,
    predicate: impl Fn(&ColoredPermutation) -> bool,
) -> Result<Vec<ColoredPermutation>, LabError> {
    guard.check("brute-force enumeration (n + k)", n + k)?;
    let mut out = Vec::new();
    arrangements(n, k, &full_range(n), &full_range(k), |p| {
        if predicate(p) {
            out.push(p.clone());
        }
    });
    Ok(out)
}

/// Number of permutations accepted by `predicate`, without materializing them.
pub fn count_brute(
    guard: SizeGuard,
    n: usize,
    k: usize,
    predicate: impl Fn(&ColoredPermutation) -> bool,
) -> Result<usize, LabError> {
    guard.check("brute-force enumeration (n + k)", n + k)?;
    let mut count = 0;
    arrangements(n, k, &full_range(n), &full_range(k), |p| {
        if predicate(p) {
            count += 1;
        }
    });
    Ok(count)
}

/// Calls `f` on every word of length `len` over `0..base`, in lexicographic
/// order.
pub(crate) fn for_each_word(len: usize, base: usize, mut f: impl FnMut(&[usize])) {
    if base == 0 && len > 0 {
        return;
    }
    let mut word = vec![0usize; len];
    loop {
        f(&word);
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            word[i] += 1;
            if word[i] < base {
                break;
            }
            word[i] = 0;
        }
    }
}

/// Builds the `(n, k)` poly-Cauchy permutations from a permutation of `[n]`
/// in canonical cycle notation and a word assigning each blue element to one
/// of the `m + 1` gaps around the `m` cycles.
pub fn generate_constructive(n: usize, k: usize) -> Result<Vec<ColoredPermutation>, LabError> {
    generate_constructive_with(SizeGuard::default(), n, k)
}

pub fn generate_constructive_with(guard: SizeGuard, n: usize, k: usize) -> Result<Vec<ColoredPermutation>, LabError> {
    guard.check("constructive enumeration (n + k)", n + k)?;
    let mut out = Vec::new();
    let mut perm = full_range(n);
    loop {
        let cycles = canonical_cycles(&perm);
        for_each_word(k, cycles.len() + 1, |w| {
            out.push(ColoredPermutation::assemble(n, k, &cycles, w));
        });
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(out)
}

/// A pair `(π, σ)`: `π` is a poly-Cauchy arrangement of a subset of the reds
/// together with all blues, and `σ` permutes the remaining reds.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartialPC {
    pub pi: ColoredPermutation,
    pub sigma: Cycles,
}

impl PartialPC {
    /// Number of cycles of `σ`.
    pub fn weight(&self) -> usize {
        self.sigma.len()
    }
}

impl fmt::Display for PartialPC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | ", self.pi)?;
        if self.sigma.is_empty() {
            return f.write_str("()");
        }
        for c in &self.sigma {
            let inner: Vec<String> = c.iter().map(|v| v.to_string()).collect();
            write!(f, "({})", inner.join(" "))?;
        }
        Ok(())
    }
}

fn subset_of(labels: &[u32], mask: usize) -> (Vec<u32>, Vec<u32>) {
    let mut inside = Vec::new();
    let mut outside = Vec::new();
    for (i, &l) in labels.iter().enumerate() {
        if mask >> i & 1 == 1 {
            inside.push(l);
        } else {
            outside.push(l);
        }
    }
    (inside, outside)
}

/// Every partial poly-Cauchy permutation of size `(n, k)`, sorted. Refuses
/// `n + k > 7`.
pub fn enumerate_partial(n: usize, k: usize) -> Result<Vec<PartialPC>, LabError> {
    enumerate_partial_with(SizeGuard::new(PARTIAL_LIMIT), n, k)
}

pub fn enumerate_partial_with(guard: SizeGuard, n: usize, k: usize) -> Result<Vec<PartialPC>, LabError> {
    guard.check("partial enumeration (n + k)", n + k)?;
    let reds = full_range(n);
    let blues = full_range(k);
    let mut out = Vec::new();
    for mask in 0..(1usize << n) {
        let (kept, rest) = subset_of(&reds, mask);
        let mut pis = Vec::new();
        arrangements(n, k, &kept, &blues, |p| {
            if is_poly_cauchy(p) {
                pis.push(p.clone());
            }
        });
        let mut sigmas = Vec::new();
        let mut perm = rest.clone();
        loop {
            sigmas.push(canonical_cycles(&perm));
            if !next_permutation(&mut perm) {
                break;
            }
        }
        for pi in &pis {
            for sigma in &sigmas {
                out.push(PartialPC { pi: pi.clone(), sigma: sigma.clone() });
            }
        }
    }
    out.sort();
    Ok(out)
}

/// `sum_P (-z)^{w(P)}`.
pub fn partial_weight_sum(parts: &[PartialPC]) -> MultiPoly {
    let mut by_weight: Vec<i64> = Vec::new();
    for p in parts {
        let w = p.weight();
        if by_weight.len() <= w {
            by_weight.resize(w + 1, 0);
        }
        by_weight[w] += 1;
    }
    MultiPoly::from_terms(by_weight.into_iter().enumerate().map(|(w, count)| {
        let c = if w % 2 == 0 { BigInt::from(count) } else { -BigInt::from(count) };
        (c, Monomial::var(Symbol::Z, w as u32))
    }))
}

/// A poly-Cauchy permutation ending in a red entry (or with no reds at all)
/// followed by `α` ordered boxes of blue values.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AugmentedPC {
    pub body: ColoredPermutation,
    pub boxes: Vec<Vec<u32>>,
}

impl fmt::Display for AugmentedPC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.body)?;
        for b in &self.boxes {
            f.write_str(" |")?;
            for v in b {
                write!(f, " b{v}")?;
            }
        }
        Ok(())
    }
}

/// Every augmented poly-Cauchy permutation with `alpha` boxes, sorted.
pub fn enumerate_augmented(n: usize, k: usize, alpha: usize) -> Result<Vec<AugmentedPC>, LabError> {
    enumerate_augmented_with(SizeGuard::default(), n, k, alpha)
}

pub fn enumerate_augmented_with(
    guard: SizeGuard,
    n: usize,
    k: usize,
    alpha: usize,
) -> Result<Vec<AugmentedPC>, LabError> {
    guard.check("augmented enumeration (n + k)", n + k)?;
    if alpha == 0 {
        return Err(LabError::Invalid("augmented permutations need at least one box".into()));
    }
    let reds = full_range(n);
    let blues = full_range(k);
    let mut out = Vec::new();
    for mask in 0..(1usize << k) {
        let (in_body, in_boxes) = subset_of(&blues, mask);
        let mut bodies = Vec::new();
        if n == 0 {
            if in_body.is_empty() {
                bodies.push(ColoredPermutation::new_unchecked(0, k, Vec::new()));
            }
        } else {
            arrangements(n, k, &reds, &in_body, |p| {
                if p.entries().last().is_some_and(|e| e.is_red()) && is_poly_cauchy(p) {
                    bodies.push(p.clone());
                }
            });
        }
        if bodies.is_empty() {
            continue;
        }
        for_each_word(in_boxes.len(), alpha, |w| {
            let mut boxes = vec![Vec::new(); alpha];
            for (&b, &slot) in in_boxes.iter().zip(w) {
                boxes[slot].push(b);
            }
            for body in &bodies {
                out.push(AugmentedPC { body: body.clone(), boxes: boxes.clone() });
            }
        });
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cauchy_sequences::{hat_c, hat_c_poly_z, hat_c_shifted};
    use std::collections::BTreeSet;

    fn listing(ps: &[ColoredPermutation]) -> Vec<String> {
        ps.iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn brute_two_one() {
        let got = enumerate_brute(2, 1, is_poly_cauchy).unwrap();
        assert_eq!(listing(&got), vec!["1 2 b1", "1 b1 2", "2 1 b1", "b1 1 2", "b1 2 1"]);
    }

    #[test]
    fn brute_all_blue() {
        for k in 0..=5 {
            let got = enumerate_brute(0, k, is_poly_cauchy).unwrap();
            assert_eq!(got.len(), 1);
        }
    }

    #[test]
    fn brute_guard() {
        let err = enumerate_brute(5, 5, is_poly_cauchy).unwrap_err();
        assert!(matches!(err, LabError::SizeLimit { size: 10, limit: 9, .. }));
        assert!(count_brute(SizeGuard::new(3), 2, 2, is_poly_cauchy).is_err());
    }

    #[test]
    fn constructive_matches_brute_small() {
        let a: BTreeSet<_> = generate_constructive(2, 1).unwrap().into_iter().collect();
        let b: BTreeSet<_> = enumerate_brute(2, 1, is_poly_cauchy).unwrap().into_iter().collect();
        assert_eq!(a, b);
        for k in 0..=5 {
            assert_eq!(generate_constructive(1, k).unwrap().len(), 1 << k);
        }
        let three = generate_constructive(3, 0).unwrap();
        assert_eq!(listing(&three), vec!["1 2 3", "1 3 2", "2 1 3", "3 1 2", "3 2 1", "2 3 1"]);
    }

    #[test]
    fn constructive_is_duplicate_free_and_valid() {
        for n in 0..=3 {
            for k in 0..=3 {
                let all = generate_constructive(n, k).unwrap();
                let set: BTreeSet<_> = all.iter().cloned().collect();
                assert_eq!(set.len(), all.len());
                assert!(all.iter().all(is_poly_cauchy));
                assert_eq!(BigInt::from(all.len()), hat_c(n, k));
            }
        }
    }

    #[test]
    fn partial_small() {
        let parts = enumerate_partial(1, 0).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(partial_weight_sum(&parts), MultiPoly::one() - MultiPoly::var(Symbol::Z));
        for n in 0..=3 {
            for k in 0..=3 {
                let parts = enumerate_partial(n, k).unwrap();
                assert_eq!(partial_weight_sum(&parts), hat_c_poly_z(n, k));
            }
        }
        assert!(enumerate_partial(4, 4).is_err());
    }

    #[test]
    fn partial_weight_example() {
        let pi = ColoredPermutation::parse(9, 6, "b2 b4 6 1 b6 7 8 b1 b3 b5 9 3").unwrap();
        assert!(is_poly_cauchy(&pi));
        let p = PartialPC { pi, sigma: vec![vec![4, 2], vec![5]] };
        assert_eq!(p.weight(), 2);
        assert_eq!(p.to_string(), "b2 b4 6 1 b6 7 8 b1 b3 b5 9 3 | (4 2)(5)");
    }

    #[test]
    fn augmented_small() {
        assert_eq!(enumerate_augmented(1, 1, 2).unwrap().len(), 3);
        for k in 0..=4 {
            for alpha in 1..=3 {
                assert_eq!(enumerate_augmented(0, k, alpha).unwrap().len(), alpha.pow(k as u32));
            }
        }
        for n in 0..=3 {
            for k in 0..=2 {
                for alpha in 1..=3 {
                    let got = enumerate_augmented(n, k, alpha).unwrap();
                    assert_eq!(BigInt::from(got.len()), hat_c_shifted(n, k, alpha).unwrap());
                }
            }
        }
        let shown: Vec<String> = enumerate_augmented(1, 1, 2).unwrap().iter().map(|a| a.to_string()).collect();
        assert_eq!(shown, vec!["1 | | b1", "1 | b1 |", "b1 1 | |"]);
    }

    #[test]
    fn words() {
        let mut seen = Vec::new();
        for_each_word(2, 3, |w| seen.push(w.to_vec()));
        assert_eq!(seen.len(), 9);
        assert_eq!(seen[1], vec![0, 1]);
        let mut empty = 0;
        for_each_word(0, 0, |_| empty += 1);
        assert_eq!(empty, 1);
    }
}
