//! Poly-Cauchy permutations with an extra block structure on the red
//! elements, and the sign-reversing involutions on them.
//!
//! A configuration partitions the reds into blocks (each written in
//! decreasing order, represented by its maximum), arranges the block
//! representatives into a permutation in canonical cycle notation, and
//! places each blue element in one of the gaps around those cycles. Its sign
//! is `(-1)^(number of blocks)`.

use std::collections::HashMap;

use num_bigint::BigInt;

use super::colored::ColoredPermutation;
use super::cycles::{canonical_cycles, next_permutation, Cycles};
use super::enumerate::for_each_word;
use super::{LabError, SizeGuard};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StructuredConfig {
    n: usize,
    k: usize,
    /// Sorted by representative; each block decreasing.
    blocks: Vec<Vec<u32>>,
    /// Canonical cycles over block representatives.
    cycles: Cycles,
    /// Entry `j - 1` is the number of cycles left of blue `j`.
    blue_word: Vec<usize>,
}

impl StructuredConfig {
    pub fn new(
        n: usize,
        k: usize,
        mut blocks: Vec<Vec<u32>>,
        cycles: Cycles,
        blue_word: Vec<usize>,
    ) -> Result<Self, LabError> {
        for b in blocks.iter_mut() {
            if b.is_empty() {
                return Err(LabError::Invalid("empty block".into()));
            }
            b.sort_unstable_by(|x, y| y.cmp(x));
        }
        blocks.sort_by_key(|b| b[0]);
        let mut all: Vec<u32> = blocks.iter().flatten().copied().collect();
        all.sort_unstable();
        if all != (1..=n as u32).collect::<Vec<_>>() {
            return Err(LabError::Invalid("blocks must partition [n]".into()));
        }
        let mut reps: Vec<u32> = cycles.iter().flatten().copied().collect();
        reps.sort_unstable();
        if reps != blocks.iter().map(|b| b[0]).collect::<Vec<_>>() {
            return Err(LabError::Invalid("cycles must permute the block representatives".into()));
        }
        if canonical_cycles(&super::cycles::one_line_from_cycles(&cycles)) != cycles {
            return Err(LabError::Invalid("cycles must be in canonical notation".into()));
        }
        if blue_word.len() != k || blue_word.iter().any(|&g| g > cycles.len()) {
            return Err(LabError::Invalid("blue word out of range".into()));
        }
        Ok(StructuredConfig { n, k, blocks, cycles, blue_word })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn cycles(&self) -> &Cycles {
        &self.cycles
    }

    pub fn blue_word(&self) -> &[usize] {
        &self.blue_word
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// `+1` or `-1` by parity of the number of blocks.
    pub fn sign(&self) -> i32 {
        if self.blocks.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    fn block(&self, rep: u32) -> &Vec<u32> {
        let idx = self.blocks.binary_search_by_key(&rep, |b| b[0]).expect("representative without block");
        &self.blocks[idx]
    }

    /// Red elements of each cycle, blocks expanded in cycle order.
    pub fn red_cycles(&self) -> Cycles {
        self.cycles.iter().map(|c| c.iter().flat_map(|&rep| self.block(rep).iter().copied()).collect()).collect()
    }

    /// The underlying poly-Cauchy permutation.
    pub fn flatten(&self) -> ColoredPermutation {
        ColoredPermutation::assemble(self.n, self.k, &self.red_cycles(), &self.blue_word)
    }

    /// True iff `1..=r` lie in distinct blocks.
    pub fn specials_distinct(&self, r: usize) -> bool {
        self.blocks.iter().all(|b| b.iter().filter(|&&x| (x as usize) <= r).count() <= 1)
    }
}

/// All set partitions of `[n]`, blocks decreasing and sorted by maximum.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<u32>>> {
    fn go(i: usize, n: usize, blocks: &mut Vec<Vec<u32>>, out: &mut Vec<Vec<Vec<u32>>>) {
        if i > n {
            let mut p: Vec<Vec<u32>> = blocks
                .iter()
                .map(|b| {
                    let mut b = b.clone();
                    b.reverse();
                    b
                })
                .collect();
            p.sort_by_key(|b| b[0]);
            out.push(p);
            return;
        }
        for j in 0..blocks.len() {
            blocks[j].push(i as u32);
            go(i + 1, n, blocks, out);
            blocks[j].pop();
        }
        blocks.push(vec![i as u32]);
        go(i + 1, n, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    go(1, n, &mut Vec::new(), &mut out);
    out
}

/// Every configuration of size `(n, k)` whose blocks keep `1..=r` apart.
/// `r = 0` gives all configurations.
pub fn enumerate_configs(n: usize, k: usize, r: usize) -> Result<Vec<StructuredConfig>, LabError> {
    enumerate_configs_with(SizeGuard::default(), n, k, r)
}

pub fn enumerate_configs_with(
    guard: SizeGuard,
    n: usize,
    k: usize,
    r: usize,
) -> Result<Vec<StructuredConfig>, LabError> {
    guard.check("structured configurations (n + k)", n + k)?;
    if r > n {
        return Err(LabError::Invalid(format!("special count r = {r} exceeds n = {n}")));
    }
    let mut out = Vec::new();
    for blocks in set_partitions(n) {
        let base = StructuredConfig { n, k, blocks, cycles: Vec::new(), blue_word: Vec::new() };
        if !base.specials_distinct(r) {
            continue;
        }
        let mut reps: Vec<u32> = base.blocks.iter().map(|b| b[0]).collect();
        loop {
            let cycles = canonical_cycles(&reps);
            for_each_word(k, cycles.len() + 1, |w| {
                out.push(StructuredConfig {
                    n,
                    k,
                    blocks: base.blocks.clone(),
                    cycles: cycles.clone(),
                    blue_word: w.to_vec(),
                });
            });
            if !next_permutation(&mut reps) {
                break;
            }
        }
    }
    Ok(out)
}

/// Outcome of applying an involution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Involution {
    Pair(StructuredConfig),
    Fixed,
}

/// The involution pivoting on the greatest red element that shares its
/// cycle with another element.
pub fn involution_phi(c: &StructuredConfig) -> Involution {
    involution_phi_r(c, 0)
}

/// Same as [`involution_phi`] but the pivot must be non-special
/// (greater than `r`). Expects `c.specials_distinct(r)`.
///
/// The pivot `a` is the largest element of its cycle, hence the
/// representative of the cycle's leading block. If `{a}` is a block on its
/// own it merges with the next block of the cycle; otherwise `a` splits off
/// into a singleton block placed just before the remainder. Cycle element
/// sets, cycle order, the blue word and the flattened permutation are all
/// unchanged.
pub fn involution_phi_r(c: &StructuredConfig, r: usize) -> Involution {
    let red_cycles = c.red_cycles();
    let pivot = red_cycles
        .iter()
        .enumerate()
        .filter(|(_, cyc)| cyc.len() >= 2)
        .flat_map(|(i, cyc)| cyc.iter().map(move |&x| (x, i)))
        .filter(|&(x, _)| x as usize > r)
        .max();
    let Some((a, ci)) = pivot else {
        return Involution::Fixed;
    };
    debug_assert_eq!(c.cycles[ci][0], a);

    let mut blocks = c.blocks.clone();
    let mut cycles = c.cycles.clone();
    let lead = blocks.binary_search_by_key(&a, |b| b[0]).unwrap();
    if blocks[lead].len() == 1 {
        let next_rep = cycles[ci][1];
        let next = blocks.binary_search_by_key(&next_rep, |b| b[0]).unwrap();
        let mut merged = blocks[next].clone();
        merged.insert(0, a);
        blocks[lead] = merged;
        blocks.remove(next);
        cycles[ci].remove(1);
    } else {
        let rest: Vec<u32> = blocks[lead][1..].to_vec();
        let rest_rep = rest[0];
        blocks[lead] = vec![a];
        blocks.push(rest);
        blocks.sort_by_key(|b| b[0]);
        cycles[ci].insert(1, rest_rep);
    }
    Involution::Pair(StructuredConfig { n: c.n, k: c.k, blocks, cycles, blue_word: c.blue_word.clone() })
}

/// Exhaustive audit of the involution on all configurations of one size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitStatistics {
    pub configurations: usize,
    pub two_orbits: usize,
    pub fixed_points: usize,
    /// `sum_c (-1)^{blocks(c)}`.
    pub signed_sum: BigInt,
    /// Sign of every fixed point, which is `(-1)^n`.
    pub fixed_sign: i32,
    /// Every non-fixed image is a distinct configuration of opposite sign
    /// with the same flattened permutation, and applying the map twice is
    /// the identity.
    pub sign_reversing_involution: bool,
    /// Every fixed point flattens to a permutation whose non-special reds
    /// are increasing singleton cycles.
    pub fixed_points_expected_shape: bool,
}

pub fn orbit_statistics(n: usize, k: usize, r: usize, guard: SizeGuard) -> Result<OrbitStatistics, LabError> {
    let configs = enumerate_configs_with(guard, n, k, r)?;
    let index: HashMap<&StructuredConfig, usize> = configs.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut fixed = 0usize;
    let mut paired = 0usize;
    let mut ok = true;
    let mut shape_ok = true;
    let mut signed_sum = BigInt::from(0);
    for c in &configs {
        signed_sum += c.sign();
        match involution_phi_r(c, r) {
            Involution::Fixed => {
                fixed += 1;
                let cycles = c.red_cycles();
                let non_special_fixed =
                    cycles.iter().filter(|cyc| cyc.iter().any(|&x| x as usize > r)).all(|cyc| cyc.len() == 1);
                shape_ok &= non_special_fixed && c.blocks.iter().all(|b| b.len() == 1);
            }
            Involution::Pair(image) => {
                paired += 1;
                let valid = index.contains_key(&image)
                    && image.sign() == -c.sign()
                    && image.flatten() == c.flatten()
                    && image.specials_distinct(r)
                    && involution_phi_r(&image, r) == Involution::Pair(c.clone());
                ok &= valid;
            }
        }
    }
    ok &= paired.is_multiple_of(2);
    let fixed_sign = if n.is_multiple_of(2) { 1 } else { -1 };
    Ok(OrbitStatistics {
        configurations: configs.len(),
        two_orbits: paired / 2,
        fixed_points: fixed,
        signed_sum,
        fixed_sign,
        sign_reversing_involution: ok,
        fixed_points_expected_shape: shape_ok,
    })
}
