//! Red/blue colored permutations and their membership predicates.

use std::fmt;

use super::cycles::{cycles_from_word, left_to_right_maxima, Cycles};
use super::LabError;

/// A symbol of a colored permutation. `Red(i)` stands for element `i` of
/// `[n]`, `Blue(j)` for element `n + j`. Every red entry orders before
/// every blue entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Entry {
    Red(u32),
    Blue(u32),
}

impl Entry {
    pub fn is_red(self) -> bool {
        matches!(self, Entry::Red(_))
    }

    pub fn value(self) -> u32 {
        match self {
            Entry::Red(v) | Entry::Blue(v) => v,
        }
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Red(v) => write!(f, "{v}"),
            Entry::Blue(v) => write!(f, "b{v}"),
        }
    }
}

/// Cycle-length constraint used by [`cycle_size_filter`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundMode {
    AtMost,
    AtLeast,
}

/// A permutation of `[n + k]` written with red and blue entries.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColoredPermutation {
    n: usize,
    k: usize,
    entries: Vec<Entry>,
}

impl ColoredPermutation {
    /// Validates that the blues are exactly `1..=k` and the reds are
    /// distinct values in `1..=n`.
    pub fn new(n: usize, k: usize, entries: Vec<Entry>) -> Result<Self, LabError> {
        let mut red_seen = vec![false; n + 1];
        let mut blue_seen = vec![false; k + 1];
        for e in &entries {
            let (seen, limit) = match e {
                Entry::Red(_) => (&mut red_seen, n),
                Entry::Blue(_) => (&mut blue_seen, k),
            };
            let v = e.value() as usize;
            if v == 0 || v > limit || seen[v] {
                return Err(LabError::Malformed(format!("entry {e} invalid for (n, k) = ({n}, {k})")));
            }
            seen[v] = true;
        }
        if blue_seen.iter().skip(1).any(|s| !s) {
            return Err(LabError::Malformed("every blue value 1..=k must appear".into()));
        }
        Ok(ColoredPermutation { n, k, entries })
    }

    pub(crate) fn new_unchecked(n: usize, k: usize, entries: Vec<Entry>) -> Self {
        ColoredPermutation { n, k, entries }
    }

    /// Parses the `b`-prefixed serialization, e.g. `b1 2 1`.
    pub fn parse(n: usize, k: usize, s: &str) -> Result<Self, LabError> {
        let entries = s
            .split_whitespace()
            .map(|tok| {
                let (blue, digits) = match tok.strip_prefix('b') {
                    Some(rest) => (true, rest),
                    None => (false, tok),
                };
                let v: u32 = digits.parse().map_err(|_| LabError::Malformed(format!("bad token `{tok}`")))?;
                Ok(if blue { Entry::Blue(v) } else { Entry::Red(v) })
            })
            .collect::<Result<Vec<_>, LabError>>()?;
        ColoredPermutation::new(n, k, entries)
    }

    /// Reads a plain permutation of `[n + k]`, coloring values above `n`
    /// blue.
    pub fn from_plain(n: usize, k: usize, word: &[u32]) -> Result<Self, LabError> {
        let entries =
            word.iter().map(|&v| if v as usize > n { Entry::Blue(v - n as u32) } else { Entry::Red(v) }).collect();
        ColoredPermutation::new(n, k, entries)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn red_count(&self) -> usize {
        self.entries.iter().filter(|e| e.is_red()).count()
    }

    /// The red subsequence.
    pub fn red_word(&self) -> Vec<u32> {
        self.entries.iter().filter(|e| e.is_red()).map(|e| e.value()).collect()
    }

    /// Maximal runs of one color, in reading order.
    pub fn runs(&self) -> Vec<(bool, Vec<u32>)> {
        let mut runs: Vec<(bool, Vec<u32>)> = Vec::new();
        for e in &self.entries {
            match runs.last_mut() {
                Some((red, run)) if *red == e.is_red() => run.push(e.value()),
                _ => runs.push((e.is_red(), vec![e.value()])),
            }
        }
        runs
    }

    /// Red cycles read off the red word, and for each blue value `j`
    /// (index `j - 1`) the number of red cycles to its left.
    pub fn decompose(&self) -> (Cycles, Vec<usize>) {
        let cycles = cycles_from_word(&self.red_word());
        let mut word = vec![0usize; self.k];
        let mut started = 0usize;
        let mut best = None;
        for e in &self.entries {
            match *e {
                Entry::Red(v) => {
                    if best.is_none_or(|b| v > b) {
                        best = Some(v);
                        started += 1;
                    }
                }
                Entry::Blue(j) => word[j as usize - 1] = started,
            }
        }
        (cycles, word)
    }

    /// Writes the blues of gap `g` (increasing) before cycle `g`, for
    /// `g = 0..=cycles.len()`.
    pub fn assemble(n: usize, k: usize, cycles: &[Vec<u32>], blue_word: &[usize]) -> Self {
        let mut gaps: Vec<Vec<u32>> = vec![Vec::new(); cycles.len() + 1];
        for (j, &g) in blue_word.iter().enumerate() {
            gaps[g].push(j as u32 + 1);
        }
        let mut entries = Vec::with_capacity(n + k);
        for (g, blues) in gaps.iter().enumerate() {
            entries.extend(blues.iter().map(|&b| Entry::Blue(b)));
            if let Some(c) = cycles.get(g) {
                entries.extend(c.iter().map(|&r| Entry::Red(r)));
            }
        }
        ColoredPermutation::new_unchecked(n, k, entries)
    }
}

impl fmt::Display for ColoredPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// Every maximal blue run is increasing, and the within-run left-to-right
/// maxima of the red runs, concatenated in reading order, strictly increase.
pub fn is_poly_cauchy(p: &ColoredPermutation) -> bool {
    let mut last_max: Option<u32> = None;
    for (red, run) in p.runs() {
        if red {
            for m in left_to_right_maxima(&run) {
                if last_max.is_some_and(|prev| m <= prev) {
                    return false;
                }
                last_max = Some(m);
            }
        } else if run.windows(2).any(|w| w[0] > w[1]) {
            return false;
        }
    }
    true
}

/// Red runs increase and blue runs decrease.
pub fn is_callan(p: &ColoredPermutation) -> bool {
    p.runs().iter().all(|(red, run)| run.windows(2).all(|w| if *red { w[0] < w[1] } else { w[0] > w[1] }))
}

/// True iff every red cycle has length within `bound`.
pub fn cycle_size_filter(p: &ColoredPermutation, mode: BoundMode, bound: usize) -> bool {
    cycles_from_word(&p.red_word()).iter().all(|c| match mode {
        BoundMode::AtMost => c.len() <= bound,
        BoundMode::AtLeast => c.len() >= bound,
    })
}

/// Red subsequence is `1 2 ... n`.
pub fn is_id_poly_cauchy(p: &ColoredPermutation) -> bool {
    is_poly_cauchy(p) && p.red_word().windows(2).all(|w| w[0] < w[1])
}
