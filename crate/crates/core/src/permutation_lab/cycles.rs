//! One-line notation, canonical cycle notation, and the flattening map
//! between them.
//!
//! Canonical cycle notation writes each cycle with its largest element
//! first and sorts cycles by those first elements. Dropping the parentheses
//! gives a word whose left-to-right maxima are exactly the cycle leaders,
//! which is how cycles are recovered from a word.

/// A cycle list over arbitrary labels.
pub type Cycles = Vec<Vec<u32>>;

/// Rearranges `v` into its lexicographic successor. Returns `false` (and
/// leaves `v` sorted ascending) when `v` was the last permutation.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Entries of `word` that exceed everything before them.
pub fn left_to_right_maxima(word: &[u32]) -> Vec<u32> {
    let mut best = None;
    word.iter()
        .copied()
        .filter(|&x| {
            if best.is_none_or(|b| x > b) {
                best = Some(x);
                true
            } else {
                false
            }
        })
        .collect()
}

/// Canonical cycles of the permutation given in one-line notation. The
/// domain is the sorted set of values in `one_line`, and the `i`-th smallest
/// label maps to `one_line[i]`.
pub fn canonical_cycles(one_line: &[u32]) -> Cycles {
    let mut domain: Vec<u32> = one_line.to_vec();
    domain.sort_unstable();
    let image = |x: u32| -> u32 {
        let idx = domain.binary_search(&x).expect("label outside permutation domain");
        one_line[idx]
    };
    let mut seen = vec![false; domain.len()];
    let mut cycles = Vec::new();
    // Largest unseen label first: it leads its cycle.
    for start_idx in (0..domain.len()).rev() {
        if seen[start_idx] {
            continue;
        }
        let start = domain[start_idx];
        let mut cycle = vec![start];
        seen[start_idx] = true;
        let mut cur = image(start);
        while cur != start {
            let idx = domain.binary_search(&cur).unwrap();
            seen[idx] = true;
            cycle.push(cur);
            cur = image(cur);
        }
        cycles.push(cycle);
    }
    cycles.reverse();
    cycles
}

/// Rotates each cycle to start at its maximum and sorts the cycles by
/// leader.
pub fn canonicalize(mut cycles: Cycles) -> Cycles {
    for c in cycles.iter_mut() {
        if let Some(pos) = c.iter().enumerate().max_by_key(|(_, &v)| v).map(|(i, _)| i) {
            c.rotate_left(pos);
        }
    }
    cycles.retain(|c| !c.is_empty());
    cycles.sort_by_key(|c| c[0]);
    cycles
}

/// Concatenation of the cycles.
pub fn flatten_cycles(cycles: &[Vec<u32>]) -> Vec<u32> {
    cycles.iter().flatten().copied().collect()
}

/// Splits a word at its left-to-right maxima, inverting [`flatten_cycles`]
/// on canonical cycle lists.
pub fn cycles_from_word(word: &[u32]) -> Cycles {
    let mut cycles: Cycles = Vec::new();
    let mut best = None;
    for &x in word {
        if best.is_none_or(|b| x > b) {
            best = Some(x);
            cycles.push(vec![x]);
        } else {
            cycles.last_mut().expect("first entry is a maximum").push(x);
        }
    }
    cycles
}

/// One-line notation of the permutation with the given cycles, listed over
/// the sorted union of the cycle labels.
pub fn one_line_from_cycles(cycles: &[Vec<u32>]) -> Vec<u32> {
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    for c in cycles {
        for (i, &x) in c.iter().enumerate() {
            pairs.push((x, c[(i + 1) % c.len()]));
        }
    }
    pairs.sort_unstable();
    pairs.into_iter().map(|(_, y)| y).collect()
}
