//! Insertion of the new largest red element, mapping `(n-1, k)` poly-Cauchy
//! permutations with a choice of `i` onto the `(n, k)` ones where `n` is not
//! the last red entry.
//!
//! `n` goes immediately after `i` in the cycle of `i`. Cycles are then put
//! back into canonical order, so the cycle holding `n` moves to the end,
//! while each blue element keeps its gap index.

use super::colored::{is_poly_cauchy, ColoredPermutation, Entry};
use super::cycles::canonicalize;
use super::LabError;

pub fn insert_bijection(p: &ColoredPermutation, i: usize) -> Result<ColoredPermutation, LabError> {
    if !is_poly_cauchy(p) || p.red_count() != p.n() {
        return Err(LabError::NotPolyCauchy(p.to_string()));
    }
    let old_n = p.n();
    if i < 1 || i > old_n {
        return Err(LabError::InvalidIndex { i, max: old_n });
    }
    let new = old_n as u32 + 1;
    let (mut cycles, blue_word) = p.decompose();
    let cycle = cycles.iter_mut().find(|c| c.contains(&(i as u32))).expect("every red lies in a cycle");
    let pos = cycle.iter().position(|&x| x == i as u32).unwrap();
    cycle.insert(pos + 1, new);
    let cycles = canonicalize(cycles);
    Ok(ColoredPermutation::assemble(old_n + 1, p.k(), &cycles, &blue_word))
}

/// Inverse of [`insert_bijection`]: removes `n` and returns the original
/// permutation together with `i`, the cyclic predecessor of `n`.
pub fn remove_bijection(p: &ColoredPermutation) -> Result<(ColoredPermutation, usize), LabError> {
    let n = p.n();
    if n == 0 || !is_poly_cauchy(p) || p.red_count() != n {
        return Err(LabError::NotPolyCauchy(p.to_string()));
    }
    if p.entries().iter().rev().find(|e| e.is_red()) == Some(&Entry::Red(n as u32)) {
        return Err(LabError::NotInImage(p.to_string()));
    }
    let (mut cycles, blue_word) = p.decompose();
    let last = cycles.last_mut().expect("n >= 1 gives a cycle");
    debug_assert_eq!(last[0], n as u32);
    let i = *last.last().unwrap() as usize;
    last.remove(0);
    let cycles = canonicalize(cycles);
    Ok((ColoredPermutation::assemble(n - 1, p.k(), &cycles, &blue_word), i))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example() {
        let p = ColoredPermutation::parse(8, 6, "b6 4 3 b2 b4 5 6 1 b1 b3 b5 8 2 7").unwrap();
        let image = insert_bijection(&p, 6).unwrap();
        assert_eq!(image.to_string(), "b6 4 3 b2 b4 5 8 2 7 b1 b3 b5 9 1 6");
        let (back, i) = remove_bijection(&image).unwrap();
        assert_eq!(back, p);
        assert_eq!(i, 6);
    }

    #[test]
    fn errors() {
        let p = ColoredPermutation::parse(2, 0, "1 2").unwrap();
        assert_eq!(insert_bijection(&p, 0), Err(LabError::InvalidIndex { i: 0, max: 2 }));
        assert_eq!(insert_bijection(&p, 3), Err(LabError::InvalidIndex { i: 3, max: 2 }));
        let bad = ColoredPermutation::parse(2, 1, "2 b1 1").unwrap();
        assert!(matches!(insert_bijection(&bad, 1), Err(LabError::NotPolyCauchy(_))));
        let last = ColoredPermutation::parse(2, 0, "1 2").unwrap();
        assert!(matches!(remove_bijection(&last), Err(LabError::NotInImage(_))));
    }

    #[test]
    fn singleton_cycle_insertion() {
        let p = ColoredPermutation::parse(2, 1, "1 b1 2").unwrap();
        let image = insert_bijection(&p, 1).unwrap();
        // (1)(2) -> (1 3)(2) -> (2)(3 1)
        assert_eq!(image.to_string(), "2 b1 3 1");
    }
}
