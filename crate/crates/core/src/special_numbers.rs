//! Stirling, r-Stirling, restricted/associated Stirling and Eulerian
//! triangles, plus binomials, factorials and q-integers.
//!
//! Every triangle is built row by row from its recurrence and memoized in a
//! process-wide cache. Each cache grows monotonically under a write lock, so
//! an entry is computed once and every reader sees the same value.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact_math::{Monomial, MultiPoly, Symbol};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecialError {
    #[error("r-Stirling numbers need n >= r (got n = {n}, r = {r})")]
    RowBelowSpecials { n: usize, r: usize },
}

/// Which triangle a cache holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TriangleFamily {
    Stirling1,
    Stirling2,
    /// r-Stirling numbers of the second kind with `r` special elements.
    RStirling2(usize),
    /// Cycles of length at most `bound`.
    RestrictedStirling1(usize),
    /// Cycles of length at least `bound`.
    AssociatedStirling1(usize),
    /// Indexed by number of descents.
    Eulerian,
}

/// Memo table for one triangle. Row `n` stores columns `0..=n`; everything
/// outside is zero.
#[derive(Debug)]
pub struct TriangleCache {
    family: TriangleFamily,
    rows: RwLock<Vec<Vec<BigInt>>>,
}

impl TriangleCache {
    pub fn new(family: TriangleFamily) -> Self {
        TriangleCache { family, rows: RwLock::new(Vec::new()) }
    }

    pub fn family(&self) -> TriangleFamily {
        self.family
    }

    pub fn get(&self, n: usize, m: usize) -> BigInt {
        if m > n {
            return BigInt::zero();
        }
        {
            let rows = self.rows.read().expect("triangle cache poisoned");
            if let Some(row) = rows.get(n) {
                return row[m].clone();
            }
        }
        let mut rows = self.rows.write().expect("triangle cache poisoned");
        while rows.len() <= n {
            let next = build_row(self.family, &rows);
            rows.push(next);
        }
        rows[n][m].clone()
    }

    /// Number of rows materialized so far.
    pub fn rows_cached(&self) -> usize {
        self.rows.read().expect("triangle cache poisoned").len()
    }
}

fn prev(rows: &[Vec<BigInt>], n: usize, m: isize) -> BigInt {
    if m < 0 {
        return BigInt::zero();
    }
    rows.get(n).and_then(|row| row.get(m as usize)).cloned().unwrap_or_else(BigInt::zero)
}

fn build_row(family: TriangleFamily, rows: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = rows.len();
    let mut row = vec![BigInt::zero(); n + 1];
    match family {
        TriangleFamily::Stirling1 | TriangleFamily::Stirling2 if n == 0 => row[0] = BigInt::one(),
        TriangleFamily::Stirling1 => {
            for (m, slot) in row.iter_mut().enumerate() {
                let m = m as isize;
                *slot = prev(rows, n - 1, m - 1) + BigInt::from(n - 1) * prev(rows, n - 1, m);
            }
        }
        TriangleFamily::Stirling2 => {
            for (m, slot) in row.iter_mut().enumerate() {
                let mi = m as isize;
                *slot = prev(rows, n - 1, mi - 1) + BigInt::from(m) * prev(rows, n - 1, mi);
            }
        }
        TriangleFamily::RStirling2(r) => {
            if n == r {
                row[r] = BigInt::one();
            } else if n > r {
                for (m, slot) in row.iter_mut().enumerate() {
                    let mi = m as isize;
                    *slot = prev(rows, n - 1, mi - 1) + BigInt::from(m) * prev(rows, n - 1, mi);
                }
            }
        }
        TriangleFamily::RestrictedStirling1(bound) => cycle_of_n_row(&mut row, rows, 1, bound),
        TriangleFamily::AssociatedStirling1(bound) => cycle_of_n_row(&mut row, rows, bound.max(1), usize::MAX),
        TriangleFamily::Eulerian => {
            if n == 0 {
                row[0] = BigInt::one();
            } else {
                for (d, slot) in row.iter_mut().enumerate() {
                    let di = d as isize;
                    *slot =
                        BigInt::from(d + 1) * prev(rows, n - 1, di) + BigInt::from(n - d) * prev(rows, n - 1, di - 1);
                }
            }
        }
    }
    row
}

/// Conditions on the size `s` of the cycle holding the largest element:
/// choose its `s-1` companions and one of `(s-1)!` cyclic orders.
fn cycle_of_n_row(row: &mut [BigInt], rows: &[Vec<BigInt>], min_len: usize, max_len: usize) {
    let n = rows.len();
    if n == 0 {
        row[0] = BigInt::one();
        return;
    }
    for s in min_len..=max_len.min(n) {
        let arrangements = binomial(n - 1, s - 1) * factorial(s - 1);
        for (m, slot) in row.iter_mut().enumerate().take(n + 1).skip(1) {
            let sub = prev(rows, n - s, m as isize - 1);
            if !sub.is_zero() {
                *slot += &arrangements * sub;
            }
        }
    }
}

fn cache(family: TriangleFamily) -> Arc<TriangleCache> {
    static CACHES: OnceLock<Mutex<HashMap<TriangleFamily, Arc<TriangleCache>>>> = OnceLock::new();
    let mut map = CACHES.get_or_init(|| Mutex::new(HashMap::new())).lock().expect("cache registry poisoned");
    map.entry(family).or_insert_with(|| Arc::new(TriangleCache::new(family))).clone()
}

/// Unsigned Stirling number of the first kind: permutations of `[n]` with
/// `m` cycles.
pub fn stirling1(n: usize, m: usize) -> BigInt {
    cache(TriangleFamily::Stirling1).get(n, m)
}

/// Signed Stirling number of the first kind, `(-1)^(n-m) [n m]`.
pub fn stirling1_signed(n: usize, m: usize) -> BigInt {
    let v = stirling1(n, m);
    if (n + m).is_multiple_of(2) {
        v
    } else {
        -v
    }
}

/// Stirling number of the second kind: partitions of `[n]` into `m` blocks.
pub fn stirling2(n: usize, m: usize) -> BigInt {
    cache(TriangleFamily::Stirling2).get(n, m)
}

/// Partitions of `[n]` into `m` blocks with `1..=r` in distinct blocks.
pub fn r_stirling2(n: usize, m: usize, r: usize) -> Result<BigInt, SpecialError> {
    if n < r {
        return Err(SpecialError::RowBelowSpecials { n, r });
    }
    Ok(cache(TriangleFamily::RStirling2(r)).get(n, m))
}

/// Permutations of `[n]` with `m` cycles, each of length at most `bound`.
pub fn restricted_stirling1(n: usize, m: usize, bound: usize) -> BigInt {
    cache(TriangleFamily::RestrictedStirling1(bound)).get(n, m)
}

/// Permutations of `[n]` with `m` cycles, each of length at least `bound`.
pub fn associated_stirling1(n: usize, m: usize, bound: usize) -> BigInt {
    cache(TriangleFamily::AssociatedStirling1(bound)).get(n, m)
}

/// Permutations of `[n]` with exactly `d` descents. `eulerian(0, 0) = 1`.
pub fn eulerian(n: usize, d: usize) -> BigInt {
    cache(TriangleFamily::Eulerian).get(n, d)
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `n (n-1) ... (n-i+1)`; zero when `i > n`.
pub fn falling_int(n: usize, i: usize) -> BigInt {
    if i > n {
        return BigInt::zero();
    }
    (0..i).fold(BigInt::one(), |acc, j| acc * (n - j))
}

/// `[m]_q = 1 + q + ... + q^(m-1)`.
pub fn q_integer(m: usize) -> MultiPoly {
    MultiPoly::from_terms((0..m).map(|e| (1, Monomial::var(Symbol::Q, e as u32))))
}

/// `([m]_q)^k`, expanded.
pub fn q_integer_pow(m: usize, k: usize) -> MultiPoly {
    q_integer(m).pow(k as u32)
}
