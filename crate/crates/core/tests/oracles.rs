//! Triangles and counting formulas against direct enumeration.

use std::collections::BTreeMap;

use pcperm::cauchy_sequences::{
    hat_c, hat_c_associated, hat_c_poly_q, hat_c_poly_z, hat_c_restricted, hat_c_rho_q, hat_c_shifted, poly_bernoulli,
    poly_cauchy_second, signed,
};
use pcperm::exact_math::{MultiPoly, Symbol};
use pcperm::identity_registry::{self, BoxOverride, Sides};
use pcperm::permutation_lab::{
    canonical_cycles, count_brute, cycle_size_filter, enumerate_augmented, enumerate_brute, is_callan, is_poly_cauchy,
    next_permutation, set_partitions, weight_q, weight_rho_q, BoundMode, SizeGuard,
};
use pcperm::special_numbers::{
    associated_stirling1, eulerian, r_stirling2, restricted_stirling1, stirling1, stirling2,
};
use pcperm::{BigInt, BigRational, ExactValue};

fn permutations(n: usize) -> Vec<Vec<u32>> {
    let mut p: Vec<u32> = (1..=n as u32).collect();
    let mut out = Vec::new();
    loop {
        out.push(p.clone());
        if !next_permutation(&mut p) {
            return out;
        }
    }
}

fn tally<T: Ord>(items: impl IntoIterator<Item = T>) -> BTreeMap<T, usize> {
    let mut m = BTreeMap::new();
    for i in items {
        *m.entry(i).or_insert(0) += 1;
    }
    m
}

fn big(v: usize) -> BigInt {
    BigInt::from(v)
}

#[test]
fn first_kind_triangles_count_cycles() {
    for n in 0..=7 {
        let perms = permutations(n);
        let cycles: Vec<Vec<usize>> =
            perms.iter().map(|p| canonical_cycles(p).iter().map(Vec::len).collect()).collect();
        let all = tally(cycles.iter().map(Vec::len));
        for bound in 1..=4 {
            let at_most = tally(cycles.iter().filter(|c| c.iter().all(|&l| l <= bound)).map(Vec::len));
            let at_least = tally(cycles.iter().filter(|c| c.iter().all(|&l| l >= bound)).map(Vec::len));
            for m in 0..=n {
                let get = |t: &BTreeMap<usize, usize>| big(*t.get(&m).unwrap_or(&0));
                assert_eq!(restricted_stirling1(n, m, bound), get(&at_most), "({n},{m}) <= {bound}");
                assert_eq!(associated_stirling1(n, m, bound), get(&at_least), "({n},{m}) >= {bound}");
            }
        }
        for m in 0..=n {
            assert_eq!(stirling1(n, m), big(*all.get(&m).unwrap_or(&0)), "[{n} {m}]");
        }
    }
}

#[test]
fn second_kind_triangles_count_partitions() {
    for n in 0..=7 {
        let parts = set_partitions(n);
        let blocks = tally(parts.iter().map(Vec::len));
        for m in 0..=n {
            assert_eq!(stirling2(n, m), big(*blocks.get(&m).unwrap_or(&0)), "{{{n} {m}}}");
        }
        for r in 0..=n {
            let apart = tally(
                parts
                    .iter()
                    .filter(|p| p.iter().all(|b| b.iter().filter(|&&x| x as usize <= r).count() <= 1))
                    .map(Vec::len),
            );
            for m in 0..=n {
                assert_eq!(r_stirling2(n, m, r).unwrap(), big(*apart.get(&m).unwrap_or(&0)), "({n},{m},{r})");
            }
        }
    }
}

#[test]
fn eulerian_counts_descents() {
    for n in 0..=7 {
        let desc = tally(permutations(n).iter().map(|p| p.windows(2).filter(|w| w[0] > w[1]).count()));
        for d in 0..=n {
            assert_eq!(eulerian(n, d), big(*desc.get(&d).unwrap_or(&0)), "<{n} {d}>");
        }
    }
}

#[test]
fn callan_and_filtered_counts() {
    for n in 0..=7 {
        for k in 0..=7 - n {
            let callan = count_brute(SizeGuard::default(), n, k, is_callan).unwrap();
            assert_eq!(big(callan), poly_bernoulli(n, k), "callan ({n},{k})");
            let perms = enumerate_brute(n, k, is_poly_cauchy).unwrap();
            for bound in 1..=3 {
                let at_most = perms.iter().filter(|p| cycle_size_filter(p, BoundMode::AtMost, bound)).count();
                let at_least = perms.iter().filter(|p| cycle_size_filter(p, BoundMode::AtLeast, bound)).count();
                assert_eq!(big(at_most), hat_c_restricted(n, k, bound));
                assert_eq!(big(at_least), hat_c_associated(n, k, bound));
            }
        }
    }
}

#[test]
fn weighted_sums() {
    for n in 0..=6 {
        for k in 0..=6 - n {
            let perms = enumerate_brute(n, k, is_poly_cauchy).unwrap();
            let q = perms.iter().fold(MultiPoly::zero(), |a, p| a + weight_q(p));
            let rq = perms.iter().fold(MultiPoly::zero(), |a, p| a + weight_rho_q(p));
            assert_eq!(q, hat_c_poly_q(n, k), "({n},{k})");
            assert_eq!(rq, hat_c_rho_q(n, k), "({n},{k})");
        }
    }
}

#[test]
fn augmented_counts() {
    for n in 0..=6 {
        for k in 0..=6 - n {
            for alpha in 1..=3 {
                let got = enumerate_augmented(n, k, alpha).unwrap().len();
                assert_eq!(big(got), hat_c_shifted(n, k, alpha).unwrap(), "({n},{k},{alpha})");
            }
        }
    }
}

#[test]
fn small_rows_and_specializations() {
    for k in 0..=8usize {
        let two = BigInt::from(2).pow(k as u32);
        assert_eq!(hat_c(1, k), two);
        assert_eq!(hat_c(2, k), two + BigInt::from(3).pow(k as u32));
    }
    let at = |s: Symbol, v: i64| BTreeMap::from([(s, BigRational::from_integer(BigInt::from(v)))]);
    for n in 0..=5 {
        for k in 0..=5 {
            let h = BigRational::from_integer(hat_c(n, k));
            assert_eq!(hat_c_poly_z(n, k).eval(&at(Symbol::Z, 0)).unwrap(), h);
            assert_eq!(hat_c_poly_q(n, k).eval(&at(Symbol::Q, 1)).unwrap(), h);
        }
    }
    for n in 0..=6 {
        for k in 0..=5 {
            let s = BigRational::from_integer(signed(hat_c(n, k), n));
            assert_eq!(poly_cauchy_second(n, -(k as i64)), s);
        }
    }
}

#[test]
fn poly_orthogonality_at_zero_is_orthogonality() {
    let get = |id: &str| identity_registry::find(id).unwrap();
    let (poly, plain) = (get("poly-orthogonality"), get("orthogonality"));
    let (Sides::Equation { lhs: pl, rhs: pr, .. }, Sides::Equation { lhs: ol, rhs: or, .. }) =
        (&poly.sides, &plain.sides)
    else {
        panic!("both are equations");
    };
    let zero = BTreeMap::from([(Symbol::Z, BigRational::from_integer(BigInt::from(0)))]);
    let at_zero = |v: ExactValue| match v {
        ExactValue::Poly(p) => p.eval(&zero).unwrap(),
        other => panic!("expected a polynomial, got {other}"),
    };
    let int = |v: ExactValue| match v {
        ExactValue::Int(i) => BigRational::from_integer(i),
        other => panic!("expected an integer, got {other}"),
    };
    for cell in poly.quick.cells() {
        assert_eq!(at_zero(pl(&cell).unwrap()), int(ol(&cell).unwrap()), "{cell:?}");
        assert_eq!(at_zero(pr(&cell).unwrap()), int(or(&cell).unwrap()), "{cell:?}");
    }
}

#[test]
fn full_profile_boxes_pass() {
    let over = BoxOverride { profile: identity_registry::Profile::Full, ..BoxOverride::default() };
    for id in ["closed-formula", "poly-addition", "first-second-relation", "r-orthogonality"] {
        let report = identity_registry::verify(id, Some(over)).unwrap();
        assert!(report.passed() && report.failures.is_empty(), "{id}");
    }
}
