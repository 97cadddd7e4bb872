use proptest::prelude::*;

use pcperm::cauchy_sequences::{hat_c, poly_bernoulli};
use pcperm::permutation_lab::{
    canonical_cycles, cycles_from_word, enumerate_configs, flatten_cycles, insert_bijection, involution_phi_r,
    is_id_poly_cauchy, is_poly_cauchy, remove_bijection, ColoredPermutation, Involution,
};
use pcperm::special_numbers::{binomial, stirling1};
use pcperm::BigInt;

/// A random poly-Cauchy permutation: a shuffled one-line permutation read as
/// cycles, plus one gap index per blue element.
fn poly_cauchy(max_n: usize, max_k: usize) -> impl Strategy<Value = ColoredPermutation> {
    (0..=max_n, 0..=max_k)
        .prop_flat_map(|(n, k)| {
            let perm = Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle();
            (Just(n), Just(k), perm, proptest::collection::vec(any::<prop::sample::Index>(), k))
        })
        .prop_map(|(n, k, perm, gaps)| {
            let cycles = canonical_cycles(&perm);
            let word: Vec<usize> = gaps.iter().map(|g| g.index(cycles.len() + 1)).collect();
            ColoredPermutation::assemble(n, k, &cycles, &word)
        })
}

proptest! {
    #[test]
    fn assembled_permutations_are_poly_cauchy(p in poly_cauchy(7, 5)) {
        prop_assert!(is_poly_cauchy(&p));
        let (cycles, word) = p.decompose();
        prop_assert_eq!(ColoredPermutation::assemble(p.n(), p.k(), &cycles, &word), p.clone());
        prop_assert_eq!(ColoredPermutation::parse(p.n(), p.k(), &p.to_string()).unwrap(), p);
    }

    #[test]
    fn flatten_and_split_invert(perm in Just((1..=8u32).collect::<Vec<_>>()).prop_shuffle()) {
        let cycles = canonical_cycles(&perm);
        let word = flatten_cycles(&cycles);
        prop_assert_eq!(cycles_from_word(&word), cycles);
    }

    #[test]
    fn insertion_round_trips(p in poly_cauchy(6, 4), pick in any::<prop::sample::Index>()) {
        prop_assume!(p.n() >= 1);
        let i = pick.index(p.n()) + 1;
        let image = insert_bijection(&p, i).unwrap();
        prop_assert!(is_poly_cauchy(&image));
        prop_assert_eq!(image.n(), p.n() + 1);
        prop_assert_eq!(remove_bijection(&image).unwrap(), (p, i));
    }

    #[test]
    fn involution_is_sign_reversing(n in 0usize..=4, k in 0usize..=2, r_pick in any::<prop::sample::Index>(),
                                    c_pick in any::<prop::sample::Index>()) {
        let r = r_pick.index(n + 1);
        let configs = enumerate_configs(n, k, r).unwrap();
        let c = &configs[c_pick.index(configs.len())];
        match involution_phi_r(c, r) {
            Involution::Fixed => {
                prop_assert!(c.blocks().iter().all(|b| b.len() == 1));
                if r == 0 {
                    prop_assert!(is_id_poly_cauchy(&c.flatten()));
                }
            }
            Involution::Pair(image) => {
                prop_assert_eq!(image.sign(), -c.sign());
                prop_assert_eq!(image.flatten(), c.flatten());
                prop_assert_eq!(involution_phi_r(&image, r), Involution::Pair(c.clone()));
            }
        }
    }

    #[test]
    fn bernoulli_symmetry(n in 0usize..=9, k in 0usize..=9) {
        prop_assert_eq!(poly_bernoulli(n, k), poly_bernoulli(k, n));
    }

    #[test]
    fn hat_c_first_recurrence_on_wider_range(n in 1usize..=12, k in 0usize..=12) {
        let tail: BigInt = (0..=k).map(|i| binomial(k, i) * hat_c(n - 1, k - i)).sum();
        prop_assert_eq!(hat_c(n, k), BigInt::from(n - 1) * hat_c(n - 1, k) + tail);
    }

    #[test]
    fn stirling1_row_sums(n in 0usize..=15) {
        let total: BigInt = (0..=n).map(|m| stirling1(n, m)).sum();
        let fact: BigInt = (1..=n).map(BigInt::from).product();
        prop_assert_eq!(total, fact);
    }
}
