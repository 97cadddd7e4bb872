use super::colored::{ColoredPermutation, Entry};
use crate::exact_math::{Monomial, MultiPoly, Symbol};

/// Number of non-left-to-right-maxima of the red word, and the total over
/// blue entries of the red cycles strictly to their left.
fn statistics(p: &ColoredPermutation) -> (u32, u32) {
    let mut best = None;
    let mut maxima = 0u32;
    let mut reds = 0u32;
    let mut blue_exp = 0u32;
    for e in p.entries() {
        match *e {
            Entry::Red(v) => {
                reds += 1;
                if best.is_none_or(|b| v > b) {
                    best = Some(v);
                    maxima += 1;
                }
            }
            Entry::Blue(_) => blue_exp += maxima,
        }
    }
    (reds - maxima, blue_exp)
}

/// `q^(number of non-left-to-right maxima of the red word)`.
pub fn weight_q(p: &ColoredPermutation) -> MultiPoly {
    let (mu, _) = statistics(p);
    MultiPoly::term(1, Monomial::var(Symbol::Q, mu))
}

/// `rho^mu` times `q^(red cycles left of b)` for every blue `b`.
pub fn weight_rho_q(p: &ColoredPermutation) -> MultiPoly {
    let (mu, blue_exp) = statistics(p);
    MultiPoly::term(1, Monomial::var(Symbol::Rho, mu).with_exponent(Symbol::Q, blue_exp))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn listed_weights() {
        let cases = [
            ("b1 b2 1 2", "1", "1"),
            ("b1 b2 2 1", "q", "rho"),
            ("b1 1 2 b2", "1", "q^2"),
            ("b1 2 1 b2", "q", "rho*q"),
            ("b2 1 b1 2", "1", "q"),
            ("1 2 b1 b2", "1", "q^4"),
            ("2 1 b1 b2", "q", "rho*q^2"),
            ("1 b2 2 b1", "1", "q^3"),
        ];
        for (s, wq, wrq) in cases {
            let p = ColoredPermutation::parse(2, 2, s).unwrap();
            assert_eq!(weight_q(&p).to_string(), wq, "{s}");
            assert_eq!(weight_rho_q(&p).to_string(), wrq, "{s}");
        }
    }
}
