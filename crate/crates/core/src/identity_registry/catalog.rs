use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Cell, CellCheck, Evaluator, Identity, ParamBox, RegistryError, Sides, Status};
use crate::cauchy_sequences::{
    hat_c, hat_c_associated, hat_c_poly_q, hat_c_poly_z, hat_c_restricted, hat_c_rho_q, hat_c_shifted, poly_bernoulli,
    poly_cauchy_first, poly_cauchy_second, poly_cauchy_shifted_signed, signed,
};
use crate::exact_math::{falling_factorial, ExactValue, Monomial, MultiPoly, Symbol};
use crate::permutation_lab::{
    count_brute, cycle_size_filter, enumerate_augmented, enumerate_brute, enumerate_partial, generate_constructive,
    is_callan, is_poly_cauchy, partial_weight_sum, weight_q, weight_rho_q, BoundMode, SizeGuard,
};
use crate::special_numbers::{binomial, eulerian, factorial, falling_int, r_stirling2, stirling1, stirling2};

type Res = Result<ExactValue, RegistryError>;

fn int(v: BigInt) -> Res {
    Ok(ExactValue::Int(v))
}

fn poly(p: MultiPoly) -> Res {
    Ok(ExactValue::Poly(p))
}

fn pow(base: usize, exp: usize) -> BigInt {
    num_traits::pow(BigInt::from(base), exp)
}

fn neg_pow(n: usize) -> BigInt {
    if n.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn alpha(c: &Cell) -> usize {
    c.alpha.expect("box sweeps alpha")
}

fn bound(c: &Cell) -> usize {
    c.bound.expect("box sweeps bound")
}

/// `ĉ_{n,k}` through blue set partitions and cycle placements, never through
/// the explicit sum.
fn closed_hat(n: usize, k: usize) -> BigInt {
    (0..=k).map(|j| factorial(j) * stirling1(n + 1, j + 1) * stirling2(k + 1, j + 1)).sum()
}

/// Signed `ĉ_n^(-k)(s)` assembled from closed-form numbers and falling
/// factorials in `s`.
fn convolution_poly(n: usize, k: usize, s: Symbol) -> MultiPoly {
    let mut out = MultiPoly::zero();
    for m in 0..=n {
        let c = binomial(n, m) * signed(closed_hat(n - m, k), n - m);
        out += falling_factorial(s, m).scale(&c);
    }
    out
}

fn signed_poly_z(n: usize, k: usize, s: Symbol) -> MultiPoly {
    signed(hat_c_poly_z(n, k), n).rename(Symbol::Z, s)
}

fn integral_check(_: &Cell, l: &ExactValue, r: &ExactValue) -> Option<String> {
    (!l.is_integral() || !r.is_integral()).then(|| "value is not an integer".to_string())
}

/// `n!` times either side must be an integer whenever `k <= 0`.
fn first_kind_integral(c: &Cell, l: &ExactValue, r: &ExactValue) -> Option<String> {
    if c.k > 0 {
        return None;
    }
    let f = BigRational::from_integer(factorial(c.n));
    let scaled = |v: &ExactValue| match v {
        ExactValue::Rational(q) => (q * &f).is_integer(),
        ExactValue::Int(_) => true,
        ExactValue::Poly(_) => false,
    };
    (!scaled(l) || !scaled(r)).then(|| "n! times the value is not an integer".to_string())
}

fn brute_count(c: &Cell, pred: impl Fn(&crate::permutation_lab::ColoredPermutation) -> bool) -> Res {
    Ok(ExactValue::Int(BigInt::from(count_brute(SizeGuard::default(), c.n, c.ku(), pred)?)))
}

fn eq(lhs: Evaluator, rhs: Evaluator) -> Sides {
    Sides::Equation { lhs, rhs, check: None }
}

fn eq_checked(lhs: Evaluator, rhs: Evaluator, check: CellCheck) -> Sides {
    Sides::Equation { lhs, rhs, check: Some(check) }
}

const INT: ParamBox = ParamBox::nk(6, 6);
const INT_FULL: ParamBox = ParamBox::nk(8, 8);
const POLY: ParamBox = ParamBox::nk(5, 5);
const POLY_FULL: ParamBox = ParamBox::nk(7, 7);
const ENUM: ParamBox = ParamBox::nk(7, 7).sum_at_most(7);
const ENUM_FULL: ParamBox = ParamBox::nk(8, 8).sum_at_most(8);

fn annihilation_sum(c: &Cell, signed_values: bool, extend: bool) -> Res {
    let (n, k) = (c.n, c.ku());
    let end = if extend { (k + 1).min(n) } else { k };
    let mut total = BigInt::zero();
    for l in 0..=end {
        let s = r_stirling2(n + 1, n - l + 1, n - k)?;
        let h = hat_c(n - l, k);
        total += s * if signed_values { signed(h, n - l) } else { h };
    }
    int(total)
}

const ANNIHILATION_VARIANTS: &[(&str, Evaluator)] = &[
    ("signed, l <= k", |c| annihilation_sum(c, true, false)),
    ("stripped, l <= k", |c| annihilation_sum(c, false, false)),
    ("signed, l <= min(k + 1, n)", |c| annihilation_sum(c, true, true)),
    ("stripped, l <= min(k + 1, n)", |c| annihilation_sum(c, false, true)),
];

fn build() -> Vec<Identity> {
    vec![
        Identity {
            id: "orthogonality",
            convention: "stripped",
            status: Status::Required,
            lhs_route: "alternating Stirling-2 sum of explicit hat_c",
            rhs_route: "(-1)^n (n+1)^k",
            quick: INT,
            full: INT_FULL,
            sides: eq(
                |c| {
                    let (n, k) = (c.n, c.ku());
                    int((0..=n).map(|m| neg_pow(m) * stirling2(n, m) * hat_c(m, k)).sum())
                },
                |c| int(neg_pow(c.n) * pow(c.n + 1, c.ku())),
            ),
        },
        Identity {
            id: "r-orthogonality",
            convention: "stripped; right side carries (-1)^n and l runs from 0",
            status: Status::Required,
            lhs_route: "alternating r-Stirling-2 sum of explicit hat_c",
            rhs_route: "Stirling-1 of the specials times powers",
            quick: INT.with_r(),
            full: INT_FULL.with_r(),
            sides: eq(
                |c| {
                    let (n, k, r) = (c.n, c.ku(), c.r.expect("box sweeps r"));
                    let mut total = BigInt::zero();
                    for j in r..=n {
                        total += neg_pow(j) * r_stirling2(n, j, r)? * hat_c(j, k);
                    }
                    int(total)
                },
                |c| {
                    let (n, k, r) = (c.n, c.ku(), c.r.expect("box sweeps r"));
                    let sum: BigInt = (0..=r).map(|l| stirling1(r, l) * pow(n - r + l + 1, k)).sum();
                    int(neg_pow(n) * sum)
                },
            ),
        },
        Identity {
            id: "bernoulli-from-cauchy",
            convention: "signed",
            status: Status::Required,
            lhs_route: "explicit poly-Bernoulli sum",
            rhs_route: "double Stirling-2 transform of closed-form signed hat_c",
            quick: INT,
            full: INT_FULL,
            sides: eq(
                |c| int(poly_bernoulli(c.n, c.ku())),
                |c| {
                    let (n, k) = (c.n, c.ku());
                    let mut total = BigInt::zero();
                    for m in 0..=n {
                        for l in 0..=m {
                            total += factorial(m) * stirling2(n, m) * stirling2(m, l) * signed(closed_hat(l, k), l);
                        }
                    }
                    int(neg_pow(n) * total)
                },
            ),
        },
        Identity {
            id: "cauchy-from-bernoulli",
            convention: "signed; rational intermediates, integral result",
            status: Status::Required,
            lhs_route: "rational explicit sum for the second kind at -k",
            rhs_route: "Stirling-1 transform of poly-Bernoulli over m!",
            quick: INT,
            full: INT_FULL,
            sides: eq_checked(
                |c| Ok(ExactValue::Rational(poly_cauchy_second(c.n, -c.k))),
                |c| {
                    let (n, k) = (c.n, c.ku());
                    let mut total = BigRational::zero();
                    for m in 0..=n {
                        for l in 0..=m {
                            let num = stirling1(n, m) * stirling1(m, l) * poly_bernoulli(l, k);
                            total += BigRational::new(num, factorial(m));
                        }
                    }
                    Ok(ExactValue::Rational(total * BigRational::from_integer(neg_pow(n))))
                },
                integral_check,
            ),
        },
        Identity {
            id: "closed-formula",
            convention: "stripped",
            status: Status::Required,
            lhs_route: "explicit hat_c",
            rhs_route: "j! [n+1, j+1] {k+1, j+1}",
            quick: INT,
            full: INT_FULL,
            sides: eq(|c| int(hat_c(c.n, c.ku())), |c| int(closed_hat(c.n, c.ku()))),
        },
        Identity {
            id: "recurrence-1",
            convention: "stripped",
            status: Status::Required,
            lhs_route: "explicit hat_c",
            rhs_route: "recurrence over closed-form values",
            quick: INT.n_from(1),
            full: INT_FULL.n_from(1),
            sides: eq(
                |c| int(hat_c(c.n, c.ku())),
                |c| {
                    let (n, k) = (c.n, c.ku());
                    let tail: BigInt = (0..=k).map(|i| binomial(k, i) * closed_hat(n - 1, k - i)).sum();
                    int(BigInt::from(n - 1) * closed_hat(n - 1, k) + tail)
                },
            ),
        },
        Identity {
            id: "recurrence-2",
            convention: "stripped",
            status: Status::Required,
            lhs_route: "explicit hat_c",
            rhs_route: "last-cycle recurrence over closed-form values",
            quick: INT.n_from(1),
            full: INT_FULL.n_from(1),
            sides: eq(
                |c| int(hat_c(c.n, c.ku())),
                |c| {
                    let (n, k) = (c.n, c.ku());
                    let mut total = BigInt::zero();
                    for i in 0..n {
                        for j in 0..=k {
                            total += falling_int(n - 1, i) * binomial(k, j) * closed_hat(n - 1 - i, k - j);
                        }
                    }
                    int(total)
                },
            ),
        },
        Identity {
            id: "eulerian",
            convention: "stripped; <k i> counts permutations of [k] with i descents",
            status: Status::Required,
            lhs_route: "explicit hat_c",
            rhs_route: "Eulerian numbers, marked ascents and Stirling-1",
            quick: INT,
            full: INT_FULL,
            sides: eq(
                |c| int(hat_c(c.n, c.ku())),
                |c| {
                    let (n, k) = (c.n, c.ku());
                    let mut total = BigInt::zero();
                    for m in 0..=n {
                        for i in 0..=m.min(k) {
                            total += binomial(k - i, m - i) * eulerian(k, i) * stirling1(n + 1, m + 1);
                        }
                    }
                    int(total)
                },
            ),
        },
        Identity {
            id: "partial-weight",
            convention: "stripped",
            status: Status::Required,
            lhs_route: "enumerated partial permutations weighted by (-z)^w",
            rhs_route: "explicit polynomial in z",
            quick: ENUM,
            full: ENUM,
            sides: eq(
                |c| poly(partial_weight_sum(&enumerate_partial(c.n, c.ku())?)),
                |c| poly(hat_c_poly_z(c.n, c.ku())),
            ),
        },
        Identity {
            id: "poly-convolution",
            convention: "signed",
            status: Status::Required,
            lhs_route: "explicit polynomial in z, signed",
            rhs_route: "binomial convolution of explicit signed hat_c with (z)_m",
            quick: POLY,
            full: POLY_FULL,
            sides: eq(
                |c| poly(signed(hat_c_poly_z(c.n, c.ku()), c.n)),
                |c| {
                    let (n, k) = (c.n, c.ku());
                    let mut out = MultiPoly::zero();
                    for m in 0..=n {
                        let coeff = binomial(n, m) * signed(hat_c(n - m, k), n - m);
                        out += falling_factorial(Symbol::Z, m).scale(&coeff);
                    }
                    poly(out)
                },
            ),
        },
        Identity {
            id: "poly-orthogonality",
            convention: "stripped; right side carries (-1)^n",
            status: Status::Required,
            lhs_route: "alternating Stirling-2 sum of explicit polynomials",
            rhs_route: "(-1)^n sum C(n,i) (-z)^i (n-i+1)^k",
            quick: POLY,
            full: POLY_FULL,
            sides: eq(
                |c| {
                    let (n, k) = (c.n, c.ku());
                    let mut out = MultiPoly::zero();
                    for m in 0..=n {
                        out += hat_c_poly_z(m, k).scale(&(neg_pow(m) * stirling2(n, m)));
                    }
                    poly(out)
                },
                |c| {
                    let (n, k) = (c.n, c.ku());
                    poly(MultiPoly::from_terms((0..=n).map(|i| {
                        (neg_pow(n + i) * binomial(n, i) * pow(n - i + 1, k), Monomial::var(Symbol::Z, i as u32))
                    })))
                },
            ),
        },
        Identity {
            id: "poly-shift",
            convention: "signed",
            status: Status::Required,
            lhs_route: "explicit signed polynomial with x -> x + 1",
            rhs_route: "convolution polynomials p_n(x) + n p_(n-1)(x)",
            quick: POLY,
            full: POLY_FULL,
            sides: eq(
                |c| {
                    let p = signed_poly_z(c.n, c.ku(), Symbol::X);
                    poly(p.substitute_linear(Symbol::X, &BigInt::one(), &BigInt::one()))
                },
                |c| {
                    let (n, k) = (c.n, c.ku());
                    let mut out = convolution_poly(n, k, Symbol::X);
                    if n > 0 {
                        out += convolution_poly(n - 1, k, Symbol::X).scale(&BigInt::from(n));
                    }
                    poly(out)
                },
            ),
        },
        Identity {
            id: "poly-addition",
            convention: "signed",
            status: Status::Required,
            lhs_route: "explicit signed polynomial with z -> x + y",
            rhs_route: "convolution polynomials in x times (y)_(n-j)",
            quick: POLY,
            full: POLY_FULL,
            sides: eq(
                |c| {
                    let sum = MultiPoly::var(Symbol::X) + MultiPoly::var(Symbol::Y);
                    poly(signed(hat_c_poly_z(c.n, c.ku()), c.n).substitute(Symbol::Z, &sum))
                },
                |c| {
                    let (n, k) = (c.n, c.ku());
                    let mut out = MultiPoly::zero();
                    for j in 0..=n {
                        let term = &convolution_poly(j, k, Symbol::X) * &falling_factorial(Symbol::Y, n - j);
                        out += term.scale(&binomial(n, j));
                    }
                    poly(out)
                },
            ),
        },
        Identity {
            id: "shifted-closed",
            convention: "stripped",
            status: Status::Required,
            lhs_route: "explicit shifted sum",
            rhs_route: "boxed blues, set partitions and cycle placements",
            quick: INT.alpha(1, 4),
            full: INT_FULL.alpha(1, 5),
            sides: eq(
                |c| int(hat_c_shifted(c.n, c.ku(), alpha(c))?),
                |c| {
                    let (n, k, a) = (c.n, c.ku(), alpha(c));
                    let mut total = BigInt::zero();
                    for i in 0..=k {
                        for j in 0..=i {
                            total += factorial(j)
                                * stirling1(n + 1, j + 1)
                                * binomial(k, i)
                                * stirling2(i, j)
                                * pow(a, k - i);
                        }
                    }
                    int(total)
                },
            ),
        },
        Identity {
            id: "q-weight",
            convention: "stripped",
            status: Status::Required,
            lhs_route: "brute-force poly-Cauchy permutations weighted by q^mu",
            rhs_route: "explicit polynomial in q",
            quick: ENUM,
            full: ENUM_FULL,
            sides: eq(
                |c| {
                    let perms = enumerate_brute(c.n, c.ku(), is_poly_cauchy)?;
                    poly(perms.iter().fold(MultiPoly::zero(), |acc, p| acc + weight_q(p)))
                },
                |c| poly(hat_c_poly_q(c.n, c.ku())),
            ),
        },
        Identity {
            id: "rho-q-weight",
            convention: "stripped",
            status: Status::Required,
            lhs_route: "brute-force poly-Cauchy permutations weighted by rho and q",
            rhs_route: "explicit polynomial in rho and q",
            quick: ENUM,
            full: ENUM_FULL,
            sides: eq(
                |c| {
                    let perms = enumerate_brute(c.n, c.ku(), is_poly_cauchy)?;
                    poly(perms.iter().fold(MultiPoly::zero(), |acc, p| acc + weight_rho_q(p)))
                },
                |c| poly(hat_c_rho_q(c.n, c.ku())),
            ),
        },
        Identity {
            id: "poly-cauchy-count",
            convention: "stripped",
            status: Status::Required,
            lhs_route: "brute-force count of poly-Cauchy permutations",
            rhs_route: "explicit hat_c",
            quick: ENUM,
            full: ENUM_FULL,
            sides: eq(|c| brute_count(c, is_poly_cauchy), |c| int(hat_c(c.n, c.ku()))),
        },
        Identity {
            id: "constructive-count",
            convention: "stripped",
            status: Status::Required,
            lhs_route: "cycles plus blue placement words",
            rhs_route: "closed formula",
            quick: ENUM,
            full: ENUM_FULL,
            sides: eq(
                |c| int(BigInt::from(generate_constructive(c.n, c.ku())?.len())),
                |c| int(closed_hat(c.n, c.ku())),
            ),
        },
        Identity {
            id: "augmented-count",
            convention: "stripped",
            status: Status::Required,
            lhs_route: "enumerated augmented permutations",
            rhs_route: "explicit shifted sum",
            quick: ENUM.alpha(1, 4),
            full: ENUM.alpha(1, 5),
            sides: eq(
                |c| int(BigInt::from(enumerate_augmented(c.n, c.ku(), alpha(c))?.len())),
                |c| int(hat_c_shifted(c.n, c.ku(), alpha(c))?),
            ),
        },
        Identity {
            id: "restricted-count",
            convention: "stripped",
            status: Status::Required,
            lhs_route: "brute-force count with every cycle of length at most the bound",
            rhs_route: "restricted Stirling-1 sum",
            quick: ENUM.bound(1, 3),
            full: ENUM_FULL.bound(1, 4),
            sides: eq(
                |c| {
                    let b = bound(c);
                    brute_count(c, |p| is_poly_cauchy(p) && cycle_size_filter(p, BoundMode::AtMost, b))
                },
                |c| int(hat_c_restricted(c.n, c.ku(), bound(c))),
            ),
        },
        Identity {
            id: "associated-count",
            convention: "stripped",
            status: Status::Required,
            lhs_route: "brute-force count with every cycle of length at least the bound",
            rhs_route: "associated Stirling-1 sum",
            quick: ENUM.bound(1, 3),
            full: ENUM_FULL.bound(1, 4),
            sides: eq(
                |c| {
                    let b = bound(c);
                    brute_count(c, |p| is_poly_cauchy(p) && cycle_size_filter(p, BoundMode::AtLeast, b))
                },
                |c| int(hat_c_associated(c.n, c.ku(), bound(c))),
            ),
        },
        Identity {
            id: "callan-count",
            convention: "poly-Bernoulli at -k",
            status: Status::Required,
            lhs_route: "brute-force count of Callan permutations",
            rhs_route: "explicit poly-Bernoulli sum",
            quick: ENUM,
            full: ENUM_FULL,
            sides: eq(|c| brute_count(c, is_callan), |c| int(poly_bernoulli(c.n, c.ku()))),
        },
        Identity {
            id: "first-second-relation",
            convention: "both kinds at index k, rational values",
            status: Status::Required,
            lhs_route: "(-1)^n c_n^k / n! from the first-kind sum",
            rhs_route: "binomial sum of second-kind values over m!",
            quick: ParamBox::nk(6, 3).n_from(1).k_from(-3),
            full: ParamBox::nk(8, 5).n_from(1).k_from(-5),
            sides: eq_checked(
                |c| {
                    let v = signed(poly_cauchy_first(c.n, c.k), c.n) / BigRational::from_integer(factorial(c.n));
                    Ok(ExactValue::Rational(v))
                },
                |c| {
                    let n = c.n;
                    let total: BigRational = (1..=n)
                        .map(|m| poly_cauchy_second(m, c.k) * BigRational::new(binomial(n - 1, m - 1), factorial(m)))
                        .sum();
                    Ok(ExactValue::Rational(total))
                },
                first_kind_integral,
            ),
        },
        Identity {
            id: "q-mu-shifted",
            convention: "signed",
            status: Status::Required,
            lhs_route: "explicit signed shifted sum",
            rhs_route: "Q_mu(n, alpha) times closed-form signed hat_c",
            quick: INT.alpha(1, 4),
            full: INT_FULL.alpha(1, 5),
            sides: eq(
                |c| int(poly_cauchy_shifted_signed(c.n, c.ku(), alpha(c))?),
                |c| {
                    let (n, k, a) = (c.n, c.ku(), alpha(c));
                    let mut total = BigInt::zero();
                    for mu in 0..a {
                        let q: BigInt =
                            (0..a - mu).map(|i| binomial(a - 1, i) * stirling2(a - i - 1, mu) * pow(n, i)).sum();
                        total += q * signed(closed_hat(n + mu, k), n + mu);
                    }
                    int(neg_pow(a - 1) * total)
                },
            ),
        },
        Identity {
            id: "annihilation",
            convention: "literal reading first, then sign and range variants",
            status: Status::Probe,
            lhs_route: "r-Stirling-2 weighted sum of explicit hat_c",
            rhs_route: "0",
            quick: ParamBox::nk(6, 6).k_le_n(),
            full: ParamBox::nk(8, 8).k_le_n(),
            sides: Sides::Vanishing { variants: ANNIHILATION_VARIANTS },
        },
    ]
}

/// Every identity, in registry order.
pub fn catalog() -> &'static [Identity] {
    static CATALOG: OnceLock<Vec<Identity>> = OnceLock::new();
    CATALOG.get_or_init(build)
}
