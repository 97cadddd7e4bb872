//! Poly-Cauchy and poly-Bernoulli numbers and polynomials.
//!
//! Two sign conventions are in play. The *stripped* values `ĉ_{n,k}` are the
//! non-negative counts; the *signed* values are `ĉ_n^(-k) = (-1)^n ĉ_{n,k}`.
//! [`signed`] converts between them.

use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact_math::{ExactValue, Monomial, MultiPoly, Symbol};
use crate::special_numbers::{
    associated_stirling1, binomial, factorial, q_integer_pow, restricted_stirling1, stirling1, stirling2,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("shift parameter alpha must be at least 1 (got {0})")]
    AlphaTooSmall(usize),
    #[error("{family} requires parameter `{param}`")]
    MissingParameter { family: &'static str, param: &'static str },
    #[error("{family} is defined for k >= 0 only (got {k})")]
    NegativeK { family: &'static str, k: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SignedConvention {
    Stripped,
    Signed,
}

impl SignedConvention {
    pub fn name(self) -> &'static str {
        match self {
            SignedConvention::Stripped => "stripped",
            SignedConvention::Signed => "signed",
        }
    }
}

fn pow_int(base: usize, exp: usize) -> BigInt {
    num_traits::pow(BigInt::from(base), exp)
}

fn parity_sign<T: Neg<Output = T>>(v: T, n: usize) -> T {
    if n.is_multiple_of(2) {
        v
    } else {
        -v
    }
}

/// Multiplies by `(-1)^n`, turning a stripped value into the signed one (and
/// back).
pub fn signed<T: Neg<Output = T>>(value: T, n: usize) -> T {
    parity_sign(value, n)
}

/// `ĉ_{n,k} = sum_m [n m] (m+1)^k`.
pub fn hat_c(n: usize, k: usize) -> BigInt {
    (0..=n).map(|m| stirling1(n, m) * pow_int(m + 1, k)).sum()
}

/// `(m+1)^k` as a rational for any integer `k`.
fn rational_pow(base: usize, k: i64) -> BigRational {
    let b = BigRational::from_integer(BigInt::from(base));
    if k >= 0 {
        num_traits::pow(b, k as usize)
    } else {
        num_traits::pow(b.recip(), k.unsigned_abs() as usize)
    }
}

/// Poly-Cauchy number of the second kind, `ĉ_n^(k) = (-1)^n sum_m [n m] / (m+1)^k`.
pub fn poly_cauchy_second(n: usize, k: i64) -> BigRational {
    let sum: BigRational = (0..=n).map(|m| BigRational::from_integer(stirling1(n, m)) / rational_pow(m + 1, k)).sum();
    parity_sign(sum, n)
}

/// Poly-Cauchy number of the first kind, `c_n^(k) = (-1)^n sum_m [n m] (-1)^m / (m+1)^k`.
pub fn poly_cauchy_first(n: usize, k: i64) -> BigRational {
    let sum: BigRational =
        (0..=n).map(|m| parity_sign(BigRational::from_integer(stirling1(n, m)), m) / rational_pow(m + 1, k)).sum();
    parity_sign(sum, n)
}

/// `B_n^(-k) = sum_m m! {n m} (-1)^(n+m) (m+1)^k`.
pub fn poly_bernoulli(n: usize, k: usize) -> BigInt {
    (0..=n).map(|m| parity_sign(factorial(m) * stirling2(n, m) * pow_int(m + 1, k), n + m)).sum()
}

/// `ĉ_{n,k,α} = sum_m [n m] (m+α)^k`.
pub fn hat_c_shifted(n: usize, k: usize, alpha: usize) -> Result<BigInt, SequenceError> {
    if alpha < 1 {
        return Err(SequenceError::AlphaTooSmall(alpha));
    }
    Ok((0..=n).map(|m| stirling1(n, m) * pow_int(m + alpha, k)).sum())
}

/// Signed shifted number `ĉ_{n,α}^(-k) = (-1)^n ĉ_{n,k,α}`.
pub fn poly_cauchy_shifted_signed(n: usize, k: usize, alpha: usize) -> Result<BigInt, SequenceError> {
    hat_c_shifted(n, k, alpha).map(|v| signed(v, n))
}

/// Cycle lengths at most `bound`.
pub fn hat_c_restricted(n: usize, k: usize, bound: usize) -> BigInt {
    (0..=n).map(|i| restricted_stirling1(n, i, bound) * pow_int(i + 1, k)).sum()
}

/// Cycle lengths at least `bound`.
pub fn hat_c_associated(n: usize, k: usize, bound: usize) -> BigInt {
    (0..=n).map(|i| associated_stirling1(n, i, bound) * pow_int(i + 1, k)).sum()
}

/// `ĉ_{n,k}(z) = sum_m [n m] sum_i C(m,i) (-1)^i (m-i+1)^k z^i`.
pub fn hat_c_poly_z(n: usize, k: usize) -> MultiPoly {
    let mut coeffs = vec![BigInt::zero(); n + 1];
    for m in 0..=n {
        let s = stirling1(n, m);
        if s.is_zero() {
            continue;
        }
        for (i, slot) in coeffs.iter_mut().enumerate().take(m + 1) {
            let term = &s * binomial(m, i) * pow_int(m - i + 1, k);
            *slot += parity_sign(term, i);
        }
    }
    MultiPoly::from_terms(coeffs.into_iter().enumerate().map(|(i, c)| (c, Monomial::var(Symbol::Z, i as u32))))
}

/// `ĉ_{n,k}(q) = sum_m [n m] q^(n-m) (m+1)^k`.
pub fn hat_c_poly_q(n: usize, k: usize) -> MultiPoly {
    MultiPoly::from_terms(
        (0..=n).map(|m| (stirling1(n, m) * pow_int(m + 1, k), Monomial::var(Symbol::Q, (n - m) as u32))),
    )
}

/// `ĉ_{n,k,ρ,q} = sum_m [n m] ρ^(n-m) [m+1]_q^k`.
pub fn hat_c_rho_q(n: usize, k: usize) -> MultiPoly {
    let mut out = MultiPoly::zero();
    for m in 0..=n {
        let s = stirling1(n, m);
        if s.is_zero() {
            continue;
        }
        let rho = MultiPoly::term(s, Monomial::var(Symbol::Rho, (n - m) as u32));
        out += &rho * &q_integer_pow(m + 1, k);
    }
    out
}

/// Number families exposed as tables and cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SequenceFamily {
    HatC,
    PolyBernoulli,
    Shifted,
    Restricted,
    Associated,
    PolyCauchySecond,
    PolyCauchyFirst,
    PolyZ,
    PolyQ,
    PolyRhoQ,
}

impl SequenceFamily {
    pub fn name(self) -> &'static str {
        match self {
            SequenceFamily::HatC => "hat",
            SequenceFamily::PolyBernoulli => "bernoulli",
            SequenceFamily::Shifted => "shifted",
            SequenceFamily::Restricted => "restricted",
            SequenceFamily::Associated => "associated",
            SequenceFamily::PolyCauchySecond => "cauchy-second",
            SequenceFamily::PolyCauchyFirst => "cauchy-first",
            SequenceFamily::PolyZ => "z",
            SequenceFamily::PolyQ => "q",
            SequenceFamily::PolyRhoQ => "rho-q",
        }
    }
}

/// Extra parameters some families need.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CellParams {
    pub alpha: Option<usize>,
    pub bound: Option<usize>,
}

/// One evaluated entry of a family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceCell {
    pub family: SequenceFamily,
    pub n: usize,
    pub k: i64,
    pub params: CellParams,
    pub value: ExactValue,
}

fn non_negative(family: SequenceFamily, k: i64) -> Result<usize, SequenceError> {
    usize::try_from(k).map_err(|_| SequenceError::NegativeK { family: family.name(), k })
}

fn require(family: SequenceFamily, value: Option<usize>, param: &'static str) -> Result<usize, SequenceError> {
    value.ok_or(SequenceError::MissingParameter { family: family.name(), param })
}

/// Evaluates a single cell of `family`. Rational families accept any `k`;
/// the rest need `k >= 0`.
pub fn evaluate(family: SequenceFamily, n: usize, k: i64, params: CellParams) -> Result<SequenceCell, SequenceError> {
    use SequenceFamily::*;
    let value: ExactValue = match family {
        PolyCauchySecond => poly_cauchy_second(n, k).into(),
        PolyCauchyFirst => poly_cauchy_first(n, k).into(),
        _ => {
            let k = non_negative(family, k)?;
            match family {
                HatC => hat_c(n, k).into(),
                PolyBernoulli => poly_bernoulli(n, k).into(),
                Shifted => hat_c_shifted(n, k, require(family, params.alpha, "alpha")?)?.into(),
                Restricted => hat_c_restricted(n, k, require(family, params.bound, "bound")?).into(),
                Associated => hat_c_associated(n, k, require(family, params.bound, "bound")?).into(),
                PolyZ => hat_c_poly_z(n, k).into(),
                PolyQ => hat_c_poly_q(n, k).into(),
                PolyRhoQ => hat_c_rho_q(n, k).into(),
                PolyCauchySecond | PolyCauchyFirst => unreachable!(),
            }
        }
    };
    Ok(SequenceCell { family, n, k, params, value })
}

/// `true` iff `r` has denominator one.
pub fn is_integral(r: &BigRational) -> bool {
    r.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    const TABLE1: [[i64; 6]; 5] = [
        [1, 1, 1, 1, 1, 1],
        [1, 2, 4, 8, 16, 32],
        [2, 5, 13, 35, 97, 275],
        [6, 17, 51, 161, 531, 1817],
        [24, 74, 244, 854, 3148, 12134],
    ];

    // rows indexed by k, columns by n, as printed
    const TABLE2: [[i64; 6]; 6] = [
        [1, 1, 1, 1, 1, 1],
        [1, 2, 4, 8, 16, 32],
        [1, 4, 14, 46, 146, 454],
        [1, 8, 46, 230, 1066, 4718],
        [1, 16, 146, 1066, 6902, 41506],
        [1, 32, 454, 4718, 41506, 329462],
    ];

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    fn at(sym: Symbol, v: i64) -> BTreeMap<Symbol, BigRational> {
        BTreeMap::from([(sym, BigRational::from_integer(v.into()))])
    }

    #[test]
    fn table1() {
        for (n, row) in TABLE1.iter().enumerate() {
            for (k, &v) in row.iter().enumerate() {
                assert_eq!(hat_c(n, k), int(v), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn table2_and_symmetry() {
        for (k, row) in TABLE2.iter().enumerate() {
            for (n, &v) in row.iter().enumerate() {
                assert_eq!(poly_bernoulli(n, k), int(v), "n={n} k={k}");
                assert_eq!(poly_bernoulli(n, k), poly_bernoulli(k, n));
            }
        }
    }

    #[test]
    fn small_rows() {
        for n in 0..=6 {
            assert_eq!(hat_c(n, 0), factorial(n));
        }
        for k in 0..=8 {
            assert_eq!(hat_c(1, k), pow_int(2, k));
            assert_eq!(hat_c(2, k), pow_int(2, k) + pow_int(3, k));
        }
    }

    #[test]
    fn rational_families() {
        assert_eq!(poly_cauchy_second(2, -1), rat(5, 1));
        for k in -3..=3 {
            assert_eq!(poly_cauchy_second(0, k), rat(1, 1));
            assert_eq!(poly_cauchy_first(0, k), rat(1, 1));
        }
        assert_eq!(poly_cauchy_second(1, 1), rat(-1, 2));
        assert_eq!(poly_cauchy_first(1, 1), rat(1, 2));
        assert_eq!(poly_cauchy_first(2, 1), rat(-1, 6));
        for n in 0..=6 {
            for k in 0..=5 {
                let expected = BigRational::from_integer(signed(hat_c(n, k), n));
                assert_eq!(poly_cauchy_second(n, -(k as i64)), expected);
                assert!(is_integral(&poly_cauchy_first(n, -(k as i64))));
            }
        }
    }

    #[test]
    fn shifted() {
        for n in 0..=4 {
            for k in 0..=4 {
                assert_eq!(hat_c_shifted(n, k, 1).unwrap(), hat_c(n, k));
            }
        }
        assert_eq!(hat_c_shifted(1, 1, 2).unwrap(), int(3));
        for k in 0..=5 {
            for alpha in 1..=4 {
                assert_eq!(hat_c_shifted(0, k, alpha).unwrap(), pow_int(alpha, k));
            }
        }
        assert_eq!(hat_c_shifted(2, 2, 0), Err(SequenceError::AlphaTooSmall(0)));
        assert_eq!(poly_cauchy_shifted_signed(1, 1, 2).unwrap(), int(-3));
    }

    #[test]
    fn incomplete() {
        assert_eq!(hat_c_restricted(3, 1, 2), int(13));
        assert_eq!(hat_c_associated(3, 1, 2), int(4));
        for n in 1..=4 {
            for k in 0..=3 {
                assert_eq!(hat_c_restricted(n, k, n), hat_c(n, k));
            }
        }
    }

    #[test]
    fn z_polynomials() {
        let z = MultiPoly::var(Symbol::Z);
        for k in 0..=5 {
            assert_eq!(hat_c_poly_z(1, k), MultiPoly::constant(pow_int(2, k)) - z.clone());
        }
        assert_eq!(hat_c_poly_z(1, 0), MultiPoly::one() - z.clone());
        for n in 0..=5 {
            for k in 0..=5 {
                let p = hat_c_poly_z(n, k);
                assert!(p.degree_in(Symbol::Z).unwrap_or(0) as usize <= n);
                assert_eq!(p.eval(&at(Symbol::Z, 0)).unwrap(), BigRational::from_integer(hat_c(n, k)));
            }
        }
    }

    #[test]
    fn q_polynomials() {
        let q = MultiPoly::var(Symbol::Q);
        assert_eq!(hat_c_poly_q(2, 2), q.scale(&int(4)) + MultiPoly::constant(9));
        for n in 0..=5 {
            for k in 0..=5 {
                let p = hat_c_poly_q(n, k);
                assert_eq!(p.eval(&at(Symbol::Q, 1)).unwrap(), BigRational::from_integer(hat_c(n, k)));
                assert_eq!(p.eval(&at(Symbol::Q, 0)).unwrap(), BigRational::from_integer(pow_int(n + 1, k)));
                if n >= 1 {
                    assert!((p.degree_in(Symbol::Q).unwrap() as usize) < n);
                }
            }
        }
    }

    #[test]
    fn rho_q_polynomials() {
        assert_eq!(hat_c_rho_q(2, 2).to_string(), "rho*q^2 + 2*rho*q + rho + q^4 + 2*q^3 + 3*q^2 + 2*q + 1");
        let (zero, one) = (BigInt::zero(), BigInt::one());
        for n in 0..=3 {
            for k in 0..=3 {
                let collapsed = hat_c_rho_q(n, k).substitute_linear(Symbol::Q, &zero, &one);
                assert_eq!(collapsed, hat_c_poly_q(n, k).rename(Symbol::Q, Symbol::Rho));
            }
        }
        for k in 0..=5 {
            assert_eq!(hat_c_rho_q(0, k), MultiPoly::one());
        }
    }

    #[test]
    fn sign_conversion() {
        assert_eq!(signed(int(13), 2), int(13));
        assert_eq!(signed(int(2), 1), int(-2));
        let p = MultiPoly::constant(4) - MultiPoly::var(Symbol::Z);
        assert_eq!(signed(p, 1), MultiPoly::var(Symbol::Z) - MultiPoly::constant(4));
    }

    #[test]
    fn evaluate_dispatch() {
        let cell = evaluate(SequenceFamily::HatC, 4, 5, CellParams::default()).unwrap();
        assert_eq!(cell.value, ExactValue::Int(int(12134)));
        let err = evaluate(SequenceFamily::Shifted, 1, 1, CellParams::default()).unwrap_err();
        assert_eq!(err, SequenceError::MissingParameter { family: "shifted", param: "alpha" });
        let neg = evaluate(SequenceFamily::HatC, 1, -1, CellParams::default()).unwrap_err();
        assert!(matches!(neg, SequenceError::NegativeK { .. }));
        let r = evaluate(SequenceFamily::PolyCauchySecond, 1, 1, CellParams::default()).unwrap();
        assert_eq!(r.value.to_string(), "-1/2");
    }
}
