//! Exact rational and big-integer primitives shared by every other module.
//!
//! All fractional quantities in the library (fractional parts, coordinate
//! sums, minimal log-discrepancies, factorial ratios) are `Rational` values,
//! stored reduced with a positive denominator, so equality is structural and
//! values hash/dedup cleanly.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always reduced, denominator always positive.
pub type Rational = num_rational::BigRational;

/// Build a rational from machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Fractional part `{q} = q - floor(q)`, in `[0, 1)`.
pub fn frac(q: &Rational) -> Rational {
    q - q.floor()
}

/// Upper fractional part: `{q}` when `q` is not an integer, `1` when it is.
/// Satisfies `upper_frac(q) = 1 - frac(-q)` for all `q`.
pub fn upper_frac(q: &Rational) -> Rational {
    if q.is_integer() {
        Rational::one()
    } else {
        frac(q)
    }
}

/// Render a rational as `"p/q"`, omitting the denominator when it is 1.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parse `"p/q"` or `"p"` into a reduced rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::InvalidInput(format!("cannot parse rational {text:?}"));
    match text.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num.trim().parse().map_err(|_| bad())?;
            let den: BigInt = den.trim().parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(Error::InvalidInput(format!("zero denominator in {text:?}")));
            }
            Ok(Rational::new(num, den))
        }
        None => {
            let num: BigInt = text.trim().parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(num))
        }
    }
}

/// A linear form with nonnegative integer coefficients, evaluated over
/// rational points. At least one coefficient must be positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm {
    coeffs: Vec<u64>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<u64>) -> Result<Self> {
        if coeffs.is_empty() || coeffs.iter().all(|&c| c == 0) {
            return Err(Error::InvalidInput(
                "linear form needs at least one positive coefficient".into(),
            ));
        }
        Ok(LinearForm { coeffs })
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, x: &[Rational]) -> Result<Rational> {
        if x.len() != self.coeffs.len() {
            return Err(Error::DimensionMismatch {
                expected: self.coeffs.len(),
                got: x.len(),
            });
        }
        let mut acc = Rational::zero();
        for (&c, xi) in self.coeffs.iter().zip(x) {
            if c != 0 {
                acc += xi * Rational::from_integer(BigInt::from(c));
            }
        }
        Ok(acc)
    }

    /// Evaluation at an integer point, exact in `i128`.
    pub fn eval_int(&self, x: &[i64]) -> Result<i128> {
        if x.len() != self.coeffs.len() {
            return Err(Error::DimensionMismatch {
                expected: self.coeffs.len(),
                got: x.len(),
            });
        }
        Ok(self
            .coeffs
            .iter()
            .zip(x)
            .map(|(&c, &xi)| c as i128 * xi as i128)
            .sum())
    }

    /// Sum of the coefficients, i.e. the value at (1, ..., 1).
    pub fn coeff_sum(&self) -> u64 {
        self.coeffs.iter().sum()
    }
}

impl std::fmt::Display for LinearForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Exact evaluation of a linear form, the free-function spelling.
pub fn eval_form(form: &LinearForm, x: &[Rational]) -> Result<Rational> {
    form.eval(x)
}

/// Incremental factorial table. Arguments at desk scale stay in the low
/// thousands, so an iterative product memoized up to the largest argument
/// seen is enough.
#[derive(Debug, Default)]
pub struct FactorialTable {
    values: Vec<BigUint>,
}

impl FactorialTable {
    pub fn new() -> Self {
        FactorialTable {
            values: vec![BigUint::one()],
        }
    }

    pub fn get(&mut self, n: u64) -> &BigUint {
        let n = n as usize;
        while self.values.len() <= n {
            let k = self.values.len();
            let next = self.values.last().unwrap() * BigUint::from(k);
            self.values.push(next);
        }
        &self.values[n]
    }
}

/// floor of a rational as a BigInt.
pub fn floor_bigint(q: &Rational) -> BigInt {
    q.floor().to_integer()
}

/// gcd over a slice, 0 for an empty slice.
pub fn gcd_all(values: impl IntoIterator<Item = u64>) -> u64 {
    values.into_iter().fold(0u64, |g, v| g.gcd(&v))
}

/// lcm over a slice with overflow detection.
pub fn lcm_all(values: impl IntoIterator<Item = u64>) -> Result<u64> {
    let mut acc: u64 = 1;
    for v in values {
        if v == 0 {
            return Err(Error::InvalidInput("lcm of zero".into()));
        }
        let g = acc.gcd(&v);
        acc = (acc / g)
            .checked_mul(v)
            .ok_or_else(|| Error::InvalidInput("lcm overflow".into()))?;
    }
    Ok(acc)
}
