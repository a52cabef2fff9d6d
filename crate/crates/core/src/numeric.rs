//! Exact scalar arithmetic: arbitrary-precision rationals, integer powers,
//! q-brackets, binomial coefficients, factorials, and enumeration of
//! ordered compositions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::error::Error;

/// The scalar type used throughout the crate: an exact rational number,
/// always kept in lowest terms with a positive denominator. Its `Display`
/// form is `n/d`, or just `n` when the denominator is 1, and `parse`
/// accepts the same shape.
pub type Rational = BigRational;

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// The fraction `n/d`. Panics when `d == 0`; use [`parse_rational`] for
/// untrusted input.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses a rational from its text form: an optionally signed decimal
/// integer, optionally followed by `/` and a decimal denominator.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    text.parse::<Rational>().map_err(|e| Error::Parse {
        pos: 0,
        msg: format!("invalid rational `{text}`: {e}"),
    })
}

/// `base^exp` for a nonnegative exponent. Total; `0^0 = 1`.
pub fn pow(base: &Rational, exp: u32) -> Rational {
    Pow::pow(base.clone(), exp)
}

/// `base^exp` for any integer exponent. The only failure is a zero base
/// with a negative exponent.
pub fn pow_signed(base: &Rational, exp: i64) -> Result<Rational, Error> {
    if exp < 0 && base.is_zero() {
        return Err(Error::ZeroToNegativePower);
    }
    Ok(Pow::pow(base.clone(), exp))
}

/// The q-bracket `[a]_q = (1 - q^a) / (1 - q)`, extended by continuity to
/// `[a]_1 = a`. Defined for every integer `a` when `q` is neither 0 nor 1,
/// and for `a >= 0` when `q = 0`.
pub fn qbracket(a: i64, q: &Rational) -> Result<Rational, Error> {
    if q.is_one() {
        return Ok(int(a));
    }
    let qa = pow_signed(q, a)?;
    let one = Rational::one();
    Ok((&one - &qa) / (&one - q))
}

/// Binomial coefficient `C(n, k)`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 1..=k {
        // Exact at every step: acc holds C(n - k + i, i).
        acc = acc * BigInt::from(n - k + i) / BigInt::from(i);
    }
    Rational::from_integer(acc)
}

/// `n!` as a rational.
pub fn factorial(n: u64) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    Rational::from_integer(acc)
}

/// All ordered tuples of `parts` positive integers summing to `total`, in
/// lexicographic order. With `parts == 0` the result is the single empty
/// tuple when `total == 0`, and empty otherwise.
pub fn compositions(total: u64, parts: usize) -> Vec<Vec<u64>> {
    fn rec(remaining: u64, parts_left: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if parts_left == 0 {
            if remaining == 0 {
                out.push(cur.clone());
            }
            return;
        }
        // Every remaining part needs at least 1.
        let reserve = parts_left as u64 - 1;
        if remaining <= reserve {
            return;
        }
        for v in 1..=remaining - reserve {
            cur.push(v);
            rec(remaining - v, parts_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, parts, &mut Vec::with_capacity(parts), &mut out);
    out
}
