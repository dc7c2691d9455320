//! Exact scalar arithmetic: arbitrary-precision integers and rationals.
//!
//! Every scalar in this crate is either a [`Int`] or a [`Rat`]; there is no
//! floating point anywhere. Rationals are kept in lowest terms with a
//! positive denominator by `num-rational` itself.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

pub type Int = BigInt;
pub type Rat = num_rational::BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(v: i64) -> Rat {
    Rat::from_integer(int(v))
}

pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(int(p), int(q))
}

/// Parses `"p/q"` or `"p"` (optionally signed) into a rational.
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let s = s.trim();
    let mk_err = || Error::InvalidInput(format!("cannot parse rational from {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: Int = p.trim().parse().map_err(|_| mk_err())?;
            let q: Int = q.trim().parse().map_err(|_| mk_err())?;
            if q.is_zero() {
                return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(p, q))
        }
        None => {
            let p: Int = s.parse().map_err(|_| mk_err())?;
            Ok(Rat::from_integer(p))
        }
    }
}

/// Renders a rational as `"p/q"`, or just `"p"` when the denominator is 1.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn factorial(k: u64) -> Int {
    let mut acc = Int::one();
    for i in 2..=k {
        acc *= Int::from(i);
    }
    acc
}

/// Integer binomial coefficient with the convention `C(a, b) = 0` for `b > a`.
pub fn binomial(a: u64, b: u64) -> Int {
    if b > a {
        return Int::zero();
    }
    let b = b.min(a - b);
    let mut acc = Int::one();
    for i in 0..b {
        acc = acc * Int::from(a - i) / Int::from(i + 1);
    }
    acc
}

/// Binomial coefficient for an arbitrary integer upper argument,
/// `C(d, k) = d(d-1)...(d-k+1)/k!`.
pub fn binomial_int(d: &Int, k: u64) -> Int {
    let mut num = Int::one();
    for i in 0..k {
        num *= d - Int::from(i);
    }
    num / factorial(k)
}

/// Generalized binomial coefficient for a rational upper argument.
pub fn binomial_rat(d: &Rat, k: u64) -> Rat {
    let mut num = Rat::one();
    for i in 0..k {
        num *= d - rat(i as i64);
    }
    num / Rat::from_integer(factorial(k))
}

/// `base^exp` with the convention `0^0 = 1`.
pub fn int_pow(base: &Int, exp: u64) -> Int {
    if exp == 0 {
        return Int::one();
    }
    let mut acc = Int::one();
    let mut sq = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc = &acc * &sq;
        }
        e >>= 1;
        if e > 0 {
            sq = &sq * &sq;
        }
    }
    acc
}

/// `base^exp` with the convention `0^0 = 1`.
pub fn rat_pow(base: &Rat, exp: u64) -> Rat {
    if exp == 0 {
        return Rat::one();
    }
    Rat::new(
        int_pow(base.numer(), exp),
        int_pow(base.denom(), exp),
    )
}

/// Least common multiple of two integers, always nonnegative.
pub fn lcm(a: &Int, b: &Int) -> Int {
    if a.is_zero() || b.is_zero() {
        return Int::zero();
    }
    (a * b / gcd(a, b)).abs()
}

pub fn gcd(a: &Int, b: &Int) -> Int {
    let mut a = a.abs();
    let mut b = b.abs();
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

/// Smallest integer `>= r`.
pub fn ceil_rat(r: &Rat) -> Int {
    r.ceil().to_integer()
}

pub fn to_i64(v: &Int) -> Option<i64> {
    v.to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3/4", "-2/5", "7", "0", "-11"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
        assert_eq!(format_rat(&parse_rat("4/8").unwrap()), "1/2");
        assert_eq!(format_rat(&parse_rat("3/-4").unwrap()), "-3/4");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn binomial_conventions() {
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(binomial(3, 7), int(0));
        assert_eq!(binomial(0, 0), int(1));
        assert_eq!(binomial_int(&int(-1), 2), int(1));
        assert_eq!(binomial_rat(&ratio(1, 2), 2), ratio(-1, 8));
    }

    #[test]
    fn zero_pow_zero_is_one() {
        assert_eq!(int_pow(&int(0), 0), int(1));
        assert_eq!(rat_pow(&rat(0), 0), rat(1));
        assert_eq!(int_pow(&int(-2), 3), int(-8));
    }
}
