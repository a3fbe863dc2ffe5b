//! Scalar abstraction shared by the exact-arithmetic modules.
//!
//! Everything numeric in this crate is generic over an integer type `I`
//! implementing [`Int`]; rationals are `Ratio<I>`. `BigInt` is the default
//! instantiation (see the aliases at the crate root), while `i64`/`i128`
//! work for small inputs where overflow is not a concern.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::{Integer, Roots};
use num_rational::Ratio;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Exact signed integer scalar.
pub trait Int:
    Integer + Roots + Signed + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    fn from_i64(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("i64 fits every Int scalar")
    }
}

impl<T> Int for T where
    T: Integer
        + Roots
        + Signed
        + Clone
        + Debug
        + Display
        + Hash
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

pub type Rat<I> = Ratio<I>;

pub fn int<I: Int>(v: i64) -> I {
    <I as Int>::from_i64(v)
}

pub fn rat<I: Int>(num: i64, den: i64) -> Rat<I> {
    Ratio::new(int(num), int(den))
}

/// Serialize a rational as `num/den` (denominator always present).
pub fn rat_to_string<I: Int>(r: &Rat<I>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Human form: `3` for integers, `-1/2` otherwise.
pub fn rat_display<I: Int>(r: &Rat<I>) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        rat_to_string(r)
    }
}

/// Parse `n`, `-n` or `n/d` into a reduced rational.
pub fn parse_rat<I: Int>(s: &str) -> Option<Rat<I>> {
    let s = s.trim();
    let parse_int = |t: &str| I::from_str_radix(t.trim(), 10).ok();
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return None;
            }
            Some(Ratio::new(parse_int(n)?, d))
        }
        None => Some(Ratio::from_integer(parse_int(s)?)),
    }
}

pub fn parse_int<I: Int>(s: &str) -> Option<I> {
    I::from_str_radix(s.trim(), 10).ok()
}

/// Exact integer square root, `None` when `n` is negative or not a square.
pub fn exact_sqrt<I: Int>(n: &I) -> Option<I> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if (r.clone() * r.clone()) == *n {
        Some(r)
    } else {
        None
    }
}

pub fn is_prime<I: Int>(n: &I) -> bool {
    let two = int::<I>(2);
    if n < &two {
        return false;
    }
    let mut k = two;
    while k.clone() * k.clone() <= *n {
        if n.is_multiple_of(&k) {
            return false;
        }
        k = k + I::one();
    }
    true
}

pub fn is_squarefree<I: Int>(n: &I) -> bool {
    let n = n.abs();
    if n.is_zero() {
        return false;
    }
    let mut k = int::<I>(2);
    while k.clone() * k.clone() <= n {
        if n.is_multiple_of(&(k.clone() * k.clone())) {
            return false;
        }
        k = k + I::one();
    }
    true
}
