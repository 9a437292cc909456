//! Exact scalar types: arbitrary-precision rationals and Gaussian rationals.

use num::complex::Complex;
use num::{BigInt, BigRational, One, Signed, Zero};

/// Arbitrary-precision rational number, always stored reduced with a
/// positive denominator.
pub type Rat = BigRational;

/// Complex number with rational real and imaginary parts.
pub type Gaussian = Complex<Rat>;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn gauss(re: Rat, im: Rat) -> Gaussian {
    Complex::new(re, im)
}

pub fn gauss_i64(re: i64, im: i64) -> Gaussian {
    Complex::new(rat(re), rat(im))
}

pub fn g_one() -> Gaussian {
    Complex::new(Rat::one(), Rat::zero())
}

pub fn g_i() -> Gaussian {
    Complex::new(Rat::zero(), Rat::one())
}

pub fn g_zero() -> Gaussian {
    Complex::new(Rat::zero(), Rat::zero())
}

/// Fourth roots of unity, indexed by the exponent of i. Every exactly
/// representable rotation multiplier is one of these.
pub fn i_power(e: u8) -> Gaussian {
    match e % 4 {
        0 => g_one(),
        1 => g_i(),
        2 => -g_one(),
        _ => -g_i(),
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    // Split into integer part plus remainder so huge numerators keep
    // full double precision.
    let (num, den) = (r.numer(), r.denom());
    let (q, rem) = (num / den, num % den);
    let q_f = bigint_to_f64(&q);
    let rem_f = bigint_to_f64(&rem) / bigint_to_f64(den);
    q_f + rem_f
}

fn bigint_to_f64(b: &BigInt) -> f64 {
    // BigInt -> f64 via string is exact enough for our coefficient sizes;
    // num's ToPrimitive handles it directly.
    use num::ToPrimitive;
    b.to_f64().unwrap_or(if b.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

/// Renders a rational as `p/q` (or `p` when the denominator is 1).
pub fn rat_string(r: &Rat) -> String {
    r.to_string()
}
