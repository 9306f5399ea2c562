//! Rational interval arithmetic with certified bounds.
//!
//! Used only to disambiguate signs and detect orders of roots of unity; every
//! consumer confirms its conclusion by an exact symbolic computation, so the
//! intervals here need to be correct but not tight. Bounds are exact
//! rationals; the only error sources are explicit Taylor remainders, which
//! are added to the interval width.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A closed interval `[lo, hi]` with rational endpoints.
#[derive(Clone, Debug)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn point(v: BigRational) -> Self {
        Interval { lo: v.clone(), hi: v }
    }

    pub fn from_int(v: &BigInt) -> Self {
        Interval::point(BigRational::from_integer(v.clone()))
    }

    pub fn zero() -> Self {
        Interval::point(BigRational::zero())
    }

    /// Midpoint-and-radius constructor.
    pub fn ball(mid: BigRational, rad: BigRational) -> Self {
        debug_assert!(!rad.is_negative());
        Interval {
            lo: &mid - &rad,
            hi: mid + rad,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Interval {
            lo: &self.lo - &other.hi,
            hi: &self.hi - &other.lo,
        }
    }

    pub fn neg(&self) -> Self {
        Interval {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let candidates = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = candidates.iter().min().unwrap().clone();
        let hi = candidates.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        self.mul(&Interval::from_int(c))
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }
}

/// Complex interval: a rectangle in the complex plane.
#[derive(Clone, Debug)]
pub struct CInterval {
    pub re: Interval,
    pub im: Interval,
}

impl CInterval {
    pub fn zero() -> Self {
        CInterval {
            re: Interval::zero(),
            im: Interval::zero(),
        }
    }

    pub fn real(re: Interval) -> Self {
        CInterval {
            re,
            im: Interval::zero(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        CInterval {
            re: self.re.add(&other.re),
            im: self.im.add(&other.im),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        CInterval {
            re: self.re.mul(&other.re).sub(&self.im.mul(&other.im)),
            im: self.re.mul(&other.im).add(&self.im.mul(&other.re)),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        CInterval {
            re: self.re.scale(c),
            im: self.im.scale(c),
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }
}

fn pow2(bits: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2u32) << bits.saturating_sub(1))
}

/// `arctan(1/x)` for integer `x >= 2` with truncation error below `2^-bits`.
fn atan_inv(x: u64, bits: u32) -> Interval {
    let x2 = BigRational::from_integer(BigInt::from(x * x));
    let mut term = BigRational::new(BigInt::one(), BigInt::from(x));
    let mut sum = BigRational::zero();
    let tol = pow2(bits + 2);
    let mut k = 0u64;
    loop {
        let contrib = &term / BigRational::from_integer(BigInt::from(2 * k + 1));
        if contrib < tol {
            // alternating series with decreasing terms: remainder below `contrib`
            return Interval::ball(sum, contrib);
        }
        if k % 2 == 0 {
            sum += &contrib;
        } else {
            sum -= &contrib;
        }
        term /= &x2;
        k += 1;
    }
}

/// `pi` with width below roughly `2^-bits` (Machin's formula).
pub fn pi(bits: u32) -> Interval {
    let a = atan_inv(5, bits + 6);
    let b = atan_inv(239, bits + 6);
    a.scale(&BigInt::from(16)).sub(&b.scale(&BigInt::from(4)))
}

/// Taylor evaluation of cos/sin at a rational point `x` in `[0, pi/4]`,
/// with the truncation remainder folded into the interval.
fn cos_sin_taylor(x: &BigRational, bits: u32) -> (Interval, Interval) {
    let tol = pow2(bits + 2);
    let x2 = x * x;

    let mut cos_sum = BigRational::zero();
    let mut term = BigRational::one();
    let mut k = 0u64;
    let cos = loop {
        if term.abs() < tol {
            break Interval::ball(cos_sum, term.abs());
        }
        if k % 2 == 0 {
            cos_sum += &term;
        } else {
            cos_sum -= &term;
        }
        term = &term * &x2
            / BigRational::from_integer(BigInt::from((2 * k + 1) * (2 * k + 2)));
        k += 1;
    };

    let mut sin_sum = BigRational::zero();
    let mut term = x.clone();
    let mut k = 0u64;
    let sin = loop {
        if term.abs() < tol {
            break Interval::ball(sin_sum, term.abs());
        }
        if k % 2 == 0 {
            sin_sum += &term;
        } else {
            sin_sum -= &term;
        }
        term = &term * &x2
            / BigRational::from_integer(BigInt::from((2 * k + 2) * (2 * k + 3)));
        k += 1;
    };

    (cos, sin)
}

/// `(cos(2 pi t), sin(2 pi t))` for rational `t`, certified.
pub fn cos_sin_2pi(t: &BigRational, bits: u32) -> (Interval, Interval) {
    // reduce t to [0, 1)
    let t = t - t.floor();

    // exact values at the quadrant boundaries
    let one = || Interval::point(BigRational::one());
    let zero = Interval::zero;
    if t.is_zero() {
        return (one(), zero());
    }
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    if t == quarter {
        return (zero(), one());
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    if t == half {
        return (one().neg(), zero());
    }
    if t == &quarter * BigRational::from_integer(BigInt::from(3)) {
        return (zero(), one().neg());
    }

    // quadrant symmetries down to [0, 1/8]
    let eighth = BigRational::new(BigInt::one(), BigInt::from(8));
    if t > half {
        let (c, s) = cos_sin_2pi(&(BigRational::one() - t), bits);
        return (c, s.neg());
    }
    if t > quarter {
        let (c, s) = cos_sin_2pi(&(half - t), bits);
        return (c.neg(), s);
    }
    if t > eighth {
        let (c, s) = cos_sin_2pi(&(quarter - t), bits);
        return (s, c);
    }

    // x = 2 pi t in [0, pi/4]; evaluate at the midpoint of the pi interval
    // and widen by the interval width (|cos'|, |sin'| <= 1).
    let pi_i = pi(bits + 4);
    let two_t = BigRational::from_integer(BigInt::from(2)) * &t;
    let x_lo = &pi_i.lo * &two_t;
    let x_hi = &pi_i.hi * &two_t;
    let mid = (&x_lo + &x_hi) / BigRational::from_integer(BigInt::from(2));
    let slack = (&x_hi - &x_lo) / BigRational::from_integer(BigInt::from(2));

    let (c, s) = cos_sin_taylor(&mid, bits);
    let widen = |i: Interval| Interval {
        lo: &i.lo - &slack,
        hi: &i.hi + &slack,
    };
    (widen(c), widen(s))
}

/// Certified enclosure of `sqrt(n)` for a nonnegative integer.
pub fn sqrt_int(n: &BigUint, bits: u32) -> Interval {
    let scaled = n * (BigUint::one() << (2 * bits));
    let s = scaled.sqrt();
    let lo = BigRational::new(BigInt::from(s.clone()), BigInt::from(BigUint::one() << bits));
    let hi = BigRational::new(
        BigInt::from(s + BigUint::one()),
        BigInt::from(BigUint::one() << bits),
    );
    debug_assert!(&lo * &lo <= BigRational::from_integer(BigInt::from(n.clone())));
    debug_assert!(&hi * &hi >= BigRational::from_integer(BigInt::from(n.clone())));
    Interval { lo, hi }
}

/// Runs `eval` at doubling precision until the interval excludes zero and
/// reports the sign: `1` (positive) or `-1` (negative).
///
/// Panics if the sign is still ambiguous at 16384 bits; callers only invoke
/// this on values that are provably nonzero.
pub fn certified_sign<F: Fn(u32) -> Interval>(eval: F) -> i32 {
    let mut bits = 64u32;
    while bits <= 16384 {
        let i = eval(bits);
        if i.is_positive() {
            return 1;
        }
        if i.is_negative() {
            return -1;
        }
        bits *= 2;
    }
    panic!("interval sign undecidable at 16384 bits; value may be zero");
}

#[cfg(test)]
mod tests {
    use super::*;

    fn approx(i: &Interval) -> f64 {
        let lo = i.lo.numer().to_string().parse::<f64>().unwrap()
            / i.lo.denom().to_string().parse::<f64>().unwrap();
        lo
    }

    #[test]
    fn pi_value() {
        let p = pi(80);
        assert!(p.width() < pow2(78));
        let v = approx(&p);
        assert!((v - std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn cos_sin_special_angles() {
        for (num, den, c_expect, s_expect) in [
            (0i64, 1i64, 1.0, 0.0),
            (1, 4, 0.0, 1.0),
            (1, 2, -1.0, 0.0),
            (3, 4, 0.0, -1.0),
            (1, 8, std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2),
            (1, 6, 0.5, 0.866_025_403_784_438_6),
            (1, 3, -0.5, 0.866_025_403_784_438_6),
        ] {
            let t = BigRational::new(BigInt::from(num), BigInt::from(den));
            let (c, s) = cos_sin_2pi(&t, 64);
            assert!((approx(&c) - c_expect).abs() < 1e-9, "cos(2pi*{num}/{den})");
            assert!((approx(&s) - s_expect).abs() < 1e-9, "sin(2pi*{num}/{den})");
            assert!(c.width() < pow2(60));
        }
    }

    #[test]
    fn sqrt_enclosure() {
        for n in [2u32, 3, 5, 7, 49] {
            let i = sqrt_int(&BigUint::from(n), 100);
            let sq_lo = &i.lo * &i.lo;
            let sq_hi = &i.hi * &i.hi;
            let nn = BigRational::from_integer(BigInt::from(n));
            assert!(sq_lo <= nn && nn <= sq_hi);
            assert!(i.width() < pow2(98));
        }
    }

    #[test]
    fn certified_sign_finds_small_values() {
        // sign of cos(2 pi / 5) - 0.3 (cos 72 deg = 0.309...)
        let s = certified_sign(|bits| {
            let t = BigRational::new(BigInt::one(), BigInt::from(5));
            let (c, _) = cos_sin_2pi(&t, bits);
            c.sub(&Interval::point(BigRational::new(
                BigInt::from(3),
                BigInt::from(10),
            )))
        });
        assert_eq!(s, 1);
    }
}
