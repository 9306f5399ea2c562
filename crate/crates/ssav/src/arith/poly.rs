//! Dense integer polynomials with arbitrary-precision coefficients.
//!
//! Coefficients are stored in ascending degree order; the representation is
//! canonical (no trailing zeros, empty vector for the zero polynomial).
//! Everything here is exact: divisions are only performed where the
//! remainder is provably representable over the integers.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::arith::num::divisors;
use crate::error::{Error, Result};

/// A univariate polynomial over `Z`, coefficients ascending.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    /// The monomial `c * X^deg`.
    pub fn monomial(c: BigInt, deg: usize) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        coeffs[deg] = c;
        IntPoly { coeffs }
    }

    pub fn x() -> Self {
        IntPoly::monomial(BigInt::one(), 1)
    }

    /// Convenience constructor from machine integers, ascending.
    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `X^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree of a polynomial known to be nonzero.
    pub fn deg(&self) -> usize {
        self.degree().expect("nonzero polynomial")
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map_or(false, |c| c.is_one())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = IntPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigInt::from(i + 1))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Substitutes `X^2` for `X`, i.e. returns `self(X^2)`.
    pub fn compose_x_squared(&self) -> Self {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); 2 * self.coeffs.len() - 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[2 * i] = c.clone();
        }
        IntPoly::new(out)
    }

    /// The even/odd split `f(X) = fe(X^2) + X * fo(X^2)`.
    pub fn even_odd_parts(&self) -> (IntPoly, IntPoly) {
        let even = self.coeffs.iter().step_by(2).cloned().collect();
        let odd = self.coeffs.iter().skip(1).step_by(2).cloned().collect();
        (IntPoly::new(even), IntPoly::new(odd))
    }

    /// Division with remainder by a monic divisor; exact over `Z`.
    pub fn div_rem_monic(&self, divisor: &Self) -> (IntPoly, IntPoly) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let d = divisor.deg();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (IntPoly::zero(), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            let c = std::mem::replace(&mut rem[i], BigInt::zero());
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().take(d).enumerate() {
                rem[i - d + j] -= &c * b;
            }
            quot[i - d] = c;
        }
        rem.truncate(d);
        (IntPoly::new(quot), IntPoly::new(rem))
    }

    /// Exact quotient by a monic divisor; errors if the division leaves a
    /// remainder.
    pub fn div_exact_monic(&self, divisor: &Self) -> Result<IntPoly> {
        let (q, r) = self.div_rem_monic(divisor);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Verification(format!(
                "expected exact division of {self} by {divisor}"
            )))
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_monic() {
            return other.div_rem_monic(self).1.is_zero();
        }
        // Non-monic case via pseudo-division: lc^k * other = q * self + r.
        if self.is_zero() {
            return other.is_zero();
        }
        let (_, r) = other.pseudo_div_rem(self);
        r.is_zero()
    }

    /// Pseudo-division: returns `(q, r)` with `lc(d)^(deg f - deg d + 1) f = q d + r`.
    fn pseudo_div_rem(&self, divisor: &Self) -> (IntPoly, IntPoly) {
        let d = divisor.deg();
        let lc = divisor.leading_coeff();
        let mut rem = self.clone();
        let mut quot = IntPoly::zero();
        let steps = (self.coeffs.len().max(d + 1) - d) as u32;
        let mut scale_left = steps;
        while !rem.is_zero() && rem.deg() >= d {
            let k = rem.deg() - d;
            let t = IntPoly::monomial(rem.leading_coeff(), k);
            quot = quot.scale(&lc).add(&t);
            rem = rem.scale(&lc).sub(&t.mul(divisor));
            scale_left -= 1;
        }
        for _ in 0..scale_left {
            quot = quot.scale(&lc);
            rem = rem.scale(&lc);
        }
        (quot, rem)
    }

    /// Content: positive gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = num_integer::Integer::gcd(&g, c);
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut g = self.content();
        if self.leading_coeff().is_negative() {
            g = -g;
        }
        IntPoly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Gcd in `Q[X]`, returned as a primitive integer polynomial with
    /// positive leading coefficient (primitive pseudo-remainder sequence).
    pub fn gcd(&self, other: &Self) -> IntPoly {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.is_zero() {
            return b;
        }
        while !b.is_zero() {
            if a.deg() < b.deg() {
                std::mem::swap(&mut a, &mut b);
                continue;
            }
            let (_, r) = a.pseudo_div_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    write!(f, "X")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// The `n`-th cyclotomic polynomial, by exact division of `X^n - 1` by the
/// product of `Phi_d` over proper divisors `d` of `n`.
pub fn cyclotomic_poly(n: u64) -> Result<IntPoly> {
    if n == 0 {
        return Err(Error::InvalidInput("cyclotomic_poly(0)".into()));
    }
    let mut divs = divisors(n);
    divs.sort_unstable();
    let mut known: Vec<(u64, IntPoly)> = Vec::new();
    for d in divs {
        // X^d - 1
        let mut xd1 = IntPoly::monomial(BigInt::one(), d as usize);
        xd1 = xd1.sub(&IntPoly::one());
        let mut phi_d = xd1;
        for (dd, poly) in &known {
            if d % dd == 0 {
                phi_d = phi_d.div_exact_monic(poly)?;
            }
        }
        known.push((d, phi_d));
    }
    Ok(known.pop().expect("n is a divisor of itself").1)
}

/// Writes a monic `f` as `g^e` with `g` its squarefree radical and `e`
/// maximal; errors when `f` is not an exact power of its radical.
pub fn perfect_power_decompose(f: &IntPoly) -> Result<(IntPoly, u32)> {
    if f.is_zero() || f.deg() == 0 {
        return Err(Error::InvalidInput(
            "perfect_power_decompose requires degree >= 1".into(),
        ));
    }
    if !f.is_monic() {
        return Err(Error::InvalidInput(
            "perfect_power_decompose requires a monic polynomial".into(),
        ));
    }
    let g = f.gcd(&f.derivative());
    // f monic and g | f in Z[X] force g monic after sign normalization.
    if !g.is_monic() {
        return Err(Error::Verification(format!(
            "gcd(f, f') not monic for monic f = {f}"
        )));
    }
    let radical = f.div_exact_monic(&g)?;
    let deg_f = f.deg();
    let deg_r = radical.deg();
    if deg_r == 0 || deg_f % deg_r != 0 {
        return Err(Error::NotElementary(format!(
            "{f} is not a perfect power of its radical {radical}"
        )));
    }
    let e = (deg_f / deg_r) as u32;
    if &radical.pow(e) != f {
        return Err(Error::NotElementary(format!(
            "{f} is not a perfect power of its radical {radical}"
        )));
    }
    Ok((radical, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_normalize() {
        let p = IntPoly::from_i64(&[3, 0, 1]);
        assert_eq!(p.to_string(), "X^2 + 3");
        let q = IntPoly::from_i64(&[3, -3, 1]);
        assert_eq!(q.to_string(), "X^2 - 3X + 3");
        assert_eq!(IntPoly::from_i64(&[0, 0]).to_string(), "0");
        assert_eq!(IntPoly::from_i64(&[1, 2, 0, 0]).deg(), 1);
    }

    #[test]
    fn div_rem_monic_roundtrip() {
        let f = IntPoly::from_i64(&[2, -3, 0, 1, 5]);
        let d = IntPoly::from_i64(&[1, 2, 1]);
        let (q, r) = f.div_rem_monic(&d);
        assert_eq!(q.mul(&d).add(&r), f);
        assert!(r.degree().map_or(true, |dr| dr < d.deg()));
    }

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic_poly(1).unwrap(), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic_poly(4).unwrap(), IntPoly::from_i64(&[1, 0, 1]));
        assert_eq!(
            cyclotomic_poly(12).unwrap(),
            IntPoly::from_i64(&[1, 0, -1, 0, 1])
        );
        assert_eq!(
            cyclotomic_poly(105).unwrap().coeff(7),
            BigInt::from(-2),
            "first cyclotomic with a coefficient outside {{-1,0,1}}"
        );
    }

    #[test]
    fn cyclotomic_product_identity() {
        // prod_{d | n} Phi_d = X^n - 1 for all n <= 200
        for n in 1..=200u64 {
            let mut prod = IntPoly::one();
            for d in divisors(n) {
                prod = prod.mul(&cyclotomic_poly(d).unwrap());
            }
            let expect = IntPoly::monomial(BigInt::one(), n as usize).sub(&IntPoly::one());
            assert_eq!(prod, expect, "n = {n}");
        }
    }

    #[test]
    fn perfect_power_examples() {
        // (X^2+3)^2
        let g = IntPoly::from_i64(&[3, 0, 1]);
        let f = g.pow(2);
        let (rad, e) = perfect_power_decompose(&f).unwrap();
        assert_eq!((rad.clone(), e), (g, 2));
        assert_eq!(rad.pow(e), f);

        let lin = IntPoly::from_i64(&[-1, 1]);
        assert_eq!(perfect_power_decompose(&lin).unwrap(), (lin.clone(), 1));

        let g3 = IntPoly::from_i64(&[-5, 0, 1]);
        let f3 = g3.pow(3);
        let (rad3, e3) = perfect_power_decompose(&f3).unwrap();
        assert_eq!((rad3.clone(), e3), (g3, 3));
        assert_eq!(rad3.pow(e3), f3);
    }

    #[test]
    fn perfect_power_squarefree_product_is_e1() {
        // a squarefree product decomposes with e = 1
        let f = IntPoly::from_i64(&[-1, 1]).mul(&IntPoly::from_i64(&[1, 0, 1]));
        let (rad, e) = perfect_power_decompose(&f).unwrap();
        assert_eq!((rad, e), (f, 1));
    }

    #[test]
    fn perfect_power_rejects_mixed_multiplicity() {
        // (X-1)^2 (X+1) is not a power of its radical
        let f = IntPoly::from_i64(&[-1, 1])
            .pow(2)
            .mul(&IntPoly::from_i64(&[1, 1]));
        assert!(matches!(
            perfect_power_decompose(&f),
            Err(Error::NotElementary(_))
        ));
    }

    #[test]
    fn gcd_primitive() {
        let a = IntPoly::from_i64(&[-1, 0, 1]); // (X-1)(X+1)
        let b = IntPoly::from_i64(&[1, 2, 1]); // (X+1)^2
        assert_eq!(a.gcd(&b), IntPoly::from_i64(&[1, 1]));
        // gcd picks up content-free answers even with non-monic inputs
        let c = a.scale(&BigInt::from(6));
        let d = b.scale(&BigInt::from(10));
        assert_eq!(c.gcd(&d), IntPoly::from_i64(&[1, 1]));
    }
}
