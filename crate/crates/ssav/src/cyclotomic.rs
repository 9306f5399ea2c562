//! Exact arithmetic in the rings `Z[zeta_M]`, embeddings of `sqrt(p)` via
//! quadratic Gauss sums, and exact minimal polynomials of cyclotomic
//! integers.
//!
//! Elements are integer coordinate vectors over the power basis
//! `1, zeta, ..., zeta^(phi(M)-1)` of `Z[X]/Phi_M`; products are reduced mod
//! `Phi_M` before they are returned, so equality is coefficient equality.
//! The canonical embedding sends `zeta_M` to `exp(2 pi i / M)`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::arith::{
    charpoly_integer_matrix, cyclotomic_poly, jacobi_symbol, perfect_power_decompose, IntMatrix,
    IntPoly,
};
use crate::arith::num::{is_prime, phi};
use crate::error::{Error, Result};
use crate::interval::{certified_sign, cos_sin_2pi, CInterval, Interval};

fn phi_poly(level: u64) -> Arc<IntPoly> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<IntPoly>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard
        .entry(level)
        .or_insert_with(|| Arc::new(cyclotomic_poly(level).expect("level >= 1")))
        .clone()
}

/// Discriminant of `Q(sqrt(p))` over `Q`: `p` when `p = 1 mod 4`, else `4p`.
pub fn quadratic_discriminant(p: u64) -> u64 {
    if p % 4 == 1 {
        p
    } else {
        4 * p
    }
}

/// An element of `Z[zeta_M]` in the power basis, reduced mod `Phi_M`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycInt {
    level: u64,
    coeffs: Vec<BigInt>,
}

impl CycInt {
    pub fn zero(level: u64) -> Self {
        assert!(level >= 1);
        CycInt {
            level,
            coeffs: vec![BigInt::zero(); phi(level) as usize],
        }
    }

    pub fn from_int(level: u64, v: BigInt) -> Self {
        let mut z = CycInt::zero(level);
        z.coeffs[0] = v;
        z
    }

    pub fn one(level: u64) -> Self {
        CycInt::from_int(level, BigInt::one())
    }

    /// `c * zeta_level^k`, reduced.
    pub fn monomial(level: u64, k: u64, c: BigInt) -> Self {
        CycInt::from_sparse(level, &[(k, c)])
    }

    pub fn root_of_unity(level: u64, k: u64) -> Self {
        CycInt::monomial(level, k, BigInt::one())
    }

    /// Builds `sum c_j zeta^(e_j)` from sparse terms with exponents reduced
    /// mod `level`, then reduces mod `Phi_level` once.
    pub fn from_sparse(level: u64, terms: &[(u64, BigInt)]) -> Self {
        assert!(level >= 1);
        let mut dense = vec![BigInt::zero(); level as usize];
        for (e, c) in terms {
            dense[(e % level) as usize] += c;
        }
        CycInt::reduce_dense(level, dense)
    }

    /// Reduces an ascending coefficient vector of arbitrary length mod
    /// `Phi_level`.
    fn reduce_dense(level: u64, mut dense: Vec<BigInt>) -> Self {
        let modulus = phi_poly(level);
        let d = modulus.deg();
        let mcoeffs = modulus.coeffs();
        for i in (d..dense.len()).rev() {
            let c = std::mem::replace(&mut dense[i], BigInt::zero());
            if c.is_zero() {
                continue;
            }
            for (j, b) in mcoeffs.iter().take(d).enumerate() {
                dense[i - d + j] -= &c * b;
            }
        }
        dense.truncate(d);
        dense.resize(d, BigInt::zero());
        CycInt {
            level,
            coeffs: dense,
        }
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The rational integer this element represents, if it is one.
    pub fn to_int(&self) -> Option<BigInt> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn assert_same_level(&self, other: &Self) {
        assert_eq!(
            self.level, other.level,
            "cross-level arithmetic must lift to the lcm level first"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_level(other);
        CycInt {
            level: self.level,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_level(other);
        CycInt {
            level: self.level,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        CycInt {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        CycInt {
            level: self.level,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_level(other);
        let n = self.coeffs.len();
        let mut dense = vec![BigInt::zero(); 2 * n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                dense[i + j] += a * b;
            }
        }
        CycInt::reduce_dense(self.level, dense)
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    /// Lifts into `Z[zeta_target]` along `zeta_level = zeta_target^(target/level)`.
    pub fn lift_to(&self, target: u64) -> Self {
        assert!(
            target % self.level == 0,
            "lift target must be a multiple of the level"
        );
        if target == self.level {
            return self.clone();
        }
        let ratio = target / self.level;
        let terms: Vec<(u64, BigInt)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as u64 * ratio, c.clone()))
            .collect();
        CycInt::from_sparse(target, &terms)
    }

    /// Lifts both operands to their common lcm level.
    pub fn unified(a: &CycInt, b: &CycInt) -> (CycInt, CycInt) {
        let l = num_integer::lcm(a.level, b.level);
        (a.lift_to(l), b.lift_to(l))
    }

    /// Evaluates `f` at this element by Horner's rule, exactly.
    pub fn substitute_into(&self, f: &IntPoly) -> CycInt {
        let mut acc = CycInt::zero(self.level);
        for c in f.coeffs().iter().rev() {
            acc = acc.mul(self);
            acc.coeffs[0] += c;
        }
        acc
    }

    /// Certified rectangle containing the canonical complex image.
    pub fn eval_interval(&self, bits: u32) -> CInterval {
        let mut acc = CInterval::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = BigRational::new(BigInt::from(i as u64), BigInt::from(self.level));
            let (cos, sin) = cos_sin_2pi(&t, bits);
            acc = acc.add(&CInterval { re: cos, im: sin }.scale(c));
        }
        acc
    }

    /// Matrix of multiplication by this element on the power basis.
    pub fn multiplication_matrix(&self) -> IntMatrix {
        let n = self.coeffs.len();
        let mut m = IntMatrix::zero(n);
        let mut col = self.clone();
        for j in 0..n {
            for i in 0..n {
                *m.get_mut(i, j) = col.coeffs[i].clone();
            }
            if j + 1 < n {
                // next column: multiply by zeta (shift once, reduce)
                let mut dense = vec![BigInt::zero(); n + 1];
                for (i, c) in col.coeffs.iter().enumerate() {
                    dense[i + 1] = c.clone();
                }
                col = CycInt::reduce_dense(self.level, dense);
            }
        }
        m
    }
}

/// The canonical `sqrt(p)` in `Z[zeta_level]`: squares to `p` exactly and
/// embeds to the positive real root.
///
/// Odd `p` uses the quadratic Gauss sum `sum (t/p) zeta_p^t`, times
/// `zeta_4^3` when `p = 3 mod 4`; `p = 2` uses `zeta_8 + zeta_8^-1`. The sign
/// is fixed by interval evaluation at doubling precision; the squaring check
/// is exact, so precision only ever affects the sign choice.
pub fn sqrt_p_embed(p: u64, level: u64) -> Result<CycInt> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u64), CycInt>>> = OnceLock::new();
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let delta = quadratic_discriminant(p);
    if level % delta != 0 {
        return Err(Error::SqrtNotInField { p, level });
    }
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let lookup = |key: (u64, u64)| cache.lock().unwrap().get(&key).cloned();
    if let Some(hit) = lookup((p, level)) {
        return Ok(hit);
    }

    // Construct and certify at the minimal level, then lift: the lift is a
    // ring homomorphism preserving the canonical embedding.
    let gamma_delta = if let Some(hit) = lookup((p, delta)) {
        hit
    } else {
        let mut candidate = if p == 2 {
            // zeta_8 + zeta_8^7 = 2 cos(pi/4)
            CycInt::from_sparse(8, &[(1, BigInt::one()), (7, BigInt::one())])
        } else {
            let unit = delta / p;
            let mut terms: Vec<(u64, BigInt)> = (1..p)
                .map(|t| (t * unit, BigInt::from(jacobi_symbol(t as i64, p).expect("odd prime"))))
                .collect();
            if p % 4 == 3 {
                // the Gauss sum is i sqrt(p); rotate by zeta_4^3 = -i
                let quarter = 3 * delta / 4;
                for (e, _) in terms.iter_mut() {
                    *e = (*e + quarter) % delta;
                }
            }
            CycInt::from_sparse(delta, &terms)
        };
        let sq = candidate.square();
        if sq.to_int() != Some(BigInt::from(p)) {
            return Err(Error::Verification(format!(
                "gauss sum construction for sqrt({p}) does not square to {p}"
            )));
        }
        let sign = certified_sign(|bits| candidate.eval_interval(bits).re);
        if sign < 0 {
            candidate = candidate.neg();
        }
        cache
            .lock()
            .unwrap()
            .insert((p, delta), candidate.clone());
        candidate
    };

    let gamma = gamma_delta.lift_to(level);
    debug_assert_eq!(gamma.square().to_int(), Some(BigInt::from(p)));
    cache.lock().unwrap().insert((p, level), gamma.clone());
    Ok(gamma)
}

/// Embeds the Weil number `zeta_m^nu sqrt(p^s)` into `Z[zeta_M]` with
/// `M = lcm(m, disc(Q(sqrt p)))` for odd `s` and `M = m` otherwise.
pub fn weil_embed(p: u64, s: u32, m: u64, nu: u64) -> Result<(u64, CycInt)> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if m == 0 || s == 0 {
        return Err(Error::InvalidInput("require m >= 1 and s >= 1".into()));
    }
    let rational_part = BigInt::from(p).pow(s / 2);
    let level = if s % 2 == 1 {
        num_integer::lcm(m, quadratic_discriminant(p))
    } else {
        m
    };
    let zeta_part = CycInt::monomial(level, nu * (level / m), rational_part);
    let element = if s % 2 == 1 {
        zeta_part.mul(&sqrt_p_embed(p, level)?)
    } else {
        zeta_part
    };
    Ok((level, element))
}

/// Monic minimal polynomial over `Q` of a cyclotomic integer: the radical of
/// the characteristic polynomial of its multiplication matrix. The result is
/// verified by exact substitution.
pub fn minimal_polynomial_cyclotomic(x: &CycInt) -> Result<IntPoly> {
    let char_poly = charpoly_integer_matrix(&x.multiplication_matrix());
    // char poly = g^k for the minimal polynomial g and k = [Q(zeta):Q(x)]
    let (g, _k) = perfect_power_decompose(&char_poly).map_err(|_| {
        Error::Verification(format!(
            "characteristic polynomial {char_poly} of a multiplication matrix \
             is not a perfect power of its radical"
        ))
    })?;
    if !x.substitute_into(&g).is_zero() {
        return Err(Error::Verification(format!(
            "minimal polynomial candidate {g} does not annihilate the element"
        )));
    }
    Ok(g)
}

/// A certified enclosure of `sqrt(q) = p^(s/2)` as a real interval.
pub(crate) fn sqrt_q_interval(p: u64, s: u32, bits: u32) -> Interval {
    let rational = BigInt::from(p).pow(s / 2);
    let base = Interval::from_int(&rational);
    if s % 2 == 1 {
        let root = crate::interval::sqrt_int(&BigUint::from(p), bits);
        base.mul(&root)
    } else {
        base
    }
}

/// Positive integer `phi(level)` of an element's ambient ring, mostly for
/// reporting.
pub fn ring_degree(level: u64) -> u64 {
    phi(level)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::IntPoly;

    #[test]
    fn ring_basics() {
        // level 12: phi = 4, zeta^4 = zeta^2 - 1 (since Phi_12 = X^4 - X^2 + 1)
        let z = CycInt::root_of_unity(12, 1);
        let z4 = z.mul(&z).mul(&z).mul(&z);
        let expect = CycInt::from_sparse(12, &[(2, BigInt::one())])
            .sub(&CycInt::one(12));
        assert_eq!(z4, expect);
        // zeta^12 = 1
        let z12 = CycInt::root_of_unity(12, 12);
        assert_eq!(z12, CycInt::one(12));
    }

    #[test]
    fn level_one_and_two_are_integers() {
        let a = CycInt::from_int(1, BigInt::from(5));
        assert_eq!(a.mul(&a).to_int(), Some(BigInt::from(25)));
        let b = CycInt::root_of_unity(2, 1); // -1
        assert_eq!(b.to_int(), Some(BigInt::from(-1)));
    }

    #[test]
    fn sqrt_embeddings_square_to_p() {
        for (p, level) in [
            (2u64, 8u64),
            (2, 24),
            (3, 12),
            (3, 24),
            (5, 5),
            (5, 20),
            (7, 28),
            (11, 44),
            (13, 13),
            (47, 188),
        ] {
            let g = sqrt_p_embed(p, level).unwrap();
            assert_eq!(g.square().to_int(), Some(BigInt::from(p)), "p={p} level={level}");
            // canonical embedding is the positive root
            let sign = certified_sign(|bits| g.eval_interval(bits).re);
            assert_eq!(sign, 1, "p={p} level={level}");
        }
    }

    #[test]
    fn sqrt_rejects_wrong_level() {
        assert!(matches!(
            sqrt_p_embed(5, 8),
            Err(Error::SqrtNotInField { .. })
        ));
        assert!(matches!(
            sqrt_p_embed(3, 3),
            Err(Error::SqrtNotInField { .. })
        ));
    }

    #[test]
    fn sqrt_2_is_zeta8_plus_inverse() {
        let g = sqrt_p_embed(2, 8).unwrap();
        let expect = CycInt::from_sparse(8, &[(1, BigInt::one()), (7, BigInt::one())]);
        assert_eq!(g, expect);
    }

    #[test]
    fn sqrt_3_at_level_12_is_real_cosine_form() {
        let g = sqrt_p_embed(3, 12).unwrap();
        let expect = CycInt::from_sparse(12, &[(1, BigInt::one()), (11, BigInt::one())]);
        assert_eq!(g, expect, "sqrt(3) = zeta_12 + zeta_12^-1");
    }

    #[test]
    fn weil_embed_examples() {
        // q a square: rational embedding at level m
        let (level, x) = weil_embed(5, 2, 1, 0).unwrap();
        assert_eq!(level, 1);
        assert_eq!(x.to_int(), Some(BigInt::from(5)));

        // zeta_4 sqrt(3) at level 12, squaring to -3
        let (level, x) = weil_embed(3, 1, 4, 1).unwrap();
        assert_eq!(level, 12);
        assert_eq!(x.square().to_int(), Some(BigInt::from(-3)));

        // -sqrt(5): square is 5, image negative real
        let (level, x) = weil_embed(5, 1, 2, 1).unwrap();
        assert_eq!(level, 10);
        assert_eq!(x.square().to_int(), Some(BigInt::from(5)));
        assert_eq!(certified_sign(|bits| x.eval_interval(bits).re), -1);
        let im = x.eval_interval(128).im;
        assert!(im.contains_zero());
    }

    #[test]
    fn weil_embed_square_is_monomial() {
        for (p, s, m) in [(3u64, 1u32, 4u64), (2, 1, 8), (5, 1, 1), (3, 1, 12), (2, 2, 3)] {
            for nu in crate::arith::units_mod(m) {
                let (level, x) = weil_embed(p, s, m, nu).unwrap();
                let q = BigInt::from(p).pow(s);
                let expect = CycInt::monomial(level, (2 * nu * (level / m)) % level, q);
                assert_eq!(x.square(), expect, "p={p} s={s} m={m} nu={nu}");
            }
        }
    }

    #[test]
    fn minimal_polynomials() {
        // zeta_4 at level 4 -> X^2 + 1 (= Phi_4)
        let g = minimal_polynomial_cyclotomic(&CycInt::root_of_unity(4, 1)).unwrap();
        assert_eq!(g, IntPoly::from_i64(&[1, 0, 1]));

        // embedded zeta_4 sqrt(3) at level 12 -> X^2 + 3
        let (_, x) = weil_embed(3, 1, 4, 1).unwrap();
        let g = minimal_polynomial_cyclotomic(&x).unwrap();
        assert_eq!(g, IntPoly::from_i64(&[3, 0, 1]));

        // embedded sqrt(5) at level 5 -> X^2 - 5, verified by substitution
        let x = sqrt_p_embed(5, 5).unwrap();
        let g = minimal_polynomial_cyclotomic(&x).unwrap();
        assert_eq!(g, IntPoly::from_i64(&[-5, 0, 1]));
        assert!(x.substitute_into(&g).is_zero());
    }

    #[test]
    fn minimal_polynomial_annihilates_constructed_elements() {
        for (p, s, m, nu) in [
            (2u64, 1u32, 8u64, 1u64),
            (2, 1, 8, 3),
            (3, 1, 4, 1),
            (3, 1, 12, 5),
            (5, 1, 1, 0),
            (5, 2, 5, 2),
            (7, 1, 4, 1),
        ] {
            let (_, x) = weil_embed(p, s, m, nu).unwrap();
            let g = minimal_polynomial_cyclotomic(&x).unwrap();
            assert!(
                x.substitute_into(&g).is_zero(),
                "g(pi) != 0 for p={p} s={s} m={m} nu={nu}"
            );
        }
    }

    #[test]
    fn lift_is_a_ring_homomorphism_on_samples() {
        let a = CycInt::from_sparse(6, &[(1, BigInt::from(2)), (0, BigInt::from(-1))]);
        let b = CycInt::root_of_unity(6, 5);
        let (al, bl) = (a.lift_to(24), b.lift_to(24));
        assert_eq!(a.mul(&b).lift_to(24), al.mul(&bl));
        assert_eq!(a.add(&b).lift_to(24), al.add(&bl));
    }

    #[test]
    fn cross_level_unification() {
        let a = CycInt::root_of_unity(4, 1);
        let b = CycInt::root_of_unity(3, 1);
        let (ua, ub) = CycInt::unified(&a, &b);
        assert_eq!(ua.level(), 12);
        // zeta_4 * zeta_3 = zeta_12^7
        assert_eq!(ua.mul(&ub), CycInt::root_of_unity(12, 7));
    }
}
