//! Square integer matrices and a division-free characteristic polynomial.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::poly::IntPoly;

/// A square matrix over `Z`, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(n: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), n * n, "matrix must be square");
        IntMatrix { n, entries }
    }

    pub fn zero(n: usize) -> Self {
        IntMatrix::new(n, vec![BigInt::zero(); n * n])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n);
        for i in 0..n {
            *m.get_mut(i, i) = BigInt::one();
        }
        m
    }

    pub fn from_i64(n: usize, entries: &[i64]) -> Self {
        IntMatrix::new(n, entries.iter().map(|&e| BigInt::from(e)).collect())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.entries[i * self.n + j]
    }

    /// Companion matrix of a monic polynomial, in the column convention
    /// where `charpoly(companion(f)) = f`.
    pub fn companion(f: &IntPoly) -> Self {
        assert!(f.is_monic() && f.deg() >= 1);
        let n = f.deg();
        let mut m = IntMatrix::zero(n);
        for i in 1..n {
            *m.get_mut(i, i - 1) = BigInt::one();
        }
        for i in 0..n {
            *m.get_mut(i, n - 1) = -f.coeff(i);
        }
        m
    }

    /// Monic characteristic polynomial `det(X*I - M)` by the Berkowitz
    /// algorithm: division-free, exact over `Z`.
    pub fn charpoly(&self) -> IntPoly {
        let n = self.n;
        if n == 0 {
            return IntPoly::one();
        }
        // Coefficient vector of the char poly of the leading k x k
        // submatrix, descending degree.
        let mut vec: Vec<BigInt> = vec![BigInt::one(), -self.get(0, 0).clone()];
        for k in 2..=n {
            // Split the leading k x k block: B is (k-1) x (k-1), R the last
            // row, C the last column, a the corner entry.
            let a = self.get(k - 1, k - 1);
            let row = |j: usize| self.get(k - 1, j);
            let col = |i: usize| self.get(i, k - 1);

            // items = [1, -a, -(R C), -(R B C), -(R B^2 C), ...]
            let mut items: Vec<BigInt> = Vec::with_capacity(k + 1);
            items.push(BigInt::one());
            items.push(-a);
            let mut w: Vec<BigInt> = (0..k - 1).map(|i| col(i).clone()).collect();
            for j in 0..k - 1 {
                let dot: BigInt = (0..k - 1).map(|i| row(i) * &w[i]).sum();
                items.push(-dot);
                if j + 2 < k + 1 {
                    // w <- B w
                    let mut next = vec![BigInt::zero(); k - 1];
                    for (r, slot) in next.iter_mut().enumerate() {
                        *slot = (0..k - 1).map(|c| self.get(r, c) * &w[c]).sum();
                    }
                    w = next;
                }
            }

            // Multiply by the Toeplitz matrix built from `items`.
            let mut next = vec![BigInt::zero(); k + 1];
            for (i, slot) in next.iter_mut().enumerate() {
                let mut acc = BigInt::zero();
                for (j, v) in vec.iter().enumerate() {
                    if i >= j && i - j <= k {
                        acc += &items[i - j] * v;
                    }
                }
                *slot = acc;
            }
            vec = next;
        }
        vec.reverse();
        IntPoly::new(vec)
    }
}

/// Characteristic polynomial of an integer matrix; exposed as a free
/// function mirroring the matrix method.
pub fn charpoly_integer_matrix(m: &IntMatrix) -> IntPoly {
    m.charpoly()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    /// Test oracle: det(X I - M) by cofactor expansion over Z[X].
    fn charpoly_cofactor(m: &IntMatrix) -> IntPoly {
        let n = m.dim();
        let mut rows: Vec<Vec<IntPoly>> = Vec::new();
        for i in 0..n {
            let mut row = Vec::new();
            for j in 0..n {
                let mut e = IntPoly::constant(-m.get(i, j).clone());
                if i == j {
                    e = e.add(&IntPoly::x());
                }
                row.push(e);
            }
            rows.push(row);
        }
        det_poly(&rows)
    }

    fn det_poly(rows: &[Vec<IntPoly>]) -> IntPoly {
        let n = rows.len();
        if n == 1 {
            return rows[0][0].clone();
        }
        let mut acc = IntPoly::zero();
        for j in 0..n {
            let minor: Vec<Vec<IntPoly>> = rows[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != j)
                        .map(|(_, e)| e.clone())
                        .collect()
                })
                .collect();
            let term = rows[0][j].mul(&det_poly(&minor));
            acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }

    #[test]
    fn charpoly_trivial_cases() {
        assert_eq!(
            IntMatrix::identity(2).charpoly(),
            IntPoly::from_i64(&[1, -2, 1])
        );
        assert_eq!(IntMatrix::zero(3).charpoly(), IntPoly::from_i64(&[0, 0, 0, 1]));
    }

    #[test]
    fn charpoly_companion() {
        // companion matrix of X^2 + q has entries [[0, -q], [1, 0]]
        let f = IntPoly::from_i64(&[3, 0, 1]);
        let c = IntMatrix::companion(&f);
        assert_eq!(c, IntMatrix::from_i64(2, &[0, -3, 1, 0]));
        assert_eq!(c.charpoly(), f);

        let g = IntPoly::from_i64(&[7, -2, 5, 1]);
        assert_eq!(IntMatrix::companion(&g).charpoly(), g);
    }

    #[test]
    fn charpoly_matches_cofactor_oracle() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for n in 1..=4usize {
            for _ in 0..25 {
                let entries: Vec<i64> = (0..n * n).map(|_| rng.gen_range(-9..=9)).collect();
                let m = IntMatrix::from_i64(n, &entries);
                assert_eq!(m.charpoly(), charpoly_cofactor(&m), "n = {n}");
            }
        }
    }
}
