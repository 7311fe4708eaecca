use std::fmt;

use super::field::{Fq, Sign};
use crate::error::{Error, Result};

/// A 3×3 matrix over `F_q`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mat3 {
    q: u32,
    m: [[u32; 3]; 3],
}

impl Mat3 {
    pub fn from_fn(q: u32, f: impl Fn(usize, usize) -> Fq) -> Mat3 {
        let mut m = [[0u32; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let v = f(i, j);
                assert_eq!(v.modulus(), q, "field modulus mismatch");
                *cell = v.value();
            }
        }
        Mat3 { q, m }
    }

    pub fn from_ints(q: u32, rows: [[i64; 3]; 3]) -> Mat3 {
        Mat3::from_fn(q, |i, j| Fq::new(q, rows[i][j]))
    }

    pub fn identity(q: u32) -> Mat3 {
        Mat3::from_ints(q, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fq {
        Fq::new(self.q, self.m[i][j] as i64)
    }

    pub fn mul(&self, other: &Mat3) -> Result<Mat3> {
        if self.q != other.q {
            return Err(Error::ModulusMismatch(self.q, other.q));
        }
        let q = self.q as u64;
        let mut m = [[0u32; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let s: u64 = (0..3)
                    .map(|k| self.m[i][k] as u64 * other.m[k][j] as u64)
                    .sum();
                *cell = (s % q) as u32;
            }
        }
        Ok(Mat3 { q: self.q, m })
    }

    pub fn transpose(&self) -> Mat3 {
        Mat3::from_fn(self.q, |i, j| self.get(j, i))
    }

    pub fn det(&self) -> Fq {
        let g = |i, j| self.get(i, j);
        g(0, 0) * (g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1))
            - g(0, 1) * (g(1, 0) * g(2, 2) - g(1, 2) * g(2, 0))
            + g(0, 2) * (g(1, 0) * g(2, 1) - g(1, 1) * g(2, 0))
    }

    /// Inverse via the adjugate.
    pub fn inverse(&self) -> Result<Mat3> {
        let d_inv = self.det().inv().ok_or(Error::Singular)?;
        let g = |i: usize, j: usize| self.get(i % 3, j % 3);
        // cofactor C_ij = a_{i+1,j+1} a_{i+2,j+2} - a_{i+1,j+2} a_{i+2,j+1}
        let cof = |i: usize, j: usize| g(i + 1, j + 1) * g(i + 2, j + 2) - g(i + 1, j + 2) * g(i + 2, j + 1);
        Ok(Mat3::from_fn(self.q, |i, j| cof(j, i) * d_inv))
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.m[1][0] == 0 && self.m[2][0] == 0 && self.m[2][1] == 0
    }

    /// Membership in `G`: upper triangular, diagonal entries `±1`, determinant 1.
    pub fn is_in_g(&self) -> bool {
        self.is_upper_triangular()
            && (0..3).all(|i| Sign::from_fq(self.get(i, i)).is_some())
            && self.det() == Fq::one(self.q)
    }
}

impl fmt::Debug for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let q = 7;
        let a = Mat3::from_ints(q, [[1, 2, 3], [0, 6, 4], [0, 0, 6]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Mat3::identity(q));
        assert_eq!(inv.mul(&a).unwrap(), Mat3::identity(q));
        let b = Mat3::from_ints(q, [[2, 5, 1], [3, 3, 0], [1, 4, 6]]);
        if !b.det().is_zero() {
            assert_eq!(b.mul(&b.inverse().unwrap()).unwrap(), Mat3::identity(q));
        }
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let s = Mat3::from_ints(5, [[1, 2, 3], [2, 4, 6], [0, 0, 1]]);
        assert_eq!(s.inverse(), Err(Error::Singular));
    }

    #[test]
    fn modulus_mismatch() {
        assert_eq!(
            Mat3::identity(3).mul(&Mat3::identity(5)),
            Err(Error::ModulusMismatch(3, 5))
        );
    }

    #[test]
    fn membership_in_g() {
        assert!(Mat3::from_ints(5, [[-1, 2, 3], [0, -1, 4], [0, 0, 1]]).is_in_g());
        assert!(!Mat3::from_ints(5, [[-1, 2, 3], [0, 1, 4], [0, 0, 1]]).is_in_g());
        assert!(!Mat3::from_ints(5, [[2, 0, 0], [0, 3, 0], [0, 0, 1]]).is_in_g());
    }
}
