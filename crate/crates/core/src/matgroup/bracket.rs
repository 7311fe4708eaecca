//! The bracket forms `[a, x]` of `D` and `[a, (x, y)]` of `H`.

use std::fmt;

use super::field::{Fq, Sign};
use super::matrix::Mat3;
use crate::error::{Error, Result};

/// `[a, x]`, standing for the `D`-matrix `(a, ax, ax²/2 / 0, 1, x / 0, 0, a)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DElem {
    pub a: Sign,
    pub x: Fq,
}

/// `[a, (x, y)]`, standing for the `H`-matrix `(a, 0, x / 0, a, y / 0, 0, 1)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HElem {
    pub a: Sign,
    pub x: Fq,
    pub y: Fq,
}

impl DElem {
    pub fn new(a: Sign, x: Fq) -> DElem {
        DElem { a, x }
    }

    pub fn identity(q: u32) -> DElem {
        DElem::new(Sign::Plus, Fq::zero(q))
    }

    pub fn modulus(&self) -> u32 {
        self.x.modulus()
    }

    /// All `2q` elements, `a = +1` first, then by `x`.
    pub fn all(q: u32) -> Vec<DElem> {
        [Sign::Plus, Sign::Minus]
            .into_iter()
            .flat_map(|a| Fq::all(q).map(move |x| DElem::new(a, x)))
            .collect()
    }

    pub fn to_matrix(&self) -> Mat3 {
        let q = self.modulus();
        let a = self.a.to_fq(q);
        let x = self.x;
        let zero = Fq::zero(q);
        let one = Fq::one(q);
        let rows = [
            [a, a * x, (a * x * x).half()],
            [zero, one, x],
            [zero, zero, a],
        ];
        Mat3::from_fn(q, |i, j| rows[i][j])
    }

    pub fn from_matrix(m: &Mat3) -> Option<DElem> {
        let a = Sign::from_fq(m.get(0, 0))?;
        let d = DElem::new(a, m.get(1, 2));
        (d.to_matrix() == *m).then_some(d)
    }

    pub fn inverse(&self) -> DElem {
        // [a,x][a,y] = [1, ax + y] = identity  =>  y = -ax
        DElem::new(self.a, -(self.a.to_fq(self.modulus()) * self.x))
    }
}

impl HElem {
    pub fn new(a: Sign, x: Fq, y: Fq) -> HElem {
        assert_eq!(x.modulus(), y.modulus(), "field modulus mismatch");
        HElem { a, x, y }
    }

    pub fn from_ints(q: u32, a: i64, x: i64, y: i64) -> HElem {
        let sign = if a == 1 { Sign::Plus } else { Sign::Minus };
        HElem::new(sign, Fq::new(q, x), Fq::new(q, y))
    }

    pub fn identity(q: u32) -> HElem {
        HElem::new(Sign::Plus, Fq::zero(q), Fq::zero(q))
    }

    pub fn modulus(&self) -> u32 {
        self.x.modulus()
    }

    /// Canonical index `sign_bit(a)·q² + x·q + y`.
    pub fn index(&self) -> usize {
        let q = self.modulus() as usize;
        self.a.bit() * q * q + self.x.value() as usize * q + self.y.value() as usize
    }

    pub fn from_index(q: u32, idx: usize) -> HElem {
        let qq = q as usize;
        assert!(idx < 2 * qq * qq, "index out of range");
        HElem::new(
            Sign::from_bit(idx / (qq * qq)),
            Fq::new(q, ((idx / qq) % qq) as i64),
            Fq::new(q, (idx % qq) as i64),
        )
    }

    /// All `2q²` elements in canonical index order.
    pub fn all(q: u32) -> Vec<HElem> {
        (0..2 * (q as usize).pow(2)).map(|i| HElem::from_index(q, i)).collect()
    }

    pub fn to_matrix(&self) -> Mat3 {
        let q = self.modulus();
        let a = self.a.to_fq(q);
        let zero = Fq::zero(q);
        let one = Fq::one(q);
        let rows = [[a, zero, self.x], [zero, a, self.y], [zero, zero, one]];
        Mat3::from_fn(q, |i, j| rows[i][j])
    }

    pub fn from_matrix(m: &Mat3) -> Option<HElem> {
        let a = Sign::from_fq(m.get(0, 0))?;
        let h = HElem::new(a, m.get(0, 2), m.get(1, 2));
        (h.to_matrix() == *m).then_some(h)
    }

    /// `[a, v]⁻¹ = [a, −a v]`.
    pub fn inverse(&self) -> HElem {
        let a = self.a.to_fq(self.modulus());
        HElem::new(self.a, -(a * self.x), -(a * self.y))
    }

    pub fn is_involution(&self) -> bool {
        *self != HElem::identity(self.modulus()) && h_mul(self, self).ok() == Some(HElem::identity(self.modulus()))
    }
}

impl fmt::Debug for DElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.a.as_i64(), self.x)
    }
}

impl fmt::Debug for HElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},({},{})]", self.a.as_i64(), self.x, self.y)
    }
}

impl fmt::Display for HElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `[a,x][b,y] = [ab, bx + y]`.
pub fn d_mul(p: &DElem, r: &DElem) -> Result<DElem> {
    let (q1, q2) = (p.modulus(), r.modulus());
    if q1 != q2 {
        return Err(Error::ModulusMismatch(q1, q2));
    }
    let b = r.a.to_fq(q1);
    Ok(DElem::new(p.a * r.a, b * p.x + r.x))
}

/// `[a,v][b,w] = [ab, bv + w]`.
pub fn h_mul(p: &HElem, r: &HElem) -> Result<HElem> {
    let (q1, q2) = (p.modulus(), r.modulus());
    if q1 != q2 {
        return Err(Error::ModulusMismatch(q1, q2));
    }
    let b = r.a.to_fq(q1);
    Ok(HElem::new(p.a * r.a, b * p.x + r.x, b * p.y + r.y))
}

/// Conjugation action of `D` on `H`:
/// `[a,(x,y)]^[b,z] = [a, ((1−a)z²/2 − byz + x, (a−1)z + by)]`.
pub fn d_act_h(h: &HElem, d: &DElem) -> Result<HElem> {
    let (q1, q2) = (h.modulus(), d.modulus());
    if q1 != q2 {
        return Err(Error::ModulusMismatch(q1, q2));
    }
    let q = q1;
    let a = h.a.to_fq(q);
    let b = d.a.to_fq(q);
    let z = d.x;
    let one = Fq::one(q);
    let x = ((one - a) * z * z).half() - b * h.y * z + h.x;
    let y = (a - one) * z + b * h.y;
    Ok(HElem::new(h.a, x, y))
}
