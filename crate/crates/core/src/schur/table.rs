//! Products of the basic quantities `S̲_a`, `C̲_b`, `P̲_c` of `V(H, G_e)`.

use super::algebra::{gmul, simple_quantity, GroupAlgebraVec};
use crate::error::{Error, Result};
use crate::matgroup::families::{coset, h1, h2, parabolic, singleton};
use crate::matgroup::{h_group, is_odd_prime, Fq};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table1Report {
    pub q: u32,
    /// Number of products compared.
    pub checked: usize,
    /// Description of every entry whose product differs from the table.
    pub mismatches: Vec<String>,
}

impl Table1Report {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn difference(n: usize, big: &[usize], small: &[usize]) -> Result<GroupAlgebraVec> {
    let b = simple_quantity(n, big)?;
    let s = simple_quantity(n, small)?;
    b.checked_sub(&s)
}

/// Compares all nine entry families for every parameter value.
pub fn verify_table1(q: u32) -> Result<Table1Report> {
    if !is_odd_prime(q) {
        return Err(Error::NotOddPrime(q));
    }
    let h = h_group(q);
    let n = h.order();
    let qi = q as i64;
    let sq = |set: Vec<usize>| simple_quantity(n, &set);
    let all: Vec<usize> = (0..n).collect();
    let h_minus_h1 = difference(n, &all, &h1(q))?;
    let h1_minus_h2 = difference(n, &h1(q), &h2(q))?;
    let h2_vec = sq(h2(q))?;

    let params: Vec<Fq> = Fq::all(q).collect();
    let nonzero: Vec<Fq> = params.iter().copied().filter(|t| !t.is_zero()).collect();
    let mut checked = 0;
    let mut mismatches = Vec::new();
    let mut check = |name: String, lhs: GroupAlgebraVec, rhs: GroupAlgebraVec| {
        checked += 1;
        if lhs != rhs {
            mismatches.push(name);
        }
    };
    for &a in &params {
        let sa = sq(singleton(a))?;
        for &r in &params {
            check(format!("S_{a}·S_{r}"), gmul(&h, &sa, &sq(singleton(r))?)?, sq(singleton(a + r))?);
        }
        for &s in &nonzero {
            check(format!("S_{a}·C_{s}"), gmul(&h, &sa, &sq(coset(s))?)?, sq(coset(s))?);
        }
        for &t in &params {
            check(format!("S_{a}·P_{t}"), gmul(&h, &sa, &sq(parabolic(t))?)?, sq(parabolic(t - a))?);
        }
    }
    for &b in &nonzero {
        let cb = sq(coset(b))?;
        for &r in &params {
            check(format!("C_{b}·S_{r}"), gmul(&h, &cb, &sq(singleton(r))?)?, cb.clone());
        }
        for &s in &nonzero {
            let want = if (b + s).is_zero() {
                h2_vec.scale(qi)?
            } else {
                sq(coset(b + s))?.scale(qi)?
            };
            check(format!("C_{b}·C_{s}"), gmul(&h, &cb, &sq(coset(s))?)?, want);
        }
        for &t in &params {
            check(format!("C_{b}·P_{t}"), gmul(&h, &cb, &sq(parabolic(t))?)?, h_minus_h1.clone());
        }
    }
    for &c in &params {
        let pc = sq(parabolic(c))?;
        for &r in &params {
            check(format!("P_{c}·S_{r}"), gmul(&h, &pc, &sq(singleton(r))?)?, sq(parabolic(c + r))?);
        }
        for &s in &nonzero {
            check(format!("P_{c}·C_{s}"), gmul(&h, &pc, &sq(coset(s))?)?, h_minus_h1.clone());
        }
        for &t in &params {
            let want = sq(singleton(t - c))?.scale(qi)?.checked_add(&h1_minus_h2)?;
            check(format!("P_{c}·P_{t}"), gmul(&h, &pc, &sq(parabolic(t))?)?, want);
        }
    }
    Ok(Table1Report { q, checked, mismatches })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgroup::build_t;
    use crate::schur::{hadamard, level_set};

    #[test]
    fn table_holds() {
        for q in [3, 5, 7] {
            let r = verify_table1(q).unwrap();
            assert!(r.passed(), "{:?}", r.mismatches);
            let qq = q as usize;
            let per_row = qq + (qq - 1) + qq;
            assert_eq!(r.checked, per_row * (2 * qq + qq - 1));
        }
    }

    #[test]
    fn s0_row_is_the_identity() {
        let q = 5;
        let h = h_group(q);
        let e = simple_quantity(50, &singleton(Fq::zero(q))).unwrap();
        assert_eq!(e, GroupAlgebraVec::unit(50, 0));
        let p = simple_quantity(50, &parabolic(Fq::new(q, 2))).unwrap();
        assert_eq!(gmul(&h, &e, &p).unwrap(), p);
    }

    #[test]
    fn level_sets_of_t_squared() {
        for q in [11u32, 13] {
            let h = h_group(q);
            let n = h.order();
            let t = simple_quantity(n, &build_t(q, None).unwrap()).unwrap();
            let t2 = gmul(&h, &t, &t).unwrap();
            let all: Vec<usize> = (0..n).collect();
            assert_eq!(level_set(&t2, 12), difference(n, &all, &h1(q)).unwrap());
            let two = Fq::new(q, 2);
            let mut c2 = coset(two);
            c2.extend(coset(-two));
            let c2v = simple_quantity(n, &c2).unwrap();
            assert_eq!(level_set(&t2, q as i64 + 9), c2v);
            for b in [two, -two] {
                let cb = simple_quantity(n, &coset(b)).unwrap();
                assert_eq!(hadamard(&t2, &cb).unwrap(), cb.scale(q as i64 + 9).unwrap());
            }
        }
    }
}
