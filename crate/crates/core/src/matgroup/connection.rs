//! The connection sets `T` and `T′` on `H`.

use super::families::{coset, parabolic, singleton};
use super::field::{is_odd_prime, Fq};
use crate::error::{Error, Result};

fn is_admissible(x: Fq) -> bool {
    let q = x.modulus();
    let two = Fq::new(q, 2);
    let half = Fq::one(q).half();
    let excluded = [Fq::zero(q), Fq::one(q), -Fq::one(q), two, -two, half];
    !excluded.contains(&x) && x.pow(6) != Fq::one(q)
}

/// Smallest residue `x ≥ 2` with `x ∉ {0, ±1, ±2, 1/2}` and `x⁶ ≠ 1`.
pub fn choose_x(q: u32) -> Result<Fq> {
    if !is_odd_prime(q) || q <= 7 {
        return Err(Error::InvalidParameter(format!("choose_x needs a prime q > 7, got {q}")));
    }
    (2..q as i64)
        .map(|v| Fq::new(q, v))
        .find(|&x| is_admissible(x))
        .ok_or_else(|| Error::InvalidParameter(format!("no admissible x modulo {q}")))
}

/// The parameter used for `q`: `3` at `q = 7`, the given or chosen `x` above 7,
/// and `None` for `q ∈ {3, 5}`.
pub fn resolve_x(q: u32, x: Option<Fq>) -> Result<Option<Fq>> {
    if !is_odd_prime(q) {
        return Err(Error::NotOddPrime(q));
    }
    if let Some(x) = x {
        if x.modulus() != q {
            return Err(Error::ModulusMismatch(x.modulus(), q));
        }
    }
    match q {
        3 | 5 => Ok(None),
        7 => Ok(Some(Fq::new(7, 3))),
        _ => match x {
            Some(x) if is_admissible(x) => Ok(Some(x)),
            Some(x) => Err(Error::InvalidParameter(format!(
                "x = {x} is excluded modulo {q} (x in {{0, ±1, ±2, 1/2}} or x^6 = 1)"
            ))),
            None => choose_x(q).map(Some),
        },
    }
}

fn union(parts: Vec<Vec<usize>>) -> Vec<usize> {
    let mut v: Vec<usize> = parts.into_iter().flatten().collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// `T` as sorted canonical indices of `H`:
/// `S_1 ∪ P_0` for `q ∈ {3, 5}`, otherwise `P_0 ∪ P_1 ∪ P_x ∪ C_1 ∪ C_{−1}`
/// with `x = 3` at `q = 7`.
pub fn build_t(q: u32, x: Option<Fq>) -> Result<Vec<usize>> {
    let zero = Fq::zero(q);
    let one = Fq::one(q);
    Ok(match resolve_x(q, x)? {
        None => union(vec![singleton(one), parabolic(zero)]),
        Some(x) => union(vec![
            parabolic(zero),
            parabolic(one),
            parabolic(x),
            coset(one),
            coset(-one),
        ]),
    })
}

/// `T′ = P_0 ∪ P_{−1} ∪ P_{−x} ∪ C_1 ∪ C_{−1}`, defined for `q ≥ 7`.
pub fn build_t_prime(q: u32, x: Option<Fq>) -> Result<Vec<usize>> {
    let x = resolve_x(q, x)?
        .ok_or_else(|| Error::InvalidParameter(format!("T′ is defined for q ≥ 7, got {q}")))?;
    let zero = Fq::zero(q);
    let one = Fq::one(q);
    Ok(union(vec![
        parabolic(zero),
        parabolic(-one),
        parabolic(-x),
        coset(one),
        coset(-one),
    ]))
}

/// The symmetric non-CI set `P_0 ∪ S_1 ∪ S_{−1}` used at `q = 5`.
pub fn symmetric_q5_set(q: u32) -> Vec<usize> {
    let one = Fq::one(q);
    union(vec![parabolic(Fq::zero(q)), singleton(one), singleton(-one)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgroup::alpha::alpha_hat_perm;
    use crate::matgroup::groups::h_group;

    /// Exhaustive residue scan, written independently of `is_admissible`.
    fn oracle(q: u32) -> u32 {
        let qi = q as u64;
        let inv2 = qi.div_ceil(2);
        (2..q)
            .find(|&v| {
                let v = v as u64;
                let bad = [0, 1, qi - 1, 2, qi - 2, inv2];
                let six = (0..6).fold(1u64, |acc, _| acc * v % qi);
                !bad.contains(&v) && six != 1
            })
            .unwrap()
    }

    #[test]
    fn choose_x_matches_scan() {
        for q in [11, 13, 17, 19, 23] {
            assert_eq!(choose_x(q).unwrap().value(), oracle(q), "q = {q}");
        }
        assert_eq!(choose_x(11).unwrap().value(), 3);
        assert_eq!(choose_x(13).unwrap().value(), 5);
        assert!(choose_x(7).is_err());
    }

    #[test]
    fn excluded_x_is_rejected() {
        assert!(build_t(11, Some(Fq::new(11, 1))).is_err());
        assert!(build_t(11, Some(Fq::new(11, 6))).is_err());
        assert!(build_t(11, Some(Fq::new(11, 4))).is_ok());
    }

    #[test]
    fn sizes_and_inverse_closure() {
        assert_eq!(build_t(3, None).unwrap().len(), 4);
        assert_eq!(build_t(5, None).unwrap().len(), 6);
        assert_eq!(build_t(7, None).unwrap().len(), 35);
        let t11 = build_t(11, Some(Fq::new(11, 4))).unwrap();
        assert_eq!(t11.len(), 55);
        for q in [7, 11, 13] {
            let h = h_group(q);
            assert!(h.is_inverse_closed(&build_t(q, None).unwrap()));
            assert!(h.is_inverse_closed(&build_t_prime(q, None).unwrap()));
        }
        assert!(h_group(11).is_inverse_closed(&t11));
        assert!(!h_group(5).is_inverse_closed(&build_t(5, None).unwrap()));
        assert!(h_group(5).is_inverse_closed(&symmetric_q5_set(5)));
    }

    #[test]
    fn t_prime_is_alpha_hat_image() {
        for q in [7, 11, 13] {
            let ah = alpha_hat_perm(q);
            let mut img: Vec<usize> = build_t(q, None).unwrap().iter().map(|&i| ah.apply(i)).collect();
            img.sort_unstable();
            assert_eq!(img, build_t_prime(q, None).unwrap());
        }
    }
}
