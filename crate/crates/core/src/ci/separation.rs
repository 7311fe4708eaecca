//! Whether a subset of `H` separates the orbitals of `G`.

use crate::error::{Error, Result};
use crate::matgroup::families::family_labels;
use crate::matgroup::{h_group, is_odd_prime};

/// True iff for all distinct `h₁, h₂ ∈ H∖S` some `s ∈ S` puts `s·h₁⁻¹` and
/// `s·h₂⁻¹` in different `G_e`-orbits. Exhaustive over all pairs.
pub fn separation_check(q: u32, subset: &[usize]) -> Result<bool> {
    if !is_odd_prime(q) {
        return Err(Error::NotOddPrime(q));
    }
    let h = h_group(q);
    let n = h.order();
    if let Some(&x) = subset.iter().find(|&&x| x >= n) {
        return Err(Error::PointOutOfRange { point: x, degree: n });
    }
    let orbit = family_labels(q);
    let mut in_s = vec![false; n];
    subset.iter().for_each(|&s| in_s[s] = true);
    let outside: Vec<usize> = (0..n).filter(|&x| !in_s[x]).collect();
    // signature of h: the orbit of s·h⁻¹ for each s ∈ S
    let signature = |x: usize| -> Vec<usize> {
        let xi = h.inv(x);
        subset.iter().map(|&s| orbit[h.mul(s, xi)]).collect()
    };
    let mut sigs: Vec<Vec<usize>> = outside.iter().map(|&x| signature(x)).collect();
    let total = sigs.len();
    sigs.sort_unstable();
    sigs.dedup();
    Ok(sigs.len() == total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgroup::families::parabolic;
    use crate::matgroup::Fq;

    fn e_and_p0(q: u32) -> Vec<usize> {
        let mut s = vec![0];
        s.extend(parabolic(Fq::zero(q)));
        s
    }

    #[test]
    fn identity_and_p0_separate() {
        for q in [5u32, 7] {
            assert!(separation_check(q, &e_and_p0(q)).unwrap(), "q = {q}");
        }
    }

    #[test]
    fn identity_alone_does_not() {
        assert!(!separation_check(5, &[0]).unwrap());
    }

    #[test]
    fn all_but_one_is_vacuous() {
        let all: Vec<usize> = (1..50).collect();
        assert!(separation_check(5, &all).unwrap());
        assert!(separation_check(4, &[0]).is_err());
        assert!(separation_check(5, &[50]).is_err());
    }
}
