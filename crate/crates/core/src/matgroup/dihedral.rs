//! Generalised dihedral groups and the 54-element example over `Z_3³`.

use crate::error::{Error, Result};
use crate::perm::{FiniteGroup, Permutation, SubgroupHandle};

/// `Dih(A) = A ⋊ ⟨x⟩` with `x` inverting `A`. Element `a·x^ε` has index
/// `ε·|A| + index(a)`.
#[derive(Clone, Debug)]
pub struct Dihedral {
    pub abelian: FiniteGroup,
    pub group: FiniteGroup,
}

impl Dihedral {
    pub fn from_abelian(abelian: FiniteGroup) -> Result<Dihedral> {
        if !abelian.is_abelian() {
            return Err(Error::NotAbelian);
        }
        let n = abelian.order();
        let a = &abelian;
        // (a x^ε)(b x^δ) = a·b^{(−1)^ε} x^{ε+δ}
        let group = FiniteGroup::from_fn(2 * n, |i, j| {
            let (ea, ia) = (i / n, i % n);
            let (eb, ib) = (j / n, j % n);
            let b = if ea == 1 { a.inv(ib) } else { ib };
            ((ea ^ eb) * n) + a.mul(ia, b)
        })?;
        Ok(Dihedral { abelian, group })
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// Index of the outer involution `x`.
    pub fn involution(&self) -> usize {
        self.abelian.order()
    }

    pub fn regular(&self) -> SubgroupHandle {
        self.group.right_regular()
    }
}

/// `Dih(A)` for the abelian permutation group generated by `gens`, acting
/// regularly on its own elements.
pub fn dih(degree: usize, gens: &[Permutation]) -> Result<Dihedral> {
    for a in gens {
        for b in gens {
            if a.compose(b)? != b.compose(a)? {
                return Err(Error::NotAbelian);
            }
        }
    }
    let (abelian, _) = FiniteGroup::from_permutations(degree, gens)?;
    Dihedral::from_abelian(abelian)
}

/// The 54-element group `R = ⟨e_1, e_2, e_3, x⟩` on nine points with its
/// connection set of nine involutions.
#[derive(Clone, Debug)]
pub struct SpecialCase {
    /// Multiplication table; index `ε·27 + 9i + 3j + k` stands for `e_1^i e_2^j e_3^k x^ε`.
    pub group: FiniteGroup,
    /// The same elements as permutations of nine points.
    pub elements: Vec<Permutation>,
    pub connection_set: Vec<usize>,
}

pub const Z27_ORDER: usize = 54;

pub fn special_case_index(i: usize, j: usize, k: usize, eps: usize) -> usize {
    eps * 27 + 9 * (i % 3) + 3 * (j % 3) + (k % 3)
}

pub fn special_case_z27() -> Result<SpecialCase> {
    let e1 = Permutation::from_cycles(9, &[&[0, 1, 2]])?;
    let e2 = Permutation::from_cycles(9, &[&[3, 4, 5]])?;
    let e3 = Permutation::from_cycles(9, &[&[6, 7, 8]])?;
    let x = Permutation::from_cycles(9, &[&[0, 1], &[3, 4], &[6, 7]])?;
    let mut elements = Vec::with_capacity(Z27_ORDER);
    for eps in 0..2 {
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let a = e1.pow(i).compose(&e2.pow(j))?.compose(&e3.pow(k))?;
                    elements.push(if eps == 1 { a.compose(&x)? } else { a });
                }
            }
        }
    }
    let group = FiniteGroup::from_element_list(&elements)?;
    // a·x for a ∈ {1, e1, e2, e3, e1e2, e1²e2², e2e3, e2²e3², e1²e2²e3²}
    let exps = [
        (0, 0, 0),
        (1, 0, 0),
        (0, 1, 0),
        (0, 0, 1),
        (1, 1, 0),
        (2, 2, 0),
        (0, 1, 1),
        (0, 2, 2),
        (2, 2, 2),
    ];
    let mut connection_set: Vec<usize> =
        exps.iter().map(|&(i, j, k)| special_case_index(i, j, k, 1)).collect();
    connection_set.sort_unstable();
    Ok(SpecialCase {
        group,
        elements,
        connection_set,
    })
}

impl SpecialCase {
    /// Indices of `A = ⟨e_1, e_2, e_3⟩`.
    pub fn abelian_part(&self) -> Vec<usize> {
        (0..27).collect()
    }

    /// `Z_3³` with index `9i + 3j + k`.
    pub fn abelian_group() -> FiniteGroup {
        let z3 = FiniteGroup::cyclic(3);
        z3.direct_product(&z3).direct_product(&z3)
    }

    /// The `A`-parts `a` of the connection set elements `a·x`, as indices of `Z_3³`.
    pub fn haar_set(&self) -> Vec<usize> {
        self.connection_set.iter().map(|&s| s - 27).collect()
    }
}
