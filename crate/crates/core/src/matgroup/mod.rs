//! Prime-field arithmetic, the matrix groups `G, D, H, K`, their bracket
//! forms, the orbit families on `H`, and the maps `α`, `α̂`.

pub mod alpha;
pub mod bracket;
pub mod connection;
pub mod dihedral;
pub mod families;
pub mod field;
pub mod groups;
pub mod matrix;

pub use alpha::{alpha, alpha_hat, alpha_hat_perm, alpha_induced_perm, check_alpha, AlphaCheck};
pub use bracket::{d_act_h, d_mul, h_mul, DElem, HElem};
pub use connection::{build_t, build_t_prime, choose_x, resolve_x, symmetric_q5_set};
pub use dihedral::{dih, special_case_z27, Dihedral, SpecialCase};
pub use families::{orbit_families, FamilyKind, OrbitFamily};
pub use field::{check_modulus, is_odd_prime, Fq, Sign, DEFAULT_MAX_Q};
pub use groups::{build_groups, build_groups_with_limit, h_group, CosetAction, CosetImages, MatrixGroups};
pub use matrix::Mat3;
