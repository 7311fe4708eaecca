//! Integral group algebra, Schur rings as partitions, and the basic-quantity
//! multiplication table of `V(H, G_e)`.

mod algebra;
mod sring;
mod table;

pub use algebra::{gmul, hadamard, level_set, simple_quantity, GroupAlgebraVec};
pub use sring::{generated_sring, is_sring, sring_aut, transitivity_module, SRingPartition};
pub use table::{verify_table1, Table1Report};
