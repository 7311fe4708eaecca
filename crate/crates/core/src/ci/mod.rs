//! Cayley-isomorphism analysis: automorphisms of groups, regular subgroups,
//! Babai's criterion, certificates and a brute-force oracle.

pub mod automorphism;
pub mod certificate;
pub mod oracle;
pub mod regular;
pub mod separation;

pub use automorphism::{
    aut_group_of_group, cayley_iso_witness, count_automorphisms, for_each_isomorphism, group_isomorphism,
    AutOfGroup, WitnessSearch, DEFAULT_AUT_ORDER_CAP,
};
pub use regular::{regular_subgroup_search, RegularSearch, RegularSubgroup, DEFAULT_REGULAR_BUDGET};
pub use oracle::{
    all_connection_sets, babai_ci_check, brute_dci_oracle, groups_of_order_eight, groups_up_to_six, oracle_agreement,
    sampled_connection_sets, BabaiResult, NamedGroup, OracleReport, ORACLE_MAX_ORDER, ORACLE_SAMPLES, ORACLE_SEED,
};
pub use certificate::{
    aut_h_order, bci_check_z27, ci_witness_certificate, h_k_placement, non_ci_certificate, HkPlacement, Certificate, CertificateKind, Check, Subject,
};
pub use separation::separation_check;
