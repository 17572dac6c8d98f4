//! Eulerian numbers: classical, Carlitz' q-analogue, the generalized
//! numbers over an arbitrary bi-infinite sequence, and their r-Whitney and
//! elliptic specializations.

mod classical;
mod elliptic;
mod generalized;

pub use classical::{
    eulerian_classical, eulerian_classical_table, q_eulerian, q_eulerian_table, q_r_whitney_eulerian,
    q_r_whitney_eulerian_table, r_whitney_eulerian, r_whitney_eulerian_table,
};
pub use elliptic::{
    elliptic_eulerian, elliptic_eulerian_table, elliptic_p_factor, elliptic_r_whitney_eulerian,
    elliptic_r_whitney_eulerian_table,
};
pub use generalized::{
    generalized_eulerian, generalized_eulerian_entry, lagrange_delta_check, worpitzky_basis, worpitzky_defect,
    worpitzky_residual, EulerianParams, PFactor,
};
