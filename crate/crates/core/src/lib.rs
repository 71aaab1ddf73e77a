//! Numerical toolkit for superpositions of two-mode coherent states.
//!
//! States are kept as exact lists of coherent branches ([`states`]). From them
//! the crate computes Stokes statistics ([`stokes`]), the SU(2) Q-function and
//! the Q-based degree of polarization ([`polarization`]), the two-mode Wigner
//! function and its negativity volume ([`phase_space`]), and the concurrence of
//! two-branch states under compensator/rotator devices ([`entanglement`],
//! [`devices`]). Every closed form has an independent brute-force counterpart
//! in the truncated number basis ([`fock`]).

// Index loops mirror the matrix formulas; `!(x >= 0.0)` deliberately rejects NaN.
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod devices;
pub mod entanglement;
pub mod error;
pub mod experiments;
pub mod family;
pub mod fock;
pub mod phase_space;
pub mod plot;
pub mod polarization;
pub mod quadrature;
pub mod reference_forms;
pub mod state_file;
pub mod states;
pub mod stokes;
pub mod summation;
pub mod table;

pub use devices::{apply_device, compensator, crc, rotator, DeviceFactor, DeviceSpec};
pub use entanglement::{concurrence, crc_sweep};
pub use error::{Error, Result};
pub use family::{Family, FamilySpec};
pub use phase_space::{
    cross_wigner_kernel, nwf, nwf_sweep, wigner_point, wigner_slice, GridPolicy, GridRule,
    NwfEstimate, PhaseGrid, PhasePoint4,
};
pub use polarization::{polarization_degree, polarization_sweep, q_function};
pub use quadrature::{SphereDirection, SphereQuadrature};
pub use states::{
    inner_product, make_psi1, make_psi2, make_psi3, make_two_branch, overlap, Amplitude,
    CoherentSuperposition, CoherentTerm,
};
pub use stokes::{stokes_stats, variance_sweep, StokesStats};
pub use table::Table;
