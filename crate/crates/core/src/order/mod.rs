//! Finite posets as categories of down-sets: adjoint strings, total
//! distributivity, continuity, Scott opens and transfer along adjunctions.

mod adjoint;
mod ccd;
mod continuity;
pub(crate) mod lattices;
mod scott;
mod transfer;

pub use adjoint::{adjunction_witness, left_adjoint, right_adjoint, NoAdjoint};
pub use ccd::{ccd_check, distributivity_oracle, CcdReport, CcdSummary, Distributivity};
pub use continuity::{continuity_check, way_below, ContinuityReport, WayBelow};
pub use lattices::{down_sets, up_sets, DownSetLattice, IdealCompletion, Mask, SetFamily};
pub use scott::{duality_check, scott_opens, DualityReport, ScottOpens};
pub use transfer::{generator_restriction, transfer_ccd, GeneratorReport, TransferReport};
