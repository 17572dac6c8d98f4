//! Newton interpolation bases `prod_{i<k} (z - a_i)` for an arbitrary
//! sequence, complete homogeneous symmetric functions, connection
//! coefficients and the generalized difference operator.

mod basis;
mod sequence;

pub(crate) use basis::divide;
pub use basis::{
    a_binomial, connection_explicit, connection_recurrence, difference_operator, falling_factorial, gen_factorial,
    h_explicit, h_recurrence, newton_oracle, NewtonCoefficients,
};
pub use sequence::{SequenceKind, ValueSequence};
